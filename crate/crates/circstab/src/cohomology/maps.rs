use super::{ActionGroup, Cocycle, Cohomology, Subgroup};
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::perm::Permutation;
use serde::Serialize;

/// ω|_H.
pub fn restrict(omega: &Cocycle, sub: &Subgroup) -> Cocycle {
    Cocycle::from_values(sub.embedding.iter().map(|&g| omega.value(g).clone()).collect())
}

/// Left coset labels of H in G, with the least element index of each coset as its representative.
fn left_cosets(g: &ActionGroup, sub: &Subgroup) -> (Vec<usize>, Vec<usize>) {
    let mut rep_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if rep_of[x] == usize::MAX {
            reps.push(x);
            for &h in &sub.embedding {
                rep_of[g.mul(x, h)] = x;
            }
        }
    }
    (rep_of, reps)
}

/// g ↦ Σ_{x ∈ R} χ(gx).ω(χ(gx)⁻¹·gx), with χ choosing the least element of each left coset of H.
pub fn corestrict(omega: &Cocycle, g: &ActionGroup, sub: &Subgroup) -> Result<Cocycle> {
    if omega.values().len() != sub.group.order() {
        return Err(Error::Subgroup("cocycle is not defined on the subgroup".into()));
    }
    let (rep_of, reps) = left_cosets(g, sub);
    let values = (0..g.order())
        .map(|e| {
            reps.iter().fold(BitVec::zeros(g.degree()), |acc, &x| {
                let y = g.mul(e, x);
                let c = rep_of[y];
                let h = g.mul(g.inverse(c), y);
                let h_sub = sub.group.index_of(g.carrier(h)).expect("χ(gx)⁻¹gx lies in H");
                acc.xor(&g.act(c, omega.value(h_sub)))
            })
        })
        .collect();
    Ok(Cocycle::from_values(values))
}

/// G/K acting on the K-orbits of X, i.e. on F₂[X]^K with the orbit sums as basis.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: ActionGroup,
    /// g ↦ gK as an element of `group`.
    pub map: Vec<usize>,
    pub orbits: Vec<Vec<usize>>,
}

pub fn quotient(g: &ActionGroup, k: &Subgroup) -> Result<Quotient> {
    if !g.is_normal(k) {
        return Err(Error::Subgroup("not a normal subgroup".into()));
    }
    let (rep_of, reps) = left_cosets(g, k);
    let coset_index: std::collections::HashMap<usize, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let c = reps.len();
    let on_cosets = |e: usize| {
        Permutation::from_fn(c, |j| coset_index[&rep_of[g.mul(e, reps[j])]]).expect("left multiplication permutes cosets")
    };
    let orbits = k.group.orbits();
    let mut orbit_of = vec![0; g.degree()];
    for (i, o) in orbits.iter().enumerate() {
        for &x in o {
            orbit_of[x] = i;
        }
    }
    let on_orbits = |e: usize| {
        Permutation::from_fn(orbits.len(), |i| orbit_of[g.action(e).apply(orbits[i][0])]).expect("K normal, so orbits are permuted")
    };
    let group = ActionGroup::with_carrier(
        c,
        g.generators().iter().map(|&e| on_cosets(e)).collect(),
        orbits.len(),
        g.generators().iter().map(|&e| on_orbits(e)).collect(),
    )?;
    let map = (0..g.order()).map(|e| group.index_of(&on_cosets(e)).expect("image of G")).collect();
    Ok(Quotient { group, map, orbits })
}

/// ω ∘ φ, with values pushed from F₂[X/K] into F₂[X]^K.
pub fn inflate(omega: &Cocycle, q: &Quotient, degree: usize) -> Cocycle {
    Cocycle::from_values(
        q.map
            .iter()
            .map(|&e| {
                let mut v = BitVec::zeros(degree);
                for i in omega.value(e).ones_iter() {
                    for &x in &q.orbits[i] {
                        v.set(x, true);
                    }
                }
                v
            })
            .collect(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InflationRestriction {
    pub h1_quotient: usize,
    pub h1_group: usize,
    pub kernel_of_restriction: usize,
    pub image_of_inflation: usize,
}

impl InflationRestriction {
    /// inf is injective and im(inf) = ker(res).
    pub fn exact(&self) -> bool {
        self.image_of_inflation == self.h1_quotient && self.image_of_inflation == self.kernel_of_restriction
    }
}

/// Dimensions around 0 → H¹(G/K, M^K) → H¹(G, M) → H¹(K, M).
pub fn inflation_restriction_dims(g: &ActionGroup, k: &Subgroup) -> Result<InflationRestriction> {
    let q = quotient(g, k)?;
    let co_g = Cohomology::compute(g)?;
    let co_k = Cohomology::compute(&k.group)?;
    let co_q = Cohomology::compute(&q.group)?;
    let z_g = co_g.cocycle_basis(g);
    let restricted: Vec<Cocycle> = z_g.iter().map(|z| restrict(z, k)).collect();
    let res_rank = co_k.class_rank(&restricted);
    let inflated: Vec<Cocycle> = co_q.cocycle_basis(&q.group).iter().map(|z| inflate(z, &q, g.degree())).collect();
    Ok(InflationRestriction {
        h1_quotient: co_q.h1_dim(),
        h1_group: co_g.h1_dim(),
        kernel_of_restriction: co_g.h1_dim() - res_rank,
        image_of_inflation: co_g.class_rank(&inflated),
    })
}
