//! First cohomology H¹(G, F₂[X]) of finite permutation groups, with
//! restriction, corestriction and inflation on cocycle representatives.
//!
//! Groups are stored fully enumerated. Each element carries a faithful
//! permutation used for multiplication (the carrier) and its action on X,
//! which need not be faithful: quotients G/K act on the K-orbits.

mod families;
mod maps;
mod scan;

pub use families::{
    affine, alternating, cyclic_regular, dihedral, projective_family, relabel_along_cycle, symmetric, trivial,
    GaloisField, ProjectiveFamily,
};
pub use maps::{corestrict, inflate, inflation_restriction_dims, quotient, restrict, InflationRestriction, Quotient};
pub use scan::{vanishing_cocycle_scan, ScanReport};

use crate::error::{Error, Result};
use crate::gf2::{BitVec, Subspace};
use crate::perm::Permutation;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};

/// Largest group the enumeration accepts; S₇ fits.
pub const ACTION_GROUP_CAP: usize = 5040;

/// A finite group acting on X = {0, …, degree − 1}, fully enumerated.
/// Element 0 is the identity.
#[derive(Clone, Debug)]
pub struct ActionGroup {
    carrier: Vec<Permutation>,
    action: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    generators: Vec<usize>,
}

/// A subgroup together with the positions of its elements in the ambient group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: ActionGroup,
    pub embedding: Vec<usize>,
}

/// User-supplied permutation group: `{"degree": 5, "generators": [[1,2,3,4,0]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

impl GroupSpec {
    pub fn build(&self) -> Result<ActionGroup> {
        let gens = self.generators.iter().map(|g| Permutation::from_images(g.clone())).collect::<Result<Vec<_>>>()?;
        ActionGroup::from_generators(self.degree, gens)
    }
}

impl ActionGroup {
    pub fn from_generators(degree: usize, generators: Vec<Permutation>) -> Result<ActionGroup> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::Invalid("generator degree differs from the group degree".into()));
        }
        ActionGroup::with_carrier(degree, generators.clone(), degree, generators)
    }

    /// Closes pairs (carrier, action) under composition. The action must be a
    /// homomorphic image of the carrier group.
    pub fn with_carrier(
        carrier_degree: usize,
        carrier_gens: Vec<Permutation>,
        degree: usize,
        action_gens: Vec<Permutation>,
    ) -> Result<ActionGroup> {
        if carrier_gens.len() != action_gens.len() {
            return Err(Error::Invalid("carrier and action generator counts differ".into()));
        }
        if carrier_gens.iter().any(|g| g.degree() != carrier_degree) || action_gens.iter().any(|g| g.degree() != degree) {
            return Err(Error::Invalid("generator degree mismatch".into()));
        }
        let mut g = ActionGroup {
            carrier: vec![Permutation::identity(carrier_degree)],
            action: vec![Permutation::identity(degree)],
            index: HashMap::new(),
            generators: Vec::new(),
        };
        g.index.insert(g.carrier[0].clone(), 0);
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for (c, a) in carrier_gens.iter().zip(&action_gens) {
                let cc = g.carrier[i].compose(c);
                let aa = g.action[i].compose(a);
                match g.index.get(&cc) {
                    Some(&j) => {
                        if g.action[j] != aa {
                            return Err(Error::Invalid("action is not a homomorphism of the carrier group".into()));
                        }
                    }
                    None => {
                        if g.carrier.len() >= ACTION_GROUP_CAP {
                            return Err(Error::ClosureCap(ACTION_GROUP_CAP));
                        }
                        g.index.insert(cc.clone(), g.carrier.len());
                        queue.push_back(g.carrier.len());
                        g.carrier.push(cc);
                        g.action.push(aa);
                    }
                }
            }
        }
        g.generators = carrier_gens.iter().map(|c| g.index[c]).collect();
        Ok(g)
    }

    pub fn degree(&self) -> usize {
        self.action[0].degree()
    }

    pub fn order(&self) -> usize {
        self.carrier.len()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// The action of element `g` on X.
    pub fn action(&self, g: usize) -> &Permutation {
        &self.action[g]
    }

    pub fn carrier(&self, g: usize) -> &Permutation {
        &self.carrier[g]
    }

    pub fn index_of(&self, carrier: &Permutation) -> Option<usize> {
        self.index.get(carrier).copied()
    }

    /// Index of an element whose action is `sigma`, for faithful actions.
    pub fn index_of_action(&self, sigma: &Permutation) -> Option<usize> {
        self.action.iter().position(|a| a == sigma)
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.index[&self.carrier[g].compose(&self.carrier[h])]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.index[&self.carrier[g].inverse()]
    }

    pub fn is_faithful(&self) -> bool {
        let mut seen: Vec<&Permutation> = self.action.iter().collect();
        seen.sort();
        seen.dedup();
        seen.len() == self.order()
    }

    /// g.v, with g.e_x = e_{g(x)}.
    pub fn act(&self, g: usize, v: &BitVec) -> BitVec {
        let a = &self.action[g];
        let mut out = BitVec::zeros(v.len());
        for x in v.ones_iter() {
            out.set(a.apply(x), true);
        }
        out
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut label = vec![usize::MAX; n];
        let mut out = Vec::new();
        for x in 0..n {
            if label[x] != usize::MAX {
                continue;
            }
            let mut orbit = vec![x];
            label[x] = out.len();
            let mut i = 0;
            while i < orbit.len() {
                for &g in &self.generators {
                    let y = self.action[g].apply(orbit[i]);
                    if label[y] == usize::MAX {
                        label[y] = out.len();
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        (0..self.order()).filter(|&g| self.action[g].apply(x) == x).collect()
    }

    /// The subgroup generated by the given elements.
    pub fn subgroup(&self, gens: &[usize]) -> Result<Subgroup> {
        let group = ActionGroup::with_carrier(
            self.carrier[0].degree(),
            gens.iter().map(|&g| self.carrier[g].clone()).collect(),
            self.degree(),
            gens.iter().map(|&g| self.action[g].clone()).collect(),
        )?;
        let embedding = group.carrier.iter().map(|c| self.index[c]).collect();
        Ok(Subgroup { group, embedding })
    }

    /// The smallest subgroup containing `elements`, built by adding generators
    /// only when they are not yet in the span.
    pub fn closure_of(&self, elements: impl IntoIterator<Item = usize>) -> Result<Subgroup> {
        let mut gens: Vec<usize> = Vec::new();
        let mut current = self.subgroup(&[])?;
        let mut member = vec![false; self.order()];
        member[0] = true;
        for g in elements {
            if member[g] {
                continue;
            }
            gens.push(g);
            current = self.subgroup(&gens)?;
            member = vec![false; self.order()];
            for &e in &current.embedding {
                member[e] = true;
            }
        }
        Ok(current)
    }

    /// Whether `sub` is normalized by every generator.
    pub fn is_normal(&self, sub: &Subgroup) -> bool {
        let member: std::collections::HashSet<usize> = sub.embedding.iter().copied().collect();
        self.generators.iter().all(|&g| {
            let gi = self.inverse(g);
            sub.group.generators.iter().all(|&s| member.contains(&self.mul(self.mul(g, sub.embedding[s]), gi)))
        })
    }

    /// d with [G : ⟨g²⟩] = 2^d, so that Hom(G, F₂) has dimension d.
    pub fn hom_to_f2_dim(&self) -> Result<usize> {
        let squares = self.closure_of((0..self.order()).map(|g| self.mul(g, g)))?;
        let index = self.order() / squares.group.order();
        debug_assert!(index.is_power_of_two());
        Ok(index.trailing_zeros() as usize)
    }
}

/// A function G → F₂[X] stored as its full table of values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cocycle {
    values: Vec<BitVec>,
}

impl Cocycle {
    pub fn from_values(values: Vec<BitVec>) -> Cocycle {
        Cocycle { values }
    }

    pub fn zero(group: &ActionGroup) -> Cocycle {
        Cocycle { values: vec![BitVec::zeros(group.degree()); group.order()] }
    }

    /// g ↦ g.m − m.
    pub fn coboundary(group: &ActionGroup, m: &BitVec) -> Cocycle {
        Cocycle { values: (0..group.order()).map(|g| group.act(g, m).xor(m)).collect() }
    }

    pub fn value(&self, g: usize) -> &BitVec {
        &self.values[g]
    }

    pub fn values(&self) -> &[BitVec] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(BitVec::is_zero)
    }

    pub fn add(&self, other: &Cocycle) -> Cocycle {
        Cocycle { values: self.values.iter().zip(&other.values).map(|(a, b)| a.xor(b)).collect() }
    }

    /// ω(gh) = g.ω(h) + ω(g) for every listed pair.
    pub fn satisfies_identity(&self, group: &ActionGroup, pairs: impl IntoIterator<Item = (usize, usize)>) -> bool {
        self.values.len() == group.order()
            && pairs.into_iter().all(|(g, h)| self.values[group.mul(g, h)] == group.act(g, &self.values[h]).xor(&self.values[g]))
    }

    /// Checks every pair when |G| ≤ 200, otherwise `samples` seeded random pairs.
    pub fn is_cocycle(&self, group: &ActionGroup, samples: usize, seed: u64) -> bool {
        use rand::{Rng, SeedableRng};
        let n = group.order();
        if n <= 200 {
            self.satisfies_identity(group, (0..n).flat_map(|g| (0..n).map(move |h| (g, h))))
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let pairs: Vec<(usize, usize)> = (0..samples).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
            self.satisfies_identity(group, pairs)
        }
    }
}

/// Z¹ and B¹ of G acting on F₂[X], in coordinates (ω(g₁), …, ω(g_t)).
#[derive(Clone, Debug)]
pub struct Cohomology {
    degree: usize,
    generators: Vec<usize>,
    /// BFS order and tree edges: element = parent ∘ generators[k].
    order: Vec<usize>,
    parent: Vec<Option<(usize, usize)>>,
    /// For each element, |X| rows expressing ω(g) linearly in the coordinates.
    symbolic: Vec<Vec<BitVec>>,
    z1: Subspace,
    b1: Subspace,
}

impl Cohomology {
    /// Solves the cocycle identity along a breadth-first spanning tree of the
    /// Cayley graph; every non-tree edge contributes |X| linear constraints.
    pub fn compute(group: &ActionGroup) -> Result<Cohomology> {
        let n = group.degree();
        let t = group.generators.len();
        let width = t * n;
        let size = group.order();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; size];
        let mut symbolic: Vec<Option<Vec<BitVec>>> = vec![None; size];
        symbolic[0] = Some(vec![BitVec::zeros(width); n]);
        let mut order = vec![0];
        let mut constraints = Subspace::new(width);
        let mut head = 0;
        while head < order.len() {
            let g = order[head];
            head += 1;
            for (k, &s) in group.generators.iter().enumerate() {
                let h = group.mul(g, s);
                let a = group.action(g);
                let wg = symbolic[g].as_ref().expect("visited");
                let mut rows = wg.clone();
                for x in 0..n {
                    rows[a.apply(x)].flip(k * n + x);
                }
                match &symbolic[h] {
                    Some(existing) => {
                        for (r, e) in rows.iter().zip(existing) {
                            constraints.insert(r.xor(e));
                        }
                    }
                    None => {
                        parent[h] = Some((g, k));
                        symbolic[h] = Some(rows);
                        order.push(h);
                    }
                }
            }
        }
        if order.len() != size {
            return Err(Error::Invalid("generators do not generate the group".into()));
        }
        let z1 = Subspace::spanned_by(width, &constraints.orthogonal_complement());
        let b1_vectors: Vec<BitVec> = (0..n)
            .map(|x| {
                let e = BitVec::unit(n, x);
                group.generators.iter().fold(BitVec::zeros(0), |acc, &s| acc.concat(&group.act(s, &e).xor(&e)))
            })
            .collect();
        let b1 = Subspace::spanned_by(width, &b1_vectors);
        Ok(Cohomology {
            degree: n,
            generators: group.generators.clone(),
            order,
            parent,
            symbolic: symbolic.into_iter().map(|s| s.expect("visited")).collect(),
            z1,
            b1,
        })
    }

    pub fn z1(&self) -> &Subspace {
        &self.z1
    }

    pub fn b1(&self) -> &Subspace {
        &self.b1
    }

    pub fn z1_dim(&self) -> usize {
        self.z1.dim()
    }

    pub fn b1_dim(&self) -> usize {
        self.b1.dim()
    }

    pub fn h1_dim(&self) -> usize {
        self.z1.dim() - self.b1.dim()
    }

    /// The cocycle with the given values on the generators.
    pub fn evaluate(&self, group: &ActionGroup, coords: &BitVec) -> Cocycle {
        let n = self.degree;
        let mut values = vec![BitVec::zeros(n); group.order()];
        for &h in &self.order[1..] {
            let (g, k) = self.parent[h].expect("tree edge");
            let s_value = coords.slice(k * n, n);
            values[h] = group.act(g, &s_value).xor(&values[g]);
        }
        Cocycle { values }
    }

    /// Values on the generators, concatenated.
    pub fn coordinates(&self, omega: &Cocycle) -> BitVec {
        self.generators.iter().fold(BitVec::zeros(0), |acc, &s| acc.concat(omega.value(s)))
    }

    pub fn cocycle_basis(&self, group: &ActionGroup) -> Vec<Cocycle> {
        self.z1.basis().iter().map(|c| self.evaluate(group, c)).collect()
    }

    pub fn coboundary_basis(&self, group: &ActionGroup) -> Vec<Cocycle> {
        self.b1.basis().iter().map(|c| self.evaluate(group, c)).collect()
    }

    /// Rows expressing ω(g) in the coordinates.
    pub fn symbolic_value(&self, g: usize) -> &[BitVec] {
        &self.symbolic[g]
    }

    /// Whether the cocycle lies in B¹.
    pub fn is_coboundary(&self, omega: &Cocycle) -> bool {
        self.b1.contains(&self.coordinates(omega))
    }

    pub fn same_class(&self, a: &Cocycle, b: &Cocycle) -> bool {
        self.is_coboundary(&a.add(b))
    }

    /// Dimension of the span of the classes of `cocycles` in H¹.
    pub fn class_rank(&self, cocycles: &[Cocycle]) -> usize {
        let mut span = self.b1.clone();
        cocycles.iter().filter(|c| span.insert(self.coordinates(c))).count()
    }

    /// Basis of the cocycles that vanish on every listed element.
    pub fn vanishing_on(&self, group: &ActionGroup, elements: &[usize]) -> Vec<Cocycle> {
        let width = self.z1.ambient_len();
        let mut constraints = Subspace::spanned_by(width, &self.z1.orthogonal_complement());
        for &g in elements {
            for row in &self.symbolic[g] {
                constraints.insert(row.clone());
            }
        }
        constraints.orthogonal_complement().iter().map(|c| self.evaluate(group, c)).collect()
    }
}

/// dim H¹(G, F₂[X]).
pub fn h1_dimension(group: &ActionGroup) -> Result<usize> {
    Ok(Cohomology::compute(group)?.h1_dim())
}
