//! Schur rings arising as transitivity modules of Cayley graphs over ℤ_N and
//! ℤ_n × ℤ₂, the ring axioms, radicals, and the instability dichotomy.

use crate::error::{Error, Result};
use crate::graph::{build_circulant, tensor_k2, ConnectionSet, DenseGraph};
use crate::perm::Permutation;
use crate::permgrp::automorphisms;
use crate::twofold::{classify_oracle, condition_i};
use crate::zn::IndexPartition;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// A finite abelian group whose elements are the indices 0..order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AmbientGroup {
    /// ℤ_N.
    Cyclic(usize),
    /// ℤ_n × ⟨a⟩ with (v, i) stored as v + n·i.
    CyclicTimesTwo(usize),
}

impl AmbientGroup {
    pub fn order(self) -> usize {
        match self {
            AmbientGroup::Cyclic(n) => n,
            AmbientGroup::CyclicTimesTwo(n) => 2 * n,
        }
    }

    pub fn add(self, x: usize, y: usize) -> usize {
        match self {
            AmbientGroup::Cyclic(n) => (x + y) % n,
            AmbientGroup::CyclicTimesTwo(n) => (x % n + y % n) % n + n * ((x / n + y / n) % 2),
        }
    }

    pub fn neg(self, x: usize) -> usize {
        match self {
            AmbientGroup::Cyclic(n) => (n - x) % n,
            AmbientGroup::CyclicTimesTwo(n) => (n - x % n) % n + n * (x / n),
        }
    }

    /// The right-regular permutation y ↦ y + g.
    pub fn translation(self, g: usize) -> Permutation {
        Permutation::from_fn(self.order(), |y| self.add(y, g)).expect("translation")
    }

    fn generators(self) -> Vec<usize> {
        match self {
            AmbientGroup::Cyclic(_) => vec![1],
            AmbientGroup::CyclicTimesTwo(n) => vec![1, n],
        }
    }
}

/// A partition of an abelian group into basic sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchurRing {
    pub group: AmbientGroup,
    pub basic_sets: IndexPartition,
}

impl Serialize for SchurRing {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("SchurRing", 2)?;
        st.serialize_field("order", &self.group.order())?;
        st.serialize_field("basic_sets", self.basic_sets.blocks())?;
        st.end()
    }
}

impl SchurRing {
    pub fn basic_set_of(&self, x: usize) -> &[usize] {
        &self.basic_sets.blocks()[self.basic_sets.block_of(x)]
    }
}

/// Basic sets = orbits of the stabilizer of 0 in Aut(Σ), for a Cayley graph Σ over `group`.
pub fn transitivity_module(sigma: &DenseGraph, group: AmbientGroup) -> Result<SchurRing> {
    if sigma.vertex_count() != group.order() {
        return Err(Error::Invalid("graph and group have different orders".into()));
    }
    if group.generators().into_iter().any(|g| !sigma.is_automorphism(&group.translation(g))) {
        return Err(Error::Precondition("translations are not automorphisms; not a Cayley graph".into()));
    }
    let basic_sets = automorphisms(sigma, None)?.stabilizer_orbits(0)?;
    Ok(SchurRing { group, basic_sets })
}

/// 𝒜(Cay(ℤ_n, S)).
pub fn circulant_module(s: &ConnectionSet) -> Result<SchurRing> {
    transitivity_module(&build_circulant(s), AmbientGroup::Cyclic(s.n()))
}

/// 𝒜(Γ×K₂) over ℤ_n × ⟨a⟩, where Γ×K₂ = Cay(ℤ_n × ⟨a⟩, S + a).
pub fn cover_module(s: &ConnectionSet) -> Result<SchurRing> {
    let cover = tensor_k2(&build_circulant(s)).without_coloring();
    transitivity_module(&cover, AmbientGroup::CyclicTimesTwo(s.n()))
}

/// The first axiom a partition fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AxiomViolation {
    IdentityNotBasic,
    NotInverseClosed { set: Vec<usize> },
    /// The product of basic sets `x` and `y` counts `z1` and `z2` differently,
    /// though they share a basic set.
    Convolution { x: Vec<usize>, y: Vec<usize>, z1: usize, z2: usize, count1: usize, count2: usize },
}

/// Checks that the span of the basic-set sums is a Schur ring: {0} is basic,
/// basic sets are closed under inversion, and every product X̲·Y̲ has constant
/// coefficient on each basic set.
pub fn verify_ring_axioms(ring: &SchurRing) -> std::result::Result<(), AxiomViolation> {
    let g = ring.group;
    let p = &ring.basic_sets;
    if p.blocks()[p.block_of(0)].len() != 1 {
        return Err(AxiomViolation::IdentityNotBasic);
    }
    for block in p.blocks() {
        let mut inverse: Vec<usize> = block.iter().map(|&x| g.neg(x)).collect();
        inverse.sort_unstable();
        if p.blocks()[p.block_of(inverse[0])] != inverse {
            return Err(AxiomViolation::NotInverseClosed { set: block.clone() });
        }
    }
    let order = g.order();
    let mut counts = vec![0usize; order];
    for x in p.blocks() {
        for y in p.blocks() {
            counts.iter_mut().for_each(|c| *c = 0);
            for &u in x {
                for &v in y {
                    counts[g.add(u, v)] += 1;
                }
            }
            for z in p.blocks() {
                if let Some(&z2) = z.iter().find(|&&w| counts[w] != counts[z[0]]) {
                    return Err(AxiomViolation::Convolution {
                        x: x.clone(),
                        y: y.clone(),
                        z1: z[0],
                        z2,
                        count1: counts[z[0]],
                        count2: counts[z2],
                    });
                }
            }
        }
    }
    Ok(())
}

/// rad(X) = {g : g + X = X}, ascending.
pub fn radical_of(x: &[usize], group: AmbientGroup) -> Vec<usize> {
    let mut set = vec![false; group.order()];
    x.iter().for_each(|&v| set[v] = true);
    (0..group.order()).filter(|&g| x.iter().all(|&v| set[group.add(v, g)])).collect()
}

/// The intersection of rad(X ∩ (2ℤ_n + a)) over the basic sets X that meet
/// 2ℤ_n + a, for rings over ℤ_n × ⟨a⟩.
pub fn layer_radical_intersection(ring: &SchurRing) -> Result<Vec<usize>> {
    let AmbientGroup::CyclicTimesTwo(n) = ring.group else {
        return Err(Error::Precondition("ring is not over ℤ_n × ℤ₂".into()));
    };
    if n % 2 != 0 {
        return Err(Error::Precondition("n must be even".into()));
    }
    let mut common: Vec<usize> = (0..2 * n).collect();
    for block in ring.basic_sets.blocks() {
        let part: Vec<usize> = block.iter().copied().filter(|&v| v >= n && (v - n) % 2 == 0).collect();
        if !part.is_empty() {
            let rad = radical_of(&part, ring.group);
            common.retain(|g| rad.contains(g));
        }
    }
    Ok(common)
}

/// Which side of the dichotomy an unstable circulant over ℤ_{2m}, m odd, lands on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dichotomy {
    ConditionI { h: usize },
    BasicSetAm,
    /// Neither branch holds; carries the basic set of a.
    Violation { basic_set: Vec<usize> },
}

/// For connected non-bipartite unstable Cay(ℤ_{2m}, S) with m > 1 odd: either
/// the even part of S has a nonzero even period, or {a, m+a} is a basic set of 𝒜(Γ×K₂).
pub fn dichotomy_check(s: &ConnectionSet) -> Result<Dichotomy> {
    let n = s.n();
    if n % 2 != 0 || (n / 2) % 2 == 0 || n / 2 <= 1 {
        return Err(Error::Precondition(format!("n = {n} is not 2m with m > 1 odd")));
    }
    let g = build_circulant(s);
    if !g.is_connected() || g.is_bipartite() {
        return Err(Error::Precondition("graph must be connected and non-bipartite".into()));
    }
    if classify_oracle(s)?.status.is_stable() {
        return Err(Error::Precondition("graph is stable".into()));
    }
    if let Some(h) = condition_i(s) {
        return Ok(Dichotomy::ConditionI { h });
    }
    let ring = cover_module(s)?;
    let xa = ring.basic_set_of(n);
    if xa == [n, n + n / 2] {
        Ok(Dichotomy::BasicSetAm)
    } else {
        Ok(Dichotomy::Violation { basic_set: xa.to_vec() })
    }
}
