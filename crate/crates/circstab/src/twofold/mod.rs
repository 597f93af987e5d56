//! Two-fold automorphisms of circulants, the maps γ and α, the basic set of a,
//! the arithmetic instability conditions and the stability classifier.

mod classify;
mod lcb;

pub use classify::{classify, classify_criteria, classify_oracle, criteria_proven_for, Mode, Reason, Status, Verdict, Witness};
pub use lcb::{
    alpha_homogeneous, displacement_closure, local_alpha_check, partitions_lcb, thickest_homogeneous, Displacements,
    LcbPartitions,
};

use crate::error::{Error, Result};
use crate::graph::{bits128, build_circulant, circulant_reduced_shift, tensor_k2, ConnectionSet, DenseGraph};
use crate::perm::Permutation;
use crate::permgrp::{automorphisms_with_hints, GeneratedGroup};
use crate::zn::units;
use serde::Serialize;
use std::collections::HashMap;

/// A pair (σ₁, σ₂) such that (v, i) ↦ (σ_{i+1}(v), i) is an automorphism of Γ×K₂.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TwoFoldPair {
    pub sigma1: Permutation,
    pub sigma2: Permutation,
}

impl TwoFoldPair {
    /// Whether v ~ w ⇔ σ₁(v) ~ σ₂(w) for all v, w.
    pub fn is_valid_for(&self, g: &DenseGraph) -> bool {
        let n = g.vertex_count();
        self.sigma1.degree() == n
            && self.sigma2.degree() == n
            && (0..n).all(|w| {
                let image = bits128(g.neighbors(w)).fold(0u128, |acc, v| acc | 1 << self.sigma1.apply(v));
                g.neighbors(self.sigma2.apply(w)) == image
            })
    }

    /// The permutation of the double cover on 2n points.
    pub fn cover_permutation(&self) -> Permutation {
        let n = self.sigma1.degree();
        Permutation::from_fn(2 * n, |v| if v < n { self.sigma1.apply(v) } else { self.sigma2.apply(v - n) + n })
            .expect("pair of permutations")
    }

    pub fn from_cover_permutation(p: &Permutation) -> Option<TwoFoldPair> {
        let n = p.degree() / 2;
        if (0..n).any(|v| p.apply(v) >= n) {
            return None;
        }
        let sigma1 = Permutation::from_fn(n, |v| p.apply(v)).ok()?;
        let sigma2 = Permutation::from_fn(n, |v| p.apply(v + n) - n).ok()?;
        Some(TwoFoldPair { sigma1, sigma2 })
    }

    pub fn swapped(&self) -> TwoFoldPair {
        TwoFoldPair { sigma1: self.sigma2.clone(), sigma2: self.sigma1.clone() }
    }
}

pub(crate) fn rotation(n: usize, k: usize) -> Permutation {
    Permutation::from_fn(n, |x| (x + k) % n).expect("rotation")
}

pub(crate) fn negation(n: usize) -> Permutation {
    Permutation::from_fn(n, |x| (n - x) % n).expect("negation")
}

/// x ↦ lx on ℤ_n.
pub fn multiplier(n: usize, l: usize) -> Result<Permutation> {
    Permutation::from_fn(n, |x| (l * x) % n).map_err(|_| Error::NotAUnit(l, n))
}

fn circulant_hints(n: usize) -> Vec<Permutation> {
    vec![rotation(n, 1), negation(n)]
}

fn cover_hints(n: usize) -> Vec<Permutation> {
    let both = |p: &Permutation| TwoFoldPair { sigma1: p.clone(), sigma2: p.clone() }.cover_permutation();
    let swap = Permutation::from_fn(2 * n, |v| (v + n) % (2 * n)).expect("layer swap");
    vec![both(&rotation(n, 1)), both(&negation(n)), swap]
}

/// Aut(Γ) for Γ = Cay(ℤ_n, S).
pub fn circulant_automorphisms(s: &ConnectionSet) -> Result<GeneratedGroup> {
    automorphisms_with_hints(&build_circulant(s), None, &circulant_hints(s.n()))
}

/// The full automorphism group of Γ×K₂ (layers may be swapped).
pub fn cover_automorphisms(s: &ConnectionSet) -> Result<GeneratedGroup> {
    let cover = tensor_k2(&build_circulant(s)).without_coloring();
    automorphisms_with_hints(&cover, None, &cover_hints(s.n()))
}

/// The layer-preserving subgroup of Aut(Γ×K₂) with its generators read as two-fold pairs.
#[derive(Clone, Debug)]
pub struct TwoFoldGroup {
    pub group: GeneratedGroup,
    pub pairs: Vec<TwoFoldPair>,
}

impl TwoFoldGroup {
    /// Every pair in the group, if there are at most `limit`.
    pub fn all_pairs(&self, limit: u128) -> Result<Vec<TwoFoldPair>> {
        Ok(self
            .group
            .elements(limit)?
            .iter()
            .map(|p| TwoFoldPair::from_cover_permutation(p).expect("layer-preserving"))
            .collect())
    }

    pub fn random_pair<R: rand::Rng>(&self, rng: &mut R) -> TwoFoldPair {
        TwoFoldPair::from_cover_permutation(&self.group.random_element(rng)).expect("layer-preserving")
    }
}

fn require_connected_nonbipartite(g: &DenseGraph) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::Precondition("graph is disconnected; classify it as trivially unstable".into()));
    }
    if g.is_bipartite() {
        return Err(Error::Precondition("graph is bipartite; classify it as trivially unstable".into()));
    }
    Ok(())
}

pub fn tf_group(s: &ConnectionSet) -> Result<TwoFoldGroup> {
    let g = build_circulant(s);
    require_connected_nonbipartite(&g)?;
    let cover = tensor_k2(&g);
    let hints = cover_hints(s.n());
    let group = automorphisms_with_hints(&cover, None, &hints[..2])?;
    let pairs = group
        .generators()
        .iter()
        .map(|p| TwoFoldPair::from_cover_permutation(p).expect("coloring keeps layers"))
        .collect();
    Ok(TwoFoldGroup { group, pairs })
}

/// Looks up vertices by their neighbourhood in a reduced circulant.
pub(crate) struct NeighbourhoodIndex {
    graph: DenseGraph,
    by_nbhd: HashMap<u128, usize>,
}

impl NeighbourhoodIndex {
    pub(crate) fn new(s: &ConnectionSet) -> Result<NeighbourhoodIndex> {
        if circulant_reduced_shift(s).is_some() {
            return Err(Error::NotReduced);
        }
        let graph = build_circulant(s);
        let by_nbhd = (0..s.n()).map(|v| (graph.neighbors(v), v)).collect();
        Ok(NeighbourhoodIndex { graph, by_nbhd })
    }

    pub(crate) fn gamma(&self, sigma: &Permutation) -> Result<Permutation> {
        let n = self.graph.vertex_count();
        if sigma.degree() != n {
            return Err(Error::NoPartner);
        }
        let images = (0..n)
            .map(|w| {
                let image = bits128(self.graph.neighbors(w)).fold(0u128, |acc, v| acc | 1 << sigma.apply(v));
                self.by_nbhd.get(&image).copied().ok_or(Error::NoPartner)
            })
            .collect::<Result<Vec<usize>>>()?;
        Permutation::from_images(images).map_err(|_| Error::NoPartner)
    }
}

/// γ(σ): the unique σ₂ with (σ, σ₂) a two-fold automorphism of the reduced circulant.
pub fn gamma(s: &ConnectionSet, sigma: &Permutation) -> Result<Permutation> {
    NeighbourhoodIndex::new(s)?.gamma(sigma)
}

/// α(σ) = σ⁻¹∘γ(σ), together with its displacement on the cosets of L = {0, m}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaValue {
    pub perm: Permutation,
    /// Bit x (0 ≤ x < m) is set when α(σ) moves the coset {x, x+m} by m.
    /// `None` when n is odd or α(σ) does not act as x ↦ x or x ↦ x+m.
    pub displacement: Option<u64>,
}

impl AlphaValue {
    pub fn new(perm: Permutation) -> AlphaValue {
        let displacement = displacement_of(&perm);
        AlphaValue { perm, displacement }
    }
}

pub(crate) fn displacement_of(alpha: &Permutation) -> Option<u64> {
    let n = alpha.degree();
    if n % 2 != 0 {
        return None;
    }
    let m = n / 2;
    let mut bits = 0u64;
    for x in 0..m {
        let (a, b) = (alpha.apply(x), alpha.apply(x + m));
        if a == x && b == x + m {
            continue;
        }
        if a == x + m && b == x {
            bits |= 1 << x;
            continue;
        }
        return None;
    }
    Some(bits)
}

pub fn alpha(s: &ConnectionSet, sigma: &Permutation) -> Result<AlphaValue> {
    let g = gamma(s, sigma)?;
    Ok(AlphaValue::new(sigma.inverse().compose(&g)))
}

/// X_a: the orbit of a = (0, 1) under the stabilizer of (0, 0) in Aut(Γ×K₂),
/// as sorted cover indices.
pub fn basic_set_a(s: &ConnectionSet) -> Result<Vec<usize>> {
    let g = build_circulant(s);
    require_connected_nonbipartite(&g)?;
    let orbits = cover_automorphisms(s)?.stabilizer_orbits(0)?;
    Ok(orbits.blocks()[orbits.block_of(s.n())].clone())
}

/// {g + a : α(σ).0 = g for some σ ∈ Aut^π}, by enumerating Aut^π (at most `limit` elements).
pub fn basic_set_a_via_alpha(s: &ConnectionSet, limit: u128) -> Result<Vec<usize>> {
    let tf = tf_group(s)?;
    let index = NeighbourhoodIndex::new(s)?;
    let mut hit = vec![false; s.n()];
    for pair in tf.all_pairs(limit)? {
        let a = pair.sigma1.inverse().compose(&index.gamma(&pair.sigma1)?);
        hit[a.apply(0)] = true;
    }
    Ok((0..s.n()).filter(|&g| hit[g]).map(|g| g + s.n()).collect())
}

/// Smallest nonzero even h with (S ∩ 2ℤ_n) + h = S ∩ 2ℤ_n; none when the even part is empty.
pub fn condition_i(s: &ConnectionSet) -> Option<usize> {
    let n = s.n();
    if n % 2 != 0 {
        return None;
    }
    let even = s.even_part();
    if even.is_empty() {
        return None;
    }
    (2..n).step_by(2).find(|&h| even.shift(h) == even)
}

/// Smallest unit l with lS = S + n/2.
pub fn condition_ii(s: &ConnectionSet) -> Option<usize> {
    let n = s.n();
    if n % 2 != 0 {
        return None;
    }
    let target = s.shift(n / 2);
    units(n).into_iter().map(|l| l.value()).find(|&l| s.as_set().scale(l) == target)
}
