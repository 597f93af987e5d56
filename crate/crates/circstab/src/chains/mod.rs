//! Chain automorphisms of colored directed circulants: layer propagation,
//! γ on chains, multiplier transport, the γ-power laws, proper-path counts,
//! and the replacement-property verifier.

mod replacement;

pub use replacement::{crt_replacement, replacement_probe, replacement_verify, replacement_verify_exhaustive, replacement_verify_sampled, ReplacementMode, ReplacementReport, REPLACEMENT_FULL_LIMIT};

use crate::error::{Error, Result};
use crate::graph::{ColoredConnectionSets, DenseGraph, ZnSet};
use crate::perm::Permutation;
use crate::permgrp::automorphisms;
use crate::twofold::multiplier;
use crate::zn::{gcd, units};
use serde::Serialize;
use std::collections::{HashMap, HashSet};

/// Propagation steps before giving up on finding a period.
pub const CHAIN_STEP_CAP: usize = 1 << 16;

/// Looks up vertices of a reduced colored circulant by their colored in- or out-neighbourhoods.
#[derive(Clone, Debug)]
pub struct Propagator {
    colors: ColoredConnectionSets,
    by_in: HashMap<Vec<u64>, usize>,
    by_out: HashMap<Vec<u64>, usize>,
}

impl Propagator {
    pub fn new(colors: &ColoredConnectionSets) -> Result<Propagator> {
        if !colors.is_reduced() {
            return Err(Error::NotReduced);
        }
        let m = colors.n();
        let by_in = (0..m).map(|w| (in_key(colors, w, |x| x), w)).collect();
        let by_out = (0..m).map(|v| (out_key(colors, v, |x| x), v)).collect();
        Ok(Propagator { colors: colors.clone(), by_in, by_out })
    }

    pub fn colors(&self) -> &ColoredConnectionSets {
        &self.colors
    }

    /// The unique next layer after `sigma`, if one exists.
    pub fn forward(&self, sigma: &Permutation) -> Option<Permutation> {
        self.step(&self.by_in, sigma, |c, m, w, f| in_bits(c, m, w, f))
    }

    /// The unique previous layer before `sigma`, if one exists.
    pub fn backward(&self, sigma: &Permutation) -> Option<Permutation> {
        self.step(&self.by_out, sigma, |c, m, v, f| out_bits(c, m, v, f))
    }

    fn step(
        &self,
        index: &HashMap<Vec<u64>, usize>,
        sigma: &Permutation,
        bits: impl Fn(&ZnSet, usize, usize, &dyn Fn(usize) -> usize) -> u64,
    ) -> Option<Permutation> {
        let m = self.colors.n();
        let mut key = vec![0u64; self.colors.colors().len()];
        let mut images = Vec::with_capacity(m);
        for w in 0..m {
            for (k, c) in key.iter_mut().zip(self.colors.colors()) {
                *k = bits(c, m, w, &|x| sigma.apply(x));
            }
            images.push(*index.get(key.as_slice())?);
        }
        Permutation::from_images(images).ok()
    }
}

fn set_bits(c: &ZnSet) -> impl Iterator<Item = usize> {
    let mut b = c.bits();
    std::iter::from_fn(move || {
        (b != 0).then(|| {
            let s = b.trailing_zeros() as usize;
            b &= b - 1;
            s
        })
    })
}

fn in_bits(c: &ZnSet, m: usize, w: usize, f: &dyn Fn(usize) -> usize) -> u64 {
    set_bits(c).fold(0u64, |acc, s| acc | 1 << f((w + m - s) % m))
}

fn out_bits(c: &ZnSet, m: usize, v: usize, f: &dyn Fn(usize) -> usize) -> u64 {
    set_bits(c).fold(0u64, |acc, s| acc | 1 << f((v + s) % m))
}

fn in_key(colors: &ColoredConnectionSets, w: usize, f: impl Fn(usize) -> usize) -> Vec<u64> {
    colors.colors().iter().map(|c| in_bits(c, colors.n(), w, &f)).collect()
}

fn out_key(colors: &ColoredConnectionSets, v: usize, f: impl Fn(usize) -> usize) -> Vec<u64> {
    colors.colors().iter().map(|c| out_bits(c, colors.n(), v, &f)).collect()
}

/// Whether (a, b) maps the arcs between two consecutive layers onto themselves, color by color.
pub fn is_chain_step(colors: &ColoredConnectionSets, a: &Permutation, b: &Permutation) -> bool {
    let m = colors.n();
    a.degree() == m
        && b.degree() == m
        && (0..m).all(|w| colors.colors().iter().all(|c| in_bits(c, m, w, &|x| a.apply(x)) == in_bits(c, m, b.apply(w), &|x| x)))
}

/// A chain automorphism {σ_j} stored as one period σ_0, …, σ_{T−1}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainCertificate {
    #[serde(skip)]
    colors: ColoredConnectionSets,
    layers: Vec<Permutation>,
}

impl ChainCertificate {
    pub fn colors(&self) -> &ColoredConnectionSets {
        &self.colors
    }

    pub fn period(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[Permutation] {
        &self.layers
    }

    /// σ_j for any integer j.
    pub fn layer(&self, j: i64) -> &Permutation {
        &self.layers[j.rem_euclid(self.layers.len() as i64) as usize]
    }

    /// Re-checks every consecutive pair of layers over two periods.
    pub fn validate(&self) -> bool {
        let t = self.period() as i64;
        (0..2 * t).all(|j| is_chain_step(&self.colors, self.layer(j), self.layer(j + 1)))
    }
}

fn minimal_period(layers: Vec<Permutation>) -> Vec<Permutation> {
    let t = layers.len();
    let p = (1..=t).find(|&p| t % p == 0 && (0..t).all(|j| layers[j] == layers[j % p])).unwrap_or(t);
    layers.into_iter().take(p).collect()
}

/// Extends σ_0 to a chain automorphism by forward propagation until the layers repeat.
///
/// Returns `None` when some layer has no successor. Reducedness makes each
/// step injective, so the first repeated layer is σ_0 itself.
pub fn chain_extend(colors: &ColoredConnectionSets, sigma0: &Permutation) -> Result<Option<ChainCertificate>> {
    chain_extend_with(&Propagator::new(colors)?, sigma0)
}

pub fn chain_extend_with(prop: &Propagator, sigma0: &Permutation) -> Result<Option<ChainCertificate>> {
    if sigma0.degree() != prop.colors.n() {
        return Err(Error::Invalid("permutation degree differs from the modulus".into()));
    }
    let mut layers = vec![sigma0.clone()];
    loop {
        let Some(next) = prop.forward(layers.last().unwrap()) else {
            return Ok(None);
        };
        if &next == sigma0 {
            break;
        }
        if layers.len() >= CHAIN_STEP_CAP {
            return Err(Error::Budget(CHAIN_STEP_CAP as u64));
        }
        layers.push(next);
    }
    if prop.backward(sigma0).as_ref() != layers.last() {
        return Err(Error::Falsified("backward propagation disagrees with the forward period".into()));
    }
    Ok(Some(ChainCertificate { colors: prop.colors.clone(), layers }))
}

/// γ(σ_0) = σ_1, the next layer of the chain through σ_0.
pub fn gamma_chain(colors: &ColoredConnectionSets, sigma0: &Permutation) -> Result<Option<Permutation>> {
    Ok(chain_extend(colors, sigma0)?.map(|c| c.layer(1).clone()))
}

/// The subsampled chain {σ_{li}}, checked edge by edge as a chain automorphism
/// of Γ^{(l)} = DiCay(ℤ_m, lS_1, …, lS_k).
pub fn multiplier_transport(cert: &ChainCertificate, l: usize) -> Result<ChainCertificate> {
    let target = cert.colors.multiply(l)?;
    let t = cert.period();
    let layers = minimal_period((0..t).map(|i| cert.layer((l * i) as i64).clone()).collect());
    let out = ChainCertificate { colors: target, layers };
    let p = out.period() as i64;
    if !(0..p).all(|j| is_chain_step(&out.colors, out.layer(j), out.layer(j + 1))) {
        return Err(Error::Falsified(format!("transport by {l} is not a chain automorphism of the multiplied digraph")));
    }
    Ok(out)
}

/// The graph on two consecutive layers: vertex v of layer 0 is v, of layer 1 is m + v.
pub fn window_graph(colors: &ColoredConnectionSets) -> DenseGraph {
    let m = colors.n();
    let relations = colors
        .colors()
        .iter()
        .map(|c| {
            let mut rows = vec![0u128; 2 * m];
            for (v, row) in rows.iter_mut().enumerate().take(m) {
                for s in c.elements() {
                    *row |= 1u128 << (m + (v + s) % m);
                }
            }
            rows
        })
        .collect();
    let g = DenseGraph::from_relations(2 * m, relations).expect("window graph");
    g.with_coloring((0..2 * m).map(|v| v / m).collect()).expect("layer coloring")
}

/// Every σ_0 that extends to a chain automorphism, ascending by image array.
pub fn chain_automorphisms(colors: &ColoredConnectionSets, limit: u128) -> Result<Vec<ChainCertificate>> {
    let prop = Propagator::new(colors)?;
    let m = colors.n();
    let window = automorphisms(&window_graph(colors), None)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for p in window.elements(limit)? {
        let sigma0 = Permutation::from_fn(m, |v| p.apply(v)).expect("layer preserved");
        if seen.insert(sigma0.clone()) {
            if let Some(cert) = chain_extend_with(&prop, &sigma0)? {
                out.push(cert);
            }
        }
    }
    out.sort_by(|a, b| a.layers[0].images().cmp(b.layers[0].images()));
    Ok(out)
}

/// Outcome of checking γ^m = id and ι(ψ_l)∘γ∘ι(ψ_l)⁻¹ = γ^l over all of Aut^Ch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaLawReport {
    pub m: usize,
    pub elements: usize,
    pub max_period: usize,
    pub periods_divide_m: bool,
    pub units_checked: Vec<usize>,
    pub conjugation_law: bool,
    pub gamma_is_identity: bool,
}

impl GammaLawReport {
    pub fn holds(&self) -> bool {
        self.periods_divide_m && self.conjugation_law
    }
}

/// Enumerates Aut^Ch through the window graph (at most 10^6 candidates) and
/// checks both laws; the conjugation law is checked on every element.
pub fn verify_gamma_power_law(colors: &ColoredConnectionSets) -> Result<GammaLawReport> {
    gamma_laws_on(colors, &chain_automorphisms(colors, 1_000_000)?)
}

/// Both laws over `certs`, which must be all of Aut^Ch. The next layer of
/// ψ_l⁻¹τψ_l is read from its own certificate, so a pulled-back element
/// missing from `certs` fails the conjugation law.
pub fn gamma_laws_on(colors: &ColoredConnectionSets, certs: &[ChainCertificate]) -> Result<GammaLawReport> {
    let m = colors.n();
    let by_first: HashMap<&Permutation, &ChainCertificate> = certs.iter().map(|c| (&c.layers[0], c)).collect();
    let periods_divide_m = certs.iter().all(|c| m % c.period() == 0);
    let max_period = certs.iter().map(ChainCertificate::period).max().unwrap_or(1);
    let unit_list: Vec<usize> = units(m).into_iter().map(|u| u.value()).collect();
    let mut conjugation_law = true;
    'outer: for &l in &unit_list {
        let psi = multiplier(m, l)?;
        let psi_inv = psi.inverse();
        for cert in certs {
            let pulled = psi_inv.compose(&cert.layers[0]).compose(&psi);
            let lhs = match by_first.get(&pulled) {
                Some(c) => psi.compose(c.layer(1)).compose(&psi_inv),
                None => {
                    conjugation_law = false;
                    break 'outer;
                }
            };
            if &lhs != cert.layer(l as i64) {
                conjugation_law = false;
                break 'outer;
            }
        }
    }
    Ok(GammaLawReport {
        m,
        elements: certs.len(),
        max_period,
        periods_divide_m,
        units_checked: unit_list,
        conjugation_law,
        gamma_is_identity: max_period == 1,
    })
}

/// The number of walks x = x_0, …, x_len = y with every step in `set`, modulo `modulus`.
pub fn proper_path_count_mod(set: &ZnSet, len: usize, x: usize, y: usize, modulus: usize) -> usize {
    let m = set.modulus();
    let mut counts = vec![0usize; m];
    counts[x % m] = 1 % modulus;
    for _ in 0..len {
        let mut next = vec![0usize; m];
        for (v, &c) in counts.iter().enumerate() {
            if c != 0 {
                for s in set.elements() {
                    let w = (v + s) % m;
                    next[w] = (next[w] + c) % modulus;
                }
            }
        }
        counts = next;
    }
    counts[y % m]
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// The number of proper paths of length p from x to y in color j, modulo p.
/// Equals 1 when y − x ∈ pS_j and 0 otherwise.
pub fn proper_path_census(colors: &ColoredConnectionSets, j: usize, p: usize, x: usize, y: usize) -> Result<usize> {
    let m = colors.n();
    if !is_prime(p) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    if gcd(p, m) != 1 {
        return Err(Error::NotAUnit(p, m));
    }
    let set = colors.colors().get(j).ok_or_else(|| Error::Invalid(format!("no color {j}")))?;
    Ok(proper_path_count_mod(set, p, x, y, p))
}

#[cfg(test)]
mod tests;
