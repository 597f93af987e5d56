use super::is_chain_step;
use crate::error::{Error, Result};
use crate::graph::{build_circulant, ColoredConnectionSets, ConnectionSet, DenseGraph, ZnSet};
use crate::perm::Permutation;
use crate::twofold::circulant_automorphisms;
use crate::zn::{coset_partition, crt_split, gcd, CrtSplit, CyclicSubgroup};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Kernels up to this order are enumerated in full.
pub const REPLACEMENT_FULL_LIMIT: u128 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReplacementMode {
    Full,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReplacementReport {
    pub n: usize,
    pub set: Vec<usize>,
    #[serde(rename = "H")]
    pub h: usize,
    #[serde(serialize_with = "crate::json::exact")]
    pub kernel_order: BigUint,
    pub checked: usize,
    pub passed: usize,
    pub mode: ReplacementMode,
    /// |H| and n/|H| share a factor; f picks the least element of each coset
    /// and failures are informative only.
    pub probe: bool,
    /// Layer-by-layer checks of the chain automorphisms built inside the proof.
    pub chain_steps_checked: usize,
    pub chain_step_failures: usize,
    /// Image arrays of the σ whose replacement is not an automorphism.
    pub failures: Vec<Vec<usize>>,
}

impl ReplacementReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.checked && self.chain_step_failures == 0
    }
}

/// σ̃(xℓ₂ + yℓ₁) = σ(xℓ₂) + yℓ₁ for σ fixing every coset of the order-ℓ₁ subgroup.
pub fn crt_replacement(split: &CrtSplit, sigma: &Permutation) -> Permutation {
    Lift::Crt(split.clone()).apply(sigma.degree(), sigma)
}

enum Lift {
    Crt(CrtSplit),
    LeastRepresentative(usize),
}

impl Lift {
    /// σ̃: σ restricted to H, copied to each coset through f.
    fn apply(&self, n: usize, sigma: &Permutation) -> Permutation {
        match self {
            Lift::Crt(split) => Permutation::from_fn(n, |z| {
                let (x, y) = split.backward(z);
                (sigma.apply(split.forward(x, 0)) + split.forward(0, y)) % n
            }),
            Lift::LeastRepresentative(step) => Permutation::from_fn(n, |z| {
                let r = z % step;
                (r + sigma.apply((z + n - r) % n)) % n
            }),
        }
        .expect("σ fixes H, so the lift is a bijection")
    }
}

fn fixes_cosets(sigma: &Permutation, step: usize) -> bool {
    (0..sigma.degree()).all(|z| sigma.apply(z) % step == z % step)
}

/// The sequences σ_j(x) = π₁ σ(x, j·i) for each nonzero i with T_i nonempty,
/// checked as chain automorphisms of DiCay(ℤ_{ℓ₁}, T̃_i), together with the
/// constant sequence σ_0. Returns (checks, failures).
fn proof_chain_checks(s: &ConnectionSet, split: &CrtSplit, sigma: &Permutation) -> (usize, usize) {
    let (l1, l2) = (split.l1(), split.l2());
    let (mut checks, mut failures) = (0, 0);
    for i in 1..l2 {
        let t = ZnSet::from_elements(l1, s.elements().into_iter().map(|z| split.backward(z)).filter(|&(_, y)| y == i).map(|(x, _)| x));
        if t.is_empty() {
            continue;
        }
        let colors = ColoredConnectionSets::new(l1, vec![t]).expect("modulus in range");
        let layer = |j: usize| {
            Permutation::from_fn(l1, |x| split.backward(sigma.apply(split.forward(x, j * i % l2))).0).expect("σ fixes cosets")
        };
        for j in 0..l2 {
            checks += 1;
            if !is_chain_step(&colors, &layer(j), &layer(j + 1)) {
                failures += 1;
            }
        }
        checks += 1;
        if !is_chain_step(&colors, &layer(0), &layer(0)) {
            failures += 1;
        }
    }
    (checks, failures)
}

enum Plan {
    FullUpTo { limit: u128, sample_budget: usize, seed: u64 },
    Full { limit: u128 },
    Sampled { sample_budget: usize, seed: u64 },
}

fn verify(s: &ConnectionSet, h: &CyclicSubgroup, lift: Lift, plan: Plan) -> Result<ReplacementReport> {
    let n = s.n();
    let step = h.step();
    let graph: DenseGraph = build_circulant(s);
    let kernel = circulant_automorphisms(s)?.partition_kernel(&coset_partition(h))?;
    let fits = |limit: u128| kernel.order() <= &BigUint::from(limit);
    let sampled = match plan {
        Plan::FullUpTo { limit, .. } if fits(limit) => None,
        Plan::Full { limit } if fits(limit) => None,
        Plan::Full { limit } => {
            return Err(Error::Precondition(format!("kernel order {} exceeds enumeration limit {limit}", kernel.order())));
        }
        Plan::FullUpTo { sample_budget, seed, .. } | Plan::Sampled { sample_budget, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut el = kernel.generators().to_vec();
            el.extend((0..sample_budget).map(|_| kernel.random_element(&mut rng)));
            Some(el)
        }
    };
    let mut report = ReplacementReport {
        n,
        set: s.elements(),
        h: h.order(),
        kernel_order: kernel.order().clone(),
        checked: 0,
        passed: 0,
        mode: if sampled.is_some() { ReplacementMode::Sampled } else { ReplacementMode::Full },
        probe: matches!(lift, Lift::LeastRepresentative(_)),
        chain_steps_checked: 0,
        chain_step_failures: 0,
        failures: Vec::new(),
    };
    let mut check = |sigma: &Permutation| {
        report.checked += 1;
        let tilde = lift.apply(n, sigma);
        if graph.is_automorphism(&tilde) && fixes_cosets(&tilde, step) {
            report.passed += 1;
        } else {
            report.failures.push(sigma.images().to_vec());
        }
        if let Lift::Crt(split) = &lift {
            let (c, f) = proof_chain_checks(s, split, sigma);
            report.chain_steps_checked += c;
            report.chain_step_failures += f;
        }
    };
    match &sampled {
        Some(el) => el.iter().for_each(&mut check),
        None => kernel.for_each_element(&mut check),
    }
    Ok(report)
}

fn coprime_split(s: &ConnectionSet, h: &CyclicSubgroup) -> Result<Lift> {
    let n = s.n();
    if h.modulus() != n {
        return Err(Error::Invalid("subgroup modulus differs from n".into()));
    }
    let l1 = h.order();
    if gcd(l1, n / l1) != 1 {
        return Err(Error::NotCoprime { l1, l2: n / l1 });
    }
    Ok(Lift::Crt(crt_split(n, l1)?))
}

/// Checks that every σ in the kernel of the H-coset partition of Aut(Γ) can be
/// replaced by σ̃, which acts on every coset as σ acts on H.
///
/// Requires gcd(|H|, n/|H|) = 1; f is built from the CRT split
/// (x, y) ↦ xℓ₂ + yℓ₁. Kernels larger than [`REPLACEMENT_FULL_LIMIT`] are checked
/// on their generators plus `sample_budget` uniform elements drawn with `seed`.
/// Since σ ↦ σ̃ is a homomorphism, passing generators already covers the kernel.
pub fn replacement_verify(s: &ConnectionSet, h: &CyclicSubgroup, sample_budget: usize, seed: u64) -> Result<ReplacementReport> {
    verify(s, h, coprime_split(s, h)?, Plan::FullUpTo { limit: REPLACEMENT_FULL_LIMIT, sample_budget, seed })
}

/// [`replacement_verify`] on the generators plus `sample_budget` uniform
/// kernel elements, whatever the kernel order.
pub fn replacement_verify_sampled(s: &ConnectionSet, h: &CyclicSubgroup, sample_budget: usize, seed: u64) -> Result<ReplacementReport> {
    verify(s, h, coprime_split(s, h)?, Plan::Sampled { sample_budget, seed })
}

/// [`replacement_verify`] on every kernel element, streamed; fails with
/// `Precondition` when the kernel has more than `limit` elements.
pub fn replacement_verify_exhaustive(s: &ConnectionSet, h: &CyclicSubgroup, limit: u128) -> Result<ReplacementReport> {
    verify(s, h, coprime_split(s, h)?, Plan::Full { limit })
}

/// The same check for any H, with f choosing the least element of each coset.
pub fn replacement_probe(s: &ConnectionSet, h: &CyclicSubgroup, sample_budget: usize, seed: u64) -> Result<ReplacementReport> {
    if h.modulus() != s.n() {
        return Err(Error::Invalid("subgroup modulus differs from n".into()));
    }
    verify(s, h, Lift::LeastRepresentative(h.step()), Plan::FullUpTo { limit: REPLACEMENT_FULL_LIMIT, sample_budget, seed })
}
