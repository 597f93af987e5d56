use crate::survey::{candidate_sets, is_surveyed, SetSelection};
use circstab::chains::{
    chain_automorphisms, gamma_laws_on, multiplier_transport, replacement_verify_exhaustive, replacement_verify_sampled, ReplacementMode,
};
use circstab::cohomology::{
    affine, alternating, corestrict, cyclic_regular, dihedral, inflation_restriction_dims, projective_family, relabel_along_cycle,
    restrict, symmetric, vanishing_cocycle_scan, ActionGroup, Cohomology, Subgroup,
};
use circstab::graph::{build_circulant, circulant_reduced_shift, ColoredConnectionSets, ConnectionSet, ZnSet};
use circstab::perm::Permutation;
use circstab::schur::{circulant_module, cover_module, dichotomy_check, verify_ring_axioms, Dichotomy};
use circstab::twofold::{
    alpha, basic_set_a, circulant_automorphisms, classify_oracle, condition_ii, gamma, multiplier, tf_group,
};
use circstab::zn::{units, CyclicSubgroup};
use circstab::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub const SUITES: [&str; 5] = ["alpha", "chains", "replacement", "schur", "cohomology"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(suite: &str, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check { suite: suite.into(), name: name.into(), passed, detail: detail.into() }
    }
}

/// Budget errors abort the suite; any other library error fails the check.
fn settle(suite: &str, name: impl Into<String>, r: Result<(bool, String)>) -> Result<Check> {
    match r {
        Ok((passed, detail)) => Ok(Check::new(suite, name, passed, detail)),
        Err(e @ (Error::Budget(_) | Error::ClosureCap(_))) => Err(e),
        Err(e) => Ok(Check::new(suite, name, false, e.to_string())),
    }
}

pub fn run_suite(name: &str) -> Result<Vec<Check>> {
    match name {
        "alpha" => alpha_suite(),
        "chains" => chains_suite(),
        "replacement" => replacement_suite(),
        "schur" => schur_suite(),
        "cohomology" => cohomology_suite(),
        "all" => {
            let mut out = Vec::new();
            for s in SUITES {
                out.extend(run_suite(s)?);
            }
            Ok(out)
        }
        _ => Err(Error::Invalid(format!("unknown suite {name:?}"))),
    }
}

/// Connected, non-bipartite, reduced sets of ℤ_n that the oracle calls unstable.
pub fn unstable_reduced(n: usize) -> Result<Vec<ConnectionSet>> {
    let sets: Vec<ConnectionSet> = candidate_sets(n, SetSelection::All)?
        .into_iter()
        .filter(|s| is_surveyed(s) && circulant_reduced_shift(s).is_none())
        .collect();
    let unstable = sets.par_iter().map(|s| Ok(!classify_oracle(s)?.status.is_stable())).collect::<Result<Vec<bool>>>()?;
    Ok(sets.into_iter().zip(unstable).filter(|(_, u)| *u).map(|(s, _)| s).collect())
}

// ---------------------------------------------------------------- alpha

/// γ² = id, fixed(γ) = Aut Γ, the anti-cocycle law on generator pairs and
/// `samples` random products, and α(σ).x ∈ {x, x+m} when X_a = {a, m+a}.
pub fn alpha_laws(s: &ConnectionSet, samples: usize, seed: u64) -> Result<(bool, String)> {
    let n = s.n();
    let tf = tf_group(s)?;
    let aut = circulant_automorphisms(s)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens: Vec<Permutation> = tf.pairs.iter().map(|p| p.sigma1.clone()).collect();
    let randoms: Vec<Permutation> = (0..samples).map(|_| tf.random_pair(&mut rng).sigma1).collect();
    let alpha_of = |p: &Permutation| -> Result<Permutation> { Ok(p.inverse().compose(&gamma(s, p)?)) };
    for sigma in gens.iter().chain(&randoms) {
        let g = gamma(s, sigma)?;
        if gamma(s, &g)? != *sigma {
            return Ok((false, format!("γ² ≠ id at {:?}", sigma.images())));
        }
        if (g == *sigma) != aut.contains(sigma) {
            return Ok((false, format!("γ-fixed ≠ Aut Γ at {:?}", sigma.images())));
        }
    }
    let mut fixed_count = None;
    if let Ok(all) = tf.all_pairs(100_000) {
        let mut fixed = 0u64;
        for p in &all {
            if gamma(s, &p.sigma1)? == p.sigma1 {
                fixed += 1;
            }
        }
        if aut.order_u128() != Some(fixed as u128) {
            return Ok((false, format!("{fixed} γ-fixed elements, |Aut Γ| = {}", aut.order())));
        }
        fixed_count = Some(fixed);
    }
    let mut pairs: Vec<(Permutation, Permutation)> = Vec::new();
    for a in &gens {
        for b in &gens {
            pairs.push((a.clone(), b.clone()));
        }
    }
    for _ in 0..samples {
        pairs.push((tf.random_pair(&mut rng).sigma1, tf.random_pair(&mut rng).sigma1));
    }
    for (sigma, tau) in &pairs {
        let lhs = alpha_of(&sigma.compose(tau))?;
        let rhs = tau.inverse().compose(&alpha_of(sigma)?).compose(tau).compose(&alpha_of(tau)?);
        if lhs != rhs {
            return Ok((false, format!("anti-cocycle law fails at σ = {:?}, τ = {:?}", sigma.images(), tau.images())));
        }
    }
    let hypothesis = n % 2 == 0 && basic_set_a(s)? == [n, n + n / 2];
    if hypothesis {
        for sigma in gens.iter().chain(&randoms) {
            if alpha(s, sigma)?.displacement.is_none() {
                return Ok((false, format!("α moves a point outside its L-coset at {:?}", sigma.images())));
            }
        }
    }
    Ok((
        true,
        format!(
            "{} generators, {} random, {} pairs, fixed(γ) {}, X_a = {{a, m+a}}: {hypothesis}",
            gens.len(),
            randoms.len(),
            pairs.len(),
            fixed_count.map_or("by membership".to_string(), |f| format!("= {f}"))
        ),
    ))
}

/// x ↦ lx maps Cay(ℤ_n, S) onto Cay(ℤ_n, S + n/2), checked arc by arc.
pub fn multiplier_isomorphism(s: &ConnectionSet, l: usize) -> Result<(bool, String)> {
    let n = s.n();
    let target = ConnectionSet::from_set(s.shift(n / 2))?;
    let psi = multiplier(n, l)?;
    let ok = build_circulant(s).is_isomorphism_to(&build_circulant(&target), &psi);
    Ok((ok, format!("{s} → {target} by x ↦ {l}x")))
}

fn alpha_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for n in [6, 10, 14] {
        for s in unstable_reduced(n)? {
            out.push(settle("alpha", format!("laws {s}"), alpha_laws(&s, 100, 7))?);
            if let Some(l) = condition_ii(&s) {
                out.push(settle("alpha", format!("isomorphism {s}"), multiplier_isomorphism(&s, l))?);
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------- schur

/// The dichotomy check for every unstable instance at n, plus ring axioms
/// for the circulant and cover modules of every surveyed set.
pub fn schur_checks(n: usize) -> Result<Vec<Check>> {
    let sets: Vec<ConnectionSet> = candidate_sets(n, SetSelection::All)?.into_iter().filter(is_surveyed).collect();
    let per_set = sets
        .par_iter()
        .map(|s| -> Result<Vec<Check>> {
            let mut out = Vec::new();
            if !classify_oracle(s)?.status.is_stable() {
                let r = dichotomy_check(s).map(|d| match d {
                    Dichotomy::Violation { basic_set } => (false, format!("X_a = {basic_set:?}")),
                    other => (true, format!("{other:?}")),
                });
                out.push(settle("schur", format!("dichotomy {s}"), r)?);
            }
            let axioms = (|| -> Result<(bool, String)> {
                let rings = [circulant_module(s)?, cover_module(s)?];
                for ring in &rings {
                    if let Err(v) = verify_ring_axioms(ring) {
                        return Ok((false, format!("{v:?}")));
                    }
                }
                Ok((true, format!("ambient orders {} and {}", n, 2 * n)))
            })();
            out.push(settle("schur", format!("ring axioms {s}"), axioms)?);
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(per_set.into_iter().flatten().collect())
}

fn schur_suite() -> Result<Vec<Check>> {
    let mut out = schur_checks(10)?;
    out.extend(schur_checks(14)?);
    Ok(out)
}

// ---------------------------------------------------------------- replacement

/// Kernels up to this order are enumerated element by element.
pub const EXHAUSTIVE_KERNEL_LIMIT: u128 = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verification {
    Exhaustive,
    Sampled { budget: usize },
}

/// Replacement on `count` sampled sets of ℤ_n for the subgroup of order h.
pub fn replacement_checks(n: usize, h: usize, count: usize, seed: u64, how: Verification) -> Result<Vec<Check>> {
    let sub = CyclicSubgroup::of_order(n, h)?;
    let sets = candidate_sets(n, SetSelection::Sample { k: count, seed })?;
    sets.par_iter()
        .map(|s| {
            let run = match how {
                Verification::Exhaustive => replacement_verify_exhaustive(s, &sub, EXHAUSTIVE_KERNEL_LIMIT),
                Verification::Sampled { budget } => replacement_verify_sampled(s, &sub, budget, seed),
            };
            let r = run.map(|rep| {
                let mode = match rep.mode {
                    ReplacementMode::Full => "full",
                    ReplacementMode::Sampled => "sampled",
                };
                (rep.all_passed(), format!("{mode}, kernel {}, {}/{} passed", rep.kernel_order, rep.passed, rep.checked))
            });
            settle("replacement", format!("{s} |H| = {h}"), r)
        })
        .collect()
}

fn replacement_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (n, h) in [(15, 3), (15, 5), (10, 5), (30, 3)] {
        out.extend(replacement_checks(n, h, 20, 1, Verification::Exhaustive)?);
    }
    for h in [2, 3, 5, 6, 10, 15] {
        out.extend(replacement_checks(30, h, 4, 2, Verification::Sampled { budget: 500 })?);
    }
    Ok(out)
}

// ---------------------------------------------------------------- chains

/// Colored circulant digraphs over ℤ_m with one or two disjoint color sets of
/// size one or two (loops allowed), unordered, reduced.
pub fn chain_instances(m: usize) -> Result<Vec<ColoredConnectionSets>> {
    let mut small: Vec<ZnSet> = (0..m).map(|a| ZnSet::from_elements(m, [a])).collect();
    for a in 0..m {
        for b in a + 1..m {
            small.push(ZnSet::from_elements(m, [a, b]));
        }
    }
    let mut out = Vec::new();
    for (i, a) in small.iter().enumerate() {
        out.push(ColoredConnectionSets::new(m, vec![a.clone()])?);
        for b in &small[i + 1..] {
            if a.intersect(b).is_empty() {
                out.push(ColoredConnectionSets::new(m, vec![a.clone(), b.clone()])?);
            }
        }
    }
    Ok(out.into_iter().filter(ColoredConnectionSets::is_reduced).collect())
}

/// γ^m = id and the conjugation law over all of Aut^Ch, then multiplier
/// transport of every chain automorphism by every unit.
pub fn chain_laws(colors: &ColoredConnectionSets) -> Result<(bool, String)> {
    let m = colors.n();
    let certs = chain_automorphisms(colors, 1_000_000)?;
    let report = gamma_laws_on(colors, &certs)?;
    if !report.holds() {
        return Ok((false, format!("{report:?}")));
    }
    let unit_list: Vec<usize> = units(m).into_iter().map(|u| u.value()).collect();
    for cert in &certs {
        for &l in &unit_list {
            if !multiplier_transport(cert, l)?.validate() {
                return Ok((false, format!("transport by {l} fails at {:?}", cert.layers()[0].images())));
            }
        }
    }
    Ok((true, format!("{} chain automorphisms, max period {}, {} units", certs.len(), report.max_period, unit_list.len())))
}

pub fn chain_checks(m: usize) -> Result<Vec<Check>> {
    chain_instances(m)?
        .par_iter()
        .map(|c| settle("chains", format!("ℤ{m} {:?}", c.colors().iter().map(ZnSet::elements).collect::<Vec<_>>()), chain_laws(c)))
        .collect()
}

fn chains_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for m in [5, 7, 9] {
        out.extend(chain_checks(m)?);
    }
    Ok(out)
}

// ---------------------------------------------------------------- cohomology

fn even_subgroup(g: &ActionGroup) -> Result<Subgroup> {
    g.closure_of((0..g.order()).filter(|&e| g.action(e).is_even()))
}

/// Relabels a group on P¹F_q so that one of its (q+1)-cycles becomes x ↦ x + 1.
pub fn singer_relabel(group: &ActionGroup) -> Result<ActionGroup> {
    let k = group.degree();
    let singer = (0..group.order())
        .find(|&e| group.action(e).cycles().iter().any(|c| c.len() == k))
        .ok_or_else(|| Error::Precondition("no full cycle in the group".into()))?;
    relabel_along_cycle(group, group.action(singer))
}

/// The named groups with their expected dim H¹(G, F₂[X]).
pub fn named_h1_values() -> Result<Vec<(String, ActionGroup, usize)>> {
    let mut out = Vec::new();
    for m in [3, 5, 7, 9, 15] {
        out.push((format!("Z{m} regular"), cyclic_regular(m)?, 0));
    }
    out.push(("A5 on 5 points".into(), alternating(5)?, 0));
    out.push(("S5 on 5 points".into(), symmetric(5)?, 1));
    let f4 = projective_family(2)?;
    out.push(("T2 on P1(F4)".into(), f4.translations, 2));
    out.push(("U2 on P1(F4)".into(), f4.upper, 0));
    out.push(("SL2(F4) on P1(F4)".into(), f4.sl2, 0));
    Ok(out)
}

pub fn h1_checks() -> Result<Vec<Check>> {
    named_h1_values()?
        .into_iter()
        .map(|(name, g, expected)| {
            let r = Cohomology::compute(&g).map(|co| (co.h1_dim() == expected, format!("dim H1 = {}, expected {expected}", co.h1_dim())));
            settle("cohomology", format!("H1 {name}"), r)
        })
        .collect()
}

/// The groups of the vanishing-cocycle scan and the expected kernel G₀
/// (`None` when no nonzero cocycle should vanish on the rotation).
pub fn scan_checks() -> Result<Vec<Check>> {
    let rotations = |g: &ActionGroup| -> Vec<usize> {
        let k = g.degree();
        let mut v: Vec<usize> = (0..k)
            .filter_map(|r| Permutation::from_fn(k, |x| (x + r) % k).ok().and_then(|p| g.index_of_action(&p)))
            .collect();
        v.sort_unstable();
        v
    };
    let evens = |g: &ActionGroup| -> Vec<usize> { (0..g.order()).filter(|&e| g.action(e).is_even()).collect() };
    let mut cases: Vec<(String, ActionGroup, Option<Vec<usize>>)> = Vec::new();
    for p in [5, 7, 11] {
        let g = dihedral(p)?;
        let k = rotations(&g);
        cases.push((format!("D{} on Z{p}", 2 * p), g, Some(k)));
    }
    let s5 = symmetric(5)?;
    let k = evens(&s5);
    cases.push(("S5 on Z5".into(), s5, Some(k)));
    let pgaml = singer_relabel(&projective_family(2)?.pgaml2)?;
    let k = evens(&pgaml);
    cases.push(("PGammaL2(F4) on P1(F4)".into(), pgaml, Some(k)));
    cases.push(("A5 on Z5".into(), alternating(5)?, None));
    cases
        .into_iter()
        .map(|(name, g, expected)| {
            let r = vanishing_cocycle_scan(&g).map(|scan| {
                let ok = scan.kernel == expected && scan.vanishing_dim == expected.is_some() as usize;
                (ok, format!("vanishing dim {}, kernel order {:?}", scan.vanishing_dim, scan.kernel.as_ref().map(Vec::len)))
            });
            settle("cohomology", format!("scan {name}"), r)
        })
        .collect()
}

/// cores(res ω) is in the class of [G:H]·ω for every basis cocycle ω.
pub fn res_cores(g: &ActionGroup, h: &Subgroup) -> Result<(bool, String)> {
    let co = Cohomology::compute(g)?;
    let index = g.order() / h.group.order();
    let basis = co.cocycle_basis(g);
    for omega in &basis {
        let back = corestrict(&restrict(omega, h), g, h)?;
        let ok = if index % 2 == 0 { co.is_coboundary(&back) } else { co.same_class(&back, omega) };
        if !ok {
            return Ok((false, format!("fails on a basis cocycle, index {index}")));
        }
    }
    Ok((true, format!("{} basis cocycles, index {index}", basis.len())))
}

pub fn res_cores_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for k in [3, 5] {
        let g = symmetric(k)?;
        let a = even_subgroup(&g)?;
        out.push(settle("cohomology", format!("cores∘res (S{k}, A{k})"), res_cores(&g, &a))?);
    }
    let s5 = symmetric(5)?;
    let a5 = even_subgroup(&s5)?;
    let f4 = projective_family(2)?;
    let u = &f4.upper;
    let t = u.closure_of((0..u.order()).filter(|&e| f4.translations.index_of(u.carrier(e)).is_some()))?;
    for (name, g, k) in [("(S5, A5)", &s5, &a5), ("(U2, T2)", u, &t)] {
        let r = inflation_restriction_dims(g, k).map(|d| (d.exact(), format!("{d:?}")));
        out.push(settle("cohomology", format!("inflation-restriction {name}"), r)?);
    }
    Ok(out)
}

fn cohomology_suite() -> Result<Vec<Check>> {
    let mut out = h1_checks()?;
    out.extend(scan_checks()?);
    out.extend(res_cores_checks()?);
    let aff = affine(7, 3)?;
    let r = vanishing_cocycle_scan(&aff).map(|s| (s.vanishing_dim == 1, format!("vanishing dim {}", s.vanishing_dim)));
    out.push(settle("cohomology", "scan AGL(1,7) index-2 subgroup", r)?);
    Ok(out)
}
