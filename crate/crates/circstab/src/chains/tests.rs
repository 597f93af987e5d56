use super::*;
use crate::graph::{build_circulant, ConnectionSet};
use crate::twofold::{gamma, tf_group};
use crate::zn::{crt_split, CyclicSubgroup};
use proptest::prelude::*;

fn colors(m: usize, lists: &[&[usize]]) -> ColoredConnectionSets {
    ColoredConnectionSets::from_lists(m, lists).unwrap()
}

fn cs(n: usize, s: &[usize]) -> ConnectionSet {
    ConnectionSet::new(n, s.iter().copied()).unwrap()
}

fn rotation(m: usize, r: usize) -> Permutation {
    Permutation::from_fn(m, |x| (x + r) % m).unwrap()
}

fn all_perms(m: usize) -> Vec<Permutation> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        let m = used.len();
        if prefix.len() == m {
            out.push(Permutation::from_images(prefix.clone()).unwrap());
            return;
        }
        for v in 0..m {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// Arc-by-arc check, written without neighbourhood keys.
fn step_by_arcs(c: &ColoredConnectionSets, a: &Permutation, b: &Permutation) -> bool {
    let m = c.n();
    c.colors().iter().all(|set| {
        (0..m).all(|v| {
            (0..m).all(|w| {
                let arc = set.contains((w + m - v) % m);
                let image = set.contains((b.apply(w) + m - a.apply(v)) % m);
                arc == image
            })
        })
    })
}

fn brute_next(c: &ColoredConnectionSets, a: &Permutation) -> Vec<Permutation> {
    all_perms(c.n()).into_iter().filter(|b| step_by_arcs(c, a, b)).collect()
}

/// σ_0 whose brute-force forward orbit returns to σ_0.
fn brute_chain_starts(c: &ColoredConnectionSets) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for s0 in all_perms(c.n()) {
        let mut cur = s0.clone();
        for _ in 0..1000 {
            let next = brute_next(c, &cur);
            assert!(next.len() <= 1);
            match next.into_iter().next() {
                Some(n) => cur = n,
                None => break,
            }
            if cur == s0 {
                out.push(s0.images().to_vec());
                break;
            }
        }
    }
    out
}

#[test]
fn identity_and_rotations_have_period_one() {
    let c = colors(5, &[&[1]]);
    let id = chain_extend(&c, &Permutation::identity(5)).unwrap().unwrap();
    assert_eq!(id.period(), 1);
    assert!(id.layer(0).is_identity());
    for r in 0..5 {
        let cert = chain_extend(&c, &rotation(5, r)).unwrap().unwrap();
        assert_eq!(cert.period(), 1);
        assert_eq!(cert.layer(-3), &rotation(5, r));
        assert_eq!(gamma_chain(&c, &rotation(5, r)).unwrap().unwrap(), rotation(5, r));
    }
}

#[test]
fn reflection_on_the_directed_pentagon() {
    let c = colors(5, &[&[1]]);
    let reflection = Permutation::from_fn(5, |x| (5 - x) % 5).unwrap();
    let cert = chain_extend(&c, &reflection).unwrap().unwrap();
    assert_eq!(cert.period(), 5);
    for j in 0..5i64 {
        let expected = Permutation::from_fn(5, |x| (10 - x + 2 * j as usize) % 5).unwrap();
        assert_eq!(cert.layer(j), &expected);
    }
    let mut cur = reflection.clone();
    for j in 1..=5 {
        let next = brute_next(&c, &cur);
        assert_eq!(next.len(), 1);
        cur = next.into_iter().next().unwrap();
        assert_eq!(&cur, cert.layer(j));
    }
}

#[test]
fn directed_pentagon_chain_group_is_symmetric() {
    let c = colors(5, &[&[1]]);
    let certs = chain_automorphisms(&c, 1_000_000).unwrap();
    assert_eq!(certs.len(), 120);
    let fixed: Vec<_> = certs.iter().filter(|cert| cert.period() == 1).map(|cert| cert.layer(0).clone()).collect();
    assert_eq!(fixed, (0..5).map(|r| rotation(5, r)).collect::<Vec<_>>());
    let report = verify_gamma_power_law(&c).unwrap();
    assert!(report.holds());
    assert!(!report.gamma_is_identity);
    assert_eq!((report.elements, report.max_period), (120, 5));
}

#[test]
fn non_reduced_input_is_rejected() {
    let c = colors(6, &[&[1, 4]]);
    assert!(matches!(chain_extend(&c, &Permutation::identity(6)), Err(Error::NotReduced)));
    assert!(matches!(chain_automorphisms(&c, 10), Err(Error::NotReduced)));
    let split = colors(6, &[&[1, 4], &[1]]);
    assert!(chain_extend(&split, &Permutation::identity(6)).unwrap().is_some());
}

#[test]
fn propagation_matches_brute_force() {
    let cases: &[&[&[usize]]] = &[&[&[1]], &[&[1, 2]], &[&[1], &[2]], &[&[1, 3]], &[&[2, 3], &[1]], &[&[1, 2, 4]]];
    for m in [4, 5, 6] {
        for lists in cases {
            let c = colors(m, lists);
            if !c.is_reduced() || c.has_loops() {
                continue;
            }
            let prop = Propagator::new(&c).unwrap();
            for sigma in all_perms(m) {
                let brute = brute_next(&c, &sigma);
                assert_eq!(prop.forward(&sigma), brute.first().cloned(), "{m} {lists:?}");
            }
            let fast: Vec<Vec<usize>> = chain_automorphisms(&c, 1_000_000).unwrap().iter().map(|x| x.layer(0).images().to_vec()).collect();
            assert_eq!(fast, brute_chain_starts(&c), "{m} {lists:?}");
        }
    }
}

#[test]
fn certificates_validate_over_two_periods() {
    for m in [5, 6, 7] {
        for lists in [&[&[1usize, 2][..]][..], &[&[1], &[3]]] {
            let c = colors(m, lists);
            if !c.is_reduced() {
                continue;
            }
            for cert in chain_automorphisms(&c, 1_000_000).unwrap() {
                assert!(cert.validate());
                assert_eq!(cert.layer(cert.period() as i64), cert.layer(0));
            }
        }
    }
}

#[test]
fn undirected_chains_are_two_fold_pairs() {
    for n in 3..=12 {
        for s in ConnectionSet::all(n) {
            let g = build_circulant(&s);
            if !g.is_connected() || g.is_bipartite() || !g.is_reduced() {
                continue;
            }
            let c = ColoredConnectionSets::new(n, vec![s.as_set()]).unwrap();
            let Ok(certs) = chain_automorphisms(&c, 50_000) else { continue };
            let mut chain_starts: Vec<Vec<usize>> = certs.iter().map(|x| x.layer(0).images().to_vec()).collect();
            let mut pair_starts: Vec<Vec<usize>> =
                tf_group(&s).unwrap().all_pairs(50_000).unwrap().into_iter().map(|p| p.sigma1.images().to_vec()).collect();
            chain_starts.sort();
            pair_starts.sort();
            pair_starts.dedup();
            assert_eq!(chain_starts, pair_starts, "{s}");
            for cert in &certs {
                assert!(cert.period() <= 2);
                assert_eq!(gamma_chain(&c, cert.layer(0)).unwrap().unwrap(), gamma(&s, cert.layer(0)).unwrap(), "{s}");
            }
        }
    }
}

#[test]
fn transport_by_one_and_by_m_plus_one() {
    let c = colors(5, &[&[1]]);
    let reflection = Permutation::from_fn(5, |x| (5 - x) % 5).unwrap();
    let cert = chain_extend(&c, &reflection).unwrap().unwrap();
    assert_eq!(multiplier_transport(&cert, 1).unwrap(), cert);
    assert_eq!(multiplier_transport(&cert, 6).unwrap(), cert);
}

#[test]
fn transport_on_the_quadratic_residue_digraph() {
    let c = colors(7, &[&[1, 2, 4]]);
    let certs = chain_automorphisms(&c, 1_000_000).unwrap();
    assert_eq!(certs.len(), 21);
    assert!(certs.iter().all(|x| x.period() == 1));
    let doubling = Permutation::from_fn(7, |x| 2 * x % 7).unwrap();
    assert!(certs.iter().any(|x| x.layer(0) == &doubling));
    for cert in &certs {
        let t = multiplier_transport(cert, 2).unwrap();
        assert_eq!(t.colors(), &c);
        assert!(t.validate());
        assert_eq!(chain_extend(&c, t.layer(0)).unwrap().unwrap(), t);
    }
}

#[test]
fn transport_composes() {
    for (m, lists) in [(7, &[&[1usize, 2][..]][..]), (9, &[&[1], &[3]]), (5, &[&[1]])] {
        let c = colors(m, lists);
        let us: Vec<usize> = units(m).into_iter().map(|u| u.value()).collect();
        for cert in chain_automorphisms(&c, 100_000).unwrap().iter().take(40) {
            for &a in &us {
                let ta = multiplier_transport(cert, a).unwrap();
                for &b in &us {
                    let tab = multiplier_transport(&ta, b).unwrap();
                    let direct = multiplier_transport(cert, a * b % m).unwrap();
                    assert_eq!(tab.layers(), direct.layers());
                    assert_eq!(tab.colors(), direct.colors());
                }
            }
        }
    }
}

#[test]
fn odd_undirected_reduced_graphs_have_trivial_gamma() {
    for m in [3, 5, 7, 9] {
        for s in ConnectionSet::all(m) {
            let c = ColoredConnectionSets::new(m, vec![s.as_set()]).unwrap();
            if s.is_empty() || !c.is_reduced() {
                continue;
            }
            let report = verify_gamma_power_law(&c).unwrap();
            assert!(report.holds(), "{s}");
            assert!(report.gamma_is_identity, "{s}");
        }
    }
}

#[test]
fn gamma_laws_on_small_two_colour_digraphs() {
    for m in [5, 7] {
        let nonzero: Vec<usize> = (1..m).collect();
        let mut sets: Vec<Vec<usize>> = nonzero.iter().map(|&a| vec![a]).collect();
        for (i, &a) in nonzero.iter().enumerate() {
            for &b in &nonzero[i + 1..] {
                sets.push(vec![a, b]);
            }
        }
        let mut checked = 0;
        for (i, a) in sets.iter().enumerate() {
            for b in sets[i..].iter().map(Some).chain([None]) {
                let lists: Vec<&[usize]> = std::iter::once(a.as_slice()).chain(b.map(|x| x.as_slice())).collect();
                let c = colors(m, &lists);
                if !c.is_reduced() {
                    continue;
                }
                let report = verify_gamma_power_law(&c).unwrap();
                assert!(report.holds(), "{m} {lists:?}");
                checked += 1;
            }
        }
        assert!(checked > 0);
    }
}

#[test]
fn proper_path_census_examples() {
    let c = colors(5, &[&[1]]);
    assert_eq!(proper_path_census(&c, 0, 3, 0, 3).unwrap(), 1);
    assert_eq!(proper_path_census(&c, 0, 3, 0, 2).unwrap(), 0);
    let c2 = colors(5, &[&[1, 4]]);
    assert_eq!(proper_path_census(&c2, 0, 2, 1, 3).unwrap(), 1);
    assert_eq!(proper_path_count_mod(&c2.colors()[0], 2, 1, 3, 1000), 1);
    assert_eq!(proper_path_count_mod(&c2.colors()[0], 2, 1, 1, 1000), 2);
    assert!(matches!(proper_path_census(&c, 0, 4, 0, 1), Err(Error::Invalid(_))));
    assert!(matches!(proper_path_census(&c, 0, 5, 0, 1), Err(Error::NotAUnit(5, 5))));
    assert!(proper_path_census(&c, 1, 3, 0, 1).is_err());
}

proptest! {
    #[test]
    fn census_counts_multiples(m in 2usize..14, bits in 1u64..(1 << 13), x in 0usize..14, y in 0usize..14, pi in 0usize..4) {
        let p = [2, 3, 5, 7][pi];
        prop_assume!(gcd(p, m) == 1);
        let set = ZnSet::from_bits(m, bits & ((1u64 << m) - 1));
        let c = ColoredConnectionSets::new(m, vec![set.clone()]).unwrap();
        let expected = usize::from(set.elements().iter().any(|&s| (p * s) % m == (y + m - x % m) % m));
        prop_assert_eq!(proper_path_census(&c, 0, p, x % m, y % m).unwrap(), expected);
    }
}

#[test]
fn replacing_translations_changes_nothing() {
    let split = crt_split(15, 3).unwrap();
    for h in [0, 5, 10] {
        assert_eq!(crt_replacement(&split, &rotation(15, h)), rotation(15, h));
    }
}

#[test]
fn replacement_on_fifteen_is_full() {
    let r = replacement_verify(&cs(15, &[1, 4, 11, 14]), &CyclicSubgroup::from_step(15, 5).unwrap(), 0, 1).unwrap();
    assert_eq!(r.mode, ReplacementMode::Full);
    assert!(r.all_passed(), "{r:?}");
    assert_eq!(r.checked as u128, r.kernel_order.to_string().parse::<u128>().unwrap());
    assert!(r.chain_steps_checked > 0);
}

#[test]
fn replacement_on_thirty() {
    let s = cs(30, &[3, 27, 10, 20, 15]);
    let r = replacement_verify(&s, &CyclicSubgroup::from_step(30, 10).unwrap(), 200, 7).unwrap();
    assert!(r.all_passed(), "{r:?}");
    assert!(!r.probe);
    let sampled = replacement_verify_sampled(&s, &CyclicSubgroup::from_step(30, 10).unwrap(), 40, 7).unwrap();
    assert_eq!(sampled.mode, ReplacementMode::Sampled);
    assert!(sampled.all_passed() && sampled.checked >= 40, "{sampled:?}");
}

#[test]
fn exhaustive_replacement_counts_the_kernel() {
    let s = cs(15, &[1, 4, 11, 14]);
    let h = CyclicSubgroup::from_step(15, 5).unwrap();
    let full = replacement_verify_exhaustive(&s, &h, 1 << 20).unwrap();
    assert_eq!(full, replacement_verify(&s, &h, 0, 1).unwrap());
    let big = cs(15, &[3, 6, 9, 12]);
    let h5 = CyclicSubgroup::from_step(15, 3).unwrap();
    assert!(matches!(replacement_verify_exhaustive(&big, &h5, 1000), Err(Error::Precondition(_))));
}

#[test]
fn replacement_requires_coprime_orders() {
    let s = cs(12, &[1, 5, 6, 7, 11]);
    let h = CyclicSubgroup::from_step(12, 6).unwrap();
    assert!(matches!(replacement_verify(&s, &h, 10, 1), Err(Error::NotCoprime { l1: 2, l2: 6 })));
    let probe = replacement_probe(&s, &h, 10, 1).unwrap();
    assert!(probe.probe);
    assert_eq!(probe.chain_steps_checked, 0);
    assert!(matches!(replacement_verify(&s, &CyclicSubgroup::from_step(6, 2).unwrap(), 1, 1), Err(Error::Invalid(_))));
}

#[test]
fn replacement_never_fails_on_coprime_pairs() {
    for (n, step) in [(6, 2), (6, 3), (10, 2), (10, 5), (12, 3), (12, 4), (15, 3), (15, 5)] {
        let h = CyclicSubgroup::from_step(n, step).unwrap();
        for s in ConnectionSet::all(n) {
            let r = replacement_verify(&s, &h, 50, 3).unwrap();
            assert!(r.all_passed(), "{s} H=<{step}>: {r:?}");
        }
    }
}

#[test]
fn replacement_report_json() {
    let r = replacement_verify(&cs(6, &[1, 5]), &CyclicSubgroup::from_step(6, 2).unwrap(), 0, 0).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["H"], 3);
    assert_eq!(v["mode"], "full");
    assert_eq!(v["set"], serde_json::json!([1, 5]));
    assert_eq!(v["failures"], serde_json::json!([]));
    assert_eq!(v["kernel_order"].to_string(), r.kernel_order.to_string());
}
