//! Acceptance run: one PASS/FAIL line per criterion. Exits nonzero if any fails.
//!
//! Tolerances are exact: no disagreement or violation passes, and dimensions must match.
//! Wall-clock budgets are printed next to the measured time but do not decide
//! the outcome.

use circstab::graph::{circulant_reduced_shift, ConnectionSet};
use circstab::twofold::{classify_oracle, condition_ii, Reason, Status, Witness};
use circstab_cli::suites::{
    alpha_laws, chain_checks, h1_checks, multiplier_isomorphism, replacement_checks, res_cores_checks, scan_checks, schur_checks,
    Check, Verification,
};
use circstab_cli::survey::{candidate_sets, is_surveyed, survey_sets, SetSelection, SurveyRecord};
use std::process::ExitCode;
use std::time::{Duration, Instant};

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_checks(checks: circstab::Result<Vec<Check>>, what: &str) -> Outcome {
    match checks {
        Ok(checks) => {
            let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed).collect();
            let detail = match failed.first() {
                None => format!("{} {what}, 0 failures", checks.len()),
                Some(c) => format!("{} of {} {what} failed; first: {} ({})", failed.len(), checks.len(), c.name, c.detail),
            };
            Outcome { passed: failed.is_empty() && !checks.is_empty(), detail }
        }
        Err(e) => Outcome { passed: false, detail: format!("error: {e}") },
    }
}

/// Cross-checked records for every surveyed set among `sets`; Err on the first disagreement or failure.
fn survey(sets: &[ConnectionSet]) -> Result<Vec<SurveyRecord>, String> {
    survey_sets(sets, false)
        .into_iter()
        .map(|(s, r)| match r {
            Ok(rec) if rec.verdict.agreement == Some(true) => Ok(rec),
            Ok(rec) => Err(format!("{s}: disagreement {:?}", rec.verdict.status)),
            Err(e) => Err(format!("{s}: {e}")),
        })
        .collect()
}

/// Unstable instances of criterion 1, with the multiplier of those the criteria call condition ii.
type Pool = Vec<(ConnectionSet, Option<usize>)>;

fn criterion_1() -> (Outcome, Pool) {
    let mut records = Vec::new();
    for n in [6, 10, 14] {
        match candidate_sets(n, SetSelection::All).map_err(|e| e.to_string()).and_then(|sets| survey(&sets)) {
            Ok(r) => records.extend(r),
            Err(e) => return (Outcome { passed: false, detail: e }, Vec::new()),
        }
    }
    let unstable: Pool = records
        .iter()
        .filter(|r| r.verdict.status != Status::Stable)
        .map(|r| {
            let s = ConnectionSet::new(r.verdict.n, r.verdict.set.iter().copied()).expect("surveyed set");
            let l = match (r.verdict.reason, &r.verdict.witness) {
                (Reason::ConditionIi, Some(Witness::L(l))) => Some(*l),
                _ => None,
            };
            (s, l)
        })
        .collect();
    let detail = format!("{} instances over n ∈ {{6, 10, 14}}, 0 disagreements, {} unstable", records.len(), unstable.len());
    (Outcome { passed: true, detail }, unstable)
}

fn criterion_2() -> Outcome {
    let sampled = match candidate_sets(22, SetSelection::Sample { k: 256, seed: 22 }) {
        Ok(s) => s,
        Err(e) => return Outcome { passed: false, detail: e.to_string() },
    };
    match survey(&sampled) {
        Ok(r) => Outcome {
            passed: r.len() >= 200,
            detail: format!("{} sampled sets (seed 22), {} connected non-bipartite, 0 disagreements", sampled.len(), r.len()),
        },
        Err(e) => Outcome { passed: false, detail: e },
    }
}

fn criterion_3() -> Outcome {
    let mut count = 0;
    for n in [5, 7, 9, 15] {
        let sets = candidate_sets(n, SetSelection::All).expect("odd moduli in range");
        for s in sets.iter().filter(|s| is_surveyed(s) && circulant_reduced_shift(s).is_none()) {
            match classify_oracle(s) {
                Ok(v) if v.status == Status::Stable => count += 1,
                Ok(v) => return Outcome { passed: false, detail: format!("{s}: oracle says {:?}", v.status) },
                Err(e) => return Outcome { passed: false, detail: format!("{s}: {e}") },
            }
        }
    }
    Outcome { passed: count > 0, detail: format!("{count} connected reduced instances over n ∈ {{5, 7, 9, 15}}, all stable") }
}

fn criterion_4(pool: &Pool) -> Outcome {
    let reduced: Vec<&ConnectionSet> = pool.iter().map(|(s, _)| s).filter(|s| circulant_reduced_shift(s).is_none()).collect();
    for s in &reduced {
        match alpha_laws(s, 100, 4) {
            Ok((true, _)) => {}
            Ok((false, d)) => return Outcome { passed: false, detail: format!("{s}: {d}") },
            Err(e) => return Outcome { passed: false, detail: format!("{s}: {e}") },
        }
    }
    let names: Vec<String> = reduced.iter().map(|s| s.to_string()).collect();
    Outcome { passed: !reduced.is_empty(), detail: format!("unstable reduced instances {names:?}, 0 violations") }
}

fn criterion_5() -> Outcome {
    let checks = schur_checks(10).and_then(|mut a| {
        a.extend(schur_checks(14)?);
        Ok(a)
    });
    from_checks(checks, "dichotomy and ring-axiom checks")
}

fn criterion_6() -> Outcome {
    let mut all = Vec::new();
    for (n, h) in [(15, 3), (15, 5), (10, 5), (30, 3)] {
        match replacement_checks(n, h, 20, 6, Verification::Exhaustive) {
            Ok(c) => {
                if c.len() < 20 {
                    return Outcome { passed: false, detail: format!("only {} sets for ({n}, {h})", c.len()) };
                }
                all.extend(c);
            }
            Err(e) => return Outcome { passed: false, detail: e.to_string() },
        }
    }
    for h in [2, 3, 5, 6, 10, 15] {
        match replacement_checks(30, h, 4, 6, Verification::Sampled { budget: 500 }) {
            Ok(c) => all.extend(c),
            Err(e) => return Outcome { passed: false, detail: e.to_string() },
        }
    }
    from_checks(Ok(all), "instances (80 full-kernel, 24 sampled at n = 30 with budget 500)")
}

fn criterion_7() -> Outcome {
    let checks = [5, 7, 9].into_iter().map(chain_checks).collect::<circstab::Result<Vec<_>>>().map(|v| v.concat());
    from_checks(checks, "colored digraphs over m ∈ {5, 7, 9}")
}

fn criterion_11(pool: &Pool) -> Outcome {
    let mut count = 0;
    for (s, witness) in pool {
        if let Some(l) = *witness {
            if condition_ii(s).is_none() {
                return Outcome { passed: false, detail: format!("{s}: reported condition ii but lS ≠ S + n/2 for every unit") };
            }
            match multiplier_isomorphism(s, l) {
                Ok((true, _)) => count += 1,
                Ok((false, d)) => return Outcome { passed: false, detail: d },
                Err(e) => return Outcome { passed: false, detail: format!("{s}: {e}") },
            }
        }
    }
    Outcome { passed: count > 0, detail: format!("{count} condition-ii instances, each x ↦ lx verified arc by arc") }
}

fn report(k: usize, title: &str, budget: Option<Duration>, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = run();
    let t = start.elapsed();
    let budget = budget.map_or(String::new(), |b| format!(" / budget {}s", b.as_secs()));
    println!(
        "{} criterion {k:>2}: {title}: {} [{:.1}s{budget}]",
        if o.passed { "PASS" } else { "FAIL" },
        o.detail,
        t.as_secs_f64()
    );
    o.passed
}

fn main() -> ExitCode {
    let min = |m: u64| Some(Duration::from_secs(60 * m));
    let mut ok = true;
    let mut pool = Vec::new();
    ok &= report(1, "exhaustive criteria vs oracle audit", min(5), || {
        let (o, p) = criterion_1();
        pool = p;
        o
    });
    ok &= report(2, "sampled audit at n = 22", min(10), criterion_2);
    ok &= report(3, "odd-order stability", min(2), criterion_3);
    ok &= report(4, "alpha/gamma algebra", None, || criterion_4(&pool));
    ok &= report(5, "Schur dichotomy and ring axioms", None, criterion_5);
    ok &= report(6, "replacement property", None, criterion_6);
    ok &= report(7, "chain laws and multiplier transport", min(5), criterion_7);
    ok &= report(8, "H1 dimensions", min(2), || from_checks(h1_checks(), "groups with exact dimension"));
    ok &= report(9, "vanishing-cocycle scan", None, || from_checks(scan_checks(), "groups"));
    ok &= report(10, "restriction-corestriction and inflation-restriction", None, || from_checks(res_cores_checks(), "maps"));
    ok &= report(11, "multiplier isomorphism onto S + n/2", None, || criterion_11(&pool));
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
