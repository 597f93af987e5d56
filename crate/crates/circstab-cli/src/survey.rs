use circstab::graph::{build_circulant, ConnectionSet};
use circstab::twofold::{classify, criteria_proven_for, Mode, Reason, Status, Verdict};
use circstab::zn::is_squarefree;
use circstab::{Error, Result};
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

/// Largest n for which `--all-sets` is accepted.
pub const ALL_SETS_LIMIT: usize = 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetSelection {
    All,
    Sample { k: usize, seed: u64 },
}

pub fn even_squarefree_upto(n: usize) -> Vec<usize> {
    (2..=n).step_by(2).filter(|&k| is_squarefree(k)).collect()
}

/// Nonempty symmetric sets of ℤ_n, in class-mask order.
///
/// A sample draws `k` distinct sets uniformly; the stream of n is fixed by
/// (seed, n), so adding moduli to a run leaves the others unchanged.
pub fn candidate_sets(n: usize, selection: SetSelection) -> Result<Vec<ConnectionSet>> {
    if n == 0 || n > 64 {
        return Err(Error::Modulus(n));
    }
    let classes = ConnectionSet::class_count(n);
    let total = (1u64 << classes) - 1;
    let masks: Vec<u64> = match selection {
        SetSelection::All => {
            if n > ALL_SETS_LIMIT {
                return Err(Error::Invalid(format!("--all-sets needs n ≤ {ALL_SETS_LIMIT}, got {n}")));
            }
            (1..=total).collect()
        }
        SetSelection::Sample { k, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(n as u64);
            let mut m: Vec<u64> = if (k as u64) >= total {
                (1..=total).collect()
            } else {
                index::sample(&mut rng, total as usize, k).into_iter().map(|i| i as u64 + 1).collect()
            };
            m.sort_unstable();
            m
        }
    };
    Ok(masks.into_iter().map(|m| ConnectionSet::from_class_mask(n, m)).collect())
}

/// Instances the survey reports on: connected and non-bipartite.
pub fn is_surveyed(s: &ConnectionSet) -> bool {
    let g = build_circulant(s);
    g.is_connected() && !g.is_bipartite()
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveyRecord {
    #[serde(flatten)]
    pub verdict: Verdict,
    /// With n even and S ∩ 2ℤ_n = ∅, reading condition i as vacuously true would flip the verdict.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub empty_even_part_flag: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

pub fn survey_one(s: &ConnectionSet, timing: bool) -> Result<SurveyRecord> {
    let start = Instant::now();
    let verdict = classify(s, Mode::CrossCheck)?;
    let elapsed_ms = timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    let empty_even_part_flag = s.n() % 2 == 0 && s.even_part().is_empty() && verdict.status == Status::Stable;
    Ok(SurveyRecord { verdict, empty_even_part_flag, elapsed_ms })
}

/// Classifies every surveyed set on the current rayon pool; results keep input order.
pub fn survey_sets(sets: &[ConnectionSet], timing: bool) -> Vec<(ConnectionSet, Result<SurveyRecord>)> {
    let surveyed: Vec<&ConnectionSet> = sets.iter().filter(|s| is_surveyed(s)).collect();
    surveyed.par_iter().map(|s| ((*s).clone(), survey_one(s, timing))).collect()
}

/// Counts per (n, status, reason) plus agreement tallies.
#[derive(Clone, Debug, Default)]
pub struct Summary {
    pub rows: BTreeMap<(usize, String, String), usize>,
    pub instances: usize,
    pub agreements: usize,
    /// Disagreements at n where the criteria are not proven exact.
    pub open_disagreements: usize,
    pub empty_even_part_flags: usize,
}

fn kebab<T: Serialize>(x: &T) -> String {
    serde_json::to_value(x).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

impl Summary {
    pub fn add(&mut self, r: &SurveyRecord) {
        let v = &r.verdict;
        *self.rows.entry((v.n, kebab(&v.status), kebab(&v.reason))).or_default() += 1;
        self.instances += 1;
        match v.agreement {
            Some(true) => self.agreements += 1,
            Some(false) if !criteria_proven_for(v.n) => self.open_disagreements += 1,
            _ => {}
        }
        self.empty_even_part_flags += r.empty_even_part_flag as usize;
    }

    pub fn count(&self, status: Status, reason: Reason) -> usize {
        let (s, r) = (kebab(&status), kebab(&reason));
        self.rows.iter().filter(|((_, a, b), _)| *a == s && *b == r).map(|(_, c)| c).sum()
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:>4}  {:<22}  {:<26}  {:>7}", "n", "status", "reason", "count");
        for ((n, status, reason), count) in &self.rows {
            let _ = writeln!(out, "{n:>4}  {status:<22}  {reason:<26}  {count:>7}");
        }
        let _ = writeln!(
            out,
            "instances {}  agree {}  open-range disagreements {}  empty-even-part flags {}",
            self.instances, self.agreements, self.open_disagreements, self.empty_even_part_flags
        );
        out
    }
}
