use crate::survey::{candidate_sets, is_surveyed, SetSelection};
use circstab::graph::{build_circulant, circulant_reduced_shift, ConnectionSet};
use circstab::permgrp::find_isomorphism;
use circstab::twofold::{classify_oracle, condition_i, condition_ii};
use circstab::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Anomaly {
    pub n: usize,
    pub set: Vec<usize>,
    /// Whether Cay(ℤ_n, S) ≅ Cay(ℤ_n, S + n/2) by a general search.
    pub isomorphic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub isomorphism: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub moduli: Vec<usize>,
    /// Connected, non-bipartite, reduced sets examined.
    pub instances: usize,
    pub unstable: usize,
    pub explained_by_condition_i: usize,
    pub explained_by_multiplier: usize,
    pub anomalies: Vec<Anomaly>,
}

fn probe_one(s: &ConnectionSet) -> Result<Option<(bool, bool, Option<Anomaly>)>> {
    if circulant_reduced_shift(s).is_some() || classify_oracle(s)?.status.is_stable() {
        return Ok(None);
    }
    if condition_i(s).is_some() {
        return Ok(Some((true, false, None)));
    }
    if condition_ii(s).is_some() {
        return Ok(Some((false, true, None)));
    }
    let n = s.n();
    let shifted = s.shift(n / 2);
    let isomorphism = if shifted.contains(0) {
        None
    } else {
        let other = build_circulant(&ConnectionSet::from_set(shifted)?);
        find_isomorphism(&build_circulant(s), &other)?
    };
    Ok(Some((
        false,
        false,
        Some(Anomaly {
            n,
            set: s.elements(),
            isomorphic: isomorphism.is_some(),
            isomorphism: isomorphism.map(|p| p.images().to_vec()),
        }),
    )))
}

/// For each n = 2m (m odd) lists the reduced unstable sets that neither
/// criterion explains, with a general check of Cay(ℤ_n, S) ≅ Cay(ℤ_n, S + m).
pub fn conjecture_probe(moduli: &[usize], selection: SetSelection) -> Result<ProbeReport> {
    let mut report = ProbeReport { moduli: moduli.to_vec(), ..ProbeReport::default() };
    for &n in moduli {
        if n % 2 != 0 || (n / 2) % 2 == 0 {
            return Err(Error::Invalid(format!("n = {n} is not 2m with m odd")));
        }
        let sets: Vec<ConnectionSet> = candidate_sets(n, selection)?.into_iter().filter(is_surveyed).collect();
        let outcomes = sets.par_iter().map(probe_one).collect::<Result<Vec<_>>>()?;
        report.instances += sets.iter().filter(|s| circulant_reduced_shift(s).is_none()).count();
        for (ci, cii, anomaly) in outcomes.into_iter().flatten() {
            report.unstable += 1;
            report.explained_by_condition_i += ci as usize;
            report.explained_by_multiplier += cii as usize;
            report.anomalies.extend(anomaly);
        }
    }
    Ok(report)
}
