use super::{circulant_automorphisms, condition_i, condition_ii, cover_automorphisms, tf_group, TwoFoldPair};
use crate::error::{Error, Result};
use crate::graph::{build_circulant, circulant_reduced_shift, ConnectionSet};
use crate::zn::is_squarefree;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Stable,
    TriviallyUnstable,
    NontriviallyUnstable,
}

impl Status {
    pub fn is_stable(self) -> bool {
        self == Status::Stable
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    Disconnected,
    Bipartite,
    NonReduced,
    ConditionI,
    ConditionIi,
    OracleUnexpectedSymmetry,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Witness {
    H(usize),
    L(usize),
    Pair(TwoFoldPair),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Criteria,
    Oracle,
    CrossCheck,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "criteria" => Ok(Mode::Criteria),
            "oracle" => Ok(Mode::Oracle),
            "cross-check" => Ok(Mode::CrossCheck),
            _ => Err(Error::Invalid(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub n: usize,
    pub set: Vec<usize>,
    pub status: Status,
    pub reason: Reason,
    pub witness: Option<Witness>,
    #[serde(serialize_with = "crate::json::exact_opt")]
    pub aut_order: Option<BigUint>,
    #[serde(serialize_with = "crate::json::exact_opt")]
    pub cover_aut_order: Option<BigUint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
}

impl Verdict {
    fn new(s: &ConnectionSet, status: Status, reason: Reason, witness: Option<Witness>) -> Verdict {
        Verdict {
            n: s.n(),
            set: s.elements(),
            status,
            reason,
            witness,
            aut_order: None,
            cover_aut_order: None,
            agreement: None,
        }
    }
}

/// Whether the classification criteria are proven exact at this n: n odd, or n even and square-free.
pub fn criteria_proven_for(n: usize) -> bool {
    n % 2 == 1 || is_squarefree(n)
}

/// Structural screens shared by both modes: disconnected, bipartite with a
/// nontrivial automorphism, non-reduced.
fn trivial_screen(s: &ConnectionSet) -> Option<Verdict> {
    let g = build_circulant(s);
    if !g.is_connected() {
        return Some(Verdict::new(s, Status::TriviallyUnstable, Reason::Disconnected, None));
    }
    if g.is_bipartite() && s.n() >= 2 {
        return Some(Verdict::new(s, Status::TriviallyUnstable, Reason::Bipartite, None));
    }
    circulant_reduced_shift(s)
        .map(|h| Verdict::new(s, Status::TriviallyUnstable, Reason::NonReduced, Some(Witness::H(h))))
}

pub fn classify_criteria(s: &ConnectionSet) -> Verdict {
    if let Some(v) = trivial_screen(s) {
        return v;
    }
    if let Some(h) = condition_i(s) {
        return Verdict::new(s, Status::NontriviallyUnstable, Reason::ConditionI, Some(Witness::H(h)));
    }
    if let Some(l) = condition_ii(s) {
        return Verdict::new(s, Status::NontriviallyUnstable, Reason::ConditionIi, Some(Witness::L(l)));
    }
    Verdict::new(s, Status::Stable, Reason::None, None)
}

pub fn classify_oracle(s: &ConnectionSet) -> Result<Verdict> {
    let aut = circulant_automorphisms(s)?.order().clone();
    let cover = cover_automorphisms(s)?.order().clone();
    let mut v = if cover == &aut * 2u8 {
        Verdict::new(s, Status::Stable, Reason::None, None)
    } else if let Some(v) = trivial_screen(s) {
        v
    } else {
        let witness = tf_group(s)?.pairs.into_iter().find(|p| p.sigma1 != p.sigma2).map(Witness::Pair);
        Verdict::new(s, Status::NontriviallyUnstable, Reason::OracleUnexpectedSymmetry, witness)
    };
    v.aut_order = Some(aut);
    v.cover_aut_order = Some(cover);
    Ok(v)
}

/// Classifies Cay(ℤ_n, S).
///
/// In cross-check mode a disagreement is an error when the criteria are proven
/// for n; otherwise the verdict is returned with `agreement = false`.
pub fn classify(s: &ConnectionSet, mode: Mode) -> Result<Verdict> {
    match mode {
        Mode::Criteria => Ok(classify_criteria(s)),
        Mode::Oracle => classify_oracle(s),
        Mode::CrossCheck => {
            let oracle = classify_oracle(s)?;
            let mut v = classify_criteria(s);
            let agree = v.status.is_stable() == oracle.status.is_stable();
            if !agree && criteria_proven_for(s.n()) {
                return Err(Error::Falsified(format!(
                    "{s}: criteria say {:?} ({:?}), |Aut Γ| = {}, |Aut Γ×K2| = {}",
                    v.status,
                    v.reason,
                    oracle.aut_order.as_ref().unwrap(),
                    oracle.cover_aut_order.as_ref().unwrap()
                )));
            }
            v.aut_order = oracle.aut_order;
            v.cover_aut_order = oracle.cover_aut_order;
            v.agreement = Some(agree);
            Ok(v)
        }
    }
}
