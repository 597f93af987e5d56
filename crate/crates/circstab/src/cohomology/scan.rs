use super::{ActionGroup, Cohomology};
use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::perm::Permutation;
use crate::permgrp::{is_primitive, GeneratedGroup};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub k: usize,
    pub order: usize,
    pub h1_dim: usize,
    /// Dimension of the space of cocycles vanishing on x ↦ x + 1.
    pub vanishing_dim: usize,
    /// Number of subgroups of index 2.
    pub index_two_subgroups: usize,
    /// The kernel G₀ of the nonzero vanishing cocycle, as element indices.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel: Option<Vec<usize>>,
}

fn check_hypotheses(group: &ActionGroup) -> Result<usize> {
    let k = group.degree();
    if k < 3 || k % 2 == 0 {
        return Err(Error::Precondition(format!("k = {k} must be odd and at least 3")));
    }
    if !group.is_faithful() {
        return Err(Error::Precondition("action is not faithful".into()));
    }
    let rho = Permutation::from_fn(k, |x| (x + 1) % k)?;
    let rho_index = group.index_of_action(&rho).ok_or_else(|| Error::Precondition("x ↦ x + 1 is not in G".into()))?;
    let gens: Vec<Permutation> = group.generators().iter().map(|&g| group.action(g).clone()).collect();
    if !is_primitive(&GeneratedGroup::from_generators(k, gens.clone())?)? {
        return Err(Error::Precondition("G is not primitive".into()));
    }
    let inversion = Permutation::from_fn(k, |x| (k - x) % k)?;
    if !gens.iter().all(|g| group.index_of_action(&inversion.compose(g).compose(&inversion)).is_some()) {
        return Err(Error::Precondition("conjugation by x ↦ −x does not preserve G".into()));
    }
    Ok(rho_index)
}

/// Finds every cocycle G → F₂[ℤ_k] vanishing on (ℤ_k)_r and checks that a
/// nonzero one sends an index-2 subgroup G₀ to 0 and the rest to Σ e_x,
/// with G₀ the only subgroup of index 2.
///
/// Hypotheses (k odd, x ↦ x + 1 in G, G primitive, x ↦ −x normalizing G)
/// fail with `Precondition`; a violated conclusion fails with `Falsified`.
pub fn vanishing_cocycle_scan(group: &ActionGroup) -> Result<ScanReport> {
    let rho = check_hypotheses(group)?;
    let k = group.degree();
    let co = Cohomology::compute(group)?;
    let vanishing = co.vanishing_on(group, &[rho]);
    let d = group.hom_to_f2_dim()?;
    let mut report = ScanReport {
        k,
        order: group.order(),
        h1_dim: co.h1_dim(),
        vanishing_dim: vanishing.len(),
        index_two_subgroups: (1 << d) - 1,
        kernel: None,
    };
    match vanishing.as_slice() {
        [] => Ok(report),
        [omega] => {
            let ones = BitVec::ones(k);
            if !omega.values().iter().all(|v| v.is_zero() || *v == ones) {
                return Err(Error::Falsified("a vanishing cocycle takes a value other than 0 and Σ e_x".into()));
            }
            let kernel: Vec<usize> = (0..group.order()).filter(|&g| omega.value(g).is_zero()).collect();
            if 2 * kernel.len() != group.order() {
                return Err(Error::Falsified(format!("kernel has order {} in a group of order {}", kernel.len(), group.order())));
            }
            if d != 1 {
                return Err(Error::Falsified(format!("G has {} subgroups of index 2", report.index_two_subgroups)));
            }
            report.kernel = Some(kernel);
            Ok(report)
        }
        _ => Err(Error::Falsified(format!("{} independent cocycles vanish on the rotation", vanishing.len()))),
    }
}
