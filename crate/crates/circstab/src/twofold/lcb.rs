use super::{alpha, basic_set_a, displacement_of, tf_group, NeighbourhoodIndex};
use crate::error::{Error, Result};
use crate::graph::{reflective_split, ConnectionSet};
use crate::perm::Permutation;
use crate::zn::{coset_partition, CyclicSubgroup, IndexPartition};
use std::collections::{HashMap, VecDeque};

pub const CLOSURE_CAP: usize = 1 << 16;

/// The block systems 𝓛 (cosets of {0, m}), 𝓒 (cosets of L + ⟨S_a⟩) and 𝓑
/// (the thickest α-homogeneous partition) on ℤ_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcbPartitions {
    pub l: IndexPartition,
    pub c: IndexPartition,
    pub b: IndexPartition,
}

/// Reachable pairs (induced permutation of L-cosets, displacement bits) over Aut^π.
#[derive(Clone, Debug)]
pub struct Displacements {
    m: usize,
    states: Vec<(Vec<usize>, u64)>,
}

impl Displacements {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn displacement_vectors(&self) -> impl Iterator<Item = u64> + '_ {
        self.states.iter().map(|(_, d)| *d)
    }

    pub fn m(&self) -> usize {
        self.m
    }
}

fn compose(sigma: &(Vec<usize>, u64), tau: &(Vec<usize>, u64)) -> (Vec<usize>, u64) {
    let (ps, ds) = sigma;
    let (pt, dt) = tau;
    let perm: Vec<usize> = pt.iter().map(|&y| ps[y]).collect();
    let mut d = *dt;
    for (x, &y) in pt.iter().enumerate() {
        d ^= (ds >> y & 1) << x;
    }
    (perm, d)
}

/// Coset action and displacement of every generator of Aut^π.
fn generator_data(s: &ConnectionSet) -> Result<Vec<(Vec<usize>, u64)>> {
    let n = s.n();
    if n % 2 != 0 {
        return Err(Error::Precondition("n must be even".into()));
    }
    let m = n / 2;
    let index = NeighbourhoodIndex::new(s)?;
    tf_group(s)?
        .pairs
        .iter()
        .map(|pair| {
            let sigma = &pair.sigma1;
            let a = sigma.inverse().compose(&index.gamma(sigma)?);
            let d = displacement_of(&a)
                .ok_or_else(|| Error::Precondition(format!("α({sigma:?}) is not of the form x ↦ x or x+m")))?;
            let perm: Vec<usize> = (0..m).map(|x| sigma.apply(x) % m).collect();
            if (0..m).any(|x| sigma.apply(x + m) % m != perm[x]) {
                return Err(Error::Precondition("cosets of {0, m} are not blocks of Aut^π".into()));
            }
            Ok((perm, d))
        })
        .collect()
}

/// Breadth-first closure of generator data under the composition law
/// d_{στ}(x) = d_τ(x) + d_σ(τ.x), capped at `cap` states.
pub fn displacement_closure(s: &ConnectionSet, cap: usize) -> Result<Displacements> {
    let m = s.n() / 2;
    let gens = generator_data(s)?;
    let start = ((0..m).collect::<Vec<usize>>(), 0u64);
    let mut seen: HashMap<(Vec<usize>, u64), ()> = HashMap::from([(start.clone(), ())]);
    let mut states = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(t) = queue.pop_front() {
        for g in &gens {
            let next = compose(g, &t);
            if !seen.contains_key(&next) {
                if states.len() >= cap {
                    return Err(Error::ClosureCap(cap));
                }
                seen.insert(next.clone(), ());
                states.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(Displacements { m, states })
}

fn lift_coset_labels(n: usize, coset_labels: &[u64]) -> IndexPartition {
    let m = n / 2;
    let labels: Vec<u64> = (0..n).map(|x| coset_labels[x % m]).collect();
    IndexPartition::from_labels(&labels)
}

/// 𝓑 computed without enumerating Aut^π: the coarsest partition of the
/// L-cosets that separates differing generator displacements and is carried
/// to itself by every generator.
pub fn thickest_homogeneous(s: &ConnectionSet) -> Result<IndexPartition> {
    let n = s.n();
    let m = n / 2;
    let gens = generator_data(s)?;
    let mut label: Vec<u64> = vec![0; m];
    let mut classes = 1;
    loop {
        let signature: Vec<(u64, Vec<u64>, Vec<u64>)> = (0..m)
            .map(|x| {
                let bits: Vec<u64> = gens.iter().map(|(_, d)| d >> x & 1).collect();
                let images: Vec<u64> = gens.iter().map(|(p, _)| label[p[x]]).collect();
                (label[x], bits, images)
            })
            .collect();
        let mut distinct = signature.clone();
        distinct.sort();
        distinct.dedup();
        label = signature.iter().map(|sig| distinct.binary_search(sig).unwrap() as u64).collect();
        if distinct.len() == classes {
            break;
        }
        classes = distinct.len();
    }
    Ok(lift_coset_labels(n, &label))
}

fn b_from_closure(n: usize, closure: &Displacements) -> IndexPartition {
    let m = closure.m;
    let columns: Vec<Vec<u64>> =
        (0..m).map(|x| closure.displacement_vectors().map(|d| d >> x & 1).collect()).collect();
    let mut distinct = columns.clone();
    distinct.sort();
    distinct.dedup();
    let labels: Vec<u64> = columns.iter().map(|c| distinct.binary_search(c).unwrap() as u64).collect();
    lift_coset_labels(n, &labels)
}

/// 𝓛, 𝓒 and 𝓑 for an instance with X_a = {a, m+a}.
pub fn partitions_lcb(s: &ConnectionSet) -> Result<LcbPartitions> {
    let n = s.n();
    if n % 2 != 0 {
        return Err(Error::Precondition("n must be even".into()));
    }
    let m = n / 2;
    if basic_set_a(s)? != vec![n, n + m] {
        return Err(Error::Precondition("the basic set of a is not {a, m+a}".into()));
    }
    let (_, sa) = reflective_split(s)?;
    let l = coset_partition(&CyclicSubgroup::from_step(n, m)?);
    let c_group = CyclicSubgroup::generated_by(n, sa.elements().into_iter().chain([m]));
    let c = coset_partition(&c_group);
    let closure = displacement_closure(s, CLOSURE_CAP)?;
    let b = b_from_closure(n, &closure);
    Ok(LcbPartitions { l, c, b })
}

/// Whether α(σ).x − x is constant on every block of `p`, for every σ in Aut^π.
pub fn alpha_homogeneous(s: &ConnectionSet, p: &IndexPartition) -> Result<bool> {
    let closure = displacement_closure(s, CLOSURE_CAP)?;
    let m = closure.m;
    let homogeneous = closure
        .displacement_vectors()
        .all(|d| p.blocks().iter().all(|b| b.iter().all(|&x| (d >> (x % m) & 1) == (d >> (b[0] % m) & 1))));
    Ok(homogeneous)
}

/// For σ₁, σ₂ ∈ Aut^π agreeing on `block`, whether α(σ₁) and α(σ₂) agree there too.
pub fn local_alpha_check(s: &ConnectionSet, block: &[usize], s1: &Permutation, s2: &Permutation) -> Result<bool> {
    if block.iter().any(|&x| s1.apply(x) != s2.apply(x)) {
        return Err(Error::Precondition("σ₁ and σ₂ differ on the block".into()));
    }
    let (a1, a2) = (alpha(s, s1)?, alpha(s, s2)?);
    Ok(block.iter().all(|&x| a1.perm.apply(x) == a2.perm.apply(x)))
}
