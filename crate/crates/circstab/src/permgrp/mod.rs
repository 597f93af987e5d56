//! Permutation groups: automorphism search, stabilizer chains, orbits, block
//! systems and partition kernels.

mod blocks;
mod search;

pub use blocks::{
    block_closure, induced_block_permutation, is_block_system, is_primitive, minimal_block_system_above, BlockSystem,
};
pub use search::{automorphisms, automorphisms_with_hints};

use crate::error::{Error, Result};
use crate::graph::DenseGraph;
use crate::perm::Permutation;
use crate::zn::IndexPartition;
use num_bigint::BigUint;
use rand::Rng;
use std::collections::VecDeque;
use std::sync::atomic::{AtomicU64, Ordering};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

static NODE_BUDGET: AtomicU64 = AtomicU64::new(DEFAULT_NODE_BUDGET);

/// Node budget for backtracking searches started from now on.
pub fn node_budget() -> u64 {
    NODE_BUDGET.load(Ordering::Relaxed)
}

pub fn set_node_budget(budget: u64) {
    NODE_BUDGET.store(budget, Ordering::Relaxed);
}

#[derive(Clone, Debug)]
struct ChainLevel {
    point: usize,
    generators: Vec<Permutation>,
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl ChainLevel {
    fn build(point: usize, generators: Vec<Permutation>, degree: usize) -> ChainLevel {
        let mut transversal: Vec<Option<Permutation>> = vec![None; degree];
        transversal[point] = Some(Permutation::identity(degree));
        let mut orbit = vec![point];
        let mut queue = VecDeque::from([point]);
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = g.apply(x);
                if transversal[y].is_none() {
                    transversal[y] = Some(g.compose(transversal[x].as_ref().unwrap()));
                    orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
        ChainLevel { point, generators, transversal, orbit }
    }
}

/// A permutation group given by generators together with a stabilizer chain.
#[derive(Clone, Debug)]
pub struct GeneratedGroup {
    degree: usize,
    generators: Vec<Permutation>,
    levels: Vec<ChainLevel>,
    order: BigUint,
    origin: Option<DenseGraph>,
}

impl GeneratedGroup {
    pub(crate) fn from_strong_generators(
        degree: usize,
        base: Vec<usize>,
        tagged: Vec<(usize, Permutation)>,
        origin: Option<DenseGraph>,
    ) -> Result<GeneratedGroup> {
        let levels: Vec<ChainLevel> = base
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                let gens = tagged.iter().filter(|(l, _)| *l >= i).map(|(_, g)| g.clone()).collect();
                ChainLevel::build(b, gens, degree)
            })
            .collect();
        let generators = tagged.into_iter().map(|(_, g)| g).collect();
        GeneratedGroup::assemble(degree, generators, levels, origin)
    }

    fn assemble(
        degree: usize,
        generators: Vec<Permutation>,
        levels: Vec<ChainLevel>,
        origin: Option<DenseGraph>,
    ) -> Result<GeneratedGroup> {
        let order = levels.iter().map(|l| BigUint::from(l.orbit.len())).product();
        Ok(GeneratedGroup { degree, generators, levels, order, origin })
    }

    /// Schreier–Sims with the natural base order.
    pub fn from_generators(degree: usize, generators: Vec<Permutation>) -> Result<GeneratedGroup> {
        GeneratedGroup::with_base_prefix(degree, generators, &[])
    }

    /// Schreier–Sims with a base starting with `prefix`, continued in natural order.
    pub fn with_base_prefix(degree: usize, generators: Vec<Permutation>, prefix: &[usize]) -> Result<GeneratedGroup> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::Invalid("generator degree mismatch".into()));
        }
        let levels = schreier_sims(degree, &generators, prefix);
        GeneratedGroup::assemble(degree, generators, levels, None)
    }

    pub fn trivial(degree: usize) -> GeneratedGroup {
        GeneratedGroup { degree, generators: Vec::new(), levels: Vec::new(), order: BigUint::from(1u8), origin: None }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// The order as a machine integer, when it fits.
    pub fn order_u128(&self) -> Option<u128> {
        u128::try_from(&self.order).ok()
    }

    /// Basic orbit sizes of the stabilizer chain.
    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// The graph (with its joint coloring) this group was computed from, if any.
    pub fn origin(&self) -> Option<&DenseGraph> {
        self.origin.as_ref()
    }

    /// Sifts σ through the chain; returns the residue and the level where it stopped.
    fn sift(&self, sigma: &Permutation) -> (Permutation, usize) {
        sift_levels(&self.levels, sigma.clone(), 0)
    }

    pub fn contains(&self, sigma: &Permutation) -> bool {
        sigma.degree() == self.degree && {
            let (residue, _) = self.sift(sigma);
            residue.is_identity()
        }
    }

    /// A uniformly random element: one random coset representative per level.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for l in &self.levels {
            let x = l.orbit[rng.gen_range(0..l.orbit.len())];
            g = g.compose(l.transversal[x].as_ref().unwrap());
        }
        g
    }

    /// Every element, provided the group has at most `limit` of them.
    pub fn elements(&self, limit: u128) -> Result<Vec<Permutation>> {
        if self.order > BigUint::from(limit) {
            return Err(Error::Precondition(format!("group order {} exceeds enumeration limit {limit}", self.order)));
        }
        let mut out = vec![Permutation::identity(self.degree)];
        for l in self.levels.iter().rev() {
            let reps: Vec<&Permutation> = l.orbit.iter().map(|&x| l.transversal[x].as_ref().unwrap()).collect();
            out = reps.iter().flat_map(|u| out.iter().map(move |g| u.compose(g))).collect();
        }
        Ok(out)
    }

    /// Calls `f` on every element in turn without storing them.
    pub fn for_each_element(&self, mut f: impl FnMut(&Permutation)) {
        fn descend(levels: &[ChainLevel], prefix: &Permutation, f: &mut dyn FnMut(&Permutation)) {
            match levels.split_first() {
                None => f(prefix),
                Some((l, rest)) => {
                    for &x in &l.orbit {
                        descend(rest, &prefix.compose(l.transversal[x].as_ref().unwrap()), f);
                    }
                }
            }
        }
        descend(&self.levels, &Permutation::identity(self.degree), &mut f);
    }

    /// Orbits of the whole group, in canonical order.
    pub fn orbits(&self) -> IndexPartition {
        orbits_under(self.degree, self.generators.iter())
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    /// Orbits of the stabilizer of `point`.
    pub fn stabilizer_orbits(&self, point: usize) -> Result<IndexPartition> {
        if point >= self.degree {
            return Err(Error::Invalid(format!("point {point} out of range")));
        }
        if let Some(first) = self.levels.first() {
            if first.point == point {
                let gens = self.levels.get(1).map(|l| l.generators.as_slice()).unwrap_or(&[]);
                return Ok(orbits_under(self.degree, gens.iter()));
            }
        } else {
            return Ok(IndexPartition::singletons(self.degree));
        }
        let rebased = GeneratedGroup::with_base_prefix(self.degree, self.strong_generators(), &[point])?;
        rebased.stabilizer_orbits(point)
    }

    /// Generators of every level of the chain, deduplicated.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = self.generators.clone();
        for l in &self.levels {
            for g in &l.generators {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// The subgroup fixing every block of `p` setwise.
    ///
    /// Groups computed from a graph repeat the search with the blocks added to
    /// the vertex coloring; other groups are filtered element by element.
    pub fn partition_kernel(&self, p: &IndexPartition) -> Result<GeneratedGroup> {
        if p.ground_size() != self.degree {
            return Err(Error::Invalid("partition size differs from group degree".into()));
        }
        if let Some(graph) = &self.origin {
            return automorphisms(graph, Some(&p.labels()));
        }
        let labels = p.labels();
        let mut kernel = GeneratedGroup::trivial(self.degree);
        for g in self.elements(1_000_000)? {
            if (0..self.degree).all(|x| labels[g.apply(x)] == labels[x]) && !kernel.contains(&g) {
                let mut gens = kernel.generators.clone();
                gens.push(g);
                kernel = GeneratedGroup::from_generators(self.degree, gens)?;
            }
        }
        Ok(kernel)
    }

    /// Whether every conjugate of a generator of `sub` by a generator of `self` lies in `sub`.
    pub fn normalizes(&self, sub: &GeneratedGroup) -> bool {
        self.generators.iter().all(|g| sub.generators.iter().all(|h| sub.contains(&g.conjugate(h))))
    }
}

fn sift_levels(levels: &[ChainLevel], mut g: Permutation, start: usize) -> (Permutation, usize) {
    for (i, l) in levels.iter().enumerate().skip(start) {
        let y = g.apply(l.point);
        match &l.transversal[y] {
            None => return (g, i),
            Some(u) => g = u.inverse().compose(&g),
        }
    }
    (g, levels.len())
}

fn schreier_sims(degree: usize, generators: &[Permutation], prefix: &[usize]) -> Vec<ChainLevel> {
    let mut strong: Vec<Permutation> = generators.iter().filter(|g| !g.is_identity()).cloned().collect();
    let mut base: Vec<usize> = prefix.to_vec();
    for g in &strong {
        if base.iter().all(|&b| g.fixes(b)) {
            base.push((0..degree).find(|&x| !g.fixes(x)).unwrap());
        }
    }
    let level_gens = |strong: &[Permutation], base: &[usize], i: usize| -> Vec<Permutation> {
        strong.iter().filter(|g| base[..i].iter().all(|&b| g.fixes(b))).cloned().collect()
    };
    let mut levels: Vec<ChainLevel> =
        (0..base.len()).map(|i| ChainLevel::build(base[i], level_gens(&strong, &base, i), degree)).collect();
    let mut i = levels.len();
    while i > 0 {
        let level = i - 1;
        levels[level] = ChainLevel::build(base[level], level_gens(&strong, &base, level), degree);
        let mut added = None;
        'scan: for &x in &levels[level].orbit {
            for s in &levels[level].generators {
                let ux = levels[level].transversal[x].as_ref().unwrap();
                let usx = levels[level].transversal[s.apply(x)].as_ref().unwrap();
                let schreier = usx.inverse().compose(&s.compose(ux));
                if schreier.is_identity() {
                    continue;
                }
                let (residue, stop) = sift_levels(&levels, schreier, level + 1);
                if !residue.is_identity() {
                    added = Some((residue, stop));
                    break 'scan;
                }
            }
        }
        match added {
            None => i -= 1,
            Some((h, stop)) => {
                if stop == base.len() {
                    base.push((0..degree).find(|&x| !h.fixes(x)).unwrap());
                    levels.push(ChainLevel::build(*base.last().unwrap(), Vec::new(), degree));
                }
                strong.push(h);
                for l in level + 1..=stop {
                    levels[l] = ChainLevel::build(base[l], level_gens(&strong, &base, l), degree);
                }
                i = stop + 1;
            }
        }
    }
    levels
}

pub(crate) fn orbits_under<'a>(degree: usize, gens: impl Iterator<Item = &'a Permutation> + Clone) -> IndexPartition {
    let mut label = vec![usize::MAX; degree];
    for start in 0..degree {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = start;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for g in gens.clone() {
                let y = g.apply(x);
                if label[y] == usize::MAX {
                    label[y] = start;
                    queue.push_back(y);
                }
            }
        }
    }
    IndexPartition::from_labels(&label)
}

/// An isomorphism from `a` onto `b`, found as an automorphism of a ⊔ b that
/// swaps the two copies. Both graphs must be connected.
pub fn find_isomorphism(a: &DenseGraph, b: &DenseGraph) -> Result<Option<Permutation>> {
    let n = a.vertex_count();
    if b.vertex_count() != n || a.relation_count() != b.relation_count() {
        return Ok(None);
    }
    if !a.is_connected() || !b.is_connected() {
        return Err(Error::Precondition("isomorphism search needs connected graphs".into()));
    }
    let union = a.disjoint_union(b)?;
    let group = automorphisms(&union, None)?;
    let Some(swap) = group.generators().iter().find(|g| g.apply(0) >= n) else {
        return Ok(None);
    };
    let sigma = Permutation::from_fn(n, |x| swap.apply(x) - n)?;
    if !a.is_isomorphism_to(b, &sigma) {
        return Err(Error::Falsified("swap of the union is not an isomorphism".into()));
    }
    Ok(Some(sigma))
}
