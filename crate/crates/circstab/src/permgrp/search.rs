//! Automorphism search by equitable partition refinement and backtracking.
//!
//! The first path of the search tree fixes a base b₁, …, b_k. Levels are then
//! processed from the bottom up: for each point c in the target cell at level i
//! that is not yet in the orbit of b_i under the generators found so far, a
//! search looks for one automorphism fixing b₁..b_{i-1} and sending b_i to c.
//! The generators found this way form a strong generating set for the base.

use super::{node_budget, GeneratedGroup};
use crate::error::{Error, Result};
use crate::graph::{bits128, DenseGraph};
use crate::perm::Permutation;
use std::collections::VecDeque;

#[derive(Clone, Debug)]
struct Node {
    cells: Vec<u128>,
    trace: u64,
}

impl Node {
    fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.count_ones() == 1)
    }

    fn same_shape(&self, other: &Node) -> bool {
        self.trace == other.trace
            && self.cells.len() == other.cells.len()
            && self.cells.iter().zip(&other.cells).all(|(a, b)| a.count_ones() == b.count_ones())
    }
}

fn mix(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(0x100000001b3).rotate_left(17) ^ 0x9e3779b97f4a7c15
}

struct Searcher<'g> {
    graph: &'g DenseGraph,
    matrices: Vec<Vec<u128>>,
    nodes: u64,
    budget: u64,
}

struct Level {
    node: Node,
    target: usize,
    point: usize,
}

impl<'g> Searcher<'g> {
    fn new(graph: &'g DenseGraph) -> Searcher<'g> {
        let mut matrices: Vec<Vec<u128>> = (0..graph.relation_count()).map(|r| graph.relation(r).to_vec()).collect();
        if !graph.is_symmetric() {
            matrices.extend(graph.transposed());
        }
        Searcher { graph, matrices, nodes: 0, budget: node_budget() }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget(self.budget));
        }
        Ok(())
    }

    fn refine(&self, node: &mut Node, mut queue: VecDeque<u128>) {
        let mut counts = vec![0u32; self.graph.vertex_count()];
        while let Some(w) = queue.pop_front() {
            for matrix in &self.matrices {
                let mut i = 0;
                while i < node.cells.len() {
                    let cell = node.cells[i];
                    if cell.count_ones() == 1 {
                        i += 1;
                        continue;
                    }
                    let mut lo = u32::MAX;
                    let mut hi = 0;
                    for v in bits128(cell) {
                        let c = (matrix[v] & w).count_ones();
                        counts[v] = c;
                        lo = lo.min(c);
                        hi = hi.max(c);
                    }
                    if lo == hi {
                        i += 1;
                        continue;
                    }
                    let mut values: Vec<u32> = bits128(cell).map(|v| counts[v]).collect();
                    values.sort_unstable();
                    values.dedup();
                    let parts: Vec<u128> = values
                        .iter()
                        .map(|&val| bits128(cell).filter(|&v| counts[v] == val).fold(0u128, |acc, v| acc | 1 << v))
                        .collect();
                    for (val, part) in values.iter().zip(&parts) {
                        node.trace = mix(node.trace, (i as u64) << 40 | (*val as u64) << 16 | part.count_ones() as u64);
                        queue.push_back(*part);
                    }
                    let k = parts.len();
                    node.cells.splice(i..=i, parts);
                    i += k;
                }
            }
        }
    }

    fn root(&self, coloring: &[usize]) -> Node {
        let mut values: Vec<usize> = coloring.to_vec();
        values.sort_unstable();
        values.dedup();
        let mut trace = 0xcbf29ce484222325;
        let cells: Vec<u128> = values
            .iter()
            .map(|&c| {
                let cell = (0..coloring.len()).filter(|&v| coloring[v] == c).fold(0u128, |acc, v| acc | 1 << v);
                trace = mix(trace, (c as u64) << 8 | cell.count_ones() as u64);
                cell
            })
            .collect();
        let mut node = Node { cells, trace };
        let queue = node.cells.iter().copied().collect();
        self.refine(&mut node, queue);
        node
    }

    fn individualize(&mut self, node: &Node, target: usize, v: usize) -> Result<Node> {
        self.tick()?;
        let mut child = node.clone();
        let rest = child.cells[target] & !(1u128 << v);
        child.cells[target] = 1 << v;
        child.cells.insert(target + 1, rest);
        child.trace = mix(child.trace, 0xff00 | target as u64);
        self.refine(&mut child, VecDeque::from([1u128 << v]));
        Ok(child)
    }

    fn target_cell(node: &Node) -> usize {
        let mut best = 0;
        let mut size = 0;
        for (i, c) in node.cells.iter().enumerate() {
            if c.count_ones() > size {
                best = i;
                size = c.count_ones();
            }
        }
        best
    }

    fn first_path(&mut self, root: Node) -> Result<(Vec<Level>, Node)> {
        let mut levels = Vec::new();
        let mut node = root;
        while !node.is_discrete() {
            let target = Searcher::target_cell(&node);
            let point = node.cells[target].trailing_zeros() as usize;
            let child = self.individualize(&node, target, point)?;
            levels.push(Level { node, target, point });
            node = child;
        }
        Ok((levels, node))
    }

    fn leaf_map(left: &Node, right: &Node, n: usize) -> Permutation {
        let mut images = vec![0; n];
        for (a, b) in left.cells.iter().zip(&right.cells) {
            images[a.trailing_zeros() as usize] = b.trailing_zeros() as usize;
        }
        Permutation::from_images(images).expect("discrete partitions give a bijection")
    }

    fn extend(&mut self, levels: &[Level], leaf: &Node, j: usize, node: &Node) -> Result<Option<Permutation>> {
        if j == levels.len() {
            let g = Searcher::leaf_map(leaf, node, self.graph.vertex_count());
            return Ok(self.graph.is_automorphism(&g).then_some(g));
        }
        let target = levels[j].target;
        let expected = levels.get(j + 1).map_or(leaf, |l| &l.node);
        for w in bits128(node.cells[target]) {
            let child = self.individualize(node, target, w)?;
            if child.same_shape(expected) {
                if let Some(g) = self.extend(levels, leaf, j + 1, &child)? {
                    return Ok(Some(g));
                }
            }
        }
        Ok(None)
    }
}

fn orbit_of(point: usize, gens: &[&Permutation], n: usize) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[point] = true;
    let mut queue = VecDeque::from([point]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Strong generating set output of the search: base, and generators tagged by
/// the first base index they move.
pub(crate) struct SearchResult {
    pub base: Vec<usize>,
    pub generators: Vec<(usize, Permutation)>,
}

pub(crate) fn search(graph: &DenseGraph, coloring: &[usize], hints: &[Permutation]) -> Result<SearchResult> {
    let n = graph.vertex_count();
    let mut searcher = Searcher::new(graph);
    let root = searcher.root(coloring);
    let (levels, leaf) = searcher.first_path(root)?;
    let base: Vec<usize> = levels.iter().map(|l| l.point).collect();
    let level_of = |g: &Permutation| base.iter().position(|&b| !g.fixes(b));
    let mut generators: Vec<(usize, Permutation)> = Vec::new();
    for h in hints {
        let respects_colors = (0..n).all(|v| coloring[v] == coloring[h.apply(v)]);
        if respects_colors && graph.is_automorphism(h) {
            if let Some(l) = level_of(h) {
                generators.push((l, h.clone()));
            }
        }
    }
    for i in (0..levels.len()).rev() {
        let cell = levels[i].node.cells[levels[i].target];
        let b = levels[i].point;
        let mut rejected = vec![false; n];
        loop {
            let gens: Vec<&Permutation> = generators.iter().filter(|(l, _)| *l >= i).map(|(_, g)| g).collect();
            let orbit = orbit_of(b, &gens, n);
            let candidate = bits128(cell).find(|&c| !orbit[c] && !rejected[c]);
            let Some(c) = candidate else { break };
            let child = searcher.individualize(&levels[i].node, levels[i].target, c)?;
            let expected = levels.get(i + 1).map_or(&leaf, |l| &l.node);
            let found = if child.same_shape(expected) { searcher.extend(&levels, &leaf, i + 1, &child)? } else { None };
            match found {
                Some(g) => generators.push((i, g)),
                None => {
                    for (x, inside) in orbit_of(c, &gens, n).into_iter().enumerate() {
                        rejected[x] |= inside;
                    }
                }
            }
        }
    }
    Ok(SearchResult { base, generators })
}

/// Combines the graph's own vertex coloring with an extra one.
pub(crate) fn joint_coloring(graph: &DenseGraph, extra: Option<&[usize]>) -> Vec<usize> {
    let n = graph.vertex_count();
    let own = graph.coloring();
    let pairs: Vec<(usize, usize)> = (0..n).map(|v| (own.map_or(0, |c| c[v]), extra.map_or(0, |c| c[v]))).collect();
    let mut sorted = pairs.clone();
    sorted.sort_unstable();
    sorted.dedup();
    pairs.iter().map(|p| sorted.binary_search(p).unwrap()).collect()
}

/// The group of color-preserving automorphisms of `graph`. The graph's own
/// vertex coloring (if any) is always respected; `coloring` adds a further one.
pub fn automorphisms(graph: &DenseGraph, coloring: Option<&[usize]>) -> Result<GeneratedGroup> {
    automorphisms_with_hints(graph, coloring, &[])
}

/// As [`automorphisms`], seeding the search with permutations already known to
/// be automorphisms. Hints that fail verification are ignored.
pub fn automorphisms_with_hints(
    graph: &DenseGraph,
    coloring: Option<&[usize]>,
    hints: &[Permutation],
) -> Result<GeneratedGroup> {
    let colors = joint_coloring(graph, coloring);
    let result = search(graph, &colors, hints)?;
    let origin = graph.clone().with_coloring(colors).expect("length matches");
    GeneratedGroup::from_strong_generators(graph.vertex_count(), result.base, result.generators, Some(origin))
}
