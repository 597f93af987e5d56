use super::GeneratedGroup;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::zn::IndexPartition;

/// A partition known to be invariant under a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSystem {
    pub partition: IndexPartition,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.0[hi] = lo;
        true
    }
}

/// The finest partition that is invariant under `gens` and coarser than `p`.
pub fn block_closure(gens: &[Permutation], p: &IndexPartition) -> IndexPartition {
    let n = p.ground_size();
    let mut uf = UnionFind((0..n).collect());
    for b in p.blocks() {
        for &x in &b[1..] {
            uf.union(b[0], x);
        }
    }
    loop {
        let mut changed = false;
        for g in gens {
            for x in 0..n {
                let r = uf.find(x);
                if r != x {
                    changed |= uf.union(g.apply(x), g.apply(r));
                }
            }
        }
        if !changed {
            break;
        }
    }
    let labels: Vec<usize> = (0..n).map(|x| uf.find(x)).collect();
    IndexPartition::from_labels(&labels)
}

pub fn is_block_system(g: &GeneratedGroup, p: &IndexPartition) -> bool {
    p.ground_size() == g.degree() && g.generators().iter().all(|s| induced_block_permutation(s, p).is_ok())
}

/// The permutation of blocks (indexed canonically) induced by σ.
pub fn induced_block_permutation(sigma: &Permutation, p: &IndexPartition) -> Result<Permutation> {
    let labels = p.labels();
    let mut images = Vec::with_capacity(p.len());
    for block in p.blocks() {
        let target = labels[sigma.apply(block[0])];
        if block.iter().any(|&x| labels[sigma.apply(x)] != target) || p.blocks()[target].len() != block.len() {
            return Err(Error::NotInvariant);
        }
        images.push(target);
    }
    Permutation::from_images(images).map_err(|_| Error::NotInvariant)
}

/// A block system Q with P strictly finer than Q and nothing strictly in between.
pub fn minimal_block_system_above(g: &GeneratedGroup, p: &IndexPartition) -> Result<BlockSystem> {
    if p.len() <= 1 {
        return Err(Error::NoThickerSystem);
    }
    if !g.is_transitive() {
        return Err(Error::Intransitive);
    }
    if !is_block_system(g, p) {
        return Err(Error::NotInvariant);
    }
    let first = &p.blocks()[0];
    let mut best: Option<IndexPartition> = None;
    for x in (0..g.degree()).filter(|x| !first.contains(x)) {
        let mut blocks: Vec<Vec<usize>> = p.blocks().to_vec();
        let other = p.block_of(x);
        let moved = std::mem::take(&mut blocks[other]);
        blocks[0].extend(moved);
        blocks.retain(|b| !b.is_empty());
        let candidate = block_closure(g.generators(), &IndexPartition::new(g.degree(), blocks)?);
        if best.as_ref().map_or(true, |b| candidate.blocks()[0].len() < b.blocks()[0].len()) {
            best = Some(candidate);
        }
    }
    Ok(BlockSystem { partition: best.expect("some point lies outside the first block") })
}

pub fn is_primitive(g: &GeneratedGroup) -> Result<bool> {
    if !g.is_transitive() {
        return Err(Error::Intransitive);
    }
    let n = g.degree();
    Ok((1..n).all(|x| {
        let mut blocks: Vec<Vec<usize>> = (0..n).filter(|&y| y != x && y != 0).map(|y| vec![y]).collect();
        blocks.push(vec![0, x]);
        block_closure(g.generators(), &IndexPartition::new(n, blocks).unwrap()).len() == 1
    }))
}
