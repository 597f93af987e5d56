//! Arithmetic in ℤ_n: units, cyclic subgroups, coset partitions and the CRT split.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// An element of ℤ_n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: usize,
    modulus: usize,
}

impl Residue {
    pub fn new(value: i64, modulus: usize) -> Residue {
        assert!(modulus > 0);
        let value = value.rem_euclid(modulus as i64) as usize;
        Residue { value, modulus }
    }

    pub fn value(self) -> usize {
        self.value
    }

    pub fn modulus(self) -> usize {
        self.modulus
    }

    pub fn add(self, other: Residue) -> Residue {
        assert_eq!(self.modulus, other.modulus);
        Residue { value: (self.value + other.value) % self.modulus, modulus: self.modulus }
    }

    pub fn mul(self, other: Residue) -> Residue {
        assert_eq!(self.modulus, other.modulus);
        Residue { value: (self.value * other.value) % self.modulus, modulus: self.modulus }
    }

    pub fn neg(self) -> Residue {
        Residue { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }

    pub fn is_unit(self) -> bool {
        self.modulus > 1 && gcd(self.value, self.modulus) == 1
    }

    pub fn inverse(self) -> Option<Residue> {
        (1..self.modulus)
            .find(|&y| (self.value * y) % self.modulus == 1)
            .map(|value| Residue { value, modulus: self.modulus })
    }
}

/// The units of ℤ_n in ascending order. `units(1)` is empty.
pub fn units(n: usize) -> Vec<Residue> {
    (1..n).filter(|&l| gcd(l, n) == 1).map(|l| Residue { value: l, modulus: n }).collect()
}

pub fn is_squarefree(n: usize) -> bool {
    assert!(n >= 1);
    let mut p = 2;
    while p * p <= n {
        if n % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// The subgroup dℤ_n of ℤ_n, of order n/d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicSubgroup {
    modulus: usize,
    step: usize,
}

impl CyclicSubgroup {
    pub fn from_step(modulus: usize, step: usize) -> Result<CyclicSubgroup> {
        if modulus == 0 || step == 0 || modulus % step != 0 {
            return Err(Error::Invalid(format!("{step} does not divide {modulus}")));
        }
        Ok(CyclicSubgroup { modulus, step })
    }

    pub fn of_order(modulus: usize, order: usize) -> Result<CyclicSubgroup> {
        if order == 0 || modulus % order != 0 {
            return Err(Error::Invalid(format!("no subgroup of order {order} in Z_{modulus}")));
        }
        CyclicSubgroup::from_step(modulus, modulus / order)
    }

    /// The subgroup generated by the given elements.
    pub fn generated_by(modulus: usize, elements: impl IntoIterator<Item = usize>) -> CyclicSubgroup {
        let step = elements.into_iter().fold(modulus, |g, x| gcd(g, x % modulus));
        CyclicSubgroup { modulus, step }
    }

    pub fn trivial(modulus: usize) -> CyclicSubgroup {
        CyclicSubgroup { modulus, step: modulus }
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn order(&self) -> usize {
        self.modulus / self.step
    }

    pub fn contains(&self, x: usize) -> bool {
        x % self.modulus % self.step == 0
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..self.modulus).step_by(self.step).collect()
    }

    pub fn is_subgroup_of(&self, other: &CyclicSubgroup) -> bool {
        self.modulus == other.modulus && self.step % other.step == 0
    }
}

/// A partition of [0, n) kept in canonical form: elements ascending within a
/// block, blocks ordered by their minimum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexPartition {
    blocks: Vec<Vec<usize>>,
}

impl IndexPartition {
    pub fn new(size: usize, blocks: Vec<Vec<usize>>) -> Result<IndexPartition> {
        let mut seen = vec![false; size];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::Invalid("empty block".into()));
            }
            for &x in block {
                if x >= size || seen[x] {
                    return Err(Error::Invalid(format!("element {x} repeated or out of range")));
                }
                seen[x] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Invalid("blocks do not cover the ground set".into()));
        }
        Ok(IndexPartition::canonical(blocks))
    }

    fn canonical(mut blocks: Vec<Vec<usize>>) -> IndexPartition {
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        IndexPartition { blocks }
    }

    /// Builds the partition whose blocks are the classes of equal labels.
    pub fn from_labels<T: Eq + std::hash::Hash>(labels: &[T]) -> IndexPartition {
        let mut index = std::collections::HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (x, label) in labels.iter().enumerate() {
            let b = *index.entry(label).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(x);
        }
        IndexPartition::canonical(blocks)
    }

    pub fn singletons(size: usize) -> IndexPartition {
        IndexPartition { blocks: (0..size).map(|x| vec![x]).collect() }
    }

    pub fn one_block(size: usize) -> IndexPartition {
        IndexPartition { blocks: if size == 0 { vec![] } else { vec![(0..size).collect()] } }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn ground_size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// `labels()[x]` is the index of the block containing x.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.ground_size()];
        for (b, block) in self.blocks.iter().enumerate() {
            for &x in block {
                labels[x] = b;
            }
        }
        labels
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.blocks.iter().position(|b| b.contains(&x)).expect("element outside ground set")
    }

    /// P ≺ Q in the fragmentation order: every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &IndexPartition) -> bool {
        let labels = other.labels();
        self.ground_size() == other.ground_size()
            && self.blocks.iter().all(|b| b.iter().all(|&x| labels[x] == labels[b[0]]))
    }
}

/// Cosets of a cyclic subgroup, ordered by minimum element.
pub fn coset_partition(subgroup: &CyclicSubgroup) -> IndexPartition {
    let n = subgroup.modulus();
    let d = subgroup.step();
    IndexPartition {
        blocks: (0..d).map(|r| (r..n).step_by(d).collect()).collect(),
    }
}

/// φ: ℤ_{l1} × ℤ_{l2} → ℤ_n, (x, y) ↦ x·l2 + y·l1, for coprime l1·l2 = n.
#[derive(Debug, Clone)]
pub struct CrtSplit {
    n: usize,
    l1: usize,
    l2: usize,
    inverse: Vec<(usize, usize)>,
}

pub fn crt_split(n: usize, l1: usize) -> Result<CrtSplit> {
    if l1 == 0 || n % l1 != 0 {
        return Err(Error::Invalid(format!("{l1} does not divide {n}")));
    }
    let l2 = n / l1;
    if gcd(l1, l2) != 1 {
        return Err(Error::NotCoprime { l1, l2 });
    }
    let mut inverse = vec![(0, 0); n];
    for x in 0..l1 {
        for y in 0..l2 {
            inverse[(x * l2 + y * l1) % n] = (x, y);
        }
    }
    Ok(CrtSplit { n, l1, l2, inverse })
}

impl CrtSplit {
    pub fn l1(&self) -> usize {
        self.l1
    }

    pub fn l2(&self) -> usize {
        self.l2
    }

    pub fn forward(&self, x: usize, y: usize) -> usize {
        ((x % self.l1) * self.l2 + (y % self.l2) * self.l1) % self.n
    }

    pub fn backward(&self, z: usize) -> (usize, usize) {
        self.inverse[z % self.n]
    }
}
