//! Dense linear algebra over F₂ with 64-bit word rows.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> BitVec {
        BitVec { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn ones(len: usize) -> BitVec {
        let mut v = BitVec::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> BitVec {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn unit(len: usize, i: usize) -> BitVec {
        let mut v = BitVec::zeros(len);
        v.set(i, true);
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, b: bool) {
        debug_assert!(i < self.len);
        if b {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut v = self.clone();
        v.xor_assign(other);
        v
    }

    pub fn and_parity(&self, other: &BitVec) -> bool {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>() % 2 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Concatenation of `self` followed by `other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut v = BitVec::zeros(self.len + other.len);
        for i in self.ones_iter() {
            v.set(i, true);
        }
        for i in other.ones_iter() {
            v.set(self.len + i, true);
        }
        v
    }

    pub fn slice(&self, start: usize, len: usize) -> BitVec {
        let mut v = BitVec::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                v.set(i, true);
            }
        }
        v
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A subspace of F₂^len kept in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Subspace {
    len: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(len: usize) -> Subspace {
        Subspace { len, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn spanned_by<'a>(len: usize, vectors: impl IntoIterator<Item = &'a BitVec>) -> Subspace {
        let mut s = Subspace::new(len);
        for v in vectors {
            s.insert(v.clone());
        }
        s
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: BitVec) -> bool {
        assert_eq!(v.len(), self.len);
        let v = self.reduce(&v);
        let Some(p) = v.first_one() else {
            return false;
        };
        for row in self.rows.iter_mut() {
            if row.get(p) {
                row.xor_assign(&v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// Basis of {x : r·x = 0 for every row r}.
    pub fn orthogonal_complement(&self) -> Vec<BitVec> {
        let mut out = Vec::new();
        let mut is_pivot = vec![false; self.len];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        for f in (0..self.len).filter(|&f| !is_pivot[f]) {
            let mut x = BitVec::unit(self.len, f);
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                if row.get(f) {
                    x.set(p, true);
                }
            }
            out.push(x);
        }
        out
    }

    /// Coordinates of `v` in terms of `self.basis()`, if `v` lies in the span.
    pub fn coordinates(&self, v: &BitVec) -> Option<BitVec> {
        let mut rest = v.clone();
        let mut coords = BitVec::zeros(self.rows.len());
        for (i, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if rest.get(p) {
                rest.xor_assign(row);
                coords.set(i, true);
            }
        }
        rest.is_zero().then_some(coords)
    }
}

pub fn rank(rows: &[BitVec]) -> usize {
    match rows.first() {
        None => 0,
        Some(r) => Subspace::spanned_by(r.len(), rows).dim(),
    }
}

/// Basis of the solution space of the homogeneous system with the given rows.
pub fn nullspace(rows: &[BitVec], ncols: usize) -> Vec<BitVec> {
    Subspace::spanned_by(ncols, rows).orthogonal_complement()
}

/// A dense matrix with `rows` bit-vector rows of length `cols`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> BitMatrix {
        BitMatrix { cols, rows: vec![BitVec::zeros(cols); rows] }
    }

    pub fn identity(n: usize) -> BitMatrix {
        BitMatrix { cols: n, rows: (0..n).map(|i| BitVec::unit(n, i)).collect() }
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> BitMatrix {
        assert!(rows.iter().all(|r| r.len() == cols));
        BitMatrix { cols, rows }
    }

    /// Matrix of the permutation action e_x ↦ e_{p(x)}.
    pub fn permutation(p: &[usize]) -> BitMatrix {
        let n = p.len();
        let mut m = BitMatrix::zeros(n, n);
        for (x, &y) in p.iter().enumerate() {
            m.rows[y].set(x, true);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn set(&mut self, r: usize, c: usize, b: bool) {
        self.rows[r].set(c, b);
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols);
        let mut out = BitVec::zeros(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            if r.and_parity(v) {
                out.set(i, true);
            }
        }
        out
    }

    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows.len());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = BitVec::zeros(other.cols);
                for k in r.ones_iter() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        BitMatrix { cols: other.cols, rows }
    }

    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!((self.nrows(), self.cols), (other.nrows(), other.cols));
        let rows = self.rows.iter().zip(&other.rows).map(|(a, b)| a.xor(b)).collect();
        BitMatrix { cols: self.cols, rows }
    }

    pub fn rank(&self) -> usize {
        Subspace::spanned_by(self.cols, &self.rows).dim()
    }

    pub fn kernel(&self) -> Vec<BitVec> {
        nullspace(&self.rows, self.cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bv(s: &str) -> BitVec {
        BitVec::from_bools(&s.chars().map(|c| c == '1').collect::<Vec<_>>())
    }

    #[test]
    fn small_rank_and_kernel() {
        let rows = vec![bv("110"), bv("011"), bv("101")];
        assert_eq!(rank(&rows), 2);
        let k = nullspace(&rows, 3);
        assert_eq!(k, vec![bv("111")]);
    }

    #[test]
    fn coordinates_roundtrip() {
        let s = Subspace::spanned_by(4, &[bv("1100"), bv("0110")]);
        let c = s.coordinates(&bv("1010")).unwrap();
        let mut back = BitVec::zeros(4);
        for i in c.ones_iter() {
            back.xor_assign(&s.basis()[i]);
        }
        assert_eq!(back, bv("1010"));
        assert!(s.coordinates(&bv("0001")).is_none());
    }

    #[test]
    fn wide_vectors() {
        let mut v = BitVec::zeros(130);
        v.set(129, true);
        v.set(64, true);
        assert_eq!(v.first_one(), Some(64));
        assert_eq!(v.count_ones(), 2);
        assert_eq!(v.ones_iter().collect::<Vec<_>>(), vec![64, 129]);
    }

    fn arb_matrix() -> impl Strategy<Value = (usize, Vec<BitVec>)> {
        (1usize..80, 0usize..20).prop_flat_map(|(cols, nrows)| {
            (Just(cols), proptest::collection::vec(proptest::collection::vec(any::<bool>(), cols), nrows))
                .prop_map(|(c, rows)| (c, rows.iter().map(|r| BitVec::from_bools(r)).collect()))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity((cols, rows) in arb_matrix()) {
            let r = Subspace::spanned_by(cols, &rows).dim();
            let k = nullspace(&rows, cols);
            prop_assert_eq!(r + k.len(), cols);
            for x in &k {
                for row in &rows {
                    prop_assert!(!row.and_parity(x));
                }
            }
            prop_assert_eq!(rank(&k), k.len());
        }

        #[test]
        fn span_contains_generators((cols, rows) in arb_matrix()) {
            let s = Subspace::spanned_by(cols, &rows);
            for r in &rows {
                prop_assert!(s.contains(r));
            }
        }

        #[test]
        fn matrix_product_associates_with_vectors(a in proptest::collection::vec(any::<bool>(), 36),
                                                  b in proptest::collection::vec(any::<bool>(), 36),
                                                  v in proptest::collection::vec(any::<bool>(), 6)) {
            let m = |bits: &[bool]| BitMatrix::from_rows(6, bits.chunks(6).map(BitVec::from_bools).collect());
            let (a, b, v) = (m(&a), m(&b), BitVec::from_bools(&v));
            prop_assert_eq!(a.mul(&b).mul_vec(&v), a.mul_vec(&b.mul_vec(&v)));
        }
    }
}
