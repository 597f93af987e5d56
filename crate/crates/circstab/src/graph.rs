//! Circulants, colored circulant digraphs, the tensor double Γ×K₂ and the
//! structural predicates used by the stability screens.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::zn::{gcd, CyclicSubgroup};
use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

pub const MAX_MODULUS: usize = 64;
pub const MAX_VERTICES: usize = 128;

fn check_modulus(n: usize) -> Result<()> {
    if n == 0 || n > MAX_MODULUS {
        return Err(Error::Modulus(n));
    }
    Ok(())
}

/// An arbitrary subset of ℤ_n, n ≤ 64, as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZnSet {
    n: usize,
    bits: u64,
}

impl ZnSet {
    pub fn empty(n: usize) -> ZnSet {
        assert!(n >= 1 && n <= MAX_MODULUS);
        ZnSet { n, bits: 0 }
    }

    pub fn from_bits(n: usize, bits: u64) -> ZnSet {
        assert!(n >= 1 && n <= MAX_MODULUS);
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        ZnSet { n, bits: bits & mask }
    }

    pub fn from_elements(n: usize, elements: impl IntoIterator<Item = usize>) -> ZnSet {
        let mut s = ZnSet::empty(n);
        for x in elements {
            s.bits |= 1 << (x % n);
        }
        s
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, x: usize) -> bool {
        self.bits >> (x % self.n) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.contains(x)).collect()
    }

    pub fn shift(&self, h: usize) -> ZnSet {
        ZnSet::from_elements(self.n, self.elements().into_iter().map(|x| x + h))
    }

    pub fn scale(&self, l: usize) -> ZnSet {
        ZnSet::from_elements(self.n, self.elements().into_iter().map(|x| x * l))
    }

    pub fn negate(&self) -> ZnSet {
        ZnSet::from_elements(self.n, self.elements().into_iter().map(|x| self.n - x))
    }

    pub fn union(&self, other: &ZnSet) -> ZnSet {
        ZnSet { n: self.n, bits: self.bits | other.bits }
    }

    pub fn intersect(&self, other: &ZnSet) -> ZnSet {
        ZnSet { n: self.n, bits: self.bits & other.bits }
    }

    pub fn minus(&self, other: &ZnSet) -> ZnSet {
        ZnSet { n: self.n, bits: self.bits & !other.bits }
    }

    /// Reduction modulo a divisor d of n.
    pub fn reduce_mod(&self, d: usize) -> ZnSet {
        assert_eq!(self.n % d, 0);
        ZnSet::from_elements(d, self.elements())
    }

    /// All h with S + h = S.
    pub fn stabilizing_shifts(&self) -> Vec<usize> {
        (0..self.n).filter(|&h| self.shift(h) == *self).collect()
    }
}

impl fmt::Debug for ZnSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} mod {}", self.elements(), self.n)
    }
}

/// A symmetric subset S of ℤ_n∖{0}, the datum of Cay(ℤ_n, S).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConnectionSet {
    set: ZnSet,
}

impl ConnectionSet {
    pub fn new(n: usize, elements: impl IntoIterator<Item = usize>) -> Result<ConnectionSet> {
        check_modulus(n)?;
        let mut set = ZnSet::empty(n);
        for x in elements {
            if x >= n {
                return Err(Error::Invalid(format!("{x} is not a residue mod {n}")));
            }
            set.bits |= 1 << x;
        }
        ConnectionSet::from_set(set)
    }

    pub fn from_set(set: ZnSet) -> Result<ConnectionSet> {
        if set.contains(0) {
            return Err(Error::Invalid("0 belongs to the connection set".into()));
        }
        if set.negate() != set {
            let bad = set.elements().into_iter().find(|&s| !set.contains(set.n - s)).unwrap();
            return Err(Error::Invalid(format!(
                "connection set is not symmetric: {bad} present but {} missing",
                set.n - bad
            )));
        }
        Ok(ConnectionSet { set })
    }

    /// The set determined by a mask over the pair classes {s, n−s}, s = 1..=n/2.
    pub fn from_class_mask(n: usize, mask: u64) -> ConnectionSet {
        let mut set = ZnSet::empty(n);
        for s in 1..=n / 2 {
            if mask >> (s - 1) & 1 == 1 {
                set.bits |= 1 << s;
                set.bits |= 1 << (n - s);
            }
        }
        ConnectionSet { set }
    }

    pub fn class_mask(&self) -> u64 {
        (1..=self.n() / 2).filter(|&s| self.contains(s)).fold(0, |m, s| m | 1 << (s - 1))
    }

    pub fn class_count(n: usize) -> usize {
        n / 2
    }

    /// Every symmetric 0-free subset of ℤ_n, including ∅, in ascending class-mask order.
    pub fn all(n: usize) -> impl Iterator<Item = ConnectionSet> {
        (0..1u64 << ConnectionSet::class_count(n)).map(move |m| ConnectionSet::from_class_mask(n, m))
    }

    pub fn n(&self) -> usize {
        self.set.n
    }

    pub fn as_set(&self) -> ZnSet {
        self.set
    }

    pub fn bits(&self) -> u64 {
        self.set.bits
    }

    pub fn contains(&self, x: usize) -> bool {
        self.set.contains(x)
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn elements(&self) -> Vec<usize> {
        self.set.elements()
    }

    pub fn shift(&self, h: usize) -> ZnSet {
        self.set.shift(h)
    }

    /// The even part S ∩ 2ℤ_n.
    pub fn even_part(&self) -> ZnSet {
        ZnSet::from_elements(self.n(), self.elements().into_iter().filter(|x| x % 2 == 0))
    }
}

impl fmt::Display for ConnectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(usize::to_string).collect();
        write!(f, "{}:{}", self.n(), parts.join(","))
    }
}

impl fmt::Debug for ConnectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses a comma-separated list of residues; blank input is the empty list.
pub fn parse_elements(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Invalid(format!("bad element {t:?}"))))
        .collect()
}

impl FromStr for ConnectionSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<ConnectionSet> {
        let (n, rest) = s.split_once(':').ok_or_else(|| Error::Invalid(format!("expected n:s1,s2,... got {s:?}")))?;
        let n = n.trim().parse::<usize>().map_err(|_| Error::Invalid(format!("bad modulus {n:?}")))?;
        ConnectionSet::new(n, parse_elements(rest)?)
    }
}

/// Colors S₁, …, S_k of DiCay(ℤ_n, S₁, …, S_k). No symmetry is required and loops are allowed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ColoredConnectionSets {
    n: usize,
    colors: Vec<ZnSet>,
}

impl ColoredConnectionSets {
    pub fn new(n: usize, colors: Vec<ZnSet>) -> Result<ColoredConnectionSets> {
        check_modulus(n)?;
        if colors.iter().any(|c| c.modulus() != n) {
            return Err(Error::Invalid("color modulus mismatch".into()));
        }
        Ok(ColoredConnectionSets { n, colors })
    }

    pub fn from_lists(n: usize, colors: &[&[usize]]) -> Result<ColoredConnectionSets> {
        check_modulus(n)?;
        ColoredConnectionSets::new(n, colors.iter().map(|c| ZnSet::from_elements(n, c.iter().copied())).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn colors(&self) -> &[ZnSet] {
        &self.colors
    }

    pub fn has_loops(&self) -> bool {
        self.colors.iter().any(|c| c.contains(0))
    }

    /// Γ^{(l)}: every color multiplied by the unit l.
    pub fn multiply(&self, l: usize) -> Result<ColoredConnectionSets> {
        if gcd(l % self.n, self.n) != 1 {
            return Err(Error::NotAUnit(l, self.n));
        }
        Ok(ColoredConnectionSets { n: self.n, colors: self.colors.iter().map(|c| c.scale(l)).collect() })
    }

    /// Smallest nonzero h with S_i + h = S_i for every color.
    pub fn reduced_shift(&self) -> Option<usize> {
        (1..self.n).find(|&h| self.colors.iter().all(|c| c.shift(h) == *c))
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced_shift().is_none()
    }

    pub fn to_graph(&self) -> DenseGraph {
        let n = self.n;
        let relations = self
            .colors
            .iter()
            .map(|c| (0..n).map(|x| c.elements().iter().fold(0u128, |row, &s| row | 1 << ((x + s) % n))).collect())
            .collect();
        DenseGraph::from_relations(n, relations).expect("n ≤ 64")
    }
}

/// A graph on at most 128 vertices with one or more arc relations (edge colors),
/// each stored as out-neighbour rows, and an optional vertex coloring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DenseGraph {
    n: usize,
    relations: Vec<Vec<u128>>,
    coloring: Option<Vec<usize>>,
}

impl DenseGraph {
    pub fn empty(n: usize) -> Result<DenseGraph> {
        DenseGraph::from_relations(n, vec![vec![0; n]])
    }

    pub fn from_relations(n: usize, relations: Vec<Vec<u128>>) -> Result<DenseGraph> {
        if n > MAX_VERTICES {
            return Err(Error::Invalid(format!("{n} vertices exceeds {MAX_VERTICES}")));
        }
        if relations.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("relation row count mismatch".into()));
        }
        let mask = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
        if relations.iter().flatten().any(|&row| row & !mask != 0) {
            return Err(Error::Invalid("arc to a vertex out of range".into()));
        }
        Ok(DenseGraph { n, relations, coloring: None })
    }

    /// A simple undirected graph from an edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<DenseGraph> {
        let mut g = DenseGraph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::Invalid(format!("bad edge ({u},{v})")));
            }
            g.relations[0][u] |= 1 << v;
            g.relations[0][v] |= 1 << u;
        }
        Ok(g)
    }

    pub fn with_coloring(mut self, coloring: Vec<usize>) -> Result<DenseGraph> {
        if coloring.len() != self.n {
            return Err(Error::Invalid("coloring length mismatch".into()));
        }
        self.coloring = Some(coloring);
        Ok(self)
    }

    pub fn without_coloring(mut self) -> DenseGraph {
        self.coloring = None;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    pub fn coloring(&self) -> Option<&[usize]> {
        self.coloring.as_deref()
    }

    pub fn relation(&self, r: usize) -> &[u128] {
        &self.relations[r]
    }

    /// Out-neighbours of `v` in the first relation.
    pub fn neighbors(&self, v: usize) -> u128 {
        self.relations[0][v]
    }

    pub fn has_arc(&self, r: usize, u: usize, v: usize) -> bool {
        self.relations[r][u] >> v & 1 == 1
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.has_arc(0, u, v)
    }

    pub fn is_symmetric(&self) -> bool {
        self.relations
            .iter()
            .all(|rel| (0..self.n).all(|u| (0..self.n).all(|v| (rel[u] >> v & 1) == (rel[v] >> u & 1))))
    }

    pub fn is_simple(&self) -> bool {
        self.relations.len() == 1 && self.is_symmetric() && (0..self.n).all(|v| !self.has_edge(v, v))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.relations[0][v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        let arcs: usize = self.relations[0].iter().map(|r| r.count_ones() as usize).sum();
        arcs / 2
    }

    /// Transposed relations (in-neighbour rows).
    pub fn transposed(&self) -> Vec<Vec<u128>> {
        self.relations
            .iter()
            .map(|rel| {
                let mut t = vec![0u128; self.n];
                for (u, &row) in rel.iter().enumerate() {
                    for v in bits128(row) {
                        t[v] |= 1 << u;
                    }
                }
                t
            })
            .collect()
    }

    /// Whether σ preserves every relation and the vertex coloring.
    pub fn is_automorphism(&self, sigma: &Permutation) -> bool {
        if sigma.degree() != self.n {
            return false;
        }
        if let Some(c) = &self.coloring {
            if (0..self.n).any(|v| c[v] != c[sigma.apply(v)]) {
                return false;
            }
        }
        self.relations.iter().all(|rel| {
            (0..self.n).all(|u| {
                let image = bits128(rel[u]).fold(0u128, |acc, v| acc | 1 << sigma.apply(v));
                rel[sigma.apply(u)] == image
            })
        })
    }

    /// `self` on vertices 0..n and `other` on n..2n, without colorings.
    pub fn disjoint_union(&self, other: &DenseGraph) -> Result<DenseGraph> {
        if self.relations.len() != other.relations.len() {
            return Err(Error::Invalid("relation counts differ".into()));
        }
        let n = self.n;
        let relations = self
            .relations
            .iter()
            .zip(&other.relations)
            .map(|(a, b)| a.iter().copied().chain(b.iter().map(|&row| row << n)).collect())
            .collect();
        DenseGraph::from_relations(n + other.n, relations)
    }

    /// Whether σ maps `self` onto `other` (relations only).
    pub fn is_isomorphism_to(&self, other: &DenseGraph, sigma: &Permutation) -> bool {
        sigma.degree() == self.n
            && other.n == self.n
            && self.relations.len() == other.relations.len()
            && self.relations.iter().zip(&other.relations).all(|(rel, orel)| {
                (0..self.n).all(|u| {
                    let image = bits128(rel[u]).fold(0u128, |acc, v| acc | 1 << sigma.apply(v));
                    orel[sigma.apply(u)] == image
                })
            })
    }

    /// Weakly connected components, as a component label per vertex.
    pub fn components(&self) -> Vec<usize> {
        let t = self.transposed();
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let nbrs = self.relations.iter().zip(&t).fold(0u128, |acc, (r, tr)| acc | r[u] | tr[u]);
                for v in bits128(nbrs) {
                    if label[v] == usize::MAX {
                        label[v] = next;
                        queue.push_back(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().iter().all(|&c| c == 0)
    }

    /// A proper 2-coloring of the first relation if one exists.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut side = vec![u8::MAX; self.n];
        for start in 0..self.n {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in bits128(self.relations[0][u]) {
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// No two vertices share their (colored) in- and out-neighbourhoods.
    pub fn is_reduced(&self) -> bool {
        let t = self.transposed();
        let out: HashSet<Vec<u128>> = (0..self.n).map(|v| self.relations.iter().map(|r| r[v]).collect()).collect();
        let inn: HashSet<Vec<u128>> = (0..self.n).map(|v| t.iter().map(|r| r[v]).collect()).collect();
        out.len() == self.n && inn.len() == self.n
    }
}

pub(crate) fn bits128(mut row: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if row == 0 {
            None
        } else {
            let v = row.trailing_zeros() as usize;
            row &= row - 1;
            Some(v)
        }
    })
}

pub fn build_circulant(s: &ConnectionSet) -> DenseGraph {
    let n = s.n();
    let rows = (0..n).map(|x| s.elements().iter().fold(0u128, |row, &d| row | 1 << ((x + d) % n))).collect();
    DenseGraph::from_relations(n, vec![rows]).expect("n ≤ 64")
}

/// Γ×K₂ with (v, i) encoded as v + n·i, colored by layer.
pub fn tensor_k2(g: &DenseGraph) -> DenseGraph {
    let n = g.vertex_count();
    let mut rows = vec![0u128; 2 * n];
    for u in 0..n {
        for v in bits128(g.neighbors(u)) {
            rows[u] |= 1 << (v + n);
            rows[u + n] |= 1 << v;
        }
    }
    DenseGraph::from_relations(2 * n, vec![rows])
        .expect("Γ has at most 64 vertices")
        .with_coloring((0..2 * n).map(|v| v / n).collect())
        .expect("length matches")
}

/// Smallest nonzero h with S + h = S.
pub fn circulant_reduced_shift(s: &ConnectionSet) -> Option<usize> {
    (1..s.n()).find(|&h| s.shift(h) == s.as_set())
}

pub fn multiply_set(l: usize, s: &ConnectionSet) -> Result<ConnectionSet> {
    let n = s.n();
    if gcd(l % n, n) != 1 {
        return Err(Error::NotAUnit(l, n));
    }
    Ok(ConnectionSet { set: s.as_set().scale(l) })
}

/// (S_r, S_a): the reflective part {s : s+m ∈ S} and the anti-reflective remainder.
pub fn reflective_split(s: &ConnectionSet) -> Result<(ZnSet, ZnSet)> {
    let n = s.n();
    if n % 2 != 0 {
        return Err(Error::Invalid(format!("reflective split needs even n, got {n}")));
    }
    let sr = s.as_set().intersect(&s.shift(n / 2));
    Ok((sr, s.as_set().minus(&sr)))
}

/// The two-colored quotient Γ/𝓛 over ℤ_{n/2}: color 0 reflective, color 1 anti-reflective.
pub fn quotient_colored(s: &ConnectionSet) -> Result<ColoredConnectionSets> {
    let m = s.n() / 2;
    let (sr, sa) = reflective_split(s)?;
    ColoredConnectionSets::new(m, vec![sr.reduce_mod(m), sa.reduce_mod(m)])
}

/// rad: the subgroup of shifts fixing every given set.
pub fn radical(sets: &[ZnSet]) -> CyclicSubgroup {
    let n = sets.first().map_or(1, ZnSet::modulus);
    let shifts = (1..n).filter(|&h| sets.iter().all(|c| c.shift(h) == *c));
    CyclicSubgroup::generated_by(n, shifts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cs(n: usize, e: &[usize]) -> ConnectionSet {
        ConnectionSet::new(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn five_cycle() {
        let g = build_circulant(&cs(5, &[1, 4]));
        assert_eq!(g.edge_count(), 5);
        assert!((0..5).all(|v| g.degree(v) == 2 && g.has_edge(v, (v + 1) % 5)));
    }

    #[test]
    fn prism() {
        let g = build_circulant(&cs(6, &[2, 3, 4]));
        for (u, v) in [(0, 2), (2, 4), (0, 4), (1, 3), (3, 5), (1, 5), (0, 3), (1, 4), (2, 5)] {
            assert!(g.has_edge(u, v));
        }
        assert_eq!(g.edge_count(), 9);
        let k4ish = build_circulant(&cs(4, &[1, 2, 3]));
        assert!((0..4).all(|v| k4ish.degree(v) == 3));
        let deg3 = build_circulant(&cs(4, &[1, 3, 2]));
        assert_eq!(deg3.degree(0), 3);
    }

    #[test]
    fn validation() {
        assert!(ConnectionSet::new(6, [1]).is_err());
        assert!(ConnectionSet::new(6, [0]).is_err());
        assert!(ConnectionSet::new(65, [1, 64]).is_err());
        assert_eq!("10:1,2,8,9".parse::<ConnectionSet>().unwrap(), cs(10, &[1, 2, 8, 9]));
        assert_eq!(cs(10, &[9, 1]).to_string(), "10:1,9");
        assert_eq!("7:".parse::<ConnectionSet>().unwrap().len(), 0);
    }

    #[test]
    fn double_covers() {
        let c10 = tensor_k2(&build_circulant(&cs(5, &[1, 4])));
        assert!(c10.is_connected());
        assert_eq!(c10.edge_count(), 10);
        assert!((0..10).all(|v| c10.degree(v) == 2));
        let two_edges = tensor_k2(&build_circulant(&cs(2, &[1])));
        assert!(!two_edges.is_connected());
        assert_eq!(two_edges.edge_count(), 2);
        let empty = tensor_k2(&DenseGraph::empty(3).unwrap());
        assert_eq!((empty.vertex_count(), empty.edge_count()), (6, 0));
    }

    #[test]
    fn predicates() {
        assert!(!build_circulant(&cs(6, &[3])).is_connected());
        assert!(build_circulant(&cs(6, &[1, 5])).is_bipartite());
        let g = build_circulant(&cs(10, &[2, 5, 8]));
        assert!(g.is_connected() && !g.is_bipartite());
        assert_eq!(circulant_reduced_shift(&cs(10, &[1, 4, 6, 9])), Some(5));
        assert_eq!(circulant_reduced_shift(&cs(6, &[1, 2, 3, 4, 5])), None);
        assert_eq!(circulant_reduced_shift(&cs(10, &[1, 2, 8, 9])), None);
    }

    #[test]
    fn multipliers() {
        let s = cs(10, &[1, 2, 8, 9]);
        assert_eq!(multiply_set(1, &s).unwrap(), s);
        let t = multiply_set(3, &s).unwrap();
        assert_eq!(t.elements(), vec![3, 4, 6, 7]);
        assert_eq!(t.as_set(), s.shift(5));
        assert_eq!(multiply_set(2, &cs(5, &[1, 4])).unwrap().elements(), vec![2, 3]);
        assert_eq!(multiply_set(2, &s), Err(Error::NotAUnit(2, 10)));
    }

    #[test]
    fn reflective_examples() {
        let (sr, sa) = reflective_split(&cs(10, &[2, 4, 6, 8, 5])).unwrap();
        assert!(sr.is_empty());
        assert_eq!(sa.elements(), vec![2, 4, 5, 6, 8]);
        let (sr, _) = reflective_split(&cs(10, &[1, 2, 8, 9])).unwrap();
        assert!(sr.is_empty());
        let (sr, sa) = reflective_split(&cs(6, &[1, 2, 4, 5])).unwrap();
        assert_eq!(sr.elements(), vec![1, 2, 4, 5]);
        assert!(sa.is_empty());
        assert!(reflective_split(&cs(5, &[1, 4])).is_err());
    }

    #[test]
    fn quotient_examples() {
        let q = quotient_colored(&cs(10, &[2, 4, 6, 8, 5])).unwrap();
        assert!(q.colors()[0].is_empty());
        assert!(q.colors()[1].contains(0) && q.colors()[1].contains(2));
        let empty = quotient_colored(&cs(10, &[])).unwrap();
        assert!(empty.colors().iter().all(ZnSet::is_empty));
    }

    #[test]
    fn radicals() {
        assert_eq!(radical(&[cs(10, &[1, 4, 6, 9]).as_set()]).elements(), vec![0, 5]);
        assert_eq!(radical(&[cs(6, &[1, 2, 3, 4, 5]).as_set()]).order(), 1);
        assert_eq!(radical(&[ZnSet::empty(8)]).order(), 8);
    }

    #[test]
    fn rotation_is_automorphism() {
        for n in 1..=14 {
            for s in ConnectionSet::all(n) {
                let g = build_circulant(&s);
                let rot = Permutation::from_fn(n, |x| (x + 1) % n).unwrap();
                assert!(g.is_automorphism(&rot));
            }
        }
    }

    #[test]
    fn cover_connectivity() {
        for n in 1..=12 {
            for s in ConnectionSet::all(n) {
                let g = build_circulant(&s);
                let cover = tensor_k2(&g);
                assert!(cover.is_bipartite());
                assert_eq!(cover.is_connected(), g.is_connected() && !g.is_bipartite(), "{s}");
            }
        }
    }

    #[test]
    fn reflective_invariants() {
        for n in (2..=14).step_by(2) {
            for s in ConnectionSet::all(n) {
                let (sr, sa) = reflective_split(&s).unwrap();
                assert_eq!(sr.shift(n / 2), sr);
                assert!(sa.shift(n / 2).intersect(&sa).is_empty());
                assert_eq!(sr.union(&sa), s.as_set());
            }
        }
    }

    #[test]
    fn reduced_shift_matches_neighbourhoods() {
        for n in 1..=12 {
            for s in ConnectionSet::all(n) {
                assert_eq!(circulant_reduced_shift(&s).is_none(), build_circulant(&s).is_reduced(), "{s}");
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(ConnectionSet::all(10).count(), 32);
        assert_eq!(ConnectionSet::all(7).count(), 8);
        let all: Vec<_> = ConnectionSet::all(9).collect();
        assert!(all.iter().all(|s| ConnectionSet::from_class_mask(9, s.class_mask()) == *s));
    }
}
