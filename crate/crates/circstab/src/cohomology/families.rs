use super::ActionGroup;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::zn::gcd;

pub fn trivial(degree: usize) -> ActionGroup {
    ActionGroup::from_generators(degree, Vec::new()).expect("trivial group")
}

fn shift(k: usize) -> Permutation {
    Permutation::from_fn(k, |x| (x + 1) % k).expect("rotation")
}

/// (ℤ_k)_r acting on ℤ_k by x ↦ x + 1.
pub fn cyclic_regular(k: usize) -> Result<ActionGroup> {
    if k == 0 {
        return Err(Error::Invalid("empty set".into()));
    }
    ActionGroup::from_generators(k, vec![shift(k)])
}

/// D_{2k} on ℤ_k: rotations and x ↦ −x.
pub fn dihedral(k: usize) -> Result<ActionGroup> {
    if k < 3 {
        return Err(Error::Invalid("dihedral groups need k ≥ 3".into()));
    }
    ActionGroup::from_generators(k, vec![shift(k), Permutation::from_fn(k, |x| (k - x) % k)?])
}

/// ⟨x ↦ x + 1, x ↦ ax⟩ ≤ Aff(F_p).
pub fn affine(p: usize, a: usize) -> Result<ActionGroup> {
    if p < 2 || gcd(a, p) != 1 {
        return Err(Error::NotAUnit(a, p));
    }
    ActionGroup::from_generators(p, vec![shift(p), Permutation::from_fn(p, |x| a * x % p)?])
}

/// S_k on k points, generated by (0 1) and x ↦ x + 1.
pub fn symmetric(k: usize) -> Result<ActionGroup> {
    if k < 2 {
        return ActionGroup::from_generators(k, Vec::new());
    }
    ActionGroup::from_generators(k, vec![Permutation::from_cycles(k, &[&[0, 1]])?, shift(k)])
}

/// A_k on ℤ_k, generated by the 3-cycles (x, x+1, x+2).
pub fn alternating(k: usize) -> Result<ActionGroup> {
    if k < 3 {
        return ActionGroup::from_generators(k, Vec::new());
    }
    let gens = (0..k).map(|x| Permutation::from_cycles(k, &[&[x, (x + 1) % k, (x + 2) % k]])).collect::<Result<Vec<_>>>()?;
    ActionGroup::from_generators(k, gens)
}

/// Renames the points so that the k-cycle `c` becomes x ↦ x + 1:
/// point c^i(0) is relabelled i.
pub fn relabel_along_cycle(group: &ActionGroup, c: &Permutation) -> Result<ActionGroup> {
    let k = group.degree();
    let mut orbit = vec![0];
    while orbit.len() < k {
        let next = c.apply(*orbit.last().unwrap());
        if next == 0 {
            return Err(Error::Invalid("not a full cycle".into()));
        }
        orbit.push(next);
    }
    if c.apply(orbit[k - 1]) != 0 {
        return Err(Error::Invalid("not a full cycle".into()));
    }
    let mut label = vec![0; k];
    for (i, &x) in orbit.iter().enumerate() {
        label[x] = i;
    }
    let gens = group
        .generators()
        .iter()
        .map(|&g| Permutation::from_fn(k, |i| label[group.action(g).apply(orbit[i])]))
        .collect::<Result<Vec<_>>>()?;
    ActionGroup::from_generators(k, gens)
}

/// F_{2^ℓ} = F₂[t]/(f) with f = t² + t + 1 or t³ + t + 1; elements are bit patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaloisField {
    ell: u32,
    modulus: u32,
}

impl GaloisField {
    pub fn new(ell: u32) -> Result<GaloisField> {
        match ell {
            2 => Ok(GaloisField { ell, modulus: 0b111 }),
            3 => Ok(GaloisField { ell, modulus: 0b1011 }),
            _ => Err(Error::Invalid(format!("F_2^{ell} is not built in; use ℓ ∈ {{2, 3}}"))),
        }
    }

    pub fn size(&self) -> usize {
        1 << self.ell
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        a ^ b
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b, mut acc) = (a as u32, b as u32, 0u32);
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & (1 << self.ell) != 0 {
                a ^= self.modulus;
            }
        }
        acc as usize
    }

    pub fn inv(&self, a: usize) -> Option<usize> {
        (a != 0).then(|| (1..self.size()).find(|&b| self.mul(a, b) == 1).expect("field"))
    }

    pub fn frobenius(&self, a: usize) -> usize {
        self.mul(a, a)
    }

    pub fn generator(&self) -> usize {
        0b10
    }
}

/// Groups acting on P¹F_{2^ℓ}. Point a ∈ F is the line F·[a, 1]ᵀ, point 2^ℓ is F·[1, 0]ᵀ.
#[derive(Clone, Debug)]
pub struct ProjectiveFamily {
    pub field: GaloisField,
    /// T_ℓ: [[1, a], [0, 1]].
    pub translations: ActionGroup,
    /// U_ℓ: [[a, b], [0, a⁻¹]].
    pub upper: ActionGroup,
    pub sl2: ActionGroup,
    pub pgaml2: ActionGroup,
}

impl ProjectiveFamily {
    pub fn points(&self) -> usize {
        self.field.size() + 1
    }

    pub fn infinity(&self) -> usize {
        self.field.size()
    }
}

fn mobius(f: &GaloisField, m: [usize; 4]) -> Result<Permutation> {
    let q = f.size();
    let [a, b, c, d] = m;
    Permutation::from_fn(q + 1, |x| {
        let (num, den) = if x == q { (a, c) } else { (f.add(f.mul(a, x), b), f.add(f.mul(c, x), d)) };
        match f.inv(den) {
            Some(i) => f.mul(num, i),
            None => q,
        }
    })
}

pub fn projective_family(ell: u32) -> Result<ProjectiveFamily> {
    let f = GaloisField::new(ell)?;
    let q = f.size();
    let basis: Vec<usize> = (0..ell).map(|i| 1 << i).collect();
    let t_gens = basis.iter().map(|&a| mobius(&f, [1, a, 0, 1])).collect::<Result<Vec<_>>>()?;
    let g = f.generator();
    let diag = mobius(&f, [g, 0, 0, f.inv(g).expect("nonzero")])?;
    let swap = mobius(&f, [0, 1, 1, 0])?;
    let frob = Permutation::from_fn(q + 1, |x| if x == q { q } else { f.frobenius(x) })?;
    let mut u_gens = t_gens.clone();
    u_gens.push(diag.clone());
    let mut sl_gens = u_gens.clone();
    sl_gens.push(swap);
    let mut gamma_gens = sl_gens.clone();
    gamma_gens.push(frob);
    Ok(ProjectiveFamily {
        field: f,
        translations: ActionGroup::from_generators(q + 1, t_gens)?,
        upper: ActionGroup::from_generators(q + 1, u_gens)?,
        sl2: ActionGroup::from_generators(q + 1, sl_gens)?,
        pgaml2: ActionGroup::from_generators(q + 1, gamma_gens)?,
    })
}
