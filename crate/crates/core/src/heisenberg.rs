//! The Heisenberg group of unitriangular 3×3 matrices over `F_p` and its
//! rank-`p` representation induced from the character of `H = {b = 0}`.
//!
//! `ζ = ζ_p` is kept symbolic: matrix entries are exponents of `ζ`, and
//! traces live in `Z[ζ_p]` ([`CyclotomicInt`]).

use std::fmt;
use std::ops::{Add, Mul};

use thiserror::Error;

pub use crate::oracle::frobenius_character as induced_character_oracle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HeisenbergError {
    #[error("the character must be nontrivial on the centre (chi_exp = 0 mod p)")]
    TrivialCharacter,
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
}

/// `(1 a c; 0 1 b; 0 0 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    p: u32,
}

impl GroupElement {
    pub fn new(a: i64, b: i64, c: i64, p: u32) -> Self {
        let r = |v: i64| v.rem_euclid(p as i64) as u32;
        GroupElement {
            a: r(a),
            b: r(b),
            c: r(c),
            p,
        }
    }

    pub fn identity(p: u32) -> Self {
        Self::new(0, 0, 0, p)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// All `p³` elements, `(a, b, c)` in lexicographic order.
    pub fn all(p: u32) -> impl Iterator<Item = GroupElement> {
        (0..p).flat_map(move |a| {
            (0..p).flat_map(move |b| (0..p).map(move |c| GroupElement { a, b, c, p }))
        })
    }

    /// `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`.
    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.p, other.p);
        let p = self.p as u64;
        GroupElement {
            a: ((self.a + other.a) as u64 % p) as u32,
            b: ((self.b + other.b) as u64 % p) as u32,
            c: ((self.c as u64 + other.c as u64 + self.a as u64 * other.b as u64) % p) as u32,
            p: self.p,
        }
    }

    /// `(-a, -b, -c + ab)`.
    pub fn inv(&self) -> GroupElement {
        let (a, b, c) = (self.a as i64, self.b as i64, self.c as i64);
        GroupElement::new(-a, -b, -c + a * b, self.p)
    }

    pub fn pow(&self, e: u32) -> GroupElement {
        (0..e).fold(GroupElement::identity(self.p), |acc, _| acc.mul(self))
    }

    pub fn order(&self) -> u32 {
        let id = GroupElement::identity(self.p);
        let mut g = *self;
        let mut n = 1;
        while g != id {
            g = g.mul(self);
            n += 1;
        }
        n
    }

    pub fn is_identity(&self) -> bool {
        self.a == 0 && self.b == 0 && self.c == 0
    }

    pub fn is_central(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn in_h(&self) -> bool {
        self.b == 0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// An element `sum coeffs[i] ζ^i` of `Z[ζ_p]`, normalised so that
/// `coeffs[p-1] = 0` using `1 + ζ + ... + ζ^{p-1} = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    coeffs: Vec<i64>,
}

impl CyclotomicInt {
    pub fn zero(p: u32) -> Self {
        CyclotomicInt {
            coeffs: vec![0; p as usize],
        }
    }

    pub fn from_int(v: i64, p: u32) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = v;
        z.normalize();
        z
    }

    /// `ζ^e`.
    pub fn root_of_unity(e: i64, p: u32) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[e.rem_euclid(p as i64) as usize] = 1;
        z.normalize();
        z
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        let mut z = CyclotomicInt { coeffs };
        z.normalize();
        z
    }

    pub fn p(&self) -> u32 {
        self.coeffs.len() as u32
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn normalize(&mut self) {
        let top = *self.coeffs.last().expect("p >= 2");
        if top != 0 {
            for c in self.coeffs.iter_mut() {
                *c -= top;
            }
        }
    }

    pub fn add_root(&mut self, e: i64) {
        let p = self.coeffs.len() as i64;
        self.coeffs[e.rem_euclid(p) as usize] += 1;
        self.normalize();
    }

    /// Exact division by an integer, `None` if some coefficient is not divisible.
    pub fn div_exact(&self, n: i64) -> Option<Self> {
        if self.coeffs.iter().any(|c| c % n != 0) {
            return None;
        }
        Some(CyclotomicInt {
            coeffs: self.coeffs.iter().map(|c| c / n).collect(),
        })
    }
}

impl Add<&CyclotomicInt> for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn add(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len());
        CyclotomicInt::from_coeffs(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Mul<&CyclotomicInt> for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn mul(self, rhs: &CyclotomicInt) -> CyclotomicInt {
        let p = self.coeffs.len();
        assert_eq!(p, rhs.coeffs.len());
        let mut out = vec![0; p];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[(i + j) % p] += a * b;
            }
        }
        CyclotomicInt::from_coeffs(out)
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{i}"),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// A `p × p` monomial matrix: column `j` has the single entry `ζ^exps[j]`
/// in row `perm[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialMatrix {
    pub perm: Vec<usize>,
    pub exps: Vec<u32>,
    p: u32,
}

impl MonomialMatrix {
    pub fn identity(size: usize, p: u32) -> Self {
        MonomialMatrix {
            perm: (0..size).collect(),
            exps: vec![0; size],
            p,
        }
    }

    pub fn size(&self) -> usize {
        self.perm.len()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &r)| r == j) && self.exps.iter().all(|&e| e == 0)
    }

    /// Entry at `(row, col)` as an exponent of `ζ`, `None` for zero.
    pub fn entry(&self, row: usize, col: usize) -> Option<u32> {
        (self.perm[col] == row).then_some(self.exps[col])
    }

    pub fn mat_mul(&self, other: &MonomialMatrix) -> Result<MonomialMatrix, HeisenbergError> {
        if self.size() != other.size() {
            return Err(HeisenbergError::SizeMismatch(self.size(), other.size()));
        }
        // (M1 M2) e_j = M1 (ζ^{e2[j]} e_{π2(j)}) = ζ^{e2[j] + e1[π2(j)]} e_{π1(π2(j))}
        let perm = other.perm.iter().map(|&r| self.perm[r]).collect();
        let exps = other
            .perm
            .iter()
            .zip(&other.exps)
            .map(|(&r, &e)| (e + self.exps[r]) % self.p)
            .collect();
        Ok(MonomialMatrix {
            perm,
            exps,
            p: self.p,
        })
    }

    pub fn pow(&self, e: u32) -> MonomialMatrix {
        (0..e).fold(MonomialMatrix::identity(self.size(), self.p), |acc, _| {
            acc.mat_mul(self).expect("same size")
        })
    }

    pub fn trace(&self) -> CyclotomicInt {
        let mut t = CyclotomicInt::zero(self.p);
        for (j, &r) in self.perm.iter().enumerate() {
            if r == j {
                t.add_root(self.exps[j] as i64);
            }
        }
        t
    }
}

/// `ρ(g)` for `ρ = Ind_H^G χ̃`, `χ(1) = ζ^chi_exp`.
///
/// The basis is indexed by the cosets `(0, j, 0) H`. Since
/// `g (0,j,0) = (0, j+b, 0) (a, 0, c + ja)`, column `j` carries
/// `χ(ja + c)` in row `j + b mod p`.
pub fn rho(g: &GroupElement, chi_exp: u32) -> Result<MonomialMatrix, HeisenbergError> {
    let p = g.p();
    if chi_exp.is_multiple_of(p) {
        return Err(HeisenbergError::TrivialCharacter);
    }
    let size = p as usize;
    let perm = (0..size).map(|j| (j + g.b as usize) % size).collect();
    let exps = (0..p)
        .map(|j| ((chi_exp as u64 * ((j as u64 * g.a as u64) + g.c as u64)) % p as u64) as u32)
        .collect();
    Ok(MonomialMatrix { perm, exps, p })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_law_examples() {
        let p = 3;
        let x = GroupElement::new(1, 0, 0, p);
        let y = GroupElement::new(0, 1, 0, p);
        assert_eq!(x.mul(&y), GroupElement::new(1, 1, 1, p));
        assert_eq!(y.mul(&x), GroupElement::new(1, 1, 0, p));
        for g in GroupElement::all(p) {
            assert!(g.mul(&g.inv()).is_identity());
            assert!(g.inv().mul(&g).is_identity());
        }
    }

    #[test]
    fn rho_examples() {
        let id = rho(&GroupElement::identity(3), 1).unwrap();
        assert!(id.is_identity());
        let z = rho(&GroupElement::new(0, 0, 1, 2), 1).unwrap();
        assert!(z.perm.iter().enumerate().all(|(j, &r)| r == j));
        assert_eq!(z.trace(), CyclotomicInt::from_int(-2, 2));
        assert_eq!(
            rho(&GroupElement::identity(5), 5),
            Err(HeisenbergError::TrivialCharacter)
        );
    }

    #[test]
    fn rho_matches_displayed_matrix() {
        // row 0 holds χ((p-b)a + c) in column p-b; row b holds χ(c) in column 0
        let p = 5;
        let g = GroupElement::new(2, 3, 4, p);
        let m = rho(&g, 1).unwrap();
        let chi = |v: u32| v % p;
        assert_eq!(m.entry(0, (p - 3) as usize), Some(chi((p - 3) * 2 + 4)));
        assert_eq!(m.entry(3, 0), Some(chi(4)));
        assert_eq!(m.entry(2, (p - 1) as usize), Some(chi((p - 1) * 2 + 4)));
        assert_eq!(m.entry((p - 1) as usize, (p - 3 - 1) as usize), Some(chi((p - 3 - 1) * 2 + 4)));
    }

    #[test]
    fn trace_examples() {
        assert_eq!(MonomialMatrix::identity(3, 3).trace(), CyclotomicInt::from_int(3, 3));
        let m = rho(&GroupElement::new(1, 0, 0, 3), 1).unwrap();
        assert!(m.trace().is_zero());
        let id = MonomialMatrix::identity(3, 3);
        assert_eq!(m.mat_mul(&id).unwrap(), m);
        assert_eq!(
            m.mat_mul(&MonomialMatrix::identity(2, 3)),
            Err(HeisenbergError::SizeMismatch(3, 2))
        );
    }

    #[test]
    fn cyclotomic_canonical_form() {
        let p = 5;
        let mut s = CyclotomicInt::zero(p);
        for e in 0..p {
            s.add_root(e as i64);
        }
        assert!(s.is_zero());
        let z = CyclotomicInt::root_of_unity(1, p);
        let mut acc = CyclotomicInt::from_int(1, p);
        for _ in 0..p {
            acc = &acc * &z;
        }
        assert_eq!(acc, CyclotomicInt::from_int(1, p));
        assert_eq!(CyclotomicInt::root_of_unity(4, p).coeffs(), &[-1, -1, -1, -1, 0]);
    }

    #[test]
    fn group_properties() {
        for p in [2, 3, 5] {
            let all: Vec<_> = GroupElement::all(p).collect();
            assert!(all.iter().any(|g| all.iter().any(|h| g.mul(h) != h.mul(g))));
            for g in &all {
                for h in all.iter().filter(|h| h.in_h()) {
                    assert!(g.inv().mul(h).mul(g).in_h());
                }
                assert!(rho(g, 1).unwrap().pow(g.order()).is_identity());
            }
        }
        assert_eq!(GroupElement::new(1, 1, 0, 2).order(), 4);
        assert_eq!(GroupElement::new(1, 1, 0, 3).order(), 3);
    }
}
