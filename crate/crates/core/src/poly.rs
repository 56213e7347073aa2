//! Sparse multivariate polynomials over `F_p` with nonnegative exponents.
//!
//! Used for the `x`-coefficients of Laurent polynomials, for residue forms,
//! and (with the extra chart variables `u`, `y_i`) for the coefficients of
//! twisted series.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::field::{add_mod, mul_mod, reduce, sub_mod, Fp};

/// Exponent vector, one entry per variable.
pub type Exponents = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MPoly {
    p: u32,
    nvars: usize,
    terms: BTreeMap<Exponents, u32>,
}

impl MPoly {
    pub fn zero(p: u32, nvars: usize) -> Self {
        MPoly {
            p,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: i64, p: u32, nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], c, p)
    }

    pub fn one(p: u32, nvars: usize) -> Self {
        Self::constant(1, p, nvars)
    }

    pub fn monomial(exps: Exponents, c: i64, p: u32) -> Self {
        let mut out = MPoly::zero(p, exps.len());
        out.add_term(exps, reduce(c, p));
        out
    }

    /// The variable with index `i` (0-based).
    pub fn var(i: usize, p: u32, nvars: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} variables");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, 1, p)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, Fp)> + '_ {
        self.terms.iter().map(|(e, &c)| (e, Fp::new(c as i64, self.p)))
    }

    pub(crate) fn raw_terms(&self) -> &BTreeMap<Exponents, u32> {
        &self.terms
    }

    pub fn coeff(&self, exps: &[u32]) -> Fp {
        Fp::new(self.terms.get(exps).copied().unwrap_or(0) as i64, self.p)
    }

    /// Adds `c * x^exps` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, exps: Exponents, c: u32) {
        debug_assert_eq!(exps.len(), self.nvars);
        let c = c % self.p;
        if c == 0 {
            return;
        }
        let p = self.p;
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = add_mod(*o.get(), c, p);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &MPoly) {
        assert_eq!(self.p, other.p, "polynomials over different fields");
        assert_eq!(self.nvars, other.nvars, "polynomials in different rings");
    }

    pub fn scale(&self, c: u32) -> MPoly {
        let c = c % self.p;
        if c == 0 {
            return MPoly::zero(self.p, self.nvars);
        }
        MPoly {
            p: self.p,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, &v)| (e.clone(), mul_mod(v, c, self.p)))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut acc = MPoly::one(self.p, self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `d/dx_i`, 0-based.
    pub fn derivative(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(self.p, self.nvars);
        for (e, &c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, mul_mod(c, e[i] % self.p, self.p));
        }
        out
    }

    /// Raises every term to the `p`-th power; coefficients are fixed by Frobenius.
    pub fn frobenius(&self) -> MPoly {
        MPoly {
            p: self.p,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| (e.iter().map(|x| x * self.p).collect(), c))
                .collect(),
        }
    }

    pub fn is_pth_power(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|x| x % self.p == 0))
    }

    /// Inverse of [`MPoly::frobenius`]; `None` if this is not a `p`-th power.
    pub fn pth_root(&self) -> Option<MPoly> {
        if !self.is_pth_power() {
            return None;
        }
        Some(MPoly {
            p: self.p,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| (e.iter().map(|x| x / self.p).collect(), c))
                .collect(),
        })
    }

    /// Re-indexes into a ring with `nvars` variables, variable `i` going to `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> MPoly {
        assert_eq!(map.len(), self.nvars);
        let mut out = MPoly::zero(self.p, nvars);
        for (e, &c) in &self.terms {
            let mut e2 = vec![0; nvars];
            for (i, &x) in e.iter().enumerate() {
                e2[map[i]] += x;
            }
            out.add_term(e2, c);
        }
        out
    }

    /// Sets the listed variables to zero.
    pub fn set_zero(&self, vars: &[usize]) -> MPoly {
        MPoly {
            p: self.p,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| vars.iter().all(|&v| e[v] == 0))
                .map(|(e, &c)| (e.clone(), c))
                .collect(),
        }
    }

    /// Keeps the first `n` variables, requiring all later exponents to vanish.
    pub fn truncate_vars(&self, n: usize) -> Option<MPoly> {
        let mut out = MPoly::zero(self.p, n);
        for (e, &c) in &self.terms {
            if e[n..].iter().any(|&x| x != 0) {
                return None;
            }
            out.add_term(e[..n].to_vec(), c);
        }
        Some(out)
    }
}

impl Add<&MPoly> for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (e, &c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Sub<&MPoly> for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (e, &c) in &rhs.terms {
            out.add_term(e.clone(), sub_mod(0, c, self.p));
        }
        out
    }
}

impl Mul<&MPoly> for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.check_compatible(rhs);
        let mut out = MPoly::zero(self.p, self.nvars);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, mul_mod(ca, cb, self.p));
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(self.p - 1)
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        &self + &rhs
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        &self - &rhs
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let x = MPoly::var(0, 3, 2);
        let z = &x - &x;
        assert!(z.is_zero());
        let three_x = &(&x + &x) + &x;
        assert!(three_x.is_zero());
    }

    #[test]
    fn frobenius_in_char_two() {
        let x = MPoly::var(0, 2, 1);
        let one = MPoly::one(2, 1);
        let s = &x + &one;
        assert_eq!(s.pow(2), s.frobenius());
        assert_eq!(s.frobenius().pth_root().unwrap(), s);
        assert!(s.pth_root().is_none());
    }

    #[test]
    fn derivative_of_pth_power_vanishes() {
        let x = MPoly::var(0, 5, 2);
        let y = MPoly::var(1, 5, 2);
        let f = &(&x * &y) + &y.pow(3);
        let fp = f.frobenius();
        assert!(fp.derivative(0).is_zero());
        assert!(fp.derivative(1).is_zero());
        assert_eq!(f.derivative(1), &x + &y.pow(2).scale(3));
    }

    #[test]
    fn embed_and_restrict() {
        let x = MPoly::var(0, 5, 1);
        let big = x.embed(3, &[2]);
        assert_eq!(big, MPoly::var(2, 5, 3));
        assert!(big.set_zero(&[2]).is_zero());
        assert!(big.truncate_vars(1).is_none());
        assert_eq!(MPoly::one(5, 3).truncate_vars(1).unwrap(), MPoly::one(5, 1));
    }
}
