//! Slow, independent baselines for the main code paths.
//!
//! Nothing here calls into the blow-up substitution or the Artin-Schreier
//! reduction; the expansions are built monomial by monomial from binomial
//! coefficients.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::heisenberg::{CyclotomicInt, GroupElement, HeisenbergError};
use crate::laurent::LaurentPoly;
use crate::poly::{Exponents, MPoly};
use crate::series::{chart_vars, u_var, y_var, TwistedSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search space of {0} candidates exceeds the limit of 10^7")]
    SearchTooLarge(u128),
}

pub const MAX_CANDIDATES: u128 = 10_000_000;

/// Binomial coefficients mod `p` by Pascal's rule.
struct Pascal {
    rows: Vec<Vec<u32>>,
    p: u32,
}

impl Pascal {
    fn new(p: u32) -> Self {
        Pascal {
            rows: vec![vec![1]],
            p,
        }
    }

    fn get(&mut self, n: u64, j: u64) -> u32 {
        if j > n {
            return 0;
        }
        while self.rows.len() as u64 <= n {
            let prev = self.rows.last().unwrap();
            let mut row = vec![1; prev.len() + 1];
            for i in 1..prev.len() {
                row[i] = (prev[i - 1] + prev[i]) % self.p;
            }
            self.rows.push(row);
        }
        self.rows[n as usize][j as usize]
    }

    /// `binom(a, j)` for any integer `a`; `binom(-n, j) = (-1)^j binom(n+j-1, j)`.
    fn signed(&mut self, a: i64, j: u64) -> u32 {
        if a >= 0 {
            self.get(a as u64, j)
        } else {
            let v = self.get((-a) as u64 + j - 1, j);
            if j % 2 == 1 && v != 0 {
                self.p - v
            } else {
                v
            }
        }
    }
}

/// `f(t(1 + t^k u), x + t^k y) - f(t, x)` by direct binomial expansion,
/// with the same truncation contract as the main substitution.
pub fn series_expand_oracle(f: &LaurentPoly, k: u32, prec: u32) -> TwistedSeries {
    assert!(k >= 1);
    let (p, d) = (f.p(), f.d());
    let nv = chart_vars(d);
    let k = k as i64;
    let Some(v) = f.v_t() else {
        return TwistedSeries::zero(p, d, None);
    };
    let bound = (v < 0).then(|| v + prec as i64 + 1);
    let below = |e: i64| bound.is_none_or(|b| e < b);

    let mut pascal = Pascal::new(p);
    let mut acc: BTreeMap<(i64, Exponents), u64> = BTreeMap::new();
    for (a, ex, c) in f.terms() {
        // choices of l_i in (x_i + t^k y_i)^{ex_i}
        let mut choices: Vec<(Exponents, u64, u32)> = vec![(vec![0; nv], 0, c.value())];
        for (i, &b) in ex.iter().enumerate() {
            let mut next = Vec::new();
            for (mono, lsum, coef) in &choices {
                for l in 0..=b {
                    let bc = pascal.get(b as u64, l as u64);
                    if bc == 0 {
                        continue;
                    }
                    let mut m = mono.clone();
                    m[i] = b - l;
                    m[y_var(d, i)] = l;
                    next.push((m, lsum + l as u64, (*coef as u64 * bc as u64 % p as u64) as u32));
                }
            }
            choices = next;
        }
        for (mono, lsum, coef) in choices {
            let mut j = 0u64;
            loop {
                let e = a + k * (j + lsum) as i64;
                if !below(e) {
                    break;
                }
                if a >= 0 && j > a as u64 {
                    break;
                }
                let bc = pascal.signed(a, j);
                if bc != 0 {
                    let mut m = mono.clone();
                    m[u_var(d)] = j as u32;
                    *acc.entry((e, m)).or_insert(0) += coef as u64 * bc as u64;
                }
                j += 1;
            }
        }
    }
    // subtract f ⊗ 1
    for (a, ex, c) in f.terms() {
        let mut m = vec![0; nv];
        m[..d].copy_from_slice(ex);
        *acc.entry((a, m)).or_insert(0) += (p - c.value()) as u64;
    }

    let mut slices: BTreeMap<i64, MPoly> = BTreeMap::new();
    for ((e, m), c) in acc {
        let c = (c % p as u64) as u32;
        if c != 0 {
            slices
                .entry(e)
                .or_insert_with(|| MPoly::zero(p, nv))
                .add_term(m, c);
        }
    }
    TwistedSeries::from_slices(p, d, slices, bound)
}

/// Minimal pole order of `f + u^p - u` over all
/// `u = sum_{1 <= j <= pole_bound/p} sum_{β ∈ support} c_{j,β} t^-j x^β`,
/// `c ∈ F_p`. Returns 0 when some candidate removes the pole entirely.
pub fn exhaustive_as_search(
    f: &LaurentPoly,
    pole_bound: u32,
    support: &[Exponents],
) -> Result<u32, OracleError> {
    let (p, d) = (f.p(), f.d());
    let jmax = pole_bound / p;
    let slots: Vec<(i64, &Exponents)> = (1..=jmax as i64)
        .flat_map(|j| support.iter().map(move |b| (-j, b)))
        .collect();
    let total = (p as u128)
        .checked_pow(slots.len() as u32)
        .unwrap_or(u128::MAX);
    if total > MAX_CANDIDATES {
        return Err(OracleError::SearchTooLarge(total));
    }
    let pole = |g: &LaurentPoly| g.v_t().map_or(0, |v| (-v).max(0) as u32);
    let mut best = pole(f);
    let mut digits = vec![0u32; slots.len()];
    for _ in 0..total {
        let mut u = LaurentPoly::zero(p, d);
        for (&c, (e, b)) in digits.iter().zip(&slots) {
            if c != 0 {
                u.add_term(*e, (*b).clone(), c);
            }
        }
        // u^p - u, expanded term by term
        let mut cand = f.clone();
        let up = u.pow(p);
        for (e, ex, c) in up.terms() {
            cand.add_term(e, ex.clone(), c.value());
        }
        for (e, ex, c) in u.terms() {
            cand.add_term(e, ex.clone(), p - c.value());
        }
        best = best.min(pole(&cand));
        for dgt in digits.iter_mut() {
            *dgt += 1;
            if *dgt < p {
                break;
            }
            *dgt = 0;
        }
    }
    Ok(best)
}

/// Character of `Ind_H^G χ̃` at `g` by the Frobenius formula
/// `(1/|H|) sum_{x ∈ G, x g x^-1 ∈ H} χ̃(x g x^-1)`.
pub fn frobenius_character(g: &GroupElement, chi_exp: u32) -> Result<CyclotomicInt, HeisenbergError> {
    let p = g.p();
    if chi_exp.is_multiple_of(p) {
        return Err(HeisenbergError::TrivialCharacter);
    }
    let mut sum = CyclotomicInt::zero(p);
    for x in GroupElement::all(p) {
        let conj = x.mul(g).mul(&x.inv());
        if conj.in_h() {
            sum.add_root(chi_exp as i64 * conj.c as i64);
        }
    }
    Ok(sum
        .div_exact((p * p) as i64)
        .expect("Frobenius sum is divisible by |H|"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(p: u32, d: usize) -> MPoly {
        MPoly::var(u_var(d), p, chart_vars(d))
    }

    #[test]
    fn expansion_examples() {
        let p = 5;
        let s = series_expand_oracle(&LaurentPoly::t_pow(-2, p, 0), 3, 9);
        let uu = u(p, 0);
        let expected = TwistedSeries::from_slices(
            p,
            0,
            [
                (1, uu.scale(3)),
                (4, uu.pow(2).scale(3)),
                (7, uu.pow(3)),
            ],
            Some(8),
        );
        assert_eq!(s, expected);

        let s = series_expand_oracle(&LaurentPoly::x(1, 3, 1), 2, 5);
        assert!(s.is_exact());
        assert_eq!(
            s,
            TwistedSeries::monomial(3, 1, 2, MPoly::var(y_var(1, 0), 3, chart_vars(1)))
        );

        let s = series_expand_oracle(&LaurentPoly::t_pow(1, 7, 0), 1, 5);
        assert_eq!(s, TwistedSeries::monomial(7, 0, 2, u(7, 0)));
    }

    #[test]
    fn signed_binomials() {
        let mut pc = Pascal::new(97);
        // (1+s)^-2 = 1 - 2s + 3s^2 - 4s^3
        let got: Vec<u32> = (0..4).map(|j| pc.signed(-2, j)).collect();
        assert_eq!(got, vec![1, 95, 3, 93]);
        assert_eq!(pc.signed(3, 4), 0);
    }

    #[test]
    fn search_examples() {
        let one = vec![vec![]];
        assert_eq!(exhaustive_as_search(&LaurentPoly::t_pow(-2, 2, 0), 2, &one), Ok(1));
        assert_eq!(exhaustive_as_search(&LaurentPoly::t_pow(-3, 2, 0), 3, &one), Ok(3));
        assert_eq!(exhaustive_as_search(&LaurentPoly::t_pow(-1, 3, 0), 1, &one), Ok(1));
        // t^-4 + t^-2 = ℘(t^-2) in char 2
        let f = &LaurentPoly::t_pow(-4, 2, 0) + &LaurentPoly::t_pow(-2, 2, 0);
        assert_eq!(exhaustive_as_search(&f, 4, &one), Ok(0));
        let f = &LaurentPoly::t_pow(-4, 2, 0) + &LaurentPoly::t_pow(-3, 2, 0);
        assert_eq!(exhaustive_as_search(&f, 4, &one), Ok(3));
        let big: Vec<Exponents> = (0..4).map(|i| vec![i, 0]).collect();
        assert!(matches!(
            exhaustive_as_search(&LaurentPoly::t_pow(-6, 3, 2), 40, &big),
            Err(OracleError::SearchTooLarge(_))
        ));
    }

    #[test]
    fn character_examples() {
        for p in [2, 3, 5, 7] {
            let id = GroupElement::identity(p);
            assert_eq!(frobenius_character(&id, 1).unwrap(), CyclotomicInt::from_int(p as i64, p));
        }
        let p = 3;
        let z = GroupElement::new(0, 0, 2, p);
        let mut expected = CyclotomicInt::zero(p);
        for _ in 0..p {
            expected.add_root(2);
        }
        assert_eq!(frobenius_character(&z, 1).unwrap(), expected);
        assert!(frobenius_character(&GroupElement::new(0, 1, 0, p), 2).unwrap().is_zero());
        assert_eq!(
            frobenius_character(&z, 3),
            Err(HeisenbergError::TrivialCharacter)
        );
    }
}
