//! Valuation lower bounds for expressions mixing exact series and symbols
//! whose valuation is known but whose expansion is not.

use std::fmt;

use num_rational::Ratio;

use crate::series::TwistedSeries;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TropicalExpr {
    Exact(TwistedSeries),
    /// A quantity with known valuation `val` and no expansion.
    Symbol { name: String, val: Ratio<i64> },
    Sum(Vec<TropicalExpr>),
    Product(Vec<TropicalExpr>),
    Power(Box<TropicalExpr>, u32),
    Neg(Box<TropicalExpr>),
}

/// A valuation lower bound; `exact` when the bound is attained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TropVal {
    /// `None` is `+∞`.
    pub bound: Option<Ratio<i64>>,
    pub exact: bool,
}

impl TropVal {
    pub fn finite(v: i64, exact: bool) -> Self {
        TropVal {
            bound: Some(Ratio::from_integer(v)),
            exact,
        }
    }

    pub fn infinite() -> Self {
        TropVal {
            bound: None,
            exact: true,
        }
    }

    /// The bound as an integer, if it is finite and integral.
    pub fn as_integer(&self) -> Option<i64> {
        self.bound.filter(|b| b.is_integer()).map(|b| b.to_integer())
    }

    pub fn is_positive(&self) -> bool {
        self.bound.is_none_or(|b| b > Ratio::from_integer(0))
    }
}

impl fmt::Display for TropVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.bound, self.exact) {
            (None, _) => f.write_str("+inf"),
            (Some(b), true) => write!(f, "{b}"),
            (Some(b), false) => write!(f, ">= {b}"),
        }
    }
}

impl TropicalExpr {
    pub fn symbol(name: &str, val: Ratio<i64>) -> Self {
        TropicalExpr::Symbol {
            name: name.to_string(),
            val,
        }
    }

    pub fn product(items: Vec<TropicalExpr>) -> Self {
        TropicalExpr::Product(items)
    }

    pub fn power(self, m: u32) -> Self {
        TropicalExpr::Power(Box::new(self), m)
    }

    pub fn negated(self) -> Self {
        TropicalExpr::Neg(Box::new(self))
    }

    pub fn is_exact_only(&self) -> bool {
        match self {
            TropicalExpr::Exact(_) => true,
            TropicalExpr::Symbol { .. } => false,
            TropicalExpr::Sum(v) | TropicalExpr::Product(v) => v.iter().all(Self::is_exact_only),
            TropicalExpr::Power(e, _) | TropicalExpr::Neg(e) => e.is_exact_only(),
        }
    }

    /// The series this expression denotes, when every leaf is exact.
    pub fn expand(&self) -> Option<TwistedSeries> {
        match self {
            TropicalExpr::Exact(s) => Some(s.clone()),
            TropicalExpr::Symbol { .. } => None,
            TropicalExpr::Sum(v) => {
                let mut it = v.iter();
                let first = it.next()?.expand()?;
                it.try_fold(first, |acc, e| Some(&acc + &e.expand()?))
            }
            TropicalExpr::Product(v) => {
                let mut it = v.iter();
                let first = it.next()?.expand()?;
                it.try_fold(first, |acc, e| Some(&acc * &e.expand()?))
            }
            TropicalExpr::Power(e, m) => Some(e.expand()?.pow(*m)),
            TropicalExpr::Neg(e) => Some(-&e.expand()?),
        }
    }
}

pub fn tropical_val(e: &TropicalExpr) -> TropVal {
    match e {
        TropicalExpr::Exact(s) => {
            let v = s.v_e();
            TropVal {
                bound: v.value.map(Ratio::from_integer),
                exact: v.exact,
            }
        }
        TropicalExpr::Symbol { val, .. } => TropVal {
            bound: Some(*val),
            exact: true,
        },
        TropicalExpr::Product(items) => {
            let vals: Vec<TropVal> = items.iter().map(tropical_val).collect();
            if vals.iter().any(|v| v.bound.is_none()) {
                return TropVal::infinite();
            }
            TropVal {
                bound: Some(vals.iter().map(|v| v.bound.unwrap()).sum()),
                exact: vals.iter().all(|v| v.exact),
            }
        }
        TropicalExpr::Power(inner, m) => {
            let v = tropical_val(inner);
            if *m == 0 {
                return TropVal::finite(0, true);
            }
            TropVal {
                bound: v.bound.map(|b| b * Ratio::from_integer(*m as i64)),
                exact: v.exact,
            }
        }
        TropicalExpr::Neg(inner) => tropical_val(inner),
        TropicalExpr::Sum(items) => {
            let vals: Vec<TropVal> = items.iter().map(tropical_val).collect();
            let Some(min) = vals.iter().filter_map(|v| v.bound).min() else {
                return TropVal::infinite();
            };
            let attained: Vec<&TropVal> = vals.iter().filter(|v| v.bound == Some(min)).collect();
            TropVal {
                bound: Some(min),
                exact: attained.len() == 1 && attained[0].exact,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MPoly;
    use crate::series::chart_vars;

    fn r(v: i64) -> Ratio<i64> {
        Ratio::from_integer(v)
    }

    fn mono(e: i64) -> TropicalExpr {
        TropicalExpr::Exact(TwistedSeries::monomial(5, 0, e, MPoly::one(5, chart_vars(0))))
    }

    #[test]
    fn symbol_power() {
        let s = TropicalExpr::symbol("S", r(7 - 3)).power(5);
        assert_eq!(tropical_val(&s), TropVal::finite(20, true));
    }

    #[test]
    fn products_add_and_sums_take_min() {
        let k1k2 = TropicalExpr::product(vec![mono(5), mono(4)]);
        assert_eq!(tropical_val(&k1k2), TropVal::finite(9, true));
        let sum = TropicalExpr::Sum(vec![mono(3), mono(3).negated(), mono(5)]);
        assert_eq!(tropical_val(&sum), TropVal::finite(3, false));
        assert!(sum.expand().unwrap().v_e().value == Some(5));
        let sum = TropicalExpr::Sum(vec![mono(2), TropicalExpr::symbol("T", r(4))]);
        assert_eq!(tropical_val(&sum), TropVal::finite(2, true));
        assert!(sum.expand().is_none());
    }

    #[test]
    fn infinite_values() {
        let zero = TropicalExpr::Exact(TwistedSeries::zero(5, 0, None));
        assert_eq!(tropical_val(&zero), TropVal::infinite());
        let p = TropicalExpr::product(vec![zero.clone(), mono(-3)]);
        assert_eq!(tropical_val(&p), TropVal::infinite());
        assert_eq!(tropical_val(&TropicalExpr::Sum(vec![zero])), TropVal::infinite());
        let unknown = TropicalExpr::Exact(TwistedSeries::zero(5, 0, Some(4)));
        assert_eq!(tropical_val(&unknown), TropVal::finite(4, false));
    }
}
