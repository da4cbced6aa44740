//! Laurent polynomials in one variable with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variable {
    #[serde(rename = "q")]
    Q,
    /// Exponents count powers of `t^(1/2)`.
    #[serde(rename = "t^(1/2)")]
    SqrtT,
    #[serde(rename = "A")]
    A,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPolynomial {
    var: Variable,
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPolynomial {
    pub fn zero(var: Variable) -> Self {
        Self { var, terms: BTreeMap::new() }
    }

    pub fn one(var: Variable) -> Self {
        Self::monomial(var, 0, 1)
    }

    pub fn monomial(var: Variable, exp: i64, coeff: i64) -> Self {
        Self::from_terms(var, [(exp, BigRational::from_integer(coeff.into()))])
    }

    pub fn from_terms(var: Variable, terms: impl IntoIterator<Item = (i64, BigRational)>) -> Self {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn from_integer_terms(var: Variable, terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        Self::from_terms(var, terms.into_iter().map(|(e, c)| (e, BigRational::from_integer(c.into()))))
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn variable(&self) -> Variable {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<i64, BigRational> {
        &self.terms
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.var), |acc, _| &acc * self)
    }

    /// Substitutes `x^e -> sign^e y^(scale e)` and retags the variable.
    pub fn substitute(&self, var: Variable, scale: i64, sign: i64) -> Self {
        Self::from_terms(
            var,
            self.terms.iter().map(|(&e, c)| {
                let flip = sign < 0 && e.rem_euclid(2) == 1;
                (e * scale, if flip { -c.clone() } else { c.clone() })
            }),
        )
    }

    /// Like [`substitute`](Self::substitute) with a rational scale `num/den`;
    /// `None` if some exponent is not divisible by `den`.
    pub fn substitute_ratio(&self, var: Variable, num: i64, den: i64, sign: i64) -> Option<Self> {
        if self.terms.keys().any(|e| e % den != 0) {
            return None;
        }
        let mut out = Self::zero(var);
        for (&e, c) in &self.terms {
            let new = e / den * num;
            let flip = sign < 0 && new.rem_euclid(2) == 1;
            out.add_term(new, if flip { -c.clone() } else { c.clone() });
        }
        Some(out)
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert_eq!(self.var, divisor.var);
        let (dmin, dmax) = (divisor.min_exp()?, divisor.max_exp()?);
        let lead = divisor.coeff(dmax);
        let floor = self.min_exp().unwrap_or(0) - dmin;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.var);
        while let Some(top) = rem.max_exp() {
            let e = top - dmax;
            if e < floor {
                return None;
            }
            let c = rem.coeff(top) / &lead;
            let step = &Self::from_terms(self.var, [(e, c.clone())]) * divisor;
            rem = &rem - &step;
            quot.add_term(e, c);
        }
        Some(quot)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.var, rhs.var, "variable mismatch");
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            var: self.var,
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        assert_eq!(self.var, rhs.var, "variable mismatch");
        let mut out = LaurentPolynomial::zero(self.var);
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("({c})")
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let name = match self.var {
            Variable::Q => "q",
            Variable::SqrtT => "t",
            Variable::A => "A",
        };
        for (k, (&e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let power = match self.var {
                Variable::SqrtT if e % 2 == 0 => e / 2,
                _ => e,
            };
            let fractional = self.var == Variable::SqrtT && e % 2 != 0;
            let unit = abs == BigRational::one();
            if e == 0 {
                f.write_str(&fmt_coeff(&abs))?;
                continue;
            }
            if !unit {
                f.write_str(&fmt_coeff(&abs))?;
            }
            f.write_str(name)?;
            if fractional {
                write!(f, "^({e}/2)")?;
            } else if power != 1 {
                write!(f, "^{power}")?;
            }
        }
        Ok(())
    }
}

/// Serialized form: variable tag plus an exponent -> coefficient map with
/// coefficients written as decimal integers or `p/q` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialDoc {
    pub variable: Variable,
    pub terms: BTreeMap<i64, String>,
}

impl From<&LaurentPolynomial> for PolynomialDoc {
    fn from(p: &LaurentPolynomial) -> Self {
        PolynomialDoc {
            variable: p.var,
            terms: p.terms.iter().map(|(&e, c)| (e, c.to_string())).collect(),
        }
    }
}

impl TryFrom<&PolynomialDoc> for LaurentPolynomial {
    type Error = String;
    fn try_from(doc: &PolynomialDoc) -> Result<Self, String> {
        let mut p = LaurentPolynomial::zero(doc.variable);
        for (&e, c) in &doc.terms {
            let value = match c.split_once('/') {
                Some((n, d)) => {
                    let n: BigInt = n.parse().map_err(|_| format!("bad coefficient {c}"))?;
                    let d: BigInt = d.parse().map_err(|_| format!("bad coefficient {c}"))?;
                    if d.is_zero() {
                        return Err(format!("bad coefficient {c}"));
                    }
                    BigRational::new(n, d)
                }
                None => BigRational::from_integer(c.parse().map_err(|_| format!("bad coefficient {c}"))?),
            };
            p.add_term(e, value);
        }
        Ok(p)
    }
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolynomialDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = PolynomialDoc::deserialize(d)?;
        LaurentPolynomial::try_from(&doc).map_err(serde::de::Error::custom)
    }
}
