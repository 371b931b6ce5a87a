//! Laurent polynomials in one variable over arbitrary-precision integers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// An element of Z[t, t^-1], stored as exponent -> nonzero coefficient.
///
/// The map never holds a zero coefficient, so structural equality is
/// mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    /// The variable t itself.
    pub fn t() -> Self {
        Self::monomial(1, BigInt::one())
    }

    /// c * t^exp; a zero coefficient gives the zero polynomial.
    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let coeff = coeff.into();
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        Self { coeffs }
    }

    /// Builds from (exponent, coefficient) pairs, summing duplicates.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut coeffs: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (exp, c) in terms {
            let entry = coeffs.entry(exp).or_insert_with(BigInt::zero);
            *entry += c.into();
        }
        coeffs.retain(|_, c| !c.is_zero());
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1
            && self
                .coeffs
                .get(&0)
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Iterates terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    /// Some((coeff, exp)) when the polynomial is a single term.
    pub fn as_monomial(&self) -> Option<(&BigInt, i64)> {
        if self.coeffs.len() == 1 {
            let (e, c) = self.coeffs.iter().next().unwrap();
            Some((c, *e))
        } else {
            None
        }
    }

    /// Some((sign, exp)) when the polynomial is +-t^exp, i.e. a unit of Z[t, t^-1].
    pub fn as_unit_monomial(&self) -> Option<(i8, i64)> {
        self.as_monomial().and_then(|(c, e)| {
            if c.is_one() {
                Some((1, e))
            } else if (-c).is_one() {
                Some((-1, e))
            } else {
                None
            }
        })
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    fn add_assign_ref(&mut self, other: &Self) {
        for (e, c) in &other.coeffs {
            let entry = self.coeffs.entry(*e).or_insert_with(BigInt::zero);
            *entry += c;
        }
        self.coeffs.retain(|_, c| !c.is_zero());
    }

    fn format_term(coeff: &BigInt, exp: i64, lead: bool, out: &mut String) {
        let mag = coeff.abs();
        if lead {
            if coeff.is_negative() {
                out.push('-');
            }
        } else if coeff.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if exp == 0 {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push('t');
            if exp != 1 {
                out.push('^');
                out.push_str(&exp.to_string());
            }
        }
    }
}

impl fmt::Display for LaurentPoly {
    /// Prints highest exponent first, e.g. `t^2 + 1` or `-3t^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (exp, coeff)) in self.coeffs.iter().rev().enumerate() {
            Self::format_term(coeff, *exp, i == 0, &mut out);
        }
        write!(f, "{out}")
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut coeffs: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                let entry = coeffs.entry(ea + eb).or_insert_with(BigInt::zero);
                *entry += ca * cb;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        LaurentPoly { coeffs }
    }
}

macro_rules! forward_value_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                $trait::$method(&self, &rhs)
            }
        }
    )*};
}
forward_value_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, c)))
    }

    #[test]
    fn hand_convolution() {
        // (t + 1)(t^-1 + 1) = t + 2 + t^-1
        let a = p(&[(1, 1), (0, 1)]);
        let b = p(&[(-1, 1), (0, 1)]);
        assert_eq!(&a * &b, p(&[(1, 1), (0, 2), (-1, 1)]));
    }

    #[test]
    fn zero_coefficients_prune() {
        let a = p(&[(2, 1), (0, 3)]);
        let b = p(&[(2, -1), (0, -3)]);
        assert!((&a + &b).is_zero());
        assert_eq!(LaurentPoly::monomial(5, 0), LaurentPoly::zero());
    }

    #[test]
    fn unit_monomials() {
        assert_eq!(p(&[(3, -1)]).as_unit_monomial(), Some((-1, 3)));
        assert_eq!(p(&[(0, 1)]).as_unit_monomial(), Some((1, 0)));
        assert_eq!(p(&[(0, 2)]).as_unit_monomial(), None);
        assert_eq!(p(&[(1, 1), (0, 1)]).as_unit_monomial(), None);
    }

    #[test]
    fn display_format() {
        assert_eq!(p(&[(2, 1), (0, 1)]).to_string(), "t^2 + 1");
        assert_eq!(p(&[(-1, -3)]).to_string(), "-3t^-1");
        assert_eq!(p(&[(1, 1), (0, -2)]).to_string(), "t - 2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p(&[(1, 2)]).to_string(), "2t");
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let a = p(&[(1, 1), (-1, -1)]);
        assert_eq!(a.pow(0), LaurentPoly::one());
        assert_eq!(a.pow(3), &(&a * &a) * &a);
    }
}
