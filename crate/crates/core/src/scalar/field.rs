//! Rational functions in the chart coordinates.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::{Polynomial, Vars};
use super::Rational;
use crate::error::{Error, Result};

/// A quotient of polynomials kept in lowest terms with a monic denominator.
#[derive(Clone, Debug)]
pub struct ScalarField {
    num: Polynomial,
    den: Polynomial,
}

impl ScalarField {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            let one = Polynomial::one(num.vars());
            return ScalarField { num, den: one };
        }
        if let Some(c) = den.constant_value() {
            let num = if c.is_one() { num } else { num.scale(&c.recip()) };
            let den = Polynomial::one(num.vars());
            return ScalarField { num, den };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.divide_exact(&g).expect("gcd divides numerator"),
                den.divide_exact(&g).expect("gcd divides denominator"),
            )
        };
        if let Some(c) = den.constant_value() {
            return ScalarField {
                num: num.scale(&c.recip()),
                den: Polynomial::one(den.vars()),
            };
        }
        let lc = den.leading_coefficient();
        if lc.is_one() {
            ScalarField { num, den }
        } else {
            let inv = lc.recip();
            ScalarField {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let den = Polynomial::one(p.vars());
        ScalarField { num: p, den }
    }

    pub fn zero(vars: &Vars) -> Self {
        Self::from_poly(Polynomial::zero(vars))
    }

    pub fn one(vars: &Vars) -> Self {
        Self::from_poly(Polynomial::one(vars))
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(vars, c))
    }

    pub fn from_int(vars: &Vars, c: i64) -> Self {
        Self::from_poly(Polynomial::from_int(vars, c))
    }

    pub fn var(vars: &Vars, name: &str) -> Result<Self> {
        let i = vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownCoordinate(name.to_string()))?;
        Ok(Self::from_poly(Polynomial::var(vars, i)))
    }

    /// The same function over a variable list extending the current one.
    pub fn extend_vars(&self, vars: &Vars) -> Self {
        ScalarField {
            num: self.num.extend_vars(vars),
            den: self.den.extend_vars(vars),
        }
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// `Some(p)` when the denominator is 1.
    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars());
        }
        ScalarField {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn checked_div(&self, rhs: &ScalarField) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &rhs.recip_unchecked())
    }

    fn recip_unchecked(&self) -> Self {
        Self::normalized(self.den.clone(), self.num.clone())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.recip_unchecked())
    }

    pub fn pow(&self, e: u32) -> Self {
        ScalarField {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn partial(&self, v: usize) -> Self {
        if self.is_polynomial() {
            return Self::from_poly(self.num.derivative(v));
        }
        let n = &(&self.num.derivative(v) * &self.den) - &(&self.num * &self.den.derivative(v));
        Self::normalized(n, self.den.pow(2))
    }

    pub fn partial_by_name(&self, coord: &str) -> Result<Self> {
        let v = self
            .vars()
            .index_of(coord)
            .ok_or_else(|| Error::UnknownCoordinate(coord.to_string()))?;
        Ok(self.partial(v))
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.vars().len() {
            return Err(Error::PointArity {
                expected: self.vars().len(),
                got: point.len(),
            });
        }
        let d = self.den.evaluate(point);
        if d.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        Ok(self.num.evaluate(point) / d)
    }

    pub fn evaluate_named(&self, point: &[(String, Rational)]) -> Result<Rational> {
        let vars = self.vars();
        let mut values = vec![None; vars.len()];
        for (name, q) in point {
            let i = vars
                .index_of(name)
                .ok_or_else(|| Error::UnknownCoordinate(name.clone()))?;
            values[i] = Some(q.clone());
        }
        let values: Option<Vec<Rational>> = values.into_iter().collect();
        let values = values.ok_or(Error::PointArity {
            expected: vars.len(),
            got: point.len(),
        })?;
        self.evaluate(&values)
    }
}

impl PartialEq for ScalarField {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for ScalarField {}

impl<'a> Add<&'a ScalarField> for &'a ScalarField {
    type Output = ScalarField;
    fn add(self, rhs: &'a ScalarField) -> ScalarField {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            let n = &self.num + &rhs.num;
            if self.is_polynomial() {
                return ScalarField::from_poly(n);
            }
            return ScalarField::normalized(n, self.den.clone());
        }
        let n = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        ScalarField::normalized(n, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a ScalarField> for &'a ScalarField {
    type Output = ScalarField;
    fn sub(self, rhs: &'a ScalarField) -> ScalarField {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a ScalarField> for &'a ScalarField {
    type Output = ScalarField;
    fn mul(self, rhs: &'a ScalarField) -> ScalarField {
        if self.is_zero() || rhs.is_zero() {
            return ScalarField::zero(self.vars());
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return ScalarField::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel before multiplying to keep sizes small
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.divide_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.divide_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.divide_exact(&g2).expect("gcd divides");
        let d1 = self.den.divide_exact(&g2).expect("gcd divides");
        ScalarField::normalized(&n1 * &n2, &d1 * &d2)
    }
}

impl Neg for &ScalarField {
    type Output = ScalarField;
    fn neg(self) -> ScalarField {
        ScalarField {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for ScalarField {
    type Output = ScalarField;
    fn neg(self) -> ScalarField {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<ScalarField> for ScalarField {
            type Output = ScalarField;
            fn $f(self, rhs: ScalarField) -> ScalarField {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a ScalarField> for ScalarField {
            type Output = ScalarField;
            fn $f(self, rhs: &'a ScalarField) -> ScalarField {
                (&self).$f(rhs)
            }
        }
        impl<'a> $tr<ScalarField> for &'a ScalarField {
            type Output = ScalarField;
            fn $f(self, rhs: ScalarField) -> ScalarField {
                self.$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Sum of an iterator of fields; `vars` supplies the zero.
pub fn sum<I>(vars: &Vars, it: I) -> ScalarField
where
    I: IntoIterator<Item = ScalarField>,
{
    it.into_iter()
        .fold(ScalarField::zero(vars), |acc, x| &acc + &x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn reduces_common_factor() {
        let v = Vars::new(["y"]);
        let y = Polynomial::var(&v, 0);
        let f = ScalarField::new(&y * &y + y.clone(), &y + &Polynomial::one(&v)).unwrap();
        assert!(f.is_polynomial());
        assert_eq!(f.numerator(), &y);
        // cross-multiplication oracle
        let back = &f * &ScalarField::from_poly(&y + &Polynomial::one(&v));
        assert_eq!(back, ScalarField::from_poly(&y * &y + y.clone()));
    }

    #[test]
    fn metric_entry_cancellation() {
        let v = Vars::new(["y1"]);
        let y1 = ScalarField::var(&v, "y1").unwrap();
        let entry = ScalarField::constant(&v, q(1, 2)) - y1.pow(2).scale(&q(2, 1));
        let sum = &entry + &y1.pow(2).scale(&q(2, 1));
        assert_eq!(sum.as_constant(), Some(q(1, 2)));
    }

    #[test]
    fn division_by_zero_rejected() {
        let v = Vars::new(["x"]);
        let x = ScalarField::var(&v, "x").unwrap();
        assert_eq!(x.checked_div(&ScalarField::zero(&v)), Err(Error::DivisionByZero));
        assert!(ScalarField::new(Polynomial::one(&v), Polynomial::zero(&v)).is_err());
    }

    #[test]
    fn quotient_rule_matches_difference_quotient() {
        // d/dy 1/(y+1) = -1/(y+1)^2, checked at rational points with a
        // symmetric difference quotient corrected to exactness:
        // (f(y+h) - f(y-h)) / 2h = -1/((y+1)^2 - h^2)
        let v = Vars::new(["y"]);
        let y = Polynomial::var(&v, 0);
        let f = ScalarField::new(Polynomial::one(&v), &y + &Polynomial::one(&v)).unwrap();
        let df = f.partial(0);
        let expected = ScalarField::new(
            Polynomial::from_int(&v, -1),
            (&y + &Polynomial::one(&v)).pow(2),
        )
        .unwrap();
        assert_eq!(df, expected);
        for (yn, yd) in [(0, 1), (1, 3), (-1, 2), (5, 7)] {
            let y0 = q(yn, yd);
            let mut h = q(1, 10);
            let mut last_err = None;
            for _ in 0..4 {
                let fp = f.evaluate(&[&y0 + &h]).unwrap();
                let fm = f.evaluate(&[&y0 - &h]).unwrap();
                let dq = (fp - fm) / (q(2, 1) * &h);
                let exact = df.evaluate(&[y0.clone()]).unwrap();
                let err = num_traits::Signed::abs(&(dq - exact));
                if let Some(prev) = last_err {
                    assert!(err < prev);
                }
                last_err = Some(err);
                h /= q(10, 1);
            }
        }
    }

    #[test]
    fn evaluation_errors() {
        let v = Vars::new(["x"]);
        let x = Polynomial::var(&v, 0);
        let f = ScalarField::new(Polynomial::one(&v), x).unwrap();
        assert_eq!(f.evaluate(&[q(0, 1)]), Err(Error::DenominatorVanishes));
        let g = ScalarField::from_poly(Polynomial::var(&v, 0).pow(2) + Polynomial::one(&v));
        assert_eq!(g.evaluate(&[q(0, 1)]).unwrap(), q(1, 1));
    }

    #[test]
    fn unknown_coordinate() {
        let v = Vars::new(["x"]);
        let f = ScalarField::one(&v);
        assert_eq!(
            f.partial_by_name("w"),
            Err(Error::UnknownCoordinate("w".into()))
        );
        assert!(f.partial_by_name("x").unwrap().is_zero());
    }
}
