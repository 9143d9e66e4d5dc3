//! Sparse multivariate polynomials over the rationals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::Rational;

/// Ordered list of variable names shared by every polynomial built over it.
#[derive(Clone, Debug)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Vars(names.into_iter().map(Into::into).collect::<Vec<_>>().into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    /// A new variable list with all of `names` appended.
    pub fn with_extras<I, S>(&self, names: I) -> Vars
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut v: Vec<String> = self.0.to_vec();
        v.extend(names.into_iter().map(Into::into));
        Vars(v.into())
    }

    /// A new variable list with `name` appended.
    pub fn with_extra(&self, name: &str) -> Vars {
        let mut v: Vec<String> = self.0.to_vec();
        v.push(name.to_string());
        Vars(v.into())
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Vars {}

/// Exponent vector. Ordered graded-lexicographically, earlier variables
/// ranking higher.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    fn min(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct Polynomial {
    vars: Vars,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(vars: &Vars) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(vars.len()), c);
        }
        Polynomial {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn from_int(vars: &Vars, c: i64) -> Self {
        Self::constant(vars, Rational::from_integer(c.into()))
    }

    /// The polynomial `x_i`.
    pub fn var(vars: &Vars, i: usize) -> Self {
        assert!(i < vars.len(), "variable index out of range");
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, Monomial(e), Rational::one())
    }

    pub fn monomial(vars: &Vars, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), vars.len());
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms<I>(vars: &Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len());
            p.add_term(Monomial(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Divided by its leading coefficient; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn derivative(&self, v: usize) -> Polynomial {
        let mut p = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            let k = m.0[v];
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[v] -= 1;
            p.add_term(Monomial(e), c * Rational::from_integer(k.into()));
        }
        p
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.vars.len(), "point has wrong arity");
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&m.0) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Re-expresses the polynomial over `vars`, which must extend the current
    /// variable list (same prefix).
    pub fn extend_vars(&self, vars: &Vars) -> Polynomial {
        assert!(vars.len() >= self.vars.len());
        assert_eq!(&vars.names()[..self.vars.len()], self.vars.names());
        let pad = vars.len() - self.vars.len();
        Polynomial {
            vars: vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.extend(std::iter::repeat_n(0, pad));
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Coefficients with respect to variable `v`, indexed by degree in `v`.
    /// Each coefficient is free of `v`.
    pub fn coefficients_in(&self, v: usize) -> Vec<Polynomial> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(&self.vars); d + 1];
        for (m, c) in &self.terms {
            let k = m.0[v] as usize;
            let mut e = m.0.clone();
            e[v] = 0;
            out[k].add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Coefficient of the highest power of `v`.
    pub fn leading_coefficient_in(&self, v: usize) -> Polynomial {
        let d = self.degree_in(v);
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            if m.0[v] == d {
                let mut e = m.0.clone();
                e[v] = 0;
                out.add_term(Monomial(e), c.clone());
            }
        }
        out
    }

    /// `x_v^k * self`
    pub fn shift(&self, v: usize, k: u32) -> Polynomial {
        if k == 0 {
            return self.clone();
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e[v] += k;
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Componentwise minimum of all exponent vectors (the largest monomial
    /// dividing every term).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(self.vars.len()),
            Some(first) => it.fold(first.clone(), |acc, m| Monomial::min(&acc, m)),
        }
    }

    pub fn div_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.div(m), c.clone()))
                .collect(),
        }
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn divide_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.vars, divisor.vars);
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        while let Some((rm, rc)) = rem.leading_term() {
            if !lm.divides(rm) {
                return None;
            }
            let m = rm.div(&lm);
            let c = rc / &lc;
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&m), -(dc * &c));
            }
            quot.add_term(m, c);
        }
        Some(quot)
    }

    fn check_vars(&self, other: &Polynomial) {
        assert!(
            self.vars == other.vars,
            "polynomials over different variable lists: {:?} vs {:?}",
            self.vars.names(),
            other.vars.names()
        );
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.check_vars(rhs);
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.check_vars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.check_vars(rhs);
        let mut out = Polynomial::zero(&self.vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial {
                (&self).$f(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                self.$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn fmt_monomial(vars: &Vars, m: &Monomial) -> String {
    m.0.iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| {
            if k == 1 {
                vars.name(i).to_string()
            } else {
                format!("{}^{}", vars.name(i), k)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Terms print in descending graded-lex order, in a form the expression
/// parser reads back.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mono = fmt_monomial(&self.vars, m);
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), mono)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn xy() -> (Vars, Polynomial, Polynomial) {
        let v = Vars::new(["x", "y"]);
        let x = Polynomial::var(&v, 0);
        let y = Polynomial::var(&v, 1);
        (v, x, y)
    }

    #[test]
    fn difference_of_squares() {
        let (_, x, y) = xy();
        let lhs = (&x + &y) * (&x - &y);
        let rhs = &x * &x - &y * &y;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_parsable_form() {
        let v = Vars::new(["y1", "y2"]);
        let y1 = Polynomial::var(&v, 0);
        let p = Polynomial::constant(&v, q(1, 2)) - y1.pow(2).scale(&q(2, 1));
        assert_eq!(p.to_string(), "-2*y1^2 + 1/2");
        assert_eq!(Polynomial::zero(&v).to_string(), "0");
    }

    #[test]
    fn exact_division() {
        let (v, x, y) = xy();
        let a = &(&x + &y) * &(&x - &y.scale(&q(3, 1)));
        let b = &x + &y;
        assert_eq!(a.divide_exact(&b).unwrap(), &x - &y.scale(&q(3, 1)));
        assert!(a.divide_exact(&(&x + &Polynomial::one(&v))).is_none());
    }

    #[test]
    fn derivative_power_rule() {
        let v = Vars::new(["y1"]);
        let y1 = Polynomial::var(&v, 0);
        let p = Polynomial::constant(&v, q(1, 2)) - y1.pow(2).scale(&q(2, 1));
        assert_eq!(p.derivative(0), y1.scale(&q(-4, 1)));
    }

    #[test]
    fn evaluation() {
        let (_, x, y) = xy();
        let p = &x * &x + &y;
        assert_eq!(p.evaluate(&[q(1, 2), q(3, 1)]), q(13, 4));
    }
}
