//! Multivariate polynomial gcd over Q by recursive primitive remainder
//! sequences.
//!
//! The polynomials met here are small (metric entries, Christoffel
//! numerators), so the plain recursive algorithm is adequate.

use super::poly::{Monomial, Polynomial};

/// Monic greatest common divisor. `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let vars = a.vars().clone();
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(&vars);
    }

    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let shared = Monomial::from_exponents(
        ma.exponents()
            .iter()
            .zip(mb.exponents())
            .map(|(x, y)| *x.min(y))
            .collect(),
    );
    let a = a.div_monomial(&ma);
    let b = b.div_monomial(&mb);
    let core = gcd_monomial_free(&a, &b);
    let m = Polynomial::monomial(&vars, shared, num_traits::One::one());
    (&m * &core).monic()
}

fn gcd_monomial_free(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let vars = a.vars().clone();
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(&vars);
    }
    if a.num_terms() == 1 || b.num_terms() == 1 {
        // a monomial-free polynomial with one term is a constant
        return Polynomial::one(&vars);
    }

    let n = vars.len();
    // A variable present in only one argument can be eliminated through the
    // content with respect to it.
    for v in 0..n {
        let da = a.degree_in(v);
        let db = b.degree_in(v);
        if da > 0 && db == 0 {
            return gcd(&content_in(a, v), b);
        }
        if db > 0 && da == 0 {
            return gcd(a, &content_in(b, v));
        }
    }

    let v = (0..n)
        .find(|&v| a.degree_in(v) > 0)
        .expect("non-constant polynomial has a variable");

    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let pa = a.divide_exact(&ca).expect("content divides");
    let pb = b.divide_exact(&cb).expect("content divides");

    let (mut p, mut q) = if pa.degree_in(v) >= pb.degree_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        let r = pseudo_remainder(&p, &q, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            return c.monic();
        }
        let r = primitive_part(&r, v);
        p = q;
        q = r;
    }
    let g = primitive_part(&q, v);
    (&c * &g).monic()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in(p: &Polynomial, v: usize) -> Polynomial {
    let mut coeffs = p.coefficients_in(v).into_iter().filter(|c| !c.is_zero());
    let Some(first) = coeffs.next() else {
        return Polynomial::zero(p.vars());
    };
    let mut g = first.monic();
    for c in coeffs {
        if g.is_constant() {
            break;
        }
        g = gcd(&g, &c);
    }
    if g.is_constant() {
        Polynomial::one(p.vars())
    } else {
        g
    }
}

fn primitive_part(p: &Polynomial, v: usize) -> Polynomial {
    let c = content_in(p, v);
    if c.is_one() {
        p.monic()
    } else {
        p.divide_exact(&c).expect("content divides").monic()
    }
}

fn pseudo_remainder(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let db = b.degree_in(v);
    let lcb = b.leading_coefficient_in(v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lcr = r.leading_coefficient_in(v);
        r = &(&lcb * &r) - &(&lcr * &b.shift(v, dr - db));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Rational, Vars};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn shared_linear_factor() {
        let v = Vars::new(["x", "y", "z"]);
        let x = Polynomial::var(&v, 0);
        let y = Polynomial::var(&v, 1);
        let z = Polynomial::var(&v, 2);
        let f = &x + &(&y * &z);
        let a = &f * &(&x - &y);
        let b = &f * &(&z.pow(2) + &Polynomial::one(&v));
        assert_eq!(gcd(&a, &b), f.monic());
    }

    #[test]
    fn coprime() {
        let v = Vars::new(["x", "y"]);
        let x = Polynomial::var(&v, 0);
        let y = Polynomial::var(&v, 1);
        let a = &x * &x + &y;
        let b = &x + &y.scale(&q(2));
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn monomial_factors() {
        let v = Vars::new(["x", "y"]);
        let x = Polynomial::var(&v, 0);
        let y = Polynomial::var(&v, 1);
        let a = &(&x * &x) * &y;
        let b = &(&x * &y.pow(3)) + &(&x * &x).scale(&q(5));
        assert_eq!(gcd(&a, &b), x);
    }

    #[test]
    fn y_squared_plus_y_over_y_plus_one() {
        let v = Vars::new(["y"]);
        let y = Polynomial::var(&v, 0);
        let one = Polynomial::one(&v);
        let a = &y * &y + y.clone();
        let b = &y + &one;
        assert_eq!(gcd(&a, &b), b);
    }
}
