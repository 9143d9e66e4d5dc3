//! Square matrices of rational functions: determinant, characteristic
//! polynomial, inverse, generic rank and pointwise signature.

use num_traits::{One, Signed, Zero};

use super::field::ScalarField;
use super::poly::{Polynomial, Vars};
use super::Rational;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareMatrix {
    n: usize,
    entries: Vec<ScalarField>,
}

impl SquareMatrix {
    /// Row-major entries.
    pub fn new(n: usize, entries: Vec<ScalarField>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::NotSquare);
        }
        Ok(SquareMatrix { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> ScalarField) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        SquareMatrix { n, entries }
    }

    pub fn identity(vars: &Vars, n: usize) -> Self {
        Self::from_fn(n, |i, j| {
            if i == j {
                ScalarField::one(vars)
            } else {
                ScalarField::zero(vars)
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> &Vars {
        self.entries[0].vars()
    }

    pub fn get(&self, i: usize, j: usize) -> &ScalarField {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ScalarField) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[ScalarField] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ScalarField::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, other.n);
        let vars = self.vars().clone();
        Self::from_fn(self.n, |i, j| {
            (0..self.n).fold(ScalarField::zero(&vars), |acc, k| {
                acc + self.get(i, k) * other.get(k, j)
            })
        })
    }

    pub fn add(&self, other: &SquareMatrix) -> SquareMatrix {
        Self::from_fn(self.n, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &SquareMatrix) -> SquareMatrix {
        Self::from_fn(self.n, |i, j| self.get(i, j) - other.get(i, j))
    }

    pub fn apply(&self, v: &[ScalarField]) -> Vec<ScalarField> {
        assert_eq!(v.len(), self.n);
        let vars = self.vars().clone();
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(ScalarField::zero(&vars), |acc, k| {
                    if v[k].is_zero() {
                        acc
                    } else {
                        acc + self.get(i, k) * &v[k]
                    }
                })
            })
            .collect()
    }

    fn polynomial_rows(&self) -> Option<Vec<Vec<Polynomial>>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.get(i, j).as_polynomial().cloned())
                    .collect()
            })
            .collect()
    }

    /// Exact determinant: fraction-free Bareiss elimination when every entry
    /// is a polynomial, Gaussian elimination over the function field
    /// otherwise.
    pub fn det(&self) -> ScalarField {
        match self.polynomial_rows() {
            Some(rows) => ScalarField::from_poly(bareiss_det(rows, self.vars())),
            None => self.det_field(),
        }
    }

    fn det_field(&self) -> ScalarField {
        let vars = self.vars().clone();
        let n = self.n;
        let mut a: Vec<Vec<ScalarField>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut det = ScalarField::one(&vars);
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return ScalarField::zero(&vars);
            };
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            let pivot = a[k][k].clone();
            det = &det * &pivot;
            let inv = pivot.recip().expect("nonzero pivot");
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] * &inv;
                for j in k..n {
                    let t = &f * &a[k][j];
                    a[i][j] = &a[i][j] - &t;
                }
            }
        }
        det
    }

    /// `det(m - λI)` as a polynomial over the coordinates followed by an
    /// auxiliary variable (named `lambda`, or `lambda_` on a clash).
    pub fn char_poly(&self) -> Result<Polynomial> {
        let rows = self.polynomial_rows().ok_or(Error::NotPolynomial)?;
        let base = self.vars();
        let mut name = String::from("lambda");
        while base.index_of(&name).is_some() {
            name.push('_');
        }
        let ext = base.with_extra(&name);
        let lambda = Polynomial::var(&ext, base.len());
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(j, p)| {
                        let p = p.extend_vars(&ext);
                        if i == j {
                            &p - &lambda
                        } else {
                            p
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(bareiss_det(rows, &ext))
    }

    pub fn inverse(&self) -> Result<SquareMatrix> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        if let Some(rows) = self.polynomial_rows() {
            // adjugate over the polynomial ring, then one division by det
            let n = self.n;
            let vars = self.vars().clone();
            let inv_det = det.recip()?;
            if n == 1 {
                return Ok(Self::from_fn(1, |_, _| inv_det.clone()));
            }
            let mut out = Self::identity(&vars, n);
            for i in 0..n {
                for j in 0..n {
                    let minor: Vec<Vec<Polynomial>> = (0..n)
                        .filter(|&r| r != j)
                        .map(|r| {
                            (0..n)
                                .filter(|&c| c != i)
                                .map(|c| rows[r][c].clone())
                                .collect()
                        })
                        .collect();
                    let mut cof = ScalarField::from_poly(bareiss_det(minor, &vars));
                    if (i + j) % 2 == 1 {
                        cof = -cof;
                    }
                    out.set(i, j, &cof * &inv_det);
                }
            }
            return Ok(out);
        }
        self.inverse_gauss_jordan()
    }

    fn inverse_gauss_jordan(&self) -> Result<SquareMatrix> {
        let n = self.n;
        let vars = self.vars().clone();
        let mut a: Vec<Vec<ScalarField>> = (0..n)
            .map(|i| {
                let mut row: Vec<ScalarField> = (0..n).map(|j| self.get(i, j).clone()).collect();
                row.extend((0..n).map(|j| {
                    if i == j {
                        ScalarField::one(&vars)
                    } else {
                        ScalarField::zero(&vars)
                    }
                }));
                row
            })
            .collect();
        for k in 0..n {
            let p = (k..n)
                .find(|&r| !a[r][k].is_zero())
                .ok_or(Error::SingularMatrix)?;
            a.swap(p, k);
            let inv = a[k][k].recip()?;
            for j in 0..2 * n {
                a[k][j] = &a[k][j] * &inv;
            }
            for i in 0..n {
                if i == k || a[i][k].is_zero() {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..2 * n {
                    let t = &f * &a[k][j];
                    a[i][j] = &a[i][j] - &t;
                }
            }
        }
        Ok(Self::from_fn(n, |i, j| a[i][n + j].clone()))
    }

    /// Rank over the field of rational functions.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut a: Vec<Vec<ScalarField>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(p, rank);
            let inv = a[rank][col].recip().expect("nonzero pivot");
            for i in rank + 1..n {
                if a[i][col].is_zero() {
                    continue;
                }
                let f = &a[i][col] * &inv;
                for j in col..n {
                    let t = &f * &a[rank][j];
                    a[i][j] = &a[i][j] - &t;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).evaluate(point)).collect())
            .collect()
    }

    /// `(n_plus, n_minus)` of the symmetric matrix evaluated at `point`.
    pub fn signature_at(&self, point: &[Rational]) -> Result<(usize, usize)> {
        signature(self.evaluate(point)?)
    }
}

fn bareiss_det(mut a: Vec<Vec<Polynomial>>, vars: &Vars) -> Polynomial {
    let n = a.len();
    if n == 0 {
        return Polynomial::one(vars);
    }
    let mut sign = false;
    let mut prev = Polynomial::one(vars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(r, k);
                    sign = !sign;
                }
                None => return Polynomial::zero(vars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.divide_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Sylvester inertia of a rational symmetric matrix by congruence
/// diagonalization. Errors when the matrix is singular.
pub fn signature(mut a: Vec<Vec<Rational>>) -> Result<(usize, usize)> {
    let n = a.len();
    let (mut plus, mut minus) = (0, 0);
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[j][j].is_zero()) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // e_k -> e_k + e_j gives diagonal entry 2 a[k][j]
                for c in 0..n {
                    let t = a[j][c].clone();
                    a[k][c] += t;
                }
                for row in a.iter_mut() {
                    let t = row[j].clone();
                    row[k] += t;
                }
            } else {
                return Err(Error::SingularAtPoint);
            }
        }
        let pivot = a[k][k].clone();
        debug_assert!(!pivot.is_zero());
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for c in k..n {
                let t = &f * &a[k][c];
                a[i][c] -= t;
            }
            for row in a.iter_mut().skip(k) {
                let t = &f * &row[k];
                row[i] -= t;
            }
        }
        if pivot.is_positive() {
            plus += 1;
        } else {
            minus += 1;
        }
    }
    Ok((plus, minus))
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rational_rank(mut a: Vec<Vec<Rational>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        for i in rank + 1..rows {
            if a[i][col].is_zero() {
                continue;
            }
            let f = &a[i][col] / &a[rank][col];
            for j in col..cols {
                let t = &f * &a[rank][j];
                a[i][j] -= t;
            }
        }
        rank += 1;
    }
    rank
}

/// Rational matrix helpers used by tests and the signature check.
pub fn rational_identity(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn consts(vars: &Vars, rows: &[&[i64]]) -> SquareMatrix {
        let n = rows.len();
        SquareMatrix::from_fn(n, |i, j| ScalarField::from_int(vars, rows[i][j]))
    }

    #[test]
    fn identity_det_and_charpoly() {
        let v = Vars::new(["x"]);
        let id = SquareMatrix::identity(&v, 2);
        assert_eq!(id.det().as_constant(), Some(q(1)));
        let cp = id.char_poly().unwrap();
        let ext = cp.vars().clone();
        let l = Polynomial::var(&ext, 1);
        let expected = (&Polynomial::one(&ext) - &l).pow(2);
        assert_eq!(cp, expected);
    }

    #[test]
    fn diag_half_inverse() {
        let v = Vars::new(["x"]);
        let half = Rational::new(1.into(), 2.into());
        let m = SquareMatrix::from_fn(2, |i, j| {
            if i == j {
                ScalarField::constant(&v, half.clone())
            } else {
                ScalarField::zero(&v)
            }
        });
        let inv = m.inverse().unwrap();
        assert_eq!(inv, consts(&v, &[&[2, 0], &[0, 2]]));
    }

    #[test]
    fn singular_inverse_errors() {
        let v = Vars::new(["x"]);
        let x = ScalarField::var(&v, "x").unwrap();
        let m = SquareMatrix::from_fn(2, |_, _| x.clone());
        assert_eq!(m.inverse(), Err(Error::SingularMatrix));
    }

    #[test]
    fn rational_function_inverse() {
        let v = Vars::new(["x"]);
        let x = ScalarField::var(&v, "x").unwrap();
        let one = ScalarField::one(&v);
        let half = ScalarField::one(&v).checked_div(&(&x + &one)).unwrap();
        let m = SquareMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 0) => half.clone(),
            (0, 1) | (1, 0) => x.clone(),
            _ => one.clone(),
        });
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), SquareMatrix::identity(&v, 2));
    }

    #[test]
    fn signature_needs_off_diagonal_step() {
        // [[0,1],[1,0]] has inertia (1,1) and no nonzero diagonal
        let a = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        assert_eq!(signature(a).unwrap(), (1, 1));
        assert_eq!(signature(rational_identity(4)).unwrap(), (4, 0));
        let sing = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        assert_eq!(signature(sing), Err(Error::SingularAtPoint));
    }

    #[test]
    fn rank_over_function_field() {
        let v = Vars::new(["x", "y"]);
        let x = ScalarField::var(&v, "x").unwrap();
        let y = ScalarField::var(&v, "y").unwrap();
        let m = SquareMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 0) => x.clone(),
            (0, 1) => y.clone(),
            (1, 0) => &x * &y,
            _ => &y * &y,
        });
        assert_eq!(m.rank(), 1);
    }
}
