use num_traits::{One, Signed, Zero};

use super::riemann::CurvatureTensor;
use crate::error::{Error, Result};
use crate::gff::GffStructure;
use crate::scalar::{rational_rank, rat, Rational, ScalarField, SquareMatrix};
use crate::tensor::VectorField;

/// A tangent 2-plane span{X, Y} at a rational point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneSpec {
    pub point: Vec<Rational>,
    pub x: Vec<Rational>,
    pub y: Vec<Rational>,
}

impl PlaneSpec {
    pub fn new(point: Vec<Rational>, x: Vec<Rational>, y: Vec<Rational>) -> Self {
        PlaneSpec { point, x, y }
    }

    /// Evaluates two vector fields at the point.
    pub fn from_fields(point: &[Rational], x: &VectorField, y: &VectorField) -> Result<Self> {
        Ok(PlaneSpec {
            point: point.to_vec(),
            x: x.evaluate(point)?,
            y: y.evaluate(point)?,
        })
    }
}

type Vector = Vec<Rational>;

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn add(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn scale(a: &[Rational], c: &Rational) -> Vector {
    a.iter().map(|x| x * c).collect()
}

fn eval_matrix(m: &SquareMatrix, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    m.evaluate(point)
}

/// Exact square root of a nonnegative rational, if it has one.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

/// g, φ, η^α and R evaluated at one point; all further work is rational
/// linear algebra.
#[derive(Clone, Debug)]
pub struct PointCurvature {
    dim: usize,
    g: Vec<Vec<Rational>>,
    phi: Vec<Vec<Rational>>,
    xi: Vec<Vector>,
    eta: Vec<Vector>,
    epsilon: Vec<i32>,
    r04: Vec<Rational>,
}

fn eval_r04(r: &CurvatureTensor, point: &[Rational]) -> Result<Vec<Rational>> {
    r.r04()
        .comps()
        .iter()
        .map(|c| if c.is_zero() { Ok(Rational::zero()) } else { c.evaluate(point) })
        .collect()
}

impl PointCurvature {
    pub fn new(s: &GffStructure, r: &CurvatureTensor, point: &[Rational]) -> Result<Self> {
        Ok(PointCurvature {
            dim: s.dim(),
            g: eval_matrix(s.metric(), point)?,
            phi: eval_matrix(s.phi_matrix(), point)?,
            xi: s.xi().iter().map(|x| x.evaluate(point)).collect::<Result<_>>()?,
            eta: s
                .spec()
                .eta
                .iter()
                .map(|e| e.iter().map(|c| c.evaluate(point)).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?,
            epsilon: s.epsilon().to_vec(),
            r04: eval_r04(r, point)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn xi(&self, alpha: usize) -> &[Rational] {
        &self.xi[alpha]
    }

    pub fn epsilon_sum(&self) -> Rational {
        Rational::from_integer(self.epsilon.iter().sum::<i32>().into())
    }

    pub fn inner(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let gy: Vector = self.g.iter().map(|row| dot(row, y)).collect();
        dot(x, &gy)
    }

    pub fn phi(&self, x: &[Rational]) -> Vector {
        self.phi.iter().map(|row| dot(row, x)).collect()
    }

    /// −φ²X.
    pub fn project(&self, x: &[Rational]) -> Vector {
        let p = self.phi(&self.phi(x));
        p.iter().map(|c| -c).collect()
    }

    pub fn eta(&self, alpha: usize, x: &[Rational]) -> Rational {
        dot(&self.eta[alpha], x)
    }

    /// η̄(X) = Σ ε_α η^α(X).
    pub fn eta_bar(&self, x: &[Rational]) -> Rational {
        (0..self.eta.len())
            .map(|a| self.eta(a, x) * Rational::from_integer(self.epsilon[a].into()))
            .sum()
    }

    /// R(X,Y,Z,W).
    pub fn r(&self, x: &[Rational], y: &[Rational], z: &[Rational], w: &[Rational]) -> Rational {
        let n = self.dim;
        let mut acc = Rational::zero();
        for a in (0..n).filter(|&a| !x[a].is_zero()) {
            for b in (0..n).filter(|&b| !y[b].is_zero()) {
                let xy = &x[a] * &y[b];
                for c in (0..n).filter(|&c| !z[c].is_zero()) {
                    for d in (0..n).filter(|&d| !w[d].is_zero()) {
                        let comp = &self.r04[((a * n + b) * n + c) * n + d];
                        if !comp.is_zero() {
                            acc += comp * &xy * &z[c] * &w[d];
                        }
                    }
                }
            }
        }
        acc
    }

    /// Φ(X,Y) = g(X,φY).
    pub fn big_phi(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.inner(x, &self.phi(y))
    }

    /// P(X,Y;Z,W).
    pub fn p(&self, x: &[Rational], y: &[Rational], z: &[Rational], w: &[Rational]) -> Rational {
        self.big_phi(x, z) * self.inner(y, w) - self.big_phi(x, w) * self.inner(y, z)
            - self.big_phi(y, z) * self.inner(x, w)
            + self.big_phi(y, w) * self.inner(x, z)
    }

    /// B(X,Y) = g(R(X,Y)X, Y).
    pub fn b(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.r(y, x, x, y)
    }

    /// D(X) = B(X, φX).
    pub fn d(&self, x: &[Rational]) -> Rational {
        self.b(x, &self.phi(x))
    }

    fn rank2(&self, x: &[Rational], y: &[Rational]) -> bool {
        rational_rank(vec![x.to_vec(), y.to_vec()]) == 2
    }

    /// K(X,Y) = R(X,Y,X,Y) / (g(X,X)g(Y,Y) − g(X,Y)²).
    pub fn sectional(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        if !self.rank2(x, y) {
            return Err(Error::LinearlyDependent);
        }
        let delta = self.inner(x, x) * self.inner(y, y) - self.inner(x, y).pow(2);
        if delta.is_zero() {
            return Err(Error::DegeneratePlane);
        }
        Ok(self.r(x, y, x, y) / delta)
    }

    fn in_distribution(&self, x: &[Rational]) -> bool {
        (0..self.eta.len()).all(|a| self.eta(a, x).is_zero())
    }

    /// H(X) = R(X,φX,X,φX) / g(X,X)².
    pub fn phi_sectional(&self, x: &[Rational]) -> Result<Rational> {
        if !self.in_distribution(x) {
            return Err(Error::NotInDistribution);
        }
        let n = self.inner(x, x);
        if n.is_zero() {
            return Err(Error::Lightlike);
        }
        let px = self.phi(x);
        Ok(self.r(x, &px, x, &px) / n.pow(2))
    }

    /// K(X,Y) from φ-sectional curvatures for unit X, Y ∈ 𝔇.
    pub fn sectional_from_phi_unit(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        let ex = self.inner(x, x);
        let ey = self.inner(y, y);
        let unit = |e: &Rational| e.abs().is_one();
        if !unit(&ex) || !unit(&ey) || !self.in_distribution(x) || !self.in_distribution(y) {
            return Err(Error::ReconstructionInapplicable(
                "arguments must be unit vectors in Im(phi)".to_string(),
            ));
        }
        let gxy = self.inner(x, y);
        let delta = &ex * &ey - gxy.pow(2);
        if delta.is_zero() {
            return Err(Error::DegeneratePlane);
        }
        let py = self.phi(y);
        // g(Z,Z)² H(Z) for each argument
        let weighted = |z: Vector| -> Result<Rational> {
            if z.iter().all(Zero::is_zero) {
                return Ok(Rational::zero());
            }
            let h = self.phi_sectional(&z).map_err(|e| match e {
                Error::Lightlike => Error::ReconstructionInapplicable("a phi-sectional argument is lightlike".to_string()),
                other => other,
            })?;
            Ok(self.inner(&z, &z).pow(2) * h)
        };
        let three = rat(3, 1);
        let four = rat(4, 1);
        let total = &three * weighted(add(x, &py))? + &three * weighted(sub(x, &py))?
            - weighted(add(x, y))?
            - weighted(sub(x, y))?
            - &four * weighted(x.to_vec())?
            - &four * weighted(y.to_vec())?
            - rat(24, 1) * self.epsilon_sum() * self.p(x, y, x, &py);
        Ok(total / (rat(32, 1) * delta))
    }

    /// K(X,Y) for an arbitrary non-degenerate plane, rebuilt from the 𝔇-part
    /// through φ-sectional curvatures and from η̄ on the kernel part.
    pub fn reconstruct_sectional(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        if !self.rank2(x, y) {
            return Err(Error::LinearlyDependent);
        }
        let delta = self.inner(x, x) * self.inner(y, y) - self.inner(x, y).pow(2);
        if delta.is_zero() {
            return Err(Error::DegeneratePlane);
        }
        let xd = self.project(x);
        let yd = self.project(y);
        let nx = self.inner(&xd, &xd);
        let ny = self.inner(&yd, &yd);
        let ex = self.eta_bar(x);
        let ey = self.eta_bar(y);
        let mixed = &nx * ey.pow(2) - rat(2, 1) * &ex * &ey * self.inner(&xd, &yd) + &ny * ex.pow(2);
        let dd = if self.rank2(&xd, &yd) {
            let unitize = |v: &[Rational], n: &Rational| -> Result<(Vector, Rational)> {
                let root = rational_sqrt(&n.abs()).filter(|r| !r.is_zero()).ok_or_else(|| {
                    Error::ReconstructionInapplicable("a projected vector has no exact unit rescaling".to_string())
                })?;
                Ok((scale(v, &root.recip()), root))
            };
            let (ux, rx) = unitize(&xd, &nx)?;
            let (uy, ry) = unitize(&yd, &ny)?;
            let du = self.inner(&ux, &ux) * self.inner(&uy, &uy) - self.inner(&ux, &uy).pow(2);
            if du.is_zero() {
                return Err(Error::ReconstructionInapplicable(
                    "the projected plane is degenerate".to_string(),
                ));
            }
            let k = self.sectional_from_phi_unit(&ux, &uy)?;
            k * du * (rx * ry).pow(2)
        } else {
            Rational::zero()
        };
        Ok((dd + mixed) / delta)
    }
}

/// K(π) for a plane at a point, straight from R.
pub fn sectional_curvature(r: &CurvatureTensor, g: &SquareMatrix, plane: &PlaneSpec) -> Result<Rational> {
    let gm = eval_matrix(g, &plane.point)?;
    let r04 = eval_r04(r, &plane.point)?;
    let n = g.dim();
    let view = PointCurvature {
        dim: n,
        g: gm,
        phi: vec![vec![Rational::zero(); n]; n],
        xi: Vec::new(),
        eta: Vec::new(),
        epsilon: Vec::new(),
        r04,
    };
    view.sectional(&plane.x, &plane.y)
}

/// H(X) at a point.
pub fn phi_sectional_curvature(
    s: &GffStructure,
    r: &CurvatureTensor,
    point: &[Rational],
    x: &[Rational],
) -> Result<Rational> {
    PointCurvature::new(s, r, point)?.phi_sectional(x)
}

/// H(X) as a function, for a field X in 𝔇.
pub fn phi_sectional_field(s: &GffStructure, r: &CurvatureTensor, x: &VectorField) -> Result<ScalarField> {
    if (0..s.r()).any(|a| !s.eta_of(a, x).is_zero()) {
        return Err(Error::NotInDistribution);
    }
    let n = s.inner(x, x);
    if n.is_zero() {
        return Err(Error::Lightlike);
    }
    let px = s.apply_phi(x);
    r.eval(x, &px, x, &px).checked_div(&n.pow(2))
}

/// K(π) rebuilt from φ-sectional curvatures.
pub fn sectional_from_phi(s: &GffStructure, r: &CurvatureTensor, plane: &PlaneSpec) -> Result<Rational> {
    PointCurvature::new(s, r, &plane.point)?.reconstruct_sectional(&plane.x, &plane.y)
}
