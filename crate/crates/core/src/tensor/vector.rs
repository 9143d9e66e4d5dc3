use std::ops::{Add, Neg, Sub};

use crate::error::Result;
use crate::scalar::{sum, Rational, ScalarField, Vars};

/// Components of a vector field in the coordinate frame ∂_1..∂_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    comps: Vec<ScalarField>,
}

impl VectorField {
    pub fn new(comps: Vec<ScalarField>) -> Self {
        assert!(!comps.is_empty(), "vector fields need at least one component");
        VectorField { comps }
    }

    pub fn zero(vars: &Vars, n: usize) -> Self {
        VectorField::new(vec![ScalarField::zero(vars); n])
    }

    /// The coordinate field ∂_i.
    pub fn coordinate(vars: &Vars, n: usize, i: usize) -> Self {
        let mut v = Self::zero(vars, n);
        v.comps[i] = ScalarField::one(vars);
        v
    }

    pub fn from_constants(vars: &Vars, c: &[Rational]) -> Self {
        VectorField::new(c.iter().map(|q| ScalarField::constant(vars, q.clone())).collect())
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn vars(&self) -> &Vars {
        self.comps[0].vars()
    }

    pub fn comps(&self) -> &[ScalarField] {
        &self.comps
    }

    pub fn get(&self, i: usize) -> &ScalarField {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(ScalarField::is_zero)
    }

    pub fn scale(&self, f: &ScalarField) -> Self {
        VectorField::new(self.comps.iter().map(|c| f * c).collect())
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        VectorField::new(self.comps.iter().map(|c| c.scale(q)).collect())
    }

    /// X(f) = Σ X^i ∂_i f.
    pub fn apply(&self, f: &ScalarField) -> ScalarField {
        sum(
            f.vars(),
            self.comps
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| c * &f.partial(i)),
        )
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.comps.iter().map(|c| c.evaluate(point)).collect()
    }

    /// Index and value of the first nonzero component.
    pub fn first_nonzero(&self) -> Option<(usize, &ScalarField)> {
        self.comps.iter().enumerate().find(|(_, c)| !c.is_zero())
    }
}

impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, rhs: &VectorField) -> VectorField {
        VectorField::new(self.comps.iter().zip(&rhs.comps).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &VectorField {
    type Output = VectorField;
    fn sub(self, rhs: &VectorField) -> VectorField {
        VectorField::new(self.comps.iter().zip(&rhs.comps).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        VectorField::new(self.comps.iter().map(|c| -c).collect())
    }
}

impl Add for VectorField {
    type Output = VectorField;
    fn add(self, rhs: VectorField) -> VectorField {
        &self + &rhs
    }
}

impl Sub for VectorField {
    type Output = VectorField;
    fn sub(self, rhs: VectorField) -> VectorField {
        &self - &rhs
    }
}

impl Neg for VectorField {
    type Output = VectorField;
    fn neg(self) -> VectorField {
        -&self
    }
}
