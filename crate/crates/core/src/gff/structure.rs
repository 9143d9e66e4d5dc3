use crate::error::{Error, Result};
use crate::scalar::{sum, Rational, ScalarField, SquareMatrix, Vars};
use crate::spec_io::ManifoldSpec;
use crate::tensor::{lie_derivative, PForm, TensorField, VectorField};

/// φ, ξ_α, η^α and g on a single chart, with the causal characters
/// ε_α = g(ξ_α, ξ_α) computed from the metric.
#[derive(Clone, Debug)]
pub struct GffStructure {
    spec: ManifoldSpec,
    phi: TensorField,
    xi: Vec<VectorField>,
    eta: Vec<PForm>,
    g: TensorField,
    epsilon: Vec<i32>,
}

/// h_α = ½ L_{ξ_α} φ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HOperator {
    pub index: usize,
    pub matrix: TensorField,
}

impl GffStructure {
    pub fn new(spec: &ManifoldSpec) -> Result<Self> {
        let phi = TensorField::from_endomorphism(&spec.phi);
        let g = TensorField::from_bilinear(&spec.metric);
        let xi: Vec<VectorField> = spec.xi.iter().map(|c| VectorField::new(c.clone())).collect();
        let eta: Vec<PForm> = spec.eta.iter().map(|c| PForm::one_form(c.clone())).collect();
        let mut s = GffStructure {
            spec: spec.clone(),
            phi,
            xi,
            eta,
            g,
            epsilon: Vec::new(),
        };
        let mut epsilon = Vec::with_capacity(spec.r);
        for (a, x) in s.xi.iter().enumerate() {
            let v = s.inner(x, x);
            let e = match v.as_constant() {
                Some(q) if q == Rational::from_integer(1.into()) => 1,
                Some(q) if q == Rational::from_integer((-1).into()) => -1,
                _ => {
                    return Err(Error::InvalidCausalCharacter {
                        alpha: a + 1,
                        value: v.to_string(),
                    })
                }
            };
            epsilon.push(e);
        }
        s.epsilon = epsilon;
        Ok(s)
    }

    pub fn spec(&self) -> &ManifoldSpec {
        &self.spec
    }

    pub fn vars(&self) -> &Vars {
        &self.spec.coords
    }

    pub fn dim(&self) -> usize {
        self.spec.dim
    }

    pub fn r(&self) -> usize {
        self.spec.r
    }

    pub fn phi(&self) -> &TensorField {
        &self.phi
    }

    pub fn phi_matrix(&self) -> &SquareMatrix {
        &self.spec.phi
    }

    pub fn xi(&self) -> &[VectorField] {
        &self.xi
    }

    pub fn eta(&self) -> &[PForm] {
        &self.eta
    }

    pub fn g(&self) -> &TensorField {
        &self.g
    }

    pub fn metric(&self) -> &SquareMatrix {
        &self.spec.metric
    }

    pub fn epsilon(&self) -> &[i32] {
        &self.epsilon
    }

    /// ε = Σ ε_α.
    pub fn epsilon_sum(&self) -> i32 {
        self.epsilon.iter().sum()
    }

    pub fn zero(&self) -> ScalarField {
        ScalarField::zero(self.vars())
    }

    pub fn int(&self, k: i64) -> ScalarField {
        ScalarField::from_int(self.vars(), k)
    }

    /// The coordinate frame ∂_1..∂_n.
    pub fn frame(&self) -> Vec<VectorField> {
        (0..self.dim()).map(|i| VectorField::coordinate(self.vars(), self.dim(), i)).collect()
    }

    /// The projected frame −φ²∂_i, spanning 𝔇.
    pub fn distribution_frame(&self) -> Vec<VectorField> {
        self.frame().iter().map(|e| self.project(e)).collect()
    }

    pub fn inner(&self, x: &VectorField, y: &VectorField) -> ScalarField {
        let n = self.dim();
        let m = self.metric();
        let mut terms = Vec::new();
        for i in 0..n {
            if x.get(i).is_zero() {
                continue;
            }
            for j in 0..n {
                if y.get(j).is_zero() || m.get(i, j).is_zero() {
                    continue;
                }
                terms.push(&(x.get(i) * m.get(i, j)) * y.get(j));
            }
        }
        sum(self.vars(), terms)
    }

    pub fn apply_phi(&self, x: &VectorField) -> VectorField {
        self.phi.apply(x).expect("phi is (1,1)")
    }

    /// −φ²X, the 𝔇-component of X.
    pub fn project(&self, x: &VectorField) -> VectorField {
        -self.apply_phi(&self.apply_phi(x))
    }

    pub fn eta_of(&self, alpha: usize, x: &VectorField) -> ScalarField {
        self.eta[alpha].eval(&[x])
    }

    /// ξ̄ = Σ ξ_α.
    pub fn xi_bar(&self) -> VectorField {
        self.xi
            .iter()
            .fold(VectorField::zero(self.vars(), self.dim()), |acc, x| &acc + x)
    }

    /// η̄ = Σ ε_α η^α.
    pub fn eta_bar(&self) -> PForm {
        let n = self.dim();
        let comps = (0..n)
            .map(|i| {
                sum(
                    self.vars(),
                    self.eta
                        .iter()
                        .zip(&self.epsilon)
                        .map(|(e, &s)| e.component(&[i]).scale(&Rational::from_integer(s.into()))),
                )
            })
            .collect();
        PForm::one_form(comps)
    }

    pub fn eta_bar_of(&self, x: &VectorField) -> ScalarField {
        sum(
            self.vars(),
            (0..self.r()).map(|a| self.eta_of(a, x).scale(&Rational::from_integer(self.epsilon[a].into()))),
        )
    }

    /// Φ_{ij} = g(∂_i, φ∂_j).
    pub fn fundamental_tensor(&self) -> TensorField {
        TensorField::from_bilinear(&self.metric().mul(self.phi_matrix()))
    }

    /// Φ as a 2-form; fails when φ is not g-skew-symmetric.
    pub fn fundamental_form(&self) -> Result<PForm> {
        PForm::from_antisymmetric(&self.fundamental_tensor())
    }

    /// h_α = ½ L_{ξ_α} φ for every α.
    pub fn h_operators(&self) -> Vec<HOperator> {
        let half = Rational::new(1.into(), 2.into());
        self.xi
            .iter()
            .enumerate()
            .map(|(index, x)| HOperator {
                index,
                matrix: lie_derivative(&self.phi, x)
                    .expect("(1,1) is supported")
                    .map(|c| c.scale(&half)),
            })
            .collect()
    }
}

impl HOperator {
    pub fn apply(&self, x: &VectorField) -> VectorField {
        self.matrix.apply(x).expect("h is (1,1)")
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}
