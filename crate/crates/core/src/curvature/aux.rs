use super::riemann::{contract4, transform_slot, CurvatureTensor};
use crate::gff::{fmt_index, GffStructure};
use crate::scalar::{rat, sum, ScalarField};
use crate::spec_io::Verdict;
use crate::tensor::{TensorField, VectorField};

/// Dense (0,2) component tables shared by P, Q and S(c).
pub(crate) struct Components {
    pub n: usize,
    pub g: Vec<Vec<ScalarField>>,
    /// Φ_ij = g(∂_i, φ∂_j)
    pub phi: Vec<Vec<ScalarField>>,
    /// g(φ∂_i, φ∂_j)
    pub gpp: Vec<Vec<ScalarField>>,
    /// Σ ε_α η^α_i η^α_j
    pub k: Vec<Vec<ScalarField>>,
    pub eta_bar: Vec<ScalarField>,
}

impl Components {
    pub fn new(s: &GffStructure) -> Self {
        let n = s.dim();
        let f = s.phi_matrix();
        let g = s.metric();
        let gf = g.mul(f);
        let gpp = f.transpose().mul(&gf);
        let eb = s.eta_bar();
        let table = |m: &crate::scalar::SquareMatrix| -> Vec<Vec<ScalarField>> {
            (0..n).map(|i| (0..n).map(|j| m.get(i, j).clone()).collect()).collect()
        };
        let k = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        sum(
                            s.vars(),
                            s.eta().iter().zip(s.epsilon()).map(|(e, &sg)| {
                                (&e.component(&[i]) * &e.component(&[j])).scale(&rat(sg as i64, 1))
                            }),
                        )
                    })
                    .collect()
            })
            .collect();
        Components {
            n,
            g: table(g),
            phi: table(&gf),
            gpp: table(&gpp),
            k,
            eta_bar: (0..n).map(|i| eb.component(&[i])).collect(),
        }
    }
}

/// P, Q and ε = Σ ε_α, materialized once per structure.
#[derive(Clone, Debug)]
pub struct AuxTensors {
    pub p: TensorField,
    pub q: TensorField,
    pub epsilon_bar: i32,
}

pub fn aux_tensors(s: &GffStructure) -> AuxTensors {
    let c = Components::new(s);
    let n = c.n;
    let eps = ScalarField::from_int(s.vars(), s.epsilon_sum() as i64);
    let (g, f, k, e) = (&c.g, &c.phi, &c.k, &c.eta_bar);
    let p = TensorField::from_fn(s.vars(), n, 0, 4, |ix| {
        let (a, b, cc, d) = (ix[0], ix[1], ix[2], ix[3]);
        let t = [
            &f[a][cc] * &g[b][d],
            -(&f[a][d] * &g[b][cc]),
            -(&f[b][cc] * &g[a][d]),
            &f[b][d] * &g[a][cc],
        ];
        sum(s.vars(), t)
    });
    // ε k(A,B) − η̄(A)η̄(B)
    let m = |i: usize, j: usize| &(&eps * &k[i][j]) - &(&e[i] * &e[j]);
    let q = TensorField::from_fn(s.vars(), n, 0, 4, |ix| {
        let (a, b, cc, d) = (ix[0], ix[1], ix[2], ix[3]);
        let t = [
            &f[d][b] * &m(a, cc),
            -(&f[d][a] * &m(b, cc)),
            -(&f[cc][b] * &m(a, d)),
            &f[cc][a] * &m(b, d),
        ];
        sum(s.vars(), t)
    });
    AuxTensors {
        p,
        q,
        epsilon_bar: s.epsilon_sum(),
    }
}

impl AuxTensors {
    pub fn p_of(&self, x: &VectorField, y: &VectorField, z: &VectorField, w: &VectorField) -> ScalarField {
        contract4(&self.p, [x, y, z, w])
    }

    pub fn q_of(&self, x: &VectorField, y: &VectorField, z: &VectorField, w: &VectorField) -> ScalarField {
        contract4(&self.q, [x, y, z, w])
    }

    /// g(R(X,Y)φZ, W) + g(R(X,Y)Z, φW) + εP + Q on all coordinate 4-tuples.
    pub fn master_identity_residual(&self, s: &GffStructure, r: &CurvatureTensor) -> TensorField {
        let f = s.phi_matrix();
        let t1 = transform_slot(r.r04(), 1, f);
        let t2 = transform_slot(r.r04(), 0, f);
        let eps = ScalarField::from_int(s.vars(), self.epsilon_bar as i64);
        TensorField::from_fn(s.vars(), s.dim(), 0, 4, |ix| {
            let (a, b, c, d) = (ix[0], ix[1], ix[2], ix[3]);
            let lhs = t1.get(&[d, c, a, b]) + t2.get(&[d, c, a, b]);
            sum(
                s.vars(),
                [lhs, &eps * self.p.get(ix), self.q.get(ix).clone()],
            )
        })
    }

    pub fn master_identity(&self, s: &GffStructure, r: &CurvatureTensor) -> Verdict {
        let res = self.master_identity_residual(s, r);
        Verdict::from_witness(
            "curvature.phi_commutator",
            res.first_nonzero()
                .map(|(ix, v)| format!("R(.,.)phi + phi-adjoint + eps P + Q at {} = {v}", fmt_index(&ix))),
        )
    }
}

/// B(X,Y) = g(R(X,Y)X, Y).
pub fn b_form(r: &CurvatureTensor, x: &VectorField, y: &VectorField) -> ScalarField {
    r.rg(x, y, x, y)
}

/// D(X) = B(X, φX).
pub fn d_form(s: &GffStructure, r: &CurvatureTensor, x: &VectorField) -> ScalarField {
    b_form(r, x, &s.apply_phi(x))
}
