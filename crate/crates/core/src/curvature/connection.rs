use crate::error::{Error, Result};
use crate::gff::fmt_index;
use crate::scalar::{sum, Rational, ScalarField, SquareMatrix, Vars};
use crate::spec_io::Verdict;
use crate::tensor::{TensorField, VectorField};

/// Levi-Civita connection of a metric on one chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    dim: usize,
    /// Γ^k_{ij} stored at k·n² + i·n + j.
    gamma: Vec<ScalarField>,
}

/// Γ^k_{ij} = ½ g^{kl}(∂_i g_{jl} + ∂_j g_{il} − ∂_l g_{ij}).
pub fn levi_civita(g: &SquareMatrix) -> Result<Connection> {
    let n = g.dim();
    if g.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    let inv = g.inverse()?;
    let vars = g.vars().clone();
    let half = Rational::new(1.into(), 2.into());
    // ∂_i g_{jl}
    let dg: Vec<Vec<Vec<ScalarField>>> = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|l| g.get(j, l).partial(i)).collect()).collect())
        .collect();
    let mut gamma = vec![ScalarField::zero(&vars); n * n * n];
    for i in 0..n {
        for j in i..n {
            // lowered symbol Γ_{lij}
            let low: Vec<ScalarField> = (0..n)
                .map(|l| (&(&dg[i][j][l] + &dg[j][i][l]) - &dg[l][i][j]).scale(&half))
                .collect();
            for k in 0..n {
                let v = sum(
                    &vars,
                    (0..n)
                        .filter(|&l| !low[l].is_zero() && !inv.get(k, l).is_zero())
                        .map(|l| inv.get(k, l) * &low[l]),
                );
                gamma[k * n * n + i * n + j] = v.clone();
                gamma[k * n * n + j * n + i] = v;
            }
        }
    }
    Ok(Connection { dim: n, gamma })
}

impl Connection {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vars(&self) -> &Vars {
        self.gamma[0].vars()
    }

    /// The same symbols over a variable list extending the chart's.
    pub fn extend_vars(&self, vars: &Vars) -> Connection {
        Connection {
            dim: self.dim,
            gamma: self.gamma.iter().map(|c| c.extend_vars(vars)).collect(),
        }
    }

    /// Γ^k_{ij}.
    pub fn christoffel(&self, k: usize, i: usize, j: usize) -> &ScalarField {
        let n = self.dim;
        &self.gamma[k * n * n + i * n + j]
    }

    /// Nonzero symbols (k, i, j, Γ^k_{ij}) with i ≤ j.
    pub fn nonzero_symbols(&self) -> Vec<(usize, usize, usize, ScalarField)> {
        let n = self.dim;
        let mut out = Vec::new();
        for k in 0..n {
            for i in 0..n {
                for j in i..n {
                    let c = self.christoffel(k, i, j);
                    if !c.is_zero() {
                        out.push((k, i, j, c.clone()));
                    }
                }
            }
        }
        out
    }

    /// ∇_X Y.
    pub fn nabla(&self, x: &VectorField, y: &VectorField) -> VectorField {
        let n = self.dim;
        let vars = self.vars();
        VectorField::new(
            (0..n)
                .map(|k| {
                    let mut terms = vec![x.apply(y.get(k))];
                    for i in 0..n {
                        if x.get(i).is_zero() {
                            continue;
                        }
                        for j in 0..n {
                            let c = self.christoffel(k, i, j);
                            if c.is_zero() || y.get(j).is_zero() {
                                continue;
                            }
                            terms.push(&(c * x.get(i)) * y.get(j));
                        }
                    }
                    sum(vars, terms)
                })
                .collect(),
        )
    }

    /// ∇T with the derivative direction as the last covariant slot, for
    /// valences (1,0), (0,1), (1,1) and (0,2).
    pub fn covariant_derivative(&self, t: &TensorField) -> Result<TensorField> {
        let n = self.dim;
        let vars = self.vars().clone();
        let (p, q) = t.valence();
        if !matches!((p, q), (1, 0) | (0, 1) | (1, 1) | (0, 2)) {
            return Err(Error::UnsupportedValence {
                op: "covariant_derivative",
                contra: p,
                co: q,
            });
        }
        Ok(TensorField::from_fn(&vars, n, p, q + 1, |ix| {
            let m = ix[ix.len() - 1];
            let base = &ix[..ix.len() - 1];
            let mut terms = vec![t.get(base).partial(m)];
            let mut j = base.to_vec();
            for slot in 0..base.len() {
                for s in 0..n {
                    j[slot] = s;
                    let v = t.get(&j);
                    if v.is_zero() {
                        continue;
                    }
                    if slot < p {
                        // + Γ^{a}_{m s} T^{s..}
                        let c = self.christoffel(base[slot], m, s);
                        if !c.is_zero() {
                            terms.push(c * v);
                        }
                    } else {
                        // − Γ^{s}_{m b} T_{..s..}
                        let c = self.christoffel(s, m, base[slot]);
                        if !c.is_zero() {
                            terms.push(-(c * v));
                        }
                    }
                }
                j[slot] = base[slot];
            }
            sum(&vars, terms)
        }))
    }

    /// Γ^k_{ij} = Γ^k_{ji} and ∇g = 0, as verdicts.
    pub fn verify(&self, g: &SquareMatrix) -> Vec<Verdict> {
        let n = self.dim;
        let mut torsion = None;
        'outer: for k in 0..n {
            for i in 0..n {
                for j in i + 1..n {
                    let d = self.christoffel(k, i, j) - self.christoffel(k, j, i);
                    if !d.is_zero() {
                        torsion = Some(format!("Gamma{} asymmetric by {d}", fmt_index(&[k, i, j])));
                        break 'outer;
                    }
                }
            }
        }
        let nabla_g = self.covariant_derivative(&TensorField::from_bilinear(g)).expect("(0,2)");
        let metric = nabla_g
            .first_nonzero()
            .map(|(ix, v)| format!("(nabla g){} = {v}", fmt_index(&ix)));
        vec![
            Verdict::from_witness("connection.torsion_free", torsion),
            Verdict::from_witness("connection.metric_compatible", metric),
        ]
    }
}
