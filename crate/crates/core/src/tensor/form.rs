use super::field::TensorField;
use super::vector::VectorField;
use crate::error::{Error, Result};
use crate::scalar::{rat, sum, ScalarField, Vars};

/// A p-form stored by its components on strictly increasing index tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PForm {
    dim: usize,
    degree: usize,
    /// Components in lexicographic order of the increasing tuples.
    comps: Vec<ScalarField>,
    tuples: Vec<Vec<usize>>,
}

fn increasing_tuples(dim: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, dim: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            rec(i + 1, dim, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, dim, p, &mut Vec::new(), &mut out);
    out
}

/// Sorts `idx` in place and returns the permutation sign, or `None` when an
/// index repeats.
fn sort_with_sign(idx: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 0..idx.len() {
        for j in 0..idx.len() - 1 - i {
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                sign = -sign;
            } else if idx[j] == idx[j + 1] {
                return None;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(sign)
}

impl PForm {
    pub fn zero(vars: &Vars, dim: usize, degree: usize) -> Self {
        let tuples = increasing_tuples(dim, degree);
        PForm {
            dim,
            degree,
            comps: vec![ScalarField::zero(vars); tuples.len()],
            tuples,
        }
    }

    pub fn from_fn(vars: &Vars, dim: usize, degree: usize, f: impl Fn(&[usize]) -> ScalarField) -> Self {
        let mut w = Self::zero(vars, dim, degree);
        w.comps = w.tuples.iter().map(|t| f(t)).collect();
        w
    }

    /// A 1-form from its components η_i = η(∂_i).
    pub fn one_form(comps: Vec<ScalarField>) -> Self {
        let vars = comps[0].vars().clone();
        let dim = comps.len();
        Self::from_fn(&vars, dim, 1, |t| comps[t[0]].clone())
    }

    /// A 0-form.
    pub fn function(f: ScalarField, dim: usize) -> Self {
        let vars = f.vars().clone();
        Self::from_fn(&vars, dim, 0, |_| f.clone())
    }

    /// Restricts an antisymmetric (0,q) tensor to a form.
    pub fn from_antisymmetric(t: &TensorField) -> Result<Self> {
        let (p, q) = t.valence();
        if p != 0 {
            return Err(Error::UnsupportedValence {
                op: "from_antisymmetric",
                contra: p,
                co: q,
            });
        }
        let w = Self::from_fn(t.vars(), t.dim(), q, |ix| t.get(ix).clone());
        if w.to_tensor() != *t {
            return Err(Error::NotSkewSymmetric);
        }
        Ok(w)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn vars(&self) -> &Vars {
        self.comps[0].vars()
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    pub fn comps(&self) -> &[ScalarField] {
        &self.comps
    }

    fn position(&self, sorted: &[usize]) -> usize {
        self.tuples
            .binary_search_by(|t| t.as_slice().cmp(sorted))
            .expect("increasing tuple is stored")
    }

    /// Component on an arbitrary index tuple, with the antisymmetry sign.
    pub fn component(&self, idx: &[usize]) -> ScalarField {
        let mut s = idx.to_vec();
        match sort_with_sign(&mut s) {
            None => ScalarField::zero(self.vars()),
            Some(sign) => {
                let c = &self.comps[self.position(&s)];
                if sign < 0 {
                    -c
                } else {
                    c.clone()
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(ScalarField::is_zero)
    }

    pub fn sub(&self, other: &PForm) -> PForm {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree));
        PForm {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect(),
            ..self.clone()
        }
    }

    /// First nonzero increasing-tuple component.
    pub fn first_nonzero(&self) -> Option<(&[usize], &ScalarField)> {
        self.tuples
            .iter()
            .zip(&self.comps)
            .find(|(_, c)| !c.is_zero())
            .map(|(t, c)| (t.as_slice(), c))
    }

    /// Dense (0,p) tensor with all antisymmetric components.
    pub fn to_tensor(&self) -> TensorField {
        TensorField::from_fn(self.vars(), self.dim, 0, self.degree, |ix| self.component(ix))
    }

    /// ω(X_1, ..., X_p) = Σ_I ω_I det[X_k^{i_l}].
    pub fn eval(&self, args: &[&VectorField]) -> ScalarField {
        assert_eq!(args.len(), self.degree, "form degree and argument count differ");
        let vars = self.vars().clone();
        if self.degree == 0 {
            return self.comps[0].clone();
        }
        let perms = permutations(self.degree);
        sum(
            &vars,
            self.tuples.iter().zip(&self.comps).filter(|(_, c)| !c.is_zero()).map(|(t, c)| {
                let det = sum(
                    &vars,
                    perms.iter().map(|(perm, sign)| {
                        let mut prod = ScalarField::from_int(&vars, *sign as i64);
                        for (k, &l) in perm.iter().enumerate() {
                            prod = &prod * args[k].get(t[l]);
                            if prod.is_zero() {
                                break;
                            }
                        }
                        prod
                    }),
                );
                c * &det
            }),
        )
    }

    /// Exterior derivative with the 1/(p+1) normalization:
    /// (dω)_{i0..ip} = 1/(p+1) Σ_k (-1)^k ∂_{i_k} ω_{i0..î_k..ip}.
    pub fn exterior_derivative(&self) -> PForm {
        let p = self.degree;
        let vars = self.vars().clone();
        let norm = rat(1, (p + 1) as i64);
        Self::from_fn(&vars, self.dim, p + 1, |t| {
            let s = sum(
                &vars,
                (0..=p).map(|k| {
                    let rest: Vec<usize> = t
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != k)
                        .map(|(_, &i)| i)
                        .collect();
                    let d = self.comps[self.position(&rest)].partial(t[k]);
                    if k % 2 == 1 {
                        -d
                    } else {
                        d
                    }
                }),
            );
            s.scale(&norm)
        })
    }
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i32)>) {
        let n = used.len();
        if cur.len() == n {
            let mut inv = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if cur[i] > cur[j] {
                        inv += 1;
                    }
                }
            }
            out.push((cur.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}
