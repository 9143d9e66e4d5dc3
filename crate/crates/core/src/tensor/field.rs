use super::vector::VectorField;
use crate::error::{Error, Result};
use crate::scalar::{sum, ScalarField, SquareMatrix, Vars};

/// Dense tensor field of valence (p, q). Component indices list the p
/// contravariant slots first, then the q covariant ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorField {
    dim: usize,
    contra: usize,
    co: usize,
    comps: Vec<ScalarField>,
}

impl TensorField {
    pub fn zeros(vars: &Vars, dim: usize, contra: usize, co: usize) -> Self {
        let len = dim.pow((contra + co) as u32);
        TensorField {
            dim,
            contra,
            co,
            comps: vec![ScalarField::zero(vars); len],
        }
    }

    pub fn from_fn(
        vars: &Vars,
        dim: usize,
        contra: usize,
        co: usize,
        mut f: impl FnMut(&[usize]) -> ScalarField,
    ) -> Self {
        let mut t = Self::zeros(vars, dim, contra, co);
        let mut idx = vec![0; contra + co];
        for k in 0..t.comps.len() {
            t.comps[k] = f(&idx);
            increment(&mut idx, dim);
        }
        t
    }

    /// φ as a (1,1) tensor: component (i, j) is the i-th component of φ(∂_j).
    pub fn from_endomorphism(m: &SquareMatrix) -> Self {
        Self::from_fn(m.vars(), m.dim(), 1, 1, |ix| m.get(ix[0], ix[1]).clone())
    }

    /// A bilinear form as a (0,2) tensor.
    pub fn from_bilinear(m: &SquareMatrix) -> Self {
        Self::from_fn(m.vars(), m.dim(), 0, 2, |ix| m.get(ix[0], ix[1]).clone())
    }

    /// Inverse of the two constructors above, for valences (1,1) and (0,2).
    pub fn to_matrix(&self) -> SquareMatrix {
        assert_eq!(self.contra + self.co, 2, "to_matrix needs a 2-index tensor");
        SquareMatrix::from_fn(self.dim, |i, j| self.get(&[i, j]).clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn valence(&self) -> (usize, usize) {
        (self.contra, self.co)
    }

    pub fn rank(&self) -> usize {
        self.contra + self.co
    }

    pub fn vars(&self) -> &Vars {
        self.comps[0].vars()
    }

    pub fn comps(&self) -> &[ScalarField] {
        &self.comps
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank());
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    pub fn get(&self, idx: &[usize]) -> &ScalarField {
        &self.comps[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: ScalarField) {
        let k = self.offset(idx);
        self.comps[k] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(ScalarField::is_zero)
    }

    /// All index tuples in lexicographic order.
    pub fn indices(&self) -> IndexIter {
        IndexIter::new(self.dim, self.rank())
    }

    /// First nonzero component in lexicographic index order.
    pub fn first_nonzero(&self) -> Option<(Vec<usize>, &ScalarField)> {
        self.indices()
            .zip(&self.comps)
            .find(|(_, c)| !c.is_zero())
    }

    pub fn map(&self, f: impl Fn(&ScalarField) -> ScalarField) -> Self {
        TensorField {
            comps: self.comps.iter().map(f).collect(),
            ..self.clone()
        }
    }

    pub fn zip_with(&self, other: &TensorField, f: impl Fn(&ScalarField, &ScalarField) -> ScalarField) -> Self {
        assert_eq!(self.valence(), other.valence(), "valence mismatch");
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        TensorField {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &TensorField) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &TensorField) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, f: &ScalarField) -> Self {
        self.map(|c| f * c)
    }

    /// Applies a (1,1) tensor to a vector.
    pub fn apply(&self, x: &VectorField) -> Result<VectorField> {
        self.require(1, 1, "apply")?;
        let n = self.dim;
        Ok(VectorField::new(
            (0..n)
                .map(|i| {
                    sum(
                        self.vars(),
                        (0..n)
                            .filter(|&j| !x.get(j).is_zero())
                            .map(|j| self.get(&[i, j]) * x.get(j)),
                    )
                })
                .collect(),
        ))
    }

    /// Evaluates a (0,q) tensor on q vectors.
    pub fn eval_covariant(&self, args: &[&VectorField]) -> Result<ScalarField> {
        self.require(0, args.len(), "eval_covariant")?;
        let vars = self.vars().clone();
        let mut acc = ScalarField::zero(&vars);
        for idx in self.indices() {
            let c = self.get(&idx);
            if c.is_zero() {
                continue;
            }
            let mut term = c.clone();
            for (slot, a) in idx.iter().zip(args) {
                let x = a.get(*slot);
                if x.is_zero() {
                    term = ScalarField::zero(&vars);
                    break;
                }
                term = &term * x;
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Evaluates a (1,q) tensor on q vectors.
    pub fn eval_vector(&self, args: &[&VectorField]) -> Result<VectorField> {
        self.require(1, args.len(), "eval_vector")?;
        let vars = self.vars().clone();
        let n = self.dim;
        let mut out = vec![ScalarField::zero(&vars); n];
        for idx in self.indices() {
            let c = self.get(&idx);
            if c.is_zero() {
                continue;
            }
            let mut term = c.clone();
            for (slot, a) in idx[1..].iter().zip(args) {
                term = &term * a.get(*slot);
                if term.is_zero() {
                    break;
                }
            }
            if !term.is_zero() {
                out[idx[0]] = &out[idx[0]] + &term;
            }
        }
        Ok(VectorField::new(out))
    }

    /// Composition of (1,1) tensors: (self ∘ other)(X) = self(other(X)).
    pub fn compose(&self, other: &TensorField) -> Result<TensorField> {
        self.require(1, 1, "compose")?;
        other.require(1, 1, "compose")?;
        Ok(TensorField::from_endomorphism(&self.to_matrix().mul(&other.to_matrix())))
    }

    pub(crate) fn require(&self, contra: usize, co: usize, op: &'static str) -> Result<()> {
        if self.contra == contra && self.co == co {
            Ok(())
        } else {
            Err(Error::UnsupportedValence {
                op,
                contra: self.contra,
                co: self.co,
            })
        }
    }
}

fn increment(idx: &mut [usize], dim: usize) {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < dim {
            return;
        }
        idx[k] = 0;
    }
}

/// Iterator over all index tuples in `0..dim` of a given length.
pub struct IndexIter {
    dim: usize,
    next: Option<Vec<usize>>,
}

impl IndexIter {
    pub fn new(dim: usize, len: usize) -> Self {
        IndexIter {
            dim,
            next: (dim > 0 || len == 0).then(|| vec![0; len]),
        }
    }
}

impl Iterator for IndexIter {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let mut nxt = cur.clone();
        let mut carry = true;
        for k in (0..nxt.len()).rev() {
            nxt[k] += 1;
            if nxt[k] < self.dim {
                carry = false;
                break;
            }
            nxt[k] = 0;
        }
        if !carry {
            self.next = Some(nxt);
        }
        Some(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_iteration_covers_everything_once() {
        let all: Vec<_> = IndexIter::new(3, 2).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[8], vec![2, 2]);
        assert_eq!(IndexIter::new(4, 0).count(), 1);
    }

    #[test]
    fn matrix_round_trip() {
        let v = Vars::new(["x", "y"]);
        let m = SquareMatrix::from_fn(2, |i, j| ScalarField::from_int(&v, (3 * i + j) as i64));
        let t = TensorField::from_endomorphism(&m);
        assert_eq!(t.to_matrix(), m);
        assert_eq!(t.get(&[1, 0]).as_constant(), Some(crate::scalar::rat(3, 1)));
    }
}
