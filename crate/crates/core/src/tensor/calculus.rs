use super::field::TensorField;
use super::form::PForm;
use super::vector::VectorField;
use crate::error::{Error, Result};
use crate::scalar::{sum, ScalarField};

/// [X, Y]^k = Σ_i (X^i ∂_i Y^k − Y^i ∂_i X^k).
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> VectorField {
    VectorField::new(
        (0..x.dim())
            .map(|k| &x.apply(y.get(k)) - &y.apply(x.get(k)))
            .collect(),
    )
}

/// Lie derivative L_X T for valences (1,0), (0,q) and (1,1).
pub fn lie_derivative(t: &TensorField, x: &VectorField) -> Result<TensorField> {
    let n = t.dim();
    let vars = t.vars().clone();
    // ∂_j X^m, reused by every component
    let dx: Vec<Vec<ScalarField>> = (0..n).map(|j| (0..n).map(|m| x.get(m).partial(j)).collect()).collect();
    match t.valence() {
        (1, 0) => {
            let y = VectorField::new((0..n).map(|i| t.get(&[i]).clone()).collect());
            let b = lie_bracket(x, &y);
            Ok(TensorField::from_fn(&vars, n, 1, 0, |ix| b.get(ix[0]).clone()))
        }
        (0, _) => Ok(TensorField::from_fn(&vars, n, 0, t.rank(), |ix| {
            let mut terms = vec![x.apply(t.get(ix))];
            let mut j = ix.to_vec();
            for s in 0..ix.len() {
                for m in 0..n {
                    let c = &dx[ix[s]][m];
                    if c.is_zero() {
                        continue;
                    }
                    j[s] = m;
                    terms.push(t.get(&j) * c);
                }
                j[s] = ix[s];
            }
            sum(&vars, terms)
        })),
        (1, 1) => Ok(TensorField::from_fn(&vars, n, 1, 1, |ix| {
            let (i, j) = (ix[0], ix[1]);
            let mut terms = vec![x.apply(t.get(ix))];
            for m in 0..n {
                let a = &dx[m][i];
                if !a.is_zero() {
                    terms.push(-(t.get(&[m, j]) * a));
                }
                let b = &dx[j][m];
                if !b.is_zero() {
                    terms.push(t.get(&[i, m]) * b);
                }
            }
            sum(&vars, terms)
        })),
        (p, q) => Err(Error::UnsupportedValence {
            op: "lie_derivative",
            contra: p,
            co: q,
        }),
    }
}

/// Lie derivative of a 1-form, as a 1-form.
pub fn lie_derivative_form(eta: &PForm, x: &VectorField) -> Result<PForm> {
    if eta.degree() != 1 {
        return Err(Error::UnsupportedValence {
            op: "lie_derivative_form",
            contra: 0,
            co: eta.degree(),
        });
    }
    let t = lie_derivative(&eta.to_tensor(), x)?;
    Ok(PForm::one_form(t.comps().to_vec()))
}

fn frame(vars: &crate::scalar::Vars, n: usize) -> Vec<VectorField> {
    (0..n).map(|i| VectorField::coordinate(vars, n, i)).collect()
}

/// N_φ(X,Y) = φ²[X,Y] + [φX,φY] − φ[φX,Y] − φ[X,φY] as a (1,2) tensor,
/// component (k, i, j) = N_φ(∂_i, ∂_j)^k.
pub fn nijenhuis_torsion(phi: &TensorField) -> Result<TensorField> {
    phi.require(1, 1, "nijenhuis_torsion")?;
    let n = phi.dim();
    let vars = phi.vars().clone();
    let e = frame(&vars, n);
    let phie: Vec<VectorField> = e.iter().map(|v| phi.apply(v)).collect::<Result<_>>()?;
    let mut out = TensorField::zeros(&vars, n, 1, 2);
    for i in 0..n {
        for j in 0..n {
            if j < i {
                for k in 0..n {
                    let v = -out.get(&[k, j, i]).clone();
                    out.set(&[k, i, j], v);
                }
                continue;
            }
            // [∂_i, ∂_j] = 0
            let a = lie_bracket(&phie[i], &phie[j]);
            let b = phi.apply(&lie_bracket(&phie[i], &e[j]))?;
            let c = phi.apply(&lie_bracket(&e[i], &phie[j]))?;
            let v = &(&a - &b) - &c;
            for k in 0..n {
                out.set(&[k, i, j], v.get(k).clone());
            }
        }
    }
    Ok(out)
}

/// N = N_φ + 2 Σ_α dη^α ⊗ ξ_α.
pub fn normality_tensor(phi: &TensorField, xi: &[VectorField], eta: &[PForm]) -> Result<TensorField> {
    let nphi = nijenhuis_torsion(phi)?;
    let deta: Vec<PForm> = eta.iter().map(PForm::exterior_derivative).collect();
    let vars = phi.vars().clone();
    let two = ScalarField::from_int(&vars, 2);
    Ok(TensorField::from_fn(&vars, phi.dim(), 1, 2, |ix| {
        let (k, i, j) = (ix[0], ix[1], ix[2]);
        let extra = sum(
            &vars,
            deta.iter()
                .zip(xi)
                .map(|(d, x)| &d.component(&[i, j]) * x.get(k)),
        );
        nphi.get(ix) + &(&two * &extra)
    }))
}

/// N^(2)_α(∂_i, ∂_j) = (L_{φ∂_i} η)(∂_j) − (L_{φ∂_j} η)(∂_i), as a (0,2) tensor.
pub fn n2_via_lie(phi: &TensorField, eta: &PForm) -> Result<TensorField> {
    let n = phi.dim();
    let vars = phi.vars().clone();
    let e = frame(&vars, n);
    let lie: Vec<PForm> = e
        .iter()
        .map(|v| lie_derivative_form(eta, &phi.apply(v)?))
        .collect::<Result<_>>()?;
    Ok(TensorField::from_fn(&vars, n, 0, 2, |ix| {
        &lie[ix[0]].component(&[ix[1]]) - &lie[ix[1]].component(&[ix[0]])
    }))
}

/// N^(2)_α(∂_i, ∂_j) = 2dη(φ∂_i, ∂_j) − 2dη(φ∂_j, ∂_i).
pub fn n2_via_d(phi: &TensorField, eta: &PForm) -> Result<TensorField> {
    let n = phi.dim();
    let vars = phi.vars().clone();
    let e = frame(&vars, n);
    let d = eta.exterior_derivative();
    let phie: Vec<VectorField> = e.iter().map(|v| phi.apply(v)).collect::<Result<_>>()?;
    let two = ScalarField::from_int(&vars, 2);
    Ok(TensorField::from_fn(&vars, n, 0, 2, |ix| {
        let (i, j) = (ix[0], ix[1]);
        let v = &d.eval(&[&phie[i], &e[j]]) - &d.eval(&[&phie[j], &e[i]]);
        &two * &v
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{SquareMatrix, Vars};
    use crate::spec_io::parse_expression;

    fn vars() -> Vars {
        Vars::new(["x", "y", "z"])
    }

    fn f(s: &str) -> ScalarField {
        parse_expression(s, &vars()).unwrap()
    }

    fn vf(c: [&str; 3]) -> VectorField {
        VectorField::new(c.iter().map(|s| f(s)).collect())
    }

    #[test]
    fn bracket_of_x_dy_with_dx() {
        let a = vf(["0", "x", "0"]);
        let b = vf(["1", "0", "0"]);
        assert_eq!(lie_bracket(&a, &b), vf(["0", "-1", "0"]));
    }

    #[test]
    fn coordinate_fields_commute() {
        let v = vars();
        let a = VectorField::coordinate(&v, 3, 1);
        let b = VectorField::coordinate(&v, 3, 2);
        assert!(lie_bracket(&a, &b).is_zero());
    }

    #[test]
    fn dilation_is_not_killing() {
        let v = vars();
        let g = TensorField::from_bilinear(&SquareMatrix::identity(&v, 3));
        let x = vf(["x", "0", "0"]);
        let l = lie_derivative(&g, &x).unwrap();
        assert_eq!(*l.get(&[0, 0]), f("2"));
        let rot = vf(["-y", "x", "0"]);
        assert!(lie_derivative(&g, &rot).unwrap().is_zero());
    }

    #[test]
    fn one_form_convention_lock() {
        // 2dη(X,Y) + η([X,Y]) − X(η(Y)) + Y(η(X)) = 0
        let eta = PForm::one_form(vec![f("y*z"), f("x^2"), f("1 - x*y")]);
        let x = vf(["y", "z^2", "1"]);
        let y = vf(["x*z", "0", "y"]);
        let d = eta.exterior_derivative();
        let two = f("2");
        let lhs = &(&(&two * &d.eval(&[&x, &y])) + &eta.eval(&[&lie_bracket(&x, &y)]))
            - &(&x.apply(&eta.eval(&[&y])) - &y.apply(&eta.eval(&[&x])));
        assert!(lhs.is_zero());
    }

    #[test]
    fn constant_complex_structure_is_integrable() {
        let v = vars();
        let mut m = SquareMatrix::from_fn(3, |_, _| ScalarField::zero(&v));
        m.set(1, 0, f("1"));
        m.set(0, 1, f("-1"));
        let phi = TensorField::from_endomorphism(&m);
        assert!(nijenhuis_torsion(&phi).unwrap().is_zero());
    }

    #[test]
    fn nijenhuis_is_antisymmetric() {
        let v = vars();
        let m = SquareMatrix::from_fn(3, |i, j| f(&format!("{}*x + y^{}", i as i64 - j as i64, i + j)));
        let phi = TensorField::from_endomorphism(&m);
        let nt = nijenhuis_torsion(&phi).unwrap();
        // recompute the lower triangle directly
        let e: Vec<VectorField> = (0..3).map(|i| VectorField::coordinate(&v, 3, i)).collect();
        let p = |x: &VectorField| phi.apply(x).unwrap();
        let direct = &(&lie_bracket(&p(&e[2]), &p(&e[0])) - &p(&lie_bracket(&p(&e[2]), &e[0])))
            - &p(&lie_bracket(&e[2], &p(&e[0])));
        for k in 0..3 {
            assert_eq!(nt.get(&[k, 2, 0]), direct.get(k));
            assert_eq!(*nt.get(&[k, 2, 0]), -nt.get(&[k, 0, 2]).clone());
        }
    }

    #[test]
    fn unsupported_valence_errors() {
        let v = vars();
        let t = TensorField::zeros(&v, 3, 2, 1);
        assert!(matches!(
            lie_derivative(&t, &vf(["1", "0", "0"])),
            Err(Error::UnsupportedValence { .. })
        ));
    }
}
