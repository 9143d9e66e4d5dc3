use super::aux::Components;
use super::riemann::CurvatureTensor;
use super::sectional::phi_sectional_field;
use crate::error::{Error, Result};
use crate::gff::GffStructure;
use crate::scalar::{rat, sum, Rational, ScalarField};
use crate::tensor::TensorField;

/// The curvature tensor S(c) of an S-space form with φ-sectional
/// curvature c, in the R(X,Y,Z,W) convention.
pub fn space_form_tensor(s: &GffStructure, c: &ScalarField) -> TensorField {
    let comp = Components::new(s);
    let n = comp.n;
    let vars = s.vars();
    let eps = ScalarField::from_int(vars, s.epsilon_sum() as i64);
    let quarter = rat(-1, 4);
    let c1 = (c + &(&eps * &ScalarField::from_int(vars, 3))).scale(&quarter);
    let c2 = (c - &eps).scale(&quarter);
    let (f, gpp, e) = (&comp.phi, &comp.gpp, &comp.eta_bar);
    TensorField::from_fn(vars, n, 0, 4, |ix| {
        let (x, y, z, w) = (ix[0], ix[1], ix[2], ix[3]);
        let t1 = &(&gpp[y][z] * &gpp[x][w]) - &(&gpp[x][z] * &gpp[y][w]);
        let t2 = sum(
            vars,
            [
                &f[w][x] * &f[z][y],
                -(&f[z][x] * &f[w][y]),
                (&f[x][y] * &f[w][z]).scale(&rat(2, 1)),
            ],
        );
        let t3 = sum(
            vars,
            [
                &(&e[w] * &e[x]) * &gpp[z][y],
                -(&(&e[w] * &e[y]) * &gpp[z][x]),
                &(&e[y] * &e[z]) * &gpp[w][x],
                -(&(&e[z] * &e[x]) * &gpp[w][y]),
            ],
        );
        sum(vars, [&c1 * &t1, &c2 * &t2, -t3])
    })
}

/// R − S(c).
pub fn space_form_residual(s: &GffStructure, r: &CurvatureTensor, c: &Rational) -> TensorField {
    let sc = space_form_tensor(s, &ScalarField::constant(s.vars(), c.clone()));
    r.r04().sub(&sc)
}

/// The constant c with R = S(c), if there is one.
///
/// c is read off as H(E) for the first projected frame field E = −φ²∂_i
/// whose norm is not identically zero.
pub fn detect_space_form(s: &GffStructure, r: &CurvatureTensor) -> Result<Option<Rational>> {
    let e = s
        .distribution_frame()
        .into_iter()
        .find(|e| !s.inner(e, e).is_zero())
        .ok_or(Error::NoFrameCandidate)?;
    let h = phi_sectional_field(s, r, &e)?;
    let Some(c) = h.as_constant() else {
        return Ok(None);
    };
    Ok(space_form_residual(s, r, &c).is_zero().then_some(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::riemann_tensor;
    use crate::spec_io::{builtin_fixture, parse_manifold_spec};

    fn setup(name: &str) -> (GffStructure, CurvatureTensor) {
        let s = GffStructure::new(&builtin_fixture(name).unwrap()).unwrap();
        let r = riemann_tensor(s.metric()).unwrap();
        (s, r)
    }

    #[test]
    fn example3_is_a_flat_phi_space_form() {
        let (s, r) = setup("example3");
        assert_eq!(detect_space_form(&s, &r).unwrap(), Some(rat(0, 1)));
        assert!(space_form_residual(&s, &r, &rat(0, 1)).is_zero());
        assert!(!space_form_residual(&s, &r, &rat(1, 1)).is_zero());
        assert!(!r.is_flat());
    }

    #[test]
    fn phi_sectional_curvature_of_s_c_is_c() {
        let (s, _) = setup("example1");
        let c = ScalarField::constant(s.vars(), rat(5, 3));
        let t = space_form_tensor(&s, &c);
        for x in s.distribution_frame() {
            let n = s.inner(&x, &x);
            if n.is_zero() {
                continue;
            }
            let px = s.apply_phi(&x);
            let v = super::super::riemann::contract4(&t, [&x, &px, &x, &px]);
            assert_eq!(v, &c * &n.pow(2));
        }
    }

    #[test]
    fn s_c_vanishes_on_the_kernel() {
        let (s, _) = setup("example2");
        let t = space_form_tensor(&s, &ScalarField::constant(s.vars(), rat(7, 1)));
        let xi = s.xi();
        for a in xi {
            for b in xi {
                assert!(super::super::riemann::contract4(&t, [a, b, a, b]).is_zero());
                assert!(super::super::riemann::contract4(&t, [a, b, b, a]).is_zero());
            }
        }
    }

    #[test]
    fn fixtures_one_and_two() {
        for name in ["example1", "example2"] {
            let (s, r) = setup(name);
            let c = detect_space_form(&s, &r).unwrap();
            let e = s.distribution_frame().into_iter().find(|e| !s.inner(e, e).is_zero()).unwrap();
            let h = phi_sectional_field(&s, &r, &e).unwrap();
            if let Some(c) = c {
                assert_eq!(h.as_constant(), Some(c));
            }
        }
    }

    #[test]
    fn no_candidate_when_the_distribution_is_null() {
        // φ has rank 2 but the metric makes Im φ totally null is impossible for
        // a compatible metric; a zero φ gives an empty 𝔇 instead
        let spec = parse_manifold_spec(
            "dim 3\nframe 1\ncoords x y z\nxi[1][3] = 1\neta[1][3] = 1\ng[1][1] = 1\ng[2][2] = 1\ng[3][3] = 1\n",
        )
        .unwrap();
        let s = GffStructure::new(&spec).unwrap();
        let r = riemann_tensor(s.metric()).unwrap();
        assert_eq!(detect_space_form(&s, &r), Err(Error::NoFrameCandidate));
    }
}
