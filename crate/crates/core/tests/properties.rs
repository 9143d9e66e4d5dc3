use std::sync::OnceLock;

use gffcheck::curvature::{riemann_tensor, CurvatureTensor, PointCurvature};
use gffcheck::gff::GffStructure;
use gffcheck::scalar::{rat, Rational, ScalarField, SquareMatrix, Vars};
use gffcheck::spec_io::{builtin_fixture, Status};
use proptest::prelude::*;

fn small() -> impl Strategy<Value = i64> {
    -3i64..=3
}

fn rv(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x, 1)).collect()
}

struct Fixture {
    s: GffStructure,
    r: CurvatureTensor,
}

fn fixture(name: &'static str) -> &'static Fixture {
    static CELLS: [OnceLock<Fixture>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let idx = ["example1", "example2", "example3"].iter().position(|n| *n == name).unwrap();
    CELLS[idx].get_or_init(|| {
        let s = GffStructure::new(&builtin_fixture(name).unwrap()).unwrap();
        let r = riemann_tensor(s.metric()).unwrap();
        Fixture { s, r }
    })
}

// unipotent A with polynomial entries, D diagonal constant, g = AᵀDA
fn metric_strategy() -> impl Strategy<Value = SquareMatrix> {
    (2usize..=4)
        .prop_flat_map(|n| {
            let upper = n * (n - 1) / 2;
            (
                Just(n),
                prop::collection::vec(prop_oneof![Just(-2i64), Just(-1), Just(1), Just(2), Just(3)], n),
                prop::collection::vec((small(), small(), 0..n, 1u32..=2), upper),
            )
        })
        .prop_map(|(n, diag, upper)| {
            let names: Vec<String> = (0..n).map(|i| format!("u{i}")).collect();
            let vars = Vars::new(names.clone());
            let mut a = SquareMatrix::identity(&vars, n);
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let (c0, c1, k, p) = it.next().unwrap();
                    let x = ScalarField::var(&vars, &names[k]).unwrap();
                    a.set(i, j, &ScalarField::from_int(&vars, c0) + &x.pow(p).scale(&rat(c1, 1)));
                }
            }
            let d = SquareMatrix::from_fn(n, |i, j| {
                ScalarField::from_int(&vars, if i == j { diag[i] } else { 0 })
            });
            a.transpose().mul(&d).mul(&a)
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 25, ..ProptestConfig::default() })]

    #[test]
    fn curvature_symmetries_hold_for_random_metrics(g in metric_strategy()) {
        let r = riemann_tensor(&g).unwrap();
        for v in r.symmetry_verdicts() {
            prop_assert_eq!(v.status, Status::Holds, "{}", v.name);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, ..ProptestConfig::default() })]

    #[test]
    fn phi_sectional_is_scale_invariant(v in prop::collection::vec(small(), 6), t in 1i64..=5, neg in any::<bool>()) {
        let f = fixture("example1");
        let p = rv(&[0, 0, 1, -1, 0, 2]);
        let pc = PointCurvature::new(&f.s, &f.r, &p).unwrap();
        let x = pc.project(&rv(&v));
        if let Ok(h) = pc.phi_sectional(&x) {
            let k = rat(if neg { -t } else { t }, 1);
            let tx: Vec<Rational> = x.iter().map(|c| c * &k).collect();
            prop_assert_eq!(pc.phi_sectional(&tx).unwrap(), h);
        }
    }

    #[test]
    fn sectional_depends_only_on_the_plane(
        x in prop::collection::vec(small(), 4),
        y in prop::collection::vec(small(), 4),
        (a, b, c, d) in (small(), small(), small(), small()),
    ) {
        prop_assume!(a * d - b * c != 0);
        let f = fixture("example3");
        let pc = PointCurvature::new(&f.s, &f.r, &rv(&[1, -2, 0, 3])).unwrap();
        let (x, y) = (rv(&x), rv(&y));
        if let Ok(k) = pc.sectional(&x, &y) {
            let comb = |p: i64, q: i64| -> Vec<Rational> {
                x.iter().zip(&y).map(|(u, w)| u * rat(p, 1) + w * rat(q, 1)).collect()
            };
            prop_assert_eq!(pc.sectional(&comb(a, b), &comb(c, d)).unwrap(), k);
        }
    }

    #[test]
    fn reconstruction_agrees_with_direct_sectional(
        name in prop::sample::select(vec!["example1", "example2", "example3"]),
        x in prop::collection::vec(small(), 6),
        y in prop::collection::vec(small(), 6),
    ) {
        let f = fixture(name);
        let n = f.s.dim();
        let pc = PointCurvature::new(&f.s, &f.r, &vec![Rational::from_integer(0.into()); n]).unwrap();
        let (x, y) = (rv(&x[..n]), rv(&y[..n]));
        if let (Ok(k), Ok(kr)) = (pc.sectional(&x, &y), pc.reconstruct_sectional(&x, &y)) {
            prop_assert_eq!(kr, k);
        }
    }

    #[test]
    fn kernel_planes_have_curvature_epsilon(v in prop::collection::vec(small(), 4), alpha in 0usize..2) {
        let f = fixture("example3");
        let pc = PointCurvature::new(&f.s, &f.r, &rv(&[0, 1, 2, -1])).unwrap();
        let x = pc.project(&rv(&v));
        let xi = pc.xi(alpha).to_vec();
        if let Ok(k) = pc.sectional(&x, &xi) {
            prop_assert_eq!(k, rat(f.s.epsilon()[alpha] as i64, 1));
        }
    }

    #[test]
    fn field_arithmetic_is_distributive(p in prop::collection::vec(small(), 4), q in prop::collection::vec(small(), 4)) {
        let vars = Vars::new(["x", "y"]);
        let x = ScalarField::var(&vars, "x").unwrap();
        let y = ScalarField::var(&vars, "y").unwrap();
        let build = |c: &[i64]| {
            let mut e = ScalarField::from_int(&vars, c[0]);
            e = &e + &x.scale(&rat(c[1], 1));
            e = &e + &(&x * &y).scale(&rat(c[2], 1));
            &e + &y.pow(2).scale(&rat(c[3], 1))
        };
        let (a, b) = (build(&p), build(&q));
        let lhs = &(&a + &b) * &x;
        let rhs = &(&a * &x) + &(&b * &x);
        prop_assert_eq!(lhs, rhs);
        // Leibniz rule
        let d = (&a * &b).partial(0);
        prop_assert_eq!(d, &(&a.partial(0) * &b) + &(&a * &b.partial(0)));
    }
}
