//! One test per acceptance criterion. Each prints a single
//! `criterion N: PASS` or `criterion N: FAIL (...)` line before asserting.

use gffcheck::cli::{run, Command, Input, RunConfig, EXIT_VERDICT};
use gffcheck::curvature::{
    detect_space_form, levi_civita, phi_sectional_field, riemann_tensor,
    space_form_residual, PointCurvature,
};
use gffcheck::gff::{classify, GffStructure};
use gffcheck::pipeline::{reconstruction_verdicts, verify, MIN_PLANES};
use gffcheck::scalar::{rat, Polynomial, Rational, ScalarField, SquareMatrix, Vars};
use gffcheck::spec_io::{builtin_fixture, fixture_source, parse_expression, parse_manifold_spec, Classification, Status};
use gffcheck::tensor::{n2_via_d, PForm, VectorField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIXTURES: [&str; 3] = ["example1", "example2", "example3"];

struct Criterion {
    id: u32,
    problems: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    fn new(id: u32) -> Self {
        Criterion {
            id,
            problems: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.problems.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    fn finish(self) {
        for n in &self.notes {
            println!("  note: {n}");
        }
        if self.problems.is_empty() {
            println!("criterion {}: PASS", self.id);
        } else {
            println!("criterion {}: FAIL ({})", self.id, self.problems.join("; "));
        }
        assert!(self.problems.is_empty(), "criterion {} failed: {:?}", self.id, self.problems);
    }
}

fn structure(name: &str) -> GffStructure {
    GffStructure::new(&builtin_fixture(name).unwrap()).unwrap()
}

/// The characteristic polynomial of G against a displayed one.
enum PolyMatch {
    Exact,
    ConstantMultiple,
    Different,
}

fn compare_char_poly(g: &SquareMatrix, display: &str) -> PolyMatch {
    let cp = g.char_poly().unwrap();
    let vars: Vars = cp.vars().clone();
    let shown = parse_expression(display, &vars).unwrap();
    let shown: Polynomial = shown.as_polynomial().unwrap().clone();
    if shown == cp {
        PolyMatch::Exact
    } else if shown.monic() == cp.monic() {
        PolyMatch::ConstantMultiple
    } else {
        PolyMatch::Different
    }
}

fn det_is(s: &GffStructure, q: Rational) -> bool {
    s.metric().det().as_constant() == Some(q)
}

#[test]
fn criterion_01_example1_metric() {
    let mut c = Criterion::new(1);
    let s = structure("example1");
    c.check(det_is(&s, rat(1, 16)), "det G is not 1/16");
    let display = "-(1/2-lambda)^3*(1+lambda)*(lambda^2+(2*y1^2+2*y2^2+1/2)*lambda-1/2)";
    c.check(
        matches!(compare_char_poly(s.metric(), display), PolyMatch::Exact),
        "characteristic polynomial differs from the display",
    );
    let report = classify(&s);
    let pts = &report.samples.points;
    c.check(pts.len() >= 13, format!("only {} sample points", pts.len()));
    c.check(
        pts.iter().all(|p| p.signature == Some((4, 2))),
        "a sample point has signature other than (4,2)",
    );
    c.check(s.epsilon() == [-1, -1], format!("epsilon = {:?}", s.epsilon()));
    c.finish();
}

#[test]
fn criterion_02_example2_metric() {
    let mut c = Criterion::new(2);
    let s = structure("example2");
    c.check(det_is(&s, rat(1, 16)), "det G is not 1/16");
    let display = "-(1/2+lambda)^2*(1/2-lambda)*(lambda-1)*(lambda^2-(3/2+2*y1^2+2*y2^2)*lambda+1/2)";
    match compare_char_poly(s.metric(), display) {
        PolyMatch::Exact => {}
        PolyMatch::ConstantMultiple => c.note("display agrees with det(G - lambda I) only up to a constant factor"),
        PolyMatch::Different => {
            let cp = s.metric().char_poly().unwrap();
            c.check(false, format!("characteristic polynomial differs from the display: computed {cp}"));
        }
    }
    c.check(s.epsilon() == [1, 1], format!("epsilon = {:?}", s.epsilon()));
    let class = classify(&s).classification;
    c.check(class == Classification::S, format!("classification {class}"));
    c.finish();
}

#[test]
fn criterion_03_example3_metric() {
    let mut c = Criterion::new(3);
    let s = structure("example3");
    c.check(det_is(&s, rat(-1, 4)), "det G is not -1/4");
    let display = "(1/2-lambda)*(lambda^3-1/2*lambda^2-(2*y^2+1)*lambda+1/2)";
    match compare_char_poly(s.metric(), display) {
        PolyMatch::Exact => {}
        PolyMatch::ConstantMultiple => {
            let cp = s.metric().char_poly().unwrap();
            let shown = parse_expression(display, cp.vars()).unwrap();
            let sign = if shown.as_polynomial() == Some(&cp.scale(&rat(-1, 1))) { "-1" } else { "a constant" };
            c.note(format!("display equals {sign} times det(G - lambda I): same eigenvalues"));
        }
        PolyMatch::Different => c.check(false, "characteristic polynomial differs from the display"),
    }
    let report = classify(&s);
    c.check(report.samples.index() == Some(1), format!("sampled index {:?}", report.samples.index()));
    c.check(s.epsilon() == [1, -1], format!("epsilon = {:?}", s.epsilon()));
    c.check(
        report.classification == Classification::S,
        format!("classification {}", report.classification),
    );
    c.finish();
}

#[test]
fn criterion_04_example3_christoffel_table() {
    let mut c = Criterion::new(4);
    let s = structure("example3");
    let conn = levi_civita(s.metric()).unwrap();
    let v = s.vars();
    let f = |e: &str| parse_expression(e, v).unwrap();
    // (k, i, j) 1-based with i <= j, as displayed
    let table = [
        (3, 1, 2, "1/2"),
        (4, 1, 2, "1/2"),
        (2, 1, 3, "-1"),
        (2, 1, 4, "1"),
        (1, 2, 3, "1"),
        (1, 2, 4, "-1"),
        (3, 2, 3, "-y"),
        (4, 2, 3, "-y"),
        (3, 2, 4, "y"),
        (4, 2, 4, "y"),
    ];
    let mut expected: Vec<(usize, usize, usize, ScalarField)> =
        table.iter().map(|&(k, i, j, e)| (k - 1, i - 1, j - 1, f(e))).collect();
    expected.sort_by_key(|t| (t.0, t.1, t.2));
    let mut got = conn.nonzero_symbols();
    got.sort_by_key(|t| (t.0, t.1, t.2));
    c.check(got == expected, format!("computed table {got:?}"));
    for k in 0..4 {
        for i in 0..4 {
            for j in 0..4 {
                let (a, b) = (i.min(j), i.max(j));
                let listed = expected.iter().find(|t| (t.0, t.1, t.2) == (k, a, b));
                let want = listed.map_or_else(|| ScalarField::zero(v), |t| t.3.clone());
                c.check(*conn.christoffel(k, i, j) == want, format!("Gamma^{}_{}{}", k + 1, i + 1, j + 1));
            }
        }
    }
    c.note(format!(
        "{} distinct nonzero symbols with i <= j ({} counting Gamma^k_ij and Gamma^k_ji separately)",
        expected.len(),
        2 * expected.len()
    ));
    c.finish();
}

fn example3_x(s: &GffStructure) -> VectorField {
    let y = parse_expression("y", s.vars()).unwrap();
    &s.frame()[0] - &s.xi_bar().scale(&y)
}

#[test]
fn criterion_05_example3_phi_sectional_and_space_form() {
    let mut c = Criterion::new(5);
    let s = structure("example3");
    let r = riemann_tensor(s.metric()).unwrap();
    let x = example3_x(&s);
    let px = s.apply_phi(&x);
    c.check(s.inner(&x, &x) == ScalarField::constant(s.vars(), rat(1, 2)), "g(X,X) is not 1/2");
    c.check(r.apply(&x, &px, &x).is_zero(), "R(X,phi X)X is not zero");
    let h = phi_sectional_field(&s, &r, &x).unwrap();
    c.check(h.is_zero(), format!("H(X) = {h}"));
    let sf = detect_space_form(&s, &r).unwrap();
    c.check(sf == Some(rat(0, 1)), format!("detect_space_form = {sf:?}"));
    let res = space_form_residual(&s, &r, &rat(0, 1));
    c.check(res.comps().len() == 256, "residual does not have 256 components");
    c.check(res.comps().iter().all(ScalarField::is_zero), "R - S(0) has a nonzero component");
    c.finish();
}

#[test]
fn criterion_06_normality_and_contact_on_fixtures() {
    let mut c = Criterion::new(6);
    for name in FIXTURES {
        let s = structure(name);
        let report = classify(&s);
        c.check(report.normality.is_zero(), format!("{name}: N is not zero"));
        let big_phi = s.fundamental_form().unwrap();
        for (a, eta) in s.eta().iter().enumerate() {
            let d: PForm = eta.exterior_derivative();
            c.check(d.sub(&big_phi).is_zero(), format!("{name}: d eta^{} differs from Phi", a + 1));
            let n2 = n2_via_d(s.phi(), eta).unwrap();
            c.check(n2.is_zero(), format!("{name}: N2_{} is not zero", a + 1));
        }
        c.check(report.classification == Classification::S, format!("{name}: {}", report.classification));
    }
    c.finish();
}

#[test]
fn criterion_07_identity_suites() {
    let mut c = Criterion::new(7);
    let required = [
        "almost_s.koszul_phi",
        "almost_s.xi_parallel_phi",
        "almost_s.xi_geodesic",
        "h.vanishes",
        "almost_s.nabla_xi",
        "s.nabla_xi",
        "s.nabla_phi",
        "s.nabla_phi_expanded",
        "s.nabla_fundamental_form",
        "almost_s.phi_pair",
        "almost_s.phi_pair_distribution",
        "killing.xi",
        "killing.lie_xi_eta",
        "curvature.phi_commutator",
        "curvature.kernel_on_distribution",
        "curvature.distribution_kernel",
        "curvature.kernel_mixed",
    ];
    for name in FIXTURES {
        let report = verify(&structure(name)).unwrap();
        for v in &report.verdicts {
            c.check(v.status != Status::Fails, format!("{name}: {} fails ({:?})", v.name, v.witness));
        }
        for id in required {
            let st = report.verdict(id).map(|v| v.status);
            c.check(st == Some(Status::Holds), format!("{name}: {id} is {st:?}"));
        }
        let q = report.verdict("q.kernel_pairs").map(|v| v.status);
        if name == "example3" {
            c.check(q == Some(Status::Holds), format!("example3: q.kernel_pairs is {q:?}"));
        }
    }
    c.finish();
}

/// g = AᵀDA with A unipotent upper triangular and polynomial, so det g is
/// the nonzero constant det D.
fn random_metric(rng: &mut ChaCha8Rng) -> SquareMatrix {
    let n = rng.gen_range(2..=4);
    let names: Vec<String> = (0..n).map(|i| format!("u{i}")).collect();
    let vars = Vars::new(names.clone());
    let mut a = SquareMatrix::identity(&vars, n);
    for i in 0..n {
        for j in i + 1..n {
            let mut e = ScalarField::from_int(&vars, rng.gen_range(-2..=2));
            for k in 0..n {
                if rng.gen_bool(0.4) {
                    let x = ScalarField::var(&vars, &names[k]).unwrap();
                    e = &e + &x.pow(rng.gen_range(1..=2)).scale(&rat(rng.gen_range(-2..=2), 1));
                }
            }
            a.set(i, j, e);
        }
    }
    let d = SquareMatrix::from_fn(n, |i, j| {
        if i == j {
            let v = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
            ScalarField::from_int(&vars, v)
        } else {
            ScalarField::zero(&vars)
        }
    });
    a.transpose().mul(&d).mul(&a)
}

#[test]
fn criterion_08_curvature_symmetries() {
    let mut c = Criterion::new(8);
    for name in FIXTURES {
        let r = riemann_tensor(structure(name).metric()).unwrap();
        for v in r.symmetry_verdicts() {
            c.check(v.status == Status::Holds, format!("{name}: {} ({:?})", v.name, v.witness));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut curved = 0;
    let count = 30;
    for k in 0..count {
        let g = random_metric(&mut rng);
        match riemann_tensor(&g) {
            Ok(r) => {
                curved += usize::from(!r.is_flat());
                for v in r.symmetry_verdicts() {
                    c.check(v.status == Status::Holds, format!("random metric {k}: {}", v.name));
                }
            }
            Err(e) => c.check(false, format!("random metric {k}: {e}")),
        }
    }
    c.note(format!("{count} random metrics, {curved} with nonzero curvature"));
    c.check(curved > 0, "every random metric was flat");
    c.finish();
}

#[test]
fn criterion_09_reconstruction() {
    let mut c = Criterion::new(9);
    for name in FIXTURES {
        let s = structure(name);
        let r = riemann_tensor(s.metric()).unwrap();
        let (vs, (d, m)) = reconstruction_verdicts(&s, &r);
        c.check(d >= MIN_PLANES, format!("{name}: {d} distribution planes"));
        c.check(m >= MIN_PLANES, format!("{name}: {m} mixed planes"));
        for v in vs {
            c.check(v.status == Status::Holds, format!("{name}: {} ({:?})", v.name, v.witness));
        }
        c.note(format!("{name}: {d} distribution planes and {m} mixed planes compared"));
    }
    let s = structure("example3");
    let r = riemann_tensor(s.metric()).unwrap();
    let p = [rat(1, 2), rat(-3, 1), rat(0, 1), rat(5, 1)];
    let pc = PointCurvature::new(&s, &r, &p).unwrap();
    let x = example3_x(&s).evaluate(&p).unwrap();
    for (a, e) in s.epsilon().iter().enumerate() {
        let k = pc.sectional(&x, pc.xi(a)).unwrap();
        c.check(k == rat(*e as i64, 1), format!("K(X, xi_{}) = {k}", a + 1));
        let kr = pc.reconstruct_sectional(&x, pc.xi(a)).unwrap();
        c.check(kr == k, format!("reconstructed K(X, xi_{}) = {kr}", a + 1));
    }
    c.finish();
}

#[test]
fn criterion_10_negative_controls() {
    let mut c = Criterion::new(10);
    // the 𝔇 block of the Example 1 metric doubled
    let text = fixture_source("example1")
        .unwrap()
        .replace("g[1][1] = 1/2 - 2*y1^2", "g[1][1] = 1 - 2*y1^2")
        .replace("g[2][2] = 1/2 - 2*y2^2", "g[2][2] = 1 - 2*y2^2")
        .replace("g[3][3] = 1/2", "g[3][3] = 1")
        .replace("g[4][4] = 1/2", "g[4][4] = 1");
    let s = GffStructure::new(&parse_manifold_spec(&text).unwrap()).unwrap();
    let conn = levi_civita(s.metric()).unwrap();
    let vs = gffcheck::curvature::check_s_identities(&s, &conn);
    match vs.iter().find(|v| v.name == "s.nabla_phi") {
        Some(v) if v.status == Status::Fails => {
            let w = v.witness.clone().unwrap_or_default();
            c.check(w.contains('(') && w.contains("component"), format!("witness not localized: {w}"));
            c.note(format!("perturbed metric witness: {w}"));
        }
        other => c.check(false, format!("perturbed metric: {other:?}")),
    }

    let s3 = structure("example3");
    let r = riemann_tensor(s3.metric()).unwrap();
    c.check(!space_form_residual(&s3, &r, &rat(1, 1)).is_zero(), "R - S(1) vanishes on example3");

    let mut cfg = RunConfig::new(Input::Fixture("example3".into()), Command::Curvature);
    cfg.plane = Some("X=Z1+Z2; Y=dx".into());
    cfg.point = Some("0".into());
    let out = run(&cfg);
    c.check(out.code == EXIT_VERDICT, format!("degenerate plane exit code {}", out.code));
    let bin = std::process::Command::new(env!("CARGO_BIN_EXE_gffcheck"))
        .args(["curvature", "--fixture", "example3", "--plane", "X=Z1+Z2;Y=dx", "--point", "0"])
        .output()
        .unwrap();
    c.check(bin.status.code() == Some(1), format!("binary exit code {:?}", bin.status.code()));
    c.check(
        String::from_utf8_lossy(&bin.stderr).contains("degenerate plane"),
        "binary did not report the degenerate plane",
    );
    c.finish();
}
