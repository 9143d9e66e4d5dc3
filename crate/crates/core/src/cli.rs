//! Command runner shared by the `gffcheck` binary and the C interface.
//! Parsing of command-line flags lives in the binary; this module turns a
//! [`RunConfig`] into report text and an exit code.

use std::path::PathBuf;

use num_traits::Zero;

use crate::curvature::{levi_civita, CurvatureTensor, PointCurvature};
use crate::error::{Error, Result};
use crate::gff::GffStructure;
use crate::pipeline::{analyze, verify};
use crate::scalar::{fmt_rational, Rational, ScalarField};
use crate::spec_io::{
    builtin_fixture, parse_ast, parse_manifold_spec, parse_rational, Format, ManifoldSpec, Origin, Report, Value,
    Verdict,
};
use crate::tensor::VectorField;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Fixture(String),
    Path(PathBuf),
    /// Definition text supplied directly.
    Text(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Classify,
    Curvature,
    Verify,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub input: Input,
    pub command: Command,
    pub format: Format,
    /// `k=v,...` binding every coordinate, or `0` for the origin.
    pub point: Option<String>,
    /// `X=<vector>;Y=<vector>`, or `X=<vector>` alone for H(X).
    pub plane: Option<String>,
}

impl RunConfig {
    pub fn new(input: Input, command: Command) -> Self {
        RunConfig {
            input,
            command,
            format: Format::Text,
            point: None,
            plane: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn load(input: &Input) -> Result<ManifoldSpec> {
    match input {
        Input::Fixture(name) => builtin_fixture(name),
        Input::Path(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Io {
                path: p.display().to_string(),
                message: e.to_string(),
            })?;
            parse_manifold_spec(&text)
        }
        Input::Text(t) => parse_manifold_spec(t),
    }
}

/// Runs one command. Input and usage problems give exit code 2, a failed
/// verdict or an unusable plane gives 1.
pub fn run(cfg: &RunConfig) -> Outcome {
    let fail = |e: Error| Outcome {
        code: EXIT_INPUT,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    };
    let spec = match load(&cfg.input) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let s = match GffStructure::new(&spec) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let point = match cfg.point.as_deref().map(|p| parse_point(p, &s)).transpose() {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    let plane = match cfg.plane.as_deref().map(|p| parse_plane(p, &s)).transpose() {
        Ok(p) => p,
        Err(e) => return fail(e),
    };
    if plane.is_some() && cfg.command != Command::Curvature {
        return fail(Error::Usage("--plane applies to the curvature command".to_string()));
    }
    let result = match cfg.command {
        Command::Classify => analyze(&s).map(|a| {
            let ok = a.classification.axioms_hold;
            (a.report(), ok, String::new())
        }),
        Command::Verify => verify(&s).map(|r| {
            let ok = !r.any_failure();
            (r, ok, String::new())
        }),
        Command::Curvature => curvature_report(&s, point.as_deref(), plane.as_ref()),
    };
    match result {
        Err(e) => fail(e),
        Ok((report, ok, stderr)) => Outcome {
            code: if ok { EXIT_OK } else { EXIT_VERDICT },
            stdout: report.render(cfg.format),
            stderr,
        },
    }
}

/// `0` or `name=value,...` with every coordinate bound.
pub fn parse_point(text: &str, s: &GffStructure) -> Result<Vec<Rational>> {
    let vars = s.vars();
    let n = vars.len();
    if text.trim() == "0" {
        return Ok(vec![Rational::zero(); n]);
    }
    let mut point: Vec<Option<Rational>> = vec![None; n];
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Usage(format!("point entry `{part}` is not name=value")))?;
        let i = vars
            .index_of(name.trim())
            .ok_or_else(|| Error::UnknownCoordinate(name.trim().to_string()))?;
        let q = parse_rational(value).ok_or_else(|| Error::Usage(format!("`{value}` is not a rational number")))?;
        point[i] = Some(q);
    }
    let got = point.iter().filter(|p| p.is_some()).count();
    if got != n {
        return Err(Error::PointArity { expected: n, got });
    }
    Ok(point.into_iter().flatten().collect())
}

/// A vector expression over coordinates, the frame aliases `d<coord>` and
/// `Z1..Zr` for the characteristic fields.
pub fn parse_vector(text: &str, s: &GffStructure) -> Result<VectorField> {
    let vars = s.vars();
    let n = s.dim();
    let origin = Origin::default();
    let ast = parse_ast(text, origin)?;
    let lookup = |name: &str| -> Option<Value> {
        if let Ok(f) = ScalarField::var(vars, name) {
            return Some(Value::Scalar(f));
        }
        if let Some(i) = name.strip_prefix('d').and_then(|c| vars.index_of(c)) {
            return Some(Value::Vector(VectorField::coordinate(vars, n, i).comps().to_vec()));
        }
        let a: usize = name.strip_prefix('Z')?.parse().ok()?;
        s.xi().get(a.checked_sub(1)?).map(|x| Value::Vector(x.comps().to_vec()))
    };
    match ast.eval(vars, origin, &lookup)? {
        Value::Vector(v) => Ok(VectorField::new(v)),
        Value::Scalar(_) => Err(Error::Usage(format!("`{text}` is a scalar, expected a vector"))),
    }
}

/// `X=...;Y=...`; `Y` may be omitted to ask for H(X).
pub fn parse_plane(text: &str, s: &GffStructure) -> Result<(VectorField, Option<VectorField>)> {
    let mut x = None;
    let mut y = None;
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, expr) = part
            .split_once('=')
            .ok_or_else(|| Error::Usage(format!("plane entry `{part}` is not X=... or Y=...")))?;
        let v = parse_vector(expr.trim(), s)?;
        match name.trim() {
            "X" => x = Some(v),
            "Y" => y = Some(v),
            other => return Err(Error::Usage(format!("unknown plane vector `{other}`"))),
        }
    }
    let x = x.ok_or_else(|| Error::Usage("plane needs X=...".to_string()))?;
    Ok((x, y))
}

fn christoffel_name(k: usize, i: usize, j: usize, n: usize) -> String {
    if n < 10 {
        format!("Gamma^{}_{}{}", k + 1, i + 1, j + 1)
    } else {
        format!("Gamma^{}_{},{}", k + 1, i + 1, j + 1)
    }
}

fn is_plane_error(e: &Error) -> bool {
    matches!(
        e,
        Error::DegeneratePlane | Error::LinearlyDependent | Error::Lightlike | Error::NotInDistribution
    )
}

type CurvatureOutcome = (Report, bool, String);

fn curvature_report(
    s: &GffStructure,
    point: Option<&[Rational]>,
    plane: Option<&(VectorField, Option<VectorField>)>,
) -> Result<CurvatureOutcome> {
    let a = analyze(s)?;
    let mut report = a.report();
    report.verdicts.clear();
    report.values.clear();
    let mut stderr = String::new();
    if !a.classification.axioms_hold {
        stderr.push_str("warning: the g.f.f axioms do not hold; see `classify`\n");
    }
    let c = levi_civita(s.metric())?;
    report.extend(c.verify(s.metric()));
    let n = s.dim();
    for (k, i, j, v) in c.nonzero_symbols() {
        report.value(christoffel_name(k, i, j, n), v);
    }
    let r = match a.curvature {
        Some(r) => r,
        None => CurvatureTensor::from_connection(c, s.metric())?,
    };
    report.extend(r.symmetry_verdicts());
    report.value(
        "space_form_c",
        a.space_form_c.as_ref().map_or_else(|| "none".to_string(), fmt_rational),
    );

    let mut ok = a.classification.axioms_hold;
    if let Some((x, y)) = plane {
        match plane_values(s, &r, point, x, y.as_ref(), &mut report) {
            Ok(()) => {}
            Err(e) if is_plane_error(&e) => {
                report.push(Verdict::fails("plane.admissible", e.to_string()));
                stderr.push_str(&format!("error: {e}\n"));
            }
            Err(e) => return Err(e),
        }
    } else if let Some(p) = point {
        let pc = PointCurvature::new(s, &r, p)?;
        for (i, e) in s.distribution_frame().iter().enumerate() {
            let v = e.evaluate(p)?;
            if let Ok(h) = pc.phi_sectional(&v) {
                report.value(format!("H(-phi^2 d{})", s.vars().name(i)), fmt_rational(&h));
            }
        }
    }
    ok &= !report.any_failure();
    Ok((report, ok, stderr))
}

fn plane_values(
    s: &GffStructure,
    r: &CurvatureTensor,
    point: Option<&[Rational]>,
    x: &VectorField,
    y: Option<&VectorField>,
    report: &mut Report,
) -> Result<()> {
    match (point, y) {
        (Some(p), Some(y)) => {
            let pc = PointCurvature::new(s, r, p)?;
            let (xv, yv) = (x.evaluate(p)?, y.evaluate(p)?);
            let k = pc.sectional(&xv, &yv)?;
            report.value("K", fmt_rational(&k));
            match pc.reconstruct_sectional(&xv, &yv) {
                Ok(kr) => {
                    report.value("K_from_phi_sectional", fmt_rational(&kr));
                    report.push(Verdict::from_witness(
                        "plane.reconstruction",
                        (kr != k).then(|| format!("direct {} reconstructed {}", fmt_rational(&k), fmt_rational(&kr))),
                    ));
                }
                Err(e @ Error::ReconstructionInapplicable(_)) => {
                    report.push(Verdict::skipped("plane.reconstruction", e.to_string()));
                }
                Err(e) => return Err(e),
            }
        }
        (Some(p), None) => {
            let pc = PointCurvature::new(s, r, p)?;
            let h = pc.phi_sectional(&x.evaluate(p)?)?;
            report.value("H", fmt_rational(&h));
        }
        (None, Some(y)) => {
            let delta = &(&s.inner(x, x) * &s.inner(y, y)) - &s.inner(x, y).pow(2);
            if delta.is_zero() {
                return Err(Error::DegeneratePlane);
            }
            let k = r.eval(x, y, x, y).checked_div(&delta)?;
            report.value("K", k);
        }
        (None, None) => {
            report.value("H", crate::curvature::phi_sectional_field(s, r, x)?);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn structure(name: &str) -> GffStructure {
        GffStructure::new(&builtin_fixture(name).unwrap()).unwrap()
    }

    #[test]
    fn points_bind_every_coordinate() {
        let s = structure("example3");
        assert_eq!(parse_point("0", &s).unwrap(), vec![rat(0, 1); 4]);
        assert_eq!(
            parse_point("x=1, y=-1/2, z1=0, z2=3", &s).unwrap(),
            vec![rat(1, 1), rat(-1, 2), rat(0, 1), rat(3, 1)]
        );
        assert_eq!(parse_point("x=1", &s), Err(Error::PointArity { expected: 4, got: 1 }));
        assert!(matches!(parse_point("w=1", &s), Err(Error::UnknownCoordinate(_))));
    }

    #[test]
    fn vector_aliases() {
        let s = structure("example3");
        let v = parse_vector("dx - y*Z1 - y*Z2", &s).unwrap();
        let y = ScalarField::var(s.vars(), "y").unwrap();
        assert_eq!(v, &s.frame()[0] - &s.xi_bar().scale(&y));
        assert!(parse_vector("y", &s).is_err());
        assert!(parse_vector("Z3", &s).is_err());
    }

    #[test]
    fn plane_needs_x() {
        let s = structure("example1");
        assert!(parse_plane("Y=Z1", &s).is_err());
        assert!(parse_plane("X=Z1", &s).unwrap().1.is_none());
    }

    #[test]
    fn kernel_mixed_plane_on_example3() {
        let mut cfg = RunConfig::new(Input::Fixture("example3".into()), Command::Curvature);
        cfg.plane = Some("X=dx-y*Z1-y*Z2; Y=Z1".into());
        cfg.point = Some("x=0,y=0,z1=0,z2=0".into());
        let out = run(&cfg);
        assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
        assert!(out.stdout.contains("K = 1\n"), "{}", out.stdout);
        assert!(out.stdout.contains("Gamma^3_12 = 1/2"), "{}", out.stdout);
    }

    #[test]
    fn degenerate_plane_exits_one() {
        let mut cfg = RunConfig::new(Input::Fixture("example3".into()), Command::Curvature);
        cfg.plane = Some("X=Z1+Z2; Y=dx".into());
        cfg.point = Some("0".into());
        let out = run(&cfg);
        assert_eq!(out.code, EXIT_VERDICT);
        assert!(out.stderr.contains("degenerate plane"), "{}", out.stderr);
    }

    #[test]
    fn symbolic_plane_without_point() {
        let mut cfg = RunConfig::new(Input::Fixture("example1".into()), Command::Curvature);
        cfg.plane = Some("X=Z1;Y=Z2".into());
        let out = run(&cfg);
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.contains("K = 0\n"), "{}", out.stdout);
    }

    #[test]
    fn input_errors_exit_two() {
        let out = run(&RunConfig::new(Input::Path("missing.gff".into()), Command::Classify));
        assert_eq!(out.code, EXIT_INPUT);
        assert!(out.stderr.contains("missing.gff"));
        let out = run(&RunConfig::new(Input::Fixture("example9".into()), Command::Verify));
        assert_eq!(out.code, EXIT_INPUT);
        let mut cfg = RunConfig::new(Input::Fixture("example1".into()), Command::Classify);
        cfg.plane = Some("X=Z1".into());
        assert_eq!(run(&cfg).code, EXIT_INPUT);
    }
}
