//! Line-oriented manifold definition documents.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::Zero;

use super::expr::{parse_expression_at, Origin};
use crate::error::{Error, Result};
use crate::scalar::{Rational, ScalarField, SquareMatrix, Vars};

/// Raw structure data on one chart, as read from a definition file.
#[derive(Clone, Debug, PartialEq)]
pub struct ManifoldSpec {
    pub dim: usize,
    pub coords: Vars,
    pub r: usize,
    /// Column convention: `phi.get(i, j)` is the i-th component of φ(∂_j).
    pub phi: SquareMatrix,
    pub xi: Vec<Vec<ScalarField>>,
    pub eta: Vec<Vec<ScalarField>>,
    pub metric: SquareMatrix,
    /// Explicit sample points; empty means "use the defaults".
    pub sample_points: Vec<Vec<Rational>>,
}

impl ManifoldSpec {
    /// The explicit sample points, or the origin together with the 2·dim
    /// points having one coordinate equal to ±1.
    pub fn effective_sample_points(&self) -> Vec<Vec<Rational>> {
        if !self.sample_points.is_empty() {
            return self.sample_points.clone();
        }
        default_sample_points(self.dim)
    }

    pub fn zero_field(&self) -> ScalarField {
        ScalarField::zero(&self.coords)
    }

    /// Canonical text form, readable by [`parse_manifold_spec`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let n = self.dim;
        writeln!(out, "dim {n}").unwrap();
        writeln!(out, "frame {}", self.r).unwrap();
        writeln!(out, "coords {}", self.coords.names().join(" ")).unwrap();
        for i in 0..n {
            for j in 0..n {
                let e = self.phi.get(i, j);
                if !e.is_zero() {
                    writeln!(out, "phi[{}][{}] = {}", i + 1, j + 1, poly_text(e)).unwrap();
                }
            }
        }
        for (name, rows) in [("xi", &self.xi), ("eta", &self.eta)] {
            for (a, row) in rows.iter().enumerate() {
                for (i, e) in row.iter().enumerate() {
                    if !e.is_zero() {
                        writeln!(out, "{name}[{}][{}] = {}", a + 1, i + 1, poly_text(e)).unwrap();
                    }
                }
            }
        }
        for i in 0..n {
            for j in i..n {
                let e = self.metric.get(i, j);
                if !e.is_zero() {
                    writeln!(out, "g[{}][{}] = {}", i + 1, j + 1, poly_text(e)).unwrap();
                }
            }
        }
        for p in &self.sample_points {
            let binds: Vec<String> = self
                .coords
                .names()
                .iter()
                .zip(p)
                .map(|(c, q)| format!("{c}={}", crate::scalar::fmt_rational(q)))
                .collect();
            writeln!(out, "sample {}", binds.join(" ")).unwrap();
        }
        out
    }
}

fn poly_text(f: &ScalarField) -> String {
    match f.as_polynomial() {
        Some(p) => p.to_string(),
        None => f.to_string(),
    }
}

pub fn default_sample_points(dim: usize) -> Vec<Vec<Rational>> {
    let mut pts = vec![vec![Rational::zero(); dim]];
    for i in 0..dim {
        for s in [1, -1] {
            let mut p = vec![Rational::zero(); dim];
            p[i] = Rational::from_integer(s.into());
            pts.push(p);
        }
    }
    pts
}

fn malformed(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Malformed(format!("line {line}: {msg}"))
}

/// Parses `name[a][b] = rest`, returning the name, the two 1-based indices
/// and the byte offset of `rest`.
fn split_entry(line: &str, lineno: usize) -> Result<(String, usize, usize, usize)> {
    let eq = line
        .find('=')
        .ok_or_else(|| malformed(lineno, "expected `=`"))?;
    let lhs = line[..eq].trim();
    let open = lhs
        .find('[')
        .ok_or_else(|| malformed(lineno, format!("expected an indexed entry, got `{lhs}`")))?;
    let name = lhs[..open].trim().to_string();
    let mut idx = Vec::new();
    let mut rest = &lhs[open..];
    while !rest.is_empty() {
        let close = rest
            .find(']')
            .filter(|_| rest.starts_with('['))
            .ok_or_else(|| malformed(lineno, format!("bad index syntax in `{lhs}`")))?;
        let k: usize = rest[1..close]
            .trim()
            .parse()
            .map_err(|_| malformed(lineno, format!("bad index `{}`", &rest[1..close])))?;
        if k == 0 {
            return Err(malformed(lineno, "indices are 1-based"));
        }
        idx.push(k);
        rest = rest[close + 1..].trim_start();
    }
    if idx.len() != 2 {
        return Err(malformed(lineno, format!("`{name}` takes two indices")));
    }
    let rhs_start = eq + 1 + (line[eq + 1..].len() - line[eq + 1..].trim_start().len());
    Ok((name, idx[0], idx[1], rhs_start))
}

struct Header {
    dim: usize,
    r: usize,
    coords: Vars,
}

/// Parses a manifold definition document.
pub fn parse_manifold_spec(text: &str) -> Result<ManifoldSpec> {
    let mut dim = None;
    let mut r = None;
    let mut coords: Option<Vars> = None;
    let mut header: Option<Header> = None;
    let mut phi = BTreeMap::new();
    let mut xi = BTreeMap::new();
    let mut eta = BTreeMap::new();
    let mut g: BTreeMap<(usize, usize), ScalarField> = BTreeMap::new();
    let mut samples = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let lineno = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let line = content.trim();
        if line.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let (word, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match word {
            "dim" | "frame" => {
                let v: usize = rest
                    .parse()
                    .map_err(|_| malformed(lineno, format!("`{word}` expects a non-negative integer")))?;
                let slot = if word == "dim" { &mut dim } else { &mut r };
                if slot.replace(v).is_some() {
                    return Err(malformed(lineno, format!("duplicate `{word}`")));
                }
            }
            "coords" => {
                let names: Vec<&str> = rest.split_whitespace().collect();
                for (i, n) in names.iter().enumerate() {
                    let valid = n.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                        && n.chars().all(|c| c.is_alphanumeric() || c == '_');
                    if !valid {
                        return Err(malformed(lineno, format!("invalid coordinate name `{n}`")));
                    }
                    if names[..i].contains(n) {
                        return Err(malformed(lineno, format!("duplicate coordinate `{n}`")));
                    }
                }
                if coords.replace(Vars::new(names)).is_some() {
                    return Err(malformed(lineno, "duplicate `coords`"));
                }
            }
            "sample" => {
                let h = require_header(&mut header, dim, r, &coords, lineno)?;
                let mut p = vec![None; h.dim];
                for bind in rest.split_whitespace() {
                    let (name, val) = bind
                        .split_once('=')
                        .ok_or_else(|| malformed(lineno, format!("expected name=value, got `{bind}`")))?;
                    let i = h
                        .coords
                        .index_of(name)
                        .ok_or_else(|| Error::UnknownIdentifier {
                            name: name.to_string(),
                            line: lineno,
                            column: indent + 1 + line.find(bind).unwrap_or(0),
                        })?;
                    let q = parse_rational(val).ok_or_else(|| {
                        malformed(lineno, format!("`{val}` is not an exact rational"))
                    })?;
                    if p[i].replace(q).is_some() {
                        return Err(malformed(lineno, format!("`{name}` bound twice")));
                    }
                }
                samples.push(p.into_iter().map(|q| q.unwrap_or_else(Rational::zero)).collect());
            }
            _ => {
                let h = require_header(&mut header, dim, r, &coords, lineno)?;
                let (name, a, b, rhs_at) = split_entry(line, lineno)?;
                let origin = Origin {
                    line: lineno,
                    column: indent + rhs_at + 1,
                };
                let value = parse_expression_at(&line[rhs_at..], &h.coords, origin)?;
                let (map, rows, cols) = match name.as_str() {
                    "phi" => (&mut phi, h.dim, h.dim),
                    "xi" => (&mut xi, h.r, h.dim),
                    "eta" => (&mut eta, h.r, h.dim),
                    "g" => (&mut g, h.dim, h.dim),
                    other => return Err(malformed(lineno, format!("unknown entry `{other}`"))),
                };
                if a > rows || b > cols {
                    return Err(Error::DimensionMismatch(format!(
                        "line {lineno}: {name}[{a}][{b}] is outside {rows}x{cols}"
                    )));
                }
                if map.insert((a - 1, b - 1), value).is_some() {
                    return Err(malformed(lineno, format!("duplicate entry {name}[{a}][{b}]")));
                }
            }
        }
    }

    require_header(&mut header, dim, r, &coords, text.lines().count())?;
    let h = header.expect("checked above");
    let zero = ScalarField::zero(&h.coords);
    let n = h.dim;

    // lower-triangle entries are accepted only as mirrors of upper ones
    for (&(i, j), v) in &g {
        if i > j {
            let mirror = g.get(&(j, i)).cloned().unwrap_or_else(|| zero.clone());
            if *v != mirror {
                return Err(Error::AsymmetricMetric {
                    i: i.min(j) + 1,
                    j: i.max(j) + 1,
                });
            }
        }
    }
    let metric = SquareMatrix::from_fn(n, |i, j| {
        g.get(&(i.min(j), i.max(j)))
            .or_else(|| g.get(&(i.max(j), i.min(j))))
            .cloned()
            .unwrap_or_else(|| zero.clone())
    });
    let phi = SquareMatrix::from_fn(n, |i, j| phi.get(&(i, j)).cloned().unwrap_or_else(|| zero.clone()));
    let rows = |m: &BTreeMap<(usize, usize), ScalarField>| -> Vec<Vec<ScalarField>> {
        (0..h.r)
            .map(|a| (0..n).map(|i| m.get(&(a, i)).cloned().unwrap_or_else(|| zero.clone())).collect())
            .collect()
    };
    Ok(ManifoldSpec {
        dim: n,
        r: h.r,
        phi,
        xi: rows(&xi),
        eta: rows(&eta),
        metric,
        coords: h.coords,
        sample_points: samples,
    })
}

fn require_header<'a>(
    header: &'a mut Option<Header>,
    dim: Option<usize>,
    r: Option<usize>,
    coords: &Option<Vars>,
    lineno: usize,
) -> Result<&'a Header> {
    if header.is_none() {
        let (Some(dim), Some(r), Some(coords)) = (dim, r, coords.clone()) else {
            return Err(malformed(
                lineno,
                "`dim`, `frame` and `coords` must precede the component entries",
            ));
        };
        if dim == 0 {
            return Err(Error::DimensionMismatch("dim must be positive".into()));
        }
        if coords.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "dim is {dim} but {} coordinates are declared",
                coords.len()
            )));
        }
        if r >= dim || (dim - r) % 2 != 0 {
            return Err(Error::InvalidFrame { r, dim });
        }
        *header = Some(Header { dim, r, coords });
    }
    Ok(header.as_ref().expect("set above"))
}

/// Reads `p` or `p/q` with an optional leading minus sign.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let valid = |t: &str| !t.is_empty() && t.chars().all(|c| c.is_ascii_digit());
    let q = match body.split_once('/') {
        Some((n, d)) if valid(n) && valid(d) => {
            let d: num_bigint::BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Rational::new(n.parse().ok()?, d)
        }
        None if valid(body) => Rational::from_integer(body.parse().ok()?),
        _ => return None,
    };
    Some(if neg { -q } else { q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    const SMALL: &str = "\
dim 3
frame 1
coords x y z
# a contact-like structure on R^3
phi[1][2] = -1
phi[2][1] = 1
phi[3][2] = y
xi[1][3] = 1
eta[1][1] = y
eta[1][3] = 1
g[1][1] = 1 + y^2
g[1][3] = y
g[2][2] = 1
g[3][3] = 1
sample x=1 y=-1/2
";

    #[test]
    fn parses_small_document() {
        let s = parse_manifold_spec(SMALL).unwrap();
        assert_eq!(s.dim, 3);
        assert_eq!(s.r, 1);
        assert_eq!(s.metric.get(2, 0), s.metric.get(0, 2));
        assert_eq!(s.sample_points, vec![vec![rat(1, 1), rat(-1, 2), rat(0, 1)]]);
        assert!(s.phi.get(0, 1).as_constant() == Some(rat(-1, 1)));
    }

    #[test]
    fn round_trip() {
        let s = parse_manifold_spec(SMALL).unwrap();
        let again = parse_manifold_spec(&s.to_text()).unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn asymmetric_metric_rejected() {
        let bad = SMALL.replace("g[1][3] = y", "g[3][1] = y");
        assert_eq!(
            parse_manifold_spec(&bad).unwrap_err(),
            Error::AsymmetricMetric { i: 1, j: 3 }
        );
        let mismatched = format!("{SMALL}g[3][1] = 2*y\n");
        assert!(matches!(
            parse_manifold_spec(&mismatched),
            Err(Error::AsymmetricMetric { .. })
        ));
        let mirrored = format!("{SMALL}g[3][1] = y\n");
        assert!(parse_manifold_spec(&mirrored).is_ok());
    }

    #[test]
    fn frame_must_leave_even_positive_rank() {
        let bad = SMALL.replace("frame 1", "frame 3");
        assert!(matches!(parse_manifold_spec(&bad), Err(Error::InvalidFrame { .. })));
        let odd = SMALL.replace("frame 1", "frame 2");
        assert!(matches!(parse_manifold_spec(&odd), Err(Error::InvalidFrame { .. })));
    }

    #[test]
    fn coordinate_count_must_match() {
        let bad = SMALL.replace("coords x y z", "coords x y");
        assert!(matches!(parse_manifold_spec(&bad), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn expression_errors_carry_file_position() {
        let bad = SMALL.replace("g[2][2] = 1", "g[2][2] = 1 + w");
        match parse_manifold_spec(&bad).unwrap_err() {
            Error::UnknownIdentifier { name, line, column } => {
                assert_eq!(name, "w");
                assert_eq!(line, 13);
                assert_eq!(column, 15);
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn index_out_of_range() {
        let bad = format!("{SMALL}phi[4][1] = 1\n");
        assert!(matches!(parse_manifold_spec(&bad), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn default_samples() {
        let pts = default_sample_points(6);
        assert_eq!(pts.len(), 13);
        assert!(pts[0].iter().all(|q| q.is_zero()));
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("-3/4"), Some(rat(-3, 4)));
        assert_eq!(parse_rational("7"), Some(rat(7, 1)));
        assert_eq!(parse_rational("0.5"), None);
        assert_eq!(parse_rational("1/0"), None);
    }
}
