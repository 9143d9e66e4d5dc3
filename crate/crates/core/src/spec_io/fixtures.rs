//! The three built-in structures, written in the definition-file format.

use super::manifest::{parse_manifold_spec, ManifoldSpec};
use crate::error::{Error, Result};

pub const FIXTURE_NAMES: [&str; 3] = ["example1", "example2", "example3"];

/// R^6 with two timelike characteristic fields.
/// eta^a = dz^a - y1 dx1 - y2 dx2, g = -sum eta^a eta^a + 1/2 sum (dx^2 + dy^2).
pub const EXAMPLE1: &str = "\
dim 6
frame 2
coords x1 x2 y1 y2 z1 z2
phi[1][3] = 1
phi[2][4] = 1
phi[3][1] = -1
phi[4][2] = -1
phi[5][3] = y1
phi[5][4] = y2
phi[6][3] = y1
phi[6][4] = y2
xi[1][5] = 1
xi[2][6] = 1
eta[1][1] = -y1
eta[1][2] = -y2
eta[1][5] = 1
eta[2][1] = -y1
eta[2][2] = -y2
eta[2][6] = 1
g[1][1] = 1/2 - 2*y1^2
g[1][2] = -2*y1*y2
g[1][5] = y1
g[1][6] = y1
g[2][2] = 1/2 - 2*y2^2
g[2][5] = y2
g[2][6] = y2
g[3][3] = 1/2
g[4][4] = 1/2
g[5][5] = -1
g[6][6] = -1
";

/// R^6 with two spacelike characteristic fields, tau = (-1, +1).
/// eta^a = dz^a - sum tau_i y_i dx_i, g = sum eta^a eta^a + 1/2 sum tau_i (dx_i^2 + dy_i^2).
pub const EXAMPLE2: &str = "\
dim 6
frame 2
coords x1 x2 y1 y2 z1 z2
phi[1][3] = 1
phi[2][4] = 1
phi[3][1] = -1
phi[4][2] = -1
phi[5][3] = -y1
phi[5][4] = y2
phi[6][3] = -y1
phi[6][4] = y2
xi[1][5] = 1
xi[2][6] = 1
eta[1][1] = y1
eta[1][2] = -y2
eta[1][5] = 1
eta[2][1] = y1
eta[2][2] = -y2
eta[2][6] = 1
g[1][1] = 2*y1^2 - 1/2
g[1][2] = -2*y1*y2
g[1][5] = y1
g[1][6] = y1
g[2][2] = 2*y2^2 + 1/2
g[2][5] = -y2
g[2][6] = -y2
g[3][3] = -1/2
g[4][4] = 1/2
g[5][5] = 1
g[6][6] = 1
";

/// Lorentzian R^4 with one spacelike and one timelike characteristic field.
pub const EXAMPLE3: &str = "\
dim 4
frame 2
coords x y z1 z2
phi[1][2] = -1
phi[2][1] = 1
phi[3][2] = y
phi[4][2] = y
xi[1][3] = 1
xi[2][4] = 1
eta[1][1] = y
eta[1][3] = 1
eta[2][1] = y
eta[2][4] = 1
g[1][1] = 1/2
g[1][3] = y
g[1][4] = -y
g[2][2] = 1/2
g[3][3] = 1
g[4][4] = -1
";

pub fn fixture_source(name: &str) -> Result<&'static str> {
    match name {
        "example1" => Ok(EXAMPLE1),
        "example2" => Ok(EXAMPLE2),
        "example3" => Ok(EXAMPLE3),
        other => Err(Error::UnknownFixture(other.to_string())),
    }
}

pub fn builtin_fixture(name: &str) -> Result<ManifoldSpec> {
    parse_manifold_spec(fixture_source(name)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spec_io::parse_expression;

    #[test]
    fn all_fixtures_parse() {
        for name in FIXTURE_NAMES {
            let s = builtin_fixture(name).unwrap();
            assert!(s.metric.is_symmetric(), "{name}");
        }
    }

    #[test]
    fn example3_shape() {
        let s = builtin_fixture("example3").unwrap();
        assert_eq!((s.dim, s.r), (4, 2));
        assert_eq!(s.coords.names(), ["x", "y", "z1", "z2"]);
    }

    #[test]
    fn example1_forms() {
        let s = builtin_fixture("example1").unwrap();
        assert_eq!((s.dim, s.r), (6, 2));
        let minus_y1 = parse_expression("-y1", &s.coords).unwrap();
        for a in 0..2 {
            assert_eq!(s.eta[a][0], minus_y1);
            assert!(s.xi[a][4 + a].as_constant() == Some(crate::scalar::rat(1, 1)));
        }
    }

    #[test]
    fn example2_forms() {
        let s = builtin_fixture("example2").unwrap();
        // tau_1 = -1 flips the sign of the y1 dx1 term
        let y1 = parse_expression("y1", &s.coords).unwrap();
        let minus_y2 = parse_expression("-y2", &s.coords).unwrap();
        assert_eq!(s.eta[0][0], y1);
        assert_eq!(s.eta[1][1], minus_y2);
    }

    #[test]
    fn unknown_name() {
        assert_eq!(
            builtin_fixture("example4").unwrap_err(),
            Error::UnknownFixture("example4".into())
        );
    }

    #[test]
    fn canonical_text_round_trips() {
        for name in FIXTURE_NAMES {
            let s = builtin_fixture(name).unwrap();
            assert_eq!(parse_manifold_spec(&s.to_text()).unwrap(), s);
        }
    }
}
