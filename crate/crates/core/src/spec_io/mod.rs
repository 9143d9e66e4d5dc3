//! Definition files, built-in fixtures and report serialization.

mod expr;
mod fixtures;
mod manifest;
mod report;

pub use expr::{parse_ast, parse_expression, parse_expression_at, Expr, Origin, Value};
pub use fixtures::{builtin_fixture, fixture_source, FIXTURE_NAMES};
pub use manifest::{default_sample_points, parse_manifold_spec, parse_rational, ManifoldSpec};
pub use report::{Classification, Format, NamedValue, Report, Status, Verdict};
