//! Verdict reports and their text/JSON renderings.

use std::fmt::{self, Write as _};

use serde::{Serialize, Serializer};

use crate::scalar::{fmt_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Classification {
    NotGff,
    MetricGff,
    K,
    C,
    AlmostS,
    S,
    SSpaceForm,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::NotGff => "not-gff",
            Classification::MetricGff => "metric-gff",
            Classification::K => "K",
            Classification::C => "C",
            Classification::AlmostS => "almost-S",
            Classification::S => "S",
            Classification::SSpaceForm => "S-space-form",
        }
    }

    /// Normal and dη^α = Φ.
    pub fn is_s(self) -> bool {
        matches!(self, Classification::S | Classification::SSpaceForm)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Classification {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    /// `None` when the check was skipped.
    pub holds: Option<bool>,
    pub witness: Option<String>,
    pub status: Status,
}

impl Verdict {
    pub fn holds(name: impl Into<String>) -> Self {
        Verdict {
            name: name.into(),
            holds: Some(true),
            witness: None,
            status: Status::Holds,
        }
    }

    pub fn fails(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Verdict {
            name: name.into(),
            holds: Some(false),
            witness: Some(witness.into()),
            status: Status::Fails,
        }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Verdict {
            name: name.into(),
            holds: None,
            witness: Some(reason.into()),
            status: Status::Skipped,
        }
    }

    /// Holds when `witness` is `None`.
    pub fn from_witness(name: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => Verdict::holds(name),
            Some(w) => Verdict::fails(name, w),
        }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn is_failure(&self) -> bool {
        self.status == Status::Fails
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedValue {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub classification: Classification,
    #[serde(serialize_with = "ser_opt_rational")]
    pub space_form_c: Option<Rational>,
    pub verdicts: Vec<Verdict>,
    pub epsilon: Vec<i32>,
    pub values: Vec<NamedValue>,
}

fn ser_opt_rational<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&fmt_rational(q)),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl Report {
    pub fn new(classification: Classification) -> Self {
        Report {
            classification,
            space_form_c: None,
            verdicts: Vec::new(),
            epsilon: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn push(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    pub fn extend(&mut self, vs: impl IntoIterator<Item = Verdict>) {
        self.verdicts.extend(vs);
    }

    pub fn value(&mut self, name: impl Into<String>, value: impl fmt::Display) {
        self.values.push(NamedValue {
            name: name.into(),
            value: value.to_string(),
        });
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub fn any_failure(&self) -> bool {
        self.verdicts.iter().any(Verdict::is_failure)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => self.to_text(),
        }
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "classification: {}", self.classification).unwrap();
        let c = self
            .space_form_c
            .as_ref()
            .map_or_else(|| "none".to_string(), fmt_rational);
        writeln!(out, "space_form_c: {c}").unwrap();
        if !self.epsilon.is_empty() {
            let eps: Vec<String> = self.epsilon.iter().map(|e| format!("{e:+}")).collect();
            writeln!(out, "epsilon: ({})", eps.join(", ")).unwrap();
        }
        for v in &self.values {
            writeln!(out, "{} = {}", v.name, v.value).unwrap();
        }
        if !self.verdicts.is_empty() {
            writeln!(out, "verdicts:").unwrap();
        }
        for v in &self.verdicts {
            let tag = match v.status {
                Status::Holds => "holds",
                Status::Fails => "FAILS",
                Status::Skipped => "skipped",
            };
            match (&v.witness, v.status) {
                (Some(w), Status::Skipped) => {
                    writeln!(out, "  {}: {tag} ({w})", v.name).unwrap()
                }
                (Some(w), _) => writeln!(out, "  {}: {tag} [witness: {w}]", v.name).unwrap(),
                (None, _) => writeln!(out, "  {}: {tag}", v.name).unwrap(),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn empty_report_is_valid_json() {
        let r = Report::new(Classification::MetricGff);
        let v: serde_json::Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["classification"], "metric-gff");
        assert!(v["space_form_c"].is_null());
        assert_eq!(v["verdicts"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn space_form_constant_is_a_string() {
        let mut r = Report::new(Classification::SSpaceForm);
        r.space_form_c = Some(rat(-3, 2));
        r.push(Verdict::holds("normal"));
        r.push(Verdict::skipped("eq7", "precondition failed: not almost-S"));
        let v: serde_json::Value = serde_json::from_str(&r.render(Format::Json)).unwrap();
        assert_eq!(v["space_form_c"], "-3/2");
        assert_eq!(v["verdicts"][0]["holds"], true);
        assert!(v["verdicts"][1]["holds"].is_null());
        assert_eq!(v["verdicts"][1]["status"], "skipped");
    }

    #[test]
    fn deterministic_text() {
        let mut r = Report::new(Classification::S);
        r.epsilon = vec![-1, -1];
        r.push(Verdict::fails("eq7", "component (1,3,5) = 1/2"));
        assert_eq!(r.render(Format::Text), r.clone().render(Format::Text));
        assert!(r.render(Format::Text).contains("epsilon: (-1, -1)"));
        assert!(r.any_failure());
    }
}
