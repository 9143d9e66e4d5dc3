use super::checks::{check_compatibility, check_f_axioms, fmt_point, phi_rank, sample_summary, SampleSummary};
use super::fmt_index;
use super::structure::GffStructure;
use crate::scalar::fmt_rational;
use crate::spec_io::{Classification, NamedValue, Report, Status, Verdict};
use crate::tensor::{normality_tensor, PForm, TensorField};

/// Axiom verdicts, the four structural flags and the resulting class.
#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub classification: Classification,
    pub epsilon: Vec<i32>,
    pub axioms_hold: bool,
    pub normal: bool,
    pub closed_phi: Option<bool>,
    pub closed_eta: bool,
    pub contact: Option<bool>,
    /// Axiom verdicts followed by the flag verdicts.
    pub verdicts: Vec<Verdict>,
    pub values: Vec<NamedValue>,
    pub normality: TensorField,
    pub samples: SampleSummary,
}

impl ClassificationReport {
    pub fn is_almost_s(&self) -> bool {
        self.axioms_hold && self.contact == Some(true)
    }

    pub fn is_s(&self) -> bool {
        self.classification.is_s()
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new(self.classification);
        r.epsilon = self.epsilon.clone();
        r.verdicts = self.verdicts.clone();
        r.values = self.values.clone();
        r
    }
}

fn form_witness(label: &str, w: &PForm) -> Option<String> {
    w.first_nonzero().map(|(t, v)| format!("{label}{} = {v}", fmt_index(t)))
}

/// Runs the axioms and computes dΦ, dη^α and the normality tensor N.
pub fn classify(s: &GffStructure) -> ClassificationReport {
    let mut verdicts = check_f_axioms(s);
    verdicts.extend(check_compatibility(s));
    let axioms_hold = verdicts.iter().all(|v| v.status == Status::Holds);

    let deta: Vec<PForm> = s.eta().iter().map(PForm::exterior_derivative).collect();
    let normality = normality_tensor(s.phi(), s.xi(), s.eta()).expect("(1,1) phi");
    let normal_w = normality
        .first_nonzero()
        .map(|(ix, v)| format!("N(d{}, d{})^{} = {v}", ix[1] + 1, ix[2] + 1, ix[0] + 1));
    let normal = normal_w.is_none();
    verdicts.push(Verdict::from_witness("class.normal", normal_w));

    let closed_eta_w = deta
        .iter()
        .enumerate()
        .find_map(|(a, d)| form_witness(&format!("d eta^{}", a + 1), d));
    let closed_eta = closed_eta_w.is_none();

    let (closed_phi, contact) = match s.fundamental_form() {
        Ok(big_phi) => {
            let dphi = big_phi.exterior_derivative();
            let w = form_witness("d Phi", &dphi);
            let closed = w.is_none();
            verdicts.push(Verdict::from_witness("class.closed_fundamental_form", w));
            let cw = deta
                .iter()
                .enumerate()
                .find_map(|(a, d)| form_witness(&format!("d eta^{} - Phi", a + 1), &d.sub(&big_phi)));
            let contact = cw.is_none();
            verdicts.push(Verdict::from_witness("class.closed_eta", closed_eta_w));
            verdicts.push(Verdict::from_witness("class.contact", cw));
            (Some(closed), Some(contact))
        }
        Err(_) => {
            let why = "precondition failed: phi is not skew-symmetric";
            verdicts.push(Verdict::skipped("class.closed_fundamental_form", why));
            verdicts.push(Verdict::from_witness("class.closed_eta", closed_eta_w));
            verdicts.push(Verdict::skipped("class.contact", why));
            (None, None)
        }
    };

    let classification = if !axioms_hold {
        Classification::NotGff
    } else if contact == Some(true) && normal {
        Classification::S
    } else if contact == Some(true) {
        Classification::AlmostS
    } else if normal && closed_phi == Some(true) && closed_eta {
        Classification::C
    } else if normal && closed_phi == Some(true) {
        Classification::K
    } else {
        Classification::MetricGff
    };

    let samples = sample_summary(s);
    verdicts.push(samples.distribution_even.clone());
    let mut values = Vec::new();
    let mut value = |name: &str, v: String| values.push(NamedValue { name: name.to_string(), value: v });
    value("dim", s.dim().to_string());
    value("frame", s.r().to_string());
    value("phi_rank", phi_rank(s).to_string());
    value("det_g", samples.det.to_string());
    value(
        "det_g_constant",
        samples.det.as_constant().map_or("no".to_string(), |c| format!("yes ({})", fmt_rational(&c))),
    );
    value(
        "sampled_index",
        samples.index().map_or("varies".to_string(), |q| q.to_string()),
    );
    for p in &samples.points {
        let sig = p
            .signature
            .map_or("degenerate".to_string(), |(a, b)| format!("({a},{b})"));
        let rank = p.phi_rank.map_or("undefined".to_string(), |k| k.to_string());
        value(
            &format!("sample {}", fmt_point(&p.point)),
            format!("signature {sig}, phi rank {rank}"),
        );
    }

    ClassificationReport {
        classification,
        epsilon: s.epsilon().to_vec(),
        axioms_hold,
        normal,
        closed_phi,
        closed_eta,
        contact,
        verdicts,
        values,
        normality,
        samples,
    }
}
