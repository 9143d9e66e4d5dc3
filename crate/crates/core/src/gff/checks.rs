use super::structure::{GffStructure, HOperator};
use super::{fmt_index, scalar_witness, vector_witness};
use crate::scalar::{rational_rank, signature, Rational, ScalarField, SquareMatrix};
use crate::spec_io::Verdict;
use crate::tensor::{lie_bracket, lie_derivative, lie_derivative_form, n2_via_d, n2_via_lie, TensorField, VectorField};

fn matrix_witness(label: &str, m: &SquareMatrix) -> Option<String> {
    let n = m.dim();
    scalar_witness(
        label,
        (0..n).flat_map(|i| (0..n).map(move |j| (vec![i, j], m.get(i, j).clone()))),
    )
}

fn eta_row(s: &GffStructure, a: usize) -> Vec<ScalarField> {
    (0..s.dim()).map(|i| s.eta()[a].component(&[i])).collect()
}

/// Generic rank of φ over the rational-function field.
pub fn phi_rank(s: &GffStructure) -> usize {
    s.phi_matrix().rank()
}

/// φ³ + φ = 0, rank φ = dim − r, φξ_α = 0, η^α(ξ_β) = δ^α_β, η^α ∘ φ = 0.
pub fn check_f_axioms(s: &GffStructure) -> Vec<Verdict> {
    let f = s.phi_matrix();
    let f3 = f.mul(f).mul(f).add(f);
    let mut out = vec![Verdict::from_witness(
        "axiom.phi_cubed_plus_phi",
        matrix_witness("phi^3 + phi", &f3),
    )];

    let rank = phi_rank(s);
    let expected = s.dim() - s.r();
    out.push(if rank == expected {
        Verdict::holds("axiom.phi_rank")
    } else {
        Verdict::fails("axiom.phi_rank", format!("generic rank {rank}, expected {expected}"))
    });

    out.push(Verdict::from_witness(
        "axiom.phi_xi",
        vector_witness(
            "phi(xi)",
            s.xi().iter().enumerate().map(|(a, x)| (vec![a], s.apply_phi(x))),
        ),
    ));

    let r = s.r();
    out.push(Verdict::from_witness(
        "axiom.eta_xi",
        scalar_witness(
            "eta(xi) - delta",
            (0..r).flat_map(|a| {
                (0..r).map(move |b| {
                    let v = s.eta_of(a, &s.xi()[b]);
                    let d = if a == b { &v - &s.int(1) } else { v };
                    (vec![a, b], d)
                })
            }),
        ),
    ));

    let n = s.dim();
    out.push(Verdict::from_witness(
        "axiom.eta_phi",
        scalar_witness(
            "eta(phi d)",
            (0..r).flat_map(|a| {
                let row = eta_row(s, a);
                (0..n).map(move |j| {
                    let v = crate::scalar::sum(s.vars(), (0..n).map(|i| &row[i] * f.get(i, j)));
                    (vec![a, j], v)
                })
            }),
        ),
    ));
    out
}

/// Compatibility of g with the structure, skew-symmetry of φ, and the
/// metric on the kernel.
pub fn check_compatibility(s: &GffStructure) -> Vec<Verdict> {
    let n = s.dim();
    let r = s.r();
    let f = s.phi_matrix();
    let g = s.metric();
    let etas: Vec<Vec<ScalarField>> = (0..r).map(|a| eta_row(s, a)).collect();
    let eps: Vec<Rational> = s.epsilon().iter().map(|&e| Rational::from_integer(e.into())).collect();

    let lhs = f.transpose().mul(g).mul(f);
    let resid = SquareMatrix::from_fn(n, |i, j| {
        let mut v = lhs.get(i, j) - g.get(i, j);
        for a in 0..r {
            v = &v + &(&etas[a][i] * &etas[a][j]).scale(&eps[a]);
        }
        v
    });
    let mut out = vec![Verdict::from_witness(
        "axiom.compatibility",
        matrix_witness("g(phi d, phi d) - g + eps eta eta", &resid),
    )];

    out.push(Verdict::from_witness(
        "axiom.eta_metric_dual",
        scalar_witness(
            "eps g(d, xi) - eta",
            (0..r).flat_map(|a| {
                let etas = &etas;
                let eps = &eps;
                (0..n).map(move |i| {
                    let e = VectorField::coordinate(s.vars(), n, i);
                    let v = &s.inner(&e, &s.xi()[a]).scale(&eps[a]) - &etas[a][i];
                    (vec![a, i], v)
                })
            }),
        ),
    ));

    let gf = g.mul(f);
    let skew = gf.add(&gf.transpose());
    out.push(Verdict::from_witness(
        "axiom.phi_skew",
        matrix_witness("g(phi d, d) + g(d, phi d)", &skew),
    ));

    out.push(Verdict::from_witness(
        "axiom.kernel_metric",
        scalar_witness(
            "g(xi, xi) - eps delta",
            (0..r).flat_map(|a| {
                let eps = &eps;
                (0..r).map(move |b| {
                    let v = s.inner(&s.xi()[a], &s.xi()[b]);
                    let d = if a == b { &v - &ScalarField::constant(s.vars(), eps[a].clone()) } else { v };
                    (vec![a, b], d)
                })
            }),
        ),
    ));

    let det = g.det();
    out.push(if det.is_zero() {
        Verdict::fails("axiom.metric_nondegenerate", "det g = 0")
    } else {
        Verdict::holds("axiom.metric_nondegenerate")
    });
    out
}

/// Pointwise data at the sample points.
#[derive(Clone, Debug)]
pub struct SampleSummary {
    pub det: ScalarField,
    pub points: Vec<SamplePoint>,
    /// The 𝔇-signature is even at every nondegenerate sample point.
    pub distribution_even: Verdict,
}

#[derive(Clone, Debug)]
pub struct SamplePoint {
    pub point: Vec<Rational>,
    /// `None` when g is degenerate (or undefined) at the point.
    pub signature: Option<(usize, usize)>,
    pub phi_rank: Option<usize>,
}

impl SampleSummary {
    /// The index when every nondegenerate sample point agrees on it.
    pub fn index(&self) -> Option<usize> {
        let mut it = self.points.iter().filter_map(|p| p.signature.map(|(_, q)| q));
        let first = it.next()?;
        it.all(|q| q == first).then_some(first)
    }
}

pub fn sample_summary(s: &GffStructure) -> SampleSummary {
    let det = s.metric().det();
    let plus = s.epsilon().iter().filter(|&&e| e > 0).count();
    let minus = s.r() - plus;
    let mut bad = None;
    let mut checked = 0;
    let points: Vec<SamplePoint> = s
        .spec()
        .effective_sample_points()
        .into_iter()
        .map(|p| {
            let sig = s.metric().evaluate(&p).ok().and_then(|m| signature(m).ok());
            let rank = s.phi_matrix().evaluate(&p).ok().map(rational_rank);
            if let Some((a, b)) = sig {
                checked += 1;
                let even = a >= plus && b >= minus && (a - plus).is_multiple_of(2) && (b - minus).is_multiple_of(2);
                if !even && bad.is_none() {
                    bad = Some(format!("signature ({a},{b}) at {}", fmt_point(&p)));
                }
            }
            SamplePoint {
                point: p,
                signature: sig,
                phi_rank: rank,
            }
        })
        .collect();
    let name = "sampled.distribution_signature_even";
    let distribution_even = match (checked, bad) {
        (0, _) => Verdict::skipped(name, "no nondegenerate sample point"),
        (_, Some(w)) => Verdict::fails(name, w),
        (_, None) => Verdict::holds(name),
    };
    SampleSummary {
        det,
        points,
        distribution_even,
    }
}

pub(crate) fn fmt_point(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(crate::scalar::fmt_rational).collect();
    format!("({})", parts.join(","))
}

/// Self-adjointness, h_α(ξ_β) = 0 and h_α∘φ + φ∘h_α = 0.
pub fn check_h_operators(s: &GffStructure, hs: &[HOperator]) -> Vec<Verdict> {
    let g = s.metric();
    let f = s.phi_matrix();
    let n = s.dim();
    let mats: Vec<SquareMatrix> = hs.iter().map(|h| h.matrix.to_matrix()).collect();
    let adj = scalar_witness(
        "g(h d, d) - g(d, h d)",
        mats.iter().enumerate().flat_map(|(a, m)| {
            let d = m.transpose().mul(g).sub(&g.mul(m));
            (0..n).flat_map(move |i| {
                let d = d.clone();
                (0..n).map(move |j| (vec![a, i, j], d.get(i, j).clone()))
            })
        }),
    );
    let kills = vector_witness(
        "h(xi)",
        hs.iter()
            .flat_map(|h| s.xi().iter().enumerate().map(move |(b, x)| (vec![h.index, b], h.apply(x)))),
    );
    let anti = scalar_witness(
        "h phi + phi h",
        mats.iter().enumerate().flat_map(|(a, m)| {
            let d = m.mul(f).add(&f.mul(m));
            (0..n).flat_map(move |i| {
                let d = d.clone();
                (0..n).map(move |j| (vec![a, i, j], d.get(i, j).clone()))
            })
        }),
    );
    vec![
        Verdict::from_witness("h.self_adjoint", adj),
        Verdict::from_witness("h.kills_xi", kills),
        Verdict::from_witness("h.anticommutes_phi", anti),
    ]
}

/// L_{ξ_α} g = 0 and L_{ξ_α} η^β = 0.
pub fn check_killing(s: &GffStructure) -> Vec<Verdict> {
    let n = s.dim();
    let mut killing = None;
    let mut eta = None;
    for (a, x) in s.xi().iter().enumerate() {
        let l = lie_derivative(s.g(), x).expect("(0,2) is supported");
        if killing.is_none() {
            killing = l
                .first_nonzero()
                .map(|(ix, v)| format!("L_xi g{} = {v}", fmt_index(&[a, ix[0], ix[1]])));
        }
        for (b, e) in s.eta().iter().enumerate() {
            if eta.is_some() {
                break;
            }
            let l = lie_derivative_form(e, x).expect("1-form");
            eta = (0..n)
                .map(|i| (i, l.component(&[i])))
                .find(|(_, v)| !v.is_zero())
                .map(|(i, v)| format!("L_xi eta{} = {v}", fmt_index(&[a, b, i])));
        }
    }
    vec![
        Verdict::from_witness("killing.xi", killing),
        Verdict::from_witness("killing.lie_xi_eta", eta),
    ]
}

/// Identities valid on every metric g.f.f-structure: L_ξΦ in terms of
/// L_ξg and L_ξφ, the two expressions of N^(2)_α, and the two
/// implications whose hypotheses are tested first.
pub fn check_lie_identities(s: &GffStructure, normal: bool) -> Vec<Verdict> {
    let n = s.dim();
    let f = s.phi_matrix();
    let g = s.metric();
    let big_phi = s.fundamental_tensor();
    let mut out = Vec::new();

    let mut w = None;
    for (a, x) in s.xi().iter().enumerate() {
        let lphi_form = lie_derivative(&big_phi, x).expect("(0,2)").to_matrix();
        let lg = lie_derivative(s.g(), x).expect("(0,2)").to_matrix();
        let lf = lie_derivative(s.phi(), x).expect("(1,1)").to_matrix();
        let rhs = lg.mul(f).add(&g.mul(&lf));
        let d = lphi_form.sub(&rhs);
        w = matrix_witness(&format!("alpha {} residual", a + 1), &d);
        if w.is_some() {
            break;
        }
    }
    out.push(Verdict::from_witness("lie.fundamental_form", w));

    // c) for every α with L_{ξ_α}φ = 0
    let qualifying: Vec<usize> = s
        .xi()
        .iter()
        .enumerate()
        .filter(|(_, x)| lie_derivative(s.phi(), x).expect("(1,1)").is_zero())
        .map(|(a, _)| a)
        .collect();
    let name = "lie.phi_invariant_implies_bracket";
    if qualifying.is_empty() {
        out.push(Verdict::skipped(name, "precondition failed: L_xi phi != 0 for every alpha"));
    } else {
        let frame = s.frame();
        let phie: Vec<VectorField> = frame.iter().map(|e| s.apply_phi(e)).collect();
        let w = scalar_witness(
            "eta([phi d, xi])",
            qualifying.iter().flat_map(|&a| {
                let phie = &phie;
                (0..s.r()).flat_map(move |b| {
                    (0..n).map(move |j| {
                        let br = lie_bracket(&phie[j], &s.xi()[a]);
                        (vec![b, j, a], s.eta_of(b, &br))
                    })
                })
            }),
        );
        out.push(Verdict::from_witness(name, w));
    }

    let mut consistent = None;
    let mut vanish = None;
    for (a, e) in s.eta().iter().enumerate() {
        let via_d = n2_via_d(s.phi(), e).expect("(1,1)");
        let via_lie = n2_via_lie(s.phi(), e).expect("(1,1)");
        if consistent.is_none() {
            consistent = via_d
                .sub(&via_lie)
                .first_nonzero()
                .map(|(ix, v)| format!("N2 difference{} = {v}", fmt_index(&[a, ix[0], ix[1]])));
        }
        if vanish.is_none() {
            vanish = via_d
                .first_nonzero()
                .map(|(ix, v)| format!("N2{} = {v}", fmt_index(&[a, ix[0], ix[1]])));
        }
    }
    out.push(Verdict::from_witness("n2.lie_equals_d", consistent));
    let name = "n2.vanishes_when_normal";
    out.push(if normal {
        Verdict::from_witness(name, vanish)
    } else {
        Verdict::skipped(name, "precondition failed: not normal")
    });
    out
}

/// The N^(2)_α, bracket and N identities of an almost-S structure.
pub fn check_almost_s_identities(s: &GffStructure, hs: &[HOperator], normality: &TensorField) -> Vec<Verdict> {
    let n = s.dim();
    let r = s.r();
    let mut out = Vec::new();

    let mut w = None;
    for (a, e) in s.eta().iter().enumerate() {
        let t = n2_via_d(s.phi(), e).expect("(1,1)");
        if let Some((ix, v)) = t.first_nonzero() {
            w = Some(format!("N2{} = {v}", fmt_index(&[a, ix[0], ix[1]])));
            break;
        }
    }
    out.push(Verdict::from_witness("almost_s.n2_vanishes", w));

    let dframe = s.distribution_frame();
    let phid: Vec<VectorField> = dframe.iter().map(|x| s.apply_phi(x)).collect();
    let w = scalar_witness(
        "eta[phi X, Y] - eta[phi Y, X]",
        (0..r).flat_map(|a| {
            let dframe = &dframe;
            let phid = &phid;
            (0..n).flat_map(move |i| {
                (i + 1..n).map(move |j| {
                    let u = lie_bracket(&phid[i], &dframe[j]);
                    let v = lie_bracket(&phid[j], &dframe[i]);
                    (vec![a, i, j], &s.eta_of(a, &u) - &s.eta_of(a, &v))
                })
            })
        }),
    );
    out.push(Verdict::from_witness("almost_s.eta_bracket_symmetric", w));

    let frame = s.frame();
    let nv = |x: &VectorField, y: &VectorField| normality.eval_vector(&[x, y]).expect("(1,2)");
    let w = vector_witness(
        "phi N(X,Y) + N(phi X,Y) - 2 eta(X) h(Y)",
        (0..n).flat_map(|i| {
            let frame = &frame;
            let nv = &nv;
            (0..n).map(move |j| {
                let (x, y) = (&frame[i], &frame[j]);
                let mut v = &s.apply_phi(&nv(x, y)) + &nv(&s.apply_phi(x), y);
                for h in hs {
                    let c = s.eta_of(h.index, x);
                    if !c.is_zero() {
                        v = &v - &h.apply(y).scale(&(&c * &s.int(2)));
                    }
                }
                (vec![i, j], v)
            })
        }),
    );
    out.push(Verdict::from_witness("almost_s.phi_normality", w));

    let w = scalar_witness(
        "eta(N(d, d))",
        (0..r).flat_map(|a| {
            let frame = &frame;
            let nv = &nv;
            (0..n).flat_map(move |i| (i + 1..n).map(move |j| (vec![a, i, j], s.eta_of(a, &nv(&frame[i], &frame[j])))))
        }),
    );
    out.push(Verdict::from_witness("almost_s.eta_normality", w));
    out
}
