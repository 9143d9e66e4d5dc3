//! Identity suites for the Levi-Civita connection and the curvature of
//! almost-S and S structures. Every function computes its residuals
//! unconditionally; callers decide which hypotheses apply.

use super::aux::AuxTensors;
use super::connection::Connection;
use super::riemann::{contract4, transform_slot, CurvatureTensor};
use crate::gff::{scalar_witness, vector_witness, GffStructure, HOperator};
use crate::scalar::{rat, sum, ScalarField, SquareMatrix, Vars};
use crate::spec_io::Verdict;
use crate::tensor::{lie_bracket, n2_via_d, PForm, TensorField, VectorField};

fn all_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
}

fn all_triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
}

/// Shared evaluators: ∇φ as a (1,2) tensor with the direction last, ∇Φ
/// likewise as a (0,3) tensor.
struct Ctx<'a> {
    s: &'a GffStructure,
    frame: Vec<VectorField>,
    nabla_phi: TensorField,
    nabla_big_phi: TensorField,
}

impl<'a> Ctx<'a> {
    fn new(s: &'a GffStructure, c: &Connection) -> Self {
        Ctx {
            s,
            frame: s.frame(),
            nabla_phi: c.covariant_derivative(s.phi()).expect("(1,1)"),
            nabla_big_phi: c.covariant_derivative(&s.fundamental_tensor()).expect("(0,2)"),
        }
    }

    /// (∇_X φ)Y.
    fn dphi(&self, x: &VectorField, y: &VectorField) -> VectorField {
        self.nabla_phi.eval_vector(&[y, x]).expect("(1,2)")
    }

    /// (∇_X Φ)(Y,Z).
    fn dbig_phi(&self, x: &VectorField, y: &VectorField, z: &VectorField) -> ScalarField {
        self.nabla_big_phi.eval_covariant(&[y, z, x]).expect("(0,3)")
    }

    fn phi(&self, x: &VectorField) -> VectorField {
        self.s.apply_phi(x)
    }

    fn gpp(&self, x: &VectorField, y: &VectorField) -> ScalarField {
        self.s.inner(&self.phi(x), &self.phi(y))
    }
}

/// Identities valid on every metric g.f.f-manifold: the Koszul-type formula
/// for 2g((∇_Xφ)Y, Z) and (∇_XΦ)(Y,Z) = g(Y, (∇_Xφ)Z).
pub fn check_connection_identities(s: &GffStructure, c: &Connection, normality: &TensorField) -> Vec<Verdict> {
    let ctx = &Ctx::new(s, c);
    let n = s.dim();
    let e = &ctx.frame;
    let mut out = c.verify(s.metric());

    let koszul = match s.fundamental_form() {
        Err(_) => Verdict::skipped("connection.koszul_phi", "precondition failed: phi is not skew-symmetric"),
        Ok(big_phi) => {
            let dphi3 = big_phi.exterior_derivative();
            let deta: Vec<PForm> = s.eta().iter().map(PForm::exterior_derivative).collect();
            let n2: Vec<TensorField> = s.eta().iter().map(|eta| n2_via_d(s.phi(), eta).expect("(1,1)")).collect();
            let three = rat(3, 1);
            let two = rat(2, 1);
            let w = scalar_witness(
                "koszul residual",
                all_triples(n).map(|(i, j, k)| {
                    let (x, y, z) = (&e[i], &e[j], &e[k]);
                    let (py, pz) = (ctx.phi(y), ctx.phi(z));
                    let lhs = s.inner(&ctx.dphi(x, y), z).scale(&two);
                    let mut rhs = vec![
                        dphi3.eval(&[x, &py, &pz]).scale(&three),
                        -dphi3.eval(&[x, y, z]).scale(&three),
                        s.inner(&normality.eval_vector(&[y, z]).expect("(1,2)"), &ctx.phi(x)),
                    ];
                    for a in 0..s.r() {
                        let ea = rat(s.epsilon()[a] as i64, 1);
                        rhs.push(&n2[a].eval_covariant(&[y, z]).expect("(0,2)").scale(&ea) * &s.eta_of(a, x));
                        rhs.push(&deta[a].eval(&[&py, x]).scale(&(&ea * &two)) * &s.eta_of(a, z));
                        rhs.push(-(&deta[a].eval(&[&pz, x]).scale(&(&ea * &two)) * &s.eta_of(a, y)));
                    }
                    (vec![i, j, k], &lhs - &sum(s.vars(), rhs))
                }),
            );
            Verdict::from_witness("connection.koszul_phi", w)
        }
    };
    out.push(koszul);

    let w = scalar_witness(
        "(nabla_X Phi)(Y,Z) - g(Y,(nabla_X phi)Z)",
        all_triples(n).map(|(i, j, k)| {
            let (x, y, z) = (&e[i], &e[j], &e[k]);
            (vec![i, j, k], &ctx.dbig_phi(x, y, z) - &s.inner(y, &ctx.dphi(x, z)))
        }),
    );
    out.push(Verdict::from_witness("connection.nabla_fundamental_form", w));
    out
}

/// Identities of almost-S manifolds: the normality form of the Koszul
/// formula, parallel kernel, ∇ξ, and the (∇_Xφ)Y + (∇_{φX}φ)φY family.
pub fn check_almost_s_connection_identities(
    s: &GffStructure,
    c: &Connection,
    hs: &[HOperator],
    normality: &TensorField,
) -> Vec<Verdict> {
    let ctx = &Ctx::new(s, c);
    let n = s.dim();
    let e = &ctx.frame;
    let two = rat(2, 1);
    let xi_bar = s.xi_bar();
    let mut out = Vec::new();

    let w = scalar_witness(
        "2g((nabla_X phi)Y,Z) - g(N(Y,Z),phi X) - 2g(phi Y,phi X)eta(Z) + 2g(phi Z,phi X)eta(Y)",
        all_triples(n).map(|(i, j, k)| {
            let (x, y, z) = (&e[i], &e[j], &e[k]);
            let lhs = s.inner(&ctx.dphi(x, y), z).scale(&two);
            let rhs = sum(
                s.vars(),
                [
                    s.inner(&normality.eval_vector(&[y, z]).expect("(1,2)"), &ctx.phi(x)),
                    (&ctx.gpp(y, x) * &s.eta_bar_of(z)).scale(&two),
                    -(&ctx.gpp(z, x) * &s.eta_bar_of(y)).scale(&two),
                ],
            );
            (vec![i, j, k], &lhs - &rhs)
        }),
    );
    out.push(Verdict::from_witness("almost_s.koszul_phi", w));

    let w = vector_witness(
        "(nabla_xi phi)",
        s.xi()
            .iter()
            .enumerate()
            .flat_map(|(a, xa)| e.iter().enumerate().map(move |(j, y)| (vec![a, j], ctx.dphi(xa, y)))),
    );
    out.push(Verdict::from_witness("almost_s.xi_parallel_phi", w));

    let w = vector_witness(
        "nabla_xi xi",
        s.xi().iter().enumerate().flat_map(|(a, xa)| {
            s.xi().iter().enumerate().map(move |(b, xb)| (vec![a, b], c.nabla(xa, xb)))
        }),
    );
    out.push(Verdict::from_witness("almost_s.xi_geodesic", w));

    let w = vector_witness(
        "nabla_X xi + eps phi X + phi h X",
        s.xi().iter().enumerate().flat_map(|(a, xa)| {
            let ea = rat(s.epsilon()[a] as i64, 1);
            let h = hs.iter().find(|h| h.index == a);

            e.iter().enumerate().map(move |(i, x)| {
                let mut v = &c.nabla(x, xa) + &ctx.phi(x).scale_rational(&ea);
                if let Some(h) = h {
                    v = &v + &ctx.phi(&h.apply(x));
                }
                (vec![a, i], v)
            })
        }),
    );
    out.push(Verdict::from_witness("almost_s.nabla_xi", w));

    let w = vector_witness(
        "phi pair residual",
        all_pairs(n).map(|(i, j)| {
            let (x, y) = (&e[i], &e[j]);
            let lhs = &ctx.dphi(x, y) + &ctx.dphi(&ctx.phi(x), &ctx.phi(y));
            let mut rhs = &xi_bar.scale(&ctx.gpp(x, y).scale(&two)) + &ctx.phi(&ctx.phi(x)).scale(&s.eta_bar_of(y));
            for h in hs {
                rhs = &rhs - &h.apply(x).scale(&s.eta_of(h.index, y));
            }
            (vec![i, j], &lhs - &rhs)
        }),
    );
    out.push(Verdict::from_witness("almost_s.phi_pair", w));

    let d = s.distribution_frame();
    let w = vector_witness(
        "phi pair on D residual",
        all_pairs(n).map(|(i, j)| {
            let (x, y) = (&d[i], &d[j]);
            let lhs = &ctx.dphi(x, y) + &ctx.dphi(&ctx.phi(x), &ctx.phi(y));
            (vec![i, j], &lhs - &xi_bar.scale(&s.inner(x, y).scale(&two)))
        }),
    );
    out.push(Verdict::from_witness("almost_s.phi_pair_distribution", w));

    let gen = Generic::new(s);
    let cx = c.extend_vars(&gen.vars);
    let nphi = ctx.nabla_phi.map(|v| v.extend_vars(&gen.vars));
    let dphi = |x: &VectorField, y: &VectorField| nphi.eval_vector(&[y, x]).expect("(1,2)");
    let (x, px) = (&gen.x, gen.phi(&gen.x));
    let swap = &dphi(x, &px) - &dphi(&px, x);
    out.push(Verdict::from_witness(
        "almost_s.phi_pair_swap",
        swap.first_nonzero()
            .map(|(k, v)| format!("(nabla_X phi)phi X - (nabla_phiX phi)X component {} = {v}", k + 1)),
    ));
    let geo = &(&cx.nabla(x, x) + &cx.nabla(&px, &px)) - &gen.phi(&lie_bracket(&px, x));
    out.push(Verdict::from_witness(
        "almost_s.geodesic_sum",
        geo.first_nonzero()
            .map(|(k, v)| format!("nabla_X X + nabla_phiX phiX - phi[phiX,X] component {} = {v}", k + 1)),
    ));
    out
}

/// The S-manifold characterizations of ∇φ and ∇Φ, the Koszul formula with
/// N = 0, and ∇_Xξ_α = −ε_α φX, on coordinate frame tuples.
pub fn check_s_identities(s: &GffStructure, c: &Connection) -> Vec<Verdict> {
    let ctx = &Ctx::new(s, c);
    let n = s.dim();
    let e = &ctx.frame;
    let xi_bar = s.xi_bar();
    let two = rat(2, 1);
    let mut out = Vec::new();

    let w = vector_witness(
        "(nabla_X phi)Y - g(phi X,phi Y)xi - eta(Y)phi^2 X",
        all_pairs(n).map(|(i, j)| {
            let (x, y) = (&e[i], &e[j]);
            let rhs = &xi_bar.scale(&ctx.gpp(x, y)) + &ctx.phi(&ctx.phi(x)).scale(&s.eta_bar_of(y));
            (vec![i, j], &ctx.dphi(x, y) - &rhs)
        }),
    );
    out.push(Verdict::from_witness("s.nabla_phi", w));

    let w = vector_witness(
        "expanded nabla phi residual",
        all_pairs(n).map(|(i, j)| {
            let (x, y) = (&e[i], &e[j]);
            let eb = s.eta_bar_of(y);
            let mut rhs = &xi_bar.scale(&s.inner(x, y)) - &x.scale(&eb);
            for a in 0..s.r() {
                let ea = rat(s.epsilon()[a] as i64, 1);
                let ex = s.eta_of(a, x);
                rhs = &rhs - &xi_bar.scale(&(&ex * &s.eta_of(a, y)).scale(&ea));
                rhs = &rhs + &s.xi()[a].scale(&(&eb * &ex));
            }
            (vec![i, j], &ctx.dphi(x, y) - &rhs)
        }),
    );
    out.push(Verdict::from_witness("s.nabla_phi_expanded", w));

    let w = scalar_witness(
        "(nabla_X Phi)(Y,Z) - eta(Y)g(phiX,phiZ) + eta(Z)g(phiX,phiY)",
        all_triples(n).map(|(i, j, k)| {
            let (x, y, z) = (&e[i], &e[j], &e[k]);
            let rhs = &(&s.eta_bar_of(y) * &ctx.gpp(x, z)) - &(&s.eta_bar_of(z) * &ctx.gpp(x, y));
            (vec![i, j, k], &ctx.dbig_phi(x, y, z) - &rhs)
        }),
    );
    out.push(Verdict::from_witness("s.nabla_fundamental_form", w));

    let w = scalar_witness(
        "2g((nabla_X phi)Y,Z) - 2g(phiY,phiX)eta(Z) + 2g(phiZ,phiX)eta(Y)",
        all_triples(n).map(|(i, j, k)| {
            let (x, y, z) = (&e[i], &e[j], &e[k]);
            let lhs = s.inner(&ctx.dphi(x, y), z);
            let rhs = &(&ctx.gpp(y, x) * &s.eta_bar_of(z)) - &(&ctx.gpp(z, x) * &s.eta_bar_of(y));
            (vec![i, j, k], (&lhs - &rhs).scale(&two))
        }),
    );
    out.push(Verdict::from_witness("s.koszul_phi", w));

    let w = vector_witness(
        "nabla_X xi + eps phi X",
        s.xi().iter().enumerate().flat_map(|(a, xa)| {
            let ea = rat(s.epsilon()[a] as i64, 1);

            e.iter()
                .enumerate()
                .map(move |(i, x)| (vec![a, i], &c.nabla(x, xa) + &ctx.phi(x).scale_rational(&ea)))
        }),
    );
    out.push(Verdict::from_witness("s.nabla_xi", w));
    out
}

/// Generic sections X = −φ²(Σ t_i ∂_i), Y = −φ²(Σ u_i ∂_i) of 𝔇 over the
/// chart variables extended by t and u. A tensorial identity in X, Y holds
/// on all of 𝔇 exactly when it holds for this pair as a polynomial identity.
pub(crate) struct Generic {
    pub vars: Vars,
    pub x: VectorField,
    pub y: VectorField,
    phi: SquareMatrix,
    g: SquareMatrix,
}

impl Generic {
    pub fn new(s: &GffStructure) -> Self {
        let n = s.dim();
        let names: Vec<String> = (1..=n)
            .map(|i| format!("t#{i}"))
            .chain((1..=n).map(|i| format!("u#{i}")))
            .collect();
        let vars = s.vars().with_extras(names);
        let ext = |m: &SquareMatrix| SquareMatrix::from_fn(n, |i, j| m.get(i, j).extend_vars(&vars));
        let phi = ext(s.phi_matrix());
        let g = ext(s.metric());
        let proj = phi.mul(&phi);
        let make = |offset: usize| {
            let t: Vec<ScalarField> = (0..n)
                .map(|i| ScalarField::var(&vars, vars.name(n + offset + i)).expect("declared"))
                .collect();
            VectorField::new(proj.apply(&t).into_iter().map(|c| -c).collect())
        };
        let x = make(0);
        let y = make(n);
        Generic { vars, x, y, phi, g }
    }

    pub fn phi(&self, v: &VectorField) -> VectorField {
        VectorField::new(self.phi.apply(v.comps()))
    }

    pub fn inner(&self, a: &VectorField, b: &VectorField) -> ScalarField {
        let gb = self.g.apply(b.comps());
        sum(&self.vars, a.comps().iter().zip(&gb).map(|(p, q)| p * q))
    }

    pub fn extend(&self, t: &TensorField) -> TensorField {
        t.map(|c| c.extend_vars(&self.vars))
    }
}

/// Kernel flatness, the mixed kernel identities, the φ-compatibility of R
/// and the expression of B through D, all exact.
pub fn curvature_identity_suite(s: &GffStructure, r: &CurvatureTensor, aux: &AuxTensors) -> Vec<Verdict> {
    let n = s.dim();
    let xi = s.xi();
    let e = s.frame();
    let d = s.distribution_frame();
    let mut out = r.symmetry_verdicts();

    let w = vector_witness(
        "R(xi,xi)xi",
        xi.iter().enumerate().flat_map(|(a, xa)| {
            xi.iter().enumerate().flat_map(move |(b, xb)| {
                xi.iter().enumerate().map(move |(cc, xc)| (vec![a, b, cc], r.apply(xa, xb, xc)))
            })
        }),
    );
    out.push(Verdict::from_witness("curvature.kernel_flat", w));

    let sign = |a: usize, b: usize| rat((s.epsilon()[a] * s.epsilon()[b]) as i64, 1);
    let w = vector_witness(
        "R(xi_a,X)xi_b - e_a e_b phi^2 X",
        xi.iter().enumerate().flat_map(|(a, xa)| {
            let e = &e;
            xi.iter().enumerate().flat_map(move |(b, xb)| {
                e.iter().enumerate().map(move |(i, x)| {
                    let target = s.apply_phi(&s.apply_phi(x)).scale_rational(&sign(a, b));
                    (vec![a, b, i], &r.apply(xa, x, xb) - &target)
                })
            })
        }),
    );
    out.push(Verdict::from_witness("curvature.kernel_mixed", w));

    let w = vector_witness(
        "R(xi_a,X)xi_b + e_a e_b X",
        xi.iter().enumerate().flat_map(|(a, xa)| {
            let d = &d;
            xi.iter().enumerate().flat_map(move |(b, xb)| {
                d.iter()
                    .enumerate()
                    .map(move |(i, x)| (vec![a, b, i], &r.apply(xa, x, xb) + &x.scale_rational(&sign(a, b))))
            })
        }),
    );
    out.push(Verdict::from_witness("curvature.kernel_on_distribution", w));

    let w = scalar_witness(
        "g(R(X,xi_a)Y,Z) + e_a g(X,Y) eta(Z)",
        xi.iter().enumerate().flat_map(|(a, xa)| {
            let ea = rat(s.epsilon()[a] as i64, 1);
            let (d, e) = (&d, &e);
            (0..n).flat_map(move |i| {
                let ea = ea.clone();
                (0..n).flat_map(move |j| {
                    let ea = ea.clone();
                    (0..n).map(move |k| {
                        let lhs = r.rg(&d[i], xa, &d[j], &e[k]);
                        let rhs = (&s.inner(&d[i], &d[j]) * &s.eta_bar_of(&e[k])).scale(&ea);
                        (vec![a, i, j, k], &lhs + &rhs)
                    })
                })
            })
        }),
    );
    out.push(Verdict::from_witness("curvature.distribution_kernel", w));

    out.push(aux.master_identity(s, r));

    // R(φ·,φ·,φ·,φ·) against R on the 𝔇-projections
    let f = s.phi_matrix();
    let pi = SquareMatrix::from_fn(n, |i, j| -f.mul(f).get(i, j).clone());
    let mut rphi = r.r04().clone();
    let mut rpi = r.r04().clone();
    for slot in 0..4 {
        rphi = transform_slot(&rphi, slot, f);
        rpi = transform_slot(&rpi, slot, &pi);
    }
    out.push(Verdict::from_witness(
        "curvature.phi_invariance",
        rphi.sub(&rpi)
            .first_nonzero()
            .map(|(ix, v)| format!("R(phi,phi,phi,phi) - R on D at {} = {v}", crate::gff::fmt_index(&ix))),
    ));

    let gen = Generic::new(s);
    let rx = gen.extend(r.r04());
    let px = gen.extend(&aux.p);
    let rr = |a: &VectorField, b: &VectorField, c: &VectorField, dd: &VectorField| contract4(&rx, [a, b, c, dd]);
    // g(R(A,B)C,D) = R(D,C,A,B)
    let rg = |a: &VectorField, b: &VectorField, c: &VectorField, dd: &VectorField| rr(dd, c, a, b);
    let p = |a: &VectorField, b: &VectorField, c: &VectorField, dd: &VectorField| contract4(&px, [a, b, c, dd]);
    let (x, y) = (&gen.x, &gen.y);
    let (fx, fy) = (gen.phi(x), gen.phi(y));
    let eps = rat(aux.epsilon_bar as i64, 1);

    let res = sum(
        &gen.vars,
        [
            rg(x, &fx, y, &fy),
            -rg(x, y, x, y),
            -rg(x, &fy, x, &fy),
            p(x, y, x, &fy).scale(&(&eps * rat(2, 1))),
        ],
    );
    out.push(generic_verdict("curvature.phi_plane_split", &res));

    let res = &rg(&fx, y, &fx, y) - &rg(x, &fy, x, &fy);
    out.push(generic_verdict("curvature.phi_swap", &res));

    // B(X,Y) against the D-combination
    let b = |a: &VectorField, c: &VectorField| rg(a, c, a, c);
    let dd = |a: &VectorField| b(a, &gen.phi(a));
    let res = sum(
        &gen.vars,
        [
            b(x, y).scale(&rat(32, 1)),
            dd(&(x + &fy)).scale(&rat(-3, 1)),
            dd(&(x - &fy)).scale(&rat(-3, 1)),
            dd(&(x + y)),
            dd(&(x - y)),
            dd(x).scale(&rat(4, 1)),
            dd(y).scale(&rat(4, 1)),
            p(x, y, x, &fy).scale(&(&eps * rat(-24, 1))),
        ],
    );
    out.push(generic_verdict("curvature.b_expression", &res));

    let res = sum(
        &gen.vars,
        [
            p(x, y, x, &fy),
            -gen.inner(x, &fy).pow(2),
            -gen.inner(x, y).pow(2),
            &gen.inner(x, x) * &gen.inner(y, y),
        ],
    );
    out.push(generic_verdict("p.unit_pair", &res));

    let w = scalar_witness(
        "P(X,Y;Z,W) + P(Z,W;X,Y)",
        aux.p.indices().map(|ix| {
            let v = aux.p.get(&ix) + aux.p.get(&[ix[2], ix[3], ix[0], ix[1]]);
            (ix, v)
        }),
    );
    out.push(Verdict::from_witness("p.pair_exchange_skew", w));

    let w = scalar_witness(
        "Q(xi,Y;Z,W)",
        xi.iter().enumerate().flat_map(|(a, xa)| {
            let d = &d;
            all_triples(n).map(move |(i, j, k)| (vec![a, i, j, k], aux.q_of(xa, &d[i], &d[j], &d[k])))
        }),
    );
    out.push(Verdict::from_witness("q.single_kernel_argument", w));
    out
}

/// Q(ξ_α,Y;ξ_β,W) = Q(Y,ξ_α;W,ξ_β) = −ε_αε_β g(W,φY) for Y, W ∈ 𝔇, which
/// requires ε = 0.
pub fn check_q_kernel_pairs(s: &GffStructure, aux: &AuxTensors) -> Verdict {
    let name = "q.kernel_pairs";
    if aux.epsilon_bar != 0 {
        return Verdict::skipped(name, "precondition failed: sum of causal characters is nonzero");
    }
    let d = s.distribution_frame();
    let xi = s.xi();
    let n = s.dim();
    let w = scalar_witness(
        "Q(xi_a,Y;xi_b,W) + e_a e_b g(W,phi Y)",
        xi.iter().enumerate().flat_map(|(a, xa)| {
            let d = &d;
            xi.iter().enumerate().flat_map(move |(b, xb)| {
                all_pairs(n).flat_map(move |(i, j)| {
                    let target =
                        s.inner(&d[j], &s.apply_phi(&d[i])).scale(&rat(-(s.epsilon()[a] * s.epsilon()[b]) as i64, 1));
                    let q1 = &aux.q_of(xa, &d[i], xb, &d[j]) - &target;
                    let q2 = &aux.q_of(&d[i], xa, &d[j], xb) - &target;
                    [(vec![a, b, i, j, 0], q1), (vec![a, b, i, j, 1], q2)]
                })
            })
        }),
    );
    Verdict::from_witness(name, w)
}

fn generic_verdict(name: &str, residual: &ScalarField) -> Verdict {
    Verdict::from_witness(
        name,
        (!residual.is_zero()).then(|| format!("residual for generic X, Y in D = {residual}")),
    )
}
