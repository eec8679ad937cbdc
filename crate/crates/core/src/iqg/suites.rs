//! Verification suites for the ıquantum group layer.
//!
//! Each suite builds the left-hand sides as expressions, tries the formal
//! normal form first and falls back to the exact oracle in the Drinfeld double.
//! Mutations (one per suite) perturb a single exponent of the defining formula.

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::braid::{apply_substitution, generator_images, BraidKind};
use super::ytilde::{ytilde_impl, ytilde_minimal_display, YParams};
use super::{BasisDirection, IAlgebra, IExpr};
use crate::cartan::CartanDatum;
use crate::drinfeld::{DDElement, TriMonomial, ZeroOracle};
use crate::qidentities::Span;
use crate::qscalar::{qbinom, qint, Parity, QScalar};
use crate::report::{run_cases, Note, Outcome, Report, ReportBuilder};
use crate::SuiteOptions;

fn both() -> Vec<Parity> {
    Parity::both().to_vec()
}

fn sgn(r: i64) -> QScalar {
    QScalar::from_int(if r % 2 == 0 { 1 } else { -1 })
}

/// Zero test that skips the embedding when the formal normal form already vanishes.
fn vanishes(alg: &IAlgebra, oracle: &mut ZeroOracle, x: &IExpr) -> bool {
    alg.is_zero_with(oracle, x)
}

/// `sum_{r+s=total} (-1)^r q_i^{w r} B^{(r)}_{i,p} · middle · B^{(s)}_{i,p+shift}`; `w` is the mutation weight.
fn sandwich_weighted(alg: &IAlgebra, i: usize, p: Parity, shift: i64, total: i64, middle: &IExpr, w: i32) -> IExpr {
    if w == 0 {
        return alg.sandwich(i, p, shift, total, middle);
    }
    let eps = alg.datum().eps(i) as i32;
    let mut out = alg.zero();
    for r in 0..=total {
        let t = alg.product(&[&alg.idivided_power(i, r, p), middle, &alg.idivided_power(i, total - r, p + shift)]);
        out.add_assign(&t.scale(&sgn(r).shift(w * eps * r as i32)));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SerreMinimalGrid {
    /// `(a_12, n_max)` for split rank-2 data with `a_21 = -1`.
    pub split: Vec<(i64, i64)>,
    pub t_max: i64,
    /// `n_max` for the rank-3 datum with the end nodes swapped.
    pub swapped_n_max: i64,
    /// Largest `n = mu + nu + 2 beta` for the mixed `E K̃' F` form.
    pub mixed_n_max: i64,
    /// Smallest `n` in every family.
    #[serde(default)]
    pub n_min: i64,
    #[serde(default = "both")]
    pub pbar: Vec<Parity>,
}

impl Default for SerreMinimalGrid {
    fn default() -> Self {
        SerreMinimalGrid { split: vec![(-1, 3), (-2, 2)], t_max: 1, swapped_n_max: 2, mixed_n_max: 2, n_min: 0, pbar: both() }
    }
}

#[derive(Clone, Debug)]
enum SerreCase {
    Split { a: i64, n: i64 },
    Swapped { j: usize, n: i64 },
    Mixed { a: i64, mu: i64, nu: i64, beta: i64 },
}

/// Minimal-degree Serre–Lusztig relations, their non-standard extensions and the mixed form.
/// Mutation: each summand picks up an extra `q_i^r`.
pub fn verify_serre_minimal(grid: &SerreMinimalGrid, opts: &SuiteOptions) -> Report {
    let mut rb = ReportBuilder::new("serre-minimal", serde_json::to_value(grid).unwrap());
    let mut cases = Vec::new();
    for &(a, nmax) in &grid.split {
        for n in grid.n_min..=nmax {
            cases.push(SerreCase::Split { a, n });
        }
    }
    for j in [0usize, 2] {
        for n in grid.n_min..=grid.swapped_n_max {
            cases.push(SerreCase::Swapped { j, n });
        }
    }
    for &(a, _) in &grid.split {
        for n in grid.n_min..=grid.mixed_n_max {
            for beta in 0..=n / 2 {
                for mu in 0..=n - 2 * beta {
                    cases.push(SerreCase::Mixed { a, mu, nu: n - 2 * beta - mu, beta });
                }
            }
        }
    }
    let w = if opts.mutate { 1 } else { 0 };
    let t_max = grid.t_max;
    let pbars = grid.pbar.clone();
    let outcomes = run_cases(cases, opts.jobs, |case| {
        let mut out = Vec::new();
        match *case {
            SerreCase::Split { a, n } => {
                let d = CartanDatum::rank2(a, -1).unwrap();
                let alg = IAlgebra::new(&d);
                let mut oracle = ZeroOracle::new(&d);
                let (i, j) = (0usize, 1usize);
                let na = n * a;
                let pow = alg.pow(&alg.b(j), n as u32);
                for &p in &pbars {
                    for t in 0..=t_max {
                        let total = 1 - na + 2 * t;
                        let name = if t == 0 { "SerreBn12" } else { "Serre2t" };
                        let x = sandwich_weighted(&alg, i, p, na, total, &pow, w);
                        let ok = vanishes(&alg, &mut oracle, &x);
                        out.push(Outcome::boolean(name, ok, || (json!({"a12": a, "n": n, "t": t, "p": p.name()}), x.render(), "0".into())));
                        for tb in Parity::both() {
                            let name = if t == 0 { "SerreBn10" } else { "Serre1t" };
                            let x = sandwich_weighted(&alg, i, p, na, total, &alg.idp_flavor(j, n, tb), w);
                            let ok = vanishes(&alg, &mut oracle, &x);
                            out.push(Outcome::boolean(name, ok, || {
                                (json!({"a12": a, "n": n, "t": t, "p": p.name(), "tbar": tb.name()}), x.render(), "0".into())
                            }));
                        }
                    }
                }
            }
            SerreCase::Swapped { j, n } => {
                let d = CartanDatum::a3_swapped();
                let alg = IAlgebra::new(&d);
                let mut oracle = ZeroOracle::new(&d);
                let i = 1usize;
                let na = n * d.a(i, j);
                for &p in &pbars {
                    for t in 0..=t_max {
                        let total = 1 - na + 2 * t;
                        for (name, mid) in [("swapped-Bn12", alg.pow(&alg.b(j), n as u32)), ("swapped-Bn10", alg.idp_flavor(j, n, Parity::Even))] {
                            let x = sandwich_weighted(&alg, i, p, na, total, &mid, w);
                            let ok = vanishes(&alg, &mut oracle, &x);
                            out.push(Outcome::boolean(name, ok, || (json!({"j": j + 1, "n": n, "t": t, "p": p.name()}), x.render(), "0".into())));
                        }
                    }
                }
            }
            SerreCase::Mixed { a, mu, nu, beta } => {
                let d = CartanDatum::rank2(a, -1).unwrap();
                let alg = IAlgebra::new(&d);
                let dd = alg.double();
                let mut oracle = ZeroOracle::new(&d);
                let (i, j) = (0usize, 1usize);
                let n = mu + nu + 2 * beta;
                let na = n * a;
                let mut mono = TriMonomial::identity(2);
                mono.eword = vec![j as u8; mu as usize];
                mono.fword = vec![j as u8; nu as usize];
                mono.kvec[2 + j] = (mu + 2 * beta) as i32;
                let middle = dd.monomial(mono, QScalar::one());
                let eps = d.eps(i) as i32;
                for &p in &pbars {
                    let total = 1 - na;
                    let mut x = dd.zero();
                    for r in 0..=total {
                        let left = alg.embed(&alg.idivided_power(i, r, p));
                        let right = alg.embed(&alg.idivided_power(i, total - r, p + na));
                        let t = dd.mul(&dd.mul(&left, &middle), &right);
                        x.add_assign(&t.scale(&sgn(r).shift(w * eps * r as i32)));
                    }
                    let ok = oracle.dd_is_zero(&x);
                    out.push(Outcome::boolean("mixed-EKF", ok, || {
                        (json!({"a12": a, "mu": mu, "nu": nu, "beta": beta, "p": p.name()}), dd.render(&x), "0".into())
                    }));
                }
            }
        }
        out
    });
    rb.extend(outcomes);
    rb.finish()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecursionGrid {
    pub a12: Vec<i64>,
    #[serde(default)]
    pub n_min: i64,
    pub n_max: i64,
    /// `m` runs over `[0, 1 - n a_12 + m_extra]` unless `m` is set.
    pub m_extra: i64,
    #[serde(default)]
    pub m: Option<Span>,
    pub e: Vec<i64>,
    #[serde(default = "both")]
    pub pbar: Vec<Parity>,
}

impl Default for RecursionGrid {
    fn default() -> Self {
        RecursionGrid { a12: vec![-1, -2], n_min: 0, n_max: 2, m_extra: 2, m: None, e: vec![1, -1], pbar: both() }
    }
}

/// Both three-term recursions for `ỹ` and `ỹ'`. Mutation: the leading `q`-power is off by one.
pub fn verify_recursion(grid: &RecursionGrid, opts: &SuiteOptions) -> Report {
    let mut rb = ReportBuilder::new("recursion", serde_json::to_value(grid).unwrap());
    let mut cases = Vec::new();
    for &a in &grid.a12 {
        for n in grid.n_min..=grid.n_max {
            for &e in &grid.e {
                for &p in &grid.pbar {
                    for t in Parity::both() {
                        cases.push((a, n, e, p, t));
                    }
                }
            }
        }
    }
    let mutate = opts.mutate;
    let (m_extra, m_span) = (grid.m_extra, grid.m);
    let outcomes = run_cases(cases, opts.jobs, |&(a, n, e, p, t)| {
        let d = CartanDatum::rank2(a, -1).unwrap();
        let alg = IAlgebra::new(&d);
        let mut oracle = ZeroOracle::new(&d);
        let (i, j) = (0usize, 1usize);
        let eps = d.eps(i) as i32;
        let na = n * a;
        let (mmin, mmax) = match m_span {
            Some(sp) => (sp.lo, sp.hi),
            None => (0, 1 - na + m_extra),
        };
        let bi = alg.b(i);
        let ki = alg.k(i, 1);
        let mut out = Vec::new();
        for primed in [false, true] {
            let y: Vec<IExpr> = (mmin - 1..=mmax + 1)
                .map(|m| ytilde_impl(&alg, &YParams { i, j, n, m, pbar: p, tbar: t, e, primed }, false).unwrap())
                .collect();
            let at = |m: i64| &y[(m - mmin + 1) as usize];
            for m in mmin..=mmax {
                let lead = QScalar::q_pow(eps * (-e * (2 * m + na)) as i32 + if mutate { eps } else { 0 });
                let lhs = if primed {
                    alg.mul(at(m), &bi).scale(&lead).sub(&alg.mul(&bi, at(m)))
                } else {
                    alg.mul(&bi, at(m)).scale(&lead).sub(&alg.mul(at(m), &bi))
                };
                let rhs = at(m + 1).scale(&qint(m + 1, eps).scale_i64(-1)).add(
                    &alg.mul(&ki, at(m - 1)).scale(&(&qint(m + na - 1, eps) * &QScalar::q_pow(eps * (1 - e * (2 * m + na - 1)) as i32))),
                );
                let diff = lhs.sub(&rhs);
                let ok = vanishes(&alg, &mut oracle, &diff);
                let name = if primed { "recursion-yprime" } else { "recursion-y" };
                out.push(Outcome::boolean(name, ok, || {
                    (json!({"a12": a, "n": n, "m": m, "e": e, "p": p.name(), "tbar": t.name()}), lhs.render(), rhs.render())
                }));
            }
        }
        out
    });
    rb.extend(outcomes);
    rb.finish()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VanishingGrid {
    pub a12: Vec<i64>,
    #[serde(default)]
    pub n_min: i64,
    pub n_max: i64,
    /// Asserted range is `m in [1 - n a_12, 1 - n a_12 + m_extra]` plus a few negative `m`.
    pub m_extra: i64,
    pub e: Vec<i64>,
    /// Also report the status for `0 <= m <= -n a_12` (never asserted).
    pub report_low: bool,
    /// Explicit `m` range; values in `[0, -n a_12]` are reported, the rest asserted.
    #[serde(default)]
    pub m: Option<Span>,
    #[serde(default = "both")]
    pub pbar: Vec<Parity>,
}

impl Default for VanishingGrid {
    fn default() -> Self {
        VanishingGrid { a12: vec![-1, -2], n_min: 0, n_max: 2, m_extra: 3, e: vec![1, -1], report_low: true, m: None, pbar: both() }
    }
}

/// Vanishing of `ỹ` and `ỹ'` for `m < 0` and `m > -n a_ij`. Mutation: one exponent in the odd branch of the coefficients.
pub fn verify_vanishing(grid: &VanishingGrid, opts: &SuiteOptions) -> Report {
    let mut rb = ReportBuilder::new("vanishing", serde_json::to_value(grid).unwrap());
    let mut cases = Vec::new();
    for &a in &grid.a12 {
        for n in grid.n_min..=grid.n_max {
            for &e in &grid.e {
                for &p in &grid.pbar {
                    for t in Parity::both() {
                        cases.push((a, n, e, p, t));
                    }
                }
            }
        }
    }
    let mutate = opts.mutate;
    let (m_extra, report_low, m_span) = (grid.m_extra, grid.report_low, grid.m);
    let outcomes = run_cases(cases, opts.jobs, |&(a, n, e, p, t)| {
        let d = CartanDatum::rank2(a, -1).unwrap();
        let alg = IAlgebra::new(&d);
        let mut oracle = ZeroOracle::new(&d);
        let na = n * a;
        let mut out = Vec::new();
        // asserted values, and values in the unasserted window [0, -na]
        let (ms, low): (Vec<i64>, Vec<i64>) = match m_span {
            Some(sp) => sp.iter().partition(|&m| m < 0 || m > -na),
            None => {
                let mut ms = vec![-7, -1];
                ms.extend(1 - na..=1 - na + m_extra);
                (ms, if report_low { (0..=-na).collect() } else { Vec::new() })
            }
        };
        for primed in [false, true] {
            let name = if primed { "vanish-yprime" } else { "vanish-y" };
            for &m in &ms {
                let y = ytilde_impl(&alg, &YParams { i: 0, j: 1, n, m, pbar: p, tbar: t, e, primed }, mutate).unwrap();
                let ok = vanishes(&alg, &mut oracle, &y);
                out.push(Outcome::boolean(name, ok, || (json!({"a12": a, "n": n, "m": m, "e": e, "p": p.name(), "tbar": t.name()}), y.render(), "0".into())));
            }
            {
                for &m in &low {
                    let y = ytilde_impl(&alg, &YParams { i: 0, j: 1, n, m, pbar: p, tbar: t, e, primed }, false).unwrap();
                    let zero = vanishes(&alg, &mut oracle, &y);
                    out.push(Outcome::Note(Note {
                        item: name.to_string(),
                        params: json!({"a12": a, "n": n, "m": m, "e": e, "p": p.name(), "tbar": t.name()}),
                        status: if zero { "zero" } else { "nonzero" }.into(),
                        detail: String::new(),
                    }));
                }
            }
        }
        out
    });
    rb.extend(outcomes);
    rb.finish()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupportGrid {
    pub b2r_max: i64,
    pub dp_max: i64,
    /// Odd/even `m` up to this bound for the induction identity.
    pub szz_m_max: i64,
    pub hos_n_max: i64,
    pub span_n_max: i64,
}

impl Default for SupportGrid {
    fn default() -> Self {
        SupportGrid { b2r_max: 5, dp_max: 8, szz_m_max: 4, hos_n_max: 2, span_n_max: 6 }
    }
}

/// `B^{(2)}_{i,p} B^{(r)}_{i,p} - [r+2 choose 2] B^{(r+2)}_{i,p}` divided by `q_i k̃_i B^{(r)}_{i,p}`.
fn b2r_coefficient(r: i64, p: Parity, eps: i32) -> QScalar {
    let sq = |n: i64| {
        let x = qint(n, eps);
        &x * &x
    };
    let two = qint(2, eps);
    let num = match (p, r % 2 == 0) {
        (Parity::Even, true) => sq(r),
        (Parity::Even, false) => sq(r + 1),
        (Parity::Odd, true) => &sq(r + 1) - &QScalar::one(),
        (Parity::Odd, false) => &sq(r) - &QScalar::one(),
    };
    num / two
}

fn support_case_b2r(alg: &IAlgebra, i: usize, r_max: i64, mutate: bool) -> Vec<Outcome> {
    let eps = alg.datum().eps(i) as i32;
    let qk = alg.k(i, 1).scale(&QScalar::q_pow(eps));
    let mut out = Vec::new();
    for p in Parity::both() {
        let b2 = alg.idivided_power(i, 2, p);
        for r in 0..=r_max {
            let lhs = alg.mul(&b2, &alg.idivided_power(i, r, p));
            let mut lead = qbinom(r + 2, 2, eps);
            if mutate {
                lead = lead.shift(eps);
            }
            let rhs = alg.idivided_power(i, r + 2, p).scale(&lead).add(&alg.mul(&qk, &alg.idivided_power(i, r, p)).scale(&b2r_coefficient(r, p, eps)));
            out.push(Outcome::boolean("B2r", lhs == rhs, || (json!({"node": i + 1, "r": r, "p": p.name()}), lhs.render(), rhs.render())));
        }
    }
    out
}

fn support_case_dp(alg: &IAlgebra, i: usize, r_max: i64) -> Vec<Outcome> {
    let eps = alg.datum().eps(i) as i32;
    let qk = alg.k(i, 1).scale(&QScalar::q_pow(eps));
    let mut out = Vec::new();
    for p in Parity::both() {
        for r in 0..=r_max {
            let lhs = alg.mul(&alg.b(i), &alg.idivided_power(i, r, p));
            let mut rhs = alg.idivided_power(i, r + 1, p).scale(&qint(r + 1, eps));
            if Parity::of(r) == p {
                rhs.add_assign(&alg.mul(&qk, &alg.idivided_power(i, r - 1, p)).scale(&qint(r, eps)));
            }
            out.push(Outcome::boolean("idp-recursion", lhs == rhs, || (json!({"node": i + 1, "r": r, "p": p.name()}), lhs.render(), rhs.render())));
        }
    }
    out
}

/// Checks `S = [m+2 choose 2] Σ_{m+2} + ξ (q_i k̃_i) Ξ` in the Drinfeld double for a concrete `X`.
fn support_case_szz(alg: &IAlgebra, m_max: i64) -> Vec<Outcome> {
    let d = alg.datum();
    let dd = alg.double();
    let (i, j) = (0usize, 1usize);
    let eps = d.eps(i) as i32;
    let a = d.a(i, j);
    let mut oracle = ZeroOracle::new(d);
    let xs: Vec<(&str, DDElement)> = vec![
        ("F_j", dd.f(j)),
        ("E_j K'_j", dd.mul(&dd.e(j), &dd.ktp(j, 1))),
        ("B_j^2", alg.embed(&alg.pow(&alg.b(j), 2))),
    ];
    let emb_idp = |r: i64, p: Parity| alg.embed(&alg.idivided_power(i, r, p));
    let qk = alg.embed(&alg.k(i, 1).scale(&QScalar::q_pow(eps)));
    let mut out = Vec::new();
    for n in [1i64, 2] {
        let na = n * a;
        for p in Parity::both() {
            let pr = p + na;
            // [m+1]^2 shifted down by 0, 1 or 2, over [2]
            let off = if na % 2 != 0 {
                1
            } else if p == Parity::Even {
                0
            } else {
                2
            };
            let xi = |m: i64| {
                let x = qint(m + 1, eps);
                (&(&x * &x) - &QScalar::from_int(off)) / qint(2, eps)
            };
            for m in 1..=m_max {
                if (m - na).rem_euclid(2) == 0 {
                    continue;
                }
                for (xname, x) in &xs {
                    let sum = |total: i64| {
                        let mut acc = dd.zero();
                        for r in 0..=total {
                            let t = dd.mul(&dd.mul(&emb_idp(r, p), x), &emb_idp(total - r, pr));
                            acc.add_assign(&t.scale(&sgn(r)));
                        }
                        acc
                    };
                    let big_xi = sum(m);
                    let next = sum(m + 2);
                    let bi = alg.embed(&alg.b(i));
                    let c = (&QScalar::q_pow(eps * (m + 1) as i32) + &QScalar::q_pow(-eps * (m + 1) as i32)) / qint(2, eps);
                    let s = dd
                        .mul(&emb_idp(2, p), &big_xi)
                        .add(&dd.mul(&big_xi, &emb_idp(2, pr)))
                        .sub(&dd.mul(&dd.mul(&bi, &big_xi), &bi).scale(&c));
                    let rhs = next.scale(&qbinom(m + 2, 2, eps)).add(&dd.mul(&qk, &big_xi).scale(&xi(m)));
                    let diff = s.sub(&rhs);
                    let ok = oracle.dd_is_zero(&diff);
                    out.push(Outcome::boolean("induction-SZZ", ok, || {
                        (json!({"n": n, "m": m, "p": p.name(), "X": xname}), dd.render(&s), dd.render(&rhs))
                    }));
                }
            }
        }
    }
    out
}

fn support_case_hos(d: &CartanDatum, i: usize, j: usize, n_max: i64) -> Vec<Outcome> {
    let alg = IAlgebra::new(d);
    let mut oracle = ZeroOracle::new(d);
    let tj = d.tau(j);
    let mut out = Vec::new();
    for n in 0..=n_max {
        let na = n * d.a(i, j);
        for m in 0..=1 - na {
            for e in [1, -1] {
                for p in Parity::both() {
                    for t in Parity::both() {
                        let yp = ytilde_impl(&alg, &YParams { i, j, n, m, pbar: p, tbar: t, e, primed: true }, false).unwrap();
                        let sy = alg.sigma(&ytilde_impl(&alg, &YParams { i, j: tj, n, m, pbar: p, tbar: t, e, primed: false }, false).unwrap());
                        let ok = yp == sy || vanishes(&alg, &mut oracle, &yp.sub(&sy));
                        out.push(Outcome::boolean("sigma-yprime", ok, || {
                            (json!({"datum": d.to_json(), "i": i + 1, "j": j + 1, "n": n, "m": m, "e": e, "p": p.name(), "tbar": t.name()}), yp.render(), sy.render())
                        }));
                    }
                }
            }
        }
    }
    out
}

fn support_case_yy(a: i64, n_max: i64) -> Vec<Outcome> {
    let d = CartanDatum::rank2(a, -1).unwrap();
    let alg = IAlgebra::new(&d);
    let mut out = Vec::new();
    for n in 0..=n_max {
        let m = -n * a;
        for e in [1, -1] {
            for p in Parity::both() {
                for primed in [false, true] {
                    let t = Parity::Odd;
                    let y = ytilde_impl(&alg, &YParams { i: 0, j: 1, n, m, pbar: p, tbar: t, e, primed }, false).unwrap();
                    let disp = ytilde_minimal_display(&alg, 0, 1, n, p, t, e, primed);
                    out.push(Outcome::boolean("minimal-display", y == disp, || {
                        (json!({"a12": a, "n": n, "e": e, "p": p.name(), "primed": primed}), y.render(), disp.render())
                    }));
                }
            }
        }
    }
    out
}

/// Each term of `B_j^n` in the double must be one of the spanning monomials.
fn support_case_span(d: &CartanDatum, j: usize, n_max: i64) -> Vec<Outcome> {
    let alg = IAlgebra::new(d);
    let dd = alg.double();
    let r = d.rank();
    let tj = d.tau(j);
    let mut out = Vec::new();
    for n in 0..=n_max {
        let x = alg.embed(&alg.pow(&alg.b(j), n as u32));
        let mut ok = true;
        for (m, _) in dd.terms(&x) {
            let mu = m.eword.len() as i64;
            let nu = m.fword.len() as i64;
            let other_k = m.kvec.iter().enumerate().any(|(idx, &k)| k != 0 && idx != j && idx != r + j);
            let letters_ok = m.eword.iter().all(|&c| c as usize == tj) && m.fword.iter().all(|&c| c as usize == j);
            let (kt, ktp) = (m.kvec[j] as i64, m.kvec[r + j] as i64);
            let shape = if tj == j {
                // E^mu K̃^{beta-k} K̃'^{mu+beta+k} F^nu with mu+nu+2 beta = n, 0 <= k <= beta
                let rest = n - mu - nu;
                rest >= 0 && rest % 2 == 0 && {
                    let beta = rest / 2;
                    let k = beta - kt;
                    (0..=beta).contains(&k) && ktp == mu + beta + k
                }
            } else {
                mu + nu == n && kt == 0 && ktp == mu
            };
            if other_k || !letters_ok || !shape {
                ok = false;
            }
        }
        let name = if tj == j { "span-split" } else { "span-swapped" };
        out.push(Outcome::boolean(name, ok, || (json!({"j": j + 1, "n": n}), dd.render(&x), "spanning set".into())));
    }
    out
}

fn support_case_span0(alg: &IAlgebra, j: usize, n_max: i64) -> Vec<Outcome> {
    let mut out = Vec::new();
    for t in Parity::both() {
        for n in 0..=n_max {
            let to_pow = |k: i64| alg.idp_basis_change(j, k, t, BasisDirection::IdpToPowers).unwrap();
            let to_idp = alg.idp_basis_change(j, n, t, BasisDirection::PowersToIdp).unwrap();
            // compose: B^n = sum_s d_s k̃^s B^{(n-2s)} = sum_s d_s k̃^s sum_u c_u B^{n-2s-2u} k̃^u
            let mut composed: std::collections::BTreeMap<i64, QScalar> = Default::default();
            for (s, dcoef) in &to_idp {
                for (u, c) in to_pow(n - 2 * s) {
                    *composed.entry(s + u).or_default() += &(dcoef * &c);
                }
            }
            composed.retain(|_, v| !v.is_zero());
            let ok = composed.len() == 1 && composed.get(&0).map(|c| c.is_one()).unwrap_or(false);
            out.push(Outcome::boolean("basis-change-roundtrip", ok, || (json!({"j": j + 1, "n": n, "tbar": t.name()}), format!("{composed:?}"), "{0: 1}".into())));
        }
    }
    out
}

/// Recursions of ıdivided powers, the induction identity, the σ-relation, the minimal display and spanning lemmas.
/// Mutation: the leading binomial in the `B^{(2)} B^{(r)}` product formula picks up an extra `q_i`.
pub fn verify_support_lemmas(grid: &SupportGrid, opts: &SuiteOptions) -> Report {
    let mut rb = ReportBuilder::new("support", serde_json::to_value(grid).unwrap());
    let cases: Vec<u8> = (0..8).collect();
    let g = grid.clone();
    let mutate = opts.mutate;
    let outcomes = run_cases(cases, opts.jobs, |&c| {
        let b2 = CartanDatum::b2();
        match c {
            0 => {
                let alg = IAlgebra::new(&b2);
                let mut v = support_case_b2r(&alg, 0, g.b2r_max, mutate);
                v.extend(support_case_b2r(&alg, 1, g.b2r_max, mutate));
                v
            }
            1 => {
                let alg = IAlgebra::new(&b2);
                let mut v = support_case_dp(&alg, 0, g.dp_max);
                v.extend(support_case_dp(&alg, 1, g.dp_max));
                v
            }
            2 => support_case_szz(&IAlgebra::new(&CartanDatum::a2()), g.szz_m_max),
            3 => {
                let mut v = support_case_hos(&CartanDatum::a2(), 0, 1, g.hos_n_max);
                v.extend(support_case_hos(&b2, 0, 1, g.hos_n_max));
                v.extend(support_case_hos(&CartanDatum::a3_swapped(), 1, 0, g.hos_n_max));
                v
            }
            4 => {
                let mut v = support_case_yy(-1, 3);
                v.extend(support_case_yy(-2, 2));
                v.extend(support_case_yy(-3, 1));
                v
            }
            5 => {
                let mut v = support_case_span(&CartanDatum::a2(), 1, g.span_n_max);
                v.extend(support_case_span(&b2, 1, g.span_n_max));
                v
            }
            6 => support_case_span(&CartanDatum::a3_swapped(), 0, g.span_n_max),
            _ => {
                let alg = IAlgebra::new(&b2);
                let mut v = support_case_span0(&alg, 0, g.span_n_max);
                v.extend(support_case_span0(&alg, 1, g.span_n_max));
                v
            }
        }
    });
    rb.extend(outcomes);
    rb.finish()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BraidGrid {
    /// `(a_12, a_21, i)` for split rank-2 data; `i` is the 0-based node the symmetry is attached to.
    pub cases: Vec<(i64, i64, usize)>,
    pub e: Vec<i64>,
    #[serde(default = "both")]
    pub pbar: Vec<Parity>,
}

impl Default for BraidGrid {
    fn default() -> Self {
        BraidGrid { cases: vec![(0, 0, 0), (-1, -1, 0), (-2, -1, 0), (-2, -1, 1), (-3, -1, 1)], e: vec![1, -1], pbar: both() }
    }
}

/// Relations in scope for the braid checks: ıSerre relations in both directions and `k̃`-centrality.
fn relations(alg: &IAlgebra) -> Vec<(String, IExpr)> {
    let d = alg.datum();
    let mut v = Vec::new();
    for i in 0..d.rank() {
        for j in 0..d.rank() {
            if i == j {
                continue;
            }
            for p in Parity::both() {
                let a = d.a(i, j);
                v.push((format!("iSerre({},{},{})", i + 1, j + 1, p.name()), alg.sandwich(i, p, a, 1 - a, &alg.b(j))));
            }
        }
    }
    for l in 0..d.rank() {
        for m in 0..d.rank() {
            let x = alg.mul(&alg.k(l, 1), &alg.b(m)).sub(&alg.mul(&alg.b(m), &alg.k(l, 1)));
            v.push((format!("central(k{},B{})", l + 1, m + 1), x));
        }
    }
    v
}

/// Report-only evidence for the candidate braid symmetries: relation images and mutual inverses.
/// Mutation: the image of `B_i` picks up an extra `q_i`.
pub fn check_braid_experimental(grid: &BraidGrid, opts: &SuiteOptions) -> Report {
    let mut rb = ReportBuilder::new("braid-experimental", serde_json::to_value(grid).unwrap()).non_gating();
    let mut cases = Vec::new();
    for &c in &grid.cases {
        for &e in &grid.e {
            for &p in &grid.pbar {
                cases.push((c, e, p));
            }
        }
    }
    let mutate = opts.mutate;
    let outcomes = run_cases(cases, opts.jobs, |&((a12, a21, i), e, p)| {
        let d = CartanDatum::rank2(a12, a21).unwrap();
        let alg = IAlgebra::new(&d);
        let mut oracle = ZeroOracle::new(&d);
        let t = Parity::Even;
        let params = json!({"a12": a12, "a21": a21, "i": i + 1, "e": e, "p": p.name()});
        let (b1, k1) = generator_images(&alg, i, e, BraidKind::Prime, p, t, mutate).unwrap();
        let (b2, k2) = generator_images(&alg, i, e, BraidKind::DoublePrime, p, t, false).unwrap();
        let mut out = Vec::new();
        let summary = |name: &str, ok: bool| {
            Outcome::Note(Note { item: name.into(), params: params.clone(), status: if ok { "pass" } else { "fail" }.into(), detail: String::new() })
        };
        let mut all_rel = [true, true];
        for (rname, rel) in relations(&alg) {
            for (idx, (bs, ks)) in [(&b1, &k1), (&b2, &k2)].into_iter().enumerate() {
                let img = apply_substitution(&alg, &rel, bs, ks);
                let ok = vanishes(&alg, &mut oracle, &img);
                all_rel[idx] &= ok;
                let name = if idx == 0 { "T'-relation" } else { "T''-relation" };
                out.push(Outcome::boolean(name, ok, || {
                    let mut pr = params.clone();
                    pr["relation"] = json!(rname);
                    (pr, img.render(), "0".into())
                }));
            }
        }
        let mut inv = [true, true];
        for g in 0..2 * d.rank() {
            let gen = if g < d.rank() { alg.b(g) } else { alg.k(g - d.rank(), 1) };
            for (idx, ((bo, ko), (bi, ki))) in [((&b1, &k1), (&b2, &k2)), ((&b2, &k2), (&b1, &k1))].into_iter().enumerate() {
                let img = if g < d.rank() { bo[g].clone() } else { ko[g - d.rank()].clone() };
                let back = apply_substitution(&alg, &img, bi, ki);
                let diff = back.sub(&gen);
                let ok = vanishes(&alg, &mut oracle, &diff);
                inv[idx] &= ok;
                let name = if idx == 0 { "T''T'=id" } else { "T'T''=id" };
                out.push(Outcome::boolean(name, ok, || {
                    let mut pr = params.clone();
                    pr["generator"] = json!(if g < d.rank() { format!("B[{}]", g + 1) } else { format!("k[{}]", g - d.rank() + 1) });
                    (pr, back.render(), gen.render())
                }));
            }
        }
        out.push(summary("relations-preserved", all_rel[0] && all_rel[1]));
        out.push(summary("mutually-inverse", inv[0] && inv[1]));
        out
    });
    rb.extend(outcomes);
    rb.finish()
}
