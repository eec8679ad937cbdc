//! The combinatorial functions G, H, T and exhaustive checkers for the pure
//! q-binomial identities they satisfy.

use std::cell::RefCell;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::qscalar::{qbinom_poly, qint_poly, LaurentPoly, QScalar};
use crate::report::{run_cases, Outcome, Report, ReportBuilder};
use crate::SuiteOptions;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GParams {
    pub w: i64,
    pub u: i64,
    pub ell: i64,
    pub p0: i64,
    pub p1: i64,
    pub p2: i64,
}

impl GParams {
    pub fn new(w: i64, u: i64, ell: i64, p0: i64, p1: i64, p2: i64) -> Self {
        assert!(u >= 0 && ell >= 0, "G needs u, ell >= 0");
        GParams { w, u, ell, p0, p1, p2 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TParams {
    pub w: i64,
    pub u: i64,
    pub l: i64,
    pub mu: i64,
    pub beta: i64,
    pub alpha: i64,
    /// Base `q_1 = q^eps`.
    pub eps: i32,
}

#[derive(Default)]
struct GCache {
    binom: FxHashMap<(i64, i64), LaurentPoly>,
    binom2: FxHashMap<(i64, i64), LaurentPoly>,
    inner: FxHashMap<(i64, i64, i64, i64), LaurentPoly>,
}

thread_local! {
    static G_CACHE: RefCell<GCache> = RefCell::new(GCache::default());
}

fn cached(m: &mut FxHashMap<(i64, i64), LaurentPoly>, n: i64, d: i64, eps: i32) -> &LaurentPoly {
    m.entry((n, d)).or_insert_with(|| qbinom_poly(n, d, eps))
}

/// `sum_{c=0}^{v} q^{d c} [a, c]_{q^2} [b, v-c]_{q^2}`.
fn inner_sum(cache: &mut GCache, v: i64, d: i64, a: i64, b: i64) -> LaurentPoly {
    if let Some(p) = cache.inner.get(&(v, d, a, b)) {
        return p.clone();
    }
    let mut acc = LaurentPoly::zero();
    for c in 0..=v {
        let x = cached(&mut cache.binom2, a, c, 2).clone();
        if x.is_zero() {
            continue;
        }
        let y = cached(&mut cache.binom2, b, v - c, 2);
        if y.is_zero() {
            continue;
        }
        acc.add_scaled(&(&x * y), 1, (d * c) as i32);
    }
    cache.inner.insert((v, d, a, b), acc.clone());
    acc
}

fn eval_g_impl(p: &GParams, mutate: bool) -> LaurentPoly {
    let GParams { w, u, ell, p0, p1, p2 } = *p;
    G_CACHE.with(|cell| {
        let mut cache = cell.borrow_mut();
        let cache = &mut *cache;
        let mut acc = LaurentPoly::zero();
        for t in 0..=ell {
            let mut tsum = LaurentPoly::zero();
            for b in 0..=u {
                let v = u - b;
                let (a_top, b_top, alpha, beta, sign) = if (t + w - b).rem_euclid(2) == 0 {
                    let x = (t + w - b).div_euclid(2);
                    let bump = if mutate { 1 } else { 0 };
                    (x + p1, x + p2, -u + 2 + 2 * p1 + bump, -u + 2 * p2, 1)
                } else {
                    let y = (w + t - b - 1).div_euclid(2);
                    (1 + y + p1, y + p2, -(u - 1) + 2 * p1, -(u - 1) + 2 * p2, -1)
                };
                let inner = inner_sum(cache, v, alpha - beta, a_top, b_top);
                if inner.is_zero() {
                    continue;
                }
                let bin = cached(&mut cache.binom, w + t + p0, b, 1);
                if bin.is_zero() {
                    continue;
                }
                tsum.add_scaled(&(bin * &inner), sign, (beta * v + b * p0) as i32);
            }
            if tsum.is_zero() {
                continue;
            }
            let lt = cached(&mut cache.binom, ell, t, 1);
            acc.add_scaled(&(lt * &tsum), 1, (-t * (ell + u - 1)) as i32);
        }
        let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
        acc.scale_i64(sign).shift((u * u - w * u + ell * u) as i32)
    })
}

/// Evaluates `G(w, u, ell; p0, p1, p2)` exactly as the defining double sum.
pub fn eval_g(p: &GParams) -> QScalar {
    QScalar::from_poly(eval_g_impl(p, false))
}

/// `H(u; p1, p2) = sum_{c+e=u} q^{2c+2c p1+2e p2} [p1, c]_{q^2} [p2, e]_{q^2}`.
pub fn eval_h(u: i64, p1: i64, p2: i64) -> QScalar {
    assert!(u >= 0, "H needs u >= 0");
    let mut acc = LaurentPoly::zero();
    for c in 0..=u {
        let e = u - c;
        let term = &qbinom_poly(p1, c, 2) * &qbinom_poly(p2, e, 2);
        acc.add_scaled(&term, 1, (2 * c + 2 * c * p1 + 2 * e * p2) as i32);
    }
    QScalar::from_poly(acc)
}

fn eval_t_impl(p: &TParams, mutate: bool) -> LaurentPoly {
    let TParams { w, u, l, mu, beta, alpha, eps } = *p;
    let mut acc = LaurentPoly::zero();
    let top_b = alpha * (mu + 2 * beta) + w - l;
    for b in 0..=u {
        for c in 0..=(u - b) {
            let e = u - b - c;
            let shared = 2 * alpha * beta * b + 2 * alpha * beta * e + u * (alpha * mu - l);
            let (exp, c_top, e_top, sign) = if (w - b).rem_euclid(2) == 0 {
                let h = (w - b).div_euclid(2);
                ((e - c - w) * (alpha * mu - l - u) + shared, u - 1 + h, alpha * (mu + beta) - l + h, 1)
            } else {
                let h1 = (w - b + 1).div_euclid(2);
                let h2 = (w - b - 1).div_euclid(2);
                let bump = if mutate { 0 } else { w };
                ((e - c - w) * (alpha * mu + 1 - l - u) + shared + bump, u - 1 + h1, alpha * (mu + beta) - l + h2, -1)
            };
            let term = &(&qbinom_poly(top_b, b, 1) * &qbinom_poly(c_top, c, 2)) * &qbinom_poly(e_top, e, 2);
            acc.add_scaled(&term, sign, exp as i32);
        }
    }
    if eps == 1 {
        acc
    } else {
        acc.substitute_power(eps)
    }
}

/// Evaluates `T(w, u, l, mu, beta)` with `alpha = -a_12` in base `q_1 = q^eps`.
pub fn eval_t(p: &TParams) -> QScalar {
    QScalar::from_poly(eval_t_impl(p, false))
}

/// Inclusive integer range used by suite grids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Span {
    pub lo: i64,
    pub hi: i64,
}

impl Span {
    pub const fn new(lo: i64, hi: i64) -> Self {
        Span { lo, hi }
    }

    pub fn iter(self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GGrid {
    pub w: Span,
    pub u: Span,
    pub ell: Span,
    pub p: Span,
    pub k: Span,
}

impl Default for GGrid {
    fn default() -> Self {
        GGrid { w: Span::new(-4, 4), u: Span::new(0, 4), ell: Span::new(0, 3), p: Span::new(-3, 3), k: Span::new(-2, 2) }
    }
}

fn gparams_json(p: &GParams) -> serde_json::Value {
    json!({"w": p.w, "u": p.u, "ell": p.ell, "p0": p.p0, "p1": p.p1, "p2": p.p2})
}

/// Checks the shift, parity, vanishing and `H`-comparison identities of `G` at every grid point.
pub fn verify_g_suite(grid: &GGrid, opts: &SuiteOptions) -> Report {
    let mut rb = ReportBuilder::new("qcomb-G", serde_json::to_value(grid).unwrap());
    let mutate = opts.mutate;
    let cases: Vec<(i64, i64)> = grid.u.iter().flat_map(|u| grid.ell.iter().map(move |l| (u, l))).collect();
    let outcomes = run_cases(cases, opts.jobs, |&(u, ell)| {
        let mut memo: FxHashMap<GParams, LaurentPoly> = FxHashMap::default();
        let mut g = |p: GParams| -> LaurentPoly { memo.entry(p).or_insert_with(|| eval_g_impl(&p, mutate)).clone() };
        let mut out = Vec::new();
        for w in grid.w.iter() {
            for p0 in grid.p.iter() {
                for p1 in grid.p.iter() {
                    for p2 in grid.p.iter() {
                        let p = GParams::new(w, u, ell, p0, p1, p2);
                        let base = QScalar::from_poly(g(p));
                        let lhs = QScalar::from_poly(g(GParams { ell: ell + 1, ..p }));
                        let rhs = &base.shift(u as i32) - &QScalar::from_poly(g(GParams { w: w + 1, ..p })).shift((u - 2 * ell) as i32);
                        out.push(Outcome::scalars("Gx+1w", &lhs, &rhs, || gparams_json(&p)));
                        for k in grid.k.iter() {
                            let shifted = GParams { w: w + 2 * k, p0: p0 - 2 * k, p1: p1 - k, p2: p2 - k, ..p };
                            let rhs = QScalar::from_poly(if k == 0 { g(shifted) } else { eval_g_impl(&shifted, mutate) })
                                .shift((4 * k * u) as i32);
                            out.push(Outcome::scalars("Gk", &base, &rhs, || {
                                let mut v = gparams_json(&p);
                                v["k"] = json!(k);
                                v
                            }));
                        }
                        let lhs = QScalar::from_poly(g(GParams { w: w + 1, ..p }));
                        let rhs = QScalar::from_poly(g(GParams { p0: p0 + 1, p1: p2, p2: p1 + 1, ..p })).shift((-2 * u) as i32);
                        out.push(Outcome::scalars("Godd", &lhs, &rhs, || gparams_json(&p)));
                        if ell > 0 {
                            out.push(Outcome::scalars("G=0", &base, &QScalar::zero(), || gparams_json(&p)));
                        }
                        if ell == 0 && p0 == 0 {
                            out.push(Outcome::scalars("GH00", &base, &eval_h(u, p1, p2), || gparams_json(&p)));
                        }
                    }
                }
            }
        }
        out
    });
    rb.extend(outcomes);
    rb.finish()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TGrid {
    pub w: Span,
    pub u: Span,
    pub l: Span,
    pub mu: Span,
    pub beta: Span,
    pub alpha: Vec<i64>,
    pub eps: Vec<i32>,
}

impl Default for TGrid {
    fn default() -> Self {
        TGrid {
            w: Span::new(-3, 3),
            u: Span::new(0, 3),
            l: Span::new(0, 4),
            mu: Span::new(0, 3),
            beta: Span::new(0, 1),
            alpha: vec![1, 2, 3],
            eps: vec![1],
        }
    }
}

fn tparams_json(p: &TParams) -> serde_json::Value {
    json!({"w": p.w, "u": p.u, "l": p.l, "mu": p.mu, "beta": p.beta, "alpha": p.alpha, "eps": p.eps})
}

/// Checks the `T`/`G` comparison, quasi-periodicity in `w`, and the vanishing region of `T`.
pub fn verify_t_suite(grid: &TGrid, opts: &SuiteOptions) -> Report {
    let mut rb = ReportBuilder::new("qcomb-T", serde_json::to_value(grid).unwrap());
    let mutate = opts.mutate;
    let mut cases = Vec::new();
    for &eps in &grid.eps {
        for &alpha in &grid.alpha {
            for u in grid.u.iter() {
                cases.push((eps, alpha, u));
            }
        }
    }
    let outcomes = run_cases(cases, opts.jobs, |&(eps, alpha, u)| {
        let mut out = Vec::new();
        for l in grid.l.iter() {
            for mu in grid.mu.iter() {
                for beta in grid.beta.iter() {
                    for w in grid.w.iter() {
                        let p = TParams { w, u, l, mu, beta, alpha, eps };
                        let t = QScalar::from_poly(eval_t_impl(&p, mutate));
                        let gp = GParams::new(w, u, 0, alpha * (mu + 2 * beta) - l, u - 1, alpha * (mu + beta) - l);
                        let g = QScalar::from_poly(eval_g_impl(&gp, false).substitute_power(eps));
                        let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
                        let rhs = g.shift(eps * (-(alpha * mu - l - 2 * u) * w - u * u) as i32).scale_i64(sign);
                        out.push(Outcome::scalars("gT=G", &t, &rhs, || tparams_json(&p)));
                        let t1 = QScalar::from_poly(eval_t_impl(&TParams { w: w + 1, ..p }, mutate));
                        let rhs = t.shift(eps * (-(alpha * mu - l - 2 * u)) as i32).scale_i64(-1);
                        out.push(Outcome::scalars("w+1", &t1, &rhs, || tparams_json(&p)));
                        if l <= alpha * mu && alpha * mu <= 2 * u + l - 1 - 2 * alpha * beta {
                            out.push(Outcome::scalars("gT=0", &t, &QScalar::zero(), || tparams_json(&p)));
                        }
                    }
                }
            }
        }
        out
    });
    rb.extend(outcomes);
    rb.finish()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AppBGrid {
    pub m: Span,
    pub a: Span,
    pub n: Span,
    pub e: Vec<i64>,
    /// Range of `k` for the standalone q²-binomial recursion.
    pub k: Span,
    pub u: Span,
}

impl Default for AppBGrid {
    fn default() -> Self {
        AppBGrid { m: Span::new(0, 8), a: Span::new(-3, 0), n: Span::new(0, 3), e: vec![-1, 1], k: Span::new(-6, 8), u: Span::new(0, 6) }
    }
}

fn qi(n: i64) -> QScalar {
    QScalar::from_poly(qint_poly(n, 1))
}

fn qb2(n: i64, d: i64) -> QScalar {
    QScalar::from_poly(qbinom_poly(n, d, 2))
}

fn qp(k: i64) -> QScalar {
    QScalar::q_pow(k as i32)
}

/// Both sides of the even-case three-term identity; `na = n * a`.
pub fn eqn1_sides(m: i64, na: i64, r: i64, s: i64, u: i64, e: i64, mutate: bool) -> (QScalar, QScalar) {
    let h = (m + na) / 2;
    let h2 = (m + na - 2) / 2;
    let first = if mutate { -e * (2 * m + na + 1) } else { -e * (2 * m + na) };
    let lhs = &(&(&qp(first) * &(&qi(r) * &qb2(h, u))) + &(&qp(-e * (m + na - 1)) * &(&qi(s) * &qb2(h2, u))))
        + &(&qi(s + 1) * &qb2(h2, u - 1));
    let rhs = &(&qp(-e * (m + na + r - 1)) * &(&qi(m + 1) * &qb2(h, u)))
        - &(&qp(-e * (2 * m + na + 1 - r - 2 * u)) * &(&qi(m + na - 1) * &qb2(h2, u - 1)));
    (lhs, rhs)
}

/// Both sides of the odd-case identity; `na = n * a`.
pub fn eqn2_sides(m: i64, na: i64, r: i64, s: i64, u: i64, e: i64, mutate: bool) -> (QScalar, QScalar) {
    let h = (m + na - 1) / 2;
    let hp = (m + na + 1) / 2;
    let first = if mutate { -e * (2 * m + na) } else { -e * (2 * m + na - 1) };
    let lhs = [
        &qp(first) * &(&qi(r) * &qb2(h, u)),
        &qp(-e * (2 * u + m + na - 2)) * &(&qi(s) * &qb2(h, u)),
        &qp(-e * (3 * m + 2 * na - 1)) * &(&qi(r + 1) * &qb2(h, u - 1)),
        &qp(-e * (2 * u - 2)) * &(&qi(s + 1) * &qb2(h, u - 1)),
    ]
    .iter()
    .fold(QScalar::zero(), |acc, x| &acc + x);
    let rhs = &(&qp(-e * (m + na + 2 * u + r - 2)) * &(&qi(m + 1) * &qb2(hp, u)))
        - &(&qp(-e * (2 * m + na - r - 1)) * &(&qi(m + na - 1) * &qb2(h, u - 1)));
    (lhs, rhs)
}

/// Checks the two auxiliary three-term identities over all admissible `(r, s, u)` and the q²-binomial recursion.
pub fn verify_appb_suite(grid: &AppBGrid, opts: &SuiteOptions) -> Report {
    let mut rb = ReportBuilder::new("qcomb-appB", serde_json::to_value(grid).unwrap());
    let mutate = opts.mutate;
    let mut cases = Vec::new();
    for a in grid.a.iter() {
        for n in grid.n.iter() {
            cases.push((a, n));
        }
    }
    let outcomes = run_cases(cases, opts.jobs, |&(a, n)| {
        let mut out = Vec::new();
        let na = n * a;
        for m in grid.m.iter() {
            for &e in &grid.e {
                for u in 0..=(m + 1) / 2 {
                    for r in 0..=(m + 1 - 2 * u) {
                        let s = m + 1 - 2 * u - r;
                        let params = || json!({"m": m, "a": a, "n": n, "e": e, "r": r, "s": s, "u": u});
                        if (m + na).rem_euclid(2) == 0 {
                            let (l, rr) = eqn1_sides(m, na, r, s, u, e, mutate);
                            out.push(Outcome::scalars("eqn1", &l, &rr, params));
                        } else {
                            let (l, rr) = eqn2_sides(m, na, r, s, u, e, mutate);
                            out.push(Outcome::scalars("eqn2", &l, &rr, params));
                        }
                    }
                }
            }
        }
        out
    });
    rb.extend(outcomes);
    for &e in &grid.e {
        for k in grid.k.iter() {
            for u in grid.u.iter() {
                let lhs = qb2(k + 1, u);
                let bump = if mutate { 1 } else { 0 };
                let rhs = &(&qp(-2 * e * u + bump) * &qb2(k, u)) + &(&qp(e * (2 * k - 2 * u + 2)) * &qb2(k, u - 1));
                rb.push(Outcome::scalars("qbi", &lhs, &rhs, || json!({"k": k, "u": u, "e": e})));
            }
        }
    }
    rb.finish()
}
