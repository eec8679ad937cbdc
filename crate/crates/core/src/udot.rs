//! Rank-one modified quantum group: terms `E^(a) F^(b) 1*_m` with orthogonal idempotents.
//!
//! Used as an independent check of the PBW expansions of ıdivided powers, with the
//! parameter fixed so that `q_i ς_i = 1`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::qscalar::{qbinom, qint, qfactorial, Parity, QScalar};
use crate::report::{run_cases, Outcome, Report, ReportBuilder};
use crate::SuiteOptions;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UdotError {
    #[error("symmetrizer mismatch: {0} vs {1}")]
    EpsMismatch(i32, i32),
}

/// `E^(a) F^(b) 1*_m`; the idempotent sits on the right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DotTerm {
    pub a: u32,
    pub b: u32,
    pub m: i64,
}

impl DotTerm {
    /// Label of the idempotent on the left: `1*_{m + 2a - 2b} E^(a) F^(b) 1*_m`.
    pub fn target(&self) -> i64 {
        self.m + 2 * self.a as i64 - 2 * self.b as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DotElement {
    pub eps: i32,
    terms: BTreeMap<DotTerm, QScalar>,
}

impl DotElement {
    pub fn zero(eps: i32) -> Self {
        DotElement { eps, terms: BTreeMap::new() }
    }

    pub fn term(eps: i32, a: u32, b: u32, m: i64, c: QScalar) -> Self {
        let mut x = Self::zero(eps);
        x.add_term(DotTerm { a, b, m }, c);
        x
    }

    /// The idempotent `1*_m`.
    pub fn idempotent(eps: i32, m: i64) -> Self {
        Self::term(eps, 0, 0, m, QScalar::one())
    }

    /// `B 1*_m = F 1*_m + q_i^{-1-m} E 1*_m`.
    pub fn b_at(eps: i32, m: i64) -> Self {
        let mut x = Self::term(eps, 0, 1, m, QScalar::one());
        x.add_term(DotTerm { a: 1, b: 0, m }, QScalar::q_pow(eps * (-1 - m) as i32));
        x
    }

    pub fn add_term(&mut self, t: DotTerm, c: QScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(t).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&t);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DotTerm, &QScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, t: &DotTerm) -> QScalar {
        self.terms.get(t).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &DotElement) -> DotElement {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(*t, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &DotElement) -> DotElement {
        self.add(&other.scale(&QScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &QScalar) -> DotElement {
        let mut out = Self::zero(self.eps);
        for (t, x) in &self.terms {
            out.add_term(*t, x * c);
        }
        out
    }

    /// Left multiplication by `B`, summed over all idempotents.
    pub fn left_mul_b(&self) -> DotElement {
        let mut out = Self::zero(self.eps);
        for (t, c) in &self.terms {
            let b = Self::b_at(self.eps, t.target());
            let single = Self::term(self.eps, t.a, t.b, t.m, c.clone());
            out = out.add(&dot_multiply(&b, &single).expect("same eps"));
        }
        out
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(t, c)| {
                let mut mono = String::new();
                if t.a > 0 {
                    mono.push_str(&format!("E^({})", t.a));
                }
                if t.b > 0 {
                    mono.push_str(&format!("F^({})", t.b));
                }
                if !mono.is_empty() {
                    mono.push(' ');
                }
                format!("{} * {}1*[{}]", c.render_factor(), mono, t.m)
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for DotElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `F^(b) E^(c) 1*_m = sum_t [b - c - m, t]_i E^(c-t) F^(b-t) 1*_m`.
fn fe_to_ef(b: u32, c: u32, m: i64, eps: i32) -> Vec<(u32, u32, QScalar)> {
    (0..=b.min(c)).map(|t| (c - t, b - t, qbinom(b as i64 - c as i64 - m, t as i64, eps))).filter(|x| !x.2.is_zero()).collect()
}

/// `E^(a) F^(b) 1*_m = sum_t [a - b + m, t]_i F^(b-t) E^(a-t) 1*_m`, as `(F power, E power, coeff)`.
fn ef_to_fe(a: u32, b: u32, m: i64, eps: i32) -> Vec<(u32, u32, QScalar)> {
    (0..=a.min(b)).map(|t| (b - t, a - t, qbinom(a as i64 - b as i64 + m, t as i64, eps))).filter(|x| !x.2.is_zero()).collect()
}

pub fn dot_multiply(x: &DotElement, y: &DotElement) -> Result<DotElement, UdotError> {
    if x.eps != y.eps {
        return Err(UdotError::EpsMismatch(x.eps, y.eps));
    }
    let eps = x.eps;
    let mut out = DotElement::zero(eps);
    for (s, cs) in &x.terms {
        for (t, ct) in &y.terms {
            if s.m != t.target() {
                continue;
            }
            // E^(a) F^(b) E^(c) 1*_{m'-2d} F^(d) 1*_{m'}
            let mid = t.m - 2 * t.b as i64;
            let c0 = cs * ct;
            for (e, f, k) in fe_to_ef(s.b, t.a, mid, eps) {
                let merge_e = qbinom((s.a + e) as i64, s.a as i64, eps);
                let merge_f = qbinom((f + t.b) as i64, t.b as i64, eps);
                let c = &(&c0 * &k) * &(&merge_e * &merge_f);
                out.add_term(DotTerm { a: s.a + e, b: f + t.b, m: t.m }, c);
            }
        }
    }
    Ok(out)
}

/// `B^{(m)}_{p} 1*_label` for every label in `labels`, with `q_i ς_i = 1`.
pub fn dot_idp(eps: i32, m: i64, p: Parity, labels: impl IntoIterator<Item = i64>) -> BTreeMap<i64, DotElement> {
    labels.into_iter().map(|l| (l, dot_idp_at(eps, m, p, l))).collect()
}

fn dot_idp_at(eps: i32, m: i64, p: Parity, label: i64) -> DotElement {
    let mut x = DotElement::idempotent(eps, label);
    if m < 0 {
        return DotElement::zero(eps);
    }
    let k = m / 2;
    for j in 1..=k {
        let sq = match (p, m % 2 == 1) {
            (Parity::Odd, _) => qint(2 * j - 1, eps),
            (Parity::Even, true) => qint(2 * j, eps),
            (Parity::Even, false) => qint(2 * j - 2, eps),
        };
        let b2 = x.left_mul_b().left_mul_b();
        x = b2.sub(&x.scale(&(&sq * &sq)));
    }
    if m % 2 == 1 {
        x = x.left_mul_b();
    }
    x.scale(&qfactorial(m, eps).recip().expect("nonzero"))
}

/// The four closed PBW families, indexed by which divided power they expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IdpFamily {
    /// `B^{(2m)}_{even} 1*_{2λ}`.
    EvenEven,
    /// `B^{(2m-1)}_{even} 1*_{2λ}`.
    EvenOdd,
    /// `B^{(2m)}_{odd} 1*_{2λ-1}`.
    OddEven,
    /// `B^{(2m+1)}_{odd} 1*_{2λ-1}`.
    OddOdd,
}

impl IdpFamily {
    pub const ALL: [IdpFamily; 4] = [IdpFamily::EvenEven, IdpFamily::EvenOdd, IdpFamily::OddEven, IdpFamily::OddOdd];

    /// `(order of the divided power, parity, idempotent label)`.
    pub fn shape(self, m: i64, lambda: i64) -> (i64, Parity, i64) {
        match self {
            IdpFamily::EvenEven => (2 * m, Parity::Even, 2 * lambda),
            IdpFamily::EvenOdd => (2 * m - 1, Parity::Even, 2 * lambda),
            IdpFamily::OddEven => (2 * m, Parity::Odd, 2 * lambda - 1),
            IdpFamily::OddOdd => (2 * m + 1, Parity::Odd, 2 * lambda - 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            IdpFamily::EvenEven => "idp-even-2m",
            IdpFamily::EvenOdd => "idp-even-2m-1",
            IdpFamily::OddEven => "idp-odd-2m",
            IdpFamily::OddOdd => "idp-odd-2m+1",
        }
    }
}

fn choose2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// The closed PBW sum for `family` at `(m, λ)`; `mutate` bumps one exponent of the first family.
pub fn idp_closed_form(eps: i32, family: IdpFamily, m: i64, lambda: i64, mutate: bool) -> DotElement {
    let (order, _, label) = family.shape(m, lambda);
    let mut out = DotElement::zero(eps);
    if order < 0 {
        return out;
    }
    let cmax = order / 2;
    for c in 0..=cmax {
        for a in 0..=order - 2 * c {
            let base = 2 * (a + c) * (m - a - lambda) - 2 * a * c;
            let (exp, top) = match family {
                IdpFamily::EvenEven => (base - choose2(2 * c + 1) + if mutate { 1 } else { 0 }, m - c - a - lambda),
                IdpFamily::EvenOdd => (base - a - choose2(2 * c + 1), m - c - a - lambda - 1),
                IdpFamily::OddEven => (base + a - choose2(2 * c), m - c - a - lambda),
                IdpFamily::OddOdd => (base + 2 * a - choose2(2 * c), m - c - a - lambda + 1),
            };
            let coef = &QScalar::q_pow(eps * exp as i32) * &qbinom(top, c, 2 * eps);
            out.add_term(DotTerm { a: a as u32, b: (order - 2 * c - a) as u32, m: label }, coef);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UdotGrid {
    pub eps: Vec<i32>,
    pub m_max: i64,
    pub lambda: (i64, i64),
    /// `a, b <= pbw_max`, `|m| <= label_max` for the reordering round trip.
    pub pbw_max: u32,
    pub label_max: i64,
    pub recursion_r_max: i64,
}

impl Default for UdotGrid {
    fn default() -> Self {
        UdotGrid { eps: vec![1, 2], m_max: 4, lambda: (-3, 3), pbw_max: 4, label_max: 6, recursion_r_max: 6 }
    }
}

/// Closed PBW expansions against direct expansion, the reordering round trip, and the divided-power recursion.
/// Mutation: the exponent of the `B^{(2m)}_{even}` family is off by one.
pub fn verify_idp_expansion(grid: &UdotGrid, opts: &SuiteOptions) -> Report {
    let mut rb = ReportBuilder::new("udot-idp", serde_json::to_value(grid).unwrap());
    let mutate = opts.mutate;
    let mut cases = Vec::new();
    for &eps in &grid.eps {
        for lambda in grid.lambda.0..=grid.lambda.1 {
            cases.push((eps, lambda));
        }
    }
    let g = grid.clone();
    let outcomes = run_cases(cases, opts.jobs, |&(eps, lambda)| {
        let mut out = Vec::new();
        for family in IdpFamily::ALL {
            let m0 = if family == IdpFamily::EvenOdd { 1 } else { 0 };
            for m in m0..=g.m_max {
                let (order, p, label) = family.shape(m, lambda);
                let direct = dot_idp_at(eps, order, p, label);
                let closed = idp_closed_form(eps, family, m, lambda, mutate);
                out.push(Outcome::boolean(family.name(), direct == closed, || {
                    (json!({"eps": eps, "m": m, "lambda": lambda}), direct.render(), closed.render())
                }));
            }
        }
        // recursion at both labels attached to this λ
        for label in [2 * lambda, 2 * lambda - 1] {
            for p in Parity::both() {
                for r in 0..=g.recursion_r_max {
                    let lhs = dot_idp_at(eps, r, p, label).left_mul_b();
                    let mut rhs = dot_idp_at(eps, r + 1, p, label).scale(&qint(r + 1, eps));
                    if Parity::of(r) == p {
                        rhs = rhs.add(&dot_idp_at(eps, r - 1, p, label).scale(&qint(r, eps)));
                    }
                    out.push(Outcome::boolean("idp-recursion", lhs == rhs, || {
                        (json!({"eps": eps, "r": r, "p": p.name(), "label": label}), lhs.render(), rhs.render())
                    }));
                }
            }
        }
        out
    });
    rb.extend(outcomes);
    for &eps in &grid.eps {
        for a in 0..=grid.pbw_max {
            for b in 0..=grid.pbw_max {
                for m in -grid.label_max..=grid.label_max {
                    let back = pbw_round_trip(eps, a, b, m);
                    let orig = DotElement::term(eps, a, b, m, QScalar::one());
                    rb.push(Outcome::boolean("reorder-round-trip", back == orig, || {
                        (json!({"eps": eps, "a": a, "b": b, "m": m}), back.render(), orig.render())
                    }));
                }
            }
        }
    }
    rb.finish()
}

/// Reorders `E^(a) F^(b) 1*_m` into `F E` form and back.
pub fn pbw_round_trip(eps: i32, a: u32, b: u32, m: i64) -> DotElement {
    let mut out = DotElement::zero(eps);
    for (f, e, c) in ef_to_fe(a, b, m, eps) {
        for (e2, f2, c2) in fe_to_ef(f, e, m, eps) {
            out.add_term(DotTerm { a: e2, b: f2, m }, &c * &c2);
        }
    }
    out
}
