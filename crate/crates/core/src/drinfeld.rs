//! The Drinfeld double: triangular normal form, divided powers, the twisted
//! derivations `r_i`, exact zero tests, and the classical Serre–Lusztig layer.
//!
//! Elements are kept as finite sums of normal monomials `E-word · K · F-word`.
//! Internally the Cartan part is expressed through `K̂_i = K̃_i/(q_i − q_i^{-1})`
//! and `K̂'_i = K̃'_i/(q_i − q_i^{-1})`; then `[E_i, F_i] = K̂_i − K̂'_i` and
//! rewriting never introduces denominators. All accessors and renderings use
//! the `K̃`, `K̃'` basis.

use std::collections::BTreeMap;
use std::rc::Rc;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::cartan::CartanDatum;
use crate::qscalar::{qfactorial, qint, LaurentPoly, QScalar};
use crate::report::{run_cases, Outcome, Report, ReportBuilder};
use crate::SuiteOptions;

/// A word in the letters `E_i` (or `F_i`), stored as 0-based node indices.
pub type Word = Vec<u8>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    E,
    F,
}

/// Normal monomial `E_{eword} · K̃^{kvec[..n]} K̃'^{kvec[n..]} · F_{fword}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriMonomial {
    pub eword: Word,
    pub kvec: Vec<i32>,
    pub fword: Word,
}

impl TriMonomial {
    pub fn identity(rank: usize) -> Self {
        TriMonomial { eword: Vec::new(), kvec: vec![0; 2 * rank], fword: Vec::new() }
    }
}

/// An element of the Drinfeld double as a map from normal monomials to coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DDElement {
    rank: usize,
    terms: FxHashMap<TriMonomial, QScalar>,
}

pub(crate) fn add_into<K: std::hash::Hash + Eq>(map: &mut FxHashMap<K, QScalar>, key: K, c: QScalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::hash_map::Entry;
    match map.entry(key) {
        Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
        Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

impl DDElement {
    pub fn zero(rank: usize) -> Self {
        DDElement { rank, terms: FxHashMap::default() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_structurally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &DDElement) -> DDElement {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &DDElement) {
        for (m, c) in &other.terms {
            add_into(&mut self.terms, m.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &DDElement) -> DDElement {
        self.add(&other.scale(&QScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &QScalar) -> DDElement {
        if c.is_zero() {
            return DDElement::zero(self.rank);
        }
        DDElement { rank: self.rank, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    /// Raw internal terms (coefficients relative to the rescaled Cartan part).
    pub(crate) fn raw_terms(&self) -> &FxHashMap<TriMonomial, QScalar> {
        &self.terms
    }

    pub(crate) fn add_raw(&mut self, m: TriMonomial, c: QScalar) {
        add_into(&mut self.terms, m, c);
    }
}

/// The Drinfeld double attached to a Cartan datum, holding the scalars needed for rewriting.
#[derive(Clone, Debug)]
pub struct DoubleAlgebra {
    datum: CartanDatum,
    /// `q_i - q_i^{-1}`.
    cvals: Vec<QScalar>,
}

impl DoubleAlgebra {
    pub fn new(datum: &CartanDatum) -> Self {
        let cvals = (0..datum.rank())
            .map(|i| {
                let e = datum.eps(i) as i32;
                &QScalar::q_pow(e) - &QScalar::q_pow(-e)
            })
            .collect();
        DoubleAlgebra { datum: datum.clone(), cvals }
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    /// `q_i - q_i^{-1}`.
    pub fn c(&self, i: usize) -> &QScalar {
        &self.cvals[i]
    }

    fn kfactor(&self, kvec: &[i32]) -> QScalar {
        let n = self.rank();
        let mut acc = QScalar::one();
        for i in 0..n {
            let p = kvec[i] + kvec[n + i];
            if p != 0 {
                acc = &acc * &self.cvals[i].pow(p).expect("nonzero");
            }
        }
        acc
    }

    /// Builds `c * monomial` with `c` in the `K̃` basis.
    pub fn monomial(&self, m: TriMonomial, c: QScalar) -> DDElement {
        let mut out = DDElement::zero(self.rank());
        let c = &c * &self.kfactor(&m.kvec);
        out.add_raw(m, c);
        out
    }

    pub fn scalar(&self, c: QScalar) -> DDElement {
        self.monomial(TriMonomial::identity(self.rank()), c)
    }

    pub fn one(&self) -> DDElement {
        self.scalar(QScalar::one())
    }

    pub fn zero(&self) -> DDElement {
        DDElement::zero(self.rank())
    }

    pub fn e(&self, i: usize) -> DDElement {
        let mut m = TriMonomial::identity(self.rank());
        m.eword.push(i as u8);
        self.monomial(m, QScalar::one())
    }

    pub fn f(&self, i: usize) -> DDElement {
        let mut m = TriMonomial::identity(self.rank());
        m.fword.push(i as u8);
        self.monomial(m, QScalar::one())
    }

    /// `K̃_i^p`.
    pub fn kt(&self, i: usize, p: i32) -> DDElement {
        let mut m = TriMonomial::identity(self.rank());
        m.kvec[i] = p;
        self.monomial(m, QScalar::one())
    }

    /// `K̃'_i^p`.
    pub fn ktp(&self, i: usize, p: i32) -> DDElement {
        let mut m = TriMonomial::identity(self.rank());
        m.kvec[self.rank() + i] = p;
        self.monomial(m, QScalar::one())
    }

    /// A single word in `E`'s or `F`'s with coefficient `c`.
    pub fn word(&self, side: Side, w: &[u8], c: QScalar) -> DDElement {
        let mut m = TriMonomial::identity(self.rank());
        match side {
            Side::E => m.eword = w.to_vec(),
            Side::F => m.fword = w.to_vec(),
        }
        self.monomial(m, c)
    }

    /// `X_i^{(n)} = X_i^n / [n]_i!`.
    pub fn divided_power(&self, i: usize, n: i64, side: Side) -> DDElement {
        if n < 0 {
            return self.zero();
        }
        let c = QScalar::one() / qfactorial(n, self.datum.eps(i) as i32);
        self.word(side, &vec![i as u8; n as usize], c)
    }

    /// Terms in the `K̃` basis, sorted by monomial.
    pub fn terms(&self, x: &DDElement) -> Vec<(TriMonomial, QScalar)> {
        let mut v: Vec<(TriMonomial, QScalar)> =
            x.terms.iter().map(|(m, c)| (m.clone(), c / &self.kfactor(&m.kvec))).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    /// Coefficient of a normal monomial, in the `K̃` basis.
    pub fn coefficient(&self, x: &DDElement, m: &TriMonomial) -> QScalar {
        match x.terms.get(m) {
            Some(c) => c / &self.kfactor(&m.kvec),
            None => QScalar::zero(),
        }
    }

    /// Quotient by the central elements `K̃_i K̃'_i - ς_i` for the listed split nodes:
    /// every `K̃'_i^y` becomes `ς_i^y K̃_i^{-y}`. Other nodes are left alone.
    pub fn specialize_cartan(&self, x: &DDElement, varsigma: &BTreeMap<usize, QScalar>) -> DDElement {
        let n = self.rank();
        let mut out = self.zero();
        for (mut m, mut c) in self.terms(x) {
            for (&i, s) in varsigma {
                if i < n && self.datum.tau(i) == i && m.kvec[n + i] != 0 {
                    let y = m.kvec[n + i];
                    c = &c * &s.pow(y).expect("nonzero parameter");
                    m.kvec[i] -= y;
                    m.kvec[n + i] = 0;
                }
            }
            out.add_assign(&self.monomial(m, c));
        }
        out
    }

    /// Renders as `coeff * E[..]E[..] Kt[i]^a Ktp[j]^b F[..]` terms joined by ` + `.
    pub fn render(&self, x: &DDElement) -> String {
        let terms = self.terms(x);
        if terms.is_empty() {
            return "0".to_string();
        }
        terms.iter().map(|(m, c)| format!("{} * {}", c.render_factor(), render_monomial(m, self.rank()))).collect::<Vec<_>>().join(" + ")
    }

    /// Exponent of `q` picked up when `K^kvec` moves right past `E_a`: `K E_a = q^s E_a K`.
    fn k_past_e(&self, kvec: &[i32], a: usize) -> i32 {
        let n = self.rank();
        let mut s = 0i64;
        for b in 0..n {
            let d = (kvec[b] - kvec[n + b]) as i64;
            if d != 0 {
                s += d * self.datum.dot(b, a);
            }
        }
        s as i32
    }

    /// Exponent picked up when an `F`-word moves right past `K^kvec`: `f K = q^s K f`.
    fn f_past_k(&self, fword: &[u8], kvec: &[i32]) -> i32 {
        let n = self.rank();
        let mut s = 0i64;
        for &b in fword {
            for a in 0..n {
                let d = (kvec[a] - kvec[n + a]) as i64;
                if d != 0 {
                    s += d * self.datum.dot(a, b as usize);
                }
            }
        }
        s as i32
    }

    /// `x · E_a`.
    pub(crate) fn right_mul_e(&self, x: &DDElement, a: usize) -> DDElement {
        let n = self.rank();
        let mut out: FxHashMap<TriMonomial, QScalar> = FxHashMap::default();
        out.reserve(x.terms.len() * 2);
        for (m, c) in &x.terms {
            // corrections from crossing F_a letters: f_<p (K̂_a − K̂'_a) f_>p
            let mut s = 0i64;
            for (p, &b) in m.fword.iter().enumerate() {
                if b as usize == a {
                    let mut f2 = m.fword.clone();
                    f2.remove(p);
                    let mut k1 = m.kvec.clone();
                    k1[a] += 1;
                    add_into(&mut out, TriMonomial { eword: m.eword.clone(), kvec: k1, fword: f2.clone() }, c.shift(s as i32).scale_i64(-1));
                    let mut k2 = m.kvec.clone();
                    k2[n + a] += 1;
                    add_into(&mut out, TriMonomial { eword: m.eword.clone(), kvec: k2, fword: f2 }, c.shift(-s as i32));
                }
                s += self.datum.dot(a, b as usize);
            }
            let sh = self.k_past_e(&m.kvec, a);
            let mut e2 = m.eword.clone();
            e2.push(a as u8);
            add_into(&mut out, TriMonomial { eword: e2, kvec: m.kvec.clone(), fword: m.fword.clone() }, c.shift(sh));
        }
        DDElement { rank: n, terms: out }
    }

    /// `x · F_a`.
    pub(crate) fn right_mul_f(&self, x: &DDElement, a: usize) -> DDElement {
        let terms = x
            .terms
            .iter()
            .map(|(m, c)| {
                let mut f2 = m.fword.clone();
                f2.push(a as u8);
                (TriMonomial { eword: m.eword.clone(), kvec: m.kvec.clone(), fword: f2 }, c.clone())
            })
            .collect();
        DDElement { rank: x.rank, terms }
    }

    /// `x · K̂^kdelta` (rescaled Cartan monomial).
    pub(crate) fn right_mul_khat(&self, x: &DDElement, kdelta: &[i32]) -> DDElement {
        let terms = x
            .terms
            .iter()
            .map(|(m, c)| {
                let sh = self.f_past_k(&m.fword, kdelta);
                let k2: Vec<i32> = m.kvec.iter().zip(kdelta).map(|(a, b)| a + b).collect();
                (TriMonomial { eword: m.eword.clone(), kvec: k2, fword: m.fword.clone() }, c.shift(sh))
            })
            .collect();
        DDElement { rank: x.rank, terms }
    }

    /// `x · m` for a single normal monomial with raw coefficient 1.
    fn right_mul_monomial(&self, x: &DDElement, m: &TriMonomial) -> DDElement {
        let mut acc = x.clone();
        for &a in &m.eword {
            acc = self.right_mul_e(&acc, a as usize);
        }
        if m.kvec.iter().any(|k| *k != 0) {
            acc = self.right_mul_khat(&acc, &m.kvec);
        }
        for &a in &m.fword {
            acc = self.right_mul_f(&acc, a as usize);
        }
        acc
    }

    /// Product in the Drinfeld double, rewritten to normal form (Serre relations are not applied).
    pub fn mul(&self, a: &DDElement, b: &DDElement) -> DDElement {
        let mut out = self.zero();
        for (m, c) in &b.terms {
            let prod = self.right_mul_monomial(a, m);
            out.add_assign(&prod.scale(c));
        }
        out
    }

    /// Product of a list of factors, left to right.
    pub fn product(&self, factors: &[DDElement]) -> DDElement {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    /// Integer power.
    pub fn pow(&self, x: &DDElement, n: u32) -> DDElement {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// True iff `x = 0` in the Drinfeld double (complete test; see [`ZeroOracle`]).
    pub fn is_zero(&self, x: &DDElement) -> bool {
        ZeroOracle::new(&self.datum).dd_is_zero(x)
    }

    /// `S_ij = sum_r (-1)^r [1-a_ij, r]_i X_i^r X_j X_i^{1-a_ij-r}` as a word combination.
    pub fn serre_element(&self, i: usize, j: usize) -> HalfComb {
        let n = 1 - self.datum.a(i, j);
        let eps = self.datum.eps(i) as i32;
        let mut out = HalfComb::default();
        for r in 0..=n {
            let mut w = vec![i as u8; r as usize];
            w.push(j as u8);
            w.extend(std::iter::repeat_n(i as u8, (n - r) as usize));
            let c = crate::qscalar::qbinom(n, r, eps).scale_i64(if r % 2 == 0 { 1 } else { -1 });
            add_into(&mut out.0, w, c);
        }
        out
    }

    /// Embeds a one-sided combination of words.
    pub fn from_half(&self, x: &HalfComb, side: Side) -> DDElement {
        let mut out = self.zero();
        for (w, c) in &x.0 {
            let mut m = TriMonomial::identity(self.rank());
            match side {
                Side::E => m.eword = w.clone(),
                Side::F => m.fword = w.clone(),
            }
            out.add_raw(m, c.clone());
        }
        out
    }
}

pub fn render_monomial(m: &TriMonomial, rank: usize) -> String {
    let mut parts: Vec<String> = Vec::new();
    if !m.eword.is_empty() {
        parts.push(m.eword.iter().map(|a| format!("E[{}]", a + 1)).collect());
    }
    for i in 0..rank {
        let p = m.kvec[i];
        if p == 1 {
            parts.push(format!("Kt[{}]", i + 1));
        } else if p != 0 {
            parts.push(format!("Kt[{}]^{}", i + 1, p));
        }
    }
    for i in 0..rank {
        let p = m.kvec[rank + i];
        if p == 1 {
            parts.push(format!("Ktp[{}]", i + 1));
        } else if p != 0 {
            parts.push(format!("Ktp[{}]^{}", i + 1, p));
        }
    }
    if !m.fword.is_empty() {
        parts.push(m.fword.iter().map(|a| format!("F[{}]", a + 1)).collect());
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

/// A linear combination of one-sided words (all `E`'s or all `F`'s).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HalfComb(pub FxHashMap<Word, QScalar>);

impl HalfComb {
    pub fn word(w: &[u8], c: QScalar) -> Self {
        let mut h = HalfComb::default();
        add_into(&mut h.0, w.to_vec(), c);
        h
    }

    pub fn add_term(&mut self, w: Word, c: QScalar) {
        add_into(&mut self.0, w, c);
    }

    pub fn add(&self, other: &HalfComb) -> HalfComb {
        let mut out = self.clone();
        for (w, c) in &other.0 {
            add_into(&mut out.0, w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &QScalar) -> HalfComb {
        let mut out = HalfComb::default();
        for (w, x) in &self.0 {
            add_into(&mut out.0, w.clone(), x * c);
        }
        out
    }

    /// Concatenation product in the free algebra.
    pub fn mul(&self, other: &HalfComb) -> HalfComb {
        let mut out = HalfComb::default();
        for (w1, c1) in &self.0 {
            for (w2, c2) in &other.0 {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                add_into(&mut out.0, w, c1 * c2);
            }
        }
        out
    }

    pub fn render(&self, side: Side) -> String {
        if self.0.is_empty() {
            return "0".to_string();
        }
        let letter = match side {
            Side::E => "E",
            Side::F => "F",
        };
        let mut v: Vec<(&Word, &QScalar)> = self.0.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v.iter()
            .map(|(w, c)| {
                let mono: String = if w.is_empty() { "1".into() } else { w.iter().map(|a| format!("{}[{}]", letter, a + 1)).collect() };
                format!("{} * {}", c.render_factor(), mono)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn weight_of(w: &[u8], rank: usize) -> Vec<u8> {
    let mut v = vec![0u8; rank];
    for &a in w {
        v[a as usize] += 1;
    }
    v
}

/// `r_i` applied to a one-sided combination.
pub fn r_derivative(datum: &CartanDatum, i: usize, x: &HalfComb) -> HalfComb {
    let mut out = HalfComb::default();
    for (w, c) in &x.0 {
        let mut s = 0i64;
        for p in (0..w.len()).rev() {
            if w[p] as usize == i {
                let mut w2 = w.clone();
                w2.remove(p);
                add_into(&mut out.0, w2, c.shift(s as i32));
            }
            s += datum.dot(i, w[p] as usize);
        }
    }
    out
}

type DerivTable = Rc<FxHashMap<Word, LaurentPoly>>;

/// Exact zero tests for the halves and for the whole Drinfeld double.
///
/// A homogeneous element of positive degree in the positive half is zero iff
/// all its `r_i` vanish, so the full iterated derivatives (one per ordering of
/// the letters) separate points. Tables of iterated derivatives of words are
/// memoized for the lifetime of the oracle.
pub struct ZeroOracle {
    datum: CartanDatum,
    tables: FxHashMap<Word, DerivTable>,
}

impl ZeroOracle {
    pub fn new(datum: &CartanDatum) -> Self {
        ZeroOracle { datum: datum.clone(), tables: FxHashMap::default() }
    }

    /// Full iterated derivatives of a word: sequence `s` maps to `r_{s_last} ... r_{s_1}(w)`.
    pub fn derivatives(&mut self, w: &[u8]) -> DerivTable {
        if let Some(t) = self.tables.get(w) {
            return t.clone();
        }
        let mut acc: FxHashMap<Word, LaurentPoly> = FxHashMap::default();
        if w.is_empty() {
            acc.insert(Vec::new(), LaurentPoly::one());
        } else {
            for p in 0..w.len() {
                let i = w[p];
                let mut sub = w.to_vec();
                sub.remove(p);
                let shift = self.suffix_exponent(w, p);
                let inner = self.derivatives(&sub);
                for (seq, poly) in inner.iter() {
                    let mut key = Vec::with_capacity(seq.len() + 1);
                    key.push(i);
                    key.extend_from_slice(seq);
                    acc.entry(key).or_default().add_scaled(poly, 1, shift);
                }
            }
            acc.retain(|_, v| !v.is_zero());
        }
        let t = Rc::new(acc);
        self.tables.insert(w.to_vec(), t.clone());
        t
    }

    /// `i . wt(w_{>p})` for `i = w_p`.
    fn suffix_exponent(&self, w: &[u8], p: usize) -> i32 {
        let i = w[p] as usize;
        w[p + 1..].iter().map(|&b| self.datum.dot(i, b as usize)).sum::<i64>() as i32
    }

    /// True iff the one-sided combination vanishes modulo the Serre relations.
    pub fn half_is_zero(&mut self, x: &HalfComb) -> bool {
        let rank = self.datum.rank();
        let mut groups: BTreeMap<Vec<u8>, Vec<(&Word, &QScalar)>> = BTreeMap::new();
        for (w, c) in &x.0 {
            groups.entry(weight_of(w, rank)).or_default().push((w, c));
        }
        for (_, items) in groups {
            let scale = integral_scale(items.iter().map(|t| t.1));
            let mut acc: FxHashMap<Word, QScalar> = FxHashMap::default();
            for (w, c) in items {
                let c = &scale * c;
                let t = self.derivatives(w);
                for (seq, p) in t.iter() {
                    add_into(&mut acc, seq.clone(), &c * &QScalar::from_poly(p.clone()));
                }
            }
            if !acc.is_empty() {
                return false;
            }
        }
        true
    }

    /// True iff `x = 0` in the Drinfeld double.
    pub fn dd_is_zero(&mut self, x: &DDElement) -> bool {
        let rank = self.datum.rank();
        type Key = (Vec<i32>, Vec<u8>, Vec<u8>);
        let mut groups: BTreeMap<Key, Vec<(&TriMonomial, &QScalar)>> = BTreeMap::new();
        for (m, c) in x.raw_terms() {
            groups.entry((m.kvec.clone(), weight_of(&m.eword, rank), weight_of(&m.fword, rank))).or_default().push((m, c));
        }
        for (_, items) in groups {
            let scale = integral_scale(items.iter().map(|t| t.1));
            // sequence on the E side -> combination of F words
            let mut by_seq: FxHashMap<Word, FxHashMap<Word, QScalar>> = FxHashMap::default();
            for (m, c) in items {
                let c = &scale * c;
                let t = self.derivatives(&m.eword);
                for (seq, p) in t.iter() {
                    let slot = by_seq.entry(seq.clone()).or_default();
                    add_into(slot, m.fword.clone(), &c * &QScalar::from_poly(p.clone()));
                }
            }
            for (_, fcomb) in by_seq {
                if fcomb.is_empty() {
                    continue;
                }
                if !self.half_is_zero(&HalfComb(fcomb)) {
                    return false;
                }
            }
        }
        true
    }
}

/// A scalar that clears the denominators of the given coefficients.
fn integral_scale<'a, I: IntoIterator<Item = &'a QScalar>>(items: I) -> QScalar {
    let items: Vec<&QScalar> = items.into_iter().collect();
    if items.iter().all(|c| c.is_polynomial()) {
        return QScalar::one();
    }
    QScalar::from_poly(QScalar::common_denominator(items))
}

/// Rank over ℚ(q) of a matrix with entries in ℚ(q).
pub fn rank_over_fraction_field(mut rows: Vec<Vec<QScalar>>) -> usize {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(rank, piv);
        let inv = rows[rank][col].recip().expect("nonzero pivot");
        let pivot_row: Vec<QScalar> = rows[rank].iter().map(|x| x * &inv).collect();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..ncols {
                    let d = &f * &pivot_row[c];
                    rows[r][c] -= &d;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// All words with the given letter multiplicities.
pub fn words_of_weight(weight: &[u8]) -> Vec<Word> {
    fn rec(rem: &mut Vec<u8>, cur: &mut Word, out: &mut Vec<Word>) {
        if rem.iter().all(|&c| c == 0) {
            out.push(cur.clone());
            return;
        }
        for i in 0..rem.len() {
            if rem[i] > 0 {
                rem[i] -= 1;
                cur.push(i as u8);
                rec(rem, cur, out);
                cur.pop();
                rem[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut weight.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Rank of the matrix of full iterated derivatives of all words of a weight;
/// equals the dimension of that weight space of the positive half.
pub fn derivative_rank(datum: &CartanDatum, weight: &[u8]) -> usize {
    let mut oracle = ZeroOracle::new(datum);
    let words = words_of_weight(weight);
    let rows: Vec<Vec<QScalar>> = words
        .iter()
        .map(|w| {
            let t = oracle.derivatives(w);
            words.iter().map(|s| QScalar::from_poly(t.get(s).cloned().unwrap_or_default())).collect()
        })
        .collect();
    rank_over_fraction_field(rows)
}

/// `f_{i,j;n,m,e} = sum_{r+s=m} (-1)^r q_i^{e r (1 - n a_ij - m)} X_i^{(r)} X_j^{(n)} X_i^{(s)}` as a word combination.
pub fn f_classical_half(datum: &CartanDatum, i: usize, j: usize, n: i64, m: i64, e: i64) -> HalfComb {
    assert!(i != j, "f_classical needs distinct nodes");
    let mut out = HalfComb::default();
    if m < 0 || n < 0 {
        return out;
    }
    let ei = datum.eps(i) as i32;
    let ej = datum.eps(j) as i32;
    let na = n * datum.a(i, j);
    for r in 0..=m {
        let s = m - r;
        let mut w = vec![i as u8; r as usize];
        w.extend(std::iter::repeat_n(j as u8, n as usize));
        w.extend(std::iter::repeat_n(i as u8, s as usize));
        let den = &(&qfactorial(r, ei) * &qfactorial(n, ej)) * &qfactorial(s, ei);
        let sign = if r % 2 == 0 { 1 } else { -1 };
        let c = &QScalar::monomial(sign, ei * (e * r * (1 - na - m)) as i32) / &den;
        out.add_term(w, c);
    }
    out
}

/// `f_classical` embedded in the Drinfeld double on the chosen side.
pub fn f_classical(alg: &DoubleAlgebra, i: usize, j: usize, n: i64, m: i64, e: i64, side: Side) -> DDElement {
    alg.from_half(&f_classical_half(alg.datum(), i, j, n, m, e), side)
}

/// `sum_{r+s=1-n a_ij+2t} (-1)^r E_i^{(r)} E_j^{(n)} E_i^{(s)}`.
pub fn nonstandard_serre_half(datum: &CartanDatum, i: usize, j: usize, n: i64, t: i64) -> HalfComb {
    let total = 1 - n * datum.a(i, j) + 2 * t;
    let ei = datum.eps(i) as i32;
    let ej = datum.eps(j) as i32;
    let mut out = HalfComb::default();
    for r in 0..=total {
        let s = total - r;
        let mut w = vec![i as u8; r as usize];
        w.extend(std::iter::repeat_n(j as u8, n as usize));
        w.extend(std::iter::repeat_n(i as u8, s as usize));
        let den = &(&qfactorial(r, ei) * &qfactorial(n, ej)) * &qfactorial(s, ei);
        let c = &QScalar::from_int(if r % 2 == 0 { 1 } else { -1 }) / &den;
        out.add_term(w, c);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassicalGrid {
    /// Off-diagonal entries `a_12`; each is paired with `a_21 = -1`.
    pub a12: Vec<i64>,
    pub n: Vec<i64>,
    /// Extra steps above the minimal degree `1 - n a_12` for the vanishing checks.
    pub m_extra: i64,
    pub e: Vec<i64>,
    pub t_max: i64,
}

impl Default for ClassicalGrid {
    fn default() -> Self {
        ClassicalGrid { a12: vec![-1, -2, -3], n: vec![1, 2, 3], m_extra: 2, e: vec![-1, 1], t_max: 2 }
    }
}

/// Checks vanishing, both recursions and the non-standard relations of the classical layer.
pub fn verify_classical_suite(grid: &ClassicalGrid, opts: &SuiteOptions) -> Report {
    let mut rb = ReportBuilder::new("classical", serde_json::to_value(grid).unwrap());
    let mut cases = Vec::new();
    for &a in &grid.a12 {
        for &n in &grid.n {
            cases.push((a, n));
        }
    }
    let mutate = opts.mutate;
    let outcomes = run_cases(cases, opts.jobs, |&(a, n)| {
        let datum = CartanDatum::rank2(a, -1).expect("rank-2 datum");
        let alg = DoubleAlgebra::new(&datum);
        let mut oracle = ZeroOracle::new(&datum);
        let (i, j) = (0usize, 1usize);
        let ei = datum.eps(i) as i32;
        let na = n * a;
        let m0 = 1 - na;
        let mut out = Vec::new();
        for &e in &grid.e {
            for m in m0..=m0 + grid.m_extra {
                for side in [Side::E, Side::F] {
                    let f = f_classical_half(&datum, i, j, n, m, e);
                    let ok = oracle.half_is_zero(&f);
                    out.push(Outcome::boolean("LS", ok, || {
                        (json!({"a12": a, "n": n, "m": m, "e": e, "side": format!("{side:?}")}), f.render(side), "0".into())
                    }));
                }
            }
            for m in 0..=m0 + grid.m_extra {
                let fm = f_classical_half(&datum, i, j, n, m, e);
                let fm1 = f_classical_half(&datum, i, j, n, m + 1, e);
                let ei_word = HalfComb::word(&[i as u8], QScalar::one());
                let sign = if mutate { 1 } else { -1 };
                let lhs = ei_word.mul(&fm).scale(&QScalar::q_pow(-ei * (e * (na + 2 * m)) as i32)).add(&fm.mul(&ei_word).scale(&QScalar::from_int(-1)));
                let diff = lhs.add(&fm1.scale(&qint(m + 1, ei).scale_i64(-sign)));
                let ok = oracle.half_is_zero(&diff);
                out.push(Outcome::boolean("Lrec", ok, || (json!({"a12": a, "n": n, "m": m, "e": e}), diff.render(Side::E), "0".into())));

                let fe = alg.from_half(&fm, Side::E);
                let fe_prev = alg.from_half(&f_classical_half(&datum, i, j, n, m - 1, e), Side::E);
                let fi = alg.f(i);
                let k = if e == 1 { alg.ktp(i, 1) } else { alg.kt(i, 1) };
                let lhs = alg.mul(&fi, &fe).sub(&alg.mul(&fe, &fi));
                let rhs = alg.mul(&k, &fe_prev).scale(&qint(na + m - 1, ei));
                let diff = lhs.sub(&rhs);
                let ok = oracle.dd_is_zero(&diff);
                out.push(Outcome::boolean("LrecF", ok, || (json!({"a12": a, "n": n, "m": m, "e": e}), alg.render(&lhs), alg.render(&rhs))));
            }
        }
        for t in 0..=grid.t_max {
            let x = nonstandard_serre_half(&datum, i, j, n, t);
            let ok = oracle.half_is_zero(&x);
            out.push(Outcome::boolean("nstdSL", ok, || (json!({"a12": a, "n": n, "t": t}), x.render(Side::E), "0".into())));
        }
        out
    });
    rb.extend(outcomes);
    rb.finish()
}
