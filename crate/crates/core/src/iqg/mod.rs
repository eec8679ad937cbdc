//! The quasi-split universal ıquantum group: expressions in `B_i` and the
//! Cartan-type elements `k̃_i`, ıdivided powers, the Serre–Lusztig families
//! `ỹ`/`ỹ'`, the anti-involution `σ`, braid candidates and verification suites.
//!
//! An [`IExpr`] is a formal combination of `B`-words followed by a monomial in
//! the `k̃`'s. Formal terms are not linearly independent in the algebra; zero
//! tests embed into the Drinfeld double and use the exact oracle there.

mod braid;
mod suites;
mod ytilde;

pub use braid::{braid_image, apply_substitution, BraidKind};
pub use suites::*;
pub use ytilde::{ytilde, ytilde_minimal_display, YParams};

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::cartan::{CartanDatum, NodeClass};
use crate::drinfeld::{add_into, DDElement, DoubleAlgebra, TriMonomial, Word, ZeroOracle};
use crate::qscalar::{qfactorial, qint, Parity, QScalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IqgError {
    #[error("node {0} is not fixed by the diagram involution")]
    NotFixed(usize),
    #[error("node {0} is out of range")]
    BadNode(usize),
    #[error("parameter constraint violated: {0}")]
    Constraint(String),
}

/// A monomial `B_{word} · k̃^{kexp}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IMonomial {
    pub word: Word,
    pub kexp: Vec<i32>,
}

/// A formal combination of ıquantum group monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IExpr {
    rank: usize,
    terms: FxHashMap<IMonomial, QScalar>,
}

impl IExpr {
    pub fn zero(rank: usize) -> Self {
        IExpr { rank, terms: FxHashMap::default() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn monomial(rank: usize, word: Word, kexp: Vec<i32>, c: QScalar) -> Self {
        let mut x = IExpr::zero(rank);
        x.add_term(IMonomial { word, kexp }, c);
        x
    }

    pub fn scalar(rank: usize, c: QScalar) -> Self {
        Self::monomial(rank, Vec::new(), vec![0; rank], c)
    }

    pub fn add_term(&mut self, m: IMonomial, c: QScalar) {
        add_into(&mut self.terms, m, c);
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

    /// True if some term carries a negative `k̃` exponent (braid-candidate images).
    pub fn has_negative_k(&self) -> bool {
        self.terms.keys().any(|m| m.kexp.iter().any(|k| *k < 0))
    }

    pub fn terms(&self) -> Vec<(IMonomial, QScalar)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| (a.0.word.len(), &a.0.word, &a.0.kexp).cmp(&(b.0.word.len(), &b.0.word, &b.0.kexp)));
        v
    }

    pub fn coefficient(&self, m: &IMonomial) -> QScalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &IExpr) -> IExpr {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &IExpr) {
        for (m, c) in &other.terms {
            add_into(&mut self.terms, m.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &IExpr) -> IExpr {
        self.add(&other.scale(&QScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &QScalar) -> IExpr {
        if c.is_zero() {
            return IExpr::zero(self.rank);
        }
        IExpr { rank: self.rank, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    /// Renders as `c * B[1]B[2] k[1]^2` terms joined by ` + `.
    pub fn render(&self) -> String {
        let terms = self.terms();
        if terms.is_empty() {
            return "0".into();
        }
        terms
            .iter()
            .map(|(m, c)| {
                let mut parts = Vec::new();
                if !m.word.is_empty() {
                    parts.push(m.word.iter().map(|a| format!("B[{}]", a + 1)).collect::<String>());
                }
                for (i, &k) in m.kexp.iter().enumerate() {
                    match k {
                        0 => {}
                        1 => parts.push(format!("k[{}]", i + 1)),
                        _ => parts.push(format!("k[{}]^{}", i + 1, k)),
                    }
                }
                let mono = if parts.is_empty() { "1".to_string() } else { parts.join(" ") };
                format!("{} * {}", c.render_factor(), mono)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Which way [`IAlgebra::idp_basis_change`] expands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisDirection {
    /// `B^{(n)}_{t} = sum_t c_t B^{n-2t} k̃^t`.
    IdpToPowers,
    /// `B^n = sum_t c_t B^{(n-2t)}_{t} k̃^t`.
    PowersToIdp,
}

/// The universal ıquantum group of a quasi-split datum, with its embedding into the Drinfeld double.
#[derive(Clone, Debug)]
pub struct IAlgebra {
    dd: DoubleAlgebra,
    /// `k̃_i B_j = q^{kcomm[i][j]} B_j k̃_i`.
    kcomm: Vec<Vec<i64>>,
}

impl IAlgebra {
    pub fn new(datum: &CartanDatum) -> Self {
        let n = datum.rank();
        let kcomm = (0..n)
            .map(|i| (0..n).map(|j| datum.eps(i) * (datum.a(i, datum.tau(j)) - datum.a(i, j))).collect())
            .collect();
        IAlgebra { dd: DoubleAlgebra::new(datum), kcomm }
    }

    pub fn datum(&self) -> &CartanDatum {
        self.dd.datum()
    }

    pub fn double(&self) -> &DoubleAlgebra {
        &self.dd
    }

    pub fn rank(&self) -> usize {
        self.dd.rank()
    }

    fn qi(&self, i: usize) -> QScalar {
        QScalar::q_pow(self.datum().eps(i) as i32)
    }

    fn eps(&self, i: usize) -> i32 {
        self.datum().eps(i) as i32
    }

    pub fn zero(&self) -> IExpr {
        IExpr::zero(self.rank())
    }

    pub fn one(&self) -> IExpr {
        IExpr::scalar(self.rank(), QScalar::one())
    }

    pub fn scalar(&self, c: QScalar) -> IExpr {
        IExpr::scalar(self.rank(), c)
    }

    pub fn b(&self, i: usize) -> IExpr {
        IExpr::monomial(self.rank(), vec![i as u8], vec![0; self.rank()], QScalar::one())
    }

    /// `k̃_i^p`.
    pub fn k(&self, i: usize, p: i32) -> IExpr {
        let mut kexp = vec![0; self.rank()];
        kexp[i] = p;
        IExpr::monomial(self.rank(), Vec::new(), kexp, QScalar::one())
    }

    /// `B_{word}` with coefficient `c`.
    pub fn word(&self, w: &[u8], c: QScalar) -> IExpr {
        IExpr::monomial(self.rank(), w.to_vec(), vec![0; self.rank()], c)
    }

    fn k_past_word(&self, kexp: &[i32], word: &[u8]) -> i32 {
        let mut s = 0i64;
        for (i, &k) in kexp.iter().enumerate() {
            if k != 0 {
                for &b in word {
                    s += k as i64 * self.kcomm[i][b as usize];
                }
            }
        }
        s as i32
    }

    pub fn mul(&self, x: &IExpr, y: &IExpr) -> IExpr {
        let mut out = self.zero();
        for (m1, c1) in &x.terms {
            for (m2, c2) in &y.terms {
                let sh = self.k_past_word(&m1.kexp, &m2.word);
                let mut w = m1.word.clone();
                w.extend_from_slice(&m2.word);
                let k: Vec<i32> = m1.kexp.iter().zip(&m2.kexp).map(|(a, b)| a + b).collect();
                let c = (c1 * c2).shift(sh);
                add_into(&mut out.terms, IMonomial { word: w, kexp: k }, c);
            }
        }
        out
    }

    pub fn product(&self, factors: &[&IExpr]) -> IExpr {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    pub fn pow(&self, x: &IExpr, n: u32) -> IExpr {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// The ıdivided power `B^{(m)}_{i,p}`; plain divided power for swapped nodes, zero for `m < 0`.
    pub fn idivided_power(&self, i: usize, m: i64, p: Parity) -> IExpr {
        if m < 0 {
            return self.zero();
        }
        let eps = self.eps(i);
        let fact = qfactorial(m, eps);
        if self.datum().node_class(i) == NodeClass::Swapped {
            return self.word(&vec![i as u8; m as usize], QScalar::one() / fact);
        }
        // product of (B^2 - q_i k̃_i x_j^2) as a polynomial in u = power of k̃
        let k = m / 2;
        let odd_m = m % 2 == 1;
        let mut poly: Vec<QScalar> = vec![QScalar::one()];
        for jj in 1..=k {
            let x = match (p, odd_m) {
                (Parity::Odd, _) => qint(2 * jj - 1, eps),
                (Parity::Even, true) => qint(2 * jj, eps),
                (Parity::Even, false) => qint(2 * jj - 2, eps),
            };
            let f = &(&self.qi(i) * &x) * &x;
            let mut next = vec![QScalar::zero(); poly.len() + 1];
            for (u, c) in poly.iter().enumerate() {
                next[u] += c;
                next[u + 1] -= &(c * &f);
            }
            poly = next;
        }
        let mut out = self.zero();
        for (u, c) in poly.into_iter().enumerate() {
            let mut kexp = vec![0; self.rank()];
            kexp[i] = u as i32;
            out.add_term(IMonomial { word: vec![i as u8; (m - 2 * u as i64) as usize], kexp }, c / fact.clone());
        }
        out
    }

    /// `B^{(n)}_{j,t}` in the flavour dictated by the node class of `j` (`t` ignored for swapped `j`).
    pub fn idp_flavor(&self, j: usize, n: i64, t: Parity) -> IExpr {
        self.idivided_power(j, n, t)
    }

    /// Coefficients relating ıdivided powers and plain powers of `B_j` times powers of `k̃_j`.
    pub fn idp_basis_change(&self, j: usize, n: i64, t: Parity, dir: BasisDirection) -> Result<BTreeMap<i64, QScalar>, IqgError> {
        if self.datum().tau(j) != j {
            return Err(IqgError::NotFixed(j));
        }
        Ok(match dir {
            BasisDirection::IdpToPowers => self.idp_to_powers(j, n, t),
            BasisDirection::PowersToIdp => self.powers_to_idp(j, n, t),
        })
    }

    fn idp_to_powers(&self, j: usize, n: i64, t: Parity) -> BTreeMap<i64, QScalar> {
        self.idivided_power(j, n, t).terms.into_iter().map(|(m, c)| (m.kexp[j] as i64, c)).collect()
    }

    fn powers_to_idp(&self, j: usize, n: i64, t: Parity) -> BTreeMap<i64, QScalar> {
        // B^n = [n]! B^{(n)} - sum_{s>=1} [n]! c_s(n) B^{n-2s} k̃^s, expanded recursively
        let mut table: Vec<BTreeMap<i64, QScalar>> = Vec::new();
        for deg in 0..=n.max(0) {
            let fact = qfactorial(deg, self.eps(j));
            let mut row: BTreeMap<i64, QScalar> = BTreeMap::new();
            row.insert(0, fact.clone());
            for (s, c) in self.idp_to_powers(j, deg, t) {
                if s == 0 {
                    continue;
                }
                let f = &(&fact * &c) * &QScalar::from_int(-1);
                for (u, d) in &table[(deg - 2 * s) as usize] {
                    let e = row.entry(u + s).or_default();
                    *e += &(&f * d);
                }
            }
            row.retain(|_, v| !v.is_zero());
            table.push(row);
        }
        table.pop().unwrap_or_default()
    }

    /// The anti-involution reversing words, sending `B_j` to `B_{τj}` and fixing each `k̃_j`.
    pub fn sigma(&self, x: &IExpr) -> IExpr {
        let mut out = self.zero();
        for (m, c) in &x.terms {
            // (w k̃^k) maps to k̃^k rev(τw) = q^s rev(τw) k̃^k
            let w: Word = m.word.iter().rev().map(|&b| self.datum().tau(b as usize) as u8).collect();
            let sh = self.k_past_word(&m.kexp, &w);
            add_into(&mut out.terms, IMonomial { word: w, kexp: m.kexp.clone() }, c.shift(sh));
        }
        out
    }

    /// Substitutes `k̃_i ↦ ς_i` for the nodes present in the table.
    pub fn specialize(&self, x: &IExpr, varsigma: &BTreeMap<usize, QScalar>) -> Result<IExpr, IqgError> {
        let d = self.datum();
        for (&i, s) in varsigma {
            if i >= self.rank() {
                return Err(IqgError::BadNode(i));
            }
            if s.is_zero() {
                return Err(IqgError::Constraint(format!("parameter for node {} must be nonzero", i + 1)));
            }
            let t = d.tau(i);
            if d.a(i, t) == 0 && t != i {
                match varsigma.get(&t) {
                    Some(st) if st == s => {}
                    _ => return Err(IqgError::Constraint(format!("parameters for nodes {} and {} must agree", i + 1, t + 1))),
                }
            }
        }
        let mut out = self.zero();
        for (m, c) in &x.terms {
            let mut c = c.clone();
            let mut k = m.kexp.clone();
            for (&i, s) in varsigma {
                if k[i] != 0 {
                    c = &c * &s.pow(k[i]).expect("nonzero parameter");
                    k[i] = 0;
                }
            }
            add_into(&mut out.terms, IMonomial { word: m.word.clone(), kexp: k }, c);
        }
        Ok(out)
    }

    /// `x · B_a` in the Drinfeld double, with `B_a = F_a + (q_a - q_a^{-1}) E_{τa} K̂'_a`.
    fn dd_right_mul_b(&self, x: &DDElement, a: usize) -> DDElement {
        let n = self.rank();
        let mut out = self.dd.right_mul_f(x, a);
        let e = self.dd.right_mul_e(x, self.datum().tau(a));
        let mut kd = vec![0; 2 * n];
        kd[n + a] = 1;
        out.add_assign(&self.dd.right_mul_khat(&e, &kd).scale(self.dd.c(a)));
        out
    }

    fn embed_words(&self, comb: FxHashMap<Word, QScalar>) -> DDElement {
        let mut out = self.dd.zero();
        let mut by_last: BTreeMap<u8, FxHashMap<Word, QScalar>> = BTreeMap::new();
        for (mut w, c) in comb {
            match w.pop() {
                None => out.add_raw(TriMonomial::identity(self.rank()), c),
                Some(a) => add_into(by_last.entry(a).or_default(), w, c),
            }
        }
        for (a, sub) in by_last {
            let inner = self.embed_words(sub);
            out.add_assign(&self.dd_right_mul_b(&inner, a as usize));
        }
        out
    }

    /// Image in the Drinfeld double: `B_i ↦ F_i + E_{τi} K̃'_i`, `k̃_i ↦ K̃_i K̃'_{τi}`.
    pub fn embed(&self, x: &IExpr) -> DDElement {
        // Expanding with polynomial coefficients is much cheaper than with rational functions.
        let coeffs: Vec<&QScalar> = x.terms.values().collect();
        if coeffs.iter().all(|c| c.is_polynomial()) {
            return self.embed_integral(x);
        }
        let den = QScalar::from_poly(QScalar::common_denominator(coeffs));
        let inv = den.recip().expect("nonzero denominator");
        self.embed_integral(&x.scale(&den)).scale(&inv)
    }

    fn embed_integral(&self, x: &IExpr) -> DDElement {
        let n = self.rank();
        let mut groups: BTreeMap<Vec<i32>, FxHashMap<Word, QScalar>> = BTreeMap::new();
        for (m, c) in &x.terms {
            add_into(groups.entry(m.kexp.clone()).or_default(), m.word.clone(), c.clone());
        }
        let mut out = self.dd.zero();
        for (kexp, comb) in groups {
            let mut e = self.embed_words(comb);
            if kexp.iter().any(|k| *k != 0) {
                let mut kd = vec![0; 2 * n];
                let mut scale = QScalar::one();
                for (i, &k) in kexp.iter().enumerate() {
                    if k != 0 {
                        kd[i] += k;
                        kd[n + self.datum().tau(i)] += k;
                        scale = &scale * &self.dd.c(i).pow(2 * k).expect("nonzero");
                    }
                }
                e = self.dd.right_mul_khat(&e, &kd).scale(&scale);
            }
            out.add_assign(&e);
        }
        out
    }

    /// Exact zero test in the ıquantum group, reusing the oracle's caches.
    pub fn is_zero_with(&self, oracle: &mut ZeroOracle, x: &IExpr) -> bool {
        if x.is_structurally_zero() {
            return true;
        }
        let coeffs: Vec<&QScalar> = x.terms.values().collect();
        if coeffs.iter().all(|c| c.is_polynomial()) {
            return oracle.dd_is_zero(&self.embed_integral(x));
        }
        let den = QScalar::from_poly(QScalar::common_denominator(coeffs));
        oracle.dd_is_zero(&self.embed_integral(&x.scale(&den)))
    }

    pub fn is_zero(&self, x: &IExpr) -> bool {
        self.is_zero_with(&mut ZeroOracle::new(self.datum()), x)
    }

    /// `sum_{r+s=total} (-1)^r B^{(r)}_{i,p} · middle · B^{(s)}_{i,p+shift}`.
    pub fn sandwich(&self, i: usize, p: Parity, shift: i64, total: i64, middle: &IExpr) -> IExpr {
        let mut out = self.zero();
        for r in 0..=total.max(-1) {
            let s = total - r;
            let sign = QScalar::from_int(if r % 2 == 0 { 1 } else { -1 });
            let t = self.product(&[&self.idivided_power(i, r, p), middle, &self.idivided_power(i, s, p + shift)]);
            out.add_assign(&t.scale(&sign));
        }
        out
    }
}
