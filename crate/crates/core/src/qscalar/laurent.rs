//! Laurent polynomials in `q` with exact rational coefficients.
//!
//! Coefficients are held as `i64` while they fit and silently promoted to
//! `BigRational` on overflow or on division. The representation is kept
//! canonical (trimmed, integer form whenever possible) so derived equality
//! and hashing are structural.

use std::cmp::{max, min};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Coeffs {
    Int(Vec<i64>),
    Rat(Vec<BigRational>),
}

/// A Laurent polynomial `sum_k c_k q^k`; `coeffs[k]` is the coefficient of `q^(low + k)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Coeffs,
}

fn rat_from_i64(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

fn rat_to_i64(c: &BigRational) -> Option<i64> {
    if c.is_integer() {
        c.numer().to_i64()
    } else {
        None
    }
}

impl Default for LaurentPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Coeffs::Int(Vec::new()) }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * q^k`.
    pub fn monomial(c: i64, k: i32) -> Self {
        if c == 0 {
            return Self::zero();
        }
        LaurentPoly { low: k, coeffs: Coeffs::Int(vec![c]) }
    }

    pub fn rational_monomial(c: BigRational, k: i32) -> Self {
        Self::from_rat_vec(k, vec![c])
    }

    /// Builds from integer coefficients starting at exponent `low`.
    pub fn from_i64_vec(low: i32, coeffs: Vec<i64>) -> Self {
        let mut p = LaurentPoly { low, coeffs: Coeffs::Int(coeffs) };
        p.trim();
        p
    }

    /// Builds from rational coefficients starting at exponent `low`.
    pub fn from_rat_vec(low: i32, coeffs: Vec<BigRational>) -> Self {
        let mut p = LaurentPoly { low, coeffs: Coeffs::Rat(coeffs) };
        p.normalize_rat();
        p
    }

    /// Builds from arbitrary `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i32, BigRational)>>(terms: I) -> Self {
        let terms: Vec<(i32, BigRational)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut v = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (k, c) in terms {
            v[(k - lo) as usize] += c;
        }
        Self::from_rat_vec(lo, v)
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 0
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && matches!(&self.coeffs, Coeffs::Int(v) if v.len() == 1 && v[0] == 1)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        matches!(self.coeffs, Coeffs::Int(_))
    }

    /// True when the polynomial is a single term `c q^k`.
    pub fn is_monomial(&self) -> bool {
        self.len() == 1
    }

    fn len(&self) -> usize {
        match &self.coeffs {
            Coeffs::Int(v) => v.len(),
            Coeffs::Rat(v) => v.len(),
        }
    }

    /// Lowest exponent with nonzero coefficient (0 for the zero polynomial).
    pub fn low_degree(&self) -> i32 {
        self.low
    }

    /// Highest exponent with nonzero coefficient (0 for the zero polynomial).
    pub fn high_degree(&self) -> i32 {
        if self.is_zero() {
            0
        } else {
            self.low + self.len() as i32 - 1
        }
    }

    /// Coefficient of `q^k`.
    pub fn coeff(&self, k: i32) -> BigRational {
        let idx = k - self.low;
        if idx < 0 || idx as usize >= self.len() {
            return BigRational::zero();
        }
        match &self.coeffs {
            Coeffs::Int(v) => rat_from_i64(v[idx as usize]),
            Coeffs::Rat(v) => v[idx as usize].clone(),
        }
    }

    /// Nonzero terms `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> Vec<(i32, BigRational)> {
        let mut out = Vec::new();
        match &self.coeffs {
            Coeffs::Int(v) => {
                for (k, c) in v.iter().enumerate() {
                    if *c != 0 {
                        out.push((self.low + k as i32, rat_from_i64(*c)));
                    }
                }
            }
            Coeffs::Rat(v) => {
                for (k, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        out.push((self.low + k as i32, c.clone()));
                    }
                }
            }
        }
        out
    }

    /// Dense rational coefficient vector starting at `low_degree()`.
    pub fn rat_coeffs(&self) -> Vec<BigRational> {
        match &self.coeffs {
            Coeffs::Int(v) => v.iter().map(|c| rat_from_i64(*c)).collect(),
            Coeffs::Rat(v) => v.clone(),
        }
    }

    /// Integer coefficients if every coefficient fits in `i64`.
    pub fn int_coeffs(&self) -> Option<&[i64]> {
        match &self.coeffs {
            Coeffs::Int(v) => Some(v),
            Coeffs::Rat(_) => None,
        }
    }

    /// Leading (highest-degree) coefficient; zero for the zero polynomial.
    pub fn leading_coeff(&self) -> BigRational {
        self.coeff(self.high_degree())
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        let mut p = self.clone();
        if !p.is_zero() {
            p.low += k;
        }
        p
    }

    pub fn shift_in_place(&mut self, k: i32) {
        if !self.is_zero() {
            self.low += k;
        }
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        if c == 0 || self.is_zero() {
            return Self::zero();
        }
        if let Coeffs::Int(v) = &self.coeffs {
            let mut out = Vec::with_capacity(v.len());
            let mut ok = true;
            for x in v {
                match x.checked_mul(c) {
                    Some(y) => out.push(y),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return LaurentPoly { low: self.low, coeffs: Coeffs::Int(out) };
            }
        }
        self.scale_rat(&rat_from_i64(c))
    }

    pub fn scale_rat(&self, c: &BigRational) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        let v = self.rat_coeffs().into_iter().map(|x| x * c).collect();
        Self::from_rat_vec(self.low, v)
    }

    /// Substitutes `q -> q^k` for `k != 0`.
    pub fn substitute_power(&self, k: i32) -> Self {
        assert!(k != 0, "substitute_power needs a nonzero exponent");
        if self.is_zero() {
            return Self::zero();
        }
        let terms = self.terms();
        let mapped: Vec<(i32, BigRational)> = terms.into_iter().map(|(e, c)| (e * k, c)).collect();
        if let Coeffs::Int(_) = self.coeffs {
            let lo = mapped.iter().map(|t| t.0).min().unwrap();
            let hi = mapped.iter().map(|t| t.0).max().unwrap();
            let mut v = vec![0i64; (hi - lo + 1) as usize];
            for (e, c) in &mapped {
                v[(e - lo) as usize] = c.numer().to_i64().unwrap();
            }
            return Self::from_i64_vec(lo, v);
        }
        Self::from_terms(mapped)
    }

    /// Substitutes `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        self.substitute_power(-1)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Adds `c * q^k * other` into `self`.
    pub fn add_scaled(&mut self, other: &LaurentPoly, c: i64, k: i32) {
        if other.is_zero() || c == 0 {
            return;
        }
        if let (Coeffs::Int(a), Coeffs::Int(b)) = (&mut self.coeffs, &other.coeffs) {
            let olow = other.low + k;
            if a.is_empty() {
                let mut v = Vec::with_capacity(b.len());
                let mut ok = true;
                for x in b {
                    match x.checked_mul(c) {
                        Some(y) => v.push(y),
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    self.low = olow;
                    self.coeffs = Coeffs::Int(v);
                    return;
                }
            } else {
                let lo = min(self.low, olow);
                let hi = max(self.low + a.len() as i32, olow + b.len() as i32);
                if lo < self.low {
                    let pad = (self.low - lo) as usize;
                    a.splice(0..0, std::iter::repeat_n(0, pad));
                    self.low = lo;
                }
                let need = (hi - self.low) as usize;
                if a.len() < need {
                    a.resize(need, 0);
                }
                let off = (olow - self.low) as usize;
                let mut ok = true;
                for (idx, x) in b.iter().enumerate() {
                    let prod = x.checked_mul(c);
                    match prod.and_then(|p| a[off + idx].checked_add(p)) {
                        Some(y) => a[off + idx] = y,
                        None => {
                            ok = false;
                            // undo the partial update
                            for (j, x2) in b.iter().enumerate().take(idx) {
                                a[off + j] -= x2 * c;
                            }
                            break;
                        }
                    }
                }
                if ok {
                    self.trim();
                    return;
                }
                self.trim();
            }
        }
        let term = other.shift(k).scale_i64(c);
        *self = self.add_rat(&term, 1);
    }

    fn trim(&mut self) {
        match &mut self.coeffs {
            Coeffs::Int(v) => {
                let start = v.iter().position(|c| *c != 0);
                match start {
                    None => {
                        v.clear();
                        self.low = 0;
                    }
                    Some(s) => {
                        let end = v.iter().rposition(|c| *c != 0).unwrap();
                        v.truncate(end + 1);
                        if s > 0 {
                            v.drain(0..s);
                            self.low += s as i32;
                        }
                    }
                }
            }
            Coeffs::Rat(_) => self.normalize_rat(),
        }
    }

    fn normalize_rat(&mut self) {
        let v = match &mut self.coeffs {
            Coeffs::Rat(v) => v,
            Coeffs::Int(_) => return self.trim(),
        };
        let start = v.iter().position(|c| !c.is_zero());
        match start {
            None => {
                *self = Self::zero();
                return;
            }
            Some(s) => {
                let end = v.iter().rposition(|c| !c.is_zero()).unwrap();
                v.truncate(end + 1);
                if s > 0 {
                    v.drain(0..s);
                    self.low += s as i32;
                }
            }
        }
        let ints: Option<Vec<i64>> = v.iter().map(rat_to_i64).collect();
        if let Some(ints) = ints {
            self.coeffs = Coeffs::Int(ints);
        }
    }

    fn add_rat(&self, other: &Self, sign: i64) -> Self {
        if self.is_zero() {
            return if sign == 1 { other.clone() } else { -other };
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = min(self.low, other.low);
        let hi = max(self.high_degree(), other.high_degree());
        let mut v = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (k, c) in self.rat_coeffs().into_iter().enumerate() {
            v[(self.low - lo) as usize + k] += c;
        }
        for (k, c) in other.rat_coeffs().into_iter().enumerate() {
            let slot = &mut v[(other.low - lo) as usize + k];
            if sign == 1 {
                *slot += c;
            } else {
                *slot -= c;
            }
        }
        Self::from_rat_vec(lo, v)
    }

    fn add_signed(&self, other: &Self, sign: i64) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, sign, 0);
        out
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let (Coeffs::Int(a), Coeffs::Int(b)) = (&self.coeffs, &other.coeffs) {
            if a.len() == 1 {
                return other.shift(self.low).scale_i64(a[0]);
            }
            if b.len() == 1 {
                return self.shift(other.low).scale_i64(b[0]);
            }
            let mut acc = vec![0i128; a.len() + b.len() - 1];
            let mut ok = true;
            'outer: for (i, x) in a.iter().enumerate() {
                if *x == 0 {
                    continue;
                }
                let x = *x as i128;
                for (j, y) in b.iter().enumerate() {
                    if *y == 0 {
                        continue;
                    }
                    match x.checked_mul(*y as i128).and_then(|p| acc[i + j].checked_add(p)) {
                        Some(s) => acc[i + j] = s,
                        None => {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
            if ok {
                let narrowed: Option<Vec<i64>> = acc.iter().map(|c| i64::try_from(*c).ok()).collect();
                if let Some(v) = narrowed {
                    return Self::from_i64_vec(self.low + other.low, v);
                }
            }
        }
        let a = self.rat_coeffs();
        let b = other.rat_coeffs();
        let mut v = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                v[i + j] += x * y;
            }
        }
        Self::from_rat_vec(self.low + other.low, v)
    }

    /// Evaluates at an exact rational point `q = x` (x nonzero).
    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (k, c) in self.terms() {
            acc += c * pow_rat(x, k);
        }
        acc
    }

    /// Renders as a sum of monomials `c*q^k` in descending exponent order.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        let mut terms = self.terms();
        terms.reverse();
        for (idx, (k, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else if neg {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            let mono = match *k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{}", k),
            };
            if mono.is_empty() {
                s.push_str(&mag.to_string());
            } else if mag.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{}*{}", mag, mono));
            }
        }
        s
    }
}

fn pow_rat(x: &BigRational, k: i32) -> BigRational {
    let base = if k < 0 { x.recip() } else { x.clone() };
    let mut acc = BigRational::one();
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    acc
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self.render())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if let (Coeffs::Int(_), Coeffs::Int(_)) = (&self.coeffs, &rhs.coeffs) {
            return self.add_signed(rhs, 1);
        }
        self.add_rat(rhs, 1)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        if let (Coeffs::Int(_), Coeffs::Int(_)) = (&self.coeffs, &rhs.coeffs) {
            return self.add_signed(rhs, -1);
        }
        self.add_rat(rhs, -1)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.mul_impl(rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale_i64(-1)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        if let (Coeffs::Int(_), Coeffs::Int(_)) = (&self.coeffs, &rhs.coeffs) {
            self.add_scaled(rhs, 1, 0);
        } else {
            *self = self.add_rat(rhs, 1);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        if let (Coeffs::Int(_), Coeffs::Int(_)) = (&self.coeffs, &rhs.coeffs) {
            self.add_scaled(rhs, -1, 0);
        } else {
            *self = self.add_rat(rhs, -1);
        }
    }
}
