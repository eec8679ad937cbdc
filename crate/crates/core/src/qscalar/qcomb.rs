//! Balanced quantum integers, factorials and binomials in base `q^eps`.

use std::cell::RefCell;
use std::fmt;
use std::ops::Add;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::{LaurentPoly, QScalar};

/// Parity label in ℤ₂ used by the ıdivided powers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: i64) -> Parity {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> i64 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn both() -> [Parity; 2] {
        [Parity::Even, Parity::Odd]
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }

    pub fn parse(s: &str) -> Option<Parity> {
        match s {
            "even" | "0" => Some(Parity::Even),
            "odd" | "1" => Some(Parity::Odd),
            _ => None,
        }
    }
}

impl Add<i64> for Parity {
    type Output = Parity;
    fn add(self, rhs: i64) -> Parity {
        Parity::of(self.bit() + rhs)
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

thread_local! {
    static BINOM_CACHE: RefCell<FxHashMap<(i64, i64), LaurentPoly>> = RefCell::new(FxHashMap::default());
    static BINOM_EPS_CACHE: RefCell<FxHashMap<(i64, i64, i32), LaurentPoly>> = RefCell::new(FxHashMap::default());
}

/// `[n]_{q^eps} = (q^{eps n} - q^{-eps n}) / (q^eps - q^{-eps})` as a Laurent polynomial.
pub fn qint_poly(n: i64, eps: i32) -> LaurentPoly {
    if n == 0 {
        return LaurentPoly::zero();
    }
    let m = n.unsigned_abs() as i64;
    let sign = if n > 0 { 1 } else { -1 };
    let mut v = vec![0i64; (2 * (m - 1) + 1) as usize];
    for k in 0..m {
        v[(2 * k) as usize] = sign;
    }
    let p = LaurentPoly::from_i64_vec(-(m as i32 - 1), v);
    if eps == 1 {
        p
    } else {
        p.substitute_power(eps)
    }
}

pub fn qint(n: i64, eps: i32) -> QScalar {
    QScalar::from_poly(qint_poly(n, eps))
}

/// `[m]_{q^eps}! = [1][2]...[m]`, with `[m]! = 1` for `m <= 0`.
pub fn qfactorial_poly(m: i64, eps: i32) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for k in 1..=m {
        acc = &acc * &qint_poly(k, eps);
    }
    acc
}

pub fn qfactorial(m: i64, eps: i32) -> QScalar {
    QScalar::from_poly(qfactorial_poly(m, eps))
}

fn binom_base(n: i64, d: i64) -> LaurentPoly {
    if d < 0 {
        return LaurentPoly::zero();
    }
    if d == 0 {
        return LaurentPoly::one();
    }
    if n < 0 {
        let p = binom_base(d - n - 1, d);
        return if d % 2 == 0 { p } else { -&p };
    }
    if d > n {
        return LaurentPoly::zero();
    }
    if d == n {
        return LaurentPoly::one();
    }
    if let Some(p) = BINOM_CACHE.with(|c| c.borrow().get(&(n, d)).cloned()) {
        return p;
    }
    let a = binom_base(n - 1, d).shift(d as i32);
    let b = binom_base(n - 1, d - 1).shift((d - n) as i32);
    let p = &a + &b;
    BINOM_CACHE.with(|c| c.borrow_mut().insert((n, d), p.clone()));
    p
}

/// Generalized balanced binomial `[n choose d]_{q^eps}`, defined for every integer `n`; zero for `d < 0`.
pub fn qbinom_poly(n: i64, d: i64, eps: i32) -> LaurentPoly {
    if d < 0 || (n >= 0 && d > n) {
        return LaurentPoly::zero();
    }
    if eps == 1 {
        return binom_base(n, d);
    }
    if let Some(p) = BINOM_EPS_CACHE.with(|c| c.borrow().get(&(n, d, eps)).cloned()) {
        return p;
    }
    let p = binom_base(n, d).substitute_power(eps);
    BINOM_EPS_CACHE.with(|c| c.borrow_mut().insert((n, d, eps), p.clone()));
    p
}

pub fn qbinom(n: i64, d: i64, eps: i32) -> QScalar {
    QScalar::from_poly(qbinom_poly(n, d, eps))
}
