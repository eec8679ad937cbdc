//! Exact elements of ℚ(q) kept as reduced quotients of Laurent polynomials.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::polygcd::{exact_div, gcd_primitive, primitive_part};
use super::ScalarError;

/// An element of ℚ(q) in canonical form `num / den`.
///
/// The denominator has lowest exponent 0 and leading coefficient 1, and shares
/// no nonconstant factor with the numerator, so `==` is equality in ℚ(q).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for QScalar {
    fn default() -> Self {
        QScalar::zero()
    }
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        QScalar { num: LaurentPoly::constant(c), den: LaurentPoly::one() }
    }

    pub fn from_rational(c: BigRational) -> Self {
        QScalar { num: LaurentPoly::rational_monomial(c, 0), den: LaurentPoly::one() }
    }

    /// `c * q^k`.
    pub fn monomial(c: i64, k: i32) -> Self {
        QScalar { num: LaurentPoly::monomial(c, k), den: LaurentPoly::one() }
    }

    /// `q^k`.
    pub fn q_pow(k: i32) -> Self {
        Self::monomial(1, k)
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        QScalar { num: p, den: LaurentPoly::one() }
    }

    /// Builds `num / den`; errors when `den` is zero.
    pub fn try_from_fraction(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// True when the value is a Laurent polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// True when the value is a Laurent polynomial with integer coefficients.
    pub fn is_integral(&self) -> bool {
        self.den.is_one() && self.num.is_integral()
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_monomial() {
            let k = den.low_degree();
            let c = den.leading_coeff();
            let num = if c.is_one() { num.shift(-k) } else { num.shift(-k).scale_rat(&c.recip()) };
            return QScalar { num, den: LaurentPoly::one() };
        }
        let (mut num, mut den) = (num, den);
        let g = gcd_primitive(&primitive_part(&num), &primitive_part(&den));
        if g.len() > 1 {
            let gr: Vec<BigRational> = g.iter().map(|c| BigRational::from_integer(c.clone())).collect();
            let nq = exact_div(&num.rat_coeffs(), &gr);
            let dq = exact_div(&den.rat_coeffs(), &gr);
            num = LaurentPoly::from_rat_vec(num.low_degree(), nq);
            den = LaurentPoly::from_rat_vec(den.low_degree(), dq);
            if den.is_monomial() {
                return Self::reduce(num, den);
            }
        }
        let k = den.low_degree();
        let lc = den.leading_coeff();
        if lc.is_one() {
            QScalar { num: num.shift(-k), den: den.shift(-k) }
        } else {
            let inv = lc.recip();
            QScalar { num: num.shift(-k).scale_rat(&inv), den: den.shift(-k).scale_rat(&inv) }
        }
    }

    pub fn recip(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn try_div(&self, rhs: &QScalar) -> Result<Self, ScalarError> {
        Ok(self * &rhs.recip()?)
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, n: i32) -> Result<Self, ScalarError> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let m = n.unsigned_abs();
        Ok(QScalar { num: base.num.pow(m), den: base.den.pow(m) })
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i32) -> Self {
        QScalar { num: self.num.shift(k), den: self.den.clone() }
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        QScalar { num: self.num.scale_i64(c), den: if c == 0 { LaurentPoly::one() } else { self.den.clone() } }
    }

    /// Substitutes `q -> q^k` (k ≠ 0).
    pub fn substitute_power(&self, k: i32) -> Self {
        Self::reduce(self.num.substitute_power(k), self.den.substitute_power(k))
    }

    /// Evaluates at a rational point; `None` if the denominator vanishes there.
    pub fn eval_rat(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval_rat(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rat(x) / d)
    }

    /// Renders as `c*q^k` monomials in descending order, or `(num)/(den)`.
    pub fn render(&self) -> String {
        if self.den.is_one() {
            self.num.render()
        } else {
            format!("({})/({})", self.num.render(), self.den.render())
        }
    }

    /// Renders in a form safe to juxtapose with other factors.
    pub fn render_factor(&self) -> String {
        if self.den.is_one() && self.num.terms().len() == 1 && self.num.coeff(self.num.low_degree()) >= BigRational::zero() {
            self.num.render()
        } else if self.den.is_one() {
            format!("({})", self.num.render())
        } else {
            self.render()
        }
    }

    /// Least common multiple of the denominators of `items`, as a polynomial.
    pub fn common_denominator<'a, I: IntoIterator<Item = &'a QScalar>>(items: I) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for s in items {
            if s.den.is_one() {
                continue;
            }
            let g = gcd_primitive(&primitive_part(&acc), &primitive_part(&s.den));
            let gr: Vec<BigRational> = g.iter().map(|c| BigRational::from_integer(c.clone())).collect();
            let q = exact_div(&s.den.rat_coeffs(), &gr);
            acc = &acc * &LaurentPoly::from_rat_vec(0, q);
        }
        acc
    }

    pub fn to_integer_rational(&self) -> Option<BigRational> {
        if self.den.is_one() && (self.num.is_zero() || (self.num.is_monomial() && self.num.low_degree() == 0)) {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn from_bigint(c: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(c))
    }
}

/// True iff `a − b` is the zero rational function.
pub fn canonical_equal(a: &QScalar, b: &QScalar) -> bool {
    a == b
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({})", self.render())
    }
}

impl From<i64> for QScalar {
    fn from(c: i64) -> Self {
        QScalar::from_int(c)
    }
}

impl From<LaurentPoly> for QScalar {
    fn from(p: LaurentPoly) -> Self {
        QScalar::from_poly(p)
    }
}

impl Add for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        if self.den.is_one() && rhs.den.is_one() {
            return QScalar { num: &self.num + &rhs.num, den: LaurentPoly::one() };
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return QScalar::reduce(&self.num + &rhs.num, self.den.clone());
        }
        if rhs.den.is_one() {
            return QScalar { num: &self.num + &(&rhs.num * &self.den), den: self.den.clone() };
        }
        if self.den.is_one() {
            return QScalar { num: &(&self.num * &rhs.den) + &rhs.num, den: rhs.den.clone() };
        }
        QScalar::reduce(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self + &(-rhs)
    }
}

impl Mul for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        if self.den.is_one() && rhs.den.is_one() {
            return QScalar { num: &self.num * &rhs.num, den: LaurentPoly::one() };
        }
        if self.is_zero() || rhs.is_zero() {
            return QScalar::zero();
        }
        if self.num.is_monomial() && self.den.is_one() {
            let c = self.num.leading_coeff();
            return QScalar { num: rhs.num.shift(self.num.low_degree()).scale_rat(&c), den: rhs.den.clone() };
        }
        if rhs.num.is_monomial() && rhs.den.is_one() {
            let c = rhs.num.leading_coeff();
            return QScalar { num: self.num.shift(rhs.num.low_degree()).scale_rat(&c), den: self.den.clone() };
        }
        QScalar::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &QScalar {
    type Output = QScalar;
    fn div(self, rhs: &QScalar) -> QScalar {
        self.try_div(rhs).expect("division by zero in QScalar")
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: &QScalar) -> QScalar {
                (&self).$m(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, rhs: &QScalar) {
        if self.den.is_one() && rhs.den.is_one() {
            self.num += &rhs.num;
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, rhs: &QScalar) {
        if self.den.is_one() && rhs.den.is_one() {
            self.num -= &rhs.num;
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&QScalar> for QScalar {
    fn mul_assign(&mut self, rhs: &QScalar) {
        *self = &*self * rhs;
    }
}

impl FromStr for QScalar {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        super::parse::parse_scalar(s)
    }
}
