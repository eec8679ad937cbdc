//! Dense polynomial helpers over ℤ and ℚ used to normalize quotients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::LaurentPoly;

/// Coefficients (ascending degree) of `p / q^{low}` scaled to a primitive integer polynomial.
pub(crate) fn primitive_part(p: &LaurentPoly) -> Vec<BigInt> {
    let coeffs = p.rat_coeffs();
    let mut l = BigInt::one();
    for c in &coeffs {
        l = l.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    make_primitive(ints)
}

fn content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    trim(&mut v);
    if v.is_empty() {
        return v;
    }
    let mut g = content(&v);
    if v.last().unwrap().is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
    v
}

fn trim(v: &mut Vec<BigInt>) {
    while let Some(last) = v.last() {
        if last.is_zero() {
            v.pop();
        } else {
            break;
        }
    }
}

/// Pseudo-remainder of `a` by `b` (both nonzero, integer coefficients).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let g = lr.gcd(&lb);
        let mr = &lb / &g;
        let mb = &lr / &g;
        for c in r.iter_mut() {
            *c *= &mr;
        }
        let off = dr - db;
        for (k, c) in b.iter().enumerate() {
            r[off + k] -= c * &mb;
        }
        trim(&mut r);
    }
    r
}

/// Primitive gcd of two polynomials given as primitive integer coefficient vectors.
pub(crate) fn gcd_primitive(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut x = make_primitive(a.to_vec());
    let mut y = make_primitive(b.to_vec());
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = make_primitive(pseudo_rem(&x, &y));
        x = y;
        y = r;
    }
    x
}

/// Exact quotient `a / b` over ℚ of ascending coefficient vectors; panics if the division leaves a remainder.
pub(crate) fn exact_div(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b[db].clone();
    if r.len() < b.len() {
        assert!(r.iter().all(|c| c.is_zero()), "inexact polynomial division");
        return Vec::new();
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / &lb;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    assert!(r.iter().all(|c| c.is_zero()), "inexact polynomial division");
    q
}
