//! The Serre–Lusztig families `ỹ_{i,j;n,m,p,t,e}` and `ỹ'_{i,j;n,m,p,t,e}`.

use serde::{Deserialize, Serialize};

use super::{IAlgebra, IExpr, IqgError};
use crate::qscalar::{qbinom, Parity, QScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YParams {
    pub i: usize,
    pub j: usize,
    pub n: i64,
    pub m: i64,
    pub pbar: Parity,
    pub tbar: Parity,
    pub e: i64,
    pub primed: bool,
}

fn sign(r: i64) -> i64 {
    if r % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Coefficient of `(q_i k̃_i)^u B^{(r)} B_j^{(n)} B^{(s)}` (or its mirror) for `r + s + 2u = m`.
/// `mutate` perturbs a single exponent in the odd branch.
pub(crate) fn ycoeff(m: i64, na: i64, e: i64, r: i64, u: i64, p: Parity, eps: i32, mutate: bool) -> QScalar {
    let r_is_p = Parity::of(r) == p;
    let (exp, top) = if (m - na).rem_euclid(2) == 1 {
        let top = (m + na - 1) / 2;
        if r_is_p {
            (-e * ((m + na - 2) * (r + u) + r), top)
        } else {
            let x = if mutate { r + 1 } else { r };
            (-e * ((m + na) * (r + u) - x), top)
        }
    } else {
        let top = if r_is_p { (m + na - 2) / 2 } else { (m + na) / 2 };
        (-e * (m + na - 1) * (r + u), top)
    };
    let b = qbinom(top, u, 2 * eps);
    if b.is_zero() {
        return b;
    }
    &QScalar::monomial(sign(r), eps * exp as i32) * &b
}

pub(crate) fn ytilde_impl(alg: &IAlgebra, p: &YParams, mutate: bool) -> Result<IExpr, IqgError> {
    let d = alg.datum();
    if p.i >= d.rank() || p.j >= d.rank() {
        return Err(IqgError::BadNode(p.i.max(p.j)));
    }
    if d.tau(p.i) != p.i {
        return Err(IqgError::NotFixed(p.i));
    }
    if p.i == p.j {
        return Err(IqgError::Constraint("ỹ needs distinct nodes".into()));
    }
    let mut out = alg.zero();
    if p.m < 0 || p.n < 0 {
        return Ok(out);
    }
    let eps = d.eps(p.i) as i32;
    let na = p.n * d.a(p.i, p.j);
    let middle = alg.idp_flavor(p.j, p.n, p.tbar);
    let qk = alg.k(p.i, 1).scale(&QScalar::q_pow(eps));
    for u in 0..=p.m / 2 {
        let qku = alg.pow(&qk, u as u32);
        for r in 0..=p.m - 2 * u {
            let s = p.m - 2 * u - r;
            let c = ycoeff(p.m, na, p.e, r, u, p.pbar, eps, mutate);
            if c.is_zero() {
                continue;
            }
            let (left, right) = if p.primed {
                (alg.idivided_power(p.i, s, p.pbar + na), alg.idivided_power(p.i, r, p.pbar))
            } else {
                (alg.idivided_power(p.i, r, p.pbar), alg.idivided_power(p.i, s, p.pbar + na))
            };
            let t = alg.product(&[&qku, &left, &middle, &right]);
            out.add_assign(&t.scale(&c));
        }
    }
    Ok(out)
}

/// `ỹ` (or `ỹ'` when `primed`), built from the branch matching the parity of `m - n a_ij`.
pub fn ytilde(alg: &IAlgebra, p: &YParams) -> Result<IExpr, IqgError> {
    ytilde_impl(alg, p, false)
}

/// The simplified display of `ỹ`/`ỹ'` valid at `m = -n a_ij`.
pub fn ytilde_minimal_display(alg: &IAlgebra, i: usize, j: usize, n: i64, p: Parity, t: Parity, e: i64, primed: bool) -> IExpr {
    let d = alg.datum();
    let eps = d.eps(i) as i32;
    let na = n * d.a(i, j);
    let m = -na;
    let middle = alg.idp_flavor(j, n, t);
    let mut out = alg.zero();
    let qk = alg.k(i, 1).scale(&QScalar::q_pow(eps));
    for u in 0..=m / 2 {
        for r in 0..=m - 2 * u {
            if u >= 1 && Parity::of(r) != p {
                continue;
            }
            let s = m - 2 * u - r;
            let c = QScalar::monomial(sign(r + u), eps * (e * (r + u)) as i32);
            let (left, right) = if primed {
                (alg.idivided_power(i, s, p + na), alg.idivided_power(i, r, p))
            } else {
                (alg.idivided_power(i, r, p), alg.idivided_power(i, s, p + na))
            };
            let t = alg.product(&[&alg.pow(&qk, u as u32), &left, &middle, &right]);
            out.add_assign(&t.scale(&c));
        }
    }
    out
}
