//! Candidate braid symmetries `T'_{i,e}` and `T''_{i,-e}` on generators, and
//! their multiplicative extension to expressions.

use super::ytilde::{ytilde_impl, YParams};
use super::{IAlgebra, IExpr, IqgError};
use crate::qscalar::{Parity, QScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BraidKind {
    /// `T'_{i,e}`.
    Prime,
    /// `T''_{i,-e}`, paired with `T'_{i,e}` as its candidate inverse.
    DoublePrime,
}

/// Images of all generators: `(B_j images, k̃_j images)`.
pub(crate) fn generator_images(alg: &IAlgebra, i: usize, e: i64, kind: BraidKind, p: Parity, t: Parity, mutate: bool) -> Result<(Vec<IExpr>, Vec<IExpr>), IqgError> {
    let d = alg.datum();
    if d.tau(i) != i {
        return Err(IqgError::NotFixed(i));
    }
    let eps = d.eps(i) as i32;
    // -q_i^{1+e} k̃_i
    let base_c = QScalar::monomial(-1, eps * (1 + e as i32));
    let mut bimg = Vec::new();
    let mut kimg = Vec::new();
    for j in 0..d.rank() {
        let a = d.a(i, j);
        let kpow = -(a as i32);
        let mut kexp = vec![0; d.rank()];
        kexp[i] = kpow;
        kexp[j] += 1;
        let c = base_c.pow(kpow).expect("nonzero");
        kimg.push(IExpr::monomial(d.rank(), Vec::new(), kexp, c));
        if j == i {
            let mut kexp = vec![0; d.rank()];
            kexp[i] = -1;
            let mut c = base_c.recip().expect("nonzero");
            if mutate {
                c = c.shift(eps);
            }
            bimg.push(IExpr::monomial(d.rank(), vec![i as u8], kexp, c));
        } else {
            let yp = YParams { i, j, n: 1, m: -a, pbar: p, tbar: t, e, primed: kind == BraidKind::DoublePrime };
            bimg.push(ytilde_impl(alg, &yp, false)?);
        }
    }
    Ok((bimg, kimg))
}

/// Image of a single generator (`B_j` when `is_k` is false, `k̃_j` otherwise).
pub fn braid_image(alg: &IAlgebra, i: usize, e: i64, kind: BraidKind, j: usize, is_k: bool, p: Parity, t: Parity) -> Result<IExpr, IqgError> {
    let (b, k) = generator_images(alg, i, e, kind, p, t, false)?;
    if j >= alg.rank() {
        return Err(IqgError::BadNode(j));
    }
    Ok(if is_k { k[j].clone() } else { b[j].clone() })
}

/// Extends generator images multiplicatively; `k̃` images must be single monomials.
pub fn apply_substitution(alg: &IAlgebra, x: &IExpr, bimg: &[IExpr], kimg: &[IExpr]) -> IExpr {
    let mut out = alg.zero();
    for (m, c) in x.terms() {
        let mut acc = alg.scalar(c);
        for &b in &m.word {
            acc = alg.mul(&acc, &bimg[b as usize]);
        }
        for (j, &k) in m.kexp.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let img = monomial_power(alg, &kimg[j], k);
            acc = alg.mul(&acc, &img);
        }
        out.add_assign(&acc);
    }
    out
}

fn monomial_power(alg: &IAlgebra, x: &IExpr, k: i32) -> IExpr {
    let terms = x.terms();
    assert_eq!(terms.len(), 1, "k̃ images must be monomials");
    let (m, c) = &terms[0];
    assert!(m.word.is_empty(), "k̃ images must not involve B");
    let kexp = m.kexp.iter().map(|e| e * k).collect();
    IExpr::monomial(alg.rank(), Vec::new(), kexp, c.pow(k).expect("nonzero"))
}
