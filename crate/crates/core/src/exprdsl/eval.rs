//! Evaluation into the Drinfeld double or the ıquantum group.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use thiserror::Error;

use super::{Arg, Ast, CallName, GenKind, Scalar};
use crate::cartan::CartanDatum;
use crate::drinfeld::{f_classical, DDElement, DoubleAlgebra, Side, TriMonomial, ZeroOracle};
use crate::iqg::{ytilde, IAlgebra, IExpr, IqgError, YParams};
use crate::qscalar::{qbinom, qfactorial, qint, Parity, QScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// The Drinfeld double; `B` and `k` are embedded.
    Double,
    /// The ıquantum group.
    Iquantum,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("{0} is only available in the Drinfeld double")]
    Incompatible(String),
    #[error("node index {0} is out of range")]
    UnknownNode(usize),
    #[error("bad argument: {0}")]
    BadArgument(String),
    #[error("cannot invert {0}")]
    NotInvertible(String),
    #[error(transparent)]
    Iqg(#[from] IqgError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Double(DDElement),
    Iquantum(IExpr),
}

/// Evaluation context: the datum and the algebras built from it.
pub struct Evaluator {
    alg: IAlgebra,
}

impl Evaluator {
    pub fn new(datum: &CartanDatum) -> Self {
        Evaluator { alg: IAlgebra::new(datum) }
    }

    pub fn iquantum(&self) -> &IAlgebra {
        &self.alg
    }

    pub fn double(&self) -> &DoubleAlgebra {
        self.alg.double()
    }

    pub fn render(&self, v: &Value) -> String {
        match v {
            Value::Double(x) => self.double().render(x),
            Value::Iquantum(x) => x.render(),
        }
    }

    /// Exact zero test in the respective algebra.
    pub fn is_zero(&self, v: &Value) -> bool {
        let mut oracle = ZeroOracle::new(self.alg.datum());
        match v {
            Value::Double(x) => oracle.dd_is_zero(x),
            Value::Iquantum(x) => self.alg.is_zero_with(&mut oracle, x),
        }
    }

    pub fn sub(&self, a: &Value, b: &Value) -> Value {
        match (a, b) {
            (Value::Double(x), Value::Double(y)) => Value::Double(x.sub(y)),
            (Value::Iquantum(x), Value::Iquantum(y)) => Value::Iquantum(x.sub(y)),
            (Value::Double(x), Value::Iquantum(y)) => Value::Double(x.sub(&self.alg.embed(y))),
            (Value::Iquantum(x), Value::Double(y)) => Value::Double(self.alg.embed(x).sub(y)),
        }
    }

    fn node(&self, idx: usize) -> Result<usize, EvalError> {
        if idx == 0 || idx > self.alg.rank() {
            return Err(EvalError::UnknownNode(idx));
        }
        Ok(idx - 1)
    }

    fn eval_i(&self, ast: &Ast) -> Result<IExpr, EvalError> {
        let alg = &self.alg;
        Ok(match ast {
            Ast::Sum(terms) => {
                let mut out = alg.zero();
                for (neg, t) in terms {
                    let v = self.eval_i(t)?;
                    out = if *neg { out.sub(&v) } else { out.add(&v) };
                }
                out
            }
            Ast::Product(fs) => {
                let mut acc = alg.one();
                for f in fs {
                    acc = alg.mul(&acc, &self.eval_i(f)?);
                }
                acc
            }
            Ast::Power(b, n) => {
                let x = self.eval_i(b)?;
                if *n >= 0 {
                    alg.pow(&x, *n as u32)
                } else {
                    let terms = x.terms();
                    match terms.as_slice() {
                        [(m, c)] if m.word.is_empty() => {
                            let kexp = m.kexp.iter().map(|k| k * *n as i32).collect();
                            IExpr::monomial(alg.rank(), Vec::new(), kexp, c.pow(*n as i32).map_err(|_| EvalError::NotInvertible(b.render()))?)
                        }
                        _ => return Err(EvalError::NotInvertible(b.render())),
                    }
                }
            }
            Ast::Scalar(_) => alg.scalar(scalar_of(ast)?),
            Ast::Gen(kind, idx) => {
                let i = self.node(*idx)?;
                match kind {
                    GenKind::B => alg.b(i),
                    GenKind::K => alg.k(i, 1),
                    _ => return Err(EvalError::Incompatible(ast.render())),
                }
            }
            Ast::Call(name, args) => match name {
                CallName::Qbinom | CallName::Qint => alg.scalar(scalar_of(ast)?),
                CallName::Idp => {
                    let i = self.node(int_arg(&args[0])? as usize)?;
                    alg.idivided_power(i, int_arg(&args[1])?, parity_arg(&args[2])?)
                }
                CallName::Dp if args.len() == 2 => {
                    let i = self.node(int_arg(&args[0])? as usize)?;
                    let n = int_arg(&args[1])?;
                    if n < 0 {
                        alg.zero()
                    } else {
                        let f = qfactorial(n, alg.datum().eps(i) as i32);
                        alg.word(&vec![i as u8; n as usize], QScalar::one() / f)
                    }
                }
                CallName::Y | CallName::Yp => {
                    let p = YParams {
                        i: self.node(int_arg(&args[0])? as usize)?,
                        j: self.node(int_arg(&args[1])? as usize)?,
                        n: nonneg(int_arg(&args[2])?, "n")?,
                        m: int_arg(&args[3])?,
                        pbar: parity_arg(&args[4])?,
                        tbar: parity_arg(&args[5])?,
                        e: sign_arg(&args[6])?,
                        primed: *name == CallName::Yp,
                    };
                    ytilde(alg, &p)?
                }
                CallName::Dp | CallName::Fplus => return Err(EvalError::Incompatible(ast.render())),
            },
        })
    }

    fn eval_dd(&self, ast: &Ast) -> Result<DDElement, EvalError> {
        let dd = self.double();
        Ok(match ast {
            Ast::Sum(terms) => {
                let mut out = dd.zero();
                for (neg, t) in terms {
                    let v = self.eval_dd(t)?;
                    out = if *neg { out.sub(&v) } else { out.add(&v) };
                }
                out
            }
            Ast::Product(fs) => {
                let mut acc = dd.one();
                for f in fs {
                    acc = dd.mul(&acc, &self.eval_dd(f)?);
                }
                acc
            }
            Ast::Power(b, n) => {
                let x = self.eval_dd(b)?;
                if *n >= 0 {
                    dd.pow(&x, *n as u32)
                } else {
                    let terms = dd.terms(&x);
                    match terms.as_slice() {
                        [(m, c)] if m.eword.is_empty() && m.fword.is_empty() => {
                            let mut inv = TriMonomial::identity(dd.rank());
                            inv.kvec = m.kvec.iter().map(|k| k * *n as i32).collect();
                            let c = c.pow(*n as i32).map_err(|_| EvalError::NotInvertible(b.render()))?;
                            dd.monomial(inv, c)
                        }
                        _ => return Err(EvalError::NotInvertible(b.render())),
                    }
                }
            }
            Ast::Scalar(_) => dd.scalar(scalar_of(ast)?),
            Ast::Gen(kind, idx) => {
                let i = self.node(*idx)?;
                match kind {
                    GenKind::E => dd.e(i),
                    GenKind::F => dd.f(i),
                    GenKind::Kt => dd.kt(i, 1),
                    GenKind::Ktp => dd.ktp(i, 1),
                    GenKind::B | GenKind::K => self.alg.embed(&self.eval_i(ast)?),
                }
            }
            Ast::Call(CallName::Dp, args) if args.len() == 3 => {
                let i = self.node(int_arg(&args[0])? as usize)?;
                dd.divided_power(i, int_arg(&args[1])?, side_arg(&args[2])?)
            }
            Ast::Call(CallName::Fplus, args) => {
                let i = self.node(int_arg(&args[0])? as usize)?;
                let j = self.node(int_arg(&args[1])? as usize)?;
                if i == j {
                    return Err(EvalError::BadArgument("fplus needs distinct nodes".into()));
                }
                let n = nonneg(int_arg(&args[2])?, "n")?;
                let m = int_arg(&args[3])?;
                let e = sign_arg(&args[4])?;
                let side = match args.get(5) {
                    Some(a) => side_arg(a)?,
                    None => Side::E,
                };
                f_classical(dd, i, j, n, m, e, side)
            }
            Ast::Call(..) => self.alg.embed(&self.eval_i(ast)?),
        })
    }
}

fn scalar_of(ast: &Ast) -> Result<QScalar, EvalError> {
    Ok(match ast {
        Ast::Scalar(Scalar::Int(n)) => QScalar::from_bigint(n.clone()),
        Ast::Scalar(Scalar::Q) => QScalar::q_pow(1),
        Ast::Call(CallName::Qbinom, args) => {
            let eps = args.get(2).map(int_arg).transpose()?.unwrap_or(1);
            qbinom(int_arg(&args[0])?, int_arg(&args[1])?, small(eps)?)
        }
        Ast::Call(CallName::Qint, args) => {
            let eps = args.get(1).map(int_arg).transpose()?.unwrap_or(1);
            qint(int_arg(&args[0])?, small(eps)?)
        }
        _ => unreachable!("not a scalar node"),
    })
}

fn small(e: i64) -> Result<i32, EvalError> {
    i32::try_from(e).ok().filter(|&x| x > 0).ok_or_else(|| EvalError::BadArgument(format!("base exponent {e} must be positive")))
}

fn int_arg(a: &Arg) -> Result<i64, EvalError> {
    match a {
        Arg::Int(n) => n.to_i64().ok_or_else(|| EvalError::BadArgument(format!("{n} is too large"))),
        other => Err(EvalError::BadArgument(format!("expected an integer, found {other}"))),
    }
}

fn nonneg(n: i64, what: &str) -> Result<i64, EvalError> {
    if n < 0 {
        return Err(EvalError::BadArgument(format!("{what} must be nonnegative")));
    }
    Ok(n)
}

fn sign_arg(a: &Arg) -> Result<i64, EvalError> {
    match int_arg(a)? {
        e @ (1 | -1) => Ok(e),
        e => Err(EvalError::BadArgument(format!("e must be +1 or -1, found {e}"))),
    }
}

fn parity_arg(a: &Arg) -> Result<Parity, EvalError> {
    match a {
        Arg::Parity(p) => Ok(*p),
        Arg::Int(n) if *n == BigInt::from(0) => Ok(Parity::Even),
        Arg::Int(n) if *n == BigInt::from(1) => Ok(Parity::Odd),
        other => Err(EvalError::BadArgument(format!("expected a parity, found {other}"))),
    }
}

fn side_arg(a: &Arg) -> Result<Side, EvalError> {
    match a {
        Arg::Side(s) => Ok(*s),
        other => Err(EvalError::BadArgument(format!("expected E or F, found {other}"))),
    }
}

/// The double when the expression mentions anything that only lives there, else the ıquantum group.
pub fn infer_target(ast: &Ast) -> Target {
    fn needs_double(a: &Ast) -> bool {
        match a {
            Ast::Sum(ts) => ts.iter().any(|(_, t)| needs_double(t)),
            Ast::Product(fs) => fs.iter().any(needs_double),
            Ast::Power(b, _) => needs_double(b),
            Ast::Scalar(_) => false,
            Ast::Gen(k, _) => k.double_only(),
            Ast::Call(CallName::Fplus, _) => true,
            Ast::Call(CallName::Dp, args) => args.len() == 3,
            Ast::Call(..) => false,
        }
    }
    if needs_double(ast) {
        Target::Double
    } else {
        Target::Iquantum
    }
}

pub fn eval(ast: &Ast, ev: &Evaluator, target: Target) -> Result<Value, EvalError> {
    match target {
        Target::Double => ev.eval_dd(ast).map(Value::Double),
        Target::Iquantum => ev.eval_i(ast).map(Value::Iquantum),
    }
}
