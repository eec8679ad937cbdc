//! A small expression language over the Drinfeld double and the ıquantum group.
//!
//! ```text
//! expr   := ["-"] term { ("+"|"-") term }
//! term   := factor { "*" factor }
//! factor := atom [ "^" int ]
//! atom   := gen | call | scalar | "(" expr ")"
//! gen    := ("E"|"F"|"Kt"|"Ktp"|"B"|"k") "[" index "]"
//! call   := name "(" arg { "," arg } ")"
//! ```
//!
//! Scalars are nonnegative integers and `q`; indices are 1-based.

mod eval;
mod parse;

use std::fmt;

use num_bigint::BigInt;

use crate::drinfeld::Side;
use crate::qscalar::Parity;

pub use eval::{eval, infer_target, EvalError, Evaluator, Target, Value};
pub use parse::{parse, parse_equation, ParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    E,
    F,
    Kt,
    Ktp,
    B,
    K,
}

impl GenKind {
    pub fn name(self) -> &'static str {
        match self {
            GenKind::E => "E",
            GenKind::F => "F",
            GenKind::Kt => "Kt",
            GenKind::Ktp => "Ktp",
            GenKind::B => "B",
            GenKind::K => "k",
        }
    }

    pub fn from_name(s: &str) -> Option<GenKind> {
        Some(match s {
            "E" => GenKind::E,
            "F" => GenKind::F,
            "Kt" => GenKind::Kt,
            "Ktp" => GenKind::Ktp,
            "B" => GenKind::B,
            "k" => GenKind::K,
            _ => return None,
        })
    }

    /// Generators that only exist in the Drinfeld double.
    pub fn double_only(self) -> bool {
        !matches!(self, GenKind::B | GenKind::K)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CallName {
    Idp,
    Dp,
    Y,
    Yp,
    Fplus,
    Qbinom,
    Qint,
}

impl CallName {
    pub const ALL: [CallName; 7] = [CallName::Idp, CallName::Dp, CallName::Y, CallName::Yp, CallName::Fplus, CallName::Qbinom, CallName::Qint];

    pub fn name(self) -> &'static str {
        match self {
            CallName::Idp => "idp",
            CallName::Dp => "dp",
            CallName::Y => "y",
            CallName::Yp => "yp",
            CallName::Fplus => "fplus",
            CallName::Qbinom => "qbinom",
            CallName::Qint => "qint",
        }
    }

    pub fn from_name(s: &str) -> Option<CallName> {
        CallName::ALL.into_iter().find(|c| c.name() == s)
    }

    /// Accepted argument counts.
    pub fn arity(self) -> &'static [usize] {
        match self {
            CallName::Idp => &[3],
            CallName::Dp => &[2, 3],
            CallName::Y | CallName::Yp => &[7],
            CallName::Fplus => &[5, 6],
            CallName::Qbinom => &[2, 3],
            CallName::Qint => &[1, 2],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Int(BigInt),
    Parity(Parity),
    Side(Side),
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Int(n) => write!(f, "{n}"),
            Arg::Parity(p) => f.write_str(p.name()),
            Arg::Side(Side::E) => f.write_str("E"),
            Arg::Side(Side::F) => f.write_str("F"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Int(BigInt),
    Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ast {
    /// Signed terms; `true` marks a subtracted term.
    Sum(Vec<(bool, Ast)>),
    Product(Vec<Ast>),
    Power(Box<Ast>, i64),
    Scalar(Scalar),
    /// Generator with a 1-based node index.
    Gen(GenKind, usize),
    Call(CallName, Vec<Arg>),
}

impl Ast {
    fn is_atomic(&self) -> bool {
        matches!(self, Ast::Scalar(_) | Ast::Gen(..) | Ast::Call(..))
    }

    /// Canonical text with only the parentheses needed to parse back to the same tree.
    pub fn render(&self) -> String {
        match self {
            Ast::Sum(terms) => {
                let mut s = String::new();
                for (idx, (neg, t)) in terms.iter().enumerate() {
                    if *neg {
                        s.push('-');
                    } else if idx > 0 {
                        s.push('+');
                    }
                    if matches!(t, Ast::Sum(_)) {
                        s.push_str(&format!("({})", t.render()));
                    } else {
                        s.push_str(&t.render());
                    }
                }
                s
            }
            Ast::Product(fs) => fs
                .iter()
                .map(|f| if matches!(f, Ast::Sum(_) | Ast::Product(_)) { format!("({})", f.render()) } else { f.render() })
                .collect::<Vec<_>>()
                .join("*"),
            Ast::Power(b, n) => {
                let base = if b.is_atomic() { b.render() } else { format!("({})", b.render()) };
                if *n == 1 {
                    base
                } else {
                    format!("{base}^{n}")
                }
            }
            Ast::Scalar(Scalar::Int(n)) => n.to_string(),
            Ast::Scalar(Scalar::Q) => "q".into(),
            Ast::Gen(k, i) => format!("{}[{}]", k.name(), i),
            Ast::Call(name, args) => {
                format!("{}({})", name.name(), args.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(","))
            }
        }
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
