//! Embedding of co-intuitionistic formulas into co-ILL.

use std::fmt;

use super::formula::{parse_raw, Raw};
use super::{Formula, TypingError};

/// Formulas of co-intuitionistic logic: atoms, `f`, disjunction and subtraction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoFormula {
    Atom(String),
    False,
    Or(Box<CoFormula>, Box<CoFormula>),
    Sub(Box<CoFormula>, Box<CoFormula>),
}

/// The atom standing in for the image of `f`.
pub const ZERO: &str = "zero";

impl CoFormula {
    pub fn or(a: CoFormula, b: CoFormula) -> Self {
        CoFormula::Or(Box::new(a), Box::new(b))
    }
    pub fn sub(a: CoFormula, b: CoFormula) -> Self {
        CoFormula::Sub(Box::new(a), Box::new(b))
    }
}

impl fmt::Display for CoFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoFormula::Atom(a) => f.write_str(a),
            CoFormula::False => f.write_str("f"),
            CoFormula::Or(a, b) => write!(f, "or({a}, {b})"),
            CoFormula::Sub(a, b) => write!(f, "sub({a}, {b})"),
        }
    }
}

pub fn parse_coint(src: &str) -> Result<CoFormula, TypingError> {
    from_raw(&parse_raw(src)?)
}

fn from_raw(r: &Raw) -> Result<CoFormula, TypingError> {
    let unsupported = |c: &str| Err(TypingError::UnsupportedConnective(format!("`{c}` is not a co-intuitionistic connective")));
    match r {
        Raw::WhyNot(_) => unsupported("?"),
        Raw::Node(h, args) => match (h.as_str(), args.as_slice()) {
            ("f", []) => Ok(CoFormula::False),
            ("or", [a, b]) => Ok(CoFormula::or(from_raw(a)?, from_raw(b)?)),
            ("sub", [a, b]) => Ok(CoFormula::sub(from_raw(a)?, from_raw(b)?)),
            ("par", _) | ("bot", []) => unsupported(h),
            (ZERO, []) => Err(TypingError::UnsupportedConnective(format!("`{ZERO}` is reserved for the image of f"))),
            (a, []) => Ok(CoFormula::Atom(a.to_string())),
            (h, _) => Err(TypingError::Parse(format!("unknown connective `{h}` with {} arguments", args.len()))),
        },
    }
}

/// `p° = p`, `f° = zero`, `(C ∨ D)° = ?C° ℘ ?D°`, `(C ∖ D)° = C° ∖ ?D°`.
pub fn girard_dual(c: &CoFormula) -> Formula {
    match c {
        CoFormula::Atom(p) => Formula::atom(p),
        CoFormula::False => Formula::atom(ZERO),
        CoFormula::Or(a, b) => Formula::par(Formula::why_not(girard_dual(a)), Formula::why_not(girard_dual(b))),
        CoFormula::Sub(a, b) => Formula::sub(girard_dual(a), Formula::why_not(girard_dual(b))),
    }
}

/// `(E ⊢ C̄)° = ?E° ⊢ ?C̄°`.
pub fn girard_sequent(ante: &CoFormula, succ: &[CoFormula]) -> (Formula, Vec<Formula>) {
    let q = |c: &CoFormula| Formula::why_not(girard_dual(c));
    (q(ante), succ.iter().map(q).collect())
}

/// Translate either a formula or a sequent `E |- C1, ..., Cn`.
pub fn translate_text(src: &str) -> Result<String, TypingError> {
    match src.split_once("|-") {
        None => Ok(girard_dual(&parse_coint(src)?).to_string()),
        Some((l, r)) => {
            let ante = parse_coint(l)?;
            let succ = split_commas(r).into_iter().map(parse_coint).collect::<Result<Vec<_>, _>>()?;
            let (a, cs) = girard_sequent(&ante, &succ);
            Ok(format!("{a} |- {}", cs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")))
        }
    }
}

fn split_commas(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out.into_iter().map(str::trim).filter(|p| !p.is_empty()).collect()
}
