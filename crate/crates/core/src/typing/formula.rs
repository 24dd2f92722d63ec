use std::fmt;

use serde::Serialize;

use super::TypingError;

/// Formulas of co-ILL.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(String),
    Bot,
    ParF(Box<Formula>, Box<Formula>),
    Sub(Box<Formula>, Box<Formula>),
    WhyNot(Box<Formula>),
}

impl Formula {
    pub fn atom(a: &str) -> Formula {
        Formula::Atom(a.to_string())
    }
    pub fn par(a: Formula, b: Formula) -> Formula {
        Formula::ParF(Box::new(a), Box::new(b))
    }
    pub fn sub(a: Formula, b: Formula) -> Formula {
        Formula::Sub(Box::new(a), Box::new(b))
    }
    pub fn why_not(a: Formula) -> Formula {
        Formula::WhyNot(Box::new(a))
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bot => 0,
            Formula::WhyNot(a) => 1 + a.depth(),
            Formula::ParF(a, b) | Formula::Sub(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// S-expression form used by derivation scripts.
    pub fn to_sexpr(&self) -> String {
        match self {
            Formula::Atom(a) => a.clone(),
            Formula::Bot => "bot".into(),
            Formula::ParF(a, b) => format!("(par {} {})", a.to_sexpr(), b.to_sexpr()),
            Formula::Sub(a, b) => format!("(sub {} {})", a.to_sexpr(), b.to_sexpr()),
            Formula::WhyNot(a) => format!("(? {})", a.to_sexpr()),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(a) => f.write_str(a),
            Formula::Bot => f.write_str("bot"),
            Formula::ParF(a, b) => write!(f, "par({a}, {b})"),
            Formula::Sub(a, b) => write!(f, "sub({a}, {b})"),
            Formula::WhyNot(a) => match **a {
                Formula::Atom(_) | Formula::Bot | Formula::WhyNot(_) => write!(f, "?{a}"),
                _ => write!(f, "?({a})"),
            },
        }
    }
}

impl Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Generic head-and-arguments tree read from functional notation like `sub(p, ?q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Raw {
    Node(String, Vec<Raw>),
    WhyNot(Box<Raw>),
}

pub(crate) fn parse_raw(src: &str) -> Result<Raw, TypingError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut pos = 0;
    let raw = raw_node(&chars, &mut pos, src)?;
    skip_ws(&chars, &mut pos);
    if pos < chars.len() {
        return Err(TypingError::Parse(format!("trailing input at byte {}", chars[pos].0)));
    }
    Ok(raw)
}

fn skip_ws(cs: &[(usize, char)], pos: &mut usize) {
    while *pos < cs.len() && cs[*pos].1.is_whitespace() {
        *pos += 1;
    }
}

fn raw_node(cs: &[(usize, char)], pos: &mut usize, src: &str) -> Result<Raw, TypingError> {
    skip_ws(cs, pos);
    let at = |p: usize| cs.get(p).map(|c| c.0).unwrap_or(src.len());
    match cs.get(*pos).map(|c| c.1) {
        Some('?') => {
            *pos += 1;
            skip_ws(cs, pos);
            if cs.get(*pos).map(|c| c.1) == Some('(') {
                *pos += 1;
                let inner = raw_node(cs, pos, src)?;
                skip_ws(cs, pos);
                if cs.get(*pos).map(|c| c.1) != Some(')') {
                    return Err(TypingError::Parse(format!("expected `)` at byte {}", at(*pos))));
                }
                *pos += 1;
                Ok(Raw::WhyNot(Box::new(inner)))
            } else {
                Ok(Raw::WhyNot(Box::new(raw_node(cs, pos, src)?)))
            }
        }
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {
            let mut name = String::new();
            while let Some(&(_, d)) = cs.get(*pos) {
                if d.is_ascii_alphanumeric() || d == '_' {
                    name.push(d);
                    *pos += 1;
                } else {
                    break;
                }
            }
            skip_ws(cs, pos);
            let mut args = Vec::new();
            if cs.get(*pos).map(|c| c.1) == Some('(') {
                *pos += 1;
                loop {
                    args.push(raw_node(cs, pos, src)?);
                    skip_ws(cs, pos);
                    match cs.get(*pos).map(|c| c.1) {
                        Some(',') => *pos += 1,
                        Some(')') => {
                            *pos += 1;
                            break;
                        }
                        _ => return Err(TypingError::Parse(format!("expected `,` or `)` at byte {}", at(*pos)))),
                    }
                }
            }
            Ok(Raw::Node(name, args))
        }
        _ => Err(TypingError::Parse(format!("expected a formula at byte {}", at(*pos)))),
    }
}

/// Parse the display notation: `a`, `bot`, `par(A, B)`, `sub(A, B)`, `?A`.
pub fn parse_formula(src: &str) -> Result<Formula, TypingError> {
    from_raw(&parse_raw(src)?)
}

fn from_raw(r: &Raw) -> Result<Formula, TypingError> {
    match r {
        Raw::WhyNot(a) => Ok(Formula::why_not(from_raw(a)?)),
        Raw::Node(h, args) => match (h.as_str(), args.as_slice()) {
            ("bot", []) => Ok(Formula::Bot),
            ("par", [a, b]) => Ok(Formula::par(from_raw(a)?, from_raw(b)?)),
            ("sub", [a, b]) => Ok(Formula::sub(from_raw(a)?, from_raw(b)?)),
            (a, []) => Ok(Formula::atom(a)),
            (h, _) => Err(TypingError::Parse(format!("unknown connective `{h}` with {} arguments", args.len()))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        let f = Formula::par(Formula::why_not(Formula::sub(Formula::atom("p"), Formula::why_not(Formula::atom("q")))), Formula::why_not(Formula::atom("r")));
        assert_eq!(f.to_string(), "par(?(sub(p, ?q)), ?r)");
        assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        assert_eq!(Formula::why_not(Formula::Bot).to_string(), "?bot");
    }

    #[test]
    fn sexpr_form() {
        let f = Formula::sub(Formula::atom("a"), Formula::why_not(Formula::Bot));
        assert_eq!(f.to_sexpr(), "(sub a (? bot))");
    }

    #[test]
    fn parse_errors() {
        assert!(parse_formula("par(a)").is_err());
        assert!(parse_formula("sub(a, b").is_err());
        assert!(parse_formula("").is_err());
    }
}
