//! Derivation scripts as s-expressions.

use std::fmt;

use super::{Formula, TypingError};
use crate::syntax::VarName;

/// A rule together with its non-premise parameters. Optional indices fall back to the
/// rule's default slot (see `elaborate`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    Axiom { var: VarName, formula: Formula },
    Cut { index: Option<usize> },
    BotElim { var: VarName },
    BotIntro { target: usize },
    SubIntro { index: Option<usize> },
    SubElim { index: Option<usize>, right: Option<usize> },
    ParIntro { i: usize, j: usize },
    ParElim { target: usize },
    Dereliction { i: usize },
    Weakening { formula: Formula, target: usize },
    Contraction { i: usize, j: usize },
    Storage { target: Option<usize> },
    /// Sequent-calculus left rules, accepted for the probabilistic reading.
    SubLeft { var: VarName, index: Option<usize> },
    ParLeft { var: VarName },
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Axiom { .. } => "axiom",
            Rule::Cut { .. } => "cut",
            Rule::BotElim { .. } => "bot-elim",
            Rule::BotIntro { .. } => "bot-intro",
            Rule::SubIntro { .. } => "sub-intro",
            Rule::SubElim { .. } => "sub-elim",
            Rule::ParIntro { .. } => "par-intro",
            Rule::ParElim { .. } => "par-elim",
            Rule::Dereliction { .. } => "der",
            Rule::Weakening { .. } => "weak",
            Rule::Contraction { .. } => "contr",
            Rule::Storage { .. } => "store",
            Rule::SubLeft { .. } => "sub-left",
            Rule::ParLeft { .. } => "par-left",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Rule::Axiom { .. } | Rule::BotElim { .. } => 0,
            Rule::BotIntro { .. }
            | Rule::ParIntro { .. }
            | Rule::Dereliction { .. }
            | Rule::Weakening { .. }
            | Rule::Contraction { .. }
            | Rule::SubLeft { .. } => 1,
            Rule::Cut { .. } | Rule::SubIntro { .. } | Rule::SubElim { .. } | Rule::Storage { .. } | Rule::ParLeft { .. } => 2,
            Rule::ParElim { .. } => 3,
        }
    }

    pub fn is_exponential(&self) -> bool {
        matches!(self, Rule::Dereliction { .. } | Rule::Weakening { .. } | Rule::Contraction { .. } | Rule::Storage { .. })
    }
}

/// A derivation skeleton without conclusions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Script {
    pub rule: Rule,
    pub premises: Vec<Script>,
}

impl Script {
    pub fn new(rule: Rule, premises: Vec<Script>) -> Self {
        Script { rule, premises }
    }

    pub fn axiom(x: &str, f: Formula) -> Self {
        Script::new(Rule::Axiom { var: VarName::new(x), formula: f }, vec![])
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Script::size).sum::<usize>()
    }

    /// Every variable name the script mentions directly.
    pub fn names(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_names(&mut out);
        out
    }

    fn collect_names(&self, out: &mut Vec<String>) {
        match &self.rule {
            Rule::Axiom { var, .. } | Rule::BotElim { var } | Rule::SubLeft { var, .. } | Rule::ParLeft { var } => {
                out.push(var.0.clone())
            }
            _ => {}
        }
        for p in &self.premises {
            p.collect_names(out);
        }
    }
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.rule.name())?;
        match &self.rule {
            Rule::Axiom { var, formula } => return write!(f, " {var} {})", formula.to_sexpr()),
            Rule::BotElim { var } => return write!(f, " {var})"),
            _ => {}
        }
        for p in &self.premises {
            write!(f, " {p}")?;
        }
        let opt = |o: &Option<usize>| o.map(|i| format!(" {i}")).unwrap_or_default();
        match &self.rule {
            Rule::Cut { index } | Rule::SubIntro { index } | Rule::Storage { target: index } => write!(f, "{}", opt(index))?,
            Rule::SubElim { index, right } => match (index, right) {
                (Some(i), Some(j)) => write!(f, " {i} {j}")?,
                (Some(i), None) => write!(f, " {i}")?,
                (None, Some(j)) => write!(f, " _ {j}")?,
                (None, None) => {}
            },
            Rule::BotIntro { target } | Rule::ParElim { target } => write!(f, " {target}")?,
            Rule::ParIntro { i, j } | Rule::Contraction { i, j } => write!(f, " {i} {j}")?,
            Rule::Dereliction { i } => write!(f, " {i}")?,
            Rule::Weakening { formula, target } => write!(f, " {} {target}", formula.to_sexpr())?,
            Rule::SubLeft { var, index } => write!(f, " {var}{}", opt(index))?,
            Rule::ParLeft { var } => write!(f, " {var}")?,
            Rule::Axiom { .. } | Rule::BotElim { .. } => {}
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Sx {
    Atom(String, usize),
    List(Vec<Sx>, usize),
}

impl Sx {
    fn offset(&self) -> usize {
        match self {
            Sx::Atom(_, o) | Sx::List(_, o) => *o,
        }
    }
}

fn read_sx(src: &str) -> Result<Vec<Sx>, TypingError> {
    let mut stack: Vec<(Vec<Sx>, usize)> = vec![(Vec::new(), 0)];
    let mut it = src.char_indices().peekable();
    while let Some((i, c)) = it.next() {
        match c {
            ';' | '#' => {
                while let Some(&(_, d)) = it.peek() {
                    if d == '\n' {
                        break;
                    }
                    it.next();
                }
            }
            '(' => stack.push((Vec::new(), i)),
            ')' => {
                if stack.len() == 1 {
                    return Err(TypingError::Parse(format!("unbalanced `)` at byte {i}")));
                }
                let (items, start) = stack.pop().expect("checked length");
                stack.last_mut().expect("non-empty").0.push(Sx::List(items, start));
            }
            c if c.is_whitespace() => {}
            _ => {
                let mut tok = String::from(c);
                while let Some(&(_, d)) = it.peek() {
                    if d.is_whitespace() || d == '(' || d == ')' || d == ';' {
                        break;
                    }
                    tok.push(d);
                    it.next();
                }
                stack.last_mut().expect("non-empty").0.push(Sx::Atom(tok, i));
            }
        }
    }
    if stack.len() != 1 {
        return Err(TypingError::Parse(format!("unclosed `(` at byte {}", stack.last().map(|s| s.1).unwrap_or(0))));
    }
    Ok(stack.pop().expect("root").0)
}

fn perr(at: usize, msg: impl fmt::Display) -> TypingError {
    TypingError::Parse(format!("at byte {at}: {msg}"))
}

fn formula(sx: &Sx) -> Result<Formula, TypingError> {
    match sx {
        Sx::Atom(a, _) if a == "bot" => Ok(Formula::Bot),
        Sx::Atom(a, o) => {
            if a.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') && a.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
                Ok(Formula::atom(a))
            } else {
                Err(perr(*o, format!("bad atom `{a}`")))
            }
        }
        Sx::List(items, o) => match items.as_slice() {
            [Sx::Atom(h, _), a, b] if h == "par" => Ok(Formula::par(formula(a)?, formula(b)?)),
            [Sx::Atom(h, _), a, b] if h == "sub" => Ok(Formula::sub(formula(a)?, formula(b)?)),
            [Sx::Atom(h, _), a] if h == "?" => Ok(Formula::why_not(formula(a)?)),
            _ => Err(perr(*o, "expected (par F F), (sub F F) or (? F)")),
        },
    }
}

fn var(sx: &Sx) -> Result<VarName, TypingError> {
    match sx {
        Sx::Atom(a, _) if a.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) && a.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') => {
            Ok(VarName::new(a.clone()))
        }
        other => Err(perr(other.offset(), "expected a variable name")),
    }
}

fn index(sx: &Sx) -> Result<usize, TypingError> {
    match sx {
        Sx::Atom(a, o) => a.parse().map_err(|_| perr(*o, format!("expected an index, found `{a}`"))),
        other => Err(perr(other.offset(), "expected an index")),
    }
}

fn script(sx: &Sx) -> Result<Script, TypingError> {
    let Sx::List(items, at) = sx else {
        return Err(perr(sx.offset(), "expected a rule application `(rule ...)`"));
    };
    let Some(Sx::Atom(head, _)) = items.first() else {
        return Err(perr(*at, "expected a rule name"));
    };
    let args = &items[1..];
    let n_prem = match head.as_str() {
        "axiom" | "bot-elim" => 0,
        "bot-intro" | "par-intro" | "der" | "weak" | "contr" | "sub-left" => 1,
        "cut" | "sub-intro" | "sub-elim" | "store" | "par-left" => 2,
        "par-elim" => 3,
        other => return Err(perr(*at, format!("unknown rule `{other}`"))),
    };
    if args.len() < n_prem {
        return Err(perr(*at, format!("`{head}` needs {n_prem} premises")));
    }
    let premises = args[..n_prem].iter().map(script).collect::<Result<Vec<_>, _>>()?;
    let rest = &args[n_prem..];
    let want = |lo: usize, hi: usize| -> Result<(), TypingError> {
        if rest.len() < lo || rest.len() > hi {
            Err(perr(*at, format!("`{head}` takes {lo}..={hi} parameters after its premises, got {}", rest.len())))
        } else {
            Ok(())
        }
    };
    // `_` stands for the rule's default slot.
    let opt = |i: usize| match rest.get(i) {
        Some(Sx::Atom(a, _)) if a == "_" => Ok(None),
        other => other.map(index).transpose(),
    };
    let rule = match head.as_str() {
        "axiom" => {
            want(2, 2)?;
            Rule::Axiom { var: var(&rest[0])?, formula: formula(&rest[1])? }
        }
        "bot-elim" => {
            want(1, 1)?;
            Rule::BotElim { var: var(&rest[0])? }
        }
        "bot-intro" => {
            want(1, 1)?;
            Rule::BotIntro { target: index(&rest[0])? }
        }
        "par-intro" => {
            want(2, 2)?;
            Rule::ParIntro { i: index(&rest[0])?, j: index(&rest[1])? }
        }
        "contr" => {
            want(2, 2)?;
            Rule::Contraction { i: index(&rest[0])?, j: index(&rest[1])? }
        }
        "der" => {
            want(1, 1)?;
            Rule::Dereliction { i: index(&rest[0])? }
        }
        "weak" => {
            want(2, 2)?;
            Rule::Weakening { formula: formula(&rest[0])?, target: index(&rest[1])? }
        }
        "sub-left" => {
            want(1, 2)?;
            Rule::SubLeft { var: var(&rest[0])?, index: rest.get(1).map(index).transpose()? }
        }
        "cut" => {
            want(0, 1)?;
            Rule::Cut { index: opt(0)? }
        }
        "sub-intro" => {
            want(0, 1)?;
            Rule::SubIntro { index: opt(0)? }
        }
        "sub-elim" => {
            want(0, 2)?;
            Rule::SubElim { index: opt(0)?, right: opt(1)? }
        }
        "store" => {
            want(0, 1)?;
            Rule::Storage { target: opt(0)? }
        }
        "par-left" => {
            want(1, 1)?;
            Rule::ParLeft { var: var(&rest[0])? }
        }
        "par-elim" => {
            want(1, 1)?;
            Rule::ParElim { target: index(&rest[0])? }
        }
        _ => unreachable!("rule names checked above"),
    };
    Ok(Script::new(rule, premises))
}

/// Parse exactly one derivation script.
pub fn parse_script(src: &str) -> Result<Script, TypingError> {
    let top = read_sx(src)?;
    match top.as_slice() {
        [one] => script(one),
        [] => Err(TypingError::Parse("empty script".into())),
        [_, second, ..] => Err(perr(second.offset(), "more than one top-level form")),
    }
}

/// Parse a formula in s-expression notation.
pub fn parse_sexpr_formula(src: &str) -> Result<Formula, TypingError> {
    let top = read_sx(src)?;
    match top.as_slice() {
        [one] => formula(one),
        _ => Err(TypingError::Parse("expected exactly one formula".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for src in [
            "(axiom x (sub c c))",
            "(bot-intro (bot-elim x) 0)",
            "(sub-elim (sub-intro (axiom z c) (axiom x c)) (sub-intro (axiom y c) (axiom x c)) 0 1)",
            "(par-elim (axiom z (par a b)) (axiom x a) (axiom y b) 0)",
            "(weak (axiom x a) (? b) 0)",
            "(store (axiom j (? a)) (der (axiom k a) 0))",
            "(par-left (axiom x a) (axiom y b) z)",
            "(sub-left (axiom x a) z 0)",
            "(sub-elim (axiom k (sub a b)) (axiom x a) _ 0)",
        ] {
            let s = parse_script(src).unwrap();
            assert_eq!(s.to_string(), src);
        }
    }

    #[test]
    fn comments() {
        let s = parse_script("; leading\n(axiom x a) # trailing").unwrap();
        assert_eq!(s, Script::axiom("x", Formula::atom("a")));
    }

    #[test]
    fn errors() {
        assert!(parse_script("(frob x)").is_err());
        assert!(parse_script("(axiom x)").is_err());
        assert!(parse_script("(cut (axiom x a))").is_err());
        assert!(parse_script("(axiom x a").is_err());
        assert!(parse_script("(axiom x a))").is_err());
        assert!(parse_script("(der (axiom x a) q)").is_err());
    }
}
