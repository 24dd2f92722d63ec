//! Computational contexts: parallel composition over one distinguished variable.

mod alpha;
mod build;
mod validate;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::syntax::{print_term, subst, Lexer, ParseError, Term, Tok, VarName};

pub use alpha::{alpha_equal, alpha_equal_ac, alpha_equal_labelled, Mode};
pub use build::{build, Build};
pub use validate::{validate, validate_parts, ValidationReport, Violation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContextError {
    #[error("distinguished variables differ: {0} vs {1}")]
    VarMismatch(String, String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// `S_x : R1 || ... || Rk`, kept sorted in canonical term order with `[]` dropped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComputationalContext {
    pub var: VarName,
    components: Vec<Term>,
}

impl ComputationalContext {
    pub fn new(var: VarName, components: impl IntoIterator<Item = Term>) -> Self {
        let mut components: Vec<Term> = components.into_iter().filter(|t| *t != Term::Nil).collect();
        components.sort();
        ComputationalContext { var, components }
    }

    /// `{x: x}`.
    pub fn axiom(x: &str) -> Self {
        Self::new(VarName::new(x), [Term::var(x)])
    }

    pub fn components(&self) -> &[Term] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Term> {
        self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Substitute `m` for `var` in every component; the result is over `new_var`.
    pub fn substitute_var(&self, m: &Term, new_var: VarName) -> Self {
        Self::new(new_var, self.components.iter().map(|c| subst(c, &self.var, m)))
    }

    pub fn parse(src: &str) -> Result<Self, ContextError> {
        let mut lx = Lexer::new(src)?;
        let kw = lx.ident()?;
        if kw != "context" {
            return Err(ParseError { offset: 0, expected: vec!["`context`".into()], found: kw }.into());
        }
        let var = VarName(lx.ident()?);
        lx.expect(Tok::Colon)?;
        let mut comps = Vec::new();
        if !lx.at_eof() {
            comps.push(lx.term()?);
            while lx.eat(&Tok::Bars) {
                comps.push(lx.term()?);
            }
        }
        if !lx.at_eof() {
            return Err(lx.error(&["`||`", "end of input"]).into());
        }
        Ok(Self::new(var, comps))
    }
}

/// Multiset union; both sides must share the distinguished variable.
pub fn compose(a: &ComputationalContext, b: &ComputationalContext) -> Result<ComputationalContext, ContextError> {
    if a.var != b.var {
        return Err(ContextError::VarMismatch(a.var.0.clone(), b.var.0.clone()));
    }
    Ok(ComputationalContext::new(
        a.var.clone(),
        a.components.iter().chain(&b.components).cloned(),
    ))
}

impl fmt::Display for ComputationalContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "context {} :", self.var)?;
        for (i, c) in self.components.iter().enumerate() {
            let sep = if i == 0 { " " } else { " || " };
            write!(f, "{sep}{}", print_term(c))?;
        }
        Ok(())
    }
}

impl Serialize for ComputationalContext {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
