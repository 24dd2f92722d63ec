use thiserror::Error;

use super::{CoName, Store, Term, VarName};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {offset}: expected {}, found {found}", expected.join(" | "))]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Co(String),
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Semi,
    Arrow,
    Bars,
    Colon,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Co(s) => format!("'{s}"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrack => "`[`".into(),
            Tok::RBrack => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Bars => "`||`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Token stream with byte offsets; shared by term and context parsing.
pub(crate) struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Lexer {
    pub(crate) fn new(src: &str) -> Result<Self, ParseError> {
        let mut toks = Vec::new();
        let mut it = src.char_indices().peekable();
        while let Some(&(i, c)) = it.peek() {
            if c.is_whitespace() {
                it.next();
                continue;
            }
            if c == '#' {
                while let Some(&(_, c)) = it.peek() {
                    if c == '\n' {
                        break;
                    }
                    it.next();
                }
                continue;
            }
            let single = match c {
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                '[' => Some(Tok::LBrack),
                ']' => Some(Tok::RBrack),
                ',' => Some(Tok::Comma),
                ';' => Some(Tok::Semi),
                ':' => Some(Tok::Colon),
                _ => None,
            };
            if let Some(t) = single {
                toks.push((t, i));
                it.next();
                continue;
            }
            let pair = |it: &mut std::iter::Peekable<std::str::CharIndices>, want: char, tok: Tok| {
                it.next();
                match it.peek() {
                    Some(&(_, d)) if d == want => {
                        it.next();
                        Ok((tok, i))
                    }
                    _ => Err(ParseError {
                        offset: i,
                        expected: vec![format!("`{c}{want}`")],
                        found: format!("`{c}`"),
                    }),
                }
            };
            match c {
                '-' => toks.push(pair(&mut it, '>', Tok::Arrow)?),
                '|' => toks.push(pair(&mut it, '|', Tok::Bars)?),
                '\'' => {
                    it.next();
                    let mut name = String::new();
                    while let Some(&(_, d)) = it.peek() {
                        if (name.is_empty() && ident_start(d)) || (!name.is_empty() && ident_char(d)) {
                            name.push(d);
                            it.next();
                        } else {
                            break;
                        }
                    }
                    if name.is_empty() {
                        return Err(ParseError {
                            offset: i + 1,
                            expected: vec!["name after `'`".into()],
                            found: it.peek().map(|&(_, d)| format!("`{d}`")).unwrap_or("end of input".into()),
                        });
                    }
                    toks.push((Tok::Co(name), i));
                }
                c if ident_start(c) => {
                    let mut name = String::new();
                    while let Some(&(_, d)) = it.peek() {
                        if ident_char(d) {
                            name.push(d);
                            it.next();
                        } else {
                            break;
                        }
                    }
                    toks.push((Tok::Ident(name), i));
                }
                _ => {
                    return Err(ParseError {
                        offset: i,
                        expected: vec!["a term".into()],
                        found: format!("`{c}`"),
                    })
                }
            }
        }
        toks.push((Tok::Eof, src.len()));
        Ok(Lexer { toks, pos: 0 })
    }

    pub(crate) fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        }
    }

    pub(crate) fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[&want.describe()]))
        }
    }

    pub(crate) fn eat(&mut self, want: &Tok) -> bool {
        if self.peek() == want {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.error(&["identifier"])),
        }
    }

    fn coname(&mut self) -> Result<CoName, ParseError> {
        match self.peek().clone() {
            Tok::Co(s) => {
                self.bump();
                Ok(CoName(s))
            }
            _ => Err(self.error(&["'name"])),
        }
    }

    pub(crate) fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    pub(crate) fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().clone() {
            Tok::Co(y) => {
                self.bump();
                self.expect(Tok::LParen)?;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Term::CoApp(CoName(y), Box::new(t)))
            }
            Tok::LBrack => {
                self.bump();
                if self.eat(&Tok::RBrack) {
                    return Ok(Term::Nil);
                }
                let a = self.term()?;
                if self.eat(&Tok::RBrack) {
                    return Ok(Term::List1(Box::new(a)));
                }
                self.expect(Tok::Comma)?;
                let b = self.term()?;
                self.expect(Tok::RBrack)?;
                Ok(Term::List2(Box::new(a), Box::new(b)))
            }
            Tok::Ident(kw) if *self.peek2() == Tok::LParen => {
                self.bump();
                self.bump();
                let t = self.keyword(&kw)?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Ident(x) => {
                self.bump();
                Ok(Term::Var(VarName(x)))
            }
            _ => Err(self.error(&["variable", "'name(", "keyword", "`[`"])),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<Term, ParseError> {
        let b = Box::new;
        Ok(match kw {
            "connect_to" => Term::ConnectTo(b(self.term()?)),
            "casel" => Term::Casel(b(self.term()?)),
            "caser" => Term::Caser(b(self.term()?)),
            "par" => {
                let l = self.term()?;
                self.expect(Tok::Comma)?;
                Term::Par(b(l), b(self.term()?))
            }
            "mkc" => {
                let t = self.term()?;
                self.expect(Tok::Comma)?;
                Term::Mkc(b(t), self.coname()?)
            }
            "postp" => {
                if matches!(self.peek(), Tok::Co(_)) && *self.peek2() == Tok::Arrow {
                    let y = self.coname()?;
                    self.bump();
                    let body = self.term()?;
                    self.expect(Tok::Comma)?;
                    Term::Postp2(y, b(body), b(self.term()?))
                } else {
                    Term::Postp1(b(self.term()?))
                }
            }
            "store" => {
                let pterms = self.list_of(|l| l.term())?;
                self.expect(Tok::Semi)?;
                let guarded = self.list_of(|l| l.term())?;
                self.expect(Tok::Semi)?;
                let guards = self.list_of(|l| l.coname())?;
                self.expect(Tok::Semi)?;
                let bound = self.coname()?;
                self.expect(Tok::Semi)?;
                let anchor = self.term()?;
                Term::Store(Box::new(Store { pterms, guarded, guards, bound, anchor }))
            }
            _ => {
                return Err(ParseError {
                    offset: self.toks[self.pos.saturating_sub(2)].1,
                    expected: ["connect_to", "par", "casel", "caser", "mkc", "postp", "store"]
                        .iter()
                        .map(|s| s.to_string())
                        .collect(),
                    found: format!("`{kw}(`"),
                })
            }
        })
    }

    fn list_of<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T, ParseError>) -> Result<Vec<T>, ParseError> {
        self.expect(Tok::LBrack)?;
        let mut out = Vec::new();
        if self.eat(&Tok::RBrack) {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat(&Tok::RBrack) {
                return Ok(out);
            }
            self.expect(Tok::Comma)?;
        }
    }
}

/// Parse one term; trailing input is an error.
pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut lx = Lexer::new(src)?;
    let t = lx.term()?;
    if !lx.at_eof() {
        return Err(lx.error(&["end of input"]));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::print_term;

    #[test]
    fn mkc_literal() {
        assert_eq!(parse_term("mkc(x,'y)").unwrap(), Term::mkc(Term::var("x"), "y"));
    }

    #[test]
    fn binary_postp() {
        let t = parse_term("postp('y -> 'x(y), mkc(z,'x))").unwrap();
        assert_eq!(
            t,
            Term::postp2("y", Term::co("x", Term::var("y")), Term::mkc(Term::var("z"), "x"))
        );
    }

    #[test]
    fn unary_postp_of_coapp() {
        let t = parse_term("postp('x(y))").unwrap();
        assert_eq!(t, Term::postp(Term::co("x", Term::var("y"))));
    }

    #[test]
    fn round_trip_par() {
        let src = "par(casel(m),caser(m))";
        assert_eq!(print_term(&parse_term(src).unwrap()), src);
    }

    #[test]
    fn store_and_lists() {
        let src = "store([postp('d -> y, k)];[[mkc(d,'c)],connect_to(k)];['g,'h];'k;j)";
        let t = parse_term(src).unwrap();
        assert_eq!(print_term(&t), src);
        assert_eq!(parse_term("[]").unwrap(), Term::Nil);
        assert_eq!(parse_term("[x, y]").unwrap(), Term::list2(Term::var("x"), Term::var("y")));
    }

    #[test]
    fn comments_and_whitespace() {
        let t = parse_term("  # a comment\n casel( x ) # trailing").unwrap();
        assert_eq!(t, Term::casel(Term::var("x")));
    }

    #[test]
    fn error_offset_and_expected() {
        let e = parse_term("mkc(x, y)").unwrap_err();
        assert_eq!(e.offset, 7);
        assert_eq!(e.expected, vec!["'name".to_string()]);
        let e = parse_term("frob(x)").unwrap_err();
        assert_eq!(e.offset, 0);
        assert!(parse_term("x y").is_err());
        assert!(parse_term("'(x)").is_err());
    }
}
