use super::ModelExpr;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Param(usize),
    Ident(&'static str),
    Sym(char),
    End,
}

const KEYWORDS: [&str; 4] = ["log2", "log3", "sqrt", "root"];

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        if c.is_ascii_digit() {
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let v = text[start..i]
                .parse::<u64>()
                .map_err(|_| syntax(start, "integer literal out of range"))?;
            out.push((Tok::Int(v), start));
        } else if c.is_ascii_alphabetic() {
            while i < b.len() && b[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word = &text[start..i];
            if let Some(kw) = KEYWORDS.iter().find(|k| **k == word) {
                out.push((Tok::Ident(kw), start));
            } else if let Some(idx) = param_index(word) {
                out.push((Tok::Param(idx), start));
            } else {
                return Err(syntax(start, format!("unknown identifier `{word}`")));
            }
        } else if "+-*/(),".contains(c as char) {
            i += 1;
            out.push((Tok::Sym(c as char), start));
        } else {
            return Err(syntax(start, format!("unexpected character `{}`", c as char)));
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

/// `a` followed by one or two digits, the first nonzero.
fn param_index(word: &str) -> Option<usize> {
    let digits = word.strip_prefix('a')?;
    let ok = matches!(digits.len(), 1 | 2)
        && digits.bytes().all(|d| d.is_ascii_digit())
        && !digits.starts_with('0');
    ok.then(|| digits.parse().ok()).flatten()
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<ModelExpr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    lhs = ModelExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.bump();
                    lhs = ModelExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<ModelExpr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    lhs = ModelExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Sym('/') => {
                    self.bump();
                    lhs = ModelExpr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<ModelExpr> {
        if *self.peek() == Tok::Sym('-') {
            self.bump();
            return Ok(ModelExpr::Neg(Box::new(self.atom()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<ModelExpr> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(v) => Ok(ModelExpr::Int(v)),
            Tok::Param(i) => Ok(ModelExpr::Param(i)),
            Tok::Ident("log2") => Ok(ModelExpr::Log2),
            Tok::Ident("log3") => Ok(ModelExpr::Log3),
            Tok::Ident("sqrt") => {
                self.expect('(')?;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(ModelExpr::Sqrt(Box::new(e)))
            }
            Tok::Ident(_) => {
                self.expect('(')?;
                let kpos = self.pos();
                let k = match self.bump() {
                    Tok::Int(k) if (2..=u32::MAX as u64).contains(&k) => k as u32,
                    _ => return Err(syntax(kpos, "root order must be an integer ≥ 2")),
                };
                self.expect(',')?;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(ModelExpr::Root(k, Box::new(e)))
            }
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::End => Err(syntax(pos, "unexpected end of input")),
            Tok::Sym(c) => Err(syntax(pos, format!("unexpected `{c}`"))),
        }
    }
}

pub(super) fn parse(text: &str) -> Result<ModelExpr> {
    let mut p = Parser { toks: lex(text)?, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}
