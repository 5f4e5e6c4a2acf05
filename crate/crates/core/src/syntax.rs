//! Concrete syntax: parsing, printing and definition files.
//!
//! ```text
//! term ::= lam | app
//! lam  ::= ("\" | "λ") ident+ "." term
//! app  ::= atom+
//! atom ::= ident | "(" term ")"
//! ```
//!
//! Identifiers match `[A-Za-z_][A-Za-z0-9_']*`. The form `church <digits>` is
//! accepted as an atom and denotes a Church numeral. Names found in the
//! [`DefinitionEnv`] are expanded in place; any other unbound identifier is a
//! free variable.

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::term::{Name, Term, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown name `{name}` in definition of `{within}` (defined later in the file)")]
    UnknownName { name: String, within: String },
}

impl ParseError {
    fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        ParseError::Syntax { pos, msg: msg.into() }
    }
}

/// Named constants, expanded when a term is parsed.
#[derive(Debug, Clone, Default)]
pub struct DefinitionEnv {
    defs: Vec<(Name, Term)>,
}

impl DefinitionEnv {
    pub fn new() -> Self {
        Self::default()
    }

    /// `I` and `two`.
    pub fn prelude() -> Self {
        let mut env = Self::new();
        env.define("I", Term::identity());
        env.define("two", Term::church(2));
        env
    }

    /// Adds or replaces a definition. Later lookups see the new value.
    pub fn define(&mut self, name: &str, term: Term) {
        debug_assert!(term.is_locally_closed());
        if let Some(slot) = self.defs.iter_mut().find(|(n, _)| &**n == name) {
            slot.1 = term;
        } else {
            self.defs.push((Arc::from(name), term));
        }
    }

    pub fn get(&self, name: &str) -> Option<&Term> {
        self.defs.iter().find(|(n, _)| &**n == name).map(|(_, t)| t)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.defs.iter().map(|(n, _)| &**n)
    }

    pub fn len(&self) -> usize {
        self.defs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.defs.is_empty()
    }

    /// Loads `name = term ;` definitions on top of `self`. `#` starts a
    /// comment running to the end of the line.
    pub fn load_definitions(&mut self, text: &str) -> Result<(), ParseError> {
        let mut stripped = String::with_capacity(text.len());
        for line in text.lines() {
            let line = match line.find('#') {
                Some(i) => &line[..i],
                None => line,
            };
            stripped.push_str(line);
            stripped.push('\n');
        }

        let mut chunks: Vec<&str> = stripped.split(';').collect();
        let tail = chunks.pop().unwrap_or("");
        if !tail.trim().is_empty() {
            return Err(ParseError::syntax(stripped.len() - tail.len(), "missing `;`"));
        }
        let mut pending = Vec::new();
        let mut offset = 0;
        for chunk in chunks {
            let start = offset;
            offset += chunk.len() + 1;
            if chunk.trim().is_empty() {
                continue;
            }
            let eq = chunk
                .find('=')
                .ok_or_else(|| ParseError::syntax(start, "expected `name = term ;`"))?;
            let name = chunk[..eq].trim();
            if !is_ident(name) {
                return Err(ParseError::syntax(start, format!("invalid definition name `{name}`")));
            }
            pending.push((name.to_string(), start + eq + 1, &chunk[eq + 1..]));
        }

        for (i, (name, body_offset, body)) in pending.iter().enumerate() {
            let term = parse(body, self).map_err(|e| match e {
                ParseError::Syntax { pos, msg } => ParseError::Syntax { pos: pos + body_offset, msg },
                other => other,
            })?;
            let later: BTreeSet<&str> = pending[i..].iter().map(|(n, _, _)| n.as_str()).collect();
            if let Some(bad) = term.free_vars().iter().find(|v| later.contains(&***v)) {
                return Err(ParseError::UnknownName { name: bad.to_string(), within: name.clone() });
            }
            self.define(name, term);
        }
        Ok(())
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if is_ident_start(c)) && chars.all(is_ident_char)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Lambda,
    Dot,
    Open,
    Close,
    Ident(String),
    Number(usize),
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '\\' | 'λ' => {
                chars.next();
                out.push((pos, Tok::Lambda));
            }
            '.' => {
                chars.next();
                out.push((pos, Tok::Dot));
            }
            '(' => {
                chars.next();
                out.push((pos, Tok::Open));
            }
            ')' => {
                chars.next();
                out.push((pos, Tok::Close));
            }
            c if is_ident_start(c) => {
                let mut s = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if !is_ident_char(c) {
                        break;
                    }
                    s.push(c);
                    chars.next();
                }
                out.push((pos, Tok::Ident(s)));
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    s.push(c);
                    chars.next();
                }
                let n = s
                    .parse()
                    .map_err(|_| ParseError::syntax(pos, format!("numeral `{s}` out of range")))?;
                out.push((pos, Tok::Number(n)));
            }
            other => return Err(ParseError::syntax(pos, format!("unexpected character `{other}`"))),
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    env: &'a DefinitionEnv,
    scope: Vec<String>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        if *self.peek() == Tok::Lambda {
            self.bump();
            let mut binders = Vec::new();
            while let Tok::Ident(name) = self.peek().clone() {
                self.bump();
                binders.push(name);
            }
            if binders.is_empty() {
                return Err(ParseError::syntax(self.pos(), "expected binder after lambda"));
            }
            if *self.peek() != Tok::Dot {
                return Err(ParseError::syntax(self.pos(), "expected `.`"));
            }
            self.bump();
            let depth = self.scope.len();
            self.scope.extend(binders.iter().cloned());
            let body = self.term();
            self.scope.truncate(depth);
            let mut body = body?;
            for name in binders.iter().rev() {
                body = Term::Abs(Arc::from(name.as_str()), Box::new(body));
            }
            Ok(body)
        } else {
            let mut acc = self.atom()?;
            while matches!(self.peek(), Tok::Ident(_) | Tok::Open) {
                let arg = self.atom()?;
                acc = Term::app(acc, arg);
            }
            Ok(acc)
        }
    }

    fn atom(&mut self) -> Result<Term, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Open => {
                let t = self.term()?;
                if *self.peek() != Tok::Close {
                    return Err(ParseError::syntax(self.pos(), "expected `)`"));
                }
                self.bump();
                Ok(t)
            }
            Tok::Ident(name) => {
                if let Some(i) = self.scope.iter().rev().position(|n| *n == name) {
                    return Ok(Term::Var(Var::Bound(i)));
                }
                if let Some(t) = self.env.get(&name) {
                    return Ok(t.clone());
                }
                if name == "church" {
                    if let Tok::Number(n) = *self.peek() {
                        self.bump();
                        return Ok(Term::church(n));
                    }
                }
                Ok(Term::Var(Var::Free(Arc::from(name.as_str()))))
            }
            Tok::Number(_) => Err(ParseError::syntax(pos, "numerals are only allowed after `church`")),
            Tok::End => Err(ParseError::syntax(pos, "unexpected end of input")),
            tok => Err(ParseError::syntax(pos, format!("unexpected token {tok:?}"))),
        }
    }
}

pub fn parse(text: &str, env: &DefinitionEnv) -> Result<Term, ParseError> {
    let mut p = Parser { toks: lex(text)?, at: 0, env, scope: Vec::new() };
    let t = p.term()?;
    if *p.peek() != Tok::End {
        return Err(ParseError::syntax(p.pos(), "trailing input"));
    }
    Ok(t)
}

/// Prints with minimal parentheses. Binder names are taken from the hints
/// and get a numeric suffix when they would clash with a free variable or a
/// binder in scope.
pub fn pretty(t: &Term) -> String {
    let free: BTreeSet<String> = t.free_vars().iter().map(|n| n.to_string()).collect();
    let mut out = String::new();
    let mut scope = Vec::new();
    write_term(t, &free, &mut scope, &mut out);
    out
}

fn fresh(hint: &str, free: &BTreeSet<String>, scope: &[String]) -> String {
    let taken = |s: &str| free.contains(s) || scope.iter().any(|n| n == s);
    if !taken(hint) {
        return hint.to_string();
    }
    (1..)
        .map(|i| format!("{hint}{i}"))
        .find(|s| !taken(s))
        .expect("unbounded suffix search")
}

fn write_term(t: &Term, free: &BTreeSet<String>, scope: &mut Vec<String>, out: &mut String) {
    match t {
        Term::Abs(hint, body) => {
            let name = fresh(hint, free, scope);
            out.push('\\');
            out.push_str(&name);
            out.push('.');
            scope.push(name);
            write_term(body, free, scope, out);
            scope.pop();
        }
        Term::App(f, a) => {
            write_head(f, free, scope, out);
            out.push(' ');
            write_atom(a, free, scope, out);
        }
        Term::Var(v) => write_var(v, scope, out),
    }
}

fn write_head(t: &Term, free: &BTreeSet<String>, scope: &mut Vec<String>, out: &mut String) {
    match t {
        Term::Abs(..) => write_paren(t, free, scope, out),
        _ => write_term(t, free, scope, out),
    }
}

fn write_atom(t: &Term, free: &BTreeSet<String>, scope: &mut Vec<String>, out: &mut String) {
    match t {
        Term::Var(v) => write_var(v, scope, out),
        _ => write_paren(t, free, scope, out),
    }
}

fn write_paren(t: &Term, free: &BTreeSet<String>, scope: &mut Vec<String>, out: &mut String) {
    out.push('(');
    write_term(t, free, scope, out);
    out.push(')');
}

fn write_var(v: &Var, scope: &[String], out: &mut String) {
    match v {
        Var::Bound(i) => match scope.len().checked_sub(i + 1) {
            Some(k) => out.push_str(&scope[k]),
            // Dangling index; only reachable when printing open fragments.
            None => out.push_str(&format!("#{i}")),
        },
        Var::Free(n) => out.push_str(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Term {
        parse(s, &DefinitionEnv::prelude()).unwrap()
    }

    #[test]
    fn parses_basic_forms() {
        assert_eq!(p("\\x.x"), Term::identity());
        assert_eq!(p("λx.x"), Term::identity());
        assert_eq!(
            p("f x y"),
            Term::app(Term::app(Term::var("f"), Term::var("x")), Term::var("y"))
        );
        assert_eq!(p("two I"), Term::app(Term::church(2), Term::identity()));
        assert_eq!(p("\\f x. f (f x)"), Term::church(2));
        assert_eq!(p("church 3"), Term::church(3));
        // Abstraction body extends as far right as possible.
        assert_eq!(p("\\x. x y"), Term::lam("x", Term::app(Term::var("x"), Term::var("y"))));
    }

    #[test]
    fn binders_shadow_definitions() {
        assert_eq!(p("\\I. I"), Term::identity());
        assert_eq!(p("\\two. I"), Term::lam("q", Term::identity()));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let env = DefinitionEnv::new();
        match parse("\\x x", &env) {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("(x", &env).is_err());
        assert!(parse("x )", &env).is_err());
        assert!(parse("", &env).is_err());
        assert!(parse("3", &env).is_err());
        assert!(parse("f \\x.x", &env).is_err());
    }

    #[test]
    fn pretty_minimal_parens() {
        assert_eq!(pretty(&Term::identity()), "\\x.x");
        assert_eq!(pretty(&p("f x y")), "f x y");
        assert_eq!(pretty(&p("f (g x)")), "f (g x)");
        assert_eq!(pretty(&p("(\\x.x) y")), "(\\x.x) y");
        assert_eq!(pretty(&p("f (\\x.x)")), "f (\\x.x)");
        assert_eq!(pretty(&Term::church(2)), "\\f.\\x.f (f x)");
    }

    #[test]
    fn pretty_renames_on_capture() {
        let t = Term::lam("y", Term::var("x")).substitute("x", &Term::var("y"));
        assert_eq!(pretty(&t), "\\y1.y");
        assert_eq!(pretty(&p("\\x.\\x.x")), "\\x.\\x1.x1");
    }

    #[test]
    fn definitions_file() {
        let mut env = DefinitionEnv::prelude();
        env.load_definitions(
            "# constants\nDelta = \\x. x x ;\nF = \\z. z y; # trailing\nM = Delta (F I);\n",
        )
        .unwrap();
        assert_eq!(env.len(), 5);
        assert_eq!(
            env.get("M").unwrap(),
            &p("(\\x. x x) ((\\z. z y) (\\x.x))")
        );
    }

    #[test]
    fn definitions_reject_forward_references() {
        let mut env = DefinitionEnv::new();
        let err = env.load_definitions("a = b;\nb = \\x.x;").unwrap_err();
        assert!(matches!(err, ParseError::UnknownName { ref name, .. } if name == "b"));
        let mut env = DefinitionEnv::new();
        assert!(env.load_definitions("a = \\x.x").is_err());
        assert!(env.load_definitions("1a = x;").is_err());
    }
}
