//! Reader for the state-based Büchi subset of HOA v1.
//!
//! Accepted: `HOA: v1`, `States:`, one or more `Start:`, `AP:`, `Acceptance: 1
//! Inf(0)`, `acc-name: Buchi`, and lowercase informational headers (ignored).
//! Each body state may carry `{0}` to mark it accepting; each edge must be an
//! explicit `[guard] target`. Anything else is rejected with its position.

use std::fmt;

use ltl_dstar_core::automata::{Guard, NbaTransition};
use ltl_dstar_core::{ApUniverse, Nba};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct HoaError {
    pub line: usize,
    pub column: usize,
    pub kind: HoaErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HoaErrorKind {
    Syntax(String),
    Unsupported(String),
    MissingHeader(&'static str),
    Invalid(String),
}

impl fmt::Display for HoaErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HoaErrorKind::Syntax(m) => write!(f, "syntax error: {m}"),
            HoaErrorKind::Unsupported(m) => write!(f, "unsupported HOA feature: {m}"),
            HoaErrorKind::MissingHeader(h) => write!(f, "missing required header `{h}`"),
            HoaErrorKind::Invalid(m) => write!(f, "invalid automaton: {m}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Header(String),
    Ident(String),
    Str(String),
    Int(usize),
    Alias(String),
    Sym(char),
    Body,
    End,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Header(h) => write!(f, "`{h}:`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Str(s) => write!(f, "\"{s}\""),
            Tok::Int(i) => write!(f, "`{i}`"),
            Tok::Alias(a) => write!(f, "`@{a}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::Body => f.write_str("`--BODY--`"),
            Tok::End => f.write_str("`--END--`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, HoaError> {
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let mut out = Vec::new();
    let err = |line, column, m: String| HoaError { line, column, kind: HoaErrorKind::Syntax(m) };
    macro_rules! bump {
        () => {{
            if chars[i] == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            i += 1;
        }};
    }
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c.is_whitespace() {
            bump!();
        } else if c == '/' && chars.get(i + 1) == Some(&'*') {
            bump!();
            bump!();
            loop {
                if i >= chars.len() {
                    return Err(err(l0, c0, "unterminated comment".into()));
                }
                if chars[i] == '*' && chars.get(i + 1) == Some(&'/') {
                    bump!();
                    bump!();
                    break;
                }
                bump!();
            }
        } else if c == '"' {
            bump!();
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None => return Err(err(l0, c0, "unterminated string".into())),
                    Some('"') => {
                        bump!();
                        break;
                    }
                    Some('\\') => {
                        bump!();
                        let Some(&e) = chars.get(i) else { return Err(err(l0, c0, "unterminated string".into())) };
                        s.push(e);
                        bump!();
                    }
                    Some(&ch) => {
                        s.push(ch);
                        bump!();
                    }
                }
            }
            out.push(Token { tok: Tok::Str(s), line: l0, column: c0 });
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                s.push(chars[i]);
                bump!();
            }
            let n = s.parse().map_err(|_| err(l0, c0, format!("integer `{s}` is too large")))?;
            out.push(Token { tok: Tok::Int(n), line: l0, column: c0 });
        } else if c == '-' && chars.get(i + 1) == Some(&'-') {
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_ascii_alphabetic() || chars[i] == '-') {
                s.push(chars[i]);
                bump!();
            }
            let tok = match s.as_str() {
                "--BODY--" => Tok::Body,
                "--END--" => Tok::End,
                "--ABORT--" => return Err(err(l0, c0, "automaton aborted".into())),
                _ => return Err(err(l0, c0, format!("unknown marker `{s}`"))),
            };
            out.push(Token { tok, line: l0, column: c0 });
        } else if c.is_ascii_alphabetic() || c == '_' || c == '@' {
            let alias = c == '@';
            if alias {
                bump!();
            }
            let mut s = String::new();
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '-') {
                s.push(chars[i]);
                bump!();
            }
            let tok = if alias {
                Tok::Alias(s)
            } else if chars.get(i) == Some(&':') {
                bump!();
                Tok::Header(s)
            } else {
                Tok::Ident(s)
            };
            out.push(Token { tok, line: l0, column: c0 });
        } else if "[]{}()!&|".contains(c) {
            bump!();
            out.push(Token { tok: Tok::Sym(c), line: l0, column: c0 });
        } else {
            return Err(err(l0, c0, format!("unexpected character `{c}`")));
        }
    }
    out.push(Token { tok: Tok::Eof, line, column: col });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, at: &Token, kind: HoaErrorKind) -> Result<T, HoaError> {
        Err(HoaError { line: at.line, column: at.column, kind })
    }

    fn syntax<T>(&self, at: &Token, expected: &str) -> Result<T, HoaError> {
        self.fail(at, HoaErrorKind::Syntax(format!("expected {expected}, found {}", at.tok)))
    }

    fn int(&mut self) -> Result<usize, HoaError> {
        let t = self.next();
        match t.tok {
            Tok::Int(n) => Ok(n),
            _ => self.syntax(&t, "an integer"),
        }
    }

    fn sym(&mut self, c: char) -> Result<(), HoaError> {
        let t = self.next();
        if t.tok == Tok::Sym(c) {
            Ok(())
        } else {
            self.syntax(&t, &format!("`{c}`"))
        }
    }

    fn reject_conjunction(&self) -> Result<(), HoaError> {
        let t = self.peek();
        if t.tok == Tok::Sym('&') {
            return self.fail(t, HoaErrorKind::Unsupported("conjunctive (alternating) state sets".into()));
        }
        Ok(())
    }

    // guard := conj ('|' conj)* ; conj := unary ('&' unary)* ; unary := '!' unary | atom
    fn guard(&mut self) -> Result<Guard, HoaError> {
        let mut g = self.conj()?;
        while self.peek().tok == Tok::Sym('|') {
            self.next();
            g = Guard::or(g, self.conj()?);
        }
        Ok(g)
    }

    fn conj(&mut self) -> Result<Guard, HoaError> {
        let mut g = self.unary()?;
        while self.peek().tok == Tok::Sym('&') {
            self.next();
            g = Guard::and(g, self.unary()?);
        }
        Ok(g)
    }

    fn unary(&mut self) -> Result<Guard, HoaError> {
        let t = self.next();
        match t.tok {
            Tok::Sym('!') => Ok(Guard::not(self.unary()?)),
            Tok::Sym('(') => {
                let g = self.guard()?;
                self.sym(')')?;
                Ok(g)
            }
            Tok::Int(n) => Ok(Guard::ap(n)),
            Tok::Ident(ref s) if s == "t" => Ok(Guard::True),
            Tok::Ident(ref s) if s == "f" => Ok(Guard::False),
            Tok::Alias(_) => self.fail(&t, HoaErrorKind::Unsupported("aliases".into())),
            _ => self.syntax(&t, "a guard"),
        }
    }
}

#[derive(Default)]
struct Header {
    states: Option<usize>,
    start: Vec<usize>,
    aps: Option<ApUniverse>,
    acceptance: bool,
    acc_name: bool,
}

/// Parses one automaton; trailing input after `--END--` is rejected.
pub fn parse_nba(text: &str) -> Result<Nba, HoaError> {
    let mut p = Parser { tokens: lex(text)?, pos: 0 };
    let first = p.next();
    match &first.tok {
        Tok::Header(h) if h == "HOA" => {}
        _ => return p.syntax(&first, "`HOA:`"),
    }
    let version = p.next();
    if version.tok != Tok::Ident("v1".into()) {
        return p.fail(&version, HoaErrorKind::Unsupported(format!("format version {}", version.tok)));
    }

    let mut h = Header::default();
    loop {
        let t = p.next();
        let name = match &t.tok {
            Tok::Body => break,
            Tok::Header(name) => name.clone(),
            _ => return p.syntax(&t, "a header or `--BODY--`"),
        };
        match name.as_str() {
            "States" => h.states = Some(p.int()?),
            "Start" => {
                h.start.push(p.int()?);
                p.reject_conjunction()?;
            }
            "AP" => {
                let count = p.int()?;
                let mut names = Vec::with_capacity(count);
                for _ in 0..count {
                    let s = p.next();
                    match s.tok {
                        Tok::Str(n) => names.push(n),
                        _ => return p.syntax(&s, "a quoted proposition name"),
                    }
                }
                let aps = ApUniverse::new(names).map_err(|e| HoaError {
                    line: t.line,
                    column: t.column,
                    kind: HoaErrorKind::Invalid(e.to_string()),
                })?;
                h.aps = Some(aps);
            }
            "Acceptance" => {
                let sets = p.next();
                let at = sets.clone();
                let ok = sets.tok == Tok::Int(1)
                    && p.next().tok == Tok::Ident("Inf".into())
                    && p.next().tok == Tok::Sym('(')
                    && p.next().tok == Tok::Int(0)
                    && p.next().tok == Tok::Sym(')');
                if !ok || matches!(p.peek().tok, Tok::Sym('&') | Tok::Sym('|')) {
                    return p.fail(&at, HoaErrorKind::Unsupported("acceptance other than `1 Inf(0)`".into()));
                }
                h.acceptance = true;
            }
            "acc-name" => {
                let v = p.next();
                if v.tok != Tok::Ident("Buchi".into()) {
                    return p.fail(&v, HoaErrorKind::Unsupported(format!("acceptance name {}", v.tok)));
                }
                while matches!(p.peek().tok, Tok::Int(_) | Tok::Ident(_)) {
                    p.next();
                }
                h.acc_name = true;
            }
            n if n.starts_with(|c: char| c.is_ascii_lowercase()) => {
                while !matches!(p.peek().tok, Tok::Header(_) | Tok::Body | Tok::Eof) {
                    p.next();
                }
            }
            other => return p.fail(&t, HoaErrorKind::Unsupported(format!("header `{other}:`"))),
        }
    }

    let at = p.peek().clone();
    let Some(num_states) = h.states else { return p.fail(&at, HoaErrorKind::MissingHeader("States")) };
    if h.start.is_empty() {
        return p.fail(&at, HoaErrorKind::MissingHeader("Start"));
    }
    let Some(aps) = h.aps else { return p.fail(&at, HoaErrorKind::MissingHeader("AP")) };
    if !h.acceptance {
        return p.fail(&at, HoaErrorKind::MissingHeader("Acceptance"));
    }
    if !h.acc_name {
        return p.fail(&at, HoaErrorKind::MissingHeader("acc-name"));
    }

    let mut accepting = Vec::new();
    let mut transitions = Vec::new();
    loop {
        let t = p.next();
        match &t.tok {
            Tok::End => break,
            Tok::Header(n) if n == "State" => {}
            _ => return p.syntax(&t, "`State:` or `--END--`"),
        }
        if p.peek().tok == Tok::Sym('[') {
            return p.fail(p.peek(), HoaErrorKind::Unsupported("state labels".into()));
        }
        let state_tok = p.peek().clone();
        let state = p.int()?;
        if state >= num_states {
            return p.fail(&state_tok, HoaErrorKind::Invalid(format!("state {state} out of range")));
        }
        if matches!(p.peek().tok, Tok::Str(_)) {
            p.next();
        }
        if p.peek().tok == Tok::Sym('{') {
            p.next();
            while let Tok::Int(_) = p.peek().tok {
                let m = p.next();
                if m.tok != Tok::Int(0) {
                    return p.fail(&m, HoaErrorKind::Invalid("acceptance mark other than 0".into()));
                }
                accepting.push(state);
            }
            p.sym('}')?;
        }
        loop {
            match p.peek().tok {
                Tok::Sym('[') => {}
                Tok::Int(_) => return p.fail(p.peek(), HoaErrorKind::Unsupported("implicit edge labels".into())),
                _ => break,
            }
            p.next();
            let guard = p.guard()?;
            p.sym(']')?;
            let dest_tok = p.peek().clone();
            let to = p.int()?;
            p.reject_conjunction()?;
            if to >= num_states {
                return p.fail(&dest_tok, HoaErrorKind::Invalid(format!("state {to} out of range")));
            }
            if let Some(ap) = guard.max_ap().filter(|&ap| ap >= aps.len()) {
                return p.fail(&dest_tok, HoaErrorKind::Invalid(format!("guard uses undeclared proposition {ap}")));
            }
            if p.peek().tok == Tok::Sym('{') {
                return p.fail(p.peek(), HoaErrorKind::Unsupported("transition-based acceptance".into()));
            }
            transitions.push(NbaTransition { from: state, guard, to });
        }
    }
    let trailing = p.peek().clone();
    if trailing.tok != Tok::Eof {
        return p.syntax(&trailing, "end of input");
    }
    for &s in &h.start {
        if s >= num_states {
            return p.fail(&at, HoaErrorKind::Invalid(format!("start state {s} out of range")));
        }
    }
    Nba::new(aps, num_states, h.start, accepting, transitions)
        .map_err(|e| HoaError { line: at.line, column: at.column, kind: HoaErrorKind::Invalid(e.to_string()) })
}
