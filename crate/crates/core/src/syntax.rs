//! Text format for terms and positions.
//!
//! ```text
//! term := '\' term | '(' term term ')' | DIGITS
//! ```
//!
//! `\` is a λ, digits are a de Bruijn index, and whitespace may appear between
//! tokens. The printer emits the canonical form with one space inside each
//! application and nowhere else. Positions use `D`, `L`, `R`, with `.` for the
//! root.

use std::fmt::Write as _;
use std::iter::Peekable;
use std::str::Chars;

use crate::error::{Error, Result};
use crate::term::{Position, PureTerm, Syntax, TermF};

const MAX_INDEX: u64 = i64::MAX as u64;
const TERM_START: &[&str] = &["'\\'", "'('", "an index"];

struct Cursor<'a> {
    chars: Peekable<Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            chars: s.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn expected(&self, expected: &[&'static str]) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.column,
            expected: expected.to_vec(),
        }
    }

    fn index(&mut self) -> Result<usize> {
        let (line, column) = (self.line, self.column);
        let mut n: u64 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            self.bump();
            n = n
                .checked_mul(10)
                .and_then(|n| n.checked_add(d as u64))
                .filter(|n| *n <= MAX_INDEX)
                .ok_or(Error::IndexOverflow { line, column })?;
        }
        usize::try_from(n).map_err(|_| Error::IndexOverflow { line, column })
    }
}

enum Pending {
    Lam,
    Open,
    Fun(PureTerm),
}

/// Parses one term; the whole input must be consumed.
pub fn parse_term(s: &str) -> Result<PureTerm> {
    let mut cur = Cursor::new(s);
    let mut stack: Vec<Pending> = Vec::new();
    loop {
        cur.skip_ws();
        let mut done = match cur.peek() {
            Some('\\') => {
                cur.bump();
                stack.push(Pending::Lam);
                continue;
            }
            Some('(') => {
                cur.bump();
                stack.push(Pending::Open);
                continue;
            }
            Some(c) if c.is_ascii_digit() => PureTerm::var(cur.index()?),
            _ => return Err(cur.expected(TERM_START)),
        };
        loop {
            match stack.pop() {
                None => {
                    cur.skip_ws();
                    return match cur.peek() {
                        None => Ok(done),
                        Some(_) => Err(Error::TrailingInput {
                            line: cur.line,
                            column: cur.column,
                        }),
                    };
                }
                Some(Pending::Lam) => done = PureTerm::lam(done),
                Some(Pending::Open) => {
                    stack.push(Pending::Fun(done));
                    break;
                }
                Some(Pending::Fun(f)) => {
                    cur.skip_ws();
                    if cur.peek() != Some(')') {
                        return Err(cur.expected(&["')'"]));
                    }
                    cur.bump();
                    done = PureTerm::app(f, done);
                }
            }
        }
    }
}

/// Parses whitespace-separated terms, typically one per line.
pub fn parse_corpus(s: &str) -> Result<Vec<PureTerm>> {
    let mut out = Vec::new();
    for (n, line) in s.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let t = parse_term(line).map_err(|e| match e {
            Error::Syntax {
                column, expected, ..
            } => Error::Syntax {
                line: n + 1,
                column,
                expected,
            },
            Error::TrailingInput { column, .. } => Error::TrailingInput {
                line: n + 1,
                column,
            },
            Error::IndexOverflow { column, .. } => Error::IndexOverflow {
                line: n + 1,
                column,
            },
            other => other,
        })?;
        out.push(t);
    }
    Ok(out)
}

/// Canonical text of any term; global variables print as their index.
pub fn print_term<T: Syntax>(t: &T) -> String {
    enum Item<'a, T> {
        Term(&'a T),
        Text(&'static str),
    }
    let mut s = String::new();
    let mut stack = vec![Item::Term(t)];
    while let Some(item) = stack.pop() {
        match item {
            Item::Text(x) => s.push_str(x),
            Item::Term(u) => match u.node() {
                TermF::Var(i) => {
                    let _ = write!(s, "{i}");
                }
                TermF::Lam(b) => {
                    s.push('\\');
                    stack.push(Item::Term(b));
                }
                TermF::App(f, x) => {
                    s.push('(');
                    stack.push(Item::Text(")"));
                    stack.push(Item::Term(x));
                    stack.push(Item::Text(" "));
                    stack.push(Item::Term(f));
                }
            },
        }
    }
    s
}

pub fn parse_position(s: &str) -> Result<Position> {
    s.parse()
}

pub fn print_position(p: &Position) -> String {
    p.to_string()
}
