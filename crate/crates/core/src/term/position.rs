use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// One step of a path from the root of a term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    /// Into the body of a λ.
    Down,
    /// Into the function of an application.
    Left,
    /// Into the argument of an application.
    Right,
}

impl Step {
    pub fn symbol(self) -> char {
        match self {
            Step::Down => 'D',
            Step::Left => 'L',
            Step::Right => 'R',
        }
    }
}

/// A path from the root of a term. The empty path prints as `.`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position(Vec<Step>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of `Down` steps, i.e. the number of binders the path crosses.
    pub fn lam_count(&self) -> usize {
        self.0.iter().filter(|s| **s == Step::Down).count()
    }

    pub fn push(&mut self, step: Step) {
        self.0.push(step);
    }

    pub fn pop(&mut self) -> Option<Step> {
        self.0.pop()
    }

    pub fn child(&self, step: Step) -> Position {
        let mut p = self.clone();
        p.push(step);
        p
    }

    /// `self` followed by `rest`.
    pub fn concat(&self, rest: &Position) -> Position {
        let mut steps = Vec::with_capacity(self.len() + rest.len());
        steps.extend_from_slice(&self.0);
        steps.extend_from_slice(&rest.0);
        Position(steps)
    }

    pub fn starts_with(&self, prefix: &Position) -> bool {
        self.0.starts_with(&prefix.0)
    }

    /// The suffix after `prefix`, if `prefix` is one.
    pub fn strip_prefix(&self, prefix: &Position) -> Option<Position> {
        self.0
            .strip_prefix(prefix.0.as_slice())
            .map(|s| Position(s.to_vec()))
    }
}

impl From<Vec<Step>> for Position {
    fn from(steps: Vec<Step>) -> Self {
        Position(steps)
    }
}

impl FromIterator<Step> for Position {
    fn from_iter<I: IntoIterator<Item = Step>>(iter: I) -> Self {
        Position(iter.into_iter().collect())
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str(".");
        }
        for s in &self.0 {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for Position {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s == "." {
            return Ok(Position::root());
        }
        if s.is_empty() {
            return Err(Error::Syntax {
                line: 1,
                column: 1,
                expected: vec!["'.'", "'D'", "'L'", "'R'"],
            });
        }
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                'D' => Ok(Step::Down),
                'L' => Ok(Step::Left),
                'R' => Ok(Step::Right),
                _ => Err(Error::Syntax {
                    line: 1,
                    column: i + 1,
                    expected: vec!["'D'", "'L'", "'R'"],
                }),
            })
            .collect()
    }
}
