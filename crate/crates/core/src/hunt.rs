//! Existence searches: enumerate shadows by increasing crossing number and
//! keep those satisfying a predicate such as `t < r` or `r >= 4 && n <= 8`.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{canonical_words, table_label, EnumOptions, ProjectionRecord};
use crate::error::{Error, Result};
use crate::reductivity::{ReductivityKind, ReductivityValue};
use crate::verify::TableRow;

/// Largest crossing number a hunt may reach.
pub const HUNT_BOUND: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    T,
    R,
    Y,
    I,
    Tau,
    N,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operand {
    Field(Field),
    Literal(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub lhs: Operand,
    pub op: Cmp,
    pub rhs: Operand,
}

/// Three-valued outcome; capped values can leave a comparison undecided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truth {
    True,
    False,
    Unknown,
}

/// A conjunction of comparisons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Predicate {
    pub clauses: Vec<Comparison>,
    text: String,
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

fn tokenize(text: &str) -> Result<Vec<String>> {
    let bad = |msg: String| Error::MalformedPredicate(msg);
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_alphanumeric() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push(chars[start..k].iter().collect());
        } else {
            let two: String = chars[k..(k + 2).min(chars.len())].iter().collect();
            if ["<=", ">=", "==", "!=", "&&"].contains(&two.as_str()) {
                out.push(two);
                k += 2;
            } else if "<>=".contains(c) {
                out.push(c.to_string());
                k += 1;
            } else {
                return Err(bad(format!("unexpected character {c:?}")));
            }
        }
    }
    Ok(out)
}

fn operand(tok: &str) -> Result<Operand> {
    let field = match tok {
        "t" => Field::T,
        "r" => Field::R,
        "y" => Field::Y,
        "i" => Field::I,
        "tau" => Field::Tau,
        "n" => Field::N,
        _ => {
            return tok
                .parse::<usize>()
                .map(Operand::Literal)
                .map_err(|_| Error::MalformedPredicate(format!("unknown operand {tok:?}")))
        }
    };
    Ok(Operand::Field(field))
}

impl Predicate {
    pub fn parse(text: &str) -> Result<Self> {
        let toks = tokenize(text)?;
        if toks.is_empty() {
            return Err(Error::MalformedPredicate("empty predicate".into()));
        }
        let mut clauses = Vec::new();
        for chunk in toks.split(|t| t == "&&" || t == "and") {
            let [l, op, r] = chunk else {
                return Err(Error::MalformedPredicate(format!(
                    "expected `operand op operand`, got {:?}",
                    chunk.join(" ")
                )));
            };
            let op = match op.as_str() {
                "<" => Cmp::Lt,
                "<=" => Cmp::Le,
                ">" => Cmp::Gt,
                ">=" => Cmp::Ge,
                "=" | "==" => Cmp::Eq,
                "!=" => Cmp::Ne,
                other => return Err(Error::MalformedPredicate(format!("unknown comparison {other:?}"))),
            };
            clauses.push(Comparison {
                lhs: operand(l)?,
                op,
                rhs: operand(r)?,
            });
        }
        Ok(Predicate {
            clauses,
            text: text.trim().to_string(),
        })
    }

    pub fn eval(&self, rec: &ProjectionRecord) -> Truth {
        let mut all = Truth::True;
        for c in &self.clauses {
            match c.eval(rec) {
                Truth::False => return Truth::False,
                Truth::Unknown => all = Truth::Unknown,
                Truth::True => {}
            }
        }
        all
    }
}

fn bounds(op: Operand, rec: &ProjectionRecord) -> (usize, usize) {
    let reductivity = |k| match rec.certificate(k).value {
        ReductivityValue::Exact(x) => (x, x),
        ReductivityValue::AboveCap(c) => (c + 1, usize::MAX),
        ReductivityValue::NotFound => (usize::MAX, usize::MAX),
    };
    match op {
        Operand::Literal(x) => (x, x),
        Operand::Field(Field::T) => reductivity(ReductivityKind::T),
        Operand::Field(Field::R) => reductivity(ReductivityKind::R),
        Operand::Field(Field::Y) => reductivity(ReductivityKind::Y),
        Operand::Field(Field::I) => reductivity(ReductivityKind::I),
        Operand::Field(Field::Tau) => (rec.tau, rec.tau),
        Operand::Field(Field::N) => (rec.n, rec.n),
    }
}

impl Comparison {
    pub fn eval(&self, rec: &ProjectionRecord) -> Truth {
        let (a0, a1) = bounds(self.lhs, rec);
        let (b0, b1) = bounds(self.rhs, rec);
        let decide = |yes: bool, no: bool| match (yes, no) {
            (true, _) => Truth::True,
            (_, true) => Truth::False,
            _ => Truth::Unknown,
        };
        let eq = decide(a0 == a1 && b0 == b1 && a0 == b0, a1 < b0 || b1 < a0);
        match self.op {
            Cmp::Lt => decide(a1 < b0, a0 >= b1),
            Cmp::Le => decide(a1 <= b0, a0 > b1),
            Cmp::Gt => decide(b1 < a0, b0 >= a1),
            Cmp::Ge => decide(b1 <= a0, b0 > a1),
            Cmp::Eq => eq,
            Cmp::Ne => match eq {
                Truth::True => Truth::False,
                Truth::False => Truth::True,
                Truth::Unknown => Truth::Unknown,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub word: String,
    #[serde(flatten)]
    pub row: TableRow,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HuntReport {
    pub predicate: String,
    pub max_n: usize,
    /// every crossing number up to this one was searched completely
    pub searched_up_to: usize,
    /// the time budget ran out before `max_n`
    pub truncated: bool,
    pub findings: Vec<Finding>,
    /// shadows for which capped values left the predicate undecided
    pub undecided: Vec<String>,
}

impl HuntReport {
    pub fn summary(&self) -> String {
        if self.findings.is_empty() {
            format!("{}: not found up to n={}", self.predicate, self.searched_up_to)
        } else {
            format!(
                "{}: {} found up to n={}",
                self.predicate,
                self.findings.len(),
                self.searched_up_to
            )
        }
    }
}

const CHUNK: usize = 64;

/// Searches crossing numbers `1..=max_n` in order. When the budget runs out
/// the partially searched crossing number is discarded, so the findings
/// always cover complete levels.
pub fn hunt(pred: &Predicate, max_n: usize, budget: Duration, opts: &EnumOptions) -> Result<HuntReport> {
    if max_n > HUNT_BOUND {
        return Err(Error::BoundExceeded {
            requested: max_n,
            bound: HUNT_BOUND,
        });
    }
    let start = Instant::now();
    let mut report = HuntReport {
        predicate: pred.to_string(),
        max_n,
        searched_up_to: 0,
        truncated: false,
        findings: Vec::new(),
        undecided: Vec::new(),
    };
    'levels: for n in 1..=max_n {
        if start.elapsed() > budget {
            report.truncated = true;
            break;
        }
        let words = canonical_words(n, opts.filters);
        let mut found = Vec::new();
        let mut undecided = Vec::new();
        for (c, chunk) in words.chunks(CHUNK).enumerate() {
            let recs = chunk
                .par_iter()
                .map(|w| ProjectionRecord::compute(w, opts.cap_r))
                .collect::<Result<Vec<_>>>()?;
            for (k, mut rec) in recs.into_iter().enumerate() {
                rec.label = Some(table_label(n, c * CHUNK + k + 1));
                match pred.eval(&rec) {
                    Truth::True => found.push(Finding {
                        word: rec.word.to_string(),
                        row: TableRow::from(&rec),
                    }),
                    Truth::Unknown => undecided.push(format!("{} {}", rec.display_label(), rec.word)),
                    Truth::False => {}
                }
            }
            if start.elapsed() > budget {
                report.truncated = true;
                break 'levels;
            }
        }
        report.findings.extend(found);
        report.undecided.extend(undecided);
        report.searched_up_to = n;
    }
    Ok(report)
}
