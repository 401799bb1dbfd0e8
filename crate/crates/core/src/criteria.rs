//! Scalar and lexicographic criteria for comparing dendrograms by their
//! modularity and size-homogeneity sequences.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{argument, Result};
use crate::quality::MetricsVector;

pub const DEFAULT_EPS: f64 = 0.04;

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionReport {
    /// 1-based step of the first maximum of `q`.
    pub t_max: usize,
    pub cr1: f64,
    pub cr_avg: f64,
    pub cr3: f64,
    pub scr1: f64,
    pub scr3: f64,
    /// Free-form identity of the dendrogram the report was computed from.
    pub source: String,
}

/// 1-based index of the first maximum of `q`.
fn first_argmax(q: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in q.iter().enumerate() {
        if x > q[best] {
            best = i;
        }
    }
    best + 1
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub fn criterion_report(mv: &MetricsVector) -> Result<CriterionReport> {
    if mv.is_empty() || mv.cv.len() != mv.q.len() {
        return Err(argument("metrics vector is empty or ragged"));
    }
    let t_max = first_argmax(&mv.q);
    Ok(CriterionReport {
        t_max,
        cr1: mv.q[t_max - 1],
        cr_avg: mean(&mv.q),
        cr3: mean(&mv.q[..t_max]),
        scr1: mv.cv[t_max - 1],
        scr3: mean(&mv.cv[..t_max]),
        source: String::new(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Better,
    Worse,
    Equivalent,
}

impl Verdict {
    pub fn flip(self) -> Self {
        match self {
            Verdict::Better => Verdict::Worse,
            Verdict::Worse => Verdict::Better,
            Verdict::Equivalent => Verdict::Equivalent,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Verdict::Better => 'B',
            Verdict::Worse => 'W',
            Verdict::Equivalent => 'E',
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// `|a − b| ≤ eps·min(|a|, |b|)`. Equal values are always equivalent; a
/// nonzero gap against a zero value never is.
pub fn eps_equivalent(a: f64, b: f64, eps: f64) -> bool {
    if a == b {
        return true;
    }
    let scale = a.abs().min(b.abs());
    scale > 0.0 && (a - b).abs() <= eps * scale
}

/// Verdict for `a` against `b` on one value: equivalent within `eps`,
/// otherwise the sign of the gap decides.
fn scalar_verdict(a: f64, b: f64, eps: f64, higher_is_better: bool) -> Verdict {
    if eps_equivalent(a, b, eps) {
        return Verdict::Equivalent;
    }
    let ord = a.partial_cmp(&b).unwrap_or(Ordering::Equal);
    match (ord, higher_is_better) {
        (Ordering::Greater, true) | (Ordering::Less, false) => Verdict::Better,
        (Ordering::Less, true) | (Ordering::Greater, false) => Verdict::Worse,
        (Ordering::Equal, _) => Verdict::Equivalent,
    }
}

/// The first index whose entries are not `eps`-equivalent decides.
pub fn lex_compare(a: &[f64], b: &[f64], eps: f64, higher_is_better: bool) -> Result<Verdict> {
    if a.len() != b.len() {
        return Err(argument(format!(
            "vectors have lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    Ok(a.iter()
        .zip(b)
        .map(|(&x, &y)| scalar_verdict(x, y, eps, higher_is_better))
        .find(|&v| v != Verdict::Equivalent)
        .unwrap_or(Verdict::Equivalent))
}

/// Which pair of criteria a combined comparison uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    /// `(Cr1, SCr1)`.
    Max,
    /// `(Cr2, SCr2)`: lexicographic on the full sequences.
    Lexicographic,
    /// `(Cr3, SCr3)`.
    Truncated,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::Max, Level::Lexicographic, Level::Truncated];

    pub fn from_index(i: usize) -> Result<Self> {
        match i {
            1 => Ok(Level::Max),
            2 => Ok(Level::Lexicographic),
            3 => Ok(Level::Truncated),
            _ => Err(argument(format!(
                "criterion level must be 1, 2 or 3, got {i}"
            ))),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Level::Max => "(Cr1,SCr1)",
            Level::Lexicographic => "(Cr2,SCr2)",
            Level::Truncated => "(Cr3,SCr3)",
        }
    }
}

/// Verdict for dendrogram `da` against `db`: modularity first, homogeneity
/// (lower CV is better) only when modularity is `eps`-equivalent.
pub fn combined_compare(
    da: &MetricsVector,
    db: &MetricsVector,
    eps: f64,
    level: Level,
) -> Result<Verdict> {
    if da.len() != db.len() {
        return Err(argument(format!(
            "metrics vectors have lengths {} and {}",
            da.len(),
            db.len()
        )));
    }
    let v = match level {
        Level::Lexicographic => match lex_compare(&da.q, &db.q, eps, true)? {
            Verdict::Equivalent => lex_compare(&da.cv, &db.cv, eps, false)?,
            v => v,
        },
        Level::Max | Level::Truncated => {
            let (ra, rb) = (criterion_report(da)?, criterion_report(db)?);
            let (qa, qb, ca, cb) = if level == Level::Max {
                (ra.cr1, rb.cr1, ra.scr1, rb.scr1)
            } else {
                (ra.cr3, rb.cr3, ra.scr3, rb.scr3)
            };
            match scalar_verdict(qa, qb, eps, true) {
                Verdict::Equivalent => scalar_verdict(ca, cb, eps, false),
                v => v,
            }
        }
    };
    Ok(v)
}
