//! Error and warning records produced by validation, decoding and
//! consistency checks.

use std::fmt;

use serde::Serialize;

use crate::scalar::Overflow;
use crate::surface::{ArcId, RegionId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

/// Where a diagnostic applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "at", content = "id")]
pub enum Locus {
    Vector,
    Region(RegionId),
    Arc(ArcId),
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Locus::Vector => f.write_str("vector"),
            Locus::Region(r) => write!(f, "{r}"),
            Locus::Arc(a) => write!(f, "{a}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Code {
    /// All coordinates are zero.
    ZeroVector,
    /// A difference that must be halved is odd.
    ParityError,
    /// A component count came out negative.
    NegativeCount,
    /// A region has nonzero total twist but sign 0.
    SignMissing,
    /// A region has zero total twist but a nonzero sign.
    SignWithoutTwist,
    /// Number of twist signs differs from the genus.
    SignCount,
    /// Upper and lower diagonals both fit the data.
    AmbiguousDiagonals,
    /// Twist distribution inconsistent with the number of twist components.
    InconsistentTwist,
    /// Endpoint count on an arc differs from the coordinate value.
    ArcMismatch,
    /// The two regions beside an arc disagree on its endpoint count.
    ArcImbalance,
    /// A census field combination that no multicurve produces.
    InvariantViolation,
    /// Census shape does not match the surface.
    Malformed,
    Overflow,
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub locus: Locus,
    pub code: Code,
    pub detail: String,
}

impl Diagnostic {
    pub fn error(locus: Locus, code: Code, detail: impl Into<String>) -> Self {
        Self {
            severity: Severity::Error,
            locus,
            code,
            detail: detail.into(),
        }
    }

    pub fn warning(locus: Locus, code: Code, detail: impl Into<String>) -> Self {
        Self {
            severity: Severity::Warning,
            locus,
            code,
            detail: detail.into(),
        }
    }

    pub(crate) fn overflow(locus: Locus) -> Self {
        Self::error(locus, Code::Overflow, "integer overflow")
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{sev}[{}] {}: {}", self.code, self.locus, self.detail)
    }
}

/// Lets `?` lift arithmetic overflow inside code that returns diagnostics.
pub(crate) trait AtLocus<T> {
    fn at(self, locus: Locus) -> Result<T, Diagnostic>;
}

impl<T> AtLocus<T> for Result<T, Overflow> {
    fn at(self, locus: Locus) -> Result<T, Diagnostic> {
        self.map_err(|_| Diagnostic::overflow(locus))
    }
}

/// An ordered list of diagnostics; empty means every check passed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Diagnostics(Vec<Diagnostic>);

impl Diagnostics {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, d: Diagnostic) {
        self.0.push(d);
    }

    pub fn extend(&mut self, other: Diagnostics) {
        self.0.extend(other.0);
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn has_errors(&self) -> bool {
        self.0.iter().any(|d| d.severity == Severity::Error)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Diagnostic> {
        self.0.iter()
    }

    pub fn codes(&self) -> Vec<Code> {
        self.0.iter().map(|d| d.code).collect()
    }

    pub fn contains(&self, code: Code) -> bool {
        self.0.iter().any(|d| d.code == code)
    }

    /// `Ok(value)` when no errors were recorded.
    pub fn into_result<T>(self, value: T) -> Result<T, Diagnostics> {
        if self.has_errors() {
            Err(self)
        } else {
            Ok(value)
        }
    }
}

impl std::error::Error for Diagnostics {}

impl From<Diagnostic> for Diagnostics {
    fn from(d: Diagnostic) -> Self {
        Self(vec![d])
    }
}

impl FromIterator<Diagnostic> for Diagnostics {
    fn from_iter<I: IntoIterator<Item = Diagnostic>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl IntoIterator for Diagnostics {
    type Item = Diagnostic;
    type IntoIter = std::vec::IntoIter<Diagnostic>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a Diagnostics {
    type Item = &'a Diagnostic;
    type IntoIter = std::slice::Iter<'a, Diagnostic>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, d) in self.0.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}
