//! Violation reports shared by every axiom checker.
//!
//! A report is an ordered list of violations, each carrying the axiom
//! label, the basis/semigroup index tuple it failed on (1-based), and the
//! two evaluated sides as coordinate vectors. Reports compare and print
//! deterministically: violations are sorted lexicographically by label,
//! then by index tuple.

use crate::scalar::Scalar;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub label: String,
    pub indices: Vec<usize>,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        let side = |v: &[Scalar]| {
            let parts: Vec<String> = v.iter().map(|s| s.to_string()).collect();
            format!("[{}]", parts.join(", "))
        };
        write!(
            f,
            "{} @ ({}) lhs={} rhs={}",
            self.label,
            idx.join(","),
            side(&self.lhs),
            side(&self.rhs)
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
        self.sort();
    }

    pub fn merge(&mut self, other: Report) {
        self.violations.extend(other.violations);
        self.sort();
    }

    /// Merge with every label wrapped as `prefix(label)` or `prefix:label`.
    pub fn merge_relabel(&mut self, other: Report, f: impl Fn(&str) -> String) {
        for mut v in other.violations {
            v.label = f(&v.label);
            self.violations.push(v);
        }
        self.sort();
    }

    fn sort(&mut self) {
        self.violations
            .sort_by(|a, b| a.label.cmp(&b.label).then_with(|| a.indices.cmp(&b.indices)));
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn labels(&self) -> Vec<&str> {
        self.violations.iter().map(|v| v.label.as_str()).collect()
    }

    pub fn has_label(&self, label: &str) -> bool {
        self.violations.iter().any(|v| v.label == label)
    }

    pub fn from_violations(violations: Vec<Violation>) -> Report {
        let mut r = Report { violations };
        r.sort();
        r
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Evaluate one check per task, in parallel when the `parallel` feature is
/// on, and fold the hits into a deterministically ordered report.
pub(crate) fn collect_violations<T, F>(tasks: Vec<T>, check: F) -> Report
where
    T: Sync,
    F: Fn(&T) -> Option<Violation> + Sync,
{
    #[cfg(feature = "parallel")]
    let hits: Vec<Violation> = {
        use rayon::prelude::*;
        tasks.par_iter().filter_map(|t| check(t)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let hits: Vec<Violation> = tasks.iter().filter_map(|t| check(t)).collect();
    Report::from_violations(hits)
}

/// Order-preserving map over work items, parallel when enabled.
pub(crate) fn map_ordered<T, R, F>(items: Vec<T>, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(|t| f(t)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(|t| f(t)).collect()
    }
}
