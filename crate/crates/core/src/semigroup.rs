//! Finite semigroups given by an exhaustive multiplication table. These
//! index the operator families; only tiny ones are ever needed.

use crate::report::{collect_violations, Report, Violation};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemigroupError {
    #[error("element names must be distinct and nonempty")]
    BadElements,
    #[error("table size {got} does not match {want} pairs")]
    BadTableSize { got: usize, want: usize },
    #[error("table entry {entry} out of range for {n} elements")]
    EntryOutOfRange { entry: usize, n: usize },
}

/// Element names plus the full product table. Closure is structural
/// (entries are indices into the element list); associativity is checked
/// by [`FiniteSemigroup::validate`].
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    elements: Vec<String>,
    table: Vec<usize>,
}

impl FiniteSemigroup {
    /// `table[i * n + j]` is the index of `elements[i] * elements[j]`.
    pub fn new(elements: Vec<String>, table: Vec<usize>) -> Result<FiniteSemigroup, SemigroupError> {
        let n = elements.len();
        if n == 0 || elements.iter().any(String::is_empty) {
            return Err(SemigroupError::BadElements);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if elements[i] == elements[j] {
                    return Err(SemigroupError::BadElements);
                }
            }
        }
        if table.len() != n * n {
            return Err(SemigroupError::BadTableSize { got: table.len(), want: n * n });
        }
        if let Some(&entry) = table.iter().find(|&&e| e >= n) {
            return Err(SemigroupError::EntryOutOfRange { entry, n });
        }
        Ok(FiniteSemigroup { elements, table })
    }

    /// The one-element semigroup {e}.
    pub fn trivial() -> FiniteSemigroup {
        FiniteSemigroup::new(vec!["e".into()], vec![0]).unwrap()
    }

    /// {e, s} with e a unit and s^2 = e.
    pub fn order_two() -> FiniteSemigroup {
        FiniteSemigroup::new(vec!["e".into(), "s".into()], vec![0, 1, 1, 0]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.elements.len() + j]
    }

    /// All (alpha, beta) index pairs, row-major.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.elements.len();
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
    }

    /// Empty report iff the table is associative; each violating triple is
    /// listed with both evaluated products.
    pub fn validate(&self) -> Report {
        let n = self.elements.len();
        let triples: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
            .collect();
        collect_violations(triples, |&(i, j, k)| {
            let lhs = self.mul(self.mul(i, j), k);
            let rhs = self.mul(i, self.mul(j, k));
            (lhs != rhs).then(|| Violation {
                label: "assoc".into(),
                indices: vec![i + 1, j + 1, k + 1],
                lhs: vec![Scalar::from_int(lhs as i64 + 1)],
                rhs: vec![Scalar::from_int(rhs as i64 + 1)],
            })
        })
    }
}

impl std::fmt::Debug for FiniteSemigroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteSemigroup {{ {} }}", self.elements.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_two_is_valid() {
        let s = FiniteSemigroup::order_two();
        assert!(s.validate().is_empty());
        assert_eq!(s.mul(1, 1), 0);
        assert_eq!(s.index_of("s"), Some(1));
    }

    #[test]
    fn trivial_is_valid() {
        assert!(FiniteSemigroup::trivial().validate().is_empty());
    }

    #[test]
    fn non_associative_table_reports_triples() {
        // a*a=b, a*b=a, b*a=b, b*b=a: fails at (a,a,a) among others.
        let s = FiniteSemigroup::new(vec!["a".into(), "b".into()], vec![1, 0, 1, 0]).unwrap();
        let report = s.validate();
        assert!(!report.is_empty());
        assert!(report
            .violations()
            .iter()
            .any(|v| v.indices == vec![1, 1, 1]));
        // Brute force over all 8 triples agrees with the report size.
        let mut count = 0;
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    if s.mul(s.mul(i, j), k) != s.mul(i, s.mul(j, k)) {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(report.len(), count);
    }

    #[test]
    fn construction_errors() {
        assert!(FiniteSemigroup::new(vec!["a".into(), "a".into()], vec![0; 4]).is_err());
        assert!(FiniteSemigroup::new(vec!["a".into()], vec![0, 0]).is_err());
        assert!(FiniteSemigroup::new(vec!["a".into()], vec![3]).is_err());
    }
}
