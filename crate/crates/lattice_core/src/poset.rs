use std::collections::HashMap;

use crate::error::LatticeError;

/// Upper bound on the number of elements of any poset built by this crate.
pub const SIZE_CAP: usize = 256;

/// A finite partial order with labelled elements.
///
/// Elements are the indices `0..len()`; labels are only used for I/O and
/// reporting. The full order relation is stored eagerly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPoset {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl FinPoset {
    /// Builds a poset from an explicit order relation and validates the axioms.
    pub fn from_relation(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self, LatticeError> {
        let n = labels.len();
        if n > SIZE_CAP {
            return Err(LatticeError::TooLarge { size: n, cap: SIZE_CAP });
        }
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(LatticeError::Shape(format!("order relation must be {n}x{n}")));
        }
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if let Some(j) = seen.insert(l.clone(), i) {
                return Err(LatticeError::DuplicateLabel { label: l.clone(), first: j, second: i });
            }
        }
        let p = FinPoset { labels, leq };
        p.validate()?;
        Ok(p)
    }

    /// Builds a poset whose order is the reflexive-transitive closure of `covers`.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self, LatticeError> {
        let n = labels.len();
        if n > SIZE_CAP {
            return Err(LatticeError::TooLarge { size: n, cap: SIZE_CAP });
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(lo, hi) in covers {
            if lo >= n || hi >= n {
                return Err(LatticeError::Shape(format!("cover ({lo},{hi}) out of range")));
            }
            leq[lo][hi] = true;
        }
        // Warshall closure.
        for k in 0..n {
            let through = leq[k].clone();
            for row in leq.iter_mut() {
                if row[k] {
                    for (cell, &kj) in row.iter_mut().zip(&through) {
                        if kj {
                            *cell = true;
                        }
                    }
                }
            }
        }
        Self::from_relation(labels, leq)
    }

    fn validate(&self) -> Result<(), LatticeError> {
        let n = self.len();
        for i in 0..n {
            if !self.leq[i][i] {
                return Err(LatticeError::Axiom { axiom: "reflexivity", witness: vec![self.labels[i].clone()] });
            }
            for j in 0..n {
                if i != j && self.leq[i][j] && self.leq[j][i] {
                    return Err(LatticeError::Axiom {
                        axiom: "antisymmetry",
                        witness: vec![self.labels[i].clone(), self.labels[j].clone()],
                    });
                }
                if self.leq[i][j] {
                    for k in 0..n {
                        if self.leq[j][k] && !self.leq[i][k] {
                            return Err(LatticeError::Axiom {
                                axiom: "transitivity",
                                witness: vec![self.labels[i].clone(), self.labels[j].clone(), self.labels[k].clone()],
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Covering pairs `(lo, hi)`: `lo < hi` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// A linear extension: if `a < b` then `a` appears before `b`.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&a| (0..self.len()).filter(|&b| self.lt(b, a)).count());
        order
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&a| (0..self.len()).all(|b| self.leq(a, b)))
    }

    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&a| (0..self.len()).all(|b| self.leq(b, a)))
    }

    pub fn down_set(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.leq(y, x)).collect()
    }

    pub fn up_set(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.leq(x, y)).collect()
    }

    pub fn is_down_closed(&self, subset: &[bool]) -> bool {
        (0..self.len()).all(|y| !subset[y] || (0..self.len()).all(|x| !self.leq(x, y) || subset[x]))
    }

    pub fn is_up_closed(&self, subset: &[bool]) -> bool {
        (0..self.len()).all(|y| !subset[y] || (0..self.len()).all(|x| !self.leq(y, x) || subset[x]))
    }

    /// Full subposet on `members` (ambient indices, kept in the given order).
    pub fn full_subposet(&self, members: &[usize]) -> FinPoset {
        let labels = members.iter().map(|&m| self.labels[m].clone()).collect();
        let leq = members.iter().map(|&a| members.iter().map(|&b| self.leq(a, b)).collect()).collect();
        FinPoset { labels, leq }
    }

    /// Cartesian product with the componentwise order; element `(i, j)` has index `i * other.len() + j`.
    pub fn product(&self, other: &FinPoset) -> Result<FinPoset, LatticeError> {
        let (n, m) = (self.len(), other.len());
        if n * m > SIZE_CAP {
            return Err(LatticeError::TooLarge { size: n * m, cap: SIZE_CAP });
        }
        let mut labels = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                labels.push(format!("({},{})", self.labels[i], other.labels[j]));
            }
        }
        let leq = (0..n * m)
            .map(|a| (0..n * m).map(|b| self.leq(a / m, b / m) && other.leq(a % m, b % m)).collect())
            .collect();
        Ok(FinPoset { labels, leq })
    }

    /// Greatest lower bound of `a` and `b`, if it exists.
    pub fn glb(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len()).filter(|&c| self.leq(c, a) && self.leq(c, b)).collect();
        lower.iter().copied().find(|&c| lower.iter().all(|&d| self.leq(d, c)))
    }

    /// Least upper bound of `a` and `b`, if it exists.
    pub fn lub(&self, a: usize, b: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len()).filter(|&c| self.leq(a, c) && self.leq(b, c)).collect();
        upper.iter().copied().find(|&c| upper.iter().all(|&d| self.leq(c, d)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> FinPoset {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        FinPoset::from_covers(labels, &covers).unwrap()
    }

    #[test]
    fn closure_of_chain_covers() {
        let c = chain(4);
        assert!(c.leq(0, 3));
        assert!(!c.leq(3, 0));
        assert_eq!(c.covers(), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(c.bottom(), Some(0));
        assert_eq!(c.top(), Some(3));
    }

    #[test]
    fn cycle_is_rejected() {
        let labels = vec!["a".into(), "b".into()];
        let err = FinPoset::from_covers(labels, &[(0, 1), (1, 0)]).unwrap_err();
        assert!(matches!(err, LatticeError::Axiom { axiom: "antisymmetry", .. }));
    }

    #[test]
    fn duplicate_labels_rejected() {
        let labels = vec!["a".into(), "a".into()];
        assert!(FinPoset::from_covers(labels, &[]).is_err());
    }

    #[test]
    fn linear_extension_respects_order() {
        let c = chain(5);
        let ext = c.linear_extension();
        let pos: Vec<usize> = (0..5).map(|a| ext.iter().position(|&x| x == a).unwrap()).collect();
        for (a, b) in c.covers() {
            assert!(pos[a] < pos[b]);
        }
    }

    #[test]
    fn product_order_is_componentwise() {
        let p = chain(2).product(&chain(3)).unwrap();
        assert_eq!(p.len(), 6);
        assert!(p.leq(0, 5));
        assert!(!p.leq(2, 3));
    }
}
