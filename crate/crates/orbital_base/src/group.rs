use std::collections::BTreeSet;

use crate::error::OrbitalError;

/// Largest group order accepted.
pub const MAX_ORDER: usize = 24;

/// A finite group given by its multiplication table, `mult[a][b] = a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    mult: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(name: impl Into<String>, mult: Vec<Vec<usize>>) -> Result<Self, OrbitalError> {
        let n = mult.len();
        if n == 0 || n > MAX_ORDER {
            return Err(OrbitalError::GroupTable(format!("order {n} outside 1..={MAX_ORDER}")));
        }
        if mult.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(OrbitalError::GroupTable("table is not square over 0..order".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mult[e][a] == a && mult[a][e] == a))
            .ok_or(OrbitalError::GroupLaw { law: "identity", witness: vec![] })?;
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| mult[a][b] == identity && mult[b][a] == identity)
                .ok_or(OrbitalError::GroupLaw { law: "inverse", witness: vec![a] })?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return Err(OrbitalError::GroupLaw { law: "associativity", witness: vec![a, b, c] });
                    }
                }
            }
        }
        Ok(FiniteGroup { name: name.into(), mult, identity, inverse })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        let name = if n == 1 { "1".to_string() } else { format!("C{n}") };
        let mult = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(name, mult).expect("cyclic table is a group")
    }

    /// Permutations of three letters in lexicographic order; `(σ·τ)(i) = σ(τ(i))`.
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).expect("closed under composition");
        let mult = perms.iter().map(|s| perms.iter().map(|t| index([s[t[0]], s[t[1]], s[t[2]]])).collect()).collect();
        Self::from_table("S3", mult).expect("S3 table is a group")
    }

    /// Looks up one of the named test groups: `1`, `C2`, `C3`, `C4`, `S3`, or any `Cn`.
    pub fn by_name(name: &str) -> Result<Self, OrbitalError> {
        match name {
            "1" | "trivial" | "e" => Ok(Self::trivial()),
            "S3" => Ok(Self::symmetric3()),
            _ => name
                .strip_prefix('C')
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| (1..=MAX_ORDER).contains(&k))
                .map(Self::cyclic)
                .ok_or_else(|| OrbitalError::UnknownGroup(name.into())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.mult.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mult
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// The subgroup generated by `gens`, as a sorted element list.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    /// All subgroups, sorted by order and then lexicographically.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = self.elements().map(|g| self.generated(&[g])).collect();
        loop {
            let current: Vec<Vec<usize>> = found.iter().cloned().collect();
            let mut grew = false;
            for a in &current {
                for b in &current {
                    let gens: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
                    if found.insert(self.generated(&gens)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut all: Vec<Vec<usize>> = found.into_iter().collect();
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all
    }

    /// `g H g⁻¹`, sorted.
    pub fn conjugate(&self, subgroup: &[usize], g: usize) -> Vec<usize> {
        let mut out: Vec<usize> = subgroup.iter().map(|&h| self.mul(self.mul(g, h), self.inv(g))).collect();
        out.sort_unstable();
        out
    }

    /// One representative per conjugacy class of subgroups: the lexicographically
    /// smallest member of the class. Sorted by order, then lexicographically.
    pub fn subgroup_class_reps(&self) -> Vec<Vec<usize>> {
        let mut reps: Vec<Vec<usize>> = Vec::new();
        for h in self.subgroups() {
            let smallest = self.elements().map(|g| self.conjugate(&h, g)).min().expect("group is nonempty");
            if !reps.contains(&smallest) {
                reps.push(smallest);
            }
        }
        reps.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        reps
    }

    /// Whether some conjugate of `h` is contained in `k`.
    pub fn subconjugate(&self, h: &[usize], k: &[usize]) -> bool {
        self.elements().any(|g| self.conjugate(h, g).iter().all(|x| k.binary_search(x).is_ok()))
    }

    /// Short name for a subgroup: `e`, the group name for the whole group, else `C{k}` or `H{k}`.
    pub fn subgroup_name(&self, h: &[usize]) -> String {
        if h.len() == 1 {
            "e".into()
        } else if h.len() == self.order() {
            self.name.clone()
        } else if h.iter().any(|&g| self.generated(&[g]).len() == h.len()) {
            format!("C{}", h.len())
        } else {
            format!("H{}", h.len())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subgroup_counts() {
        assert_eq!(FiniteGroup::cyclic(4).subgroups().len(), 3);
        assert_eq!(FiniteGroup::symmetric3().subgroups().len(), 6);
        assert_eq!(FiniteGroup::symmetric3().subgroup_class_reps().len(), 4);
        assert_eq!(FiniteGroup::trivial().subgroup_class_reps(), vec![vec![0]]);
    }

    #[test]
    fn s3_is_nonabelian() {
        let g = FiniteGroup::symmetric3();
        assert!(g.elements().any(|a| g.elements().any(|b| g.mul(a, b) != g.mul(b, a))));
        let names: Vec<String> = g.subgroup_class_reps().iter().map(|h| g.subgroup_name(h)).collect();
        assert_eq!(names, ["e", "C2", "C3", "S3"]);
    }

    #[test]
    fn rejects_non_associative_table() {
        let bad = vec![vec![0, 1, 2], vec![1, 0, 0], vec![2, 2, 0]];
        assert!(FiniteGroup::from_table("bad", bad).is_err());
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(FiniteGroup::by_name("C4").unwrap().order(), 4);
        assert!(matches!(FiniteGroup::by_name("D5"), Err(OrbitalError::UnknownGroup(_))));
    }
}
