use std::collections::HashMap;

use crate::error::OrbitalError;

/// A finite category given by explicit morphisms and a composition table.
#[derive(Clone, Debug)]
pub struct FinCategory {
    object_labels: Vec<String>,
    morphism_labels: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    identities: Vec<usize>,
    /// `(g, f) ↦ g∘f` for composable pairs.
    compose: HashMap<(usize, usize), usize>,
    hom: Vec<Vec<Vec<usize>>>,
    inverse: Vec<Option<usize>>,
}

/// Outcome of the atomicity scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomicCheck {
    pub holds: bool,
    /// A pair `(f, g)` with `g∘f` invertible but `f` or `g` not.
    pub witness: Option<(usize, usize)>,
}

impl FinCategory {
    /// Builds the category, filling the composition table from `compose_fn(g, f)`
    /// on every composable pair, and validates unit and associativity laws.
    pub fn new(
        object_labels: Vec<String>,
        morphisms: Vec<(usize, usize, String)>,
        identities: Vec<usize>,
        mut compose_fn: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self, OrbitalError> {
        let n = object_labels.len();
        let (mut src, mut tgt, mut morphism_labels) = (Vec::new(), Vec::new(), Vec::new());
        let mut hom = vec![vec![Vec::new(); n]; n];
        for (i, (s, t, label)) in morphisms.into_iter().enumerate() {
            if s >= n || t >= n {
                return Err(OrbitalError::CategoryAxiom { axiom: "endpoints", witness: vec![i] });
            }
            hom[s][t].push(i);
            src.push(s);
            tgt.push(t);
            morphism_labels.push(label);
        }
        if identities.len() != n
            || identities.iter().enumerate().any(|(a, &i)| i >= src.len() || src[i] != a || tgt[i] != a)
        {
            return Err(OrbitalError::CategoryAxiom { axiom: "identities", witness: vec![] });
        }
        let mut compose = HashMap::new();
        for f in 0..src.len() {
            for targets in &hom[tgt[f]] {
                for &g in targets {
                    let gf = compose_fn(g, f);
                    if gf >= src.len() || src[gf] != src[f] || tgt[gf] != tgt[g] {
                        return Err(OrbitalError::CategoryAxiom { axiom: "composite endpoints", witness: vec![g, f] });
                    }
                    compose.insert((g, f), gf);
                }
            }
        }
        let mut cat =
            FinCategory { object_labels, morphism_labels, src, tgt, identities, compose, hom, inverse: Vec::new() };
        cat.check_laws()?;
        cat.inverse = (0..cat.src.len())
            .map(|f| {
                cat.hom[cat.tgt[f]][cat.src[f]].iter().copied().find(|&g| {
                    cat.compose(g, f) == cat.identities[cat.src[f]] && cat.compose(f, g) == cat.identities[cat.tgt[f]]
                })
            })
            .collect();
        Ok(cat)
    }

    fn check_laws(&self) -> Result<(), OrbitalError> {
        for f in 0..self.src.len() {
            if self.compose(self.identities[self.tgt[f]], f) != f || self.compose(f, self.identities[self.src[f]]) != f
            {
                return Err(OrbitalError::CategoryAxiom { axiom: "unit", witness: vec![f] });
            }
        }
        for f in 0..self.src.len() {
            for b in 0..self.len() {
                for &g in &self.hom[self.tgt[f]][b] {
                    let gf = self.compose(g, f);
                    for c in 0..self.len() {
                        for &h in &self.hom[b][c] {
                            if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                                return Err(OrbitalError::CategoryAxiom {
                                    axiom: "associativity",
                                    witness: vec![h, g, f],
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Number of objects.
    pub fn len(&self) -> usize {
        self.object_labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.object_labels.is_empty()
    }

    pub fn morphism_count(&self) -> usize {
        self.src.len()
    }

    pub fn object_label(&self, a: usize) -> &str {
        &self.object_labels[a]
    }

    pub fn morphism_label(&self, f: usize) -> &str {
        &self.morphism_labels[f]
    }

    #[inline]
    pub fn src(&self, f: usize) -> usize {
        self.src[f]
    }

    #[inline]
    pub fn tgt(&self, f: usize) -> usize {
        self.tgt[f]
    }

    pub fn identity(&self, a: usize) -> usize {
        self.identities[a]
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.hom[a][b]
    }

    /// `g∘f`; panics when the pair is not composable.
    #[inline]
    pub fn compose(&self, g: usize, f: usize) -> usize {
        self.compose[&(g, f)]
    }

    pub fn try_compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose.get(&(g, f)).copied()
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse[f].is_some()
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        self.inverse[f]
    }

    pub fn isomorphic(&self, a: usize, b: usize) -> bool {
        self.hom[a][b].iter().any(|&f| self.is_iso(f))
    }

    /// Representative (smallest object id) of each object's isomorphism class.
    pub fn iso_class_reps(&self) -> Vec<usize> {
        (0..self.len()).map(|a| (0..=a).find(|&b| self.isomorphic(b, a)).expect("a ≅ a")).collect()
    }

    /// Whether every endomorphism is invertible.
    pub fn is_ei(&self) -> bool {
        (0..self.len()).all(|a| self.hom[a][a].iter().all(|&f| self.is_iso(f)))
    }

    /// Scans every composable pair `(f, g)` with `g∘f` invertible.
    pub fn check_atomic(&self) -> AtomicCheck {
        for f in 0..self.src.len() {
            for &g in &self.hom[self.tgt[f]][self.src[f]] {
                if self.is_iso(self.compose(g, f)) && !(self.is_iso(f) && self.is_iso(g)) {
                    return AtomicCheck { holds: false, witness: Some((f, g)) };
                }
            }
        }
        AtomicCheck { holds: true, witness: None }
    }

    /// Length of the longest chain of composable non-invertible morphisms, or
    /// `None` when such chains are unbounded.
    pub fn longest_noniso_chain(&self) -> Option<usize> {
        let reps = self.iso_class_reps();
        let classes: Vec<usize> = (0..self.len()).filter(|&a| reps[a] == a).collect();
        let step = |a: usize, b: usize| {
            (0..self.len()).filter(|&x| reps[x] == a).any(|x| {
                (0..self.len()).filter(|&y| reps[y] == b).any(|y| self.hom[x][y].iter().any(|&f| !self.is_iso(f)))
            })
        };
        let edges: Vec<Vec<usize>> =
            classes.iter().map(|&a| classes.iter().copied().filter(|&b| step(a, b)).collect()).collect();
        let pos = |c: usize| classes.iter().position(|&x| x == c).expect("class rep");
        // Depth-first longest path with cycle detection.
        let mut memo: Vec<Option<usize>> = vec![None; classes.len()];
        let mut on_stack = vec![false; classes.len()];
        fn visit(
            i: usize,
            edges: &[Vec<usize>],
            pos: &dyn Fn(usize) -> usize,
            memo: &mut [Option<usize>],
            on_stack: &mut [bool],
        ) -> Option<usize> {
            if let Some(v) = memo[i] {
                return Some(v);
            }
            if on_stack[i] {
                return None;
            }
            on_stack[i] = true;
            let mut best = 0;
            for &b in &edges[i] {
                best = best.max(1 + visit(pos(b), edges, pos, memo, on_stack)?);
            }
            on_stack[i] = false;
            memo[i] = Some(best);
            Some(best)
        }
        let mut best = 0;
        for i in 0..classes.len() {
            best = best.max(visit(i, &edges, &pos, &mut memo, &mut on_stack)?);
        }
        Some(best)
    }
}

/// The two-object category with a section-retraction pair `pt → pt⊔pt → pt`
/// (the endomorphisms of `pt⊔pt` that factor through `pt` are the two constants).
pub fn retraction_category() -> FinCategory {
    // Objects: 0 = pt, 1 = pt⊔pt. Morphisms as functions between point sets.
    let funcs: Vec<(usize, usize, Vec<usize>)> = vec![
        (0, 0, vec![0]),
        (1, 1, vec![0, 1]),
        (1, 1, vec![1, 0]),
        (1, 1, vec![0, 0]),
        (1, 1, vec![1, 1]),
        (0, 1, vec![0]),
        (0, 1, vec![1]),
        (1, 0, vec![0, 0]),
    ];
    let morphisms = funcs.iter().map(|(s, t, f)| (*s, *t, format!("{f:?}"))).collect();
    FinCategory::new(vec!["pt".into(), "pt+pt".into()], morphisms, vec![0, 1], |g, f| {
        let composite: Vec<usize> = funcs[f].2.iter().map(|&x| funcs[g].2[x]).collect();
        funcs
            .iter()
            .position(|(s, t, h)| *s == funcs[f].0 && *t == funcs[g].1 && *h == composite)
            .expect("closed under composition")
    })
    .expect("retraction category is a category")
}
