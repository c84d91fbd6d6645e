use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use lattice_core::FinPoset;
use orbital_base::FinCategory;

use crate::error::HochError;

/// Upper bound on the number of nondegenerate chains enumerated for one shape.
pub const CHAIN_CAP: usize = 200_000;

/// A chain `c_0 → c_1 → … → c_k` of composable non-invertible morphisms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn start(&self) -> usize {
        self.objects[0]
    }
}

/// One generator of the coinvariant relations: `e(first, x) − e(second, F(act)x)`,
/// where `act` (if present) is an isomorphism from the start of `first` to the
/// start of `second`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub first: usize,
    pub second: usize,
    pub act: Option<usize>,
}

/// One face of a chain: `sign · e(target, F(act)x)`, with `act` the first arrow
/// when the face drops the starting object.
#[derive(Clone, Debug)]
pub struct Face {
    pub sign: i64,
    pub target: usize,
    pub act: Option<usize>,
}

/// All chains of one length, with their relations and faces.
#[derive(Clone, Debug, Default)]
pub struct ChainLevel {
    pub chains: Vec<Chain>,
    pub relations: Vec<Relation>,
    /// Faces of each chain, indexing chains one level down.
    pub faces: Vec<Vec<Face>>,
}

/// The combinatorial data of the relative bar construction over a finite EI
/// category: chains of non-invertible morphisms, taken up to the action of the
/// isomorphisms at every joint.
#[derive(Debug)]
pub struct Chains {
    pub levels: Vec<ChainLevel>,
    index: Vec<HashMap<(usize, Vec<usize>), usize>>,
}

impl Chains {
    /// Index of the chain with the given start and arrows.
    pub fn find(&self, start: usize, arrows: &[usize]) -> Option<usize> {
        self.index.get(arrows.len())?.get(&(start, arrows.to_vec())).copied()
    }

    pub fn max_length(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    fn build(cat: &FinCategory) -> Result<Self, HochError> {
        let n = cat.len();
        let non_iso: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).flat_map(|b| cat.hom(a, b).iter().copied()).filter(|&f| !cat.is_iso(f)).collect())
            .collect();
        let isos_from: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).flat_map(|b| cat.hom(a, b).iter().copied()).filter(|&f| cat.is_iso(f)).collect())
            .collect();
        let mut levels: Vec<ChainLevel> = Vec::new();
        let mut index: Vec<HashMap<(usize, Vec<usize>), usize>> = Vec::new();
        let mut current: Vec<Chain> = (0..n).map(|a| Chain { objects: vec![a], arrows: vec![] }).collect();
        let mut total = 0;
        while !current.is_empty() {
            total += current.len();
            if total > CHAIN_CAP {
                return Err(HochError::TooLarge { dim: total, cap: CHAIN_CAP });
            }
            let idx: HashMap<(usize, Vec<usize>), usize> =
                current.iter().enumerate().map(|(i, c)| ((c.start(), c.arrows.clone()), i)).collect();
            let mut next = Vec::new();
            for c in &current {
                let last = *c.objects.last().expect("chains are nonempty");
                for &f in &non_iso[last] {
                    let mut e = c.clone();
                    e.arrows.push(f);
                    e.objects.push(cat.tgt(f));
                    next.push(e);
                }
            }
            levels.push(ChainLevel { chains: current, ..Default::default() });
            index.push(idx);
            current = next;
        }
        let mut chains = Chains { levels, index };
        for k in 0..chains.levels.len() {
            let mut relations = Vec::new();
            let mut faces = Vec::new();
            for (i, c) in chains.levels[k].chains.iter().enumerate() {
                relations.extend(chains.relations_of(cat, &isos_from, i, c));
                faces.push(if k == 0 { Vec::new() } else { chains.faces_of(cat, c) });
            }
            chains.levels[k].relations = relations;
            chains.levels[k].faces = faces;
        }
        Ok(chains)
    }

    fn relations_of(&self, cat: &FinCategory, isos_from: &[Vec<usize>], i: usize, c: &Chain) -> Vec<Relation> {
        let k = c.len();
        let mut out = Vec::new();
        let find = |start: usize, arrows: &[usize]| self.find(start, arrows).expect("relation stays among chains");
        for position in 0..=k {
            let here = c.objects[position];
            for &g in &isos_from[here] {
                if g == cat.identity(here) {
                    continue;
                }
                let g_inv = cat.inverse(g).expect("iso has an inverse");
                let mut arrows = c.arrows.clone();
                if position > 0 {
                    arrows[position - 1] = cat.compose(g, arrows[position - 1]);
                }
                if position < k {
                    arrows[position] = cat.compose(arrows[position], g_inv);
                }
                let start = if position == 0 { cat.tgt(g) } else { c.start() };
                let act = (position == 0).then_some(g);
                out.push(Relation { first: i, second: find(start, &arrows), act });
            }
        }
        out
    }

    fn faces_of(&self, cat: &FinCategory, c: &Chain) -> Vec<Face> {
        let k = c.len();
        let find = |start: usize, arrows: &[usize]| self.find(start, arrows).expect("faces stay among chains");
        let mut out = Vec::with_capacity(k + 1);
        out.push(Face { sign: 1, target: find(c.objects[1], &c.arrows[1..]), act: Some(c.arrows[0]) });
        for i in 1..k {
            let mut arrows = c.arrows.clone();
            let composite = cat.compose(arrows[i], arrows[i - 1]);
            arrows.splice(i - 1..=i, [composite]);
            out.push(Face { sign: if i % 2 == 0 { 1 } else { -1 }, target: find(c.start(), &arrows), act: None });
        }
        out.push(Face {
            sign: if k.is_multiple_of(2) { 1 } else { -1 },
            target: find(c.start(), &c.arrows[..k - 1]),
            act: None,
        });
        out
    }
}

/// A finite EI category together with its opposite and cached chain data.
#[derive(Debug)]
pub struct Shape {
    cat: FinCategory,
    chains: OnceLock<Result<Arc<Chains>, HochError>>,
    opposite: OnceLock<Arc<Shape>>,
    /// For poset shapes, the morphism `a ≤ b`.
    order: Option<HashMap<(usize, usize), usize>>,
}

impl Shape {
    pub fn new(cat: FinCategory) -> Result<Arc<Self>, HochError> {
        if !cat.is_ei() {
            return Err(HochError::NotEi("some endomorphism is not invertible".into()));
        }
        Ok(Arc::new(Shape { cat, chains: OnceLock::new(), opposite: OnceLock::new(), order: None }))
    }

    /// The category with one morphism `a → b` for each `a ≤ b`.
    pub fn from_poset(p: &FinPoset) -> Arc<Self> {
        let n = p.len();
        let mut morphisms = Vec::new();
        let mut order = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                if p.leq(a, b) {
                    order.insert((a, b), morphisms.len());
                    morphisms.push((a, b, format!("{}<={}", p.label(a), p.label(b))));
                }
            }
        }
        let identities = (0..n).map(|a| order[&(a, a)]).collect();
        let ends: Vec<(usize, usize)> = morphisms.iter().map(|m| (m.0, m.1)).collect();
        let cat = FinCategory::new(p.labels().to_vec(), morphisms, identities, |g, f| order[&(ends[f].0, ends[g].1)])
            .expect("a poset is a category");
        Arc::new(Shape { cat, chains: OnceLock::new(), opposite: OnceLock::new(), order: Some(order) })
    }

    pub fn category(&self) -> &FinCategory {
        &self.cat
    }

    pub fn len(&self) -> usize {
        self.cat.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cat.is_empty()
    }

    /// For poset shapes, the unique morphism `a → b` when `a ≤ b`.
    pub fn arrow(&self, a: usize, b: usize) -> Option<usize> {
        match &self.order {
            Some(order) => order.get(&(a, b)).copied(),
            None => match self.cat.hom(a, b) {
                [f] => Some(*f),
                _ => None,
            },
        }
    }

    pub fn is_poset(&self) -> bool {
        self.order.is_some()
    }

    pub fn chains(&self) -> Result<Arc<Chains>, HochError> {
        self.chains.get_or_init(|| Chains::build(&self.cat).map(Arc::new)).clone()
    }

    /// The opposite category, with the same morphism indices.
    pub fn opposite(&self) -> Arc<Shape> {
        self.opposite
            .get_or_init(|| {
                let c = &self.cat;
                let morphisms =
                    (0..c.morphism_count()).map(|f| (c.tgt(f), c.src(f), c.morphism_label(f).to_string())).collect();
                let identities = (0..c.len()).map(|a| c.identity(a)).collect();
                let labels = (0..c.len()).map(|a| c.object_label(a).to_string()).collect();
                let cat = FinCategory::new(labels, morphisms, identities, |g, f| c.compose(f, g))
                    .expect("the opposite of a category is a category");
                let order = self.order.as_ref().map(|o| o.iter().map(|(&(a, b), &f)| ((b, a), f)).collect());
                Arc::new(Shape { cat, chains: OnceLock::new(), opposite: OnceLock::new(), order })
            })
            .clone()
    }

    /// The full subcategory on `objects` (in the given order), with the original
    /// index of each of its morphisms.
    pub fn full_subcategory(&self, objects: &[usize]) -> (Arc<Shape>, Vec<usize>) {
        let c = &self.cat;
        let mut morphisms = Vec::new();
        let mut embed = Vec::new();
        let mut local = HashMap::new();
        for (i, &a) in objects.iter().enumerate() {
            for (j, &b) in objects.iter().enumerate() {
                for &f in c.hom(a, b) {
                    local.insert(f, morphisms.len());
                    morphisms.push((i, j, c.morphism_label(f).to_string()));
                    embed.push(f);
                }
            }
        }
        let identities = objects.iter().map(|&a| local[&c.identity(a)]).collect();
        let labels = objects.iter().map(|&a| c.object_label(a).to_string()).collect();
        let cat = FinCategory::new(labels, morphisms, identities, |g, f| local[&c.compose(embed[g], embed[f])])
            .expect("a full subcategory is a category");
        let order = self.order.as_ref().map(|_| {
            (0..embed.len()).map(|m| ((cat.src(m), cat.tgt(m)), m)).collect::<HashMap<(usize, usize), usize>>()
        });
        (Arc::new(Shape { cat, chains: OnceLock::new(), opposite: OnceLock::new(), order }), embed)
    }
}
