use std::sync::Arc;

use crate::error::LatticeError;
use crate::lattice::{Complementation, FinLattice};
use crate::maps::{check_galois, GaloisCheck, MonotoneMap};

/// The smashing subposet `L_x` (the image of `x∧−`) with its three structure maps.
#[derive(Clone, Debug)]
pub struct SmashLocalization {
    pub element: usize,
    pub local: FinLattice,
    /// Position in `L` of each element of `L_x`.
    pub embed: Vec<usize>,
    /// `x∧−: L → L_x`.
    pub project: MonotoneMap,
    /// `∅∨−: L_x → L`, the plain inclusion.
    pub incl_bot: MonotoneMap,
    /// `x^c∨−: L_x → L`.
    pub incl_comp: MonotoneMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmashAdjunctions {
    /// `incl_bot ⊣ project`.
    pub bot_project: GaloisCheck,
    /// `project ⊣ incl_comp`.
    pub project_comp: GaloisCheck,
    pub incl_bot_full: bool,
    pub incl_comp_full: bool,
}

impl SmashAdjunctions {
    pub fn all_hold(&self) -> bool {
        self.bot_project.holds && self.project_comp.holds && self.incl_bot_full && self.incl_comp_full
    }
}

pub fn smash_localization(l: &FinLattice, comp: &Complementation, x: usize) -> Result<SmashLocalization, LatticeError> {
    let (local, embed) = l.down_lattice(x);
    let mut pos = vec![usize::MAX; l.len()];
    for (i, &e) in embed.iter().enumerate() {
        pos[e] = i;
    }
    let xc = comp.comp[x];
    let lp = l.poset().clone();
    let kp = local.poset().clone();
    let project = MonotoneMap::new(lp.clone(), kp.clone(), l.elements().map(|a| pos[l.meet(x, a)]).collect())?;
    let incl_bot = MonotoneMap::new(kp.clone(), lp.clone(), embed.clone())?;
    let incl_comp = MonotoneMap::new(kp, lp, embed.iter().map(|&y| l.join(xc, y)).collect())?;
    Ok(SmashLocalization { element: x, local, embed, project, incl_bot, incl_comp })
}

impl SmashLocalization {
    pub fn check_adjunctions(&self) -> Result<SmashAdjunctions, LatticeError> {
        Ok(SmashAdjunctions {
            bot_project: check_galois(&self.incl_bot, &self.project)?,
            project_comp: check_galois(&self.project, &self.incl_comp)?,
            incl_bot_full: self.incl_bot.is_injective() && self.incl_bot.is_full(),
            incl_comp_full: self.incl_comp.is_injective() && self.incl_comp.is_full(),
        })
    }
}

/// The pair `x^c∧− ⊣ x∨−` on `L`, returned as `(left, right)`.
pub fn meet_join_pair(
    l: &FinLattice,
    comp: &Complementation,
    x: usize,
) -> Result<(MonotoneMap, MonotoneMap), LatticeError> {
    let p = l.poset().clone();
    let xc = comp.comp[x];
    let left = MonotoneMap::new(p.clone(), p.clone(), l.elements().map(|a| l.meet(xc, a)).collect())?;
    let right = MonotoneMap::new(p.clone(), p, l.elements().map(|a| l.join(x, a)).collect())?;
    Ok((left, right))
}

/// `L ≅ L_x × L_{x^c}` via `a ↦ (x∧a, x^c∧a)` and `(u, v) ↦ u∨v`.
#[derive(Clone, Debug)]
pub struct ComplementDecomposition {
    pub left: FinLattice,
    pub left_embed: Vec<usize>,
    pub right: FinLattice,
    pub right_embed: Vec<usize>,
    pub fwd: MonotoneMap,
    pub bwd: MonotoneMap,
}

pub fn complement_decomposition(
    l: &FinLattice,
    comp: &Complementation,
    x: usize,
) -> Result<ComplementDecomposition, LatticeError> {
    let xc = comp.comp[x];
    let (left, left_embed) = l.down_lattice(x);
    let (right, right_embed) = l.down_lattice(xc);
    let product = Arc::new(left.poset().product(right.poset())?);
    let locate = |embed: &[usize], e: usize| embed.iter().position(|&y| y == e).expect("meet lands in down-set");
    let m = right.len();
    let fwd_map =
        l.elements().map(|a| locate(&left_embed, l.meet(x, a)) * m + locate(&right_embed, l.meet(xc, a))).collect();
    let bwd_map = (0..product.len()).map(|p| l.join(left_embed[p / m], right_embed[p % m])).collect();
    let fwd = MonotoneMap::new(l.poset().clone(), product.clone(), fwd_map)?;
    let bwd = MonotoneMap::new(product, l.poset().clone(), bwd_map)?;
    Ok(ComplementDecomposition { left, left_embed, right, right_embed, fwd, bwd })
}

impl ComplementDecomposition {
    /// Both composites are identities elementwise.
    pub fn round_trips(&self) -> bool {
        let there_back = (0..self.fwd.source().len()).all(|a| self.bwd.apply(self.fwd.apply(a)) == a);
        let back_there = (0..self.bwd.source().len()).all(|p| self.fwd.apply(self.bwd.apply(p)) == p);
        there_back && back_there
    }
}
