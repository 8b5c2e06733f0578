//! Natural transformations out of a representable functor, and the image
//! transformation into the power-set functor.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use super::category::FiniteCategory;
use super::functor::{SetFunctor, Variance};
use super::{hom_preorder, Side};

/// Default bound on the number of candidate component families.
pub const DEFAULT_FAMILY_CAP: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum YonedaError {
    #[error("a contravariant functor is required")]
    NotContravariant,
    #[error("unknown object index {0}")]
    UnknownObject(usize),
    #[error("{families} candidate families exceed the cap of {cap}")]
    CapExceeded { families: String, cap: u128 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Transformation {
    /// `(object, morphism into the anchor, image element)` for every component entry.
    pub components: Vec<(String, String, String)>,
    pub at_identity: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct YonedaReport {
    pub anchor: String,
    /// Product of the component function-space sizes, before pruning.
    pub candidate_families: String,
    pub transformations: Vec<Transformation>,
    pub anchor_set_size: usize,
    /// `τ ↦ τ(id)` is a bijection onto the anchor's set.
    pub bijective: bool,
    /// Every `τ` agrees with `f ↦ F(f)(τ(id))`.
    pub inverse_matches: bool,
}

impl YonedaReport {
    pub fn all_pass(&self) -> bool {
        self.bijective && self.inverse_matches && self.transformations.len() == self.anchor_set_size
    }
}

/// Enumerates every natural transformation `hom(-, a) → F`.
pub fn yoneda_natural_transformations(
    c: &FiniteCategory,
    f: &SetFunctor,
    a: usize,
    cap: u128,
) -> Result<YonedaReport, YonedaError> {
    if f.variance() != Variance::Contravariant {
        return Err(YonedaError::NotContravariant);
    }
    let k = c.objects().len();
    if a >= k {
        return Err(YonedaError::UnknownObject(a));
    }
    // one slot per (X, h) with h ∈ hom(X, a)
    let slots: Vec<(usize, usize)> = (0..k).flat_map(|x| c.hom(x, a).iter().map(move |&h| (x, h))).collect();
    let families = slots
        .iter()
        .try_fold(1u128, |acc, &(x, _)| acc.checked_mul(f.set(x).len() as u128));
    let families_text = families.map_or_else(|| "overflow".to_owned(), |n| n.to_string());
    match families {
        Some(n) if n <= cap => {}
        _ => return Err(YonedaError::CapExceeded { families: families_text, cap }),
    }
    let slot_of = |h: usize| slots.iter().position(|&(_, m)| m == h).expect("slot for every morphism into a");

    // naturality: for u: X' → X and h ∈ hom(X, a), τ(h ∘ u) = F(u)(τ(h));
    // each constraint is checked once both slots are assigned
    let mut constraints: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); slots.len()];
    for (i, &(x, h)) in slots.iter().enumerate() {
        for &u in (0..k).flat_map(|x2| c.hom(x2, x)) {
            let j = slot_of(c.comp(h, u));
            constraints[i.max(j)].push((i, u, j));
        }
    }

    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut current = vec![0usize; slots.len()];
    search(0, &slots, f, &constraints, &mut current, &mut found);

    let id_slot = slot_of(c.id(a));
    let anchor_set_size = f.set(a).len();
    let values: BTreeSet<usize> = found.iter().map(|t| t[id_slot]).collect();
    let bijective = values.len() == found.len() && values.len() == anchor_set_size;
    let inverse_matches = found
        .iter()
        .all(|t| slots.iter().enumerate().all(|(i, &(_, h))| t[i] == f.apply(h, t[id_slot])));

    let transformations = found
        .iter()
        .map(|t| Transformation {
            components: slots
                .iter()
                .enumerate()
                .map(|(i, &(x, h))| (c.objects()[x].clone(), c.label(h).to_owned(), f.set(x)[t[i]].clone()))
                .collect(),
            at_identity: f.set(a)[t[id_slot]].clone(),
        })
        .collect();
    Ok(YonedaReport {
        anchor: c.objects()[a].clone(),
        candidate_families: families_text,
        transformations,
        anchor_set_size,
        bijective,
        inverse_matches,
    })
}

fn search(
    depth: usize,
    slots: &[(usize, usize)],
    f: &SetFunctor,
    constraints: &[Vec<(usize, usize, usize)>],
    current: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
) {
    if depth == slots.len() {
        found.push(current.clone());
        return;
    }
    for v in 0..f.set(slots[depth].0).len() {
        current[depth] = v;
        if constraints[depth].iter().all(|&(i, u, j)| current[j] == f.apply(u, current[i])) {
            search(depth + 1, slots, f, constraints, current, found);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImageReport {
    pub anchor: String,
    pub object: String,
    /// `(f, F(f)(F(anchor)))` for every `f ∈ hom(object, anchor)`.
    pub images: Vec<(String, Vec<String>)>,
    /// `Im(h ∘ u) = F(u)(Im(h))` for every composable `u`, `h` with `h` into the anchor.
    pub naturality_holds: bool,
    /// `g ≤_L f` implies `Im(f) ⊆ Im(g)` on `hom(object, anchor)`.
    pub reverse_inclusion_holds: bool,
    /// `g ≤_L f` implies `Im(g) ⊆ Im(f)` on `hom(object, anchor)`.
    pub forward_inclusion_holds: bool,
    pub note: String,
}

fn image_of(f: &SetFunctor, m: usize, domain: impl Iterator<Item = usize>) -> BTreeSet<usize> {
    domain.map(|e| f.apply(m, e)).collect()
}

/// `Im(f) = F(f)(F(a))` for every `f: x → a`, with naturality and order checks.
pub fn yoneda_image(c: &FiniteCategory, f: &SetFunctor, a: usize, x: usize) -> Result<ImageReport, YonedaError> {
    if f.variance() != Variance::Contravariant {
        return Err(YonedaError::NotContravariant);
    }
    let k = c.objects().len();
    for o in [a, x] {
        if o >= k {
            return Err(YonedaError::UnknownObject(o));
        }
    }
    let full_a = || 0..f.set(a).len();
    let im = |h: usize| image_of(f, h, full_a());

    let naturality_holds = (0..k).all(|y| {
        c.hom(y, a).iter().all(|&h| {
            let ih = im(h);
            (0..k).flat_map(|z| c.hom(z, y)).all(|&u| im(c.comp(h, u)) == image_of(f, u, ih.iter().copied()))
        })
    });

    let hom = hom_preorder(c, x, a, Side::L).expect("objects checked");
    let images: Vec<BTreeSet<usize>> = hom.morphisms.iter().map(|&h| im(h)).collect();
    let n = images.len();
    let pairs = || (0..n).flat_map(|g| (0..n).map(move |h| (g, h))).filter(|&(g, h)| hom.preorder.le(g, h));
    let reverse_inclusion_holds = pairs().all(|(g, h)| images[h].is_subset(&images[g]));
    let forward_inclusion_holds = pairs().all(|(g, h)| images[g].is_subset(&images[h]));
    let note = if forward_inclusion_holds {
        "g ≤_L f gives Im(f) ⊆ Im(g); the opposite inclusion also holds here".to_owned()
    } else {
        "g ≤_L f gives Im(f) ⊆ Im(g); the opposite inclusion fails on this instance".to_owned()
    };

    Ok(ImageReport {
        anchor: c.objects()[a].clone(),
        object: c.objects()[x].clone(),
        images: hom
            .morphisms
            .iter()
            .zip(&images)
            .map(|(&h, s)| (c.label(h).to_owned(), s.iter().map(|&e| f.set(x)[e].clone()).collect()))
            .collect(),
        naturality_holds,
        reverse_inclusion_holds,
        forward_inclusion_holds,
        note,
    })
}
