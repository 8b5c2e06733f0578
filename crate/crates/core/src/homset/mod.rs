//! Hom-set preorders of finite categories and their stratified quotients.
//!
//! For `f, g ∈ hom(X, Y)`:
//! * right: `g ≤ f` iff `f = g ∘ s` for some `s ∈ End(X)`
//! * left: `g ≤ f` iff `f = t ∘ g` for some `t ∈ End(Y)`
//! * both: `g ≤ f` iff `f = t ∘ g ∘ s`

pub mod catalog;
pub mod category;
pub mod functor;
pub mod yoneda;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::order::{is_monotone, Poset, PosetStratifiedSpace, Preorder};
use crate::topology::{is_open_map, FiniteTopology, Subset};

pub use category::{CategoryError, CategorySpec, FiniteCategory, Morphism};
pub use functor::{FunctorError, SetFunctor, Variance};
pub use yoneda::{yoneda_image, yoneda_natural_transformations, ImageReport, YonedaError, YonedaReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
pub enum Side {
    R,
    L,
    LR,
}

/// Endomorphisms certifying `lesser ≤ greater`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub lesser: String,
    pub greater: String,
    /// precomposed endomorphism of the domain
    pub s: Option<String>,
    /// postcomposed endomorphism of the codomain
    pub t: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomPreorder {
    pub source: usize,
    pub target: usize,
    pub side: Side,
    /// Morphism indices of `hom(source, target)`, in carrier order.
    pub morphisms: Vec<usize>,
    pub preorder: Preorder,
    /// First witness found for every related pair, row-major.
    pub witnesses: Vec<Witness>,
}

pub fn hom_preorder(c: &FiniteCategory, x: usize, y: usize, side: Side) -> Result<HomPreorder, CategoryError> {
    let k = c.objects().len();
    for o in [x, y] {
        if o >= k {
            return Err(CategoryError::UnknownObject(format!("#{o}")));
        }
    }
    let hom = c.hom(x, y).to_vec();
    let (id_x, id_y) = (c.id(x), c.id(y));
    let ss: Vec<usize> = match side {
        Side::L => vec![id_x],
        _ => c.hom(x, x).to_vec(),
    };
    let ts: Vec<usize> = match side {
        Side::R => vec![id_y],
        _ => c.hom(y, y).to_vec(),
    };
    let n = hom.len();
    let mut up = vec![FixedBitSet::with_capacity(n); n];
    let mut witnesses = Vec::new();
    for (i, &g) in hom.iter().enumerate() {
        for (j, &f) in hom.iter().enumerate() {
            let found = ss
                .iter()
                .flat_map(|&s| ts.iter().map(move |&t| (s, t)))
                .find(|&(s, t)| c.comp(t, c.comp(g, s)) == f);
            if let Some((s, t)) = found {
                up[i].insert(j);
                witnesses.push(Witness {
                    lesser: c.label(g).to_owned(),
                    greater: c.label(f).to_owned(),
                    s: (side != Side::L).then(|| c.label(s).to_owned()),
                    t: (side != Side::R).then(|| c.label(t).to_owned()),
                });
            }
        }
    }
    let labels = hom.iter().map(|&f| c.label(f).to_owned()).collect();
    let preorder = Preorder::from_relation(labels, up).expect("witness relations are reflexive and transitive");
    Ok(HomPreorder { source: x, target: y, side, morphisms: hom, preorder, witnesses })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomStratificationReport {
    pub classes: Vec<Vec<String>>,
    pub class_labels: Vec<String>,
    pub quotient_pairs: Vec<(String, String)>,
    pub projection_open: bool,
    pub classes_locally_closed: bool,
    pub order_matches_closure: bool,
}

impl HomStratificationReport {
    pub fn all_hold(&self) -> bool {
        self.projection_open && self.classes_locally_closed && self.order_matches_closure
    }
}

#[derive(Debug, Clone)]
pub struct HomStratification {
    pub hom: HomPreorder,
    pub stratified: PosetStratifiedSpace,
    pub report: HomStratificationReport,
}

/// The Alexandroff space of a hom preorder stratified over its quotient poset.
pub fn hom_stratified(c: &FiniteCategory, x: usize, y: usize, side: Side) -> Result<HomStratification, CategoryError> {
    let hom = hom_preorder(c, x, y, side)?;
    if hom.morphisms.is_empty() {
        return Err(CategoryError::EmptyHomSet(c.objects()[x].clone(), c.objects()[y].clone()));
    }
    let space = FiniteTopology::alexandroff(&hom.preorder);
    let (poset, projection) = hom.preorder.quotient();
    let strata_space = FiniteTopology::alexandroff(&poset);
    let map = projection.assignment().to_vec();
    let projection_open = is_open_map(&map, &space, &strata_space);
    let stratified = PosetStratifiedSpace::new(space.clone(), poset.clone(), map)
        .expect("projection onto the quotient is continuous");
    let fibers: Vec<Subset> = (0..poset.len()).map(|p| stratified.fiber(p)).collect();
    let classes_locally_closed = fibers.iter().all(|f| space.is_locally_closed(f));
    let order_matches_closure = (0..poset.len()).all(|a| {
        (0..poset.len()).all(|b| poset.le(a, b) == fibers[a].is_subset(&space.closure(&fibers[b])))
    });
    let report = HomStratificationReport {
        classes: fibers.iter().map(|f| space.names(f)).collect(),
        class_labels: poset.labels().to_vec(),
        quotient_pairs: poset
            .strict_pairs()
            .into_iter()
            .map(|(a, b)| (poset.label(a).to_owned(), poset.label(b).to_owned()))
            .collect(),
        projection_open,
        classes_locally_closed,
        order_matches_closure,
    };
    Ok(HomStratification { hom, stratified, report })
}

/// Which hom functor into stratified spaces is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StSide {
    /// `hom(anchor, -)` with the right preorder, acting by postcomposition.
    RCovariant,
    /// `hom(-, anchor)` with the left preorder, acting by precomposition.
    LContravariant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareReport {
    pub morphism: String,
    pub source_hom: String,
    pub target_hom: String,
    pub monotone: bool,
    pub descends: bool,
    pub quotient_monotone: bool,
    pub commutes: bool,
    /// Induced map on quotient classes, when it descends.
    pub class_map: Vec<(String, String)>,
}

impl SquareReport {
    pub fn holds(&self) -> bool {
        self.monotone && self.descends && self.quotient_monotone && self.commutes
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StFunctorReport {
    pub anchor: String,
    pub side: StSide,
    pub squares: Vec<SquareReport>,
    pub identities_preserved: bool,
    pub composition_preserved: bool,
}

impl StFunctorReport {
    pub fn all_pass(&self) -> bool {
        self.identities_preserved && self.composition_preserved && self.squares.iter().all(SquareReport::holds)
    }
}

struct HomData {
    hom: HomPreorder,
    quotient: Poset,
    class_of: Vec<usize>,
}

/// Element map and class map induced by one morphism.
struct Induced {
    elements: Vec<usize>,
    classes: Option<Vec<usize>>,
}

pub fn st_functor_check(c: &FiniteCategory, anchor: usize, side: StSide) -> Result<StFunctorReport, CategoryError> {
    let k = c.objects().len();
    if anchor >= k {
        return Err(CategoryError::UnknownObject(format!("#{anchor}")));
    }
    let data: Vec<HomData> = (0..k)
        .map(|z| {
            let hom = match side {
                StSide::RCovariant => hom_preorder(c, anchor, z, Side::R),
                StSide::LContravariant => hom_preorder(c, z, anchor, Side::L),
            }?;
            let (quotient, projection) = hom.preorder.quotient();
            let class_of = projection.assignment().to_vec();
            Ok(HomData { hom, quotient, class_of })
        })
        .collect::<Result<_, CategoryError>>()?;
    let hom_name = |z: usize| match side {
        StSide::RCovariant => format!("hom({}, {})", c.objects()[anchor], c.objects()[z]),
        StSide::LContravariant => format!("hom({}, {})", c.objects()[z], c.objects()[anchor]),
    };
    // f: X → Y acts hom(A, X) → hom(A, Y) or hom(Y, A) → hom(X, A)
    let ends = |f: usize| match side {
        StSide::RCovariant => (c.dom(f), c.cod(f)),
        StSide::LContravariant => (c.cod(f), c.dom(f)),
    };
    let act = |f: usize, g: usize| match side {
        StSide::RCovariant => c.comp(f, g),
        StSide::LContravariant => c.comp(g, f),
    };

    let m = c.morphisms().len();
    let mut squares = Vec::with_capacity(m);
    let mut induced = Vec::with_capacity(m);
    for f in 0..m {
        let (from, to) = ends(f);
        let (src, tgt) = (&data[from], &data[to]);
        let elements: Vec<usize> = src
            .hom
            .morphisms
            .iter()
            .map(|&g| {
                let h = act(f, g);
                tgt.hom.morphisms.iter().position(|&x| x == h).expect("composite lies in the target hom-set")
            })
            .collect();
        let monotone = is_monotone(&elements, &src.hom.preorder, &tgt.hom.preorder).expect("valid element map");
        let mut classes = vec![usize::MAX; src.quotient.len()];
        let mut descends = true;
        for (i, &e) in elements.iter().enumerate() {
            let image = tgt.class_of[e];
            let slot = &mut classes[src.class_of[i]];
            if *slot == usize::MAX {
                *slot = image;
            } else if *slot != image {
                descends = false;
            }
        }
        let (quotient_monotone, commutes, class_map, classes) = if descends {
            let qm = is_monotone(&classes, &src.quotient, &tgt.quotient).expect("valid class map");
            let commutes = elements.iter().enumerate().all(|(i, &e)| tgt.class_of[e] == classes[src.class_of[i]]);
            let named = classes
                .iter()
                .enumerate()
                .map(|(a, &b)| (src.quotient.label(a).to_owned(), tgt.quotient.label(b).to_owned()))
                .collect();
            (qm, commutes, named, Some(classes))
        } else {
            (false, false, Vec::new(), None)
        };
        squares.push(SquareReport {
            morphism: c.label(f).to_owned(),
            source_hom: hom_name(from),
            target_hom: hom_name(to),
            monotone,
            descends,
            quotient_monotone,
            commutes,
            class_map,
        });
        induced.push(Induced { elements, classes });
    }

    let identities_preserved = (0..k).all(|z| {
        let ind = &induced[c.id(z)];
        ind.elements.iter().enumerate().all(|(i, &e)| i == e)
            && ind.classes.as_ref().is_some_and(|cl| cl.iter().enumerate().all(|(i, &e)| i == e))
    });

    // covariant: (h∘f)_* = h_* ∘ f_*; contravariant: (h∘f)^* = f^* ∘ h^*
    let mut composition_preserved = true;
    for f in 0..m {
        for &h in (0..k).flat_map(|z| c.hom(c.cod(f), z)) {
            let hf = c.comp(h, f);
            let (first, second) = match side {
                StSide::RCovariant => (f, h),
                StSide::LContravariant => (h, f),
            };
            let (a, b, ab) = (&induced[first], &induced[second], &induced[hf]);
            let elements_ok = (0..ab.elements.len()).all(|i| ab.elements[i] == b.elements[a.elements[i]]);
            let classes_ok = match (&a.classes, &b.classes, &ab.classes) {
                (Some(a), Some(b), Some(ab)) => (0..ab.len()).all(|i| ab[i] == b[a[i]]),
                _ => false,
            };
            composition_preserved &= elements_ok && classes_ok;
        }
    }

    Ok(StFunctorReport {
        anchor: c.objects()[anchor].clone(),
        side,
        squares,
        identities_preserved,
        composition_preserved,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) use super::catalog::{arrow, c2, idempotent};

    fn related(h: &HomPreorder, c: &FiniteCategory, g: &str, f: &str) -> bool {
        let (gi, fi) = (c.morphism_index(g).unwrap(), c.morphism_index(f).unwrap());
        let pos = |x| h.morphisms.iter().position(|&m| m == x).unwrap();
        h.preorder.le(pos(gi), pos(fi))
    }

    /// Relation straight from the definition, searching every endomorphism pair.
    fn oracle(c: &FiniteCategory, x: usize, y: usize, side: Side, g: usize, f: usize) -> bool {
        let ss = c.hom(x, x);
        let ts = c.hom(y, y);
        ss.iter().any(|&s| {
            ts.iter().any(|&t| {
                let ok_s = side != Side::L || s == c.id(x);
                let ok_t = side != Side::R || t == c.id(y);
                ok_s && ok_t && c.comp(t, c.comp(g, s)) == f
            })
        })
    }

    pub(crate) fn shipped() -> Vec<FiniteCategory> {
        catalog::shipped().into_iter().map(|(_, c)| c).collect()
    }

    #[test]
    fn monoid_examples() {
        let c = idempotent();
        let h = hom_preorder(&c, 0, 0, Side::R).unwrap();
        assert!(related(&h, &c, "1", "e"));
        assert!(!related(&h, &c, "e", "1"));
        let g = c2();
        let h = hom_preorder(&g, 0, 0, Side::R).unwrap();
        assert!(related(&h, &g, "1", "g") && related(&h, &g, "g", "1"));
        assert!(h.witnesses.iter().all(|w| w.t.is_none() && w.s.is_some()));
    }

    #[test]
    fn matches_definition_and_lr_contains_both() {
        for c in shipped() {
            let k = c.objects().len();
            for x in 0..k {
                for y in 0..k {
                    let hs: Vec<HomPreorder> =
                        [Side::R, Side::L, Side::LR].iter().map(|&s| hom_preorder(&c, x, y, s).unwrap()).collect();
                    for (side, h) in [Side::R, Side::L, Side::LR].iter().zip(&hs) {
                        for (i, &g) in h.morphisms.iter().enumerate() {
                            for (j, &f) in h.morphisms.iter().enumerate() {
                                assert_eq!(h.preorder.le(i, j), oracle(&c, x, y, *side, g, f));
                            }
                        }
                    }
                    for i in 0..hs[0].morphisms.len() {
                        for j in 0..hs[0].morphisms.len() {
                            if hs[0].preorder.le(i, j) || hs[1].preorder.le(i, j) {
                                assert!(hs[2].preorder.le(i, j));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn stratified_trio_on_shipped_categories() {
        for c in shipped() {
            let k = c.objects().len();
            for x in 0..k {
                for y in 0..k {
                    for side in [Side::R, Side::L, Side::LR] {
                        match hom_stratified(&c, x, y, side) {
                            Ok(s) => assert!(s.report.all_hold()),
                            Err(CategoryError::EmptyHomSet(..)) => assert!(c.hom(x, y).is_empty()),
                            Err(e) => panic!("{e}"),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn stratified_examples() {
        let s = hom_stratified(&idempotent(), 0, 0, Side::R).unwrap();
        assert_eq!(s.report.quotient_pairs, vec![("[1]".to_owned(), "[e]".to_owned())]);
        let s = hom_stratified(&c2(), 0, 0, Side::R).unwrap();
        assert_eq!(s.report.classes, vec![vec!["1".to_owned(), "g".to_owned()]]);
        assert!(matches!(hom_stratified(&arrow(), 1, 0, Side::R), Err(CategoryError::EmptyHomSet(..))));
    }

    #[test]
    fn functor_squares_commute() {
        for c in shipped() {
            for anchor in 0..c.objects().len() {
                for side in [StSide::RCovariant, StSide::LContravariant] {
                    let r = st_functor_check(&c, anchor, side).unwrap();
                    assert!(r.all_pass(), "{r:?}");
                }
            }
        }
        let r = st_functor_check(&arrow(), 0, StSide::RCovariant).unwrap();
        let u = r.squares.iter().find(|s| s.morphism == "u").unwrap();
        assert_eq!(u.class_map, vec![("[1A]".to_owned(), "[u]".to_owned())]);
    }

    #[test]
    fn transformation_monoids_are_small() {
        for c in shipped() {
            assert!(c.morphisms().len() <= 6, "{}", c.morphisms().len());
        }
    }
}
