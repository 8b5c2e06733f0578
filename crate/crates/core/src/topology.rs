//! Finite topological spaces.
//!
//! Every topology on a finite set is Alexandroff, so a space is stored as its
//! minimal open neighbourhoods `U_x`. The full family of opens is the set of
//! up-sets of the specialization preorder and is only enumerated on request.

use std::cmp::Ordering;
use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::order::{cartesian_indices, index_labels, tuple_label, OrderError, Preorder};

/// Largest carrier whose open family may be enumerated explicitly.
pub const ENUMERATION_CAP: usize = 20;

pub type Subset = FixedBitSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("family does not contain the empty set")]
    MissingEmpty,
    #[error("family does not contain the whole carrier")]
    MissingCarrier,
    #[error("open set {0:?} listed twice")]
    DuplicateOpen(Vec<String>),
    #[error("union of {0:?} and {1:?} is not in the family")]
    UnionEscape(Vec<String>, Vec<String>),
    #[error("intersection of {0:?} and {1:?} is not in the family")]
    IntersectionEscape(Vec<String>, Vec<String>),
    #[error("carrier of size {0} is too large to enumerate opens (limit {ENUMERATION_CAP})")]
    TooLargeToEnumerate(usize),
    #[error("subset is not contained in the carrier")]
    NotASubset,
}

/// A topology on an ordered, labelled finite carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    labels: Vec<String>,
    min_open: Vec<Subset>,
}

/// Orders subsets by size, then by their sorted index lists.
pub fn canonical_cmp(a: &Subset, b: &Subset) -> Ordering {
    a.count_ones(..)
        .cmp(&b.count_ones(..))
        .then_with(|| a.ones().cmp(b.ones()))
}

impl FiniteTopology {
    /// Validates an explicit family of open sets.
    pub fn from_opens(labels: Vec<String>, family: Vec<Subset>) -> Result<Self, TopologyError> {
        index_labels(&labels)?;
        let n = labels.len();
        let mut family = family;
        for s in &mut family {
            if s.ones().any(|i| i >= n) {
                return Err(TopologyError::NotASubset);
            }
            *s = s.ones().collect_set(n);
        }
        let names = |s: &Subset| s.ones().map(|i| labels[i].clone()).collect::<Vec<_>>();
        let mut seen = HashSet::with_capacity(family.len());
        for s in &family {
            if !seen.insert(s.clone()) {
                return Err(TopologyError::DuplicateOpen(names(s)));
            }
        }
        let full = full_set(n);
        if !seen.contains(&Subset::with_capacity(n)) {
            return Err(TopologyError::MissingEmpty);
        }
        if !seen.contains(&full) {
            return Err(TopologyError::MissingCarrier);
        }
        for (i, a) in family.iter().enumerate() {
            for b in &family[i + 1..] {
                let mut u = a.clone();
                u.union_with(b);
                if !seen.contains(&u) {
                    return Err(TopologyError::UnionEscape(names(a), names(b)));
                }
                let mut m = a.clone();
                m.intersect_with(b);
                if !seen.contains(&m) {
                    return Err(TopologyError::IntersectionEscape(names(a), names(b)));
                }
            }
        }
        let min_open = (0..n)
            .map(|x| {
                family
                    .iter()
                    .filter(|s| s.contains(x))
                    .fold(full.clone(), |mut acc, s| {
                        acc.intersect_with(s);
                        acc
                    })
            })
            .collect();
        Ok(FiniteTopology { labels, min_open })
    }

    /// Same as [`from_opens`](Self::from_opens) with opens given by label.
    pub fn from_labelled_opens<S: AsRef<str>>(labels: &[S], family: &[Vec<S>]) -> Result<Self, TopologyError> {
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_owned()).collect();
        let index = index_labels(&labels)?;
        let family = family
            .iter()
            .map(|open| {
                let mut s = Subset::with_capacity(labels.len());
                for l in open {
                    let i = index
                        .get(l.as_ref())
                        .ok_or_else(|| OrderError::UnknownLabel(l.as_ref().to_owned()))?;
                    s.insert(*i);
                }
                Ok(s)
            })
            .collect::<Result<Vec<_>, TopologyError>>()?;
        Self::from_opens(labels, family)
    }

    /// Alexandroff topology of a preorder: the opens are its up-sets.
    pub fn alexandroff(p: &Preorder) -> Self {
        FiniteTopology {
            labels: p.labels().to_vec(),
            min_open: p.rows().to_vec(),
        }
    }

    /// Specialization preorder: `x <= y` iff `x` lies in the closure of `{y}`.
    pub fn specialization_preorder(&self) -> Preorder {
        let n = self.len();
        let point_closures: Vec<Subset> = (0..n).map(|y| self.closure(&singleton(n, y))).collect();
        let rows: Vec<Subset> = (0..n)
            .map(|x| {
                let row = (0..n).filter(|&y| point_closures[y].contains(x)).collect_set(n);
                debug_assert_eq!(row, self.min_open[x], "closure and neighbourhood characterizations differ");
                row
            })
            .collect();
        Preorder::from_relation(self.labels.clone(), rows).expect("specialization order is a preorder")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Smallest open set containing `x`.
    pub fn minimal_open(&self, x: usize) -> &Subset {
        &self.min_open[x]
    }

    pub fn subset<S: AsRef<str>>(&self, members: &[S]) -> Result<Subset, TopologyError> {
        let mut s = Subset::with_capacity(self.len());
        for m in members {
            let i = self
                .index_of(m.as_ref())
                .ok_or_else(|| OrderError::UnknownLabel(m.as_ref().to_owned()))?;
            s.insert(i);
        }
        Ok(s)
    }

    pub fn names(&self, s: &Subset) -> Vec<String> {
        s.ones().map(|i| self.labels[i].clone()).collect()
    }

    pub fn is_open(&self, s: &Subset) -> bool {
        s.ones().all(|x| self.min_open[x].is_subset(s))
    }

    pub fn is_closed(&self, s: &Subset) -> bool {
        self.is_open(&complement(s, self.len()))
    }

    /// Smallest open set containing `s`.
    pub fn open_hull(&self, s: &Subset) -> Subset {
        let mut u = Subset::with_capacity(self.len());
        for x in s.ones() {
            u.union_with(&self.min_open[x]);
        }
        u
    }

    /// Largest open set inside `s`.
    pub fn interior(&self, s: &Subset) -> Subset {
        (0..self.len()).filter(|&x| self.min_open[x].is_subset(s)).collect_set(self.len())
    }

    /// Smallest closed set containing `s`: points whose minimal neighbourhood meets `s`.
    pub fn closure(&self, s: &Subset) -> Subset {
        let mut c = Subset::with_capacity(self.len());
        for x in 0..self.len() {
            if !self.min_open[x].is_disjoint(s) {
                c.insert(x);
            }
        }
        c
    }

    pub fn try_closure(&self, s: &Subset) -> Result<Subset, TopologyError> {
        if s.ones().any(|i| i >= self.len()) {
            return Err(TopologyError::NotASubset);
        }
        Ok(self.closure(&s.ones().collect_set(self.len())))
    }

    /// `s` is the intersection of an open and a closed set. Uses the fact
    /// that `s` is locally closed iff `s = closure(s) ∩ open_hull(s)`.
    pub fn is_locally_closed(&self, s: &Subset) -> bool {
        let mut m = self.closure(s);
        m.intersect_with(&self.open_hull(s));
        m == *s
    }

    /// All open sets in canonical order (size, then lexicographic indices).
    pub fn opens(&self) -> Result<Vec<Subset>, TopologyError> {
        let n = self.len();
        if n > ENUMERATION_CAP {
            return Err(TopologyError::TooLargeToEnumerate(n));
        }
        let mut out = Vec::new();
        let mut include = Subset::with_capacity(n);
        let mut exclude = Subset::with_capacity(n);
        self.enumerate_up_sets(0, &mut include, &mut exclude, &mut out);
        out.sort_by(canonical_cmp);
        Ok(out)
    }

    fn enumerate_up_sets(&self, x: usize, include: &mut Subset, exclude: &mut Subset, out: &mut Vec<Subset>) {
        let n = self.len();
        if x == n {
            out.push(include.clone());
            return;
        }
        if include.contains(x) || exclude.contains(x) {
            self.enumerate_up_sets(x + 1, include, exclude, out);
            return;
        }
        // take x: its whole neighbourhood comes along
        if self.min_open[x].is_disjoint(exclude) {
            let saved = include.clone();
            include.union_with(&self.min_open[x]);
            self.enumerate_up_sets(x + 1, include, exclude, out);
            *include = saved;
        }
        // drop x: so must every point specializing to it
        let down: Subset = (0..n).filter(|&y| self.min_open[y].contains(x)).collect_set(n);
        if down.is_disjoint(include) {
            let saved = exclude.clone();
            exclude.union_with(&down);
            self.enumerate_up_sets(x + 1, include, exclude, out);
            *exclude = saved;
        }
    }

    /// Topology whose opens are the closed sets of `self`.
    pub fn dual(&self) -> FiniteTopology {
        FiniteTopology::alexandroff(&self.specialization_preorder().dual())
    }

    /// Product topology via the basis of products of minimal neighbourhoods.
    /// Points are labelled `(l1,...,ln)`.
    pub fn product(factors: &[&FiniteTopology]) -> Result<FiniteTopology, OrderError> {
        let orders: Vec<Preorder> = factors.iter().map(|t| t.specialization_preorder()).collect();
        let refs: Vec<&Preorder> = orders.iter().collect();
        Ok(FiniteTopology::alexandroff(&Preorder::product(&refs)?))
    }

    /// Product of two spaces computed as all unions of rectangles `U × V`.
    /// Exponential; meant for small spaces and as a check on [`product`](Self::product).
    pub fn product_by_rectangles(a: &FiniteTopology, b: &FiniteTopology) -> Result<FiniteTopology, TopologyError> {
        let (oa, ob) = (a.opens()?, b.opens()?);
        let tuples = cartesian_indices(&[a.len(), b.len()]);
        let n = tuples.len();
        if n > ENUMERATION_CAP {
            return Err(TopologyError::TooLargeToEnumerate(n));
        }
        let labels: Vec<String> = tuples
            .iter()
            .map(|t| tuple_label([a.labels[t[0]].as_str(), b.labels[t[1]].as_str()].into_iter()))
            .collect();
        let mut rects: Vec<Subset> = Vec::new();
        for u in &oa {
            for v in &ob {
                let r: Subset = tuples
                    .iter()
                    .enumerate()
                    .filter(|(_, t)| u.contains(t[0]) && v.contains(t[1]))
                    .map(|(i, _)| i)
                    .collect_set(n);
                rects.push(r);
            }
        }
        let mut family: HashSet<Subset> = rects.iter().cloned().collect();
        let mut frontier: Vec<Subset> = family.iter().cloned().collect();
        while let Some(s) = frontier.pop() {
            for r in &rects {
                let mut u = s.clone();
                u.union_with(r);
                if family.insert(u.clone()) {
                    frontier.push(u);
                }
            }
        }
        let mut family: Vec<Subset> = family.into_iter().collect();
        family.sort_by(canonical_cmp);
        FiniteTopology::from_opens(labels, family)
    }
}

pub fn full_set(n: usize) -> Subset {
    let mut s = Subset::with_capacity(n);
    s.insert_range(..);
    s
}

pub fn singleton(n: usize, x: usize) -> Subset {
    let mut s = Subset::with_capacity(n);
    s.insert(x);
    s
}

pub fn complement(s: &Subset, n: usize) -> Subset {
    let mut c = full_set(n);
    c.difference_with(s);
    c
}

pub(crate) trait CollectSet {
    fn collect_set(self, n: usize) -> Subset;
}

impl<I: Iterator<Item = usize>> CollectSet for I {
    fn collect_set(self, n: usize) -> Subset {
        let mut s = Subset::with_capacity(n);
        for i in self {
            s.insert(i);
        }
        s
    }
}

/// Image of `s` under an index map into a carrier of size `m`.
pub fn image(map: &[usize], s: &Subset, m: usize) -> Subset {
    s.ones().map(|x| map[x]).collect_set(m)
}

/// Preimage of `t` under an index map.
pub fn preimage(map: &[usize], t: &Subset) -> Subset {
    map.iter()
        .enumerate()
        .filter(|(_, &y)| t.contains(y))
        .map(|(x, _)| x)
        .collect_set(map.len())
}

/// Preimage of every open is open; checking the minimal neighbourhoods suffices.
pub fn is_continuous(map: &[usize], source: &FiniteTopology, target: &FiniteTopology) -> bool {
    (0..target.len()).all(|y| source.is_open(&preimage(map, target.minimal_open(y))))
}

/// Image of every open is open; images commute with unions so the basis suffices.
pub fn is_open_map(map: &[usize], source: &FiniteTopology, target: &FiniteTopology) -> bool {
    (0..source.len()).all(|x| target.is_open(&image(map, source.minimal_open(x), target.len())))
}

/// Image of every closed set is closed. Closed sets are unions of point closures.
pub fn is_closed_map(map: &[usize], source: &FiniteTopology, target: &FiniteTopology) -> bool {
    let n = source.len();
    (0..n).all(|x| {
        let c = source.closure(&singleton(n, x));
        target.is_closed(&image(map, &c, target.len()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pseudo_circle() -> FiniteTopology {
        let p = Preorder::from_pairs(
            &["a", "b", "c", "d"],
            &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        )
        .unwrap();
        FiniteTopology::alexandroff(&p)
    }

    fn three_chain() -> FiniteTopology {
        FiniteTopology::alexandroff(&Preorder::from_pairs(&["0", "1", "2"], &[("0", "1"), ("1", "2")]).unwrap())
    }

    fn named(t: &FiniteTopology, opens: &[Subset]) -> Vec<Vec<String>> {
        opens.iter().map(|s| t.names(s)).collect()
    }

    /// Closure as the intersection of all closed supersets.
    fn closure_oracle(t: &FiniteTopology, s: &Subset) -> Subset {
        let n = t.len();
        t.opens()
            .unwrap()
            .iter()
            .map(|u| complement(u, n))
            .filter(|f| s.is_subset(f))
            .fold(full_set(n), |mut acc, f| {
                acc.intersect_with(&f);
                acc
            })
    }

    #[test]
    fn validates_indiscrete_and_example_one() {
        let t = FiniteTopology::from_labelled_opens(&["p", "q"], &[vec![], vec!["p", "q"]]).unwrap();
        assert_eq!(t.opens().unwrap().len(), 2);
        let t = FiniteTopology::from_labelled_opens(
            &["N", "O", "P"],
            &[vec![], vec!["N"], vec!["P"], vec!["N", "P"], vec!["N", "O", "P"]],
        )
        .unwrap();
        assert_eq!(t.specialization_preorder().strict_pairs(), vec![(1, 0), (1, 2)]);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            FiniteTopology::from_labelled_opens(&["a", "b"], &[vec![], vec!["a"], vec!["b"]]),
            Err(TopologyError::MissingCarrier)
        );
        assert_eq!(
            FiniteTopology::from_labelled_opens(&["a", "b"], &[vec!["a"], vec!["a", "b"]]),
            Err(TopologyError::MissingEmpty)
        );
        assert!(matches!(
            FiniteTopology::from_labelled_opens(&["a", "b", "c"], &[vec![], vec!["a"], vec!["b"], vec!["a", "b", "c"]]),
            Err(TopologyError::UnionEscape(..))
        ));
        assert!(matches!(
            FiniteTopology::from_labelled_opens(
                &["a", "b", "c"],
                &[vec![], vec!["a", "b"], vec!["b", "c"], vec!["a", "b", "c"]]
            ),
            Err(TopologyError::IntersectionEscape(..))
        ));
        assert!(matches!(
            FiniteTopology::from_labelled_opens(&["a"], &[vec![], vec!["a"], vec!["a"]]),
            Err(TopologyError::DuplicateOpen(_))
        ));
    }

    #[test]
    fn pseudo_circle_opens_and_order() {
        let t = pseudo_circle();
        let expected: Vec<Vec<&str>> = vec![
            vec![],
            vec!["c"],
            vec!["d"],
            vec!["c", "d"],
            vec!["a", "c", "d"],
            vec!["b", "c", "d"],
            vec!["a", "b", "c", "d"],
        ];
        assert_eq!(named(&t, &t.opens().unwrap()), expected);
        let p = t.specialization_preorder();
        assert_eq!(p.strict_pairs(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
    }

    #[test]
    fn discrete_topology_has_all_subsets() {
        let p = Preorder::from_pairs::<&str>(&["a", "b", "c", "d"], &[]).unwrap();
        let t = FiniteTopology::alexandroff(&p);
        assert_eq!(t.opens().unwrap().len(), 16);
        assert!(t.specialization_preorder().strict_pairs().is_empty());
    }

    #[test]
    fn closures() {
        let t = pseudo_circle();
        let c = t.subset(&["c"]).unwrap();
        assert_eq!(t.names(&t.closure(&c)), vec!["a", "b", "c"]);
        assert_eq!(closure_oracle(&t, &c), t.closure(&c));
        assert_eq!(t.closure(&Subset::with_capacity(4)).count_ones(..), 0);
        let ch = three_chain();
        let one = ch.subset(&["1"]).unwrap();
        assert_eq!(ch.names(&ch.closure(&one)), vec!["0", "1"]);
        let mut big = Subset::with_capacity(9);
        big.insert(8);
        assert_eq!(ch.try_closure(&big), Err(TopologyError::NotASubset));
    }

    #[test]
    fn local_closedness() {
        let ind = FiniteTopology::from_labelled_opens(&["p", "q"], &[vec![], vec!["p", "q"]]).unwrap();
        assert!(!ind.is_locally_closed(&ind.subset(&["p"]).unwrap()));
        assert!(ind.is_locally_closed(&full_set(2)));
        let t = pseudo_circle();
        assert!((0..4).all(|x| t.is_locally_closed(&singleton(4, x))));
        let ch = three_chain();
        assert!(!ch.is_locally_closed(&ch.subset(&["0", "2"]).unwrap()));
    }

    #[test]
    fn product_matches_rectangles() {
        let a = pseudo_circle();
        let b = three_chain();
        let basis = FiniteTopology::product(&[&a, &b]).unwrap();
        let rects = FiniteTopology::product_by_rectangles(&a, &b).unwrap();
        assert_eq!(basis, rects);
    }

    #[test]
    fn map_properties() {
        let t = pseudo_circle();
        let ex1 = FiniteTopology::alexandroff(
            &Preorder::from_pairs(&["N", "O", "P"], &[("O", "N"), ("O", "P")]).unwrap(),
        );
        // a,b -> O ; c -> N ; d -> P
        let f = [1, 1, 0, 2];
        assert!(is_continuous(&f, &t, &ex1));
        assert!(is_open_map(&f, &t, &ex1));
        let id = [0, 1, 2, 3];
        assert!(is_closed_map(&id, &t, &t));
    }

    #[test]
    fn dual_swaps_opens_and_closeds() {
        let t = pseudo_circle();
        let d = t.dual();
        let n = t.len();
        let mut closed: Vec<Subset> = t.opens().unwrap().iter().map(|u| complement(u, n)).collect();
        closed.sort_by(canonical_cmp);
        assert_eq!(d.opens().unwrap(), closed);
    }
}
