//! Finite preorders and posets.
//!
//! A [`Preorder`] is stored as one bitset row per element: row `i` holds the
//! indices `j` with `i <= j`, so each row is the principal up-set of `i`.
//! Carriers are ordered label lists and every index in this crate is a
//! position in that list.

use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::topology::FiniteTopology;

/// Default bound on carrier size for closure computations.
pub const DEFAULT_CARRIER_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("duplicate label `{0}` in carrier")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("carrier of size {size} exceeds the cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("relation is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("relation is not transitive: `{0}` <= `{1}` <= `{2}` but not `{0}` <= `{2}`")]
    NotTransitive(String, String, String),
    #[error("relation is not antisymmetric: `{0}` and `{1}` are distinct but equivalent")]
    NotAntisymmetric(String, String),
    #[error("product of an empty list of factors")]
    EmptyProduct,
    #[error("assignment has {got} entries, expected {expected}")]
    AssignmentLength { expected: usize, got: usize },
    #[error("assignment value {0} lies outside the target carrier")]
    ValueOutOfRange(usize),
    #[error("map is not monotone: `{0}` <= `{1}` but images `{2}` and `{3}` are not related")]
    NotMonotone(String, String, String, String),
    #[error("stratification map is not continuous at stratum `{0}`")]
    NotContinuous(String),
}

pub(crate) fn index_labels(labels: &[String]) -> Result<HashMap<String, usize>, OrderError> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(OrderError::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

/// A reflexive, transitive relation on a finite labelled carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preorder {
    labels: Vec<String>,
    up: Vec<FixedBitSet>,
}

impl Preorder {
    /// Smallest preorder on `labels` containing every pair `(a, b)`, read as `a <= b`.
    pub fn from_pairs<S: AsRef<str>>(labels: &[S], pairs: &[(S, S)]) -> Result<Self, OrderError> {
        Self::from_pairs_capped(labels, pairs, DEFAULT_CARRIER_CAP)
    }

    pub fn from_pairs_capped<S: AsRef<str>>(
        labels: &[S],
        pairs: &[(S, S)],
        cap: usize,
    ) -> Result<Self, OrderError> {
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_owned()).collect();
        if labels.len() > cap {
            return Err(OrderError::TooLarge { size: labels.len(), cap });
        }
        let index = index_labels(&labels)?;
        let lookup = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| OrderError::UnknownLabel(l.to_owned()))
        };
        let n = labels.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            row.insert(i);
        }
        for (a, b) in pairs {
            let (a, b) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            up[a].insert(b);
        }
        close_transitively(&mut up);
        Ok(Preorder { labels, up })
    }

    /// Wraps an explicit relation, checking reflexivity and transitivity
    /// instead of closing it.
    pub fn from_relation(labels: Vec<String>, up: Vec<FixedBitSet>) -> Result<Self, OrderError> {
        index_labels(&labels)?;
        let n = labels.len();
        assert_eq!(up.len(), n, "one relation row per carrier element");
        for (i, row) in up.iter().enumerate() {
            assert_eq!(row.len(), n, "relation rows must span the carrier");
            if !row.contains(i) {
                return Err(OrderError::NotReflexive(labels[i].clone()));
            }
        }
        for i in 0..n {
            for j in up[i].ones() {
                if !up[j].is_subset(&up[i]) {
                    let k = up[j].difference(&up[i]).next().expect("nonempty difference");
                    return Err(OrderError::NotTransitive(
                        labels[i].clone(),
                        labels[j].clone(),
                        labels[k].clone(),
                    ));
                }
            }
        }
        Ok(Preorder { labels, up })
    }

    /// The discrete order: only reflexive pairs.
    pub fn discrete<S: AsRef<str>>(labels: &[S]) -> Result<Self, OrderError> {
        Self::from_pairs::<&str>(
            &labels.iter().map(|l| l.as_ref()).collect::<Vec<_>>(),
            &[],
        )
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

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `i <= j`.
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    /// Principal up-set `{ j | i <= j }`.
    pub fn up_set(&self, i: usize) -> &FixedBitSet {
        &self.up[i]
    }

    /// Principal down-set `{ j | j <= i }`.
    pub fn down_set(&self, i: usize) -> FixedBitSet {
        let mut down = FixedBitSet::with_capacity(self.len());
        for j in 0..self.len() {
            if self.le(j, i) {
                down.insert(j);
            }
        }
        down
    }

    pub fn is_partial_order(&self) -> bool {
        self.antisymmetry_violation().is_none()
    }

    fn antisymmetry_violation(&self) -> Option<(usize, usize)> {
        (0..self.len()).find_map(|i| {
            self.up[i]
                .ones()
                .find(|&j| j != i && self.le(j, i))
                .map(|j| (i, j))
        })
    }

    /// All pairs `(i, j)` with `i <= j` and `i != j`, in row-major order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.up[i].ones().filter(move |&j| j != i).map(move |j| (i, j)))
            .collect()
    }

    /// Covering pairs of the strict part. Equivalent distinct elements are
    /// reported in both directions.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let strict = |a: usize, b: usize| self.le(a, b) && !self.le(b, a);
        let mut out = Vec::new();
        for i in 0..n {
            for j in self.up[i].ones() {
                if i == j {
                    continue;
                }
                if self.le(j, i) {
                    out.push((i, j));
                    continue;
                }
                let between = (0..n).any(|k| strict(i, k) && strict(k, j));
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The order with every pair reversed.
    pub fn dual(&self) -> Preorder {
        let n = self.len();
        let up = (0..n).map(|i| self.down_set(i)).collect();
        Preorder { labels: self.labels.clone(), up }
    }

    /// Same relation on a carrier with the given labels, positionally.
    pub fn relabeled(&self, labels: Vec<String>) -> Result<Preorder, OrderError> {
        assert_eq!(labels.len(), self.len());
        index_labels(&labels)?;
        Ok(Preorder { labels, up: self.up.clone() })
    }

    /// Product order on the cartesian product of carriers, labelled `(l1,...,ln)`.
    pub fn product(factors: &[&Preorder]) -> Result<Preorder, OrderError> {
        if factors.is_empty() {
            return Err(OrderError::EmptyProduct);
        }
        let size = factors
            .iter()
            .try_fold(1usize, |acc, f| acc.checked_mul(f.len()))
            .unwrap_or(usize::MAX);
        if size > DEFAULT_CARRIER_CAP {
            return Err(OrderError::TooLarge { size, cap: DEFAULT_CARRIER_CAP });
        }
        let tuples = cartesian_indices(&factors.iter().map(|f| f.len()).collect::<Vec<_>>());
        let labels = tuples
            .iter()
            .map(|t| tuple_label(t.iter().zip(factors).map(|(&i, f)| f.label(i))))
            .collect();
        let up = tuples
            .iter()
            .map(|a| {
                let mut row = FixedBitSet::with_capacity(size);
                for (j, b) in tuples.iter().enumerate() {
                    if a.iter().zip(b).zip(factors).all(|((&x, &y), f)| f.le(x, y)) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        Ok(Preorder { labels, up })
    }

    /// Collapses the equivalence `a <= b && b <= a`. Classes are ordered by
    /// their first member in the carrier and labelled `[m]` with `m` the
    /// lexicographically least member label.
    pub fn quotient(&self) -> (Poset, MonotoneMap) {
        let n = self.len();
        let mut class_of = vec![usize::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        let mut labels = Vec::new();
        for i in 0..n {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = reps.len();
            let mut least = &self.labels[i];
            for j in i..n {
                if self.le(i, j) && self.le(j, i) {
                    class_of[j] = c;
                    if self.labels[j] < *least {
                        least = &self.labels[j];
                    }
                }
            }
            reps.push(i);
            labels.push(format!("[{least}]"));
        }
        let m = reps.len();
        let up = reps
            .iter()
            .map(|&a| {
                let mut row = FixedBitSet::with_capacity(m);
                for (c, &b) in reps.iter().enumerate() {
                    if self.le(a, b) {
                        row.insert(c);
                    }
                }
                row
            })
            .collect();
        let poset = Poset(Preorder { labels, up });
        let projection = MonotoneMap::new(self.clone(), poset.as_preorder().clone(), class_of)
            .expect("projection onto the quotient is monotone");
        (poset, projection)
    }

    /// Graphviz rendering: covering pairs by default, every strict pair when
    /// `full_relation` is set. An arrow `a -> b` means `a <= b`.
    pub fn to_dot(&self, name: &str, full_relation: bool) -> String {
        let mut out = String::new();
        writeln!(out, "digraph \"{}\" {{", escape(name)).unwrap();
        for l in &self.labels {
            writeln!(out, "  \"{}\";", escape(l)).unwrap();
        }
        let edges = if full_relation { self.strict_pairs() } else { self.covering_pairs() };
        for (a, b) in edges {
            writeln!(out, "  \"{}\" -> \"{}\";", escape(&self.labels[a]), escape(&self.labels[b]))
                .unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// True when `map` (as indices) is an order isomorphism onto `other`.
    pub fn is_isomorphic_via(&self, other: &Preorder, map: &[usize]) -> bool {
        if self.len() != other.len() || map.len() != self.len() {
            return false;
        }
        let mut seen = FixedBitSet::with_capacity(other.len());
        for &m in map {
            if m >= other.len() || seen.put(m) {
                return false;
            }
        }
        (0..self.len())
            .all(|i| (0..self.len()).all(|j| self.le(i, j) == other.le(map[i], map[j])))
    }

    pub(crate) fn rows(&self) -> &[FixedBitSet] {
        &self.up
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub(crate) fn tuple_label<'a>(parts: impl Iterator<Item = &'a str>) -> String {
    let parts: Vec<&str> = parts.collect();
    format!("({})", parts.join(","))
}

/// Index tuples of a cartesian product, last coordinate varying fastest.
pub(crate) fn cartesian_indices(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &s in sizes {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..s).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// Warshall closure over bitset rows.
fn close_transitively(up: &mut [FixedBitSet]) {
    let n = up.len();
    for k in 0..n {
        let row_k = up[k].clone();
        for row in up.iter_mut() {
            if row.contains(k) {
                row.union_with(&row_k);
            }
        }
    }
}

/// A preorder that is also antisymmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset(Preorder);

impl Poset {
    pub fn as_preorder(&self) -> &Preorder {
        &self.0
    }

    pub fn into_preorder(self) -> Preorder {
        self.0
    }
}

impl TryFrom<Preorder> for Poset {
    type Error = OrderError;

    fn try_from(p: Preorder) -> Result<Self, Self::Error> {
        match p.antisymmetry_violation() {
            Some((i, j)) => Err(OrderError::NotAntisymmetric(
                p.labels[i].clone(),
                p.labels[j].clone(),
            )),
            None => Ok(Poset(p)),
        }
    }
}

impl std::ops::Deref for Poset {
    type Target = Preorder;

    fn deref(&self) -> &Preorder {
        &self.0
    }
}

/// Checks `x <= y => f(x) <= f(y)` for an index assignment.
pub fn is_monotone(assignment: &[usize], source: &Preorder, target: &Preorder) -> Result<bool, OrderError> {
    Ok(monotonicity_violation(assignment, source, target)?.is_none())
}

fn monotonicity_violation(
    assignment: &[usize],
    source: &Preorder,
    target: &Preorder,
) -> Result<Option<(usize, usize)>, OrderError> {
    if assignment.len() != source.len() {
        return Err(OrderError::AssignmentLength { expected: source.len(), got: assignment.len() });
    }
    if let Some(&v) = assignment.iter().find(|&&v| v >= target.len()) {
        return Err(OrderError::ValueOutOfRange(v));
    }
    for x in 0..source.len() {
        for y in source.up_set(x).ones() {
            if !target.le(assignment[x], assignment[y]) {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

/// A total, order-preserving function between preorders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    source: Preorder,
    target: Preorder,
    assignment: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: Preorder, target: Preorder, assignment: Vec<usize>) -> Result<Self, OrderError> {
        if let Some((x, y)) = monotonicity_violation(&assignment, &source, &target)? {
            return Err(OrderError::NotMonotone(
                source.label(x).to_owned(),
                source.label(y).to_owned(),
                target.label(assignment[x]).to_owned(),
                target.label(assignment[y]).to_owned(),
            ));
        }
        Ok(MonotoneMap { source, target, assignment })
    }

    pub fn source(&self) -> &Preorder {
        &self.source
    }

    pub fn target(&self) -> &Preorder {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, i: usize) -> usize {
        self.assignment[i]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = FixedBitSet::with_capacity(self.target.len());
        for &v in &self.assignment {
            hit.insert(v);
        }
        hit.count_ones(..) == self.target.len()
    }
}

/// A space together with a continuous map onto the Alexandroff space of a poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetStratifiedSpace {
    space: FiniteTopology,
    strata: Poset,
    strat_map: Vec<usize>,
}

impl PosetStratifiedSpace {
    pub fn new(space: FiniteTopology, strata: Poset, strat_map: Vec<usize>) -> Result<Self, OrderError> {
        if strat_map.len() != space.len() {
            return Err(OrderError::AssignmentLength { expected: space.len(), got: strat_map.len() });
        }
        if let Some(&v) = strat_map.iter().find(|&&v| v >= strata.len()) {
            return Err(OrderError::ValueOutOfRange(v));
        }
        // preimages of the basic opens U_p must be open
        for p in 0..strata.len() {
            let mut preimage = FixedBitSet::with_capacity(space.len());
            for (x, &s) in strat_map.iter().enumerate() {
                if strata.le(p, s) {
                    preimage.insert(x);
                }
            }
            if !space.is_open(&preimage) {
                return Err(OrderError::NotContinuous(strata.label(p).to_owned()));
            }
        }
        Ok(PosetStratifiedSpace { space, strata, strat_map })
    }

    pub fn space(&self) -> &FiniteTopology {
        &self.space
    }

    pub fn strata(&self) -> &Poset {
        &self.strata
    }

    pub fn strat_map(&self) -> &[usize] {
        &self.strat_map
    }

    /// Points lying over stratum `p`.
    pub fn fiber(&self, p: usize) -> FixedBitSet {
        let mut f = FixedBitSet::with_capacity(self.space.len());
        for (x, &s) in self.strat_map.iter().enumerate() {
            if s == p {
                f.insert(x);
            }
        }
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex1() -> Preorder {
        Preorder::from_pairs(&["N", "O", "P"], &[("O", "N"), ("O", "P")]).unwrap()
    }

    #[test]
    fn empty_pairs_give_identity() {
        let p = Preorder::from_pairs::<&str>(&["a", "b", "c"], &[]).unwrap();
        assert!(p.strict_pairs().is_empty());
        assert!((0..3).all(|i| p.le(i, i)));
        assert!(p.is_partial_order());
    }

    #[test]
    fn example_one_poset() {
        let p = ex1();
        assert_eq!(p.strict_pairs(), vec![(1, 0), (1, 2)]);
        assert!(p.is_partial_order());
    }

    #[test]
    fn rational_preorder_is_not_a_poset() {
        let p = Preorder::from_pairs(&["p", "q"], &[("p", "q"), ("q", "p")]).unwrap();
        assert!(p.le(0, 1) && p.le(1, 0));
        assert!(!p.is_partial_order());
        assert!(Poset::try_from(p.clone()).is_err());
        let (q, pi) = p.quotient();
        assert_eq!(q.len(), 1);
        assert_eq!(q.labels(), &["[p]".to_owned()]);
        assert_eq!(pi.assignment(), &[0, 0]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Preorder::from_pairs(&["a", "a"], &[]),
            Err(OrderError::DuplicateLabel("a".into()))
        );
        assert_eq!(
            Preorder::from_pairs(&["a"], &[("a", "z")]),
            Err(OrderError::UnknownLabel("z".into()))
        );
        assert!(matches!(
            Preorder::from_pairs_capped::<&str>(&["a", "b", "c"], &[], 2),
            Err(OrderError::TooLarge { size: 3, cap: 2 })
        ));
        assert_eq!(Preorder::product(&[]), Err(OrderError::EmptyProduct));
    }

    #[test]
    fn closure_is_transitive() {
        let p = Preorder::from_pairs(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        assert!(p.le(0, 3));
        assert!(!p.le(3, 0));
        assert_eq!(p.covering_pairs(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn from_relation_rejects_bad_rows() {
        let labels: Vec<String> = vec!["a".into(), "b".into(), "c".into()];
        let mut rows = vec![FixedBitSet::with_capacity(3); 3];
        rows[0].insert(0);
        rows[1].insert(1);
        assert!(matches!(
            Preorder::from_relation(labels.clone(), rows.clone()),
            Err(OrderError::NotReflexive(_))
        ));
        rows[2].insert(2);
        rows[0].insert(1);
        rows[1].insert(2);
        assert!(matches!(Preorder::from_relation(labels, rows), Err(OrderError::NotTransitive(..))));
    }

    #[test]
    fn grid_product() {
        let p = ex1();
        let g = Preorder::product(&[&p, &p]).unwrap();
        assert_eq!(g.len(), 9);
        let oo = g.index_of("(O,O)").unwrap();
        assert!((0..9).all(|j| g.le(oo, j)));
        for m in ["(N,P)", "(P,P)", "(N,N)", "(P,N)"] {
            let m = g.index_of(m).unwrap();
            assert_eq!(g.up_set(m).count_ones(..), 1);
        }
        assert!(g.is_partial_order());
    }

    #[test]
    fn two_chain_squared_is_a_diamond() {
        let c = Preorder::from_pairs(&["0", "1"], &[("0", "1")]).unwrap();
        let d = Preorder::product(&[&c, &c]).unwrap();
        // brute force: (a,b) <= (c,d) iff a <= c and b <= d
        for (i, x) in d.labels().iter().enumerate() {
            for (j, y) in d.labels().iter().enumerate() {
                let xb = x.as_bytes();
                let yb = y.as_bytes();
                let expect = xb[1] <= yb[1] && xb[3] <= yb[3];
                assert_eq!(d.le(i, j), expect, "{x} {y}");
            }
        }
        assert_eq!(d.covering_pairs().len(), 4);
    }

    #[test]
    fn product_with_point_is_isomorphic() {
        let p = ex1();
        let one = Preorder::from_pairs::<&str>(&["*"], &[]).unwrap();
        let q = Preorder::product(&[&p, &one]).unwrap();
        assert_eq!(q.labels(), &["(N,*)", "(O,*)", "(P,*)"]);
        assert!(p.is_isomorphic_via(&q, &[0, 1, 2]));
    }

    #[test]
    fn quotient_of_partial_equivalence() {
        let p = Preorder::from_pairs(&["a", "b", "c"], &[("a", "b"), ("b", "a")]).unwrap();
        let (q, pi) = p.quotient();
        assert_eq!(q.labels(), &["[a]", "[c]"]);
        assert!(q.strict_pairs().is_empty());
        assert_eq!(pi.assignment(), &[0, 0, 1]);
        assert!(pi.is_surjective());
    }

    #[test]
    fn quotient_label_uses_least_member() {
        let p = Preorder::from_pairs(&["z", "b"], &[("z", "b"), ("b", "z")]).unwrap();
        assert_eq!(p.quotient().0.labels(), &["[b]"]);
    }

    #[test]
    fn monotone_checks() {
        let p = ex1();
        assert!(is_monotone(&[0, 1, 2], &p, &p).unwrap());
        assert!(!is_monotone(&[1, 0, 2], &p, &p).unwrap());
        assert_eq!(is_monotone(&[0, 1, 7], &p, &p), Err(OrderError::ValueOutOfRange(7)));
        assert!(MonotoneMap::new(p.clone(), p.clone(), vec![1, 0, 2]).is_err());
    }

    #[test]
    fn dot_output() {
        let dot = ex1().to_dot("ex1", false);
        assert!(dot.contains("\"O\" -> \"N\";"));
        assert!(dot.contains("\"O\" -> \"P\";"));
        let c = Preorder::from_pairs(&["0", "1", "2"], &[("0", "1"), ("1", "2")]).unwrap();
        assert!(!c.to_dot("c", false).contains("\"0\" -> \"2\""));
        assert!(c.to_dot("c", true).contains("\"0\" -> \"2\""));
    }

    #[test]
    fn dual_reverses() {
        let d = ex1().dual();
        assert_eq!(d.strict_pairs(), vec![(0, 1), (2, 1)]);
    }
}
