//! Decompositions of finite spaces and their quotient (decomposition) spaces.
//!
//! Besides the quotient topology this module classifies the decomposition map
//! (open / closed, i.e. lower / upper semicontinuous), builds the closure
//! preorder `λ ≤* μ ⇔ D_λ ⊆ cl(D_μ)`, compares it with the specialization
//! order of the quotient, and checks the stratification conditions.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::order::{cartesian_indices, index_labels, tuple_label, OrderError, Preorder};
use crate::topology::{
    canonical_cmp, complement, image, is_closed_map, is_continuous, is_open_map, preimage, singleton, CollectSet,
    FiniteTopology, Subset, TopologyError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("block {0} is empty")]
    EmptyBlock(usize),
    #[error("point `{0}` lies in more than one block")]
    Overlap(String),
    #[error("point `{0}` lies in no block")]
    Uncovered(String),
    #[error("{labels} block labels given for {blocks} blocks")]
    LabelCount { labels: usize, blocks: usize },
    #[error("closure preorder is not transitive at `{0}` <= `{1}` <= `{2}`")]
    StarNotTransitive(String, String, String),
    #[error("factor {index} is not lower semicontinuous (its decomposition map is not open)")]
    NotLowerSemicontinuous { index: usize },
    #[error("product of an empty list of decompositions")]
    EmptyProduct,
}

/// A partition of a finite space into labelled blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    space: FiniteTopology,
    blocks: Vec<Subset>,
    labels: Vec<String>,
    block_of: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MooreClass {
    UpperSemicontinuous,
    LowerSemicontinuous,
    Continuous,
    Neither,
}

impl MooreClass {
    pub fn from_flags(open: bool, closed: bool) -> Self {
        match (open, closed) {
            (true, true) => MooreClass::Continuous,
            (true, false) => MooreClass::LowerSemicontinuous,
            (false, true) => MooreClass::UpperSemicontinuous,
            (false, false) => MooreClass::Neither,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub quotient: FiniteTopology,
    pub pi_open: bool,
    pub pi_closed: bool,
    pub moore_class: MooreClass,
    pub star_preorder: Preorder,
    pub tau_pi_preorder: Preorder,
    pub tamaki_agrees: bool,
    pub blocks_locally_closed: Vec<bool>,
    pub frontier_condition: bool,
    pub quotient_is_poset: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratificationReport {
    pub disjoint: bool,
    pub covering: bool,
    pub locally_closed: Vec<bool>,
    pub frontier_condition: bool,
    /// Closedness of unions of block closures over closed index sets; automatic for finite index sets.
    pub closure_union_condition: bool,
    pub is_stratification: bool,
    /// The following are only evaluated when `is_stratification` holds.
    pub star_is_poset: Option<bool>,
    pub continuous_to_star: Option<bool>,
    pub star_topology_is_quotient: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductVerification {
    pub lower_semicontinuous: bool,
    pub quotient_matches_product_order: bool,
    pub quotient_matches_product_topology: bool,
}

impl Decomposition {
    /// Validates a partition. Without explicit labels each block is named
    /// `[m]` after its lexicographically least member.
    pub fn new(space: FiniteTopology, blocks: Vec<Subset>, labels: Option<Vec<String>>) -> Result<Self, DecompositionError> {
        let n = space.len();
        let mut block_of = vec![usize::MAX; n];
        let mut normalized = Vec::with_capacity(blocks.len());
        for (b, block) in blocks.iter().enumerate() {
            if block.ones().any(|x| x >= n) {
                return Err(TopologyError::NotASubset.into());
            }
            if block.is_clear() {
                return Err(DecompositionError::EmptyBlock(b));
            }
            for x in block.ones() {
                if block_of[x] != usize::MAX {
                    return Err(DecompositionError::Overlap(space.labels()[x].clone()));
                }
                block_of[x] = b;
            }
            normalized.push(block.ones().collect_set(n));
        }
        if let Some(x) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(DecompositionError::Uncovered(space.labels()[x].clone()));
        }
        let labels = match labels {
            Some(l) if l.len() != normalized.len() => {
                return Err(DecompositionError::LabelCount { labels: l.len(), blocks: normalized.len() })
            }
            Some(l) => l,
            None => normalized
                .iter()
                .map(|b| {
                    let least = b.ones().map(|x| &space.labels()[x]).min().expect("nonempty block");
                    format!("[{least}]")
                })
                .collect(),
        };
        index_labels(&labels)?;
        Ok(Decomposition { space, blocks: normalized, labels, block_of })
    }

    pub fn from_labelled<S: AsRef<str>>(
        space: FiniteTopology,
        blocks: &[Vec<S>],
        labels: Option<Vec<String>>,
    ) -> Result<Self, DecompositionError> {
        let blocks = blocks.iter().map(|b| space.subset(b)).collect::<Result<Vec<_>, _>>()?;
        Self::new(space, blocks, labels)
    }

    /// Every point its own block.
    pub fn singletons(space: FiniteTopology) -> Self {
        let n = space.len();
        let blocks = (0..n).map(|x| singleton(n, x)).collect();
        let labels = space.labels().to_vec();
        Decomposition::new(space, blocks, Some(labels)).expect("singletons partition the carrier")
    }

    pub fn space(&self) -> &FiniteTopology {
        &self.space
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The decomposition map as point index -> block index.
    pub fn projection(&self) -> &[usize] {
        &self.block_of
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Finest topology on the block labels making the projection continuous.
    pub fn quotient_topology(&self) -> FiniteTopology {
        let m = self.len();
        let min_open: Vec<Subset> = (0..m).map(|b| self.saturated_hull(b)).collect();
        // rows of the quotient specialization order are exactly the minimal opens
        let order = Preorder::from_relation(self.labels.clone(), min_open).expect("minimal opens form a preorder");
        FiniteTopology::alexandroff(&order)
    }

    /// Smallest set of blocks containing `b` whose union is open.
    fn saturated_hull(&self, b: usize) -> Subset {
        let m = self.len();
        let mut current = singleton(m, b);
        loop {
            let hull = self.space.open_hull(&preimage(&self.block_of, &current));
            let next = image(&self.block_of, &hull, m);
            if next == current {
                return current;
            }
            current = next;
        }
    }

    /// `λ ≤* μ ⇔ D_λ ⊆ cl(D_μ)`, with transitivity verified rather than assumed.
    pub fn star_preorder(&self) -> Result<Preorder, DecompositionError> {
        let m = self.len();
        let closures: Vec<Subset> = self.blocks.iter().map(|b| self.space.closure(b)).collect();
        let rows = (0..m)
            .map(|l| (0..m).filter(|&mu| self.blocks[l].is_subset(&closures[mu])).collect_set(m))
            .collect();
        Preorder::from_relation(self.labels.clone(), rows).map_err(|e| match e {
            OrderError::NotTransitive(a, b, c) => DecompositionError::StarNotTransitive(a, b, c),
            other => other.into(),
        })
    }

    pub fn is_open(&self) -> bool {
        is_open_map(&self.block_of, &self.space, &self.quotient_topology())
    }

    pub fn is_closed(&self) -> bool {
        is_closed_map(&self.block_of, &self.space, &self.quotient_topology())
    }

    /// `D_λ ∩ cl(D_μ) ≠ ∅ ⇒ D_λ ⊆ cl(D_μ)` for all pairs.
    pub fn frontier_condition(&self) -> bool {
        self.blocks.iter().all(|other| {
            let c = self.space.closure(other);
            self.blocks.iter().all(|b| b.is_disjoint(&c) || b.is_subset(&c))
        })
    }

    pub fn blocks_locally_closed(&self) -> Vec<bool> {
        self.blocks.iter().map(|b| self.space.is_locally_closed(b)).collect()
    }

    pub fn analyze(&self) -> Result<DecompositionReport, DecompositionError> {
        let quotient = self.quotient_topology();
        let pi_open = is_open_map(&self.block_of, &self.space, &quotient);
        let pi_closed = is_closed_map(&self.block_of, &self.space, &quotient);
        let star_preorder = self.star_preorder()?;
        let tau_pi_preorder = quotient.specialization_preorder();
        let tamaki_agrees = star_preorder == tau_pi_preorder;
        let quotient_is_poset = tau_pi_preorder.is_partial_order();
        Ok(DecompositionReport {
            pi_open,
            pi_closed,
            moore_class: MooreClass::from_flags(pi_open, pi_closed),
            tamaki_agrees,
            blocks_locally_closed: self.blocks_locally_closed(),
            frontier_condition: self.frontier_condition(),
            quotient_is_poset,
            star_preorder,
            tau_pi_preorder,
            quotient,
        })
    }

    pub fn validate_stratification(&self) -> Result<StratificationReport, DecompositionError> {
        let locally_closed = self.blocks_locally_closed();
        let frontier_condition = self.frontier_condition();
        let is_stratification = locally_closed.iter().all(|&b| b) && frontier_condition;
        let (mut star_is_poset, mut continuous_to_star, mut star_topology_is_quotient) = (None, None, None);
        if is_stratification {
            let star = self.star_preorder()?;
            let star_space = FiniteTopology::alexandroff(&star);
            star_is_poset = Some(star.is_partial_order());
            continuous_to_star = Some(is_continuous(&self.block_of, &self.space, &star_space));
            star_topology_is_quotient = Some(star_space == self.quotient_topology());
        }
        Ok(StratificationReport {
            disjoint: true,
            covering: true,
            locally_closed,
            frontier_condition,
            closure_union_condition: true,
            is_stratification,
            star_is_poset,
            continuous_to_star,
            star_topology_is_quotient,
        })
    }

    /// Rebuilds the quotient topology as `{π(G) : G open}`; only meaningful
    /// when the projection is open.
    pub fn topology_from_open_images(&self) -> Result<FiniteTopology, TopologyError> {
        let m = self.len();
        let family: HashSet<Subset> = self
            .space
            .opens()?
            .iter()
            .map(|g| image(&self.block_of, g, m))
            .collect();
        let mut family: Vec<Subset> = family.into_iter().collect();
        family.sort_by(canonical_cmp);
        FiniteTopology::from_opens(self.labels.clone(), family)
    }

    /// Rebuilds the quotient topology as complements of `{π(F) : F closed}`;
    /// only meaningful when the projection is closed.
    pub fn topology_from_closed_images(&self) -> Result<FiniteTopology, TopologyError> {
        let (n, m) = (self.space.len(), self.len());
        let family: HashSet<Subset> = self
            .space
            .opens()?
            .iter()
            .map(|g| complement(&image(&self.block_of, &complement(g, n), m), m))
            .collect();
        let mut family: Vec<Subset> = family.into_iter().collect();
        family.sort_by(canonical_cmp);
        FiniteTopology::from_opens(self.labels.clone(), family)
    }
}

/// Product of lower semicontinuous decompositions, with the product
/// quotient checked against the product of the factor quotient orders.
pub fn product_decomposition(factors: &[&Decomposition]) -> Result<(Decomposition, ProductVerification), DecompositionError> {
    if factors.is_empty() {
        return Err(DecompositionError::EmptyProduct);
    }
    let mut quotients = Vec::with_capacity(factors.len());
    for (index, d) in factors.iter().enumerate() {
        let report = d.analyze()?;
        if !report.pi_open {
            return Err(DecompositionError::NotLowerSemicontinuous { index });
        }
        quotients.push(report);
    }
    let spaces: Vec<&FiniteTopology> = factors.iter().map(|d| d.space()).collect();
    let space = FiniteTopology::product(&spaces)?;
    let n = space.len();

    let point_tuples = cartesian_indices(&factors.iter().map(|d| d.space().len()).collect::<Vec<_>>());
    let block_sizes: Vec<usize> = factors.iter().map(|d| d.len()).collect();
    let block_tuples = cartesian_indices(&block_sizes);
    // mixed-radix position of a block tuple
    let block_index = |t: &[usize]| t.iter().zip(&block_sizes).fold(0, |acc, (&i, &s)| acc * s + i);
    let mut blocks = vec![Subset::with_capacity(n); block_tuples.len()];
    for (p, t) in point_tuples.iter().enumerate() {
        let bt: Vec<usize> = t.iter().zip(factors).map(|(&x, d)| d.projection()[x]).collect();
        blocks[block_index(&bt)].insert(p);
    }
    let labels = block_tuples
        .iter()
        .map(|t| tuple_label(t.iter().zip(factors).map(|(&b, d)| d.labels()[b].as_str())))
        .collect();
    let product = Decomposition::new(space, blocks, Some(labels))?;

    let report = product.analyze()?;
    let orders: Vec<&Preorder> = quotients.iter().map(|r| &r.tau_pi_preorder).collect();
    let product_order = Preorder::product(&orders)?;
    let quotient_spaces: Vec<&FiniteTopology> = quotients.iter().map(|r| &r.quotient).collect();
    let verification = ProductVerification {
        lower_semicontinuous: report.pi_open,
        quotient_matches_product_order: report.quotient == FiniteTopology::alexandroff(&product_order),
        quotient_matches_product_topology: report.quotient == FiniteTopology::product(&quotient_spaces)?,
    };
    Ok((product, verification))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pseudo_circle() -> FiniteTopology {
        FiniteTopology::alexandroff(
            &Preorder::from_pairs(&["a", "b", "c", "d"], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]).unwrap(),
        )
    }

    fn three_chain() -> FiniteTopology {
        FiniteTopology::alexandroff(&Preorder::from_pairs(&["0", "1", "2"], &[("0", "1"), ("1", "2")]).unwrap())
    }

    fn ex1_space() -> FiniteTopology {
        FiniteTopology::alexandroff(&Preorder::from_pairs(&["N", "O", "P"], &[("O", "N"), ("O", "P")]).unwrap())
    }

    /// Quotient opens by brute force over every subset of block labels.
    fn quotient_oracle(d: &Decomposition) -> Vec<Vec<String>> {
        let m = d.len();
        let mut out: Vec<Subset> = (0u32..1 << m)
            .map(|mask| (0..m).filter(|&b| mask >> b & 1 == 1).collect_set(m))
            .filter(|u| d.space().is_open(&preimage(d.projection(), u)))
            .collect();
        out.sort_by(canonical_cmp);
        out.iter().map(|u| u.ones().map(|b| d.labels()[b].clone()).collect()).collect()
    }

    fn opens_named(t: &FiniteTopology) -> Vec<Vec<String>> {
        t.opens().unwrap().iter().map(|u| t.names(u)).collect()
    }

    #[test]
    fn pseudo_circle_collapse() {
        let d = Decomposition::from_labelled(pseudo_circle(), &[vec!["a", "b"], vec!["c"], vec!["d"]], None).unwrap();
        assert_eq!(d.labels(), &["[a]", "[c]", "[d]"]);
        let q = d.quotient_topology();
        let expected = vec![
            vec![],
            vec!["[c]".to_owned()],
            vec!["[d]".to_owned()],
            vec!["[c]".to_owned(), "[d]".to_owned()],
            vec!["[a]".to_owned(), "[c]".to_owned(), "[d]".to_owned()],
        ];
        assert_eq!(opens_named(&q), expected);
        assert_eq!(quotient_oracle(&d), expected);
        let r = d.analyze().unwrap();
        assert!(r.pi_open);
        assert!(r.tamaki_agrees);
        assert!(r.quotient_is_poset);
    }

    #[test]
    fn chain_with_bad_blocks() {
        let d = Decomposition::from_labelled(three_chain(), &[vec!["0", "2"], vec!["1"]], None).unwrap();
        let q = d.quotient_topology();
        assert_eq!(q.opens().unwrap().len(), 2);
        assert_eq!(opens_named(&q), quotient_oracle(&d));
        let r = d.analyze().unwrap();
        assert!(!r.pi_open);
        assert!(!r.tamaki_agrees);
        // [1] <=* [0] only
        assert_eq!(r.star_preorder.strict_pairs(), vec![(1, 0)]);
        assert_eq!(r.tau_pi_preorder.strict_pairs(), vec![(0, 1), (1, 0)]);
        assert_eq!(r.blocks_locally_closed, vec![false, true]);
        assert!(!r.frontier_condition);
        let s = d.validate_stratification().unwrap();
        assert!(!s.is_stratification);
        assert_eq!(s.continuous_to_star, None);
    }

    #[test]
    fn singleton_blocks_are_homeomorphic() {
        for space in [pseudo_circle(), three_chain(), ex1_space()] {
            let d = Decomposition::singletons(space.clone());
            assert_eq!(d.quotient_topology(), space);
            let r = d.analyze().unwrap();
            assert!(r.pi_open && r.pi_closed);
            assert_eq!(r.moore_class, MooreClass::Continuous);
        }
    }

    #[test]
    fn stratification_checks() {
        let s = Decomposition::singletons(pseudo_circle()).validate_stratification().unwrap();
        assert!(s.is_stratification);
        assert_eq!(s.star_is_poset, Some(true));
        assert_eq!(s.continuous_to_star, Some(true));
        assert_eq!(s.star_topology_is_quotient, Some(true));

        let ind = FiniteTopology::from_labelled_opens(&["p", "q"], &[vec![], vec!["p", "q"]]).unwrap();
        let s = Decomposition::singletons(ind).validate_stratification().unwrap();
        assert!(!s.is_stratification);
        assert_eq!(s.locally_closed, vec![false, false]);
    }

    #[test]
    fn partition_errors() {
        let t = three_chain();
        assert!(matches!(
            Decomposition::from_labelled(t.clone(), &[vec!["0", "1"], vec!["1", "2"]], None),
            Err(DecompositionError::Overlap(_))
        ));
        assert!(matches!(
            Decomposition::from_labelled(t.clone(), &[vec!["0", "1"]], None),
            Err(DecompositionError::Uncovered(_))
        ));
        assert!(matches!(
            Decomposition::from_labelled::<&str>(t.clone(), &[vec!["0", "1", "2"], vec![]], None),
            Err(DecompositionError::EmptyBlock(1))
        ));
        assert!(matches!(
            Decomposition::from_labelled(t, &[vec!["0", "1", "2"]], Some(vec!["x".into(), "y".into()])),
            Err(DecompositionError::LabelCount { .. })
        ));
    }

    #[test]
    fn images_rebuild_quotient_when_open_or_closed() {
        let d = Decomposition::from_labelled(pseudo_circle(), &[vec!["a", "b"], vec!["c"], vec!["d"]], None).unwrap();
        assert_eq!(d.topology_from_open_images().unwrap(), d.quotient_topology());
        // collapsing the top of a chain is closed
        let d = Decomposition::from_labelled(three_chain(), &[vec!["0"], vec!["1", "2"]], None).unwrap();
        let r = d.analyze().unwrap();
        assert!(r.pi_closed);
        assert_eq!(d.topology_from_closed_images().unwrap(), d.quotient_topology());
    }

    #[test]
    fn grid_product_of_example_one() {
        let d = Decomposition::singletons(ex1_space());
        let (p, v) = product_decomposition(&[&d, &d]).unwrap();
        assert_eq!(p.len(), 9);
        assert!(v.lower_semicontinuous);
        assert!(v.quotient_matches_product_order);
        assert!(v.quotient_matches_product_topology);
        let order = p.quotient_topology().specialization_preorder();
        let ex1 = Preorder::from_pairs(&["N", "O", "P"], &[("O", "N"), ("O", "P")]).unwrap();
        assert_eq!(order, Preorder::product(&[&ex1, &ex1]).unwrap());
    }

    #[test]
    fn product_of_pseudo_quotient_and_three_points() {
        let pc = Decomposition::from_labelled(pseudo_circle(), &[vec!["a", "b"], vec!["c"], vec!["d"]], None).unwrap();
        let e = Decomposition::singletons(ex1_space());
        let (p, v) = product_decomposition(&[&pc, &e]).unwrap();
        assert_eq!(p.space().len(), 12);
        assert_eq!(p.len(), 9);
        assert!(v.lower_semicontinuous && v.quotient_matches_product_topology);
        // oracle: brute-force quotient opens against product of quotient opens
        let q = FiniteTopology::product(&[&pc.quotient_topology(), &e.quotient_topology()]).unwrap();
        assert_eq!(quotient_oracle(&p), opens_named(&q));
    }

    #[test]
    fn pseudo_circle_times_three_points_has_twelve_blocks() {
        let pc = Decomposition::singletons(pseudo_circle());
        let e = Decomposition::singletons(ex1_space());
        let (p, v) = product_decomposition(&[&pc, &e]).unwrap();
        assert_eq!(p.len(), 12);
        assert!(v.quotient_matches_product_topology);
        let q = FiniteTopology::product(&[&pc.quotient_topology(), &e.quotient_topology()]).unwrap();
        assert_eq!(quotient_oracle(&p), opens_named(&q));
    }

    #[test]
    fn product_rejects_non_open_factor() {
        let bad = Decomposition::from_labelled(three_chain(), &[vec!["0", "2"], vec!["1"]], None).unwrap();
        let good = Decomposition::singletons(ex1_space());
        assert_eq!(
            product_decomposition(&[&good, &bad]).unwrap_err(),
            DecompositionError::NotLowerSemicontinuous { index: 1 }
        );
    }
}
