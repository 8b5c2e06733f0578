//! Seeded property suites over random finite structures.

use rand::Rng;
use serde::Serialize;

use crate::arrangement::{order_closure_disagreements, Arrangement};
use crate::decomposition::DecompositionError;
use crate::linalg::q;
use crate::random::{random_decomposition, random_open_family, random_preorder, random_topology, rng, EDGE_PROBABILITY};
use crate::topology::{FiniteTopology, Subset};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RoundTripStats {
    pub seed: u64,
    pub preorder_cases: usize,
    pub preorder_failures: usize,
    pub topology_cases: usize,
    pub topology_failures: usize,
}

/// `P(T(p)) = p` on random preorders and `T(P(t)) = t` on random topologies,
/// the latter compared as explicit open families.
pub fn round_trip_suite(seed: u64, cases: usize, max_preorder: usize, max_topology: usize) -> RoundTripStats {
    let mut r = rng(seed);
    let mut stats = RoundTripStats { seed, ..Default::default() };
    for _ in 0..cases {
        let n = r.gen_range(1..=max_preorder);
        let p = random_preorder(&mut r, n, EDGE_PROBABILITY);
        stats.preorder_cases += 1;
        if FiniteTopology::alexandroff(&p).specialization_preorder() != p {
            stats.preorder_failures += 1;
        }
    }
    for _ in 0..cases {
        let n = r.gen_range(1..=max_topology);
        let family = random_open_family(&mut r, n);
        let t = FiniteTopology::from_opens(crate::random::point_labels(n), family.clone()).expect("family is a topology");
        stats.topology_cases += 1;
        let back = FiniteTopology::alexandroff(&t.specialization_preorder());
        if back.opens().expect("small carrier") != family {
            stats.topology_failures += 1;
        }
    }
    stats
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct KuratowskiStats {
    pub seed: u64,
    pub cases: usize,
    pub failures: usize,
}

/// Closure axioms on random subsets of random topologies.
pub fn kuratowski_suite(seed: u64, cases: usize, max_n: usize) -> KuratowskiStats {
    let mut r = rng(seed);
    let mut stats = KuratowskiStats { seed, ..Default::default() };
    for _ in 0..cases {
        let n = r.gen_range(1..=max_n);
        let t = random_topology(&mut r, n);
        let mut pick = || (0..n).filter(|_| r.gen_bool(0.5)).fold(Subset::with_capacity(n), |mut s, x| {
            s.insert(x);
            s
        });
        let (a, b) = (pick(), pick());
        let (ca, cb) = (t.closure(&a), t.closure(&b));
        let mut ab = a.clone();
        ab.union_with(&b);
        let mut cacb = ca.clone();
        cacb.union_with(&cb);
        let ok = t.closure(&Subset::with_capacity(n)).is_clear()
            && a.is_subset(&ca)
            && t.closure(&ca) == ca
            && t.closure(&ab) == cacb
            && t.is_closed(&ca)
            && t.interior(&a).is_subset(&a)
            && t.is_open(&t.interior(&a));
        stats.cases += 1;
        if !ok {
            stats.failures += 1;
        }
    }
    stats
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DecompositionStats {
    pub seed: u64,
    pub cases: usize,
    pub open_cases: usize,
    pub closed_cases: usize,
    /// `pi_open` differs from `star = tau_pi`.
    pub closure_order_failures: usize,
    /// Among open cases, poset quotient differs from all blocks locally closed.
    pub open_locally_failures: usize,
    /// Poset quotient with a block that is not locally closed.
    pub poset_block_failures: usize,
    /// Open or closed projection whose image family differs from the quotient.
    pub image_family_failures: usize,
    /// Locally closed blocks with the frontier condition, but the closure
    /// order does not reproduce the quotient.
    pub stratification_failures: usize,
}

impl DecompositionStats {
    pub fn failures(&self) -> usize {
        self.closure_order_failures
            + self.open_locally_failures
            + self.poset_block_failures
            + self.image_family_failures
            + self.stratification_failures
    }
}

pub fn decomposition_suite(seed: u64, cases: usize, max_n: usize) -> Result<DecompositionStats, DecompositionError> {
    let mut r = rng(seed);
    let mut stats = DecompositionStats { seed, ..Default::default() };
    for _ in 0..cases {
        let d = random_decomposition(&mut r, max_n);
        let report = d.analyze()?;
        stats.cases += 1;
        if report.pi_open != report.tamaki_agrees {
            stats.closure_order_failures += 1;
        }
        let all_lc = report.blocks_locally_closed.iter().all(|&b| b);
        if report.pi_open {
            stats.open_cases += 1;
            if report.quotient_is_poset != all_lc {
                stats.open_locally_failures += 1;
            }
            if d.topology_from_open_images()? != report.quotient {
                stats.image_family_failures += 1;
            }
        }
        if report.pi_closed {
            stats.closed_cases += 1;
            if d.topology_from_closed_images()? != report.quotient {
                stats.image_family_failures += 1;
            }
        }
        if report.quotient_is_poset && !all_lc {
            stats.poset_block_failures += 1;
        }
        let s = d.validate_stratification()?;
        if s.is_stratification && (s.continuous_to_star != Some(true) || s.star_topology_is_quotient != Some(true)) {
            stats.stratification_failures += 1;
        }
    }
    Ok(stats)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ObStats {
    pub seed: u64,
    pub arrangements: usize,
    pub face_pairs: usize,
    pub disagreements: usize,
    pub max_forms: usize,
}

/// Fixed arrangements from the examples plus random ones with small integer
/// coefficients.
pub fn ob_arrangements(seed: u64, random_cases: usize) -> Vec<Arrangement> {
    let mut out = vec![
        Arrangement::from_integers(1, &[&[0, 1], &[-1, 1]]).expect("valid"),
        Arrangement::from_integers(1, &[&[1, 1], &[-1, 1]]).expect("valid"),
        Arrangement::from_integers(2, &[&[0, 1, 0], &[0, 0, 1], &[0, 1, -1]]).expect("valid"),
        Arrangement::coordinate(2),
        Arrangement::coordinate(3),
        Arrangement::from_integers(2, &[&[0, 1, 0], &[-1, 1, 0], &[0, 0, 1], &[-1, 0, 1], &[0, 1, 1]]).expect("valid"),
    ];
    let mut r = rng(seed);
    while out.len() < 6 + random_cases {
        let dim = r.gen_range(1..=2);
        let k = r.gen_range(1..=5);
        let forms: Vec<Vec<_>> = (0..k)
            .map(|_| (0..=dim).map(|_| q(r.gen_range(-2..=2))).collect())
            .collect();
        if let Ok(a) = Arrangement::new(dim, forms) {
            out.push(a);
        }
    }
    out
}

/// Componentwise sign order against closure inclusion on every face pair.
pub fn ob_suite(seed: u64, random_cases: usize) -> Result<ObStats, crate::arrangement::ArrangementError> {
    let mut stats = ObStats { seed, ..Default::default() };
    for a in ob_arrangements(seed, random_cases) {
        let faces = a.enumerate_faces()?;
        stats.arrangements += 1;
        stats.face_pairs += faces.len() * faces.len();
        stats.max_forms = stats.max_forms.max(a.len());
        stats.disagreements += order_closure_disagreements(&a, &faces)?.len();
    }
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass() {
        let s = round_trip_suite(1, 30, 7, 5);
        assert_eq!((s.preorder_failures, s.topology_failures), (0, 0));
        assert_eq!(kuratowski_suite(2, 50, 6).failures, 0);
        let d = decomposition_suite(3, 100, 6).unwrap();
        assert_eq!(d.failures(), 0, "{d:?}");
        assert!(d.open_cases > 0 && d.open_cases < d.cases);
        let o = ob_suite(4, 4).unwrap();
        assert_eq!(o.disagreements, 0);
    }
}
