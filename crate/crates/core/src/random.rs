//! Seeded generators for randomized suites.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomposition::Decomposition;
use crate::order::Preorder;
use crate::topology::{canonical_cmp, FiniteTopology, Subset};

pub const EDGE_PROBABILITY: f64 = 0.3;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn point_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// Reflexive–transitive closure of random directed pairs, each present with
/// probability `p`.
pub fn random_preorder<R: Rng>(rng: &mut R, n: usize, p: f64) -> Preorder {
    let labels = point_labels(n);
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && rng.gen_bool(p) {
                pairs.push((labels[a].as_str(), labels[b].as_str()));
            }
        }
    }
    let names: Vec<&str> = labels.iter().map(String::as_str).collect();
    Preorder::from_pairs(&names, &pairs).expect("generated labels are distinct")
}

/// Each point gets a uniformly random block label in `0..n`; empty blocks
/// are dropped and the rest ordered by first member.
pub fn random_partition<R: Rng>(rng: &mut R, n: usize) -> Vec<Subset> {
    let assignment: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    let mut order: Vec<usize> = Vec::new();
    for &b in &assignment {
        if !order.contains(&b) {
            order.push(b);
        }
    }
    order
        .iter()
        .map(|&b| {
            let mut s = Subset::with_capacity(n);
            for (x, &a) in assignment.iter().enumerate() {
                if a == b {
                    s.insert(x);
                }
            }
            s
        })
        .collect()
}

/// A random family of subsets closed under pairwise unions and
/// intersections, together with `∅` and the carrier, in canonical order.
pub fn random_open_family<R: Rng>(rng: &mut R, n: usize) -> Vec<Subset> {
    let random_subset = |rng: &mut R| {
        let mut s = Subset::with_capacity(n);
        for x in 0..n {
            if rng.gen_bool(0.5) {
                s.insert(x);
            }
        }
        s
    };
    let mut family = vec![Subset::with_capacity(n), {
        let mut all = Subset::with_capacity(n);
        all.insert_range(..);
        all
    }];
    let generators = rng.gen_range(0..=n + 1);
    for _ in 0..generators {
        family.push(random_subset(rng));
    }
    loop {
        let mut added = false;
        let current = family.clone();
        for a in &current {
            for b in &current {
                let mut u = a.clone();
                u.union_with(b);
                let mut i = a.clone();
                i.intersect_with(b);
                for s in [u, i] {
                    if !family.contains(&s) {
                        family.push(s);
                        added = true;
                    }
                }
            }
        }
        if !added {
            break;
        }
    }
    family.sort_by(canonical_cmp);
    family.dedup();
    family
}

pub fn random_topology<R: Rng>(rng: &mut R, n: usize) -> FiniteTopology {
    FiniteTopology::from_opens(point_labels(n), random_open_family(rng, n)).expect("family is a topology")
}

/// Random Alexandroff space on `1..=max_n` points with a random partition.
pub fn random_decomposition<R: Rng>(rng: &mut R, max_n: usize) -> Decomposition {
    let n = rng.gen_range(1..=max_n);
    let space = FiniteTopology::alexandroff(&random_preorder(rng, n, EDGE_PROBABILITY));
    let blocks = random_partition(rng, n);
    Decomposition::new(space, blocks, None).expect("partition covers the carrier")
}
