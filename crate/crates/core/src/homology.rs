//! Order complexes of finite posets and their rational homology.

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{q, rank, Q};
use crate::order::{OrderError, Poset, Preorder};

pub const SIMPLEX_CAP: usize = 5000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("more than {cap} simplices")]
    TooManySimplices { cap: usize },
    #[error("simplex {0:?} is missing its face {1:?}")]
    NotClosed(Vec<usize>, Vec<usize>),
    #[error("simplex {0:?} is not strictly increasing or names an unknown vertex")]
    BadSimplex(Vec<usize>),
}

/// Simplices are strictly increasing vertex index lists, grouped by dimension
/// and sorted lexicographically within each dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    pub fn new(vertices: Vec<String>, mut simplices: Vec<Vec<usize>>) -> Result<Self, HomologyError> {
        if simplices.len() > SIMPLEX_CAP {
            return Err(HomologyError::TooManySimplices { cap: SIMPLEX_CAP });
        }
        for s in &simplices {
            if s.is_empty() || s.windows(2).any(|w| w[0] >= w[1]) || s.iter().any(|&v| v >= vertices.len()) {
                return Err(HomologyError::BadSimplex(s.clone()));
            }
        }
        simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        simplices.dedup();
        let top = simplices.last().map_or(0, Vec::len);
        let mut by_dim = vec![Vec::new(); top];
        for s in simplices {
            by_dim[s.len() - 1].push(s);
        }
        let k = SimplicialComplex { vertices, simplices: by_dim };
        for d in 1..k.simplices.len() {
            for s in &k.simplices[d] {
                for i in 0..s.len() {
                    let face = drop_at(s, i);
                    if k.simplices[d - 1].binary_search(&face).is_err() {
                        return Err(HomologyError::NotClosed(s.clone(), face));
                    }
                }
            }
        }
        Ok(k)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Simplices of dimension `d`.
    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        self.simplices.get(d).map_or(&[], Vec::as_slice)
    }

    /// Highest dimension with a simplex, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.len().checked_sub(1)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Matrix of the boundary map from `d`-chains to `(d-1)`-chains, one row
    /// per `(d-1)`-simplex. For `d = 0` the matrix has no rows.
    pub fn boundary_matrix(&self, d: usize) -> Vec<Vec<Q>> {
        let cols = self.simplices(d);
        if d == 0 {
            return Vec::new();
        }
        let rows = self.simplices(d - 1);
        let mut m = vec![vec![q(0); cols.len()]; rows.len()];
        for (j, s) in cols.iter().enumerate() {
            for i in 0..s.len() {
                let r = rows.binary_search(&drop_at(s, i)).expect("downward closed");
                m[r][j] = q(if i % 2 == 0 { 1 } else { -1 });
            }
        }
        m
    }

    fn boundary_rank(&self, d: usize) -> usize {
        if d == 0 || self.simplices(d).is_empty() {
            0
        } else {
            rank(self.boundary_matrix(d))
        }
    }

    /// Rational Betti numbers `b_0 ..= b_max_dim`.
    pub fn betti(&self, max_dim: usize) -> Vec<usize> {
        (0..=max_dim)
            .map(|d| self.simplices(d).len() - self.boundary_rank(d) - self.boundary_rank(d + 1))
            .collect()
    }
}

fn drop_at(s: &[usize], i: usize) -> Vec<usize> {
    s.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v).collect()
}

/// Every nonempty chain of the poset, with vertices in carrier order.
pub fn order_complex(p: &Poset) -> Result<SimplicialComplex, HomologyError> {
    let n = p.len();
    let comparable = |a: usize, b: usize| p.le(a, b) || p.le(b, a);
    let mut simplices: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..n).rev().map(|v| vec![v]).collect();
    while let Some(chain) = stack.pop() {
        let last = *chain.last().expect("nonempty chain");
        for v in (last + 1..n).rev() {
            if chain.iter().all(|&u| comparable(u, v)) {
                let mut next = chain.clone();
                next.push(v);
                stack.push(next);
            }
        }
        simplices.push(chain);
        if simplices.len() > SIMPLEX_CAP {
            return Err(HomologyError::TooManySimplices { cap: SIMPLEX_CAP });
        }
    }
    SimplicialComplex::new(p.labels().to_vec(), simplices)
}

/// [`order_complex`] for a preorder, rejecting inputs that are not antisymmetric.
pub fn order_complex_of(p: &Preorder) -> Result<SimplicialComplex, HomologyError> {
    order_complex(&Poset::try_from(p.clone())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn poset(labels: &[&str], pairs: &[(&str, &str)]) -> Poset {
        Poset::try_from(Preorder::from_pairs(labels, pairs).unwrap()).unwrap()
    }

    fn pseudo_circle() -> Poset {
        poset(&["a", "b", "c", "d"], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
    }

    fn grid() -> Poset {
        let chain = Preorder::from_pairs(&["-", "0", "+"], &[("0", "-"), ("0", "+")]).unwrap();
        Poset::try_from(Preorder::product(&[&chain, &chain]).unwrap()).unwrap()
    }

    fn check_invariants(k: &SimplicialComplex) {
        let top = k.dim().unwrap_or(0);
        for d in 1..=top {
            let (a, b) = (k.boundary_matrix(d), k.boundary_matrix(d + 1));
            // a: C_d -> C_{d-1}, b: C_{d+1} -> C_d
            for row in &a {
                for col in 0..k.simplices(d + 1).len() {
                    let mut sum = q(0);
                    for (i, x) in row.iter().enumerate() {
                        sum += x * &b[i][col];
                    }
                    assert!(sum.is_zero());
                }
            }
        }
        let betti = k.betti(top);
        let alt: i64 = betti.iter().enumerate().map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        assert_eq!(alt, k.euler_characteristic());
    }

    #[test]
    fn pseudo_circle_is_a_circle() {
        let k = order_complex(&pseudo_circle()).unwrap();
        assert_eq!(k.f_vector(), vec![4, 4]);
        assert_eq!(k.simplices(1), &[vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]);
        assert_eq!(k.betti(1), vec![1, 1]);
        check_invariants(&k);
    }

    #[test]
    fn small_cases() {
        let k = order_complex(&poset(&["x"], &[])).unwrap();
        assert_eq!(k.f_vector(), vec![1]);
        assert_eq!(k.betti(1), vec![1, 0]);
        let k = order_complex(&poset(&["0", "1", "2"], &[("0", "1"), ("1", "2")])).unwrap();
        assert_eq!(k.f_vector(), vec![3, 3, 1]);
        assert_eq!(k.betti(2), vec![1, 0, 0]);
        let k = order_complex(&poset(&["a", "b"], &[])).unwrap();
        assert_eq!(k.betti(0), vec![2]);
        check_invariants(&k);
    }

    #[test]
    fn grid_is_contractible() {
        let k = order_complex(&grid()).unwrap();
        assert_eq!(k.betti(1), vec![1, 0]);
        check_invariants(&k);
    }

    #[test]
    fn suspension_of_circle_is_a_sphere() {
        // two minima below two maxima below two tops: the 2-sphere as a poset
        let p = poset(
            &["a", "b", "c", "d", "e", "f"],
            &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "e"), ("c", "f"), ("d", "e"), ("d", "f")],
        );
        let k = order_complex(&p).unwrap();
        assert_eq!(k.betti(2), vec![1, 0, 1]);
        check_invariants(&k);
    }

    #[test]
    fn cone_is_acyclic() {
        let p = poset(
            &["o", "a", "b", "c", "d"],
            &[("o", "a"), ("o", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        );
        let k = order_complex(&p).unwrap();
        assert_eq!(k.betti(2), vec![1, 0, 0]);
        check_invariants(&k);
    }

    #[test]
    fn rejects_preorders_and_open_complexes() {
        let p = Preorder::from_pairs(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap();
        assert!(matches!(order_complex_of(&p), Err(HomologyError::Order(OrderError::NotAntisymmetric(..)))));
        assert!(matches!(
            SimplicialComplex::new(vec!["a".into(), "b".into()], vec![vec![0, 1], vec![0]]),
            Err(HomologyError::NotClosed(..))
        ));
    }
}
