//! Real hyperplane arrangements with rational affine forms.
//!
//! Faces are the nonempty cells `∩ A_i` with `A_i ∈ {H_i^-, H_i, H_i^+}`,
//! identified with their sign vectors in `{−, 0, +}^k` (written `N`, `O`,
//! `P`). Face existence is decided exactly with [`feasibility`]. The face
//! poset uses the componentwise order with `0` below `−` and `+`; the
//! closure-containment test in [`closure_inclusion`] is an independent check
//! of that order.

pub mod feasibility;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{rank, signum, Q};
use crate::order::{Poset, Preorder};
use feasibility::{find_point, is_feasible, Constraint, Relation};

/// Default bound on the number of hyperplanes for face enumeration.
pub const DEFAULT_FORM_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("an arrangement needs at least one form")]
    NoForms,
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("form {index} has {got} coefficients, expected {expected}")]
    FormLength { index: usize, expected: usize, got: usize },
    #[error("form {0} has zero linear part and defines no hyperplane")]
    DegenerateForm(usize),
    #[error("point has dimension {got}, arrangement has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{forms} forms exceed the enumeration cap of {cap}")]
    CapExceeded { forms: usize, cap: usize },
    #[error("sign vector has length {got}, expected {expected}")]
    SignLength { expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub const ALL: [Sign; 3] = [Sign::Neg, Sign::Zero, Sign::Pos];

    pub fn letter(self) -> char {
        match self {
            Sign::Neg => 'N',
            Sign::Zero => 'O',
            Sign::Pos => 'P',
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            'N' | '-' => Some(Sign::Neg),
            'O' | '0' => Some(Sign::Zero),
            'P' | '+' => Some(Sign::Pos),
            _ => None,
        }
    }

    /// `0 <= -`, `0 <= +`, and each sign below itself.
    pub fn precedes(self, other: Sign) -> bool {
        self == other || self == Sign::Zero
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Componentwise order.
    pub fn precedes(&self, other: &SignVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a.precedes(*b))
    }

    /// `(N,O,P)` style label, matching product-order labels.
    pub fn label(&self) -> String {
        let letters: Vec<String> = self.0.iter().map(|s| s.letter().to_string()).collect();
        format!("({})", letters.join(","))
    }

    /// `(-,0,+)` style rendering.
    pub fn symbols(&self) -> String {
        let s: Vec<String> = self.0.iter().map(|s| s.symbol().to_string()).collect();
        format!("({})", s.join(","))
    }

    pub fn parse(s: &str) -> Option<SignVector> {
        s.trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|p| {
                let mut chars = p.trim().chars();
                match (chars.next(), chars.next()) {
                    (Some(c), None) => Sign::from_char(c),
                    _ => None,
                }
            })
            .collect::<Option<Vec<_>>>()
            .map(SignVector)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbols())
    }
}

/// `k` affine forms `a_0 + a_1 x_1 + ... + a_n x_n` on `Q^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    forms: Vec<Vec<Q>>,
}

/// A nonempty cell with a rational point inside it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    #[serde(serialize_with = "serialize_signs")]
    pub sign_vector: SignVector,
    #[serde(serialize_with = "serialize_point")]
    pub witness: Vec<Q>,
    /// Dimension of the affine hull.
    pub dim: usize,
}

fn serialize_signs<S: serde::Serializer>(v: &SignVector, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.symbols())
}

fn serialize_point<S: serde::Serializer>(p: &[Q], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(p.iter().map(crate::linalg::format_rational))
}

impl Arrangement {
    pub fn new(dim: usize, forms: Vec<Vec<Q>>) -> Result<Self, ArrangementError> {
        if dim == 0 {
            return Err(ArrangementError::ZeroDimension);
        }
        if forms.is_empty() {
            return Err(ArrangementError::NoForms);
        }
        for (index, f) in forms.iter().enumerate() {
            if f.len() != dim + 1 {
                return Err(ArrangementError::FormLength { index, expected: dim + 1, got: f.len() });
            }
            if f[1..].iter().all(|c| signum(c) == 0) {
                return Err(ArrangementError::DegenerateForm(index));
            }
        }
        Ok(Arrangement { dim, forms })
    }

    /// Arrangement from integer coefficient rows.
    pub fn from_integers(dim: usize, forms: &[&[i64]]) -> Result<Self, ArrangementError> {
        let forms = forms.iter().map(|f| f.iter().map(|&c| crate::linalg::q(c)).collect()).collect();
        Self::new(dim, forms)
    }

    /// `{x_1 = 0, ..., x_n = 0}`.
    pub fn coordinate(n: usize) -> Self {
        let forms = (0..n)
            .map(|i| {
                let mut f = vec![crate::linalg::q(0); n + 1];
                f[i + 1] = crate::linalg::q(1);
                f
            })
            .collect();
        Arrangement::new(n, forms).expect("coordinate hyperplanes are nondegenerate")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn forms(&self) -> &[Vec<Q>] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn is_central(&self) -> bool {
        self.forms.iter().all(|f| signum(&f[0]) == 0)
    }

    fn evaluate(&self, i: usize, x: &[Q]) -> Q {
        let f = &self.forms[i];
        f[1..].iter().zip(x).fold(f[0].clone(), |acc, (a, v)| acc + a * v)
    }

    /// Signs of every form at `x`.
    pub fn sign_map(&self, x: &[Q]) -> Result<SignVector, ArrangementError> {
        if x.len() != self.dim {
            return Err(ArrangementError::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        Ok(SignVector(
            (0..self.len())
                .map(|i| match signum(&self.evaluate(i, x)) {
                    -1 => Sign::Neg,
                    0 => Sign::Zero,
                    _ => Sign::Pos,
                })
                .collect(),
        ))
    }

    fn constraint(&self, i: usize, sign: Sign) -> Constraint {
        let (constant, coeffs) = (&self.forms[i][0], &self.forms[i][1..]);
        match sign {
            Sign::Pos => Constraint::new(coeffs.to_vec(), constant.clone(), Relation::Gt),
            Sign::Zero => Constraint::new(coeffs.to_vec(), constant.clone(), Relation::Eq),
            Sign::Neg => Constraint::lt(coeffs, constant),
        }
    }

    /// Constraint system of the cell with the given (possibly partial) signs.
    fn cell_system(&self, signs: &[Sign]) -> Vec<Constraint> {
        signs.iter().enumerate().map(|(i, &s)| self.constraint(i, s)).collect()
    }

    fn check_length(&self, v: &SignVector) -> Result<(), ArrangementError> {
        if v.len() != self.len() {
            return Err(ArrangementError::SignLength { expected: self.len(), got: v.len() });
        }
        Ok(())
    }

    /// Whether the cell with sign vector `v` is nonempty.
    pub fn is_realizable(&self, v: &SignVector) -> Result<bool, ArrangementError> {
        self.check_length(v)?;
        Ok(is_feasible(self.dim, &self.cell_system(&v.0)))
    }

    pub fn enumerate_faces(&self) -> Result<Vec<Face>, ArrangementError> {
        self.enumerate_faces_capped(DEFAULT_FORM_CAP)
    }

    /// All nonempty cells in lexicographic sign order (`− < 0 < +`).
    /// Prefixes whose partial system is already infeasible are pruned.
    pub fn enumerate_faces_capped(&self, cap: usize) -> Result<Vec<Face>, ArrangementError> {
        if self.len() > cap {
            return Err(ArrangementError::CapExceeded { forms: self.len(), cap });
        }
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(self.len());
        self.extend_prefix(&mut prefix, &mut out);
        Ok(out)
    }

    fn extend_prefix(&self, prefix: &mut Vec<Sign>, out: &mut Vec<Face>) {
        for s in Sign::ALL {
            prefix.push(s);
            if let Some(witness) = find_point(self.dim, &self.cell_system(prefix)) {
                if prefix.len() == self.len() {
                    let sign_vector = SignVector(prefix.clone());
                    debug_assert_eq!(self.sign_map(&witness).as_ref(), Ok(&sign_vector));
                    let dim = self.face_dimension(&sign_vector);
                    out.push(Face { sign_vector, witness, dim });
                } else {
                    self.extend_prefix(prefix, out);
                }
            }
            prefix.pop();
        }
    }

    /// `n − rank` of the normals of the forms vanishing on the face.
    fn face_dimension(&self, v: &SignVector) -> usize {
        let normals: Vec<Vec<Q>> = v
            .0
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Sign::Zero)
            .map(|(i, _)| self.forms[i][1..].to_vec())
            .collect();
        self.dim - rank(normals)
    }

    /// Whether every point of face `f` lies in the closure of face `g`.
    ///
    /// The closure of a nonempty relatively open cell is its weak
    /// relaxation, so this holds iff `f`'s system stays infeasible after
    /// adding the negation of each weak constraint of `g`.
    pub fn closure_inclusion(&self, f: &SignVector, g: &SignVector) -> Result<bool, ArrangementError> {
        self.check_length(f)?;
        self.check_length(g)?;
        let base = self.cell_system(&f.0);
        let escapes_closure = |extra: Constraint| {
            let mut sys = base.clone();
            sys.push(extra);
            is_feasible(self.dim, &sys)
        };
        for (i, &s) in g.0.iter().enumerate() {
            let negations = match s {
                Sign::Zero => vec![self.constraint(i, Sign::Pos), self.constraint(i, Sign::Neg)],
                Sign::Pos => vec![self.constraint(i, Sign::Neg)],
                Sign::Neg => vec![self.constraint(i, Sign::Pos)],
            };
            if negations.into_iter().any(escapes_closure) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Componentwise sign order on the given faces, labelled by [`SignVector::label`].
pub fn face_poset(faces: &[Face]) -> Poset {
    let labels: Vec<String> = faces.iter().map(|f| f.sign_vector.label()).collect();
    let n = faces.len();
    let rows = faces
        .iter()
        .map(|a| {
            let mut row = fixedbitset::FixedBitSet::with_capacity(n);
            for (j, b) in faces.iter().enumerate() {
                if a.sign_vector.precedes(&b.sign_vector) {
                    row.insert(j);
                }
            }
            row
        })
        .collect();
    let order = Preorder::from_relation(labels, rows).expect("sign order is a preorder");
    Poset::try_from(order).expect("distinct sign vectors give an antisymmetric order")
}

/// Face pairs on which the componentwise order and closure inclusion disagree.
pub fn order_closure_disagreements(
    arrangement: &Arrangement,
    faces: &[Face],
) -> Result<Vec<(SignVector, SignVector)>, ArrangementError> {
    let mut out = Vec::new();
    for f in faces {
        for g in faces {
            let by_order = f.sign_vector.precedes(&g.sign_vector);
            let by_closure = arrangement.closure_inclusion(&f.sign_vector, &g.sign_vector)?;
            if by_order != by_closure {
                out.push((f.sign_vector.clone(), g.sign_vector.clone()));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn sv(s: &str) -> SignVector {
        SignVector::parse(s).unwrap()
    }

    fn signs(faces: &[Face]) -> Vec<String> {
        faces.iter().map(|f| f.sign_vector.symbols()).collect()
    }

    #[test]
    fn sign_map_examples() {
        let line = Arrangement::from_integers(1, &[&[0, 1]]).unwrap();
        assert_eq!(line.sign_map(&[q(-3)]).unwrap(), sv("(-)"));
        let coord = Arrangement::coordinate(2);
        assert_eq!(coord.sign_map(&[q(0), q(0)]).unwrap(), sv("(0,0)"));
        let two = Arrangement::from_integers(1, &[&[0, 1], &[-1, 1]]).unwrap();
        assert_eq!(two.sign_map(&[Q::new(1.into(), 2.into())]).unwrap(), sv("(+,-)"));
        assert!(matches!(two.sign_map(&[q(0), q(0)]), Err(ArrangementError::DimensionMismatch { .. })));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Arrangement::from_integers(1, &[]), Err(ArrangementError::NoForms));
        assert_eq!(Arrangement::from_integers(1, &[&[1, 0]]), Err(ArrangementError::DegenerateForm(0)));
        assert!(matches!(Arrangement::from_integers(2, &[&[1, 0]]), Err(ArrangementError::FormLength { .. })));
        assert_eq!(Arrangement::from_integers(0, &[&[1]]), Err(ArrangementError::ZeroDimension));
    }

    #[test]
    fn line_has_three_faces() {
        let a = Arrangement::from_integers(1, &[&[0, 1]]).unwrap();
        let faces = a.enumerate_faces().unwrap();
        assert_eq!(signs(&faces), vec!["(-)", "(0)", "(+)"]);
        let p = face_poset(&faces);
        assert_eq!(p.strict_pairs(), vec![(1, 0), (1, 2)]);
    }

    #[test]
    fn two_points_on_a_line() {
        let a = Arrangement::from_integers(1, &[&[0, 1], &[-1, 1]]).unwrap();
        let faces = a.enumerate_faces().unwrap();
        assert_eq!(signs(&faces), vec!["(-,-)", "(0,-)", "(+,-)", "(+,0)", "(+,+)"]);
        for bad in ["(-,0)", "(-,+)", "(0,0)", "(0,+)"] {
            assert!(!a.is_realizable(&sv(bad)).unwrap());
        }
        for f in &faces {
            assert_eq!(a.sign_map(&f.witness).unwrap(), f.sign_vector);
        }
        assert!(!a.closure_inclusion(&sv("(0,-)"), &sv("(+,+)")).unwrap());
        assert!(a.closure_inclusion(&sv("(0,-)"), &sv("(+,-)")).unwrap());
        assert!(order_closure_disagreements(&a, &faces).unwrap().is_empty());
    }

    #[test]
    fn coordinate_plane_has_nine_faces() {
        let faces = Arrangement::coordinate(2).enumerate_faces().unwrap();
        assert_eq!(faces.len(), 9);
        let p = face_poset(&faces);
        let bottom = p.index_of("(O,O)").unwrap();
        assert!((0..9).all(|j| p.le(bottom, j)));
    }

    #[test]
    fn three_central_lines() {
        let a = Arrangement::from_integers(2, &[&[0, 1, 0], &[0, 0, 1], &[0, 1, -1]]).unwrap();
        let faces = a.enumerate_faces().unwrap();
        assert_eq!(faces.len(), 13);
        let by_dim = |d| faces.iter().filter(|f| f.dim == d).count();
        assert_eq!((by_dim(0), by_dim(1), by_dim(2)), (1, 6, 6));
        let p = face_poset(&faces);
        let covers = p.covering_pairs();
        for (i, f) in faces.iter().enumerate() {
            let below = covers.iter().filter(|(_, j)| *j == i).count();
            match f.dim {
                0 => assert_eq!(below, 0),
                1 => assert_eq!(below, 1),
                _ => assert_eq!(below, 2),
            }
        }
        assert!(order_closure_disagreements(&a, &faces).unwrap().is_empty());
    }

    #[test]
    fn closure_inclusion_basics() {
        let a = Arrangement::from_integers(1, &[&[0, 1]]).unwrap();
        assert!(a.closure_inclusion(&sv("(0)"), &sv("(+)")).unwrap());
        assert!(a.closure_inclusion(&sv("(+)"), &sv("(+)")).unwrap());
        assert!(!a.closure_inclusion(&sv("(+)"), &sv("(0)")).unwrap());
        assert!(!a.closure_inclusion(&sv("(-)"), &sv("(+)")).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let forms: Vec<Vec<Q>> = (0..13).map(|i| vec![q(i), q(1)]).collect();
        let a = Arrangement::new(1, forms).unwrap();
        assert!(matches!(a.enumerate_faces(), Err(ArrangementError::CapExceeded { forms: 13, cap: 12 })));
        assert_eq!(a.enumerate_faces_capped(13).unwrap().len(), 27);
    }

    #[test]
    fn sign_vector_parsing() {
        assert_eq!(sv("(N,O,P)"), sv("(-,0,+)"));
        assert_eq!(sv("(N,O,P)").label(), "(N,O,P)");
        assert!(SignVector::parse("(x)").is_none());
    }
}
