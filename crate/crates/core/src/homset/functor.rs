//! Set-valued functors on finite categories.

use thiserror::Error;

use super::category::{CategoryError, FiniteCategory};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Covariant,
    Contravariant,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error("expected {expected} object sets, got {got}")]
    ObjectCount { expected: usize, got: usize },
    #[error("expected {expected} morphism maps, got {got}")]
    MorphismCount { expected: usize, got: usize },
    #[error("duplicate element `{1}` in the set of `{0}`")]
    DuplicateElement(String, String),
    #[error("unknown element `{1}` in the set of `{0}`")]
    UnknownElement(String, String),
    #[error("map for `{morphism}` has {got} entries, expected {expected}")]
    MapLength { morphism: String, expected: usize, got: usize },
    #[error("map for `{0}` sends an element outside its codomain set")]
    MapRange(String),
    #[error("identity `{0}` is not sent to an identity function")]
    Identity(String),
    #[error("composition fails for `{0}` ∘ `{1}`")]
    Composition(String, String),
    #[error("a contravariant functor is required")]
    NotContravariant,
}

/// A functor into finite sets. Each object is sent to a labelled set and each
/// morphism `f: X → Y` to an index map `F(X) → F(Y)` (covariant) or
/// `F(Y) → F(X)` (contravariant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFunctor {
    variance: Variance,
    sets: Vec<Vec<String>>,
    maps: Vec<Vec<usize>>,
}

impl SetFunctor {
    pub fn new(
        c: &FiniteCategory,
        variance: Variance,
        sets: Vec<Vec<String>>,
        maps: Vec<Vec<usize>>,
    ) -> Result<Self, FunctorError> {
        if sets.len() != c.objects().len() {
            return Err(FunctorError::ObjectCount { expected: c.objects().len(), got: sets.len() });
        }
        if maps.len() != c.morphisms().len() {
            return Err(FunctorError::MorphismCount { expected: c.morphisms().len(), got: maps.len() });
        }
        for (x, set) in sets.iter().enumerate() {
            for (i, e) in set.iter().enumerate() {
                if set[..i].contains(e) {
                    return Err(FunctorError::DuplicateElement(c.objects()[x].clone(), e.clone()));
                }
            }
        }
        let f = SetFunctor { variance, sets, maps };
        for (m, map) in f.maps.iter().enumerate() {
            let (from, to) = f.ends(c, m);
            if map.len() != f.sets[from].len() {
                return Err(FunctorError::MapLength {
                    morphism: c.label(m).to_owned(),
                    expected: f.sets[from].len(),
                    got: map.len(),
                });
            }
            if map.iter().any(|&v| v >= f.sets[to].len()) {
                return Err(FunctorError::MapRange(c.label(m).to_owned()));
            }
        }
        for x in 0..c.objects().len() {
            let id = c.id(x);
            if f.maps[id].iter().enumerate().any(|(i, &v)| i != v) {
                return Err(FunctorError::Identity(c.label(id).to_owned()));
            }
        }
        for g in 0..c.morphisms().len() {
            for &h in (0..c.objects().len()).flat_map(|z| c.hom(c.cod(g), z)) {
                // covariant: F(h∘g) = F(h)∘F(g); contravariant: F(h∘g) = F(g)∘F(h)
                let hg = c.comp(h, g);
                let (first, second) = match variance {
                    Variance::Covariant => (g, h),
                    Variance::Contravariant => (h, g),
                };
                let ok = (0..f.maps[hg].len()).all(|i| f.maps[hg][i] == f.maps[second][f.maps[first][i]]);
                if !ok {
                    return Err(FunctorError::Composition(c.label(h).to_owned(), c.label(g).to_owned()));
                }
            }
        }
        Ok(f)
    }

    /// Builds a functor from element labels: `maps[m][i]` names the image of
    /// the `i`-th element of the source set of `F(m)`.
    pub fn from_labels(
        c: &FiniteCategory,
        variance: Variance,
        sets: Vec<Vec<String>>,
        maps: &[Vec<String>],
    ) -> Result<Self, FunctorError> {
        if sets.len() != c.objects().len() {
            return Err(FunctorError::ObjectCount { expected: c.objects().len(), got: sets.len() });
        }
        if maps.len() != c.morphisms().len() {
            return Err(FunctorError::MorphismCount { expected: c.morphisms().len(), got: maps.len() });
        }
        let probe = SetFunctor { variance, sets, maps: Vec::new() };
        let mut indexed = Vec::with_capacity(maps.len());
        for (m, images) in maps.iter().enumerate() {
            let (_, to) = probe.ends(c, m);
            let target = &probe.sets[to];
            let row = images
                .iter()
                .map(|e| {
                    target
                        .iter()
                        .position(|t| t == e)
                        .ok_or_else(|| FunctorError::UnknownElement(c.objects()[to].clone(), e.clone()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            indexed.push(row);
        }
        SetFunctor::new(c, variance, probe.sets, indexed)
    }

    /// The contravariant representable functor `hom(-, a)`, acting by precomposition.
    pub fn representable(c: &FiniteCategory, a: usize) -> Self {
        let k = c.objects().len();
        let sets = (0..k).map(|x| c.hom(x, a).iter().map(|&f| c.label(f).to_owned()).collect()).collect();
        let maps = (0..c.morphisms().len())
            .map(|u| {
                // u: X' → X sends f ∈ hom(X, a) to f ∘ u ∈ hom(X', a)
                let target = c.hom(c.dom(u), a);
                c.hom(c.cod(u), a)
                    .iter()
                    .map(|&f| target.iter().position(|&g| g == c.comp(f, u)).expect("composite in hom-set"))
                    .collect()
            })
            .collect();
        SetFunctor { variance: Variance::Contravariant, sets, maps }
    }

    /// Source and target object whose sets `F(m)` maps between.
    fn ends(&self, c: &FiniteCategory, m: usize) -> (usize, usize) {
        match self.variance {
            Variance::Covariant => (c.dom(m), c.cod(m)),
            Variance::Contravariant => (c.cod(m), c.dom(m)),
        }
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn set(&self, x: usize) -> &[String] {
        &self.sets[x]
    }

    pub fn map(&self, m: usize) -> &[usize] {
        &self.maps[m]
    }

    pub fn apply(&self, m: usize, element: usize) -> usize {
        self.maps[m][element]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn idempotent_action() {
        let c = FiniteCategory::monoid("*", "1", &["e"], &[("e", "e", "e")]).unwrap();
        let f = SetFunctor::from_labels(&c, Variance::Contravariant, vec![s(&["0", "1"])], &[s(&["0", "1"]), s(&["0", "0"])])
            .unwrap();
        assert_eq!(f.apply(1, 1), 0);
        // a swap is not idempotent
        let bad = SetFunctor::from_labels(&c, Variance::Contravariant, vec![s(&["0", "1"])], &[s(&["0", "1"]), s(&["1", "0"])]);
        assert!(matches!(bad, Err(FunctorError::Composition(..))));
        let bad = SetFunctor::from_labels(&c, Variance::Contravariant, vec![s(&["0", "1"])], &[s(&["1", "1"]), s(&["0", "0"])]);
        assert!(matches!(bad, Err(FunctorError::Identity(..))));
    }

    #[test]
    fn variance_reverses_composition() {
        // monoid {1, a, b} with left-zero products: x∘y = x
        let c = FiniteCategory::monoid(
            "*",
            "1",
            &["a", "b"],
            &[("a", "a", "a"), ("a", "b", "a"), ("b", "a", "b"), ("b", "b", "b")],
        )
        .unwrap();
        // constant maps c_a, c_b on {p, q}: c_x ∘ c_y = c_x, so covariant works
        let sets = vec![s(&["p", "q"])];
        let maps = [s(&["p", "q"]), s(&["p", "p"]), s(&["q", "q"])];
        assert!(SetFunctor::from_labels(&c, Variance::Covariant, sets.clone(), &maps).is_ok());
        // contravariant would need F(a∘b) = F(b)∘F(a) = c_b, but F(a) = c_a
        assert!(SetFunctor::from_labels(&c, Variance::Contravariant, sets, &maps).is_err());
    }

    #[test]
    fn representable_is_valid() {
        let c = FiniteCategory::monoid("*", "1", &["e"], &[("e", "e", "e")]).unwrap();
        let h = SetFunctor::representable(&c, 0);
        let again = SetFunctor::new(&c, Variance::Contravariant, h.sets.clone(), h.maps.clone()).unwrap();
        assert_eq!(h, again);
        // e^*: f ↦ f∘e sends both 1 and e to e
        assert_eq!(h.map(1), &[1, 1]);
    }
}
