//! Finite categories given by explicit composition tables.

use std::collections::HashMap;

use thiserror::Error;

/// Upper bound on the total number of morphisms accepted at load.
pub const MORPHISM_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("duplicate object `{0}`")]
    DuplicateObject(String),
    #[error("morphism label `{0}` used twice")]
    DuplicateMorphism(String),
    #[error("{0} morphisms exceed the cap of {MORPHISM_CAP}")]
    TooManyMorphisms(usize),
    #[error("object `{0}` has no identity")]
    MissingIdentity(String),
    #[error("identity `{0}` of `{1}` is not an endomorphism of `{1}`")]
    IdentityNotEndo(String, String),
    #[error("`{0}` ∘ `{1}` is not composable")]
    NotComposable(String, String),
    #[error("`{0}` ∘ `{1}` is missing from the composition table")]
    MissingComposite(String, String),
    #[error("`{0}` ∘ `{1}` is given two different values")]
    ConflictingComposite(String, String),
    #[error("`{0}` ∘ `{1}` = `{2}` lands in the wrong hom-set")]
    WrongHomSet(String, String, String),
    #[error("identity law fails for `{0}`")]
    IdentityLaw(String),
    #[error("associativity fails for `{0}`, `{1}`, `{2}`")]
    Associativity(String, String, String),
    #[error("hom({0}, {1}) is empty")]
    EmptyHomSet(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub label: String,
    pub dom: usize,
    pub cod: usize,
}

/// Objects, finite hom-sets, identities and a total composition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    homs: Vec<Vec<Vec<usize>>>,
    identities: Vec<usize>,
    // compose[g * m + f] = g ∘ f, defined when cod f = dom g
    compose: Vec<Option<usize>>,
}

/// Label-level description used to build a [`FiniteCategory`].
#[derive(Debug, Clone, Default)]
pub struct CategorySpec {
    pub objects: Vec<String>,
    /// `(dom, cod, morphism labels)`
    pub homs: Vec<(String, String, Vec<String>)>,
    /// `(object, identity morphism)`
    pub identities: Vec<(String, String)>,
    /// `(g, f, g ∘ f)`; composites with identities may be omitted.
    pub compose: Vec<(String, String, String)>,
}

impl FiniteCategory {
    pub fn new(spec: &CategorySpec) -> Result<Self, CategoryError> {
        let mut object_index = HashMap::new();
        for (i, o) in spec.objects.iter().enumerate() {
            if object_index.insert(o.as_str(), i).is_some() {
                return Err(CategoryError::DuplicateObject(o.clone()));
            }
        }
        let obj = |l: &str| object_index.get(l).copied().ok_or_else(|| CategoryError::UnknownObject(l.to_owned()));
        let k = spec.objects.len();
        let mut morphisms = Vec::new();
        let mut morphism_index = HashMap::new();
        let mut homs = vec![vec![Vec::new(); k]; k];
        for (d, c, labels) in &spec.homs {
            let (dom, cod) = (obj(d)?, obj(c)?);
            for l in labels {
                if morphism_index.insert(l.clone(), morphisms.len()).is_some() {
                    return Err(CategoryError::DuplicateMorphism(l.clone()));
                }
                homs[dom][cod].push(morphisms.len());
                morphisms.push(Morphism { label: l.clone(), dom, cod });
            }
        }
        let m = morphisms.len();
        if m > MORPHISM_CAP {
            return Err(CategoryError::TooManyMorphisms(m));
        }
        let mor = |l: &str| morphism_index.get(l).copied().ok_or_else(|| CategoryError::UnknownMorphism(l.to_owned()));

        let mut identities = vec![usize::MAX; k];
        for (o, l) in &spec.identities {
            let (x, f) = (obj(o)?, mor(l)?);
            if morphisms[f].dom != x || morphisms[f].cod != x {
                return Err(CategoryError::IdentityNotEndo(l.clone(), o.clone()));
            }
            identities[x] = f;
        }
        if let Some(x) = identities.iter().position(|&i| i == usize::MAX) {
            return Err(CategoryError::MissingIdentity(spec.objects[x].clone()));
        }

        let mut compose = vec![None; m * m];
        let set = |g: usize, f: usize, h: usize, compose: &mut Vec<Option<usize>>| -> Result<(), CategoryError> {
            let name = |i: usize| morphisms[i].label.clone();
            if morphisms[f].cod != morphisms[g].dom {
                return Err(CategoryError::NotComposable(name(g), name(f)));
            }
            if morphisms[h].dom != morphisms[f].dom || morphisms[h].cod != morphisms[g].cod {
                return Err(CategoryError::WrongHomSet(name(g), name(f), name(h)));
            }
            match compose[g * m + f] {
                Some(prev) if prev != h => Err(CategoryError::ConflictingComposite(name(g), name(f))),
                _ => {
                    compose[g * m + f] = Some(h);
                    Ok(())
                }
            }
        };
        for (g, f, h) in &spec.compose {
            set(mor(g)?, mor(f)?, mor(h)?, &mut compose)?;
        }
        for f in 0..m {
            let (dom, cod) = (morphisms[f].dom, morphisms[f].cod);
            if compose[identities[cod] * m + f].is_none() {
                set(identities[cod], f, f, &mut compose)?;
            }
            if compose[f * m + identities[dom]].is_none() {
                set(f, identities[dom], f, &mut compose)?;
            }
        }

        let cat = FiniteCategory { objects: spec.objects.clone(), morphisms, homs, identities, compose };
        cat.check_laws()?;
        Ok(cat)
    }

    fn check_laws(&self) -> Result<(), CategoryError> {
        let m = self.morphisms.len();
        let name = |i: usize| self.morphisms[i].label.clone();
        for g in 0..m {
            for f in 0..m {
                if self.morphisms[f].cod == self.morphisms[g].dom && self.compose[g * m + f].is_none() {
                    return Err(CategoryError::MissingComposite(name(g), name(f)));
                }
            }
        }
        for f in 0..m {
            let Morphism { dom, cod, .. } = self.morphisms[f];
            if self.comp(self.identities[cod], f) != f || self.comp(f, self.identities[dom]) != f {
                return Err(CategoryError::IdentityLaw(name(f)));
            }
        }
        for f in 0..m {
            for g in self.composable_after(f) {
                for h in self.composable_after(g) {
                    if self.comp(h, self.comp(g, f)) != self.comp(self.comp(h, g), f) {
                        return Err(CategoryError::Associativity(name(h), name(g), name(f)));
                    }
                }
            }
        }
        Ok(())
    }

    fn composable_after(&self, f: usize) -> impl Iterator<Item = usize> + '_ {
        let cod = self.morphisms[f].cod;
        (0..self.objects.len()).flat_map(move |z| self.homs[cod][z].iter().copied())
    }

    /// One-object category of a finite monoid. `products` lists `(a, b, a·b)`
    /// for the non-identity elements; composition is `a ∘ b = a·b`.
    pub fn monoid(object: &str, identity: &str, elements: &[&str], products: &[(&str, &str, &str)]) -> Result<Self, CategoryError> {
        let mut labels = vec![identity.to_owned()];
        labels.extend(elements.iter().map(|e| e.to_string()));
        let spec = CategorySpec {
            objects: vec![object.to_owned()],
            homs: vec![(object.to_owned(), object.to_owned(), labels)],
            identities: vec![(object.to_owned(), identity.to_owned())],
            compose: products.iter().map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string())).collect(),
        };
        Self::new(&spec)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_index(&self, label: &str) -> Result<usize, CategoryError> {
        self.objects
            .iter()
            .position(|o| o == label)
            .ok_or_else(|| CategoryError::UnknownObject(label.to_owned()))
    }

    pub fn morphism_index(&self, label: &str) -> Result<usize, CategoryError> {
        self.morphisms
            .iter()
            .position(|f| f.label == label)
            .ok_or_else(|| CategoryError::UnknownMorphism(label.to_owned()))
    }

    pub fn label(&self, f: usize) -> &str {
        &self.morphisms[f].label
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.homs[x][y]
    }

    pub fn id(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn dom(&self, f: usize) -> usize {
        self.morphisms[f].dom
    }

    pub fn cod(&self, f: usize) -> usize {
        self.morphisms[f].cod
    }

    /// `g ∘ f`; panics if the pair is not composable.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        self.compose[g * self.morphisms.len() + f].expect("composable pair")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn idempotent_monoid() -> FiniteCategory {
        FiniteCategory::monoid("*", "1", &["e"], &[("e", "e", "e")]).unwrap()
    }

    #[test]
    fn monoid_tables() {
        let c = idempotent_monoid();
        let e = c.morphism_index("e").unwrap();
        assert_eq!(c.comp(e, e), e);
        assert_eq!(c.comp(c.id(0), e), e);
        let g = FiniteCategory::monoid("*", "1", &["g"], &[("g", "g", "1")]).unwrap();
        let gi = g.morphism_index("g").unwrap();
        assert_eq!(g.comp(gi, gi), g.id(0));
    }

    #[test]
    fn missing_composite() {
        assert_eq!(
            FiniteCategory::monoid("*", "1", &["e"], &[]),
            Err(CategoryError::MissingComposite("e".into(), "e".into()))
        );
    }

    #[test]
    fn associativity_violation() {
        // a∘a = b, a∘b = a, b∘a = b, b∘b = b: (a∘a)∘b = b∘b = b, a∘(a∘b) = a∘a = b ok;
        // (a∘b)∘a = a∘a = b, a∘(b∘a) = a∘b = a  -> fails
        let r = FiniteCategory::monoid(
            "*",
            "1",
            &["a", "b"],
            &[("a", "a", "b"), ("a", "b", "a"), ("b", "a", "b"), ("b", "b", "b")],
        );
        assert!(matches!(r, Err(CategoryError::Associativity(..))));
    }

    #[test]
    fn structural_errors() {
        let spec = CategorySpec {
            objects: vec!["A".into(), "B".into()],
            homs: vec![
                ("A".into(), "A".into(), vec!["1A".into()]),
                ("B".into(), "B".into(), vec!["1B".into()]),
                ("A".into(), "B".into(), vec!["u".into()]),
            ],
            identities: vec![("A".into(), "1A".into()), ("B".into(), "1B".into())],
            compose: vec![],
        };
        let c = FiniteCategory::new(&spec).unwrap();
        assert_eq!(c.hom(0, 1).len(), 1);
        assert!(c.hom(1, 0).is_empty());

        let mut bad = spec.clone();
        bad.compose.push(("u".into(), "u".into(), "u".into()));
        assert!(matches!(FiniteCategory::new(&bad), Err(CategoryError::NotComposable(..))));

        let mut bad = spec.clone();
        bad.identities.pop();
        assert_eq!(FiniteCategory::new(&bad), Err(CategoryError::MissingIdentity("B".into())));

        let mut bad = spec.clone();
        bad.identities[1] = ("B".into(), "u".into());
        assert!(matches!(FiniteCategory::new(&bad), Err(CategoryError::IdentityNotEndo(..))));

        let mut bad = spec;
        bad.compose.push(("1B".into(), "u".into(), "1A".into()));
        assert!(matches!(FiniteCategory::new(&bad), Err(CategoryError::WrongHomSet(..))));
    }
}
