//! JSON input schemas, conversion into domain values, and JSON renderings.
//!
//! Every failure while reading input is an [`InputError`] naming the
//! location in the document (`$` for the root, `space.opens[2]`, ...).

use std::fmt;
use std::marker::PhantomData;

use serde::de::{DeserializeOwned, MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::arrangement::Arrangement;
use crate::decomposition::Decomposition;
use crate::homset::{CategorySpec, FiniteCategory, SetFunctor, Variance};
use crate::linalg::{parse_rational, Q};
use crate::order::Preorder;
use crate::topology::{FiniteTopology, ENUMERATION_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InputError {
    pub schema_path: String,
    pub message: String,
}

impl InputError {
    pub fn new(path: impl Into<String>, message: impl fmt::Display) -> Self {
        InputError { schema_path: path.into(), message: message.to_string() }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.schema_path, self.message)
    }
}

impl std::error::Error for InputError {}

/// Parses text as JSON without interpreting it.
pub fn parse_value(text: &str) -> Result<Value, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::new("$", e))
}

/// Typed view of a JSON value, reporting the path of the first mismatch.
pub fn typed<T: DeserializeOwned>(value: &Value) -> Result<T, InputError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { "$".to_owned() } else { path };
        InputError::new(path, e.into_inner())
    })
}

/// Hex SHA-256 of the compact serialization of `value`.
pub fn digest(value: &Value) -> String {
    let bytes = serde_json::to_vec(value).expect("values always serialize");
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn join(prefix: &str, field: &str) -> String {
    if prefix.is_empty() {
        field.to_owned()
    } else {
        format!("{prefix}.{field}")
    }
}

/// A JSON object read as key/value pairs in document order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ordered<V>(pub Vec<(String, V)>);

impl<'de, V: Deserialize<'de>> Deserialize<'de> for Ordered<V> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V2<V>(PhantomData<V>);
        impl<'de, V: Deserialize<'de>> Visitor<'de> for V2<V> {
            type Value = Ordered<V>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = map.next_entry()? {
                    out.push((k, v));
                }
                Ok(Ordered(out))
            }
        }
        d.deserialize_map(V2(PhantomData))
    }
}

impl<V> Ordered<V> {
    fn get(&self, key: &str) -> Option<&V> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PreorderInput {
    pub carrier: Vec<String>,
    #[serde(default)]
    pub pairs: Vec<(String, String)>,
}

impl PreorderInput {
    /// With `dual`, every pair is reversed.
    pub fn build(&self, path: &str, dual: bool) -> Result<Preorder, InputError> {
        let pairs: Vec<(&str, &str)> = self
            .pairs
            .iter()
            .map(|(a, b)| if dual { (b.as_str(), a.as_str()) } else { (a.as_str(), b.as_str()) })
            .collect();
        let carrier: Vec<&str> = self.carrier.iter().map(String::as_str).collect();
        Preorder::from_pairs(&carrier, &pairs).map_err(|e| InputError::new(join(path, "pairs"), e))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopologyInput {
    pub carrier: Vec<String>,
    pub opens: Option<Vec<Vec<String>>>,
    pub preorder_pairs: Option<Vec<(String, String)>>,
}

impl TopologyInput {
    /// With `dual`, the closed sets of the described topology become the opens.
    pub fn build(&self, path: &str, dual: bool) -> Result<FiniteTopology, InputError> {
        let t = match (&self.opens, &self.preorder_pairs) {
            (Some(opens), None) => FiniteTopology::from_labelled_opens(&self.carrier, opens)
                .map_err(|e| InputError::new(join(path, "opens"), e))?,
            (None, Some(pairs)) => {
                let p = PreorderInput { carrier: self.carrier.clone(), pairs: pairs.clone() };
                FiniteTopology::alexandroff(&p.build(path, false).map_err(|e| {
                    InputError::new(join(path, "preorder_pairs"), e.message)
                })?)
            }
            _ => return Err(InputError::new(path_or_root(path), "exactly one of `opens` or `preorder_pairs` is required")),
        };
        Ok(if dual { t.dual() } else { t })
    }
}

fn path_or_root(path: &str) -> String {
    if path.is_empty() {
        "$".to_owned()
    } else {
        path.to_owned()
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionInput {
    pub space: TopologyInput,
    pub blocks: Vec<Vec<String>>,
    pub labels: Option<Vec<String>>,
}

impl DecompositionInput {
    pub fn build(&self, path: &str, dual: bool) -> Result<Decomposition, InputError> {
        let space = self.space.build(&join(path, "space"), dual)?;
        Decomposition::from_labelled(space, &self.blocks, self.labels.clone())
            .map_err(|e| InputError::new(join(path, "blocks"), e))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductInput {
    pub factors: Vec<DecompositionInput>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RationalInput {
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementInput {
    pub dim: usize,
    pub forms: Vec<Vec<RationalInput>>,
}

impl ArrangementInput {
    pub fn build(&self) -> Result<Arrangement, InputError> {
        let mut forms = Vec::with_capacity(self.forms.len());
        for (i, form) in self.forms.iter().enumerate() {
            let mut row = Vec::with_capacity(form.len());
            for (j, c) in form.iter().enumerate() {
                let v: Q = match c {
                    RationalInput::Int(n) => Q::from_integer((*n).into()),
                    RationalInput::Text(s) => parse_rational(s)
                        .ok_or_else(|| InputError::new(format!("forms[{i}][{j}]"), format!("`{s}` is not a rational")))?,
                };
                row.push(v);
            }
            forms.push(row);
        }
        Arrangement::new(self.dim, forms).map_err(|e| InputError::new("forms", e))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryInput {
    pub objects: Vec<String>,
    /// Keys `"X→Y"` (or `"X->Y"`).
    pub homs: Ordered<Vec<String>>,
    pub identities: Ordered<String>,
    #[serde(default)]
    pub compose: Vec<(String, String, String)>,
}

impl CategoryInput {
    pub fn build(&self, path: &str) -> Result<FiniteCategory, InputError> {
        let mut homs = Vec::new();
        for (key, labels) in &self.homs.0 {
            let (x, y) = key
                .split_once('→')
                .or_else(|| key.split_once("->"))
                .ok_or_else(|| InputError::new(join(path, &format!("homs.{key}")), "hom keys have the form `X→Y`"))?;
            homs.push((x.trim().to_owned(), y.trim().to_owned(), labels.clone()));
        }
        let spec = CategorySpec {
            objects: self.objects.clone(),
            homs,
            identities: self.identities.0.clone(),
            compose: self.compose.clone(),
        };
        FiniteCategory::new(&spec).map_err(|e| InputError::new(path_or_root(path), e))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum MapInput {
    /// Images in the order of the source set.
    List(Vec<String>),
    /// Element to image.
    Table(Ordered<String>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorInput {
    pub variance: Variance,
    pub on_objects: Ordered<Vec<String>>,
    pub on_morphisms: Ordered<MapInput>,
}

impl FunctorInput {
    pub fn build(&self, c: &FiniteCategory, path: &str) -> Result<SetFunctor, InputError> {
        let sets: Vec<Vec<String>> = c
            .objects()
            .iter()
            .map(|o| {
                self.on_objects
                    .get(o)
                    .cloned()
                    .ok_or_else(|| InputError::new(join(path, &format!("on_objects.{o}")), "missing object"))
            })
            .collect::<Result<_, _>>()?;
        for (o, _) in &self.on_objects.0 {
            if !c.objects().contains(o) {
                return Err(InputError::new(join(path, &format!("on_objects.{o}")), "unknown object"));
            }
        }
        for (m, _) in &self.on_morphisms.0 {
            if c.morphism_index(m).is_err() {
                return Err(InputError::new(join(path, &format!("on_morphisms.{m}")), "unknown morphism"));
            }
        }
        let mut maps = Vec::with_capacity(c.morphisms().len());
        for (mi, m) in c.morphisms().iter().enumerate() {
            let here = join(path, &format!("on_morphisms.{}", m.label));
            let source = match self.variance {
                Variance::Covariant => m.dom,
                Variance::Contravariant => m.cod,
            };
            let images = match self.on_morphisms.get(&m.label) {
                Some(MapInput::List(v)) => v.clone(),
                Some(MapInput::Table(t)) => sets[source]
                    .iter()
                    .map(|e| t.get(e).cloned().ok_or_else(|| InputError::new(&here, format!("no image for `{e}`"))))
                    .collect::<Result<_, _>>()?,
                // identities may be omitted
                None if (0..c.objects().len()).any(|x| c.id(x) == mi) => sets[source].clone(),
                None => return Err(InputError::new(here, "missing morphism")),
            };
            maps.push(images);
        }
        SetFunctor::from_labels(c, self.variance, sets, &maps).map_err(|e| InputError::new(join(path, "on_morphisms"), e))
    }
}

pub fn preorder_json(p: &Preorder) -> Value {
    let name = |(a, b): (usize, usize)| json!([p.label(a), p.label(b)]);
    json!({
        "carrier": p.labels(),
        "pairs": p.strict_pairs().into_iter().map(name).collect::<Vec<_>>(),
        "covering_pairs": p.covering_pairs().into_iter().map(name).collect::<Vec<_>>(),
        "is_partial_order": p.is_partial_order(),
    })
}

pub fn topology_json(t: &FiniteTopology) -> Value {
    let opens = if t.len() <= ENUMERATION_CAP {
        let opens = t.opens().expect("within the enumeration cap");
        json!({ "count": opens.len(), "sets": opens.iter().map(|u| t.names(u)).collect::<Vec<_>>() })
    } else {
        Value::Null
    };
    json!({
        "carrier": t.labels(),
        "minimal_opens": (0..t.len())
            .map(|x| json!({ "point": t.labels()[x], "open": t.names(t.minimal_open(x)) }))
            .collect::<Vec<_>>(),
        "opens": opens,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_paths() {
        let v = parse_value(r#"{"space": {"carrier": ["a"], "opens": [[1]]}, "blocks": [["a"]]}"#).unwrap();
        let e = typed::<DecompositionInput>(&v).unwrap_err();
        assert_eq!(e.schema_path, "space.opens[0][0]");
        let v = parse_value(r#"{"carrier": ["a", "b"], "opens": [[], ["a"]]}"#).unwrap();
        let e = typed::<TopologyInput>(&v).unwrap().build("", false).unwrap_err();
        assert_eq!(e.schema_path, "opens");
        let v = parse_value(r#"{"carrier": ["a"]}"#).unwrap();
        assert_eq!(typed::<TopologyInput>(&v).unwrap().build("", false).unwrap_err().schema_path, "$");
        assert_eq!(parse_value("{").unwrap_err().schema_path, "$");
        let v = parse_value(r#"{"dim": 1, "forms": [[0, "1/0"]]}"#).unwrap();
        assert_eq!(typed::<ArrangementInput>(&v).unwrap().build().unwrap_err().schema_path, "forms[0][1]");
    }

    #[test]
    fn category_and_functor() {
        let v = parse_value(
            r#"{"objects": ["*"], "homs": {"*→*": ["1", "e"]}, "identities": {"*": "1"}, "compose": [["e", "e", "e"]]}"#,
        )
        .unwrap();
        let c = typed::<CategoryInput>(&v).unwrap().build("").unwrap();
        assert_eq!(c.morphisms().len(), 2);
        let f = parse_value(
            r#"{"variance": "contravariant", "on_objects": {"*": ["0", "1"]}, "on_morphisms": {"e": {"0": "0", "1": "0"}}}"#,
        )
        .unwrap();
        let f = typed::<FunctorInput>(&f).unwrap().build(&c, "").unwrap();
        assert_eq!(f.map(1), &[0, 0]);
    }

    #[test]
    fn dual_reverses() {
        let v = parse_value(r#"{"carrier": ["O", "N"], "pairs": [["O", "N"]]}"#).unwrap();
        let p = typed::<PreorderInput>(&v).unwrap();
        assert!(p.build("", false).unwrap().le(0, 1));
        assert!(p.build("", true).unwrap().le(1, 0));
        let t = parse_value(r#"{"carrier": ["O", "N"], "opens": [[], ["N"], ["O", "N"]]}"#).unwrap();
        let t = typed::<TopologyInput>(&t).unwrap().build("", true).unwrap();
        assert!(t.is_open(&t.subset(&["O"]).unwrap()));
        assert_eq!(digest(&v), digest(&v.clone()));
    }
}
