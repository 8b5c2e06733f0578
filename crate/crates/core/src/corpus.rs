//! Golden example corpus. Each case carries its input, the expected values
//! and a note describing the finite model it uses.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::commands::{self, pair_names, CommandError};
use crate::homology::order_complex;
use crate::homset::{yoneda_image, yoneda_natural_transformations, SetFunctor, Side, StSide};
use crate::io::{typed, ArrangementInput, CategoryInput, DecompositionInput, FunctorInput, InputError};
use crate::order::Poset;
use crate::report::Check;
use crate::topology::FiniteTopology;

const FILES: &[(&str, &str)] = &[
    ("ex1", include_str!("../corpus/ex1.json")),
    ("ex2-replica", include_str!("../corpus/ex2-replica.json")),
    ("rational", include_str!("../corpus/rational.json")),
    ("pseudo", include_str!("../corpus/pseudo.json")),
    ("pseudo-prime-replica", include_str!("../corpus/pseudo-prime-replica.json")),
    ("ex6", include_str!("../corpus/ex6.json")),
    ("ex7", include_str!("../corpus/ex7.json")),
    ("coordinate-n3", include_str!("../corpus/coordinate-n3.json")),
    ("arrangement-3lines", include_str!("../corpus/arrangement-3lines.json")),
    ("monoid-idempotent", include_str!("../corpus/monoid-idempotent.json")),
    ("group-c2", include_str!("../corpus/group-c2.json")),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Decomposition,
    Arrangement,
    Category,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Case {
    pub name: String,
    /// `finite-model` or `replica`
    pub provenance: String,
    pub note: String,
    pub kind: Kind,
    pub input: Value,
    pub expected: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseOutcome {
    pub name: String,
    pub provenance: String,
    pub note: String,
    pub results: Value,
    pub checks: Vec<Check>,
}

impl CaseOutcome {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("no corpus case named `{0}`")]
    Unknown(String),
    #[error("corpus case `{0}`: {1}")]
    Input(String, InputError),
    #[error("corpus case `{0}`: {1}")]
    Command(String, Box<CommandError>),
}

pub fn names() -> Vec<&'static str> {
    FILES.iter().map(|(n, _)| *n).collect()
}

pub fn case(name: &str) -> Result<Case, CorpusError> {
    let (_, text) = FILES.iter().find(|(n, _)| *n == name).ok_or_else(|| CorpusError::Unknown(name.to_owned()))?;
    let value = crate::io::parse_value(text).map_err(|e| CorpusError::Input(name.to_owned(), e))?;
    typed(&value).map_err(|e| CorpusError::Input(name.to_owned(), e))
}

pub fn cases() -> Result<Vec<Case>, CorpusError> {
    names().into_iter().map(case).collect()
}

fn normalized_sets(sets: &[Vec<String>]) -> BTreeSet<Vec<String>> {
    sets.iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort();
            s
        })
        .collect()
}

fn expected<T: serde::de::DeserializeOwned>(e: &Value, key: &str) -> Option<T> {
    e.get(key).map(|v| serde_json::from_value(v.clone()).expect("golden files are well formed"))
}

fn open_families(t: &FiniteTopology) -> Vec<Vec<String>> {
    t.opens().expect("small carrier").iter().map(|u| t.names(u)).collect()
}

pub fn run(case: &Case) -> Result<CaseOutcome, CorpusError> {
    let input_err = |e| CorpusError::Input(case.name.clone(), e);
    let cmd_err = |e| CorpusError::Command(case.name.clone(), Box::new(e));
    let e = &case.expected;
    let mut checks = Vec::new();
    let results = match case.kind {
        Kind::Decomposition => {
            let d = typed::<DecompositionInput>(&case.input).and_then(|d| d.build("", false)).map_err(input_err)?;
            let outcome = commands::decomp_analyze(&d).map_err(cmd_err)?;
            checks.extend(outcome.checks);
            let r = d.analyze().map_err(|e| cmd_err(e.into()))?;
            if let Some(opens) = expected::<Vec<Vec<String>>>(e, "quotient_opens") {
                checks.push(Check::equal(
                    "quotient_opens",
                    &normalized_sets(&open_families(&r.quotient)),
                    &normalized_sets(&opens),
                ));
            }
            if let Some(pairs) = expected::<Vec<(String, String)>>(e, "quotient_pairs") {
                let got: BTreeSet<_> = pair_names(&r.tau_pi_preorder).into_iter().collect();
                checks.push(Check::equal("quotient_pairs", &got, &pairs.into_iter().collect()));
            }
            for key in ["pi_open", "quotient_is_poset"] {
                if let Some(want) = expected::<bool>(e, key) {
                    let got = if key == "pi_open" { r.pi_open } else { r.quotient_is_poset };
                    checks.push(Check::equal(key, &got, &want));
                }
            }
            if let Some(want) = expected::<Vec<bool>>(e, "blocks_locally_closed") {
                checks.push(Check::equal("blocks_locally_closed", &r.blocks_locally_closed, &want));
            }
            let mut results = outcome.results;
            if let Some(want) = expected::<Vec<usize>>(e, "betti") {
                let poset = Poset::try_from(r.tau_pi_preorder.clone()).map_err(|e| cmd_err(CommandError::Homology(e.into())))?;
                let k = order_complex(&poset).map_err(|e| cmd_err(e.into()))?;
                let betti = k.betti(want.len() - 1);
                checks.push(Check::equal("betti", &betti, &want));
                results["betti"] = json!(betti);
            }
            results
        }
        Kind::Arrangement => {
            let a = typed::<ArrangementInput>(&case.input).and_then(|a| a.build()).map_err(input_err)?;
            let faces = commands::arrangement_faces(&a).map_err(cmd_err)?;
            let poset = commands::arrangement_poset(&a).map_err(cmd_err)?;
            let ob = commands::arrangement_check_ob(&a).map_err(cmd_err)?;
            checks.extend(faces.checks);
            checks.extend(poset.checks.into_iter().skip(1));
            checks.extend(ob.checks);
            let p = poset.dot.expect("face poset");
            if let Some(want) = expected::<usize>(e, "face_count") {
                checks.push(Check::equal("face_count", &p.len(), &want));
            }
            if let Some(want) = expected::<Vec<usize>>(e, "faces_by_dim") {
                let got: Vec<usize> = serde_json::from_value(faces.results["faces_by_dim"].clone()).expect("counts");
                checks.push(Check::equal("faces_by_dim", &got, &want));
            }
            if let Some(want) = expected::<Vec<(String, String)>>(e, "pairs") {
                let got: BTreeSet<_> = pair_names(&p).into_iter().collect();
                checks.push(Check::equal("pairs", &got, &want.into_iter().collect()));
            }
            let t = FiniteTopology::alexandroff(&p);
            if let Some(want) = expected::<usize>(e, "open_count") {
                checks.push(Check::equal("open_count", &t.opens().map_err(|e| cmd_err(e.into()))?.len(), &want));
            }
            if let Some(want) = expected::<Vec<Vec<String>>>(e, "minimal_opens") {
                let got: Vec<Vec<String>> = (0..t.len()).map(|x| t.names(t.minimal_open(x))).collect();
                checks.push(Check::equal("minimal_opens", &normalized_sets(&got), &normalized_sets(&want)));
            }
            if let Some(want) = expected::<bool>(e, "product_of_sign_orders") {
                checks.push(Check::equal("product_of_sign_orders", &poset.results["product_of_sign_orders"], &json!(want)));
            }
            if let Some(want) = expected::<String>(e, "bottom") {
                checks.push(Check::equal("bottom", &poset.results["bottom"], &json!(want)));
            }
            json!({ "faces": faces.results, "poset": poset.results, "closure_order": ob.results })
        }
        Kind::Category => {
            let c = typed::<CategoryInput>(&case.input["category"]).and_then(|c| c.build("category")).map_err(input_err)?;
            let anchor_name: String = typed(&case.input["anchor"]).map_err(input_err)?;
            let anchor = c.object_index(&anchor_name).map_err(|e| input_err(InputError::new("anchor", e)))?;
            let functor = match case.input.get("functor") {
                Some(v) => typed::<FunctorInput>(v).and_then(|f| f.build(&c, "functor")).map_err(input_err)?,
                None => SetFunctor::representable(&c, anchor),
            };
            let k = c.objects().len();
            for x in 0..k {
                for y in 0..k {
                    if c.hom(x, y).is_empty() {
                        continue;
                    }
                    for side in [Side::R, Side::L, Side::LR] {
                        let o = commands::homset_stratify(&c, x, y, side).map_err(cmd_err)?;
                        let tag = format!("{:?}:{}→{}", side, c.objects()[x], c.objects()[y]);
                        checks.extend(o.checks.into_iter().map(|ch| Check { name: format!("{}[{tag}]", ch.name), ..ch }));
                    }
                }
            }
            for side in [StSide::RCovariant, StSide::LContravariant] {
                checks.extend(commands::homset_functor_check(&c, anchor, side).map_err(cmd_err)?.checks);
            }
            let y = commands::homset_yoneda(&c, &functor, anchor).map_err(cmd_err)?;
            checks.extend(y.checks);
            let mut preorders = serde_json::Map::new();
            for (key, side) in [("R", Side::R), ("L", Side::L), ("LR", Side::LR)] {
                let h = crate::homset::hom_preorder(&c, anchor, anchor, side).map_err(|e| cmd_err(e.into()))?;
                let got: BTreeSet<(String, String)> = pair_names(&h.preorder).into_iter().collect();
                if let Some(want) = e.get("preorders").and_then(|p| p.get(key)) {
                    let want: BTreeSet<(String, String)> =
                        serde_json::from_value(want.clone()).expect("golden files are well formed");
                    checks.push(Check::equal(format!("preorder_{key}"), &got, &want));
                }
                preorders.insert(key.to_owned(), json!(got));
            }
            let nat = yoneda_natural_transformations(&c, &functor, anchor, crate::homset::yoneda::DEFAULT_FAMILY_CAP)
                .map_err(|e| cmd_err(e.into()))?;
            if let Some(want) = expected::<usize>(e, "natural_transformations") {
                checks.push(Check::equal("natural_transformations", &nat.transformations.len(), &want));
            }
            let im = yoneda_image(&c, &functor, anchor, anchor).map_err(|e| cmd_err(e.into()))?;
            if let Some(want) = expected::<Vec<(String, Vec<String>)>>(e, "images") {
                checks.push(Check::equal("images", &im.images, &want));
            }
            if let Some(want) = expected::<bool>(e, "forward_inclusion_holds") {
                checks.push(Check::equal("forward_inclusion_holds", &im.forward_inclusion_holds, &want));
            }
            json!({ "preorders": preorders, "yoneda": y.results })
        }
    };
    Ok(CaseOutcome {
        name: case.name.clone(),
        provenance: case.provenance.clone(),
        note: case.note.clone(),
        results,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_case_passes() {
        for c in cases().unwrap() {
            let o = run(&c).unwrap();
            let failed: Vec<_> = o.checks.iter().filter(|c| !c.pass).collect();
            assert!(failed.is_empty(), "{}: {failed:#?}", c.name);
        }
    }

    #[test]
    fn replicas_are_marked() {
        for c in cases().unwrap() {
            assert_eq!(c.name.ends_with("replica"), c.provenance == "replica", "{}", c.name);
        }
    }
}
