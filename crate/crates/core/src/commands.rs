//! Command bodies shared by the command-line tool and the corpus runner.
//! Each returns a JSON payload with its checks.

use serde_json::{json, Value};

use crate::arrangement::{face_poset, order_closure_disagreements, Arrangement, ArrangementError, Face};
use crate::decomposition::{product_decomposition, Decomposition, DecompositionError};
use crate::homology::{order_complex, HomologyError};
use crate::homset::yoneda::DEFAULT_FAMILY_CAP;
use crate::homset::{
    hom_preorder, hom_stratified, st_functor_check, yoneda_image, yoneda_natural_transformations, CategoryError,
    FiniteCategory, SetFunctor, Side, StSide, YonedaError,
};
use crate::io::{preorder_json, topology_json};
use crate::linalg::format_rational;
use crate::order::{Poset, Preorder};
use crate::report::Check;
use crate::suites;
use crate::topology::{FiniteTopology, Subset};

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub results: Value,
    pub checks: Vec<Check>,
    /// Order to render as DOT when requested.
    pub dot: Option<Preorder>,
}

impl Outcome {
    fn new(results: Value, checks: Vec<Check>) -> Self {
        Outcome { results, checks, dot: None }
    }

    fn with_dot(mut self, p: Preorder) -> Self {
        self.dot = Some(p);
        self
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Yoneda(#[from] YonedaError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Topology(#[from] crate::topology::TopologyError),
}

fn round_trip_check(t: &FiniteTopology) -> Check {
    let back = FiniteTopology::alexandroff(&t.specialization_preorder());
    Check::new("alexandroff_of_specialization_is_identity", back == *t, format!("{} points", t.len()))
}

pub fn topology_check(t: &FiniteTopology) -> Outcome {
    let p = t.specialization_preorder();
    let results = json!({
        "topology": topology_json(t),
        "specialization": preorder_json(&p),
        "t0": p.is_partial_order(),
    });
    Outcome::new(results, vec![round_trip_check(t)]).with_dot(p)
}

pub fn topology_to_preorder(t: &FiniteTopology) -> Outcome {
    let p = t.specialization_preorder();
    Outcome::new(preorder_json(&p), vec![round_trip_check(t)]).with_dot(p)
}

pub fn topology_from_preorder(p: &Preorder) -> Outcome {
    let t = FiniteTopology::alexandroff(p);
    let back = t.specialization_preorder();
    let check = Check::new("specialization_of_alexandroff_is_identity", back == *p, format!("{} points", p.len()));
    Outcome::new(topology_json(&t), vec![check]).with_dot(p.clone())
}

pub fn topology_closure(t: &FiniteTopology, s: &Subset) -> Outcome {
    let c = t.closure(s);
    let i = t.interior(s);
    let checks = vec![
        Check::new("closure_contains_set", s.is_subset(&c), ""),
        Check::new("closure_idempotent", t.closure(&c) == c, ""),
        Check::new("closure_closed", t.is_closed(&c), ""),
        Check::new("interior_open_and_inside", t.is_open(&i) && i.is_subset(s), ""),
    ];
    let results = json!({
        "set": t.names(s),
        "closure": t.names(&c),
        "interior": t.names(&i),
        "open_hull": t.names(&t.open_hull(s)),
        "open": t.is_open(s),
        "closed": t.is_closed(s),
        "locally_closed": t.is_locally_closed(s),
    });
    Outcome::new(results, checks)
}

pub fn topology_suite(seed: u64, cases: usize) -> Outcome {
    let rt = suites::round_trip_suite(seed, cases, 7, 5);
    let k = suites::kuratowski_suite(seed, cases, 6);
    let checks = vec![
        Check::new(
            "preorder_round_trip",
            rt.preorder_failures == 0,
            format!("{} of {} failed", rt.preorder_failures, rt.preorder_cases),
        ),
        Check::new(
            "topology_round_trip",
            rt.topology_failures == 0,
            format!("{} of {} failed", rt.topology_failures, rt.topology_cases),
        ),
        Check::new("kuratowski_axioms", k.failures == 0, format!("{} of {} failed", k.failures, k.cases)),
    ];
    Outcome::new(json!({ "round_trip": rt, "kuratowski": k }), checks)
}

pub(crate) fn pair_names(p: &Preorder) -> Vec<(String, String)> {
    p.strict_pairs().into_iter().map(|(a, b)| (p.label(a).to_owned(), p.label(b).to_owned())).collect()
}

pub fn decomp_analyze(d: &Decomposition) -> Result<Outcome, CommandError> {
    let r = d.analyze()?;
    let all_lc = r.blocks_locally_closed.iter().all(|&b| b);
    let mut checks = vec![
        Check::new(
            "moore_class_consistent",
            r.moore_class == crate::decomposition::MooreClass::from_flags(r.pi_open, r.pi_closed),
            format!("{:?}", r.moore_class),
        ),
        Check::new(
            "openness_matches_closure_order",
            r.pi_open == r.tamaki_agrees,
            format!("pi_open = {}, closure order equals specialization order = {}", r.pi_open, r.tamaki_agrees),
        ),
        Check::new(
            "poset_quotient_implies_locally_closed",
            !r.quotient_is_poset || all_lc,
            format!("quotient_is_poset = {}, blocks locally closed = {all_lc}", r.quotient_is_poset),
        ),
    ];
    if r.pi_open {
        checks.push(Check::new(
            "open_quotient_poset_iff_locally_closed",
            r.quotient_is_poset == all_lc,
            format!("quotient_is_poset = {}, blocks locally closed = {all_lc}", r.quotient_is_poset),
        ));
        checks.push(Check::new("open_images_give_quotient", d.topology_from_open_images()? == r.quotient, ""));
    }
    if r.pi_closed {
        checks.push(Check::new("closed_images_give_quotient", d.topology_from_closed_images()? == r.quotient, ""));
    }
    let results = json!({
        "blocks": d.blocks().iter().map(|b| d.space().names(b)).collect::<Vec<_>>(),
        "labels": d.labels(),
        "quotient": topology_json(&r.quotient),
        "pi_open": r.pi_open,
        "pi_closed": r.pi_closed,
        "moore_class": r.moore_class,
        "star_preorder": preorder_json(&r.star_preorder),
        "tau_pi_preorder": preorder_json(&r.tau_pi_preorder),
        "tamaki_agrees": r.tamaki_agrees,
        "blocks_locally_closed": r.blocks_locally_closed,
        "frontier_condition": r.frontier_condition,
        "quotient_is_poset": r.quotient_is_poset,
    });
    Ok(Outcome::new(results, checks).with_dot(r.star_preorder))
}

pub fn decomp_quotient(d: &Decomposition) -> Result<Outcome, CommandError> {
    let q = d.quotient_topology();
    // brute force: U is open iff its preimage is open
    let m = d.len();
    let mut agree = true;
    if m <= 16 {
        for mask in 0u32..1 << m {
            let u: Subset = (0..m).filter(|&b| mask >> b & 1 == 1).fold(Subset::with_capacity(m), |mut s, b| {
                s.insert(b);
                s
            });
            let pre = crate::topology::preimage(d.projection(), &u);
            agree &= q.is_open(&u) == d.space().is_open(&pre);
        }
    }
    let p = q.specialization_preorder();
    let checks = vec![Check::new(
        "quotient_opens_are_saturated_opens",
        agree,
        if m <= 16 { format!("all 2^{m} label subsets compared") } else { "skipped above 16 blocks".to_owned() },
    )];
    let results = json!({ "quotient": topology_json(&q), "specialization": preorder_json(&p) });
    Ok(Outcome::new(results, checks).with_dot(p))
}

pub fn decomp_validate(d: &Decomposition) -> Result<Outcome, CommandError> {
    let s = d.validate_stratification()?;
    let consistent = !s.is_stratification
        || (s.continuous_to_star == Some(true) && s.star_topology_is_quotient == Some(true));
    let checks = vec![Check::new(
        "stratification_is_continuous_to_closure_order",
        consistent,
        format!("is_stratification = {}", s.is_stratification),
    )];
    Ok(Outcome::new(serde_json::to_value(&s).expect("serializable"), checks))
}

pub fn decomp_product(factors: &[Decomposition]) -> Result<Outcome, CommandError> {
    let refs: Vec<&Decomposition> = factors.iter().collect();
    let (d, v) = product_decomposition(&refs)?;
    let q = d.quotient_topology();
    let checks = vec![
        Check::new("product_is_lower_semicontinuous", v.lower_semicontinuous, ""),
        Check::new("quotient_is_product_order", v.quotient_matches_product_order, ""),
        Check::new("quotient_is_product_topology", v.quotient_matches_product_topology, ""),
    ];
    let p = q.specialization_preorder();
    let results = json!({
        "labels": d.labels(),
        "block_count": d.len(),
        "quotient": topology_json(&q),
        "quotient_order": preorder_json(&p),
    });
    Ok(Outcome::new(results, checks).with_dot(p))
}

pub fn decomp_suite(seed: u64, cases: usize) -> Result<Outcome, CommandError> {
    let s = suites::decomposition_suite(seed, cases, 6)?;
    let checks = vec![
        Check::new("openness_matches_closure_order", s.closure_order_failures == 0, format!("{} of {}", s.closure_order_failures, s.cases)),
        Check::new(
            "open_quotient_poset_iff_locally_closed",
            s.open_locally_failures == 0,
            format!("{} of {} open cases", s.open_locally_failures, s.open_cases),
        ),
        Check::new("poset_quotient_implies_locally_closed", s.poset_block_failures == 0, format!("{}", s.poset_block_failures)),
        Check::new("image_families_give_quotient", s.image_family_failures == 0, format!("{}", s.image_family_failures)),
        Check::new(
            "stratification_is_continuous_to_closure_order",
            s.stratification_failures == 0,
            format!("{}", s.stratification_failures),
        ),
    ];
    Ok(Outcome::new(serde_json::to_value(&s).expect("serializable"), checks))
}

fn faces_by_dim(a: &Arrangement, faces: &[Face]) -> Vec<usize> {
    let mut counts = vec![0; a.dim() + 1];
    for f in faces {
        counts[f.dim] += 1;
    }
    counts
}

fn witness_check(a: &Arrangement, faces: &[Face]) -> Result<Check, CommandError> {
    let mut bad = 0;
    for f in faces {
        if a.sign_map(&f.witness)? != f.sign_vector {
            bad += 1;
        }
    }
    Ok(Check::new("witnesses_realize_sign_vectors", bad == 0, format!("{bad} of {} faces", faces.len())))
}

pub fn arrangement_faces(a: &Arrangement) -> Result<Outcome, CommandError> {
    let faces = a.enumerate_faces()?;
    let results = json!({
        "face_count": faces.len(),
        "faces_by_dim": faces_by_dim(a, &faces),
        "faces": faces.iter().map(|f| json!({
            "label": f.sign_vector.label(),
            "signs": f.sign_vector.symbols(),
            "dim": f.dim,
            "witness": f.witness.iter().map(format_rational).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });
    Ok(Outcome::new(results, vec![witness_check(a, &faces)?]))
}

/// `(N,O,P)` sign poset, the factor of coordinate face posets.
pub fn sign_poset() -> Preorder {
    Preorder::from_pairs(&["N", "O", "P"], &[("O", "N"), ("O", "P")]).expect("valid")
}

fn matches_sign_product(p: &Poset, factors: usize) -> bool {
    let s = sign_poset();
    let product = Preorder::product(&vec![&s; factors]).expect("nonempty product");
    if product.len() != p.len() {
        return false;
    }
    let map: Option<Vec<usize>> = p.labels().iter().map(|l| product.index_of(l)).collect();
    map.is_some_and(|m| p.is_isomorphic_via(&product, &m))
}

pub fn arrangement_poset(a: &Arrangement) -> Result<Outcome, CommandError> {
    let faces = a.enumerate_faces()?;
    let poset = face_poset(&faces);
    let mut results = preorder_json(&poset);
    let bottom = (0..poset.len()).find(|&i| (0..poset.len()).all(|j| poset.le(i, j)));
    results["bottom"] = bottom.map_or(Value::Null, |b| json!(poset.label(b)));
    results["central"] = json!(a.is_central());
    results["product_of_sign_orders"] = json!(matches_sign_product(&poset, a.len()));
    if poset.len() <= crate::topology::ENUMERATION_CAP {
        results["topology"] = topology_json(&FiniteTopology::alexandroff(&poset));
    }
    let mut checks = vec![witness_check(a, &faces)?];
    if a.is_central() {
        checks.push(Check::new("central_has_bottom", bottom.is_some(), ""));
    }
    Ok(Outcome::new(results, checks).with_dot(poset.into_preorder()))
}

pub fn arrangement_check_ob(a: &Arrangement) -> Result<Outcome, CommandError> {
    let faces = a.enumerate_faces()?;
    let bad = order_closure_disagreements(a, &faces)?;
    let results = json!({
        "face_pairs": faces.len() * faces.len(),
        "disagreements": bad.iter().map(|(f, g)| [f.label(), g.label()]).collect::<Vec<_>>(),
    });
    let checks = vec![Check::new(
        "sign_order_matches_closure_inclusion",
        bad.is_empty(),
        format!("{} of {} pairs disagree", bad.len(), faces.len() * faces.len()),
    )];
    Ok(Outcome::new(results, checks))
}

pub fn homset_preorder(c: &FiniteCategory, x: usize, y: usize, side: Side) -> Result<Outcome, CommandError> {
    let h = hom_preorder(c, x, y, side)?;
    let sides: Vec<Preorder> = [Side::R, Side::L, Side::LR]
        .iter()
        .map(|&s| hom_preorder(c, x, y, s).map(|h| h.preorder))
        .collect::<Result<_, _>>()?;
    let n = h.morphisms.len();
    let lr_contains = (0..n).all(|i| (0..n).all(|j| !(sides[0].le(i, j) || sides[1].le(i, j)) || sides[2].le(i, j)));
    let checks = vec![
        Check::new("reflexive_and_transitive", true, "checked on construction"),
        Check::new("both_sided_contains_one_sided", lr_contains, ""),
    ];
    let results = json!({
        "source": c.objects()[x],
        "target": c.objects()[y],
        "side": side,
        "preorder": preorder_json(&h.preorder),
        "witnesses": h.witnesses,
    });
    Ok(Outcome::new(results, checks).with_dot(h.preorder))
}

pub fn homset_stratify(c: &FiniteCategory, x: usize, y: usize, side: Side) -> Result<Outcome, CommandError> {
    let s = hom_stratified(c, x, y, side)?;
    let r = &s.report;
    let checks = vec![
        Check::new("projection_open", r.projection_open, ""),
        Check::new("classes_locally_closed", r.classes_locally_closed, ""),
        Check::new("quotient_order_is_closure_inclusion", r.order_matches_closure, ""),
    ];
    Ok(Outcome::new(serde_json::to_value(r).expect("serializable"), checks)
        .with_dot(s.stratified.strata().as_preorder().clone()))
}

pub fn homset_functor_check(c: &FiniteCategory, anchor: usize, side: StSide) -> Result<Outcome, CommandError> {
    let r = st_functor_check(c, anchor, side)?;
    let failed: Vec<&str> = r.squares.iter().filter(|s| !s.holds()).map(|s| s.morphism.as_str()).collect();
    let checks = vec![
        Check::new("squares_commute", failed.is_empty(), format!("failed: {failed:?}")),
        Check::new("identities_preserved", r.identities_preserved, ""),
        Check::new("composition_preserved", r.composition_preserved, ""),
    ];
    Ok(Outcome::new(serde_json::to_value(&r).expect("serializable"), checks))
}

pub fn homset_yoneda(c: &FiniteCategory, f: &SetFunctor, anchor: usize) -> Result<Outcome, CommandError> {
    let y = yoneda_natural_transformations(c, f, anchor, DEFAULT_FAMILY_CAP)?;
    let mut checks = vec![
        Check::new(
            "transformations_match_anchor_set",
            y.transformations.len() == y.anchor_set_size,
            format!("{} transformations, {} elements", y.transformations.len(), y.anchor_set_size),
        ),
        Check::new("evaluation_at_identity_bijective", y.bijective, ""),
        Check::new("transformation_determined_by_identity_value", y.inverse_matches, ""),
    ];
    let mut images = Vec::new();
    for x in 0..c.objects().len() {
        let im = yoneda_image(c, f, anchor, x)?;
        checks.push(Check::new(format!("image_natural[{}]", im.object), im.naturality_holds, ""));
        checks.push(Check::new(
            format!("image_reverses_left_order[{}]", im.object),
            im.reverse_inclusion_holds,
            im.note.clone(),
        ));
        images.push(im);
    }
    Ok(Outcome::new(json!({ "natural_transformations": y, "images": images }), checks))
}

pub fn homology_report(p: &Poset, max_dim: Option<usize>) -> Result<Outcome, CommandError> {
    let k = order_complex(p)?;
    let top = max_dim.unwrap_or_else(|| k.dim().unwrap_or(0));
    let betti = k.betti(top);
    let euler_from_betti: i64 = betti.iter().enumerate().map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
    let mut checks = Vec::new();
    if top >= k.dim().unwrap_or(0) {
        checks.push(Check::new(
            "euler_characteristic",
            euler_from_betti == k.euler_characteristic(),
            format!("{} from simplices", k.euler_characteristic()),
        ));
    }
    let mut boundary_ok = true;
    for d in 2..=k.dim().unwrap_or(0) {
        let (a, b) = (k.boundary_matrix(d - 1), k.boundary_matrix(d));
        for row in &a {
            for col in 0..k.simplices(d).len() {
                let mut sum = crate::linalg::q(0);
                for (i, x) in row.iter().enumerate() {
                    sum += x * &b[i][col];
                }
                boundary_ok &= num_traits::Zero::is_zero(&sum);
            }
        }
    }
    checks.push(Check::new("boundary_squares_to_zero", boundary_ok, ""));
    let simplices: Vec<Vec<&str>> = (0..=k.dim().unwrap_or(0))
        .flat_map(|d| k.simplices(d).iter().map(|s| s.iter().map(|&v| k.vertices()[v].as_str()).collect()))
        .collect();
    let results = json!({ "f_vector": k.f_vector(), "betti": betti, "simplices": simplices });
    Ok(Outcome::new(results, checks))
}
