//! Small categories and presheaves shipped with the tool, used by the
//! acceptance suite and the property tests.

use super::{CategorySpec, FiniteCategory, SetFunctor, Variance};

pub fn idempotent() -> FiniteCategory {
    FiniteCategory::monoid("*", "1", &["e"], &[("e", "e", "e")]).expect("valid monoid")
}

pub fn c2() -> FiniteCategory {
    FiniteCategory::monoid("*", "1", &["g"], &[("g", "g", "1")]).expect("valid monoid")
}

fn owned(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// `A → B` with a single non-identity arrow `u`.
pub fn arrow() -> FiniteCategory {
    let s = |v: &str| v.to_owned();
    FiniteCategory::new(&CategorySpec {
        objects: owned(&["A", "B"]),
        homs: vec![(s("A"), s("A"), owned(&["1A"])), (s("B"), s("B"), owned(&["1B"])), (s("A"), s("B"), owned(&["u"]))],
        identities: vec![(s("A"), s("1A")), (s("B"), s("1B"))],
        compose: vec![],
    })
    .expect("valid category")
}

/// `A → B → C` with arrows `u`, `v` and `v∘u = w`.
pub fn chain3() -> FiniteCategory {
    let s = |v: &str| v.to_owned();
    FiniteCategory::new(&CategorySpec {
        objects: owned(&["A", "B", "C"]),
        homs: vec![
            (s("A"), s("A"), owned(&["1A"])),
            (s("B"), s("B"), owned(&["1B"])),
            (s("C"), s("C"), owned(&["1C"])),
            (s("A"), s("B"), owned(&["u"])),
            (s("B"), s("C"), owned(&["v"])),
            (s("A"), s("C"), owned(&["w"])),
        ],
        identities: vec![(s("A"), s("1A")), (s("B"), s("1B")), (s("C"), s("1C"))],
        compose: vec![(s("v"), s("u"), s("w"))],
    })
    .expect("valid category")
}

/// Monoid of self-maps of {0,1,2} generated by `generators` under composition.
pub fn transformation_monoid(generators: &[[usize; 3]]) -> FiniteCategory {
    let mut elems: Vec<[usize; 3]> = vec![[0, 1, 2]];
    elems.extend(generators.iter().copied().filter(|g| *g != [0, 1, 2]));
    let mut i = 0;
    while i < elems.len() {
        for j in 0..elems.len() {
            let (a, b) = (elems[i], elems[j]);
            for p in [[a[b[0]], a[b[1]], a[b[2]]], [b[a[0]], b[a[1]], b[a[2]]]] {
                if !elems.contains(&p) {
                    elems.push(p);
                }
            }
        }
        i += 1;
    }
    let name = |t: &[usize; 3]| format!("{}{}{}", t[0], t[1], t[2]);
    let names: Vec<String> = elems.iter().map(name).collect();
    let mut products = Vec::new();
    for a in &elems[1..] {
        for b in &elems[1..] {
            products.push((name(a), name(b), name(&[a[b[0]], a[b[1]], a[b[2]]])));
        }
    }
    let rest: Vec<&str> = names[1..].iter().map(String::as_str).collect();
    let prods: Vec<(&str, &str, &str)> = products.iter().map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str())).collect();
    FiniteCategory::monoid("*", &names[0], &rest, &prods).expect("closed under composition")
}

pub fn shipped() -> Vec<(&'static str, FiniteCategory)> {
    vec![
        ("idempotent", idempotent()),
        ("c2", c2()),
        ("arrow", arrow()),
        ("chain3", chain3()),
        ("tm-const-swap", transformation_monoid(&[[0, 0, 0], [0, 2, 1]])),
        ("tm-merge", transformation_monoid(&[[0, 1, 1]])),
        ("tm-two-merges", transformation_monoid(&[[0, 0, 2], [0, 1, 0]])),
    ]
}

/// Presheaf given by labelled sets and the image lists of every non-identity
/// morphism, in the order of its source set.
fn presheaf(c: &FiniteCategory, sets: &[&[&str]], maps: &[(&str, &[&str])]) -> SetFunctor {
    let sets: Vec<Vec<String>> = sets.iter().map(|s| owned(s)).collect();
    let images: Vec<Vec<String>> = c
        .morphisms()
        .iter()
        .map(|m| match maps.iter().find(|(l, _)| *l == m.label) {
            Some((_, v)) => owned(v),
            None => sets[m.cod].clone(),
        })
        .collect();
    SetFunctor::from_labels(c, Variance::Contravariant, sets, &images).expect("valid presheaf")
}

pub struct YonedaInstance {
    pub name: &'static str,
    pub category: FiniteCategory,
    pub functor: SetFunctor,
    pub anchor: usize,
}

/// Category, contravariant functor and anchor triples; the `*-self` entries
/// use the representable functor of the anchor itself.
pub fn yoneda_instances() -> Vec<YonedaInstance> {
    let mut out = Vec::new();
    let c = idempotent();
    let f = presheaf(&c, &[&["0", "1"]], &[("e", &["0", "0"])]);
    out.push(YonedaInstance { name: "idempotent-const", category: c, functor: f, anchor: 0 });
    let c = idempotent();
    let f = SetFunctor::representable(&c, 0);
    out.push(YonedaInstance { name: "idempotent-self", category: c, functor: f, anchor: 0 });
    let c = c2();
    let f = presheaf(&c, &[&["a", "b", "z"]], &[("g", &["b", "a", "z"])]);
    out.push(YonedaInstance { name: "c2-swap", category: c, functor: f, anchor: 0 });
    let c = arrow();
    let f = presheaf(&c, &[&["a1", "a2"], &["b"]], &[("u", &["a1"])]);
    out.push(YonedaInstance { name: "arrow-at-A", category: c, functor: f, anchor: 0 });
    let c = arrow();
    let f = presheaf(&c, &[&["a1", "a2"], &["b1", "b2"]], &[("u", &["a2", "a1"])]);
    out.push(YonedaInstance { name: "arrow-at-B", category: c, functor: f, anchor: 1 });
    let c = chain3();
    let f = SetFunctor::representable(&c, 2);
    out.push(YonedaInstance { name: "chain3-self", category: c, functor: f, anchor: 2 });
    let c = transformation_monoid(&[[0, 1, 1]]);
    let f = SetFunctor::representable(&c, 0);
    out.push(YonedaInstance { name: "tm-merge-self", category: c, functor: f, anchor: 0 });
    out
}
