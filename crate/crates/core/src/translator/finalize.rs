//! Canonical shape of a concept model: redundant existentials absorbed,
//! children in a total order, IDs and names regenerated.

use crate::caex::{CaexAttribute, CaexElement, ConceptModelDocument};

const CROCKFORD: &[u8; 32] = b"0123456789ABCDEFGHJKMNPQRSTVWXYZ";

/// Seed of the ID generator.
pub const ID_SEED: u64 = 0;

/// 26-character Crockford base32 rendering of `seed << 64 | counter`.
pub fn crockford_id(seed: u64, counter: u64) -> String {
    let value = (u128::from(seed) << 64) | u128::from(counter);
    (0..26)
        .map(|i| {
            let shift = 125 - 5 * i;
            CROCKFORD[((value >> shift) & 31) as usize] as char
        })
        .collect()
}

/// Applies the canonical shape to every model of a copy of `doc`.
pub fn normalize(doc: &ConceptModelDocument) -> ConceptModelDocument {
    let mut out = doc.clone();
    let mut counter = 0;
    for m in &mut out.models {
        finalize_model(m, &mut counter);
    }
    out
}

pub(crate) fn finalize_model(root: &mut CaexElement, counter: &mut u64) {
    shape(root);
    assign_ids(root, counter);
}

fn contains_primary(e: &CaexElement) -> bool {
    e.primary_count() > 0
}

fn shape(e: &mut CaexElement) {
    for c in e.children_mut() {
        shape(c);
    }
    absorb(&mut e.external_interfaces);
    absorb(&mut e.internal_elements);
    e.attributes.sort_by_cached_key(attribute_key);
    sort_children(&mut e.external_interfaces);
    sort_children(&mut e.internal_elements);
}

/// Drops an unbounded child with minimum 1 when a sibling with the same
/// content already requires at least as many.
fn absorb(children: &mut Vec<CaexElement>) {
    let keys: Vec<Option<String>> = children
        .iter()
        .map(|c| (!contains_primary(c)).then(|| content_key(c)))
        .collect();
    let mut drop = vec![false; children.len()];
    for i in 0..children.len() {
        let ci = &children[i].concept;
        if keys[i].is_none() || ci.min_cardinality != 1 || ci.max_cardinality.is_some() {
            continue;
        }
        drop[i] = (0..children.len()).any(|j| {
            let cj = &children[j].concept;
            j != i
                && !drop[j]
                && keys[j] == keys[i]
                && cj.max_cardinality.is_none()
                && cj.min_cardinality >= 1
                && (cj.min_cardinality > 1 || j < i)
        });
    }
    let mut i = 0;
    children.retain(|_| {
        i += 1;
        !drop[i - 1]
    });
}

fn sort_children(children: &mut [CaexElement]) {
    children.sort_by_cached_key(|c| (!contains_primary(c), canonical_key(c)));
}

fn assign_ids(e: &mut CaexElement, counter: &mut u64) {
    if !e.concept.identified_by_id {
        e.id = crockford_id(ID_SEED, *counter);
        *counter += 1;
    }
    e.name = match &e.class_ref {
        Some(r) => r.path.clone(),
        None if e.concept.identified_by_id => e.id.clone(),
        None => "Thing".to_string(),
    };
    for c in e
        .external_interfaces
        .iter_mut()
        .chain(e.internal_elements.iter_mut())
    {
        assign_ids(c, counter);
    }
}

fn attribute_key(a: &CaexAttribute) -> String {
    let c = &a.concept;
    format!(
        "{}@{}:{}={:?}{}{}",
        if c.negated { "!" } else { "" },
        a.name,
        a.datatype,
        a.required_value,
        c.window_text(),
        if c.primary { "*" } else { "" }
    )
}

/// Serialization of a model that ignores generated IDs and names; two
/// models with equal keys are the same concept model.
pub fn canonical_key(e: &CaexElement) -> String {
    key(e, true)
}

fn content_key(e: &CaexElement) -> String {
    key(e, false)
}

fn key(e: &CaexElement, with_window: bool) -> String {
    let c = &e.concept;
    let mut s = String::new();
    if c.negated {
        s.push('!');
    }
    s.push_str(e.kind.short());
    if let Some(r) = &e.class_ref {
        s.push_str(&format!(" {}@{:?}", r.path, r.kind));
    }
    if with_window {
        s.push_str(&c.window_text());
    }
    if c.identified_by_id {
        s.push_str(&format!(" #{}", e.id));
    }
    if c.primary {
        s.push('*');
    }
    let mut attrs: Vec<String> = e.attributes.iter().map(attribute_key).collect();
    attrs.sort();
    let mut kids: Vec<String> = e.children().map(canonical_key).collect();
    kids.sort();
    s.push('{');
    s.push_str(&attrs.join(","));
    s.push('|');
    s.push_str(&kids.join(","));
    s.push('}');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caex::{ConceptAttributes, ElementKind};

    #[test]
    fn ids_are_26_crockford_digits() {
        assert_eq!(crockford_id(0, 0), "00000000000000000000000000");
        assert_eq!(crockford_id(0, 33), "00000000000000000000000011");
        assert_eq!(
            crockford_id(u64::MAX, u64::MAX),
            "7ZZZZZZZZZZZZZZZZZZZZZZZZZ"
        );
    }

    fn thing(window: ConceptAttributes) -> CaexElement {
        let mut e = CaexElement::new(ElementKind::InternalElement);
        e.concept = window;
        e
    }

    #[test]
    fn existential_is_absorbed_by_at_least() {
        let mut root = thing(ConceptAttributes::default());
        root.internal_elements
            .push(thing(ConceptAttributes::default()));
        root.internal_elements
            .push(thing(ConceptAttributes::window(3, None)));
        root.concept.primary = true;
        let doc = normalize(&ConceptModelDocument::new(vec![root]));
        let kids = &doc.models[0].internal_elements;
        assert_eq!(kids.len(), 1);
        assert_eq!(kids[0].concept.min_cardinality, 3);
    }

    #[test]
    fn primary_children_are_never_absorbed_and_come_first() {
        let mut root = thing(ConceptAttributes::default());
        root.internal_elements
            .push(thing(ConceptAttributes::window(3, None)));
        let mut p = thing(ConceptAttributes::default());
        p.concept.primary = true;
        root.internal_elements.push(p);
        let doc = normalize(&ConceptModelDocument::new(vec![root]));
        let kids = &doc.models[0].internal_elements;
        assert_eq!(kids.len(), 2);
        assert!(kids[0].concept.primary);
    }

    #[test]
    fn duplicates_collapse() {
        let mut root = thing(ConceptAttributes::default());
        root.concept.primary = true;
        root.internal_elements
            .push(thing(ConceptAttributes::default()));
        root.internal_elements
            .push(thing(ConceptAttributes::default()));
        assert_eq!(
            normalize(&ConceptModelDocument::new(vec![root])).models[0]
                .internal_elements
                .len(),
            1
        );
    }
}
