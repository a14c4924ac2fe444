use std::collections::BTreeSet;

use super::world::{ObjectId, World};
use crate::caex::{CaexAttribute, CaexElement, ConceptModelDocument};
use crate::owl_expr::DataRange;

fn attribute_holds(a: &CaexAttribute, world: &World, o: ObjectId) -> bool {
    let range = DataRange {
        datatype: a.datatype.clone(),
        required_value: a.required_value.clone(),
        negated: a.concept.negated,
    };
    world.objects[o]
        .attributes
        .get(&a.name)
        .is_some_and(|l| range.contains(l))
}

/// Whether object `o` fits element `e`. With `primary = Some(x)` the
/// element's primary (somewhere in its subtree) must also be mapped to `x`.
/// The root's kind is not checked.
pub fn match_element(
    e: &CaexElement,
    world: &World,
    o: ObjectId,
    primary: Option<ObjectId>,
) -> bool {
    let obj = &world.objects[o];
    match &e.class_ref {
        Some(r) => {
            if obj.labels.contains(&r.path) == e.concept.negated {
                return false;
            }
        }
        None if e.concept.negated => return false,
        None => {}
    }
    if e.concept.identified_by_id && obj.individual.as_deref() != Some(e.id.as_str()) {
        return false;
    }
    if !e.attributes.iter().all(|a| attribute_holds(a, world, o)) {
        return false;
    }
    if e.concept.primary && primary.is_some_and(|x| x != o) {
        return false;
    }
    for c in e.children() {
        let candidates: Vec<ObjectId> = obj
            .children
            .iter()
            .copied()
            .filter(|&y| world.objects[y].kind == c.kind)
            .collect();
        let n = candidates
            .iter()
            .filter(|&&y| match_element(c, world, y, None))
            .count() as u32;
        if n < c.concept.min_cardinality || c.concept.max_cardinality.is_some_and(|m| n > m) {
            return false;
        }
        if primary.is_some()
            && c.primary_count() > 0
            && !candidates
                .iter()
                .any(|&y| match_element(c, world, y, primary))
        {
            return false;
        }
    }
    true
}

/// Objects that some model of `doc` can place at its primary element.
pub fn model_members(doc: &ConceptModelDocument, world: &World) -> BTreeSet<ObjectId> {
    (0..world.len())
        .filter(|&x| {
            doc.models
                .iter()
                .any(|m| (0..world.len()).any(|r| match_element(m, world, r, Some(x))))
        })
        .collect()
}
