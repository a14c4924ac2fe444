use super::finalize::normalize;
use super::{PrimaryReport, TranslateError};
use crate::caex::{CaexAttribute, CaexElement, ConceptModelDocument, ElementKind};
use crate::owl_expr::{
    complement, AtomicClass, CaexKind, ClassExpression as CE, DataProperty, DataRange, Literal,
    ObjectProperty,
};

/// Translates proper concept models back into one class; several models
/// become a union.
pub fn trans_b(doc: &ConceptModelDocument) -> Result<CE, TranslateError> {
    let reports: Vec<PrimaryReport> = doc
        .models
        .iter()
        .enumerate()
        .map(|(i, m)| PrimaryReport {
            model: i,
            count: m.primary_count(),
            paths: m.primary_paths(),
        })
        .collect();
    if reports.is_empty() || reports.iter().any(|r| r.count != 1) {
        return Err(TranslateError::ImproperModel(
            reports.into_iter().filter(|r| r.count != 1).collect(),
        ));
    }
    let doc = normalize(doc);
    let mut disjuncts = Vec::with_capacity(doc.models.len());
    for (i, m) in doc.models.iter().enumerate() {
        disjuncts.push(model_class(m, &format!("model[{i}]"))?);
    }
    Ok(CE::or(disjuncts))
}

/// Path from the root to the primary element, as child positions in
/// interface-then-internal-element order.
fn primary_path(e: &CaexElement, path: &mut Vec<usize>) -> bool {
    if e.concept.primary {
        return true;
    }
    for (i, c) in e.children().enumerate() {
        path.push(i);
        if primary_path(c, path) {
            return true;
        }
        path.pop();
    }
    false
}

fn model_class(root: &CaexElement, label: &str) -> Result<CE, TranslateError> {
    let mut path = Vec::new();
    if !primary_path(root, &mut path) {
        return Err(TranslateError::ImproperModel(vec![PrimaryReport {
            model: 0,
            count: 0,
            paths: vec![format!("{label}: primary is an attribute")],
        }]));
    }
    // Elements from the root down to the primary.
    let mut chain = vec![root];
    for &i in &path {
        let next = chain.last().unwrap().children().nth(i).unwrap();
        chain.push(next);
    }
    let primary = *chain.last().unwrap();
    let root_interface = chain.len() == 1 && primary.kind == ElementKind::ExternalInterface;
    let mut conjuncts = content(primary, None, root_interface, label)?;

    if chain.len() > 1 {
        conjuncts.push(ancestors(&chain, &path, chain.len() - 1, label)?);
    }
    Ok(CE::and(conjuncts))
}

/// `∃inv.(parent content ⊓ ∃inv.(…))` for the element at `level` of the chain.
fn ancestors(
    chain: &[&CaexElement],
    path: &[usize],
    level: usize,
    label: &str,
) -> Result<CE, TranslateError> {
    let element = chain[level];
    let parent = chain[level - 1];
    let property = match element.kind {
        ElementKind::InternalElement => ObjectProperty::IsIEOf,
        ElementKind::ExternalInterface => ObjectProperty::IsEIOf,
    };
    let mut filler = content(parent, Some(path[level - 1]), false, label)?;
    if !element.concept.has_default_window() {
        // The primary's own window constrains its siblings in the parent.
        let forward = property.inverse();
        let k = CE::and(content(element, None, false, label)?);
        filler.extend(window_restriction(forward, k, element, label)?);
    }
    if level > 1 {
        filler.push(ancestors(chain, path, level - 1, label)?);
    }
    Ok(CE::some(property, CE::and(filler)))
}

fn default_kind(kind: ElementKind) -> CaexKind {
    match kind {
        ElementKind::InternalElement => CaexKind::RoleClass,
        ElementKind::ExternalInterface => CaexKind::InterfaceClass,
    }
}

/// Conjuncts describing one element, optionally leaving out one child.
fn content(
    e: &CaexElement,
    skip: Option<usize>,
    force_annotation: bool,
    label: &str,
) -> Result<Vec<CE>, TranslateError> {
    let mut out = Vec::new();
    match &e.class_ref {
        Some(r) => {
            let kind = (force_annotation || r.kind != default_kind(e.kind)).then_some(r.kind);
            let atom = CE::Atomic(AtomicClass {
                name: r.path.clone(),
                kind,
            });
            out.push(if e.concept.negated {
                CE::not(atom)
            } else {
                atom
            });
        }
        None if e.concept.negated => out.push(CE::Nothing),
        None => {}
    }
    if e.concept.identified_by_id {
        out.push(CE::OneOf(vec![e.id.clone()]));
    }
    for a in &e.attributes {
        out.push(attribute(a, label)?);
    }
    for (i, c) in e.children().enumerate() {
        if Some(i) == skip {
            continue;
        }
        let property = match c.kind {
            ElementKind::InternalElement => ObjectProperty::HasIE,
            ElementKind::ExternalInterface => ObjectProperty::HasEI,
        };
        let k = CE::and(content(c, None, false, label)?);
        out.extend(window_restriction(property, k, c, label)?);
    }
    Ok(out)
}

fn attribute(a: &CaexAttribute, label: &str) -> Result<CE, TranslateError> {
    if !a.concept.has_default_window() || a.concept.primary || a.concept.identified_by_id {
        return Err(TranslateError::NotRepresentable(format!(
            "{label}: attribute {} carries concept attributes other than negated",
            a.name
        )));
    }
    let d = DataProperty::new(a.name.clone());
    Ok(match (&a.required_value, a.concept.negated) {
        (Some(v), false) => CE::DataHasValue(d, Literal::new(v.clone(), a.datatype.clone())),
        (value, negated) => CE::DataSome(
            d,
            DataRange {
                datatype: a.datatype.clone(),
                required_value: value.clone(),
                negated,
            },
        ),
    })
}

fn is_simple(k: &CE) -> bool {
    k.is_literal() || matches!(k, CE::Thing | CE::Nothing)
}

/// Restrictions expressing the cardinality window of a child with content `k`.
fn window_restriction(
    p: ObjectProperty,
    k: CE,
    child: &CaexElement,
    label: &str,
) -> Result<Vec<CE>, TranslateError> {
    let c = &child.concept;
    Ok(match (c.min_cardinality, c.max_cardinality) {
        (1, None) => match &k {
            CE::OneOf(names) if names.len() == 1 => vec![CE::ObjectHasValue(p, names[0].clone())],
            _ => vec![CE::some(p, k)],
        },
        (0, Some(0)) if is_simple(&k) => vec![CE::all(p, complement(&k)?)],
        (0, Some(0)) => vec![CE::max(0, p, k)],
        (n, None) => vec![CE::min(n, p, k)],
        (0, Some(n)) => vec![CE::max(n, p, k)],
        (m, Some(n)) if m == n => vec![CE::exact(n, p, k)],
        (m, Some(n)) if m < n => vec![CE::min(m, p, k.clone()), CE::max(n, p, k)],
        (min, Some(max)) => {
            return Err(TranslateError::AmbiguousCardinality {
                path: format!("{label}/{}", child.name),
                min,
                max,
            })
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caex::{ClassRef, ConceptAttributes};
    use crate::owl_expr::{parse, print};

    fn element(kind: ElementKind, class: Option<&str>) -> CaexElement {
        let mut e = CaexElement::new(kind);
        e.id = format!("{class:?}{}", kind.short());
        e.name = class.unwrap_or("Thing").into();
        e.class_ref = class.map(|c| ClassRef {
            path: c.into(),
            kind: default_kind(kind),
        });
        e
    }

    #[test]
    fn single_primary_with_defaults_is_atomic() {
        let mut e = element(ElementKind::InternalElement, Some("Robot"));
        e.concept.primary = true;
        let ce = trans_b(&ConceptModelDocument::new(vec![e])).unwrap();
        assert_eq!(ce, CE::atomic("Robot"));
    }

    #[test]
    fn interface_model_reads_back_as_class_d() {
        let mut root = element(ElementKind::InternalElement, None);
        let mut p = element(ElementKind::ExternalInterface, Some("IOInterface"));
        p.id = "p".into();
        p.concept.primary = true;
        let mut three = element(ElementKind::ExternalInterface, Some("IOInterface"));
        three.concept = ConceptAttributes::window(3, None);
        root.external_interfaces = vec![p, three];
        let ce = trans_b(&ConceptModelDocument::new(vec![root])).unwrap();
        assert_eq!(
            print(&ce),
            "IOInterface and (isEIOf some (hasEI min 3 IOInterface))"
        );
    }

    #[test]
    fn models_combine_as_a_union() {
        let mut a = element(ElementKind::InternalElement, Some("Robot"));
        a.concept.primary = true;
        let mut b = element(ElementKind::InternalElement, Some("IODevice"));
        b.id = "b".into();
        b.concept.primary = true;
        let ce = trans_b(&ConceptModelDocument::new(vec![a, b])).unwrap();
        assert_eq!(ce, parse("Robot or IODevice").unwrap());
    }

    #[test]
    fn primary_counts_are_reported() {
        let mut root = element(ElementKind::InternalElement, Some("Robot"));
        root.concept.primary = true;
        let mut c = element(ElementKind::InternalElement, Some("A"));
        c.concept.primary = true;
        root.internal_elements.push(c);
        match trans_b(&ConceptModelDocument::new(vec![root])) {
            Err(TranslateError::ImproperModel(r)) => {
                assert_eq!(r[0].count, 2);
                assert_eq!(r[0].paths.len(), 2);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inverted_window_is_ambiguous() {
        let mut root = element(ElementKind::InternalElement, Some("Robot"));
        root.concept.primary = true;
        let mut c = element(ElementKind::InternalElement, Some("A"));
        c.concept = ConceptAttributes::window(3, Some(2));
        root.internal_elements.push(c);
        assert!(matches!(
            trans_b(&ConceptModelDocument::new(vec![root])),
            Err(TranslateError::AmbiguousCardinality { min: 3, max: 2, .. })
        ));
    }

    #[test]
    fn windows_map_back_to_restrictions() {
        let mut root = element(ElementKind::InternalElement, Some("Robot"));
        root.concept.primary = true;
        for (i, (min, max, neg)) in [
            (0, Some(0), true),
            (0, Some(0), false),
            (2, None, false),
            (0, Some(4), false),
            (2, Some(2), false),
            (2, Some(5), false),
            (0, None, false),
        ]
        .into_iter()
        .enumerate()
        {
            let mut c = element(ElementKind::InternalElement, Some(&format!("C{i}")));
            c.concept = ConceptAttributes {
                negated: neg,
                ..ConceptAttributes::window(min, max)
            };
            root.internal_elements.push(c);
        }
        let ce = trans_b(&ConceptModelDocument::new(vec![root])).unwrap();
        assert_eq!(
            print(&ce),
            "Robot and (hasIE only C0) and (hasIE only not C1) and (hasIE min 2 C2) and \
             (hasIE max 4 C3) and (hasIE exactly 2 C4) and (hasIE min 2 C5) and \
             (hasIE max 5 C5) and (hasIE min 0 C6)"
        );
    }
}
