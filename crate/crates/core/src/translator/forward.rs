use super::finalize::finalize_model;
use super::{MappingPattern, MappingRow, TranslateError};
use crate::caex::{
    is_reserved, CaexAttribute, CaexElement, ClassRef, ConceptAttributes, ConceptModelDocument,
    ElementKind,
};
use crate::concept_tree::{
    construct_d, remove_inverse_property, ConceptTreeNode as Node, Flavor, NodeKind,
};
use crate::owl_expr::{
    bare_datatype, check_proper, nnf, top_position_is_interface, CaexKind, ClassExpression as CE,
    PropertyRef,
};

/// Translates a class into its AML concept models, one per disjunct.
pub fn trans_f(ce: &CE) -> Result<ConceptModelDocument, TranslateError> {
    trans_f_with_trees(ce).map(|(doc, _)| doc)
}

/// Like [`trans_f`], also returning the AML concept trees the models were
/// emitted from.
pub fn trans_f_with_trees(ce: &CE) -> Result<(ConceptModelDocument, Vec<Node>), TranslateError> {
    let normal = nnf(ce)?;
    let violations = check_proper(&normal);
    if !violations.is_empty() {
        return Err(TranslateError::ImproperClass(violations));
    }
    let forest = construct_d(&normal)?;
    let mut models = Vec::with_capacity(forest.len());
    let mut trees = Vec::with_capacity(forest.len());
    let mut counter = 0u64;
    for tree in forest.trees {
        let had_inverse = tree.has_inverse();
        let root_kind = if !had_inverse && top_position_is_interface(&tree.expr) {
            ElementKind::ExternalInterface
        } else {
            ElementKind::InternalElement
        };
        let tree = remove_inverse_property(tree)?;
        let mut root = CaexElement::new(root_kind);
        fill(&mut root, tree.conjunct_nodes(), had_inverse)?;
        root.concept.primary = !had_inverse;
        finalize_model(&mut root, &mut counter);
        models.push(root);
        trees.push(tree);
    }
    let doc = ConceptModelDocument::new(models);
    doc.validate()?;
    Ok((doc, trees))
}

fn default_kind(kind: ElementKind) -> CaexKind {
    match kind {
        ElementKind::InternalElement => CaexKind::RoleClass,
        ElementKind::ExternalInterface => CaexKind::InterfaceClass,
    }
}

fn improper(msg: String) -> TranslateError {
    TranslateError::ImproperStructure(msg)
}

/// Writes the conjuncts describing one object into `e`.
fn fill(
    e: &mut CaexElement,
    conjuncts: &[Node],
    use_primary_flags: bool,
) -> Result<(), TranslateError> {
    let mut nothing = false;
    for node in conjuncts {
        match node.kind {
            NodeKind::Thing => {}
            NodeKind::Nothing => nothing = true,
            NodeKind::Atomic => {
                let (atom, negated) = match &node.expr {
                    CE::Atomic(a) => (a, false),
                    CE::Not(inner) => match &**inner {
                        CE::Atomic(a) => (a, true),
                        _ => unreachable!("atomic node"),
                    },
                    _ => unreachable!("atomic node"),
                };
                if e.class_ref.is_some() || (e.concept.negated && !negated) {
                    return Err(improper(if negated || e.concept.negated {
                        format!(
                            "mixed positive and negated atomic classes around {}; cannot be modeled \
                             in AML (complement case (a))",
                            atom.name
                        )
                    } else {
                        format!(
                            "{} would be a second class reference on one element",
                            atom.name
                        )
                    }));
                }
                let kind = atom.kind.unwrap_or(default_kind(e.kind));
                let fits = match e.kind {
                    ElementKind::InternalElement => kind != CaexKind::InterfaceClass,
                    ElementKind::ExternalInterface => kind == CaexKind::InterfaceClass,
                };
                if !fits {
                    return Err(improper(format!(
                        "{} is annotated @{} on an {}",
                        atom.name,
                        kind.suffix(),
                        e.kind.tag()
                    )));
                }
                e.class_ref = Some(ClassRef {
                    path: atom.name.clone(),
                    kind,
                });
                e.concept.negated = negated;
            }
            NodeKind::Nominal => {
                let CE::OneOf(names) = &node.expr else {
                    unreachable!("nominal node")
                };
                let name = &names[0];
                if e.concept.identified_by_id && &e.id != name {
                    return Err(TranslateError::NotRepresentable(format!(
                        "one element cannot carry both IDs {} and {name}",
                        e.id
                    )));
                }
                e.id = name.clone();
                e.concept.identified_by_id = true;
            }
            NodeKind::Intersection => fill(e, &node.children, use_primary_flags)?,
            NodeKind::Restriction => {
                let r = node.restriction.as_ref().unwrap();
                match &r.property {
                    PropertyRef::Data(d) => e.attributes.push(attribute(d.name(), node)?),
                    PropertyRef::Object(p) => {
                        if e.kind == ElementKind::ExternalInterface {
                            return Err(improper(format!(
                                "{p} restriction on an external interface"
                            )));
                        }
                        let kind = if p.is_interface_relation() {
                            ElementKind::ExternalInterface
                        } else {
                            ElementKind::InternalElement
                        };
                        let mut child = CaexElement::new(kind);
                        let row = match (r.flavor, r.n.unwrap_or(0)) {
                            (Flavor::Some, _) => MappingRow::of(MappingPattern::Existential, 0),
                            (Flavor::HasValue, _) => MappingRow::of(MappingPattern::FillsObject, 0),
                            (Flavor::All, _) => MappingRow::of(MappingPattern::UniversalNegated, 0),
                            (Flavor::Min, n) => MappingRow::of(MappingPattern::AtLeast, n),
                            (Flavor::Max, n) => MappingRow::of(MappingPattern::AtMost, n),
                            (Flavor::Exact, n) => MappingRow::of(MappingPattern::Exact, n),
                        };
                        child.concept = ConceptAttributes {
                            negated: false,
                            identified_by_id: false,
                            ..row.concept()
                        };
                        fill(
                            &mut child,
                            node.children[0].conjunct_nodes(),
                            use_primary_flags,
                        )?;
                        child.concept.primary = use_primary_flags && node.primary;
                        match kind {
                            ElementKind::InternalElement => e.internal_elements.push(child),
                            ElementKind::ExternalInterface => e.external_interfaces.push(child),
                        }
                    }
                }
            }
        }
    }
    if nothing {
        let alone = conjuncts.iter().all(|n| n.kind == NodeKind::Nothing);
        if !alone || e.concept.min_cardinality != 0 {
            return Err(TranslateError::Unsatisfiable(
                "Nothing describes an object that must exist".into(),
            ));
        }
        // ¬⊤: a negated element without class reference.
        e.concept.negated = true;
    }
    Ok(())
}

fn attribute(name: &str, node: &Node) -> Result<CaexAttribute, TranslateError> {
    if is_reserved(name) {
        return Err(TranslateError::NotRepresentable(format!(
            "{name} is reserved for a concept attribute"
        )));
    }
    let r = node.restriction.as_ref().unwrap();
    let range = r.data_range.as_ref().unwrap();
    Ok(CaexAttribute {
        name: name.to_string(),
        datatype: bare_datatype(&range.datatype).to_string(),
        required_value: range.required_value.clone(),
        concept: ConceptAttributes {
            negated: range.negated,
            ..ConceptAttributes::default()
        },
    })
}
