use super::{ConceptTreeNode as Node, Flavor, NodeKind, Restriction, TreeError};
use crate::owl_expr::{ClassExpression as CE, ObjectProperty};

/// Turns an AND-tree whose inverse restrictions form an outermost prefix into
/// an AML concept tree rooted at the topmost ancestor. Exactly one node of the
/// result is primary: the one whose object the original class describes.
pub fn remove_inverse_property(root: Node) -> Result<Node, TreeError> {
    check_prefix(&root, true)?;
    if !root.has_inverse() {
        let mut root = root;
        root.primary = true;
        return Ok(root);
    }
    let mut current = root;
    let mut first = true;
    while current.has_inverse() {
        current = lift(current, first)?;
        first = false;
    }
    Ok(current)
}

fn inverse_of(node: &Node) -> Option<ObjectProperty> {
    node.restriction
        .as_ref()
        .and_then(Restriction::object_property)
        .filter(|p| p.is_inverse())
}

/// Inverse restrictions may sit only among the conjuncts of the root, or among
/// the conjuncts of such a restriction's filler.
fn check_prefix(node: &Node, allowed: bool) -> Result<(), TreeError> {
    for conjunct in node.conjunct_nodes() {
        match inverse_of(conjunct) {
            Some(p) => {
                if !allowed {
                    return Err(TreeError::ImproperClass(format!(
                        "{p} below a restriction over a forward property"
                    )));
                }
                let r = conjunct.restriction.as_ref().unwrap();
                if !matches!(r.flavor, Flavor::Some | Flavor::HasValue) {
                    return Err(TreeError::ImproperClass(format!(
                        "{p} in a {} restriction",
                        r.flavor.keyword()
                    )));
                }
                check_prefix(&conjunct.children[0], true)?;
            }
            None => {
                for child in &conjunct.children {
                    if conjunct.kind == NodeKind::Restriction {
                        check_prefix(child, false)?;
                    }
                }
            }
        }
    }
    Ok(())
}

/// One step: the new root describes the parent of the current root's object.
fn lift(root: Node, first: bool) -> Result<Node, TreeError> {
    let conjuncts = match root.kind {
        NodeKind::Intersection => root.children,
        _ => vec![root],
    };
    let (inverse, normal): (Vec<Node>, Vec<Node>) =
        conjuncts.into_iter().partition(|c| inverse_of(c).is_some());
    let property = inverse_of(&inverse[0]).unwrap();
    if inverse.iter().any(|n| inverse_of(n) != Some(property)) {
        return Err(TreeError::ImproperClass(
            "one object cannot be both an internal element and an external interface".into(),
        ));
    }
    if !first && property == ObjectProperty::IsEIOf {
        return Err(TreeError::ImproperClass(
            "isEIOf inside the filler of an inverse restriction".into(),
        ));
    }

    let filler = Node::intersection(normal);
    let mut normal_child = Node::object_restriction(
        Restriction::object(property.inverse(), Flavor::Some, None),
        filler,
    );
    normal_child.primary = first;

    let mut children = vec![normal_child];
    for node in inverse {
        let filler = node.children.into_iter().next().unwrap();
        let spliced = match filler.kind {
            NodeKind::Intersection => filler.children,
            _ => vec![filler],
        };
        children.extend(spliced.into_iter().filter(|c| c.expr != CE::Thing));
    }
    Ok(Node::intersection(children))
}
