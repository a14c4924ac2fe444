use super::{ConceptTreeNode as Node, NodeKind};
use crate::owl_expr::print;

/// Indented ASCII rendering, one node per line; `*` marks the primary node.
pub fn render_ascii(root: &Node) -> String {
    let mut out = String::new();
    write_node(root, "", true, true, &mut out);
    out
}

fn label(node: &Node) -> String {
    let head = match node.kind {
        NodeKind::Intersection => "AND".to_string(),
        NodeKind::Restriction => {
            let r = node.restriction.as_ref().unwrap();
            let mut s = format!("{} {}", r.property, r.flavor.keyword());
            if let Some(n) = r.n {
                s.push_str(&format!(" {n}"));
            }
            if r.negated_filler {
                s.push_str(" ~");
            }
            s
        }
        NodeKind::Atomic => "ATOM".to_string(),
        NodeKind::Thing => "THING".to_string(),
        NodeKind::Nothing => "NOTHING".to_string(),
        NodeKind::Nominal => "ONE".to_string(),
    };
    let star = if node.primary { " *" } else { "" };
    format!("[{head}] {}{star}", print(&node.expr))
}

fn write_node(node: &Node, prefix: &str, last: bool, root: bool, out: &mut String) {
    if root {
        out.push_str(&label(node));
    } else {
        out.push_str(prefix);
        out.push_str(if last { "`-- " } else { "|-- " });
        out.push_str(&label(node));
    }
    out.push('\n');
    let child_prefix = if root {
        String::new()
    } else {
        format!("{prefix}{}", if last { "    " } else { "|   " })
    };
    for (i, child) in node.children.iter().enumerate() {
        write_node(
            child,
            &child_prefix,
            i + 1 == node.children.len(),
            false,
            out,
        );
    }
}
