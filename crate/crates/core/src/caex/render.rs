use super::{CaexAttribute, CaexElement, ConceptModelDocument};
use crate::owl_expr::CaexKind;

const RED: &str = "\x1b[31m";
const BOLD: &str = "\x1b[1;4m";
const RESET: &str = "\x1b[0m";

/// Tree view of the models: `[min,max]` windows with -1 for unlimited, `!` for
/// negated, `*` for primary. `color` adds ANSI red for negated and bold for
/// primary.
pub fn render_models(doc: &ConceptModelDocument, color: bool) -> String {
    let mut out = String::new();
    for (i, m) in doc.models.iter().enumerate() {
        if doc.models.len() > 1 {
            out.push_str(&format!("model {}\n", i + 1));
        }
        write_element(m, "", true, true, color, &mut out);
    }
    out
}

fn paint(text: String, negated: bool, primary: bool, color: bool) -> String {
    if !color || (!negated && !primary) {
        return text;
    }
    let mut s = String::new();
    if negated {
        s.push_str(RED);
    }
    if primary {
        s.push_str(BOLD);
    }
    s.push_str(&text);
    s.push_str(RESET);
    s
}

fn element_label(e: &CaexElement, color: bool) -> String {
    let c = &e.concept;
    let mut s = String::new();
    if c.negated {
        s.push('!');
    }
    s.push_str(e.kind.short());
    s.push(' ');
    s.push_str(&e.name);
    if let Some(r) = &e.class_ref {
        let tag = match r.kind {
            CaexKind::RoleClass => "rc",
            CaexKind::InterfaceClass => "ic",
            CaexKind::SystemUnitClass => "suc",
        };
        s.push_str(&format!(" <{}@{tag}>", r.path));
    }
    s.push(' ');
    s.push_str(&c.window_text());
    if c.identified_by_id {
        s.push_str(&format!(" id={}", e.id));
    }
    if c.primary {
        s.push('*');
    }
    paint(s, c.negated, c.primary, color)
}

fn attribute_label(a: &CaexAttribute, color: bool) -> String {
    let c = &a.concept;
    let mut s = String::new();
    if c.negated {
        s.push('!');
    }
    s.push_str(&format!("@{}: {}", a.name, a.datatype));
    if let Some(v) = &a.required_value {
        s.push_str(&format!(" = {v:?}"));
    }
    s.push(' ');
    s.push_str(&c.window_text());
    if c.primary {
        s.push('*');
    }
    paint(s, c.negated, c.primary, color)
}

fn write_element(
    e: &CaexElement,
    prefix: &str,
    last: bool,
    root: bool,
    color: bool,
    out: &mut String,
) {
    if !root {
        out.push_str(prefix);
        out.push_str(if last { "`-- " } else { "|-- " });
    }
    out.push_str(&element_label(e, color));
    out.push('\n');
    let child_prefix = if root {
        String::new()
    } else {
        format!("{prefix}{}", if last { "    " } else { "|   " })
    };
    let total = e.attributes.len() + e.external_interfaces.len() + e.internal_elements.len();
    let mut index = 0;
    for a in &e.attributes {
        index += 1;
        out.push_str(&child_prefix);
        out.push_str(if index == total { "`-- " } else { "|-- " });
        out.push_str(&attribute_label(a, color));
        out.push('\n');
    }
    for c in e.children() {
        index += 1;
        write_element(c, &child_prefix, index == total, false, color, out);
    }
}
