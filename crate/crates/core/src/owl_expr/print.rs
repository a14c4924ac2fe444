//! Canonical pretty-printer; `parse(&print(e)) == e` for every well-formed AST.

use super::{ClassExpression as CE, DataRange, Literal};

/// Prints an expression in the Manchester-style syntax.
///
/// Restriction and union operands of an intersection are parenthesised, as
/// are complex restriction fillers.
pub fn print(ce: &CE) -> String {
    let mut out = String::new();
    write_expr(ce, &mut out);
    out
}

fn write_expr(ce: &CE, out: &mut String) {
    match ce {
        CE::Or(ops) => join(ops, " or ", out),
        CE::And(ops) => join(ops, " and ", out),
        other => write_unit(other, out),
    }
}

fn join(ops: &[CE], sep: &str, out: &mut String) {
    for (i, op) in ops.iter().enumerate() {
        if i > 0 {
            out.push_str(sep);
        }
        if is_simple(op) {
            write_unit(op, out);
        } else {
            out.push('(');
            write_expr(op, out);
            out.push(')');
        }
    }
}

fn is_simple(ce: &CE) -> bool {
    match ce {
        CE::Atomic(_) | CE::Thing | CE::Nothing | CE::OneOf(_) => true,
        CE::Not(inner) => is_simple(inner),
        _ => false,
    }
}

fn write_factor(ce: &CE, out: &mut String) {
    if is_simple(ce) {
        write_unit(ce, out);
    } else {
        out.push('(');
        write_expr(ce, out);
        out.push(')');
    }
}

fn write_unit(ce: &CE, out: &mut String) {
    match ce {
        CE::Atomic(a) => {
            out.push_str(&a.name);
            if let Some(kind) = a.kind {
                out.push('@');
                out.push_str(kind.suffix());
            }
        }
        CE::Thing => out.push_str("Thing"),
        CE::Nothing => out.push_str("Nothing"),
        CE::Not(inner) => {
            out.push_str("not ");
            write_factor(inner, out);
        }
        CE::OneOf(names) => {
            out.push('{');
            out.push_str(&names.join(", "));
            out.push('}');
        }
        CE::And(_) | CE::Or(_) => {
            out.push('(');
            write_expr(ce, out);
            out.push(')');
        }
        CE::ObjectSome(p, f) => restriction(p.name(), "some", None, f, out),
        CE::ObjectAll(p, f) => restriction(p.name(), "only", None, f, out),
        CE::ObjectMin(n, p, f) => restriction(p.name(), "min", Some(*n), f, out),
        CE::ObjectMax(n, p, f) => restriction(p.name(), "max", Some(*n), f, out),
        CE::ObjectExact(n, p, f) => restriction(p.name(), "exactly", Some(*n), f, out),
        CE::ObjectHasValue(p, a) => {
            out.push_str(p.name());
            out.push_str(" value ");
            out.push_str(a);
        }
        CE::DataSome(d, range) => {
            out.push_str(d.name());
            out.push_str(" some ");
            out.push_str(&print_data_range(range));
        }
        CE::DataHasValue(d, lit) => {
            out.push_str(d.name());
            out.push_str(" value ");
            out.push_str(&print_literal(lit));
        }
    }
}

fn restriction(prop: &str, kw: &str, n: Option<u32>, filler: &CE, out: &mut String) {
    out.push_str(prop);
    out.push(' ');
    out.push_str(kw);
    out.push(' ');
    if let Some(n) = n {
        out.push_str(&n.to_string());
        out.push(' ');
    }
    write_factor(filler, out);
}

pub(crate) fn print_data_range(range: &DataRange) -> String {
    let body = match &range.required_value {
        Some(v) => format!(
            "{{{}}}",
            print_literal(&Literal::new(v.clone(), range.datatype.clone()))
        ),
        None => range.datatype.clone(),
    };
    if range.negated {
        format!("not {body}")
    } else {
        body
    }
}

/// Prints a literal so that it lexes back to the same lexical form and datatype.
pub(crate) fn print_literal(lit: &Literal) -> String {
    let lex = lit.lexical.as_str();
    let bare = match lit.datatype.as_str() {
        "integer" => is_integer_text(lex),
        "double" => is_decimal_text(lex),
        "boolean" => lex == "true" || lex == "false",
        _ => false,
    };
    if bare {
        return lex.to_string();
    }
    let quoted = quote(lex);
    if lit.datatype == "string" {
        quoted
    } else {
        format!("{quoted}^^{}", lit.datatype)
    }
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            other => out.push(other),
        }
    }
    out.push('"');
    out
}

fn is_integer_text(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

fn is_decimal_text(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    match body.split_once('.') {
        Some((i, f)) => {
            !i.is_empty()
                && !f.is_empty()
                && i.bytes().all(|b| b.is_ascii_digit())
                && f.bytes().all(|b| b.is_ascii_digit())
        }
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::owl_expr::parse;

    #[test]
    fn nnf_of_class_a_prints_in_normal_form() {
        let e = parse("Robot and (hasIE only IOController)").unwrap();
        assert_eq!(print(&e), "Robot and (hasIE only IOController)");
    }

    #[test]
    fn fillers_are_parenthesised_when_complex() {
        let text = "isIEOf some (Robot and (hasManufacturer value \"KUKA\"))";
        assert_eq!(print(&parse(text).unwrap()), text);
        let text = "hasIE some (hasEI min 3 IOInterface)";
        assert_eq!(print(&parse(text).unwrap()), text);
    }

    #[test]
    fn literals_round_trip() {
        for lit in [
            Literal::string("a \"q\" \\ b"),
            Literal::new("007", "integer"),
            Literal::new("-2.50", "double"),
            Literal::new("3", "double"),
            Literal::new("true", "boolean"),
            Literal::new("x", "token"),
        ] {
            let printed = format!("p value {}", print_literal(&lit));
            match parse(&printed).unwrap() {
                CE::DataHasValue(_, got) => assert_eq!(got, lit, "{printed}"),
                other => panic!("{other:?}"),
            }
        }
    }
}
