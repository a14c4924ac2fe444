use super::{ClassExpression as CE, ExprError};

/// Negation normal form: complements end up only on atomic classes or as the
/// `negated` flag of a data range.
///
/// Negating a nominal, a fills restriction or a data restriction has no AML
/// counterpart and is reported as [`ExprError::UncoveredConstructor`].
pub fn nnf(ce: &CE) -> Result<CE, ExprError> {
    Ok(match ce {
        CE::Atomic(_) | CE::Thing | CE::Nothing | CE::OneOf(_) => ce.clone(),
        CE::ObjectHasValue(..) | CE::DataSome(..) | CE::DataHasValue(..) => ce.clone(),
        CE::Not(inner) => complement(inner)?,
        CE::And(ops) => CE::and(ops.iter().map(nnf).collect::<Result<Vec<_>, _>>()?),
        CE::Or(ops) => CE::or(ops.iter().map(nnf).collect::<Result<Vec<_>, _>>()?),
        CE::ObjectSome(p, f) => CE::some(*p, nnf(f)?),
        CE::ObjectAll(p, f) => CE::all(*p, nnf(f)?),
        CE::ObjectMin(n, p, f) => CE::min(*n, *p, nnf(f)?),
        CE::ObjectMax(n, p, f) => CE::max(*n, *p, nnf(f)?),
        CE::ObjectExact(n, p, f) => CE::exact(*n, *p, nnf(f)?),
    })
}

/// NNF of `¬ce`.
pub fn complement(ce: &CE) -> Result<CE, ExprError> {
    Ok(match ce {
        CE::Atomic(_) => CE::not(ce.clone()),
        CE::Thing => CE::Nothing,
        CE::Nothing => CE::Thing,
        CE::Not(inner) => nnf(inner)?,
        CE::And(ops) => CE::or(ops.iter().map(complement).collect::<Result<Vec<_>, _>>()?),
        CE::Or(ops) => CE::and(ops.iter().map(complement).collect::<Result<Vec<_>, _>>()?),
        CE::ObjectSome(p, f) => CE::all(*p, complement(f)?),
        CE::ObjectAll(p, f) => CE::some(*p, complement(f)?),
        CE::ObjectMin(0, _, _) => CE::Nothing,
        CE::ObjectMin(n, p, f) => CE::max(n - 1, *p, nnf(f)?),
        CE::ObjectMax(n, p, f) => CE::min(n + 1, *p, nnf(f)?),
        CE::ObjectExact(0, p, f) => CE::min(1, *p, nnf(f)?),
        CE::ObjectExact(n, p, f) => {
            let f = nnf(f)?;
            CE::or([CE::max(n - 1, *p, f.clone()), CE::min(n + 1, *p, f)])
        }
        CE::OneOf(_) => {
            return Err(ExprError::UncoveredConstructor(
                "complement of a nominal has no AML concept model".into(),
            ))
        }
        CE::ObjectHasValue(..) => {
            return Err(ExprError::UncoveredConstructor(
                "complement of an object fills restriction has no AML concept model".into(),
            ))
        }
        CE::DataSome(..) | CE::DataHasValue(..) => {
            return Err(ExprError::UncoveredConstructor(
                "complement of a data restriction requires DataAllValuesFrom".into(),
            ))
        }
    })
}

/// True when every complement sits on an atomic class.
pub fn is_nnf(ce: &CE) -> bool {
    match ce {
        CE::Not(inner) => matches!(**inner, CE::Atomic(_)),
        CE::And(ops) | CE::Or(ops) => ops.iter().all(is_nnf),
        other => other.object_restriction().is_none_or(|(_, f)| is_nnf(f)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::owl_expr::{parse, print, ObjectProperty::*};

    fn a(n: &str) -> CE {
        CE::atomic(n)
    }

    #[test]
    fn nnf_of_class_a() {
        let ce = parse("Robot and not (hasIE some (not IOController))").unwrap();
        let got = nnf(&ce).unwrap();
        assert_eq!(
            got,
            CE::And(vec![a("Robot"), CE::all(HasIE, a("IOController"))])
        );
        assert_eq!(print(&got), "Robot and (hasIE only IOController)");
    }

    #[test]
    fn double_negation() {
        assert_eq!(nnf(&CE::not(CE::not(a("Robot")))).unwrap(), a("Robot"));
    }

    #[test]
    fn negated_min_becomes_max() {
        let ce = CE::not(CE::min(3, HasEI, a("IOInterface")));
        assert_eq!(nnf(&ce).unwrap(), CE::max(2, HasEI, a("IOInterface")));
    }

    /// Enumerate every child multiset of size <= 4 over {IOInterface, Other}
    /// and compare the counting semantics of ¬(≥3) and ≤2 directly.
    #[test]
    fn negated_min_agrees_with_multiset_enumeration() {
        for size in 0..=4u32 {
            for matching in 0..=size {
                let not_at_least_3 = !(matching >= 3);
                let at_most_2 = matching <= 2;
                assert_eq!(
                    not_at_least_3, at_most_2,
                    "size {size}, matching {matching}"
                );
            }
        }
    }

    #[test]
    fn cardinality_edge_cases() {
        assert_eq!(
            nnf(&CE::not(CE::min(0, HasIE, a("A")))).unwrap(),
            CE::Nothing
        );
        assert_eq!(
            nnf(&CE::not(CE::max(2, HasIE, a("A")))).unwrap(),
            CE::min(3, HasIE, a("A"))
        );
        assert_eq!(
            nnf(&CE::not(CE::exact(2, HasIE, a("A")))).unwrap(),
            CE::Or(vec![CE::max(1, HasIE, a("A")), CE::min(3, HasIE, a("A"))])
        );
        assert_eq!(
            nnf(&CE::not(CE::exact(0, HasIE, a("A")))).unwrap(),
            CE::min(1, HasIE, a("A"))
        );
    }

    #[test]
    fn de_morgan_flattens() {
        let ce = parse("not (A or (B or C)) and D").unwrap();
        let got = nnf(&ce).unwrap();
        assert_eq!(
            got,
            CE::And(vec![
                CE::not(a("A")),
                CE::not(a("B")),
                CE::not(a("C")),
                a("D")
            ])
        );
        assert_eq!(nnf(&CE::not(CE::Thing)).unwrap(), CE::Nothing);
        assert_eq!(nnf(&CE::not(CE::Nothing)).unwrap(), CE::Thing);
    }

    #[test]
    fn negated_data_range_stays_on_the_range() {
        let ce = parse("hasWeight some not double").unwrap();
        assert_eq!(nnf(&ce).unwrap(), ce);
    }

    #[test]
    fn nominal_and_fills_negation_are_rejected() {
        for text in [
            "not {a}",
            "not (hasIE value r1)",
            "not (hasManufacturer value \"KUKA\")",
            "not (hasWeight some double)",
            "hasIE only (not {a, b})",
        ] {
            let ce = parse(text).unwrap();
            assert!(
                matches!(nnf(&ce), Err(ExprError::UncoveredConstructor(_))),
                "{text}"
            );
        }
    }

    #[test]
    fn is_nnf_detects_inner_complements() {
        assert!(is_nnf(
            &parse("A and not B and (hasIE only not C)").unwrap()
        ));
        assert!(!is_nnf(&parse("not (A and B)").unwrap()));
    }
}
