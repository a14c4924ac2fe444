use super::{ConceptForest, ConceptTreeNode as Node, Flavor, Restriction, TreeError};
use crate::owl_expr::{complement, ClassExpression as CE, DataRange, ExprError};

/// One alternative of a disjunctive expansion: the conjuncts of one tree.
type Alternative = Vec<Node>;

/// Builds the AND-tree of a disjunction-free expression in NNF.
pub fn construct(ce: &CE) -> Result<Node, TreeError> {
    let mut alts = expand(ce)?;
    if alts.len() != 1 {
        return Err(TreeError::DisjunctionPresent);
    }
    Ok(Node::intersection(alts.pop().unwrap()))
}

/// Builds one AND-tree per disjunct, multiplexing every union or nominal
/// through the enclosing intersections and restrictions.
pub fn construct_d(ce: &CE) -> Result<ConceptForest, TreeError> {
    let trees = expand(ce)?.into_iter().map(Node::intersection).collect();
    Ok(ConceptForest { trees })
}

fn uncovered(e: ExprError) -> TreeError {
    match e {
        ExprError::UncoveredConstructor(m) => TreeError::UncoveredConstructor(m),
    }
}

fn expand(ce: &CE) -> Result<Vec<Alternative>, TreeError> {
    Ok(match ce {
        CE::Atomic(_) | CE::Thing | CE::Nothing => vec![vec![Node::leaf(ce.clone())]],
        CE::Not(inner) => match **inner {
            CE::Atomic(_) => vec![vec![Node::leaf(ce.clone())]],
            _ => return Err(TreeError::NotNnf(ce.to_string())),
        },
        CE::OneOf(names) => names
            .iter()
            .map(|a| vec![Node::leaf(CE::OneOf(vec![a.clone()]))])
            .collect(),
        CE::Or(ops) => {
            let mut out = Vec::new();
            for op in ops {
                out.extend(expand(op)?);
            }
            out
        }
        CE::And(ops) => {
            let mut acc: Vec<Alternative> = vec![Vec::new()];
            for op in ops {
                let nested = expand(op)?;
                let mut next = Vec::with_capacity(acc.len() * nested.len());
                for root in &acc {
                    for alt in &nested {
                        let mut copy = root.clone();
                        copy.extend(alt.iter().cloned());
                        next.push(copy);
                    }
                }
                acc = next;
            }
            acc
        }
        CE::ObjectSome(p, f) => restrict(Restriction::object(*p, Flavor::Some, None), f, true)?,
        CE::ObjectMin(n, p, f) => {
            restrict(Restriction::object(*p, Flavor::Min, Some(*n)), f, *n <= 1)?
        }
        CE::ObjectMax(n, p, f) => {
            restrict(Restriction::object(*p, Flavor::Max, Some(*n)), f, false)?
        }
        CE::ObjectExact(n, p, f) => {
            restrict(Restriction::object(*p, Flavor::Exact, Some(*n)), f, false)?
        }
        CE::ObjectHasValue(p, a) => {
            let child = Node::leaf(CE::OneOf(vec![a.clone()]));
            vec![vec![Node::object_restriction(
                Restriction::object(*p, Flavor::HasValue, None),
                child,
            )]]
        }
        CE::ObjectAll(p, f) => {
            // ∀R.F ≡ ≤0 R.¬F, and ≤0 distributes over the disjuncts of ¬F.
            let counted = complement(f).map_err(uncovered)?;
            let nodes = expand(&counted)?
                .into_iter()
                .map(|alt| {
                    Node::object_restriction(
                        Restriction::object(*p, Flavor::All, None),
                        Node::intersection(alt),
                    )
                })
                .collect();
            vec![nodes]
        }
        CE::DataSome(d, range) => vec![vec![Node::data_restriction(
            d.clone(),
            range.clone(),
            false,
        )]],
        CE::DataHasValue(d, lit) => vec![vec![Node::data_restriction(
            d.clone(),
            DataRange::value(lit),
            true,
        )]],
    })
}

/// Restriction over each alternative of the filler. Only restrictions that
/// distribute over a union may see more than one alternative.
fn restrict(r: Restriction, filler: &CE, distributes: bool) -> Result<Vec<Alternative>, TreeError> {
    let alts = expand(filler)?;
    if alts.len() > 1 && !distributes {
        return Err(TreeError::NotRepresentable(format!(
            "{} {} restriction with a disjunctive filler",
            r.property,
            r.flavor.keyword()
        )));
    }
    Ok(alts
        .into_iter()
        .map(|alt| vec![Node::object_restriction(r.clone(), Node::intersection(alt))])
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concept_tree::NodeKind;
    use crate::owl_expr::{nnf, parse};

    fn tree(text: &str) -> Node {
        construct(&nnf(&parse(text).unwrap()).unwrap()).unwrap()
    }

    fn forest(text: &str) -> ConceptForest {
        construct_d(&nnf(&parse(text).unwrap()).unwrap()).unwrap()
    }

    /// Counts nodes straight off the AST: one per intersection operand and
    /// restriction filler.
    fn ast_nodes(ce: &CE) -> usize {
        match ce {
            CE::And(ops) => 1 + ops.iter().map(ast_nodes).sum::<usize>(),
            CE::ObjectHasValue(..) => 2,
            other => 1 + other.object_restriction().map_or(0, |(_, f)| ast_nodes(f)),
        }
    }

    #[test]
    fn atomic_is_a_single_leaf() {
        let t = tree("Robot");
        assert_eq!(t.node_count(), 1);
        assert_eq!(t.kind, NodeKind::Atomic);
    }

    #[test]
    fn class_c_has_seven_nodes() {
        let text = "Robot and (hasIE some (IOController and (hasEI min 3 IOInterface)))";
        let t = tree(text);
        assert_eq!(t.node_count(), 7);
        assert_eq!(t.node_count(), ast_nodes(&parse(text).unwrap()));
        assert_eq!(t.kind, NodeKind::Intersection);
        let kinds: Vec<_> = t.children.iter().map(|c| c.kind).collect();
        assert_eq!(kinds, [NodeKind::Atomic, NodeKind::Restriction]);
        assert!(t.is_consistent());
    }

    #[test]
    fn class_d_and_tree_keeps_the_inverse() {
        let t = tree("IOInterface and (isEIOf some (hasEI min 3 IOInterface))");
        assert_eq!(t.node_count(), 5);
        assert!(t.has_inverse());
    }

    #[test]
    fn construct_rejects_disjunction() {
        let ce = parse("A or B").unwrap();
        assert_eq!(construct(&ce), Err(TreeError::DisjunctionPresent));
    }

    #[test]
    fn union_multiplexes_into_two_trees() {
        let f = forest("Robot and (hasIE some (IOController or IODevice))");
        let roots: Vec<String> = f.trees.iter().map(|t| t.expr.to_string()).collect();
        assert_eq!(
            roots,
            [
                "Robot and (hasIE some IOController)",
                "Robot and (hasIE some IODevice)"
            ]
        );
    }

    #[test]
    fn sibling_disjunctions_take_the_cross_product() {
        assert_eq!(forest("(A or B) and (hasIE some (C or D))").len(), 4);
        assert_eq!(forest("(A or B) and (hasIE some (C or D or E))").len(), 6);
    }

    #[test]
    fn nominal_gives_one_tree_per_individual() {
        let f = forest("{a, b}");
        assert_eq!(f.len(), 2);
        for t in &f.trees {
            assert_eq!(t.kind, NodeKind::Nominal);
            assert_eq!(t.node_count(), 1);
        }
    }

    #[test]
    fn universal_stores_the_counted_class() {
        let t = tree("Robot and (hasIE only IOController)");
        let r = &t.children[1];
        let info = r.restriction.as_ref().unwrap();
        assert_eq!(info.flavor, Flavor::All);
        assert!(info.negated_filler);
        assert_eq!(r.children[0].expr, CE::not(CE::atomic("IOController")));
        assert_eq!(r.expr.to_string(), "hasIE only IOController");
        assert!(t.is_consistent());
    }

    #[test]
    fn universal_over_intersection_splits() {
        let t = tree("hasIE only (A and B)");
        assert_eq!(t.kind, NodeKind::Intersection);
        assert_eq!(t.children.len(), 2);
        assert_eq!(t.expr.to_string(), "(hasIE only A) and (hasIE only B)");
    }

    #[test]
    fn cardinality_over_union_is_not_representable() {
        let ce = parse("hasIE min 2 (A or B)").unwrap();
        assert!(matches!(
            construct_d(&ce),
            Err(TreeError::NotRepresentable(_))
        ));
        assert_eq!(forest("hasIE min 1 (A or B)").len(), 2);
    }

    #[test]
    fn data_restrictions_are_leaves() {
        let t = tree("hasWeight some not double");
        assert_eq!(t.kind, NodeKind::Restriction);
        assert!(t.is_leaf());
        assert_eq!(t.expr.to_string(), "hasWeight some not double");
    }
}
