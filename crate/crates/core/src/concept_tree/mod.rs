//! AND-trees and AML concept trees.
//!
//! A tree node keeps the class expression it stands for. Branching nodes are
//! intersections or restrictions; leaves are atomic classes (possibly
//! complemented), `Thing`, `Nothing`, single individuals, or data restrictions.

mod construct;
mod inverse;
mod render;

use serde::Serialize;

use crate::owl_expr::{
    complement, ClassExpression as CE, DataProperty, DataRange, Literal, ObjectProperty,
    PropertyRef,
};

pub use construct::{construct, construct_d};
pub use inverse::remove_inverse_property;
pub use render::render_ascii;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("disjunction present; use construct_d")]
    DisjunctionPresent,
    #[error("expression is not in negation normal form: {0}")]
    NotNnf(String),
    #[error("uncovered constructor: {0}")]
    UncoveredConstructor(String),
    #[error("not representable as an AML concept tree: {0}")]
    NotRepresentable(String),
    #[error("improper class: {0}")]
    ImproperClass(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NodeKind {
    Intersection,
    Restriction,
    Atomic,
    Thing,
    Nothing,
    Nominal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Flavor {
    Some,
    All,
    Min,
    Max,
    Exact,
    HasValue,
}

impl Flavor {
    pub fn keyword(self) -> &'static str {
        match self {
            Flavor::Some => "some",
            Flavor::All => "only",
            Flavor::Min => "min",
            Flavor::Max => "max",
            Flavor::Exact => "exactly",
            Flavor::HasValue => "value",
        }
    }
}

/// What a restriction node restricts.
///
/// A universal node over `R` stores the *counted* class `K` as its child and
/// sets `negated_filler`: `∀R.F` is kept as `≤0 R.K` with `K = ¬F`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Restriction {
    pub property: PropertyRef,
    pub flavor: Flavor,
    pub n: Option<u32>,
    pub negated_filler: bool,
    pub data_range: Option<DataRange>,
}

impl Restriction {
    pub fn object(property: ObjectProperty, flavor: Flavor, n: Option<u32>) -> Self {
        Restriction {
            property: PropertyRef::Object(property),
            flavor,
            n,
            negated_filler: flavor == Flavor::All,
            data_range: None,
        }
    }

    pub fn object_property(&self) -> Option<ObjectProperty> {
        match &self.property {
            PropertyRef::Object(p) => Some(*p),
            PropertyRef::Data(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ConceptTreeNode {
    pub expr: CE,
    pub kind: NodeKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restriction: Option<Restriction>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<ConceptTreeNode>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub primary: bool,
}

impl ConceptTreeNode {
    pub fn leaf(expr: CE) -> Self {
        let kind = match &expr {
            CE::Thing => NodeKind::Thing,
            CE::Nothing => NodeKind::Nothing,
            CE::OneOf(_) => NodeKind::Nominal,
            _ => NodeKind::Atomic,
        };
        ConceptTreeNode {
            expr,
            kind,
            restriction: None,
            children: Vec::new(),
            primary: false,
        }
    }

    /// Intersection of `children`; one child collapses to itself.
    pub fn intersection(mut children: Vec<ConceptTreeNode>) -> Self {
        if children.len() == 1 {
            return children.pop().unwrap();
        }
        if children.is_empty() {
            return ConceptTreeNode::leaf(CE::Thing);
        }
        let mut node = ConceptTreeNode {
            expr: CE::Thing,
            kind: NodeKind::Intersection,
            restriction: None,
            children,
            primary: false,
        };
        node.expr = node.own_expr();
        node
    }

    pub fn object_restriction(restriction: Restriction, child: ConceptTreeNode) -> Self {
        let mut node = ConceptTreeNode {
            expr: CE::Thing,
            kind: NodeKind::Restriction,
            restriction: Some(restriction),
            children: vec![child],
            primary: false,
        };
        node.expr = node.own_expr();
        node
    }

    pub fn data_restriction(property: DataProperty, range: DataRange, has_value: bool) -> Self {
        let restriction = Restriction {
            property: PropertyRef::Data(property),
            flavor: if has_value {
                Flavor::HasValue
            } else {
                Flavor::Some
            },
            n: None,
            negated_filler: false,
            data_range: Some(range),
        };
        let mut node = ConceptTreeNode {
            expr: CE::Thing,
            kind: NodeKind::Restriction,
            restriction: Some(restriction),
            children: Vec::new(),
            primary: false,
        };
        node.expr = node.own_expr();
        node
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// The expression determined by this node's kind, restriction and children.
    pub fn own_expr(&self) -> CE {
        match self.kind {
            NodeKind::Intersection => CE::and(self.children.iter().map(|c| c.expr.clone())),
            NodeKind::Restriction => {
                let r = self.restriction.as_ref().expect("restriction node");
                match &r.property {
                    PropertyRef::Data(d) => {
                        let range = r.data_range.clone().expect("data range");
                        match (r.flavor, range.required_value.clone()) {
                            (Flavor::HasValue, Some(v)) => {
                                CE::DataHasValue(d.clone(), Literal::new(v, range.datatype))
                            }
                            _ => CE::DataSome(d.clone(), range),
                        }
                    }
                    PropertyRef::Object(p) => {
                        let filler = &self.children[0].expr;
                        match r.flavor {
                            Flavor::HasValue => match filler {
                                CE::OneOf(names) if names.len() == 1 => {
                                    CE::ObjectHasValue(*p, names[0].clone())
                                }
                                other => CE::some(*p, other.clone()),
                            },
                            Flavor::Some => CE::some(*p, filler.clone()),
                            Flavor::All => {
                                let f = if r.negated_filler {
                                    complement(filler).unwrap_or_else(|_| CE::not(filler.clone()))
                                } else {
                                    filler.clone()
                                };
                                CE::all(*p, f)
                            }
                            Flavor::Min => CE::min(r.n.unwrap_or(0), *p, filler.clone()),
                            Flavor::Max => CE::max(r.n.unwrap_or(0), *p, filler.clone()),
                            Flavor::Exact => CE::exact(r.n.unwrap_or(0), *p, filler.clone()),
                        }
                    }
                }
            }
            _ => self.expr.clone(),
        }
    }

    /// Recomputes every expression bottom-up from the children.
    pub fn refresh(&mut self) {
        for child in &mut self.children {
            child.refresh();
        }
        self.expr = self.own_expr();
    }

    /// True when every branching node's expression agrees with its children.
    pub fn is_consistent(&self) -> bool {
        self.children.iter().all(Self::is_consistent) && self.expr == self.own_expr()
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(Self::node_count).sum::<usize>()
    }

    pub fn primary_count(&self) -> usize {
        usize::from(self.primary) + self.children.iter().map(Self::primary_count).sum::<usize>()
    }

    /// Conjuncts of the object this node describes.
    pub fn conjunct_nodes(&self) -> &[ConceptTreeNode] {
        match self.kind {
            NodeKind::Intersection => &self.children,
            _ => std::slice::from_ref(self),
        }
    }

    pub fn has_inverse(&self) -> bool {
        self.restriction
            .as_ref()
            .and_then(Restriction::object_property)
            .is_some_and(ObjectProperty::is_inverse)
            || self.children.iter().any(Self::has_inverse)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tree serializes")
    }
}

/// Ordered trees whose root expressions together form a union.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConceptForest {
    pub trees: Vec<ConceptTreeNode>,
}

impl ConceptForest {
    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    /// Union of the root expressions.
    pub fn expr(&self) -> CE {
        CE::or(self.trees.iter().map(|t| t.expr.clone()))
    }
}
