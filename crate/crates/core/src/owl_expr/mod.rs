//! Class-expression algebra over the covered OWL constructors.
//!
//! The only object properties are the CAEX containment relations `hasIE`,
//! `hasEI` and their inverses `isIEOf`, `isEIOf`. Every other property name
//! is a data property, i.e. a CAEX attribute.

mod nnf;
mod parse;
mod print;
mod proper;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use nnf::{complement, is_nnf, nnf};
pub use parse::{parse, ParseError};
pub use print::print;
pub use proper::{
    check_proper, top_position_is_interface, PathStep, SubtermPath, Violation, ViolationKind,
};

/// Errors raised while normalising or validating a class expression.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("uncovered constructor: {0}")]
    UncoveredConstructor(String),
}

/// CAEX type annotation of an atomic class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CaexKind {
    RoleClass,
    InterfaceClass,
    SystemUnitClass,
}

impl CaexKind {
    /// Suffix used in the textual syntax (`Robot@rc`).
    pub fn suffix(self) -> &'static str {
        match self {
            CaexKind::RoleClass => "rc",
            CaexKind::InterfaceClass => "ic",
            CaexKind::SystemUnitClass => "suc",
        }
    }

    pub fn from_suffix(s: &str) -> Option<Self> {
        match s {
            "rc" => Some(CaexKind::RoleClass),
            "ic" => Some(CaexKind::InterfaceClass),
            "suc" => Some(CaexKind::SystemUnitClass),
            _ => None,
        }
    }
}

/// The four containment properties of an AML ontology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ObjectProperty {
    HasIE,
    HasEI,
    IsIEOf,
    IsEIOf,
}

impl ObjectProperty {
    pub const ALL: [ObjectProperty; 4] = [
        ObjectProperty::HasIE,
        ObjectProperty::HasEI,
        ObjectProperty::IsIEOf,
        ObjectProperty::IsEIOf,
    ];

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "hasIE" => Some(ObjectProperty::HasIE),
            "hasEI" => Some(ObjectProperty::HasEI),
            "isIEOf" => Some(ObjectProperty::IsIEOf),
            "isEIOf" => Some(ObjectProperty::IsEIOf),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ObjectProperty::HasIE => "hasIE",
            ObjectProperty::HasEI => "hasEI",
            ObjectProperty::IsIEOf => "isIEOf",
            ObjectProperty::IsEIOf => "isEIOf",
        }
    }

    /// `isIEOf` is `hasIE⁻` and vice versa. An involution.
    pub fn inverse(self) -> Self {
        match self {
            ObjectProperty::HasIE => ObjectProperty::IsIEOf,
            ObjectProperty::HasEI => ObjectProperty::IsEIOf,
            ObjectProperty::IsIEOf => ObjectProperty::HasIE,
            ObjectProperty::IsEIOf => ObjectProperty::HasEI,
        }
    }

    pub fn is_inverse(self) -> bool {
        matches!(self, ObjectProperty::IsIEOf | ObjectProperty::IsEIOf)
    }

    /// The forward property of the same containment relation.
    pub fn forward(self) -> Self {
        if self.is_inverse() {
            self.inverse()
        } else {
            self
        }
    }

    /// True for the properties whose child side is an external interface.
    pub fn is_interface_relation(self) -> bool {
        matches!(self, ObjectProperty::HasEI | ObjectProperty::IsEIOf)
    }
}

impl fmt::Display for ObjectProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A data property, i.e. the name of a CAEX attribute.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DataProperty(pub String);

impl DataProperty {
    pub fn new(name: impl Into<String>) -> Self {
        DataProperty(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for DataProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Kind of a property reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PropertyKind {
    ObjectForward,
    ObjectInverse,
    Data,
}

/// Any property occurring in a restriction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PropertyRef {
    Object(ObjectProperty),
    Data(DataProperty),
}

impl PropertyRef {
    /// Classifies a name: the four containment names are object properties,
    /// anything else is a data property.
    pub fn from_name(name: &str) -> Self {
        match ObjectProperty::from_name(name) {
            Some(p) => PropertyRef::Object(p),
            None => PropertyRef::Data(DataProperty::new(name)),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            PropertyRef::Object(p) => p.name(),
            PropertyRef::Data(d) => d.name(),
        }
    }

    pub fn kind(&self) -> PropertyKind {
        match self {
            PropertyRef::Object(p) if p.is_inverse() => PropertyKind::ObjectInverse,
            PropertyRef::Object(_) => PropertyKind::ObjectForward,
            PropertyRef::Data(_) => PropertyKind::Data,
        }
    }

    pub fn inverse_of(&self) -> Option<ObjectProperty> {
        match self {
            PropertyRef::Object(p) => Some(p.inverse()),
            PropertyRef::Data(_) => None,
        }
    }
}

impl fmt::Display for PropertyRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A typed literal. `datatype` is a bare identifier such as `string`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub lexical: String,
    pub datatype: String,
}

impl Literal {
    pub fn new(lexical: impl Into<String>, datatype: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            datatype: datatype.into(),
        }
    }

    pub fn string(lexical: impl Into<String>) -> Self {
        Literal::new(lexical, "string")
    }

    pub fn integer(value: i64) -> Self {
        Literal::new(value.to_string(), "integer")
    }

    pub fn conforms(&self) -> bool {
        lexical_conforms(&self.lexical, &self.datatype)
    }
}

/// Whether `lexical` is a valid value of the (bare) datatype name. Unknown
/// datatypes accept every lexical form.
pub fn lexical_conforms(lexical: &str, datatype: &str) -> bool {
    match bare_datatype(datatype) {
        "integer" | "int" | "long" | "short" | "nonNegativeInteger" => {
            lexical.parse::<i64>().is_ok()
        }
        "double" | "float" | "decimal" => {
            !lexical.is_empty()
                && lexical
                    .parse::<f64>()
                    .map(|v| v.is_finite())
                    .unwrap_or(false)
        }
        "boolean" => matches!(lexical, "true" | "false"),
        _ => true,
    }
}

/// Strips an `xs:`/`xsd:` prefix.
pub fn bare_datatype(datatype: &str) -> &str {
    datatype
        .strip_prefix("xsd:")
        .or_else(|| datatype.strip_prefix("xs:"))
        .unwrap_or(datatype)
}

/// Data range of a data restriction: a datatype, optionally narrowed to one
/// required value, optionally complemented.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DataRange {
    pub datatype: String,
    pub required_value: Option<String>,
    pub negated: bool,
}

impl DataRange {
    pub fn datatype(datatype: impl Into<String>) -> Self {
        DataRange {
            datatype: datatype.into(),
            required_value: None,
            negated: false,
        }
    }

    pub fn value(literal: &Literal) -> Self {
        DataRange {
            datatype: literal.datatype.clone(),
            required_value: Some(literal.lexical.clone()),
            negated: false,
        }
    }

    pub fn negate(mut self) -> Self {
        self.negated = !self.negated;
        self
    }

    pub fn conforms(&self) -> bool {
        self.required_value
            .as_deref()
            .is_none_or(|v| lexical_conforms(v, &self.datatype))
    }

    /// Membership of a literal, ignoring `negated`.
    pub fn contains_positive(&self, literal: &Literal) -> bool {
        bare_datatype(&literal.datatype) == bare_datatype(&self.datatype)
            && self
                .required_value
                .as_deref()
                .is_none_or(|v| v == literal.lexical)
    }

    pub fn contains(&self, literal: &Literal) -> bool {
        self.contains_positive(literal) != self.negated
    }
}

/// Atomic class with its optional CAEX annotation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AtomicClass {
    pub name: String,
    pub kind: Option<CaexKind>,
}

impl AtomicClass {
    pub fn new(name: impl Into<String>) -> Self {
        AtomicClass {
            name: name.into(),
            kind: None,
        }
    }

    pub fn with_kind(name: impl Into<String>, kind: CaexKind) -> Self {
        AtomicClass {
            name: name.into(),
            kind: Some(kind),
        }
    }
}

/// A class expression over the covered constructors.
///
/// `And`/`Or` hold at least two operands and never directly nest themselves
/// when built through [`ClassExpression::and`] / [`ClassExpression::or`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassExpression {
    Atomic(AtomicClass),
    Thing,
    Nothing,
    Not(Box<ClassExpression>),
    And(Vec<ClassExpression>),
    Or(Vec<ClassExpression>),
    OneOf(Vec<String>),
    ObjectSome(ObjectProperty, Box<ClassExpression>),
    ObjectAll(ObjectProperty, Box<ClassExpression>),
    ObjectMin(u32, ObjectProperty, Box<ClassExpression>),
    ObjectMax(u32, ObjectProperty, Box<ClassExpression>),
    ObjectExact(u32, ObjectProperty, Box<ClassExpression>),
    ObjectHasValue(ObjectProperty, String),
    DataSome(DataProperty, DataRange),
    DataHasValue(DataProperty, Literal),
}

use ClassExpression as CE;

impl ClassExpression {
    pub fn atomic(name: impl Into<String>) -> Self {
        CE::Atomic(AtomicClass::new(name))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: ClassExpression) -> Self {
        CE::Not(Box::new(inner))
    }

    /// Flattening intersection. One operand collapses to itself, none to `Thing`.
    pub fn and(operands: impl IntoIterator<Item = ClassExpression>) -> Self {
        let mut flat = Vec::new();
        for op in operands {
            match op {
                CE::And(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => CE::Thing,
            1 => flat.pop().unwrap(),
            _ => CE::And(flat),
        }
    }

    /// Flattening union. One operand collapses to itself, none to `Nothing`.
    pub fn or(operands: impl IntoIterator<Item = ClassExpression>) -> Self {
        let mut flat = Vec::new();
        for op in operands {
            match op {
                CE::Or(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => CE::Nothing,
            1 => flat.pop().unwrap(),
            _ => CE::Or(flat),
        }
    }

    pub fn some(p: ObjectProperty, filler: ClassExpression) -> Self {
        CE::ObjectSome(p, Box::new(filler))
    }

    pub fn all(p: ObjectProperty, filler: ClassExpression) -> Self {
        CE::ObjectAll(p, Box::new(filler))
    }

    pub fn min(n: u32, p: ObjectProperty, filler: ClassExpression) -> Self {
        CE::ObjectMin(n, p, Box::new(filler))
    }

    pub fn max(n: u32, p: ObjectProperty, filler: ClassExpression) -> Self {
        CE::ObjectMax(n, p, Box::new(filler))
    }

    pub fn exact(n: u32, p: ObjectProperty, filler: ClassExpression) -> Self {
        CE::ObjectExact(n, p, Box::new(filler))
    }

    /// Operands of a top-level intersection, or the expression itself.
    pub fn conjuncts(&self) -> &[ClassExpression] {
        match self {
            CE::And(ops) => ops,
            other => std::slice::from_ref(other),
        }
    }

    /// Property and filler of an object restriction.
    pub fn object_restriction(&self) -> Option<(ObjectProperty, &ClassExpression)> {
        match self {
            CE::ObjectSome(p, f)
            | CE::ObjectAll(p, f)
            | CE::ObjectMin(_, p, f)
            | CE::ObjectMax(_, p, f)
            | CE::ObjectExact(_, p, f) => Some((*p, f)),
            _ => None,
        }
    }

    /// The object property of any object restriction, including `value`.
    pub fn object_property(&self) -> Option<ObjectProperty> {
        match self {
            CE::ObjectHasValue(p, _) => Some(*p),
            other => other.object_restriction().map(|(p, _)| p),
        }
    }

    pub fn is_literal(&self) -> bool {
        match self {
            CE::Atomic(_) => true,
            CE::Not(inner) => matches!(**inner, CE::Atomic(_)),
            _ => false,
        }
    }

    /// True if an inverse property occurs anywhere.
    pub fn contains_inverse(&self) -> bool {
        match self {
            CE::Atomic(_) | CE::Thing | CE::Nothing | CE::OneOf(_) => false,
            CE::DataSome(..) | CE::DataHasValue(..) => false,
            CE::Not(inner) => inner.contains_inverse(),
            CE::And(ops) | CE::Or(ops) => ops.iter().any(Self::contains_inverse),
            CE::ObjectHasValue(p, _) => p.is_inverse(),
            other => {
                let (p, f) = other.object_restriction().expect("restriction");
                p.is_inverse() || f.contains_inverse()
            }
        }
    }

    /// True if a union or nominal occurs anywhere.
    pub fn contains_disjunction(&self) -> bool {
        match self {
            CE::Or(_) | CE::OneOf(_) => true,
            CE::And(ops) => ops.iter().any(Self::contains_disjunction),
            CE::Not(inner) => inner.contains_disjunction(),
            other => other
                .object_restriction()
                .is_some_and(|(_, f)| f.contains_disjunction()),
        }
    }

    /// Canonical form: And/Or flattened, operands sorted by printed text.
    pub fn canonical(&self) -> ClassExpression {
        match self {
            CE::And(ops) => {
                let mut ops: Vec<_> = ops.iter().map(Self::canonical).collect();
                sort_by_text(&mut ops);
                CE::and(ops)
            }
            CE::Or(ops) => {
                let mut ops: Vec<_> = ops.iter().map(Self::canonical).collect();
                sort_by_text(&mut ops);
                CE::or(ops)
            }
            CE::OneOf(names) => {
                let mut names = names.clone();
                names.sort();
                CE::OneOf(names)
            }
            CE::Not(inner) => CE::not(inner.canonical()),
            CE::ObjectSome(p, f) => CE::some(*p, f.canonical()),
            CE::ObjectAll(p, f) => CE::all(*p, f.canonical()),
            CE::ObjectMin(n, p, f) => CE::min(*n, *p, f.canonical()),
            CE::ObjectMax(n, p, f) => CE::max(*n, *p, f.canonical()),
            CE::ObjectExact(n, p, f) => CE::exact(*n, *p, f.canonical()),
            other => other.clone(),
        }
    }

    /// Number of constructor nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            CE::Not(inner) => 1 + inner.size(),
            CE::And(ops) | CE::Or(ops) => 1 + ops.iter().map(Self::size).sum::<usize>(),
            other => match other.object_restriction() {
                Some((_, f)) => 1 + f.size(),
                None => 1,
            },
        }
    }
}

fn sort_by_text(ops: &mut [ClassExpression]) {
    ops.sort_by_cached_key(print);
}

impl fmt::Display for ClassExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_is_an_involution() {
        for p in ObjectProperty::ALL {
            assert_eq!(p.inverse().inverse(), p);
            assert_ne!(p.inverse(), p);
            assert_eq!(p.is_inverse(), !p.inverse().is_inverse());
        }
    }

    #[test]
    fn only_containment_names_are_object_properties() {
        assert_eq!(
            PropertyRef::from_name("hasIE").kind(),
            PropertyKind::ObjectForward
        );
        assert_eq!(
            PropertyRef::from_name("isEIOf").kind(),
            PropertyKind::ObjectInverse
        );
        assert_eq!(
            PropertyRef::from_name("hasManufacturer").kind(),
            PropertyKind::Data
        );
        assert_eq!(PropertyRef::from_name("hasManufacturer").inverse_of(), None);
        assert_eq!(
            PropertyRef::from_name("isIEOf").inverse_of(),
            Some(ObjectProperty::HasIE)
        );
    }

    #[test]
    fn and_flattens_and_collapses() {
        let a = CE::atomic("A");
        let b = CE::atomic("B");
        let c = CE::atomic("C");
        let nested = CE::and([a.clone(), CE::and([b.clone(), c.clone()])]);
        assert_eq!(nested, CE::And(vec![a.clone(), b, c]));
        assert_eq!(CE::and([a.clone()]), a);
        assert_eq!(CE::and([]), CE::Thing);
        assert_eq!(CE::or([]), CE::Nothing);
    }

    #[test]
    fn literal_conformance() {
        assert!(Literal::integer(3).conforms());
        assert!(!Literal::new("3.5", "integer").conforms());
        assert!(Literal::new("3.5", "xsd:double").conforms());
        assert!(!Literal::new("maybe", "boolean").conforms());
        assert!(Literal::new("anything", "token").conforms());
    }

    #[test]
    fn canonical_sorts_operands() {
        let x = CE::and([CE::atomic("B"), CE::atomic("A")]);
        let y = CE::and([CE::atomic("A"), CE::atomic("B")]);
        assert_ne!(x, y);
        assert_eq!(x.canonical(), y.canonical());
    }
}
