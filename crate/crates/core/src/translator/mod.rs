//! Forward (class → concept models) and backward (concept models → class)
//! translation, and the canonical forests used to compare classes.

mod backward;
mod finalize;
mod forward;

use std::fmt;

use serde::Serialize;

use crate::caex::{CaexError, ConceptAttributes};
use crate::concept_tree::TreeError;
use crate::owl_expr::{ClassExpression as CE, ExprError, Violation};

pub use backward::trans_b;
pub use finalize::{canonical_key, crockford_id, normalize};
pub use forward::{trans_f, trans_f_with_trees};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TranslateError {
    #[error("uncovered constructor: {0}")]
    UncoveredConstructor(String),
    #[error("improper class: {}", list(.0))]
    ImproperClass(Vec<Violation>),
    #[error("improper class: {0}")]
    ImproperStructure(String),
    #[error("unsatisfiable: {0}")]
    Unsatisfiable(String),
    #[error("not representable: {0}")]
    NotRepresentable(String),
    #[error("improper model: {}", list(.0))]
    ImproperModel(Vec<PrimaryReport>),
    #[error("ambiguous cardinality at {path}: min {min} > max {max}")]
    AmbiguousCardinality { path: String, min: u32, max: u32 },
    #[error(transparent)]
    Model(#[from] CaexError),
}

fn list<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl From<ExprError> for TranslateError {
    fn from(e: ExprError) -> Self {
        match e {
            ExprError::UncoveredConstructor(m) => TranslateError::UncoveredConstructor(m),
        }
    }
}

impl From<TreeError> for TranslateError {
    fn from(e: TreeError) -> Self {
        match e {
            TreeError::UncoveredConstructor(m) => TranslateError::UncoveredConstructor(m),
            TreeError::NotRepresentable(m) => TranslateError::NotRepresentable(m),
            TreeError::ImproperClass(m) => TranslateError::ImproperStructure(m),
            other => TranslateError::NotRepresentable(other.to_string()),
        }
    }
}

/// Primary count of one model of an improper document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimaryReport {
    pub model: usize,
    pub count: usize,
    pub paths: Vec<String>,
}

impl fmt::Display for PrimaryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "model {} has {} primary elements",
            self.model, self.count
        )?;
        if !self.paths.is_empty() {
            write!(f, " ({})", self.paths.join(", "))?;
        }
        Ok(())
    }
}

/// Rows of the constructor-to-concept-attribute mapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MappingPattern {
    SimpleComplement,
    Existential,
    ExistentialNegated,
    Universal,
    UniversalNegated,
    AtLeast,
    AtMost,
    Exact,
    FillsObject,
    FillsData,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MappingRow {
    pub pattern: MappingPattern,
    pub negated: bool,
    pub min: u32,
    /// `None` is unlimited.
    pub max: Option<u32>,
    pub identified_by_id: bool,
}

impl MappingRow {
    /// The row for a pattern; `n` is the cardinality of the counting rows.
    pub fn of(pattern: MappingPattern, n: u32) -> Self {
        use MappingPattern::*;
        let (negated, min, max, identified_by_id) = match pattern {
            SimpleComplement => (true, 1, None, false),
            Existential => (false, 1, None, false),
            ExistentialNegated => (true, 1, None, false),
            Universal => (true, 0, Some(0), false),
            UniversalNegated => (false, 0, Some(0), false),
            AtLeast => (false, n, None, false),
            AtMost => (false, 0, Some(n), false),
            Exact => (false, n, Some(n), false),
            FillsObject => (false, 1, None, true),
            FillsData => (false, 1, None, false),
        };
        MappingRow {
            pattern,
            negated,
            min,
            max,
            identified_by_id,
        }
    }

    pub fn concept(&self) -> ConceptAttributes {
        ConceptAttributes {
            negated: self.negated,
            min_cardinality: self.min,
            max_cardinality: self.max,
            identified_by_id: self.identified_by_id,
            primary: false,
        }
    }

    /// The pattern a single restriction falls under, if it is one of the rows.
    pub fn classify(ce: &CE) -> Option<MappingRow> {
        use MappingPattern::*;
        let negated_literal =
            |f: &CE| matches!(f, CE::Not(inner) if matches!(**inner, CE::Atomic(_)));
        Some(match ce {
            CE::Not(inner) if matches!(**inner, CE::Atomic(_)) => Self::of(SimpleComplement, 0),
            CE::ObjectSome(_, f) if matches!(**f, CE::OneOf(ref v) if v.len() == 1) => {
                Self::of(FillsObject, 0)
            }
            CE::ObjectHasValue(..) => Self::of(FillsObject, 0),
            CE::ObjectSome(_, f) if negated_literal(f) => Self::of(ExistentialNegated, 0),
            CE::DataSome(_, r) if r.negated => Self::of(ExistentialNegated, 0),
            CE::ObjectSome(..) | CE::DataSome(..) => Self::of(Existential, 0),
            CE::ObjectAll(_, f) if negated_literal(f) => Self::of(UniversalNegated, 0),
            CE::ObjectAll(..) => Self::of(Universal, 0),
            CE::ObjectMin(n, ..) => Self::of(AtLeast, *n),
            CE::ObjectMax(n, ..) => Self::of(AtMost, *n),
            CE::ObjectExact(n, ..) => Self::of(Exact, *n),
            CE::DataHasValue(..) => Self::of(FillsData, 0),
            _ => return None,
        })
    }
}

/// Sorted canonical serializations of the concept models of a class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CanonicalForest(pub Vec<String>);

/// Full forward pipeline followed by canonical ordering of the models.
pub fn canonicalize(ce: &CE) -> Result<CanonicalForest, TranslateError> {
    let doc = trans_f(ce)?;
    let mut keys: Vec<String> = doc.models.iter().map(canonical_key).collect();
    keys.sort();
    Ok(CanonicalForest(keys))
}

/// Two proper classes are equivalent when their canonical forests agree.
pub fn equivalent(a: &CE, b: &CE) -> Result<bool, TranslateError> {
    Ok(canonicalize(a)? == canonicalize(b)?)
}
