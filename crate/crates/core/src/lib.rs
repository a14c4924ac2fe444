//! Translation between OWL class expressions and AutomationML concept models.

pub mod caex;
pub mod concept_tree;
pub mod owl_expr;
#[cfg(feature = "devtools")]
pub mod testkit;
pub mod translator;
