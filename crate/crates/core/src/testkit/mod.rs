//! Random generators and brute-force oracles for property tests and fuzzing.

mod classes;
mod documents;
mod matcher;
mod world;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::owl_expr::ClassExpression as CE;

pub use classes::{gen_class, gen_proper_class};
pub use documents::gen_proper_document;
pub use matcher::{match_element, model_members};
pub use world::{gen_world, model_check, ObjectId, World, WorldObject};

/// Data properties shared by the class, document and world generators, with
/// the datatype and the lexical forms drawn for each.
pub const DATA_PROPERTIES: [(&str, &str, &[&str]); 3] = [
    ("hasWeight", "integer", &["1", "2", "3"]),
    ("hasManufacturer", "string", &["KUKA", "ABB"]),
    ("isSafe", "boolean", &["true", "false"]),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    pub max_depth: u32,
    pub max_fanout: u32,
    pub atom_pool: Vec<String>,
    pub allow_inverse: bool,
    pub allow_disjunction: bool,
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_depth: 3,
            max_fanout: 2,
            atom_pool: ["A", "B", "C"].map(String::from).to_vec(),
            allow_inverse: true,
            allow_disjunction: true,
            seed: 0,
        }
    }
}

impl GenConfig {
    pub fn with_seed(seed: u64) -> Self {
        GenConfig {
            seed,
            ..Default::default()
        }
    }

    pub(crate) fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn check(&self) {
        assert!(self.max_depth >= 1, "max_depth must be at least 1");
        assert!(self.max_fanout >= 1, "max_fanout must be at least 1");
        assert!(!self.atom_pool.is_empty(), "atom pool is empty");
    }
}

/// Number of disjuncts after distributing unions and nominals out of
/// intersections and out of the restrictions that distribute over them.
pub fn dnf_count(ce: &CE) -> u64 {
    match ce {
        CE::Or(ops) => ops.iter().map(dnf_count).sum(),
        CE::OneOf(names) => names.len() as u64,
        CE::And(ops) => ops.iter().map(dnf_count).product(),
        CE::ObjectSome(_, f) => dnf_count(f),
        CE::ObjectMin(n, _, f) if *n <= 1 => dnf_count(f),
        // ∀ never distributes over a union in its filler.
        CE::ObjectAll(..) => 1,
        CE::ObjectMin(_, _, f) | CE::ObjectMax(_, _, f) | CE::ObjectExact(_, _, f) => dnf_count(f),
        _ => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::owl_expr::parse;

    #[test]
    fn dnf_counts() {
        let c = |t: &str| dnf_count(&parse(t).unwrap());
        assert_eq!(c("Robot and (hasIE some IOController)"), 1);
        assert_eq!(c("Robot and (hasIE some (IOController or IODevice))"), 2);
        assert_eq!(c("(A or B) and (hasIE some (C or D or E))"), 6);
        assert_eq!(c("{a, b, c} and (A or B)"), 6);
        assert_eq!(c("hasIE only (A or B)"), 1);
    }
}
