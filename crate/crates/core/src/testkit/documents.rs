use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{GenConfig, DATA_PROPERTIES};
use crate::caex::{
    CaexAttribute, CaexElement, ClassRef, ConceptAttributes, ConceptModelDocument, ElementKind,
};
use crate::owl_expr::CaexKind;
use crate::translator::crockford_id;

struct Gen<'a> {
    cfg: &'a GenConfig,
    rng: ChaCha8Rng,
    ids: u32,
    counter: u64,
}

impl Gen<'_> {
    fn window(&mut self) -> ConceptAttributes {
        let n = self.rng.random_range(1..=3);
        let (min, max) = match self.rng.random_range(0..8) {
            0 => (self.rng.random_range(2..=3), None),
            1 => (0, Some(n)),
            2 => (n, Some(n)),
            3 => (0, Some(0)),
            4 => (0, None),
            _ => (1, None),
        };
        ConceptAttributes::window(min, max)
    }

    fn attribute(&mut self) -> CaexAttribute {
        let (name, datatype, values) = *DATA_PROPERTIES.choose(&mut self.rng).unwrap();
        let required_value = self
            .rng
            .random_bool(0.5)
            .then(|| values.choose(&mut self.rng).unwrap().to_string());
        CaexAttribute {
            name: name.into(),
            datatype: datatype.into(),
            required_value,
            concept: ConceptAttributes {
                negated: self.rng.random_bool(0.25),
                ..Default::default()
            },
        }
    }

    fn element(&mut self, kind: ElementKind, depth: u32) -> CaexElement {
        let mut e = CaexElement::new(kind);
        e.id = crockford_id(1, self.counter);
        self.counter += 1;
        if self.rng.random_bool(0.75) {
            let ref_kind = match kind {
                ElementKind::ExternalInterface => CaexKind::InterfaceClass,
                _ if self.rng.random_bool(0.15) => CaexKind::SystemUnitClass,
                _ => CaexKind::RoleClass,
            };
            e.class_ref = Some(ClassRef {
                path: self.cfg.atom_pool.choose(&mut self.rng).unwrap().clone(),
                kind: ref_kind,
            });
            e.concept.negated = self.rng.random_bool(0.2);
        }
        e.name = e
            .class_ref
            .as_ref()
            .map_or_else(|| "Thing".to_string(), |r| r.path.clone());
        if self.rng.random_bool(0.1) {
            self.ids += 1;
            e.id = format!("i{}", self.ids);
            e.concept.identified_by_id = true;
        }
        for _ in 0..self.rng.random_range(0..=1) {
            e.attributes.push(self.attribute());
        }
        if kind == ElementKind::InternalElement && depth < self.cfg.max_depth {
            for _ in 0..self.rng.random_range(0..=self.cfg.max_fanout) {
                let kind = if self.rng.random_bool(0.6) {
                    ElementKind::InternalElement
                } else {
                    ElementKind::ExternalInterface
                };
                let mut c = self.element(kind, depth + 1);
                c.concept = ConceptAttributes {
                    negated: c.concept.negated,
                    identified_by_id: c.concept.identified_by_id,
                    ..self.window()
                };
                match kind {
                    ElementKind::InternalElement => e.internal_elements.push(c),
                    ElementKind::ExternalInterface => e.external_interfaces.push(c),
                }
            }
        }
        e
    }
}

fn element_count(e: &CaexElement) -> usize {
    e.element_count()
}

/// Marks the `target`-th element in pre-order primary and puts every element
/// on the way there in the default window.
fn mark_primary(e: &mut CaexElement, target: &mut usize) -> bool {
    if *target == 0 {
        e.concept.primary = true;
        e.concept.min_cardinality = 1;
        e.concept.max_cardinality = None;
        return true;
    }
    *target -= 1;
    for c in e.children_mut() {
        if mark_primary(c, target) {
            c.concept.min_cardinality = 1;
            c.concept.max_cardinality = None;
            return true;
        }
    }
    false
}

/// A random proper concept-model document: IE roots, one primary per model,
/// windows from the representable patterns, the path to the primary in the
/// default window, unique identified IDs.
pub fn gen_proper_document(cfg: &GenConfig) -> ConceptModelDocument {
    cfg.check();
    let mut g = Gen {
        cfg,
        rng: cfg.rng(),
        ids: 0,
        counter: 0,
    };
    let n = if cfg.allow_disjunction && g.rng.random_bool(0.25) {
        2
    } else {
        1
    };
    let mut models = Vec::with_capacity(n);
    for _ in 0..n {
        let mut root = g.element(ElementKind::InternalElement, 1);
        let total = element_count(&root);
        let mut target = if cfg.allow_inverse {
            g.rng.random_range(0..total)
        } else {
            0
        };
        mark_primary(&mut root, &mut target);
        root.concept.min_cardinality = 1;
        root.concept.max_cardinality = None;
        models.push(root);
    }
    ConceptModelDocument::new(models)
}
