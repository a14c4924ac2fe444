use std::collections::{BTreeMap, BTreeSet};

use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{GenConfig, DATA_PROPERTIES};
use crate::caex::ElementKind;
use crate::owl_expr::{ClassExpression as CE, Literal, ObjectProperty};

pub type ObjectId = usize;

/// One object of a finite plant: an internal element or an interface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorldObject {
    pub kind: ElementKind,
    pub labels: BTreeSet<String>,
    pub attributes: BTreeMap<String, Literal>,
    pub individual: Option<String>,
    pub parent: Option<ObjectId>,
    pub children: Vec<ObjectId>,
}

/// A forest of objects; interfaces are leaves.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct World {
    pub objects: Vec<WorldObject>,
}

impl World {
    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn roots(&self) -> impl Iterator<Item = ObjectId> + '_ {
        (0..self.len()).filter(|&i| self.objects[i].parent.is_none())
    }

    pub fn add(&mut self, kind: ElementKind, parent: Option<ObjectId>) -> ObjectId {
        let id = self.objects.len();
        self.objects.push(WorldObject {
            kind,
            labels: BTreeSet::new(),
            attributes: BTreeMap::new(),
            individual: None,
            parent,
            children: Vec::new(),
        });
        if let Some(p) = parent {
            self.objects[p].children.push(id);
        }
        id
    }

    /// Objects related to `x` through `p`.
    pub fn successors(&self, x: ObjectId, p: ObjectProperty) -> Vec<ObjectId> {
        let o = &self.objects[x];
        match p {
            ObjectProperty::HasIE | ObjectProperty::HasEI => {
                let kind = if p == ObjectProperty::HasIE {
                    ElementKind::InternalElement
                } else {
                    ElementKind::ExternalInterface
                };
                o.children
                    .iter()
                    .copied()
                    .filter(|&c| self.objects[c].kind == kind)
                    .collect()
            }
            ObjectProperty::IsIEOf | ObjectProperty::IsEIOf => {
                let kind = if p == ObjectProperty::IsIEOf {
                    ElementKind::InternalElement
                } else {
                    ElementKind::ExternalInterface
                };
                match o.parent {
                    Some(parent) if o.kind == kind => vec![parent],
                    _ => Vec::new(),
                }
            }
        }
    }
}

/// A random world: up to two root elements, at most five children per
/// element, depth at most four, up to three labels per object.
pub fn gen_world(cfg: &GenConfig) -> World {
    let mut rng = cfg.rng();
    let mut world = World::default();
    let mut names: Vec<String> = (0..6).map(|i| format!("i{i}")).collect();
    let roots = rng.random_range(1..=2);
    for _ in 0..roots {
        grow(
            &mut world,
            &mut rng,
            cfg,
            None,
            ElementKind::InternalElement,
            1,
            &mut names,
        );
    }
    world
}

fn grow(
    world: &mut World,
    rng: &mut ChaCha8Rng,
    cfg: &GenConfig,
    parent: Option<ObjectId>,
    kind: ElementKind,
    depth: u32,
    names: &mut Vec<String>,
) {
    let id = world.add(kind, parent);
    let o = &mut world.objects[id];
    for _ in 0..rng.random_range(0..=3) {
        o.labels.insert(cfg.atom_pool.choose(rng).unwrap().clone());
    }
    for (name, datatype, values) in DATA_PROPERTIES {
        if rng.random_bool(0.5) {
            let v = values.choose(rng).unwrap();
            o.attributes
                .insert(name.to_string(), Literal::new(*v, datatype));
        }
    }
    if !names.is_empty() && rng.random_bool(0.3) {
        let i = rng.random_range(0..names.len());
        o.individual = Some(names.swap_remove(i));
    }
    if kind == ElementKind::ExternalInterface || depth >= 4 {
        return;
    }
    for _ in 0..rng.random_range(0..=5u32.min(1 + 4 - depth)) {
        let kind = if rng.random_bool(0.6) {
            ElementKind::InternalElement
        } else {
            ElementKind::ExternalInterface
        };
        grow(world, rng, cfg, Some(id), kind, depth + 1, names);
    }
}

/// Extension of `ce` in `world`, computed directly from the set semantics.
pub fn model_check(ce: &CE, world: &World) -> BTreeSet<ObjectId> {
    let bits = eval(ce, world);
    (0..world.len()).filter(|&i| bits[i]).collect()
}

fn eval(ce: &CE, w: &World) -> Vec<bool> {
    let n = w.len();
    let count = |x: ObjectId, p: ObjectProperty, f: &[bool]| {
        w.successors(x, p).into_iter().filter(|&y| f[y]).count() as u32
    };
    match ce {
        CE::Thing => vec![true; n],
        CE::Nothing => vec![false; n],
        CE::Atomic(a) => w
            .objects
            .iter()
            .map(|o| o.labels.contains(&a.name))
            .collect(),
        CE::Not(inner) => eval(inner, w).into_iter().map(|b| !b).collect(),
        CE::And(ops) => ops.iter().fold(vec![true; n], |acc, op| {
            acc.iter().zip(eval(op, w)).map(|(a, b)| *a && b).collect()
        }),
        CE::Or(ops) => ops.iter().fold(vec![false; n], |acc, op| {
            acc.iter().zip(eval(op, w)).map(|(a, b)| *a || b).collect()
        }),
        CE::OneOf(names) => w
            .objects
            .iter()
            .map(|o| o.individual.as_ref().is_some_and(|i| names.contains(i)))
            .collect(),
        CE::ObjectSome(p, f) => {
            let f = eval(f, w);
            (0..n).map(|x| count(x, *p, &f) >= 1).collect()
        }
        CE::ObjectAll(p, f) => {
            let f = eval(f, w);
            (0..n)
                .map(|x| w.successors(x, *p).into_iter().all(|y| f[y]))
                .collect()
        }
        CE::ObjectMin(k, p, f) => {
            let f = eval(f, w);
            (0..n).map(|x| count(x, *p, &f) >= *k).collect()
        }
        CE::ObjectMax(k, p, f) => {
            let f = eval(f, w);
            (0..n).map(|x| count(x, *p, &f) <= *k).collect()
        }
        CE::ObjectExact(k, p, f) => {
            let f = eval(f, w);
            (0..n).map(|x| count(x, *p, &f) == *k).collect()
        }
        CE::ObjectHasValue(p, a) => (0..n)
            .map(|x| {
                w.successors(x, *p)
                    .into_iter()
                    .any(|y| w.objects[y].individual.as_deref() == Some(a))
            })
            .collect(),
        CE::DataSome(d, r) => w
            .objects
            .iter()
            .map(|o| o.attributes.get(d.name()).is_some_and(|l| r.contains(l)))
            .collect(),
        CE::DataHasValue(d, lit) => w
            .objects
            .iter()
            .map(|o| {
                o.attributes.get(d.name()).is_some_and(|l| {
                    l.lexical == lit.lexical
                        && crate::owl_expr::bare_datatype(&l.datatype)
                            == crate::owl_expr::bare_datatype(&lit.datatype)
                })
            })
            .collect(),
    }
}
