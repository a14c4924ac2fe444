use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{GenConfig, DATA_PROPERTIES};
use crate::owl_expr::{
    complement, AtomicClass, CaexKind, ClassExpression as CE, DataProperty, DataRange, Literal,
    ObjectProperty,
};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    Element,
    Interface,
}

#[derive(Clone, Copy)]
struct Ctx {
    depth: u32,
    slot: Slot,
    /// Unions allowed here (not under a non-distributing restriction).
    disjunction: bool,
    /// Only atomic literals and object restrictions (counted class of a ∀).
    pure: bool,
}

struct Gen<'a> {
    cfg: &'a GenConfig,
    rng: ChaCha8Rng,
    individuals: u32,
}

impl Gen<'_> {
    fn atom(&mut self) -> String {
        self.cfg.atom_pool.choose(&mut self.rng).unwrap().clone()
    }

    fn individual(&mut self) -> String {
        self.individuals += 1;
        format!("i{}", self.individuals)
    }

    fn literal(&mut self, slot: Slot) -> Option<CE> {
        let name = self.atom();
        let kind = match slot {
            Slot::Element if self.rng.random_bool(0.1) => Some(CaexKind::SystemUnitClass),
            _ => None,
        };
        let atom = CE::Atomic(AtomicClass { name, kind });
        match self.rng.random_range(0..6) {
            0 | 1 => None,
            2 => Some(CE::not(atom)),
            _ => Some(atom),
        }
    }

    fn data(&mut self) -> CE {
        let (name, datatype, values) = *DATA_PROPERTIES.choose(&mut self.rng).unwrap();
        let d = DataProperty::new(name);
        let value = values.choose(&mut self.rng).unwrap().to_string();
        match self.rng.random_range(0..4) {
            0 => CE::DataSome(d, DataRange::datatype(datatype)),
            1 => CE::DataSome(d, DataRange::datatype(datatype).negate()),
            2 => CE::DataSome(d, DataRange::value(&Literal::new(value, datatype)).negate()),
            _ => CE::DataHasValue(d, Literal::new(value, datatype)),
        }
    }

    /// Content of one object position.
    fn position(&mut self, ctx: Ctx) -> CE {
        if ctx.disjunction && self.cfg.allow_disjunction && self.rng.random_bool(0.2) {
            if !ctx.pure && self.rng.random_bool(0.3) {
                let n = self.rng.random_range(2..=3);
                return CE::OneOf((0..n).map(|_| self.individual()).collect());
            }
            let n = self.rng.random_range(2..=3);
            return CE::or((0..n).map(|_| self.conjunction(ctx)).collect::<Vec<_>>());
        }
        self.conjunction(ctx)
    }

    fn conjunction(&mut self, ctx: Ctx) -> CE {
        let mut ops = Vec::new();
        if let Some(l) = self.literal(ctx.slot) {
            ops.push(l);
        }
        if !ctx.pure {
            if self.rng.random_bool(0.1) {
                ops.push(CE::OneOf(vec![self.individual()]));
            }
            if self.rng.random_bool(0.3) {
                ops.push(self.data());
            }
        }
        if ctx.slot == Slot::Element && ctx.depth < self.cfg.max_depth {
            let n = self.rng.random_range(0..=self.cfg.max_fanout);
            for _ in 0..n {
                ops.push(self.restriction(ctx));
            }
        }
        CE::and(ops)
    }

    fn restriction(&mut self, ctx: Ctx) -> CE {
        let p = if self.rng.random_bool(0.6) {
            ObjectProperty::HasIE
        } else {
            ObjectProperty::HasEI
        };
        let child = Ctx {
            depth: ctx.depth + 1,
            slot: if p == ObjectProperty::HasEI {
                Slot::Interface
            } else {
                Slot::Element
            },
            disjunction: ctx.disjunction,
            pure: ctx.pure,
        };
        let counted = Ctx {
            disjunction: false,
            ..child
        };
        match self.rng.random_range(0..9) {
            0 | 1 => CE::some(p, self.position(child)),
            2 if !ctx.pure => CE::ObjectHasValue(p, self.individual()),
            2 | 3 => {
                let n = self.rng.random_range(0..=3);
                let ctx = if n <= 1 { child } else { counted };
                CE::min(n, p, self.position(ctx))
            }
            4 => CE::max(self.rng.random_range(0..=3), p, self.position(counted)),
            5 => CE::exact(self.rng.random_range(0..=3), p, self.position(counted)),
            _ => {
                let k = self.position(Ctx {
                    pure: true,
                    ..child
                });
                CE::all(p, complement(&k).expect("pure class has a complement"))
            }
        }
    }

    /// A chain of parents reached through isIEOf.
    fn parents(&mut self, levels: u32) -> CE {
        let ctx = Ctx {
            depth: 1,
            slot: Slot::Element,
            disjunction: true,
            pure: false,
        };
        let own = self.position(ctx);
        if levels > 1 {
            let up = self.parents(levels - 1);
            CE::and([own, CE::some(ObjectProperty::IsIEOf, up)])
        } else {
            own
        }
    }
}

/// A random proper AML class: NNF, covered constructors only, inverse
/// properties only on the outermost prefix, kinds respected.
pub fn gen_proper_class(cfg: &GenConfig) -> CE {
    cfg.check();
    let mut g = Gen {
        cfg,
        rng: cfg.rng(),
        individuals: 0,
    };
    let inverse = cfg.allow_inverse && g.rng.random_bool(0.5);
    if !inverse {
        let ctx = Ctx {
            depth: 1,
            slot: Slot::Element,
            disjunction: true,
            pure: false,
        };
        return g.position(ctx);
    }
    let interface = g.rng.random_bool(0.4);
    let body = g.position(Ctx {
        depth: 1,
        slot: if interface {
            Slot::Interface
        } else {
            Slot::Element
        },
        disjunction: true,
        pure: false,
    });
    let levels = g.rng.random_range(1..=2);
    let parents = g.parents(levels);
    let p = if interface {
        ObjectProperty::IsEIOf
    } else {
        ObjectProperty::IsIEOf
    };
    CE::and([body, CE::some(p, parents)])
}

/// A random covered class with complements anywhere they have an NNF, and
/// inverse properties anywhere; for semantic checks that do not need
/// properness.
pub fn gen_class(cfg: &GenConfig) -> CE {
    cfg.check();
    let mut rng = cfg.rng();
    let mut individuals = 0;
    arbitrary(cfg, &mut rng, 1, false, &mut individuals)
}

fn arbitrary(
    cfg: &GenConfig,
    rng: &mut ChaCha8Rng,
    depth: u32,
    negated: bool,
    ids: &mut u32,
) -> CE {
    let props = [
        ObjectProperty::HasIE,
        ObjectProperty::HasEI,
        ObjectProperty::IsIEOf,
    ];
    let leaf = depth >= cfg.max_depth || rng.random_bool(0.25);
    if leaf {
        let pick = rng.random_range(0..10);
        return match pick {
            0 => CE::Thing,
            1 => CE::Nothing,
            2 if !negated => {
                *ids += 1;
                CE::OneOf(vec![format!("i{}", *ids % 4)])
            }
            3 if !negated => {
                let (name, dt, values) =
                    DATA_PROPERTIES[rng.random_range(0..DATA_PROPERTIES.len())];
                let v = values[rng.random_range(0..values.len())];
                if rng.random_bool(0.5) {
                    CE::DataHasValue(DataProperty::new(name), Literal::new(v, dt))
                } else {
                    CE::DataSome(DataProperty::new(name), DataRange::datatype(dt))
                }
            }
            _ => CE::atomic(cfg.atom_pool[rng.random_range(0..cfg.atom_pool.len())].clone()),
        };
    }
    let mut sub = |rng: &mut ChaCha8Rng, neg: bool| arbitrary(cfg, rng, depth + 1, neg, ids);
    let p = props[rng.random_range(0..props.len())];
    let n = rng.random_range(0..=3);
    match rng.random_range(0..9) {
        0 => CE::not(sub(rng, !negated)),
        1 => CE::and([sub(rng, negated), sub(rng, negated)]),
        2 => CE::or([sub(rng, negated), sub(rng, negated)]),
        3 => CE::some(p, sub(rng, negated)),
        4 => CE::all(p, sub(rng, negated)),
        // NNF never complements a cardinality filler.
        5 => CE::min(n, p, sub(rng, false)),
        6 => CE::max(n, p, sub(rng, false)),
        7 => CE::exact(n, p, sub(rng, false)),
        _ if !negated => {
            *ids += 1;
            CE::ObjectHasValue(p, format!("i{}", *ids % 4))
        }
        _ => CE::not(sub(rng, !negated)),
    }
}
