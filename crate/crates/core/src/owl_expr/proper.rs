//! Structural conditions under which a class in NNF has an AML concept model.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CaexKind, ClassExpression as CE, ObjectProperty};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ViolationKind {
    /// `R⁻` inside the filler of a restriction over `R`.
    C1,
    /// Inverse property on, or inside the filler of, a cardinality restriction.
    C2,
    /// `R⁻` inside the filler of a restriction over a different forward
    /// property, or one object claimed as both internal element and interface.
    C3,
    /// `isEIOf` inside the filler of a restriction over an inverse property.
    C4,
    /// `¬A₁ ⊓ A₂`: a negated atomic class sharing one class reference.
    MixedSignAtomicConjunction,
    /// Two positive atomic classes at a position with a single class reference.
    MultipleClassReferences,
    /// Object restriction on a position that is an external interface.
    InterfaceWithChildren,
    /// CAEX annotation that contradicts the element kind of its position.
    KindMismatch,
}

impl ViolationKind {
    pub fn tag(self) -> &'static str {
        match self {
            ViolationKind::C1 => "C1",
            ViolationKind::C2 => "C2",
            ViolationKind::C3 => "C3",
            ViolationKind::C4 => "C4",
            ViolationKind::MixedSignAtomicConjunction => "MixedSignAtomicConjunction",
            ViolationKind::MultipleClassReferences => "MultipleClassReferences",
            ViolationKind::InterfaceWithChildren => "InterfaceWithChildren",
            ViolationKind::KindMismatch => "KindMismatch",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PathStep {
    Operand(usize),
    Filler,
}

/// Location of a subterm, from the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SubtermPath(pub Vec<PathStep>);

impl SubtermPath {
    pub fn root() -> Self {
        SubtermPath(Vec::new())
    }

    fn push(&self, step: PathStep) -> Self {
        let mut steps = self.0.clone();
        steps.push(step);
        SubtermPath(steps)
    }

    /// Resolves the path against an expression.
    pub fn resolve<'a>(&self, mut ce: &'a CE) -> Option<&'a CE> {
        for step in &self.0 {
            ce = match (step, ce) {
                (PathStep::Operand(i), CE::And(ops) | CE::Or(ops)) => ops.get(*i)?,
                (PathStep::Filler, CE::Not(inner)) => inner,
                (PathStep::Filler, other) => other.object_restriction()?.1,
                _ => return None,
            };
        }
        Some(ce)
    }
}

impl fmt::Display for SubtermPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        for (i, step) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            match step {
                PathStep::Operand(n) => write!(f, "operand[{n}]")?,
                PathStep::Filler => f.write_str("filler")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub path: SubtermPath,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.kind, self.path, self.message)
    }
}

/// Returns every reason `ce` (in NNF) is not a proper AML class; empty iff proper.
pub fn check_proper(ce: &CE) -> Vec<Violation> {
    let mut out = Vec::new();
    inverse_conditions(ce, &SubtermPath::root(), &mut Vec::new(), &mut out);
    literal_positions(ce, &SubtermPath::root(), &mut out);
    kinds(ce, &SubtermPath::root(), None, &mut out);
    out.sort_by(|a, b| a.path.cmp(&b.path).then(a.kind.cmp(&b.kind)));
    out
}

#[derive(Clone, Copy)]
struct Frame {
    property: ObjectProperty,
    counting: bool,
}

fn is_counting(ce: &CE) -> bool {
    matches!(
        ce,
        CE::ObjectMin(..) | CE::ObjectMax(..) | CE::ObjectExact(..) | CE::ObjectAll(..)
    )
}

fn inverse_conditions(
    ce: &CE,
    path: &SubtermPath,
    frames: &mut Vec<Frame>,
    out: &mut Vec<Violation>,
) {
    match ce {
        CE::And(ops) | CE::Or(ops) => {
            if let CE::And(_) = ce {
                let has_ie = ops
                    .iter()
                    .any(|o| is_inverse_existential(o, ObjectProperty::IsIEOf));
                let has_ei = ops
                    .iter()
                    .any(|o| is_inverse_existential(o, ObjectProperty::IsEIOf));
                if has_ie && has_ei {
                    out.push(Violation {
                        kind: ViolationKind::C3,
                        path: path.clone(),
                        message: "one object cannot be both an internal element (isIEOf) and an \
                                  external interface (isEIOf)"
                            .into(),
                    });
                }
            }
            for (i, op) in ops.iter().enumerate() {
                inverse_conditions(op, &path.push(PathStep::Operand(i)), frames, out);
            }
        }
        CE::Not(inner) => inverse_conditions(inner, &path.push(PathStep::Filler), frames, out),
        _ => {
            let Some(property) = ce.object_property() else {
                return;
            };
            if property.is_inverse() {
                check_inverse_occurrence(ce, property, path, frames, out);
            }
            if let Some((_, filler)) = ce.object_restriction() {
                frames.push(Frame {
                    property,
                    counting: is_counting(ce),
                });
                inverse_conditions(filler, &path.push(PathStep::Filler), frames, out);
                frames.pop();
            }
        }
    }
}

fn is_inverse_existential(ce: &CE, property: ObjectProperty) -> bool {
    matches!(ce, CE::ObjectSome(p, _) | CE::ObjectHasValue(p, _) if *p == property)
}

fn check_inverse_occurrence(
    ce: &CE,
    property: ObjectProperty,
    path: &SubtermPath,
    frames: &[Frame],
    out: &mut Vec<Violation>,
) {
    let mut push = |kind, message: String| {
        out.push(Violation {
            kind,
            path: path.clone(),
            message,
        })
    };
    if is_counting(ce) {
        push(
            ViolationKind::C2,
            format!("{property} is used in a cardinality or universal restriction"),
        );
    }
    // The nearest enclosing restriction that is not an existential over an
    // inverse property decides which condition is breached.
    let blocking = frames
        .iter()
        .rev()
        .find(|f| f.counting || !f.property.is_inverse());
    match blocking {
        Some(f) if f.counting => push(
            ViolationKind::C2,
            format!(
                "{property} inside the filler of a cardinality restriction over {}",
                f.property
            ),
        ),
        Some(f) if f.property == property.inverse() => push(
            ViolationKind::C1,
            format!(
                "{property} inside the filler of a restriction over {}",
                f.property
            ),
        ),
        Some(f) => push(
            ViolationKind::C3,
            format!(
                "{property} inside the filler of a restriction over {}",
                f.property
            ),
        ),
        None => {
            if property == ObjectProperty::IsEIOf && !frames.is_empty() {
                push(
                    ViolationKind::C4,
                    "isEIOf inside the filler of a restriction over an inverse property; \
                     external interfaces have no children"
                        .into(),
                );
            }
        }
    }
}

/// Atomic literals of one position; complements inside universal fillers are
/// left to the translator since they flip polarity.
fn literal_positions(ce: &CE, path: &SubtermPath, out: &mut Vec<Violation>) {
    match ce {
        CE::And(ops) => {
            check_literals(ops.iter(), path, out);
            let inverse: Vec<(ObjectProperty, &CE)> = ops
                .iter()
                .filter_map(|o| match o {
                    CE::ObjectSome(p, f) if p.is_inverse() => Some((*p, &**f)),
                    _ => None,
                })
                .collect();
            let same_parent = inverse.windows(2).all(|w| w[0].0 == w[1].0);
            if inverse.len() >= 2 && same_parent {
                let inverse_fillers = inverse.iter().map(|(_, f)| *f);
                // All inverse conjuncts describe the same parent object.
                check_literals(inverse_fillers.flat_map(|f| f.conjuncts()), path, out);
            }
            for (i, op) in ops.iter().enumerate() {
                literal_positions(op, &path.push(PathStep::Operand(i)), out);
            }
        }
        CE::Or(ops) => {
            for (i, op) in ops.iter().enumerate() {
                literal_positions(op, &path.push(PathStep::Operand(i)), out);
            }
        }
        CE::ObjectAll(..) => {}
        other => {
            if let Some((_, filler)) = other.object_restriction() {
                literal_positions(filler, &path.push(PathStep::Filler), out);
            }
        }
    }
}

fn check_literals<'a>(
    ops: impl Iterator<Item = &'a CE>,
    path: &SubtermPath,
    out: &mut Vec<Violation>,
) {
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for op in ops {
        match op {
            CE::Atomic(a) => positive.push(a.name.as_str()),
            CE::Not(inner) => {
                if let CE::Atomic(a) = &**inner {
                    negative.push(a.name.as_str());
                }
            }
            _ => {}
        }
    }
    if !negative.is_empty() && positive.len() + negative.len() >= 2 {
        out.push(Violation {
            kind: ViolationKind::MixedSignAtomicConjunction,
            path: path.clone(),
            message: format!(
                "negated atomic class {} conjoined with other atomic classes cannot share one \
                 CAEX class reference (complement case (a))",
                negative[0]
            ),
        });
    } else if positive.len() >= 2 {
        out.push(Violation {
            kind: ViolationKind::MultipleClassReferences,
            path: path.clone(),
            message: format!(
                "atomic classes {} would need {} class references on one element",
                positive.join(", "),
                positive.len()
            ),
        });
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Element,
    Interface,
}

/// Element kind of the top-level position: an interface when reached through
/// `isEIOf` or annotated `@ic`, an internal element otherwise.
fn top_slot(ce: &CE) -> Slot {
    let ops = ce.conjuncts();
    if ops
        .iter()
        .any(|o| matches!(o.object_property(), Some(ObjectProperty::IsEIOf)))
    {
        return Slot::Interface;
    }
    if ops
        .iter()
        .any(|o| matches!(o.object_property(), Some(ObjectProperty::IsIEOf)))
    {
        return Slot::Element;
    }
    let annotated_ic = ops.iter().any(|o| match o {
        CE::Atomic(a) => a.kind == Some(CaexKind::InterfaceClass),
        CE::Not(inner) => {
            matches!(&**inner, CE::Atomic(a) if a.kind == Some(CaexKind::InterfaceClass))
        }
        _ => false,
    });
    if annotated_ic {
        Slot::Interface
    } else {
        Slot::Element
    }
}

/// Whether the object a class describes is an external interface, judged from
/// its top-level conjuncts.
pub fn top_position_is_interface(ce: &CE) -> bool {
    top_slot(ce) == Slot::Interface
}

fn kinds(ce: &CE, path: &SubtermPath, slot: Option<Slot>, out: &mut Vec<Violation>) {
    if let CE::Or(ops) = ce {
        for (i, op) in ops.iter().enumerate() {
            kinds(op, &path.push(PathStep::Operand(i)), slot, out);
        }
        return;
    }
    let slot = slot.unwrap_or_else(|| top_slot(ce));
    match ce {
        CE::And(ops) => {
            for (i, op) in ops.iter().enumerate() {
                kinds(op, &path.push(PathStep::Operand(i)), Some(slot), out);
            }
        }
        CE::Not(inner) => kinds(inner, &path.push(PathStep::Filler), Some(slot), out),
        CE::Atomic(a) => {
            let ok = match (slot, a.kind) {
                (_, None) => true,
                (Slot::Element, Some(k)) => k != CaexKind::InterfaceClass,
                (Slot::Interface, Some(k)) => k == CaexKind::InterfaceClass,
            };
            if !ok {
                out.push(Violation {
                    kind: ViolationKind::KindMismatch,
                    path: path.clone(),
                    message: format!(
                        "{} is annotated @{} but its position is an {}",
                        a.name,
                        a.kind.unwrap().suffix(),
                        slot_name(slot)
                    ),
                });
            }
        }
        other => {
            let Some(property) = other.object_property() else {
                return;
            };
            let breach = match (slot, property) {
                (Slot::Interface, ObjectProperty::HasIE | ObjectProperty::HasEI) => Some((
                    ViolationKind::InterfaceWithChildren,
                    format!("{property} restriction on an external interface"),
                )),
                _ => None,
            };
            if let Some((kind, message)) = breach {
                out.push(Violation {
                    kind,
                    path: path.clone(),
                    message,
                });
            }
            if let Some((_, filler)) = other.object_restriction() {
                let child = match property {
                    ObjectProperty::HasEI => Slot::Interface,
                    _ => Slot::Element,
                };
                kinds(filler, &path.push(PathStep::Filler), Some(child), out);
            }
        }
    }
}

fn slot_name(slot: Slot) -> &'static str {
    match slot {
        Slot::Element => "internal element",
        Slot::Interface => "external interface",
    }
}
