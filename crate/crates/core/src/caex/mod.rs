//! Minimal CAEX subset for AML concept models.

mod render;
mod xml;

use std::fmt;

use serde::Serialize;

use crate::owl_expr::CaexKind;

pub use render::render_models;
pub use xml::{read_xml, read_xml_with_warnings, write_xml};

/// Names of the concept attributes; no data attribute may use them.
pub const RESERVED_NAMES: [&str; 6] = [
    "negated",
    "minCardinality",
    "maxCardinality",
    "identifiedByID",
    "isIdentifiedByID",
    "primary",
];

pub fn is_reserved(name: &str) -> bool {
    RESERVED_NAMES.contains(&name)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CaexError {
    #[error("XML syntax error: {0}")]
    XmlSyntax(String),
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("invalid model at {path}: {message}")]
    InvalidModel { path: String, message: String },
}

/// The concept attributes every element and attribute carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ConceptAttributes {
    pub negated: bool,
    pub min_cardinality: u32,
    /// `None` is unlimited.
    pub max_cardinality: Option<u32>,
    pub identified_by_id: bool,
    pub primary: bool,
}

impl Default for ConceptAttributes {
    fn default() -> Self {
        ConceptAttributes {
            negated: false,
            min_cardinality: 1,
            max_cardinality: None,
            identified_by_id: false,
            primary: false,
        }
    }
}

impl ConceptAttributes {
    pub fn window(min: u32, max: Option<u32>) -> Self {
        ConceptAttributes {
            min_cardinality: min,
            max_cardinality: max,
            ..Default::default()
        }
    }

    pub fn is_default(&self) -> bool {
        *self == ConceptAttributes::default()
    }

    pub fn has_default_window(&self) -> bool {
        self.min_cardinality == 1 && self.max_cardinality.is_none()
    }

    /// `[min,max]` with -1 for unlimited.
    pub fn window_text(&self) -> String {
        match self.max_cardinality {
            Some(max) => format!("[{},{}]", self.min_cardinality, max),
            None => format!("[{},-1]", self.min_cardinality),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ElementKind {
    InternalElement,
    ExternalInterface,
}

impl ElementKind {
    pub fn tag(self) -> &'static str {
        match self {
            ElementKind::InternalElement => "InternalElement",
            ElementKind::ExternalInterface => "ExternalInterface",
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            ElementKind::InternalElement => "IE",
            ElementKind::ExternalInterface => "EI",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClassRef {
    pub path: String,
    pub kind: CaexKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CaexAttribute {
    pub name: String,
    /// Bare datatype name, written with an `xs:` prefix.
    pub datatype: String,
    pub required_value: Option<String>,
    pub concept: ConceptAttributes,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CaexElement {
    pub id: String,
    pub name: String,
    pub kind: ElementKind,
    pub class_ref: Option<ClassRef>,
    pub concept: ConceptAttributes,
    pub attributes: Vec<CaexAttribute>,
    pub internal_elements: Vec<CaexElement>,
    pub external_interfaces: Vec<CaexElement>,
}

impl CaexElement {
    pub fn new(kind: ElementKind) -> Self {
        CaexElement {
            id: String::new(),
            name: String::new(),
            kind,
            class_ref: None,
            concept: ConceptAttributes::default(),
            attributes: Vec::new(),
            internal_elements: Vec::new(),
            external_interfaces: Vec::new(),
        }
    }

    /// Interfaces first, then internal elements, as in the XML.
    pub fn children(&self) -> impl Iterator<Item = &CaexElement> {
        self.external_interfaces
            .iter()
            .chain(self.internal_elements.iter())
    }

    pub fn children_mut(&mut self) -> impl Iterator<Item = &mut CaexElement> {
        self.external_interfaces
            .iter_mut()
            .chain(self.internal_elements.iter_mut())
    }

    pub fn element_count(&self) -> usize {
        1 + self.children().map(Self::element_count).sum::<usize>()
    }

    /// Number of primary elements and attributes in this subtree.
    pub fn primary_count(&self) -> usize {
        usize::from(self.concept.primary)
            + self.attributes.iter().filter(|a| a.concept.primary).count()
            + self.children().map(Self::primary_count).sum::<usize>()
    }

    /// Paths of the primary elements, e.g. `InternalElement[0]/ExternalInterface[1]`.
    pub fn primary_paths(&self) -> Vec<String> {
        let mut out = Vec::new();
        collect_primaries(self, self.kind.tag().to_string(), &mut out);
        out
    }
}

fn collect_primaries(e: &CaexElement, path: String, out: &mut Vec<String>) {
    if e.concept.primary {
        out.push(path.clone());
    }
    for (i, a) in e.attributes.iter().enumerate() {
        if a.concept.primary {
            out.push(format!("{path}/Attribute[{i}]"));
        }
    }
    for (i, c) in e.external_interfaces.iter().enumerate() {
        collect_primaries(c, format!("{path}/ExternalInterface[{i}]"), out);
    }
    for (i, c) in e.internal_elements.iter().enumerate() {
        collect_primaries(c, format!("{path}/InternalElement[{i}]"), out);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConceptModelDocument {
    pub models: Vec<CaexElement>,
    pub source_class_name: Option<String>,
}

impl ConceptModelDocument {
    pub fn new(models: Vec<CaexElement>) -> Self {
        ConceptModelDocument {
            models,
            source_class_name: None,
        }
    }

    /// True iff every model has exactly one primary element.
    pub fn is_proper(&self) -> bool {
        !self.models.is_empty() && self.models.iter().all(|m| m.primary_count() == 1)
    }

    /// Checks the structural invariants; properness is not required.
    pub fn validate(&self) -> Result<(), CaexError> {
        if self.models.is_empty() {
            return Err(CaexError::InvalidModel {
                path: "InstanceHierarchy".into(),
                message: "a document needs at least one model".into(),
            });
        }
        // Models are alternatives, so one individual may appear in several.
        for (i, m) in self.models.iter().enumerate() {
            let mut ids = std::collections::HashSet::new();
            validate_element(m, &format!("{}[{i}]", m.kind.tag()), &mut ids)?;
        }
        Ok(())
    }
}

fn invalid(path: &str, message: impl Into<String>) -> CaexError {
    CaexError::InvalidModel {
        path: path.to_string(),
        message: message.into(),
    }
}

fn validate_window(c: &ConceptAttributes, path: &str) -> Result<(), CaexError> {
    match c.max_cardinality {
        Some(max) if max < c.min_cardinality => Err(invalid(
            path,
            format!(
                "maxCardinality {max} below minCardinality {}",
                c.min_cardinality
            ),
        )),
        _ => Ok(()),
    }
}

fn validate_element<'a>(
    e: &'a CaexElement,
    path: &str,
    ids: &mut std::collections::HashSet<&'a str>,
) -> Result<(), CaexError> {
    if e.id.is_empty() {
        return Err(invalid(path, "missing ID"));
    }
    if !ids.insert(&e.id) {
        return Err(invalid(path, format!("duplicate ID {}", e.id)));
    }
    validate_window(&e.concept, path)?;
    if let Some(r) = &e.class_ref {
        let ok = match e.kind {
            ElementKind::ExternalInterface => r.kind == CaexKind::InterfaceClass,
            ElementKind::InternalElement => r.kind != CaexKind::InterfaceClass,
        };
        if !ok {
            return Err(invalid(
                path,
                format!("{:?} reference on an {}", r.kind, e.kind.tag()),
            ));
        }
    }
    if e.kind == ElementKind::ExternalInterface
        && (!e.internal_elements.is_empty() || !e.external_interfaces.is_empty())
    {
        return Err(invalid(path, "external interfaces have no children"));
    }
    if e.internal_elements
        .iter()
        .any(|c| c.kind != ElementKind::InternalElement)
        || e.external_interfaces
            .iter()
            .any(|c| c.kind != ElementKind::ExternalInterface)
    {
        return Err(invalid(path, "child stored in the wrong list"));
    }
    for (i, a) in e.attributes.iter().enumerate() {
        let apath = format!("{path}/Attribute[{i}]");
        if is_reserved(&a.name) {
            return Err(invalid(
                &apath,
                format!("{} is a reserved concept attribute name", a.name),
            ));
        }
        if a.concept.identified_by_id {
            return Err(invalid(
                &apath,
                "identifiedByID is not allowed on attributes",
            ));
        }
        if let Some(v) = &a.required_value {
            if !crate::owl_expr::lexical_conforms(v, &a.datatype) {
                return Err(invalid(
                    &apath,
                    format!("value {v:?} is not a valid {}", a.datatype),
                ));
            }
        }
        validate_window(&a.concept, &apath)?;
    }
    for (i, c) in e.external_interfaces.iter().enumerate() {
        validate_element(c, &format!("{path}/ExternalInterface[{i}]"), ids)?;
    }
    for (i, c) in e.internal_elements.iter().enumerate() {
        validate_element(c, &format!("{path}/InternalElement[{i}]"), ids)?;
    }
    Ok(())
}

impl fmt::Display for ConceptModelDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_models(self, false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn element(id: &str, kind: ElementKind) -> CaexElement {
        let mut e = CaexElement::new(kind);
        e.id = id.into();
        e.name = id.into();
        e
    }

    #[test]
    fn defaults_follow_the_attribute_table() {
        let c = ConceptAttributes::default();
        assert!(!c.negated && !c.identified_by_id && !c.primary);
        assert_eq!((c.min_cardinality, c.max_cardinality), (1, None));
        assert_eq!(c.window_text(), "[1,-1]");
    }

    #[test]
    fn interfaces_cannot_have_children() {
        let mut ei = element("a", ElementKind::ExternalInterface);
        ei.internal_elements
            .push(element("b", ElementKind::InternalElement));
        let doc = ConceptModelDocument::new(vec![ei]);
        assert!(matches!(
            doc.validate(),
            Err(CaexError::InvalidModel { .. })
        ));
    }

    #[test]
    fn duplicate_ids_are_invalid() {
        let mut ie = element("a", ElementKind::InternalElement);
        ie.internal_elements
            .push(element("a", ElementKind::InternalElement));
        assert!(ConceptModelDocument::new(vec![ie]).validate().is_err());
    }

    #[test]
    fn primary_paths_locate_elements() {
        let mut ie = element("a", ElementKind::InternalElement);
        let mut ei = element("b", ElementKind::ExternalInterface);
        ei.concept.primary = true;
        ie.external_interfaces.push(ei);
        assert_eq!(ie.primary_paths(), ["InternalElement/ExternalInterface[0]"]);
        assert_eq!(ie.primary_count(), 1);
    }
}
