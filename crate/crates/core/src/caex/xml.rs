//! CAEX-flavoured XML encoding of concept-model documents.

use quick_xml::events::{BytesDecl, BytesEnd, BytesStart, BytesText, Event};
use quick_xml::{Reader, Writer};

use super::{
    is_reserved, CaexAttribute, CaexElement, CaexError, ClassRef, ConceptAttributes,
    ConceptModelDocument, ElementKind,
};
use crate::owl_expr::{bare_datatype, CaexKind};

const HIERARCHY: &str = "ConceptModels";

/// Serializes a document. Concept attributes appear only where they differ
/// from their defaults.
pub fn write_xml(doc: &ConceptModelDocument) -> Result<Vec<u8>, CaexError> {
    doc.validate()?;
    let mut w = Writer::new_with_indent(Vec::new(), b' ', 2);
    let io = |e: std::io::Error| CaexError::XmlSyntax(e.to_string());
    w.write_event(Event::Decl(BytesDecl::new("1.0", Some("UTF-8"), None)))
        .map_err(io)?;
    let mut root = BytesStart::new("CAEXFile");
    root.push_attribute(("SchemaVersion", "3.0"));
    w.write_event(Event::Start(root)).map_err(io)?;
    if let Some(source) = &doc.source_class_name {
        let mut info = BytesStart::new("AdditionalInformation");
        info.push_attribute(("SourceClass", source.as_str()));
        w.write_event(Event::Empty(info)).map_err(io)?;
    }
    let mut ih = BytesStart::new("InstanceHierarchy");
    ih.push_attribute(("Name", HIERARCHY));
    w.write_event(Event::Start(ih)).map_err(io)?;
    for m in &doc.models {
        write_element(&mut w, m).map_err(io)?;
    }
    w.write_event(Event::End(BytesEnd::new("InstanceHierarchy")))
        .map_err(io)?;
    w.write_event(Event::End(BytesEnd::new("CAEXFile")))
        .map_err(io)?;
    let mut bytes = w.into_inner();
    bytes.push(b'\n');
    Ok(bytes)
}

type W = Writer<Vec<u8>>;

fn concept_entries(c: &ConceptAttributes) -> Vec<(&'static str, &'static str, String)> {
    let d = ConceptAttributes::default();
    let mut out = Vec::new();
    if c.negated != d.negated {
        out.push(("negated", "xs:boolean", c.negated.to_string()));
    }
    if c.min_cardinality != d.min_cardinality {
        out.push((
            "minCardinality",
            "xs:integer",
            c.min_cardinality.to_string(),
        ));
    }
    if c.max_cardinality != d.max_cardinality {
        let v = c
            .max_cardinality
            .map_or("-1".to_string(), |m| m.to_string());
        out.push(("maxCardinality", "xs:integer", v));
    }
    if c.identified_by_id != d.identified_by_id {
        out.push((
            "identifiedByID",
            "xs:boolean",
            c.identified_by_id.to_string(),
        ));
    }
    if c.primary != d.primary {
        out.push(("primary", "xs:boolean", c.primary.to_string()));
    }
    out
}

fn write_value_attribute(
    w: &mut W,
    name: &str,
    datatype: &str,
    value: Option<&str>,
    nested: &ConceptAttributes,
) -> std::io::Result<()> {
    let mut start = BytesStart::new("Attribute");
    start.push_attribute(("Name", name));
    start.push_attribute(("AttributeDataType", datatype));
    let nested = concept_entries(nested);
    if value.is_none() && nested.is_empty() {
        return w.write_event(Event::Empty(start));
    }
    w.write_event(Event::Start(start))?;
    if let Some(v) = value {
        w.write_event(Event::Start(BytesStart::new("Value")))?;
        w.write_event(Event::Text(BytesText::new(v)))?;
        w.write_event(Event::End(BytesEnd::new("Value")))?;
    }
    for (n, dt, v) in nested {
        write_value_attribute(w, n, dt, Some(&v), &ConceptAttributes::default())?;
    }
    w.write_event(Event::End(BytesEnd::new("Attribute")))
}

fn write_element(w: &mut W, e: &CaexElement) -> std::io::Result<()> {
    let mut start = BytesStart::new(e.kind.tag());
    start.push_attribute(("ID", e.id.as_str()));
    start.push_attribute(("Name", e.name.as_str()));
    let mut role = None;
    if let Some(r) = &e.class_ref {
        match r.kind {
            CaexKind::InterfaceClass => start.push_attribute(("RefBaseClassPath", r.path.as_str())),
            CaexKind::SystemUnitClass => {
                start.push_attribute(("RefBaseSystemUnitPath", r.path.as_str()))
            }
            CaexKind::RoleClass => role = Some(r.path.as_str()),
        }
    }
    let concept = concept_entries(&e.concept);
    let empty = concept.is_empty()
        && e.attributes.is_empty()
        && e.external_interfaces.is_empty()
        && e.internal_elements.is_empty()
        && role.is_none();
    if empty {
        return w.write_event(Event::Empty(start));
    }
    w.write_event(Event::Start(start))?;
    for (n, dt, v) in concept {
        write_value_attribute(w, n, dt, Some(&v), &ConceptAttributes::default())?;
    }
    for a in &e.attributes {
        let dt = format!("xs:{}", a.datatype);
        write_value_attribute(w, &a.name, &dt, a.required_value.as_deref(), &a.concept)?;
    }
    for c in &e.external_interfaces {
        write_element(w, c)?;
    }
    for c in &e.internal_elements {
        write_element(w, c)?;
    }
    if let Some(path) = role {
        let mut rr = BytesStart::new("RoleRequirements");
        rr.push_attribute(("RefBaseRoleClassPath", path));
        w.write_event(Event::Empty(rr))?;
    }
    w.write_event(Event::End(BytesEnd::new(e.kind.tag())))
}

/// Light DOM node.
#[derive(Debug, Default)]
struct XNode {
    name: String,
    attrs: Vec<(String, String)>,
    children: Vec<XNode>,
    text: String,
}

impl XNode {
    fn attr(&self, key: &str) -> Option<&str> {
        self.attrs
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

fn parse_dom(bytes: &[u8]) -> Result<XNode, CaexError> {
    let mut reader = Reader::from_reader(bytes);
    reader.config_mut().check_end_names = true;
    let syntax = |reader: &Reader<&[u8]>, e: &dyn std::fmt::Display| {
        CaexError::XmlSyntax(format!("at byte {}: {e}", reader.buffer_position()))
    };
    let mut stack: Vec<XNode> = vec![XNode::default()];
    let mut buf = Vec::new();
    loop {
        let event = reader
            .read_event_into(&mut buf)
            .map_err(|e| syntax(&reader, &e))?;
        let empty = matches!(event, Event::Empty(_));
        match event {
            Event::Start(s) | Event::Empty(s) => {
                let mut node = XNode {
                    name: String::from_utf8_lossy(s.name().as_ref()).into_owned(),
                    ..Default::default()
                };
                for a in s.attributes() {
                    let a = a.map_err(|e| syntax(&reader, &e))?;
                    let key = String::from_utf8_lossy(a.key.as_ref()).into_owned();
                    let value = a
                        .unescape_value()
                        .map_err(|e| syntax(&reader, &e))?
                        .into_owned();
                    node.attrs.push((key, value));
                }
                if empty {
                    stack.last_mut().unwrap().children.push(node);
                } else {
                    stack.push(node);
                }
            }
            Event::End(_) => {
                let node = stack.pop().unwrap();
                stack.last_mut().unwrap().children.push(node);
            }
            Event::Text(t) => {
                let text = t.unescape().map_err(|e| syntax(&reader, &e))?;
                stack.last_mut().unwrap().text.push_str(&text);
            }
            Event::CData(t) => {
                stack
                    .last_mut()
                    .unwrap()
                    .text
                    .push_str(&String::from_utf8_lossy(&t));
            }
            Event::Eof => break,
            _ => {}
        }
        buf.clear();
    }
    if stack.len() != 1 {
        return Err(CaexError::XmlSyntax("unexpected end of input".into()));
    }
    let mut doc = stack.pop().unwrap();
    let root = doc
        .children
        .pop()
        .ok_or_else(|| CaexError::XmlSyntax("no root element".into()))?;
    Ok(root)
}

/// Reads a document, discarding warnings.
pub fn read_xml(bytes: &[u8]) -> Result<ConceptModelDocument, CaexError> {
    read_xml_with_warnings(bytes).map(|(doc, _)| doc)
}

/// Reads a document. Content outside the supported subset is skipped and
/// reported as a warning. Properness is not checked here.
pub fn read_xml_with_warnings(
    bytes: &[u8],
) -> Result<(ConceptModelDocument, Vec<String>), CaexError> {
    let root = parse_dom(bytes)?;
    let mut warnings = Vec::new();
    if root.name != "CAEXFile" {
        return Err(schema(&root.name, "root element must be CAEXFile"));
    }
    let mut source_class_name = None;
    let mut models = Vec::new();
    for child in &root.children {
        match child.name.as_str() {
            "AdditionalInformation" => {
                if let Some(s) = child.attr("SourceClass") {
                    source_class_name = Some(s.to_string());
                }
            }
            "InstanceHierarchy" => {
                for (i, m) in child.children.iter().enumerate() {
                    let path = format!("InstanceHierarchy/{}[{i}]", m.name);
                    match m.name.as_str() {
                        "InternalElement" | "ExternalInterface" => {
                            models.push(read_element(m, &path, &mut warnings)?)
                        }
                        other => warnings.push(format!("{path}: ignored <{other}>")),
                    }
                }
            }
            other => warnings.push(format!("CAEXFile: ignored <{other}>")),
        }
    }
    if models.is_empty() {
        return Err(schema("InstanceHierarchy", "no concept models found"));
    }
    Ok((
        ConceptModelDocument {
            models,
            source_class_name,
        },
        warnings,
    ))
}

fn schema(path: &str, message: impl Into<String>) -> CaexError {
    CaexError::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

fn parse_bool(v: &str, path: &str) -> Result<bool, CaexError> {
    match v.trim() {
        "true" | "1" => Ok(true),
        "false" | "0" => Ok(false),
        other => Err(schema(path, format!("{other:?} is not a boolean"))),
    }
}

fn set_concept(
    c: &mut ConceptAttributes,
    name: &str,
    value: &str,
    path: &str,
) -> Result<(), CaexError> {
    match name {
        "negated" => c.negated = parse_bool(value, path)?,
        "identifiedByID" | "isIdentifiedByID" => c.identified_by_id = parse_bool(value, path)?,
        "primary" => c.primary = parse_bool(value, path)?,
        "minCardinality" => {
            c.min_cardinality = value.trim().parse::<u32>().map_err(|_| {
                schema(
                    path,
                    format!("minCardinality must be a natural number, got {value:?}"),
                )
            })?
        }
        "maxCardinality" => {
            let v = value.trim();
            c.max_cardinality = if v == "-1" {
                None
            } else {
                Some(v.parse::<u32>().map_err(|_| {
                    schema(
                        path,
                        format!("maxCardinality must be a natural number or -1, got {value:?}"),
                    )
                })?)
            }
        }
        _ => unreachable!("reserved name"),
    }
    Ok(())
}

fn value_of(node: &XNode) -> Option<String> {
    node.children
        .iter()
        .find(|c| c.name == "Value")
        .map(|v| v.text.clone())
}

fn read_attribute(
    node: &XNode,
    path: &str,
    warnings: &mut Vec<String>,
) -> Result<CaexAttribute, CaexError> {
    let name = node
        .attr("Name")
        .ok_or_else(|| schema(path, "Attribute without Name"))?
        .to_string();
    let datatype = bare_datatype(node.attr("AttributeDataType").unwrap_or("xs:string")).to_string();
    let mut concept = ConceptAttributes::default();
    for (i, c) in node.children.iter().enumerate() {
        let cpath = format!("{path}/{}[{i}]", c.name);
        match c.name.as_str() {
            "Value" => {}
            "Attribute" => match c.attr("Name") {
                Some(n) if is_reserved(n) => {
                    let v = value_of(c)
                        .ok_or_else(|| schema(&cpath, "concept attribute without Value"))?;
                    set_concept(&mut concept, n, &v, &cpath)?;
                }
                _ => warnings.push(format!("{cpath}: ignored nested attribute")),
            },
            other => warnings.push(format!("{cpath}: ignored <{other}>")),
        }
    }
    Ok(CaexAttribute {
        name,
        datatype,
        required_value: value_of(node),
        concept,
    })
}

fn read_element(
    node: &XNode,
    path: &str,
    warnings: &mut Vec<String>,
) -> Result<CaexElement, CaexError> {
    let kind = match node.name.as_str() {
        "InternalElement" => ElementKind::InternalElement,
        _ => ElementKind::ExternalInterface,
    };
    let mut e = CaexElement::new(kind);
    for (k, v) in &node.attrs {
        match k.as_str() {
            "ID" => e.id = v.clone(),
            "Name" => e.name = v.clone(),
            "RefBaseClassPath" if kind == ElementKind::ExternalInterface => {
                e.class_ref = Some(ClassRef {
                    path: v.clone(),
                    kind: CaexKind::InterfaceClass,
                })
            }
            "RefBaseSystemUnitPath" if kind == ElementKind::InternalElement => {
                e.class_ref = Some(ClassRef {
                    path: v.clone(),
                    kind: CaexKind::SystemUnitClass,
                })
            }
            other => warnings.push(format!("{path}: ignored attribute {other}")),
        }
    }
    for (i, c) in node.children.iter().enumerate() {
        let cpath = format!("{path}/{}[{i}]", c.name);
        match c.name.as_str() {
            "Attribute" => match c.attr("Name") {
                Some(n) if is_reserved(n) => {
                    let v = value_of(c)
                        .ok_or_else(|| schema(&cpath, "concept attribute without Value"))?;
                    set_concept(&mut e.concept, n, &v, &cpath)?;
                }
                _ => e.attributes.push(read_attribute(c, &cpath, warnings)?),
            },
            "InternalElement" | "ExternalInterface" => {
                if kind == ElementKind::ExternalInterface {
                    return Err(schema(&cpath, "external interfaces have no children"));
                }
                let child = read_element(c, &cpath, warnings)?;
                match child.kind {
                    ElementKind::InternalElement => e.internal_elements.push(child),
                    ElementKind::ExternalInterface => e.external_interfaces.push(child),
                }
            }
            "RoleRequirements" => {
                if kind == ElementKind::ExternalInterface {
                    return Err(schema(&cpath, "role requirements on an external interface"));
                }
                match c.attr("RefBaseRoleClassPath") {
                    Some(p) => {
                        e.class_ref = Some(ClassRef {
                            path: p.to_string(),
                            kind: CaexKind::RoleClass,
                        })
                    }
                    None => warnings.push(format!("{cpath}: no RefBaseRoleClassPath")),
                }
            }
            other => warnings.push(format!("{cpath}: ignored <{other}>")),
        }
    }
    if let Some(max) = e.concept.max_cardinality {
        if max < e.concept.min_cardinality {
            warnings.push(format!(
                "{path}: maxCardinality {max} below minCardinality {}",
                e.concept.min_cardinality
            ));
        }
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ie(id: &str, class: Option<&str>) -> CaexElement {
        let mut e = CaexElement::new(ElementKind::InternalElement);
        e.id = id.into();
        e.name = class.unwrap_or("Thing").into();
        e.class_ref = class.map(|c| ClassRef {
            path: c.into(),
            kind: CaexKind::RoleClass,
        });
        e
    }

    fn text(doc: &ConceptModelDocument) -> String {
        String::from_utf8(write_xml(doc).unwrap()).unwrap()
    }

    #[test]
    fn defaults_produce_no_concept_attributes() {
        let doc = ConceptModelDocument::new(vec![ie("x1", None)]);
        let xml = text(&doc);
        assert!(!xml.contains("<Attribute"));
        assert!(
            xml.contains(r#"<InternalElement ID="x1" Name="Thing"/>"#),
            "{xml}"
        );
    }

    #[test]
    fn class_a_layout() {
        let mut root = ie("r", Some("Robot"));
        root.concept.primary = true;
        let mut child = ie("c", Some("IOController"));
        child.concept = ConceptAttributes {
            negated: true,
            ..ConceptAttributes::window(0, Some(0))
        };
        root.internal_elements.push(child);
        let xml = text(&ConceptModelDocument::new(vec![root]));
        let expected = r#"<?xml version="1.0" encoding="UTF-8"?>
<CAEXFile SchemaVersion="3.0">
  <InstanceHierarchy Name="ConceptModels">
    <InternalElement ID="r" Name="Robot">
      <Attribute Name="primary" AttributeDataType="xs:boolean">
        <Value>true</Value>
      </Attribute>
      <InternalElement ID="c" Name="IOController">
        <Attribute Name="negated" AttributeDataType="xs:boolean">
          <Value>true</Value>
        </Attribute>
        <Attribute Name="minCardinality" AttributeDataType="xs:integer">
          <Value>0</Value>
        </Attribute>
        <Attribute Name="maxCardinality" AttributeDataType="xs:integer">
          <Value>0</Value>
        </Attribute>
        <RoleRequirements RefBaseRoleClassPath="IOController"/>
      </InternalElement>
      <RoleRequirements RefBaseRoleClassPath="Robot"/>
    </InternalElement>
  </InstanceHierarchy>
</CAEXFile>
"#;
        assert_eq!(xml, expected);
    }

    #[test]
    fn round_trip_with_attributes_and_interfaces() {
        let mut root = ie("r", Some("Robot"));
        root.attributes.push(CaexAttribute {
            name: "hasManufacturer".into(),
            datatype: "string".into(),
            required_value: Some(" K & <U> ".into()),
            concept: ConceptAttributes {
                negated: true,
                ..Default::default()
            },
        });
        let mut ei = CaexElement::new(ElementKind::ExternalInterface);
        ei.id = "e".into();
        ei.name = "IOInterface".into();
        ei.class_ref = Some(ClassRef {
            path: "IOInterface".into(),
            kind: CaexKind::InterfaceClass,
        });
        ei.concept = ConceptAttributes::window(3, None);
        root.external_interfaces.push(ei);
        let mut suc = ie("s", None);
        suc.class_ref = Some(ClassRef {
            path: "Cell".into(),
            kind: CaexKind::SystemUnitClass,
        });
        suc.concept.identified_by_id = true;
        root.internal_elements.push(suc);
        let mut doc = ConceptModelDocument::new(vec![root]);
        doc.source_class_name = Some("C".into());
        let bytes = write_xml(&doc).unwrap();
        let (back, warnings) = read_xml_with_warnings(&bytes).unwrap();
        assert!(warnings.is_empty(), "{warnings:?}");
        assert_eq!(back, doc);
        assert_eq!(write_xml(&back).unwrap(), bytes);
    }

    #[test]
    fn empty_element_reads_with_defaults() {
        let xml = r#"<CAEXFile><InstanceHierarchy Name="ConceptModels">
            <InternalElement ID="a" Name="x"/></InstanceHierarchy></CAEXFile>"#;
        let doc = read_xml(xml.as_bytes()).unwrap();
        assert_eq!(doc.models[0].concept, ConceptAttributes::default());
    }

    #[test]
    fn negative_min_cardinality_is_an_error() {
        let xml = r#"<CAEXFile><InstanceHierarchy><InternalElement ID="a" Name="x">
            <Attribute Name="minCardinality" AttributeDataType="xs:integer"><Value>-1</Value></Attribute>
            </InternalElement></InstanceHierarchy></CAEXFile>"#;
        assert!(matches!(
            read_xml(xml.as_bytes()),
            Err(CaexError::Schema { .. })
        ));
    }

    #[test]
    fn interface_with_children_is_a_schema_error() {
        let xml = r#"<CAEXFile><InstanceHierarchy><ExternalInterface ID="a" Name="x">
            <InternalElement ID="b" Name="y"/></ExternalInterface></InstanceHierarchy></CAEXFile>"#;
        assert!(matches!(
            read_xml(xml.as_bytes()),
            Err(CaexError::Schema { .. })
        ));
    }

    #[test]
    fn legacy_identifier_name_and_unknown_content() {
        let xml = r#"<CAEXFile><Foo/><InstanceHierarchy><InternalElement ID="a" Name="x" Extra="1">
            <Attribute Name="isIdentifiedByID" AttributeDataType="xs:boolean"><Value>true</Value></Attribute>
            <Bar/></InternalElement></InstanceHierarchy></CAEXFile>"#;
        let (doc, warnings) = read_xml_with_warnings(xml.as_bytes()).unwrap();
        assert!(doc.models[0].concept.identified_by_id);
        assert_eq!(warnings.len(), 3, "{warnings:?}");
    }

    #[test]
    fn malformed_xml_is_a_syntax_error() {
        assert!(matches!(
            read_xml(b"<CAEXFile><InstanceHierarchy></CAEXFile>"),
            Err(CaexError::XmlSyntax(_))
        ));
    }

    #[test]
    fn reserved_names_cannot_be_data_attributes() {
        let mut root = ie("r", None);
        root.attributes.push(CaexAttribute {
            name: "primary".into(),
            datatype: "string".into(),
            required_value: None,
            concept: Default::default(),
        });
        assert!(write_xml(&ConceptModelDocument::new(vec![root])).is_err());
    }
}
