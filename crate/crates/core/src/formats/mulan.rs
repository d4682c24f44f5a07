//! MULAN label designation: an XML document listing label attribute names.

use std::collections::HashSet;

use crate::error::{Error, Result};

pub const NAMESPACE: &str = "http://mulan.sourceforge.net/labels";

/// Label names in document order. Nested (hierarchical) `label` elements are
/// flattened depth-first.
pub fn parse_mulan_xml(text: &str) -> Result<Vec<String>> {
    let doc = roxmltree::Document::parse(text).map_err(|e| Error::Xml(e.to_string()))?;
    let root = doc.root_element();
    if root.tag_name().name() != "labels" {
        return Err(Error::Xml(format!(
            "root element is <{}>, expected <labels>",
            root.tag_name().name()
        )));
    }
    let mut names = Vec::new();
    let mut seen = HashSet::new();
    for node in root.descendants().filter(|n| n.is_element()) {
        if node.tag_name().name() != "label" {
            continue;
        }
        let name = node.attribute("name").ok_or_else(|| {
            let pos = doc.text_pos_at(node.range().start);
            Error::Xml(format!("<label> without name at {pos}"))
        })?;
        if !seen.insert(name.to_string()) {
            return Err(Error::Xml(format!("duplicate label name '{name}'")));
        }
        names.push(name.to_string());
    }
    if names.is_empty() {
        return Err(Error::Xml("document declares no labels".into()));
    }
    Ok(names)
}

fn escape_attr(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            '\n' => out.push_str("&#10;"),
            '\r' => out.push_str("&#13;"),
            '\t' => out.push_str("&#9;"),
            c => out.push(c),
        }
    }
    out
}

pub fn mulan_xml_string<S: AsRef<str>>(labels: &[S]) -> String {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"utf-8\"?>\n");
    out.push_str(&format!("<labels xmlns=\"{NAMESPACE}\">\n"));
    for l in labels {
        out.push_str(&format!("  <label name=\"{}\"></label>\n", escape_attr(l.as_ref())));
    }
    out.push_str("</labels>\n");
    out
}
