//! Turtle output. Reading Turtle is not supported.

use std::collections::BTreeMap;

use super::graph::Graph;
use super::ntriples::{write_iri, write_string_literal};
use super::prefix::PrefixMap;
use super::term::{Iri, Term};

const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

fn write_name(out: &mut String, iri: &Iri, prefixes: &PrefixMap) {
    match prefixes.shorten(iri) {
        Some((prefix, local)) => {
            out.push_str(prefix);
            out.push(':');
            out.push_str(local);
        }
        None => write_iri(out, iri),
    }
}

fn render_object(term: &Term, prefixes: &PrefixMap) -> String {
    let mut out = String::new();
    match term {
        Term::Iri(i) => write_name(&mut out, i, prefixes),
        Term::Literal(l) => {
            write_string_literal(&mut out, l.lexical());
            if let Some(lang) = l.language() {
                out.push('@');
                out.push_str(lang);
            } else if let Some(dt) = l.datatype() {
                out.push_str("^^");
                write_name(&mut out, dt, prefixes);
            }
        }
    }
    out
}

/// Predicate to objects, each object with its N-Triples text.
type Predicates<'a> = BTreeMap<&'a str, Vec<(String, &'a Term)>>;

/// Prefix block, then one block per subject. Subjects, predicates and
/// objects are each ordered bytewise on their full (unabbreviated) form.
pub fn serialize_turtle(graph: &Graph, prefixes: &PrefixMap) -> Vec<u8> {
    let mut out = String::new();
    for (prefix, ns) in prefixes.iter() {
        out.push_str("@prefix ");
        out.push_str(prefix);
        out.push_str(": ");
        write_iri(&mut out, ns);
        out.push_str(" .\n");
    }

    let mut tree: BTreeMap<&str, Predicates> = BTreeMap::new();
    for t in graph.iter() {
        tree.entry(t.subject.as_str())
            .or_default()
            .entry(t.predicate.as_str())
            .or_default()
            .push((t.object.to_ntriples(), &t.object));
    }

    for (subject, predicates) in tree {
        out.push('\n');
        let subject = Iri::new(subject).expect("graph IRIs are valid");
        write_name(&mut out, &subject, prefixes);
        let count = predicates.len();
        for (i, (predicate, mut objects)) in predicates.into_iter().enumerate() {
            objects.sort_by(|a, b| a.0.cmp(&b.0));
            out.push_str(if i == 0 { " " } else { "    " });
            if predicate == RDF_TYPE {
                out.push('a');
            } else {
                let predicate = Iri::new(predicate).expect("graph IRIs are valid");
                write_name(&mut out, &predicate, prefixes);
            }
            out.push(' ');
            let rendered: Vec<String> = objects
                .iter()
                .map(|(_, term)| render_object(term, prefixes))
                .collect();
            out.push_str(&rendered.join(" , "));
            out.push_str(if i + 1 == count { " .\n" } else { " ;\n" });
        }
    }
    out.into_bytes()
}
