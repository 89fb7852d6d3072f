use super::term::Iri;
use crate::error::RdfError;

/// Namespaces bound by default, in declaration order.
pub const DEFAULT_PREFIXES: &[(&str, &str)] = &[
    ("crm", "http://www.cidoc-crm.org/cidoc-crm/"),
    ("fentry", "http://www.essepuntato.it/2014/03/fentry/"),
    ("oaentry", "http://purl.org/emmedi/oaentry/"),
    ("fabio", "http://purl.org/spar/fabio/"),
    ("frbr", "http://purl.org/spar/frbr/"),
    ("pro", "http://purl.org/spar/pro/"),
    ("scor", "http://purl.org/spar/scoro/"),
    ("hico", "http://purl.org/emmedi/hico/"),
    ("cito", "http://purl.org/spar/cito/"),
    ("prov", "http://www.w3.org/ns/prov#"),
    ("tv", "http://www.essepuntato.it/2012/04/tvc/"),
    ("foaf", "http://xmlns.com/foaf/0.1/"),
    ("rdfs", "http://www.w3.org/2000/01/rdf-schema#"),
    ("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"),
    ("owl", "http://www.w3.org/2002/07/owl#"),
];

/// Ordered prefix → namespace bindings.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PrefixMap {
    entries: Vec<(String, Iri)>,
}

impl PrefixMap {
    pub fn empty() -> Self {
        PrefixMap { entries: Vec::new() }
    }

    /// The standard bundle used by the mapper.
    pub fn standard() -> Self {
        let mut map = PrefixMap::empty();
        for (prefix, ns) in DEFAULT_PREFIXES {
            map.bind(prefix, Iri::new(ns).expect("static namespace"));
        }
        map
    }

    /// Binds `prefix`, replacing any earlier binding of the same prefix.
    pub fn bind(&mut self, prefix: &str, namespace: Iri) {
        if let Some(entry) = self.entries.iter_mut().find(|(p, _)| p == prefix) {
            entry.1 = namespace;
        } else {
            self.entries.push((prefix.to_string(), namespace));
        }
    }

    pub fn get(&self, prefix: &str) -> Option<&Iri> {
        self.entries.iter().find(|(p, _)| p == prefix).map(|(_, ns)| ns)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Iri)> {
        self.entries.iter().map(|(p, ns)| (p.as_str(), ns))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Expands `prefix:local` into a full IRI.
    pub fn expand(&self, curie: &str) -> Result<Iri, RdfError> {
        let (prefix, local) = curie
            .split_once(':')
            .ok_or_else(|| RdfError::MalformedIri(curie.to_string()))?;
        let ns = self
            .get(prefix)
            .ok_or_else(|| RdfError::MalformedIri(curie.to_string()))?;
        Iri::new(format!("{}{}", ns.as_str(), local))
    }

    /// Longest-namespace match, returning `(prefix, local)` when the local
    /// part can be written as a Turtle prefixed name.
    pub fn shorten<'a>(&'a self, iri: &'a Iri) -> Option<(&'a str, &'a str)> {
        let s = iri.as_str();
        self.entries
            .iter()
            .filter(|(_, ns)| s.starts_with(ns.as_str()))
            .max_by_key(|(_, ns)| ns.as_str().len())
            .map(|(p, ns)| (p.as_str(), &s[ns.as_str().len()..]))
            .filter(|(_, local)| is_simple_local_name(local))
    }
}

/// A conservative subset of Turtle's PN_LOCAL: no escapes, no colons,
/// no trailing dot.
fn is_simple_local_name(local: &str) -> bool {
    let bytes = local.as_bytes();
    match (bytes.first(), bytes.last()) {
        (Some(first), Some(last)) => {
            (first.is_ascii_alphanumeric() || *first == b'_')
                && *last != b'.'
                && bytes
                    .iter()
                    .all(|b| b.is_ascii_alphanumeric() || matches!(b, b'_' | b'-' | b'.'))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_bundle_has_the_fifteen_prefixes() {
        let map = PrefixMap::standard();
        let names: Vec<&str> = map.iter().map(|(p, _)| p).collect();
        assert_eq!(
            names,
            [
                "crm", "fentry", "oaentry", "fabio", "frbr", "pro", "scor", "hico", "cito", "prov",
                "tv", "foaf", "rdfs", "rdf", "owl"
            ]
        );
    }

    #[test]
    fn expand_and_shorten() {
        let map = PrefixMap::standard();
        let iri = map.expand("crm:E22_Man-Made_Object").unwrap();
        assert_eq!(iri.as_str(), "http://www.cidoc-crm.org/cidoc-crm/E22_Man-Made_Object");
        assert_eq!(map.shorten(&iri), Some(("crm", "E22_Man-Made_Object")));
        let prov = map.expand("prov:wasGeneratedBy").unwrap();
        assert_eq!(map.shorten(&prov), Some(("prov", "wasGeneratedBy")));
        assert!(map.expand("nope:x").is_err());
    }

    #[test]
    fn slashes_are_not_shortened() {
        let mut map = PrefixMap::empty();
        map.bind("z", Iri::new("https://w3id.org/zericatalog/").unwrap());
        let iri = Iri::new("https://w3id.org/zericatalog/photo/1").unwrap();
        assert_eq!(map.shorten(&iri), None);
    }
}
