//! Controlled values: role individuals, influence kinds and the local terms
//! every run may mint.

use crate::iri::slugify;
use crate::rdf::Iri;

use super::registry::term;

/// A local term minted under `term/` with fixed labels.
#[derive(Clone, Copy, Debug)]
pub struct FixedTerm {
    pub key: &'static str,
    pub it: &'static str,
    pub en: &'static str,
    pub class: &'static str,
}

const fn fixed(key: &'static str, it: &'static str, en: &'static str, class: &'static str) -> FixedTerm {
    FixedTerm { key, it, en, class }
}

pub const ROLE_ATTRIBUTION: FixedTerm =
    fixed("role-attribution", "attribuzione di ruolo", "role attribution", "hico:InterpretationType");
pub const AUTHORSHIP_ATTRIBUTION: FixedTerm = fixed(
    "authorship-attribution",
    "attribuzione di autore",
    "authorship attribution",
    "hico:InterpretationType",
);
pub const PREFERRED_ATTRIBUTION: FixedTerm = fixed(
    "zeri-preferred-attribution",
    "attribuzione preferita dalla Fondazione Zeri",
    "attribution preferred by the Zeri Foundation",
    "hico:InterpretationType",
);
/// Local name of the preferred-attribution marker under `term/`.
pub const PREFERRED_MARKER: &str = PREFERRED_ATTRIBUTION.key;

pub const TRADITIONAL_TITLE: FixedTerm =
    fixed("traditional-title", "titolo tradizionale", "traditional title", "crm:E55_Type");
pub const ATTRIBUTED_TITLE: FixedTerm =
    fixed("attributed-title", "titolo attribuito", "attributed title", "crm:E55_Type");
pub const ALTERNATE_TITLE: FixedTerm =
    fixed("alternate-title", "titolo alternativo", "alternate title", "crm:E55_Type");
pub const CATALOG_LEVEL: FixedTerm =
    fixed("catalog-level", "livello di catalogazione", "cataloguing level", "crm:E55_Type");
pub const REGIONAL_CODE: FixedTerm = fixed("regional-code", "codice regione", "regional code", "crm:E55_Type");
pub const CATALOGUE_NUMBER: FixedTerm = fixed(
    "catalogue-number",
    "numero di catalogo generale",
    "general catalogue number",
    "crm:E55_Type",
);
pub const INSTITUTION_CODE: FixedTerm = fixed(
    "institution-code",
    "codice ente schedatore",
    "cataloguing institution code",
    "crm:E55_Type",
);
pub const INVENTORY_NUMBER: FixedTerm =
    fixed("inventory-number", "numero di inventario", "inventory number", "crm:E55_Type");
pub const HEIGHT: FixedTerm = fixed("height", "altezza", "height", "crm:E55_Type");
pub const WIDTH: FixedTerm = fixed("width", "larghezza", "width", "crm:E55_Type");

pub const FIXED_TERMS: &[FixedTerm] = &[
    ROLE_ATTRIBUTION,
    AUTHORSHIP_ATTRIBUTION,
    PREFERRED_ATTRIBUTION,
    TRADITIONAL_TITLE,
    ATTRIBUTED_TITLE,
    ALTERNATE_TITLE,
    CATALOG_LEVEL,
    REGIONAL_CODE,
    CATALOGUE_NUMBER,
    INSTITUTION_CODE,
    INVENTORY_NUMBER,
    HEIGHT,
    WIDTH,
];

/// Identifier field codes and the identifier kind each one records.
pub const IDENTIFIER_CODES: &[(&str, FixedTerm)] = &[
    ("LIR", CATALOG_LEVEL),
    ("NCTR", REGIONAL_CODE),
    ("NCTN", CATALOGUE_NUMBER),
    ("ESC", INSTITUTION_CODE),
];

pub const TITLE_CODES: &[(&str, FixedTerm)] = &[
    ("SGLT", TRADITIONAL_TITLE),
    ("SGLA", ATTRIBUTED_TITLE),
    ("SGLS", ALTERNATE_TITLE),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RoleFamily {
    Photographer,
    Publisher,
    Cataloguing,
    Other,
}

struct RoleEntry {
    curie: &'static str,
    it: &'static str,
    en: &'static str,
    aliases: &'static [&'static str],
    family: RoleFamily,
}

const ROLES: &[RoleEntry] = &[
    RoleEntry {
        curie: "scor:photographer",
        it: "fotografo",
        en: "photographer",
        aliases: &["fotografa"],
        family: RoleFamily::Photographer,
    },
    RoleEntry {
        curie: "pro:publisher",
        it: "editore",
        en: "publisher",
        aliases: &["editrice"],
        family: RoleFamily::Publisher,
    },
    RoleEntry {
        curie: "pro:author",
        it: "autore",
        en: "author",
        aliases: &["autrice"],
        family: RoleFamily::Other,
    },
    RoleEntry {
        curie: "oaentry:cataloguer",
        it: "catalogatore",
        en: "cataloguer",
        aliases: &["compilatore", "compilatrice", "catalogatrice", "cataloger"],
        family: RoleFamily::Cataloguing,
    },
    RoleEntry {
        curie: "oaentry:cataloguing-supervisor",
        it: "funzionario responsabile",
        en: "cataloguing supervisor",
        aliases: &[],
        family: RoleFamily::Cataloguing,
    },
    RoleEntry {
        curie: "oaentry:cataloguing-institution",
        it: "ente schedatore",
        en: "cataloguing institution",
        aliases: &[],
        family: RoleFamily::Cataloguing,
    },
    RoleEntry {
        curie: "oaentry:competent-institution",
        it: "ente competente",
        en: "competent institution",
        aliases: &[],
        family: RoleFamily::Cataloguing,
    },
    RoleEntry {
        curie: "oaentry:antiquarian",
        it: "antiquario",
        en: "antiquarian",
        aliases: &[],
        family: RoleFamily::Other,
    },
    RoleEntry {
        curie: "oaentry:architect",
        it: "architetto",
        en: "architect",
        aliases: &[],
        family: RoleFamily::Other,
    },
    RoleEntry {
        curie: "oaentry:art-dealer",
        it: "mercante d'arte",
        en: "art dealer",
        aliases: &["mercante"],
        family: RoleFamily::Other,
    },
];

/// A resolved role individual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoleRef {
    pub iri: Iri,
    pub label_it: String,
    pub family: RoleFamily,
}

/// Looks a role up by its Italian or English name, or its local name.
pub fn lookup_role(names: &[&str]) -> Option<RoleRef> {
    let slugs: Vec<String> = names.iter().filter_map(|n| slugify(n).ok()).collect();
    ROLES.iter().find_map(|entry| {
        let local = entry.curie.split_once(':').map_or(entry.curie, |(_, l)| l);
        let hit = [entry.it, entry.en, local]
            .into_iter()
            .chain(entry.aliases.iter().copied())
            .filter_map(|n| slugify(n).ok())
            .any(|k| slugs.contains(&k));
        hit.then(|| RoleRef {
            iri: term(entry.curie),
            label_it: entry.it.to_string(),
            family: entry.family,
        })
    })
}

pub fn cataloguer_role() -> RoleRef {
    lookup_role(&["cataloguer"]).expect("cataloguer is a known role")
}

/// The influence subclass named by a relation-to-former-work value.
pub fn influence_kind(names: &[&str]) -> Option<&'static str> {
    const KINDS: &[(&str, &[&str])] = &[
        ("oaentry:Cartoon", &["cartone", "cartoon"]),
        ("oaentry:Copy", &["copia", "copy"]),
        ("oaentry:Derivation", &["derivazione", "derivation"]),
        ("oaentry:Drawing", &["disegno", "drawing"]),
    ];
    let slugs: Vec<String> = names.iter().filter_map(|n| slugify(n).ok()).collect();
    KINDS
        .iter()
        .find(|(_, words)| words.iter().any(|w| slugs.iter().any(|s| s == w)))
        .map(|(curie, _)| *curie)
}
