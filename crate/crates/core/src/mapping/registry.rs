//! The closed set of ontology terms the mapper may emit.

use std::collections::BTreeMap;

use once_cell::sync::Lazy;

use crate::rdf::{Iri, PrefixMap};

const TERMS: &[&str] = &[
    // F Entry Ontology
    "fentry:FEntry",
    "fentry:Photograph",
    "fentry:Shot",
    "fentry:describes",
    // OA Entry Ontology
    "oaentry:OAEntry",
    "oaentry:describes",
    "oaentry:hasFormerWork",
    "oaentry:hasConceived",
    "oaentry:isConveivedByMeansOf",
    "oaentry:ArtisticRole",
    "oaentry:CataloguingRole",
    "oaentry:influence-between-works-attribution",
    "oaentry:Cartoon",
    "oaentry:Copy",
    "oaentry:Derivation",
    "oaentry:Drawing",
    "oaentry:cataloguer",
    "oaentry:cataloguing-institution",
    "oaentry:cataloguing-supervisor",
    "oaentry:competent-institution",
    "oaentry:antiquarian",
    "oaentry:architect",
    "oaentry:art-dealer",
    // FaBiO
    "fabio:EntityMetadata",
    "fabio:ArtisticWork",
    "fabio:StillImage",
    "fabio:AnalogManifestation",
    "fabio:DigitalManifestation",
    "fabio:AnalogItem",
    "fabio:DigitalItem",
    "fabio:MetadataDocument",
    "fabio:Expression",
    "fabio:Work",
    "fabio:WorkCollection",
    "fabio:hasPortrayal",
    // FRBR
    "frbr:realization",
    "frbr:realizationOf",
    "frbr:embodiment",
    "frbr:exemplar",
    "frbr:subject",
    // PRO, SCoRO, time-indexed value in context
    "pro:RoleInTime",
    "pro:holdsRoleInTime",
    "pro:withRole",
    "pro:relatesTo",
    "pro:isHeldBy",
    "pro:Role",
    "pro:publisher",
    "pro:author",
    "scor:photographer",
    "tv:atTime",
    // HiCO, CiTO, PROV-O
    "hico:InterpretationAct",
    "hico:InterpretationType",
    "hico:InterpretationCriterion",
    "hico:hasInterpretationType",
    "hico:hasInterpretationCriterion",
    "hico:isExtractedFrom",
    "cito:citesAsEvidence",
    "prov:Influence",
    "prov:wasGeneratedBy",
    "prov:wasAssociatedWith",
    "prov:entity",
    "foaf:Agent",
    "rdf:type",
    "rdfs:label",
    "rdfs:seeAlso",
    // CIDOC-CRM classes
    "crm:E3_Condition_State",
    "crm:E4_Period",
    "crm:E5_Event",
    "crm:E8_Acquisition",
    "crm:E9_Move",
    "crm:E10_Transfer_of_Custody",
    "crm:E14_Condition_Assessment",
    "crm:E16_Measurement",
    "crm:E21_Person",
    "crm:E22_Man-Made_Object",
    "crm:E28_Conceptual_Object",
    "crm:E31_Document",
    "crm:E35_Title",
    "crm:E39_Actor",
    "crm:E41_Appellation",
    "crm:E42_Identifier",
    "crm:E51_Contact_Point",
    "crm:E52_Time-Span",
    "crm:E53_Place",
    "crm:E54_Dimension",
    "crm:E55_Type",
    "crm:E57_Material",
    "crm:E58_Measurement_Unit",
    "crm:E65_Creation",
    "crm:E74_Group",
    "crm:E90_Symbolic_Object",
    // CIDOC-CRM properties
    "crm:P1_is_identified_by",
    "crm:P2_has_type",
    "crm:P3_has_note",
    "crm:P4_has_time_span",
    "crm:P7_took_place_at",
    "crm:P10_falls_within",
    "crm:P12_occurred_in_the_presence_of",
    "crm:P12i_was_present_at",
    "crm:P14_carried_out_by",
    "crm:P22_transferred_title_to",
    "crm:P22i_acquired_title_through",
    "crm:P24_transferred_title_of",
    "crm:P25_moved",
    "crm:P26_moved_to",
    "crm:P27_moved_from",
    "crm:P28_custody_surrendered_by",
    "crm:P29_custody_received_by",
    "crm:P30_transferred_custody_of",
    "crm:P30i_custody_transferred_through",
    "crm:P34_concerned",
    "crm:P34i_was_assessed_by",
    "crm:P35_has_identified",
    "crm:P39i_was_measured_by",
    "crm:P40_observed_dimension",
    "crm:P45_consists_of",
    "crm:P50_has_current_keeper",
    "crm:P52_has_current_owner",
    "crm:P55_has_current_location",
    "crm:P56_bears_feature",
    "crm:P57_has_number_of_parts",
    "crm:P62_depicts",
    "crm:P67_refers_to",
    "crm:P70_documents",
    "crm:P70i_is_documented_in",
    "crm:P74_has_current_or_former_residence",
    "crm:P76_has_contact_point",
    "crm:P82a_begin_of_the_begin",
    "crm:P82b_end_of_the_end",
    "crm:P89_falls_within",
    "crm:P90_has_value",
    "crm:P91_has_unit",
    "crm:P94_has_created",
    "crm:P94i_was_created_by",
    "crm:P102_has_title",
    "crm:P106_is_composed_of",
    "crm:P106i_forms_part_of",
    "crm:P107i_is_current_or_former_member_of",
    "crm:P140i_was_attributed_by",
];

static STANDARD: Lazy<TermRegistry> = Lazy::new(|| {
    let prefixes = PrefixMap::standard();
    let terms = TERMS
        .iter()
        .map(|curie| {
            let iri = prefixes
                .expand(curie)
                .unwrap_or_else(|e| panic!("registry term {curie}: {e}"));
            (*curie, iri)
        })
        .collect();
    TermRegistry { terms }
});

#[derive(Debug, Clone)]
pub struct TermRegistry {
    terms: BTreeMap<&'static str, Iri>,
}

impl TermRegistry {
    pub fn standard() -> &'static TermRegistry {
        &STANDARD
    }

    pub fn get(&self, curie: &str) -> Option<&Iri> {
        self.terms.get(curie)
    }

    pub fn contains_iri(&self, iri: &Iri) -> bool {
        self.terms.values().any(|t| t == iri)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &Iri)> {
        self.terms.iter().map(|(c, i)| (*c, i))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Registered term by curie. Panics on an unregistered curie, which keeps
/// the emitted vocabulary closed.
pub fn term(curie: &str) -> Iri {
    match STANDARD.get(curie) {
        Some(iri) => iri.clone(),
        None => panic!("{curie} is not in the term registry"),
    }
}
