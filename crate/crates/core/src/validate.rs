//! Closed-world structural checks over converted graphs.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::iri::IriPolicy;
use crate::mapping::{term, PREFERRED_MARKER};
use crate::rdf::{Graph, Iri, Term, Triple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    V01,
    V02,
    V03,
    V04,
    V05,
    V06,
    V07,
    V08,
    V09,
    V10,
    V11,
    V12,
}

impl Rule {
    pub const ALL: [Rule; 12] = [
        Rule::V01,
        Rule::V02,
        Rule::V03,
        Rule::V04,
        Rule::V05,
        Rule::V06,
        Rule::V07,
        Rule::V08,
        Rule::V09,
        Rule::V10,
        Rule::V11,
        Rule::V12,
    ];

    pub fn summary(self) -> &'static str {
        match self {
            Rule::V01 => "F entry describes nothing",
            Rule::V02 => "shot is not the realization of exactly one photograph",
            Rule::V03 => "role in time lacks its role, context or holder",
            Rule::V04 => "interpretation act lacks type, criterion or source",
            Rule::V05 => "role attached at the wrong level",
            Rule::V06 => "interpretation source is not a metadata document",
            Rule::V07 => "more than one preferred attribution",
            Rule::V08 => "influence lacks its former or conceived work",
            Rule::V09 => "work influences itself",
            Rule::V10 => "place contains itself",
            Rule::V11 => "custody transfer lacks its parties or object",
            Rule::V12 => "resource has no Italian label",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub rule: Rule,
    pub node: Iri,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// Sorted by rule, then node.
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn counts(&self) -> BTreeMap<Rule, usize> {
        let mut counts = BTreeMap::new();
        for v in &self.violations {
            *counts.entry(v.rule).or_insert(0) += 1;
        }
        counts
    }

    pub fn rules(&self) -> BTreeSet<Rule> {
        self.violations.iter().map(|v| v.rule).collect()
    }

    /// `rule\tnode\tmessage` lines, no header.
    pub fn to_tsv(&self) -> String {
        self.violations
            .iter()
            .map(|v| format!("{}\t{}\t{}\n", v.rule, v.node.as_str(), v.message.replace(['\t', '\n'], " ")))
            .collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_clean() {
            return writeln!(f, "no violations");
        }
        for v in &self.violations {
            writeln!(f, "{} <{}> {}", v.rule, v.node.as_str(), v.message)?;
        }
        for (rule, n) in self.counts() {
            writeln!(f, "{rule}: {n} ({})", rule.summary())?;
        }
        Ok(())
    }
}

struct Ctx<'a> {
    graph: &'a Graph,
    policy: &'a IriPolicy,
    rdf_type: Iri,
    out: Vec<Violation>,
}

impl<'a> Ctx<'a> {
    fn objects(&self, s: &Iri, p: &str) -> Vec<Term> {
        let p = term(p);
        self.graph.objects(s, &p).cloned().collect()
    }

    fn iri_objects(&self, s: &Iri, p: &str) -> Vec<Iri> {
        self.objects(s, p).iter().filter_map(Term::as_iri).cloned().collect()
    }

    fn count(&self, s: &Iri, p: &str) -> usize {
        self.objects(s, p).len()
    }

    fn instances(&self, class: &str) -> BTreeSet<Iri> {
        let class = Term::Iri(term(class));
        self.graph
            .matching(None, Some(&self.rdf_type), Some(&class))
            .map(|t| t.subject.clone())
            .collect()
    }

    fn has_type(&self, s: &Iri, class: &str) -> bool {
        self.graph
            .contains(&Triple::new(s.clone(), self.rdf_type.clone(), term(class)))
    }

    fn subjects(&self, p: &str) -> BTreeSet<Iri> {
        let p = term(p);
        self.graph.matching(None, Some(&p), None).map(|t| t.subject.clone()).collect()
    }

    fn flag(&mut self, rule: Rule, node: &Iri, message: impl Into<String>) {
        self.out.push(Violation {
            rule,
            node: node.clone(),
            message: message.into(),
        });
    }
}

/// Validates against the default IRI base.
pub fn validate(graph: &Graph) -> ValidationReport {
    validate_with(graph, &IriPolicy::default())
}

/// `policy` decides which resources were minted by this pipeline (V12) and
/// where the preferred-attribution marker lives (V07).
pub fn validate_with(graph: &Graph, policy: &IriPolicy) -> ValidationReport {
    let mut cx = Ctx {
        graph,
        policy,
        rdf_type: term("rdf:type"),
        out: Vec::new(),
    };
    v01(&mut cx);
    v02(&mut cx);
    v03(&mut cx);
    v04(&mut cx);
    v05(&mut cx);
    v06(&mut cx);
    v07(&mut cx);
    v08(&mut cx);
    v09(&mut cx);
    v10(&mut cx);
    v11(&mut cx);
    v12(&mut cx);
    let mut violations = cx.out;
    violations.sort();
    violations.dedup();
    ValidationReport { violations }
}

fn v01(cx: &mut Ctx) {
    for entry in cx.instances("fentry:FEntry") {
        if cx.count(&entry, "fentry:describes") == 0 {
            cx.flag(Rule::V01, &entry, "no fentry:describes");
        }
    }
}

fn v02(cx: &mut Ctx) {
    for shot in cx.instances("fentry:Shot") {
        let works = cx
            .iri_objects(&shot, "frbr:realizationOf")
            .iter()
            .filter(|w| cx.has_type(w, "fentry:Photograph"))
            .count();
        if works != 1 {
            cx.flag(Rule::V02, &shot, format!("realization of {works} photographs"));
        }
    }
}

fn v03(cx: &mut Ctx) {
    let held_by = term("pro:holdsRoleInTime");
    for role in cx.instances("pro:RoleInTime") {
        let with = cx.count(&role, "pro:withRole");
        let relates = cx.count(&role, "pro:relatesTo");
        let holders = cx.count(&role, "pro:isHeldBy")
            + cx
                .graph
                .matching(None, Some(&held_by), Some(&Term::Iri(role.clone())))
                .count();
        let mut problems = Vec::new();
        if with != 1 {
            problems.push(format!("{with} pro:withRole"));
        }
        if relates != 1 {
            problems.push(format!("{relates} pro:relatesTo"));
        }
        if holders == 0 {
            problems.push("no holder".to_string());
        }
        if !problems.is_empty() {
            cx.flag(Rule::V03, &role, problems.join(", "));
        }
    }
}

fn v04(cx: &mut Ctx) {
    for act in cx.instances("hico:InterpretationAct") {
        let types = cx.count(&act, "hico:hasInterpretationType");
        let criteria = cx.count(&act, "hico:hasInterpretationCriterion");
        let sources = cx.count(&act, "hico:isExtractedFrom");
        let mut problems = Vec::new();
        if types == 0 {
            problems.push("no interpretation type".to_string());
        }
        if criteria == 0 {
            problems.push("no interpretation criterion".to_string());
        }
        if sources != 1 {
            problems.push(format!("{sources} hico:isExtractedFrom"));
        }
        if !problems.is_empty() {
            cx.flag(Rule::V04, &act, problems.join(", "));
        }
    }
}

fn v05(cx: &mut Ctx) {
    let photographer = Term::Iri(term("scor:photographer"));
    let publisher = Term::Iri(term("pro:publisher"));
    for role in cx.instances("pro:RoleInTime") {
        let roles = cx.objects(&role, "pro:withRole");
        for target in cx.iri_objects(&role, "pro:relatesTo") {
            if roles.contains(&photographer) && !cx.has_type(&target, "fentry:Shot") {
                cx.flag(Rule::V05, &role, format!("photographer role on non-shot <{}>", target.as_str()));
            }
            if roles.contains(&publisher)
                && !cx.has_type(&target, "fabio:AnalogManifestation")
                && !cx.has_type(&target, "fabio:DigitalManifestation")
            {
                cx.flag(Rule::V05, &role, format!("publisher role on non-manifestation <{}>", target.as_str()));
            }
        }
    }
}

fn v06(cx: &mut Ctx) {
    for act in cx.subjects("hico:isExtractedFrom") {
        for source in cx.objects(&act, "hico:isExtractedFrom") {
            let ok = source
                .as_iri()
                .is_some_and(|s| cx.has_type(s, "fabio:MetadataDocument") || cx.has_type(s, "fabio:Expression"));
            if !ok {
                cx.flag(Rule::V06, &act, format!("source {} is not a metadata document", source.to_ntriples()));
            }
        }
    }
}

fn v07(cx: &mut Ctx) {
    let marker = cx
        .policy
        .base()
        .join(&format!("term/{PREFERRED_MARKER}"));
    for attributed in cx.subjects("prov:wasGeneratedBy") {
        let preferred = cx
            .iri_objects(&attributed, "prov:wasGeneratedBy")
            .iter()
            .filter(|act| {
                cx.objects(act, "hico:hasInterpretationType")
                    .iter()
                    .any(|t| t.as_iri() == Some(&marker))
            })
            .count();
        if preferred > 1 {
            cx.flag(Rule::V07, &attributed, format!("{preferred} preferred attributions"));
        }
    }
}

const INFLUENCE_CLASSES: [&str; 5] = [
    "prov:Influence",
    "oaentry:Cartoon",
    "oaentry:Copy",
    "oaentry:Derivation",
    "oaentry:Drawing",
];

fn influence_nodes(cx: &Ctx) -> BTreeSet<Iri> {
    let mut nodes: BTreeSet<Iri> = INFLUENCE_CLASSES.iter().flat_map(|c| cx.instances(c)).collect();
    nodes.extend(cx.subjects("oaentry:hasFormerWork"));
    nodes.extend(cx.subjects("oaentry:hasConceived"));
    nodes
}

fn v08(cx: &mut Ctx) {
    for node in influence_nodes(cx) {
        let former = cx.count(&node, "oaentry:hasFormerWork");
        let conceived = cx.count(&node, "oaentry:hasConceived");
        if former != 1 || conceived == 0 {
            cx.flag(
                Rule::V08,
                &node,
                format!("{former} oaentry:hasFormerWork, {conceived} oaentry:hasConceived"),
            );
        }
    }
}

/// One representative (smallest IRI) per cycle in the directed graph.
fn cycles(edges: &[(Iri, Iri)]) -> Vec<Iri> {
    let mut g: DiGraph<Iri, ()> = DiGraph::new();
    let mut index: HashMap<Iri, NodeIndex> = HashMap::new();
    let mut node = |g: &mut DiGraph<Iri, ()>, iri: &Iri| *index.entry(iri.clone()).or_insert_with(|| g.add_node(iri.clone()));
    for (a, b) in edges {
        let (a, b) = (node(&mut g, a), node(&mut g, b));
        g.update_edge(a, b, ());
    }
    let mut out: Vec<Iri> = tarjan_scc(&g)
        .into_iter()
        .filter(|scc| scc.len() > 1 || g.contains_edge(scc[0], scc[0]))
        .filter_map(|scc| scc.iter().map(|i| g[*i].clone()).min())
        .collect();
    out.sort();
    out
}

fn v09(cx: &mut Ctx) {
    let mut edges = Vec::new();
    for node in influence_nodes(cx) {
        let former = cx.iri_objects(&node, "oaentry:hasFormerWork");
        let conceived = cx.iri_objects(&node, "oaentry:hasConceived");
        if former.iter().any(|f| conceived.contains(f)) {
            cx.flag(Rule::V09, &node, "former work is also the conceived work");
        }
        for f in &former {
            for c in &conceived {
                if f != c {
                    edges.push((f.clone(), c.clone()));
                }
            }
        }
    }
    for work in cycles(&edges) {
        cx.flag(Rule::V09, &work, "cycle of former-work relations");
    }
}

fn v10(cx: &mut Ctx) {
    let p89 = term("crm:P89_falls_within");
    let edges: Vec<(Iri, Iri)> = cx
        .graph
        .matching(None, Some(&p89), None)
        .filter_map(|t| t.object.as_iri().map(|o| (t.subject.clone(), o.clone())))
        .collect();
    for place in cycles(&edges) {
        cx.flag(Rule::V10, &place, "place chain is cyclic");
    }
}

fn v11(cx: &mut Ctx) {
    for transfer in cx.instances("crm:E10_Transfer_of_Custody") {
        let parties = cx.count(&transfer, "crm:P28_custody_surrendered_by")
            + cx.count(&transfer, "crm:P29_custody_received_by");
        let objects = cx.count(&transfer, "crm:P30_transferred_custody_of");
        if parties == 0 || objects != 1 {
            cx.flag(
                Rule::V11,
                &transfer,
                format!("{parties} custody parties, {objects} P30 objects"),
            );
        }
    }
}

fn v12(cx: &mut Ctx) {
    let label = term("rdfs:label");
    let mut minted = BTreeSet::new();
    for t in cx.graph.iter() {
        if cx.policy.is_minted(&t.subject) {
            minted.insert(t.subject.clone());
        }
        if let Some(o) = t.object.as_iri() {
            if cx.policy.is_minted(o) {
                minted.insert(o.clone());
            }
        }
    }
    for node in minted {
        let has_it = cx
            .graph
            .objects(&node, &label)
            .any(|o| o.as_literal().and_then(|l| l.language()) == Some("it"));
        if !has_it {
            cx.flag(Rule::V12, &node, "no rdfs:label@it");
        }
    }
}
