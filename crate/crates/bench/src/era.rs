//! IRIs of the railway vocabulary, graphs and shapes used by the generator.

use shaclds::Term;

pub const BASE: &str = "http://data.europa.eu/949/";
pub const GRAPH_BASE: &str = "http://data.europa.eu/949/graph/";
pub const OPERATOR_GRAPH_BASE: &str = "http://data.europa.eu/949/graph/rinf/";
pub const V315_GRAPH_BASE: &str = "http://data.europa.eu/949/graph/v3-1-5/";
pub const SHAPES_BASE: &str = "http://data.europa.eu/949/shapes/";
pub const DATA_BASE: &str = "http://data.europa.eu/949/data/";
pub const CONCEPT_BASE: &str = "http://data.europa.eu/949/concepts/";
pub const COUNTRY_BASE: &str = "http://publications.europa.eu/resource/authority/country/";

/// Selects operator graphs: a 4-character upper-case alphanumeric company code.
pub const OPERATOR_PATTERN: &str = ".*/graph/rinf/[A-Z0-9]{4}$";
pub const ONTOLOGY_PATTERN: &str = ".*/ontology$";
pub const SKOS_PATTERN: &str = ".*/skos$";
pub const SHACL_PATTERN: &str = ".*/shacl$";

pub fn era(local: &str) -> Term {
    Term::iri(&format!("{BASE}{local}"))
}

pub fn shape(local: &str) -> Term {
    Term::iri(&format!("{SHAPES_BASE}{local}"))
}

pub fn operator_graph(code: &str) -> Term {
    Term::iri(&format!("{OPERATOR_GRAPH_BASE}{code}"))
}

pub fn ontology_graph() -> Term {
    Term::iri(&format!("{GRAPH_BASE}ontology"))
}

pub fn skos_graph() -> Term {
    Term::iri(&format!("{GRAPH_BASE}skos"))
}

pub fn countries_graph() -> Term {
    Term::iri(&format!("{GRAPH_BASE}countries"))
}

pub fn borders_graph() -> Term {
    Term::iri(&format!("{GRAPH_BASE}borders"))
}

/// The four centrally managed graphs every operator graph is validated with.
pub fn reference_graphs() -> [Term; 4] {
    [ontology_graph(), skos_graph(), countries_graph(), borders_graph()]
}

pub fn rinf_ontology_graph() -> Term {
    Term::iri(&format!("{OPERATOR_GRAPH_BASE}ontology"))
}

pub fn rinf_skos_graph() -> Term {
    Term::iri(&format!("{OPERATOR_GRAPH_BASE}skos"))
}

pub fn rinf_dataset_graph() -> Term {
    Term::iri(&format!("{OPERATOR_GRAPH_BASE}dataset"))
}

pub fn v315_graph(local: &str) -> Term {
    Term::iri(&format!("{V315_GRAPH_BASE}{local}"))
}

/// Shapes graph names.
pub mod sg {
    pub const RINF: &str = "http://data.europa.eu/949/shapes/sg-rinf";
    pub const ONT: &str = "http://data.europa.eu/949/shapes/sg-ont";
    pub const SKOS: &str = "http://data.europa.eu/949/shapes/sg-skos";
    pub const SHACL: &str = "http://data.europa.eu/949/shapes/sg-shacl";
}

/// Shapes whose results the generator accounts for.
pub mod shapes {
    pub const MAX_TRAIN_CURRENT: &str = "http://data.europa.eu/949/shapes/MaximumTrainCurrent";
    pub const LENGTH_OF_SECTION: &str = "http://data.europa.eu/949/shapes/LengthOfSectionOfLine";
    pub const SOL_OP_START: &str = "http://data.europa.eu/949/shapes/SolOpStart";
    pub const SOL_NATURE: &str = "http://data.europa.eu/949/shapes/SolNature";
    pub const ETCS: &str = "http://data.europa.eu/949/shapes/ETCSShape";
    pub const NOT_APPLICABLE: &str = "http://data.europa.eu/949/shapes/NotApplicableProperty";
    pub const ONT_PROPERTY_LABEL: &str = "http://data.europa.eu/949/shapes/OntologyPropertyLabel";
    pub const CONCEPT_LABEL: &str = "http://data.europa.eu/949/shapes/ConceptPrefLabel";
    pub const SHAPE_HAS_PATH: &str = "http://data.europa.eu/949/shapes/PropertyShapeHasPath";
}
