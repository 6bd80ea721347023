//! IRIs of the vocabularies the engine understands.

pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const OWL: &str = "http://www.w3.org/2002/07/owl#";
pub const SKOS: &str = "http://www.w3.org/2004/02/skos/core#";
pub const SH: &str = "http://www.w3.org/ns/shacl#";
pub const SHDS: &str = "http://www.w3id.org/shacl-ds#";

pub mod rdf {
    pub const TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
    pub const FIRST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#first";
    pub const REST: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest";
    pub const NIL: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#nil";
    pub const LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
}

pub mod rdfs {
    pub const SUB_CLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
    pub const LABEL: &str = "http://www.w3.org/2000/01/rdf-schema#label";
    pub const COMMENT: &str = "http://www.w3.org/2000/01/rdf-schema#comment";
}

pub mod xsd {
    pub const STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
    pub const BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";
    pub const INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
    pub const DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
    pub const DOUBLE: &str = "http://www.w3.org/2001/XMLSchema#double";
}

pub mod sh {
    pub const NODE_SHAPE: &str = "http://www.w3.org/ns/shacl#NodeShape";
    pub const PROPERTY_SHAPE: &str = "http://www.w3.org/ns/shacl#PropertyShape";
    pub const SPARQL_CONSTRAINT: &str = "http://www.w3.org/ns/shacl#SPARQLConstraint";

    pub const TARGET_CLASS: &str = "http://www.w3.org/ns/shacl#targetClass";
    pub const TARGET_NODE: &str = "http://www.w3.org/ns/shacl#targetNode";
    pub const TARGET_SUBJECTS_OF: &str = "http://www.w3.org/ns/shacl#targetSubjectsOf";
    pub const TARGET_OBJECTS_OF: &str = "http://www.w3.org/ns/shacl#targetObjectsOf";

    pub const PATH: &str = "http://www.w3.org/ns/shacl#path";
    pub const INVERSE_PATH: &str = "http://www.w3.org/ns/shacl#inversePath";
    pub const DATATYPE: &str = "http://www.w3.org/ns/shacl#datatype";
    pub const PATTERN: &str = "http://www.w3.org/ns/shacl#pattern";
    pub const FLAGS: &str = "http://www.w3.org/ns/shacl#flags";
    pub const MIN_COUNT: &str = "http://www.w3.org/ns/shacl#minCount";
    pub const MAX_COUNT: &str = "http://www.w3.org/ns/shacl#maxCount";
    pub const CLASS: &str = "http://www.w3.org/ns/shacl#class";
    pub const NODE_KIND: &str = "http://www.w3.org/ns/shacl#nodeKind";
    pub const IN: &str = "http://www.w3.org/ns/shacl#in";
    pub const OR: &str = "http://www.w3.org/ns/shacl#or";
    pub const NOT: &str = "http://www.w3.org/ns/shacl#not";
    pub const NODE: &str = "http://www.w3.org/ns/shacl#node";
    pub const PROPERTY: &str = "http://www.w3.org/ns/shacl#property";
    pub const SPARQL: &str = "http://www.w3.org/ns/shacl#sparql";
    pub const SELECT: &str = "http://www.w3.org/ns/shacl#select";
    pub const PREFIXES: &str = "http://www.w3.org/ns/shacl#prefixes";
    pub const SEVERITY: &str = "http://www.w3.org/ns/shacl#severity";
    pub const MESSAGE: &str = "http://www.w3.org/ns/shacl#message";
    pub const DEACTIVATED: &str = "http://www.w3.org/ns/shacl#deactivated";
    pub const NAME: &str = "http://www.w3.org/ns/shacl#name";
    pub const DESCRIPTION: &str = "http://www.w3.org/ns/shacl#description";
    pub const ORDER: &str = "http://www.w3.org/ns/shacl#order";
    pub const GROUP: &str = "http://www.w3.org/ns/shacl#group";
    pub const DEFAULT_VALUE: &str = "http://www.w3.org/ns/shacl#defaultValue";
    pub const DECLARE: &str = "http://www.w3.org/ns/shacl#declare";

    pub const VIOLATION: &str = "http://www.w3.org/ns/shacl#Violation";
    pub const WARNING: &str = "http://www.w3.org/ns/shacl#Warning";
    pub const INFO: &str = "http://www.w3.org/ns/shacl#Info";

    pub const IRI: &str = "http://www.w3.org/ns/shacl#IRI";
    pub const BLANK_NODE: &str = "http://www.w3.org/ns/shacl#BlankNode";
    pub const LITERAL: &str = "http://www.w3.org/ns/shacl#Literal";
    pub const BLANK_NODE_OR_IRI: &str = "http://www.w3.org/ns/shacl#BlankNodeOrIRI";
    pub const BLANK_NODE_OR_LITERAL: &str = "http://www.w3.org/ns/shacl#BlankNodeOrLiteral";
    pub const IRI_OR_LITERAL: &str = "http://www.w3.org/ns/shacl#IRIOrLiteral";

    pub const VALIDATION_REPORT: &str = "http://www.w3.org/ns/shacl#ValidationReport";
    pub const VALIDATION_RESULT: &str = "http://www.w3.org/ns/shacl#ValidationResult";
    pub const CONFORMS: &str = "http://www.w3.org/ns/shacl#conforms";
    pub const RESULT: &str = "http://www.w3.org/ns/shacl#result";
    pub const FOCUS_NODE: &str = "http://www.w3.org/ns/shacl#focusNode";
    pub const RESULT_PATH: &str = "http://www.w3.org/ns/shacl#resultPath";
    pub const VALUE: &str = "http://www.w3.org/ns/shacl#value";
    pub const SOURCE_SHAPE: &str = "http://www.w3.org/ns/shacl#sourceShape";
    pub const SOURCE_CONSTRAINT_COMPONENT: &str =
        "http://www.w3.org/ns/shacl#sourceConstraintComponent";
    pub const RESULT_SEVERITY: &str = "http://www.w3.org/ns/shacl#resultSeverity";
    pub const RESULT_MESSAGE: &str = "http://www.w3.org/ns/shacl#resultMessage";

    pub const DATATYPE_COMPONENT: &str = "http://www.w3.org/ns/shacl#DatatypeConstraintComponent";
    pub const PATTERN_COMPONENT: &str = "http://www.w3.org/ns/shacl#PatternConstraintComponent";
    pub const MIN_COUNT_COMPONENT: &str = "http://www.w3.org/ns/shacl#MinCountConstraintComponent";
    pub const MAX_COUNT_COMPONENT: &str = "http://www.w3.org/ns/shacl#MaxCountConstraintComponent";
    pub const CLASS_COMPONENT: &str = "http://www.w3.org/ns/shacl#ClassConstraintComponent";
    pub const NODE_KIND_COMPONENT: &str = "http://www.w3.org/ns/shacl#NodeKindConstraintComponent";
    pub const IN_COMPONENT: &str = "http://www.w3.org/ns/shacl#InConstraintComponent";
    pub const OR_COMPONENT: &str = "http://www.w3.org/ns/shacl#OrConstraintComponent";
    pub const NOT_COMPONENT: &str = "http://www.w3.org/ns/shacl#NotConstraintComponent";
    pub const NODE_COMPONENT: &str = "http://www.w3.org/ns/shacl#NodeConstraintComponent";
    pub const SPARQL_COMPONENT: &str = "http://www.w3.org/ns/shacl#SPARQLConstraintComponent";
}

pub mod shds {
    pub const TARGET_GRAPH: &str = "http://www.w3id.org/shacl-ds#targetGraph";
    pub const TARGET_GRAPH_PATTERN: &str = "http://www.w3id.org/shacl-ds#targetGraphPattern";
    pub const TARGET_GRAPH_COMBINATION: &str =
        "http://www.w3id.org/shacl-ds#targetGraphCombination";
    pub const OR: &str = "http://www.w3id.org/shacl-ds#or";
    pub const AND: &str = "http://www.w3id.org/shacl-ds#and";
    pub const MINUS: &str = "http://www.w3id.org/shacl-ds#minus";
    pub const ALL: &str = "http://www.w3id.org/shacl-ds#all";
    pub const DEFAULT: &str = "http://www.w3id.org/shacl-ds#default";
    pub const FOCUS_GRAPH: &str = "http://www.w3id.org/shacl-ds#focusGraph";
    pub const SOURCE_SHAPE_GRAPH: &str = "http://www.w3id.org/shacl-ds#sourceShapeGraph";
}
