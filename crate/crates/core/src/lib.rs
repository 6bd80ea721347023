//! RDF dataset validation with SHACL.
//!
//! Beyond validating a single data graph, shapes graphs can be aimed at
//! individual named graphs of a dataset, at every graph whose IRI matches a
//! pattern, or at graphs computed by union, intersection and difference of
//! other graphs. Results record which focus graph and which shapes graph
//! produced them.
//!
//! ```
//! use shaclds::io::parse_trig;
//! use shaclds::ds::{load_shapes_dataset, validate_dataset, ValidateOptions};
//!
//! let shapes = parse_trig(r#"
//!     @prefix sh: <http://www.w3.org/ns/shacl#> .
//!     @prefix shds: <http://www.w3id.org/shacl-ds#> .
//!     <http://ex/sg> shds:targetGraphPattern "^http://ex/op/" .
//!     GRAPH <http://ex/sg> {
//!         <http://ex/S> sh:targetClass <http://ex/C> ;
//!             sh:property [ sh:path <http://ex/p> ; sh:minCount 1 ] .
//!     }"#).unwrap().dataset;
//! let data = parse_trig(r#"
//!     GRAPH <http://ex/op/1> { <http://ex/x> a <http://ex/C> . }
//!     GRAPH <http://ex/op/2> { <http://ex/y> a <http://ex/C> ; <http://ex/p> 1 . }"#).unwrap().dataset;
//!
//! let shapes = load_shapes_dataset(&shapes).unwrap();
//! let report = validate_dataset(&shapes, &data, &ValidateOptions::default()).unwrap();
//! assert_eq!(report.len(), 1);
//! assert_eq!(report.results[0].focus_graph.as_ref().unwrap().as_iri(), Some("http://ex/op/1"));
//! ```

pub mod ds;
pub mod io;
pub mod model;
pub mod report;
pub mod shacl;
pub mod sparql;
pub mod vocab;

pub use model::{Dataset, Graph, Literal, Quad, Term, Triple};
