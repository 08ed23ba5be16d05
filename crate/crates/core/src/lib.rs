//! Symbolic engine for the genus-0 open-closed string-field-theory dioperad.

pub mod error;
pub mod enumerate;
pub mod generator;
pub mod homology;
pub mod label;
pub mod linalg;
pub mod normal;
pub mod relations;
pub mod strtop;
pub mod surface;
pub mod syntax;
pub mod term;

pub use error::{Error, Result};
pub use generator::{Generator, Port};
pub use label::{lbl, Color, Label, Polarity};
pub use surface::{enumerate_types, SurfaceType, TypeSignature};
pub use syntax::{parse_label, parse_term, parse_type, print_term, print_type};
pub use term::{shuffle_sign, RawTerm, Src, Target, Term};
pub use normal::{build_form1, build_normal_form, classify_form, equiv0, normalize0, type_of, Form};
pub use enumerate::{enumerate_terms, for_each_term};
pub use relations::{derived_templates, engine_templates, relation_templates, RelationId, RelationTemplate};
pub use homology::{
    canonical_basis, check_r6_redundancy, check_r6_redundancy_with, relations_implied, cyclic_act_class, cyclic_act_term, graded_dims, graded_dims_with, instantiate_relations, oracle_poincare,
    psi_contract_class, psi_contract_term, reduce_class, ClassVector, Component, GradedDims,
};
pub use strtop::{compose_descriptors, desc_from_type, embedding_codim, operation_degree, CactiDescriptor, ManifoldDims};
