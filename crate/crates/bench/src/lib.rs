//! Fixtures shared by the engine benchmarks.

use ocsft::{enumerate_terms, parse_type, SurfaceType, Term};

pub fn ty(text: &str) -> SurfaceType {
    parse_type(text).expect("fixture type parses")
}

/// Degree-0 terms of a few small components, up to four vertices.
pub fn degree0_terms() -> Vec<Term> {
    ["{1i,2i,1o}", "(1i,2i,1o)", "{1i,1o},(2i)", "{1o},(1i,2i)"]
        .iter()
        .flat_map(|s| enumerate_terms(&ty(s), 0, 4))
        .collect()
}
