//! Degree and codimension bookkeeping for cacti-style descriptors of
//! one-output path components.
//!
//! A descriptor counts circles (lobes), ghost edges joining them, and the
//! black components: one interval per open input and one circle per empty
//! boundary. An open output boundary with no open inputs is a black point
//! and counts for nothing.

use std::fmt;

use crate::error::{Error, Result};
use crate::label::Color;
use crate::surface::SurfaceType;

/// Dimensions of the ambient manifold and the submanifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ManifoldDims {
    pub m: i64,
    pub k: i64,
}

impl ManifoldDims {
    pub fn new(m: i64, k: i64) -> Result<Self> {
        if k < 0 || k > m {
            return Err(Error::InvalidDescriptor(format!("need 0 <= k <= m, got m={m} k={k}")));
        }
        Ok(ManifoldDims { m, k })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CactiDescriptor {
    pub c: usize,
    pub o: usize,
    pub circles: usize,
    pub black_intervals: usize,
    /// Unknown after composition: sewing two boundaries that hold only the
    /// sewn punctures leaves an empty one.
    pub black_circles: Option<usize>,
    pub ghost_edges: usize,
    pub output: Color,
}

fn ghosts(circles: usize, output: Color) -> Result<usize> {
    match output {
        Color::Closed => circles
            .checked_sub(1)
            .ok_or_else(|| Error::InvalidDescriptor("closed output needs a circle".into())),
        Color::Open => Ok(circles),
    }
}

impl CactiDescriptor {
    /// Descriptor with ghost edges taken from the law for the output kind.
    pub fn new(c: usize, o: usize, circles: usize, black_intervals: usize, black_circles: Option<usize>, output: Color) -> Result<Self> {
        if circles < c {
            return Err(Error::InvalidDescriptor(format!("{circles} circles cannot hold {c} closed inputs")));
        }
        let ghost_edges = ghosts(circles, output)?;
        Ok(CactiDescriptor { c, o, circles, black_intervals, black_circles, ghost_edges, output })
    }

    /// Black intervals plus black circles, when known.
    pub fn b(&self) -> Option<usize> {
        self.black_circles.map(|n| self.black_intervals + n)
    }
}

impl fmt::Display for CactiDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.output {
            Color::Closed => "closed",
            Color::Open => "open",
        };
        let unknown = || "?".to_string();
        write!(
            f,
            "c={} o={} circles={} b={} (intervals={} circles={}) g={} out={kind}",
            self.c,
            self.o,
            self.circles,
            self.b().map_or_else(unknown, |b| b.to_string()),
            self.black_intervals,
            self.black_circles.map_or_else(unknown, |b| b.to_string()),
            self.ghost_edges
        )
    }
}

pub fn desc_from_type(s: &SurfaceType) -> Result<CactiDescriptor> {
    if s.num_outputs() != 1 {
        return Err(Error::NotSingleOutput);
    }
    let closed_inputs = s.closed().iter().filter(|l| l.is_input()).count();
    let open_inputs = s.boundaries().iter().flatten().filter(|l| l.is_input()).count();
    let boundaries = s.boundaries().len();
    let empty = s.empty_boundaries();
    let output = if s.closed().iter().any(|l| l.is_output()) { Color::Closed } else { Color::Open };
    let circles = match output {
        Color::Closed => closed_inputs + boundaries,
        Color::Open => closed_inputs + boundaries - 1,
    };
    CactiDescriptor::new(closed_inputs, open_inputs, circles, open_inputs, Some(empty), output)
}

pub fn operation_degree(d: &CactiDescriptor, dims: ManifoldDims) -> i64 {
    let (circles, o) = (d.circles as i64, d.o as i64);
    match d.output {
        Color::Closed => -((circles - 1) * dims.m + o * dims.k),
        Color::Open => -(circles * dims.m + (o - 1) * dims.k),
    }
}

/// Codimension of the embedding: the fundamental classes of the black
/// components and ghost edges, less the operation degree.
pub fn embedding_codim(d: &CactiDescriptor, dims: ManifoldDims) -> Result<i64> {
    let b = d.b().ok_or_else(|| Error::InvalidDescriptor("black circle count unknown".into()))?;
    Ok(b as i64 * dims.k + d.ghost_edges as i64 * dims.m - operation_degree(d, dims))
}

/// Descriptor of `d2` plugged into an input of `d1` of color `at`.
pub fn compose_descriptors(d1: &CactiDescriptor, at: Color, d2: &CactiDescriptor) -> Result<CactiDescriptor> {
    if d2.output != at {
        return Err(Error::KindMismatch(format!("{:?} output plugged into a {:?} input", d2.output, at)));
    }
    let free = match at {
        Color::Closed => d1.c,
        Color::Open => d1.o,
    };
    if free == 0 {
        return Err(Error::KindMismatch(format!("no {} input to sew into", at.name())));
    }
    let (c, o, circles) = match at {
        Color::Closed => (d1.c + d2.c - 1, d1.o + d2.o, d1.circles + d2.circles - 1),
        Color::Open => (d1.c + d2.c, d1.o + d2.o - 1, d1.circles + d2.circles),
    };
    CactiDescriptor::new(c, o, circles, o, None, d1.output)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_type;

    fn desc(s: &str) -> CactiDescriptor {
        desc_from_type(&parse_type(s).unwrap()).unwrap()
    }

    fn dims() -> ManifoldDims {
        ManifoldDims::new(7, 3).unwrap()
    }

    #[test]
    fn maps_between_sectors() {
        let to_closed = desc("{1o},(1i)");
        assert_eq!((to_closed.c, to_closed.o, to_closed.circles, to_closed.b(), to_closed.ghost_edges), (0, 1, 1, Some(1), 0));
        assert_eq!(operation_degree(&to_closed, dims()), -3);
        let to_open = desc("{1i},(1o)");
        assert_eq!((to_open.c, to_open.o, to_open.circles, to_open.b(), to_open.ghost_edges), (1, 0, 1, Some(0), 1));
        assert_eq!(operation_degree(&to_open, dims()), -(7 - 3));
        let empty = desc("{1o},()");
        assert_eq!((empty.circles, empty.black_circles, empty.ghost_edges), (1, Some(1), 0));
    }

    #[test]
    fn pictures() {
        let d = dims();
        let lobe = CactiDescriptor::new(0, 2, 1, 2, Some(0), Color::Closed).unwrap();
        assert_eq!(operation_degree(&lobe, d), -2 * d.k);
        assert_eq!(embedding_codim(&lobe, d).unwrap(), 4 * d.k);
        let ghosted = CactiDescriptor::new(0, 4, 2, 4, Some(0), Color::Closed).unwrap();
        assert_eq!(ghosted.ghost_edges, 1);
        assert_eq!(operation_degree(&ghosted, d), -(4 * d.k + d.m));
        assert_eq!(embedding_codim(&ghosted, d).unwrap(), 8 * d.k + 2 * d.m);
        let composite = CactiDescriptor::new(0, 0, 2, 0, Some(1), Color::Closed).unwrap();
        assert_eq!(operation_degree(&composite, d), -d.m);
        assert_eq!(embedding_codim(&composite, d).unwrap(), 2 * d.m + d.k);
    }

    #[test]
    fn composition_adds_degrees() {
        let d = dims();
        let to_closed = desc("{1o},(1i)");
        let to_open = desc("{1i},(1o)");
        let both = compose_descriptors(&to_closed, Color::Open, &to_open).unwrap();
        assert_eq!(operation_degree(&both, d), -d.m);
        let direct = desc("{1i,1o},()");
        assert_eq!((both.c, both.o, both.circles, both.output), (direct.c, direct.o, direct.circles, direct.output));
        assert_eq!(both.black_circles, None);
        assert!(embedding_codim(&both, d).is_err());
        let id = desc("{1i,1o}");
        let again = compose_descriptors(&to_closed, Color::Open, &compose_descriptors(&to_open, Color::Closed, &id).unwrap()).unwrap();
        assert_eq!(operation_degree(&again, d), -d.m);
        assert!(matches!(compose_descriptors(&to_closed, Color::Closed, &to_open), Err(Error::KindMismatch(_))));
    }

    #[test]
    fn equal_dimensions_give_loop_degree() {
        let d = ManifoldDims::new(5, 5).unwrap();
        let s = desc("{1i,2i,1o}");
        assert_eq!(operation_degree(&s, d), -(s.circles as i64 - 1) * 5);
        assert!(ManifoldDims::new(2, 3).is_err());
    }
}
