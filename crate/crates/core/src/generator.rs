use std::fmt;

use crate::label::{Color, Label};
use crate::surface::SurfaceType;

use Color::{Closed as C, Open as O};

/// The nine generating operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// closed multiplication
    MC,
    /// open multiplication
    MO,
    /// closed unit
    EC,
    /// open unit
    EO,
    /// closed to open
    C2O,
    /// open to closed
    O2C,
    /// closed comultiplication
    CC,
    /// open comultiplication
    CO,
    /// BV operator, the only generator of degree 1
    BV,
}

/// A port of a generator, used to describe the cyclic order of open ports
/// along the generator's boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Port {
    In(usize),
    Out(usize),
}

impl Generator {
    pub const ALL: [Generator; 9] = [
        Generator::MC,
        Generator::MO,
        Generator::EC,
        Generator::EO,
        Generator::C2O,
        Generator::O2C,
        Generator::CC,
        Generator::CO,
        Generator::BV,
    ];

    pub fn inputs(self) -> &'static [Color] {
        match self {
            Generator::MC => &[C, C],
            Generator::MO => &[O, O],
            Generator::EC | Generator::EO => &[],
            Generator::C2O | Generator::CC | Generator::BV => &[C],
            Generator::O2C | Generator::CO => &[O],
        }
    }

    pub fn outputs(self) -> &'static [Color] {
        match self {
            Generator::MC | Generator::EC | Generator::O2C | Generator::BV => &[C],
            Generator::MO | Generator::EO | Generator::C2O => &[O],
            Generator::CC => &[C, C],
            Generator::CO => &[O, O],
        }
    }

    pub fn degree(self) -> usize {
        usize::from(self == Generator::BV)
    }

    /// Cyclic order of the open ports on this generator's boundary, if it has one.
    pub fn boundary(self) -> Option<&'static [Port]> {
        match self {
            Generator::MO => Some(&[Port::In(0), Port::In(1), Port::Out(0)]),
            Generator::EO | Generator::C2O => Some(&[Port::Out(0)]),
            Generator::O2C => Some(&[Port::In(0)]),
            Generator::CO => Some(&[Port::In(0), Port::Out(1), Port::Out(0)]),
            _ => None,
        }
    }

    /// The path-component type of the generator.
    pub fn signature(self) -> SurfaceType {
        let label = |p: Port| match p {
            Port::In(k) => Label::input(k as u32 + 1),
            Port::Out(k) => Label::output(k as u32 + 1),
        };
        let closed = self
            .inputs()
            .iter()
            .enumerate()
            .filter(|(_, c)| **c == C)
            .map(|(k, _)| Label::input(k as u32 + 1))
            .chain(
                self.outputs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c == C)
                    .map(|(k, _)| Label::output(k as u32 + 1)),
            );
        let cycles = self.boundary().map(|b| vec![b.iter().map(|&p| label(p)).collect()]).unwrap_or_default();
        SurfaceType::from_parts(closed, cycles)
    }

    pub fn tag(self) -> &'static str {
        match self {
            Generator::MC => "MC",
            Generator::MO => "MO",
            Generator::EC => "EC",
            Generator::EO => "EO",
            Generator::C2O => "C2O",
            Generator::O2C => "O2C",
            Generator::CC => "CC",
            Generator::CO => "CO",
            Generator::BV => "BV",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Generator> {
        Generator::ALL.into_iter().find(|g| g.tag().eq_ignore_ascii_case(tag))
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_type;

    #[test]
    fn signature_table() {
        let expect = [
            (Generator::MC, "{1i,2i,1o}"),
            (Generator::MO, "(1i,2i,1o)"),
            (Generator::EC, "{1o}"),
            (Generator::EO, "(1o)"),
            (Generator::C2O, "{1i},(1o)"),
            (Generator::O2C, "{1o},(1i)"),
            (Generator::CC, "{1i,1o,2o}"),
            (Generator::CO, "(1i,2o,1o)"),
            (Generator::BV, "{1i,1o}"),
        ];
        for (g, ty) in expect {
            assert_eq!(g.signature(), parse_type(ty).unwrap(), "{g}");
            assert_eq!(g.degree(), usize::from(g == Generator::BV));
        }
    }
}
