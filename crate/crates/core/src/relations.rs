//! The relation templates and their instantiation inside host terms.
//!
//! A template is a list of labeled sides with coefficients; every side has
//! the same type. The relation says the signed sum of the sides vanishes.
//! Templates whose sides all agree pairwise are written as a chain of
//! differences.

use crate::generator::Generator;
use crate::syntax::parse_term;
use crate::term::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationId {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
    R11,
    R12,
    R13,
}

impl RelationId {
    pub const ALL: [RelationId; 13] = [
        RelationId::R1,
        RelationId::R2,
        RelationId::R3,
        RelationId::R4,
        RelationId::R5,
        RelationId::R6,
        RelationId::R7,
        RelationId::R8,
        RelationId::R9,
        RelationId::R10,
        RelationId::R11,
        RelationId::R12,
        RelationId::R13,
    ];

    /// The dual (co)associativity relations follow from the others.
    pub fn is_redundant(self) -> bool {
        self == RelationId::R6
    }

    /// Relations involving the BV operator.
    pub fn is_bv(self) -> bool {
        matches!(self, RelationId::R11 | RelationId::R12 | RelationId::R13)
    }

    pub fn name(self) -> &'static str {
        match self {
            RelationId::R1 => "r1",
            RelationId::R2 => "r2",
            RelationId::R3 => "r3",
            RelationId::R4 => "r4",
            RelationId::R5 => "r5",
            RelationId::R6 => "r6",
            RelationId::R7 => "r7",
            RelationId::R8 => "r8",
            RelationId::R9 => "r9",
            RelationId::R10 => "r10",
            RelationId::R11 => "r11",
            RelationId::R12 => "r12",
            RelationId::R13 => "r13",
        }
    }
}

/// One linear relation `sum coefficient * side = 0`.
#[derive(Debug, Clone)]
pub struct RelationTemplate {
    pub id: RelationId,
    pub sides: Vec<(i64, Term)>,
}

impl RelationTemplate {
    fn new(id: RelationId, sides: &[(i64, &str)]) -> Self {
        let sides = sides
            .iter()
            .map(|&(c, s)| (c, parse_term(s).unwrap_or_else(|e| panic!("bad template {s}: {e}"))))
            .collect();
        RelationTemplate { id, sides }
    }

    fn diff(id: RelationId, a: &str, b: &str) -> Self {
        Self::new(id, &[(1, a), (-1, b)])
    }

    pub fn degree(&self) -> usize {
        self.sides[0].1.degree()
    }

    /// Whether any side uses a generator with two outputs.
    pub fn uses_comultiplication(&self) -> bool {
        self.sides.iter().any(|(_, t)| t.generators().iter().any(|g| matches!(g, Generator::CC | Generator::CO)))
    }
}

/// All thirteen templates.
pub fn relation_templates() -> Vec<RelationTemplate> {
    use RelationId::*;
    let d = RelationTemplate::diff;
    vec![
        d(R1, "mc(mc(x1c,x2c),x3c)", "mc(x1c,mc(x2c,x3c))"),
        d(R1, "mc(x1c,x2c)", "mc(x2c,x1c)"),
        d(R1, "mc(ec,x1c)", "x1c"),
        d(R1, "mc(x1c,ec)", "x1c"),
        d(R2, "mo(mo(x1o,x2o),x3o)", "mo(x1o,mo(x2o,x3o))"),
        d(R2, "mo(eo,x1o)", "x1o"),
        d(R2, "mo(x1o,eo)", "x1o"),
        d(R3, "c2o(mc(x1c,x2c))", "mo(c2o(x1c),c2o(x2c))"),
        d(R3, "c2o(ec)", "eo"),
        d(R3, "mo(c2o(x2c),x1o)", "mo(x1o,c2o(x2c))"),
        d(R4, "o2c(mo(c2o(x1c),x2o))", "mc(x1c,o2c(x2o))"),
        d(R5, "o2c(mo(x1o,x2o))", "o2c(mo(x2o,x1o))"),
        d(
            R6,
            "gen a CC; gen b CC; in 1i a.in1; wire a.out1 b.in1; out 1o b.out1; out 2o b.out2; out 3o a.out2",
            "gen a CC; gen b CC; in 1i a.in1; wire a.out2 b.in1; out 1o a.out1; out 2o b.out1; out 3o b.out2",
        ),
        d(R6, "gen a CC; in 1i a.in1; out 1o a.out1; out 2o a.out2", "gen a CC; in 1i a.in1; out 1o a.out2; out 2o a.out1"),
        d(
            R6,
            "gen a CO; gen b CO; in 1i a.in1; wire a.out1 b.in1; out 1o b.out1; out 2o b.out2; out 3o a.out2",
            "gen a CO; gen b CO; in 1i a.in1; wire a.out2 b.in1; out 1o a.out1; out 2o b.out1; out 3o b.out2",
        ),
        d(
            R7,
            "gen m MC; gen c CC; in 1i m.in1; in 2i m.in2; wire m.out1 c.in1; out 1o c.out1; out 2o c.out2",
            "gen b CC; gen m MC; in 1i m.in1; in 2i b.in1; wire b.out1 m.in2; out 1o m.out1; out 2o b.out2",
        ),
        d(
            R7,
            "gen m MC; gen c CC; in 1i m.in1; in 2i m.in2; wire m.out1 c.in1; out 1o c.out1; out 2o c.out2",
            "gen a CC; gen m MC; in 1i a.in1; in 2i m.in2; wire a.out2 m.in1; out 1o a.out1; out 2o m.out1",
        ),
        d(
            R8,
            "gen m MO; gen c CO; in 1i m.in1; in 2i m.in2; wire m.out1 c.in1; out 1o c.out1; out 2o c.out2",
            "gen b CO; gen m MO; in 1i m.in1; in 2i b.in1; wire b.out1 m.in2; out 1o m.out1; out 2o b.out2",
        ),
        d(
            R8,
            "gen m MO; gen c CO; in 1i m.in1; in 2i m.in2; wire m.out1 c.in1; out 1o c.out1; out 2o c.out2",
            "gen a CO; gen m MO; in 1i a.in1; in 2i m.in2; wire a.out2 m.in1; out 1o a.out1; out 2o m.out1",
        ),
        d(
            R9,
            "gen a CO; gen m MO; in 1i a.in1; in 2i m.in2; wire a.out1 m.in1; out 1o m.out1; out 2o a.out2",
            "gen b CO; gen m MO; in 2i b.in1; in 1i m.in2; wire b.out1 m.in1; out 1o b.out2; out 2o m.out1",
        ),
        d(
            R9,
            "gen a CO; gen m MO; in 1i a.in1; in 2i m.in2; wire a.out1 m.in1; out 1o m.out1; out 2o a.out2",
            "gen a CO; gen m MO; in 1i a.in1; in 2i m.in1; wire a.out2 m.in2; out 1o a.out1; out 2o m.out1",
        ),
        d(
            R10,
            "gen a CC; gen c C2O; gen m MO; in 1i a.in1; in 2i m.in2; wire a.out2 c.in1; wire c.out1 m.in1; out 1o a.out1; out 2o m.out1",
            "gen b CO; gen p O2C; gen m MC; in 1i m.in1; in 2i b.in1; wire b.out1 p.in1; wire p.out1 m.in2; out 1o m.out1; out 2o b.out2",
        ),
        RelationTemplate::new(R11, &[(1, "bv(bv(x1c))")]),
        RelationTemplate::new(
            R11,
            &[
                (1, "bv(mc(mc(x1c,x2c),x3c))"),
                (-1, "mc(bv(mc(x1c,x2c)),x3c)"),
                (-1, "mc(x1c,bv(mc(x2c,x3c)))"),
                (-1, "mc(x2c,bv(mc(x1c,x3c)))"),
                (1, "mc(mc(bv(x1c),x2c),x3c)"),
                (1, "mc(mc(x1c,bv(x2c)),x3c)"),
                (1, "mc(mc(x1c,x2c),bv(x3c))"),
            ],
        ),
        d(
            R12,
            "gen a CC; gen d BV; gen m MC; in 1i a.in1; in 2i m.in2; wire a.out2 d.in1; wire d.out1 m.in1; out 1o a.out1; out 2o m.out1",
            "gen b CC; gen d BV; gen m MC; in 1i m.in1; in 2i b.in1; wire b.out1 d.in1; wire d.out1 m.in2; out 1o m.out1; out 2o b.out2",
        ),
        RelationTemplate::new(R13, &[(1, "bv(o2c(eo))")]),
    ]
}

/// Consequences of the templates that the rank engine also uses. Each one
/// only fits under a cap several vertices above the terms it acts on, so
/// without it small caps keep spurious classes. Tagged with the relation
/// they follow from.
pub fn derived_templates() -> Vec<RelationTemplate> {
    // the seven-term relation on three units, after unit collapse
    vec![RelationTemplate::new(RelationId::R11, &[(1, "bv(ec)")])]
}

/// Templates plus their derived consequences.
pub fn engine_templates() -> Vec<RelationTemplate> {
    let mut all = relation_templates();
    all.extend(derived_templates());
    all
}

/// The composite built for each printed relation type, paired with it.
pub fn printed_type_table() -> Vec<(&'static str, Term)> {
    let t = |s: &str| parse_term(s).expect("table term");
    let by_id = |id: RelationId| relation_templates().into_iter().find(|r| r.id == id).expect("template").sides[0].1.clone();
    vec![
        ("{1i,2i},(1o)", t("c2o(mc(x1c,x2c))")),
        ("{2i},(1i,1o)", t("mo(x1o,c2o(x2c))")),
        ("{1i,1o},(2i)", t("o2c(mo(c2o(x1c),x2o))")),
        ("{1o},(1i,2i)", t("o2c(mo(x1o,x2o))")),
        ("{1i,2i,1o,2o}", by_id(RelationId::R7)),
        ("(1i,2i,2o,1o)", by_id(RelationId::R8)),
        ("(1i,2o,2i,1o)", by_id(RelationId::R9)),
        ("{1i,1o},(2i,2o)", by_id(RelationId::R10)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal::type_of;
    use crate::syntax::parse_type;

    #[test]
    fn all_sides_share_type_and_degree() {
        let ts = relation_templates();
        assert_eq!(
            ts.iter().map(|t| t.id).collect::<std::collections::BTreeSet<_>>().len(),
            13
        );
        for r in &ts {
            let s0 = type_of(&r.sides[0].1);
            for (_, side) in &r.sides {
                assert_eq!(type_of(side), s0, "{} side {side}", r.id.name());
                assert_eq!(side.degree(), r.degree());
            }
        }
    }

    #[test]
    fn printed_types() {
        for (ty, t) in printed_type_table() {
            assert_eq!(type_of(&t).to_string(), ty);
            assert_eq!(type_of(&t), parse_type(ty).unwrap());
        }
    }

    #[test]
    fn only_r6_is_flagged_redundant() {
        let flagged: Vec<RelationId> = RelationId::ALL.into_iter().filter(|r| r.is_redundant()).collect();
        assert_eq!(flagged, vec![RelationId::R6]);
    }
}
