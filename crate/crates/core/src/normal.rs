//! Interpretation of terms as types, and the degree-0 normal forms.
//!
//! Degree-0 equivalence is decided semantically: two terms are equivalent
//! exactly when their types agree, and [`build_normal_form`] picks one fixed
//! representative per type.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::generator::{Generator, Port};
use crate::label::{Color, Label};
use crate::surface::{splice, SurfaceType};
use crate::term::{RawTerm, Src, Target, Term};

/// A port of a specific vertex, used while tracing boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct PortRef(usize, Port);

/// Internal open wires as `(provider, output port, receiver, input port)`.
fn open_wires(t: &Term) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for (v, ports) in t.ins.iter().enumerate() {
        for (k, s) in ports.iter().enumerate() {
            if let Src::Vertex(u, p) = *s {
                if t.gens[v].inputs()[k] == Color::Open {
                    out.push((u, p, v, k));
                }
            }
        }
    }
    out
}

/// The type of a term: generator types sewn along every wire.
pub fn type_of(t: &Term) -> SurfaceType {
    let order: Vec<usize> = (0..open_wires(t).len()).collect();
    type_of_in_order(t, &order)
}

/// Number of open wires, the length of an order for [`type_of_in_order`].
pub fn open_wire_count(t: &Term) -> usize {
    open_wires(t).len()
}

/// As [`type_of`], sewing open wires in the given order (a permutation of
/// `0..n_open_wires`). The result does not depend on the order.
pub fn type_of_in_order(t: &Term, order: &[usize]) -> SurfaceType {
    if t.is_identity() {
        let (c, _) = t.outs[0];
        let (i, o) = (Label::input(1), Label::output(1));
        return match c {
            Color::Closed => SurfaceType::from_parts([i, o], Vec::new()),
            Color::Open => SurfaceType::from_parts([], vec![vec![i, o]]),
        };
    }
    let mut cycles: Vec<Option<Vec<PortRef>>> = t
        .gens
        .iter()
        .enumerate()
        .filter_map(|(v, g)| g.boundary().map(|b| Some(b.iter().map(|&p| PortRef(v, p)).collect())))
        .collect();
    let wires = open_wires(t);
    for &w in order {
        let (u, p, v, k) = wires[w];
        let (o, i) = (PortRef(u, Port::Out(p)), PortRef(v, Port::In(k)));
        let find = |r: &PortRef, cs: &[Option<Vec<PortRef>>]| {
            cs.iter().position(|c| c.as_ref().is_some_and(|c| c.contains(r))).expect("port on a cycle")
        };
        let (a, b) = (find(&o, &cycles), find(&i, &cycles));
        let merged = splice(cycles[a].as_ref().unwrap(), &o, cycles[b].as_ref().unwrap(), &i);
        cycles[a] = None;
        cycles[b] = Some(merged);
    }
    let targets = t.targets();
    let label = |r: &PortRef| match *r {
        PortRef(v, Port::In(k)) => match t.ins[v][k] {
            Src::Input(i) => Label::input(i),
            Src::Vertex(..) => unreachable!("internal wire left after sewing"),
        },
        PortRef(v, Port::Out(p)) => match targets[v][p] {
            Some(Target::Output(o)) => Label::output(o),
            _ => unreachable!("internal wire left after sewing"),
        },
    };
    let mut closed = Vec::new();
    for (v, ports) in t.ins.iter().enumerate() {
        for (k, s) in ports.iter().enumerate() {
            if let Src::Input(i) = *s {
                if t.gens[v].inputs()[k] == Color::Closed {
                    closed.push(Label::input(i));
                }
            }
        }
    }
    for (o, (c, _)) in t.outs.iter().enumerate() {
        if *c == Color::Closed {
            closed.push(Label::output(o as u32 + 1));
        }
    }
    let cycles = cycles.into_iter().flatten().map(|c| c.iter().map(label).collect()).collect();
    SurfaceType::from_parts(closed, cycles)
}

/// Boundary cycle, as vertex ports, of an open-connected set of vertices.
pub(crate) fn core_cycle(t: &Term, core: &[bool]) -> Vec<(usize, Port)> {
    let mut cycles: Vec<Option<Vec<PortRef>>> = (0..t.gens.len())
        .filter(|&v| core[v])
        .filter_map(|v| t.gens[v].boundary().map(|b| Some(b.iter().map(|&p| PortRef(v, p)).collect())))
        .collect();
    for (u, p, v, k) in open_wires(t) {
        if !(core[u] && core[v]) {
            continue;
        }
        let (o, i) = (PortRef(u, Port::Out(p)), PortRef(v, Port::In(k)));
        let find = |r: &PortRef| cycles.iter().position(|c| c.as_ref().is_some_and(|c| c.contains(r))).unwrap();
        let (a, b) = (find(&o), find(&i));
        let merged = splice(cycles[a].as_ref().unwrap(), &o, cycles[b].as_ref().unwrap(), &i);
        cycles[a] = None;
        cycles[b] = Some(merged);
    }
    let mut left = cycles.into_iter().flatten();
    let c = left.next().unwrap_or_default();
    debug_assert!(left.next().is_none(), "core must be open-connected");
    c.into_iter().map(|PortRef(v, p)| (v, p)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    /// Purely open spine.
    Form1,
    /// Closed core with open-to-closed attached open trees.
    Form2,
    /// Open spine whose leftmost stem carries a closed-to-open Form2 tree.
    Form3,
    NotNormal,
}

fn is_red(g: Generator) -> bool {
    matches!(g, Generator::MO | Generator::EO | Generator::CO)
}

fn is_green(g: Generator) -> bool {
    matches!(g, Generator::MC | Generator::EC | Generator::CC | Generator::BV)
}

/// Vertices of the subtree hanging off input `k` of `v`, i.e. everything
/// reachable from the source of that port without passing through `v`.
fn subtree(t: &Term, targets: &[Vec<Option<Target>>], v: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let Src::Vertex(start, _) = t.ins[v][k] else { return out };
    let mut stack = vec![start];
    let mut seen = vec![false; t.gens.len()];
    seen[v] = true;
    while let Some(u) = stack.pop() {
        if seen[u] {
            continue;
        }
        seen[u] = true;
        out.push(u);
        for s in &t.ins[u] {
            if let Src::Vertex(w, _) = *s {
                stack.push(w);
            }
        }
        for tg in targets[u].iter().flatten() {
            if let Target::Vertex(w, _) = *tg {
                stack.push(w);
            }
        }
    }
    out
}

/// Green core plus open-to-closed attached red trees, restricted to `verts`.
fn form2_shaped(t: &Term, targets: &[Vec<Option<Target>>], verts: &[usize]) -> bool {
    let mut red_ok = vec![false; t.gens.len()];
    for &v in verts {
        if t.gens[v] == Generator::O2C {
            for u in subtree(t, targets, v, 0) {
                red_ok[u] = true;
            }
        }
    }
    verts.iter().all(|&v| {
        let g = t.gens[v];
        if red_ok[v] {
            is_red(g)
        } else {
            is_green(g) || g == Generator::O2C
        }
    })
}

/// Shape classification; Form1 takes priority over Form2 over Form3.
/// Shapes allow BV vertices in the closed core.
pub fn classify_form(t: &Term) -> Form {
    let all: Vec<usize> = (0..t.gens.len()).collect();
    let (root_color, root) = t.outs[0];
    if root_color == Color::Open && t.gens.iter().all(|&g| is_red(g)) {
        return Form::Form1;
    }
    let targets = t.targets();
    if t.outs.iter().any(|(c, _)| *c == Color::Closed) {
        return if form2_shaped(t, &targets, &all) { Form::Form2 } else { Form::NotNormal };
    }
    // walk the leftmost stem down to the closed-to-open vertex
    let mut cur = root;
    loop {
        match cur {
            Src::Vertex(v, _) if matches!(t.gens[v], Generator::MO | Generator::CO) => cur = t.ins[v][0],
            Src::Vertex(v, _) if t.gens[v] == Generator::C2O => {
                let inner = subtree(t, &targets, v, 0);
                let mut outer_ok = true;
                for u in 0..t.gens.len() {
                    if u != v && !inner.contains(&u) && !is_red(t.gens[u]) {
                        outer_ok = false;
                    }
                }
                let inner_ok = match t.ins[v][0] {
                    Src::Input(_) => true,
                    Src::Vertex(..) => form2_shaped(t, &targets, &inner),
                };
                return if outer_ok && inner_ok { Form::Form3 } else { Form::NotNormal };
            }
            _ => return Form::NotNormal,
        }
    }
}

/// Builder for terms whose free ports carry given labels.
pub(crate) struct Builder {
    gens: Vec<Generator>,
    ins: Vec<Vec<Src>>,
    outs: BTreeMap<u32, (Color, Src)>,
}

#[derive(Clone, Copy)]
pub(crate) enum Item {
    Label(Label),
    /// A ready-made open source standing in for an input.
    Source(Src),
}

impl Builder {
    pub(crate) fn new() -> Self {
        Builder { gens: Vec::new(), ins: Vec::new(), outs: BTreeMap::new() }
    }

    pub(crate) fn add(&mut self, g: Generator, ins: Vec<Src>) -> usize {
        self.gens.push(g);
        self.ins.push(ins);
        self.gens.len() - 1
    }

    pub(crate) fn output(&mut self, l: Label, color: Color, s: Src) {
        self.outs.insert(l.index, (color, s));
    }

    /// Left-to-right open spine reading `seq`; returns the root source.
    pub(crate) fn form1(&mut self, seq: &[Item]) -> Src {
        let mut acc: Option<Src> = None;
        for item in seq {
            let input = match *item {
                Item::Label(l) if l.is_input() => Some(Src::Input(l.index)),
                Item::Source(s) => Some(s),
                Item::Label(_) => None,
            };
            acc = Some(match (acc, input) {
                (None, Some(s)) => s,
                (Some(a), Some(s)) => Src::Vertex(self.add(Generator::MO, vec![a, s]), 0),
                (prev, None) => {
                    let a = prev.unwrap_or_else(|| Src::Vertex(self.add(Generator::EO, vec![]), 0));
                    let v = self.add(Generator::CO, vec![a]);
                    let Item::Label(l) = *item else { unreachable!() };
                    self.output(l, Color::Open, Src::Vertex(v, 1));
                    Src::Vertex(v, 0)
                }
            });
        }
        acc.unwrap_or_else(|| Src::Vertex(self.add(Generator::EO, vec![]), 0))
    }

    /// Closed fan over the closed inputs and boundaries, then one closed
    /// comultiplication per extra closed output. Returns the root source.
    fn form2(&mut self, closed_inputs: &[Label], boundaries: &[Vec<Label>], extra_outputs: &[Label]) -> Src {
        let mut leaves: Vec<Src> = closed_inputs.iter().map(|l| Src::Input(l.index)).collect();
        for c in boundaries {
            let seq: Vec<Item> = c.iter().map(|&l| Item::Label(l)).collect();
            let r = self.form1(&seq);
            leaves.push(Src::Vertex(self.add(Generator::O2C, vec![r]), 0));
        }
        let mut acc = match leaves.split_first() {
            None => Src::Vertex(self.add(Generator::EC, vec![]), 0),
            Some((&first, rest)) => {
                rest.iter().fold(first, |a, &s| Src::Vertex(self.add(Generator::MC, vec![a, s]), 0))
            }
        };
        for &y in extra_outputs {
            let v = self.add(Generator::CC, vec![acc]);
            self.output(y, Color::Closed, Src::Vertex(v, 1));
            acc = Src::Vertex(v, 0);
        }
        acc
    }

    /// The built wiring without validation; free ports keep their indices.
    pub(crate) fn finish_unchecked(self) -> Term {
        Term { gens: self.gens, ins: self.ins, outs: self.outs.into_values().collect() }
    }

    fn finish(self) -> Result<Term> {
        RawTerm { gens: self.gens, ins: self.ins, outs: self.outs.into_values().collect() }.validate()
    }
}

/// Linearization of a cycle starting just after `root` and ending before it.
fn after(cycle: &[Label], root: Label) -> Vec<Label> {
    let p = cycle.iter().position(|&l| l == root).expect("root on cycle");
    cycle[p + 1..].iter().chain(&cycle[..p]).copied().collect()
}

/// Form1 tree for a single open boundary with the given root output.
pub fn build_form1(cycle: &[Label], root: Label) -> Result<Term> {
    if !root.is_output() || !cycle.contains(&root) {
        return Err(Error::MissingLabel(root));
    }
    let mut b = Builder::new();
    let seq: Vec<Item> = after(cycle, root).into_iter().map(Item::Label).collect();
    let r = b.form1(&seq);
    b.output(root, Color::Open, r);
    b.finish()
}

/// The fixed degree-0 representative of a type.
pub fn build_normal_form(s: &SurfaceType) -> Result<Term> {
    if !s.has_output() {
        return Err(Error::NoOutput);
    }
    let closed_out: Vec<Label> = s.closed().iter().copied().filter(|l| l.is_output()).collect();
    let closed_in: Vec<Label> = s.closed().iter().copied().filter(|l| l.is_input()).collect();
    if s.closed().is_empty() && s.boundaries().len() == 1 {
        let c = &s.boundaries()[0];
        let root = *c.iter().filter(|l| l.is_output()).min().expect("output on the boundary");
        return build_form1(c, root);
    }
    let mut b = Builder::new();
    if let Some((&root, extra)) = closed_out.split_first() {
        let r = b.form2(&closed_in, s.boundaries(), extra);
        b.output(root, Color::Closed, r);
        return b.finish();
    }
    let root = s.labels().filter(|l| l.is_output()).min().expect("has an output");
    let home = s.cycle_of(root).expect("open root");
    let others: Vec<Vec<Label>> =
        s.boundaries().iter().enumerate().filter(|(k, _)| *k != home).map(|(_, c)| c.clone()).collect();
    let core = b.form2(&closed_in, &others, &[]);
    let x = Src::Vertex(b.add(Generator::C2O, vec![core]), 0);
    let mut seq = vec![Item::Source(x)];
    seq.extend(after(&s.boundaries()[home], root).into_iter().map(Item::Label));
    let r = b.form1(&seq);
    b.output(root, Color::Open, r);
    b.finish()
}

pub fn normalize0(t: &Term) -> Result<Term> {
    if t.degree() > 0 {
        return Err(Error::PositiveDegree(t.degree()));
    }
    build_normal_form(&type_of(t))
}

pub fn equiv0(a: &Term, b: &Term) -> Result<bool> {
    for t in [a, b] {
        if t.degree() > 0 {
            return Err(Error::PositiveDegree(t.degree()));
        }
    }
    Ok(type_of(a) == type_of(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::lbl;
    use crate::syntax::{parse_term, parse_type};
    use crate::surface::{enumerate_types, TypeSignature};

    fn term(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn ty(s: &str) -> SurfaceType {
        parse_type(s).unwrap()
    }

    #[test]
    fn type_of_examples() {
        assert_eq!(type_of(&term("mc(x1c,x2c)")), ty("{1i,2i,1o}"));
        assert_eq!(type_of(&term("o2c(mo(c2o(x1c),x2o))")), ty("{1i,1o},(2i)"));
        assert_eq!(type_of(&term("bv(o2c(eo))")), ty("{1o},()"));
        for g in Generator::ALL {
            assert_eq!(type_of(&Term::generator(g)), g.signature(), "{g}");
        }
    }

    #[test]
    fn type_of_matches_type_level_sewing() {
        let co = Term::generator(Generator::CO);
        let mo = Term::generator(Generator::MO);
        let t = co.compose(lbl("1o"), &mo, lbl("1i")).unwrap();
        let s = Generator::CO.signature().sew_open(lbl("1o"), &Generator::MO.signature(), lbl("1i")).unwrap();
        assert_eq!(type_of(&t), s);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_form(&term("eo")), Form::Form1);
        assert_eq!(classify_form(&term("o2c(eo)")), Form::Form2);
        assert_eq!(classify_form(&term("mo(c2o(ec),x1o)")), Form::Form3);
        assert_eq!(classify_form(&term("o2c(c2o(x1c))")), Form::NotNormal);
    }

    #[test]
    fn form1_examples() {
        let t = build_form1(&[lbl("1i"), lbl("1o")], lbl("1o")).unwrap();
        assert!(t.is_identity());
        assert_eq!(build_form1(&[lbl("1i"), lbl("2i"), lbl("1o")], lbl("1o")).unwrap(), Term::generator(Generator::MO));
        let c = [lbl("1i"), lbl("2o"), lbl("2i"), lbl("1o")];
        assert_eq!(type_of(&build_form1(&c, lbl("1o")).unwrap()), ty("(1i,2o,2i,1o)"));
        assert!(build_form1(&c, lbl("3o")).is_err());
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(build_normal_form(&ty("{1o},()")).unwrap(), term("o2c(eo)"));
        assert_eq!(build_normal_form(&ty("(1i,2i,1o)")).unwrap(), Term::generator(Generator::MO));
        let s = ty("{1i,4i,3o},(1o,2i),(2o,5i,3i),()");
        let t = build_normal_form(&s).unwrap();
        assert_eq!(classify_form(&t), Form::Form2);
        assert_eq!(type_of(&t), s);
        assert!(build_normal_form(&ty("{1i}")).is_err());
    }

    #[test]
    fn normalize_examples() {
        let left = term("mo(mo(x1o,x2o),x3o)");
        let right = term("mo(x1o,mo(x2o,x3o))");
        assert_eq!(normalize0(&left).unwrap(), normalize0(&right).unwrap());
        let ab = term("mc(x1c,x2c)");
        let ba = term("mc(x2c,x1c)");
        assert_eq!(normalize0(&ab).unwrap(), normalize0(&ba).unwrap());
        let n = normalize0(&left).unwrap();
        assert_eq!(normalize0(&n).unwrap(), n);
        assert!(matches!(normalize0(&term("bv(x1c)")), Err(Error::PositiveDegree(1))));
    }

    #[test]
    fn equiv_examples() {
        assert!(!equiv0(&term("mo(x1o,x2o)"), &term("mo(x2o,x1o)")).unwrap());
        let a = term("o2c(mo(x1o,x2o))");
        let b = term("o2c(mo(x2o,x1o))");
        assert!(equiv0(&a, &b).unwrap());
        assert!(equiv0(&a, &normalize0(&a).unwrap()).unwrap());
    }

    #[test]
    fn normal_forms_are_surjective_on_small_types() {
        for n in 0..=2 {
            for p in 0..=2 {
                for m in 0..=1 {
                    for q in 0..=1 {
                        if m + q == 0 || n + p + m + q > 4 {
                            continue;
                        }
                        let sig = TypeSignature { closed_in: n, open_in: p, closed_out: m, open_out: q };
                        for s in enumerate_types(sig, None, 1) {
                            let t = build_normal_form(&s).unwrap();
                            assert_eq!(type_of(&t), s);
                            assert_ne!(classify_form(&t), Form::NotNormal, "{s}");
                        }
                    }
                }
            }
        }
    }
}
