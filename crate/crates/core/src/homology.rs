//! Graded homology of path components as span modulo relations, computed
//! exactly at a finite vertex cap.
//!
//! The span of a component in degree `d` at cap `V` is every term of that
//! type with `d` BV vertices and at most `V` vertices. Relation rows are the
//! template instances found inside terms of at most `V + slack` vertices
//! whose every side also fits. Columns are ordered largest term first, so
//! pivots eat the big terms first; the homology at cap `V` is the image of
//! the small span in that quotient. Without slack, classes sitting at the
//! cap survive only because the relations killing them do not fit.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::enumerate::enumerate_terms;
use crate::error::{Error, Result};
use crate::generator::{Generator, Port};
use crate::label::{Color, Label};
use crate::linalg::{normalize_int_row, rational, to_row, Echelon, Row};
use crate::normal::{build_normal_form, core_cycle, type_of, Builder, Item};
use crate::relations::{engine_templates, RelationId, RelationTemplate};
use crate::surface::{check_perm, split_at_pair, SurfaceType};
use crate::term::{permutation_sign, Match, RawTerm, Src, Target, Term};

/// A rational combination of terms sharing one type and one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassVector {
    ty: SurfaceType,
    degree: usize,
    terms: BTreeMap<Term, BigRational>,
}

impl ClassVector {
    pub fn zero(ty: SurfaceType, degree: usize) -> Self {
        ClassVector { ty, degree, terms: BTreeMap::new() }
    }

    pub fn from_term(t: &Term) -> Self {
        let mut v = Self::zero(type_of(t), t.degree());
        v.terms.insert(t.clone(), BigRational::one());
        v
    }

    pub fn from_terms(items: impl IntoIterator<Item = (BigRational, Term)>) -> Result<Self> {
        let mut items = items.into_iter();
        let (c, t) = items.next().ok_or_else(|| Error::Inhomogeneous("no terms".into()))?;
        let mut v = Self::zero(type_of(&t), t.degree());
        v.add_term(c, t)?;
        for (c, t) in items {
            v.add_term(c, t)?;
        }
        Ok(v)
    }

    pub fn add_term(&mut self, c: BigRational, t: Term) -> Result<()> {
        if t.degree() != self.degree {
            return Err(Error::Inhomogeneous(format!("degree {} term in a degree {} vector", t.degree(), self.degree)));
        }
        let ty = type_of(&t);
        if ty != self.ty {
            return Err(Error::Inhomogeneous(format!("term of type {ty} in a vector of type {}", self.ty)));
        }
        let entry = self.terms.entry(t).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
        Ok(())
    }

    pub fn ty(&self) -> &SurfaceType {
        &self.ty
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Term, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, c: &BigRational) -> Self {
        let mut v = Self::zero(self.ty.clone(), self.degree);
        if !c.is_zero() {
            v.terms = self.terms.iter().map(|(t, x)| (t.clone(), x * c)).collect();
        }
        v
    }

    pub fn plus(&self, other: &ClassVector) -> Result<Self> {
        let mut v = self.clone();
        for (t, c) in &other.terms {
            v.add_term(c.clone(), t.clone())?;
        }
        Ok(v)
    }
}

/// Relation rows over `span`, as normalized integer rows of column indices.
/// A row is kept only when every side of the instance lies in the span.
pub fn instantiate_relations(span: &[Term], templates: &[RelationTemplate]) -> Vec<Vec<(usize, i64)>> {
    let index: HashMap<&Term, usize> = span.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let mut seen = HashSet::new();
    let mut rows = Vec::new();
    let keep = |n: u32| n;
    for host in span {
        for r in templates {
            for (_, side) in r.sides.iter().filter(|(_, s)| !s.is_identity()) {
                for m in host.find_matches(side) {
                    let mut row = Vec::with_capacity(r.sides.len());
                    let mut complete = true;
                    for (c, other) in &r.sides {
                        let (t, sign) = host.replace(&m, other, &keep);
                        match index.get(&t) {
                            Some(&k) => row.push((k, c * sign as i64)),
                            None => {
                                complete = false;
                                break;
                            }
                        }
                    }
                    if !complete {
                        continue;
                    }
                    normalize_int_row(&mut row);
                    if !row.is_empty() && seen.insert(row.clone()) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    rows
}

/// Extra vertices allowed in relation instances beyond the span cap.
pub const DEFAULT_SLACK: usize = 2;

/// One graded piece of a component, reduced modulo its relations.
#[derive(Debug, Clone)]
pub struct Component {
    ty: SurfaceType,
    degree: usize,
    cap: usize,
    slack: usize,
    terms: Vec<Term>,
    small: usize,
    index: HashMap<Term, usize>,
    echelon: Echelon,
    rows: usize,
    basis: Vec<usize>,
}

impl Component {
    pub fn build(ty: &SurfaceType, degree: usize, cap: usize) -> Self {
        Self::build_with(ty, degree, cap, DEFAULT_SLACK, &engine_templates())
    }

    pub fn build_with(ty: &SurfaceType, degree: usize, cap: usize, slack: usize, templates: &[RelationTemplate]) -> Self {
        let mut terms = enumerate_terms(ty, degree, cap + slack);
        terms.reverse();
        let mut rows = instantiate_relations(&terms, templates);
        // short rows first keeps fill-in low
        rows.sort_by_key(|r| r.len());
        let mut echelon = Echelon::new();
        for r in &rows {
            echelon.insert(to_row(r));
        }
        let first_small = terms.iter().position(|t| t.vertex_count() <= cap).unwrap_or(terms.len());
        let mut basis: Vec<usize> = (first_small..terms.len()).filter(|&c| !echelon.is_pivot(c)).collect();
        basis.reverse();
        let index = terms.iter().enumerate().map(|(k, t)| (t.clone(), k)).collect();
        let small = terms.len() - first_small;
        Component { ty: ty.clone(), degree, cap, slack, terms, small, index, echelon, rows: rows.len(), basis }
    }

    /// Number of span terms within the cap.
    pub fn span_size(&self) -> usize {
        self.small
    }

    pub fn relation_rows(&self) -> usize {
        self.rows
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn slack(&self) -> usize {
        self.slack
    }

    /// Basis representatives, smallest terms first.
    pub fn basis_terms(&self) -> Vec<&Term> {
        self.basis.iter().map(|&c| &self.terms[c]).collect()
    }

    /// Coordinates of `v` in the basis.
    pub fn reduce(&self, v: &ClassVector) -> Result<Vec<BigRational>> {
        if v.ty != self.ty || v.degree != self.degree {
            return Err(Error::Inhomogeneous(format!("vector of {} degree {} in component {} degree {}", v.ty, v.degree, self.ty, self.degree)));
        }
        let mut row = Row::new();
        for (t, c) in &v.terms {
            let k = *self.index.get(t).ok_or(Error::OutsideSpan(self.cap))?;
            row.insert(k, c.clone());
        }
        let reduced = self.echelon.reduce(row);
        if reduced.keys().any(|c| !self.basis.contains(c)) {
            return Err(Error::OutsideSpan(self.cap));
        }
        Ok(self.basis.iter().map(|c| reduced.get(c).cloned().unwrap_or_else(BigRational::zero)).collect())
    }
}

/// Graded dimensions of one component at a cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDims {
    pub cap: usize,
    pub slack: usize,
    /// Nonzero dimensions by degree.
    pub dims: BTreeMap<usize, usize>,
    /// Span sizes by degree (every degree with a nonempty span).
    pub spans: BTreeMap<usize, usize>,
    /// Whether the dimensions agree with those at `cap - 2`.
    pub stable: bool,
}

impl GradedDims {
    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }
}

type DimsAt = (BTreeMap<usize, usize>, BTreeMap<usize, usize>);

fn dims_at(ty: &SurfaceType, cap: usize, slack: usize, templates: &[RelationTemplate]) -> Result<DimsAt> {
    let mut dims = BTreeMap::new();
    let mut spans = BTreeMap::new();
    for d in 0.. {
        let c = Component::build_with(ty, d, cap, slack, templates);
        if c.span_size() == 0 {
            if d == 0 {
                return Err(Error::InsufficientCap { cap, what: ty.to_string() });
            }
            break;
        }
        spans.insert(d, c.span_size());
        if c.dim() > 0 {
            dims.insert(d, c.dim());
        }
    }
    Ok((dims, spans))
}

pub fn graded_dims(ty: &SurfaceType, cap: usize) -> Result<GradedDims> {
    graded_dims_with(ty, cap, DEFAULT_SLACK)
}

/// Graded dimensions with an explicit relation slack. Stability compares
/// against `cap - 2`, since within one degree the vertex count of a type
/// has fixed parity.
pub fn graded_dims_with(ty: &SurfaceType, cap: usize, slack: usize) -> Result<GradedDims> {
    let templates = engine_templates();
    let (dims, spans) = dims_at(ty, cap, slack, &templates)?;
    let stable = cap >= 2 && dims_at(ty, cap - 2, slack, &templates).map(|(d, _)| d == dims).unwrap_or(false);
    Ok(GradedDims { cap, slack, dims, spans, stable })
}

/// Basis representatives of every degree, degree 0 first. Degree 0 is
/// represented by the normal form.
pub fn canonical_basis(ty: &SurfaceType, cap: usize) -> Result<Vec<ClassVector>> {
    let mut out = vec![ClassVector::from_term(&build_normal_form(ty)?)];
    if enumerate_terms(ty, 0, cap).is_empty() {
        return Err(Error::InsufficientCap { cap, what: ty.to_string() });
    }
    for d in 1.. {
        let c = Component::build(ty, d, cap);
        if c.span_size() == 0 {
            break;
        }
        out.extend(c.basis_terms().into_iter().map(ClassVector::from_term));
    }
    Ok(out)
}

/// Coordinates of `v` in the canonical basis of its degree. In degree 0
/// every term is equivalent to the normal form, so the single coordinate is
/// the sum of the coefficients.
pub fn reduce_class(v: &ClassVector, cap: usize) -> Result<Vec<BigRational>> {
    if v.degree == 0 {
        let sum = v.terms.values().fold(BigRational::zero(), |a, c| a + c);
        return Ok(vec![sum]);
    }
    Component::build(&v.ty, v.degree, cap).reduce(v)
}

/// Whether every dual-relation row within the cap already lies in the span
/// of the other relations, instantiated with the default slack.
pub fn check_r6_redundancy(ty: &SurfaceType, cap: usize) -> Result<bool> {
    check_r6_redundancy_with(ty, cap, DEFAULT_SLACK)
}

pub fn check_r6_redundancy_with(ty: &SurfaceType, cap: usize, slack: usize) -> Result<bool> {
    let (r6, others): (Vec<RelationTemplate>, Vec<RelationTemplate>) =
        engine_templates().into_iter().partition(|r| r.id == RelationId::R6);
    relations_implied(ty, cap, slack, &r6, &others)
}

/// Whether every row of `candidates` within the cap lies in the span of the
/// rows of `others` at `cap + slack`.
pub fn relations_implied(
    ty: &SurfaceType,
    cap: usize,
    slack: usize,
    candidates: &[RelationTemplate],
    others: &[RelationTemplate],
) -> Result<bool> {
    if enumerate_terms(ty, 0, cap).is_empty() {
        return Err(Error::InsufficientCap { cap, what: ty.to_string() });
    }
    for d in 0.. {
        let small = enumerate_terms(ty, d, cap);
        if small.is_empty() {
            return Ok(true);
        }
        let c = Component::build_with(ty, d, cap, slack, others);
        for row in instantiate_relations(&small, candidates) {
            let mapped: Row = row.iter().map(|&(k, v)| (c.index[&small[k]], rational(v))).collect();
            if !c.echelon.reduce(mapped).is_empty() {
                return Ok(false);
            }
        }
    }
    unreachable!()
}

/// Poincaré polynomial coefficients of the configuration space of `f`
/// framed and `l` unframed points in the plane. Only `l <= 1` is covered.
pub fn oracle_poincare(f: usize, l: usize) -> Option<Vec<u64>> {
    if l > 1 {
        return None;
    }
    let mul = |p: &[u64], a: u64| {
        let mut q = vec![0u64; p.len() + 1];
        for (k, &c) in p.iter().enumerate() {
            q[k] += c;
            q[k + 1] += a * c;
        }
        q
    };
    let mut p = vec![1u64];
    for j in 1..(f + l) as u64 {
        p = mul(&p, j);
    }
    for _ in 0..f {
        p = mul(&p, 1);
    }
    Some(p)
}

fn is_red(g: Generator) -> bool {
    matches!(g, Generator::MO | Generator::EO | Generator::CO)
}

/// Contraction of two open inputs of a single term. The open core holding
/// the boundary is cut at `i` and `j`; the arc holding the root stays a
/// spine and the other arc is closed up and attached through
/// `c2o(o2c(..))`. Remaining inputs are renumbered in order.
pub fn psi_contract_term(t: &Term, i: Label, j: Label) -> Result<(Term, i32)> {
    type_of(t).self_sew_open(i, j)?;
    let n = t.gens.len();
    let Some(Target::Vertex(v0, _)) = t.input_target(i.index) else {
        return Err(Error::ContractionZero(format!("{i} is not attached to a vertex")));
    };
    let targets = t.targets();
    let mut core = vec![false; n];
    let mut stack = vec![v0];
    while let Some(u) = stack.pop() {
        if core[u] || !is_red(t.gens[u]) {
            continue;
        }
        core[u] = true;
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
    let cycle = core_cycle(t, &core);
    let at = |l: Label| {
        cycle
            .iter()
            .position(|&(v, p)| matches!(p, Port::In(k) if t.ins[v][k] == Src::Input(l.index)))
            .expect("input on the core boundary")
    };
    let positions: Vec<usize> = (0..cycle.len()).collect();
    let (u, w) = split_at_pair(&positions, &at(i), &at(j));
    let sink_of = |pos: usize| match cycle[pos] {
        (v, Port::Out(p)) => Some(targets[v][p].expect("wired")),
        _ => None,
    };
    let root = positions
        .iter()
        .copied()
        .filter_map(|p| sink_of(p).map(|s| (p, s)))
        .min_by_key(|&(_, s)| match s {
            Target::Output(o) => (0, o as usize),
            Target::Vertex(v, _) => (1, v),
        })
        .map(|(p, _)| p)
        .expect("core has an output");
    let (main, other) = if u.contains(&root) { (u, w) } else { (w, u) };
    let mut sources = Vec::new();
    let mut sinks = Vec::new();
    let mut item = |pos: usize| match cycle[pos] {
        (v, Port::In(k)) => {
            sources.push(t.ins[v][k]);
            Item::Label(Label::input(sources.len() as u32))
        }
        (v, Port::Out(p)) => {
            sinks.push(targets[v][p].expect("wired"));
            Item::Label(Label::output(sinks.len() as u32))
        }
    };
    let other_items: Vec<Item> = other.iter().map(|&p| item(p)).collect();
    let r = main.iter().position(|&p| p == root).unwrap();
    let mut main_items: Vec<Item> = main[r + 1..].iter().chain(&main[..r]).map(|&p| item(p)).collect();
    let root_item = item(root);
    let mut b = Builder::new();
    let closed_up = b.form1(&other_items);
    let o2c = b.add(Generator::O2C, vec![closed_up]);
    let c2o = b.add(Generator::C2O, vec![Src::Vertex(o2c, 0)]);
    main_items.push(Item::Source(Src::Vertex(c2o, 0)));
    let spine = b.form1(&main_items);
    let Item::Label(root_label) = root_item else { unreachable!() };
    b.output(root_label, Color::Open, spine);
    let piece = b.finish_unchecked();
    let removed = [i.index.min(j.index), i.index.max(j.index)];
    let rename = |x: u32| x - removed.iter().filter(|&&r| r < x).count() as u32;
    Ok(t.replace(&Match { removed: core, sources, sinks }, &piece, &rename))
}

/// Contraction of a class. Degree 0 classes are contracted term by term;
/// higher degrees are first reduced to the basis at `cap`.
pub fn psi_contract_class(v: &ClassVector, i: Label, j: Label, cap: usize) -> Result<ClassVector> {
    let target = v.ty.self_sew_open(i, j)?;
    let mut out = ClassVector::zero(target, v.degree);
    let items: Vec<(BigRational, Term)> = if v.degree == 0 {
        v.terms.iter().map(|(t, c)| (c.clone(), t.clone())).collect()
    } else {
        let comp = Component::build(&v.ty, v.degree, cap);
        let coords = comp.reduce(v)?;
        coords.into_iter().zip(comp.basis_terms()).map(|(c, t)| (c, t.clone())).collect()
    };
    for (c, t) in items {
        if c.is_zero() {
            continue;
        }
        let (s, sign) = psi_contract_term(&t, i, j)?;
        out.add_term(c * rational(sign as i64), s)?;
    }
    Ok(out)
}

fn reverse(g: Generator) -> Generator {
    match g {
        Generator::C2O => Generator::O2C,
        Generator::O2C => Generator::C2O,
        g => g,
    }
}

/// Cyclic action on a one-output term. Positions `1..=n` are the inputs and
/// `n + 1` the output; the puncture at position `p` moves to `sigma[p-1]`.
/// When an input becomes the output the tree is re-rooted along the path
/// from that input to the old output.
pub fn cyclic_act_term(t: &Term, sigma: &[u32]) -> Result<(Term, i32)> {
    if t.num_outputs() != 1 {
        return Err(Error::NotSingleOutput);
    }
    let n = t.num_inputs();
    check_perm(sigma, n + 1)?;
    let top = n as u32 + 1;
    let p = sigma.iter().position(|&x| x == top).unwrap() as u32 + 1;
    let bv_ids: Vec<usize> = (0..t.gens.len()).filter(|&v| t.gens[v] == Generator::BV).collect();
    let sign_of = |order: &[usize]| {
        let actual: Vec<usize> = order.iter().copied().filter(|&v| t.gens[v] == Generator::BV).collect();
        permutation_sign(&bv_ids, &actual)
    };
    if p == top {
        let (s, order) = t.act_symmetric_ordered(&sigma[..n], &[1])?;
        return Ok((s, sign_of(&order)));
    }
    if t.is_identity() {
        return Ok((t.clone(), 1));
    }
    let relabel = |s: Src| match s {
        Src::Input(r) => Src::Input(sigma[r as usize - 1]),
        other => other,
    };
    let targets = t.targets();
    let mut path = Vec::new();
    let mut at = t.input_target(p).expect("input exists");
    while let Target::Vertex(v, q) = at {
        path.push((v, q));
        at = targets[v][0].expect("wired");
    }
    let mut raw = RawTerm {
        gens: t.gens.clone(),
        ins: t.ins.iter().map(|ports| ports.iter().map(|&s| relabel(s)).collect()).collect(),
        outs: Vec::new(),
    };
    for (k, &(v, q)) in path.iter().enumerate() {
        let parent = match path.get(k + 1) {
            Some(&(w, _)) => Src::Vertex(w, 0),
            None => Src::Input(sigma[n]),
        };
        let old = &raw.ins[v];
        let new = match t.gens[v] {
            Generator::MO if q == 0 => vec![old[1], parent],
            Generator::MO => vec![parent, old[0]],
            Generator::MC => {
                let mut x = old.clone();
                x[q] = parent;
                x
            }
            _ => vec![parent],
        };
        raw.ins[v] = new;
        raw.gens[v] = reverse(t.gens[v]);
    }
    let (v0, _) = path[0];
    raw.outs.push((raw.gens[v0].outputs()[0], Src::Vertex(v0, 0)));
    let (s, order) = raw.canonical();
    Ok((s, sign_of(&order)))
}

pub fn cyclic_act_class(v: &ClassVector, sigma: &[u32]) -> Result<ClassVector> {
    let ty = v.ty.cyclic_act(sigma)?;
    let mut out = ClassVector::zero(ty, v.degree);
    for (t, c) in &v.terms {
        let (s, sign) = cyclic_act_term(t, sigma)?;
        out.add_term(c * rational(sign as i64), s)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::lbl;
    use crate::syntax::{parse_term, parse_type};

    fn ty(s: &str) -> SurfaceType {
        parse_type(s).unwrap()
    }

    fn term(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(oracle_poincare(1, 0).unwrap(), vec![1, 1]);
        assert_eq!(oracle_poincare(2, 0).unwrap(), vec![1, 3, 3, 1]);
        let p = oracle_poincare(3, 0).unwrap();
        assert_eq!(p.iter().sum::<u64>(), 48);
        assert_eq!(oracle_poincare(0, 1).unwrap(), vec![1]);
        assert!(oracle_poincare(1, 2).is_none());
    }

    #[test]
    fn commutativity_row_exists() {
        let span = enumerate_terms(&ty("{1i,2i,1o}"), 0, 3);
        let rows = instantiate_relations(&span, &engine_templates());
        let a = span.iter().position(|t| *t == term("mc(x1c,x2c)")).unwrap();
        let b = span.iter().position(|t| *t == term("mc(x2c,x1c)")).unwrap();
        let mut want = vec![(a, 1), (b, -1)];
        normalize_int_row(&mut want);
        assert!(rows.contains(&want));
    }

    #[test]
    fn single_unit_term_has_no_rows() {
        let span = enumerate_terms(&ty("{1o}"), 0, 1);
        assert_eq!(span.len(), 1);
        assert!(instantiate_relations(&span, &engine_templates()).is_empty());
    }

    #[test]
    fn koszul_sign_from_context() {
        // o2c(mo(A,B)) with A, B each carrying one BV picks up a sign when swapped
        let host = term("o2c(mo(c2o(bv(x1c)),c2o(bv(x2c))))");
        let r5 = engine_templates().into_iter().find(|r| r.id == RelationId::R5).unwrap();
        let m = host.find_matches(&r5.sides[0].1).pop().unwrap();
        let (same, s0) = host.replace(&m, &r5.sides[0].1, &|x| x);
        let (swapped, s1) = host.replace(&m, &r5.sides[1].1, &|x| x);
        assert_eq!(same, host);
        assert_eq!(s0, 1);
        assert_eq!(swapped, term("o2c(mo(c2o(bv(x2c)),c2o(bv(x1c))))"));
        assert_eq!(s1, -1);
    }

    #[test]
    fn small_dims() {
        let d = graded_dims(&ty("{1i,1o}"), 4).unwrap();
        assert_eq!(d.dims, BTreeMap::from([(0, 1), (1, 1)]));
        assert!(matches!(graded_dims(&ty("{1i,2i,1o}"), 0), Err(Error::InsufficientCap { .. })));
    }

    #[test]
    fn psi_on_open_multiplication() {
        let m3 = term("mo(mo(x1o,x2o),x3o)");
        let (t, s) = psi_contract_term(&m3, lbl("1i"), lbl("2i")).unwrap();
        assert_eq!(s, 1);
        assert_eq!(type_of(&t), ty("(),(1i,1o)"));
        assert_eq!(t, term("mo(x1o,c2o(o2c(eo)))"));
        let (t, _) = psi_contract_term(&m3, lbl("1i"), lbl("3i")).unwrap();
        assert_eq!(type_of(&t), ty("(1i),(1o)"));
        assert_eq!(t, term("c2o(o2c(x1o))"));
        assert!(matches!(psi_contract_term(&term("mc(x1c,x2c)"), lbl("1i"), lbl("2i")), Err(Error::ContractionZero(_))));
    }

    #[test]
    fn cyclic_examples() {
        let (t, _) = cyclic_act_term(&term("c2o(x1c)"), &[2, 1]).unwrap();
        assert_eq!(t, term("o2c(x1o)"));
        let mc = term("mc(x1c,x2c)");
        let (t, _) = cyclic_act_term(&mc, &[2, 3, 1]).unwrap();
        assert_eq!(type_of(&t), type_of(&mc));
        for s in ["mo(x1o,x2o)", "mo(mo(x1o,c2o(x2c)),x3o)", "o2c(mo(x1o,x2o))", "mc(bv(x1c),o2c(x2o))"] {
            let t = term(s);
            let n = t.num_inputs() as u32 + 1;
            for sigma in crate::surface::permutations(&(1..=n).collect::<Vec<_>>()) {
                let (u, _) = cyclic_act_term(&t, &sigma).unwrap();
                assert_eq!(type_of(&u), type_of(&t).cyclic_act(&sigma).unwrap(), "{s} {sigma:?}");
            }
        }
    }

    fn coords(v: &ClassVector, cap: usize) -> Vec<BigRational> {
        reduce_class(v, cap).unwrap()
    }

    #[test]
    fn r13_and_r1_classes_vanish() {
        let v = ClassVector::from_term(&term("bv(o2c(eo))"));
        assert!(coords(&v, 6).iter().all(|c| c.is_zero()));
        let w = ClassVector::from_terms([(rational(1), term("mc(x1c,x2c)")), (rational(-1), term("mc(x2c,x1c)"))]).unwrap();
        assert_eq!(coords(&w, 4), vec![rational(0)]);
    }

    #[test]
    fn circle_basis() {
        let b = canonical_basis(&ty("{1i,1o}"), 6).unwrap();
        let terms: Vec<String> = b.iter().map(|v| v.terms().keys().next().unwrap().to_string()).collect();
        assert_eq!(terms, vec!["x1c", "bv(x1c)"]);
    }

    #[test]
    fn basis_reduces_to_unit_vectors() {
        let s = ty("{1i,2i,1o}");
        for d in 1..=3 {
            let c = Component::build(&s, d, 6);
            for (k, t) in c.basis_terms().into_iter().enumerate() {
                let got = c.reduce(&ClassVector::from_term(t)).unwrap();
                let want: Vec<BigRational> = (0..c.dim()).map(|j| rational((j == k) as i64)).collect();
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn unit_padding_is_invisible() {
        let a = ClassVector::from_term(&term("bv(mc(x1c,ec))"));
        let b = ClassVector::from_term(&term("bv(x1c)"));
        assert_eq!(coords(&a, 6), coords(&b, 6));
    }

    #[test]
    fn inhomogeneous_vectors_are_rejected() {
        let r = ClassVector::from_terms([(rational(1), term("x1c")), (rational(1), term("bv(x1c)"))]);
        assert!(matches!(r, Err(Error::Inhomogeneous(_))));
    }

    #[test]
    fn psi_class_of_open_multiplication() {
        let v = ClassVector::from_term(&term("mo(mo(x1o,x2o),x3o)"));
        let w = psi_contract_class(&v, lbl("1i"), lbl("3i"), 4).unwrap();
        assert_eq!(w.ty(), &ty("(1i),(1o)"));
        assert_eq!(coords(&w, 4), vec![rational(1)]);
        let closed = ClassVector::from_term(&term("mc(x1c,x2c)"));
        assert!(psi_contract_class(&closed, lbl("1i"), lbl("2i"), 4).is_err());
    }

    #[test]
    fn derived_relations_follow_from_the_templates() {
        let derived = crate::relations::derived_templates();
        let base = crate::relations::relation_templates();
        assert!(relations_implied(&ty("{1o}"), 2, 4, &derived, &base).unwrap());
        assert!(!relations_implied(&ty("{1o}"), 2, 2, &derived, &base).unwrap());
    }
}
