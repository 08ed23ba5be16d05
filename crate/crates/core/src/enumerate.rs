//! Exhaustive enumeration of terms of a given type and degree.
//!
//! Unlabeled tree shapes are grown one vertex at a time, deduplicated up to
//! isomorphism, and then labeled in every way compatible with the target
//! type. Generator counts are pruned with the linear identities every tree
//! satisfies: a tree with `V` vertices has `V - 1` wires, so
//! `#outputs = 1 + sum(outs - 1)` and `#inputs = 1 + sum(ins - 1)`.

use std::collections::{BTreeMap, HashSet};

use crate::generator::Generator;
use crate::label::{Color, Label};
use crate::normal::type_of;
use crate::surface::{permutations, SurfaceType};
use crate::term::{RawTerm, Src, Term};

type Counts = [u8; 9];

#[derive(Clone)]
struct Shape {
    gens: Vec<Generator>,
    /// Source feeding each input port, `None` when free.
    ins: Vec<Vec<Option<(usize, usize)>>>,
    /// Target of each output port, `None` when free.
    outs: Vec<Vec<Option<(usize, usize)>>>,
}

const FREE: u8 = 250;
const PARENT: u8 = 251;
const CHILD: u8 = 252;

impl Shape {
    fn single(g: Generator) -> Shape {
        Shape { gens: vec![g], ins: vec![vec![None; g.inputs().len()]], outs: vec![vec![None; g.outputs().len()]] }
    }

    fn counts(&self) -> Counts {
        let mut c = [0u8; 9];
        for g in &self.gens {
            c[g.index()] += 1;
        }
        c
    }

    fn push(&mut self, g: Generator) -> usize {
        self.gens.push(g);
        self.ins.push(vec![None; g.inputs().len()]);
        self.outs.push(vec![None; g.outputs().len()]);
        self.gens.len() - 1
    }

    /// Shapes obtained by attaching `g` at one free port.
    fn extensions(&self, g: Generator, out: &mut Vec<Shape>) {
        for v in 0..self.gens.len() {
            for k in 0..self.ins[v].len() {
                if self.ins[v][k].is_some() {
                    continue;
                }
                let want = self.gens[v].inputs()[k];
                for (p, &c) in g.outputs().iter().enumerate() {
                    if c == want {
                        let mut s = self.clone();
                        let w = s.push(g);
                        s.ins[v][k] = Some((w, p));
                        s.outs[w][p] = Some((v, k));
                        out.push(s);
                    }
                }
            }
            for p in 0..self.outs[v].len() {
                if self.outs[v][p].is_some() {
                    continue;
                }
                let have = self.gens[v].outputs()[p];
                for (k, &c) in g.inputs().iter().enumerate() {
                    if c == have {
                        let mut s = self.clone();
                        let w = s.push(g);
                        s.outs[v][p] = Some((w, k));
                        s.ins[w][k] = Some((v, p));
                        out.push(s);
                    }
                }
            }
        }
    }

    fn encode_from(&self, v: usize, entry: u8, parent: Option<usize>, out: &mut Vec<u8>) {
        out.push(self.gens[v].index() as u8);
        out.push(entry);
        for k in 0..self.ins[v].len() {
            match self.ins[v][k] {
                None => out.push(FREE),
                Some((u, _)) if Some(u) == parent => out.push(PARENT),
                Some((u, p)) => {
                    out.push(CHILD);
                    self.encode_from(u, 10 + p as u8, Some(v), out);
                }
            }
        }
        for p in 0..self.outs[v].len() {
            match self.outs[v][p] {
                None => out.push(FREE),
                Some((u, _)) if Some(u) == parent => out.push(PARENT),
                Some((u, k)) => {
                    out.push(CHILD);
                    self.encode_from(u, 1 + k as u8, Some(v), out);
                }
            }
        }
    }

    /// Isomorphism-invariant key: the smallest encoding over start vertices.
    fn key(&self) -> Vec<u8> {
        let mut best: Option<Vec<u8>> = None;
        for v in 0..self.gens.len() {
            let mut e = Vec::with_capacity(self.gens.len() * 6);
            self.encode_from(v, 0, None, &mut e);
            if best.as_ref().is_none_or(|b| e < *b) {
                best = Some(e);
            }
        }
        best.unwrap_or_default()
    }

    fn free_inputs(&self) -> Vec<(usize, usize)> {
        let mut f = Vec::new();
        for (v, ports) in self.ins.iter().enumerate() {
            for (k, s) in ports.iter().enumerate() {
                if s.is_none() {
                    f.push((v, k));
                }
            }
        }
        f
    }

    fn free_outputs(&self) -> Vec<(usize, usize)> {
        let mut f = Vec::new();
        for (v, ports) in self.outs.iter().enumerate() {
            for (p, s) in ports.iter().enumerate() {
                if s.is_none() {
                    f.push((v, p));
                }
            }
        }
        f
    }

    /// Builds a labeled term. `in_labels[j]` labels the `j`-th free input,
    /// `out_labels[j]` the `j`-th free output.
    fn label(&self, fi: &[(usize, usize)], fo: &[(usize, usize)], in_labels: &[u32], out_labels: &[u32]) -> Term {
        let mut ins: Vec<Vec<Src>> = self
            .ins
            .iter()
            .map(|ports| ports.iter().map(|s| s.map_or(Src::Input(0), |(u, p)| Src::Vertex(u, p))).collect())
            .collect();
        for (&(v, k), &l) in fi.iter().zip(in_labels) {
            ins[v][k] = Src::Input(l);
        }
        let mut outs = vec![(Color::Closed, Src::Input(0)); fo.len()];
        for (&(u, p), &l) in fo.iter().zip(out_labels) {
            outs[l as usize - 1] = (self.gens[u].outputs()[p], Src::Vertex(u, p));
        }
        RawTerm { gens: self.gens.clone(), ins, outs }.canonical().0
    }
}

/// Port-count data of a target type.
#[derive(Debug, Clone, Copy)]
struct Target {
    closed_in: i64,
    open_in: i64,
    closed_out: i64,
    open_out: i64,
    boundaries: i64,
    degree: i64,
}

impl Target {
    fn of(s: &SurfaceType, degree: usize) -> Target {
        let count = |f: &dyn Fn(&Label) -> bool, open: bool| -> i64 {
            if open {
                s.boundaries().iter().flatten().filter(|l| f(l)).count() as i64
            } else {
                s.closed().iter().filter(|l| f(l)).count() as i64
            }
        };
        Target {
            closed_in: count(&|l| l.is_input(), false),
            open_in: count(&|l| l.is_input(), true),
            closed_out: count(&|l| l.is_output(), false),
            open_out: count(&|l| l.is_output(), true),
            boundaries: s.boundaries().len() as i64,
            degree: degree as i64,
        }
    }

    /// Whether a full generator multiset can form a tree of this type.
    fn feasible(&self, c: &Counts) -> bool {
        let n = |g: Generator| c[g.index()] as i64;
        use Generator::*;
        let total: i64 = c.iter().map(|&x| x as i64).sum();
        let n_in = self.closed_in + self.open_in;
        let n_out = self.closed_out + self.open_out;
        let open_edges = 2 * n(MO) + n(CO) + n(O2C) - self.open_in;
        let closed_edges = 2 * n(MC) + n(CC) + n(C2O) + n(BV) - self.closed_in;
        total >= 1
            && n(BV) == self.degree
            && n(CC) + n(CO) == n_out - 1
            && n(MC) + n(MO) - n(EC) - n(EO) == n_in - 1
            && n(MC) - n(EC) - n(CC) + n(C2O) - n(O2C) == self.closed_in - self.closed_out
            && n(EO) + n(C2O) - n(MO) + self.open_in == self.boundaries
            && open_edges >= 0
            && closed_edges >= 0
            && open_edges + closed_edges == total - 1
    }
}

fn all_counts(max_total: usize, keep: &dyn Fn(&Counts) -> bool) -> Vec<Counts> {
    fn rec(i: usize, left: usize, cur: &mut Counts, keep: &dyn Fn(&Counts) -> bool, out: &mut Vec<Counts>) {
        if i == 9 {
            if keep(cur) {
                out.push(*cur);
            }
            return;
        }
        for n in 0..=left {
            cur[i] = n as u8;
            rec(i + 1, left - n, cur, keep, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, max_total, &mut [0; 9], keep, &mut out);
    out
}

fn sub_multisets(c: &Counts, into: &mut HashSet<Counts>) {
    fn rec(i: usize, c: &Counts, cur: &mut Counts, into: &mut HashSet<Counts>) {
        if i == 9 {
            into.insert(*cur);
            return;
        }
        for n in 0..=c[i] {
            cur[i] = n;
            rec(i + 1, c, cur, into);
        }
        cur[i] = 0;
    }
    rec(0, c, &mut [0; 9], into);
}

/// All shapes, up to isomorphism, whose generator counts are allowed.
fn grow_shapes(max_vertices: usize, allowed: &HashSet<Counts>) -> Vec<Shape> {
    let mut all = Vec::new();
    let mut level: Vec<Shape> = Generator::ALL
        .iter()
        .map(|&g| Shape::single(g))
        .filter(|s| allowed.contains(&s.counts()))
        .collect();
    for size in 1..=max_vertices {
        all.extend(level.iter().cloned());
        if size == max_vertices {
            break;
        }
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        let mut buf = Vec::new();
        for s in &level {
            let base = s.counts();
            for g in Generator::ALL {
                let mut c = base;
                c[g.index()] += 1;
                if !allowed.contains(&c) {
                    continue;
                }
                buf.clear();
                s.extensions(g, &mut buf);
                for t in buf.drain(..) {
                    if seen.insert(t.key()) {
                        next.push(t);
                    }
                }
            }
        }
        level = next;
    }
    all
}

/// Every term of type `s` and degree `degree` with at most `max_vertices`
/// generator vertices, sorted by vertex count then canonical encoding.
pub fn enumerate_terms(s: &SurfaceType, degree: usize, max_vertices: usize) -> Vec<Term> {
    let target = Target::of(s, degree);
    let full = all_counts(max_vertices, &|c| target.feasible(c));
    let mut allowed = HashSet::new();
    for c in &full {
        sub_multisets(c, &mut allowed);
    }
    let full: HashSet<Counts> = full.into_iter().collect();
    let mut found: BTreeMap<(usize, String), Term> = BTreeMap::new();
    if degree == 0 && s.puncture_count() == 2 && s.num_inputs() == 1 {
        let id = if s.closed().is_empty() { Term::identity(Color::Open) } else { Term::identity(Color::Closed) };
        if type_of(&id) == *s {
            found.insert((0, id.encode()), id);
        }
    }
    let pick = |open: bool, input: bool| -> Vec<u32> {
        let labels: Vec<Label> = if open {
            s.boundaries().iter().flatten().copied().collect()
        } else {
            s.closed().iter().copied().collect()
        };
        let mut v: Vec<u32> = labels.into_iter().filter(|l| l.is_input() == input).map(|l| l.index).collect();
        v.sort_unstable();
        v
    };
    let (ci, oi, co, oo) = (pick(false, true), pick(true, true), pick(false, false), pick(true, false));
    for shape in grow_shapes(max_vertices, &allowed) {
        if !full.contains(&shape.counts()) {
            continue;
        }
        let fi = shape.free_inputs();
        let fo = shape.free_outputs();
        let in_color = |&(v, k): &(usize, usize)| shape.gens[v].inputs()[k];
        let out_color = |&(v, p): &(usize, usize)| shape.gens[v].outputs()[p];
        let split = |ports: &[(usize, usize)], color: &dyn Fn(&(usize, usize)) -> Color| {
            let (mut c, mut o) = (Vec::new(), Vec::new());
            for (j, p) in ports.iter().enumerate() {
                if color(p) == Color::Closed {
                    c.push(j)
                } else {
                    o.push(j)
                }
            }
            (c, o)
        };
        let (fi_c, fi_o) = split(&fi, &in_color);
        let (fo_c, fo_o) = split(&fo, &out_color);
        if fi_c.len() != ci.len() || fi_o.len() != oi.len() || fo_c.len() != co.len() || fo_o.len() != oo.len() {
            continue;
        }
        let mut in_labels = vec![0u32; fi.len()];
        let mut out_labels = vec![0u32; fo.len()];
        for pci in permutations(&ci) {
            for poi in permutations(&oi) {
                for (&j, &l) in fi_c.iter().zip(&pci).chain(fi_o.iter().zip(&poi)) {
                    in_labels[j] = l;
                }
                for pco in permutations(&co) {
                    for poo in permutations(&oo) {
                        for (&j, &l) in fo_c.iter().zip(&pco).chain(fo_o.iter().zip(&poo)) {
                            out_labels[j] = l;
                        }
                        let t = shape.label(&fi, &fo, &in_labels, &out_labels);
                        if type_of(&t) == *s {
                            found.entry((t.vertex_count(), t.encode())).or_insert(t);
                        }
                    }
                }
            }
        }
    }
    found.into_values().collect()
}

/// Calls `f` on every labeled term of the given degree with `1..=max_vertices`
/// vertices (identities excluded). A term may be visited more than once
/// when its shape has symmetries.
pub fn for_each_term(max_vertices: usize, degree: usize, mut f: impl FnMut(&Term)) {
    let bv = Generator::BV.index();
    let keep = |c: &Counts| (c[bv] as usize) <= degree;
    let mut allowed = HashSet::new();
    for c in all_counts(max_vertices, &keep) {
        allowed.insert(c);
    }
    for shape in grow_shapes(max_vertices, &allowed) {
        if shape.counts()[bv] as usize != degree {
            continue;
        }
        let fi = shape.free_inputs();
        let fo = shape.free_outputs();
        let ins: Vec<u32> = (1..=fi.len() as u32).collect();
        let outs: Vec<u32> = (1..=fo.len() as u32).collect();
        for pi in permutations(&ins) {
            for po in permutations(&outs) {
                f(&shape.label(&fi, &fo, &pi, &po));
            }
        }
    }
}
