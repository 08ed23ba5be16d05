//! Rigid trees of generators: the free 2-colored dioperad.
//!
//! A [`Term`] stores, for every vertex input port and every free output, the
//! source feeding it. Sources are either a vertex output port or a free input.
//! Terms are kept canonical: vertices are numbered in depth-first order from
//! free output `1o`, visiting input ports before output ports. Two terms are
//! structurally equal exactly when their canonical forms are equal, and the
//! depth-first order of the BV vertices is the reference orientation used for
//! Koszul signs.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::label::{Color, Label};
use crate::surface::check_perm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Src {
    /// Output `port` of vertex `v`.
    Vertex(usize, usize),
    /// Free input with the given index.
    Input(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    /// Input `port` of vertex `v`.
    Vertex(usize, usize),
    /// Free output with the given index.
    Output(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub(crate) gens: Vec<Generator>,
    pub(crate) ins: Vec<Vec<Src>>,
    /// Free outputs in label order, with their color.
    pub(crate) outs: Vec<(Color, Src)>,
}

/// Uncanonicalized wiring with the same layout as [`Term`].
#[derive(Debug, Clone, Default)]
pub struct RawTerm {
    pub gens: Vec<Generator>,
    pub ins: Vec<Vec<Src>>,
    pub outs: Vec<(Color, Src)>,
}

impl RawTerm {
    pub(crate) fn targets(&self) -> Vec<Vec<Option<Target>>> {
        let mut t: Vec<Vec<Option<Target>>> = self.gens.iter().map(|g| vec![None; g.outputs().len()]).collect();
        for (v, ports) in self.ins.iter().enumerate() {
            for (k, s) in ports.iter().enumerate() {
                if let Src::Vertex(u, p) = *s {
                    t[u][p] = Some(Target::Vertex(v, k));
                }
            }
        }
        for (k, (_, s)) in self.outs.iter().enumerate() {
            if let Src::Vertex(u, p) = *s {
                t[u][p] = Some(Target::Output(k as u32 + 1));
            }
        }
        t
    }

    /// Checks every structural invariant and returns the canonical term.
    pub fn validate(self) -> Result<Term> {
        let nv = self.gens.len();
        if self.ins.len() != nv {
            return Err(Error::Dangling("vertex/input table size mismatch".into()));
        }
        let mut used = vec![Vec::new(); nv];
        for (v, g) in self.gens.iter().enumerate() {
            used[v] = vec![0usize; g.outputs().len()];
            if self.ins[v].len() != g.inputs().len() {
                return Err(Error::Dangling(format!("vertex {v} ({g}) has {} wired inputs", self.ins[v].len())));
            }
        }
        let mut free_in: BTreeMap<u32, usize> = BTreeMap::new();
        let mut src_color = |s: Src, used: &mut Vec<Vec<usize>>| -> Result<Option<Color>> {
            match s {
                Src::Vertex(u, p) => {
                    let g = self.gens.get(u).ok_or_else(|| Error::Dangling(format!("no vertex {u}")))?;
                    let c = *g.outputs().get(p).ok_or_else(|| Error::Dangling(format!("{g} has no output {}", p + 1)))?;
                    used[u][p] += 1;
                    Ok(Some(c))
                }
                Src::Input(i) => {
                    *free_in.entry(i).or_insert(0) += 1;
                    Ok(None)
                }
            }
        };
        let mut internal = Vec::new();
        for v in 0..nv {
            for (k, &s) in self.ins[v].iter().enumerate() {
                let want = self.gens[v].inputs()[k];
                if let Some(c) = src_color(s, &mut used)? {
                    if c != want {
                        return Err(Error::ColorMismatch(format!(
                            "{} output feeds {} input {} of {}",
                            c.name(),
                            want.name(),
                            k + 1,
                            self.gens[v]
                        )));
                    }
                }
                if let Src::Vertex(u, _) = s {
                    internal.push((u, v));
                }
            }
        }
        for &(c, s) in &self.outs {
            if let Some(sc) = src_color(s, &mut used)? {
                if sc != c {
                    return Err(Error::ColorMismatch(format!("free output declared {} but fed {}", c.name(), sc.name())));
                }
            }
        }
        for (v, ports) in used.iter().enumerate() {
            for (p, &n) in ports.iter().enumerate() {
                match n {
                    1 => {}
                    0 => return Err(Error::Dangling(format!("output {} of vertex {v} is unwired", p + 1))),
                    _ => return Err(Error::Dangling(format!("output {} of vertex {v} is used twice", p + 1))),
                }
            }
        }
        for (k, (&i, &n)) in free_in.iter().enumerate() {
            if i as usize != k + 1 {
                return Err(Error::NonContiguous(format!("free inputs {:?}", free_in.keys().collect::<Vec<_>>())));
            }
            if n != 1 {
                return Err(Error::DuplicateLabel(Label::input(i)));
            }
        }
        if self.outs.is_empty() {
            return Err(Error::NoOutput);
        }
        if nv == 0 {
            if self.outs.len() != 1 || self.outs[0].1 != Src::Input(1) {
                return Err(Error::Dangling("empty term must be a single identity wire".into()));
            }
        } else {
            if self.outs.iter().any(|(_, s)| matches!(s, Src::Input(_))) {
                return Err(Error::Dangling("free input wired straight to a free output".into()));
            }
            let mut parent: Vec<usize> = (0..nv).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                let mut r = x;
                while p[r] != r {
                    r = p[r];
                }
                p[x] = r;
                r
            }
            for &(a, b) in &internal {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra == rb {
                    return Err(Error::Cycle);
                }
                parent[ra] = rb;
            }
            let root = find(&mut parent, 0);
            if (0..nv).any(|v| find(&mut parent, v) != root) {
                return Err(Error::Dangling("term is disconnected".into()));
            }
        }
        Ok(self.canonical().0)
    }

    /// Renumbers vertices in depth-first order from free output 1. Returns the
    /// canonical term and `order`, where `order[new] = old`.
    pub(crate) fn canonical(&self) -> (Term, Vec<usize>) {
        let nv = self.gens.len();
        let targets = self.targets();
        let mut order = Vec::with_capacity(nv);
        let mut seen = vec![false; nv];
        let mut stack = Vec::new();
        if let Some((_, Src::Vertex(v, _))) = self.outs.first() {
            stack.push(*v);
        }
        // explicit stack; children pushed in reverse to visit in port order
        while let Some(v) = stack.pop() {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            order.push(v);
            let mut next = Vec::new();
            for s in &self.ins[v] {
                if let Src::Vertex(u, _) = *s {
                    next.push(u);
                }
            }
            for t in targets[v].iter().flatten() {
                if let Target::Vertex(u, _) = *t {
                    next.push(u);
                }
            }
            for &u in next.iter().rev() {
                if !seen[u] {
                    stack.push(u);
                }
            }
        }
        debug_assert_eq!(order.len(), nv, "term must be connected");
        let mut new_id = vec![0usize; nv];
        for (n, &o) in order.iter().enumerate() {
            new_id[o] = n;
        }
        let map = |s: Src| match s {
            Src::Vertex(v, p) => Src::Vertex(new_id[v], p),
            other => other,
        };
        let term = Term {
            gens: order.iter().map(|&o| self.gens[o]).collect(),
            ins: order.iter().map(|&o| self.ins[o].iter().map(|&s| map(s)).collect()).collect(),
            outs: self.outs.iter().map(|&(c, s)| (c, map(s))).collect(),
        };
        (term, order)
    }
}

impl Term {
    pub fn generator(g: Generator) -> Term {
        let ins = vec![(1..=g.inputs().len() as u32).map(Src::Input).collect()];
        let outs = g.outputs().iter().enumerate().map(|(p, &c)| (c, Src::Vertex(0, p))).collect();
        Term { gens: vec![g], ins, outs }
    }

    /// The identity of the given color: a bare wire from `1i` to `1o`.
    pub fn identity(color: Color) -> Term {
        Term { gens: Vec::new(), ins: Vec::new(), outs: vec![(color, Src::Input(1))] }
    }

    pub fn to_raw(&self) -> RawTerm {
        RawTerm { gens: self.gens.clone(), ins: self.ins.clone(), outs: self.outs.clone() }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn vertex_count(&self) -> usize {
        self.gens.len()
    }

    pub fn inputs_of(&self, v: usize) -> &[Src] {
        &self.ins[v]
    }

    pub fn free_outputs(&self) -> &[(Color, Src)] {
        &self.outs
    }

    pub fn is_identity(&self) -> bool {
        self.gens.is_empty()
    }

    /// Number of BV vertices.
    pub fn degree(&self) -> usize {
        self.gens.iter().map(|g| g.degree()).sum()
    }

    pub fn num_outputs(&self) -> usize {
        self.outs.len()
    }

    pub fn num_inputs(&self) -> usize {
        self.ins.iter().flatten().chain(self.outs.iter().map(|(_, s)| s)).filter(|s| matches!(s, Src::Input(_))).count()
    }

    /// Where free input `i` is plugged in.
    pub fn input_target(&self, i: u32) -> Option<Target> {
        for (v, ports) in self.ins.iter().enumerate() {
            for (k, s) in ports.iter().enumerate() {
                if *s == Src::Input(i) {
                    return Some(Target::Vertex(v, k));
                }
            }
        }
        self.outs.iter().position(|(_, s)| *s == Src::Input(i)).map(|k| Target::Output(k as u32 + 1))
    }

    pub fn input_color(&self, i: u32) -> Option<Color> {
        match self.input_target(i)? {
            Target::Vertex(v, k) => Some(self.gens[v].inputs()[k]),
            Target::Output(o) => Some(self.outs[o as usize - 1].0),
        }
    }

    pub fn output_color(&self, o: u32) -> Option<Color> {
        self.outs.get((o as usize).checked_sub(1)?).map(|(c, _)| *c)
    }

    pub(crate) fn targets(&self) -> Vec<Vec<Option<Target>>> {
        self.to_raw().targets()
    }

    /// Wires output `o` of `self` into input `i` of `other`. Free labels are
    /// renumbered by the standard convention: `other`'s inputs keep their
    /// positions with `self`'s inputs spliced in at `i`; `self`'s outputs
    /// keep theirs with `other`'s outputs spliced in at `o`.
    pub fn compose(&self, o: Label, other: &Term, i: Label) -> Result<Term> {
        if !o.is_output() || o.index == 0 || o.index as usize > self.outs.len() {
            return Err(Error::WrongPort { label: o, expected: "free output of the provider" });
        }
        let ci = other.input_color(i.index).filter(|_| i.is_input());
        let ci = ci.ok_or(Error::WrongPort { label: i, expected: "free input of the receiver" })?;
        let (co, s_f) = self.outs[o.index as usize - 1];
        if co != ci {
            return Err(Error::ColorMismatch(format!("{} output {o} into {} input {i}", co.name(), ci.name())));
        }
        let nf = self.gens.len();
        let nf_in = self.num_inputs() as u32;
        let map_f = |s: Src| match s {
            Src::Input(k) => Src::Input(i.index - 1 + k),
            v => v,
        };
        let map_g = |s: Src| match s {
            Src::Vertex(v, p) => Src::Vertex(v + nf, p),
            Src::Input(k) if k < i.index => Src::Input(k),
            Src::Input(k) if k == i.index => map_f(s_f),
            Src::Input(k) => Src::Input(k - 1 + nf_in),
        };
        let mut raw = RawTerm::default();
        raw.gens.extend(self.gens.iter().chain(&other.gens));
        raw.ins.extend(self.ins.iter().map(|p| p.iter().map(|&s| map_f(s)).collect()));
        raw.ins.extend(other.ins.iter().map(|p| p.iter().map(|&s| map_g(s)).collect()));
        let k = o.index as usize - 1;
        raw.outs.extend(self.outs[..k].iter().map(|&(c, s)| (c, map_f(s))));
        raw.outs.extend(other.outs.iter().map(|&(c, s)| (c, map_g(s))));
        raw.outs.extend(self.outs[k + 1..].iter().map(|&(c, s)| (c, map_f(s))));
        raw.validate()
    }

    /// Relabels free ports: input `k` becomes `inputs[k-1]`, output `k`
    /// becomes `outputs[k-1]`.
    pub fn act_symmetric(&self, inputs: &[u32], outputs: &[u32]) -> Result<Term> {
        Ok(self.act_symmetric_ordered(inputs, outputs)?.0)
    }

    /// As [`Term::act_symmetric`], also returning the vertex renumbering
    /// (`order[new] = old`).
    pub(crate) fn act_symmetric_ordered(&self, inputs: &[u32], outputs: &[u32]) -> Result<(Term, Vec<usize>)> {
        check_perm(inputs, self.num_inputs())?;
        check_perm(outputs, self.outs.len())?;
        let map = |s: Src| match s {
            Src::Input(k) => Src::Input(inputs[k as usize - 1]),
            v => v,
        };
        let mut outs = self.outs.clone();
        for (k, &(c, s)) in self.outs.iter().enumerate() {
            outs[outputs[k] as usize - 1] = (c, map(s));
        }
        let raw = RawTerm {
            gens: self.gens.clone(),
            ins: self.ins.iter().map(|p| p.iter().map(|&s| map(s)).collect()).collect(),
            outs,
        };
        Ok(raw.canonical())
    }

    /// Deterministic text key; injective on canonical terms.
    pub fn encode(&self) -> String {
        let src = |s: &Src| match s {
            Src::Vertex(v, p) => format!("v{v}.{p}"),
            Src::Input(i) => format!("i{i}"),
        };
        let mut out = String::new();
        for (g, ins) in self.gens.iter().zip(&self.ins) {
            out.push_str(g.tag());
            out.push('(');
            out.push_str(&ins.iter().map(src).collect::<Vec<_>>().join(","));
            out.push_str(") ");
        }
        out.push_str("=>");
        for (c, s) in &self.outs {
            out.push(' ');
            out.push(if *c == Color::Closed { 'c' } else { 'o' });
            out.push(':');
            out.push_str(&src(s));
        }
        out
    }

    /// Inverse of [`Term::encode`].
    pub fn decode(text: &str) -> Result<Term> {
        let bad = |m: &str| Error::Syntax { line: 1, column: 1, message: m.to_string() };
        let parse_src = |s: &str| -> Result<Src> {
            if let Some(rest) = s.strip_prefix('v') {
                let (v, p) = rest.split_once('.').ok_or_else(|| bad("bad vertex source"))?;
                Ok(Src::Vertex(v.parse().map_err(|_| bad("bad vertex"))?, p.parse().map_err(|_| bad("bad port"))?))
            } else if let Some(rest) = s.strip_prefix('i') {
                Ok(Src::Input(rest.parse().map_err(|_| bad("bad input"))?))
            } else {
                Err(bad("bad source"))
            }
        };
        let (verts, outs) = text.split_once("=>").ok_or_else(|| bad("missing =>"))?;
        let mut raw = RawTerm::default();
        for tok in verts.split_whitespace() {
            let (tag, rest) = tok.split_once('(').ok_or_else(|| bad("missing ("))?;
            let g = Generator::from_tag(tag).ok_or_else(|| bad("unknown generator"))?;
            let inner = rest.strip_suffix(')').ok_or_else(|| bad("missing )"))?;
            let ins = if inner.is_empty() { Vec::new() } else { inner.split(',').map(parse_src).collect::<Result<_>>()? };
            raw.gens.push(g);
            raw.ins.push(ins);
        }
        for tok in outs.split_whitespace() {
            let (c, s) = tok.split_once(':').ok_or_else(|| bad("missing :"))?;
            let c = match c {
                "c" => Color::Closed,
                "o" => Color::Open,
                _ => return Err(bad("bad color")),
            };
            raw.outs.push((c, parse_src(s)?));
        }
        raw.validate()
    }
}

/// Where a pattern sits inside a host term.
#[derive(Debug, Clone)]
pub(crate) struct Match {
    /// `removed[v]` marks host vertices covered by the pattern.
    pub removed: Vec<bool>,
    /// Host source feeding the pattern's free input `k + 1`.
    pub sources: Vec<Src>,
    /// Host port consuming the pattern's free output `j + 1`.
    pub sinks: Vec<Target>,
}

impl Term {
    /// Occurrences of the (non-identity) `pattern` in `self`. Ports are
    /// ordered, so each anchor vertex admits at most one occurrence.
    pub(crate) fn find_matches(&self, pattern: &Term) -> Vec<Match> {
        let mut out = Vec::new();
        if pattern.gens.is_empty() {
            return out;
        }
        let host_targets = self.targets();
        let pat_targets = pattern.targets();
        'anchor: for h in 0..self.gens.len() {
            if self.gens[h] != pattern.gens[0] {
                continue;
            }
            let mut m: Vec<Option<usize>> = vec![None; pattern.gens.len()];
            let mut used = vec![false; self.gens.len()];
            m[0] = Some(h);
            used[h] = true;
            let mut stack = vec![0usize];
            while let Some(a) = stack.pop() {
                let ha = m[a].unwrap();
                let mut visit = |b: usize, hb: usize, stack: &mut Vec<usize>| -> bool {
                    if self.gens[hb] != pattern.gens[b] {
                        return false;
                    }
                    match m[b] {
                        Some(x) => x == hb,
                        None if used[hb] => false,
                        None => {
                            m[b] = Some(hb);
                            used[hb] = true;
                            stack.push(b);
                            true
                        }
                    }
                };
                for (k, s) in pattern.ins[a].iter().enumerate() {
                    if let Src::Vertex(b, p) = *s {
                        match self.ins[ha][k] {
                            Src::Vertex(hb, hp) if hp == p => {
                                if !visit(b, hb, &mut stack) {
                                    continue 'anchor;
                                }
                            }
                            _ => continue 'anchor,
                        }
                    }
                }
                for (p, t) in pat_targets[a].iter().enumerate() {
                    if let Some(Target::Vertex(b, k)) = *t {
                        match host_targets[ha][p] {
                            Some(Target::Vertex(hb, hk)) if hk == k => {
                                if !visit(b, hb, &mut stack) {
                                    continue 'anchor;
                                }
                            }
                            _ => continue 'anchor,
                        }
                    }
                }
            }
            let n_in = pattern.num_inputs();
            let mut sources = vec![Src::Input(0); n_in];
            for (a, ports) in pattern.ins.iter().enumerate() {
                for (k, s) in ports.iter().enumerate() {
                    if let Src::Input(i) = *s {
                        sources[i as usize - 1] = self.ins[m[a].unwrap()][k];
                    }
                }
            }
            let sinks = pattern
                .outs
                .iter()
                .map(|(_, s)| match *s {
                    Src::Vertex(a, p) => host_targets[m[a].unwrap()][p].expect("wired output"),
                    Src::Input(_) => unreachable!("pattern is not an identity"),
                })
                .collect();
            out.push(Match { removed: used, sources, sinks });
        }
        out
    }

    /// Removes the matched vertices and plugs `piece` into the hole. Free
    /// inputs of the host are renamed through `rename`. Returns the new term
    /// and the sign relating the orientation "remaining host BV vertices in
    /// host order, then the piece's BV vertices in piece order" to the
    /// canonical orientation of the result.
    pub(crate) fn replace(&self, at: &Match, piece: &Term, rename: &dyn Fn(u32) -> u32) -> (Term, i32) {
        let mut new_id = vec![usize::MAX; self.gens.len()];
        let mut raw = RawTerm::default();
        for v in 0..self.gens.len() {
            if !at.removed[v] {
                new_id[v] = raw.gens.len();
                raw.gens.push(self.gens[v]);
            }
        }
        let offset = raw.gens.len();
        raw.gens.extend(piece.gens.iter().copied());
        let host_src = |s: Src| match s {
            Src::Vertex(u, p) => Src::Vertex(new_id[u], p),
            Src::Input(i) => Src::Input(rename(i)),
        };
        let piece_src = |s: Src| match s {
            Src::Vertex(b, p) => Src::Vertex(offset + b, p),
            Src::Input(k) => host_src(at.sources[k as usize - 1]),
        };
        for v in 0..self.gens.len() {
            if !at.removed[v] {
                raw.ins.push(self.ins[v].iter().map(|&s| host_src(s)).collect());
            }
        }
        for ports in &piece.ins {
            raw.ins.push(ports.iter().map(|&s| piece_src(s)).collect());
        }
        raw.outs = self.outs.iter().map(|&(c, s)| (c, host_src(s))).collect();
        for (j, &sink) in at.sinks.iter().enumerate() {
            let s = piece_src(piece.outs[j].1);
            match sink {
                Target::Vertex(v, k) => raw.ins[new_id[v]][k] = s,
                Target::Output(o) => raw.outs[o as usize - 1].1 = s,
            }
        }
        let (term, order) = raw.canonical();
        let reference: Vec<usize> = (0..raw.gens.len()).filter(|&v| raw.gens[v] == Generator::BV).collect();
        let actual: Vec<usize> = order.iter().copied().filter(|&v| raw.gens[v] == Generator::BV).collect();
        (term, permutation_sign(&reference, &actual))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_term(self))
    }
}

/// Parity of the permutation taking `reference` to `actual` (same elements):
/// `+1` or `-1`.
pub(crate) fn permutation_sign<T: PartialEq>(reference: &[T], actual: &[T]) -> i32 {
    let pos: Vec<usize> =
        actual.iter().map(|a| reference.iter().position(|r| r == a).expect("same element set")).collect();
    let mut inversions = 0usize;
    for a in 0..pos.len() {
        for b in a + 1..pos.len() {
            if pos[a] > pos[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Koszul sign of moving graded items: item `k` (degree `degrees[k-1]`)
/// moves to position `sigma[k-1]`. Each pair of items whose relative order
/// flips contributes `(-1)^(d_a * d_b)`.
pub fn shuffle_sign(degrees: &[i64], sigma: &[u32]) -> Result<i32> {
    check_perm(sigma, degrees.len())?;
    let mut odd = 0i64;
    for a in 0..sigma.len() {
        for b in a + 1..sigma.len() {
            if sigma[a] > sigma[b] {
                odd += degrees[a] * degrees[b];
            }
        }
    }
    Ok(if odd.rem_euclid(2) == 0 { 1 } else { -1 })
}
