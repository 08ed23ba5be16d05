//! Path-component data ("types") of genus-0 open-closed surfaces and the
//! sewing operations acting on them.
//!
//! A type records which labels sit at interior (closed) punctures and, for
//! every boundary component, the cyclic order of the open punctures on it.
//! Boundaries without punctures are kept as empty cycles.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::label::{Color, Label, Polarity};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SurfaceType {
    closed: BTreeSet<Label>,
    boundaries: Vec<Vec<Label>>,
}

/// Rotates a cycle so that it starts at its smallest label.
pub(crate) fn rotate_min<P: Ord + Clone>(cycle: &[P]) -> Vec<P> {
    match cycle.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)) {
        None => Vec::new(),
        Some((start, _)) => cycle[start..].iter().chain(&cycle[..start]).cloned().collect(),
    }
}

/// Sorting key for boundaries: empty cycles go last.
fn boundary_key(c: &[Label]) -> (bool, &[Label]) {
    (c.is_empty(), c)
}

/// Open sewing of two cycles: `cs` holds the output `o`, `ct` the input `i`.
/// The result reads `ct` from just after `i`, then `cs` from just after `o`.
pub(crate) fn splice<P: PartialEq + Clone>(cs: &[P], o: &P, ct: &[P], i: &P) -> Vec<P> {
    let po = cs.iter().position(|x| x == o).expect("output on cycle");
    let pi = ct.iter().position(|x| x == i).expect("input on cycle");
    let mut out = Vec::with_capacity(cs.len() + ct.len() - 2);
    out.extend(ct[pi + 1..].iter().chain(&ct[..pi]).cloned());
    out.extend(cs[po + 1..].iter().chain(&cs[..po]).cloned());
    out
}

/// Splits `(i, u.., j, v..)` into `(u..)` and `(v..)`.
pub(crate) fn split_at_pair<P: PartialEq + Clone>(c: &[P], i: &P, j: &P) -> (Vec<P>, Vec<P>) {
    let pi = c.iter().position(|x| x == i).expect("i on cycle");
    let rot: Vec<P> = c[pi..].iter().chain(&c[..pi]).cloned().collect();
    let pj = rot.iter().position(|x| x == j).expect("j on cycle");
    (rot[1..pj].to_vec(), rot[pj + 1..].to_vec())
}

fn check_contiguous(labels: &[Label]) -> Result<()> {
    for pol in [Polarity::Input, Polarity::Output] {
        let mut idx: Vec<u32> = labels.iter().filter(|l| l.polarity == pol).map(|l| l.index).collect();
        idx.sort_unstable();
        if idx.iter().enumerate().any(|(k, &v)| v as usize != k + 1) {
            let shown: Vec<String> = idx.iter().map(|v| v.to_string()).collect();
            let p = if pol == Polarity::Input { "i" } else { "o" };
            return Err(Error::NonContiguous(format!("{} indices [{}]", p, shown.join(","))));
        }
    }
    Ok(())
}

impl SurfaceType {
    /// Builds a canonical type from a closed label set and a list of cycles.
    pub fn new(closed: impl IntoIterator<Item = Label>, cycles: Vec<Vec<Label>>) -> Result<Self> {
        let closed: Vec<Label> = closed.into_iter().collect();
        let mut all: Vec<Label> = closed.iter().copied().chain(cycles.iter().flatten().copied()).collect();
        all.sort();
        if let Some(w) = all.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateLabel(w[0]));
        }
        check_contiguous(&all)?;
        Ok(Self::from_parts(closed, cycles))
    }

    /// Canonical form without label validation; callers guarantee distinctness.
    pub(crate) fn from_parts(closed: impl IntoIterator<Item = Label>, cycles: Vec<Vec<Label>>) -> Self {
        let mut boundaries: Vec<Vec<Label>> = cycles.iter().map(|c| rotate_min(c)).collect();
        boundaries.sort_by(|a, b| boundary_key(a).cmp(&boundary_key(b)));
        SurfaceType { closed: closed.into_iter().collect(), boundaries }
    }

    pub fn closed(&self) -> &BTreeSet<Label> {
        &self.closed
    }

    pub fn boundaries(&self) -> &[Vec<Label>] {
        &self.boundaries
    }

    pub fn empty_boundaries(&self) -> usize {
        self.boundaries.iter().filter(|c| c.is_empty()).count()
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + '_ {
        self.closed.iter().copied().chain(self.boundaries.iter().flatten().copied())
    }

    pub fn num_inputs(&self) -> usize {
        self.labels().filter(|l| l.is_input()).count()
    }

    pub fn num_outputs(&self) -> usize {
        self.labels().filter(|l| l.is_output()).count()
    }

    pub fn puncture_count(&self) -> usize {
        self.labels().count()
    }

    /// Validity predicate: at least one output.
    pub fn has_output(&self) -> bool {
        self.num_outputs() > 0
    }

    pub fn color_of(&self, l: Label) -> Option<Color> {
        if self.closed.contains(&l) {
            Some(Color::Closed)
        } else if self.boundaries.iter().flatten().any(|&x| x == l) {
            Some(Color::Open)
        } else {
            None
        }
    }

    pub fn cycle_of(&self, l: Label) -> Option<usize> {
        self.boundaries.iter().position(|c| c.contains(&l))
    }

    fn port(&self, l: Label, pol: Polarity, color: Color) -> Result<()> {
        let expected = match (pol, color) {
            (Polarity::Input, Color::Closed) => "closed input",
            (Polarity::Input, Color::Open) => "open input",
            (Polarity::Output, Color::Closed) => "closed output",
            (Polarity::Output, Color::Open) => "open output",
        };
        match self.color_of(l) {
            None => Err(Error::MissingLabel(l)),
            Some(c) if c == color && l.polarity == pol => Ok(()),
            Some(_) => Err(Error::WrongPort { label: l, expected }),
        }
    }

    /// Closed sewing: output `o` of `self` into closed input `i` of `other`.
    pub fn sew_closed(&self, o: Label, other: &SurfaceType, i: Label) -> Result<SurfaceType> {
        self.port(o, Polarity::Output, Color::Closed)?;
        other.port(i, Polarity::Input, Color::Closed)?;
        let ren = Renumber::new(self, o, other, i);
        let closed = self
            .closed
            .iter()
            .filter(|&&l| l != o)
            .map(|&l| ren.provider(l))
            .chain(other.closed.iter().filter(|&&l| l != i).map(|&l| ren.receiver(l)));
        let cycles = self
            .boundaries
            .iter()
            .map(|c| c.iter().map(|&l| ren.provider(l)).collect())
            .chain(other.boundaries.iter().map(|c| c.iter().map(|&l| ren.receiver(l)).collect()))
            .collect();
        Ok(SurfaceType::from_parts(closed, cycles))
    }

    /// Open sewing: open output `o` of `self` into open input `i` of `other`.
    /// The two boundary cycles merge into one.
    pub fn sew_open(&self, o: Label, other: &SurfaceType, i: Label) -> Result<SurfaceType> {
        self.port(o, Polarity::Output, Color::Open)?;
        other.port(i, Polarity::Input, Color::Open)?;
        let ren = Renumber::new(self, o, other, i);
        let cs = self.cycle_of(o).expect("checked");
        let ct = other.cycle_of(i).expect("checked");
        let tagged_s: Vec<(bool, Label)> = self.boundaries[cs].iter().map(|&l| (true, l)).collect();
        let tagged_t: Vec<(bool, Label)> = other.boundaries[ct].iter().map(|&l| (false, l)).collect();
        let merged: Vec<Label> = splice(&tagged_s, &(true, o), &tagged_t, &(false, i))
            .into_iter()
            .map(|(from_provider, l)| if from_provider { ren.provider(l) } else { ren.receiver(l) })
            .collect();
        let closed = self
            .closed
            .iter()
            .map(|&l| ren.provider(l))
            .chain(other.closed.iter().map(|&l| ren.receiver(l)));
        let mut cycles: Vec<Vec<Label>> = vec![merged];
        cycles.extend(
            self.boundaries
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != cs)
                .map(|(_, c)| c.iter().map(|&l| ren.provider(l)).collect()),
        );
        cycles.extend(
            other
                .boundaries
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != ct)
                .map(|(_, c)| c.iter().map(|&l| ren.receiver(l)).collect()),
        );
        Ok(SurfaceType::from_parts(closed, cycles))
    }

    /// Sews two open inputs lying on one boundary to each other. The boundary
    /// splits in two; remaining inputs are renumbered keeping their order.
    /// Inputs on different cycles (or not open) give [`Error::ContractionZero`].
    pub fn self_sew_open(&self, i: Label, j: Label) -> Result<SurfaceType> {
        if i == j || !i.is_input() || !j.is_input() {
            return Err(Error::ContractionZero(format!("{i} and {j} are not two distinct inputs")));
        }
        let (ci, cj) = (self.cycle_of(i), self.cycle_of(j));
        let c = match (ci, cj) {
            (Some(a), Some(b)) if a == b => a,
            _ => return Err(Error::ContractionZero(format!("{i} and {j} are not open inputs on one boundary"))),
        };
        let (u, v) = split_at_pair(&self.boundaries[c], &i, &j);
        let mut cycles: Vec<Vec<Label>> =
            self.boundaries.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, c)| c.clone()).collect();
        cycles.push(u);
        cycles.push(v);
        let removed = [i.index.min(j.index), i.index.max(j.index)];
        let shift = |l: Label| {
            if l.is_input() {
                Label::input(l.index - removed.iter().filter(|&&r| r < l.index).count() as u32)
            } else {
                l
            }
        };
        let closed = self.closed.iter().map(|&l| shift(l));
        let cycles = cycles.into_iter().map(|c| c.into_iter().map(shift).collect()).collect();
        Ok(SurfaceType::from_parts(closed, cycles))
    }

    /// Applies label bijections: input `k` becomes input `inputs[k-1]`,
    /// output `k` becomes output `outputs[k-1]`.
    pub fn relabel(&self, inputs: &[u32], outputs: &[u32]) -> Result<SurfaceType> {
        check_perm(inputs, self.num_inputs())?;
        check_perm(outputs, self.num_outputs())?;
        let f = |l: Label| match l.polarity {
            Polarity::Input => Label::input(inputs[l.index as usize - 1]),
            Polarity::Output => Label::output(outputs[l.index as usize - 1]),
        };
        Ok(self.map_labels(f))
    }

    pub(crate) fn map_labels(&self, f: impl Fn(Label) -> Label) -> SurfaceType {
        SurfaceType::from_parts(
            self.closed.iter().map(|&l| f(l)),
            self.boundaries.iter().map(|c| c.iter().map(|&l| f(l)).collect()).collect(),
        )
    }

    /// Cyclic action on a one-output type. Punctures are numbered by position:
    /// inputs `1..=n`, the output `n+1`. The puncture at position `p` moves to
    /// position `sigma[p-1]`; whichever lands on `n+1` becomes the output.
    pub fn cyclic_act(&self, sigma: &[u32]) -> Result<SurfaceType> {
        if self.num_outputs() != 1 {
            return Err(Error::NotSingleOutput);
        }
        let n = self.num_inputs();
        check_perm(sigma, n + 1)?;
        let pos = |l: Label| if l.is_input() { l.index } else { n as u32 + 1 };
        let f = |l: Label| {
            let p = sigma[pos(l) as usize - 1];
            if p as usize == n + 1 {
                Label::output(1)
            } else {
                Label::input(p)
            }
        };
        Ok(self.map_labels(f))
    }
}

pub(crate) fn check_perm(p: &[u32], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if p.len() != n {
        return Err(Error::NotBijective(format!("expected {n} entries, got {}", p.len())));
    }
    for &x in p {
        let k = x as usize;
        if k == 0 || k > n || seen[k - 1] {
            return Err(Error::NotBijective(format!("{p:?}")));
        }
        seen[k - 1] = true;
    }
    Ok(())
}

/// The standard renumbering after sewing provider output `o` into receiver
/// input `i`: the receiver's inputs keep their positions with the provider's
/// inputs spliced in at `i`; the provider's outputs keep theirs with the
/// receiver's outputs spliced in at `o`.
struct Renumber {
    i: u32,
    o: u32,
    provider_inputs: u32,
    receiver_outputs: u32,
}

impl Renumber {
    fn new(provider: &SurfaceType, o: Label, receiver: &SurfaceType, i: Label) -> Self {
        Renumber {
            i: i.index,
            o: o.index,
            provider_inputs: provider.num_inputs() as u32,
            receiver_outputs: receiver.num_outputs() as u32,
        }
    }

    fn provider(&self, l: Label) -> Label {
        match l.polarity {
            Polarity::Input => Label::input(self.i - 1 + l.index),
            Polarity::Output if l.index < self.o => l,
            Polarity::Output => Label::output(l.index - 1 + self.receiver_outputs),
        }
    }

    fn receiver(&self, l: Label) -> Label {
        match l.polarity {
            Polarity::Input if l.index < self.i => l,
            Polarity::Input => Label::input(l.index - 1 + self.provider_inputs),
            Polarity::Output => Label::output(self.o - 1 + l.index),
        }
    }
}

/// Puncture counts of a type: closed/open inputs and outputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TypeSignature {
    pub closed_in: usize,
    pub open_in: usize,
    pub closed_out: usize,
    pub open_out: usize,
}

impl TypeSignature {
    pub fn of(s: &SurfaceType) -> Self {
        let mut sig = TypeSignature::default();
        for l in s.labels() {
            let closed = s.closed.contains(&l);
            match (l.polarity, closed) {
                (Polarity::Input, true) => sig.closed_in += 1,
                (Polarity::Input, false) => sig.open_in += 1,
                (Polarity::Output, true) => sig.closed_out += 1,
                (Polarity::Output, false) => sig.open_out += 1,
            }
        }
        sig
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(k);
        for mut p in permutations(&rest) {
            p.insert(0, x.clone());
            out.push(p);
        }
    }
    out
}

/// All ways to arrange `labels` into disjoint cycles (the cycle
/// decompositions of permutations of `labels`).
fn cycle_arrangements(labels: &[Label]) -> Vec<Vec<Vec<Label>>> {
    let Some((&first, rest)) = labels.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    // choose the companions of `first` in its cycle, then their cyclic order
    for size in 0..=rest.len() {
        for pick in combinations(rest.len(), size) {
            let chosen: Vec<Label> = pick.iter().map(|&k| rest[k]).collect();
            let remaining: Vec<Label> =
                rest.iter().enumerate().filter(|(k, _)| !pick.contains(k)).map(|(_, &l)| l).collect();
            let tails = cycle_arrangements(&remaining);
            for order in permutations(&chosen) {
                let mut cyc = vec![first];
                cyc.extend(order);
                for t in &tails {
                    let mut cycles = t.clone();
                    cycles.push(cyc.clone());
                    out.push(cycles);
                }
            }
        }
    }
    out
}

/// Enumerates every type with the given puncture counts and at most
/// `max_empty` empty boundaries. `nonempty_boundaries`, when set, keeps only
/// types with exactly that many boundaries carrying punctures.
pub fn enumerate_types(sig: TypeSignature, nonempty_boundaries: Option<usize>, max_empty: usize) -> Vec<SurfaceType> {
    let n_in = sig.closed_in + sig.open_in;
    let n_out = sig.closed_out + sig.open_out;
    let mut out = BTreeSet::new();
    for ci in combinations(n_in, sig.closed_in) {
        for co in combinations(n_out, sig.closed_out) {
            let closed: Vec<Label> = ci
                .iter()
                .map(|&k| Label::input(k as u32 + 1))
                .chain(co.iter().map(|&k| Label::output(k as u32 + 1)))
                .collect();
            let open: Vec<Label> = (0..n_in)
                .filter(|k| !ci.contains(k))
                .map(|k| Label::input(k as u32 + 1))
                .chain((0..n_out).filter(|k| !co.contains(k)).map(|k| Label::output(k as u32 + 1)))
                .collect();
            for cycles in cycle_arrangements(&open) {
                if nonempty_boundaries.is_some_and(|b| b != cycles.len()) {
                    continue;
                }
                for e in 0..=max_empty {
                    let mut cs = cycles.clone();
                    cs.extend(std::iter::repeat_n(Vec::new(), e));
                    out.insert(SurfaceType::from_parts(closed.iter().copied(), cs));
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Multiset view of the boundaries, used by tests.
pub fn boundary_sizes(s: &SurfaceType) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for c in s.boundaries() {
        *m.entry(c.len()).or_insert(0) += 1;
    }
    m
}

fn write_labels(f: &mut fmt::Formatter<'_>, ls: impl Iterator<Item = Label>) -> fmt::Result {
    for (k, l) in ls.enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{l}")?;
    }
    Ok(())
}

impl fmt::Display for SurfaceType {
    /// Canonical literal, e.g. `{1i,4i,3o},(2i,1o),(3i,2o,5i),()`. The closed
    /// part is omitted when empty and at least one boundary exists.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.closed.is_empty() || self.boundaries.is_empty() {
            f.write_str("{")?;
            write_labels(f, self.closed.iter().copied())?;
            f.write_str("}")?;
            first = false;
        }
        for c in &self.boundaries {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            f.write_str("(")?;
            write_labels(f, c.iter().copied())?;
            f.write_str(")")?;
        }
        Ok(())
    }
}
