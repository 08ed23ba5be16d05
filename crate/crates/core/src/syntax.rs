//! Text formats for types and terms.
//!
//! Types: `{1i,4i,3o},(1o,2i),(2o,5i,3i),()`. The leading `{...}` may be
//! omitted when there are no closed labels.
//!
//! Terms come in two flavors. Single-output terms can be written as
//! expressions such as `o2c(mo(c2o(x1c),x2o))`, where leaves `x<i>c` and
//! `x<i>o` are free inputs. Any term can be written in the line-based wiring
//! format (lines separated by newlines or `;`):
//!
//! ```text
//! gen a CC
//! gen b MC
//! in 1i a.in1
//! in 2i b.in2
//! wire a.out1 b.in1
//! out 1o b.out1
//! out 2o a.out2
//! ```
//!
//! A bare identity wire is `id 1i 1o c` (or `o`).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::label::{Color, Label};
use crate::surface::SurfaceType;
use crate::term::{RawTerm, Src, Target, Term};

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text: text.as_bytes(), pos: 0 }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let before = &self.text[..self.pos.min(self.text.len())];
        let line = before.iter().filter(|&&b| b == b'\n').count() + 1;
        let column = before.iter().rev().take_while(|&&b| b != b'\n').count() + 1;
        Error::Syntax { line, column, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", b as char)))
        }
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s = std::str::from_utf8(&self.text[start..self.pos]).expect("ascii digits");
        s.parse().map_err(|_| self.error("number out of range"))
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && (self.text[self.pos].is_ascii_alphanumeric() || self.text[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.text[start..self.pos]).into_owned()
    }

    fn label(&mut self) -> Result<Label> {
        let index = self.number()?;
        if index == 0 {
            return Err(self.error("label indices start at 1"));
        }
        match self.text.get(self.pos) {
            Some(b'i') => {
                self.pos += 1;
                Ok(Label::input(index))
            }
            Some(b'o') => {
                self.pos += 1;
                Ok(Label::output(index))
            }
            _ => Err(self.error("expected 'i' or 'o' after label index")),
        }
    }

    fn labels_until(&mut self, close: u8) -> Result<Vec<Label>> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(self.label()?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(b',')?;
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

pub fn parse_type(text: &str) -> Result<SurfaceType> {
    let mut c = Cursor::new(text);
    let mut closed = Vec::new();
    let mut cycles = Vec::new();
    if c.eat(b'{') {
        closed = c.labels_until(b'}')?;
        if !c.at_end() {
            c.expect(b',')?;
        }
    }
    if closed.is_empty() && c.at_end() && !text.contains('{') {
        return Err(c.error("empty type"));
    }
    while !c.at_end() {
        c.expect(b'(')?;
        cycles.push(c.labels_until(b')')?);
        if !c.at_end() {
            c.expect(b',')?;
            if c.at_end() {
                return Err(c.error("trailing ','"));
            }
        }
    }
    SurfaceType::new(closed, cycles)
}

/// A single label such as `2i`.
pub fn parse_label(text: &str) -> Result<Label> {
    let mut c = Cursor::new(text);
    c.skip_ws();
    let l = c.label()?;
    if !c.at_end() {
        return Err(c.error("unexpected text after label"));
    }
    Ok(l)
}

pub fn print_type(s: &SurfaceType) -> String {
    s.to_string()
}

/// Parses either an expression or a wiring document.
pub fn parse_term(text: &str) -> Result<Term> {
    let first = text.trim_start();
    let wiring = ["gen ", "id ", "in ", "out ", "wire ", "#"].iter().any(|p| first.starts_with(p)) || text.contains(';');
    if wiring {
        parse_wiring(text)
    } else {
        parse_expression(text)
    }
}

enum Expr {
    Leaf(u32, Color),
    Node(Generator, Vec<Expr>),
}

fn parse_expr(c: &mut Cursor) -> Result<Expr> {
    let start = c.pos;
    let name = c.ident();
    if name.is_empty() {
        return Err(c.error("expected a generator or leaf"));
    }
    let lower = name.to_ascii_lowercase();
    if let Some(rest) = lower.strip_prefix('x') {
        let (num, col) = rest.split_at(rest.len().saturating_sub(1));
        let color = match col {
            "c" => Some(Color::Closed),
            "o" => Some(Color::Open),
            _ => None,
        };
        if let (Ok(i), Some(color)) = (num.parse::<u32>(), color) {
            if i == 0 {
                c.pos = start;
                return Err(c.error("leaf indices start at 1"));
            }
            return Ok(Expr::Leaf(i, color));
        }
        c.pos = start;
        return Err(c.error(format!("bad leaf '{name}', expected x<n>c or x<n>o")));
    }
    let g = match Generator::from_tag(&lower) {
        Some(g) if g.outputs().len() == 1 => g,
        Some(g) => {
            c.pos = start;
            return Err(c.error(format!("{g} has two outputs; use the wiring format")));
        }
        None => {
            c.pos = start;
            return Err(c.error(format!("unknown generator '{name}'")));
        }
    };
    let mut args = Vec::new();
    if c.eat(b'(') {
        if !c.eat(b')') {
            loop {
                args.push(parse_expr(c)?);
                if c.eat(b')') {
                    break;
                }
                c.expect(b',')?;
            }
        }
    }
    if args.len() != g.inputs().len() {
        c.pos = start;
        return Err(c.error(format!("{g} takes {} arguments, got {}", g.inputs().len(), args.len())));
    }
    Ok(Expr::Node(g, args))
}

fn build_expr(e: &Expr, want: Color, raw: &mut RawTerm) -> Result<Src> {
    match e {
        Expr::Leaf(i, color) => {
            if *color != want {
                return Err(Error::ColorMismatch(format!("leaf x{i} is {} but the slot is {}", color.name(), want.name())));
            }
            Ok(Src::Input(*i))
        }
        Expr::Node(g, args) => {
            if g.outputs()[0] != want {
                return Err(Error::ColorMismatch(format!("{g} output is {} but the slot is {}", g.outputs()[0].name(), want.name())));
            }
            let v = raw.gens.len();
            raw.gens.push(*g);
            raw.ins.push(Vec::new());
            let mut ins = Vec::new();
            for (a, &c) in args.iter().zip(g.inputs()) {
                ins.push(build_expr(a, c, raw)?);
            }
            raw.ins[v] = ins;
            Ok(Src::Vertex(v, 0))
        }
    }
}

pub fn parse_expression(text: &str) -> Result<Term> {
    let mut c = Cursor::new(text);
    let e = parse_expr(&mut c)?;
    if !c.at_end() {
        return Err(c.error("unexpected trailing input"));
    }
    let color = match &e {
        Expr::Leaf(_, color) => *color,
        Expr::Node(g, _) => g.outputs()[0],
    };
    let mut raw = RawTerm::default();
    let src = build_expr(&e, color, &mut raw)?;
    raw.outs.push((color, src));
    raw.validate()
}

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, column: 1, message: message.into() }
}

fn parse_port(tok: &str, dir: &str, line: usize) -> Result<(String, usize)> {
    let (id, port) = tok.rsplit_once('.').ok_or_else(|| syntax(line, format!("expected <id>.{dir}<k>, got '{tok}'")))?;
    let k: usize = port
        .strip_prefix(dir)
        .and_then(|k| k.parse().ok())
        .filter(|&k| k >= 1)
        .ok_or_else(|| syntax(line, format!("expected {dir}<k> with k >= 1, got '{port}'")))?;
    Ok((id.to_string(), k - 1))
}

fn wiring_label(tok: &str, line: usize) -> Result<Label> {
    let mut c = Cursor::new(tok);
    let l = c.label().map_err(|_| syntax(line, format!("bad label '{tok}'")))?;
    if !c.at_end() {
        return Err(syntax(line, format!("bad label '{tok}'")));
    }
    Ok(l)
}

pub fn parse_wiring(text: &str) -> Result<Term> {
    let mut ids: BTreeMap<String, usize> = BTreeMap::new();
    let mut gens = Vec::new();
    let mut ins: Vec<Vec<Option<Src>>> = Vec::new();
    let mut outs: BTreeMap<u32, (Color, Src)> = BTreeMap::new();
    let mut pending_wires = Vec::new();
    let mut pending_ins = Vec::new();
    let mut pending_outs = Vec::new();
    let mut identity = None;
    let lines = text.split(['\n', ';']).enumerate();
    for (n, raw_line) in lines {
        let line = n + 1;
        let body = raw_line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        match toks.as_slice() {
            ["gen", id, tag] => {
                let g = Generator::from_tag(tag).ok_or_else(|| syntax(line, format!("unknown generator '{tag}'")))?;
                if ids.insert(id.to_string(), gens.len()).is_some() {
                    return Err(syntax(line, format!("vertex '{id}' declared twice")));
                }
                gens.push(g);
                ins.push(vec![None; g.inputs().len()]);
            }
            ["wire", from, to] => pending_wires.push((line, parse_port(from, "out", line)?, parse_port(to, "in", line)?)),
            ["in", l, to] => pending_ins.push((line, wiring_label(l, line)?, parse_port(to, "in", line)?)),
            ["out", l, from] => pending_outs.push((line, wiring_label(l, line)?, parse_port(from, "out", line)?)),
            ["id", a, b, c] => {
                let (a, b) = (wiring_label(a, line)?, wiring_label(b, line)?);
                let color = match *c {
                    "c" => Color::Closed,
                    "o" => Color::Open,
                    _ => return Err(syntax(line, "identity color must be c or o")),
                };
                if !a.is_input() || !b.is_output() {
                    return Err(syntax(line, "id takes an input label then an output label"));
                }
                identity = Some((a, b, color));
            }
            _ => return Err(syntax(line, format!("unrecognized line '{body}'"))),
        }
    }
    let vertex = |id: &str, line: usize| ids.get(id).copied().ok_or_else(|| syntax(line, format!("unknown vertex '{id}'")));
    let port_out = |v: usize, k: usize, line: usize| -> Result<()> {
        if k >= gens[v].outputs().len() {
            return Err(Error::Dangling(format!("line {line}: {} has no output {}", gens[v], k + 1)));
        }
        Ok(())
    };
    let mut set_in = |v: usize, k: usize, s: Src, line: usize| -> Result<()> {
        let slot = ins[v]
            .get_mut(k)
            .ok_or_else(|| Error::Dangling(format!("line {line}: {} has no input {}", gens[v], k + 1)))?;
        if slot.is_some() {
            return Err(Error::Dangling(format!("line {line}: input {} of {} wired twice", k + 1, gens[v])));
        }
        *slot = Some(s);
        Ok(())
    };
    for (line, (from, p), (to, k)) in pending_wires {
        let (u, v) = (vertex(&from, line)?, vertex(&to, line)?);
        port_out(u, p, line)?;
        set_in(v, k, Src::Vertex(u, p), line)?;
    }
    for (line, l, (to, k)) in pending_ins {
        if !l.is_input() {
            return Err(syntax(line, format!("{l} is not an input label")));
        }
        let v = vertex(&to, line)?;
        set_in(v, k, Src::Input(l.index), line)?;
    }
    for (line, l, (from, p)) in pending_outs {
        if !l.is_output() {
            return Err(syntax(line, format!("{l} is not an output label")));
        }
        let u = vertex(&from, line)?;
        port_out(u, p, line)?;
        if outs.insert(l.index, (gens[u].outputs()[p], Src::Vertex(u, p))).is_some() {
            return Err(Error::DuplicateLabel(l));
        }
    }
    if let Some((a, b, color)) = identity {
        if !gens.is_empty() || !outs.is_empty() {
            return Err(syntax(1, "an identity wire cannot be combined with generators"));
        }
        outs.insert(b.index, (color, Src::Input(a.index)));
    }
    for (k, &i) in outs.keys().enumerate() {
        if i as usize != k + 1 {
            return Err(Error::NonContiguous(format!("output indices {:?}", outs.keys().collect::<Vec<_>>())));
        }
    }
    let mut raw = RawTerm { gens, ins: Vec::new(), outs: outs.into_values().collect() };
    for (v, ports) in ins.into_iter().enumerate() {
        let mut row = Vec::new();
        for (k, s) in ports.into_iter().enumerate() {
            row.push(s.ok_or_else(|| Error::Dangling(format!("input {} of vertex {} ({}) is unwired", k + 1, v + 1, raw.gens[v])))?);
        }
        raw.ins.push(row);
    }
    raw.validate()
}

/// Expression form when every vertex has one output, wiring form otherwise.
pub fn print_term(t: &Term) -> String {
    if t.generators().iter().all(|g| g.outputs().len() == 1) {
        print_expression(t)
    } else {
        print_wiring(t)
    }
}

fn print_expression(t: &Term) -> String {
    fn go(t: &Term, s: Src, color: Color, out: &mut String) {
        match s {
            Src::Input(i) => {
                out.push_str(&format!("x{i}{}", if color == Color::Closed { 'c' } else { 'o' }));
            }
            Src::Vertex(v, _) => {
                let g = t.generators()[v];
                out.push_str(&g.tag().to_ascii_lowercase());
                if !g.inputs().is_empty() {
                    out.push('(');
                    for (k, (&s, &c)) in t.inputs_of(v).iter().zip(g.inputs()).enumerate() {
                        if k > 0 {
                            out.push(',');
                        }
                        go(t, s, c, out);
                    }
                    out.push(')');
                }
            }
        }
    }
    let mut out = String::new();
    let (c, s) = t.free_outputs()[0];
    go(t, s, c, &mut out);
    out
}

pub fn print_wiring(t: &Term) -> String {
    let mut lines = Vec::new();
    if t.is_identity() {
        let c = if t.free_outputs()[0].0 == Color::Closed { 'c' } else { 'o' };
        return format!("id 1i 1o {c}");
    }
    for (v, g) in t.generators().iter().enumerate() {
        lines.push(format!("gen v{} {}", v + 1, g.tag()));
    }
    let targets = t.targets();
    for (u, ports) in targets.iter().enumerate() {
        for (p, tg) in ports.iter().enumerate() {
            if let Some(Target::Vertex(v, k)) = tg {
                lines.push(format!("wire v{}.out{} v{}.in{}", u + 1, p + 1, v + 1, k + 1));
            }
        }
    }
    for i in 1..=t.num_inputs() as u32 {
        if let Some(Target::Vertex(v, k)) = t.input_target(i) {
            lines.push(format!("in {i}i v{}.in{}", v + 1, k + 1));
        }
    }
    for (o, (_, s)) in t.free_outputs().iter().enumerate() {
        if let Src::Vertex(u, p) = s {
            lines.push(format!("out {}o v{}.out{}", o + 1, u + 1, p + 1));
        }
    }
    lines.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_literals() {
        let s = parse_type("{1i,4i,3o},(1o,2i),(2o,5i,3i),()").unwrap();
        assert_eq!(s.closed().len(), 3);
        assert_eq!(s.boundaries().len(), 3);
        assert_eq!(print_type(&s), "{1i,4i,3o},(2i,1o),(3i,2o,5i),()");
        assert_eq!(parse_type("{1o}").unwrap(), Generator::EC.signature());
        assert_eq!(parse_type("{},(2i,1o,1i)").unwrap(), parse_type("(1i,2i,1o)").unwrap());
        assert!(matches!(parse_type("{1i"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_type("{1i,1i,1o}"), Err(Error::DuplicateLabel(_))));
        assert!(matches!(parse_type("{1i,3i,1o}"), Err(Error::NonContiguous(_))));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_type("{1i,\n 2x}") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn expression_round_trip() {
        for text in ["o2c(mo(c2o(x1c),x2o))", "mc(x2c,x1c)", "ec", "x1o", "bv(bv(x1c))", "mo(eo,x1o)"] {
            let t = parse_term(text).unwrap();
            assert_eq!(print_term(&t), text);
            assert_eq!(parse_term(&print_term(&t)).unwrap(), t);
        }
    }

    #[test]
    fn expression_errors() {
        assert!(matches!(parse_term("mo(x1c,x2o)"), Err(Error::ColorMismatch(_))));
        assert!(matches!(parse_term("mc(x1c,x1c)"), Err(Error::DuplicateLabel(_))));
        assert!(matches!(parse_term("mc(x1c)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_term("cc(x1c)"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn wiring_round_trip() {
        let text = "gen a CC\ngen b MC\nin 1i a.in1\nin 2i b.in2\nwire a.out1 b.in1\nout 1o b.out1\nout 2o a.out2";
        let t = parse_term(text).unwrap();
        assert_eq!(t.num_outputs(), 2);
        assert_eq!(parse_term(&print_term(&t)).unwrap(), t);
        let id = parse_term("id 1i 1o o").unwrap();
        assert_eq!(id, Term::identity(Color::Open));
        assert_eq!(parse_term(&print_term(&id)).unwrap(), id);
        let same = parse_term("gen a CC; gen b MC; in 1i a.in1; in 2i b.in2; wire a.out1 b.in1; out 1o b.out1; out 2o a.out2");
        assert_eq!(same.unwrap(), t);
    }

    #[test]
    fn wiring_loop_is_rejected() {
        let text = "gen a CC; gen b MC; in 1i a.in1; wire a.out1 b.in1; wire a.out2 b.in2; out 1o b.out1";
        assert_eq!(parse_term(text).unwrap_err(), Error::Cycle);
    }
}
