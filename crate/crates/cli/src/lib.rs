//! Command-line driver. `run_command` does all the work and returns the
//! exit code with the captured output, so golden tests need no process.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use ocsft::{
    canonical_basis, cyclic_act_class, desc_from_type, embedding_codim, enumerate_terms,
    enumerate_types, equiv0, graded_dims_with, normalize0, operation_degree, parse_label, parse_term, parse_type,
    print_term, psi_contract_class, reduce_class, type_of, CactiDescriptor, ClassVector, Color, Error, Label,
    ManifoldDims, SurfaceType, Term, TypeSignature,
};

/// Cap used when `--cap` is absent and `OCSFT_CAP` is unset.
pub const DEFAULT_CAP: usize = 6;

#[derive(Parser, Debug)]
#[command(name = "ocsft", version, about = "Symbolic engine for genus-0 open-closed string topology operations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CapArg {
    /// Vertex cap; defaults to $OCSFT_CAP or 6.
    #[arg(long)]
    cap: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sew output O of type S into input I of type T.
    TypeCompose { s: String, o: String, t: String, i: String },
    /// Print the type of a term.
    TermType { term: String },
    /// Degree-0 normal form of a term.
    Normalize { term: String },
    /// Whether two degree-0 terms are equivalent.
    Equiv { a: String, b: String },
    /// List terms of a type, or types of a signature.
    Enumerate {
        /// Type whose terms are listed.
        ty: Option<String>,
        #[arg(long, default_value_t = 0)]
        degree: usize,
        #[arg(long, default_value_t = 3)]
        max_vertices: usize,
        /// Closed inputs, open inputs, closed outputs, open outputs.
        #[arg(long, value_delimiter = ',')]
        signature: Option<Vec<usize>>,
        /// Exact number of nonempty boundaries.
        #[arg(long)]
        nonempty: Option<usize>,
        #[arg(long, default_value_t = 0)]
        max_empty: usize,
    },
    /// Graded homology dimensions of a component.
    Dims {
        ty: String,
        #[command(flatten)]
        cap: CapArg,
        #[arg(long, default_value_t = ocsft::homology::DEFAULT_SLACK)]
        slack: usize,
    },
    /// Basis representatives of every degree.
    Basis {
        ty: String,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Coordinates of a term's class in the basis of its degree.
    Reduce {
        term: String,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Contract open inputs I and J of a term's class.
    Psi {
        term: String,
        i: String,
        j: String,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Cyclic action of a permutation such as 2,3,1 on a one-output term.
    Cyclic {
        term: String,
        #[arg(value_delimiter = ',')]
        sigma: Vec<u32>,
    },
    /// Operation degree of a type literal or a descriptor
    /// `c=..,o=..,circles=..,intervals=..,black=..,out=closed|open`.
    Degree {
        what: String,
        #[arg(short, allow_negative_numbers = true)]
        m: i64,
        #[arg(short, allow_negative_numbers = true)]
        k: i64,
        /// Print the embedding codimension instead.
        #[arg(long)]
        codim: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Domain(String),
    Usage(String),
    /// Domain-level negative answer printed on stdout.
    Answer(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. } => Failure::Usage(e.to_string()),
            e => Failure::Domain(e.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

/// Literal text, or the contents of a file when written `@path`.
fn source(arg: &str) -> Res<String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn term(arg: &str) -> Res<Term> {
    Ok(parse_term(&source(arg)?)?)
}

fn ty(arg: &str) -> Res<SurfaceType> {
    Ok(parse_type(&source(arg)?)?)
}

/// `3` means `3i`.
fn input_label(arg: &str) -> Res<Label> {
    if arg.chars().all(|c| c.is_ascii_digit()) {
        return Ok(parse_label(&format!("{arg}i"))?);
    }
    Ok(parse_label(arg)?)
}

fn cap(c: &CapArg) -> Res<usize> {
    if let Some(v) = c.cap {
        return Ok(v);
    }
    match std::env::var("OCSFT_CAP") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("OCSFT_CAP is not a number: {v}"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn one_line(t: &Term) -> String {
    print_term(t).trim().replace('\n', "; ")
}

fn print_class(out: &mut String, v: &ClassVector) {
    if v.is_zero() {
        out.push_str("0\n");
    }
    for (t, c) in v.terms() {
        let _ = writeln!(out, "{c} {}", one_line(t));
    }
}

fn descriptor(text: &str) -> Res<CactiDescriptor> {
    let mut fields = std::collections::BTreeMap::new();
    for part in text.split(',') {
        let (k, v) = part.split_once('=').ok_or_else(|| Failure::Usage(format!("expected key=value, got {part}")))?;
        fields.insert(k.trim(), v.trim());
    }
    let num = |k: &str| -> Res<usize> {
        let v = fields.get(k).ok_or_else(|| Failure::Usage(format!("descriptor is missing {k}")))?;
        v.parse().map_err(|_| Failure::Usage(format!("{k}={v} is not a count")))
    };
    let (c, o, circles) = (num("c")?, num("o")?, num("circles")?);
    let intervals = if fields.contains_key("intervals") { num("intervals")? } else { o };
    let black = if fields.contains_key("black") { Some(num("black")?) } else { None };
    let out = match fields.get("out").copied() {
        Some("closed") => Color::Closed,
        Some("open") => Color::Open,
        other => return Err(Failure::Usage(format!("out must be closed or open, got {other:?}"))),
    };
    Ok(CactiDescriptor::new(c, o, circles, intervals, black, out)?)
}

fn execute(cmd: Command, out: &mut String) -> Res<()> {
    match cmd {
        Command::TypeCompose { s, o, t, i } => {
            let (s, t) = (ty(&s)?, ty(&t)?);
            let (o, i) = (parse_label(&o)?, parse_label(&i)?);
            let sewn = match s.color_of(o) {
                Some(Color::Open) => s.sew_open(o, &t, i)?,
                _ => s.sew_closed(o, &t, i)?,
            };
            let _ = writeln!(out, "{sewn}");
        }
        Command::TermType { term: t } => {
            let _ = writeln!(out, "{}", type_of(&term(&t)?));
        }
        Command::Normalize { term: t } => {
            let _ = writeln!(out, "{}", one_line(&normalize0(&term(&t)?)?));
        }
        Command::Equiv { a, b } => {
            if equiv0(&term(&a)?, &term(&b)?)? {
                out.push_str("equivalent\n");
            } else {
                return Err(Failure::Answer("not equivalent\n".into()));
            }
        }
        Command::Enumerate { ty: t, degree, max_vertices, signature, nonempty, max_empty } => match (t, signature) {
            (Some(t), None) => {
                for x in enumerate_terms(&ty(&t)?, degree, max_vertices) {
                    let _ = writeln!(out, "{}", one_line(&x));
                }
            }
            (None, Some(sig)) => {
                if sig.len() != 4 {
                    return Err(Failure::Usage("--signature takes four counts".into()));
                }
                let sig = TypeSignature { closed_in: sig[0], open_in: sig[1], closed_out: sig[2], open_out: sig[3] };
                let mut types: Vec<String> = enumerate_types(sig, nonempty, max_empty).iter().map(|s| s.to_string()).collect();
                types.sort();
                for s in types {
                    let _ = writeln!(out, "{s}");
                }
            }
            _ => return Err(Failure::Usage("give either a type or --signature".into())),
        },
        Command::Dims { ty: t, cap: c, slack } => {
            let g = graded_dims_with(&ty(&t)?, cap(&c)?, slack)?;
            let _ = writeln!(out, "# cap={} slack={} stable={}", g.cap, g.slack, if g.stable { "yes" } else { "no" });
            for (d, n) in &g.dims {
                let _ = writeln!(out, "{d} {n}");
            }
        }
        Command::Basis { ty: t, cap: c } => {
            for v in canonical_basis(&ty(&t)?, cap(&c)?)? {
                for t in v.terms().keys() {
                    let _ = writeln!(out, "{} {}", v.degree(), one_line(t));
                }
            }
        }
        Command::Reduce { term: t, cap: c } => {
            let v = ClassVector::from_term(&term(&t)?);
            let coords: Vec<String> = reduce_class(&v, cap(&c)?)?.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "{}", coords.join(" "));
        }
        Command::Psi { term: t, i, j, cap: c } => {
            let v = ClassVector::from_term(&term(&t)?);
            match psi_contract_class(&v, input_label(&i)?, input_label(&j)?, cap(&c)?) {
                Ok(w) => print_class(out, &w),
                Err(Error::ContractionZero(_)) => return Err(Failure::Answer("zero\n".into())),
                Err(e) => return Err(e.into()),
            }
        }
        Command::Cyclic { term: t, sigma } => {
            let w = cyclic_act_class(&ClassVector::from_term(&term(&t)?), &sigma)?;
            print_class(out, &w);
        }
        Command::Degree { what, m, k, codim } => {
            let d = if what.contains('=') { descriptor(&what)? } else { desc_from_type(&ty(&what)?)? };
            let dims = ManifoldDims::new(m, k)?;
            let v = if codim { embedding_codim(&d, dims)? } else { operation_degree(&d, dims) };
            let _ = writeln!(out, "{v}");
        }
    }
    Ok(())
}

/// Runs one invocation. `args` excludes the program name.
pub fn run_command<S: AsRef<str>>(args: &[S]) -> Outcome {
    let argv = std::iter::once("ocsft").chain(args.iter().map(|a| a.as_ref()));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut stdout = String::new();
    match execute(cli.command, &mut stdout) {
        Ok(()) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(Failure::Answer(text)) => Outcome { code: 1, stdout: text, stderr: String::new() },
        Err(Failure::Domain(msg)) => Outcome { code: 1, stdout, stderr: format!("error: {msg}\n") },
        Err(Failure::Usage(msg)) => Outcome { code: 2, stdout, stderr: format!("error: {msg}\n") },
    }
}
