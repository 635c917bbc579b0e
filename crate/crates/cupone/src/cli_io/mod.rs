//! Input files, the command set of the `cupone` binary, and deterministic reports.

mod commands;
mod report;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

pub use commands::run;
pub use report::{group_json, int_json, ints_json, Format, Report};

use crate::binomial_ring::RingSpec;
use crate::delta_cochains::{presentation_complex, DeltaSet, PresentedGroup};
use crate::error::{Error, Result};
use crate::par::Execution;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verb {
    Cohomology,
    MinimalModel,
    Kappa,
    Compare,
    Massey,
    GroupRealize,
    Bar,
    VerifyAxioms,
}

impl Verb {
    pub const ALL: [Verb; 8] = [
        Verb::Cohomology,
        Verb::MinimalModel,
        Verb::Kappa,
        Verb::Compare,
        Verb::Massey,
        Verb::GroupRealize,
        Verb::Bar,
        Verb::VerifyAxioms,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Verb::Cohomology => "cohomology",
            Verb::MinimalModel => "minimal-model",
            Verb::Kappa => "kappa",
            Verb::Compare => "compare",
            Verb::Massey => "massey",
            Verb::GroupRealize => "group-realize",
            Verb::Bar => "bar",
            Verb::VerifyAxioms => "verify-axioms",
        }
    }

    // (min, max) number of input files
    fn arity(&self) -> (usize, usize) {
        match self {
            Verb::Compare => (2, 2),
            Verb::Bar => (0, 0),
            Verb::VerifyAxioms => (0, 1),
            _ => (1, 1),
        }
    }
}

impl fmt::Display for Verb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Verb {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Verb::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Parse { line: 0, msg: format!("unknown command `{s}`") })
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub stages: u32,
    pub weight_cap: u32,
    pub format: Format,
    pub exec: Execution,
    /// `bar`: `Zp:3`, `Z/4`, or a comma-separated product.
    pub group: Option<String>,
    pub max_dim: usize,
    /// `massey`: 1-based triples; empty means all.
    pub triples: Vec<[usize; 3]>,
    pub forget_torsion: bool,
    /// `group-realize` over Z: audit box radius.
    pub radius: i64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            stages: 2,
            weight_cap: 6,
            format: Format::Text,
            exec: Execution::Parallel,
            group: None,
            max_dim: 2,
            triples: Vec::new(),
            forget_torsion: false,
            radius: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Command {
    pub verb: Verb,
    /// Overrides the ring of Δ-set files; presentations default to Z.
    pub ring: Option<RingSpec>,
    pub inputs: Vec<PathBuf>,
    pub options: Options,
}

impl Command {
    pub fn new(verb: Verb, inputs: Vec<PathBuf>) -> Self {
        Command { verb, ring: None, inputs, options: Options::default() }
    }

    /// Checks inputs and options before any computation.
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.verb.arity();
        let n = self.inputs.len();
        if n < lo || n > hi {
            let want = if lo == hi { format!("{lo}") } else { format!("{lo} to {hi}") };
            return Err(Error::Usage(format!("`{}` takes {want} input file(s), got {n}", self.verb)));
        }
        if self.options.stages == 0 {
            return Err(Error::OutOfRange("--stages must be at least 1".into()));
        }
        if self.verb == Verb::Bar && self.options.group.is_none() {
            return Err(Error::Usage("`bar` needs --group".into()));
        }
        if self.verb == Verb::Bar && !(1..=3).contains(&self.options.max_dim) {
            return Err(Error::OutOfRange("--max-dim must be 1, 2 or 3".into()));
        }
        if self.options.triples.iter().flatten().any(|&i| i == 0) {
            return Err(Error::OutOfRange("triples are 1-based".into()));
        }
        if self.options.radius < 0 {
            return Err(Error::OutOfRange("--radius must be nonnegative".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Delta(DeltaSet),
    Presentation(PresentedGroup),
}

/// A parsed input with the Δ-set all computations run on.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub name: String,
    pub source: Source,
    pub delta: DeltaSet,
}

impl Loaded {
    pub fn ring(&self) -> RingSpec {
        self.delta.ring()
    }

    /// The file text this input was read from, in canonical form.
    pub fn serialize(&self) -> String {
        match &self.source {
            Source::Delta(x) => x.render(),
            Source::Presentation(p) => p.render(),
        }
    }

    pub fn presentation(&self) -> Option<&PresentedGroup> {
        match &self.source {
            Source::Presentation(p) => Some(p),
            Source::Delta(_) => None,
        }
    }
}

fn is_presentation(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with("gens:"))
}

/// Parses a Δ-set or presentation file; a presentation becomes its presentation complex.
pub fn parse_input_text(name: &str, text: &str, ring: Option<RingSpec>) -> Result<Loaded> {
    if is_presentation(text) {
        let p = PresentedGroup::parse(text)?;
        let pc = presentation_complex(&p, ring.unwrap_or(RingSpec::Z))?;
        pc.delta.check_faces()?;
        Ok(Loaded { name: name.to_string(), source: Source::Presentation(p), delta: pc.delta })
    } else {
        let x = DeltaSet::parse(text)?;
        let delta = match ring {
            Some(r) => x.with_ring(r),
            None => x.clone(),
        };
        Ok(Loaded { name: name.to_string(), source: Source::Delta(x), delta })
    }
}

pub fn parse_input(path: &Path, ring: Option<RingSpec>) -> Result<Loaded> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_input_text(&path.display().to_string(), &text, ring)
}

pub fn parse_inputs(paths: &[PathBuf], ring: Option<RingSpec>) -> Result<Vec<Loaded>> {
    paths.iter().map(|p| parse_input(p, ring)).collect()
}
