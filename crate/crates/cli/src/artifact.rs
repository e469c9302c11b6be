//! Loading and writing the file formats the commands exchange.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use monodt::boolfn::TruthTable;
use monodt::circuits::{parse_netlist, Circuit};
use monodt::decomp::MonotoneDecomposition;
use monodt::serial::{from_json, to_json, Model};

/// Anything a file on disk can hold.
pub enum Artifact {
    Table(TruthTable),
    Decomposition(MonotoneDecomposition),
    Circuit(Circuit),
    Model(Model),
}

impl Artifact {
    pub fn describe(&self) -> String {
        match self {
            Artifact::Table(t) => format!("truth table (n={})", t.arity()),
            Artifact::Decomposition(d) => format!("decomposition (n={})", d.arity()),
            Artifact::Circuit(c) => format!("netlist ({} inputs)", c.n_inputs()),
            Artifact::Model(m) => format!("{} model (n={})", m.kind(), m.arity()),
        }
    }

    /// The function the artifact computes, evaluated exhaustively.
    pub fn to_table(&self, max_n: usize) -> Result<TruthTable> {
        let n = match self {
            Artifact::Table(t) => t.arity(),
            Artifact::Decomposition(d) => d.arity(),
            Artifact::Circuit(c) => c.n_inputs(),
            Artifact::Model(m) => m.arity(),
        };
        if n > max_n {
            bail!(
                "{} has {n} variables, above --max-n {max_n}",
                self.describe()
            );
        }
        Ok(match self {
            Artifact::Table(t) => t.clone(),
            Artifact::Decomposition(d) => d.xor(),
            Artifact::Circuit(c) => {
                if c.outputs().len() != 1 {
                    bail!("netlist has {} outputs; expected one", c.outputs().len());
                }
                c.truth_table_of(0)?
            }
            Artifact::Model(m) => m.to_table()?,
        })
    }
}

fn first_line(text: &str) -> &str {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("")
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Guesses the format from the first meaningful line.
pub fn load(path: &Path, max_n: usize) -> Result<Artifact> {
    let text = read(path)?;
    let head = first_line(&text);
    let ctx = || format!("cannot parse {}", path.display());
    if head.starts_with('{') {
        load_model_text(&text, path).map(Artifact::Model)
    } else if head.starts_with("n=") && head.contains("m=") {
        Ok(Artifact::Decomposition(
            MonotoneDecomposition::parse_text(&text, max_n).with_context(ctx)?,
        ))
    } else if head.starts_with("n=") {
        Ok(Artifact::Table(
            TruthTable::parse_text(&text, max_n).with_context(ctx)?,
        ))
    } else {
        Ok(Artifact::Circuit(parse_netlist(&text).with_context(ctx)?))
    }
}

fn load_model_text(text: &str, path: &Path) -> Result<Model> {
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let model = from_json(text, |name| {
        fs::read_to_string(dir.join(name))
            .map_err(|e| monodt::Error::Format(format!("cannot read sidecar {name}: {e}")))
    })
    .with_context(|| format!("cannot parse {}", path.display()))?;
    Ok(model)
}

pub fn load_table(path: &Path, max_n: usize) -> Result<TruthTable> {
    load(path, max_n)?.to_table(max_n)
}

pub fn load_model(path: &Path, max_n: usize) -> Result<Model> {
    match load(path, max_n)? {
        Artifact::Model(m) => Ok(m),
        other => bail!(
            "{} holds a {}, not a model",
            path.display(),
            other.describe()
        ),
    }
}

pub fn load_circuit(path: &Path, max_n: usize) -> Result<Circuit> {
    match load(path, max_n)? {
        Artifact::Circuit(c) => Ok(c),
        other => bail!(
            "{} holds a {}, not a netlist",
            path.display(),
            other.describe()
        ),
    }
}

/// Where a command's artifact goes. Report lines go to stdout when the
/// artifact is written to a file and to stderr when it is printed.
pub struct Sink {
    out: Option<PathBuf>,
}

impl Sink {
    pub fn new(out: Option<PathBuf>) -> Self {
        Sink { out }
    }

    pub fn report(&self, line: impl AsRef<str>) {
        if self.out.is_some() {
            println!("{}", line.as_ref());
        } else {
            eprintln!("{}", line.as_ref());
        }
    }

    pub fn text(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    /// Writes the model document and its sidecar netlists next to it.
    pub fn model(&self, m: &Model) -> Result<()> {
        let stem = self
            .out
            .as_ref()
            .and_then(|p| p.file_stem())
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "model".into());
        let mut saved = to_json(m, &stem);
        saved.json.push('\n');
        match &self.out {
            Some(p) => {
                let dir = p.parent().unwrap_or(Path::new(""));
                for (name, body) in &saved.sidecars {
                    let sp = dir.join(name);
                    fs::write(&sp, body)
                        .with_context(|| format!("cannot write {}", sp.display()))?;
                }
                self.text(&saved.json)
            }
            None if !saved.sidecars.is_empty() => {
                bail!("the model references circuits; pass --out so they can be written")
            }
            None => self.text(&saved.json),
        }
    }
}
