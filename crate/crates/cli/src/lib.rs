//! Command-line front end for the `dlbraid` library.
//!
//! [`run`] renders the full output of a command as a string so that tests
//! can check it byte for byte; the binary only prints it.

use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use dlbraid::braid::markov::{markov_search, SearchBounds};
use dlbraid::braid::BraidWord;
use dlbraid::diagram::{braid_from_diagram, closure_diagram, gauss_data, DlDiagram};
use dlbraid::hecke::{self, HeckeWord};
use dlbraid::skein::{self, Normalization};
use dlbraid::Error;

#[derive(Parser, Debug)]
#[command(name = "dlbraid", version, about = "Braids with double lines: Hecke normal forms, traces, Gauss data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub output: OutputOpts,
}

#[derive(Args, Debug, Clone, Copy, Default)]
pub struct OutputOpts {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Use Unicode symbols in text output.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Markov trace of a classical word, as a polynomial in x1.
    Trace {
        word: String,
        #[arg(long, default_value = "framed", value_parser = parse_normalization)]
        normalization: Normalization,
        /// Also print the torsion-reduced Chebyshev form.
        #[arg(long)]
        hp: bool,
    },
    /// Unreduced bracket state sum of a classical word.
    Bracket { word: String },
    /// Normal form of a Hecke generator word such as `n=2; T1 X1'`.
    HeckeNf { word: String },
    /// Image of a classical braid word in the affine Hecke algebra.
    Phi { word: String },
    /// Product of two Hecke generator words.
    Mul { left: String, right: String },
    /// Gauss data of a diagram file, or of the closure of `--word`.
    Gauss {
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        word: Option<String>,
    },
    /// Braid word whose closure has the Gauss data of the given diagram.
    BraidOfDiagram {
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        word: Option<String>,
    },
    /// Shortest sequence of dl-Markov moves between two words.
    MarkovSearch {
        from: String,
        to: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long)]
        max_strands: Option<usize>,
        #[arg(long)]
        max_length: Option<usize>,
    },
    /// Torsion-reduced Chebyshev coefficients of the trace of a word.
    HpNormalForm {
        word: String,
        #[arg(long, default_value = "framed", value_parser = parse_normalization)]
        normalization: Normalization,
    },
}

fn parse_normalization(s: &str) -> std::result::Result<Normalization, String> {
    s.parse().map_err(|e: skein::SkeinError| e.to_string())
}

fn braid_word(text: &str) -> Result<BraidWord> {
    text.parse::<BraidWord>()
        .map_err(Error::from)
        .with_context(|| format!("cannot parse braid word `{text}`"))
}

fn hecke_word(text: &str) -> Result<HeckeWord> {
    text.parse::<HeckeWord>()
        .map_err(Error::from)
        .with_context(|| format!("cannot parse Hecke word `{text}`"))
}

fn load_diagram(file: Option<&PathBuf>, word: Option<&str>) -> Result<DlDiagram> {
    match (file, word) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            DlDiagram::from_json(&text)
                .map_err(Error::from)
                .with_context(|| format!("invalid diagram in {}", path.display()))
        }
        (None, Some(w)) => Ok(closure_diagram(&braid_word(w)?)),
        (None, None) => bail!("give a diagram file or --word"),
    }
}

fn text_or_json(out: OutputOpts, text: String, plain: String, pretty: String) -> String {
    if out.json {
        json!({ "result": text }).to_string()
    } else if out.pretty {
        pretty
    } else {
        plain
    }
}

pub fn run(cli: &Cli) -> Result<String> {
    let out = cli.output;
    match &cli.command {
        Command::Trace { word, normalization, hp } => {
            let w = braid_word(word)?;
            let t = skein::trace(&w, *normalization).map_err(Error::from)?;
            let hp_form = hp.then(|| skein::hp_reduce(&skein::chebyshev_coeffs(&t)));
            if out.json {
                let mut v = json!({ "normalization": normalization.to_string(), "trace": t.to_string() });
                if let Some(h) = &hp_form {
                    v["hp"] = Value::String(h.to_string());
                }
                return Ok(v.to_string());
            }
            let mut lines = vec![if out.pretty { t.pretty() } else { t.to_string() }];
            if let Some(h) = hp_form {
                lines.push(if out.pretty { h.pretty() } else { h.to_string() });
            }
            Ok(lines.join("\n"))
        }
        Command::Bracket { word } => {
            let b = skein::bracket(&braid_word(word)?).map_err(Error::from)?;
            Ok(text_or_json(out, b.to_string(), b.to_string(), b.pretty()))
        }
        Command::HeckeNf { word } => {
            let e = hecke_word(word)?.eval().map_err(Error::from)?;
            Ok(text_or_json(out, e.to_string(), e.to_string(), e.pretty()))
        }
        Command::Phi { word } => {
            let e = hecke::phi(&braid_word(word)?).map_err(Error::from)?;
            Ok(text_or_json(out, e.to_string(), e.to_string(), e.pretty()))
        }
        Command::Mul { left, right } => {
            let a = hecke_word(left)?.eval().map_err(Error::from)?;
            let b = hecke_word(right)?.eval().map_err(Error::from)?;
            let e = hecke::mul(&a, &b).map_err(Error::from)?;
            Ok(text_or_json(out, e.to_string(), e.to_string(), e.pretty()))
        }
        Command::Gauss { file, word } => {
            let d = load_diagram(file.as_ref(), word.as_deref())?;
            Ok(gauss_data(&d).map_err(Error::from)?.to_json())
        }
        Command::BraidOfDiagram { file, word } => {
            let d = load_diagram(file.as_ref(), word.as_deref())?;
            let w = braid_from_diagram(&d).map_err(Error::from)?;
            Ok(text_or_json(out, w.to_string(), w.to_string(), w.pretty()))
        }
        Command::MarkovSearch { from, to, depth, max_strands, max_length } => {
            let a = braid_word(from)?;
            let b = braid_word(to)?;
            let bounds = SearchBounds {
                max_strands: max_strands.unwrap_or(a.strands().max(b.strands()) + 1),
                max_length: max_length.unwrap_or(a.len().max(b.len()) + 4),
            };
            let path = markov_search(&a, &b, *depth, &bounds);
            if out.json {
                let steps = path.as_ref().map(|p| {
                    p.iter().map(|s| json!({ "move": s.mv.to_string(), "word": s.word.to_string() })).collect::<Vec<_>>()
                });
                return Ok(json!({ "found": path.is_some(), "steps": steps }).to_string());
            }
            Ok(match path {
                None => "not-found within bounds".to_string(),
                Some(p) if p.is_empty() => "identical words (0 moves)".to_string(),
                Some(p) => p
                    .iter()
                    .map(|s| {
                        let w = if out.pretty { s.word.pretty() } else { s.word.to_string() };
                        format!("{} -> {w}", s.mv)
                    })
                    .collect::<Vec<_>>()
                    .join("\n"),
            })
        }
        Command::HpNormalForm { word, normalization } => {
            let t = skein::trace(&braid_word(word)?, *normalization).map_err(Error::from)?;
            let h = skein::hp_reduce(&skein::chebyshev_coeffs(&t));
            Ok(text_or_json(out, h.to_string(), h.to_string(), h.pretty()))
        }
    }
}
