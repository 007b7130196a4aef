//! Resolving `--input`, `--inline` and `--example` into library objects.

use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::Args;

use iwachar::fixtures::{self, Example};
use iwachar::groups::FiniteGroup;
use iwachar::io::{self, GroupDoc, ModuleDoc, RepDoc};
use iwachar::reps::{ModelGN, Rep};
use iwachar::skewgraded::Presentation;

use crate::UsageError;

#[derive(Debug, Clone, Args)]
pub struct Source {
    /// Read the input document from a file.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["inline", "example"])]
    pub input: Option<PathBuf>,
    /// Take the input document from the command line.
    #[arg(long, value_name = "JSON", conflicts_with = "example")]
    pub inline: Option<String>,
    /// Use a built-in example, e.g. `heisenberg(1,3,3)`.
    #[arg(long, value_name = "ID")]
    pub example: Option<String>,
    /// Module of the example's catalog; every module when omitted and the command allows it.
    #[arg(long, value_name = "NAME", requires = "example")]
    pub module: Option<String>,
}

/// A module to analyse, with a display name and an optional cutoff from its document.
pub struct NamedModule {
    pub name: String,
    pub presentation: Presentation,
    pub cutoff: Option<i64>,
}

pub enum Loaded {
    Example(Example),
    Text(String),
}

impl Source {
    fn load(&self) -> Result<Loaded> {
        if let Some(id) = &self.example {
            return Ok(Loaded::Example(fixtures::by_id(id)?));
        }
        if let Some(path) = &self.input {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))
                .map_err(|e| UsageError(format!("{e:#}")))?;
            return Ok(Loaded::Text(text));
        }
        if let Some(text) = &self.inline {
            return Ok(Loaded::Text(text.clone()));
        }
        Err(UsageError("one of --input, --inline or --example is required".into()).into())
    }

    pub fn example(&self) -> Result<Option<Example>> {
        match &self.example {
            Some(_) => match self.load()? {
                Loaded::Example(ex) => Ok(Some(ex)),
                Loaded::Text(_) => unreachable!("--example always loads an example"),
            },
            None => Ok(None),
        }
    }

    /// A group from a group document or an example's model.
    pub fn group(&self, max_order: usize) -> Result<Arc<FiniteGroup>> {
        match self.load()? {
            Loaded::Example(ex) => Ok(Arc::clone(ex.model.group())),
            Loaded::Text(text) => {
                let doc: GroupDoc = io::parse(&text)?;
                Ok(Arc::new(doc.to_group(max_order)?))
            }
        }
    }

    /// A representation from a representation document or an example's `V`.
    pub fn rep(&self, max_order: usize) -> Result<Rep> {
        match self.load()? {
            Loaded::Example(ex) => Ok(ex.model.v().clone()),
            Loaded::Text(text) => {
                let doc: RepDoc = io::parse(&text)?;
                Ok(doc.to_rep(max_order)?)
            }
        }
    }

    /// The model and the selected modules. Without `--module`, an example
    /// yields its whole catalog only when `all_allowed` is set.
    pub fn modules(&self, max_order: usize, all_allowed: bool) -> Result<(Arc<ModelGN>, Vec<NamedModule>)> {
        match self.load()? {
            Loaded::Example(ex) => {
                let chosen: Vec<NamedModule> = match &self.module {
                    Some(name) => {
                        vec![NamedModule { name: name.clone(), presentation: ex.entry(name)?.clone(), cutoff: None }]
                    }
                    None if all_allowed => ex
                        .catalog
                        .iter()
                        .map(|e| NamedModule {
                            name: e.name.clone(),
                            presentation: e.presentation.clone(),
                            cutoff: None,
                        })
                        .collect(),
                    None => bail!(UsageError(format!(
                        "--module is required; {} has {}",
                        ex.name,
                        ex.catalog.iter().map(|e| e.name.as_str()).collect::<Vec<_>>().join(", ")
                    ))),
                };
                Ok((ex.model, chosen))
            }
            Loaded::Text(text) => {
                let doc: ModuleDoc = io::parse(&text)?;
                let (model, presentation, cutoff) = doc.resolve(max_order)?;
                Ok((model, vec![NamedModule { name: "input".into(), presentation, cutoff }]))
            }
        }
    }
}
