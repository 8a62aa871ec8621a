//! Command-line driver for `krall-core`: family tables, zeros, matrix export
//! and identity verification with JSON, CSV or text output.

pub mod cli;
pub mod commands;
pub mod config;
pub mod output;

use std::io::Write;

use anyhow::Result;

use crate::cli::{Cli, Command, Format, Mode};
use crate::config::RunConfig;
use crate::output::{describe_cell, write_atomic, Document};

/// Runs a parsed command line, writes its output and returns whether every
/// requested check passed.
pub fn run(cli: &Cli) -> Result<bool> {
    let g = &cli.global;
    let doc = match &cli.command {
        Command::Family => {
            let cfg = RunConfig::from_args(g, "family", None, Mode::Rational, Format::Json, None)?;
            commands::family::run(&cfg)?
        }
        Command::Zeros => {
            let cfg = RunConfig::from_args(g, "zeros", None, Mode::Float, Format::Json, None)?;
            commands::zeros::run(&cfg)?
        }
        Command::Matrix(args) => {
            let cfg = RunConfig::from_args(g, "matrix", None, Mode::Float, Format::Csv, None)?;
            commands::matrix::run(&cfg, args)?
        }
        Command::Verify(args) => {
            let cfg = RunConfig::from_args(
                g,
                "verify",
                Some("all"),
                Mode::DoubleDouble,
                Format::Json,
                Some("2..12"),
            )?;
            commands::verify::run(&cfg, args)?
        }
        Command::Report(args) => match &args.input {
            Some(path) => {
                let text = std::fs::read_to_string(path)?;
                let doc = Document::from_json(&text)?;
                emit(&doc, g.format.unwrap_or(Format::Text), g.out.as_deref())?;
                return Ok(doc.summary.pass);
            }
            None => {
                let cfg = RunConfig::from_args(
                    g,
                    "report",
                    Some("all"),
                    Mode::DoubleDouble,
                    Format::Text,
                    Some("2..12"),
                )?;
                commands::verify::run_all(&cfg)?
            }
        },
    };
    let format = g.format.unwrap_or(match cli.command {
        Command::Matrix(_) => Format::Csv,
        Command::Report(_) => Format::Text,
        _ => Format::Json,
    });
    emit(&doc, format, g.out.as_deref())?;
    if !doc.summary.pass {
        match &doc.summary.worst {
            Some(w) => eprintln!("check failed; worst cell: {}", describe_cell(w)),
            None => eprintln!("check failed; see the report for the failing consistency check"),
        }
    }
    Ok(doc.summary.pass)
}

fn emit(doc: &Document, format: Format, out: Option<&std::path::Path>) -> Result<()> {
    let text = doc.render(format)?;
    match out {
        Some(path) => write_atomic(path, &text),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}
