//! Report documents and their JSON, CSV and text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::config::NSpec;

/// A double written with 17 significant digits, so parsing it back gives the
/// same bits. Non-finite values are written as strings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Real(pub f64);

impl Real {
    pub fn text(self) -> String {
        let v = self.0;
        if v.is_nan() {
            "NaN".into()
        } else if v.is_infinite() {
            if v > 0.0 { "inf" } else { "-inf" }.into()
        } else {
            format!("{v:.16e}")
        }
    }
}

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            let raw = RawValue::from_string(self.text()).map_err(serde::ser::Error::custom)?;
            raw.serialize(serializer)
        } else {
            serializer.serialize_str(&self.text())
        }
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Number(f64),
            Text(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Number(v) => Ok(Real(v)),
            Repr::Text(t) => match t.as_str() {
                "NaN" => Ok(Real(f64::NAN)),
                "inf" => Ok(Real(f64::INFINITY)),
                "-inf" => Ok(Real(f64::NEG_INFINITY)),
                _ => Err(serde::de::Error::custom(format!("not a real number: {t:?}"))),
            },
        }
    }
}

/// A matrix entry or coefficient: a double, or an exact rational as `"p/q"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Real(Real),
    Exact(String),
}

impl Number {
    pub fn text(&self) -> String {
        match self {
            Number::Real(r) => r.text(),
            Number::Exact(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub command: String,
    pub family: String,
    pub params: BTreeMap<String, String>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<NSpec>,
    pub tolerance: Real,
    pub seed: u64,
    pub mode: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialRow {
    pub family: String,
    pub params: String,
    pub degree: usize,
    /// Ascending powers.
    pub coeffs: Vec<Number>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroRow {
    pub family: String,
    pub params: String,
    #[serde(rename = "N")]
    pub big_n: usize,
    /// 1-based index in increasing order.
    pub n: usize,
    pub x: Real,
    pub residual: Real,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixOut {
    pub kind: String,
    pub provenance: String,
    pub dim: usize,
    /// 1-based rows whose diagonal came from the general assembly.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flagged: Vec<usize>,
    pub rows: Vec<Vec<Number>>,
}

/// One residual of one check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub identity: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub family: String,
    pub params: String,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub m: usize,
    /// 1-based node; absent for eigenvalue comparisons.
    pub n: Option<usize>,
    pub residual: Real,
    pub pass: bool,
}

/// Outcome of one check on one `(family, N)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub identity: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub family: String,
    pub params: String,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub max_residual: Real,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<Real>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub skipped: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_residual: Option<Real>,
    pub pass: bool,
    /// The largest residual among failing results.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worst: Option<ResultRow>,
    /// Variants that pass every cell, when both were requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub passing_variants: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub meta: Meta,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub polynomials: Vec<PolynomialRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub zeros: Vec<ZeroRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixOut>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub results: Vec<ResultRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckRow>,
    pub summary: Summary,
}

impl Document {
    pub fn new(meta: Meta) -> Self {
        Self {
            meta,
            polynomials: Vec::new(),
            zeros: Vec::new(),
            matrix: None,
            results: Vec::new(),
            checks: Vec::new(),
            summary: Summary {
                max_residual: None,
                pass: true,
                worst: None,
                passing_variants: None,
            },
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// One-line description of how the output was produced.
    pub fn provenance(&self) -> String {
        let m = &self.meta;
        let params: Vec<String> = m.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut line = format!("krall {} {}; family {}", env!("CARGO_PKG_VERSION"), m.command, m.family);
        if !params.is_empty() {
            let _ = write!(line, " ({})", params.join(", "));
        }
        if let Some(n) = &m.n {
            let _ = write!(line, "; N {n}");
        }
        let _ = write!(
            line,
            "; mode {}; tolerance {:e}; seed {}",
            m.mode, m.tolerance.0, m.seed
        );
        line
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut out = format!("# {}\n", self.provenance());
        if let Some(matrix) = &self.matrix {
            let _ = writeln!(out, "# {}: {}", matrix.kind, matrix.provenance);
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        if !self.polynomials.is_empty() {
            w.write_record(["family", "params", "degree", "power", "coefficient"])?;
            for p in &self.polynomials {
                for (power, c) in p.coeffs.iter().enumerate() {
                    w.write_record([
                        &p.family,
                        &p.params,
                        &p.degree.to_string(),
                        &power.to_string(),
                        &c.text(),
                    ])?;
                }
            }
        } else if !self.zeros.is_empty() {
            w.write_record(["family", "params", "N", "n", "x", "residual"])?;
            for z in &self.zeros {
                w.write_record([
                    &z.family,
                    &z.params,
                    &z.big_n.to_string(),
                    &z.n.to_string(),
                    &z.x.text(),
                    &z.residual.text(),
                ])?;
            }
        } else if let Some(matrix) = &self.matrix {
            w.write_record((1..=matrix.dim).map(|j| format!("c{j}")))?;
            for row in &matrix.rows {
                w.write_record(row.iter().map(Number::text))?;
            }
        } else {
            w.write_record([
                "family", "params", "N", "identity", "variant", "m", "n", "residual", "pass",
            ])?;
            for r in &self.results {
                w.write_record([
                    &r.family,
                    &r.params,
                    &r.big_n.to_string(),
                    &r.identity,
                    r.variant.as_deref().unwrap_or(""),
                    &r.m.to_string(),
                    &r.n.map(|n| n.to_string()).unwrap_or_default(),
                    &r.residual.text(),
                    &r.pass.to_string(),
                ])?;
            }
        }
        out.push_str(std::str::from_utf8(&w.into_inner()?)?);
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.provenance());
        for p in &self.polynomials {
            let coeffs: Vec<String> = p.coeffs.iter().map(short).collect();
            let _ = writeln!(
                out,
                "{} [{}] p_{}: [{}]",
                p.family,
                p.params,
                p.degree,
                coeffs.join(", ")
            );
        }
        for z in &self.zeros {
            let _ = writeln!(
                out,
                "{} [{}] N={} x_{} = {:<24} |p_N(x)| = {:.3e}",
                z.family, z.params, z.big_n, z.n, z.x.0, z.residual.0
            );
        }
        if let Some(matrix) = &self.matrix {
            let _ = writeln!(
                out,
                "{} ({}x{}): {}",
                matrix.kind, matrix.dim, matrix.dim, matrix.provenance
            );
            for row in &matrix.rows {
                let cells: Vec<String> = row.iter().map(|c| format!("{:>24}", short(c))).collect();
                let _ = writeln!(out, "{}", cells.join(" "));
            }
            if !matrix.flagged.is_empty() {
                let _ = writeln!(out, "general assembly at rows {:?}", matrix.flagged);
            }
        }
        for c in &self.checks {
            let variant = c.variant.as_deref().map(|v| format!(" [{v}]")).unwrap_or_default();
            let cross = c
                .cross_check
                .map(|x| format!(", cross check {:.3e}", x.0))
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "{:<4} {}{} {} [{}] N={}: max residual {:.3e}{}",
                if c.pass { "PASS" } else { "FAIL" },
                c.identity,
                variant,
                c.family,
                c.params,
                c.big_n,
                c.max_residual.0,
                cross
            );
            for note in &c.notes {
                let _ = writeln!(out, "     note: {note}");
            }
        }
        if !self.checks.is_empty() || self.summary.max_residual.is_some() {
            let s = &self.summary;
            let _ = write!(out, "summary: {}", if s.pass { "pass" } else { "FAIL" });
            if let Some(r) = s.max_residual {
                let _ = write!(out, ", max residual {:.3e}", r.0);
            }
            out.push('\n');
            if let Some(v) = &s.passing_variants {
                let names = if v.is_empty() { "none".to_string() } else { v.join(", ") };
                let _ = writeln!(out, "passing variant: {names}");
            }
            if let Some(w) = &s.worst {
                let _ = writeln!(out, "worst failing cell: {}", describe_cell(w));
            }
        }
        out
    }

    pub fn render(&self, format: crate::cli::Format) -> Result<String> {
        match format {
            crate::cli::Format::Json => self.to_json(),
            crate::cli::Format::Csv => self.to_csv(),
            crate::cli::Format::Text => Ok(self.to_text()),
        }
    }
}

fn short(c: &Number) -> String {
    match c {
        Number::Real(r) if r.0.is_finite() => format!("{}", r.0),
        other => other.text(),
    }
}

pub fn describe_cell(r: &ResultRow) -> String {
    let variant = r.variant.as_deref().map(|v| format!(" [{v}]")).unwrap_or_default();
    let node = r.n.map(|n| format!(" n={n}")).unwrap_or_default();
    format!(
        "{}{} {} [{}] N={} m={}{} residual {:.3e}",
        r.identity, variant, r.family, r.params, r.big_n, r.m, node, r.residual.0
    )
}

/// Writes `text` to `path` through a temporary file in the same directory, so
/// readers never see a partial file.
pub fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp =
        tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating a file in {}", dir.display()))?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_keep_their_bits() {
        for v in [
            0.1,
            1.0 / 3.0,
            -2.5e-300,
            6.02214076e23,
            0.0,
            f64::MIN_POSITIVE,
            4.9e-324,
        ] {
            let text = serde_json::to_string(&Real(v)).unwrap();
            let back: Real = serde_json::from_str(&text).unwrap();
            assert_eq!(back.0.to_bits(), v.to_bits(), "{text}");
        }
        let nan: Real = serde_json::from_str(&serde_json::to_string(&Real(f64::NAN)).unwrap()).unwrap();
        assert!(nan.0.is_nan());
        assert_eq!(serde_json::to_string(&Real(0.5)).unwrap(), "5.0000000000000000e-1");
    }

    #[test]
    fn numbers_distinguish_exact_values() {
        let v: Vec<Number> = serde_json::from_str(r#"[1.5, "-1/2", "inf"]"#).unwrap();
        assert_eq!(v[0], Number::Real(Real(1.5)));
        assert_eq!(v[1], Number::Exact("-1/2".into()));
        assert_eq!(v[2], Number::Real(Real(f64::INFINITY)));
    }
}
