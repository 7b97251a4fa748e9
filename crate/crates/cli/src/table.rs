//! Table rendering for `mhz table`.

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;

use mhz_core::{format_rational, zeta_value, AlphaVec, MultiIndex, Rational, Variant};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
}

struct Cell {
    point: MultiIndex,
    value: Option<Rational>,
}

impl Cell {
    fn text(&self) -> String {
        self.value.as_ref().map_or_else(|| "pole".to_string(), format_rational)
    }
}

#[derive(Serialize)]
struct JsonTable<'a> {
    n: usize,
    alpha: Vec<String>,
    #[serde(rename = "Nmax")]
    nmax: u32,
    variant: Variant,
    cells: Vec<JsonCell<'a>>,
}

#[derive(Serialize)]
struct JsonCell<'a> {
    #[serde(rename = "N")]
    point: &'a MultiIndex,
    value: String,
}

pub fn render(alpha: &AlphaVec, nmax: u32, variant: Variant, format: Format) -> anyhow::Result<String> {
    let cells = MultiIndex::grid(alpha.dim(), nmax)
        .into_par_iter()
        .map(|point| {
            let report = zeta_value(alpha, &point, variant)?;
            Ok(Cell { point, value: report.value })
        })
        .collect::<mhz_core::Result<Vec<_>>>()?;
    Ok(match format {
        Format::Json => json(alpha, nmax, variant, &cells)?,
        Format::Csv => csv(alpha.dim(), &cells)?,
        Format::Latex => latex(alpha.dim(), &cells),
    })
}

fn json(alpha: &AlphaVec, nmax: u32, variant: Variant, cells: &[Cell]) -> anyhow::Result<String> {
    let table = JsonTable {
        n: alpha.dim(),
        alpha: alpha.to_strings(),
        nmax,
        variant,
        cells: cells.iter().map(|c| JsonCell { point: &c.point, value: c.text() }).collect(),
    };
    Ok(serde_json::to_string_pretty(&table)? + "\n")
}

fn csv(n: usize, cells: &[Cell]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = (1..=n).map(|i| format!("N{i}")).collect();
    header.push("value".into());
    w.write_record(&header)?;
    for c in cells {
        let mut row: Vec<String> = c.point.entries().iter().map(u32::to_string).collect();
        row.push(c.text());
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn latex_rational(q: &Rational) -> String {
    let sign = if q < &Rational::from_integer(0.into()) { "-" } else { "" };
    let (num, den) = (q.numer().magnitude(), q.denom());
    if den == &1.into() {
        format!("${sign}{num}$")
    } else {
        format!("${sign}\\frac{{{num}}}{{{den}}}$")
    }
}

fn latex(n: usize, cells: &[Cell]) -> String {
    let mut out = format!("\\begin{{tabular}}{{{}r}}\n\\toprule\n", "r".repeat(n));
    let header: Vec<String> = (1..=n).map(|i| format!("$N_{{{i}}}$")).collect();
    out.push_str(&format!("{} & value \\\\\n\\midrule\n", header.join(" & ")));
    for c in cells {
        let entries: Vec<String> = c.point.entries().iter().map(u32::to_string).collect();
        let value = c.value.as_ref().map_or_else(|| "pole".to_string(), latex_rational);
        out.push_str(&format!("{} & {value} \\\\\n", entries.join(" & ")));
    }
    out.push_str("\\bottomrule\n\\end{tabular}\n");
    out
}
