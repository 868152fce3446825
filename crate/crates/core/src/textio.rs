//! Plain-text file formats: matrices and vectors, support estimates,
//! phase-grid CSV, and the experiment config.
//!
//! Matrices are diff-able text: a `rows cols` header line, then one row
//! per line of whitespace-separated decimals with 17 significant digits
//! (lossless for doubles). Vectors are n-by-1 matrices. Parse errors
//! carry 1-based line numbers.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::gen::SupportEstimate;
use crate::matrix::DenseMatrix;
use crate::phase::{ExperimentConfig, PhaseGrid, WeightRule, DEFAULT_BASE_SEED};
use crate::recovery::SUCCESS_TOL;

/// CSV header for phase-grid files.
pub const CSV_HEADER: &str = "method,alpha,w,m,k,trials,successes,degenerate,rate";

fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Serializes a matrix in the text format.
pub fn matrix_to_text(m: &DenseMatrix) -> String {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", m.rows(), m.cols()));
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(|&v| fmt17(v)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the text format produced by [`matrix_to_text`].
pub fn matrix_from_text(text: &str) -> Result<DenseMatrix> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty matrix file"))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    if dims.len() != 2 {
        return Err(parse_err(1, "header must be: rows cols"));
    }
    let rows: usize = dims[0].parse().map_err(|_| parse_err(1, "bad row count"))?;
    let cols: usize = dims[1].parse().map_err(|_| parse_err(1, "bad column count"))?;
    let mut entries = Vec::with_capacity(rows.saturating_mul(cols));
    let mut consumed = 0usize;
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        if consumed == rows {
            return Err(parse_err(idx + 1, "more data rows than the header declares"));
        }
        let mut count = 0usize;
        for tok in line.split_whitespace() {
            let v: f64 = tok
                .parse()
                .map_err(|_| parse_err(idx + 1, format!("bad number {tok:?}")))?;
            entries.push(v);
            count += 1;
        }
        if count != cols {
            return Err(parse_err(idx + 1, format!("expected {cols} values, found {count}")));
        }
        consumed += 1;
    }
    if consumed != rows {
        return Err(parse_err(consumed + 1, format!("expected {rows} rows, found {consumed}")));
    }
    DenseMatrix::new(rows, cols, entries)
}

pub fn write_matrix(path: &Path, m: &DenseMatrix) -> Result<()> {
    fs::write(path, matrix_to_text(m))?;
    Ok(())
}

pub fn read_matrix(path: &Path) -> Result<DenseMatrix> {
    matrix_from_text(&fs::read_to_string(path)?)
}

/// Vectors are stored as n-by-1 matrices.
pub fn write_vector(path: &Path, v: &[f64]) -> Result<()> {
    let m = DenseMatrix::new(v.len(), 1, v.to_vec())?;
    write_matrix(path, &m)
}

/// Reads an n-by-1 or 1-by-n matrix as a vector.
pub fn read_vector(path: &Path) -> Result<Vec<f64>> {
    let m = read_matrix(path)?;
    if m.rows() != 1 && m.cols() != 1 {
        return Err(Error::Argument(format!(
            "expected a vector file, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(m.entries().to_vec())
}

/// Support-estimate file: `count weight` header, then the sorted indices.
pub fn estimate_to_text(e: &SupportEstimate) -> String {
    let idx: Vec<String> = e.indices.iter().map(|i| i.to_string()).collect();
    format!("{} {}\n{}\n", e.indices.len(), fmt17(e.weight), idx.join(" "))
}

pub fn estimate_from_text(text: &str) -> Result<SupportEstimate> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| parse_err(1, "empty estimate file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(parse_err(1, "header must be: count weight"));
    }
    let count: usize = fields[0].parse().map_err(|_| parse_err(1, "bad count"))?;
    let weight: f64 = fields[1].parse().map_err(|_| parse_err(1, "bad weight"))?;
    let mut indices = Vec::with_capacity(count);
    if count > 0 {
        let line = lines.next().ok_or_else(|| parse_err(2, "missing index line"))?;
        for tok in line.split_whitespace() {
            indices.push(tok.parse().map_err(|_| parse_err(2, format!("bad index {tok:?}")))?);
        }
    }
    if indices.len() != count {
        return Err(parse_err(2, format!("expected {count} indices, found {}", indices.len())));
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(parse_err(2, "indices must be sorted and distinct"));
    }
    Ok(SupportEstimate { indices, weight })
}

pub fn write_estimate(path: &Path, e: &SupportEstimate) -> Result<()> {
    fs::write(path, estimate_to_text(e))?;
    Ok(())
}

pub fn read_estimate(path: &Path) -> Result<SupportEstimate> {
    estimate_from_text(&fs::read_to_string(path)?)
}

/// Serializes phase grids as CSV, one row per cell, LF line endings.
pub fn grids_to_csv(grids: &[PhaseGrid]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for g in grids {
        let alpha = g.alpha.map(fmt17).unwrap_or_default();
        for (mi, &m) in g.m_values.iter().enumerate() {
            for (ki, &k) in g.k_grids[mi].iter().enumerate() {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{}\n",
                    g.method,
                    alpha,
                    fmt17(g.weight),
                    m,
                    k,
                    g.trials_run[mi][ki],
                    g.successes[mi][ki],
                    g.degenerate[mi][ki],
                    fmt17(g.rates[mi][ki]),
                ));
            }
        }
    }
    out
}

pub fn write_csv(path: &Path, grids: &[PhaseGrid]) -> Result<()> {
    fs::write(path, grids_to_csv(grids))?;
    Ok(())
}

/// Reconstructs phase grids from the CSV format. Grids come back in
/// first-appearance order with cells grouped by (method, alpha, w).
pub fn grids_from_csv(text: &str) -> Result<Vec<PhaseGrid>> {
    struct Acc {
        method: String,
        alpha: Option<f64>,
        weight: f64,
        cells: Vec<(usize, usize, u32, u32, u32, f64)>,
    }
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty CSV"))?;
    if header.trim() != CSV_HEADER {
        return Err(parse_err(1, format!("expected header {CSV_HEADER:?}")));
    }
    let mut accs: Vec<Acc> = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let line_no = idx + 1;
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 9 {
            return Err(parse_err(line_no, format!("expected 9 fields, found {}", f.len())));
        }
        let method = f[0].to_string();
        let alpha: Option<f64> = if f[1].is_empty() {
            None
        } else {
            Some(f[1].parse().map_err(|_| parse_err(line_no, "bad alpha"))?)
        };
        let weight: f64 = f[2].parse().map_err(|_| parse_err(line_no, "bad weight"))?;
        let m: usize = f[3].parse().map_err(|_| parse_err(line_no, "bad m"))?;
        let k: usize = f[4].parse().map_err(|_| parse_err(line_no, "bad k"))?;
        let trials: u32 = f[5].parse().map_err(|_| parse_err(line_no, "bad trials"))?;
        let succ: u32 = f[6].parse().map_err(|_| parse_err(line_no, "bad successes"))?;
        let degen: u32 = f[7].parse().map_err(|_| parse_err(line_no, "bad degenerate"))?;
        let rate: f64 = f[8].parse().map_err(|_| parse_err(line_no, "bad rate"))?;
        let acc = match accs
            .iter_mut()
            .find(|a| a.method == method && a.alpha == alpha && a.weight == weight)
        {
            Some(a) => a,
            None => {
                accs.push(Acc { method, alpha, weight, cells: Vec::new() });
                accs.last_mut().expect("just pushed")
            }
        };
        acc.cells.push((m, k, trials, succ, degen, rate));
    }
    let mut grids = Vec::with_capacity(accs.len());
    for acc in accs {
        let mut m_values: Vec<usize> = Vec::new();
        for &(m, ..) in &acc.cells {
            if m_values.last() != Some(&m) {
                m_values.push(m);
            }
        }
        let mut k_grids: Vec<Vec<usize>> = vec![Vec::new(); m_values.len()];
        let mut trials_run = vec![Vec::new(); m_values.len()];
        let mut successes = vec![Vec::new(); m_values.len()];
        let mut degenerate = vec![Vec::new(); m_values.len()];
        let mut rates = vec![Vec::new(); m_values.len()];
        for (m, k, trials, succ, degen, rate) in acc.cells {
            let mi = m_values.iter().position(|&mm| mm == m).expect("collected above");
            k_grids[mi].push(k);
            trials_run[mi].push(trials);
            successes[mi].push(succ);
            degenerate[mi].push(degen);
            rates[mi].push(rate);
        }
        grids.push(PhaseGrid {
            method: acc.method,
            alpha: acc.alpha,
            weight: acc.weight,
            m_values,
            k_grids,
            successes,
            degenerate,
            trials_run,
            rates,
        });
    }
    Ok(grids)
}

pub fn read_csv(path: &Path) -> Result<Vec<PhaseGrid>> {
    grids_from_csv(&fs::read_to_string(path)?)
}

/// Parses the flat `key = value` experiment config format. Unknown keys
/// are rejected; omitted keys keep the desk-preset defaults. Lists are
/// comma-separated; `#` starts a comment.
pub fn config_from_text(text: &str) -> Result<ExperimentConfig> {
    let mut config = ExperimentConfig::desk();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| parse_err(line_no, "expected key = value"))?;
        let key = key.trim();
        let value = value.trim();
        let bad = |what: &str| parse_err(line_no, format!("bad {what}: {value:?}"));
        match key {
            "n" => config.n = value.parse().map_err(|_| bad("n"))?,
            "m_values" => {
                config.m_values = value
                    .split(',')
                    .map(|v| v.trim().parse().map_err(|_| bad("m value")))
                    .collect::<Result<Vec<usize>>>()?;
            }
            "k_lo" => config.k_lo = value.parse().map_err(|_| bad("k_lo"))?,
            "k_hi" => config.k_hi = value.parse().map_err(|_| bad("k_hi"))?,
            "k_step" => {
                config.k_step = if value == "auto" {
                    None
                } else {
                    Some(value.parse().map_err(|_| bad("k_step"))?)
                };
            }
            "alphas" => {
                config.alphas = if value.is_empty() {
                    Vec::new()
                } else {
                    value
                        .split(',')
                        .map(|v| v.trim().parse().map_err(|_| bad("alpha")))
                        .collect::<Result<Vec<f64>>>()?
                };
            }
            "rho" => config.rho = value.parse().map_err(|_| bad("rho"))?,
            "weight_rule" => {
                config.weight_rule = if value == "one_minus_alpha" {
                    WeightRule::OneMinusAlpha
                } else if let Some(inner) =
                    value.strip_prefix("fixed(").and_then(|v| v.strip_suffix(')'))
                {
                    WeightRule::Fixed(inner.trim().parse().map_err(|_| bad("fixed weight"))?)
                } else {
                    return Err(bad("weight_rule"));
                };
            }
            "trials" => config.trials = value.parse().map_err(|_| bad("trials"))?,
            "base_seed" => config.base_seed = value.parse().map_err(|_| bad("base_seed"))?,
            "threshold" => config.threshold = value.parse().map_err(|_| bad("threshold"))?,
            "success_tol" => config.success_tol = value.parse().map_err(|_| bad("success_tol"))?,
            other => {
                return Err(parse_err(line_no, format!("unknown key {other:?}")));
            }
        }
    }
    config.validate()?;
    Ok(config)
}

pub fn read_config(path: &Path) -> Result<ExperimentConfig> {
    config_from_text(&fs::read_to_string(path)?)
}

/// One preset per name compiled in: `desk` and `paper`.
pub fn preset(name: &str) -> Option<ExperimentConfig> {
    match name {
        "desk" => Some(ExperimentConfig::desk()),
        "paper" => Some(ExperimentConfig::paper()),
        _ => None,
    }
}

/// Default config values echoed as a documented config file.
pub fn config_template() -> String {
    let d = ExperimentConfig::desk();
    let ms: Vec<String> = d.m_values.iter().map(|m| m.to_string()).collect();
    let alphas: Vec<String> = d.alphas.iter().map(|a| a.to_string()).collect();
    format!(
        "# phase experiment config (defaults shown)\n\
         n = {}\n\
         m_values = {}\n\
         k_lo = {}\n\
         k_hi = {}\n\
         k_step = auto\n\
         alphas = {}\n\
         rho = {}\n\
         weight_rule = one_minus_alpha\n\
         trials = {}\n\
         base_seed = {}\n\
         threshold = {}\n\
         success_tol = {}\n",
        d.n,
        ms.join(","),
        d.k_lo,
        d.k_hi,
        alphas.join(","),
        d.rho,
        d.trials,
        DEFAULT_BASE_SEED,
        d.threshold,
        SUCCESS_TOL,
    )
}
