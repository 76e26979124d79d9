//! Normalized order scores computed from a persistence diagram.
//!
//! * `H̄₀ = 4·Var(H₀)`: population variance of the finite 0D lifetimes, scaled
//!   so the largest attainable variance (1/4) maps to 1.
//! * `H̄₁ = ΣH₁ / (2(√2−1)(n−1))`: total 1D lifetime relative to a perfect
//!   `n × n` square lattice scaled to `[-1, 1]²`.
//!
//! `(0, 1)` reads as square, `(0, 0)` as hexagonal. When `H̄₀ ≈ 0`, `H̄₁` can be
//! read as the fraction of square lattice present.

use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::persistence::PersistenceDiagram;

/// Population variance of the finite 0D lifetimes (the infinite bar is excluded).
pub fn h0_variance(diagram: &PersistenceDiagram) -> Result<f64> {
    let deaths: Vec<f64> = diagram.h0.iter().map(|p| p.lifetime()).collect();
    if deaths.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "need at least 2 finite 0D pairs, got {}",
            deaths.len()
        )));
    }
    let count = deaths.len() as f64;
    let mean = deaths.iter().sum::<f64>() / count;
    Ok(deaths.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / count)
}

pub fn h0_score(diagram: &PersistenceDiagram) -> Result<f64> {
    Ok(4.0 * h0_variance(diagram)?)
}

pub fn h1_sum(diagram: &PersistenceDiagram) -> f64 {
    diagram.h1.iter().map(|p| p.lifetime()).sum()
}

/// `ΣH₁` of a perfect `n × n` square lattice in `[-1, 1]²`.
pub fn square_h1_sum(n: usize) -> f64 {
    2.0 * (2f64.sqrt() - 1.0) * (n as f64 - 1.0)
}

/// Not clamped: clouds denser than the nominal lattice can exceed 1.
pub fn h1_score(diagram: &PersistenceDiagram, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidN(n));
    }
    Ok(h1_sum(diagram) / square_h1_sum(n))
}

/// Side length of an `n × n` field holding `point_count` points.
pub fn infer_n(point_count: usize) -> Result<usize> {
    let n = (point_count as f64).sqrt().round() as usize;
    if n * n != point_count {
        return Err(Error::NotSquareCount { count: point_count });
    }
    if n < 2 {
        return Err(Error::InvalidN(n));
    }
    Ok(n)
}

/// Thresholds for the categorical reading. None of these are fixed by the
/// underlying method; they are tunable.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScoreConfig {
    /// `H̄₀` must be below this for the percent-square reading to apply.
    pub epsilon_square: f64,
    /// `H̄₁` within this distance of 0 (or 1) counts as "close to" 0 (or 1).
    pub epsilon_h1: f64,
}

impl Default for ScoreConfig {
    fn default() -> Self {
        Self {
            epsilon_square: 0.01,
            epsilon_h1: 0.1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Category {
    #[serde(rename = "mostly square")]
    MostlySquare,
    #[serde(rename = "mostly hexagonal")]
    MostlyHexagonal,
    #[serde(rename = "between square and hexagonal")]
    Mixed,
    #[serde(rename = "neither square nor hexagonal")]
    Neither,
}

impl Category {
    pub fn as_str(&self) -> &'static str {
        match self {
            Category::MostlySquare => "mostly square",
            Category::MostlyHexagonal => "mostly hexagonal",
            Category::Mixed => "between square and hexagonal",
            Category::Neither => "neither square nor hexagonal",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrderScores {
    pub n: usize,
    pub h0_var: f64,
    pub h0_bar: f64,
    pub h1_sum: f64,
    pub h1_bar: f64,
}

impl OrderScores {
    pub fn compute(diagram: &PersistenceDiagram, n: usize) -> Result<Self> {
        let h0_var = h0_variance(diagram)?;
        let h1_sum = h1_sum(diagram);
        Ok(Self {
            n,
            h0_var,
            h0_bar: 4.0 * h0_var,
            h1_sum,
            h1_bar: h1_score(diagram, n)?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interpretation {
    pub percent_square: Option<f64>,
    pub percent_hexagonal: Option<f64>,
    pub category: Category,
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.percent_square, self.percent_hexagonal) {
            (Some(sq), Some(hex)) => write!(f, "{sq:.1}% square, {hex:.1}% hexagonal ({})", self.category),
            _ => write!(f, "{}", self.category),
        }
    }
}

pub fn interpret(scores: &OrderScores, config: &ScoreConfig) -> Interpretation {
    if scores.h0_bar.is_nan() || scores.h0_bar >= config.epsilon_square {
        return Interpretation {
            percent_square: None,
            percent_hexagonal: None,
            category: Category::Neither,
        };
    }
    let square = (100.0 * scores.h1_bar).clamp(0.0, 100.0);
    let category = if scores.h1_bar <= config.epsilon_h1 {
        Category::MostlyHexagonal
    } else if scores.h1_bar >= 1.0 - config.epsilon_h1 {
        Category::MostlySquare
    } else {
        Category::Mixed
    };
    Interpretation {
        percent_square: Some(square),
        percent_hexagonal: Some(100.0 - square),
        category,
    }
}

/// One row of the order-score report (JSON object or CSV row).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoreReport {
    pub n: usize,
    pub h0_var: f64,
    pub h0_bar: f64,
    pub h1_sum: f64,
    pub h1_bar: f64,
    pub percent_square: Option<f64>,
    pub percent_hexagonal: Option<f64>,
    pub category: Category,
}

pub const REPORT_COLUMNS: [&str; 8] = [
    "n",
    "h0_var",
    "h0_bar",
    "h1_sum",
    "h1_bar",
    "percent_square",
    "percent_hexagonal",
    "category",
];

impl ScoreReport {
    pub fn new(scores: &OrderScores, interp: &Interpretation) -> Self {
        Self {
            n: scores.n,
            h0_var: scores.h0_var,
            h0_bar: scores.h0_bar,
            h1_sum: scores.h1_sum,
            h1_bar: scores.h1_bar,
            percent_square: interp.percent_square,
            percent_hexagonal: interp.percent_hexagonal,
            category: interp.category,
        }
    }

    pub fn interpretation(&self) -> Interpretation {
        Interpretation {
            percent_square: self.percent_square,
            percent_hexagonal: self.percent_hexagonal,
            category: self.category,
        }
    }

    /// CSV fields in [`REPORT_COLUMNS`] order; undefined percentages are empty.
    pub fn csv_fields(&self) -> Vec<String> {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        vec![
            self.n.to_string(),
            self.h0_var.to_string(),
            self.h0_bar.to_string(),
            self.h1_sum.to_string(),
            self.h1_bar.to_string(),
            opt(self.percent_square),
            opt(self.percent_hexagonal),
            self.category.to_string(),
        ]
    }
}

/// Write reports as CSV. A leading label column (e.g. a file name) is added
/// when `labels` is given.
pub fn write_reports_csv<W: Write>(
    writer: W,
    reports: &[ScoreReport],
    labels: Option<&[String]>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let map = crate::cloud::csv_err;
    let mut header: Vec<&str> = Vec::new();
    if labels.is_some() {
        header.push("file");
    }
    header.extend(REPORT_COLUMNS);
    w.write_record(&header).map_err(map)?;
    for (idx, r) in reports.iter().enumerate() {
        let mut row = Vec::new();
        if let Some(labels) = labels {
            row.push(labels[idx].clone());
        }
        row.extend(r.csv_fields());
        w.write_record(&row).map_err(map)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    Death,
    Lifetime,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagramHistogram {
    pub dim: u8,
    pub statistic: Statistic,
    pub bin_edges: Vec<f64>,
    pub counts: Vec<usize>,
}

/// Uniform histogram of a statistic of the finite pairs of one dimension over
/// `[0, max]`; the last bin is closed on the right.
pub fn histogram(
    diagram: &PersistenceDiagram,
    dim: u8,
    statistic: Statistic,
    bins: usize,
) -> Result<DiagramHistogram> {
    if bins == 0 {
        return Err(Error::InvalidParameter("bins must be >= 1".into()));
    }
    let pairs = match dim {
        0 => &diagram.h0,
        1 => &diagram.h1,
        other => return Err(Error::InvalidParameter(format!("dimension {other} not supported"))),
    };
    let values: Vec<f64> = pairs
        .iter()
        .map(|p| match statistic {
            Statistic::Death => p.death,
            Statistic::Lifetime => p.lifetime(),
        })
        .collect();
    let max = values.iter().copied().fold(0.0, f64::max);
    if values.is_empty() || max <= 0.0 {
        return Ok(DiagramHistogram {
            dim,
            statistic,
            bin_edges: vec![0.0, max],
            counts: vec![values.len()],
        });
    }
    let bin_edges = (0..=bins).map(|i| max * i as f64 / bins as f64).collect();
    let mut counts = vec![0; bins];
    for v in values {
        let idx = ((v / max) * bins as f64) as usize;
        counts[idx.min(bins - 1)] += 1;
    }
    Ok(DiagramHistogram {
        dim,
        statistic,
        bin_edges,
        counts,
    })
}
