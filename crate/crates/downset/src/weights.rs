//! Rank weights named on the command line or loaded from text files.

use std::fs;
use std::path::Path;

use downset_core::RankWeight;

use crate::error::{AppError, AppResult};

#[derive(Debug, Clone, PartialEq)]
pub enum WeightSpec {
    /// `w_r = r`
    Standard,
    /// `w_r = r^2`
    Squares,
    /// `w_r = 2^r`
    PowersOfTwo,
    /// Explicit values for ranks `0, 1, 2, ...`.
    Table(Vec<f64>),
}

impl WeightSpec {
    /// `standard`, `squares`, `powers-of-two`, or a path to a weight file.
    pub fn parse(arg: &str) -> AppResult<Self> {
        match arg {
            "standard" => Ok(WeightSpec::Standard),
            "squares" => Ok(WeightSpec::Squares),
            "powers-of-two" => Ok(WeightSpec::PowersOfTwo),
            path => load_table(Path::new(path)).map(WeightSpec::Table),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            WeightSpec::Standard => "standard",
            WeightSpec::Squares => "squares",
            WeightSpec::PowersOfTwo => "powers-of-two",
            WeightSpec::Table(_) => "table",
        }
    }

    /// The weight on ranks `0..=max_rank`.
    pub fn resolve(&self, max_rank: usize) -> AppResult<RankWeight> {
        match self {
            WeightSpec::Standard => Ok(RankWeight::standard(max_rank)),
            WeightSpec::Squares => Ok(RankWeight::squares(max_rank)),
            WeightSpec::PowersOfTwo if max_rank >= 63 => {
                Err(AppError::Usage(format!("2^r overflows at rank {max_rank}")))
            }
            WeightSpec::PowersOfTwo => Ok(RankWeight::powers_of_two(max_rank)),
            WeightSpec::Table(values) => {
                let w = RankWeight::new(values.clone())?;
                w.covers(max_rank)?;
                Ok(w)
            }
        }
    }
}

pub fn load_table(path: &Path) -> AppResult<Vec<f64>> {
    let text = fs::read_to_string(path)
        .map_err(|e| AppError::Usage(format!("cannot read weight file {}: {e}", path.display())))?;
    parse_table(&text)
}

/// One real per line for ranks `0, 1, ...`; blank lines and `#` comments are
/// skipped. Values must be strictly increasing.
pub fn parse_table(text: &str) -> AppResult<Vec<f64>> {
    let mut values = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v: f64 = line
            .parse()
            .map_err(|_| AppError::Usage(format!("line {}: {line:?} is not a number", n + 1)))?;
        values.push(v);
    }
    RankWeight::new(values.clone())?;
    Ok(values)
}
