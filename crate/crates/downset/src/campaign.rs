//! Verification campaigns: closed forms checked cell by cell against the
//! exhaustive oracle.

use std::collections::BTreeSet;
use std::io::Write;

use clap::ValueEnum;
use downset_core::classify::{
    classify_rect, predicted_optimal_downsets_with, segment_is_optimal, BoxReading, RectKind,
};
use downset_core::graphs::{ak_bruteforce, ak_optimum, lindsay_check, verify_local_global};
use downset_core::oracle::{
    nested_chain_exists, optimal_by_size, optimal_by_size_in, DownsetFamily, Optimum, Poset,
};
use downset_core::order::segment_2d;
use downset_core::triangle::{best_segment_weight, classify_triangle, TriangleShape};
use downset_core::weight::same_weight;
use downset_core::{
    DownSet2D, GridShape, OrderKind, PointSet, RankWeight, TriangleDownSet, Weighting,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{AppError, AppResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    /// Every optimal rectangle downset is a segment or a symmetrized segment.
    RectStructure,
    /// Closed-form segment optimality against the oracle.
    ExactCriteria,
    /// Predicted optimal families (segments plus predicted boxes) against the oracle.
    BoxFormulas,
    /// Optimal families agree under w_r = r, r^2, 2^r.
    WeightClass,
    /// Every optimal triangle downset is structured and weighs the best segment.
    TriangleStructure,
    /// Nested optimal chains are exactly the predicted ones.
    NestedUnique,
    /// Adjacent edge pair optimum against brute force over graphs.
    Ak,
    /// Lex segments of clique products against the oracle.
    Lindsay,
    /// Lex segments under the d-th power of the clique edge function.
    LocalGlobal,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::RectStructure => "rect-structure",
            Theorem::ExactCriteria => "exact-criteria",
            Theorem::BoxFormulas => "box-formulas",
            Theorem::WeightClass => "weight-class",
            Theorem::TriangleStructure => "triangle-structure",
            Theorem::NestedUnique => "nested-unique",
            Theorem::Ak => "ak",
            Theorem::Lindsay => "lindsay",
            Theorem::LocalGlobal => "local-global",
        }
    }

    fn default_lmax(self) -> usize {
        match self {
            Theorem::ExactCriteria => 7,
            Theorem::WeightClass => 5,
            Theorem::TriangleStructure => 8,
            _ => 6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Reading {
    Literal,
    Reconciled,
}

impl From<Reading> for BoxReading {
    fn from(r: Reading) -> Self {
        match r {
            Reading::Literal => BoxReading::Literal,
            Reading::Reconciled => BoxReading::Reconciled,
        }
    }
}

/// Range flags shared by all campaigns; `None` picks the theorem's default.
#[derive(Debug, Clone, Default)]
pub struct Params {
    pub lmin: Option<usize>,
    pub lmax: Option<usize>,
    pub nmin: Option<usize>,
    pub nmax: Option<usize>,
    pub dims: Option<Vec<usize>>,
    pub d: Option<usize>,
    pub reading: Option<Reading>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub values: Vec<Value>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub theorem: Theorem,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Row>,
}

impl Report {
    pub fn failed(&self) -> usize {
        self.rows.iter().filter(|r| !r.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }

    pub fn write_csv<W: Write>(&self, out: W) -> AppResult<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<&str> = self.columns.clone();
        header.push("result");
        w.write_record(&header)?;
        for row in &self.rows {
            let mut rec: Vec<String> = row.values.iter().map(cell_text).collect();
            rec.push(if row.pass { "PASS" } else { "FAIL" }.into());
            w.write_record(&rec)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> AppResult<String> {
        let cells: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (k, v) in self.columns.iter().zip(&row.values) {
                    obj.insert((*k).to_string(), v.clone());
                }
                obj.insert(
                    "result".into(),
                    json!(if row.pass { "PASS" } else { "FAIL" }),
                );
                Value::Object(obj)
            })
            .collect();
        #[derive(Serialize)]
        struct Out<'a> {
            schema: &'a str,
            theorem: &'a str,
            columns: &'a [&'a str],
            cells: Vec<Value>,
            passed: usize,
            failed: usize,
        }
        let out = Out {
            schema: "downset-verify/1",
            theorem: self.theorem.name(),
            columns: &self.columns,
            cells,
            passed: self.rows.len() - self.failed(),
            failed: self.failed(),
        };
        Ok(serde_json::to_string_pretty(&out)? + "\n")
    }
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn num(v: f64) -> Value {
    if v.fract() == 0.0 && v.abs() < 9.0e15 {
        json!(v as i64)
    } else {
        json!(v)
    }
}

fn rect_shapes(lmin: usize, lmax: usize) -> Vec<(usize, usize)> {
    let lo = lmin.max(1);
    (lo..=lmax)
        .flat_map(|a| (lo..=lmax).map(move |b| (a, b)))
        .collect()
}

fn rect_optima(l1: usize, l2: usize, w: &RankWeight) -> AppResult<(GridShape, Vec<Optimum>)> {
    let shape = GridShape::rect(l1, l2)?;
    let optima = optimal_by_size(&Poset::Grid(shape.clone()), w)?;
    Ok((shape, optima))
}

fn standard_for(shape: &GridShape) -> RankWeight {
    RankWeight::standard(shape.max_rank())
}

fn rect_structure(l1: usize, l2: usize) -> AppResult<Vec<Row>> {
    let shape = GridShape::rect(l1, l2)?;
    let (_, optima) = rect_optima(l1, l2, &standard_for(&shape))?;
    optima
        .iter()
        .map(|opt| {
            let mut unstructured = 0;
            for set in &opt.sets {
                let d = DownSet2D::from_points(shape.clone(), set)?;
                if classify_rect(&d).kind == RectKind::Unstructured {
                    unstructured += 1;
                }
            }
            Ok(Row {
                values: vec![
                    json!(l1),
                    json!(l2),
                    json!(opt.size),
                    json!(opt.sets.len()),
                    json!(unstructured),
                ],
                pass: unstructured == 0,
            })
        })
        .collect()
}

fn exact_criteria(l1: usize, l2: usize) -> AppResult<Vec<Row>> {
    let shape = GridShape::rect(l1, l2)?;
    let (_, optima) = rect_optima(l1, l2, &standard_for(&shape))?;
    optima
        .iter()
        .map(|opt| {
            let mut values = vec![json!(l1), json!(l2), json!(opt.size)];
            let mut pass = true;
            for kind in OrderKind::BOTH {
                let predicted = segment_is_optimal(kind, l1, l2, opt.size)?;
                let oracle = opt
                    .sets
                    .contains(&segment_2d(&shape, kind, opt.size)?.to_points());
                pass &= predicted == oracle;
                values.push(json!(predicted));
                values.push(json!(oracle));
            }
            Ok(Row { values, pass })
        })
        .collect()
}

fn box_formulas(l1: usize, l2: usize, reading: BoxReading) -> AppResult<Vec<Row>> {
    let shape = GridShape::rect(l1, l2)?;
    let (_, optima) = rect_optima(l1, l2, &standard_for(&shape))?;
    optima
        .iter()
        .map(|opt| {
            let predicted: BTreeSet<PointSet> =
                predicted_optimal_downsets_with(&shape, opt.size, reading)?
                    .iter()
                    .map(DownSet2D::to_points)
                    .collect();
            let oracle: BTreeSet<PointSet> = opt.sets.iter().cloned().collect();
            let missing = oracle.difference(&predicted).count();
            let extra = predicted.difference(&oracle).count();
            Ok(Row {
                values: vec![
                    json!(l1),
                    json!(l2),
                    json!(opt.size),
                    json!(predicted.len()),
                    json!(oracle.len()),
                    json!(missing),
                    json!(extra),
                ],
                pass: missing == 0 && extra == 0,
            })
        })
        .collect()
}

fn weight_class(l1: usize, l2: usize) -> AppResult<Vec<Row>> {
    let shape = GridShape::rect(l1, l2)?;
    let family = DownsetFamily::new(Poset::Grid(shape.clone()))?;
    let r = shape.max_rank();
    let by_weight = [
        RankWeight::standard(r),
        RankWeight::squares(r),
        RankWeight::powers_of_two(r),
    ]
    .iter()
    .map(|w| optimal_by_size_in(&family, w))
    .collect::<Result<Vec<_>, _>>()?;
    Ok((0..=shape.size())
        .map(|m| {
            let sets: Vec<&Vec<PointSet>> = by_weight.iter().map(|o| &o[m].sets).collect();
            let mut values = vec![json!(l1), json!(l2), json!(m)];
            values.extend(sets.iter().map(|s| json!(s.len())));
            Row {
                values,
                pass: sets.iter().all(|s| *s == sets[0]),
            }
        })
        .collect())
}

fn triangle_structure(ell: usize) -> AppResult<Vec<Row>> {
    let shape = TriangleShape::new(ell)?;
    let w = RankWeight::standard(shape.max_rank());
    let optima = optimal_by_size(&Poset::Triangle(shape), &w)?;
    optima
        .iter()
        .map(|opt| {
            let mut unstructured = 0;
            for set in &opt.sets {
                let d = TriangleDownSet::from_points(shape, set)?;
                if classify_triangle(&d).kind == RectKind::Unstructured {
                    unstructured += 1;
                }
            }
            let (best, _) = best_segment_weight(shape, &w, opt.size)?;
            let equal = same_weight(best, opt.max_weight, w.is_exact());
            Ok(Row {
                values: vec![
                    json!(ell),
                    json!(opt.size),
                    json!(opt.sets.len()),
                    json!(unstructured),
                    num(opt.max_weight),
                    num(best),
                ],
                pass: unstructured == 0 && equal,
            })
        })
        .collect()
}

fn chain_is_optimal(shape: &GridShape, kind: OrderKind, optima: &[Optimum]) -> AppResult<bool> {
    for opt in optima {
        if !opt
            .sets
            .contains(&segment_2d(shape, kind, opt.size)?.to_points())
        {
            return Ok(false);
        }
    }
    Ok(true)
}

fn nested_unique(l1: usize, l2: usize) -> AppResult<Vec<Row>> {
    let shape = GridShape::rect(l1, l2)?;
    let w = standard_for(&shape);
    let chains = nested_chain_exists(&Poset::Grid(shape.clone()), &w)?;
    let optima = optimal_by_size(&Poset::Grid(shape.clone()), &w)?;
    let lex = chain_is_optimal(&shape, OrderKind::Lex, &optima)?;
    let colex = chain_is_optimal(&shape, OrderKind::Colex, &optima)?;
    let (expected, pass) = if l1 == 1 || l2 == 1 || l1 == l2 {
        ("lex and colex", lex && colex)
    } else if l1 < l2 {
        ("lex only", lex && chains.chain_count == 1)
    } else {
        ("colex only", colex && chains.chain_count == 1)
    };
    Ok(vec![Row {
        values: vec![
            json!(l1),
            json!(l2),
            json!(chains.chain_count.to_string()),
            json!(lex),
            json!(colex),
            json!(expected),
        ],
        pass,
    }])
}

fn ak_rows(n: usize) -> AppResult<Vec<Row>> {
    (0..=n * n.saturating_sub(1) / 2)
        .map(|m| {
            let formula = ak_optimum(n, m)?;
            let brute = ak_bruteforce(n, m)?;
            Ok(Row {
                values: vec![json!(n), json!(m), json!(formula), json!(brute)],
                pass: formula == brute,
            })
        })
        .collect()
}

fn dims_text(dims: &[usize]) -> String {
    dims.iter()
        .map(|d| format!("K{d}"))
        .collect::<Vec<_>>()
        .join("x")
}

fn lindsay_rows(dims: &[usize]) -> AppResult<Vec<Row>> {
    let report = lindsay_check(dims)?;
    Ok(report
        .rows
        .iter()
        .map(|r| Row {
            values: vec![
                json!(dims_text(dims)),
                json!(r.m),
                num(r.segment_weight),
                num(r.oracle_max),
            ],
            pass: r.agree,
        })
        .collect())
}

fn local_global_rows(n: usize, d: usize) -> AppResult<Vec<Row>> {
    let report = verify_local_global(n, d)?;
    Ok(report
        .rows
        .iter()
        .map(|r| Row {
            values: vec![
                json!(n),
                json!(d),
                json!(r.m),
                num(r.segment_weight),
                num(r.oracle_max),
            ],
            pass: r.agree,
        })
        .collect())
}

enum Unit {
    Rect(usize, usize),
    Triangle(usize),
    Graph(usize),
    Dims(Vec<usize>),
    Power(usize, usize),
}

/// Runs a campaign on a pool of `jobs` threads. Rows come out in cell order
/// whatever the scheduling.
pub fn run(theorem: Theorem, params: &Params, jobs: usize) -> AppResult<Report> {
    let lmin = params.lmin.unwrap_or(1);
    let lmax = params.lmax.unwrap_or(theorem.default_lmax());
    let reading: BoxReading = params.reading.unwrap_or(Reading::Reconciled).into();
    let (columns, units): (Vec<&'static str>, Vec<Unit>) = match theorem {
        Theorem::RectStructure => (
            vec!["l1", "l2", "m", "optimal", "unstructured"],
            rect_shapes(lmin, lmax)
                .into_iter()
                .map(|(a, b)| Unit::Rect(a, b))
                .collect(),
        ),
        Theorem::ExactCriteria => (
            vec![
                "l1",
                "l2",
                "m",
                "lex_predicted",
                "lex_oracle",
                "colex_predicted",
                "colex_oracle",
            ],
            rect_shapes(lmin, lmax)
                .into_iter()
                .map(|(a, b)| Unit::Rect(a, b))
                .collect(),
        ),
        Theorem::BoxFormulas => (
            vec!["l1", "l2", "m", "predicted", "oracle", "missing", "extra"],
            rect_shapes(lmin, lmax)
                .into_iter()
                .map(|(a, b)| Unit::Rect(a, b))
                .collect(),
        ),
        Theorem::WeightClass => (
            vec!["l1", "l2", "m", "optimal_r", "optimal_r2", "optimal_2r"],
            rect_shapes(lmin, lmax)
                .into_iter()
                .map(|(a, b)| Unit::Rect(a, b))
                .collect(),
        ),
        Theorem::NestedUnique => (
            vec!["l1", "l2", "chains", "lex_chain", "colex_chain", "expected"],
            rect_shapes(lmin, lmax)
                .into_iter()
                .map(|(a, b)| Unit::Rect(a, b))
                .collect(),
        ),
        Theorem::TriangleStructure => (
            vec![
                "ell",
                "m",
                "optimal",
                "unstructured",
                "max_weight",
                "best_segment",
            ],
            (lmin.max(1)..=lmax).map(Unit::Triangle).collect(),
        ),
        Theorem::Ak => (
            vec!["n", "m", "formula", "bruteforce"],
            (params.nmin.unwrap_or(4)..=params.nmax.unwrap_or(6))
                .map(Unit::Graph)
                .collect(),
        ),
        Theorem::Lindsay => (
            vec!["product", "m", "lex", "oracle"],
            match &params.dims {
                Some(d) => vec![Unit::Dims(d.clone())],
                None => vec![Unit::Dims(vec![3, 4]), Unit::Dims(vec![3, 5])],
            },
        ),
        Theorem::LocalGlobal => (
            vec!["n", "d", "m", "lex", "oracle"],
            (params.nmin.unwrap_or(3)..=params.nmax.unwrap_or(4))
                .map(|n| Unit::Power(n, params.d.unwrap_or(3)))
                .collect(),
        ),
    };
    let cell = |unit: &Unit| -> AppResult<Vec<Row>> {
        match (theorem, unit) {
            (Theorem::RectStructure, Unit::Rect(a, b)) => rect_structure(*a, *b),
            (Theorem::ExactCriteria, Unit::Rect(a, b)) => exact_criteria(*a, *b),
            (Theorem::BoxFormulas, Unit::Rect(a, b)) => box_formulas(*a, *b, reading),
            (Theorem::WeightClass, Unit::Rect(a, b)) => weight_class(*a, *b),
            (Theorem::NestedUnique, Unit::Rect(a, b)) => nested_unique(*a, *b),
            (Theorem::TriangleStructure, Unit::Triangle(ell)) => triangle_structure(*ell),
            (Theorem::Ak, Unit::Graph(n)) => ak_rows(*n),
            (Theorem::Lindsay, Unit::Dims(d)) => lindsay_rows(d),
            (Theorem::LocalGlobal, Unit::Power(n, d)) => local_global_rows(*n, *d),
            _ => unreachable!("units are built per theorem"),
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| AppError::Usage(format!("cannot start {jobs} workers: {e}")))?;
    let chunks: Vec<AppResult<Vec<Row>>> = pool.install(|| units.par_iter().map(cell).collect());
    let mut rows = Vec::new();
    for chunk in chunks {
        rows.extend(chunk?);
    }
    Ok(Report {
        theorem,
        columns,
        rows,
    })
}

/// The available parallelism, or 1.
pub fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}
