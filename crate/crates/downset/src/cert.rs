//! JSON certificates for single optimization runs.

use downset_core::classify::RectKind;
use downset_core::classify::{classify_rect_all, segment_is_optimal, RectClassification};
use downset_core::oracle::{optimal_downsets, Poset};
use downset_core::triangle::{classify_triangle_all, triangle_segment};
use downset_core::{DominationOrder, DownSet2D, OrderKind, PointSet, TriangleDownSet};
use serde::{Serialize, Serializer};

use crate::error::AppResult;
use crate::weights::WeightSpec;

pub const CERT_SCHEMA: &str = "downset-cert/1";

/// Integral values are written as JSON integers.
pub fn serialize_number<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.fract() == 0.0 && v.abs() < 9_007_199_254_740_992.0 {
        s.serialize_i64(*v as i64)
    } else {
        s.serialize_f64(*v)
    }
}

fn serialize_numbers<S: Serializer>(vs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    #[derive(Serialize)]
    struct Num(#[serde(serialize_with = "serialize_number")] f64);
    let mut seq = s.serialize_seq(Some(vs.len()))?;
    for &v in vs {
        seq.serialize_element(&Num(v))?;
    }
    seq.end()
}

#[derive(Debug, Clone, Serialize)]
pub struct WeightJson {
    pub kind: &'static str,
    #[serde(serialize_with = "serialize_numbers")]
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoxJson {
    pub lo: Vec<usize>,
    pub hi: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
    #[serde(rename = "box", skip_serializing_if = "Option::is_none")]
    pub qbox: Option<BoxJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coords: Option<[usize; 2]>,
}

impl From<&RectClassification> for ClassJson {
    fn from(c: &RectClassification) -> Self {
        ClassJson {
            kind: c.kind.name().to_string(),
            order: None,
            qbox: c.qbox.as_ref().map(|b| BoxJson {
                lo: b.lo().coords().to_vec(),
                hi: b.hi().coords().to_vec(),
            }),
            coords: c.coords.map(|(a, b)| [a, b]),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub schema: &'static str,
    pub shape: String,
    pub lengths: Vec<usize>,
    pub m: usize,
    pub weight: WeightJson,
    #[serde(serialize_with = "serialize_number")]
    pub max_weight: f64,
    /// Column profiles for grids (nested for three dimensions), column tops for triangles.
    pub optimal_sets: Vec<serde_json::Value>,
    /// One list per optimal set.
    pub classifications: Vec<Vec<ClassJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lex_segment_optimal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colex_segment_optimal: Option<bool>,
}

impl Certificate {
    pub fn to_json(&self) -> AppResult<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

/// Heights along the last axis, nested over the other axes.
fn grid_profile(lengths: &[usize], set: &PointSet, prefix: &mut Vec<usize>) -> serde_json::Value {
    if prefix.len() + 1 == lengths.len() {
        let count = set
            .iter()
            .filter(|p| p.coords()[..prefix.len()] == prefix[..])
            .count();
        return count.into();
    }
    let mut out = Vec::with_capacity(lengths[prefix.len()]);
    for x in 0..lengths[prefix.len()] {
        prefix.push(x);
        out.push(grid_profile(lengths, set, prefix));
        prefix.pop();
    }
    serde_json::Value::Array(out)
}

fn order_classes(shape: &downset_core::GridShape, set: &PointSet) -> AppResult<Vec<ClassJson>> {
    let mut out = Vec::new();
    for order in DominationOrder::all(shape.dim()) {
        if order.initial_segment(shape, set.len())?.points() == set {
            out.push(ClassJson {
                kind: "Segment".into(),
                order: Some(order.priority().to_vec()),
                qbox: None,
                coords: None,
            });
        }
    }
    if out.is_empty() {
        out.push(ClassJson {
            kind: "Unstructured".into(),
            order: None,
            qbox: None,
            coords: None,
        });
    }
    Ok(out)
}

/// Solves the maximum weight downset problem of size `m` by exhaustive search.
pub fn optimize(poset: &Poset, weight: &WeightSpec, m: usize) -> AppResult<Certificate> {
    poset.check_guard()?;
    let (shape_name, lengths, max_rank) = match poset {
        Poset::Grid(s) => (s.to_string(), s.lengths().to_vec(), s.max_rank()),
        Poset::Triangle(t) => (t.to_string(), vec![t.ell()], t.max_rank()),
    };
    let w = weight.resolve(max_rank)?;
    let opt = optimal_downsets(poset, &w, m)?;
    let mut optimal_sets = Vec::new();
    let mut classifications = Vec::new();
    let mut flags = (None, None);
    match poset {
        Poset::Grid(s) if s.dim() == 2 => {
            for set in &opt.sets {
                let d = DownSet2D::from_points(s.clone(), set)?;
                optimal_sets.push(serde_json::to_value(d.profile())?);
                classifications.push(classify_rect_all(&d).iter().map(ClassJson::from).collect());
            }
            let (l1, l2) = (s.len(0), s.len(1));
            flags = (
                Some(segment_is_optimal(OrderKind::Lex, l1, l2, m)?),
                Some(segment_is_optimal(OrderKind::Colex, l1, l2, m)?),
            );
        }
        Poset::Grid(s) => {
            for set in &opt.sets {
                optimal_sets.push(grid_profile(s.lengths(), set, &mut Vec::new()));
                classifications.push(order_classes(s, set)?);
            }
        }
        Poset::Triangle(t) => {
            for set in &opt.sets {
                let d = TriangleDownSet::from_points(*t, set)?;
                optimal_sets.push(serde_json::to_value(d.tops())?);
                classifications.push(
                    classify_triangle_all(&d)
                        .iter()
                        .map(ClassJson::from)
                        .collect(),
                );
            }
            let in_opt = |k| -> AppResult<bool> {
                Ok(opt.sets.contains(&triangle_segment(*t, k, m)?.to_points()))
            };
            flags = (
                Some(in_opt(OrderKind::Lex)?),
                Some(in_opt(OrderKind::Colex)?),
            );
        }
    }
    for c in &mut classifications {
        if c.is_empty() {
            c.push(ClassJson::from(&RectClassification::plain(
                RectKind::Unstructured,
            )));
        }
    }
    Ok(Certificate {
        schema: CERT_SCHEMA,
        shape: shape_name,
        lengths,
        m,
        weight: WeightJson {
            kind: weight.name(),
            values: w.values().to_vec(),
        },
        max_weight: opt.max_weight,
        optimal_sets,
        classifications,
        lex_segment_optimal: flags.0,
        colex_segment_optimal: flags.1,
    })
}

/// Parses `3,5` into side lengths.
pub fn parse_lengths(arg: &str) -> Result<Vec<usize>, String> {
    arg.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("{t:?} is not a side length"))
        })
        .collect()
}
