//! CSV tables: adjacent-pair optima, δ-sequences and the triangle box catalogue.

use std::io::Write;

use downset_core::graphs::{ak_optimum, cartesian_product, delta_sequence, SimpleGraph};
use downset_core::triangle::{
    best_segment_weight, triangle_box_catalogue, SegmentArgmax, TriangleShape,
};
use downset_core::RankWeight;

use crate::error::{AppError, AppResult};

/// Rows `m, P, argmax` for `m = 0..=C(n, 2)`.
pub fn ak_table<W: Write>(n: usize, out: W) -> AppResult<()> {
    if n < 2 {
        return Err(AppError::Usage("--ak needs n >= 2".into()));
    }
    let shape = TriangleShape::new(n - 1)?;
    let w = RankWeight::standard(shape.max_rank());
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record(["m", "P", "argmax"])?;
    for m in 0..=shape.size() {
        let p = ak_optimum(n, m)?;
        let (_, arg) = best_segment_weight(shape, &w, m)?;
        let arg = match arg {
            SegmentArgmax::Lex => "lex",
            SegmentArgmax::Colex => "colex",
            SegmentArgmax::Both => "both",
        };
        csv.write_record([m.to_string(), p.to_string(), arg.to_string()])?;
    }
    csv.flush()?;
    Ok(())
}

/// Parses `K4`, `C5`, `P3` and products such as `K3xK4`.
pub fn parse_graph(spec: &str) -> AppResult<SimpleGraph> {
    let mut factors = spec.split(['x', 'X']).map(|f| {
        let f = f.trim();
        let bad = || AppError::Usage(format!("{f:?} is not a graph; use K<n>, C<n> or P<n>"));
        let (kind, n) = f.split_at_checked(1).ok_or_else(bad)?;
        let n: usize = n.parse().map_err(|_| bad())?;
        match kind {
            "K" => Ok(SimpleGraph::complete(n)),
            "C" => Ok(SimpleGraph::cycle(n)?),
            "P" => Ok(SimpleGraph::path(n)),
            _ => Err(bad()),
        }
    });
    let first = factors.next().expect("split yields at least one piece")?;
    factors.try_fold(first, |g, h| Ok(cartesian_product(&g, &h?)))
}

/// Rows `i, delta` for the natural vertex order of the graph.
pub fn delta_table<W: Write>(spec: &str, out: W) -> AppResult<()> {
    let g = parse_graph(spec)?;
    let order: Vec<usize> = (0..g.vertex_count()).collect();
    let d = delta_sequence(&g, &order)?;
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record(["i", "delta"])?;
    for (i, v) in d.values().iter().enumerate() {
        csv.write_record([(i + 1).to_string(), v.to_string()])?;
    }
    csv.flush()?;
    Ok(())
}

/// Rows `m, base, lo, hi, coords` of the searched triangle box catalogue.
pub fn catalogue_table<W: Write>(ell: usize, out: W) -> AppResult<()> {
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record(["m", "base", "lo", "hi", "coords"])?;
    for e in triangle_box_catalogue(ell)? {
        csv.write_record([
            e.m.to_string(),
            e.base.to_string(),
            e.qbox.lo().to_string(),
            e.qbox.hi().to_string(),
            format!("({},{})", e.coords.0, e.coords.1),
        ])?;
    }
    csv.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(f: impl FnOnce(&mut Vec<u8>) -> AppResult<()>) -> String {
        let mut buf = Vec::new();
        f(&mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn delta_of_k4() {
        assert_eq!(
            text(|b| delta_table("K4", b)),
            "i,delta\n1,0\n2,1\n3,2\n4,3\n"
        );
    }

    #[test]
    fn ak_rows() {
        let t = text(|b| ak_table(4, b));
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines[0], "m,P,argmax");
        assert_eq!(lines[1], "0,0,both");
        assert!(lines[4].starts_with("3,3,"));
    }

    #[test]
    fn graph_specs() {
        assert_eq!(parse_graph("K3xK4").unwrap().regular_degree(), Some(5));
        assert_eq!(parse_graph("C5").unwrap().edge_count(), 5);
        assert!(parse_graph("Q3").is_err());
        assert!(parse_graph("K").is_err());
        assert!(parse_graph("C2").is_err());
    }

    #[test]
    fn catalogue_has_header() {
        assert!(text(|b| catalogue_table(4, b)).starts_with("m,base,lo,hi,coords\n"));
    }
}
