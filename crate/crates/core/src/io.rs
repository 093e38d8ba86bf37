//! Plain-text formats for graphs, tournaments, packings and edit sets.
//!
//! Every format ignores blank lines and lines starting with `#`.

use crate::edits::{EditOp, EditSet};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexPair};
use crate::packing::{Packing, PackingMode, Part};
use crate::tournament::Tournament;
use std::fmt::Write as _;

/// Non-comment lines with their one-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn number(line: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| Error::parse(line, format!("expected a non-negative integer, got {tok:?}")))
}

fn pair_line(line: usize, fields: &[&str]) -> Result<(usize, usize)> {
    match fields {
        [a, b] => Ok((number(line, a)?, number(line, b)?)),
        _ => Err(Error::parse(line, "expected two vertex ids")),
    }
}

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    keyword: &str,
    arity: usize,
) -> Result<Vec<usize>> {
    let (line, text) = lines.next().ok_or_else(|| Error::parse(0, format!("missing `{keyword}` header")))?;
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.first() != Some(&keyword) || fields.len() != arity + 1 {
        return Err(Error::parse(line, format!("expected header `{keyword}` with {arity} count(s)")));
    }
    fields[1..].iter().map(|f| number(line, f)).collect()
}

/// Reads `graph n m` followed by `m` lines `u v`.
pub fn read_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let counts = header(&mut lines, "graph", 2)?;
    let (n, m) = (counts[0], counts[1]);
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        edges.push(pair_line(line, &l.split_whitespace().collect::<Vec<_>>())?);
    }
    if edges.len() != m {
        return Err(Error::InvalidInput(format!("header announces {m} edges, found {}", edges.len())));
    }
    Graph::from_edges(n, edges)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("graph {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Reads `tournament n` followed by one line `u v` per arc `u → v`.
pub fn read_tournament(text: &str) -> Result<Tournament> {
    let mut lines = content_lines(text);
    let n = header(&mut lines, "tournament", 1)?[0];
    let mut arcs = Vec::new();
    for (line, l) in lines {
        arcs.push(pair_line(line, &l.split_whitespace().collect::<Vec<_>>())?);
    }
    Tournament::from_arcs(n, arcs)
}

pub fn write_tournament(t: &Tournament) -> String {
    let mut out = format!("tournament {}\n", t.n());
    for (u, v) in t.arcs() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Reads an optional `mode vertex|edge` header (default `vertex`), then one
/// part per line: vertex ids, optionally followed by `| cost`. Parts without
/// a cost get cost 0, meaning "not annotated yet".
pub fn read_packing(text: &str) -> Result<Packing> {
    let mut mode = PackingMode::Vertex;
    let mut parts = Vec::new();
    for (i, (line, l)) in content_lines(text).enumerate() {
        if let Some(rest) = l.strip_prefix("mode") {
            if i != 0 {
                return Err(Error::parse(line, "the `mode` header must come first"));
            }
            mode = match rest.trim() {
                "vertex" => PackingMode::Vertex,
                "edge" => PackingMode::Edge,
                other => return Err(Error::parse(line, format!("unknown packing mode {other:?}"))),
            };
            continue;
        }
        let (ids, cost) = match l.split_once('|') {
            Some((ids, cost)) => (ids, number(line, cost.trim())?),
            None => (l, 0),
        };
        let vertices = ids.split_whitespace().map(|t| number(line, t)).collect::<Result<Vec<_>>>()?;
        if vertices.is_empty() {
            return Err(Error::parse(line, "empty part"));
        }
        parts.push(Part::new(vertices, cost));
    }
    Ok(Packing::new(mode, parts))
}

pub fn write_packing(p: &Packing) -> String {
    let mut out = format!("mode {}\n", p.mode.name());
    for part in &p.parts {
        let ids: Vec<String> = part.vertices.iter().map(ToString::to_string).collect();
        writeln!(out, "{} | {}", ids.join(" "), part.cost).unwrap();
    }
    out
}

/// Reads lines `del u v`, `ins u v` or `rev u v`.
pub fn read_edits(text: &str) -> Result<EditSet> {
    let mut set = EditSet::new();
    for (line, l) in content_lines(text) {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let op = match fields.first() {
            Some(&"del") => EditOp::Delete,
            Some(&"ins") => EditOp::Insert,
            Some(&"rev") => EditOp::Reverse,
            _ => return Err(Error::parse(line, "expected `del`, `ins` or `rev`")),
        };
        let (u, v) = pair_line(line, &fields[1..])?;
        let pair = VertexPair::try_new(u, v).map_err(|e| Error::parse(line, e.to_string()))?;
        set.insert(pair, op).map_err(|e| Error::parse(line, e.to_string()))?;
    }
    Ok(set)
}

pub fn write_edits(s: &EditSet) -> String {
    let mut out = String::new();
    for (p, op) in s.iter() {
        writeln!(out, "{op} {} {}", p.u, p.v).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let g = Graph::cycle(5);
        assert_eq!(read_graph(&write_graph(&g)).unwrap(), g);
        let text = "# c\ngraph 3 1\n\n0 2\n";
        assert_eq!(read_graph(text).unwrap().m(), 1);
        assert!(read_graph("graph 3 2\n0 1\n").is_err());
        assert!(read_graph("graph 3 1\n0 0\n").is_err());
        assert!(matches!(read_graph("graph 3 1\n0 x\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn tournament_round_trip() {
        let t = Tournament::from_order(&[2, 0, 3, 1]);
        assert_eq!(read_tournament(&write_tournament(&t)).unwrap(), t);
        assert!(read_tournament("tournament 3\n0 1\n1 2\n").is_err());
    }

    #[test]
    fn packing_round_trip() {
        let p = Packing::new(PackingMode::Edge, vec![Part::new(vec![0, 1, 2], 1), Part::new(vec![2, 3, 4], 1)]);
        assert_eq!(read_packing(&write_packing(&p)).unwrap(), p);
        let bare = read_packing("# none\n4 1 3\n").unwrap();
        assert_eq!(bare.mode, PackingMode::Vertex);
        assert_eq!(bare.parts, vec![Part::new(vec![1, 3, 4], 0)]);
        assert!(read_packing("0 1\nmode edge\n").is_err());
    }

    #[test]
    fn edits_round_trip() {
        let s = read_edits("del 1 0\nins 2 3\n").unwrap();
        assert_eq!(write_edits(&s), "del 0 1\nins 2 3\n");
        assert!(read_edits("del 0 1\nins 1 0\n").is_err());
        assert!(read_edits("flip 0 1\n").is_err());
    }
}
