//! Text formats for graphs, finite posets and results.
//!
//! ```text
//! # comment
//! poset rn 2
//! v a 0 1
//! v b 1 0
//! e ab a b 1 1
//! ```
//!
//! Over a finite poset the first line is `poset finite <file>` and a grade is an
//! element index. Multi-critical files list several grades separated by `;`.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use crate::betti2d::BettiReport;
use crate::error::ParseError;
use crate::grade::{FinitePoset, Grade, Poset};
use crate::graph::FilteredGraph;
use crate::minpres::{BettiTable, SparsePresentation};
use crate::multicritical::MultiCriticalGraph;
use crate::scalar::Rational;

/// Meaningful lines with their 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        let words: Vec<&str> = l.split_whitespace().collect();
        (!words.is_empty()).then_some((i + 1, words))
    })
}

pub fn parse_poset(text: &str) -> Result<FinitePoset, ParseError> {
    let mut it = lines(text);
    let (line, head) = it
        .next()
        .ok_or_else(|| ParseError::syntax(1, "empty poset file"))?;
    let n: usize = match head.as_slice() {
        ["poset", "finite", n] => n
            .parse()
            .map_err(|_| ParseError::syntax(line, "bad element count"))?,
        _ => return Err(ParseError::syntax(line, "expected `poset finite <n>`")),
    };
    let mut rows = Vec::with_capacity(n);
    for (line, words) in it {
        if rows.len() == n {
            return Err(ParseError::syntax(line, "too many rows"));
        }
        if words.len() != n {
            return Err(ParseError::syntax(line, format!("expected {n} entries")));
        }
        let row = words
            .iter()
            .map(|w| match *w {
                "0" => Ok(false),
                "1" => Ok(true),
                _ => Err(ParseError::syntax(
                    line,
                    format!("entry `{w}` is not 0 or 1"),
                )),
            })
            .collect::<Result<Vec<bool>, _>>()?;
        rows.push(row);
    }
    if rows.len() != n {
        return Err(ParseError::syntax(
            text.lines().count(),
            format!("expected {n} rows"),
        ));
    }
    FinitePoset::new(rows).map_err(|source| ParseError::Grade { line, source })
}

pub fn write_poset(p: &FinitePoset) -> String {
    let mut out = format!("poset finite {}\n", p.len());
    for i in 0..p.len() {
        let row: Vec<&str> = (0..p.len())
            .map(|j| if p.le(i, j) { "1" } else { "0" })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Read a poset file; relative names are taken from `base`.
pub fn read_poset_file(name: &str, base: Option<&Path>) -> Result<Arc<FinitePoset>, ParseError> {
    let path = match base {
        Some(dir) => dir.join(name),
        None => Path::new(name).to_path_buf(),
    };
    let failed = |message: String| ParseError::PosetFile {
        path: path.display().to_string(),
        message,
    };
    let text = std::fs::read_to_string(&path).map_err(|e| failed(e.to_string()))?;
    parse_poset(&text)
        .map(Arc::new)
        .map_err(|e| failed(e.to_string()))
}

fn parse_header(
    line: usize,
    words: &[&str],
    resolve: &mut dyn FnMut(&str) -> Result<Arc<FinitePoset>, ParseError>,
) -> Result<Poset, ParseError> {
    match words {
        ["poset", "rn", n] => {
            let n: usize = n
                .parse()
                .map_err(|_| ParseError::syntax(line, "bad dimension"))?;
            if n == 0 {
                return Err(ParseError::syntax(line, "dimension must be positive"));
            }
            Ok(Poset::Rn(n))
        }
        ["poset", "finite", file] => Ok(Poset::Finite(resolve(file)?)),
        _ => Err(ParseError::syntax(
            line,
            "expected `poset rn <n>` or `poset finite <file>`",
        )),
    }
}

fn parse_grade(line: usize, poset: &Poset, words: &[&str]) -> Result<Grade, ParseError> {
    match poset {
        Poset::Rn(n) => {
            if words.len() != *n {
                return Err(ParseError::syntax(
                    line,
                    format!("expected {n} coordinates, found {}", words.len()),
                ));
            }
            let coords = words
                .iter()
                .map(|w| w.parse::<Rational>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|source| ParseError::Grade { line, source })?;
            Ok(Grade::coords(coords))
        }
        Poset::Finite(p) => match words {
            [w] => match w.parse::<usize>() {
                Ok(i) if i < p.len() => Ok(Grade::Element(i)),
                _ => Err(ParseError::syntax(
                    line,
                    format!("`{w}` is not an element of the poset"),
                )),
            },
            _ => Err(ParseError::syntax(line, "expected one element index")),
        },
    }
}

fn parse_grades(line: usize, poset: &Poset, words: &[&str]) -> Result<Vec<Grade>, ParseError> {
    words
        .split(|w| *w == ";")
        .map(|g| parse_grade(line, poset, g))
        .collect()
}

fn parse_records(
    text: &str,
    resolve: &mut dyn FnMut(&str) -> Result<Arc<FinitePoset>, ParseError>,
    multi: bool,
) -> Result<MultiCriticalGraph, ParseError> {
    let mut it = lines(text);
    let (line, head) = it
        .next()
        .ok_or_else(|| ParseError::syntax(1, "missing `poset` line"))?;
    let poset = parse_header(line, &head, resolve)?;
    let mut m = MultiCriticalGraph::new(poset.clone());
    let mut ids = std::collections::HashMap::new();
    for (line, words) in it {
        if !multi && words.contains(&";") {
            return Err(ParseError::syntax(
                line,
                "`;` is only allowed in multi-critical files",
            ));
        }
        match words.as_slice() {
            ["v", id, grade @ ..] if !grade.is_empty() => {
                let i = m.add_vertex(*id, parse_grades(line, &poset, grade)?);
                ids.entry(id.to_string()).or_insert(i);
            }
            ["e", id, a, b, grade @ ..] if !grade.is_empty() => {
                let end = |v: &str| {
                    ids.get(v)
                        .copied()
                        .ok_or_else(|| ParseError::syntax(line, format!("unknown vertex `{v}`")))
                };
                let (a, b) = (end(a)?, end(b)?);
                m.add_edge(*id, a, b, parse_grades(line, &poset, grade)?);
            }
            [kind, ..] if *kind == "v" || *kind == "e" => {
                return Err(ParseError::syntax(
                    line,
                    format!("incomplete `{kind}` record"),
                ));
            }
            [kind, ..] => return Err(ParseError::syntax(line, format!("unknown record `{kind}`"))),
            [] => unreachable!(),
        }
    }
    Ok(m)
}

/// Parse a 1-critical graph; `resolve` loads the poset named by a `poset finite` line.
pub fn parse_graph_with(
    text: &str,
    resolve: &mut dyn FnMut(&str) -> Result<Arc<FinitePoset>, ParseError>,
) -> Result<FilteredGraph, ParseError> {
    let m = parse_records(text, resolve, false)?;
    let vertices = m
        .vertices()
        .iter()
        .map(|v| crate::graph::Vertex {
            id: v.id.clone(),
            grade: v.grades[0].clone(),
        })
        .collect();
    let edges = m
        .edges()
        .iter()
        .map(|e| crate::graph::Edge {
            id: e.id.clone(),
            ends: e.ends,
            grade: e.grades[0].clone(),
        })
        .collect();
    Ok(FilteredGraph::from_parts(
        m.poset().clone(),
        vertices,
        edges,
    ))
}

/// Parse a 1-critical graph whose poset file, if any, is relative to `base`.
pub fn parse_graph(text: &str, base: Option<&Path>) -> Result<FilteredGraph, ParseError> {
    parse_graph_with(text, &mut |name| read_poset_file(name, base))
}

pub fn parse_multicritical_with(
    text: &str,
    resolve: &mut dyn FnMut(&str) -> Result<Arc<FinitePoset>, ParseError>,
) -> Result<MultiCriticalGraph, ParseError> {
    parse_records(text, resolve, true)
}

pub fn parse_multicritical(
    text: &str,
    base: Option<&Path>,
) -> Result<MultiCriticalGraph, ParseError> {
    parse_multicritical_with(text, &mut |name| read_poset_file(name, base))
}

fn write_header(out: &mut String, poset: &Poset, poset_file: &str) {
    match poset {
        Poset::Rn(n) => writeln!(out, "poset rn {n}").unwrap(),
        Poset::Finite(_) => writeln!(out, "poset finite {poset_file}").unwrap(),
    }
}

fn join_grades(grades: &[Grade]) -> String {
    grades
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ; ")
}

/// Graph file text. `poset_file` names the poset in the header when the poset is finite.
pub fn write_graph(g: &FilteredGraph, poset_file: &str) -> String {
    let mut out = String::new();
    write_header(&mut out, g.poset(), poset_file);
    for v in g.vertices() {
        writeln!(out, "v {} {}", v.id, v.grade).unwrap();
    }
    for e in g.edges() {
        let [a, b] = e.ends.map(|i| &g.vertices()[i].id);
        writeln!(out, "e {} {} {} {}", e.id, a, b, e.grade).unwrap();
    }
    out
}

pub fn write_multicritical(m: &MultiCriticalGraph, poset_file: &str) -> String {
    let mut out = String::new();
    write_header(&mut out, m.poset(), poset_file);
    for v in m.vertices() {
        writeln!(out, "v {} {}", v.id, join_grades(&v.grades)).unwrap();
    }
    for e in m.edges() {
        let [a, b] = e.ends.map(|i| &m.vertices()[i].id);
        writeln!(out, "e {} {} {} {}", e.id, a, b, join_grades(&e.grades)).unwrap();
    }
    out
}

fn section(out: &mut String, name: &str, grades: &[Grade]) {
    writeln!(out, "{name}").unwrap();
    for g in grades {
        writeln!(out, "{g}").unwrap();
    }
}

fn matrix(out: &mut String, p: &SparsePresentation) {
    writeln!(out, "matrix").unwrap();
    let mut entries = p.entries.clone();
    entries.sort_by_key(|e| (e.col, e.row));
    for e in entries {
        writeln!(out, "{} {} {}", e.row + 1, e.col + 1, e.coef).unwrap();
    }
}

/// `betti0`, `betti1` and `matrix` sections; rows and columns in matrix order.
pub fn write_presentation(p: &SparsePresentation) -> String {
    let mut out = String::new();
    section(&mut out, "betti0", p.rows.grades());
    section(&mut out, "betti1", p.cols.grades());
    matrix(&mut out, p);
    out
}

/// The presentation sections with `betti2` and `betti0_h1` before the matrix.
/// With `h1_meaningful` false the `betti0_h1` section is replaced by a comment.
pub fn write_betti_report(r: &BettiReport, h1_meaningful: bool) -> String {
    let mut out = String::new();
    section(&mut out, "betti0", r.matrix.rows.grades());
    section(&mut out, "betti1", r.matrix.cols.grades());
    section(&mut out, "betti2", &r.beta2.sorted());
    if h1_meaningful {
        section(&mut out, "betti0_h1", &r.beta0_h1.sorted());
    } else {
        writeln!(out, "# betti0_h1 not meaningful for one-criticalized input").unwrap();
    }
    matrix(&mut out, &r.matrix);
    out
}

/// Oracle tables: a `field` line, then `betti<i>` for every degree and `betti0_h1` when known.
pub fn write_oracle_tables(field: u32, tables: &[BettiTable], h1: Option<&BettiTable>) -> String {
    let mut out = format!("field {field}\n");
    for (i, t) in tables.iter().enumerate() {
        section(&mut out, &format!("betti{i}"), &t.sorted());
    }
    if let Some(h1) = h1 {
        section(&mut out, "betti0_h1", &h1.sorted());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::two_edge_bigon;

    fn no_posets(name: &str) -> Result<Arc<FinitePoset>, ParseError> {
        panic!("unexpected poset file {name}")
    }

    #[test]
    fn bigon_round_trip() {
        let g = two_edge_bigon();
        let text = write_graph(&g, "");
        assert_eq!(parse_graph_with(&text, &mut no_posets).unwrap(), g);
    }

    #[test]
    fn comments_and_decimals() {
        let text =
            "# header\nposet rn 2\nv a 0.50 -1 # trailing\n\nv b 1e1 1/4\ne ab a b 10 0.25\n";
        let g = parse_graph_with(text, &mut no_posets).unwrap();
        assert_eq!(g.vertices()[0].grade.to_string(), "0.5 -1");
        assert_eq!(g.vertices()[1].grade.to_string(), "10 0.25");
        assert!(g.validate().is_empty());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = [
            ("poset rn 2\nv a 0\n", 2),
            ("poset rn 2\ne ab a b 0 0\n", 2),
            ("poset rn 2\nx\n", 2),
            ("v a 0 0\n", 1),
            ("poset rn 2\nv a 0 0 ; 1 1\n", 2),
        ];
        for (text, line) in bad {
            match parse_graph_with(text, &mut no_posets) {
                Err(ParseError::Syntax { line: l, .. }) => assert_eq!(l, line, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
        assert!(matches!(
            parse_graph_with("poset rn 2\nv a 0 zz\n", &mut no_posets),
            Err(ParseError::Grade { line: 2, .. })
        ));
    }

    #[test]
    fn finite_posets() {
        let p = parse_poset("poset finite 3\n1 1 1\n0 1 1\n0 0 1\n").unwrap();
        assert!(p.le(0, 2) && !p.le(2, 1));
        assert_eq!(parse_poset(&write_poset(&p)).unwrap(), p);
        assert!(parse_poset("poset finite 2\n1 1\n1 1\n").is_err());
        let shared = Arc::new(p);
        let text = "poset finite chain.txt\nv a 0\nv b 1\ne ab a b 2\n";
        let g = parse_graph_with(text, &mut |name| {
            assert_eq!(name, "chain.txt");
            Ok(shared.clone())
        })
        .unwrap();
        assert_eq!(write_graph(&g, "chain.txt"), text);
    }

    #[test]
    fn multicritical_grades() {
        let text = "poset rn 2\nv a 0 1 ; 1 0\nv b 0 0\ne ab a b 1 1 ; 2 0\n";
        let m = parse_multicritical_with(text, &mut no_posets).unwrap();
        assert_eq!(m.vertices()[0].grades.len(), 2);
        assert_eq!(m.edges()[0].grades.len(), 2);
        assert_eq!(write_multicritical(&m, ""), text);
    }

    #[test]
    fn report_sections() {
        let r = crate::betti_r2(&two_edge_bigon(), crate::Backend::Fast).unwrap();
        let text = write_betti_report(&r, true);
        assert_eq!(
            text,
            "betti0\n0 0\n0 0\nbetti1\n0 1\n1 0\nbetti2\n1 1\nbetti0_h1\n1 1\nmatrix\n1 1 -1\n2 1 1\n1 2 -1\n2 2 1\n"
        );
        assert!(write_betti_report(&r, false).contains("# betti0_h1 not meaningful"));
    }
}
