//! Line-oriented instance and factor files.
//!
//! ```text
//! # comment
//! p genfactor <m> <k> <nedges>
//! u <i> <list>          one line per U vertex, 1 <= i <= m
//! v <j> <list>          one line per V vertex, 1 <= j <= k
//! e <i> <j> <rho>
//! ```
//!
//! A list is comma-separated ascending integers without spaces, or `-` for
//! the empty set. A factor file is `f genfactor <n>` followed by `n` lines
//! `w <i> <j> <phi>`; omitted edges have weight 0.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::factor::EdgeWeighting;
use crate::instance::{DegreeList, Edge, Instance};

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

fn number(line: usize, token: &str, what: &str) -> Result<u32> {
    if token.starts_with('-') {
        return Err(Error::parse(line, format!("{what} must be non-negative, got `{token}`")));
    }
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("expected {what}, got `{token}`")))
}

pub fn parse_list(line: usize, token: &str) -> Result<DegreeList> {
    if token == "-" {
        return Ok(DegreeList::empty());
    }
    let mut values = Vec::new();
    for part in token.split(',') {
        let c = number(line, part, "list element")?;
        if values.last().is_some_and(|&prev| prev >= c) {
            return Err(Error::parse(line, format!("list `{token}` is not strictly ascending")));
        }
        values.push(c);
    }
    Ok(DegreeList::new(values))
}

fn arity(line: usize, tokens: &[&str], n: usize) -> Result<()> {
    if tokens.len() != n {
        return Err(Error::parse(
            line,
            format!("`{}` line takes {} fields, got {}", tokens[0], n - 1, tokens.len() - 1),
        ));
    }
    Ok(())
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(0, "missing `p genfactor` header"))?;
    if header.first() != Some(&"p") || header.get(1) != Some(&"genfactor") {
        return Err(Error::parse(hline, "expected header `p genfactor <m> <k> <nedges>`"));
    }
    arity(hline, &header, 5)?;
    let m = number(hline, header[2], "|U|")? as usize;
    let k = number(hline, header[3], "|V|")? as usize;
    let nedges = number(hline, header[4], "edge count")? as usize;

    let mut u_lists: Vec<Option<DegreeList>> = vec![None; m];
    let mut v_lists: Vec<Option<DegreeList>> = vec![None; k];
    let mut edges = Vec::with_capacity(nedges);
    let mut seen = std::collections::BTreeSet::new();
    let mut last_line = hline;
    for (line, tokens) in lines {
        last_line = line;
        match tokens[0] {
            kind @ ("u" | "v") => {
                arity(line, &tokens, 3)?;
                let (slots, side) = if kind == "u" { (&mut u_lists, "U") } else { (&mut v_lists, "V") };
                let idx = number(line, tokens[1], "vertex index")? as usize;
                if idx == 0 || idx > slots.len() {
                    return Err(Error::parse(line, format!("{side} vertex {idx} out of range 1..={}", slots.len())));
                }
                if slots[idx - 1].is_some() {
                    return Err(Error::parse(line, format!("{side} vertex {idx} declared twice")));
                }
                slots[idx - 1] = Some(parse_list(line, tokens[2])?);
            }
            "e" => {
                arity(line, &tokens, 4)?;
                let u = number(line, tokens[1], "U index")?;
                let v = number(line, tokens[2], "V index")?;
                let rho = number(line, tokens[3], "capacity")?;
                if u == 0 || u as usize > m || u_lists[u as usize - 1].is_none() {
                    return Err(Error::parse(line, format!("edge references undeclared U vertex {u}")));
                }
                if v == 0 || v as usize > k || v_lists[v as usize - 1].is_none() {
                    return Err(Error::parse(line, format!("edge references undeclared V vertex {v}")));
                }
                if !seen.insert((u, v)) {
                    return Err(Error::parse(line, format!("duplicate edge {u} {v}")));
                }
                edges.push(Edge::new(u, v, rho));
            }
            other => return Err(Error::parse(line, format!("unknown line type `{other}`"))),
        }
    }
    if edges.len() != nedges {
        return Err(Error::parse(
            last_line,
            format!("header announces {nedges} edges, found {}", edges.len()),
        ));
    }
    let collect = |lists: Vec<Option<DegreeList>>, side: &str| -> Result<Vec<DegreeList>> {
        lists
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.ok_or_else(|| Error::parse(last_line, format!("{side} vertex {} never declared", i + 1))))
            .collect()
    };
    Instance::new(collect(u_lists, "U")?, collect(v_lists, "V")?, edges)
}

pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p genfactor {} {} {}", inst.num_u(), inst.num_v(), inst.edges().len());
    for (i, l) in inst.u_lists().iter().enumerate() {
        let _ = writeln!(out, "u {} {}", i + 1, l);
    }
    for (j, l) in inst.v_lists().iter().enumerate() {
        let _ = writeln!(out, "v {} {}", j + 1, l);
    }
    for e in inst.edges() {
        let _ = writeln!(out, "e {} {} {}", e.u, e.v, e.capacity);
    }
    out
}

pub fn parse_factor(text: &str) -> Result<EdgeWeighting> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(0, "missing `f genfactor` header"))?;
    if header.first() != Some(&"f") || header.get(1) != Some(&"genfactor") {
        return Err(Error::parse(hline, "expected header `f genfactor <n>`"));
    }
    arity(hline, &header, 3)?;
    let n = number(hline, header[2], "entry count")? as usize;
    let mut phi = EdgeWeighting::new();
    let mut seen = std::collections::BTreeSet::new();
    let mut count = 0;
    let mut last_line = hline;
    for (line, tokens) in lines {
        last_line = line;
        if tokens[0] != "w" {
            return Err(Error::parse(line, format!("unknown line type `{}`", tokens[0])));
        }
        arity(line, &tokens, 4)?;
        let u = number(line, tokens[1], "U index")?;
        let v = number(line, tokens[2], "V index")?;
        let w = number(line, tokens[3], "weight")?;
        if !seen.insert((u, v)) {
            return Err(Error::parse(line, format!("duplicate entry {u} {v}")));
        }
        phi.set(u, v, w);
        count += 1;
    }
    if count != n {
        return Err(Error::parse(last_line, format!("header announces {n} entries, found {count}")));
    }
    Ok(phi)
}

/// Writes the nonzero entries only.
pub fn serialize_factor(phi: &EdgeWeighting) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "f genfactor {}", phi.support_len());
    for ((u, v), w) in phi.iter() {
        let _ = writeln!(out, "w {u} {v} {w}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Vertex;

    #[test]
    fn single_edge_instance() {
        let i = parse_instance("p genfactor 1 1 1\nu 1 1\nv 1 1\ne 1 1 1\n").unwrap();
        assert_eq!(i.edges(), &[Edge::new(1, 1, 1)]);
        assert_eq!(i.list(Vertex::u(1)).as_slice(), &[1]);
        assert_eq!(serialize_instance(&i), "p genfactor 1 1 1\nu 1 1\nv 1 1\ne 1 1 1\n");
    }

    #[test]
    fn canonicalizes_order_and_comments() {
        let text = "# two\n\np genfactor 2 1 2\nv 1 0,2\nu 2 1\nu 1 -\ne 2 1 3\ne 1 1 1\n";
        let i = parse_instance(text).unwrap();
        assert_eq!(
            serialize_instance(&i),
            "p genfactor 2 1 2\nu 1 -\nu 2 1\nv 1 0,2\ne 1 1 1\ne 2 1 3\n"
        );
    }

    #[test]
    fn undeclared_vertex_reports_line() {
        let err = parse_instance("p genfactor 1 1 1\nu 1 1\nv 1 1\ne 1 2 1\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 4, msg: "edge references undeclared V vertex 2".into() });
        // declared later is still "before declaration"
        let err = parse_instance("p genfactor 1 1 1\nu 1 1\ne 1 1 1\nv 1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn rejects_malformed() {
        for (text, line) in [
            ("p genfactor 1 1\n", 1),
            ("q genfactor 1 1 0\n", 1),
            ("p genfactor 1 1 0\nu 1 -1\nv 1 0\n", 2),
            ("p genfactor 1 1 0\nu 1 2,1\nv 1 0\n", 2),
            ("p genfactor 1 1 2\nu 1 1\nv 1 1\ne 1 1 1\ne 1 1 1\n", 5),
            ("p genfactor 1 1 0\nu 1 1\n", 2),
            ("p genfactor 1 1 1\nu 1 1\nv 1 1\n", 3),
        ] {
            match parse_instance(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn factor_round_trip() {
        let phi = parse_factor("f genfactor 2\nw 2 1 3\nw 1 1 1\n").unwrap();
        assert_eq!(serialize_factor(&phi), "f genfactor 2\nw 1 1 1\nw 2 1 3\n");
        assert!(parse_factor("f genfactor 1\nw 1 1 1\nw 1 1 2\n").is_err());
        assert!(parse_factor("f genfactor 2\nw 1 1 1\n").is_err());
    }
}
