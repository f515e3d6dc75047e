//! Text interchange: graph6 (short form, n ≤ 62), a 0-indexed edge list,
//! and DOT for rendering.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const GRAPH6_MAX_ORDER: usize = 62;
const GRAPH6_HEADER: &str = ">>graph6<<";

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn parse_graph6(line: &str) -> Result<Graph> {
    let line = line.trim_end_matches(['\r', '\n']);
    let line = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    let Some(&head) = bytes.first() else {
        return Err(Error::BadHeader("empty line".into()));
    };
    if head == 126 {
        return Err(Error::BadHeader(
            "long-form order header (n > 62) is not supported".into(),
        ));
    }
    if !(63..126).contains(&head) {
        return Err(Error::BadHeader(format!("order byte {head:#04x} is not printable graph6")));
    }
    let n = usize::from(head - 63);
    let body = &bytes[1..];
    if body.len() != body_len(n) {
        return Err(Error::BadLength {
            expected: body_len(n),
            got: body.len(),
        });
    }
    if let Some((i, &b)) = body.iter().enumerate().find(|(_, &b)| !(63..=126).contains(&b)) {
        return Err(Error::BadChar {
            offset: i + 1,
            byte: b,
        });
    }
    let mut bits = body
        .iter()
        .flat_map(|&b| (0..6).rev().map(move |k| (b - 63) >> k & 1 == 1));
    let mut g = Graph::empty(n)?;
    for j in 1..n {
        for i in 0..j {
            if bits.next().expect("length checked") {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > GRAPH6_MAX_ORDER {
        return Err(Error::TooLarge {
            order: n,
            max: GRAPH6_MAX_ORDER,
        });
    }
    let mut out = String::with_capacity(1 + body_len(n));
    out.push(char::from(63 + n as u8));
    let (mut acc, mut filled) = (0u8, 0);
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(char::from(acc + 63));
                (acc, filled) = (0, 0);
            }
        }
    }
    if filled > 0 {
        out.push(char::from((acc << (6 - filled)) + 63));
    }
    Ok(out)
}

/// Every graph in a multi-line graph6 document; blank lines are skipped.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            parse_graph6(l.trim()).map_err(|e| Error::Parse {
                line: i + 1,
                msg: e.to_string(),
            })
        })
        .collect()
}

/// Parses `n <count>` followed by one `u v` pair per line. `#` starts a
/// comment. With `one_indexed`, indices are shifted down by one on input.
pub fn parse_edge_list(text: &str, one_indexed: bool) -> Result<Graph> {
    let err = |line: usize, msg: String| Error::Parse { line, msg };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing `n <count>` header".into()))?;
    let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["n", count] => count
            .parse::<usize>()
            .map_err(|_| err(hline, format!("bad vertex count `{count}`")))?,
        _ => return Err(err(hline, format!("expected `n <count>`, found `{header}`"))),
    };
    let mut g = Graph::empty(n)?;
    for (ln, line) in lines {
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| err(ln, format!("bad index `{t}`"))))
            .collect::<Result<_>>()?;
        let [mut u, mut v] = nums[..] else {
            return Err(err(ln, format!("expected `u v`, found `{line}`")));
        };
        if one_indexed {
            if u == 0 || v == 0 {
                return Err(err(ln, "index 0 in one-indexed input".into()));
            }
            u -= 1;
            v -= 1;
        }
        if u == v {
            return Err(err(ln, Error::LoopRejected(u).to_string()));
        }
        if g.has_edge(u, v) {
            return Err(err(ln, format!("duplicate edge {u} {v}")));
        }
        g.add_edge(u, v).map_err(|e| err(ln, e.to_string()))?;
    }
    Ok(g)
}

/// Edge list with optional leading `#` comment lines.
pub fn to_edge_list(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "n {}", g.order());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn to_dot(g: &Graph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "// {c}");
    }
    let name = g.label().unwrap_or("G").replace('"', "'");
    let _ = writeln!(out, "graph \"{name}\" {{");
    for v in 0..g.order() {
        let _ = writeln!(out, "  {v};");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}
