//! PACE-style digraph files.
//!
//! Header `n m 0`, then one line per vertex listing its out-neighbours.
//! Vertices are 1-indexed in files and 0-indexed in memory. Lines starting
//! with `%` are comments.

use dfvs_core::{DiGraph, Error, Node, Result};
use std::io::{BufRead, Write};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_id(tok: &str, n: usize, line: usize) -> Result<Node> {
    let id: usize = tok
        .parse()
        .map_err(|_| parse_err(line, format!("not a vertex id: {tok:?}")))?;
    if id == 0 || id > n {
        return Err(parse_err(line, format!("vertex {id} outside 1..={n}")));
    }
    Ok((id - 1) as Node)
}

pub fn read_graph(input: impl BufRead) -> Result<DiGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut g = DiGraph::new(0);
    let mut vertex = 0usize;
    let mut arcs = 0usize;
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        if line.starts_with('%') {
            continue;
        }
        let Some((n, _)) = header else {
            if line.trim().is_empty() {
                continue;
            }
            let nums: Vec<&str> = line.split_whitespace().collect();
            let [n, m, fmt] = nums[..] else {
                return Err(parse_err(lineno, "expected header `n m 0`"));
            };
            let num = |t: &str| t.parse::<usize>().map_err(|_| parse_err(lineno, format!("bad header field {t:?}")));
            let (n, m) = (num(n)?, num(m)?);
            if num(fmt)? != 0 {
                return Err(parse_err(lineno, "only format code 0 is supported"));
            }
            header = Some((n, m));
            g = DiGraph::new(n);
            continue;
        };
        if vertex == n {
            if line.trim().is_empty() {
                continue;
            }
            return Err(parse_err(lineno, format!("more than {n} vertex lines")));
        }
        for tok in line.split_whitespace() {
            let v = parse_id(tok, n, lineno)?;
            if v == vertex as Node {
                log::info!("self-loop on vertex {}", vertex + 1);
            }
            if g.add_arc(vertex as Node, v)? {
                arcs += 1;
            }
        }
        vertex += 1;
    }
    // trailing vertices without out-arcs may be left out entirely
    let Some((_, m)) = header else {
        return Err(parse_err(0, "missing header"));
    };
    if arcs != m {
        return Err(parse_err(0, format!("header declares {m} arcs, found {arcs}")));
    }
    Ok(g)
}

/// Writes `g` with its alive vertices renumbered `1..=k` in id order.
pub fn write_graph(out: &mut impl Write, g: &DiGraph) -> Result<()> {
    let (c, _) = g.compact();
    writeln!(out, "{} {} 0", c.num_vertices(), c.arc_count())?;
    for v in c.vertices() {
        let line: Vec<String> = c.succ(v).iter().map(|&w| (w + 1).to_string()).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}

/// One 1-indexed vertex per line, ascending.
pub fn write_solution(out: &mut impl Write, solution: &[Node]) -> Result<()> {
    let mut s = solution.to_vec();
    s.sort_unstable();
    for v in s {
        writeln!(out, "{}", v + 1)?;
    }
    Ok(())
}

pub fn read_solution(input: impl BufRead, n: usize) -> Result<Vec<Node>> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.starts_with('%') {
            continue;
        }
        for tok in line.split_whitespace() {
            out.push(parse_id(tok, n, i + 1)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dfvs_core::random::random_digraph_with_bi_edges;

    fn parse(s: &str) -> Result<DiGraph> {
        read_graph(s.as_bytes())
    }

    #[test]
    fn small_file() {
        let g = parse("3 2 0\n2\n3\n\n").unwrap();
        assert_eq!(g.arcs().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        let g = parse("% comment\n3 2 0\n% between\n2\n3\n").unwrap();
        assert_eq!(g.arc_count(), 2);
        assert_eq!(g.num_vertices(), 3);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(parse("3 2 0\n2\n4\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse("3 2 0\n2\nx\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse("3 5 0\n2\n3\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse("3 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("1 0 0\n\n1\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn self_loops_are_kept() {
        let g = parse("2 2 0\n1 2\n\n").unwrap();
        assert!(g.has_loop(0));
    }

    #[test]
    fn round_trip() {
        for seed in 0..100 {
            let g = random_digraph_with_bi_edges(1 + seed as usize % 15, 0.3, 0.4, seed);
            let mut buf = Vec::new();
            write_graph(&mut buf, &g).unwrap();
            let h = read_graph(buf.as_slice()).unwrap();
            assert_eq!(h.arcs().collect::<Vec<_>>(), g.arcs().collect::<Vec<_>>());
            assert_eq!(h.num_vertices(), g.num_vertices());
        }
    }

    #[test]
    fn solutions() {
        let mut buf = Vec::new();
        write_solution(&mut buf, &[6, 1]).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "2\n7\n");
        assert_eq!(read_solution(buf.as_slice(), 8).unwrap(), vec![1, 6]);
        let mut empty = Vec::new();
        write_solution(&mut empty, &[]).unwrap();
        assert!(empty.is_empty());
        assert!(read_solution("9\n".as_bytes(), 8).is_err());
    }
}
