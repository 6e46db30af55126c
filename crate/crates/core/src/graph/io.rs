use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

/// Parses the edge-list format: a header `n m`, then `m` lines `u v`.
///
/// Blank lines and lines starting with `#` are skipped. Line numbers in
/// errors are 1-based positions in the input.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "missing header `n m`".into(),
    })?;
    let (n, m) = two_numbers(hline, header)?;

    let mut g = Graph::empty(n);
    let mut seen = 0;
    for (line, body) in lines {
        if seen == m {
            return Err(Error::Parse {
                line,
                message: format!("more than the declared {m} edges"),
            });
        }
        let (u, v) = two_numbers(line, body)?;
        if u >= n || v >= n {
            return Err(Error::Parse {
                line,
                message: format!("endpoint out of range 0..{n}"),
            });
        }
        if u == v {
            return Err(Error::Parse {
                line,
                message: format!("self-loop at vertex {u}"),
            });
        }
        if g.add_edge_if_absent(u, v).is_none() {
            return Err(Error::Parse {
                line,
                message: format!("duplicate edge {u} {v}"),
            });
        }
        seen += 1;
    }
    if seen != m {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            message: format!("declared {m} edges, found {seen}"),
        });
    }
    Ok(g)
}

fn two_numbers(line: usize, body: &str) -> Result<(usize, usize)> {
    let mut it = body.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::Parse {
            line,
            message: format!("missing {what}"),
        })?;
        tok.parse().map_err(|_| Error::Parse {
            line,
            message: format!("`{tok}` is not a nonnegative integer"),
        })
    };
    let a = next("first number")?;
    let b = next("second number")?;
    if let Some(extra) = it.next() {
        return Err(Error::Parse {
            line,
            message: format!("unexpected token `{extra}`"),
        });
    }
    Ok((a, b))
}

/// Writes `g` in the edge-list format, edges in id order.
pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_edge_list("3 2\n0 1\n1 1\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 3, message: "self-loop at vertex 1".into() });
        match parse_edge_list("3 2\n0 1\n1 0\n").unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            e => panic!("{e}"),
        }
        match parse_edge_list("2 1\n0 x\n").unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            e => panic!("{e}"),
        }
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("").is_err());
    }
}
