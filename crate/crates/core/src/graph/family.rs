use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Named graph families with documented vertex numbering.
///
/// * `Matching(k)`: edge `i` joins `2i` and `2i+1`.
/// * `Path(k)`: `k` edges on vertices `0..=k`, edge `i` joins `i` and `i+1`.
/// * `Cycle(k)`: edge `i` joins `i` and `(i+1) mod k`; needs `k >= 3`.
/// * `Star(k)`: centre `0`, leaves `1..=k`.
/// * `Biclique(a, b)`: sides `0..a` and `a..a+b`.
/// * `Complete(n)`: edges in lexicographic order.
/// * `Sun(l)`: cycle on `0..l` (edges first), then pendant `l+i` at `i`.
/// * `Torus(l)`: vertex `(i, j)` is `i*l + j`; vertex `v` owns edge `2v`
///   to `(i, j+1)` and edge `2v+1` to `(i+1, j)`; needs `l >= 3`.
/// * `Grid(k)`: vertex `(i, j)` is `i*k + j`; right then down neighbours.
/// * `Scaled(c, f)`: `c` disjoint copies, component `i` offset by `i*|V(f)|`.
/// * `Union(a, b)`: `a` followed by `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphFamily {
    Matching(usize),
    Path(usize),
    Cycle(usize),
    Star(usize),
    Biclique(usize, usize),
    Complete(usize),
    Sun(usize),
    Torus(usize),
    Grid(usize),
    Petersen,
    Scaled(usize, Box<GraphFamily>),
    Union(Box<GraphFamily>, Box<GraphFamily>),
}

impl GraphFamily {
    pub fn scaled(copies: usize, f: GraphFamily) -> Self {
        GraphFamily::Scaled(copies, Box::new(f))
    }

    pub fn union(a: GraphFamily, b: GraphFamily) -> Self {
        GraphFamily::Union(Box::new(a), Box::new(b))
    }

    pub fn validate(&self) -> Result<()> {
        use GraphFamily::*;
        match self {
            Cycle(k) if *k < 3 => Err(Error::parameter(format!("cycle needs k >= 3, got {k}"))),
            Sun(l) if *l < 3 => Err(Error::parameter(format!("sun needs l >= 3, got {l}"))),
            Torus(l) if *l < 3 => Err(Error::parameter(format!("torus needs l >= 3, got {l}"))),
            Grid(k) if *k < 1 => Err(Error::parameter("grid needs k >= 1")),
            Complete(n) if *n < 1 => Err(Error::parameter("complete graph needs n >= 1")),
            Scaled(_, f) => f.validate(),
            Union(a, b) => a.validate().and_then(|_| b.validate()),
            _ => Ok(()),
        }
    }

    pub fn generate(&self) -> Result<Graph> {
        self.validate()?;
        Ok(self.build())
    }

    fn build(&self) -> Graph {
        use GraphFamily::*;
        let edges: Vec<(usize, usize)>;
        let n: usize;
        match *self {
            Matching(k) => {
                n = 2 * k;
                edges = (0..k).map(|i| (2 * i, 2 * i + 1)).collect();
            }
            Path(k) => {
                n = k + 1;
                edges = (0..k).map(|i| (i, i + 1)).collect();
            }
            Cycle(k) => {
                n = k;
                edges = (0..k).map(|i| (i, (i + 1) % k)).collect();
            }
            Star(k) => {
                n = k + 1;
                edges = (1..=k).map(|i| (0, i)).collect();
            }
            Biclique(a, b) => {
                n = a + b;
                edges = (0..a)
                    .flat_map(|i| (0..b).map(move |j| (i, a + j)))
                    .collect();
            }
            Complete(m) => {
                n = m;
                edges = (0..m)
                    .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
                    .collect();
            }
            Sun(l) => {
                n = 2 * l;
                edges = (0..l)
                    .map(|i| (i, (i + 1) % l))
                    .chain((0..l).map(|i| (i, l + i)))
                    .collect();
            }
            Torus(l) => {
                n = l * l;
                let idx = |i: usize, j: usize| (i % l) * l + (j % l);
                edges = (0..l)
                    .flat_map(|i| (0..l).flat_map(move |j| [(idx(i, j), idx(i, j + 1)), (idx(i, j), idx(i + 1, j))]))
                    .collect();
            }
            Grid(k) => {
                n = k * k;
                let mut e = Vec::new();
                for i in 0..k {
                    for j in 0..k {
                        if j + 1 < k {
                            e.push((i * k + j, i * k + j + 1));
                        }
                        if i + 1 < k {
                            e.push((i * k + j, (i + 1) * k + j));
                        }
                    }
                }
                edges = e;
            }
            Petersen => {
                n = 10;
                edges = (0..5)
                    .map(|i| (i, (i + 1) % 5))
                    .chain((0..5).map(|i| (i, i + 5)))
                    .chain((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)))
                    .collect();
            }
            Scaled(c, ref f) => return f.build().scaled(c),
            Union(ref a, ref b) => return a.build().disjoint_union(&b.build()),
        }
        Graph::new(n, edges).expect("family generators emit simple graphs")
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GraphFamily::*;
        match self {
            Matching(k) => write!(f, "matching:{k}"),
            Path(k) => write!(f, "path:{k}"),
            Cycle(k) => write!(f, "cycle:{k}"),
            Star(k) => write!(f, "star:{k}"),
            Biclique(a, b) => write!(f, "biclique:{a},{b}"),
            Complete(n) => write!(f, "complete:{n}"),
            Sun(l) => write!(f, "sun:{l}"),
            Torus(l) => write!(f, "torus:{l}"),
            Grid(k) => write!(f, "grid:{k}"),
            Petersen => write!(f, "petersen"),
            Scaled(c, g) => write!(f, "{c}*{g}"),
            Union(a, b) => write!(f, "{a}+{b}"),
        }
    }
}

impl FromStr for GraphFamily {
    type Err = Error;

    /// Accepts `name:params`, the shorthands `k3`, `c4`, `m2`, `p3`, `s4`,
    /// `c*spec` for disjoint copies and `a+b` for disjoint unions.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('+') {
            return Ok(GraphFamily::union(a.parse()?, b.parse()?));
        }
        if let Some((c, rest)) = s.split_once('*') {
            let copies = parse_usize(c, s)?;
            return Ok(GraphFamily::scaled(copies, rest.parse()?));
        }
        let lower = s.to_ascii_lowercase();
        let (name, params) = match lower.split_once(':') {
            Some((n, p)) => (n.to_string(), p.to_string()),
            None => {
                let split = lower
                    .find(|c: char| c.is_ascii_digit())
                    .unwrap_or(lower.len());
                (lower[..split].to_string(), lower[split..].to_string())
            }
        };
        let nums: Vec<usize> = if params.is_empty() {
            Vec::new()
        } else {
            params
                .split(',')
                .map(|p| parse_usize(p, s))
                .collect::<Result<_>>()?
        };
        let one = |nums: &[usize]| -> Result<usize> {
            match nums {
                [k] => Ok(*k),
                _ => Err(Error::parameter(format!("`{s}` needs exactly one size parameter"))),
            }
        };
        use GraphFamily::*;
        Ok(match name.as_str() {
            "matching" | "m" => Matching(one(&nums)?),
            "path" | "p" => Path(one(&nums)?),
            "cycle" | "c" => Cycle(one(&nums)?),
            "star" | "s" => Star(one(&nums)?),
            "complete" | "k" => Complete(one(&nums)?),
            "sun" => Sun(one(&nums)?),
            "torus" | "t" => Torus(one(&nums)?),
            "grid" => Grid(one(&nums)?),
            "petersen" if nums.is_empty() => Petersen,
            "biclique" | "kb" => match nums[..] {
                [a, b] => Biclique(a, b),
                _ => return Err(Error::parameter(format!("`{s}` needs two sizes"))),
            },
            _ => return Err(Error::parameter(format!("unknown graph family `{s}`"))),
        })
    }
}

fn parse_usize(p: &str, whole: &str) -> Result<usize> {
    p.trim()
        .parse()
        .map_err(|_| Error::parameter(format!("bad size `{p}` in `{whole}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_sizes() {
        for l in 3..7 {
            let t = GraphFamily::Torus(l).generate().unwrap();
            assert_eq!((t.vertex_count(), t.edge_count()), (l * l, 2 * l * l));
            assert!((0..t.vertex_count()).all(|v| t.degree(v) == 4));
            let s = GraphFamily::Sun(l).generate().unwrap();
            assert_eq!((s.vertex_count(), s.edge_count()), (2 * l, 2 * l));
        }
        for k in 1..6 {
            let g = GraphFamily::Grid(k).generate().unwrap();
            assert_eq!(g.edge_count(), 2 * k * (k - 1));
        }
    }

    #[test]
    fn minima_enforced() {
        assert!(GraphFamily::Torus(2).generate().is_err());
        assert!(GraphFamily::Cycle(2).generate().is_err());
        assert!(GraphFamily::scaled(2, GraphFamily::Sun(1)).generate().is_err());
    }

    #[test]
    fn parses_specs() {
        assert_eq!("torus:5".parse::<GraphFamily>().unwrap(), GraphFamily::Torus(5));
        assert_eq!("k3".parse::<GraphFamily>().unwrap(), GraphFamily::Complete(3));
        assert_eq!(
            "biclique:2,3".parse::<GraphFamily>().unwrap(),
            GraphFamily::Biclique(2, 3)
        );
        let u: GraphFamily = "2*cycle:4+m3".parse().unwrap();
        assert_eq!(u.generate().unwrap().edge_count(), 11);
        assert!("wheel:4".parse::<GraphFamily>().is_err());
    }
}
