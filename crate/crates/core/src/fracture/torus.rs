//! Shift action of `Z_l x Z_l` on fractures of the torus and its fixed
//! points.
//!
//! Edges at a torus vertex are named by direction: `Up` to `(i, j+1)`,
//! `Down` to `(i, j-1)`, `Left` to `(i-1, j)` and `Right` to `(i+1, j)`.
//! A shift moves the partition at `(i, j)` to `(i+a, j+b)` keeping the
//! direction names, so the fixed points are the fractures using the same
//! direction partition everywhere.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{fractured_graph, partition, Fracture};
use crate::error::{Error, Result};
use crate::graph::{canonical_form, Graph, GraphFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Up,
    Down,
    Left,
    Right,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::Up, Direction::Down, Direction::Left, Direction::Right];

    pub fn letter(self) -> char {
        match self {
            Direction::Up => 'u',
            Direction::Down => 'd',
            Direction::Left => 'l',
            Direction::Right => 'r',
        }
    }
}

/// Edge ids at vertex `v` of the generated torus, indexed by
/// [`Direction::ALL`].
pub fn torus_direction_edges(ell: usize, v: usize) -> [usize; 4] {
    let (i, j) = (v / ell, v % ell);
    let idx = |i: usize, j: usize| (i % ell) * ell + (j % ell);
    [
        2 * v,
        2 * idx(i, j + ell - 1),
        2 * idx(i + ell - 1, j) + 1,
        2 * v + 1,
    ]
}

fn torus_side(h: &Graph) -> Result<usize> {
    let n = h.vertex_count();
    let ell = (n as f64).sqrt().round() as usize;
    if ell < 3 || ell * ell != n || *h != GraphFamily::Torus(ell).generate()? {
        return Err(Error::usage("base graph is not a generated torus"));
    }
    Ok(ell)
}

/// Direction labels of the partition at `v`.
fn direction_labels(ell: usize, h: &Graph, r: &Fracture, v: usize) -> [u8; 4] {
    let inc = h.incident_edges(v);
    let mut out = [0u8; 4];
    for (d, e) in torus_direction_edges(ell, v).into_iter().enumerate() {
        out[d] = r.part(v)[inc.binary_search(&e).unwrap()];
    }
    out
}

fn from_direction_labels(ell: usize, h: &Graph, labels: &[[u8; 4]]) -> Fracture {
    let parts = (0..h.vertex_count())
        .map(|v| {
            let inc = h.incident_edges(v);
            let mut raw = vec![0usize; 4];
            for (d, e) in torus_direction_edges(ell, v).into_iter().enumerate() {
                raw[inc.binary_search(&e).unwrap()] = labels[v][d] as usize;
            }
            partition::normalise(&raw)
        })
        .collect();
    Fracture { parts }
}

/// The fracture of `T_l` using the direction partition `labels` (indexed by
/// [`Direction::ALL`], any labelling) at every vertex.
pub fn uniform_torus_fracture(ell: usize, labels: [u8; 4]) -> Result<Fracture> {
    let h = GraphFamily::Torus(ell).generate()?;
    Ok(from_direction_labels(ell, &h, &vec![labels; ell * ell]))
}

/// The shift `(a, b)` applied to a fracture of the generated torus `h`.
pub fn torus_shift_act(h: &Graph, shift: (usize, usize), r: &Fracture) -> Result<Fracture> {
    let ell = torus_side(h)?;
    if !r.fits(h) {
        return Err(Error::usage("fracture does not match the torus"));
    }
    let mut labels = vec![[0u8; 4]; ell * ell];
    for v in 0..ell * ell {
        let (i, j) = (v / ell, v % ell);
        let w = ((i + shift.0) % ell) * ell + (j + shift.1) % ell;
        labels[w] = direction_labels(ell, h, r, v);
    }
    Ok(from_direction_labels(ell, h, &labels))
}

/// Isomorphism types of the fractured graphs of the fixed points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FixedPointKind {
    Matching,
    MatchingAndCycles,
    WedgePacking,
    CyclePackingI,
    CyclePackingII,
    SunPacking,
    Torus,
}

impl FixedPointKind {
    pub const ALL: [FixedPointKind; 7] = [
        FixedPointKind::Matching,
        FixedPointKind::MatchingAndCycles,
        FixedPointKind::WedgePacking,
        FixedPointKind::CyclePackingI,
        FixedPointKind::CyclePackingII,
        FixedPointKind::SunPacking,
        FixedPointKind::Torus,
    ];

    /// How many of the 15 direction partitions have this type.
    pub fn multiplicity(self) -> usize {
        match self {
            FixedPointKind::Matching | FixedPointKind::CyclePackingI | FixedPointKind::Torus => 1,
            FixedPointKind::MatchingAndCycles | FixedPointKind::CyclePackingII => 2,
            FixedPointKind::WedgePacking | FixedPointKind::SunPacking => 4,
        }
    }

    /// Blocks per vertex.
    pub fn blocks(self) -> usize {
        match self {
            FixedPointKind::Matching => 4,
            FixedPointKind::MatchingAndCycles | FixedPointKind::WedgePacking => 3,
            FixedPointKind::CyclePackingI | FixedPointKind::CyclePackingII | FixedPointKind::SunPacking => 2,
            FixedPointKind::Torus => 1,
        }
    }

    /// Möbius weight of one vertex, `(-1)^(b-1) (b-1)!`.
    pub fn vertex_weight(self) -> i64 {
        match self.blocks() {
            4 => -6,
            3 => 2,
            2 => -1,
            _ => 1,
        }
    }

    /// Contribution of the whole type to the top coefficient modulo `l`:
    /// multiplicity times vertex weight.
    pub fn residue_coefficient(self) -> i64 {
        self.multiplicity() as i64 * self.vertex_weight()
    }

    /// The family the fractured graph is isomorphic to.
    pub fn family(self, ell: usize) -> GraphFamily {
        use GraphFamily as F;
        match self {
            FixedPointKind::Matching => F::Matching(2 * ell * ell),
            FixedPointKind::MatchingAndCycles => {
                F::union(F::Matching(ell * ell), F::scaled(ell, F::Cycle(ell)))
            }
            FixedPointKind::WedgePacking => F::scaled(ell * ell, F::Path(2)),
            FixedPointKind::CyclePackingI => F::scaled(2 * ell, F::Cycle(ell)),
            FixedPointKind::CyclePackingII => F::scaled(ell, F::Cycle(2 * ell)),
            FixedPointKind::SunPacking => F::scaled(ell, F::Sun(ell)),
            FixedPointKind::Torus => F::Torus(ell),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FixedPointKind::Matching => "matching",
            FixedPointKind::MatchingAndCycles => "matching and cycles",
            FixedPointKind::WedgePacking => "wedge packing",
            FixedPointKind::CyclePackingI => "cycle packing I",
            FixedPointKind::CyclePackingII => "cycle packing II",
            FixedPointKind::SunPacking => "sun packing",
            FixedPointKind::Torus => "torus",
        }
    }

    /// Type of a direction partition given as a restricted-growth string over
    /// `[u, d, l, r]`.
    pub fn classify(labels: &[u8]) -> FixedPointKind {
        let same = |a: usize, b: usize| labels[a] == labels[b];
        match partition::block_count(labels) {
            4 => FixedPointKind::Matching,
            3 => {
                if same(0, 1) || same(2, 3) {
                    FixedPointKind::MatchingAndCycles
                } else {
                    FixedPointKind::WedgePacking
                }
            }
            2 => {
                let sizes: Vec<usize> = (0..2u8)
                    .map(|b| labels.iter().filter(|&&x| x == b).count())
                    .collect();
                if sizes.contains(&3) {
                    FixedPointKind::SunPacking
                } else if same(0, 1) {
                    FixedPointKind::CyclePackingI
                } else {
                    FixedPointKind::CyclePackingII
                }
            }
            _ => FixedPointKind::Torus,
        }
    }
}

/// One fixed point of the shift action.
#[derive(Clone, Debug)]
pub struct TorusFixedPoint {
    pub fracture: Fracture,
    pub kind: FixedPointKind,
    /// Restricted-growth string over `[u, d, l, r]`.
    pub directions: [u8; 4],
    /// Whether the fractured graph was confirmed isomorphic to
    /// `kind.family(l)`.
    pub verified: bool,
}

impl TorusFixedPoint {
    /// Blocks written with direction letters, e.g. `{ud},{l},{r}`.
    pub fn direction_blocks(&self) -> String {
        let nb = partition::block_count(&self.directions);
        (0..nb as u8)
            .map(|b| {
                let s: String = Direction::ALL
                    .iter()
                    .zip(self.directions)
                    .filter(|(_, x)| *x == b)
                    .map(|(d, _)| d.letter())
                    .collect();
                format!("{{{s}}}")
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// The 15 fixed points, grouped by type in [`FixedPointKind::ALL`] order,
/// each checked against its family by canonical form.
pub fn torus_fixed_points(ell: usize) -> Result<Vec<TorusFixedPoint>> {
    let h = Arc::new(GraphFamily::Torus(ell).generate()?);
    let mut out = Vec::with_capacity(15);
    for labels in partition::all_rgs(4) {
        let directions = [labels[0], labels[1], labels[2], labels[3]];
        let kind = FixedPointKind::classify(&labels);
        let fracture = from_direction_labels(ell, &h, &vec![directions; ell * ell]);
        let fg = fractured_graph(&h, &fracture)?;
        let expected = kind.family(ell).generate()?;
        let verified = fg.graph().vertex_count() == expected.vertex_count()
            && fg.graph().edge_count() == expected.edge_count()
            && canonical_form(fg.graph()) == canonical_form(&expected);
        out.push(TorusFixedPoint {
            fracture,
            kind,
            directions,
            verified,
        });
    }
    out.sort_by_key(|fp| (fp.kind, fp.directions));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_points_at_three() {
        let fps = torus_fixed_points(3).unwrap();
        assert_eq!(fps.len(), 15);
        assert!(fps.iter().all(|f| f.verified));
        for kind in FixedPointKind::ALL {
            let m = fps.iter().filter(|f| f.kind == kind).count();
            assert_eq!(m, kind.multiplicity());
        }
        let sum: i64 = FixedPointKind::ALL.iter().map(|k| k.residue_coefficient()).sum();
        assert_eq!(sum, 0);
        let h = GraphFamily::Torus(3).generate().unwrap();
        for fp in &fps {
            for a in 0..3 {
                for b in 0..3 {
                    assert_eq!(torus_shift_act(&h, (a, b), &fp.fracture).unwrap(), fp.fracture);
                }
            }
        }
    }

    #[test]
    fn direction_names() {
        let fps = torus_fixed_points(3).unwrap();
        let sun: Vec<String> = fps
            .iter()
            .filter(|f| f.kind == FixedPointKind::SunPacking)
            .map(|f| f.direction_blocks())
            .collect();
        assert!(sun.contains(&"{u},{dlr}".to_string()));
        assert!(sun.contains(&"{ulr},{d}".to_string()));
    }

    #[test]
    fn shift_rejects_other_graphs() {
        let k4 = GraphFamily::Complete(4).generate().unwrap();
        let f = Fracture::top(&k4);
        assert!(torus_shift_act(&k4, (1, 0), &f).is_err());
    }
}
