//! Orientation predicates of two triangles with vertices on the canonical
//! lines, evaluated symbolically from a tagged pattern and a representative
//! graph.
//!
//! Every orientation that the Guigue–Devillers test needs factors into
//! differences of coordinates on one line, a comparison of a coordinate with
//! 1, and at most one factor `v - f(w)`:
//!
//! | orientation          | decomposition                            |
//! |----------------------|------------------------------------------|
//! | `[Xa, Xb, Yc, Yd]`   | `(xa - xb)(yc - yd)`                     |
//! | `[Xa, Xb, Zc, Zd]`   | `(xa - xb)(zc - zd)`                     |
//! | `[Ya, Yb, Zc, Zd]`   | `(ya - yb)(zc - zd)`                     |
//! | `[Xa, Xb, Yc, Zd]`   | `(xa - xb)(yc - 1)(zd - f(yc))`          |
//! | `[Xa, Yb, Yc, Zd]`   | `-(yb - yc)(zd - 1)(xa - f(zd))`         |
//! | `[Xa, Yb, Zc, Zd]`   | `(zc - zd)(xa - 1)(yb - f(xa))`          |

use std::collections::BTreeSet;

use thiserror::Error;

use crate::lifting::{compare_with_f, regions_of, Comparison, RepGraph, Region};
use crate::model::TaggedPattern;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrientationError {
    #[error("sign vector half {0:?} is constant; the pair is separated by a plane")]
    ConstantHalf([i8; 3]),
}

/// Line ranks and regions of every coordinate, indexed by vertex
/// (`line * n + element`).
#[derive(Clone, Debug)]
pub struct PatternView {
    n: usize,
    rank: Vec<usize>,
    regions: Vec<Region>,
}

impl PatternView {
    pub fn new(p: &TaggedPattern) -> Self {
        let n = p.len();
        let mut rank = Vec::with_capacity(3 * n);
        for line in p.lines() {
            rank.extend(line.perm().inverse());
        }
        Self {
            n,
            rank,
            regions: regions_of(p),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    /// Sign of `a - b` for two coordinates on the same line.
    #[inline]
    fn line_sign(&self, a: usize, b: usize) -> i8 {
        if self.rank[a] > self.rank[b] {
            1
        } else {
            -1
        }
    }

    /// Sign of `a - 1`.
    #[inline]
    fn above_one(&self, a: usize) -> i8 {
        if self.regions[a] == Region::Pos {
            1
        } else {
            -1
        }
    }
}

/// The coordinate `w` such that `v - f(w)` may be left undetermined by the
/// plane orientations: `x_k -> z_k`, `y_k -> x_k`, `z_k -> y_k`.
#[inline]
pub fn associated_vertex(v: usize, n: usize) -> usize {
    (v + 2 * n) % (3 * n)
}

/// One of the six plane orientations of a pair of triangles.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SignEntry {
    Determined(i8),
    /// Equals `sign * sgn(var - f(associated_vertex(var)))`.
    Pending { sign: i8, var: usize },
}

impl SignEntry {
    /// Resolves a pending entry through the graph; `None` if still unknown.
    #[inline]
    pub fn resolve(self, g: &RepGraph, n: usize) -> Option<i8> {
        match self {
            SignEntry::Determined(s) => Some(s),
            SignEntry::Pending { sign, var } => {
                let w = associated_vertex(var, n);
                if g.has_edge(var, w) {
                    Some(-sign)
                } else if g.has_edge(w, var) {
                    Some(sign)
                } else {
                    None
                }
            }
        }
    }
}

/// `[Xi,Yi,Zi,Xj], [Xi,Yi,Zi,Yj], [Xi,Yi,Zi,Zj], [Xj,Yj,Zj,Xi], [Xj,Yj,Zj,Yi], [Xj,Yj,Zj,Zi]`.
pub type SignVector = [SignEntry; 6];

/// Orientation `[Xi, Yi, Zi, Lj]` where `L` is line `l`.
///
/// With `s = l`, `t = l+1`, `u = l+2` (mod 3) it equals the sign of
/// `(s_i - s_j)(t_i - 1)(u_i - f(t_i))`. The last factor is left pending,
/// and `u_i` recorded in `unknowns`, when `u_i` and `f(t_i)` share a region.
pub fn initial_orientation(
    i: usize,
    l: usize,
    j: usize,
    view: &PatternView,
    unknowns: &mut BTreeSet<usize>,
) -> SignEntry {
    let n = view.n;
    let (s, t, u) = (l, (l + 1) % 3, (l + 2) % 3);
    let mut sign = view.line_sign(s * n + i, s * n + j);
    sign *= view.above_one(t * n + i);
    let v = u * n + i;
    let w = t * n + i;
    let rv = view.regions[v];
    let rfw = view.regions[w].next();
    debug_assert_eq!(associated_vertex(v, n), w);
    if rv == rfw {
        unknowns.insert(v);
        SignEntry::Pending { sign, var: v }
    } else if rv > rfw {
        SignEntry::Determined(sign)
    } else {
        SignEntry::Determined(-sign)
    }
}

/// The six plane orientations of the pair `(i, j)`.
pub fn sign_vector(
    i: usize,
    j: usize,
    view: &PatternView,
    unknowns: &mut BTreeSet<usize>,
) -> SignVector {
    let mut sv = [SignEntry::Determined(0); 6];
    for l in 0..3 {
        sv[l] = initial_orientation(i, l, j, view, unknowns);
        sv[3 + l] = initial_orientation(j, l, i, view, unknowns);
    }
    sv
}

/// Vertex labels after the Guigue–Devillers renaming.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RenamedPair {
    pub a_i: usize,
    pub b_i: usize,
    pub c_i: usize,
    pub a_j: usize,
    pub b_j: usize,
    pub c_j: usize,
}

impl RenamedPair {
    /// Quadruple of the first final test, `[Ai, Bi, Aj, Bj]`.
    pub fn first_test(&self) -> [usize; 4] {
        [self.a_i, self.b_i, self.a_j, self.b_j]
    }

    /// Quadruple of the second final test, `[Ai, Ci, Cj, Aj]`.
    pub fn second_test(&self) -> [usize; 4] {
        [self.a_i, self.c_i, self.c_j, self.a_j]
    }
}

/// Whether the quick separation test settles the pair.
#[inline]
pub fn separated_by_plane(sv: &[i8; 6]) -> bool {
    (sv[0] == sv[1] && sv[1] == sv[2]) || (sv[3] == sv[4] && sv[4] == sv[5])
}

/// Renames the vertices of triangles `i` and `j` so that the plane
/// orientations read `(1, -1, -1, 1, -1, -1)`.
///
/// `A_j` is the vertex of `j` alone on its side of the plane of `i`, and
/// symmetrically for `A_i`; the circular order is kept and `B`, `C` are
/// exchanged when the orientation against the other `A` is negative.
pub fn rename_guigue(
    sv: &[i8; 6],
    i: usize,
    j: usize,
    n: usize,
) -> Result<RenamedPair, OrientationError> {
    if sv[0] == sv[1] && sv[1] == sv[2] {
        return Err(OrientationError::ConstantHalf([sv[0], sv[1], sv[2]]));
    }
    if sv[3] == sv[4] && sv[4] == sv[5] {
        return Err(OrientationError::ConstantHalf([sv[3], sv[4], sv[5]]));
    }
    let (mut xi, mut yi, mut zi) = (i, i + n, i + 2 * n);
    let (mut xj, mut yj, mut zj) = (j, j + n, j + 2 * n);
    let (mut sign_i, mut sign_j) = (sv[0], sv[3]);
    if sv[0] == sv[1] {
        (xj, yj, zj) = (zj, xj, yj);
        sign_i = sv[2];
    } else if sv[0] == sv[2] {
        (xj, yj, zj) = (yj, zj, xj);
        sign_i = sv[1];
    }
    if sv[3] == sv[4] {
        (xi, yi, zi) = (zi, xi, yi);
        sign_j = sv[5];
    } else if sv[3] == sv[5] {
        (xi, yi, zi) = (yi, zi, xi);
        sign_j = sv[4];
    }
    if sign_i == -1 {
        std::mem::swap(&mut yi, &mut zi);
    }
    if sign_j == -1 {
        std::mem::swap(&mut yj, &mut zj);
    }
    Ok(RenamedPair {
        a_i: xi,
        b_i: yi,
        c_i: zi,
        a_j: xj,
        b_j: yj,
        c_j: zj,
    })
}

/// Orientation of one of the two final tests.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FinalOrientation {
    Determined(i8),
    /// Equals `sign * sgn(v - f(w))`.
    Pending { sign: i8, v: usize, w: usize },
}

/// Sorts by vertex id (line, then element) and returns `(-1)^swaps`.
fn insertion_sort(q: &mut [usize; 4]) -> i8 {
    let mut sign = 1;
    for k in 1..4 {
        let mut m = k;
        while m > 0 && q[m - 1] > q[m] {
            q.swap(m - 1, m);
            sign = -sign;
            m -= 1;
        }
    }
    sign
}

/// Orientation of four vertices, two from each triangle, as far as the
/// regions and the graph determine it.
pub fn final_orientation(q: [usize; 4], g: &RepGraph, view: &PatternView) -> FinalOrientation {
    let n = view.n;
    let mut o = q;
    let mut sign = insertion_sort(&mut o);
    let line = [o[0] / n, o[1] / n, o[2] / n, o[3] / n];
    let regions = &view.regions;

    let decide = |sign: i8, v: usize, w: usize| match compare_with_f(g, regions, v, w) {
        Comparison::Less => FinalOrientation::Determined(-sign),
        Comparison::Greater => FinalOrientation::Determined(sign),
        Comparison::Unknown => FinalOrientation::Pending { sign, v, w },
    };

    if line[0] == line[1] && line[2] == line[3] {
        // (a0 - a1)(b2 - b3)
        sign *= view.line_sign(o[0], o[1]);
        sign *= view.line_sign(o[2], o[3]);
        FinalOrientation::Determined(sign)
    } else if line[0] == line[1] {
        // [Xa, Xb, Yc, Zd] = (xa - xb)(yc - 1)(zd - f(yc))
        sign *= view.line_sign(o[0], o[1]);
        sign *= view.above_one(o[2]);
        decide(sign, o[3], o[2])
    } else if line[1] == line[2] {
        // [Xa, Yb, Yc, Zd] = -(yb - yc)(zd - 1)(xa - f(zd))
        sign = -sign;
        sign *= view.line_sign(o[1], o[2]);
        sign *= view.above_one(o[3]);
        decide(sign, o[0], o[3])
    } else {
        debug_assert_eq!(line[2], line[3]);
        // [Xa, Yb, Zc, Zd] = (zc - zd)(xa - 1)(yb - f(xa))
        sign *= view.line_sign(o[2], o[3]);
        sign *= view.above_one(o[0]);
        decide(sign, o[1], o[0])
    }
}
