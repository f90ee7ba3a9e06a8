//! Symbolic lifting of the coordinates through `f(t) = 1/(1-t)`.
//!
//! Every coordinate `u` is replaced by the block `(u, f(u), f²(u))`. Since
//! `f` has order three and rotates the intervals `(-inf,0) -> (0,1) ->
//! (1,inf)`, exactly one member of each block lies above 1; it is called the
//! representative of `u`. Orders on the lifted variables are stored as a
//! region per coordinate plus a partial order on the `3n` representatives.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::model::TaggedPattern;

/// Largest supported pattern size; the representative graph uses one `u64`
/// bitset per vertex.
pub const MAX_SIZE: usize = 21;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftingError {
    #[error("f is undefined at {0}")]
    Domain(String),
    #[error("adding {from} -> {to} closes a cycle")]
    Cycle { from: usize, to: usize },
    #[error("the representative graph has a cycle")]
    Cyclic,
    #[error("lifted order is not realizable")]
    InvalidOrder,
    #[error("pattern size {0} exceeds the supported maximum {MAX_SIZE}")]
    TooLarge(usize),
}

/// Interval containing a coordinate, ordered as on the real line.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[repr(u8)]
pub enum Region {
    /// `(-inf, 0)`
    Neg = 0,
    /// `(0, 1)`
    Mid = 1,
    /// `(1, inf)`
    Pos = 2,
}

impl Region {
    pub const ALL: [Region; 3] = [Region::Neg, Region::Mid, Region::Pos];

    pub fn from_index(k: u8) -> Region {
        Self::ALL[(k % 3) as usize]
    }

    /// Region of `f(t)` when `t` lies in `self`.
    pub fn next(self) -> Region {
        Region::from_index(self as u8 + 1)
    }

    /// Power `j` of `f` bringing a coordinate of this region above 1.
    pub fn shift(self) -> u8 {
        2 - self as u8
    }

    pub fn of(t: &BigRational) -> Option<Region> {
        if t.is_zero() || t.is_one() {
            None
        } else if *t < BigRational::zero() {
            Some(Region::Neg)
        } else if *t < BigRational::one() {
            Some(Region::Mid)
        } else {
            Some(Region::Pos)
        }
    }
}

/// One of the three canonical lines.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Line {
    X = 0,
    Y = 1,
    Z = 2,
}

impl Line {
    pub const ALL: [Line; 3] = [Line::X, Line::Y, Line::Z];

    pub fn from_index(k: usize) -> Line {
        Self::ALL[k % 3]
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// A coordinate `x_i`, `y_i` or `z_i`, encoded as vertex `line * n + i`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VarId {
    pub line: Line,
    pub index: usize,
}

impl VarId {
    pub fn new(line: Line, index: usize) -> Self {
        Self { line, index }
    }

    pub fn vertex(self, n: usize) -> usize {
        self.line.index() * n + self.index
    }

    pub fn from_vertex(v: usize, n: usize) -> Self {
        Self {
            line: Line::from_index(v / n),
            index: v % n,
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = ['x', 'y', 'z'][self.line.index()];
        write!(f, "{c}_{}", self.index)
    }
}

/// `f(t) = 1 / (1 - t)`, exactly.
pub fn f_eval(t: &BigRational) -> Result<BigRational, LiftingError> {
    if t.is_zero() || t.is_one() {
        return Err(LiftingError::Domain(t.to_string()));
    }
    Ok((BigRational::one() - t).recip())
}

/// `f^k(t)`.
pub fn f_power(t: &BigRational, k: u8) -> Result<BigRational, LiftingError> {
    let mut out = t.clone();
    for _ in 0..k % 3 {
        out = f_eval(&out)?;
    }
    Ok(out)
}

/// Region of coordinate `v` as fixed by the tags of its line.
pub fn region_of(v: VarId, p: &TaggedPattern) -> Region {
    let line = p.line(v.line.index());
    let rank = line.perm().inverse()[v.index];
    if rank < line.zero() {
        Region::Neg
    } else if rank < line.one() {
        Region::Mid
    } else {
        Region::Pos
    }
}

/// Regions of all `3n` coordinates, indexed by vertex.
pub fn regions_of(p: &TaggedPattern) -> Vec<Region> {
    let n = p.len();
    (0..3 * n)
        .map(|v| region_of(VarId::from_vertex(v, n), p))
        .collect()
}

/// Vertex standing for the representative of `v`, and the power of `f`
/// taking `v` to it.
pub fn rep_of(v: VarId, r: Region, n: usize) -> (usize, u8) {
    (v.vertex(n), r.shift())
}

/// Transitively closed digraph on the `3n` representatives; `v -> w` means
/// `rep(v) < rep(w)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RepGraph {
    n: usize,
    rows: Vec<u64>,
}

impl RepGraph {
    pub fn new(n: usize) -> Result<Self, LiftingError> {
        if n > MAX_SIZE {
            return Err(LiftingError::TooLarge(n));
        }
        Ok(Self {
            n,
            rows: vec![0; 3 * n],
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn has_edge(&self, v: usize, w: usize) -> bool {
        self.rows[v] >> w & 1 == 1
    }

    /// Successor bitset of `v`.
    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.rows[v]
    }

    /// Sets `v -> w` without restoring the closure.
    #[inline]
    pub fn set_edge(&mut self, v: usize, w: usize) {
        self.rows[v] |= 1 << w;
    }

    pub fn copy_from(&mut self, other: &RepGraph) {
        self.n = other.n;
        self.rows.clear();
        self.rows.extend_from_slice(&other.rows);
    }

    /// Adds `v -> w` and everything it implies. Fails without modifying the
    /// graph if `w` already reaches `v`.
    pub fn add_edge_closure(&mut self, v: usize, w: usize) -> Result<(), LiftingError> {
        if v == w || self.has_edge(w, v) {
            return Err(LiftingError::Cycle { from: v, to: w });
        }
        if self.has_edge(v, w) {
            return Ok(());
        }
        let gain = self.rows[w] | 1 << w;
        let bit = 1u64 << v;
        for u in 0..self.rows.len() {
            if u == v || self.rows[u] & bit != 0 {
                self.rows[u] |= gain;
            }
        }
        Ok(())
    }

    /// Warshall closure; returns `false` as soon as a cycle shows up.
    pub fn transitive_closure_acyclic(&mut self) -> bool {
        let m = self.rows.len();
        for k in 0..m {
            let rk = self.rows[k];
            if rk >> k & 1 == 1 {
                return false;
            }
            let bit = 1u64 << k;
            for i in 0..m {
                if self.rows[i] & bit != 0 {
                    self.rows[i] |= rk;
                }
            }
        }
        (0..m).all(|i| self.rows[i] >> i & 1 == 0)
    }

    pub fn is_closed(&self) -> bool {
        let m = self.rows.len();
        (0..m).all(|v| {
            let mut reach = self.rows[v];
            let mut bits = self.rows[v];
            while bits != 0 {
                let w = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                reach |= self.rows[w];
            }
            reach == self.rows[v]
        })
    }

    /// Linear extension; among the available vertices the smallest id comes
    /// first.
    pub fn topological_sort(&self) -> Result<Vec<usize>, LiftingError> {
        let m = self.rows.len();
        let mut preds = vec![0u64; m];
        for v in 0..m {
            let mut bits = self.rows[v];
            while bits != 0 {
                let w = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                preds[w] |= 1 << v;
            }
        }
        let mut placed = 0u64;
        let mut order = Vec::with_capacity(m);
        for _ in 0..m {
            let next = (0..m).find(|&v| placed >> v & 1 == 0 && preds[v] & !placed == 0);
            match next {
                Some(v) => {
                    placed |= 1 << v;
                    order.push(v);
                }
                None => return Err(LiftingError::Cyclic),
            }
        }
        Ok(order)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let m = self.rows.len();
        let mut out = Vec::new();
        for v in 0..m {
            for w in 0..m {
                if self.has_edge(v, w) {
                    out.push((v, w));
                }
            }
        }
        out
    }
}

/// Comparisons forced by the pattern: same line, same region, line order.
pub fn base_graph(p: &TaggedPattern) -> Result<RepGraph, LiftingError> {
    let n = p.len();
    let mut g = RepGraph::new(n)?;
    let regions = regions_of(p);
    for line in Line::ALL {
        let word = p.line(line.index()).perm().word();
        for a in 0..n {
            for b in a + 1..n {
                let v = VarId::new(line, word[a]).vertex(n);
                let w = VarId::new(line, word[b]).vertex(n);
                if regions[v] == regions[w] {
                    g.set_edge(v, w);
                }
            }
        }
    }
    Ok(g)
}

/// Outcome of comparing a coordinate with the image of another under `f`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Comparison {
    Less,
    Greater,
    Unknown,
}

/// Sign of `u - f(w)` as far as the regions and the graph determine it.
#[inline]
pub fn compare_with_f(g: &RepGraph, regions: &[Region], u: usize, w: usize) -> Comparison {
    let ru = regions[u];
    let rfw = regions[w].next();
    if ru != rfw {
        return if ru < rfw {
            Comparison::Less
        } else {
            Comparison::Greater
        };
    }
    if g.has_edge(u, w) {
        Comparison::Less
    } else if g.has_edge(w, u) {
        Comparison::Greater
    } else {
        Comparison::Unknown
    }
}

/// A symbol of the lifted order: the constants 0 and 1, or `f^power(var)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Symbol {
    Zero,
    One,
    Lifted { vertex: usize, power: u8 },
}

impl Symbol {
    fn apply_f(self) -> Symbol {
        match self {
            Symbol::Lifted { vertex, power } => Symbol::Lifted {
                vertex,
                power: (power + 1) % 3,
            },
            other => other,
        }
    }
}

/// Total order on `{0, 1} ∪ {f^j(u)}` over all `3n` coordinates `u`, listed
/// from smallest to largest.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LiftedOrder {
    n: usize,
    sequence: Vec<Symbol>,
}

impl LiftedOrder {
    pub fn new(n: usize, sequence: Vec<Symbol>) -> Self {
        Self { n, sequence }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn sequence(&self) -> &[Symbol] {
        &self.sequence
    }

    /// Full order induced by an order of the representatives and the regions.
    ///
    /// `f` maps `(1,inf)` increasingly onto `(-inf,0)` and `f²` onto `(0,1)`,
    /// so the three parts repeat the representative order.
    pub fn from_reps(n: usize, rep_order: &[usize], regions: &[Region]) -> Self {
        let reps: Vec<Symbol> = rep_order
            .iter()
            .map(|&v| Symbol::Lifted {
                vertex: v,
                power: regions[v].shift(),
            })
            .collect();
        let mut sequence = Vec::with_capacity(9 * n + 2);
        sequence.extend(reps.iter().map(|s| s.apply_f()));
        sequence.push(Symbol::Zero);
        sequence.extend(reps.iter().map(|s| s.apply_f().apply_f()));
        sequence.push(Symbol::One);
        sequence.extend(reps.iter().copied());
        Self { n, sequence }
    }

    /// Order of `Λ(c)` together with 0 and 1. `None` if some lifted value
    /// hits 0 or 1 or two of them coincide.
    pub fn from_values(coords: &[BigRational]) -> Option<Self> {
        let n = coords.len() / 3;
        let mut values: Vec<(BigRational, Symbol)> = vec![
            (BigRational::zero(), Symbol::Zero),
            (BigRational::one(), Symbol::One),
        ];
        for (v, c) in coords.iter().enumerate() {
            let mut t = c.clone();
            for power in 0..3u8 {
                values.push((t.clone(), Symbol::Lifted { vertex: v, power }));
                t = f_eval(&t).ok()?;
            }
        }
        values.sort_by(|a, b| a.0.cmp(&b.0));
        if values.windows(2).any(|w| w[0].0 == w[1].0) {
            return None;
        }
        Some(Self {
            n,
            sequence: values.into_iter().map(|(_, s)| s).collect(),
        })
    }

    fn positions(&self) -> Option<Positions> {
        let m = 3 * self.n;
        if self.sequence.len() != 3 * m + 2 {
            return None;
        }
        let mut lifted = vec![usize::MAX; 3 * m];
        let mut zero = None;
        let mut one = None;
        for (pos, s) in self.sequence.iter().enumerate() {
            let slot = match *s {
                Symbol::Zero => &mut zero,
                Symbol::One => &mut one,
                Symbol::Lifted { vertex, power } => {
                    if vertex >= m || power > 2 || lifted[3 * vertex + power as usize] != usize::MAX
                    {
                        return None;
                    }
                    lifted[3 * vertex + power as usize] = pos;
                    continue;
                }
            };
            if slot.is_some() {
                return None;
            }
            *slot = Some(pos);
        }
        Some(Positions {
            zero: zero?,
            one: one?,
            lifted,
        })
    }
}

struct Positions {
    zero: usize,
    one: usize,
    /// Position of `f^j(u_v)` at index `3v + j`.
    lifted: Vec<usize>,
}

/// Whether the order is induced by `Λ(c)` for some `c` with no coordinate in
/// `{0, 1}`.
///
/// (i) each block has one member below 0, the next one in `(0,1)` and the one
/// after above 1; (ii) whenever `a < b` but `f(b) < f(a)`, then `a < 1 < b`.
pub fn validate_lifted_order(order: &LiftedOrder) -> bool {
    let Some(pos) = order.positions() else {
        return false;
    };
    if pos.zero > pos.one {
        return false;
    }
    let m = 3 * order.n;
    for v in 0..m {
        let ok = (0..3).any(|j| {
            let a = pos.lifted[3 * v + j];
            let b = pos.lifted[3 * v + (j + 1) % 3];
            let c = pos.lifted[3 * v + (j + 2) % 3];
            a < pos.zero && pos.zero < b && b < pos.one && pos.one < c
        });
        if !ok {
            return false;
        }
    }
    let total = 3 * m;
    let next = |s: usize| 3 * (s / 3) + (s % 3 + 1) % 3;
    for a in 0..total {
        for b in 0..total {
            let (pa, pb) = (pos.lifted[a], pos.lifted[b]);
            if pa < pb && pos.lifted[next(b)] < pos.lifted[next(a)]
                && !(pa < pos.one && pos.one < pb) {
                    return false;
                }
        }
    }
    true
}

/// Coordinates realizing a valid lifted order: the members above 1 receive
/// the integers `2, 3, ..., 3n+1` in order, and each coordinate is recovered
/// from its representative through `f`.
pub fn witness_from_order(order: &LiftedOrder) -> Result<Vec<BigRational>, LiftingError> {
    if !validate_lifted_order(order) {
        return Err(LiftingError::InvalidOrder);
    }
    let m = 3 * order.n;
    let mut coords = vec![BigRational::zero(); m];
    let one_pos = order
        .sequence
        .iter()
        .position(|s| *s == Symbol::One)
        .expect("validated");
    for (k, s) in order.sequence[one_pos + 1..].iter().enumerate() {
        let Symbol::Lifted { vertex, power } = *s else {
            return Err(LiftingError::InvalidOrder);
        };
        let r = BigRational::from_integer((k as i64 + 2).into());
        coords[vertex] = f_power(&r, (3 - power) % 3)?;
    }
    Ok(coords)
}

/// Value of a coordinate whose representative receives the integer `r >= 2`.
pub fn value_from_rep(region: Region, r: i64) -> BigRational {
    match region {
        Region::Pos => BigRational::from_integer(r.into()),
        Region::Neg => BigRational::new((-1).into(), (r - 1).into()),
        Region::Mid => BigRational::new((r - 1).into(), r.into()),
    }
}
