//! Search over the orders of the lifted variables.
//!
//! Each tagged pattern fixes the interval of every coordinate and, through
//! the line orders, part of the order of the representatives. Every
//! orientation then depends on at most one open comparison `u - f(w)`. The
//! decider branches over the open comparisons collected from the plane
//! orientations, forces the single comparison that can still save a pair,
//! and reports the first accepted order together with exact coordinates.

pub mod cache;

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::geometry::{GeometryError, TriangleConfig};
use crate::lifting::{base_graph, value_from_rep, LiftingError, Region, RepGraph};
use crate::model::{enumerate_taggings, TaggedPattern, Triple};
use crate::orientations::{
    associated_vertex, final_orientation, rename_guigue, separated_by_plane, sign_vector,
    FinalOrientation, PatternView, SignVector,
};

pub use cache::SubpatternCache;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("both final orientations of triangles {i} and {j} are undetermined")]
    BothPending { i: usize, j: usize },
    #[error("the orientations of triangles {i} and {j} are not determined by the candidate")]
    Undetermined { i: usize, j: usize },
    #[error(transparent)]
    Lifting(#[from] LiftingError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Exact coordinates of a canonical realization.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    /// The tagged pattern realized, after the reversals were applied.
    pub pattern: TaggedPattern,
    /// Bit `k` set when line `k` was reversed.
    pub reversals: u8,
    pub coords: TriangleConfig,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Realizable(Box<Certificate>),
    Unrealizable,
}

impl Verdict {
    pub fn is_realizable(&self) -> bool {
        matches!(self, Verdict::Realizable(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::Realizable(c) => Some(c),
            Verdict::Unrealizable => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DeciderOptions {
    /// Branch on the open comparisons one at a time and prune as soon as a
    /// pair is known to intersect. Finds the same certificate as the plain
    /// loop over all candidates.
    pub incremental: bool,
    /// Reject patterns containing a known forbidden pattern.
    pub cache: Option<Arc<SubpatternCache>>,
    /// Stop at the first realizable tagging.
    pub short_circuit: bool,
}

impl Default for DeciderOptions {
    fn default() -> Self {
        Self {
            incremental: false,
            cache: None,
            short_circuit: true,
        }
    }
}

impl DeciderOptions {
    pub fn incremental() -> Self {
        Self {
            incremental: true,
            ..Self::default()
        }
    }

    pub fn with_cache(cache: Arc<SubpatternCache>) -> Self {
        Self {
            incremental: true,
            cache: Some(cache),
            short_circuit: true,
        }
    }
}

#[derive(Clone, Copy, Default, PartialEq, Eq, Debug)]
pub struct SearchStats {
    /// Calls to the tagged decider.
    pub tagged_instances: u64,
    /// Complete candidate orders examined.
    pub candidates: u64,
    /// Instances rejected by the forbidden-subpattern cache.
    pub cache_hits: u64,
}

impl SearchStats {
    pub fn add(&mut self, other: &SearchStats) {
        self.tagged_instances += other.tagged_instances;
        self.candidates += other.candidates;
        self.cache_hits += other.cache_hits;
    }
}

struct Pair {
    i: usize,
    j: usize,
    sv: SignVector,
}

/// Per-pattern data shared by all candidates.
struct Instance {
    n: usize,
    view: PatternView,
    base: RepGraph,
    pairs: Vec<Pair>,
    unknowns: Vec<usize>,
}

impl Instance {
    fn new(p: &TaggedPattern) -> Result<Self, DecideError> {
        let n = p.len();
        let view = PatternView::new(p);
        let base = base_graph(p)?;
        let mut u = std::collections::BTreeSet::new();
        let mut pairs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                let sv = sign_vector(i, j, &view, &mut u);
                pairs.push(Pair { i, j, sv });
            }
        }
        Ok(Self {
            n,
            view,
            base,
            pairs,
            unknowns: u.into_iter().collect(),
        })
    }

    fn resolve(&self, pair: &Pair, g: &RepGraph) -> Option<[i8; 6]> {
        let mut out = [0i8; 6];
        for (k, e) in pair.sv.iter().enumerate() {
            out[k] = e.resolve(g, self.n)?;
        }
        Some(out)
    }

    /// Runs the disjointness tests on a complete candidate, adding the
    /// comparisons forced along the way. `true` if every pair passes.
    fn accept(&self, g: &mut RepGraph) -> Result<bool, DecideError> {
        for pair in &self.pairs {
            let (i, j) = (pair.i, pair.j);
            let sv = self
                .resolve(pair, g)
                .ok_or(DecideError::Undetermined { i, j })?;
            if separated_by_plane(&sv) {
                continue;
            }
            let r = rename_guigue(&sv, i, j, self.n).expect("halves are not constant");
            let o1 = final_orientation(r.first_test(), g, &self.view);
            let o2 = final_orientation(r.second_test(), g, &self.view);
            use FinalOrientation::{Determined, Pending};
            let forced = match (o1, o2) {
                (Pending { .. }, Pending { .. }) => return Err(DecideError::BothPending { i, j }),
                (Determined(1), _) | (_, Determined(1)) => continue,
                (Determined(_), Determined(_)) => return Ok(false),
                (Pending { sign, v, w }, _) | (_, Pending { sign, v, w }) => (sign, v, w),
            };
            let (sign, v, w) = forced;
            if sign == 1 {
                g.add_edge_closure(w, v)?;
            } else {
                g.add_edge_closure(v, w)?;
            }
        }
        Ok(true)
    }

    /// Whether some pair already has both final tests negative.
    fn doomed(&self, g: &RepGraph) -> bool {
        self.pairs.iter().any(|pair| {
            let Some(sv) = self.resolve(pair, g) else {
                return false;
            };
            if separated_by_plane(&sv) {
                return false;
            }
            let r = rename_guigue(&sv, pair.i, pair.j, self.n).expect("halves are not constant");
            final_orientation(r.first_test(), g, &self.view) == FinalOrientation::Determined(-1)
                && final_orientation(r.second_test(), g, &self.view)
                    == FinalOrientation::Determined(-1)
        })
    }

    fn candidate_edge(&self, b: usize, set: bool) -> (usize, usize) {
        let v = self.unknowns[b];
        let w = associated_vertex(v, self.n);
        if set {
            (v, w)
        } else {
            (w, v)
        }
    }

    /// All `2^|U|` candidates in increasing bitmask order; bit `b` set means
    /// `U[b] < f(associated(U[b]))`.
    fn search_all(&self, stats: &mut SearchStats) -> Result<Option<RepGraph>, DecideError> {
        let m = self.unknowns.len();
        let mut g = self.base.clone();
        for mask in 0u64..1 << m {
            stats.candidates += 1;
            g.copy_from(&self.base);
            for b in 0..m {
                let (v, w) = self.candidate_edge(b, mask >> b & 1 == 1);
                g.set_edge(v, w);
            }
            if !g.transitive_closure_acyclic() {
                continue;
            }
            if self.accept(&mut g)? {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }

    /// Same candidates and order as `search_all`, branching on the highest
    /// bit first.
    fn search_incremental(
        &self,
        g: &RepGraph,
        level: usize,
        stats: &mut SearchStats,
    ) -> Result<Option<RepGraph>, DecideError> {
        if level == 0 {
            stats.candidates += 1;
            let mut leaf = g.clone();
            return Ok(self.accept(&mut leaf)?.then_some(leaf));
        }
        let b = level - 1;
        for set in [false, true] {
            let (v, w) = self.candidate_edge(b, set);
            let mut child = g.clone();
            if child.add_edge_closure(v, w).is_err() {
                continue;
            }
            if self.doomed(&child) {
                continue;
            }
            if let Some(found) = self.search_incremental(&child, b, stats)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }
}

/// Coordinates from a linear extension of the accepted graph: the
/// representative of rank `k` receives `k + 2`.
pub fn extract_realization(g: &RepGraph, regions: &[Region]) -> Result<TriangleConfig, DecideError> {
    let order = g.topological_sort()?;
    let mut coords = vec![BigRational::zero(); order.len()];
    for (k, &v) in order.iter().enumerate() {
        coords[v] = value_from_rep(regions[v], k as i64 + 2);
    }
    Ok(TriangleConfig::from_coords(coords)?)
}

fn decide_tagged_inner(
    p: &TaggedPattern,
    opts: &DeciderOptions,
    stats: &mut SearchStats,
) -> Result<Option<TriangleConfig>, DecideError> {
    stats.tagged_instances += 1;
    if let Some(cache) = &opts.cache {
        if cache.contains_forbidden(p) {
            stats.cache_hits += 1;
            return Ok(None);
        }
    }
    let inst = Instance::new(p)?;
    let found = if opts.incremental {
        if inst.doomed(&inst.base) {
            None
        } else {
            inst.search_incremental(&inst.base, inst.unknowns.len(), stats)?
        }
    } else {
        inst.search_all(stats)?
    };
    match found {
        Some(g) => Ok(Some(extract_realization(&g, inst.view.regions())?)),
        None => Ok(None),
    }
}

/// Decides whether `p` has a canonical realization.
pub fn decide_tagged(p: &TaggedPattern) -> Result<Verdict, DecideError> {
    decide_tagged_with(p, &DeciderOptions::default(), &mut SearchStats::default())
}

pub fn decide_tagged_with(
    p: &TaggedPattern,
    opts: &DeciderOptions,
    stats: &mut SearchStats,
) -> Result<Verdict, DecideError> {
    Ok(match decide_tagged_inner(p, opts, stats)? {
        Some(coords) => Verdict::Realizable(Box::new(Certificate {
            pattern: p.clone(),
            reversals: 0,
            coords,
        })),
        None => Verdict::Unrealizable,
    })
}

fn decide_canonical_masked(
    t: &Triple,
    reversals: u8,
    opts: &DeciderOptions,
    stats: &mut SearchStats,
    first: &mut Option<Certificate>,
) -> Result<(), DecideError> {
    for p in enumerate_taggings(t) {
        if first.is_some() && opts.short_circuit {
            break;
        }
        if let Some(coords) = decide_tagged_inner(&p, opts, stats)? {
            if first.is_none() {
                *first = Some(Certificate {
                    pattern: p,
                    reversals,
                    coords,
                });
            }
        }
    }
    Ok(())
}

fn verdict_of(first: Option<Certificate>) -> Verdict {
    match first {
        Some(c) => Verdict::Realizable(Box::new(c)),
        None => Verdict::Unrealizable,
    }
}

/// Whether some tagging of `t` has a canonical realization; taggings are
/// tried in enumeration order.
pub fn decide_canonical(t: &Triple, opts: &DeciderOptions) -> Result<(Verdict, SearchStats), DecideError> {
    let mut stats = SearchStats::default();
    let mut first = None;
    decide_canonical_masked(t, 0, opts, &mut stats, &mut first)?;
    Ok((verdict_of(first), stats))
}

/// Whether `t` is a geometric permutation triple: some choice of reversals
/// and tags has a canonical realization. Reversal masks are tried in
/// increasing order.
pub fn decide_full(t: &Triple, opts: &DeciderOptions) -> Result<(Verdict, SearchStats), DecideError> {
    let mut stats = SearchStats::default();
    let mut first = None;
    for mask in 0u8..8 {
        if first.is_some() && opts.short_circuit {
            break;
        }
        let reversed = t.with_reversals(mask);
        decide_canonical_masked(&reversed, mask, opts, &mut stats, &mut first)?;
    }
    Ok((verdict_of(first), stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::verify_certificate;
    use crate::lifting::{regions_of, witness_from_order, LiftedOrder};

    fn tagged(s: &str) -> TaggedPattern {
        s.parse().unwrap()
    }

    #[test]
    fn forbidden_size_two() {
        let p = tagged("0 1 z o | z o 0 1 | z o 0 1");
        assert_eq!(decide_tagged(&p).unwrap(), Verdict::Unrealizable);
        let mut stats = SearchStats::default();
        let v = decide_tagged_with(&p, &DeciderOptions::incremental(), &mut stats).unwrap();
        assert_eq!(v, Verdict::Unrealizable);
    }

    #[test]
    fn single_triangle() {
        let p = tagged("z o 0 | z o 0 | z o 0");
        let v = decide_tagged(&p).unwrap();
        let c = v.certificate().unwrap();
        let vals: Vec<String> = (0..3)
            .map(|k| crate::geometry::format_rational(&c.coords.line(k)[0]))
            .collect();
        assert_eq!(vals, ["2", "3", "4"]);
    }

    #[test]
    fn stacked_pair_realizable() {
        let t: Triple = "01 01 01".parse().unwrap();
        let (v, _) = decide_canonical(&t, &DeciderOptions::default()).unwrap();
        let c = v.certificate().unwrap();
        assert!(verify_certificate(&c.pattern, &c.coords).unwrap());
    }

    #[test]
    fn extraction_matches_witness() {
        let p = tagged("0 z 1 o 2 | z 2 o 1 0 | 1 z 0 o 2");
        let regions = regions_of(&p);
        let g = base_graph(&p).unwrap();
        let direct = extract_realization(&g, &regions).unwrap();
        let order = g.topological_sort().unwrap();
        let lifted = LiftedOrder::from_reps(3, &order, &regions);
        let via = TriangleConfig::from_coords(witness_from_order(&lifted).unwrap()).unwrap();
        assert_eq!(direct, via);
    }

    #[test]
    fn theorem_two_triples() {
        for w in ["0123 3210 1032", "3210 0123 1032", "0123 3210 2301", "3210 0123 2301"] {
            let t: Triple = w.parse().unwrap();
            let (v, _) = decide_canonical(&t, &DeciderOptions::incremental()).unwrap();
            assert_eq!(v, Verdict::Unrealizable, "{w}");
        }
    }

    #[test]
    fn incremental_finds_same_certificate() {
        let t: Triple = "012 120 201".parse().unwrap();
        for p in enumerate_taggings(&t) {
            let a = decide_tagged(&p).unwrap();
            let mut s = SearchStats::default();
            let b = decide_tagged_with(&p, &DeciderOptions::incremental(), &mut s).unwrap();
            assert_eq!(a, b, "{p}");
        }
    }
}
