//! Verdict tables for all small tagged patterns whose `x` line is the
//! identity. A pattern containing a forbidden pattern is forbidden, since
//! removing triangles from a realization leaves a realization.

use rayon::prelude::*;

use super::{decide_tagged_inner, DecideError, DeciderOptions, SearchStats};
use crate::model::{tag_at, tag_placements, Permutation, TaggedPattern, TaggedPermutation};

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn tag_index(n: usize, (z, o): (usize, usize)) -> usize {
    (0..z).map(|k| n + 1 - k).sum::<usize>() + (o - z)
}

/// Number of tagged patterns of size `k` with the `x` line straight.
pub fn straight_count(k: usize) -> usize {
    let f = factorial(k);
    let t = tag_placements(k);
    f * f * t * t * t
}

/// Index of a pattern whose `x` line is the identity:
/// `((rank_y * k! + rank_z) * T + tags_x) * T² + tags_y * T + tags_z`.
pub fn straight_index(p: &TaggedPattern) -> usize {
    debug_assert!(p.line(0).perm().is_identity());
    let k = p.len();
    let t = tag_placements(k);
    let mut idx = p.line(1).perm().rank() * factorial(k) + p.line(2).perm().rank();
    for line in p.lines() {
        idx = idx * t + tag_index(k, line.tags());
    }
    idx
}

pub fn straight_pattern(k: usize, mut idx: usize) -> TaggedPattern {
    let t = tag_placements(k);
    let mut tags = [(0, 0); 3];
    for slot in tags.iter_mut().rev() {
        *slot = tag_at(k, idx % t);
        idx /= t;
    }
    let f = factorial(k);
    let perms = [
        Permutation::identity(k),
        Permutation::from_rank(k, idx / f),
        Permutation::from_rank(k, idx % f),
    ];
    let lines = perms
        .into_iter()
        .zip(tags)
        .map(|(p, (z, o))| TaggedPermutation::new(p, z, o).expect("valid tags"))
        .collect::<Vec<_>>();
    TaggedPattern::new(lines.try_into().expect("three lines")).expect("same size")
}

/// Lexicographic rank of a sequence of distinct small integers `0..k`.
fn lehmer_rank(seq: &[u8]) -> usize {
    let k = seq.len();
    let mut rank = 0;
    for i in 0..k {
        let smaller = seq[i + 1..].iter().filter(|&&e| e < seq[i]).count();
        rank = rank * (k - i) + smaller;
    }
    rank
}

#[derive(Clone, Debug)]
pub struct SubpatternCache {
    /// `tables[k]` holds one bit per straight pattern of size `k`.
    tables: Vec<Vec<u64>>,
}

/// Forbidden patterns of size `k` whose deletions are all realizable,
/// straight form, in index order.
pub type MinimalLists = Vec<Vec<TaggedPattern>>;

impl SubpatternCache {
    pub fn max_size(&self) -> usize {
        self.tables.len() - 1
    }

    pub fn is_forbidden_straight(&self, k: usize, idx: usize) -> bool {
        self.tables[k][idx / 64] >> (idx % 64) & 1 == 1
    }

    /// Decides every straight pattern up to size `max_k`. A pattern with a
    /// forbidden deletion is forbidden without search; the others go through
    /// the decider.
    pub fn build(max_k: usize) -> Result<(Self, MinimalLists), DecideError> {
        let mut cache = SubpatternCache {
            tables: vec![Vec::new()],
        };
        let mut minimal = vec![Vec::new()];
        let opts = DeciderOptions::incremental();
        for k in 1..=max_k {
            let count = straight_count(k);
            let status: Vec<u8> = (0..count)
                .into_par_iter()
                .map(|idx| -> Result<u8, DecideError> {
                    let p = straight_pattern(k, idx);
                    if k > 1 {
                        for e in 0..k {
                            let d = p.delete(e);
                            if cache.is_forbidden_straight(k - 1, straight_index(&d)) {
                                return Ok(1);
                            }
                        }
                    }
                    let mut stats = SearchStats::default();
                    Ok(match decide_tagged_inner(&p, &opts, &mut stats)? {
                        Some(_) => 0,
                        None => 2,
                    })
                })
                .collect::<Result<_, _>>()?;
            let mut bits = vec![0u64; count.div_ceil(64)];
            let mut found = Vec::new();
            for (idx, &s) in status.iter().enumerate() {
                if s != 0 {
                    bits[idx / 64] |= 1 << (idx % 64);
                }
                if s == 2 {
                    found.push(straight_pattern(k, idx));
                }
            }
            cache.tables.push(bits);
            minimal.push(found);
        }
        Ok((cache, minimal))
    }

    /// Whether `p` contains a forbidden pattern of a tabulated size; for
    /// `p` small enough this is the verdict itself.
    pub fn contains_forbidden(&self, p: &TaggedPattern) -> bool {
        let n = p.len();
        let k = self.max_size();
        if k == 0 {
            return false;
        }
        let s = p.straighten();
        if n <= k {
            return self.is_forbidden_straight(n, straight_index(&s));
        }
        let words: Vec<Vec<u8>> = s
            .lines()
            .iter()
            .map(|l| l.perm().word().iter().map(|&e| e as u8).collect())
            .collect();
        let tags = s.tags();
        let t = tag_placements(k);
        let fk = factorial(k);
        let mut seq = [0u8; 64];
        let mut map = [0u8; 64];
        let mut subset: u64 = (1 << k) - 1;
        let limit: u64 = 1 << n;
        while subset < limit {
            let mut r = 0u8;
            for (e, slot) in map.iter_mut().enumerate().take(n) {
                if subset >> e & 1 == 1 {
                    *slot = r;
                    r += 1;
                }
            }
            let mut idx = 0;
            for w in &words[1..] {
                let mut len = 0;
                for &e in w {
                    if subset >> e & 1 == 1 {
                        seq[len] = map[e as usize];
                        len += 1;
                    }
                }
                idx = idx * fk + lehmer_rank(&seq[..len]);
            }
            for (line, w) in words.iter().enumerate() {
                let (z, o) = tags[line];
                let inside = |upto: usize| w[..upto].iter().filter(|&&e| subset >> e & 1 == 1).count();
                idx = idx * t + tag_index(k, (inside(z), inside(o)));
            }
            if self.is_forbidden_straight(k, idx) {
                return true;
            }
            // next subset of the same size
            let c = subset & subset.wrapping_neg();
            let r = subset + c;
            subset = (((r ^ subset) >> 2) / c) | r;
        }
        false
    }
}
