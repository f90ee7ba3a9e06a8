//! Minimal forbidden tagged patterns: no canonical realization, while every
//! deletion of one element has one.

use crate::decider::{DecideError, SubpatternCache};
use crate::model::TaggedPattern;

/// Class keys of the minimal forbidden patterns of each size `1..=max_n`,
/// sorted; entry `k - 1` lists size `k`.
pub fn mine_minimal_forbidden(max_n: usize) -> Result<Vec<Vec<TaggedPattern>>, DecideError> {
    let (_, minimal) = SubpatternCache::build(max_n)?;
    Ok(minimal
        .into_iter()
        .skip(1)
        .map(|found| {
            let mut keys: Vec<TaggedPattern> = found.iter().map(|p| p.class_key()).collect();
            keys.sort();
            keys.dedup();
            keys
        })
        .collect())
}
