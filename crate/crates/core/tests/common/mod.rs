#![allow(dead_code)]

//! Expansion of the compressed notation for families of tagged patterns.
//!
//! A family constrains each line by subsequences: letters `a b c d` are
//! elements `0 1 2 3`, `0` and `1` stand for the tags, and symbols not
//! listed may sit anywhere. `{uv}` means `uv` or `vu`.

use std::collections::BTreeSet;

use geoperm::model::{enumerate_taggings, tag_at, tag_placements, Permutation, TaggedPattern, TaggedPermutation, Triple};

/// Line of a pattern as a string over `a..` and `0`, `1`.
pub fn line_string(p: &TaggedPattern, line: usize) -> String {
    let l = p.line(line);
    let word = l.perm().word();
    let mut s = String::new();
    for pos in 0..=word.len() {
        if pos == l.zero() {
            s.push('0');
        }
        if pos == l.one() {
            s.push('1');
        }
        if pos < word.len() {
            s.push((b'a' + word[pos] as u8) as char);
        }
    }
    s
}

fn is_subsequence(needle: &str, hay: &str) -> bool {
    let mut it = hay.chars();
    needle.chars().all(|c| it.any(|h| h == c))
}

/// Expands `{...}` groups; a group of two blocks `{u|v}` or of two symbols
/// `{uv}` gives `uv` and `vu`.
pub fn alternatives(spec: &str) -> Vec<String> {
    let Some(open) = spec.find('{') else {
        return vec![spec.to_string()];
    };
    let close = open + spec[open..].find('}').unwrap();
    let inner = &spec[open + 1..close];
    let (u, v) = match inner.split_once('|') {
        Some((u, v)) => (u.to_string(), v.to_string()),
        None if inner.chars().count() == 2 => {
            let mut c = inner.chars();
            (c.next().unwrap().to_string(), c.next().unwrap().to_string())
        }
        None => {
            let mut out = Vec::new();
            for mid in permutations(inner) {
                let head = format!("{}{}", &spec[..open], mid);
                for tail in alternatives(&spec[close + 1..]) {
                    out.push(format!("{head}{tail}"));
                }
            }
            return out;
        }
    };
    let mut out = Vec::new();
    for mid in [format!("{u}{v}"), format!("{v}{u}")] {
        let head = format!("{}{}", &spec[..open], mid);
        for tail in alternatives(&spec[close + 1..]) {
            out.push(format!("{head}{tail}"));
        }
    }
    out
}

/// All orders of the characters of `s`.
fn permutations(s: &str) -> Vec<String> {
    if s.is_empty() {
        return vec![String::new()];
    }
    let mut out = Vec::new();
    for (k, c) in s.char_indices() {
        let rest = format!("{}{}", &s[..k], &s[k + c.len_utf8()..]);
        for tail in permutations(&rest) {
            out.push(format!("{c}{tail}"));
        }
    }
    out
}

/// `position`-th symbol (1-based) of `line`, counting tags or not.
pub fn symbol_at(s: &str, position: usize, count_tags: bool) -> Option<char> {
    s.chars()
        .filter(|c| count_tags || c.is_ascii_alphabetic())
        .nth(position - 1)
}

/// Equality constraint `line_a[pos_a] = line_b[pos_b]`.
#[derive(Clone, Copy)]
pub struct Equal {
    pub line_a: usize,
    pub pos_a: usize,
    pub line_b: usize,
    pub pos_b: usize,
}

pub struct Family {
    pub lines: [&'static str; 3],
    pub equal: Option<Equal>,
}

impl Family {
    pub fn matches(&self, p: &TaggedPattern, count_tags: bool) -> bool {
        let strings: Vec<String> = (0..3).map(|k| line_string(p, k)).collect();
        for (k, spec) in self.lines.iter().enumerate() {
            if !alternatives(spec).iter().any(|alt| is_subsequence(alt, &strings[k])) {
                return false;
            }
        }
        if let Some(e) = self.equal {
            let a = symbol_at(&strings[e.line_a], e.pos_a, count_tags);
            let b = symbol_at(&strings[e.line_b], e.pos_b, count_tags);
            if a.is_none() || a != b {
                return false;
            }
        }
        true
    }
}

/// All tagged patterns of size `k` on elements `0..k`.
pub fn all_patterns(k: usize) -> Vec<TaggedPattern> {
    let perms: Vec<Permutation> = (0..(1..=k).product()).map(|r| Permutation::from_rank(k, r)).collect();
    let t = tag_placements(k);
    let lines: Vec<TaggedPermutation> = perms
        .iter()
        .flat_map(|p| {
            (0..t).map(move |i| {
                let (z, o) = tag_at(k, i);
                TaggedPermutation::new(p.clone(), z, o).unwrap()
            })
        })
        .collect();
    let mut out = Vec::with_capacity(lines.len().pow(3));
    for a in &lines {
        for b in &lines {
            for c in &lines {
                out.push(TaggedPattern::new([a.clone(), b.clone(), c.clone()]).unwrap());
            }
        }
    }
    out
}

/// Class keys of the members of the families among `candidates`.
pub fn expand(families: &[Family], candidates: &[TaggedPattern], count_tags: bool) -> BTreeSet<TaggedPattern> {
    candidates
        .iter()
        .filter(|p| families.iter().any(|f| f.matches(p, count_tags)))
        .map(|p| p.class_key())
        .collect()
}

/// Taggings of a triple written with letters.
pub fn taggings_of(words: [&str; 3]) -> Vec<TaggedPattern> {
    let digits: Vec<String> = words
        .iter()
        .map(|w| w.chars().map(|c| (b'0' + (c as u8 - b'a')) as char).collect())
        .collect();
    let t: Triple = format!("{} {} {}", digits[0], digits[1], digits[2]).parse().unwrap();
    enumerate_taggings(&t).collect()
}

pub fn size_two_families() -> Vec<Family> {
    let f = |a, b, c| Family {
        lines: [a, b, c],
        equal: None,
    };
    vec![
        f("ab0", "1ab", "ab"),
        f("0ab", "ab1", "ba"),
        f("ab0", "ba1", "ab"),
        f("0ab", "1ba", "ba"),
    ]
}

pub fn size_three_families() -> Vec<Family> {
    let eq = |line_b, pos_b| {
        Some(Equal {
            line_a: 2,
            pos_a: 2,
            line_b,
            pos_b,
        })
    };
    vec![
        Family { lines: ["{ab}0", "{ab}c0", ""], equal: eq(1, 1) },
        Family { lines: ["{ab}c0", "1{ab}", ""], equal: eq(0, 1) },
        Family { lines: ["{ab}0", "1c{ab}", ""], equal: eq(1, 3) },
        Family { lines: ["1c{ab}", "1{ab}", ""], equal: eq(0, 3) },
        Family { lines: ["abc0", "b1ac", "ca0b"], equal: None },
        Family { lines: ["1abc", "b1ca", "ac0b"], equal: None },
    ]
}

/// Size-4 families: taggings of a triple containing given subsequences.
/// `group` is how `{0ba}{1dc}` is read.
pub fn size_four_classes(group: &'static str) -> BTreeSet<TaggedPattern> {
    let f = |a, b, c| Family {
        lines: [a, b, c],
        equal: None,
    };
    let first = [f("0b1", "1d", "a0"), f("b0c", "1a", "a0")];
    let second = [f("b0c", "0d1", "1c"), Family { lines: ["c0", group, "1c"], equal: None }];
    let mut out = expand(&first, &taggings_of(["abcd", "badc", "cdab"]), true);
    out.extend(expand(&second, &taggings_of(["abcd", "badc", "dcba"]), true));
    out
}
