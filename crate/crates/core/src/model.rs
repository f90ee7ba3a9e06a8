//! Permutations, tagged permutations and patterns, and the symmetry
//! operations used to reduce the search space.
//!
//! Elements are `0..n`. A word lists the elements in the order in which an
//! oriented line meets them. Tags are stored as positions: `zero` is the
//! number of elements preceding `^0` and `one` the number preceding `^1`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Errors raised while building or parsing permutations and patterns.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("at token {position}: element {element} appears twice")]
    DuplicateElement { position: usize, element: usize },
    #[error("line {line}: element {element} is missing")]
    MissingElement { line: usize, element: usize },
    #[error("at token {position}: unexpected token {token:?}")]
    BadToken { position: usize, token: String },
    #[error("line {line}: tag o precedes tag z")]
    TagOrder { line: usize },
    #[error("line {line}: tag {tag} is repeated or missing")]
    TagCount { line: usize, tag: char },
    #[error("line {line}: size {found} differs from size {expected} of the first line")]
    SizeMismatch { line: usize, expected: usize, found: usize },
    #[error("expected three lines, found {0}")]
    LineCount(usize),
    #[error("tags must be given on all three lines or on none")]
    MixedTags,
    #[error("empty permutation")]
    Empty,
}

/// A permutation of `0..n`, written as the word of elements in line order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Permutation {
    word: Vec<usize>,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self, ParseError> {
        if word.is_empty() {
            return Err(ParseError::Empty);
        }
        let n = word.len();
        let mut seen = vec![false; n];
        for (position, &e) in word.iter().enumerate() {
            if e >= n {
                return Err(ParseError::BadToken {
                    position,
                    token: e.to_string(),
                });
            }
            if seen[e] {
                return Err(ParseError::DuplicateElement {
                    position,
                    element: e,
                });
            }
            seen[e] = true;
        }
        Ok(Self { word })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            word: (0..n).collect(),
        }
    }

    /// Permutation of lexicographic rank `rank` among all words of length `n`.
    pub fn from_rank(n: usize, mut rank: usize) -> Self {
        let mut pool: Vec<usize> = (0..n).collect();
        let mut word = Vec::with_capacity(n);
        let mut f = factorial(n);
        for k in (1..=n).rev() {
            f /= k;
            let d = rank / f;
            rank %= f;
            word.push(pool.remove(d));
        }
        Self { word }
    }

    pub fn rank(&self) -> usize {
        let n = self.len();
        let mut used = vec![false; n];
        let mut rank = 0;
        let mut f = factorial(n);
        for (k, &e) in self.word.iter().enumerate() {
            f /= n - k;
            let smaller = (0..e).filter(|&x| !used[x]).count();
            rank += smaller * f;
            used[e] = true;
        }
        rank
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Position of each element along the line.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.len()];
        for (pos, &e) in self.word.iter().enumerate() {
            inv[e] = pos;
        }
        inv
    }

    pub fn reverse(&self) -> Self {
        Self {
            word: self.word.iter().rev().copied().collect(),
        }
    }

    /// Applies the relabeling `e -> map[e]` to every element.
    pub fn relabel(&self, map: &[usize]) -> Self {
        Self {
            word: self.word.iter().map(|&e| map[e]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &e)| i == e)
    }

    /// Removes `element` and closes the gap in the labels.
    pub fn delete(&self, element: usize) -> Self {
        Self {
            word: self
                .word
                .iter()
                .filter(|&&e| e != element)
                .map(|&e| if e > element { e - 1 } else { e })
                .collect(),
        }
    }

    /// Digit word such as `"2031"`; only meaningful for `n <= 10`.
    pub fn digit_word(&self) -> String {
        self.word
            .iter()
            .map(|&e| char::from_digit(e as u32, 10).unwrap_or('?'))
            .collect()
    }

    pub fn parse_digits(text: &str) -> Result<Self, ParseError> {
        let word = text
            .chars()
            .enumerate()
            .map(|(position, c)| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or(ParseError::BadToken {
                        position,
                        token: c.to_string(),
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(word)
    }

    fn tokens(&self) -> String {
        let parts: Vec<String> = self.word.iter().map(|e| e.to_string()).collect();
        parts.join(" ")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 10 {
            f.write_str(&self.digit_word())
        } else {
            f.write_str(&self.tokens())
        }
    }
}

/// Mapping sending `first[k]` to `k`, so that `first` becomes the identity.
fn straightening_map(first: &Permutation) -> Vec<usize> {
    first.inverse()
}

pub(crate) fn factorial(n: usize) -> usize {
    (1..=n).product()
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// A permutation with the two marks `^0` and `^1` inserted.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TaggedPermutation {
    perm: Permutation,
    zero: usize,
    one: usize,
}

impl TaggedPermutation {
    pub fn new(perm: Permutation, zero: usize, one: usize) -> Result<Self, ParseError> {
        if zero > one || one > perm.len() {
            return Err(ParseError::TagOrder { line: 0 });
        }
        Ok(Self { perm, zero, one })
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn tags(&self) -> (usize, usize) {
        (self.zero, self.one)
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn reverse(&self) -> Self {
        let n = self.len();
        Self {
            perm: self.perm.reverse(),
            zero: n - self.one,
            one: n - self.zero,
        }
    }

    pub fn relabel(&self, map: &[usize]) -> Self {
        Self {
            perm: self.perm.relabel(map),
            zero: self.zero,
            one: self.one,
        }
    }

    /// Removes `element`; the marks keep their place relative to the others.
    pub fn delete(&self, element: usize) -> Self {
        let pos = self.perm.inverse()[element];
        let zero = if pos < self.zero { self.zero - 1 } else { self.zero };
        let one = if pos < self.one { self.one - 1 } else { self.one };
        Self {
            perm: self.perm.delete(element),
            zero,
            one,
        }
    }

    fn tokens(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.len() + 2);
        for pos in 0..=self.len() {
            if pos == self.zero {
                out.push("z".to_string());
            }
            if pos == self.one {
                out.push("o".to_string());
            }
            if pos < self.len() {
                out.push(self.perm.word[pos].to_string());
            }
        }
        out
    }
}

impl fmt::Display for TaggedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tokens().join(" "))
    }
}

/// Three tagged permutations, for the lines `x`, `y` and `z` in that order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TaggedPattern {
    lines: [TaggedPermutation; 3],
}

impl TaggedPattern {
    pub fn new(lines: [TaggedPermutation; 3]) -> Result<Self, ParseError> {
        let n = lines[0].len();
        for (line, l) in lines.iter().enumerate() {
            if l.len() != n {
                return Err(ParseError::SizeMismatch {
                    line,
                    expected: n,
                    found: l.len(),
                });
            }
        }
        Ok(Self { lines })
    }

    /// Builds a pattern from a triple and the `(zero, one)` positions per line.
    pub fn from_triple(t: &Triple, tags: [(usize, usize); 3]) -> Result<Self, ParseError> {
        let mut lines = Vec::with_capacity(3);
        for (line, (p, (z, o))) in t.perms().iter().zip(tags).enumerate() {
            lines.push(
                TaggedPermutation::new(p.clone(), z, o)
                    .map_err(|_| ParseError::TagOrder { line })?,
            );
        }
        let lines: [TaggedPermutation; 3] = lines.try_into().expect("three lines");
        Self::new(lines)
    }

    pub fn lines(&self) -> &[TaggedPermutation; 3] {
        &self.lines
    }

    pub fn line(&self, k: usize) -> &TaggedPermutation {
        &self.lines[k]
    }

    pub fn len(&self) -> usize {
        self.lines[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines[0].is_empty()
    }

    pub fn tags(&self) -> [(usize, usize); 3] {
        [self.lines[0].tags(), self.lines[1].tags(), self.lines[2].tags()]
    }

    pub fn untagged(&self) -> Triple {
        Triple {
            perms: [
                self.lines[0].perm.clone(),
                self.lines[1].perm.clone(),
                self.lines[2].perm.clone(),
            ],
        }
    }

    /// `(x, y, z) -> (y, z, x)`.
    pub fn rotate(&self) -> Self {
        Self {
            lines: [
                self.lines[1].clone(),
                self.lines[2].clone(),
                self.lines[0].clone(),
            ],
        }
    }

    pub fn relabel(&self, map: &[usize]) -> Self {
        Self {
            lines: [
                self.lines[0].relabel(map),
                self.lines[1].relabel(map),
                self.lines[2].relabel(map),
            ],
        }
    }

    pub fn delete(&self, element: usize) -> Self {
        Self {
            lines: [
                self.lines[0].delete(element),
                self.lines[1].delete(element),
                self.lines[2].delete(element),
            ],
        }
    }

    /// Relabels so that the `x` line reads `0 1 2 ...`.
    pub fn straighten(&self) -> Self {
        self.relabel(&straightening_map(&self.lines[0].perm))
    }

    fn sort_key(&self) -> ([&[usize]; 3], [(usize, usize); 3]) {
        (
            [
                self.lines[0].perm.word(),
                self.lines[1].perm.word(),
                self.lines[2].perm.word(),
            ],
            self.tags(),
        )
    }

    /// Smallest member of the class under relabeling and rotation of the lines.
    pub fn class_key(&self) -> TaggedPattern {
        let r1 = self.rotate();
        let r2 = r1.rotate();
        [self.straighten(), r1.straighten(), r2.straighten()]
            .into_iter()
            .min()
            .expect("three candidates")
    }

    pub fn is_class_key(&self) -> bool {
        self.class_key() == *self
    }
}

impl Ord for TaggedPattern {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for TaggedPattern {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TaggedPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} | {} | {}", self.lines[0], self.lines[1], self.lines[2])
    }
}

impl FromStr for TaggedPattern {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match parse_pattern(s)? {
            Parsed::Tagged(p) => Ok(p),
            Parsed::Triple(_) => Err(ParseError::TagCount { line: 0, tag: 'z' }),
        }
    }
}

/// Three permutations of equal size.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Triple {
    perms: [Permutation; 3],
}

impl Triple {
    pub fn new(perms: [Permutation; 3]) -> Result<Self, ParseError> {
        let n = perms[0].len();
        for (line, p) in perms.iter().enumerate() {
            if p.len() != n {
                return Err(ParseError::SizeMismatch {
                    line,
                    expected: n,
                    found: p.len(),
                });
            }
        }
        Ok(Self { perms })
    }

    pub fn from_words(words: [&str; 3]) -> Result<Self, ParseError> {
        Self::new([
            Permutation::parse_digits(words[0])?,
            Permutation::parse_digits(words[1])?,
            Permutation::parse_digits(words[2])?,
        ])
    }

    pub fn perms(&self) -> &[Permutation; 3] {
        &self.perms
    }

    pub fn len(&self) -> usize {
        self.perms[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms[0].is_empty()
    }

    /// Reverses line `k` whenever bit `k` of `mask` is set.
    pub fn with_reversals(&self, mask: u8) -> Self {
        let pick = |k: usize| {
            if mask >> k & 1 == 1 {
                self.perms[k].reverse()
            } else {
                self.perms[k].clone()
            }
        };
        Self {
            perms: [pick(0), pick(1), pick(2)],
        }
    }

    pub fn rotate(&self) -> Self {
        Self {
            perms: [
                self.perms[1].clone(),
                self.perms[2].clone(),
                self.perms[0].clone(),
            ],
        }
    }

    pub fn relabel(&self, map: &[usize]) -> Self {
        Self {
            perms: [
                self.perms[0].relabel(map),
                self.perms[1].relabel(map),
                self.perms[2].relabel(map),
            ],
        }
    }

    /// Canonical representative under relabeling, reversal of any line and
    /// reordering of the lines.
    ///
    /// Each of the six choices of first line (a line or its reverse) is made
    /// the identity; the second line is the smallest of the remaining two
    /// lines and their reverses, the third is the smaller orientation of the
    /// last line. The result is the smallest of the six triples.
    pub fn normalize(&self) -> Triple {
        let n = self.len();
        let mut best: Option<(Permutation, Permutation)> = None;
        for k in 0..3 {
            let rest = [self.perms[(k + 1) % 3].clone(), self.perms[(k + 2) % 3].clone()];
            for first in [self.perms[k].clone(), self.perms[k].reverse()] {
                let map = straightening_map(&first);
                let relabeled: Vec<[Permutation; 2]> = rest
                    .iter()
                    .map(|p| {
                        let q = p.relabel(&map);
                        let r = q.reverse();
                        if q <= r {
                            [q, r]
                        } else {
                            [r, q]
                        }
                    })
                    .collect();
                for m in 0..2 {
                    for second in &relabeled[m] {
                        let third = &relabeled[1 - m][0];
                        let cand = (second, third);
                        if best
                            .as_ref()
                            .is_none_or(|(b2, b3)| cand < (b2, b3))
                        {
                            best = Some((second.clone(), third.clone()));
                        }
                    }
                }
            }
        }
        let (second, third) = best.expect("six candidates");
        Triple {
            perms: [Permutation::identity(n), second, third],
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.normalize() == *self
    }

    /// Digit words joined by spaces, e.g. `"012 210 120"`.
    pub fn words(&self) -> [String; 3] {
        [
            self.perms[0].to_string(),
            self.perms[1].to_string(),
            self.perms[2].to_string(),
        ]
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 10 {
            let [a, b, c] = self.words();
            write!(f, "{a} {b} {c}")
        } else {
            write!(
                f,
                "{} | {} | {}",
                self.perms[0].tokens(),
                self.perms[1].tokens(),
                self.perms[2].tokens()
            )
        }
    }
}

impl FromStr for Triple {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match parse_pattern(s)? {
            Parsed::Triple(t) => Ok(t),
            Parsed::Tagged(_) => Err(ParseError::MixedTags),
        }
    }
}

/// Result of [`parse_pattern`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Parsed {
    Tagged(TaggedPattern),
    Triple(Triple),
}

/// Parses either `"0 1 z o | z o 0 1 | z 0 1 o"` (tokens, tags optional) or
/// three digit words such as `"012 210 120"`.
pub fn parse_pattern(text: &str) -> Result<Parsed, ParseError> {
    let text = text.trim();
    if !text.contains('|') {
        let words: Vec<&str> = text.split_whitespace().collect();
        if words.len() != 3 {
            return Err(ParseError::LineCount(words.len()));
        }
        let mut perms = Vec::with_capacity(3);
        let mut offset = 0;
        for w in &words {
            perms.push(Permutation::parse_digits(w).map_err(|e| shift_position(e, offset))?);
            offset += w.len();
        }
        let perms: [Permutation; 3] = perms.try_into().expect("three words");
        return Triple::new(perms).map(Parsed::Triple);
    }

    let raw_lines: Vec<&str> = text.split('|').collect();
    if raw_lines.len() != 3 {
        return Err(ParseError::LineCount(raw_lines.len()));
    }
    let mut offset = 0;
    let mut lines = Vec::with_capacity(3);
    for (line, raw) in raw_lines.iter().enumerate() {
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        lines.push(parse_line(line, &tokens, offset)?);
        offset += tokens.len();
    }
    let n = lines[0].0.len();
    for (line, (p, _)) in lines.iter().enumerate() {
        if p.len() != n {
            return Err(ParseError::SizeMismatch {
                line,
                expected: n,
                found: p.len(),
            });
        }
    }
    let tagged = lines.iter().filter(|(_, t)| t.is_some()).count();
    match tagged {
        0 => {
            let perms: Vec<Permutation> = lines.into_iter().map(|(p, _)| p).collect();
            Ok(Parsed::Triple(Triple {
                perms: perms.try_into().expect("three lines"),
            }))
        }
        3 => {
            let tls: Vec<TaggedPermutation> = lines
                .into_iter()
                .map(|(perm, t)| {
                    let (zero, one) = t.expect("tagged");
                    TaggedPermutation { perm, zero, one }
                })
                .collect();
            Ok(Parsed::Tagged(TaggedPattern {
                lines: tls.try_into().expect("three lines"),
            }))
        }
        _ => Err(ParseError::MixedTags),
    }
}

fn shift_position(e: ParseError, offset: usize) -> ParseError {
    match e {
        ParseError::DuplicateElement { position, element } => ParseError::DuplicateElement {
            position: position + offset,
            element,
        },
        ParseError::BadToken { position, token } => ParseError::BadToken {
            position: position + offset,
            token,
        },
        other => other,
    }
}

type ParsedLine = (Permutation, Option<(usize, usize)>);

fn parse_line(line: usize, tokens: &[&str], offset: usize) -> Result<ParsedLine, ParseError> {
    let mut word = Vec::new();
    let mut zero = None;
    let mut one = None;
    for (k, tok) in tokens.iter().enumerate() {
        let position = offset + k;
        match *tok {
            "z" => {
                if zero.is_some() {
                    return Err(ParseError::TagCount { line, tag: 'z' });
                }
                if one.is_some() {
                    return Err(ParseError::TagOrder { line });
                }
                zero = Some(word.len());
            }
            "o" => {
                if one.is_some() {
                    return Err(ParseError::TagCount { line, tag: 'o' });
                }
                if zero.is_none() {
                    return Err(ParseError::TagOrder { line });
                }
                one = Some(word.len());
            }
            t => {
                let e: usize = t.parse().map_err(|_| ParseError::BadToken {
                    position,
                    token: t.to_string(),
                })?;
                if word.contains(&e) {
                    return Err(ParseError::DuplicateElement {
                        position,
                        element: e,
                    });
                }
                word.push(e);
            }
        }
    }
    if word.is_empty() {
        return Err(ParseError::Empty);
    }
    let n = word.len();
    if let Some(&bad) = word.iter().find(|&&e| e >= n) {
        let missing = (0..n).find(|e| !word.contains(e)).unwrap_or(bad);
        return Err(ParseError::MissingElement {
            line,
            element: missing,
        });
    }
    let tags = match (zero, one) {
        (None, None) => None,
        (Some(z), Some(o)) => Some((z, o)),
        (Some(_), None) => return Err(ParseError::TagCount { line, tag: 'o' }),
        (None, Some(_)) => return Err(ParseError::TagCount { line, tag: 'z' }),
    };
    Ok((Permutation { word }, tags))
}

/// Number of `(zero, one)` placements on a line with `n` elements.
pub fn tag_placements(n: usize) -> usize {
    binomial(n + 2, 2)
}

/// The `(zero, one)` placement of lexicographic index `k` on a line of size `n`.
pub fn tag_at(n: usize, mut k: usize) -> (usize, usize) {
    for z in 0..=n {
        let width = n + 1 - z;
        if k < width {
            return (z, z + k);
        }
        k -= width;
    }
    panic!("tag index out of range")
}

/// All tagged patterns over a triple, in deterministic order: `(zero, one)`
/// lexicographic per line, the `x` line varying slowest.
#[derive(Clone, Debug)]
pub struct Taggings {
    triple: Triple,
    next: usize,
    total: usize,
}

impl Taggings {
    pub fn new(triple: &Triple) -> Self {
        Self::starting_at(triple, 0)
    }

    /// Resumes the stream at tagging number `index`.
    pub fn starting_at(triple: &Triple, index: usize) -> Self {
        let per_line = tag_placements(triple.len());
        Self {
            triple: triple.clone(),
            next: index,
            total: per_line * per_line * per_line,
        }
    }

    pub fn position(&self) -> usize {
        self.next
    }

    pub fn tags_at(&self, index: usize) -> [(usize, usize); 3] {
        let n = self.triple.len();
        let per_line = tag_placements(n);
        [
            tag_at(n, index / (per_line * per_line)),
            tag_at(n, index / per_line % per_line),
            tag_at(n, index % per_line),
        ]
    }
}

impl Iterator for Taggings {
    type Item = TaggedPattern;

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.total {
            return None;
        }
        let tags = self.tags_at(self.next);
        self.next += 1;
        Some(TaggedPattern::from_triple(&self.triple, tags).expect("valid placements"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.total.saturating_sub(self.next);
        (left, Some(left))
    }
}

impl ExactSizeIterator for Taggings {}

pub fn enumerate_taggings(t: &Triple) -> Taggings {
    Taggings::new(t)
}

/// Normalized triples of size `n` in lexicographic order.
///
/// The stream walks all `(second, third)` word pairs by rank with the first
/// line fixed to the identity, keeping the fixed points of normalization.
#[derive(Clone, Debug)]
pub struct NormalizedTriples {
    n: usize,
    next: usize,
    total: usize,
}

impl NormalizedTriples {
    pub fn new(n: usize) -> Self {
        Self::starting_at(n, 0)
    }

    /// Resumes at pair index `index` (`second_rank * n! + third_rank`).
    pub fn starting_at(n: usize, index: usize) -> Self {
        let f = factorial(n);
        Self {
            n,
            next: index,
            total: f * f,
        }
    }

    pub fn position(&self) -> usize {
        self.next
    }
}

impl Iterator for NormalizedTriples {
    type Item = Triple;

    fn next(&mut self) -> Option<Self::Item> {
        let f = factorial(self.n);
        while self.next < self.total {
            let idx = self.next;
            self.next += 1;
            let second = Permutation::from_rank(self.n, idx / f);
            let third = Permutation::from_rank(self.n, idx % f);
            if third < second {
                continue;
            }
            let t = Triple {
                perms: [Permutation::identity(self.n), second, third],
            };
            if t.is_normalized() {
                return Some(t);
            }
        }
        None
    }
}

pub fn enumerate_normalized_triples(n: usize) -> NormalizedTriples {
    NormalizedTriples::new(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tagged(s: &str) -> TaggedPattern {
        s.parse().unwrap()
    }

    #[test]
    fn parses_tagged_tokens() {
        let p = tagged("0 1 z o | z o 0 1 | z 0 1 o");
        assert_eq!(p.len(), 2);
        assert_eq!(p.tags(), [(2, 2), (0, 0), (0, 2)]);
        assert_eq!(p.to_string(), "0 1 z o | z o 0 1 | z 0 1 o");
    }

    #[test]
    fn parses_digit_words() {
        match parse_pattern("012 210 120").unwrap() {
            Parsed::Triple(t) => {
                assert_eq!(t.len(), 3);
                assert_eq!(t.to_string(), "012 210 120");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn untagged_tokens_give_a_triple() {
        let t: Triple = "0 1 | 1 0 | 0 1".parse().unwrap();
        assert_eq!(t, Triple::from_words(["01", "10", "01"]).unwrap());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_pattern("0 0 z o | z o 0 1 | z o 0 1"),
            Err(ParseError::DuplicateElement {
                position: 1,
                element: 0
            })
        ));
        assert!(matches!(
            parse_pattern("0 1 o z | z o 0 1 | z o 0 1"),
            Err(ParseError::TagOrder { line: 0 })
        ));
        assert!(matches!(
            parse_pattern("0 2 z o | z o 0 1 | z o 0 1"),
            Err(ParseError::MissingElement { line: 0, element: 1 })
        ));
        assert!(matches!(
            parse_pattern("0 1 z o | z o 0 1 2 | z o 0 1"),
            Err(ParseError::SizeMismatch { line: 1, .. })
        ));
        assert!(matches!(
            parse_pattern("0 1 z o | 0 1 | z o 0 1"),
            Err(ParseError::MixedTags)
        ));
        assert!(matches!(
            parse_pattern("0 1 z | z o 0 1 | z o 0 1"),
            Err(ParseError::TagCount { line: 0, tag: 'o' })
        ));
        assert!(parse_pattern("012 210").is_err());
        assert!(parse_pattern("012 2a0 120").is_err());
    }

    #[test]
    fn reverse_permutations() {
        let p = Permutation::parse_digits("012").unwrap();
        assert_eq!(p.reverse().digit_word(), "210");
        assert_eq!(p.reverse().reverse(), p);

        let t = tagged("0 1 z o | 0 1 z o | 0 1 z o");
        let r = t.line(0).reverse();
        assert_eq!(r.to_string(), "z o 1 0");
        assert_eq!(r.tags(), (0, 0));
        let m = tagged("z 0 1 o | 0 1 z o | 0 1 z o").line(0).reverse();
        assert_eq!(m.to_string(), "z 1 0 o");
    }

    #[test]
    fn ranks_round_trip() {
        for n in 1..=5 {
            for r in 0..factorial(n) {
                assert_eq!(Permutation::from_rank(n, r).rank(), r);
            }
        }
        assert_eq!(Permutation::from_rank(3, 0).digit_word(), "012");
        assert_eq!(Permutation::from_rank(3, 5).digit_word(), "210");
    }

    #[test]
    fn normalize_examples() {
        let id = Triple::from_words(["0123", "0123", "0123"]).unwrap();
        assert_eq!(id.normalize(), id);

        let t = Triple::from_words(["012345", "210543", "135024"]).unwrap();
        let nt = t.normalize();
        assert!(nt.perms()[0].is_identity());
        assert_eq!(nt.words()[1], "135024");
        assert_eq!(nt.words()[2], "210543");
    }

    #[test]
    fn tag_counts() {
        assert_eq!(tag_placements(1), 3);
        assert_eq!(tag_placements(2), 6);
        assert_eq!(tag_placements(5), 21);
        let t = Triple::from_words(["01", "10", "01"]).unwrap();
        let all: Vec<_> = enumerate_taggings(&t).collect();
        assert_eq!(all.len(), 216);
        let uniq: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(uniq.len(), 216);
        assert_eq!(all[0].tags(), [(0, 0); 3]);
        assert_eq!(all[1].tags(), [(0, 0), (0, 0), (0, 1)]);
        assert_eq!(all[215].tags(), [(2, 2); 3]);
        let resumed: Vec<_> = Taggings::starting_at(&t, 100).collect();
        assert_eq!(resumed, all[100..].to_vec());
    }

    #[test]
    fn small_normalized_streams() {
        let one: Vec<_> = enumerate_normalized_triples(1).collect();
        assert_eq!(one.len(), 1);
        let two: Vec<_> = enumerate_normalized_triples(2).collect();
        assert_eq!(two, vec![Triple::from_words(["01", "01", "01"]).unwrap()]);
        let three: Vec<_> = enumerate_normalized_triples(3).collect();
        assert_eq!(three.len(), 3);
        assert!(three.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn deletion_keeps_tags_in_place() {
        let p = tagged("0 z 1 o 2 | z 2 1 0 o | 2 z o 1 0");
        let d = p.delete(1);
        assert_eq!(d.to_string(), "0 z o 1 | z 1 0 o | 1 z o 0");
    }

    #[test]
    fn class_key_is_rotation_and_relabel_invariant() {
        let p = tagged("0 z 1 o 2 | z 2 1 0 o | 2 z o 1 0");
        let k = p.class_key();
        assert_eq!(p.rotate().class_key(), k);
        assert_eq!(p.rotate().rotate().class_key(), k);
        assert_eq!(p.relabel(&[2, 0, 1]).class_key(), k);
        assert!(k.is_class_key());
        assert!(k.line(0).perm().is_identity());
    }
}
