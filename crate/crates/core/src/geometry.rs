//! Exact rational geometry on the canonical lines
//! `ℓx = (t, 1, 0)`, `ℓy = (0, t, 1)`, `ℓz = (1, 0, t)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::lifting::{regions_of, witness_from_order, LiftedOrder, Region};
use crate::model::TaggedPattern;
use crate::orientations::{rename_guigue, separated_by_plane};

pub type Rational = BigRational;
pub type Point3 = [Rational; 3];
pub type Triangle = [Point3; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("degenerate configuration: an orientation vanishes")]
    Degenerate,
    #[error("malformed rational {0:?}")]
    BadRational(String),
    #[error("line {line} has {found} coordinates, expected {expected}")]
    SizeMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("the brute-force oracle is limited to size 3, got {0}")]
    OracleTooLarge(usize),
}

pub fn parse_rational(text: &str) -> Result<Rational, GeometryError> {
    let bad = || GeometryError::BadRational(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p, q),
        None => (text, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// `"p/q"`, or `"p"` for integers.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// One coordinate per triangle on each canonical line.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TriangleConfig {
    lines: [Vec<Rational>; 3],
}

impl TriangleConfig {
    pub fn new(x: Vec<Rational>, y: Vec<Rational>, z: Vec<Rational>) -> Result<Self, GeometryError> {
        let n = x.len();
        for (line, v) in [&y, &z].into_iter().enumerate() {
            if v.len() != n {
                return Err(GeometryError::SizeMismatch {
                    line: line + 1,
                    expected: n,
                    found: v.len(),
                });
            }
        }
        Ok(Self { lines: [x, y, z] })
    }

    /// From `3n` values indexed by vertex (`line * n + element`).
    pub fn from_coords(coords: Vec<Rational>) -> Result<Self, GeometryError> {
        if !coords.len().is_multiple_of(3) {
            return Err(GeometryError::SizeMismatch {
                line: 2,
                expected: coords.len() / 3 + 1,
                found: coords.len() % 3,
            });
        }
        let n = coords.len() / 3;
        let mut it = coords.into_iter();
        let x: Vec<_> = it.by_ref().take(n).collect();
        let y: Vec<_> = it.by_ref().take(n).collect();
        let z: Vec<_> = it.collect();
        Self::new(x, y, z)
    }

    pub fn len(&self) -> usize {
        self.lines[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines[0].is_empty()
    }

    pub fn line(&self, k: usize) -> &[Rational] {
        &self.lines[k]
    }

    pub fn lines(&self) -> &[Vec<Rational>; 3] {
        &self.lines
    }

    pub fn coordinate(&self, vertex: usize) -> &Rational {
        let n = self.len();
        &self.lines[vertex / n][vertex % n]
    }

    pub fn triangle(&self, i: usize) -> Triangle {
        let [x, y, z] = &self.lines;
        [
            point_on_line(0, &x[i]),
            point_on_line(1, &y[i]),
            point_on_line(2, &z[i]),
        ]
    }
}

impl fmt::Display for TriangleConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, name) in ["x", "y", "z"].iter().enumerate() {
            let vals: Vec<String> = self.lines[k].iter().map(format_rational).collect();
            writeln!(f, "{name}: {}", vals.join(" "))?;
        }
        Ok(())
    }
}

/// Point of parameter `t` on `ℓx`, `ℓy` or `ℓz`.
pub fn point_on_line(line: usize, t: &Rational) -> Point3 {
    let (zero, one) = (Rational::zero(), Rational::one());
    match line {
        0 => [t.clone(), one, zero],
        1 => [zero, t.clone(), one],
        _ => [one, zero, t.clone()],
    }
}

fn homogenize(p: &Point3) -> [BigInt; 4] {
    let l = p
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scale = |c: &Rational| c.numer() * (&l / c.denom());
    [scale(&p[0]), scale(&p[1]), scale(&p[2]), l]
}

fn det4_i128(m: &[[i128; 4]; 4]) -> i128 {
    let s = |a: usize, b: usize| m[0][a] * m[1][b] - m[0][b] * m[1][a];
    let c = |a: usize, b: usize| m[2][a] * m[3][b] - m[2][b] * m[3][a];
    s(0, 1) * c(2, 3) - s(0, 2) * c(1, 3) + s(0, 3) * c(1, 2) + s(1, 2) * c(0, 3)
        - s(1, 3) * c(0, 2)
        + s(2, 3) * c(0, 1)
}

fn det4_big(m: &[[BigInt; 4]; 4]) -> BigInt {
    let s = |a: usize, b: usize| &m[0][a] * &m[1][b] - &m[0][b] * &m[1][a];
    let c = |a: usize, b: usize| &m[2][a] * &m[3][b] - &m[2][b] * &m[3][a];
    s(0, 1) * c(2, 3) - s(0, 2) * c(1, 3) + s(0, 3) * c(1, 2) + s(1, 2) * c(0, 3)
        - s(1, 3) * c(0, 2)
        + s(2, 3) * c(0, 1)
}

const SMALL: i128 = 1 << 30;

fn sign_of(rows: &[[BigInt; 4]; 4]) -> i8 {
    let small: Option<Vec<i128>> = rows
        .iter()
        .flatten()
        .map(|e| e.to_i128().filter(|v| v.abs() < SMALL))
        .collect();
    if let Some(v) = small {
        let m = [
            [v[0], v[1], v[2], v[3]],
            [v[4], v[5], v[6], v[7]],
            [v[8], v[9], v[10], v[11]],
            [v[12], v[13], v[14], v[15]],
        ];
        return det4_i128(&m).signum() as i8;
    }
    let d = det4_big(rows);
    if d.is_positive() {
        1
    } else if d.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of the determinant whose rows are `(p, 1)`, `(q, 1)`, `(r, 1)`,
/// `(s, 1)`.
pub fn orient4(p: &Point3, q: &Point3, r: &Point3, s: &Point3) -> i8 {
    // Rows are scaled by positive denominators, which keeps the sign.
    sign_of(&[homogenize(p), homogenize(q), homogenize(r), homogenize(s)])
}

/// Guigue–Devillers on six labelled points: `0, 2, 4` form the first
/// triangle and `1, 3, 5` the second.
fn guigue_devillers(orient: impl Fn([usize; 4]) -> i8) -> Result<bool, GeometryError> {
    let sv = [
        orient([0, 2, 4, 1]),
        orient([0, 2, 4, 3]),
        orient([0, 2, 4, 5]),
        orient([1, 3, 5, 0]),
        orient([1, 3, 5, 2]),
        orient([1, 3, 5, 4]),
    ];
    if sv.contains(&0) {
        return Err(GeometryError::Degenerate);
    }
    if separated_by_plane(&sv) {
        return Ok(true);
    }
    let r = rename_guigue(&sv, 0, 1, 2).map_err(|_| GeometryError::Degenerate)?;
    let o1 = orient(r.first_test());
    let o2 = orient(r.second_test());
    if o1 == 0 || o2 == 0 {
        return Err(GeometryError::Degenerate);
    }
    Ok(o1 == 1 || o2 == 1)
}

/// Exact disjointness of two triangles in general position.
pub fn triangles_disjoint(t1: &Triangle, t2: &Triangle) -> Result<bool, GeometryError> {
    let pts = [
        homogenize(&t1[0]),
        homogenize(&t2[0]),
        homogenize(&t1[1]),
        homogenize(&t2[1]),
        homogenize(&t1[2]),
        homogenize(&t2[2]),
    ];
    guigue_devillers(|q| {
        sign_of(&[
            pts[q[0]].clone(),
            pts[q[1]].clone(),
            pts[q[2]].clone(),
            pts[q[3]].clone(),
        ])
    })
}

/// Why a certificate was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Rejection {
    #[error("certificate has size {found}, pattern has size {expected}")]
    Size { expected: usize, found: usize },
    #[error("coordinate of vertex {0} is 0 or 1")]
    Forbidden(usize),
    #[error("line {line} is not sorted as the permutation at position {position}")]
    Order { line: usize, position: usize },
    #[error("coordinate of vertex {0} lies in the wrong interval")]
    Region(usize),
    #[error("triangles {0} and {1} intersect")]
    Intersect(usize, usize),
}

/// Checks every condition of a canonical realization of `p`; degenerate
/// pairs are reported as errors.
pub fn check_certificate(p: &TaggedPattern, c: &TriangleConfig) -> Result<Result<(), Rejection>, GeometryError> {
    let n = p.len();
    if c.len() != n {
        return Ok(Err(Rejection::Size {
            expected: n,
            found: c.len(),
        }));
    }
    let (zero, one) = (Rational::zero(), Rational::one());
    for v in 0..3 * n {
        let t = c.coordinate(v);
        if *t == zero || *t == one {
            return Ok(Err(Rejection::Forbidden(v)));
        }
    }
    for (line, tp) in p.lines().iter().enumerate() {
        let word = tp.perm().word();
        let vals = c.line(line);
        for k in 1..n {
            if vals[word[k - 1]] >= vals[word[k]] {
                return Ok(Err(Rejection::Order { line, position: k }));
            }
        }
        for (pos, &e) in word.iter().enumerate() {
            let expected = if pos < tp.zero() {
                Region::Neg
            } else if pos < tp.one() {
                Region::Mid
            } else {
                Region::Pos
            };
            if Region::of(&vals[e]) != Some(expected) {
                return Ok(Err(Rejection::Region(line * n + e)));
            }
        }
    }
    let triangles: Vec<Triangle> = (0..n).map(|i| c.triangle(i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            if !triangles_disjoint(&triangles[i], &triangles[j])? {
                return Ok(Err(Rejection::Intersect(i, j)));
            }
        }
    }
    Ok(Ok(()))
}

pub fn verify_certificate(p: &TaggedPattern, c: &TriangleConfig) -> Result<bool, GeometryError> {
    Ok(check_certificate(p, c)?.is_ok())
}

/// Small exact fraction used by the oracle's inner loop.
#[derive(Clone, Copy)]
struct Frac {
    num: i128,
    den: i128,
}

fn frac_from_rep(region: Region, r: i128) -> Frac {
    match region {
        Region::Pos => Frac { num: r, den: 1 },
        Region::Neg => Frac { num: -1, den: r - 1 },
        Region::Mid => Frac { num: r - 1, den: r },
    }
}

fn homogeneous_vertex(line: usize, t: Frac) -> [i128; 4] {
    match line {
        0 => [t.num, t.den, 0, t.den],
        1 => [0, t.num, t.den, t.den],
        _ => [t.den, 0, t.num, t.den],
    }
}

/// Decides a tagged pattern by trying every order of the representatives
/// compatible with the tags and testing the resulting witness geometrically.
pub fn oracle_decide_tagged(p: &TaggedPattern) -> Result<Option<TriangleConfig>, GeometryError> {
    let n = p.len();
    if n > 3 {
        return Err(GeometryError::OracleTooLarge(n));
    }
    let regions = regions_of(p);
    // Same line and same interval: `f` is increasing there, so the line order
    // fixes the order of the representatives.
    let mut chains: Vec<Vec<usize>> = Vec::new();
    for (line, tp) in p.lines().iter().enumerate() {
        for region in Region::ALL {
            let chain: Vec<usize> = tp
                .perm()
                .word()
                .iter()
                .map(|&e| line * n + e)
                .filter(|&v| regions[v] == region)
                .collect();
            if !chain.is_empty() {
                chains.push(chain);
            }
        }
    }
    let mut search = OracleSearch {
        n,
        regions: &regions,
        chains: &chains,
        heads: vec![0; chains.len()],
        order: Vec::with_capacity(3 * n),
        pts: vec![[0; 4]; 3 * n],
        placed: 0,
    };
    let Some(order) = search.run()? else {
        return Ok(None);
    };
    let lifted = LiftedOrder::from_reps(n, &order, &regions);
    let coords = witness_from_order(&lifted).map_err(|_| GeometryError::Degenerate)?;
    let config = TriangleConfig::from_coords(coords)?;
    assert!(
        verify_certificate(p, &config)?,
        "oracle witness rejected by the verifier"
    );
    Ok(Some(config))
}

struct OracleSearch<'a> {
    n: usize,
    regions: &'a [Region],
    chains: &'a [Vec<usize>],
    heads: Vec<usize>,
    order: Vec<usize>,
    pts: Vec<[i128; 4]>,
    placed: u64,
}

impl OracleSearch<'_> {
    fn run(&mut self) -> Result<Option<Vec<usize>>, GeometryError> {
        if self.order.len() == 3 * self.n {
            return Ok(Some(self.order.clone()));
        }
        for c in 0..self.chains.len() {
            let h = self.heads[c];
            if h == self.chains[c].len() {
                continue;
            }
            let v = self.chains[c][h];
            let t = frac_from_rep(self.regions[v], self.order.len() as i128 + 2);
            self.pts[v] = homogeneous_vertex(v / self.n, t);
            self.placed |= 1 << v;
            self.order.push(v);
            self.heads[c] += 1;
            let found = if self.consistent(v % self.n)? {
                self.run()?
            } else {
                None
            };
            self.heads[c] -= 1;
            self.order.pop();
            self.placed &= !(1 << v);
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    fn complete(&self, i: usize) -> bool {
        let n = self.n;
        [i, n + i, 2 * n + i].iter().all(|&v| self.placed >> v & 1 == 1)
    }

    /// Values are final once placed, so a pair can be tested as soon as its
    /// six coordinates are known.
    fn consistent(&self, i: usize) -> Result<bool, GeometryError> {
        let n = self.n;
        if !self.complete(i) {
            return Ok(true);
        }
        for j in (0..n).filter(|&j| j != i && self.complete(j)) {
            let ids = [i, j, n + i, n + j, 2 * n + i, 2 * n + j];
            let pts = &self.pts;
            let disjoint = guigue_devillers(|q| {
                det4_i128(&[pts[ids[q[0]]], pts[ids[q[1]]], pts[ids[q[2]]], pts[ids[q[3]]]])
                    .signum() as i8
            })?;
            if !disjoint {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Triangle intersection by comparing the segments cut on the line where the
/// two supporting planes meet. Written independently of the orientation
/// based test.
pub mod naive {
    use super::{GeometryError, Point3, Rational, Triangle};
    use num_traits::{Signed, Zero};

    fn sub(a: &Point3, b: &Point3) -> Point3 {
        [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
    }

    fn cross(a: &Point3, b: &Point3) -> Point3 {
        [
            &a[1] * &b[2] - &a[2] * &b[1],
            &a[2] * &b[0] - &a[0] * &b[2],
            &a[0] * &b[1] - &a[1] * &b[0],
        ]
    }

    fn dot(a: &Point3, b: &Point3) -> Rational {
        &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
    }

    /// Signed distances (up to a common positive factor) of the vertices of
    /// `t` from the plane of `s`.
    fn distances(s: &Triangle, t: &Triangle) -> Result<[Rational; 3], GeometryError> {
        let normal = cross(&sub(&s[1], &s[0]), &sub(&s[2], &s[0]));
        let d = -dot(&normal, &s[0]);
        let out = [
            dot(&normal, &t[0]) + &d,
            dot(&normal, &t[1]) + &d,
            dot(&normal, &t[2]) + &d,
        ];
        if out.iter().any(|v| v.is_zero()) {
            return Err(GeometryError::Degenerate);
        }
        Ok(out)
    }

    fn same_side(d: &[Rational; 3]) -> bool {
        let pos = d.iter().filter(|v| v.is_positive()).count();
        pos == 0 || pos == 3
    }

    /// Interval cut by the triangle on the intersection line, in the
    /// parameter `dir · point`.
    fn interval(t: &Triangle, d: &[Rational; 3], dir: &Point3) -> (Rational, Rational) {
        let pos: Vec<bool> = d.iter().map(|v| v.is_positive()).collect();
        let lone = if pos[0] == pos[1] {
            2
        } else if pos[0] == pos[2] {
            1
        } else {
            0
        };
        let proj: Vec<Rational> = t.iter().map(|p| dot(dir, p)).collect();
        let cut = |b: usize| {
            let a = lone;
            &proj[a] + (&proj[b] - &proj[a]) * (&d[a] / (&d[a] - &d[b]))
        };
        let others: Vec<usize> = (0..3).filter(|&k| k != lone).collect();
        let (u, v) = (cut(others[0]), cut(others[1]));
        if u <= v {
            (u, v)
        } else {
            (v, u)
        }
    }

    pub fn triangles_intersect(t1: &Triangle, t2: &Triangle) -> Result<bool, GeometryError> {
        let d1 = distances(t2, t1)?;
        if same_side(&d1) {
            return Ok(false);
        }
        let d2 = distances(t1, t2)?;
        if same_side(&d2) {
            return Ok(false);
        }
        let n1 = cross(&sub(&t1[1], &t1[0]), &sub(&t1[2], &t1[0]));
        let n2 = cross(&sub(&t2[1], &t2[0]), &sub(&t2[2], &t2[0]));
        let dir = cross(&n1, &n2);
        if dir.iter().all(|c| c.is_zero()) {
            return Err(GeometryError::Degenerate);
        }
        let (a0, a1) = interval(t1, &d1, &dir);
        let (b0, b1) = interval(t2, &d2, &dir);
        if a1 == b0 || b1 == a0 {
            return Err(GeometryError::Degenerate);
        }
        Ok(a1 > b0 && b1 > a0)
    }
}

impl FromStr for TriangleConfig {
    type Err = GeometryError;

    /// Three lines of whitespace separated rationals, one per canonical line,
    /// optionally prefixed by `x:`, `y:`, `z:`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let mut parse_line = || -> Result<Vec<Rational>, GeometryError> {
            let line = lines.next().unwrap_or("");
            let body = line.split_once(':').map_or(line, |(_, rest)| rest);
            body.split_whitespace().map(parse_rational).collect()
        };
        let x = parse_line()?;
        let y = parse_line()?;
        let z = parse_line()?;
        Self::new(x, y, z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    fn pt(a: i64, b: i64, c: i64) -> Point3 {
        [q(a, 1), q(b, 1), q(c, 1)]
    }

    #[test]
    fn rational_round_trip() {
        for s in ["3", "-1/2", "7/3", "0"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a").is_err());
    }

    #[test]
    fn simplex_orientation() {
        let o = pt(0, 0, 0);
        let (e1, e2, e3) = (pt(1, 0, 0), pt(0, 1, 0), pt(0, 0, 1));
        assert_eq!(orient4(&o, &e1, &e2, &e3), -1);
        assert_eq!(orient4(&e1, &o, &e2, &e3), 1);
        assert_eq!(orient4(&o, &e1, &e2, &pt(1, 1, 0)), 0);
    }

    #[test]
    fn big_entries_use_exact_path() {
        let big = q(1 << 40, 3);
        let p = [big.clone(), q(1, 1), q(0, 1)];
        let s1 = orient4(&p, &pt(1, 0, 0), &pt(0, 1, 0), &pt(0, 0, 1));
        let s2 = orient4(&pt(1, 0, 0), &p, &pt(0, 1, 0), &pt(0, 0, 1));
        assert_eq!(s1, -s2);
        assert_ne!(s1, 0);
    }

    #[test]
    fn separated_and_crossing_triangles() {
        let t1 = [pt(0, 0, 0), pt(4, 0, 0), pt(0, 4, 0)];
        let above = [pt(0, 0, 1), pt(4, 0, 1), pt(0, 4, 2)];
        assert!(triangles_disjoint(&t1, &above).unwrap());
        let piercing = [pt(1, 1, -1), pt(1, 1, 1), pt(1, 2, 5)];
        assert!(!triangles_disjoint(&t1, &piercing).unwrap());
        assert!(naive::triangles_intersect(&t1, &piercing).unwrap());
        let coplanar = [pt(1, 1, 0), pt(2, 1, 0), pt(1, 2, 1)];
        assert_eq!(
            triangles_disjoint(&t1, &coplanar),
            Err(GeometryError::Degenerate)
        );
    }

    #[test]
    fn certificate_checks() {
        let p: TaggedPattern = "z o 0 | z o 0 | z o 0".parse().unwrap();
        let c = TriangleConfig::new(vec![q(2, 1)], vec![q(3, 1)], vec![q(4, 1)]).unwrap();
        assert!(verify_certificate(&p, &c).unwrap());
        let c = TriangleConfig::new(vec![q(1, 1)], vec![q(3, 1)], vec![q(4, 1)]).unwrap();
        assert_eq!(
            check_certificate(&p, &c).unwrap(),
            Err(Rejection::Forbidden(0))
        );
        let c = TriangleConfig::new(vec![q(1, 2)], vec![q(3, 1)], vec![q(4, 1)]).unwrap();
        assert_eq!(check_certificate(&p, &c).unwrap(), Err(Rejection::Region(0)));
    }

    #[test]
    fn swapped_coordinates_rejected() {
        let p: TaggedPattern = "z o 0 1 | z o 0 1 | z o 0 1".parse().unwrap();
        let c = oracle_decide_tagged(&p).unwrap().expect("stack of triangles");
        assert!(verify_certificate(&p, &c).unwrap());
        let mut x = c.line(0).to_vec();
        x.swap(0, 1);
        let swapped = TriangleConfig::new(x, c.line(1).to_vec(), c.line(2).to_vec()).unwrap();
        assert_eq!(
            check_certificate(&p, &swapped).unwrap(),
            Err(Rejection::Order {
                line: 0,
                position: 1
            })
        );
    }

    #[test]
    fn oracle_small_cases() {
        let forbidden: TaggedPattern = "0 1 z o | z o 0 1 | z o 0 1".parse().unwrap();
        assert!(oracle_decide_tagged(&forbidden).unwrap().is_none());
        let single: TaggedPattern = "0 z o | z 0 o | z o 0".parse().unwrap();
        assert!(oracle_decide_tagged(&single).unwrap().is_some());
        let big: TaggedPattern = "0 1 2 3 z o | 0 1 2 3 z o | 0 1 2 3 z o".parse().unwrap();
        assert_eq!(
            oracle_decide_tagged(&big),
            Err(GeometryError::OracleTooLarge(4))
        );
    }

    #[test]
    fn config_text_round_trip() {
        let c = TriangleConfig::new(
            vec![q(2, 1), q(-1, 3)],
            vec![q(3, 4), q(5, 1)],
            vec![q(6, 1), q(7, 1)],
        )
        .unwrap();
        let back: TriangleConfig = c.to_string().parse().unwrap();
        assert_eq!(back, c);
    }
}
