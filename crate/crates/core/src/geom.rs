//! Exact planar predicates over integer point sets in general position.
//!
//! Every predicate is evaluated in exact integer arithmetic. Coordinates are
//! bounded by [`COORD_LIMIT`] in absolute value, which keeps all orientation
//! determinants well inside `i128` (and the plain 3-point determinant inside
//! `i64`, though we do not rely on that).

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GeomError;

/// Largest permitted absolute coordinate value.
pub const COORD_LIMIT: i64 = 1 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl From<[i64; 2]> for Point {
    fn from([x, y]: [i64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [i64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    /// `-1`, `0` or `+1`.
    pub fn as_sign(self) -> i32 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
            Orientation::CounterClockwise => Orientation::Clockwise,
        }
    }
}

#[inline]
pub(crate) fn cross(ax: i128, ay: i128, bx: i128, by: i128) -> i128 {
    ax * by - ay * bx
}

/// Sign of `(q - p) x (r - p)`.
pub fn orient(p: Point, q: Point, r: Point) -> Orientation {
    let det = cross(
        (q.x - p.x) as i128,
        (q.y - p.y) as i128,
        (r.x - p.x) as i128,
        (r.y - p.y) as i128,
    );
    match det.cmp(&0) {
        Ordering::Less => Orientation::Clockwise,
        Ordering::Equal => Orientation::Collinear,
        Ordering::Greater => Orientation::CounterClockwise,
    }
}

/// An undirected edge between two point indices, stored with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[usize; 2]", into = "[usize; 2]")]
pub struct Edge {
    a: usize,
    b: usize,
}

impl Edge {
    /// Normalizes the endpoint order. Panics on a loop; use [`Edge::try_new`]
    /// for untrusted input.
    pub fn new(a: usize, b: usize) -> Self {
        Self::try_new(a, b).expect("edge endpoints must differ")
    }

    pub fn try_new(a: usize, b: usize) -> Result<Self, GeomError> {
        match a.cmp(&b) {
            Ordering::Less => Ok(Edge { a, b }),
            Ordering::Greater => Ok(Edge { a: b, b: a }),
            Ordering::Equal => Err(GeomError::LoopEdge(a)),
        }
    }

    pub fn a(self) -> usize {
        self.a
    }

    pub fn b(self) -> usize {
        self.b
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn contains(self, v: usize) -> bool {
        self.a == v || self.b == v
    }

    pub fn shares_endpoint(self, other: Edge) -> bool {
        self.contains(other.a) || self.contains(other.b)
    }
}

impl TryFrom<[usize; 2]> for Edge {
    type Error = GeomError;

    fn try_from([a, b]: [usize; 2]) -> Result<Self, Self::Error> {
        Edge::try_new(a, b)
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.a, e.b]
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// A set of edges over one point set. Iteration order is sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeSet {
    edges: BTreeSet<Edge>,
}

impl EdgeSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a set, checking every index against a point count of `n`.
    pub fn from_edges<I: IntoIterator<Item = Edge>>(n: usize, edges: I) -> Result<Self, GeomError> {
        let mut set = EdgeSet::new();
        for e in edges {
            set.insert_checked(n, e)?;
        }
        Ok(set)
    }

    pub fn insert_checked(&mut self, n: usize, e: Edge) -> Result<bool, GeomError> {
        if e.b >= n {
            return Err(GeomError::IndexOutOfRange { index: e.b, len: n });
        }
        Ok(self.edges.insert(e))
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        self.edges.insert(e)
    }

    pub fn remove(&mut self, e: &Edge) -> bool {
        self.edges.remove(e)
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.contains(e)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.edges.is_subset(&other.edges)
    }

    /// Checks every endpoint against a point count of `n`.
    pub fn validate(&self, n: usize) -> Result<(), GeomError> {
        match self.edges.iter().find(|e| e.b >= n) {
            Some(e) => Err(GeomError::IndexOutOfRange { index: e.b, len: n }),
            None => Ok(()),
        }
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        EdgeSet {
            edges: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a EdgeSet {
    type Item = &'a Edge;
    type IntoIter = std::collections::btree_set::Iter<'a, Edge>;

    fn into_iter(self) -> Self::IntoIter {
        self.edges.iter()
    }
}

/// Points in general position: distinct, no three collinear, coordinates
/// bounded by [`COORD_LIMIT`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    /// Validates general position eagerly. Cubic in the number of points.
    pub fn new(points: Vec<Point>) -> Result<Self, GeomError> {
        for (i, p) in points.iter().enumerate() {
            if p.x.abs() > COORD_LIMIT || p.y.abs() > COORD_LIMIT {
                return Err(GeomError::CoordinateOutOfRange { index: i, point: *p });
            }
        }
        let n = points.len();
        for i in 0..n {
            for j in i + 1..n {
                if points[i] == points[j] {
                    return Err(GeomError::DuplicatePoint { first: i, second: j });
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if orient(points[i], points[j], points[k]) == Orientation::Collinear {
                        return Err(GeomError::Collinear([i, j, k]));
                    }
                }
            }
        }
        Ok(PointSet { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn check_index(&self, i: usize) -> Result<(), GeomError> {
        if i < self.points.len() {
            Ok(())
        } else {
            Err(GeomError::IndexOutOfRange { index: i, len: self.points.len() })
        }
    }

    pub fn check_edge(&self, e: Edge) -> Result<(), GeomError> {
        self.check_index(e.b)
    }

    pub fn orient(&self, p: usize, q: usize, r: usize) -> Orientation {
        orient(self.points[p], self.points[q], self.points[r])
    }

    /// The sub-point-set on `indices`, in the given order.
    pub fn subset(&self, indices: &[usize]) -> PointSet {
        PointSet {
            points: indices.iter().map(|&i| self.points[i]).collect(),
        }
    }

    pub fn all_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let n = self.points.len();
        (0..n).flat_map(move |a| (a + 1..n).map(move |b| Edge { a, b }))
    }

    /// Every point is a hull vertex.
    pub fn is_convex_position(&self) -> bool {
        self.points.len() >= 3
            && convex_hull(self).map(|h| h.len() == self.points.len()).unwrap_or(false)
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            points: Vec<Point>,
        }
        let raw = Raw::deserialize(deserializer)?;
        PointSet::new(raw.points).map_err(serde::de::Error::custom)
    }
}

/// True iff the relative interiors of the two segments intersect.
pub fn segments_cross(s: &PointSet, e1: Edge, e2: Edge) -> Result<bool, GeomError> {
    s.check_edge(e1)?;
    s.check_edge(e2)?;
    Ok(segments_cross_unchecked(s, e1, e2))
}

pub(crate) fn segments_cross_unchecked(s: &PointSet, e1: Edge, e2: Edge) -> bool {
    if e1.shares_endpoint(e2) {
        return false;
    }
    let (a, b) = e1.endpoints();
    let (c, d) = e2.endpoints();
    s.orient(a, b, c) != s.orient(a, b, d) && s.orient(c, d, a) != s.orient(c, d, b)
}

/// Hull vertices in counter-clockwise order, starting from the lowest point
/// (ties broken by smaller `x`).
pub fn convex_hull(s: &PointSet) -> Result<Vec<usize>, GeomError> {
    let all: Vec<usize> = (0..s.len()).collect();
    hull_of(s, &all)
}

/// Convex hull of a subset, same conventions as [`convex_hull`].
pub fn hull_of(s: &PointSet, subset: &[usize]) -> Result<Vec<usize>, GeomError> {
    if subset.len() < 3 {
        return Err(GeomError::TooFewPoints { needed: 3, got: subset.len() });
    }
    Ok(monotone_chain(s, subset))
}

/// Andrew's monotone chain; tolerant of subsets of size < 3.
pub(crate) fn monotone_chain(s: &PointSet, subset: &[usize]) -> Vec<usize> {
    let mut idx = subset.to_vec();
    if idx.len() < 3 {
        idx.sort_by_key(|&i| (s.point(i).y, s.point(i).x));
        return idx;
    }
    idx.sort_by_key(|&i| (s.point(i).x, s.point(i).y));
    let mut hull: Vec<usize> = Vec::with_capacity(idx.len() * 2);
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(idx.iter())
        } else {
            Box::new(idx.iter().rev())
        };
        for &i in iter {
            while hull.len() >= start + 2
                && s.orient(hull[hull.len() - 2], hull[hull.len() - 1], i)
                    != Orientation::CounterClockwise
            {
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    let lowest = (0..hull.len())
        .min_by_key(|&k| (s.point(hull[k]).y, s.point(hull[k]).x))
        .unwrap_or(0);
    hull.rotate_left(lowest);
    hull
}

/// A direction in the plane used as the zero angle of an angular order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Direction {
    pub dx: i128,
    pub dy: i128,
}

impl std::ops::Add for Direction {
    type Output = Direction;

    fn add(self, other: Direction) -> Direction {
        Direction {
            dx: self.dx + other.dx,
            dy: self.dy + other.dy,
        }
    }
}

impl Direction {
    pub fn between(from: Point, to: Point) -> Self {
        Direction {
            dx: (to.x - from.x) as i128,
            dy: (to.y - from.y) as i128,
        }
    }

    /// Rotated a quarter turn counter-clockwise.
    pub fn perp(self) -> Self {
        Direction { dx: -self.dy, dy: self.dx }
    }

    pub fn cross(self, other: Direction) -> i128 {
        cross(self.dx, self.dy, other.dx, other.dy)
    }

    pub fn dot(self, other: Direction) -> i128 {
        self.dx * other.dx + self.dy * other.dy
    }
}

/// Compares two directions by counter-clockwise angle in `[0, 2pi)` measured
/// from `zero`. A direction exactly along `zero` has angle 0.
pub(crate) fn cmp_angle_from(zero: Direction, a: Direction, b: Direction) -> Ordering {
    let half = |v: Direction| -> u8 {
        let c = zero.cross(v);
        if c > 0 || (c == 0 && zero.dot(v) > 0) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&a.cross(b)))
}

/// Direction pointing from the centroid of `others` through `center`, scaled
/// to stay integral. When `center` is a hull vertex of the combined set this
/// ray lies strictly outside the cone spanned by the other points.
pub(crate) fn outward_direction(s: &PointSet, center: usize, others: &[usize]) -> Direction {
    let c = s.point(center);
    let m = others.len() as i128;
    let (sx, sy) = others.iter().fold((0i128, 0i128), |(sx, sy), &i| {
        (sx + s.point(i).x as i128, sy + s.point(i).y as i128)
    });
    Direction {
        dx: m * c.x as i128 - sx,
        dy: m * c.y as i128 - sy,
    }
}

/// Sorts `subset` counter-clockwise around `center` by angle from `zero`.
pub(crate) fn sort_around(s: &PointSet, center: usize, zero: Direction, subset: &mut [usize]) {
    let c = s.point(center);
    subset.sort_by(|&a, &b| {
        cmp_angle_from(
            zero,
            Direction::between(c, s.point(a)),
            Direction::between(c, s.point(b)),
        )
    });
}

/// Sorts `subset` counter-clockwise around `center`, starting from the angular
/// extreme, so the first and last output points bound a salient cone.
pub fn angular_sort(s: &PointSet, center: usize, subset: &[usize]) -> Result<Vec<usize>, GeomError> {
    s.check_index(center)?;
    for &i in subset {
        s.check_index(i)?;
        if i == center {
            return Err(GeomError::CenterInSubset(center));
        }
    }
    let mut out = subset.to_vec();
    if out.len() <= 1 {
        return Ok(out);
    }
    let mut combined = out.clone();
    combined.push(center);
    if !monotone_chain(s, &combined).contains(&center) {
        return Err(GeomError::CenterNotOnHull(center));
    }
    let zero = outward_direction(s, center, &out);
    sort_around(s, center, zero, &mut out);
    Ok(out)
}

/// Point counts on the two open sides of the supporting line of `e`:
/// `(left, right)` as seen walking from `e.a()` to `e.b()`.
pub fn side_counts(s: &PointSet, e: Edge) -> Result<(usize, usize), GeomError> {
    s.check_edge(e)?;
    let (a, b) = e.endpoints();
    let mut left = 0;
    let mut right = 0;
    for i in (0..s.len()).filter(|&i| i != a && i != b) {
        match s.orient(a, b, i) {
            Orientation::CounterClockwise => left += 1,
            Orientation::Clockwise => right += 1,
            Orientation::Collinear => unreachable!("general position"),
        }
    }
    Ok((left, right))
}

/// The smaller of the two half-plane counts. Hull edges have depth 0.
pub fn edge_depth(s: &PointSet, e: Edge) -> Result<usize, GeomError> {
    side_counts(s, e).map(|(l, r)| l.min(r))
}

/// Hull vertices of `cell` visible from `apex`, in counter-clockwise order
/// around `apex`. A hull vertex is visible when the segment from `apex` does
/// not properly cross any hull edge of the cell. `cell` must lie in a salient
/// cone at `apex`.
pub(crate) fn visible_hull_vertices(s: &PointSet, apex: usize, cell: &[usize]) -> Vec<usize> {
    let mut out = if cell.len() <= 2 {
        cell.to_vec()
    } else {
        let hull = monotone_chain(s, cell);
        let h = hull.len();
        hull.iter()
            .copied()
            .filter(|&v| {
                (0..h).all(|i| {
                    let e = Edge::new(hull[i], hull[(i + 1) % h]);
                    !segments_cross_unchecked(s, Edge::new(apex, v), e)
                })
            })
            .collect()
    };
    out.sort_by(|&a, &b| 0.cmp(&(s.orient(apex, a, b).as_sign())));
    out
}
