//! Forbidden edge sets that block a spider tree, and the closed-form bounds
//! on the minimum size of such a set.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{ForbidError, GeomError};
use crate::geom::{convex_hull, edge_depth, Edge, EdgeSet, PointSet};
use crate::trees::{spider_tree, Tree};

pub type Rational = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ForbidKind {
    ThreeConsecutiveHull,
    ThreePairsHull,
    REdgeBlanket,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbidParams {
    pub n: usize,
    pub k: usize,
    /// Largest forbidden depth, for the blanket.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub r_threshold: Option<usize>,
    /// Hull positions the construction was anchored at.
    #[serde(default)]
    pub hull_positions: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbidConstruction {
    pub kind: ForbidKind,
    pub edges: EdgeSet,
    /// The tree this edge set is claimed to forbid.
    pub target_tree: Tree,
    pub params: ForbidParams,
}

fn convex_hull_order(s: &PointSet) -> Result<Vec<usize>, ForbidError> {
    let hull = convex_hull(s)?;
    if hull.len() != s.len() {
        return Err(GeomError::NotConvex.into());
    }
    Ok(hull)
}

fn require_points(s: &PointSet, needed: usize) -> Result<(), ForbidError> {
    if s.len() < needed {
        return Err(ForbidError::TooSmall { needed, got: s.len() });
    }
    Ok(())
}

/// The hull edges from position `start` through `start + 3`.
pub fn three_consecutive_hull_edges(s: &PointSet, start: usize) -> Result<ForbidConstruction, ForbidError> {
    require_points(s, 5)?;
    let hull = convex_hull_order(s)?;
    let n = hull.len();
    if start >= n {
        return Err(ForbidError::BadPosition(start));
    }
    let at = |i: usize| hull[(start + i) % n];
    let edges = (0..3).map(|i| Edge::new(at(i), at(i + 1))).collect();
    Ok(ForbidConstruction {
        kind: ForbidKind::ThreeConsecutiveHull,
        edges,
        target_tree: spider_tree(n)?,
        params: ForbidParams {
            n,
            k: n,
            r_threshold: None,
            hull_positions: (0..4).map(|i| (start + i) % n).collect(),
        },
    })
}

/// Both hull edges at each of three middle positions. The six edges must be
/// distinct, so the middles must be pairwise at least two apart.
pub fn three_pairs_consecutive_hull_edges(
    s: &PointSet,
    middles: [usize; 3],
) -> Result<ForbidConstruction, ForbidError> {
    require_points(s, 6)?;
    let hull = convex_hull_order(s)?;
    let n = hull.len();
    if let Some(&bad) = middles.iter().find(|&&m| m >= n) {
        return Err(ForbidError::BadPosition(bad));
    }
    let mut edges = EdgeSet::new();
    for &m in &middles {
        edges.insert(Edge::new(hull[(m + n - 1) % n], hull[m]));
        edges.insert(Edge::new(hull[m], hull[(m + 1) % n]));
    }
    if edges.len() != 6 {
        return Err(ForbidError::OverlappingPairs(middles));
    }
    Ok(ForbidConstruction {
        kind: ForbidKind::ThreePairsHull,
        edges,
        target_tree: spider_tree(n)?,
        params: ForbidParams {
            n,
            k: n,
            r_threshold: None,
            hull_positions: middles.to_vec(),
        },
    })
}

/// Middles at `0, ceil(n/3), ceil(2n/3)`.
pub fn spread_middles(n: usize) -> [usize; 3] {
    [0, n.div_ceil(3), (2 * n).div_ceil(3)]
}

fn check_k(n: usize, k: usize) -> Result<(), ForbidError> {
    if k < 3 {
        return Err(ForbidError::BadK { n, k });
    }
    Ok(())
}

/// `max(0, ceil(2(n-2)/(k-2) - 2))`.
pub fn blanket_threshold(n: usize, k: usize) -> Result<usize, ForbidError> {
    check_k(n, k)?;
    let value = Rational::new(2 * (n as i64 - 2), k as i64 - 2) - 2;
    Ok((*value.ceil().numer()).max(0) as usize)
}

/// Every edge of depth at most the threshold, on a convex point set.
pub fn r_edge_blanket(s: &PointSet, k: usize) -> Result<ForbidConstruction, ForbidError> {
    let n = s.len();
    if k < 3 || k > n {
        return Err(ForbidError::BadK { n, k });
    }
    convex_hull_order(s)?;
    let r = blanket_threshold(n, k)?;
    let mut edges = EdgeSet::new();
    for e in s.all_edges() {
        if edge_depth(s, e)? <= r {
            edges.insert(e);
        }
    }
    Ok(ForbidConstruction {
        kind: ForbidKind::REdgeBlanket,
        edges,
        target_tree: spider_tree(k)?,
        params: ForbidParams {
            n,
            k,
            r_threshold: Some(r),
            hull_positions: Vec::new(),
        },
    })
}

/// `n^2 / (2(k-1)) - n/2`, the Turán lower bound on the minimum forbidding set.
pub fn turan_lower_bound(n: usize, k: usize) -> Result<Rational, ForbidError> {
    check_k(n, k)?;
    let n = n as i64;
    Ok(Rational::new(n * n, 2 * (k as i64 - 1)) - Rational::new(n, 2))
}

/// `2n(n-2)/(k-2)`, the upper bound realized by the blanket.
pub fn upper_bound_value(n: usize, k: usize) -> Result<Rational, ForbidError> {
    check_k(n, k)?;
    let n = n as i64;
    Ok(Rational::new(2 * n * (n - 2), k as i64 - 2))
}

/// Blanket size on convex `n` points without building the set: `n` edges at
/// every depth below `(n - 2) / 2`, and `n / 2` halving edges when `n` is even.
pub fn convex_blanket_size(n: usize, k: usize) -> Result<usize, ForbidError> {
    let r = blanket_threshold(n, k)?;
    Ok((0..=r)
        .map(|d| match (2 * d + 2).cmp(&n) {
            std::cmp::Ordering::Less => n,
            std::cmp::Ordering::Equal => n / 2,
            std::cmp::Ordering::Greater => 0,
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::convex_position;

    #[test]
    fn three_consecutive_example() {
        let s = convex_position(5, 1).unwrap();
        let c = three_consecutive_hull_edges(&s, 0).unwrap();
        let got: Vec<_> = c.edges.iter().map(|e| e.endpoints()).collect();
        assert_eq!(got, vec![(0, 1), (1, 2), (2, 3)]);
        let wrapped = three_consecutive_hull_edges(&s, 3).unwrap();
        let got: Vec<_> = wrapped.edges.iter().map(|e| e.endpoints()).collect();
        assert_eq!(got, vec![(0, 1), (0, 4), (3, 4)]);
        assert!(three_consecutive_hull_edges(&s, 5).is_err());
    }

    #[test]
    fn three_pairs_examples() {
        let s6 = convex_position(6, 1).unwrap();
        assert_eq!(three_pairs_consecutive_hull_edges(&s6, [0, 2, 4]).unwrap().edges.len(), 6);
        assert_eq!(
            three_pairs_consecutive_hull_edges(&s6, [0, 1, 3]),
            Err(ForbidError::OverlappingPairs([0, 1, 3]))
        );
        let s9 = convex_position(9, 1).unwrap();
        assert_eq!(three_pairs_consecutive_hull_edges(&s9, [0, 3, 6]).unwrap().edges.len(), 6);
        assert_eq!(spread_middles(8), [0, 3, 6]);
        assert_eq!(spread_middles(6), [0, 2, 4]);
    }

    #[test]
    fn non_convex_rejected() {
        let s = crate::generate::random_non_convex(7, 3).unwrap();
        assert!(matches!(
            three_consecutive_hull_edges(&s, 0),
            Err(ForbidError::Geom(GeomError::NotConvex))
        ));
        assert!(r_edge_blanket(&s, 5).is_err());
    }

    #[test]
    fn blanket_examples() {
        let s = convex_position(10, 1).unwrap();
        let b = r_edge_blanket(&s, 6).unwrap();
        assert_eq!(b.params.r_threshold, Some(2));
        assert_eq!(b.edges.len(), 30);
        assert_eq!(upper_bound_value(10, 6).unwrap(), Rational::from_integer(40));

        let s8 = convex_position(8, 1).unwrap();
        let b = r_edge_blanket(&s8, 8).unwrap();
        assert_eq!(b.params.r_threshold, Some(0));
        assert_eq!(b.edges.len(), 8);
        assert!(r_edge_blanket(&s8, 2).is_err());
        assert!(r_edge_blanket(&s8, 9).is_err());
    }

    #[test]
    fn bound_values() {
        assert_eq!(turan_lower_bound(10, 5).unwrap(), Rational::new(15, 2));
        assert_eq!(turan_lower_bound(12, 4).unwrap(), Rational::from_integer(18));
        assert_eq!(turan_lower_bound(10, 6).unwrap(), Rational::from_integer(5));
        assert_eq!(turan_lower_bound(8, 8).unwrap(), Rational::new(4, 7));
        assert_eq!(upper_bound_value(8, 8).unwrap(), Rational::from_integer(16));
        assert!(turan_lower_bound(8, 2).is_err());
        for n in 3..=20usize {
            let v = turan_lower_bound(n, n).unwrap();
            assert_eq!(v, Rational::new(n as i64, 2 * (n as i64 - 1)));
            assert!(v <= Rational::from_integer(1));
        }
    }

    #[test]
    fn closed_form_blanket_size_matches_census() {
        for n in 5..=12 {
            let s = convex_position(n, 2).unwrap();
            for k in 3..=n {
                assert_eq!(
                    r_edge_blanket(&s, k).unwrap().edges.len(),
                    convex_blanket_size(n, k).unwrap(),
                    "n={n} k={k}"
                );
            }
        }
    }
}
