use std::collections::HashSet;

use geoforbid::embedder::{
    embed_avoiding_single, embed_convex_avoiding_two, embed_few_hull_edges, embed_recursive_default,
    rotate_embedding,
};
use geoforbid::forbid::{
    r_edge_blanket, three_consecutive_hull_edges, turan_lower_bound, upper_bound_value, Rational,
};
use geoforbid::generate::{convex_position, random_general_position, DEFAULT_BOX};
use geoforbid::geom::{
    angular_sort, convex_hull, edge_depth, orient, segments_cross, side_counts, Orientation,
};
use geoforbid::oracle::{exists_embedding, exists_embedding_with, forbids, SearchOptions, DEFAULT_BUDGET};
use geoforbid::trees::{ahu_canonical, all_trees, from_pruefer, root_at, sort_children_by_subtree_size, spider_tree};
use geoforbid::{Edge, EdgeSet, Point, PointSet};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = Point> {
    (-(1i64 << 30)..=(1i64 << 30), -(1i64 << 30)..=(1i64 << 30)).prop_map(|(x, y)| Point::new(x, y))
}

fn points(lo: usize, hi: usize) -> impl Strategy<Value = PointSet> {
    (lo..=hi, any::<u64>()).prop_map(|(n, seed)| random_general_position(n, seed, DEFAULT_BOX).unwrap())
}

fn brute_force_hull(s: &PointSet) -> HashSet<usize> {
    // p is extreme iff some other point q makes every remaining point lie strictly left of p->q
    (0..s.len())
        .filter(|&p| {
            (0..s.len()).filter(|&q| q != p).any(|q| {
                (0..s.len())
                    .filter(|&r| r != p && r != q)
                    .all(|r| s.orient(p, q, r) == Orientation::CounterClockwise)
            })
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn orientation_flips_with_swaps(p in point(), q in point(), r in point()) {
        prop_assert_eq!(orient(p, q, r), orient(p, r, q).reversed());
        prop_assert_eq!(orient(p, q, r), orient(r, p, q));
    }

    #[test]
    fn side_counts_partition_the_rest(s in points(3, 12)) {
        for e in s.all_edges() {
            let (l, r) = side_counts(&s, e).unwrap();
            prop_assert_eq!(l + r, s.len() - 2);
            prop_assert_eq!(edge_depth(&s, e).unwrap(), l.min(r));
        }
    }

    #[test]
    fn hull_matches_brute_force(s in points(3, 10)) {
        let hull = convex_hull(&s).unwrap();
        prop_assert_eq!(hull.iter().copied().collect::<HashSet<_>>(), brute_force_hull(&s));
        let h = hull.len();
        for i in 0..h {
            prop_assert_eq!(s.orient(hull[i], hull[(i + 1) % h], hull[(i + 2) % h]), Orientation::CounterClockwise);
        }
        for e in s.all_edges() {
            let consecutive = (0..h).any(|i| Edge::new(hull[i], hull[(i + 1) % h]) == e);
            prop_assert_eq!(consecutive, edge_depth(&s, e).unwrap() == 0);
        }
    }

    #[test]
    fn crossings_are_symmetric(s in points(4, 10)) {
        let edges: Vec<Edge> = s.all_edges().collect();
        for &e in &edges {
            for &f in &edges {
                prop_assert_eq!(segments_cross(&s, e, f).unwrap(), segments_cross(&s, f, e).unwrap());
            }
        }
    }

    #[test]
    fn angular_sort_around_hull_vertices(s in points(4, 12), pick in any::<prop::sample::Index>()) {
        let hull = convex_hull(&s).unwrap();
        let center = hull[pick.index(hull.len())];
        let rest: Vec<usize> = (0..s.len()).filter(|&i| i != center).collect();
        let out = angular_sort(&s, center, &rest).unwrap();
        let mut sorted = out.clone();
        sorted.sort();
        prop_assert_eq!(sorted, rest);
        for w in out.windows(2) {
            prop_assert_eq!(s.orient(center, w[0], w[1]), Orientation::CounterClockwise);
        }
    }

    #[test]
    fn rooting_and_sorting_keep_edges(seq in (0usize..=8).prop_flat_map(|len| prop::collection::vec(0..len + 2, len)), root in any::<prop::sample::Index>()) {
        let t = from_pruefer(&seq).unwrap();
        let rt = root_at(&t, root.index(t.len())).unwrap();
        let sorted = sort_children_by_subtree_size(&rt, true);
        prop_assert_eq!(sorted.tree().edges(), t.edges());
        prop_assert_eq!(sorted.subtree_size(sorted.root()), t.len());
        for v in 0..t.len() {
            let sum: usize = sorted.children(v).iter().map(|&c| sorted.subtree_size(c)).sum();
            prop_assert_eq!(sorted.subtree_size(v), 1 + sum);
            let sizes: Vec<usize> = sorted.children(v).iter().map(|&c| sorted.subtree_size(c)).collect();
            prop_assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn canonical_form_ignores_labels(seq in (0usize..=7).prop_flat_map(|len| prop::collection::vec(0..len + 2, len)), shuffle in any::<u64>()) {
        let t = from_pruefer(&seq).unwrap();
        let k = t.len();
        let mut perm: Vec<usize> = (0..k).collect();
        let mut x = shuffle;
        for i in (1..k).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (x >> 33) as usize % (i + 1));
        }
        let relabeled: Vec<(usize, usize)> = t.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        let u = geoforbid::Tree::from_edges(k, &relabeled).unwrap();
        prop_assert_eq!(ahu_canonical(&t), ahu_canonical(&u));
    }

    #[test]
    fn recursive_embeddings_are_planar(s in points(5, 9), pick in any::<prop::sample::Index>(), root in any::<prop::sample::Index>()) {
        let trees = all_trees(s.len()).unwrap();
        let t = &trees[pick.index(trees.len())];
        let rt = root_at(t, root.index(t.len())).unwrap();
        let emb = embed_recursive_default(&rt, &s).unwrap();
        prop_assert_eq!(emb.crossings(), 0);
        prop_assert_eq!(embed_recursive_default(&rt, &s).unwrap(), emb);
    }

    #[test]
    fn single_edge_never_uses_the_edge(s in points(5, 9), pick in any::<prop::sample::Index>(), e in any::<prop::sample::Index>()) {
        let trees = all_trees(s.len()).unwrap();
        let t = &trees[pick.index(trees.len())];
        let edges: Vec<Edge> = s.all_edges().collect();
        let f = edges[e.index(edges.len())];
        let emb = embed_avoiding_single(t, &s, f).unwrap();
        prop_assert!(!emb.uses_edge(f));
        prop_assert_eq!(emb.crossings(), 0);
    }

    #[test]
    fn convex_two_edge_avoidance(n in 5usize..=9, seed in any::<u64>(), pick in any::<prop::sample::Index>(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>(), shift in 0usize..20) {
        let s = convex_position(n, seed).unwrap();
        let trees = all_trees(n).unwrap();
        let t = &trees[pick.index(trees.len())];
        let edges: Vec<Edge> = s.all_edges().collect();
        let (f1, f2) = (edges[a.index(edges.len())], edges[b.index(edges.len())]);
        let base = embed_few_hull_edges(t, &s).unwrap();
        prop_assert!(2 * base.hull_edges_used() < n);
        let rotated = rotate_embedding(&base, shift).unwrap();
        prop_assert_eq!(rotated.crossings(), 0);
        let emb = embed_convex_avoiding_two(t, &s, f1, f2).unwrap();
        prop_assert!(!emb.uses_edge(f1) && !emb.uses_edge(f2));
    }

    #[test]
    fn bounds_are_ordered(n in 5usize..=200, k in 3usize..=200) {
        prop_assume!(k <= n);
        prop_assert!(turan_lower_bound(n, k).unwrap() <= upper_bound_value(n, k).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 60, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn oracle_verdict_ignores_vertex_order(s in points(5, 7), pick in any::<prop::sample::Index>(), mask in any::<u32>()) {
        let trees = all_trees(s.len()).unwrap();
        let t = &trees[pick.index(trees.len())];
        let forbidden: EdgeSet = s.all_edges().enumerate().filter(|(i, _)| mask >> (i % 32) & 1 == 1).map(|(_, e)| e).collect();
        let base = exists_embedding(t, &s, &forbidden, DEFAULT_BUDGET).unwrap();
        for start in [0, t.len() - 1, t.len() / 2] {
            let options = SearchOptions { budget: DEFAULT_BUDGET, vertex_order: Some(t.bfs_order(start)) };
            let other = exists_embedding_with(t, &s, &forbidden, &options).unwrap();
            prop_assert_eq!(other.verdict, base.verdict);
            if let Some(w) = other.witness {
                prop_assert!(w.avoids(&forbidden));
                prop_assert_eq!(w.crossings(), 0);
            }
        }
    }

    #[test]
    fn forbidding_is_monotone(s in points(5, 7), pick in any::<prop::sample::Index>(), order in any::<u64>()) {
        let trees = all_trees(s.len()).unwrap();
        let t = &trees[pick.index(trees.len())];
        let mut edges: Vec<Edge> = s.all_edges().collect();
        let mut x = order;
        for i in (1..edges.len()).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            edges.swap(i, (x >> 33) as usize % (i + 1));
        }
        let mut chain = EdgeSet::new();
        let mut forbidden_yet = false;
        for e in edges {
            chain.insert(e);
            let now = forbids(&chain, t, &s).unwrap();
            prop_assert!(now || !forbidden_yet);
            forbidden_yet = now;
        }
        prop_assert!(forbidden_yet);
    }
}

#[test]
fn spider_shape_and_enumeration_membership() {
    for k in 2..=9 {
        let canon: HashSet<String> = all_trees(k).unwrap().iter().map(ahu_canonical).collect();
        let spider = spider_tree(k).unwrap();
        assert_eq!(spider.len(), k);
        assert_eq!(spider.edges().len(), k - 1);
        assert!(canon.contains(&ahu_canonical(&spider)));
        assert!(canon.contains(&ahu_canonical(&geoforbid::Tree::path(k).unwrap())));
        assert!(canon.contains(&ahu_canonical(&geoforbid::Tree::star(k).unwrap())));
        if k >= 5 && k % 2 == 1 {
            assert_eq!(spider.leaves().count(), (k - 1) / 2);
        }
    }
}

#[test]
fn tree_counts() {
    let counts: Vec<usize> = (2..=9).map(|k| all_trees(k).unwrap().len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 3, 6, 11, 23, 47]);
}

#[test]
#[ignore = "enumerates 10^8 Prüfer sequences"]
fn tree_count_ten() {
    assert_eq!(all_trees(10).unwrap().len(), 106);
}

#[test]
fn blanket_is_an_exact_level_cut() {
    for n in 5..=12 {
        let s = convex_position(n, 9).unwrap();
        for k in 3..=n {
            let b = r_edge_blanket(&s, k).unwrap();
            let r = b.params.r_threshold.unwrap();
            for e in s.all_edges() {
                assert_eq!(b.edges.contains(&e), edge_depth(&s, e).unwrap() <= r);
            }
        }
    }
    for n in 5..=30 {
        let s = convex_position(n, 1).unwrap();
        for k in 3..=n {
            let size = r_edge_blanket(&s, k).unwrap().edges.len() as i64;
            assert!(Rational::from_integer(size) <= upper_bound_value(n, k).unwrap(), "n={n} k={k}");
        }
    }
}

#[test]
fn three_consecutive_is_a_hull_path() {
    for n in 5..=12 {
        let s = convex_position(n, 4).unwrap();
        for start in 0..n {
            let c = three_consecutive_hull_edges(&s, start).unwrap();
            assert_eq!(c.edges.len(), 3);
            let mut degree = vec![0; n];
            for e in c.edges.iter() {
                assert_eq!(edge_depth(&s, e).unwrap(), 0);
                degree[e.a()] += 1;
                degree[e.b()] += 1;
            }
            assert_eq!(degree.iter().filter(|&&d| d == 1).count(), 2);
            assert_eq!(degree.iter().filter(|&&d| d == 2).count(), 2);
        }
    }
}

#[test]
fn oracle_agrees_with_constructions_on_small_sets() {
    for n in 5..=9 {
        let s = convex_position(n, 1).unwrap();
        let c = three_consecutive_hull_edges(&s, 2).unwrap();
        assert!(forbids(&c.edges, &c.target_tree, &s).unwrap(), "n={n}");
    }
}
