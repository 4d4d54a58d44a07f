//! Abstract trees, rootings, spider trees and isomorphism classes.

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::TreeError;

/// Largest `k` accepted by [`all_trees`].
pub const MAX_ENUMERATED_K: usize = 10;

/// An unrooted tree on vertices `0..k`. Adjacency lists are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tree {
    adjacency: Vec<Vec<usize>>,
}

impl Tree {
    pub fn from_edges(k: usize, edges: &[(usize, usize)]) -> Result<Self, TreeError> {
        if k == 0 {
            return Err(TreeError::Empty);
        }
        if edges.len() != k - 1 {
            return Err(TreeError::EdgeCount { expected: k - 1, got: edges.len() });
        }
        let mut adjacency = vec![Vec::new(); k];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= k {
                    return Err(TreeError::VertexOutOfRange { vertex: w, k });
                }
            }
            if u == v {
                return Err(TreeError::SelfLoop(u));
            }
            if adjacency[u].contains(&v) {
                return Err(TreeError::ParallelEdge(u.min(v), u.max(v)));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let tree = Tree { adjacency };
        if tree.bfs_order(0).len() != k {
            return Err(TreeError::Disconnected);
        }
        Ok(tree)
    }

    pub fn path(k: usize) -> Result<Self, TreeError> {
        let edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        Tree::from_edges(k, &edges)
    }

    /// Star with center 0.
    pub fn star(k: usize) -> Result<Self, TreeError> {
        let edges: Vec<_> = (1..k).map(|i| (0, i)).collect();
        Tree::from_edges(k, &edges)
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn leaves(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&v| self.degree(v) <= 1)
    }

    pub fn is_path(&self) -> bool {
        self.adjacency.iter().all(|ns| ns.len() <= 2)
    }

    pub fn is_star(&self) -> bool {
        let k = self.len();
        k <= 2 || self.adjacency.iter().any(|ns| ns.len() == k - 1)
    }

    pub fn max_degree_vertex(&self) -> usize {
        (0..self.len())
            .max_by_key(|&v| (self.degree(v), std::cmp::Reverse(v)))
            .unwrap_or(0)
    }

    /// Breadth-first order from `start`, neighbors visited in index order.
    pub fn bfs_order(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut order = Vec::with_capacity(self.len());
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        order
    }

    /// One or two centers, found by peeling leaves.
    pub fn centers(&self) -> Vec<usize> {
        let k = self.len();
        if k <= 2 {
            return (0..k).collect();
        }
        let mut degree: Vec<usize> = self.adjacency.iter().map(Vec::len).collect();
        let mut layer: Vec<usize> = (0..k).filter(|&v| degree[v] == 1).collect();
        let mut remaining = k;
        while remaining > 2 {
            remaining -= layer.len();
            let mut next = Vec::new();
            for &leaf in &layer {
                for &w in &self.adjacency[leaf] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
            layer = next;
        }
        layer.sort_unstable();
        layer
    }
}

#[derive(Serialize, Deserialize)]
struct TreeJson {
    k: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for Tree {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TreeJson {
            k: self.len(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Tree {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = TreeJson::deserialize(deserializer)?;
        let edges: Vec<_> = raw.edges.iter().map(|&[u, v]| (u, v)).collect();
        Tree::from_edges(raw.k, &edges).map_err(serde::de::Error::custom)
    }
}

/// A tree with a root and an explicit order on every children list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    tree: Tree,
    root: usize,
    children: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
    subtree_size: Vec<usize>,
}

impl RootedTree {
    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn subtree_size(&self, v: usize) -> usize {
        self.subtree_size[v]
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v].is_empty()
    }

    /// Replaces the order of `v`'s children. `order` must be a permutation.
    pub fn set_children_order(&mut self, v: usize, order: Vec<usize>) -> Result<(), TreeError> {
        let mut a = order.clone();
        let mut b = self.children[v].clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Err(TreeError::BadChildOrder(v));
        }
        self.children[v] = order;
        Ok(())
    }

    /// `v` and all of its descendants, preorder.
    pub fn subtree_vertices(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.subtree_size[v]);
        let mut stack = vec![v];
        while let Some(w) = stack.pop() {
            out.push(w);
            stack.extend(self.children[w].iter().rev());
        }
        out
    }
}

/// Roots `t` at `v`; children start in ascending index order.
pub fn root_at(t: &Tree, v: usize) -> Result<RootedTree, TreeError> {
    let k = t.len();
    if v >= k {
        return Err(TreeError::VertexOutOfRange { vertex: v, k });
    }
    let order = t.bfs_order(v);
    let mut parent = vec![None; k];
    let mut children = vec![Vec::new(); k];
    let mut seen = vec![false; k];
    seen[v] = true;
    for &u in &order {
        for &w in t.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(u);
                children[u].push(w);
            }
        }
    }
    let mut subtree_size = vec![1; k];
    for &u in order.iter().rev() {
        if let Some(p) = parent[u] {
            subtree_size[p] += subtree_size[u];
        }
    }
    Ok(RootedTree {
        tree: t.clone(),
        root: v,
        children,
        parent,
        subtree_size,
    })
}

/// Reorders every children list by subtree size; ties go to the smaller index.
pub fn sort_children_by_subtree_size(rt: &RootedTree, ascending: bool) -> RootedTree {
    let mut out = rt.clone();
    for list in &mut out.children {
        list.sort_by(|&a, &b| {
            let by_size = rt.subtree_size[a].cmp(&rt.subtree_size[b]);
            let by_size = if ascending { by_size } else { by_size.reverse() };
            by_size.then(a.cmp(&b))
        });
    }
    out
}

/// The spider `T_n`: vertex 0 is the center. Odd `n` has `(n - 1) / 2` legs of
/// length two; even `n > 2` additionally subdivides the center edge of the
/// first leg with the new vertex `n - 1`.
pub fn spider_tree(n: usize) -> Result<Tree, TreeError> {
    if n < 2 {
        return Err(TreeError::UnsupportedSize { got: n, min: 2, max: usize::MAX });
    }
    if n == 2 {
        return Tree::from_edges(2, &[(0, 1)]);
    }
    let odd = if n % 2 == 1 { n } else { n - 1 };
    let mut edges = Vec::with_capacity(n - 1);
    for leg in 0..(odd - 1) / 2 {
        let head = 1 + 2 * leg;
        edges.push((0, head));
        edges.push((head, head + 1));
    }
    if n.is_multiple_of(2) {
        edges[0] = (0, n - 1);
        edges.push((n - 1, 1));
    }
    Tree::from_edges(n, &edges)
}

fn encode_rooted(t: &Tree, v: usize, parent: Option<usize>) -> Vec<u8> {
    let mut parts: Vec<Vec<u8>> = t
        .neighbors(v)
        .iter()
        .filter(|&&w| Some(w) != parent)
        .map(|&w| encode_rooted(t, w, Some(v)))
        .collect();
    parts.sort_unstable();
    let mut out = Vec::with_capacity(2 * t.len());
    out.push(b'(');
    for p in parts {
        out.extend_from_slice(&p);
    }
    out.push(b')');
    out
}

fn canonical_bytes(t: &Tree) -> Vec<u8> {
    t.centers()
        .into_iter()
        .map(|c| encode_rooted(t, c, None))
        .min()
        .unwrap_or_default()
}

/// AHU encoding rooted at the center (the smaller encoding for bicentral
/// trees): each vertex is `(` followed by its children's encodings in sorted
/// order, then `)`. Equal strings iff isomorphic trees.
pub fn ahu_canonical(t: &Tree) -> String {
    String::from_utf8(canonical_bytes(t)).expect("ascii parentheses")
}

/// Decodes a Prüfer sequence over `0..seq.len() + 2`.
pub fn from_pruefer(seq: &[usize]) -> Result<Tree, TreeError> {
    let k = seq.len() + 2;
    if let Some(&bad) = seq.iter().find(|&&x| x >= k) {
        return Err(TreeError::VertexOutOfRange { vertex: bad, k });
    }
    let mut degree = vec![1usize; k];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(k - 1);
    for &x in seq {
        let leaf = (0..k).find(|&v| degree[v] == 1).expect("a leaf always exists");
        edges.push((leaf, x));
        degree[leaf] = 0;
        degree[x] -= 1;
    }
    let mut last = (0..k).filter(|&v| degree[v] == 1);
    let (u, v) = (last.next().unwrap(), last.next().unwrap());
    edges.push((u, v));
    Tree::from_edges(k, &edges)
}

fn enumerate_trees(k: usize) -> Vec<Tree> {
    let len = k - 2;
    let mut seq = vec![0usize; len];
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut out = Vec::new();
    loop {
        let t = from_pruefer(&seq).expect("valid sequence");
        if seen.insert(canonical_bytes(&t)) {
            out.push(t);
        }
        // odometer increment, last position fastest
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            seq[pos] += 1;
            if seq[pos] < k {
                break;
            }
            seq[pos] = 0;
        }
    }
}

/// One representative per isomorphism class of trees on `k` vertices, in
/// order of first appearance among Prüfer sequences in lexicographic order.
pub fn all_trees(k: usize) -> Result<&'static [Tree], TreeError> {
    static CACHE: [OnceLock<Vec<Tree>>; MAX_ENUMERATED_K + 1] = [const { OnceLock::new() }; MAX_ENUMERATED_K + 1];
    if !(2..=MAX_ENUMERATED_K).contains(&k) {
        return Err(TreeError::UnsupportedSize { got: k, min: 2, max: MAX_ENUMERATED_K });
    }
    Ok(CACHE[k].get_or_init(|| enumerate_trees(k)))
}
