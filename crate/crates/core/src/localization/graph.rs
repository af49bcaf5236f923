//! Decorated trees indexing the circle-fixed loci of genus-zero stable maps
//! to the line.

use std::collections::BTreeMap;

use serde::Serialize;

/// A decorated tree: vertex labels in `{1, 2}`, edges with covering degrees,
/// and the vertex carrying each marked point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DecoratedGraph {
    pub labels: Vec<u8>,
    /// `(a, b, degree)` with `a < b`.
    pub edges: Vec<(usize, usize, u32)>,
    /// `markings[i]` is the vertex of marking `i + 1`.
    pub markings: Vec<usize>,
}

/// A graph class with its automorphism count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphClass {
    pub graph: DecoratedGraph,
    pub automorphisms: u64,
}

impl DecoratedGraph {
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn degree(&self) -> u32 {
        self.edges.iter().map(|e| e.2).sum()
    }

    /// `(neighbour, degree)` pairs at `v`.
    pub fn incident(&self, v: usize) -> Vec<(usize, u32)> {
        self.edges
            .iter()
            .filter_map(|&(a, b, d)| {
                if a == v {
                    Some((b, d))
                } else if b == v {
                    Some((a, d))
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn valence(&self, v: usize) -> usize {
        self.incident(v).len()
    }

    /// Marking indices (0-based) sitting on `v`.
    pub fn markings_at(&self, v: usize) -> Vec<usize> {
        (0..self.markings.len()).filter(|&i| self.markings[i] == v).collect()
    }

    /// Tree, proper labels, positive degrees, markings on existing vertices.
    pub fn is_valid(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 || self.edges.len() + 1 != n {
            return false;
        }
        if self.labels.iter().any(|l| !matches!(l, 1 | 2)) {
            return false;
        }
        if self.markings.iter().any(|&m| m >= n) {
            return false;
        }
        for &(a, b, d) in &self.edges {
            if a >= n || b >= n || a == b || d == 0 || self.labels[a] == self.labels[b] {
                return false;
            }
        }
        // Connected with n - 1 edges means tree.
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for (w, _) in self.incident(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Centre of the tree, preferring the label-1 end of a central edge.
    /// Every automorphism fixes it because adjacent labels differ.
    fn root(&self) -> usize {
        let n = self.vertex_count();
        let mut remaining: Vec<bool> = vec![true; n];
        let mut deg: Vec<usize> = (0..n).map(|v| self.valence(v)).collect();
        let mut left = n;
        let mut leaves: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
        while left > 2 {
            let mut next = Vec::new();
            for &leaf in &leaves {
                remaining[leaf] = false;
                left -= 1;
                for (w, _) in self.incident(leaf) {
                    if remaining[w] {
                        deg[w] -= 1;
                        if deg[w] == 1 {
                            next.push(w);
                        }
                    }
                }
            }
            leaves = next;
        }
        let centres: Vec<usize> = (0..n).filter(|&v| remaining[v]).collect();
        *centres
            .iter()
            .min_by_key(|&&v| self.labels[v])
            .expect("a tree has a centre")
    }

    fn rooted_code(&self, v: usize, parent: Option<usize>) -> String {
        let mut children: Vec<String> = self
            .incident(v)
            .into_iter()
            .filter(|&(w, _)| Some(w) != parent)
            .map(|(w, d)| format!("{}:{}", d, self.rooted_code(w, Some(v))))
            .collect();
        children.sort();
        format!("({}{:?}{})", self.labels[v], self.markings_at(v), children.concat())
    }

    /// Isomorphism invariant: equal codes iff isomorphic decorated graphs.
    pub fn canonical_code(&self) -> String {
        self.rooted_code(self.root(), None)
    }

    fn rooted_aut(&self, v: usize, parent: Option<usize>) -> u64 {
        let mut groups: BTreeMap<String, u64> = BTreeMap::new();
        let mut product = 1u64;
        for (w, d) in self.incident(v) {
            if Some(w) == parent {
                continue;
            }
            product *= self.rooted_aut(w, Some(v));
            *groups.entry(format!("{}:{}", d, self.rooted_code(w, Some(v)))).or_default() += 1;
        }
        groups.values().fold(product, |acc, &k| acc * (1..=k).product::<u64>())
    }

    /// `|Aut|` by recursion over the canonically rooted tree.
    pub fn automorphism_count(&self) -> u64 {
        self.rooted_aut(self.root(), None)
    }

    /// `|Aut|` by testing every vertex permutation.
    pub fn automorphism_count_brute_force(&self) -> u64 {
        let n = self.vertex_count();
        let edge_set: BTreeMap<(usize, usize), u32> = self
            .edges
            .iter()
            .map(|&(a, b, d)| ((a.min(b), a.max(b)), d))
            .collect();
        let mut count = 0;
        for_each_permutation(n, &mut |p| {
            let ok = (0..n).all(|v| self.labels[p[v]] == self.labels[v])
                && self.markings.iter().all(|&m| p[m] == m)
                && self.edges.iter().all(|&(a, b, d)| {
                    let (x, y) = (p[a].min(p[b]), p[a].max(p[b]));
                    edge_set.get(&(x, y)) == Some(&d)
                });
            if ok {
                count += 1;
            }
        });
        count
    }

    /// Isomorphic copy with vertices numbered breadth-first from the root.
    pub fn canonical_form(&self) -> DecoratedGraph {
        let root = self.root();
        let mut order = vec![root];
        let mut parent = vec![None; self.vertex_count()];
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            let mut children: Vec<(String, usize)> = self
                .incident(v)
                .into_iter()
                .filter(|&(w, _)| Some(w) != parent[v])
                .map(|(w, d)| (format!("{}:{}", d, self.rooted_code(w, Some(v))), w))
                .collect();
            children.sort();
            for (_, w) in children {
                parent[w] = Some(v);
                order.push(w);
            }
            i += 1;
        }
        let mut new_index = vec![0; self.vertex_count()];
        for (k, &v) in order.iter().enumerate() {
            new_index[v] = k;
        }
        let mut edges: Vec<(usize, usize, u32)> = self
            .edges
            .iter()
            .map(|&(a, b, d)| {
                let (x, y) = (new_index[a], new_index[b]);
                (x.min(y), x.max(y), d)
            })
            .collect();
        edges.sort();
        DecoratedGraph {
            labels: order.iter().map(|&v| self.labels[v]).collect(),
            edges,
            markings: self.markings.iter().map(|&m| new_index[m]).collect(),
        }
    }
}

fn for_each_permutation(n: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(k: usize, p: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            go(k + 1, p, f);
            p.swap(k, i);
        }
    }
    let mut p: Vec<usize> = (0..n).collect();
    go(0, &mut p, f);
}

/// Labelled trees on `n` vertices from Prüfer sequences.
fn labelled_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 1 {
        return vec![Vec::new()];
    }
    if n == 2 {
        return vec![vec![(0, 1)]];
    }
    let mut out = Vec::new();
    let total = n.pow((n - 2) as u32);
    for code in 0..total {
        let mut seq = Vec::with_capacity(n - 2);
        let mut c = code;
        for _ in 0..n - 2 {
            seq.push(c % n);
            c /= n;
        }
        let mut degree = vec![1usize; n];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &s in &seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).expect("leaf exists");
            edges.push((leaf.min(s), leaf.max(s)));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        out.push(edges);
    }
    out
}

/// Compositions of `total` into `parts` positive integers.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every labelled decorated graph with `n` markings and degree `d`; each
/// isomorphism class of `V` vertices appears `V!/|Aut|` times.
pub fn labeled_graphs(n: usize, d: u32) -> Vec<DecoratedGraph> {
    let mut out = Vec::new();
    let max_vertices = d as usize + 1;
    let min_vertices = if d == 0 { 1 } else { 2 };
    for v in min_vertices..=max_vertices {
        for tree in labelled_trees(v) {
            // Proper two-colourings: fix the colour of vertex 0.
            let mut colour = vec![0u8; v];
            let mut stack = vec![0usize];
            let mut seen = vec![false; v];
            seen[0] = true;
            colour[0] = 1;
            while let Some(x) = stack.pop() {
                for &(a, b) in &tree {
                    let y = if a == x { b } else if b == x { a } else { continue };
                    if !seen[y] {
                        seen[y] = true;
                        colour[y] = 3 - colour[x];
                        stack.push(y);
                    }
                }
            }
            let flipped: Vec<u8> = colour.iter().map(|c| 3 - c).collect();
            for labels in [colour.clone(), flipped] {
                for degrees in compositions(d, v - 1) {
                    let edges: Vec<(usize, usize, u32)> = tree
                        .iter()
                        .zip(&degrees)
                        .map(|(&(a, b), &k)| (a, b, k))
                        .collect();
                    let maps = v.pow(n as u32);
                    for code in 0..maps {
                        let mut markings = Vec::with_capacity(n);
                        let mut c = code;
                        for _ in 0..n {
                            markings.push(c % v);
                            c /= v;
                        }
                        out.push(DecoratedGraph {
                            labels: labels.clone(),
                            edges: edges.clone(),
                            markings,
                        });
                    }
                }
            }
        }
    }
    out
}

/// One representative per isomorphism class, in a deterministic order.
pub fn enumerate_graphs(n: usize, d: u32) -> Vec<GraphClass> {
    let mut classes: BTreeMap<String, DecoratedGraph> = BTreeMap::new();
    for g in labeled_graphs(n, d) {
        classes.entry(g.canonical_code()).or_insert_with(|| g.canonical_form());
    }
    classes
        .into_values()
        .map(|graph| {
            let automorphisms = graph.automorphism_count();
            GraphClass { graph, automorphisms }
        })
        .collect()
}

/// Graph classes as JSON.
pub fn graphs_to_json(classes: &[GraphClass]) -> serde_json::Value {
    serde_json::to_value(classes).expect("graph classes are serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: usize) -> u64 {
        (1..=n as u64).product()
    }

    #[test]
    fn degree_one_no_markings() {
        let g = enumerate_graphs(0, 1);
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].automorphisms, 1);
        let mut labels = g[0].graph.labels.clone();
        labels.sort();
        assert_eq!(labels, vec![1, 2]);
    }

    #[test]
    fn degree_two_no_markings() {
        let g = enumerate_graphs(0, 2);
        assert_eq!(g.len(), 3);
        let mut auts: Vec<u64> = g.iter().map(|c| c.automorphisms).collect();
        auts.sort();
        assert_eq!(auts, vec![1, 2, 2]);
    }

    #[test]
    fn degree_one_one_marking() {
        let g = enumerate_graphs(1, 1);
        assert_eq!(g.len(), 2);
        assert!(g.iter().all(|c| c.automorphisms == 1));
        let mut marked: Vec<u8> = g.iter().map(|c| c.graph.labels[c.graph.markings[0]]).collect();
        marked.sort();
        assert_eq!(marked, vec![1, 2]);
    }

    #[test]
    fn star_automorphisms() {
        let star = DecoratedGraph {
            labels: vec![1, 2, 2, 2],
            edges: vec![(0, 1, 1), (0, 2, 1), (0, 3, 1)],
            markings: vec![],
        };
        assert!(star.is_valid());
        assert_eq!(star.automorphism_count(), 6);
        assert_eq!(star.automorphism_count_brute_force(), 6);
        let marked = DecoratedGraph { markings: vec![1], ..star };
        assert_eq!(marked.automorphism_count(), 2);
        assert_eq!(marked.automorphism_count_brute_force(), 2);
    }

    #[test]
    fn canonical_and_brute_force_agree() {
        for d in 0..=4 {
            for n in 0..=2 {
                for c in enumerate_graphs(n, d) {
                    assert!(c.graph.is_valid());
                    assert_eq!(c.automorphisms, c.graph.automorphism_count_brute_force());
                }
            }
        }
    }

    #[test]
    fn orbit_counting() {
        // Each class of V vertices has V!/|Aut| labelled copies.
        for d in 1..=3 {
            for n in 0..=2 {
                let labelled = labeled_graphs(n, d);
                let classes = enumerate_graphs(n, d);
                let mut by_code: BTreeMap<String, u64> = BTreeMap::new();
                for g in &labelled {
                    *by_code.entry(g.canonical_code()).or_default() += 1;
                }
                assert_eq!(by_code.len(), classes.len());
                for c in &classes {
                    let v = c.graph.vertex_count();
                    assert_eq!(by_code[&c.graph.canonical_code()] * c.automorphisms, factorial(v));
                }
            }
        }
    }

    #[test]
    fn degree_zero_is_a_single_vertex() {
        let g = enumerate_graphs(2, 0);
        assert_eq!(g.len(), 2);
        assert!(g.iter().all(|c| c.graph.vertex_count() == 1 && c.automorphisms == 1));
    }

    #[test]
    fn json_export() {
        let j = graphs_to_json(&enumerate_graphs(0, 1));
        assert_eq!(j[0]["automorphisms"], 1);
        assert_eq!(j[0]["graph"]["edges"][0][2], 1);
    }
}
