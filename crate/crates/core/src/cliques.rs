//! Maximal clique enumeration (Bron–Kerbosch with Tomita pivoting).

use alloc::vec::Vec;

use crate::set::ElementSet;

/// Adjacency sets of a simple undirected graph on `0..n`.
pub(crate) struct Graph {
    adj: Vec<ElementSet>,
}

impl Graph {
    pub(crate) fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = alloc::vec![ElementSet::empty(n); n];
        for &(u, v) in edges {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Graph { adj }
    }

    pub(crate) fn complement(&self) -> Self {
        let n = self.adj.len();
        let adj = (0..n)
            .map(|v| {
                let mut s = ElementSet::full(n).difference(&self.adj[v]);
                s.remove(v);
                s
            })
            .collect();
        Graph { adj }
    }

    /// Every maximal clique, sorted lexicographically.
    pub(crate) fn maximal_cliques(&self) -> Vec<ElementSet> {
        let n = self.adj.len();
        let mut out = Vec::new();
        self.expand(ElementSet::empty(n), ElementSet::full(n), ElementSet::empty(n), &mut out);
        out.sort();
        out
    }

    fn expand(&self, r: ElementSet, mut p: ElementSet, mut x: ElementSet, out: &mut Vec<ElementSet>) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r);
            }
            return;
        }
        // Pivot on the vertex of P ∪ X with the most neighbours in P; the
        // first such vertex in label order keeps the recursion deterministic.
        let pivot = p
            .union(&x)
            .iter()
            .max_by(|&a, &b| {
                let (da, db) = (self.adj[a].intersection_len(&p), self.adj[b].intersection_len(&p));
                da.cmp(&db).then(b.cmp(&a))
            })
            .expect("P is non-empty");
        let candidates = p.difference(&self.adj[pivot]);
        for v in candidates.iter() {
            let mut r2 = r.clone();
            r2.insert(v);
            self.expand(r2, p.intersection(&self.adj[v]), x.intersection(&self.adj[v]), out);
            p.remove(v);
            x.insert(v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cycle(n: usize) -> Vec<(usize, usize)> {
        (0..n).map(|i| (i, (i + 1) % n)).collect()
    }

    #[test]
    fn five_cycle_cliques_are_edges() {
        let got: Vec<Vec<usize>> =
            Graph::new(5, &cycle(5)).maximal_cliques().iter().map(ElementSet::to_vec).collect();
        assert_eq!(got, vec![vec![0, 1], vec![0, 4], vec![1, 2], vec![2, 3], vec![3, 4]]);
    }

    #[test]
    fn isolated_vertices_are_cliques() {
        let got: Vec<Vec<usize>> =
            Graph::new(3, &[]).maximal_cliques().iter().map(ElementSet::to_vec).collect();
        assert_eq!(got, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn matches_brute_force_on_all_graphs_with_five_vertices() {
        let pairs: Vec<(usize, usize)> =
            (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        for edge_mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<_> =
                pairs.iter().enumerate().filter(|(i, _)| edge_mask >> i & 1 == 1).map(|(_, e)| *e).collect();
            let g = Graph::new(5, &edges);
            let adjacent = |u: usize, v: usize| edges.contains(&(u.min(v), u.max(v)));
            let is_clique = |m: u64| {
                (0..5).all(|u| (0..5).all(|v| u == v || m >> u & 1 == 0 || m >> v & 1 == 0 || adjacent(u, v)))
            };
            let mut expected: Vec<ElementSet> = (1u64..32)
                .filter(|&m| is_clique(m))
                .filter(|&m| (0..5).all(|v| m >> v & 1 == 1 || !is_clique(m | 1 << v)))
                .map(|m| ElementSet::from_mask(5, m))
                .collect();
            expected.sort();
            assert_eq!(g.maximal_cliques(), expected, "edges {edges:?}");
        }
    }
}
