//! Decorated trees indexing the torus-fixed loci of `M_{0,n}(P^r, d)`.
//!
//! A fixed stable map is a tree whose edges are `d_e`-fold covers of
//! coordinate lines and whose vertices sit at coordinate points. Trees are
//! enumerated by brute force over shapes, labelings and degree splits, then
//! deduplicated through a canonical form: the tree is rooted at its center
//! (or central edge) and encoded as a sorted nested structure, which also
//! yields the automorphism count.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FixedGraph {
    labels: Vec<usize>,
    edges: Vec<(usize, usize, u32)>,
    mark: Option<usize>,
    automorphisms: u64,
}

impl FixedGraph {
    /// Builds a graph and computes its automorphism order.
    pub fn new(
        labels: Vec<usize>,
        edges: Vec<(usize, usize, u32)>,
        mark: Option<usize>,
    ) -> Result<Self> {
        let mut g = Self {
            labels,
            edges,
            mark,
            automorphisms: 1,
        };
        g.check_shape()?;
        g.automorphisms = g.canonical_form().automorphisms();
        Ok(g)
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> usize {
        self.labels[v]
    }

    pub fn edges(&self) -> &[(usize, usize, u32)] {
        &self.edges
    }

    pub fn mark(&self) -> Option<usize> {
        self.mark
    }

    pub fn automorphism_order(&self) -> u64 {
        self.automorphisms
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Total degree `sum d_e`.
    pub fn degree(&self) -> u32 {
        self.edges.iter().map(|e| e.2).sum()
    }

    pub fn valence(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == v || e.1 == v).count()
    }

    /// `(neighbor, edge degree)` for every edge at `v`.
    pub fn flags(&self, v: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.edges.iter().filter_map(move |&(a, b, d)| {
            if a == v {
                Some((b, d))
            } else if b == v {
                Some((a, d))
            } else {
                None
            }
        })
    }

    fn adjacency(&self) -> Vec<Vec<(usize, u32)>> {
        let mut adj = vec![Vec::new(); self.labels.len()];
        for &(a, b, d) in &self.edges {
            adj[a].push((b, d));
            adj[b].push((a, d));
        }
        adj
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.labels.len();
        if n == 0 || self.edges.len() + 1 != n {
            return Err(Error::Cache(format!(
                "{n} vertices and {} edges do not form a tree",
                self.edges.len()
            )));
        }
        if let Some(m) = self.mark {
            if m >= n {
                return Err(Error::Cache(format!("mark on missing vertex {m}")));
            }
        }
        for &(a, b, d) in &self.edges {
            if a >= n || b >= n || d == 0 {
                return Err(Error::Cache(format!("bad edge ({a}, {b}, {d})")));
            }
            if self.labels[a] == self.labels[b] {
                return Err(Error::Cache(format!("edge ({a}, {b}) joins equal labels")));
            }
        }
        // connectivity, which with n - 1 edges means a tree
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(w, _) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            Ok(())
        } else {
            Err(Error::Cache("graph is disconnected".into()))
        }
    }

    /// Full structural check against the moduli space it claims to index,
    /// including the stored automorphism order.
    pub fn validate(&self, r: usize, d: u32, marks: u32) -> Result<()> {
        self.check_shape()?;
        if self.labels.iter().any(|&l| l > r) {
            return Err(Error::Cache(format!("label exceeds P^{r}")));
        }
        if self.degree() != d {
            return Err(Error::Cache(format!(
                "degree {} instead of {d}",
                self.degree()
            )));
        }
        if self.mark.is_some() != (marks == 1) {
            return Err(Error::Cache("marked point does not match".into()));
        }
        let aut = self.canonical_form().automorphisms();
        if aut != self.automorphisms {
            return Err(Error::Cache(format!(
                "stored automorphism order {} but the graph has {aut}",
                self.automorphisms
            )));
        }
        Ok(())
    }

    pub(crate) fn canonical_form(&self) -> Canonical {
        let adj = self.adjacency();
        let centers = tree_centers(&adj);
        let code = |root: usize, parent: Option<usize>| self.rooted_code(&adj, root, parent);
        match centers.as_slice() {
            [c] => Canonical::Central(code(*c, None)),
            [a, b] => {
                let deg = adj[*a]
                    .iter()
                    .find(|(w, _)| w == b)
                    .map(|e| e.1)
                    .unwrap_or(0);
                let (x, y) = (code(*a, Some(*b)), code(*b, Some(*a)));
                if x <= y {
                    Canonical::Bicentral(deg, x, y)
                } else {
                    Canonical::Bicentral(deg, y, x)
                }
            }
            _ => unreachable!("a tree has one or two centers"),
        }
    }

    fn rooted_code(
        &self,
        adj: &[Vec<(usize, u32)>],
        v: usize,
        parent: Option<usize>,
    ) -> RootedCode {
        let mut children: Vec<(u32, RootedCode)> = adj[v]
            .iter()
            .filter(|(w, _)| Some(*w) != parent)
            .map(|&(w, d)| (d, self.rooted_code(adj, w, Some(v))))
            .collect();
        children.sort();
        RootedCode {
            label: self.labels[v],
            marked: self.mark == Some(v),
            children,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct RootedCode {
    label: usize,
    marked: bool,
    children: Vec<(u32, RootedCode)>,
}

impl RootedCode {
    fn automorphisms(&self) -> u64 {
        let mut aut: u64 = self
            .children
            .iter()
            .map(|(_, c)| c.automorphisms())
            .product();
        // children are sorted, so equal subtrees are adjacent
        let mut run = 1u64;
        for w in self.children.windows(2) {
            if w[0] == w[1] {
                run += 1;
                aut *= run;
            } else {
                run = 1;
            }
        }
        aut
    }

    fn emit(
        &self,
        labels: &mut Vec<usize>,
        edges: &mut Vec<(usize, usize, u32)>,
        mark: &mut Option<usize>,
    ) -> usize {
        let me = labels.len();
        labels.push(self.label);
        if self.marked {
            *mark = Some(me);
        }
        for (d, child) in &self.children {
            let c = child.emit(labels, edges, mark);
            edges.push((me, c, *d));
        }
        me
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Canonical {
    Central(RootedCode),
    Bicentral(u32, RootedCode, RootedCode),
}

impl Canonical {
    fn automorphisms(&self) -> u64 {
        match self {
            Canonical::Central(c) => c.automorphisms(),
            Canonical::Bicentral(_, a, b) if a == b => 2 * a.automorphisms() * b.automorphisms(),
            Canonical::Bicentral(_, a, b) => a.automorphisms() * b.automorphisms(),
        }
    }

    /// Graph with vertices numbered in preorder of the canonical code.
    fn to_graph(&self) -> FixedGraph {
        let (mut labels, mut edges, mut mark) = (Vec::new(), Vec::new(), None);
        match self {
            Canonical::Central(c) => {
                c.emit(&mut labels, &mut edges, &mut mark);
            }
            Canonical::Bicentral(d, a, b) => {
                let x = a.emit(&mut labels, &mut edges, &mut mark);
                let y = b.emit(&mut labels, &mut edges, &mut mark);
                edges.push((x, y, *d));
            }
        }
        edges.sort();
        FixedGraph {
            labels,
            edges,
            mark,
            automorphisms: self.automorphisms(),
        }
    }
}

fn tree_centers(adj: &[Vec<(usize, u32)>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut leaves: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= leaves.len();
        let mut next = Vec::new();
        for &v in &leaves {
            deg[v] = 0;
            for &(w, _) in &adj[v] {
                if deg[w] > 0 {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        leaves = next;
    }
    leaves.sort_unstable();
    leaves
}

/// Parent arrays (`parent[k] < k`) of pairwise non-isomorphic trees with
/// `edges` edges.
fn tree_shapes(edges: usize) -> Vec<Vec<usize>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut parent = vec![0usize; edges + 1];
    fn rec(
        k: usize,
        parent: &mut Vec<usize>,
        seen: &mut BTreeSet<Canonical>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == parent.len() {
            let g = FixedGraph {
                labels: vec![0; parent.len()],
                edges: (1..parent.len()).map(|v| (parent[v], v, 1)).collect(),
                mark: None,
                automorphisms: 1,
            };
            if seen.insert(g.canonical_form()) {
                out.push(parent.clone());
            }
            return;
        }
        for p in 0..k {
            parent[k] = p;
            rec(k + 1, parent, seen, out);
        }
    }
    rec(1, &mut parent, &mut seen, &mut out);
    out
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return if total >= 1 {
            vec![vec![total]]
        } else {
            vec![]
        };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts as u32 - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn colorings(parent: &[usize], r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; parent.len()];
    fn rec(
        k: usize,
        parent: &[usize],
        r: usize,
        labels: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == parent.len() {
            out.push(labels.clone());
            return;
        }
        for c in 0..=r {
            if k == 0 || c != labels[parent[k]] {
                labels[k] = c;
                rec(k + 1, parent, r, labels, out);
            }
        }
    }
    rec(0, parent, r, &mut labels, &mut out);
    out
}

/// All fixed-point graphs of `M_{0,marks}(P^r, d)`, one per isomorphism
/// class, in canonical order.
pub fn enumerate_graphs(r: usize, d: u32, marks: u32) -> Result<Vec<FixedGraph>> {
    if d == 0 {
        return Err(Error::InvalidConfig(
            "fixed-point graphs need degree >= 1".into(),
        ));
    }
    if r == 0 {
        return Err(Error::InvalidConfig(
            "ambient dimension must be at least 1".into(),
        ));
    }
    if marks > 1 {
        return Err(Error::Unsupported("at most one marked point".into()));
    }
    let mut found: BTreeMap<Canonical, ()> = BTreeMap::new();
    for e in 1..=d as usize {
        let splits = compositions(d, e);
        for parent in tree_shapes(e) {
            let tree_edges: Vec<(usize, usize)> = (1..=e).map(|v| (parent[v], v)).collect();
            for labels in colorings(&parent, r) {
                for split in &splits {
                    let edges: Vec<(usize, usize, u32)> = tree_edges
                        .iter()
                        .zip(split)
                        .map(|(&(a, b), &deg)| (a, b, deg))
                        .collect();
                    let mark_choices: Vec<Option<usize>> = if marks == 0 {
                        vec![None]
                    } else {
                        (0..=e).map(Some).collect()
                    };
                    for mark in mark_choices {
                        let g = FixedGraph {
                            labels: labels.clone(),
                            edges: edges.clone(),
                            mark,
                            automorphisms: 1,
                        };
                        found.insert(g.canonical_form(), ());
                    }
                }
            }
        }
    }
    Ok(found.keys().map(Canonical::to_graph).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_line() {
        let gs = enumerate_graphs(1, 1, 0).unwrap();
        assert_eq!(gs.len(), 1);
        assert_eq!(gs[0].edges(), &[(0, 1, 1)]);
        assert_eq!(gs[0].automorphism_order(), 1);
    }

    #[test]
    fn double_covers_of_p1() {
        let gs = enumerate_graphs(1, 2, 0).unwrap();
        assert_eq!(gs.len(), 3);
        let mut auts: Vec<u64> = gs.iter().map(FixedGraph::automorphism_order).collect();
        auts.sort();
        assert_eq!(auts, vec![1, 2, 2]);
        let single: Vec<_> = gs.iter().filter(|g| g.edges().len() == 1).collect();
        assert_eq!(single.len(), 1);
        assert_eq!(single[0].edges()[0].2, 2);
        // the two paths 0-1-0 and 1-0-1
        let mut middles: Vec<usize> = gs
            .iter()
            .filter(|g| g.edges().len() == 2)
            .map(|g| {
                (0..3)
                    .find(|&v| g.valence(v) == 2)
                    .map(|v| g.label(v))
                    .unwrap()
            })
            .collect();
        middles.sort();
        assert_eq!(middles, vec![0, 1]);
    }

    #[test]
    fn lines_in_p4() {
        assert_eq!(enumerate_graphs(4, 1, 0).unwrap().len(), 10);
        assert_eq!(enumerate_graphs(4, 1, 1).unwrap().len(), 20);
    }

    #[test]
    fn marked_double_covers_of_p1() {
        // degree-2 edge: mark at either end (2); path 0-1-0: mark at middle or
        // an end (2); same for 1-0-1 (2)
        let gs = enumerate_graphs(1, 2, 1).unwrap();
        assert_eq!(gs.len(), 6);
        for g in &gs {
            g.validate(1, 2, 1).unwrap();
        }
        let marked_end_paths = gs
            .iter()
            .filter(|g| g.edges().len() == 2 && g.valence(g.mark().unwrap()) == 1)
            .count();
        assert_eq!(marked_end_paths, 2);
        assert!(gs
            .iter()
            .filter(|g| g.edges().len() == 2 && g.valence(g.mark().unwrap()) == 1)
            .all(|g| g.automorphism_order() == 1));
    }

    #[test]
    fn enumeration_is_deterministic_and_valid() {
        let a = enumerate_graphs(3, 3, 1).unwrap();
        let b = enumerate_graphs(3, 3, 1).unwrap();
        assert_eq!(a, b);
        for g in &a {
            g.validate(3, 3, 1).unwrap();
        }
        let distinct: BTreeSet<Canonical> = a.iter().map(FixedGraph::canonical_form).collect();
        assert_eq!(distinct.len(), a.len());
    }

    #[test]
    fn orbit_counting_matches_automorphisms() {
        // Labeled (vertex-numbered) realisations of a class number
        // (n! / |Aut|) among all numbered trees; summing |Aut|^{-1} over
        // classes therefore counts numbered trees / n!.
        use num_rational::Ratio;
        let r = 2;
        let d = 3;
        let gs = enumerate_graphs(r, d, 0).unwrap();
        let by_classes: Ratio<u64> = gs
            .iter()
            .map(|g| Ratio::new(1, g.automorphism_order()))
            .sum();
        // brute force over numbered trees on n vertices via Pruefer codes
        let mut numbered = Ratio::new(0u64, 1);
        for e in 1..=d as usize {
            let n = e + 1;
            let mut count = 0u64;
            let codes = if n == 2 { 1 } else { n.pow((n - 2) as u32) };
            for code_idx in 0..codes {
                let tree = pruefer_tree(n, code_idx);
                for labels in all_labels(n, r) {
                    if tree.iter().any(|&(a, b)| labels[a] == labels[b]) {
                        continue;
                    }
                    count += compositions(d, e).len() as u64;
                }
            }
            numbered += Ratio::new(count, (1..=n as u64).product());
        }
        assert_eq!(by_classes, numbered);
    }

    fn pruefer_tree(n: usize, mut idx: usize) -> Vec<(usize, usize)> {
        if n == 2 {
            return vec![(0, 1)];
        }
        let mut seq = Vec::new();
        for _ in 0..n - 2 {
            seq.push(idx % n);
            idx /= n;
        }
        let mut degree = vec![1usize; n];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut edges = Vec::new();
        for &s in &seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            edges.push((leaf, s));
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        edges
    }

    fn all_labels(n: usize, r: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..=r).map(move |c| {
                        let mut w = v.clone();
                        w.push(c);
                        w
                    })
                })
                .collect();
        }
        out
    }

    #[test]
    fn validation_catches_tampering() {
        let mut g = enumerate_graphs(1, 2, 0).unwrap().remove(0);
        g.automorphisms += 1;
        assert!(g.validate(1, 2, 0).is_err());
        assert!(FixedGraph::new(vec![0, 0], vec![(0, 1, 1)], None).is_err());
        assert!(FixedGraph::new(vec![0, 1, 0], vec![(0, 1, 1)], None).is_err());
    }

    #[test]
    fn shapes_count_unlabeled_trees() {
        let counts: Vec<usize> = (1..=6).map(|e| tree_shapes(e).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 6, 11]);
    }
}
