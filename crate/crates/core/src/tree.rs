//! Rank-2 valuations as metric trees.
//!
//! A valuation of a rank-2 matroid is a path-length function on a tree whose
//! leaves are the elements. With the min convention the three-term minimum
//! is attained by the two pairings that cross an internal edge, so internal
//! edges carry *negative* lengths here; [`MetricTree::negated`] gives the
//! classical tree-metric reading with positive internal edges.
//!
//! Parallel elements hang off a common vertex. Splits and topologies are
//! computed on one representative per parallel class and then lifted.

use std::collections::BTreeSet;
use std::fmt;

use num::{BigRational, Signed, Zero};

use crate::cells::cell_dim;
use crate::linalg::solve;
use crate::matroid::Matroid;
use crate::rational::{int, parse_rational};
use crate::subset::{self, Set};
use crate::valuation::Valuation;
use crate::{Error, Result};

/// A tree with leaves `0..n` (vertex `e` is element `e`) and internal
/// vertices `n..vertex_count`, with rational edge lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricTree {
    n: usize,
    vertex_count: usize,
    edges: Vec<(usize, usize, BigRational)>,
}

/// Leaf-labelled tree shape: the nontrivial splits, each stored as the side
/// not containing element 0, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeTopology {
    pub n: usize,
    pub splits: Vec<Set>,
}

impl TreeTopology {
    /// Builds a topology from split sides, normalising each to the side
    /// without element 0 and dropping trivial splits.
    pub fn from_splits<I: IntoIterator<Item = Set>>(n: usize, sides: I) -> Self {
        let full = subset::full(n);
        let splits: BTreeSet<Set> = sides
            .into_iter()
            .map(|s| if subset::contains(s, 0) { full & !s } else { s & full })
            .filter(|&s| subset::size(s) >= 2 && n - subset::size(s) >= 2)
            .collect();
        TreeTopology { n, splits: splits.into_iter().collect() }
    }

    pub fn internal_edge_count(&self) -> usize {
        self.splits.len()
    }

    /// FNV-1a digest of the split list, for compact reports.
    pub fn digest(&self) -> String {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for x in std::iter::once(self.n as u64).chain(self.splits.iter().copied()) {
            for byte in x.to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        }
        format!("{h:016x}")
    }
}

impl fmt::Display for TreeTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let full = subset::full(self.n);
        let parts: Vec<String> =
            self.splits.iter().map(|&s| format!("{}|{}", subset::format(full & !s), subset::format(s))).collect();
        if parts.is_empty() {
            write!(f, "star")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl MetricTree {
    /// Validates that the edges form a tree on `vertex_count` vertices in
    /// which exactly the vertices `0..n` are leaves.
    pub fn new(n: usize, vertex_count: usize, edges: Vec<(usize, usize, BigRational)>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidTree("a tree needs at least two leaves".into()));
        }
        if edges.len() + 1 != vertex_count {
            return Err(Error::InvalidTree(format!("{} edges on {} vertices", edges.len(), vertex_count)));
        }
        let mut degree = vec![0usize; vertex_count];
        let mut uf: Vec<usize> = (0..vertex_count).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut x = x;
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        for (u, v, _) in &edges {
            if *u >= vertex_count || *v >= vertex_count || u == v {
                return Err(Error::InvalidTree(format!("bad edge {u}-{v}")));
            }
            degree[*u] += 1;
            degree[*v] += 1;
            let (a, b) = (find(&mut uf, *u), find(&mut uf, *v));
            if a == b {
                return Err(Error::InvalidTree("edges contain a cycle".into()));
            }
            uf[a] = b;
        }
        for (x, &d) in degree.iter().enumerate() {
            if x < n && d != 1 {
                return Err(Error::InvalidTree(format!("leaf {x} has degree {d}")));
            }
            if x >= n && d < 2 {
                return Err(Error::InvalidTree(format!("internal vertex {x} has degree {d}")));
            }
        }
        Ok(MetricTree { n, vertex_count, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize, BigRational)] {
        &self.edges
    }

    pub fn internal_vertex_count(&self) -> usize {
        self.vertex_count - self.n
    }

    pub fn internal_edges(&self) -> impl Iterator<Item = &(usize, usize, BigRational)> {
        self.edges.iter().filter(move |(u, v, _)| *u >= self.n && *v >= self.n)
    }

    /// The same tree with every length negated.
    pub fn negated(&self) -> MetricTree {
        let edges = self.edges.iter().map(|(u, v, l)| (*u, *v, -l.clone())).collect();
        MetricTree { n: self.n, vertex_count: self.vertex_count, edges }
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (i, (u, v, _)) in self.edges.iter().enumerate() {
            adj[*u].push((*v, i));
            adj[*v].push((*u, i));
        }
        adj
    }

    /// Edge indices on the path between every pair of leaves, as
    /// `paths[a][b]`.
    fn leaf_paths(&self) -> Vec<Vec<Vec<usize>>> {
        let adj = self.adjacency();
        (0..self.n)
            .map(|a| {
                let mut via: Vec<Option<(usize, usize)>> = vec![None; self.vertex_count];
                let mut seen = vec![false; self.vertex_count];
                let mut stack = vec![a];
                seen[a] = true;
                while let Some(x) = stack.pop() {
                    for &(y, e) in &adj[x] {
                        if !seen[y] {
                            seen[y] = true;
                            via[y] = Some((x, e));
                            stack.push(y);
                        }
                    }
                }
                (0..self.n)
                    .map(|b| {
                        let mut path = Vec::new();
                        let mut x = b;
                        while let Some((p, e)) = via[x] {
                            path.push(e);
                            x = p;
                        }
                        path
                    })
                    .collect()
            })
            .collect()
    }

    /// `ℓ[E(P)]` for the path between leaves `a` and `b`.
    pub fn path_length(&self, a: usize, b: usize) -> BigRational {
        self.leaf_paths()[a][b].iter().fold(BigRational::zero(), |acc, &e| acc + &self.edges[e].2)
    }

    /// Leaves on the far side of each edge, seen from leaf 0.
    fn edge_sides(&self) -> Vec<Set> {
        let adj = self.adjacency();
        let mut side = vec![0 as Set; self.edges.len()];
        // iterative post-order from leaf 0
        let mut order = Vec::with_capacity(self.vertex_count);
        let mut parent_edge: Vec<Option<usize>> = vec![None; self.vertex_count];
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            order.push(x);
            for &(y, e) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent_edge[y] = Some(e);
                    stack.push(y);
                }
            }
        }
        let mut below = vec![0 as Set; self.vertex_count];
        for &x in order.iter().rev() {
            if x < self.n {
                below[x] |= subset::singleton(x);
            }
            if let Some(e) = parent_edge[x] {
                side[e] = below[x];
                let (u, v, _) = &self.edges[e];
                let p = if *u == x { *v } else { *u };
                below[p] |= below[x];
            }
        }
        side
    }

    /// The topology: splits of internal edges with nonzero length.
    pub fn topology(&self) -> TreeTopology {
        let sides = self.edge_sides();
        TreeTopology::from_splits(
            self.n,
            self.edges.iter().zip(sides).filter(|((u, v, l), _)| *u >= self.n && *v >= self.n && !l.is_zero()).map(|(_, s)| s),
        )
    }

    /// Whether leaves `a` and `b` have a common neighbour.
    pub fn common_neighbour(&self, a: usize, b: usize) -> bool {
        let nb = |x: usize| self.edges.iter().find_map(|(u, v, _)| if *u == x { Some(*v) } else if *v == x { Some(*u) } else { None });
        nb(a).is_some() && nb(a) == nb(b)
    }

    /// Nested-parenthesis form rooted at the first internal vertex, e.g.
    /// `((0:1,1:0):-1,2:0,(3:0,4:2):-1/2);`.
    pub fn to_newick(&self) -> String {
        let adj = self.adjacency();
        let mut out = String::new();
        fn walk(t: &MetricTree, adj: &[Vec<(usize, usize)>], x: usize, from: Option<usize>, out: &mut String) {
            if x < t.n {
                out.push_str(&x.to_string());
                return;
            }
            out.push('(');
            let mut first = true;
            let mut kids: Vec<(usize, usize)> = adj[x].iter().copied().filter(|(y, _)| Some(*y) != from).collect();
            kids.sort_by_key(|&(y, _)| (y >= t.n, y));
            for (y, e) in kids {
                if !first {
                    out.push(',');
                }
                first = false;
                walk(t, adj, y, Some(x), out);
                out.push(':');
                out.push_str(&t.edges[e].2.to_string());
            }
            out.push(')');
        }
        walk(self, &adj, self.n, None, &mut out);
        out.push(';');
        out
    }

    /// Reads the nested-parenthesis form. Leaves are element numbers; an
    /// internal vertex needs at least two children. `−` is accepted as a
    /// minus sign.
    pub fn parse_newick(s: &str) -> Result<MetricTree> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).map(|c| if c == '−' { '-' } else { c }).collect();
        let text = text.strip_suffix(';').unwrap_or(&text);
        let bytes = text.as_bytes();
        let mut pos = 0usize;
        let mut internal = 0usize;
        let mut raw_edges: Vec<(Node, Node, BigRational)> = Vec::new();
        let mut leaves: BTreeSet<usize> = BTreeSet::new();

        #[derive(Clone, Copy)]
        enum Node {
            Leaf(usize),
            Internal(usize),
        }

        fn err(msg: &str, pos: usize) -> Error {
            Error::InvalidTree(format!("{msg} at position {pos}"))
        }

        fn parse_node(
            bytes: &[u8],
            pos: &mut usize,
            internal: &mut usize,
            edges: &mut Vec<(Node, Node, BigRational)>,
            leaves: &mut BTreeSet<usize>,
        ) -> Result<Node> {
            if bytes.get(*pos) == Some(&b'(') {
                *pos += 1;
                let me = Node::Internal(*internal);
                *internal += 1;
                let mut children = 0;
                loop {
                    let child = parse_node(bytes, pos, internal, edges, leaves)?;
                    if bytes.get(*pos) != Some(&b':') {
                        return Err(err("expected ':' and a branch length", *pos));
                    }
                    *pos += 1;
                    let start = *pos;
                    while *pos < bytes.len() && !matches!(bytes[*pos], b',' | b')') {
                        *pos += 1;
                    }
                    let len = parse_rational(std::str::from_utf8(&bytes[start..*pos]).expect("ascii"))
                        .map_err(|e| err(&e.to_string(), start))?;
                    edges.push((me, child, len));
                    children += 1;
                    match bytes.get(*pos) {
                        Some(b',') => *pos += 1,
                        Some(b')') => {
                            *pos += 1;
                            break;
                        }
                        _ => return Err(err("unterminated group", *pos)),
                    }
                }
                if children < 2 {
                    return Err(err("internal vertex with a single child", *pos));
                }
                Ok(me)
            } else {
                let start = *pos;
                while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                    *pos += 1;
                }
                let label: usize =
                    std::str::from_utf8(&bytes[start..*pos]).expect("ascii").parse().map_err(|_| err("expected a leaf label", start))?;
                if !leaves.insert(label) {
                    return Err(err(&format!("leaf {label} appears twice"), start));
                }
                Ok(Node::Leaf(label))
            }
        }

        if bytes.first() != Some(&b'(') {
            return Err(err("tree must start with '('", 0));
        }
        parse_node(bytes, &mut pos, &mut internal, &mut raw_edges, &mut leaves)?;
        if pos != bytes.len() {
            return Err(err("trailing characters", pos));
        }
        let n = leaves.len();
        if leaves.iter().next_back().is_some_and(|&m| m + 1 != n) {
            return Err(Error::InvalidTree(format!("leaves must be exactly 0..{n}")));
        }
        let id = |x: Node| match x {
            Node::Leaf(e) => e,
            Node::Internal(i) => n + i,
        };
        let edges = raw_edges.into_iter().map(|(a, b, l)| (id(a), id(b), l)).collect();
        MetricTree::new(n, n + internal, edges)
    }
}

impl fmt::Display for MetricTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_newick())
    }
}

fn require_rank2(m: &Matroid) -> Result<()> {
    if m.rank() != 2 {
        return Err(Error::Unsupported(format!("tree correspondence needs rank 2, got rank {}", m.rank())));
    }
    if m.loops() != 0 {
        return Err(Error::Unsupported(format!("matroid has loops {{{}}}; trees are built on loopless matroids", subset::format(m.loops()))));
    }
    Ok(())
}

/// Whether `cluster` (a set of representative indices not containing 0) is
/// a split of the tree metric `d` on representatives `0..k`, checking only
/// quartets that contain `fresh`.
fn split_holds(d: &[Vec<BigRational>], k: usize, cluster: Set, fresh: usize) -> bool {
    let inside: Vec<usize> = subset::elements(cluster).collect();
    let outside: Vec<usize> = (0..k).filter(|&x| !subset::contains(cluster, x)).collect();
    if inside.len() < 2 || outside.len() < 2 {
        return true;
    }
    for (i, &a) in inside.iter().enumerate() {
        for &a2 in &inside[i + 1..] {
            for (j, &b) in outside.iter().enumerate() {
                for &b2 in &outside[j + 1..] {
                    if ![a, a2, b, b2].contains(&fresh) {
                        continue;
                    }
                    let own = &d[a][a2] + &d[b][b2];
                    if own <= &d[a][b] + &d[a2][b2] || own <= &d[a][b2] + &d[a2][b] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Nontrivial splits of the tree metric `d` on `0..t`, as clusters (sides
/// not containing 0), built by inserting one point at a time.
fn tree_clusters(d: &[Vec<BigRational>]) -> Vec<Set> {
    let t = d.len();
    if t < 4 {
        return Vec::new();
    }
    // all splits (trivial included) of the tree on {0,1,2}
    let mut splits: BTreeSet<Set> = [0b010, 0b100, 0b110].into_iter().collect();
    for x in 3..t {
        let fresh = subset::singleton(x);
        let mut next = BTreeSet::new();
        next.insert(fresh);
        for &a in &splits {
            for cand in [a, a | fresh] {
                if split_holds(d, x + 1, cand, x) {
                    next.insert(cand);
                }
            }
        }
        splits = next;
    }
    let k = t;
    splits.into_iter().filter(|&s| subset::size(s) >= 2 && k - subset::size(s) >= 2).collect()
}

/// The tree with root `n`, one internal vertex per cluster (clusters given
/// on element level, laminar, not containing 0), and every element attached
/// to the vertex of the smallest cluster containing it.
fn tree_shape(n: usize, clusters: &[Set]) -> (usize, Vec<(usize, usize)>, Vec<bool>) {
    let mut order: Vec<Set> = clusters.to_vec();
    order.sort_by_key(|&c| (subset::size(c), c));
    let vertex_of = |i: usize| n + 1 + i;
    let smallest_containing = |x: Set, strict: bool| {
        order.iter().position(|&c| c & x == x && (!strict || c != x)).map(vertex_of).unwrap_or(n)
    };
    let mut edges = Vec::new();
    let mut internal_flag = Vec::new();
    for e in 0..n {
        edges.push((smallest_containing(subset::singleton(e), false), e));
        internal_flag.push(false);
    }
    for (i, &c) in order.iter().enumerate() {
        edges.push((smallest_containing(c, true), vertex_of(i)));
        internal_flag.push(true);
    }
    (n + 1 + order.len(), edges, internal_flag)
}

fn fit_lengths(
    m: &Matroid,
    nu_of: impl Fn(Set) -> BigRational,
    vertex_count: usize,
    shape: &[(usize, usize)],
) -> Result<MetricTree> {
    let n = m.n();
    let skeleton = MetricTree::new(n, vertex_count, shape.iter().map(|&(u, v)| (u, v, BigRational::zero())).collect())?;
    let paths = skeleton.leaf_paths();
    let mut rows = Vec::with_capacity(m.bases().len());
    let mut rhs = Vec::with_capacity(m.bases().len());
    for &b in m.bases() {
        let [a, c]: [usize; 2] = subset::to_vec(b).try_into().expect("rank 2");
        let mut row = vec![BigRational::zero(); shape.len()];
        for &e in &paths[a][c] {
            row[e] = int(1);
        }
        rows.push(row);
        rhs.push(nu_of(b));
    }
    let lengths = solve(&rows, &rhs).ok_or_else(|| Error::Internal("edge lengths do not fit the valuation".into()))?;
    let edges = shape.iter().zip(lengths).map(|(&(u, v), l)| (u, v, l)).collect();
    Ok(MetricTree { n, vertex_count, edges })
}

/// Lifts representative clusters to element clusters.
fn lift(classes: &[Set], cluster: Set) -> Set {
    subset::elements(cluster).fold(0, |acc, i| acc | classes[i])
}

/// The metric tree of a rank-2 valuation: `ν(ab)` is the length of the path
/// from `a` to `b`. Parallel elements share a neighbour; the topology is the
/// coarsest one, with no zero-length internal edges.
pub fn decode_tree(nu: &Valuation) -> Result<MetricTree> {
    let m = nu.matroid();
    require_rank2(m)?;
    if let Some(msg) = crate::valuation::first_three_term_failure(m, nu.values()).map(|_| "three-term condition fails") {
        return Err(Error::NotAValuation(msg.into()));
    }
    let classes = m.parallel_classes();
    let reps: Vec<usize> = classes.iter().map(|&c| subset::elements(c).next().expect("nonempty class")).collect();
    let t = reps.len();
    let d: Vec<Vec<BigRational>> = (0..t)
        .map(|i| {
            (0..t)
                .map(|j| {
                    if i == j {
                        BigRational::zero()
                    } else {
                        nu.value(subset::singleton(reps[i]) | subset::singleton(reps[j])).expect("non-parallel pair").clone()
                    }
                })
                .collect()
        })
        .collect();
    let clusters: Vec<Set> = tree_clusters(&d).into_iter().map(|c| lift(&classes, c)).collect();
    let (vertex_count, shape, _) = tree_shape(m.n(), &clusters);
    let tree = fit_lengths(m, |b| nu.value(b).expect("basis").clone(), vertex_count, &shape)?;
    let paths = tree.leaf_paths();
    for (b, v) in nu.pairs() {
        let [a, c]: [usize; 2] = subset::to_vec(b).try_into().expect("rank 2");
        let len = paths[a][c].iter().fold(BigRational::zero(), |acc, &e| acc + &tree.edges[e].2);
        if len != *v {
            return Err(Error::Internal(format!("decoded tree misses ν({{{}}})", subset::format(b))));
        }
    }
    Ok(tree)
}

/// The path-length valuation of `tree` on `m`. Non-bases must be pairs
/// with a common neighbour and internal edges must have length `≤ 0`.
pub fn tree_to_valuation(tree: &MetricTree, m: &Matroid) -> Result<Valuation> {
    require_rank2(m)?;
    if tree.n() != m.n() {
        return Err(Error::InvalidTree(format!("tree has {} leaves, matroid {} elements", tree.n(), m.n())));
    }
    if let Some((u, v, l)) = tree.internal_edges().find(|(_, _, l)| l.is_positive()) {
        return Err(Error::InvalidTree(format!(
            "internal edge {u}-{v} has length {l} > 0; under the min convention internal lengths are ≤ 0"
        )));
    }
    for x in m.nonbases() {
        let [a, b]: [usize; 2] = subset::to_vec(x).try_into().expect("rank 2");
        if !tree.common_neighbour(a, b) {
            return Err(Error::InvalidTree(format!("non-basis {{{a},{b}}} without a common neighbour")));
        }
    }
    let paths = tree.leaf_paths();
    let values = m
        .bases()
        .iter()
        .map(|&b| {
            let [a, c]: [usize; 2] = subset::to_vec(b).try_into().expect("rank 2");
            paths[a][c].iter().fold(BigRational::zero(), |acc, &e| acc + &tree.edges[e].2)
        })
        .collect();
    Valuation::new(m.clone(), values)
}

/// A tree with the given element-level clusters, internal lengths `−1` and
/// leaf lengths 0.
pub fn canonical_tree(n: usize, clusters: &[Set]) -> Result<MetricTree> {
    let (vertex_count, shape, internal) = tree_shape(n, clusters);
    let edges = shape.iter().zip(internal).map(|(&(u, v), i)| (u, v, if i { int(-1) } else { BigRational::zero() })).collect();
    MetricTree::new(n, vertex_count, edges)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank2Cell {
    pub topology: TreeTopology,
    pub dim: usize,
}

/// Every laminar family of clusters from `candidates`, by backtracking.
fn compatible_families(candidates: &[Set], from: usize, chosen: &mut Vec<Set>, out: &mut Vec<Vec<Set>>) {
    out.push(chosen.clone());
    for i in from..candidates.len() {
        let c = candidates[i];
        if chosen.iter().all(|&x| x & c == 0 || x & c == x || x & c == c) {
            chosen.push(c);
            compatible_families(candidates, i + 1, chosen, out);
            chosen.pop();
        }
    }
}

/// All cells of the Dressian of a rank-2 matroid: one per topology on the
/// parallel classes, with the dimension of its linear hull.
pub fn enumerate_rank2_cells(m: &Matroid) -> Result<Vec<Rank2Cell>> {
    require_rank2(m)?;
    let classes = m.parallel_classes();
    let t = classes.len();
    let candidates: Vec<Set> =
        (2..t.saturating_sub(1)).flat_map(|k| subset::k_subsets_of(subset::full(t) & !1, k)).collect();
    let mut families = Vec::new();
    compatible_families(&candidates, 0, &mut Vec::new(), &mut families);
    let mut cells = families
        .into_iter()
        .map(|fam| {
            let lifted: Vec<Set> = fam.iter().map(|&c| lift(&classes, c)).collect();
            let tree = canonical_tree(m.n(), &lifted)?;
            let nu = tree_to_valuation(&tree, m)?;
            Ok(Rank2Cell { topology: TreeTopology::from_splits(m.n(), lifted), dim: cell_dim(&nu)? })
        })
        .collect::<Result<Vec<_>>>()?;
    cells.sort_by(|a, b| a.topology.cmp(&b.topology));
    Ok(cells)
}
