//! Labeled Coxeter/presentation graphs: data model, DSL parser, and
//! elementary graph algorithms.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Edge label of a Coxeter matrix entry: a finite integer `>= 2` or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Inf,
}

impl Label {
    pub fn is_finite(self) -> bool {
        matches!(self, Label::Finite(_))
    }

    /// True when the label is `>= k` (infinity compares above every integer).
    pub fn at_least(self, k: u32) -> bool {
        match self {
            Label::Finite(m) => m >= k,
            Label::Inf => true,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Inf => write!(f, "inf"),
        }
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Label::Finite(m) => s.serialize_u32(*m),
            Label::Inf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(m) if m >= 2 && m <= u32::MAX as u64 => Ok(Label::Finite(m as u32)),
            Raw::Int(m) => Err(D::Error::custom(format!("label {m} out of range"))),
            Raw::Str(s) if s == "inf" => Ok(Label::Inf),
            Raw::Str(s) => Err(D::Error::custom(format!("bad label {s:?}"))),
        }
    }
}

/// Stored-edge convention. A presentation graph omits pairs with `m = inf`,
/// a Coxeter graph omits pairs with `m = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    Presentation,
    Coxeter,
}

impl Convention {
    /// Coxeter-matrix entry represented by an absent stored pair.
    pub fn implicit_label(self) -> Label {
        match self {
            Convention::Presentation => Label::Inf,
            Convention::Coxeter => Label::Finite(2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
}

/// A finite labeled graph carrying a Coxeter matrix in one of the two
/// stored-edge conventions. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    vertices: Vec<String>,
    // keyed by (i, j) with i < j; values always >= 2 and never the
    // convention's implicit label
    labels: BTreeMap<(usize, usize), Label>,
    convention: Convention,
}

impl LabeledGraph {
    /// Builds a graph from explicit parts, normalizing stored edges so the
    /// convention's implicit label is never stored.
    pub fn new(
        vertices: Vec<String>,
        edges: &[(usize, usize, Label)],
        convention: Convention,
    ) -> Result<Self, GraphError> {
        let mut g = LabeledGraph {
            vertices,
            labels: BTreeMap::new(),
            convention,
        };
        for &(u, v, m) in edges {
            if u >= g.vertices.len() || v >= g.vertices.len() || u == v {
                return Err(GraphError::UnknownVertex(format!("index {}", u.max(v))));
            }
            if let Label::Finite(k) = m {
                assert!(k >= 2, "labels must be >= 2");
            }
            if m != convention.implicit_label() {
                g.labels.insert((u.min(v), u.max(v)), m);
            }
        }
        Ok(g)
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// Full Coxeter-matrix entry for a pair of distinct vertices,
    /// resolving the convention's implicit value.
    pub fn label(&self, u: usize, v: usize) -> Label {
        debug_assert!(u != v);
        let key = (u.min(v), u.max(v));
        self.labels
            .get(&key)
            .copied()
            .unwrap_or_else(|| self.convention.implicit_label())
    }

    /// Stored edges, `(u, v, m)` with `u < v`.
    pub fn stored_edges(&self) -> impl Iterator<Item = (usize, usize, Label)> + '_ {
        self.labels.iter().map(|(&(u, v), &m)| (u, v, m))
    }

    /// All unordered vertex pairs with their full Coxeter-matrix entry.
    pub fn all_pairs(&self) -> impl Iterator<Item = (usize, usize, Label)> + '_ {
        let n = self.vertices.len();
        (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v, self.label(u, v))))
    }

    /// Re-expresses the graph in the target convention. The underlying
    /// Coxeter matrix is unchanged.
    pub fn convert(&self, target: Convention) -> LabeledGraph {
        let mut labels = BTreeMap::new();
        for (u, v, m) in self.all_pairs() {
            if m != target.implicit_label() {
                labels.insert((u, v), m);
            }
        }
        LabeledGraph {
            vertices: self.vertices.clone(),
            labels,
            convention: target,
        }
    }

    /// Full (induced) subgraph on the given vertex indices, which keep
    /// their relative order. Convention is preserved.
    pub fn induced_subgraph(&self, vs: &[usize]) -> Result<LabeledGraph, GraphError> {
        let mut keep: Vec<usize> = vs.to_vec();
        keep.sort_unstable();
        keep.dedup();
        for &v in &keep {
            if v >= self.vertices.len() {
                return Err(GraphError::UnknownVertex(format!("index {v}")));
            }
        }
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut labels = BTreeMap::new();
        for (&(u, v), &m) in &self.labels {
            if let (Some(&a), Some(&b)) = (pos.get(&u), pos.get(&v)) {
                labels.insert((a.min(b), a.max(b)), m);
            }
        }
        Ok(LabeledGraph {
            vertices: keep.iter().map(|&v| self.vertices[v].clone()).collect(),
            labels,
            convention: self.convention,
        })
    }

    /// Neighbors of `v` in the stored-edge graph of the current convention.
    pub fn stored_neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = vec![];
        for (a, b, _) in self.stored_edges() {
            if a == v {
                out.push(b);
            } else if b == v {
                out.push(a);
            }
        }
        out
    }

    /// Enumerates the full automorphism group of the labeled graph, i.e.
    /// all vertex permutations preserving the Coxeter matrix. Output is in
    /// lexicographic order of the image vector and always contains the
    /// identity.
    pub fn graph_automorphisms(&self) -> Vec<GraphAutomorphism> {
        let n = self.vertices.len();
        // signature pruning: a vertex can only map to one with the same
        // multiset of labels towards the rest of the graph
        let sig: Vec<Vec<Label>> = (0..n)
            .map(|v| {
                let mut s: Vec<Label> = (0..n).filter(|&u| u != v).map(|u| self.label(u, v)).collect();
                s.sort_unstable();
                s
            })
            .collect();
        let mut out = vec![];
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.automorphism_search(0, &sig, &mut image, &mut used, &mut out);
        out
    }

    fn automorphism_search(
        &self,
        depth: usize,
        sig: &[Vec<Label>],
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<GraphAutomorphism>,
    ) {
        let n = self.vertices.len();
        if depth == n {
            out.push(GraphAutomorphism {
                image: image.clone(),
            });
            return;
        }
        for cand in 0..n {
            if used[cand] || sig[depth] != sig[cand] {
                continue;
            }
            if (0..depth).any(|prev| self.label(prev, depth) != self.label(image[prev], cand)) {
                continue;
            }
            image[depth] = cand;
            used[cand] = true;
            self.automorphism_search(depth + 1, sig, image, used, out);
            used[cand] = false;
        }
        image[depth] = usize::MAX;
    }

    /// Applies a vertex permutation, producing the relabeled graph on the
    /// same vertex name list.
    pub fn relabel(&self, sigma: &GraphAutomorphism) -> LabeledGraph {
        let mut labels = BTreeMap::new();
        for (&(u, v), &m) in &self.labels {
            let (a, b) = (sigma.image[u], sigma.image[v]);
            labels.insert((a.min(b), a.max(b)), m);
        }
        LabeledGraph {
            vertices: self.vertices.clone(),
            labels,
            convention: self.convention,
        }
    }

    /// Serializes back to DSL source accepted by [`parse_graph`].
    pub fn to_dsl(&self) -> String {
        let mut s = String::new();
        s.push_str(match self.convention {
            Convention::Presentation => "convention presentation\n",
            Convention::Coxeter => "convention coxeter\n",
        });
        s.push_str("vertices");
        for v in &self.vertices {
            s.push(' ');
            s.push_str(v);
        }
        s.push('\n');
        for (u, v, m) in self.stored_edges() {
            s.push_str(&format!("edge {} {} {}\n", self.vertices[u], self.vertices[v], m));
        }
        s
    }
}

/// A label-preserving permutation of the vertices of a [`LabeledGraph`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphAutomorphism {
    /// `image[v]` is the index the vertex `v` is sent to.
    pub image: Vec<usize>,
}

impl GraphAutomorphism {
    pub fn identity(n: usize) -> Self {
        GraphAutomorphism {
            image: (0..n).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self` after `other`: `(self ∘ other)(v) = self(other(v))`.
    pub fn compose(&self, other: &GraphAutomorphism) -> GraphAutomorphism {
        GraphAutomorphism {
            image: other.image.iter().map(|&v| self.image[v]).collect(),
        }
    }

    pub fn inverse(&self) -> GraphAutomorphism {
        let mut image = vec![0; self.image.len()];
        for (i, &j) in self.image.iter().enumerate() {
            image[j] = i;
        }
        GraphAutomorphism { image }
    }

    /// True when the permutation preserves every Coxeter-matrix entry of `g`.
    pub fn preserves_labels(&self, g: &LabeledGraph) -> bool {
        let n = g.vertex_count();
        self.image.len() == n
            && (0..n).all(|u| {
                (u + 1..n).all(|v| g.label(u, v) == g.label(self.image[u], self.image[v]))
            })
    }

    /// Parses a cycle spec like `"(t5 t6)(a b c)"` over the vertex names of
    /// `g` into a permutation. Unmentioned vertices are fixed.
    pub fn from_cycles(spec: &str, g: &LabeledGraph) -> Result<Self, GraphError> {
        let mut image: Vec<usize> = (0..g.vertex_count()).collect();
        let s = spec.trim();
        if s.is_empty() || s == "id" {
            return Ok(GraphAutomorphism { image });
        }
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest.find('(').ok_or_else(|| GraphError::Syntax {
                line: 1,
                col: 1,
                msg: format!("expected '(' in cycle spec {spec:?}"),
            })?;
            let close = rest[open..].find(')').ok_or_else(|| GraphError::Syntax {
                line: 1,
                col: open + 1,
                msg: "unclosed cycle".into(),
            })? + open;
            let names: Vec<&str> = rest[open + 1..close]
                .split([' ', ','])
                .filter(|t| !t.is_empty())
                .collect();
            let idx: Vec<usize> = names
                .iter()
                .map(|name| {
                    g.vertex_index(name)
                        .ok_or_else(|| GraphError::UnknownVertex((*name).into()))
                })
                .collect::<Result<_, _>>()?;
            for k in 0..idx.len() {
                image[idx[k]] = idx[(k + 1) % idx.len()];
            }
            rest = &rest[close + 1..];
            rest = rest.trim_start();
        }
        Ok(GraphAutomorphism { image })
    }

    /// Renders the permutation in cycle notation over the vertex names of
    /// `g`; the identity renders as `"id"`.
    pub fn to_cycles(&self, g: &LabeledGraph) -> String {
        let n = self.image.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.image[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.image[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.image[cur];
            }
            out.push('(');
            out.push_str(
                &cycle
                    .iter()
                    .map(|&v| g.vertex_names()[v].clone())
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            out.push(')');
        }
        if out.is_empty() {
            "id".to_string()
        } else {
            out
        }
    }
}

/// Parses the line-oriented graph DSL:
///
/// ```text
/// convention presentation   # or coxeter; optional, presentation by default
/// vertices a b c
/// edge a b 3                # label is an integer >= 2 or "inf"
/// ```
pub fn parse_graph(text: &str) -> Result<LabeledGraph, GraphError> {
    let mut convention: Option<Convention> = None;
    let mut vertices: Vec<String> = vec![];
    let mut edges: Vec<(String, String, Label, usize, usize)> = vec![];

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut toks = tokens_with_cols(content);
        let Some((head, head_col)) = toks.next() else {
            continue;
        };
        match head {
            "convention" => {
                let Some((val, col)) = toks.next() else {
                    return Err(syntax(line, head_col, "missing convention value"));
                };
                let c = match val {
                    "presentation" => Convention::Presentation,
                    "coxeter" => Convention::Coxeter,
                    other => return Err(syntax(line, col, &format!("unknown convention {other:?}"))),
                };
                if convention.replace(c).is_some() {
                    return Err(syntax(line, head_col, "duplicate convention directive"));
                }
            }
            "vertices" => {
                let mut any = false;
                for (name, col) in toks.by_ref() {
                    any = true;
                    if vertices.iter().any(|v| v == name) {
                        return Err(syntax(line, col, &format!("duplicate vertex {name:?}")));
                    }
                    vertices.push(name.to_string());
                }
                if !any {
                    return Err(syntax(line, head_col, "vertices directive without names"));
                }
                continue;
            }
            "edge" => {
                let Some((u, ucol)) = toks.next() else {
                    return Err(syntax(line, head_col, "edge needs two vertices and a label"));
                };
                let Some((v, vcol)) = toks.next() else {
                    return Err(syntax(line, head_col, "edge needs two vertices and a label"));
                };
                let Some((lab, lcol)) = toks.next() else {
                    return Err(syntax(line, head_col, "edge needs a label"));
                };
                let m = if lab == "inf" {
                    Label::Inf
                } else {
                    match lab.parse::<u32>() {
                        Ok(k) if k >= 2 => Label::Finite(k),
                        Ok(k) => return Err(syntax(line, lcol, &format!("label {k} < 2"))),
                        Err(_) => return Err(syntax(line, lcol, &format!("bad label {lab:?}"))),
                    }
                };
                if u == v {
                    return Err(syntax(line, vcol, "self-loops are not allowed"));
                }
                edges.push((u.to_string(), v.to_string(), m, line, ucol));
                continue;
            }
            other => return Err(syntax(line, head_col, &format!("unknown directive {other:?}"))),
        }
        if let Some((extra, col)) = toks.next() {
            return Err(syntax(line, col, &format!("unexpected token {extra:?}")));
        }
    }

    if vertices.is_empty() {
        return Err(syntax(1, 1, "graph must declare at least one vertex"));
    }
    let convention = convention.unwrap_or(Convention::Presentation);
    let mut resolved: Vec<(usize, usize, Label)> = vec![];
    let mut seen: BTreeMap<(usize, usize), Label> = BTreeMap::new();
    for (u, v, m, line, col) in edges {
        let ui = vertices
            .iter()
            .position(|x| *x == u)
            .ok_or_else(|| syntax(line, col, &format!("unknown vertex {u:?}")))?;
        let vi = vertices
            .iter()
            .position(|x| *x == v)
            .ok_or_else(|| syntax(line, col, &format!("unknown vertex {v:?}")))?;
        let key = (ui.min(vi), ui.max(vi));
        match seen.get(&key) {
            Some(&prev) if prev != m => {
                return Err(syntax(line, col, &format!("conflicting labels for edge {u} {v}")));
            }
            Some(_) => continue,
            None => {
                seen.insert(key, m);
                resolved.push((ui, vi, m));
            }
        }
    }
    LabeledGraph::new(vertices, &resolved, convention)
}

fn syntax(line: usize, col: usize, msg: &str) -> GraphError {
    GraphError::Syntax {
        line,
        col,
        msg: msg.to_string(),
    }
}

fn tokens_with_cols(line: &str) -> impl Iterator<Item = (&str, usize)> {
    line.split_whitespace().map(move |tok| {
        let col = tok.as_ptr() as usize - line.as_ptr() as usize + 1;
        (tok, col)
    })
}

// JSON wire format: {"convention": ..., "vertices": [...],
// "edges": [{"u", "v", "m"}]} with edges sorted lexicographically.
#[derive(Serialize, Deserialize)]
struct EdgeJson {
    u: String,
    v: String,
    m: Label,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    convention: Convention,
    vertices: Vec<String>,
    edges: Vec<EdgeJson>,
}

impl Serialize for LabeledGraph {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut edges: Vec<EdgeJson> = self
            .stored_edges()
            .map(|(u, v, m)| {
                let (a, b) = (&self.vertices[u], &self.vertices[v]);
                let (a, b) = if a <= b { (a, b) } else { (b, a) };
                EdgeJson {
                    u: a.clone(),
                    v: b.clone(),
                    m,
                }
            })
            .collect();
        edges.sort_by(|x, y| (&x.u, &x.v).cmp(&(&y.u, &y.v)));
        GraphJson {
            convention: self.convention,
            vertices: self.vertices.clone(),
            edges,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LabeledGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = GraphJson::deserialize(d)?;
        let lookup = |name: &str| {
            raw.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| D::Error::custom(format!("unknown vertex {name:?}")))
        };
        let edges: Vec<(usize, usize, Label)> = raw
            .edges
            .iter()
            .map(|e| Ok((lookup(&e.u)?, lookup(&e.v)?, e.m)))
            .collect::<Result<_, D::Error>>()?;
        LabeledGraph::new(raw.vertices, &edges, raw.convention)
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testgraphs;

    #[test]
    fn parse_single_edge() {
        let g = parse_graph("convention presentation\nvertices a b\nedge a b 3\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.label(0, 1), Label::Finite(3));
    }

    #[test]
    fn parse_triangle_333() {
        let g = parse_graph(
            "convention presentation\nvertices a b c\nedge a b 3\nedge b c 3\nedge a c 3\n",
        )
        .unwrap();
        for (u, v, m) in g.all_pairs() {
            assert_eq!(m, Label::Finite(3), "pair {u} {v}");
        }
    }

    #[test]
    fn conventions_agree_on_stored_edges() {
        let g = parse_graph("convention coxeter\nvertices a b\nedge a b 4\n").unwrap();
        let p = g.convert(Convention::Presentation);
        assert_eq!(p.label(0, 1), Label::Finite(4));
        assert_eq!(p.vertex_names(), g.vertex_names());
    }

    #[test]
    fn parse_errors_are_structured() {
        assert!(matches!(
            parse_graph("vertices a b\nedge a b 1\n"),
            Err(GraphError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("vertices a a\n"),
            Err(GraphError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph("vertices a b\nedge a c 3\n"),
            Err(GraphError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("vertices a b\nedge a b 3\nedge b a 4\n"),
            Err(GraphError::Syntax { line: 3, .. })
        ));
        assert!(parse_graph("").is_err());
    }

    #[test]
    fn duplicate_edge_with_same_label_is_fine() {
        let g = parse_graph("vertices a b\nedge a b 3\nedge b a 3\n").unwrap();
        assert_eq!(g.stored_edges().count(), 1);
    }

    #[test]
    fn default_convention_is_presentation() {
        let g = parse_graph("vertices a b\nedge a b 3\n").unwrap();
        assert_eq!(g.convention(), Convention::Presentation);
    }

    #[test]
    fn convert_d4_to_presentation() {
        let g = testgraphs::coxeter_dn(4);
        let p = g.convert(Convention::Presentation);
        // all six pairs stored: three label-3 edges against the center,
        // the rest label 2
        assert_eq!(p.stored_edges().count(), 6);
        let threes = p
            .stored_edges()
            .filter(|&(_, _, m)| m == Label::Finite(3))
            .count();
        assert_eq!(threes, 3);
        let twos = p
            .stored_edges()
            .filter(|&(_, _, m)| m == Label::Finite(2))
            .count();
        assert_eq!(twos, 3);
    }

    #[test]
    fn convert_missing_pair_becomes_inf_edge() {
        let g = parse_graph("vertices a b c\nedge a b 3\nedge b c 3\n").unwrap();
        let c = g.convert(Convention::Coxeter);
        assert_eq!(c.label(0, 2), Label::Inf);
        assert!(c.stored_edges().any(|(u, v, m)| (u, v, m) == (0, 2, Label::Inf)));
    }

    #[test]
    fn convert_round_trip() {
        let g = parse_graph("vertices a b c d\nedge a b 3\nedge b c 5\nedge c d 2\n").unwrap();
        let back = g.convert(Convention::Coxeter).convert(Convention::Presentation);
        assert_eq!(g, back);
    }

    #[test]
    fn convert_preserves_full_matrix() {
        let g = testgraphs::coxeter_dn(5);
        let p = g.convert(Convention::Presentation);
        for (u, v, m) in g.all_pairs() {
            assert_eq!(p.label(u, v), m);
        }
    }

    #[test]
    fn induced_subgraph_restriction() {
        let g = testgraphs::triangle(3, 3, 3);
        let sub = g.induced_subgraph(&[0, 1]).unwrap();
        assert_eq!(sub.vertex_count(), 2);
        assert_eq!(sub.label(0, 1), Label::Finite(3));
        assert_eq!(g.induced_subgraph(&[0, 1, 2]).unwrap(), g);
        assert!(g.induced_subgraph(&[0, 7]).is_err());
    }

    #[test]
    fn automorphisms_dn_order_two() {
        for n in [5usize, 6, 7] {
            let g = testgraphs::coxeter_dn(n);
            let auts = g.graph_automorphisms();
            assert_eq!(auts.len(), 2, "D_{n}");
            assert!(auts.iter().any(|a| a.is_identity()));
            let swap = auts.iter().find(|a| !a.is_identity()).unwrap();
            assert_eq!(swap.image[n - 2], n - 1);
            assert_eq!(swap.image[n - 1], n - 2);
        }
    }

    #[test]
    fn automorphisms_triangle_all_six() {
        let g = testgraphs::triangle(3, 3, 3);
        assert_eq!(g.graph_automorphisms().len(), 6);
    }

    #[test]
    fn automorphisms_labeled_path_trivial() {
        let g = parse_graph("vertices a b c\nedge a b 3\nedge b c 4\n").unwrap();
        let auts = g.graph_automorphisms();
        assert_eq!(auts.len(), 1);
        assert!(auts[0].is_identity());
    }

    #[test]
    fn automorphism_output_is_a_group() {
        let g = testgraphs::triangle(3, 3, 4);
        let auts = g.graph_automorphisms();
        for a in &auts {
            assert!(a.preserves_labels(&g));
            assert!(auts.contains(&a.inverse()));
            for b in &auts {
                assert!(auts.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn complete_graph_automorphism_count_matches_brute_force() {
        // oracle: filter all n! permutations directly
        fn brute_force(g: &LabeledGraph) -> usize {
            let n = g.vertex_count();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut count = 0;
            permute(&mut perm, 0, &mut |p| {
                if (GraphAutomorphism { image: p.to_vec() }).preserves_labels(g) {
                    count += 1;
                }
            });
            count
        }
        fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
            if k == p.len() {
                f(p);
                return;
            }
            for i in k..p.len() {
                p.swap(k, i);
                permute(p, k + 1, f);
                p.swap(k, i);
            }
        }
        for n in 2..=5usize {
            let g = testgraphs::complete(n, 4);
            let auts = g.graph_automorphisms();
            assert_eq!(auts.len(), (1..=n).product::<usize>());
            assert_eq!(auts.len(), brute_force(&g));
        }
        let path = parse_graph("vertices a b c\nedge a b 3\nedge b c 4\n").unwrap();
        assert_eq!(path.graph_automorphisms().len(), brute_force(&path));
    }

    #[test]
    fn dsl_round_trip() {
        let g = testgraphs::octahedron(4);
        let again = parse_graph(&g.to_dsl()).unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn json_round_trip() {
        let g = testgraphs::coxeter_dn(6);
        let js = serde_json::to_string(&g).unwrap();
        let back: LabeledGraph = serde_json::from_str(&js).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn cycle_spec_parsing() {
        let g = testgraphs::coxeter_dn(6);
        let sigma = GraphAutomorphism::from_cycles("(t5 t6)", &g).unwrap();
        assert!(sigma.preserves_labels(&g));
        assert_eq!(sigma.image[4], 5);
        assert!(GraphAutomorphism::from_cycles("(t5 zz)", &g).is_err());
    }
}
