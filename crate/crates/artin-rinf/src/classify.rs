//! Graph-level predicates: largeness, freeness of infinity, XXXL,
//! hyperbolic type, twistlessness, and finite (spherical) Coxeter type
//! recognition with a Gram-matrix oracle.

use serde::{Deserialize, Serialize};

use crate::graph::{Convention, Label, LabeledGraph};

/// Tolerance used when checking Gram-matrix leading minors.
pub const GRAM_TOLERANCE: f64 = 1e-9;

/// All boolean predicates plus spherical-type identification for one graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub vertex_count: usize,
    pub is_large: bool,
    pub is_free_of_infinity: bool,
    pub is_xxxl: bool,
    /// Defined only for large-type graphs: absence of (3,3,3) triangles.
    pub is_hyperbolic_type: Option<bool>,
    /// Irreducible finite type names, one per Coxeter-graph component, or
    /// `None` when some component is not of finite type.
    pub spherical_type: Option<Vec<String>>,
    pub is_twistless: bool,
    pub is_twistless_star: bool,
}

/// Computes every field of the [`ClassificationReport`].
pub fn classify(g: &LabeledGraph) -> ClassificationReport {
    let n = g.vertex_count();
    let is_large = g.all_pairs().all(|(_, _, m)| m.at_least(3));
    let is_free_of_infinity = g.all_pairs().all(|(_, _, m)| m.is_finite());
    let is_xxxl = g.all_pairs().all(|(_, _, m)| m.at_least(6));
    let is_hyperbolic_type = if is_large {
        Some(!has_333_triangle(g))
    } else {
        None
    };
    let pres = g.convert(Convention::Presentation);
    ClassificationReport {
        vertex_count: n,
        is_large,
        is_free_of_infinity,
        is_xxxl,
        is_hyperbolic_type,
        spherical_type: spherical_type(g),
        is_twistless: is_twistless(&pres),
        is_twistless_star: is_twistless_star(&pres),
    }
}

fn has_333_triangle(g: &LabeledGraph) -> bool {
    let n = g.vertex_count();
    let three = Label::Finite(3);
    for u in 0..n {
        for v in u + 1..n {
            if g.label(u, v) != three {
                continue;
            }
            for w in v + 1..n {
                if g.label(u, w) == three && g.label(v, w) == three {
                    return true;
                }
            }
        }
    }
    false
}

/// Matches each connected component of the Coxeter-convention graph against
/// the catalog of irreducible finite Coxeter types. Returns the full list
/// iff every component matches.
pub fn spherical_type(g: &LabeledGraph) -> Option<Vec<String>> {
    let cox = g.convert(Convention::Coxeter);
    let comps = stored_components(&cox);
    let mut names = vec![];
    for comp in comps {
        names.push(component_type(&cox, &comp)?);
    }
    Some(names)
}

/// Connected components of the stored-edge graph, each sorted, ordered by
/// smallest vertex index.
fn stored_components(g: &LabeledGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut comps = vec![];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut queue = vec![start];
        while let Some(v) = queue.pop() {
            for u in g.stored_neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    comp.push(u);
                    queue.push(u);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

fn component_type(cox: &LabeledGraph, comp: &[usize]) -> Option<String> {
    let k = comp.len();
    if k == 1 {
        return Some("A1".to_string());
    }
    // any infinite label kills finiteness immediately
    for (i, &u) in comp.iter().enumerate() {
        for &v in &comp[i + 1..] {
            if cox.label(u, v) == Label::Inf {
                return None;
            }
        }
    }
    if k == 2 {
        let Label::Finite(m) = cox.label(comp[0], comp[1]) else {
            return None;
        };
        // rank-2 types are reported uniformly as I2(m)
        return Some(format!("I2({m})"));
    }
    // rank >= 3: must be a tree with small degrees
    let degree = |v: usize| {
        comp.iter()
            .filter(|&&u| u != v && cox.label(u, v) != Label::Finite(2))
            .count()
    };
    let edge_count: usize = comp.iter().map(|&v| degree(v)).sum::<usize>() / 2;
    if edge_count != k - 1 {
        return None; // has a cycle (connectivity is given)
    }
    let branch: Vec<usize> = comp.iter().copied().filter(|&v| degree(v) >= 3).collect();
    match branch.len() {
        0 => path_type(cox, comp),
        1 => fork_type(cox, comp, branch[0]),
        _ => None,
    }
}

/// Classifies a path-shaped component by its ordered label sequence.
fn path_type(cox: &LabeledGraph, comp: &[usize]) -> Option<String> {
    let k = comp.len();
    let deg1: Vec<usize> = comp
        .iter()
        .copied()
        .filter(|&v| {
            comp.iter()
                .filter(|&&u| u != v && cox.label(u, v) != Label::Finite(2))
                .count()
                == 1
        })
        .collect();
    debug_assert_eq!(deg1.len(), 2);
    // walk from one endpoint collecting edge labels
    let mut labels = vec![];
    let mut prev = usize::MAX;
    let mut cur = deg1[0];
    for _ in 0..k - 1 {
        let next = comp
            .iter()
            .copied()
            .find(|&u| u != cur && u != prev && cox.label(u, cur) != Label::Finite(2))?;
        let Label::Finite(m) = cox.label(cur, next) else {
            return None;
        };
        labels.push(m);
        prev = cur;
        cur = next;
    }
    let mut rev = labels.clone();
    rev.reverse();
    let canon = labels.min(rev);
    let all3 = canon.iter().all(|&m| m == 3);
    if all3 {
        return Some(format!("A{k}"));
    }
    if canon == [3, 4, 3] {
        return Some("F4".to_string());
    }
    // a single non-3 label at a terminal position ends up last in canon
    let interior_all3 = canon[..canon.len() - 1].iter().all(|&m| m == 3);
    match canon[canon.len() - 1] {
        4 if interior_all3 => Some(format!("B{k}")),
        5 if interior_all3 && (k == 3 || k == 4) => Some(format!("H{k}")),
        _ => None,
    }
}

/// Classifies a component with a single degree-3 fork vertex.
fn fork_type(cox: &LabeledGraph, comp: &[usize], fork: usize) -> Option<String> {
    let k = comp.len();
    // only simply-laced types fork
    for (i, &u) in comp.iter().enumerate() {
        for &v in &comp[i + 1..] {
            let m = cox.label(u, v);
            if m != Label::Finite(2) && m != Label::Finite(3) {
                return None;
            }
        }
    }
    let mut arms = vec![];
    for &start in comp {
        if start == fork || cox.label(start, fork) == Label::Finite(2) {
            continue;
        }
        // walk away from the fork
        let mut len = 1;
        let mut prev = fork;
        let mut cur = start;
        loop {
            let next = comp
                .iter()
                .copied()
                .find(|&u| u != cur && u != prev && cox.label(u, cur) != Label::Finite(2));
            match next {
                Some(u) => {
                    len += 1;
                    prev = cur;
                    cur = u;
                }
                None => break,
            }
        }
        arms.push(len);
    }
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, _] => Some(format!("D{k}")),
        [1, 2, 2] => Some("E6".to_string()),
        [1, 2, 3] => Some("E7".to_string()),
        [1, 2, 4] => Some("E8".to_string()),
        _ => None,
    }
}

/// Cosine matrix of the Coxeter form: diagonal 1, off-diagonal
/// `-cos(pi/m)`, with `m = inf` contributing -1.
pub fn gram_matrix(g: &LabeledGraph) -> Vec<Vec<f64>> {
    let n = g.vertex_count();
    let mut a = vec![vec![0.0; n]; n];
    for i in 0..n {
        a[i][i] = 1.0;
        for j in 0..n {
            if i != j {
                a[i][j] = match g.label(i, j) {
                    Label::Finite(m) => -(std::f64::consts::PI / m as f64).cos(),
                    Label::Inf => -1.0,
                };
            }
        }
    }
    a
}

/// True when every leading principal minor exceeds [`GRAM_TOLERANCE`].
pub fn gram_positive_definite(g: &LabeledGraph) -> bool {
    let a = gram_matrix(g);
    (1..=a.len()).all(|k| leading_minor(&a, k) > GRAM_TOLERANCE)
}

/// Determinant of the leading k-by-k submatrix (Gaussian elimination with
/// partial pivoting).
pub fn leading_minor(a: &[Vec<f64>], k: usize) -> f64 {
    let mut m: Vec<Vec<f64>> = a[..k].iter().map(|row| row[..k].to_vec()).collect();
    let mut det = 1.0;
    for col in 0..k {
        let pivot = (col..k)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        if m[pivot][col].abs() == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..k {
            let f = m[row][col] / m[col][col];
            for c in col..k {
                m[row][c] -= f * m[col][c];
            }
        }
    }
    det
}

/// Twistlessness of a presentation graph: connected, with no cut vertex
/// and no separating edge.
pub fn is_twistless(g: &LabeledGraph) -> bool {
    debug_assert_eq!(g.convention(), Convention::Presentation);
    let n = g.vertex_count();
    if n == 0 {
        return false;
    }
    let all: Vec<usize> = (0..n).collect();
    if is_disconnected(g, &all) {
        return false;
    }
    for v in 0..n {
        let rest: Vec<usize> = (0..n).filter(|&u| u != v).collect();
        if is_disconnected(g, &rest) {
            return false;
        }
    }
    for (s, t, _) in g.stored_edges() {
        let rest: Vec<usize> = (0..n).filter(|&u| u != s && u != t).collect();
        if is_disconnected(g, &rest) {
            return false;
        }
    }
    true
}

/// More than one connected component among `keep` in the stored-edge graph.
fn is_disconnected(g: &LabeledGraph, keep: &[usize]) -> bool {
    if keep.is_empty() {
        return false;
    }
    let mut seen = vec![false; g.vertex_count()];
    let mut queue = vec![keep[0]];
    seen[keep[0]] = true;
    let mut count = 1;
    while let Some(v) = queue.pop() {
        for u in g.stored_neighbors(v) {
            if keep.contains(&u) && !seen[u] {
                seen[u] = true;
                count += 1;
                queue.push(u);
            }
        }
    }
    count != keep.len()
}

/// True iff some vertex is adjacent to every other vertex and the graph is
/// twistless. A single vertex does not count: its Artin group is the
/// integers, outside the scope of every star-based result.
pub fn is_twistless_star(g: &LabeledGraph) -> bool {
    debug_assert_eq!(g.convention(), Convention::Presentation);
    let n = g.vertex_count();
    if n < 2 {
        return false;
    }
    let has_hub = (0..n).any(|v| g.stored_neighbors(v).len() == n - 1);
    has_hub && is_twistless(g)
}
