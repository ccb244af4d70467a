//! Constructors for the standard graphs used throughout the tests, the
//! benchmarks and the documentation examples.

use crate::graph::{Convention, Label, LabeledGraph};

fn named(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Coxeter graph of type A_n: a path with all edges labeled 3.
pub fn coxeter_an(n: usize) -> LabeledGraph {
    assert!(n >= 1);
    let edges: Vec<_> = (0..n.saturating_sub(1))
        .map(|i| (i, i + 1, Label::Finite(3)))
        .collect();
    LabeledGraph::new(named("t", n), &edges, Convention::Coxeter).unwrap()
}

/// Coxeter graph of type B_n: a path with one terminal edge labeled 4.
pub fn coxeter_bn(n: usize) -> LabeledGraph {
    assert!(n >= 2);
    let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1, Label::Finite(3))).collect();
    edges[n - 2] = (n - 2, n - 1, Label::Finite(4));
    LabeledGraph::new(named("t", n), &edges, Convention::Coxeter).unwrap()
}

/// Coxeter graph of type D_n, n >= 4: a path t1..t_{n-2} with both t_{n-1}
/// and t_n attached to t_{n-2}.
pub fn coxeter_dn(n: usize) -> LabeledGraph {
    assert!(n >= 4);
    let mut edges: Vec<_> = (0..n - 3).map(|i| (i, i + 1, Label::Finite(3))).collect();
    edges.push((n - 3, n - 2, Label::Finite(3)));
    edges.push((n - 3, n - 1, Label::Finite(3)));
    LabeledGraph::new(named("t", n), &edges, Convention::Coxeter).unwrap()
}

/// Coxeter graph of type E_n for n in {6, 7, 8}.
pub fn coxeter_en(n: usize) -> LabeledGraph {
    assert!((6..=8).contains(&n));
    // path t1..t_{n-1} with t_n attached to t3
    let mut edges: Vec<_> = (0..n - 2).map(|i| (i, i + 1, Label::Finite(3))).collect();
    edges.push((2, n - 1, Label::Finite(3)));
    LabeledGraph::new(named("t", n), &edges, Convention::Coxeter).unwrap()
}

/// Coxeter graph of type F_4: a path with labels 3, 4, 3.
pub fn coxeter_f4() -> LabeledGraph {
    LabeledGraph::new(
        named("t", 4),
        &[
            (0, 1, Label::Finite(3)),
            (1, 2, Label::Finite(4)),
            (2, 3, Label::Finite(3)),
        ],
        Convention::Coxeter,
    )
    .unwrap()
}

/// Coxeter graph of type H_3 or H_4: a path with a terminal edge labeled 5.
pub fn coxeter_hn(n: usize) -> LabeledGraph {
    assert!(n == 3 || n == 4);
    let mut edges = vec![(0, 1, Label::Finite(5))];
    for i in 1..n - 1 {
        edges.push((i, i + 1, Label::Finite(3)));
    }
    LabeledGraph::new(named("t", n), &edges, Convention::Coxeter).unwrap()
}

/// Two vertices joined by an edge labeled m (type I_2(m) when m is finite).
pub fn dihedral(m: Label) -> LabeledGraph {
    LabeledGraph::new(
        vec!["a".into(), "b".into()],
        &[(0, 1, m)],
        Convention::Presentation,
    )
    .unwrap()
}

/// Presentation-convention triangle with the given three edge labels.
pub fn triangle(ab: u32, bc: u32, ac: u32) -> LabeledGraph {
    LabeledGraph::new(
        vec!["a".into(), "b".into(), "c".into()],
        &[
            (0, 1, Label::Finite(ab)),
            (1, 2, Label::Finite(bc)),
            (0, 2, Label::Finite(ac)),
        ],
        Convention::Presentation,
    )
    .unwrap()
}

/// Complete presentation graph on n vertices with a constant label.
pub fn complete(n: usize, label: u32) -> LabeledGraph {
    let mut edges = vec![];
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v, Label::Finite(label)));
        }
    }
    LabeledGraph::new(named("v", n), &edges, Convention::Presentation).unwrap()
}

/// Presentation-convention cycle on n vertices with a constant label.
pub fn cycle(n: usize, label: u32) -> LabeledGraph {
    assert!(n >= 3);
    let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1, Label::Finite(label))).collect();
    edges.push((n - 1, 0, Label::Finite(label)));
    LabeledGraph::new(named("v", n), &edges, Convention::Presentation).unwrap()
}

/// Presentation-convention path with the given consecutive edge labels.
pub fn path(labels: &[u32]) -> LabeledGraph {
    let edges: Vec<_> = labels
        .iter()
        .enumerate()
        .map(|(i, &m)| (i, i + 1, Label::Finite(m)))
        .collect();
    LabeledGraph::new(named("v", labels.len() + 1), &edges, Convention::Presentation).unwrap()
}

/// The 1-skeleton of the octahedron with a constant label: two hubs v1, v2
/// each joined to the 4-cycle c1 c2 c3 c4.
pub fn octahedron(label: u32) -> LabeledGraph {
    let names: Vec<String> = vec![
        "v1".into(),
        "v2".into(),
        "c1".into(),
        "c2".into(),
        "c3".into(),
        "c4".into(),
    ];
    let m = Label::Finite(label);
    let mut edges = vec![];
    for c in 2..6 {
        edges.push((0, c, m));
        edges.push((1, c, m));
    }
    edges.push((2, 3, m));
    edges.push((3, 4, m));
    edges.push((4, 5, m));
    edges.push((5, 2, m));
    LabeledGraph::new(names, &edges, Convention::Presentation).unwrap()
}
