//! Admissible decompositions and the search for a twistless hierarchy
//! terminating in twistless stars.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::classify::is_twistless_star;
use crate::graph::{Convention, LabeledGraph};

/// Default limit on explored subgraphs.
pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HierarchyError {
    #[error("search budget must be positive")]
    ZeroBudget,
}

/// A splitting of a graph into two induced subgraphs covering all vertices
/// and edges. Vertex sets are sorted index lists into the ambient graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub part1: Vec<usize>,
    pub part2: Vec<usize>,
    pub intersection: Vec<usize>,
}

impl Decomposition {
    /// The intersection is nonempty and is neither a single vertex nor a
    /// single edge.
    pub fn is_twistless(&self, g: &LabeledGraph) -> bool {
        match self.intersection.as_slice() {
            [] | [_] => false,
            [u, v] => g.label(*u, *v) == g.convention().implicit_label(),
            _ => true,
        }
    }
}

/// Enumerates every admissible decomposition of `g` up to swapping the two
/// parts, via vertex separators: pick the intersection `C`, then split the
/// connected components of `g - C` into two nonempty groups.
pub fn admissible_decompositions(g: &LabeledGraph, twistless_only: bool) -> Vec<Decomposition> {
    debug_assert_eq!(g.convention(), Convention::Presentation);
    let n = g.vertex_count();
    let mut out = vec![];
    for mask in 0u32..(1 << n) {
        let c: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let rest: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 0).collect();
        let comps = components_within(g, &rest);
        if comps.len() < 2 {
            continue;
        }
        // component 0 stays in part1; every nonempty selection of the
        // others for part2 yields a distinct decomposition
        for sel in 1u32..(1 << (comps.len() - 1)) {
            let mut a = c.clone();
            let mut b = c.clone();
            for (i, comp) in comps.iter().enumerate() {
                let to_b = i > 0 && sel >> (i - 1) & 1 == 1;
                if to_b {
                    b.extend_from_slice(comp);
                } else {
                    a.extend_from_slice(comp);
                }
            }
            a.sort_unstable();
            b.sort_unstable();
            let d = canonical(Decomposition {
                part1: a,
                part2: b,
                intersection: c.clone(),
            });
            if !twistless_only || d.is_twistless(g) {
                out.push(d);
            }
        }
    }
    out.sort_by(|x, y| (&x.part1, &x.part2).cmp(&(&y.part1, &y.part2)));
    out.dedup();
    out
}

/// Orders the parts so the lexicographically smaller private part comes
/// first.
fn canonical(d: Decomposition) -> Decomposition {
    let private = |part: &[usize], other: &[usize]| -> Vec<usize> {
        part.iter().copied().filter(|v| !other.contains(v)).collect()
    };
    let p1 = private(&d.part1, &d.part2);
    let p2 = private(&d.part2, &d.part1);
    if p2 < p1 {
        Decomposition {
            part1: d.part2,
            part2: d.part1,
            intersection: d.intersection,
        }
    } else {
        d
    }
}

/// Connected components of the stored-edge graph restricted to `keep`.
fn components_within(g: &LabeledGraph, keep: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.vertex_count()];
    let mut comps = vec![];
    for &start in keep {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut queue = vec![start];
        while let Some(v) = queue.pop() {
            for u in g.stored_neighbors(v) {
                if keep.contains(&u) && !seen[u] {
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

/// Witness tree for a twistless hierarchy. `graph` lists the vertex names
/// of the node's induced subgraph; internal nodes carry the decomposition
/// (by vertex name) and exactly two children.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HierarchyTree {
    pub graph: Vec<String>,
    pub leaf: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub decomposition: Option<NamedDecomposition>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub children: Vec<HierarchyTree>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedDecomposition {
    pub part1: Vec<String>,
    pub part2: Vec<String>,
    pub intersection: Vec<String>,
}

/// Outcome of [`find_twistless_hierarchy`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum HierarchySearch {
    Found { tree: HierarchyTree },
    /// The full search space was exhausted without a witness.
    NoneDefinitive,
    /// The node budget was hit before the search space was exhausted.
    NoneExhausted { budget: usize },
}

/// Searches for a twistless hierarchy of `g` terminating in twistless
/// stars, memoized on vertex subsets.
pub fn find_twistless_hierarchy(
    g: &LabeledGraph,
    budget: usize,
) -> Result<HierarchySearch, HierarchyError> {
    if budget == 0 {
        return Err(HierarchyError::ZeroBudget);
    }
    debug_assert_eq!(g.convention(), Convention::Presentation);
    let mut search = Search {
        root: g,
        memo: HashMap::new(),
        explored: 0,
        budget,
        exhausted: false,
    };
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    match search.solve(&all) {
        Some(tree) => Ok(HierarchySearch::Found { tree }),
        None if search.exhausted => Ok(HierarchySearch::NoneExhausted { budget }),
        None => Ok(HierarchySearch::NoneDefinitive),
    }
}

struct Search<'a> {
    root: &'a LabeledGraph,
    memo: HashMap<Vec<usize>, Option<HierarchyTree>>,
    explored: usize,
    budget: usize,
    exhausted: bool,
}

impl Search<'_> {
    fn solve(&mut self, subset: &[usize]) -> Option<HierarchyTree> {
        if self.exhausted {
            return None;
        }
        if let Some(cached) = self.memo.get(subset) {
            return cached.clone();
        }
        self.explored += 1;
        if self.explored > self.budget {
            self.exhausted = true;
            return None;
        }
        let sub = self.root.induced_subgraph(subset).expect("subset of root");
        let names = |ids: &[usize]| -> Vec<String> {
            ids.iter().map(|&v| self.root.vertex_names()[v].clone()).collect()
        };
        if is_twistless_star(&sub) {
            let leaf = HierarchyTree {
                graph: names(subset),
                leaf: true,
                decomposition: None,
                children: vec![],
            };
            self.memo.insert(subset.to_vec(), Some(leaf.clone()));
            return Some(leaf);
        }
        for local in admissible_decompositions(&sub, true) {
            // map local indices of the induced subgraph back into the root
            let lift = |ids: &[usize]| -> Vec<usize> { ids.iter().map(|&i| subset[i]).collect() };
            let part1 = lift(&local.part1);
            let part2 = lift(&local.part2);
            let left = self.solve(&part1);
            if self.exhausted {
                return None;
            }
            let Some(left) = left else { continue };
            let right = self.solve(&part2);
            if self.exhausted {
                return None;
            }
            let Some(right) = right else { continue };
            let tree = HierarchyTree {
                graph: names(subset),
                leaf: false,
                decomposition: Some(NamedDecomposition {
                    part1: names(&part1),
                    part2: names(&part2),
                    intersection: names(&lift(&local.intersection)),
                }),
                children: vec![left, right],
            };
            self.memo.insert(subset.to_vec(), Some(tree.clone()));
            return Some(tree);
        }
        self.memo.insert(subset.to_vec(), None);
        None
    }
}

/// Re-validates a witness tree node by node against `root`: every leaf is a
/// twistless star, every internal node carries a twistless admissible
/// decomposition of its own graph whose parts are exactly the children.
pub fn validate_tree(root: &LabeledGraph, tree: &HierarchyTree) -> bool {
    let ids: Option<Vec<usize>> = tree
        .graph
        .iter()
        .map(|name| root.vertex_index(name))
        .collect();
    let Some(mut ids) = ids else { return false };
    ids.sort_unstable();
    let Ok(sub) = root.induced_subgraph(&ids) else {
        return false;
    };
    if tree.leaf {
        return tree.children.is_empty()
            && tree.decomposition.is_none()
            && is_twistless_star(&sub);
    }
    let (Some(d), [left, right]) = (&tree.decomposition, tree.children.as_slice()) else {
        return false;
    };
    let resolve = |names: &[String]| -> Option<Vec<usize>> {
        let mut v: Vec<usize> = names
            .iter()
            .map(|n| root.vertex_index(n))
            .collect::<Option<_>>()?;
        v.sort_unstable();
        Some(v)
    };
    let (Some(p1), Some(p2), Some(c)) = (
        resolve(&d.part1),
        resolve(&d.part2),
        resolve(&d.intersection),
    ) else {
        return false;
    };
    // parts are proper, cover the node, and intersect in c
    let mut union: Vec<usize> = p1.iter().chain(&p2).copied().collect();
    union.sort_unstable();
    union.dedup();
    if union != ids || p1 == ids || p2 == ids {
        return false;
    }
    let inter: Vec<usize> = p1.iter().copied().filter(|v| p2.contains(v)).collect();
    if inter != c {
        return false;
    }
    // edge coverage: no edge of the node joins the two private parts
    for (u, v, _) in sub.stored_edges() {
        let (gu, gv) = (ids[u], ids[v]);
        let in1 = p1.contains(&gu) && p1.contains(&gv);
        let in2 = p2.contains(&gu) && p2.contains(&gv);
        if !in1 && !in2 {
            return false;
        }
    }
    let local = Decomposition {
        part1: p1.clone(),
        part2: p2.clone(),
        intersection: c,
    };
    if !local.is_twistless(root) {
        return false;
    }
    let mut sorted1: Vec<String> = left.graph.clone();
    sorted1.sort();
    let mut sorted2: Vec<String> = right.graph.clone();
    sorted2.sort();
    let name_of = |v: &usize| root.vertex_names()[*v].clone();
    let mut expect1: Vec<String> = p1.iter().map(name_of).collect();
    expect1.sort();
    let mut expect2: Vec<String> = p2.iter().map(name_of).collect();
    expect2.sort();
    if !(sorted1 == expect1 && sorted2 == expect2 || sorted1 == expect2 && sorted2 == expect1) {
        return false;
    }
    validate_tree(root, left) && validate_tree(root, right)
}

/// Cross-module characterization: a graph is twistless iff every admissible
/// decomposition of it is twistless.
pub fn twistless_via_decompositions(g: &LabeledGraph) -> bool {
    let all: Vec<usize> = (0..g.vertex_count()).collect();
    components_within(g, &all).len() == 1
        && admissible_decompositions(g, false)
            .iter()
            .all(|d| d.is_twistless(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testgraphs;

    #[test]
    fn octahedron_has_star_decomposition() {
        let g = testgraphs::octahedron(4);
        let decomps = admissible_decompositions(&g, true);
        // st(v1) = everything but v2, st(v2) = everything but v1,
        // glued over the 4-cycle
        let wanted = Decomposition {
            part1: vec![0, 2, 3, 4, 5],
            part2: vec![1, 2, 3, 4, 5],
            intersection: vec![2, 3, 4, 5],
        };
        assert!(decomps.contains(&wanted));
    }

    #[test]
    fn k3_has_no_twistless_decomposition() {
        let g = testgraphs::complete(3, 3);
        assert!(admissible_decompositions(&g, true).is_empty());
        // without the filter the only splits are over two-vertex
        // intersections, i.e. single edges
        for d in admissible_decompositions(&g, false) {
            assert_eq!(d.intersection.len(), 2);
            assert!(!d.is_twistless(&g));
        }
    }

    #[test]
    fn five_cycle_decomposes_into_paths() {
        let g = testgraphs::cycle(5, 6);
        let decomps = admissible_decompositions(&g, true);
        assert!(!decomps.is_empty());
        // the minimal separators are pairs of non-adjacent vertices,
        // splitting the cycle into two paths
        let pair_splits: Vec<_> = decomps
            .iter()
            .filter(|d| d.intersection.len() == 2)
            .collect();
        assert_eq!(pair_splits.len(), 5);
        for d in &pair_splits {
            let (u, v) = (d.intersection[0], d.intersection[1]);
            assert_eq!(g.label(u, v), g.convention().implicit_label());
        }
        // larger separators exist too but are never single edges
        for d in &decomps {
            assert!(d.intersection.len() >= 2);
        }
    }

    #[test]
    fn decompositions_cover_edges_and_separate() {
        for g in [
            testgraphs::octahedron(4),
            testgraphs::cycle(5, 6),
            testgraphs::complete(4, 3),
            testgraphs::path(&[3, 3, 3]),
        ] {
            for d in admissible_decompositions(&g, false) {
                // coverage
                for (u, v, _) in g.stored_edges() {
                    let in1 = d.part1.contains(&u) && d.part1.contains(&v);
                    let in2 = d.part2.contains(&u) && d.part2.contains(&v);
                    assert!(in1 || in2);
                }
                // both parts proper, union everything
                let mut union: Vec<usize> = d.part1.iter().chain(&d.part2).copied().collect();
                union.sort_unstable();
                union.dedup();
                assert_eq!(union.len(), g.vertex_count());
                assert!(d.part1.len() < g.vertex_count());
                assert!(d.part2.len() < g.vertex_count());
                // removing the intersection separates the private parts
                let keep: Vec<usize> = (0..g.vertex_count())
                    .filter(|v| !d.intersection.contains(v))
                    .collect();
                let comps = components_within(&g, &keep);
                let private1: Vec<usize> = d
                    .part1
                    .iter()
                    .copied()
                    .filter(|v| !d.part2.contains(v))
                    .collect();
                for comp in comps {
                    let in_p1 = comp.iter().any(|v| private1.contains(v));
                    assert!(comp.iter().all(|v| private1.contains(v) == in_p1));
                }
            }
        }
    }

    #[test]
    fn octahedron_hierarchy_found() {
        let g = testgraphs::octahedron(4);
        let HierarchySearch::Found { tree } =
            find_twistless_hierarchy(&g, DEFAULT_BUDGET).unwrap()
        else {
            panic!("expected a witness");
        };
        assert!(!tree.leaf);
        assert_eq!(tree.children.len(), 2);
        assert!(tree.children.iter().all(|c| c.leaf));
        assert!(validate_tree(&g, &tree));
    }

    #[test]
    fn k4_is_a_leaf() {
        let g = testgraphs::complete(4, 3);
        let HierarchySearch::Found { tree } =
            find_twistless_hierarchy(&g, DEFAULT_BUDGET).unwrap()
        else {
            panic!("expected a witness");
        };
        assert!(tree.leaf);
        assert!(validate_tree(&g, &tree));
    }

    #[test]
    fn five_cycle_is_definitively_negative() {
        let g = testgraphs::cycle(5, 6);
        assert_eq!(
            find_twistless_hierarchy(&g, DEFAULT_BUDGET).unwrap(),
            HierarchySearch::NoneDefinitive
        );
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let g = testgraphs::octahedron(4);
        assert_eq!(
            find_twistless_hierarchy(&g, 1).unwrap(),
            HierarchySearch::NoneExhausted { budget: 1 }
        );
        assert_eq!(
            find_twistless_hierarchy(&g, 0),
            Err(HierarchyError::ZeroBudget)
        );
    }

    #[test]
    fn search_is_deterministic() {
        let g = testgraphs::octahedron(4);
        let a = find_twistless_hierarchy(&g, DEFAULT_BUDGET).unwrap();
        let b = find_twistless_hierarchy(&g, DEFAULT_BUDGET).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn twistless_matches_decomposition_characterization() {
        for g in [
            testgraphs::complete(4, 3),
            testgraphs::cycle(4, 3),
            testgraphs::cycle(5, 6),
            testgraphs::path(&[3, 3]),
            testgraphs::octahedron(4),
        ] {
            assert_eq!(
                crate::classify::is_twistless(&g),
                twistless_via_decompositions(&g),
                "{:?}",
                g.vertex_names()
            );
        }
    }
}
