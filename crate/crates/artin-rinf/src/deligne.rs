//! A finite ball of the link of a dihedral-type vertex in the Deligne
//! complex: element vertices joined to the two generator cosets through
//! them, with a girth computation verifying that the shortest loop has
//! length 4m.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::corpus::dihedral as dihedral_graph;
use crate::garside::{ArtinWord, Garside, GarsideError, NormalForm};
use crate::graph::{Label, LabeledGraph};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeligneError {
    #[error("edge label must be a finite integer >= 3, got {m}")]
    BadLabel { m: u32 },
    #[error(transparent)]
    Garside(#[from] GarsideError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum VertexTag {
    Element,
    CosetA,
    CosetB,
}

#[derive(Debug, Clone, Serialize)]
pub struct LinkVertex {
    pub tag: VertexTag,
    /// Canonical normal form of a representative (for cosets, the minimal
    /// normal form among the members inside the ball).
    pub rep: NormalForm,
    /// True when the ball does not contain the full local structure
    /// around this vertex: an element missing a one-letter neighbor, or a
    /// coset touching fewer than two ball elements.
    pub boundary: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LinkBall {
    pub m: u32,
    pub cap: usize,
    pub vertices: Vec<LinkVertex>,
    /// Pairs (element vertex, coset vertex), sorted.
    pub edges: Vec<(usize, usize)>,
    /// Set when cap < 2, too small for the expected minimal loop.
    pub cap_warning: bool,
    #[serde(skip)]
    words: Vec<ArtinWord>,
}

impl LinkBall {
    pub fn element_count(&self) -> usize {
        self.vertices
            .iter()
            .filter(|v| v.tag == VertexTag::Element)
            .count()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![vec![]; self.vertices.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Word representative of a vertex, for reports.
    pub fn word(&self, v: usize) -> &ArtinWord {
        &self.words[v]
    }

    pub fn edge_list_text(&self, g: &LabeledGraph) -> String {
        let mut out = String::new();
        for &(a, b) in &self.edges {
            out.push_str(&format!(
                "{}\t{}\n",
                vertex_label(self, a, g),
                vertex_label(self, b, g)
            ));
        }
        out
    }

    pub fn to_json(&self, g: &LabeledGraph) -> serde_json::Value {
        let vertices: Vec<serde_json::Value> = (0..self.vertices.len())
            .map(|i| {
                serde_json::json!({
                    "tag": self.vertices[i].tag,
                    "rep": vertex_label(self, i, g),
                    "boundary": self.vertices[i].boundary,
                })
            })
            .collect();
        serde_json::json!({
            "m": self.m,
            "cap": self.cap,
            "cap_warning": self.cap_warning,
            "vertices": vertices,
            "edges": self.edges,
        })
    }
}

fn vertex_label(ball: &LinkBall, v: usize, g: &LabeledGraph) -> String {
    let word = ball.words[v].display(g);
    let word = if word.is_empty() { "1".to_string() } else { word };
    match ball.vertices[v].tag {
        VertexTag::Element => word,
        VertexTag::CosetA => format!("{word} <a>"),
        VertexTag::CosetB => format!("{word} <b>"),
    }
}

/// Builds the ball of the dihedral link for edge label m: all elements
/// whose normal form has infimum >= -1, canonical length <= cap and
/// supremum between 0 and cap, together with their generator cosets.
/// The supremum window keeps the ball finite while containing every
/// relator-prefix loop.
pub fn build_link_ball(m: u32, cap: usize) -> Result<LinkBall, DeligneError> {
    if m < 3 {
        return Err(DeligneError::BadLabel { m });
    }
    let g = dihedral_graph(Label::Finite(m));
    let engine = Garside::new(&g)?;
    let sys = &engine.sys;
    let w0 = sys.w0;

    // enumerate normal forms directly: left-weighted factor chains under
    // the caps, with an explicit word representative for each
    let simples: Vec<u32> = (1..sys.size as u32).filter(|&x| x != w0).collect();
    let follows = |u: u32, v: u32| {
        (0..sys.ngens())
            .all(|s| !sys.is_left_descent(s, v) || sys.is_right_descent(u, s))
    };
    let mut chains: Vec<Vec<u32>> = vec![vec![]];
    let mut frontier: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..cap {
        let mut next = vec![];
        for chain in &frontier {
            for &s in &simples {
                if chain.last().map_or(true, |&u| follows(u, s)) {
                    let mut c = chain.clone();
                    c.push(s);
                    next.push(c);
                }
            }
        }
        chains.extend(next.iter().cloned());
        frontier = next;
    }

    let delta_word = engine.delta_word();
    let word_of = |nf: &NormalForm| {
        let mut w = ArtinWord::empty();
        if nf.delta >= 0 {
            for _ in 0..nf.delta {
                w = w.concat(&delta_word);
            }
        } else {
            for _ in 0..-nf.delta {
                w = w.concat(&delta_word.inverse());
            }
        }
        for &f in &nf.factors {
            let letters: Vec<usize> = sys.reduced_word(f).iter().map(|&s| s as usize).collect();
            w = w.concat(&ArtinWord::from_indices(&letters));
        }
        w
    };

    let mut elements: Vec<(NormalForm, ArtinWord)> = vec![];
    for chain in &chains {
        let l = chain.len() as i64;
        for p in (-1i64).max(-l)..=(cap as i64 - l) {
            let nf = NormalForm {
                delta: p,
                factors: chain.clone(),
            };
            let word = word_of(&nf);
            elements.push((nf, word));
        }
    }
    elements.sort_by(|a, b| a.0.cmp(&b.0));
    let in_ball: HashSet<NormalForm> = elements.iter().map(|(nf, _)| nf.clone()).collect();

    // pure powers of each generator, for the coset membership test
    let window = 2 * (cap + 1) * m as usize + 2;
    let power_set = |gen: usize| -> HashSet<NormalForm> {
        let mut set = HashSet::new();
        for k in 0..=window {
            let pos = ArtinWord::from_indices(&vec![gen; k]);
            set.insert(engine.normal_form(&pos).unwrap());
            set.insert(engine.normal_form(&pos.inverse()).unwrap());
        }
        set
    };
    let powers = [power_set(0), power_set(1)];

    // group elements into cosets g<a>, g<b> by the membership test
    // "h^-1 g is a pure power of the generator"
    let mut coset_of = vec![[usize::MAX; 2]; elements.len()];
    let mut coset_members: Vec<(usize, Vec<usize>)> = vec![]; // (gen, element ids)
    for (ei, (_, word)) in elements.iter().enumerate() {
        for gen in 0..2 {
            let found = coset_members
                .iter()
                .position(|(cg, members)| {
                    *cg == gen && {
                        let rep = &elements[members[0]].1;
                        let diff = rep.inverse().concat(word);
                        powers[gen].contains(&engine.normal_form(&diff).unwrap())
                    }
                });
            match found {
                Some(ci) => {
                    coset_members[ci].1.push(ei);
                    coset_of[ei][gen] = ci;
                }
                None => {
                    coset_of[ei][gen] = coset_members.len();
                    coset_members.push((gen, vec![ei]));
                }
            }
        }
    }

    // boundary: an element is interior when all four one-letter moves
    // stay inside the ball
    let letters: Vec<ArtinWord> = vec![
        ArtinWord::from_indices(&[0]),
        ArtinWord::from_indices(&[0]).inverse(),
        ArtinWord::from_indices(&[1]),
        ArtinWord::from_indices(&[1]).inverse(),
    ];
    let element_boundary: Vec<bool> = elements
        .iter()
        .map(|(_, word)| {
            letters
                .iter()
                .any(|l| !in_ball.contains(&engine.normal_form(&word.concat(l)).unwrap()))
        })
        .collect();

    let mut vertices: Vec<LinkVertex> = vec![];
    let mut words: Vec<ArtinWord> = vec![];
    for (ei, (nf, word)) in elements.iter().enumerate() {
        vertices.push(LinkVertex {
            tag: VertexTag::Element,
            rep: nf.clone(),
            boundary: element_boundary[ei],
        });
        words.push(word.clone());
    }
    let coset_base = vertices.len();
    for (gen, members) in &coset_members {
        let (rep_nf, rep_word) = members
            .iter()
            .map(|&ei| (&elements[ei].0, &elements[ei].1))
            .min_by(|a, b| a.0.cmp(b.0))
            .unwrap();
        vertices.push(LinkVertex {
            tag: if *gen == 0 {
                VertexTag::CosetA
            } else {
                VertexTag::CosetB
            },
            rep: rep_nf.clone(),
            boundary: members.len() < 2,
        });
        words.push(rep_word.clone());
    }

    let mut edges: Vec<(usize, usize)> = vec![];
    for ei in 0..elements.len() {
        for gen in 0..2 {
            edges.push((ei, coset_base + coset_of[ei][gen]));
        }
    }
    edges.sort_unstable();

    Ok(LinkBall {
        m,
        cap,
        vertices,
        edges,
        cap_warning: cap < 2,
        words,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GirthReport {
    /// Length of the shortest cycle found; None when the ball is acyclic.
    pub girth: Option<usize>,
    /// True when a shortest cycle lies entirely among interior vertices,
    /// so the ball contains the full local structure around it.
    pub exact: bool,
    /// Vertex indices of one shortest cycle, in order.
    pub witness: Vec<usize>,
}

/// Shortest cycle through each edge: remove the edge, find the shortest
/// remaining path between its endpoints.
fn cycle_through_edge(adj: &[Vec<usize>], skip: (usize, usize)) -> Option<Vec<usize>> {
    let (src, dst) = skip;
    let mut parent = vec![usize::MAX; adj.len()];
    let mut seen = vec![false; adj.len()];
    seen[src] = true;
    let mut queue = VecDeque::from([src]);
    while let Some(v) = queue.pop_front() {
        for &u in &adj[v] {
            if (v, u) == skip || (u, v) == skip || seen[u] {
                continue;
            }
            seen[u] = true;
            parent[u] = v;
            if u == dst {
                let mut path = vec![u];
                let mut cur = u;
                while cur != src {
                    cur = parent[cur];
                    path.push(cur);
                }
                return Some(path);
            }
            queue.push_back(u);
        }
    }
    None
}

fn shortest_cycle(edges: &[(usize, usize)], adj: &[Vec<usize>]) -> Option<(usize, Vec<usize>)> {
    let per_edge = |&(a, b): &(usize, usize)| {
        cycle_through_edge(adj, (a, b)).map(|path| (path.len(), (a, b), path))
    };
    #[cfg(feature = "parallel")]
    let candidates: Vec<_> = edges.par_iter().filter_map(per_edge).collect();
    #[cfg(not(feature = "parallel"))]
    let candidates: Vec<_> = edges.iter().filter_map(per_edge).collect();
    candidates
        .into_iter()
        .min_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)))
        .map(|(len, _, path)| (len, path))
}

pub fn girth_lower_bound(ball: &LinkBall) -> GirthReport {
    let adj = ball.adjacency();
    let Some((girth, path)) = shortest_cycle(&ball.edges, &adj) else {
        return GirthReport {
            girth: None,
            exact: false,
            witness: vec![],
        };
    };
    // a shortest cycle certifies the bound only when the ball contains
    // the full local structure around it, so look for one among the
    // interior vertices alone
    let interior_edges: Vec<(usize, usize)> = ball
        .edges
        .iter()
        .copied()
        .filter(|&(a, b)| !ball.vertices[a].boundary && !ball.vertices[b].boundary)
        .collect();
    let mut interior_adj = vec![vec![]; ball.vertices.len()];
    for &(a, b) in &interior_edges {
        interior_adj[a].push(b);
        interior_adj[b].push(a);
    }
    match shortest_cycle(&interior_edges, &interior_adj) {
        Some((len, interior_path)) if len == girth => GirthReport {
            girth: Some(girth),
            exact: true,
            witness: interior_path,
        },
        _ => GirthReport {
            girth: Some(girth),
            exact: false,
            witness: path,
        },
    }
}

/// The loop traced by the prefixes of the defining relator
/// Pi(a,b,m) Pi(b,a,m)^-1: 2m element vertices alternating with the 2m
/// cosets joining consecutive prefixes.
pub fn relator_prefix_loop(ball: &LinkBall) -> Result<Vec<usize>, DeligneError> {
    let m = ball.m as usize;
    let g = dihedral_graph(Label::Finite(ball.m));
    let engine = Garside::new(&g)?;
    let mut letters: Vec<(usize, i8)> = (0..m).map(|i| (i % 2, 1)).collect();
    letters.extend((0..m).map(|i| ((m + i) % 2, -1)));

    let nf_to_vertex: HashMap<NormalForm, usize> = ball
        .vertices
        .iter()
        .enumerate()
        .filter(|(_, v)| v.tag == VertexTag::Element)
        .map(|(i, v)| (v.rep.clone(), i))
        .collect();
    let adj = ball.adjacency();

    let mut word = ArtinWord::empty();
    let mut loop_vertices = vec![];
    let mut prev_elem: Option<usize> = None;
    for &(gen, exp) in letters.iter().chain(std::iter::once(&letters[0])) {
        let nf = engine.normal_form(&word).unwrap();
        let elem = *nf_to_vertex
            .get(&nf)
            .expect("relator prefix must lie in the ball");
        if let Some(prev) = prev_elem {
            // consecutive prefixes differ by one letter, so they share
            // exactly one coset vertex
            let coset = adj[prev]
                .iter()
                .copied()
                .find(|c| adj[*c].contains(&elem))
                .expect("consecutive prefixes share a coset");
            loop_vertices.push(coset);
        }
        if loop_vertices.len() >= 4 * m {
            break;
        }
        loop_vertices.push(elem);
        prev_elem = Some(elem);
        word.letters.push((gen, exp));
    }
    Ok(loop_vertices)
}
