//! Enumeration of finite Coxeter groups through the geometric (reflection)
//! representation, conjugacy classes, twisted conjugacy classes and
//! Reidemeister numbers, with a coset-based second route through the
//! semidirect product.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::classify::{gram_matrix, spherical_type};
use crate::graph::{GraphAutomorphism, LabeledGraph};
use crate::torus;

/// Grid used to canonicalize reflection matrices for hashing.
const KEY_GRID: f64 = 1e6;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoxeterError {
    #[error("graph is not of spherical type")]
    NonSpherical,
    #[error("size bound exceeded (reached {reached} elements)")]
    SizeBound { reached: usize },
    #[error("permutation is not a label-preserving graph automorphism")]
    NotLabelPreserving,
    #[error("permutation is not a group automorphism")]
    NotAnAutomorphism,
}

/// A finite Coxeter group enumerated element by element. Elements are
/// indexed `0..size` with the identity at 0; only the generator
/// multiplication tables are stored, so this scales to the larger groups
/// the Garside engine needs.
#[derive(Debug, Clone)]
pub struct CoxeterSystem {
    pub gen_names: Vec<String>,
    pub size: usize,
    ngens: usize,
    right: Vec<u32>,
    left: Vec<u32>,
    pub length: Vec<u32>,
    /// `(parent element, generator)` along a BFS tree of reduced words.
    parent: Vec<(u32, u8)>,
    /// Longest element.
    pub w0: u32,
    /// Conjugation by the longest element, as a permutation of elements.
    tau: Vec<u32>,
}

impl CoxeterSystem {
    /// Enumerates `W[g]`. Errors on non-spherical input or when the closure
    /// exceeds `size_bound`.
    pub fn enumerate(g: &LabeledGraph, size_bound: usize) -> Result<Self, CoxeterError> {
        if spherical_type(g).is_none() {
            return Err(CoxeterError::NonSpherical);
        }
        let n = g.vertex_count();
        let gram = gram_matrix(g);
        // generator s acts on the simple-root basis by
        // alpha_j -> alpha_j - 2 <alpha_j, alpha_s> alpha_s
        let gen_mats: Vec<Vec<f64>> = (0..n)
            .map(|s| {
                let mut m = identity_mat(n);
                for j in 0..n {
                    m[s * n + j] -= 2.0 * gram[s][j];
                }
                m
            })
            .collect();

        let mut keys: HashMap<Vec<i64>, u32> = HashMap::new();
        let mut mats: Vec<Vec<f64>> = vec![identity_mat(n)];
        let mut length: Vec<u32> = vec![0];
        let mut parent: Vec<(u32, u8)> = vec![(0, 0)];
        let mut right: Vec<u32> = vec![];
        keys.insert(mat_key(&mats[0]), 0);

        let mut head = 0usize;
        while head < mats.len() {
            for s in 0..n {
                let prod = mat_mul(&mats[head], &gen_mats[s], n);
                let key = mat_key(&prod);
                let idx = match keys.get(&key) {
                    Some(&i) => i,
                    None => {
                        let i = mats.len() as u32;
                        if mats.len() >= size_bound {
                            return Err(CoxeterError::SizeBound { reached: mats.len() });
                        }
                        keys.insert(key, i);
                        mats.push(prod);
                        length.push(length[head] + 1);
                        parent.push((head as u32, s as u8));
                        i
                    }
                };
                right.push(idx);
            }
            head += 1;
        }
        let size = mats.len();

        let mut left = vec![0u32; size * n];
        for x in 0..size {
            for s in 0..n {
                let prod = mat_mul(&gen_mats[s], &mats[x], n);
                left[x * n + s] = keys[&mat_key(&prod)];
            }
        }
        let w0 = (0..size).max_by_key(|&x| length[x]).unwrap() as u32;
        debug_assert_eq!(
            (0..size).filter(|&x| length[x] == length[w0 as usize]).count(),
            1,
            "longest element must be unique"
        );
        let w0_mat = mats[w0 as usize].clone();
        let tau: Vec<u32> = (0..size)
            .map(|x| {
                let prod = mat_mul(&mat_mul(&w0_mat, &mats[x], n), &w0_mat, n);
                keys[&mat_key(&prod)]
            })
            .collect();

        Ok(CoxeterSystem {
            gen_names: g.vertex_names().to_vec(),
            size,
            ngens: n,
            right,
            left,
            length,
            parent,
            w0,
            tau,
        })
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn gen(&self, s: usize) -> u32 {
        self.right_mul(0, s)
    }

    pub fn right_mul(&self, x: u32, s: usize) -> u32 {
        self.right[x as usize * self.ngens + s]
    }

    pub fn left_mul(&self, s: usize, x: u32) -> u32 {
        self.left[x as usize * self.ngens + s]
    }

    pub fn tau(&self, x: u32) -> u32 {
        self.tau[x as usize]
    }

    pub fn is_right_descent(&self, x: u32, s: usize) -> bool {
        self.length[self.right_mul(x, s) as usize] < self.length[x as usize]
    }

    pub fn is_left_descent(&self, s: usize, x: u32) -> bool {
        self.length[self.left_mul(s, x) as usize] < self.length[x as usize]
    }

    /// A reduced word for `x` along the BFS tree.
    pub fn reduced_word(&self, x: u32) -> Vec<u8> {
        let mut word = vec![];
        let mut cur = x;
        while cur != 0 {
            let (p, s) = self.parent[cur as usize];
            word.push(s);
            cur = p;
        }
        word.reverse();
        word
    }

    /// General product by walking a reduced word of `y`.
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        let mut acc = x;
        for s in self.reduced_word(y) {
            acc = self.right_mul(acc, s as usize);
        }
        acc
    }

    pub fn inv(&self, x: u32) -> u32 {
        let mut acc = 0;
        for s in self.reduced_word(x).into_iter().rev() {
            acc = self.right_mul(acc, s as usize);
        }
        acc
    }
}

fn identity_mat(n: usize) -> Vec<f64> {
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        m[i * n + i] = 1.0;
    }
    m
}

fn mat_mul(a: &[f64], b: &[f64], n: usize) -> Vec<f64> {
    let mut c = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    c
}

fn mat_key(m: &[f64]) -> Vec<i64> {
    m.iter().map(|&x| (x * KEY_GRID).round() as i64).collect()
}

/// Fully tabulated finite group: multiplication and inverse tables plus a
/// distinguished generating set. Identity is element 0.
#[derive(Debug, Clone)]
pub struct GroupTable {
    pub size: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    /// Generator name -> element index.
    pub gens: Vec<(String, u32)>,
    /// Coxeter length, when the table came from a Coxeter enumeration.
    pub length: Option<Vec<u32>>,
    /// Reduced words over `gens` along a BFS tree, for extending
    /// generator maps to the whole group.
    words: Vec<Vec<u8>>,
}

impl GroupTable {
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.size + b as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn word(&self, x: u32) -> &[u8] {
        &self.words[x as usize]
    }

    pub fn gen_elements(&self) -> Vec<u32> {
        self.gens.iter().map(|&(_, e)| e).collect()
    }

    /// Builds a table from raw parts, deriving inverses and BFS words.
    pub fn from_mul(size: usize, mul: Vec<u32>, gens: Vec<(String, u32)>) -> GroupTable {
        assert_eq!(mul.len(), size * size);
        let mut inv = vec![u32::MAX; size];
        for a in 0..size as u32 {
            for b in 0..size as u32 {
                if mul[a as usize * size + b as usize] == 0 {
                    inv[a as usize] = b;
                }
            }
        }
        let mut words: Vec<Vec<u8>> = vec![vec![]; size];
        let mut seen = vec![false; size];
        seen[0] = true;
        let mut queue = std::collections::VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for (gi, &(_, gelt)) in gens.iter().enumerate() {
                let y = mul[x as usize * size + gelt as usize];
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    let mut w = words[x as usize].clone();
                    w.push(gi as u8);
                    words[y as usize] = w;
                    queue.push_back(y);
                }
            }
        }
        assert!(seen.iter().all(|&s| s), "generators must generate");
        GroupTable {
            size,
            mul,
            inv,
            gens,
            length: None,
            words,
        }
    }

    /// Tabulates a [`CoxeterSystem`] completely.
    pub fn from_system(sys: &CoxeterSystem) -> GroupTable {
        let size = sys.size;
        let mut mul = vec![0u32; size * size];
        let words: Vec<Vec<u8>> = (0..size as u32).map(|x| sys.reduced_word(x)).collect();
        for x in 0..size as u32 {
            for y in 0..size as u32 {
                let mut acc = x;
                for &s in &words[y as usize] {
                    acc = sys.right_mul(acc, s as usize);
                }
                mul[x as usize * size + y as usize] = acc;
            }
        }
        let gens: Vec<(String, u32)> = sys
            .gen_names
            .iter()
            .enumerate()
            .map(|(s, name)| (name.clone(), sys.gen(s)))
            .collect();
        let mut t = GroupTable::from_mul(size, mul, gens);
        t.length = Some(sys.length.clone());
        t.words = words;
        t
    }

    /// JSON header for the export format; the multiplication table itself
    /// goes in a sidecar text file, one row per line.
    pub fn export_header(&self) -> serde_json::Value {
        let gens: serde_json::Map<String, serde_json::Value> = self
            .gens
            .iter()
            .map(|(name, e)| (name.clone(), serde_json::json!(e)))
            .collect();
        serde_json::json!({ "size": self.size, "gens": gens })
    }

    pub fn mul_table_rows(&self) -> impl Iterator<Item = String> + '_ {
        (0..self.size).map(move |a| {
            self.mul[a * self.size..(a + 1) * self.size]
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
    }
}

/// Enumerates the finite Coxeter group of `g` as a full [`GroupTable`].
pub fn enumerate_group(g: &LabeledGraph, size_bound: usize) -> Result<GroupTable, CoxeterError> {
    let sys = CoxeterSystem::enumerate(g, size_bound)?;
    Ok(GroupTable::from_system(&sys))
}

/// An automorphism of a tabulated group, stored as a permutation of
/// element indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupAutomorphism {
    pub perm: Vec<u32>,
}

impl GroupAutomorphism {
    pub fn identity(size: usize) -> Self {
        GroupAutomorphism {
            perm: (0..size as u32).collect(),
        }
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.perm[x as usize]
    }

    pub fn compose(&self, other: &GroupAutomorphism) -> GroupAutomorphism {
        GroupAutomorphism {
            perm: other.perm.iter().map(|&x| self.perm[x as usize]).collect(),
        }
    }

    /// Multiplicative order as a permutation.
    pub fn order(&self) -> usize {
        let id: Vec<u32> = (0..self.perm.len() as u32).collect();
        let mut acc = self.clone();
        let mut k = 1;
        while acc.perm != id {
            acc = self.compose(&acc);
            k += 1;
        }
        k
    }

    pub fn is_automorphism(&self, t: &GroupTable) -> bool {
        if self.perm[0] != 0 || self.perm.len() != t.size {
            return false;
        }
        for a in 0..t.size as u32 {
            for b in 0..t.size as u32 {
                if self.apply(t.mul(a, b)) != t.mul(self.apply(a), self.apply(b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Inner automorphism of conjugation by `g`.
    pub fn conjugation(t: &GroupTable, g: u32) -> GroupAutomorphism {
        let gi = t.inv(g);
        GroupAutomorphism {
            perm: (0..t.size as u32).map(|x| t.mul(t.mul(g, x), gi)).collect(),
        }
    }
}

/// Extends a label-preserving graph automorphism to the unique group
/// automorphism permuting the generators accordingly.
pub fn induced_automorphism(
    t: &GroupTable,
    g: &LabeledGraph,
    sigma: &GraphAutomorphism,
) -> Result<GroupAutomorphism, CoxeterError> {
    if !sigma.preserves_labels(g) {
        return Err(CoxeterError::NotLabelPreserving);
    }
    let gen_elt: Vec<u32> = t.gen_elements();
    let perm: Vec<u32> = (0..t.size as u32)
        .map(|x| {
            let mut acc = t.identity();
            for &s in t.word(x) {
                acc = t.mul(acc, gen_elt[sigma.image[s as usize]]);
            }
            acc
        })
        .collect();
    let phi = GroupAutomorphism { perm };
    if !phi.is_automorphism(t) {
        return Err(CoxeterError::NotAnAutomorphism);
    }
    Ok(phi)
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = x;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as representative
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }

    fn classes(&mut self) -> Vec<Vec<u32>> {
        let n = self.parent.len();
        let mut buckets: std::collections::BTreeMap<u32, Vec<u32>> = Default::default();
        for x in 0..n as u32 {
            let r = self.find(x);
            buckets.entry(r).or_default().push(x);
        }
        buckets.into_values().collect()
    }
}

/// Ordinary conjugacy classes, each listed with its smallest element first.
pub fn conjugacy_classes(t: &GroupTable) -> Vec<Vec<u32>> {
    let mut uf = UnionFind::new(t.size);
    for x in 0..t.size as u32 {
        for &s in &t.gen_elements() {
            uf.union(x, t.mul(t.mul(s, x), t.inv(s)));
        }
    }
    uf.classes()
}

/// Orbits of the twisted conjugation `g ~ x g phi(x)^{-1}`.
pub fn twisted_classes(t: &GroupTable, phi: &GroupAutomorphism) -> Vec<Vec<u32>> {
    let mut uf = UnionFind::new(t.size);
    for g in 0..t.size as u32 {
        for &s in &t.gen_elements() {
            uf.union(g, t.mul(t.mul(s, g), t.inv(phi.apply(s))));
        }
    }
    uf.classes()
}

/// Number of phi-twisted conjugacy classes.
pub fn reidemeister_number(t: &GroupTable, phi: &GroupAutomorphism) -> usize {
    twisted_classes(t, phi).len()
}

/// Independent route: the number of ordinary conjugacy classes of the
/// semidirect product `G x <c>` (c acting as phi, of the permutation order
/// of phi) meeting the coset `G c`.
pub fn reidemeister_via_coset(t: &GroupTable, phi: &GroupAutomorphism) -> usize {
    let k = phi.order();
    if k == 1 {
        return conjugacy_classes(t).len();
    }
    let big = torus::realize_finite(t, phi);
    let classes = conjugacy_classes(&big);
    let coset: Vec<bool> = (0..big.size as u32)
        .map(|x| (x as usize) / t.size == 1)
        .collect();
    classes
        .iter()
        .filter(|cls| cls.iter().any(|&x| coset[x as usize]))
        .count()
}
