//! Shared oracles for the integration tests. Everything here is written
//! against the defining presentations only, independently of the library's
//! reflection-representation enumeration and Garside machinery.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use artin_rinf::garside::ArtinWord;
use artin_rinf::{Label, LabeledGraph};
use rand::Rng;

const UNDEF: u32 = u32::MAX;

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let p = parent[x as usize];
        parent[x as usize] = parent[p as usize];
        x = parent[x as usize];
    }
    x
}

fn coincide(table: &mut Vec<u32>, parent: &mut [u32], n: usize, a: u32, b: u32) {
    let mut queue = vec![(a, b)];
    while let Some((a, b)) = queue.pop() {
        let a = find(parent, a);
        let b = find(parent, b);
        if a == b {
            continue;
        }
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        parent[drop as usize] = keep;
        for s in 0..n {
            let v = table[drop as usize * n + s];
            if v == UNDEF {
                continue;
            }
            let v = find(parent, v);
            let cur = table[keep as usize * n + s];
            if cur == UNDEF {
                table[keep as usize * n + s] = v;
                let back = table[v as usize * n + s];
                if back == UNDEF {
                    table[v as usize * n + s] = keep;
                } else {
                    queue.push((back, keep));
                }
            } else {
                queue.push((cur, v));
            }
        }
    }
}

/// One HLT-style scan of `rel` from coset `c`, filling gaps with fresh
/// cosets. Generators are involutions, so each is its own inverse and the
/// coset table is kept symmetric.
fn scan_and_fill(table: &mut Vec<u32>, parent: &mut Vec<u32>, n: usize, c: u32, rel: &[usize]) {
    let mut f = find(parent, c);
    let mut b = find(parent, c);
    let mut i: i64 = 0;
    let mut j: i64 = rel.len() as i64 - 1;
    loop {
        while i <= j {
            let t = table[f as usize * n + rel[i as usize]];
            if t == UNDEF {
                break;
            }
            f = find(parent, t);
            i += 1;
        }
        if i > j {
            if f != b {
                coincide(table, parent, n, f, b);
            }
            return;
        }
        while j >= i {
            let t = table[b as usize * n + rel[j as usize]];
            if t == UNDEF {
                break;
            }
            b = find(parent, t);
            j -= 1;
        }
        if j < i {
            coincide(table, parent, n, f, b);
            return;
        }
        if j == i {
            // deduction closing the relator
            table[f as usize * n + rel[i as usize]] = b;
            table[b as usize * n + rel[i as usize]] = f;
            return;
        }
        // both scans stuck with a gap: define a fresh coset
        let d = parent.len() as u32;
        parent.push(d);
        table.extend(std::iter::repeat(UNDEF).take(n));
        table[f as usize * n + rel[i as usize]] = d;
        table[d as usize * n + rel[i as usize]] = f;
        f = d;
        i += 1;
    }
}

/// Todd-Coxeter coset enumeration over the trivial subgroup for the
/// Coxeter group of `g`: the number of cosets is the group order. Returns
/// `None` for graphs with an infinite label or when `max_cosets` live
/// cosets are exceeded.
pub fn todd_coxeter_order(g: &LabeledGraph, max_cosets: usize) -> Option<usize> {
    let n = g.vertex_count();
    let mut relators: Vec<Vec<usize>> = vec![];
    for (u, v, m) in g.all_pairs() {
        let Label::Finite(m) = m else {
            return None;
        };
        let mut rel = Vec::with_capacity(2 * m as usize);
        for _ in 0..m {
            rel.push(u);
            rel.push(v);
        }
        relators.push(rel);
    }
    let mut table: Vec<u32> = vec![UNDEF; n];
    let mut parent: Vec<u32> = vec![0];
    // fixpoint: rescan everything until no new cosets and no merges occur
    loop {
        let before = parent.len();
        let mut c = 0;
        while (c as usize) < parent.len() {
            if find(&mut parent, c) != c {
                c += 1;
                continue;
            }
            for rel in &relators {
                scan_and_fill(&mut table, &mut parent, n, c, rel);
                if find(&mut parent, c) != c {
                    break;
                }
            }
            if find(&mut parent, c) == c {
                for s in 0..n {
                    if table[c as usize * n + s] == UNDEF {
                        let d = parent.len() as u32;
                        parent.push(d);
                        table.extend(std::iter::repeat(UNDEF).take(n));
                        table[c as usize * n + s] = d;
                        table[d as usize * n + s] = c;
                    }
                }
            }
            if parent.len() > max_cosets {
                return None;
            }
            c += 1;
        }
        let merged = (0..parent.len() as u32).any(|x| find(&mut parent, x) != x);
        if parent.len() == before && !merged {
            break;
        }
        if !grew_or_dirty(&mut table, &mut parent, n, &relators) {
            break;
        }
    }
    let order = (0..parent.len() as u32)
        .filter(|&x| find(&mut parent, x) == x)
        .count();
    // sanity: the live table must be complete and close every relator
    for c in 0..parent.len() as u32 {
        if find(&mut parent, c) != c {
            continue;
        }
        for s in 0..n {
            let t = table[c as usize * n + s];
            assert_ne!(t, UNDEF, "incomplete coset table");
            let t = find(&mut parent, t);
            let back = table[t as usize * n + s];
            assert_eq!(find(&mut parent, back), c, "asymmetric coset table");
        }
        for rel in &relators {
            let mut x = c;
            for &s in rel {
                x = find(&mut parent, table[x as usize * n + s]);
            }
            assert_eq!(x, c, "relator does not close");
        }
    }
    Some(order)
}

/// True when some live coset still has an undefined entry or an unclosed
/// relator, so another pass is needed.
fn grew_or_dirty(
    table: &mut Vec<u32>,
    parent: &mut Vec<u32>,
    n: usize,
    relators: &[Vec<usize>],
) -> bool {
    for c in 0..parent.len() as u32 {
        if find(parent, c) != c {
            continue;
        }
        for s in 0..n {
            if table[c as usize * n + s] == UNDEF {
                return true;
            }
        }
        for rel in relators {
            let mut x = c;
            for &s in rel {
                let t = table[x as usize * n + s];
                if t == UNDEF {
                    return true;
                }
                x = find(parent, t);
            }
            if x != c {
                return true;
            }
        }
    }
    false
}

type Letters = Vec<(usize, i8)>;

fn free_reduce(mut w: Letters) -> Letters {
    let mut out: Letters = vec![];
    for l in w.drain(..) {
        if let Some(&(g, e)) = out.last() {
            if g == l.0 && e == -l.1 {
                out.pop();
                continue;
            }
        }
        out.push(l);
    }
    out
}

fn relator_halves(m: u32) -> Vec<(Letters, Letters)> {
    let m = m as usize;
    let pi = |first: usize| -> Letters { (0..m).map(|i| ((first + i) % 2, 1)).collect() };
    let inv = |w: &Letters| -> Letters { w.iter().rev().map(|&(g, e)| (g, -e)).collect() };
    let r0 = pi(0);
    let r1 = pi(1);
    let r0i = inv(&r0);
    let r1i = inv(&r1);
    vec![
        (r0.clone(), r1.clone()),
        (r1, r0),
        (r0i.clone(), r1i.clone()),
        (r1i, r0i),
    ]
}

/// Breadth-first rewriting closure for the dihedral Artin group A[I2(m)]:
/// all words reachable from `from` by free insertions and cancellations
/// bounded by `max_len` plus braid relator substring swaps, exploring at
/// most `budget` words. Every returned word equals `from` in the group;
/// the set is complete only up to the bounds.
pub fn dihedral_closure(
    m: u32,
    from: &[(usize, i8)],
    max_len: usize,
    budget: usize,
) -> HashSet<Letters> {
    let start = free_reduce(from.to_vec());
    let swaps = relator_halves(m);
    let mlen = m as usize;
    let mut seen: HashSet<Letters> = HashSet::new();
    let mut queue: VecDeque<Letters> = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    let mut explored = 0usize;
    while let Some(w) = queue.pop_front() {
        explored += 1;
        if explored > budget {
            break;
        }
        let push = |next: Letters, seen: &mut HashSet<Letters>, queue: &mut VecDeque<Letters>| {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        };
        // cancellations
        for p in 0..w.len().saturating_sub(1) {
            if w[p].0 == w[p + 1].0 && w[p].1 == -w[p + 1].1 {
                let mut next = w.clone();
                next.drain(p..p + 2);
                push(next, &mut seen, &mut queue);
            }
        }
        // insertions
        if w.len() + 2 <= max_len {
            for p in 0..=w.len() {
                for gen in 0..2 {
                    for e in [1i8, -1] {
                        let mut next = w.clone();
                        next.splice(p..p, [(gen, e), (gen, -e)]);
                        push(next, &mut seen, &mut queue);
                    }
                }
            }
        }
        // relator swaps
        if w.len() >= mlen {
            for p in 0..=w.len() - mlen {
                for (pat, rep) in &swaps {
                    if &w[p..p + mlen] == pat.as_slice() {
                        let mut next = w.clone();
                        next.splice(p..p + mlen, rep.iter().copied());
                        push(next, &mut seen, &mut queue);
                    }
                }
            }
        }
    }
    seen
}

/// A uniformly random word over `ngens` generators and both exponents.
pub fn random_word(rng: &mut impl Rng, ngens: usize, len: usize) -> ArtinWord {
    ArtinWord {
        letters: (0..len)
            .map(|_| {
                (
                    rng.gen_range(0..ngens),
                    if rng.gen::<bool>() { 1i8 } else { -1 },
                )
            })
            .collect(),
    }
}
