//! Left-weighted normal forms for spherical Artin groups, with the
//! Delta-conjugation, generator-swap and inversion maps needed to verify
//! the dihedral-angle identities for the D series.

use serde::Serialize;

use crate::classify::spherical_type;
use crate::coxeter::{CoxeterError, CoxeterSystem};
use crate::graph::{GraphAutomorphism, LabeledGraph};

/// Inputs longer than this are rejected before any enumeration work.
pub const MAX_WORD_LETTERS: usize = 10_000;

/// Element count bound for the backing Coxeter enumeration.
const ENUMERATION_BOUND: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GarsideError {
    #[error("graph is not of spherical type")]
    NonSpherical,
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error("word exceeds the {MAX_WORD_LETTERS}-letter guard ({len} letters)")]
    WordTooLong { len: usize },
    #[error("unknown generator {name:?}")]
    UnknownGenerator { name: String },
    #[error("malformed letter {token:?} (expected \"t3\" or \"t3^-1\")")]
    BadLetter { token: String },
    #[error("graph is not of type D_n")]
    NotTypeD,
    #[error("automorphism does not preserve labels")]
    NotLabelPreserving,
}

/// A word in the Artin generators: letters with exponent +1 or -1, stored
/// by generator index of the defining graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArtinWord {
    pub letters: Vec<(usize, i8)>,
}

impl ArtinWord {
    pub fn empty() -> Self {
        ArtinWord { letters: vec![] }
    }

    pub fn from_indices(positives: &[usize]) -> Self {
        ArtinWord {
            letters: positives.iter().map(|&i| (i, 1)).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        ArtinWord {
            letters: self.letters.iter().rev().map(|&(i, e)| (i, -e)).collect(),
        }
    }

    pub fn concat(&self, other: &ArtinWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        ArtinWord { letters }
    }

    /// Parses the whitespace-separated text syntax, e.g. `t1 t2^-1 t1`.
    pub fn parse(s: &str, g: &LabeledGraph) -> Result<Self, GarsideError> {
        let mut letters = vec![];
        for token in s.split_whitespace() {
            let (name, exp) = match token.strip_suffix("^-1") {
                Some(base) => (base, -1),
                None => {
                    if token.contains('^') {
                        return Err(GarsideError::BadLetter {
                            token: token.to_string(),
                        });
                    }
                    (token, 1)
                }
            };
            let idx = g
                .vertex_index(name)
                .ok_or_else(|| GarsideError::UnknownGenerator {
                    name: name.to_string(),
                })?;
            letters.push((idx, exp));
        }
        Ok(ArtinWord { letters })
    }

    pub fn display(&self, g: &LabeledGraph) -> String {
        self.letters
            .iter()
            .map(|&(i, e)| {
                let name = &g.vertex_names()[i];
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^-1")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Image under the abelianization sending every generator to 1.
    pub fn abelianized_sum(&self) -> i64 {
        self.letters.iter().map(|&(_, e)| e as i64).sum()
    }
}

/// `Delta^delta * factors[0] * factors[1] * ...` with each factor a
/// non-trivial simple element (a Coxeter group element other than the
/// identity and the longest element), adjacent pairs left-weighted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct NormalForm {
    pub delta: i64,
    pub factors: Vec<u32>,
}

impl NormalForm {
    pub fn is_identity(&self) -> bool {
        self.delta == 0 && self.factors.is_empty()
    }

    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn to_json(&self, sys: &CoxeterSystem) -> serde_json::Value {
        let factors: Vec<Vec<String>> = self
            .factors
            .iter()
            .map(|&f| {
                sys.reduced_word(f)
                    .iter()
                    .map(|&s| sys.gen_names[s as usize].clone())
                    .collect()
            })
            .collect();
        serde_json::json!({ "delta": self.delta, "factors": factors })
    }
}

/// Normal-form engine over one spherical defining graph.
pub struct Garside {
    pub sys: CoxeterSystem,
}

impl Garside {
    pub fn new(g: &LabeledGraph) -> Result<Self, GarsideError> {
        if spherical_type(g).is_none() {
            return Err(GarsideError::NonSpherical);
        }
        Ok(Garside {
            sys: CoxeterSystem::enumerate(g, ENUMERATION_BOUND)?,
        })
    }

    pub fn normal_form(&self, w: &ArtinWord) -> Result<NormalForm, GarsideError> {
        if w.letters.len() > MAX_WORD_LETTERS {
            return Err(GarsideError::WordTooLong {
                len: w.letters.len(),
            });
        }
        let sys = &self.sys;
        // rewrite each letter as (delta shift, simple): s is (0, s);
        // s^-1 is Delta^-1 followed by the lift of w0*s
        let items: Vec<(i64, u32)> = w
            .letters
            .iter()
            .map(|&(i, e)| {
                if e == 1 {
                    (0, sys.gen(i))
                } else {
                    (-1, sys.right_mul(sys.w0, i))
                }
            })
            .collect();
        // commute all Delta powers to the front; a simple passes a Delta
        // power on its right by tau (an involution, so parity suffices)
        let mut delta: i64 = 0;
        let mut pending_parity = 0i64;
        let mut factors: Vec<u32> = Vec::with_capacity(items.len());
        for &(shift, simple) in items.iter().rev() {
            let twisted = if pending_parity & 1 == 1 {
                sys.tau(simple)
            } else {
                simple
            };
            if twisted != 0 {
                factors.push(twisted);
            }
            delta += shift;
            pending_parity += shift;
        }
        factors.reverse();
        Ok(self.left_weight(delta, factors))
    }

    /// Sweeps local slides until every adjacent pair is left-weighted,
    /// dropping identity factors and absorbing longest-element factors
    /// into the Delta power.
    fn left_weight(&self, mut delta: i64, mut factors: Vec<u32>) -> NormalForm {
        let sys = &self.sys;
        loop {
            let mut changed = false;
            // absorb longest-element factors; simples to their left get
            // twisted when the Delta moves past them
            while let Some(pos) = factors.iter().position(|&f| f == sys.w0) {
                for f in &mut factors[..pos] {
                    *f = sys.tau(*f);
                }
                factors.remove(pos);
                delta += 1;
                changed = true;
            }
            factors.retain(|&f| f != 0);
            for i in (0..factors.len().saturating_sub(1)).rev() {
                loop {
                    let (u, v) = (factors[i], factors[i + 1]);
                    let Some(s) = (0..sys.ngens())
                        .find(|&s| sys.is_left_descent(s, v) && !sys.is_right_descent(u, s))
                    else {
                        break;
                    };
                    factors[i] = sys.right_mul(u, s);
                    factors[i + 1] = sys.left_mul(s, v);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        debug_assert!(factors.iter().all(|&f| f != 0 && f != sys.w0));
        NormalForm { delta, factors }
    }

    pub fn equal(&self, u: &ArtinWord, v: &ArtinWord) -> Result<bool, GarsideError> {
        Ok(self.normal_form(u)? == self.normal_form(v)?)
    }

    /// The Delta of this group as a positive word (a reduced word for the
    /// longest element).
    pub fn delta_word(&self) -> ArtinWord {
        let positives: Vec<usize> = self
            .sys
            .reduced_word(self.sys.w0)
            .into_iter()
            .map(|s| s as usize)
            .collect();
        ArtinWord::from_indices(&positives)
    }
}

/// One-shot normal form for CLI use.
pub fn normal_form(g: &LabeledGraph, w: &ArtinWord) -> Result<NormalForm, GarsideError> {
    Garside::new(g)?.normal_form(w)
}

/// One-shot word equality for CLI use.
pub fn equal(g: &LabeledGraph, u: &ArtinWord, v: &ArtinWord) -> Result<bool, GarsideError> {
    Garside::new(g)?.equal(u, v)
}

/// The explicit positive word for Delta in type D_n: the product of the
/// n-1 blocks t_i .. t_{n-2} t_{n-1} t_n t_{n-2} .. t_i for i = 1..n-1,
/// of total length n(n-1). Generators are 0-indexed t1..tn.
pub fn delta_word_dn(n: usize) -> ArtinWord {
    assert!(n >= 4, "type D_n needs n >= 4");
    let mut idx = vec![];
    for i in 1..=n - 1 {
        for j in i..=n - 2 {
            idx.push(j - 1);
        }
        idx.push(n - 2);
        idx.push(n - 1);
        for j in (i..=n - 2).rev() {
            idx.push(j - 1);
        }
    }
    debug_assert_eq!(idx.len(), n * (n - 1));
    ArtinWord::from_indices(&idx)
}

/// Which letterwise map to apply to a word.
pub enum AutKind<'a> {
    /// A label-preserving graph automorphism acting on generator names.
    Graph(&'a GraphAutomorphism),
    /// Global inversion of every generator.
    Inversion,
}

pub fn apply_automorphism(
    g: &LabeledGraph,
    kind: &AutKind,
    w: &ArtinWord,
) -> Result<ArtinWord, GarsideError> {
    match kind {
        AutKind::Graph(sigma) => {
            if !sigma.preserves_labels(g) {
                return Err(GarsideError::NotLabelPreserving);
            }
            Ok(ArtinWord {
                letters: w
                    .letters
                    .iter()
                    .map(|&(i, e)| (sigma.image[i], e))
                    .collect(),
            })
        }
        AutKind::Inversion => Ok(ArtinWord {
            letters: w.letters.iter().map(|&(i, e)| (i, -e)).collect(),
        }),
    }
}

/// The diagram flip of D_n swapping the two fork tips t_{n-1}, t_n.
pub fn zeta(g: &LabeledGraph) -> Result<GraphAutomorphism, GarsideError> {
    let n = dn_rank(g)?;
    let mut image: Vec<usize> = (0..n).collect();
    image.swap(n - 2, n - 1);
    Ok(GraphAutomorphism { image })
}

fn dn_rank(g: &LabeledGraph) -> Result<usize, GarsideError> {
    match spherical_type(g).as_deref() {
        Some([t]) if t.starts_with('D') => Ok(t[1..].parse().unwrap()),
        _ => Err(GarsideError::NotTypeD),
    }
}

/// Whether u and v agree in the central quotient of A[D_n]: their
/// difference must be a power of Delta (n even) or of Delta squared
/// (n odd).
pub fn equal_mod_center(
    engine: &Garside,
    g: &LabeledGraph,
    u: &ArtinWord,
    v: &ArtinWord,
) -> Result<bool, GarsideError> {
    let n = dn_rank(g)?;
    let nf = engine.normal_form(&u.concat(&v.inverse()))?;
    if !nf.factors.is_empty() {
        return Ok(false);
    }
    Ok(n % 2 == 0 || nf.delta % 2 == 0)
}
