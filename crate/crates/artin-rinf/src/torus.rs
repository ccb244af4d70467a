//! Mapping-torus presentations G_phi and their concrete finite
//! realization as a semidirect product, which backs the coset route to
//! Reidemeister numbers.

use serde::{Deserialize, Serialize};

use crate::coxeter::{GroupAutomorphism, GroupTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TorusError {
    #[error("finite order requires an explicit identification word for t^m")]
    MissingPowerWord,
    #[error("word uses unknown generator {name:?}")]
    UnknownGenerator { name: String },
}

/// Order of the automorphism in the outer automorphism group: a finite m
/// or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutOrder {
    Finite(u32),
    Inf,
}

/// A group presentation. Relator letters are generator names, optionally
/// suffixed `^-1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub gens: Vec<String>,
    pub relators: Vec<Vec<String>>,
}

impl Presentation {
    fn has_gen(&self, letter: &str) -> bool {
        let base = letter.strip_suffix("^-1").unwrap_or(letter);
        self.gens.iter().any(|g| g == base)
    }

    fn check_word(&self, word: &[String]) -> Result<(), TorusError> {
        for letter in word {
            if !self.has_gen(letter) {
                return Err(TorusError::UnknownGenerator {
                    name: letter.clone(),
                });
            }
        }
        Ok(())
    }
}

fn invert_word(word: &[String]) -> Vec<String> {
    word.iter()
        .rev()
        .map(|l| match l.strip_suffix("^-1") {
            Some(base) => base.to_string(),
            None => format!("{l}^-1"),
        })
        .collect()
}

/// Builds the mapping-torus presentation: a fresh generator t with
/// relators t g t^-1 phi(g)^-1 for every generator g, plus t^m = p when
/// the outer order m is finite.
pub fn build_g_phi(
    p: &Presentation,
    phi: &[(String, Vec<String>)],
    m: OutOrder,
    p_elt: Option<&[String]>,
) -> Result<Presentation, TorusError> {
    for (_, image) in phi {
        p.check_word(image)?;
    }
    if let Some(word) = p_elt {
        p.check_word(word)?;
    }
    let t = "t".to_string();
    let mut gens = p.gens.clone();
    gens.push(t.clone());
    let mut relators = p.relators.clone();
    for (g, image) in phi {
        let mut r = vec![t.clone(), g.clone(), format!("{t}^-1")];
        r.extend(invert_word(image));
        relators.push(r);
    }
    if let OutOrder::Finite(m) = m {
        let word = p_elt.ok_or(TorusError::MissingPowerWord)?;
        let mut r = vec![t.clone(); m as usize];
        r.extend(invert_word(word));
        relators.push(r);
    }
    Ok(Presentation { gens, relators })
}

/// The semidirect product G x <c> with c acting as phi and c of order
/// equal to the permutation order of phi. Element (g, i) is indexed
/// i*|G| + g, so the identity stays at 0 and the coset G c occupies the
/// second block.
pub fn realize_finite(t: &GroupTable, phi: &GroupAutomorphism) -> GroupTable {
    let k = phi.order();
    if k == 1 {
        return t.clone();
    }
    let n = t.size;
    let size = n * k;
    // phi powers as element permutations
    let mut powers: Vec<GroupAutomorphism> = vec![GroupAutomorphism::identity(n)];
    for _ in 1..k {
        powers.push(phi.compose(powers.last().unwrap()));
    }
    let mut mul = vec![0u32; size * size];
    for i in 0..k {
        for g in 0..n as u32 {
            let a = i * n + g as usize;
            for j in 0..k {
                for h in 0..n as u32 {
                    let b = j * n + h as usize;
                    // (g, i)(h, j) = (g * phi^i(h), i + j)
                    let prod = t.mul(g, powers[i].apply(h));
                    mul[a * size + b] = (((i + j) % k) * n) as u32 + prod;
                }
            }
        }
    }
    let mut gens: Vec<(String, u32)> = t.gens.clone();
    gens.push(("c".to_string(), n as u32));
    GroupTable::from_mul(size, mul, gens)
}
