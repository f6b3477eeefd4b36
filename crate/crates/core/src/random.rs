//! Random words, morphisms and instances for property tests, the acceptance
//! suite and Monte-Carlo density estimates.
//!
//! Instance generators plant structure (shared images, precomposition with a
//! short endomorphism, signed permutations) so that a useful share of the
//! generated instances has a nontrivial equaliser.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::words::{Alphabet, Letter, Mode, Word};
use crate::{Instance, Morphism};

const DOMAIN_NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];
const CODOMAIN_NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];

fn named(mode: Mode, names: &[&str], n: usize, fallback: &str) -> Alphabet {
    if n <= names.len() {
        Alphabet::new(mode, &names[..n]).expect("static names are valid")
    } else {
        let v: Vec<String> = (0..n).map(|i| format!("{fallback}{i}")).collect();
        Alphabet::new(mode, &v).expect("numbered names are valid")
    }
}

/// `a, b, c, …` with `n` symbols.
pub fn domain_alphabet(mode: Mode, n: usize) -> Alphabet {
    named(mode, &DOMAIN_NAMES, n, "a")
}

/// `x, y, z, …` with `n` symbols.
pub fn codomain_alphabet(mode: Mode, n: usize) -> Alphabet {
    named(mode, &CODOMAIN_NAMES, n, "x")
}

/// Uniform positive word of exactly `len` letters over `m` generators.
pub fn positive_word<R: Rng + ?Sized>(rng: &mut R, m: usize, len: usize) -> Word {
    (0..len).map(|_| Letter::pos(rng.random_range(0..m as u32))).collect()
}

/// Uniform freely reduced word of exactly `len` letters over `m` generators.
pub fn reduced_word<R: Rng + ?Sized>(rng: &mut R, m: usize, len: usize) -> Word {
    let mut v: Vec<Letter> = Vec::with_capacity(len);
    for i in 0..len {
        let l = if i == 0 {
            Letter::from_key(rng.random_range(0..2 * m))
        } else {
            // skip the inverse of the previous letter
            let forbidden = v[i - 1].inverse().key();
            let k = rng.random_range(0..2 * m - 1);
            Letter::from_key(if k >= forbidden { k + 1 } else { k })
        };
        v.push(l);
    }
    Word::from_letters(v)
}

/// Arbitrary group morphism `F(k) → F(m)` with reduced images of length
/// `0..=max_len`.
pub fn group_morphism<R: Rng + ?Sized>(rng: &mut R, k: usize, m: usize, max_len: usize) -> Morphism {
    let images = (0..k)
        .map(|_| {
            let len = rng.random_range(0..=max_len);
            reduced_word(rng, m, len)
        })
        .collect();
    Morphism::new_unchecked(domain_alphabet(Mode::Group, k), codomain_alphabet(Mode::Group, m), images)
}

/// Marked monoid morphism `Σ* → Δ*` with `|Σ| = k ≤ |Δ| = m`; images are a
/// distinct first letter followed by a tail of length `0..=max_tail`.
pub fn marked_morphism<R: Rng + ?Sized>(rng: &mut R, k: usize, m: usize, max_tail: usize) -> Morphism {
    marked_morphism_into(rng, k, &codomain_alphabet(Mode::Monoid, m), max_tail)
}

pub fn marked_morphism_into<R: Rng + ?Sized>(rng: &mut R, k: usize, codomain: &Alphabet, max_tail: usize) -> Morphism {
    let m = codomain.len();
    assert!(k <= m, "marked morphisms need |domain| <= |codomain|");
    let mut firsts: Vec<u32> = (0..m as u32).collect();
    firsts.shuffle(rng);
    let images = firsts[..k]
        .iter()
        .map(|&f| {
            let tail_len = rng.random_range(0..=max_tail);
            Word::letter(Letter::pos(f)).concat(&positive_word(rng, m, tail_len))
        })
        .collect();
    Morphism::new_unchecked(domain_alphabet(Mode::Monoid, k), codomain.clone(), images)
}

/// Immersion `F(k) → F(m)` with image lengths `1..=max_len`, sampled
/// uniformly by rejection.
pub fn immersion<R: Rng + ?Sized>(rng: &mut R, k: usize, m: usize, max_len: usize) -> Morphism {
    immersion_into(rng, k, &codomain_alphabet(Mode::Group, m), max_len)
}

pub fn immersion_into<R: Rng + ?Sized>(rng: &mut R, k: usize, codomain: &Alphabet, max_len: usize) -> Morphism {
    assert!(k <= codomain.len() && max_len >= 1, "no immersion exists for these sizes");
    let domain = domain_alphabet(Mode::Group, k);
    loop {
        let images = (0..k)
            .map(|_| {
                let len = rng.random_range(1..=max_len);
                reduced_word(rng, codomain.len(), len)
            })
            .collect();
        let f = Morphism::new_unchecked(domain.clone(), codomain.clone(), images);
        if f.is_marked() {
            return f;
        }
    }
}

/// Random word over `Σ` (signed in group mode) of length `1..=max_len`.
fn short_domain_word<R: Rng + ?Sized>(rng: &mut R, domain: &Alphabet, max_len: usize) -> Word {
    let len = rng.random_range(1..=max_len);
    match domain.mode() {
        Mode::Monoid => positive_word(rng, domain.len(), len),
        Mode::Group => reduced_word(rng, domain.len(), len),
    }
}

/// A second morphism `h` related to `g` so that `Eq(g, h)` is often
/// nontrivial. Falls back to an independent morphism after repeated
/// rejections.
fn partner<R: Rng + ?Sized>(rng: &mut R, g: &Morphism, fresh: &mut dyn FnMut(&mut R) -> Morphism) -> Morphism {
    let k = g.domain().len();
    let strategy = rng.random_range(0..4);
    for _ in 0..200 {
        let candidate = match strategy {
            1 => {
                let other = fresh(rng);
                let images = (0..k as u32)
                    .map(|i| if rng.random_bool(0.5) { g.image(i).clone() } else { other.image(i).clone() })
                    .collect();
                Morphism::new_unchecked(g.domain().clone(), g.codomain().clone(), images)
            }
            2 => {
                let images = (0..k).map(|_| short_domain_word(rng, g.domain(), 2)).collect();
                let phi = Morphism::new_unchecked(g.domain().clone(), g.domain().clone(), images);
                g.compose(&phi).expect("phi maps into the domain of g")
            }
            3 => {
                let mut perm: Vec<u32> = (0..k as u32).collect();
                perm.shuffle(rng);
                let images = perm
                    .iter()
                    .map(|&p| {
                        let flip = g.mode() == Mode::Group && rng.random_bool(0.3);
                        Word::letter(Letter::new(p, flip))
                    })
                    .collect();
                let phi = Morphism::new_unchecked(g.domain().clone(), g.domain().clone(), images);
                g.compose(&phi).expect("phi maps into the domain of g")
            }
            _ => fresh(rng),
        };
        if candidate.is_marked() {
            return candidate;
        }
    }
    fresh(rng)
}

/// Marked monoid instance with `|Σ| = k`, `|Δ| = m`.
pub fn marked_instance<R: Rng + ?Sized>(rng: &mut R, k: usize, m: usize, max_tail: usize) -> Instance {
    let g = marked_morphism(rng, k, m, max_tail);
    let h = partner(rng, &g, &mut |r: &mut R| marked_morphism(r, k, m, max_tail));
    Instance::new(g, h).expect("generated morphisms share alphabets")
}

/// Immersed group instance with `|Σ| = k`, `|Δ| = m`.
pub fn immersed_instance<R: Rng + ?Sized>(rng: &mut R, k: usize, m: usize, max_len: usize) -> Instance {
    let g = immersion(rng, k, m, max_len);
    let h = partner(rng, &g, &mut |r: &mut R| immersion(r, k, m, max_len));
    Instance::new(g, h).expect("generated morphisms share alphabets")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ImmersionTest;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_their_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            assert!(reduced_word(&mut rng, 2, 7).is_reduced());
            assert!(marked_morphism(&mut rng, 2, 3, 3).is_marked());
            assert!(immersion(&mut rng, 3, 3, 3).is_immersion(ImmersionTest::All).unwrap());
            let i = immersed_instance(&mut rng, 2, 2, 3);
            assert!(i.g().is_marked() && i.h().is_marked());
            let i = marked_instance(&mut rng, 2, 2, 2);
            assert!(i.g().is_marked() && i.h().is_marked());
        }
    }
}
