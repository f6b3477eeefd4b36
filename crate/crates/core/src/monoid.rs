//! Marked free-monoid morphisms: blocks, instance reduction and the
//! equaliser solver for pairs and finite sets.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::equaliser::{solve_by_reduction, solve_set_by_induction};
use crate::words::{Alphabet, Letter, Mode, Word};
use crate::{EqualiserResult, Error, Instance, Morphism, ReductionStep, Result, StepWitness};

/// An `a`-block: the minimal pair `(u, v)` with `g(u) = h(v)` starting with
/// the codomain letter `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub letter: Letter,
    pub u: Word,
    pub v: Word,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Side {
    G,
    H,
}

/// Generator whose image starts with each codomain letter; `None` if no
/// image does.
fn first_letter_table(f: &Morphism) -> Vec<Option<u32>> {
    let mut table = alloc::vec![None; f.codomain().len()];
    for (i, w) in f.images().iter().enumerate() {
        if let Some(l) = w.first() {
            table[l.index() as usize] = Some(i as u32);
        }
    }
    table
}

fn check_pair(g: &Morphism, h: &Morphism) -> Result<()> {
    if g.mode() != Mode::Monoid || h.mode() != Mode::Monoid {
        return Err(Error::ModeMismatch { expected: "monoid", found: "group" });
    }
    if g.codomain() != h.codomain() {
        return Err(Error::AlphabetMismatch("g and h have different codomains"));
    }
    g.require_marked()?;
    h.require_marked()
}

/// Follows the overhang from start letter `a`. Markedness makes every
/// extension forced, so the search is a walk through finitely many
/// `(leading side, overhang)` states.
fn block_for(g: &Morphism, h: &Morphism, gt: &[Option<u32>], ht: &[Option<u32>], a: u32) -> Option<Block> {
    let gi = gt[a as usize]?;
    let hi = ht[a as usize]?;
    let mut u = alloc::vec![Letter::pos(gi)];
    let mut v = alloc::vec![Letter::pos(hi)];
    let (gw, hw) = (g.image(gi), h.image(hi));
    let (mut side, mut overhang) = if hw.is_prefix_of(gw) {
        (Side::G, gw.suffix_from(hw.len()))
    } else if gw.is_prefix_of(hw) {
        (Side::H, hw.suffix_from(gw.len()))
    } else {
        return None;
    };
    let mut seen: BTreeSet<(Side, Word)> = BTreeSet::new();
    while !overhang.is_empty() {
        if !seen.insert((side, overhang.clone())) {
            return None;
        }
        let next = overhang.first()?.index() as usize;
        // the lagging side catches up with one generator
        let (table, lagging, word) = match side {
            Side::G => (ht, h, &mut v),
            Side::H => (gt, g, &mut u),
        };
        let gen = table[next]?;
        word.push(Letter::pos(gen));
        let img = lagging.image(gen);
        if img.is_prefix_of(&overhang) {
            overhang = overhang.suffix_from(img.len());
        } else if overhang.is_prefix_of(img) {
            overhang = img.suffix_from(overhang.len());
            side = match side {
                Side::G => Side::H,
                Side::H => Side::G,
            };
        } else {
            return None;
        }
    }
    Some(Block { letter: Letter::pos(a), u: Word::from_letters(u), v: Word::from_letters(v) })
}

/// All blocks of `(g, h)` for marked `g: Σ₁* → Δ*`, `h: Σ₂* → Δ*`, sorted by
/// codomain letter. Letters admitting no block are absent.
pub fn compute_blocks(g: &Morphism, h: &Morphism) -> Result<Vec<Block>> {
    check_pair(g, h)?;
    let (gt, ht) = (first_letter_table(g), first_letter_table(h));
    Ok((0..g.codomain().len() as u32).filter_map(|a| block_for(g, h, &gt, &ht, a)).collect())
}

/// The maps `g': Σ'* → Σ₁*` and `h': Σ'* → Σ₂*` with one fresh generator
/// `p0, p1, …` per block.
pub fn reduce_pair(g: &Morphism, h: &Morphism) -> Result<(Morphism, Morphism, Vec<Block>)> {
    let blocks = compute_blocks(g, h)?;
    let fresh = Alphabet::numbered(Mode::Monoid, "p", blocks.len());
    let g_prime =
        Morphism::new_unchecked(fresh.clone(), g.domain().clone(), blocks.iter().map(|b| b.u.clone()).collect());
    let h_prime = Morphism::new_unchecked(fresh, h.domain().clone(), blocks.iter().map(|b| b.v.clone()).collect());
    debug_assert_eq!(g.compose(&g_prime)?, h.compose(&h_prime)?);
    Ok((g_prime, h_prime, blocks))
}

/// Reduction `I → I' = (Σ', Σ, g', h')`.
pub fn reduce_instance(instance: &Instance) -> Result<ReductionStep> {
    let (g_prime, h_prime, blocks) = reduce_pair(instance.g(), instance.h())?;
    Ok(ReductionStep {
        before: instance.clone(),
        after: Instance::new(g_prime, h_prime)?,
        witness: StepWitness::Blocks(blocks),
    })
}

/// Number of distinct nonempty proper prefixes of the images of `g` plus
/// those of `h`.
pub fn prefix_complexity(instance: &Instance) -> usize {
    let count = |f: &Morphism| f.images().iter().flat_map(|w| w.proper_prefixes()).collect::<BTreeSet<Word>>().len();
    count(instance.g()) + count(instance.h())
}

/// `(|Δ| + 1)^(2|Σ|(σ(I) + 1))`, saturating at `u128::MAX`.
pub fn iteration_bound(instance: &Instance) -> u128 {
    crate::group::saturating_bound(
        instance.delta().len() as u128 + 1,
        2 * instance.sigma().len() * (prefix_complexity(instance) + 1),
    )
}

/// Marked morphism `ψ` with `Image(ψ) = Eq(g, h)`.
pub fn solve_pair(instance: &Instance) -> Result<EqualiserResult> {
    if instance.mode() != Mode::Monoid {
        return Err(Error::ModeMismatch { expected: "monoid", found: "group" });
    }
    instance.require_marked()?;
    solve_by_reduction(instance, reduce_instance, iteration_bound(instance))
}

/// Image of `k = ψ₁ g' = ψ₂ h'`, which is `Image(ψ₁) ∩ Image(ψ₂)`.
pub fn intersect_images(psi1: &Morphism, psi2: &Morphism) -> Result<Morphism> {
    let (g_prime, _, _) = reduce_pair(psi1, psi2)?;
    psi1.compose(&g_prime)
}

/// Marked `ψ_S` with `Image(ψ_S) = Eq(S)` for a finite set `S` of marked
/// morphisms sharing domain and codomain.
pub fn solve_set(set: &[Morphism]) -> Result<EqualiserResult> {
    if let Some(f) = set.iter().find(|f| f.mode() != Mode::Monoid) {
        return Err(Error::ModeMismatch { expected: "monoid", found: f.mode().as_str() });
    }
    solve_set_by_induction(set, &solve_pair, &intersect_images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{enumerate_equaliser, image_ball, BallSpec};
    use crate::random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn alpha(names: &[&str]) -> Alphabet {
        Alphabet::new(Mode::Monoid, names).unwrap()
    }

    fn monoid_pair() -> Instance {
        let (s, d) = (alpha(&["a", "b"]), alpha(&["x", "y"]));
        Instance::new(Morphism::parse(&s, &d, &["x y", "y"]).unwrap(), Morphism::parse(&s, &d, &["x", "y y"]).unwrap())
            .unwrap()
    }

    fn fmt_blocks(i: &Instance, blocks: &[Block]) -> Vec<(String, String, String)> {
        blocks
            .iter()
            .map(|b| (i.delta().format_letter(b.letter), i.sigma().format_word(&b.u), i.sigma().format_word(&b.v)))
            .collect()
    }

    use alloc::string::{String, ToString};

    #[test]
    fn blocks_of_monoid_pair() {
        let i = monoid_pair();
        let blocks = compute_blocks(i.g(), i.h()).unwrap();
        let expect = [("x", "a b", "a b"), ("y", "b b", "b")];
        let got = fmt_blocks(&i, &blocks);
        assert_eq!(got.len(), 2);
        for ((l, u, v), (el, eu, ev)) in got.iter().zip(expect) {
            assert_eq!((l.as_str(), u.as_str(), v.as_str()), (el, eu, ev));
        }
    }

    #[test]
    fn blocks_of_identity_pair() {
        let s = alpha(&["a", "b"]);
        let id = Morphism::identity(&s);
        let got = fmt_blocks(&Instance::new(id.clone(), id.clone()).unwrap(), &compute_blocks(&id, &id).unwrap());
        assert_eq!(got, [("a".to_string(), "a".to_string(), "a".to_string()), ("b".into(), "b".into(), "b".into())]);
    }

    #[test]
    fn no_blocks_when_first_letters_never_meet() {
        let (s, d) = (alpha(&["a"]), alpha(&["x", "y"]));
        let g = Morphism::parse(&s, &d, &["x"]).unwrap();
        let h = Morphism::parse(&s, &d, &["y"]).unwrap();
        assert!(compute_blocks(&g, &h).unwrap().is_empty());
        let step = reduce_instance(&Instance::new(g, h).unwrap()).unwrap();
        assert!(step.after.sigma().is_empty());
    }

    #[test]
    fn non_marked_input_is_rejected() {
        let (s, d) = (alpha(&["a", "b"]), alpha(&["x", "y"]));
        let g = Morphism::parse(&s, &d, &["x y", "x x"]).unwrap();
        let h = Morphism::parse(&s, &d, &["x", "y"]).unwrap();
        assert!(matches!(compute_blocks(&g, &h), Err(Error::NotMarked(..))));
        assert!(solve_pair(&Instance::new(g, h).unwrap()).is_err());
    }

    #[test]
    fn reduction_of_monoid_pair() {
        let i = monoid_pair();
        let step = reduce_instance(&i).unwrap();
        let s = step.after.delta();
        let show = |f: &Morphism| f.images().iter().map(|w| s.format_word(w)).collect::<Vec<_>>();
        assert_eq!(show(step.g_prime()), ["a b", "b b"]);
        assert_eq!(show(step.h_prime()), ["a b", "b"]);
        assert!(step.g_prime().is_marked() && step.h_prime().is_marked());
        assert_eq!(i.g().compose(step.g_prime()).unwrap().images(), i.h().compose(step.h_prime()).unwrap().images());
    }

    #[test]
    fn solve_monoid_pair() {
        let i = monoid_pair();
        let r = solve_pair(&i).unwrap();
        let basis: Vec<String> = r.basis.iter().map(|w| i.sigma().format_word(w)).collect();
        assert_eq!(basis, ["a b"]);
        assert_eq!(r.psi.domain().symbols(), ["p0"]);
        let ball = BallSpec::new(8, Mode::Monoid);
        let eq = enumerate_equaliser(&[i.g().clone(), i.h().clone()], ball).unwrap();
        assert_eq!(image_ball(&r.psi, ball).unwrap(), eq);
    }

    #[test]
    fn solve_equal_morphisms_gives_whole_alphabet() {
        let i = monoid_pair();
        let r = solve_pair(&Instance::new(i.g().clone(), i.g().clone()).unwrap()).unwrap();
        assert_eq!(r.basis, [Word::from_indices(&[0]), Word::from_indices(&[1])]);
        let id = Morphism::identity(i.sigma());
        let r = solve_pair(&Instance::new(id.clone(), id.clone()).unwrap()).unwrap();
        assert_eq!(r.psi, id);
    }

    #[test]
    fn solve_disjoint_single_generator() {
        let (s, d) = (alpha(&["a"]), alpha(&["x", "y"]));
        let i =
            Instance::new(Morphism::parse(&s, &d, &["x"]).unwrap(), Morphism::parse(&s, &d, &["y"]).unwrap()).unwrap();
        let r = solve_pair(&i).unwrap();
        assert!(r.is_trivial());
        assert_eq!(r.case, crate::TerminationCase::AlphabetSizeOne);
    }

    #[test]
    fn set_examples() {
        let i = monoid_pair();
        let (g, h) = (i.g().clone(), i.h().clone());
        let pair = solve_pair(&i).unwrap();
        assert_eq!(solve_set(&[g.clone(), h.clone()]).unwrap(), pair);
        let with_repeat = solve_set(&[g.clone(), h.clone(), g.clone()]).unwrap();
        assert_eq!(with_repeat.basis, pair.basis);
        let triple = solve_set(&[g.clone(), g.clone(), g.clone()]).unwrap();
        assert_eq!(triple.basis, solve_pair(&Instance::new(g.clone(), g.clone()).unwrap()).unwrap().basis);
        assert!(matches!(solve_set(&[g]), Err(Error::TooFewMorphisms(1))));
    }

    #[test]
    fn prefix_complexity_and_bound() {
        let i = monoid_pair();
        // g: {x}, h: {y}
        assert_eq!(prefix_complexity(&i), 2);
        let (s, d) = (alpha(&["a"]), alpha(&["x", "y"]));
        let unit =
            Instance::new(Morphism::parse(&s, &d, &["x"]).unwrap(), Morphism::parse(&s, &d, &["y"]).unwrap()).unwrap();
        assert_eq!(iteration_bound(&unit), 9);
    }

    #[test]
    fn random_instances_match_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..60 {
            let i = random::marked_instance(&mut rng, 2, 2, 2);
            let r = solve_pair(&i).unwrap();
            assert!(r.psi.is_marked());
            let ball = BallSpec::new(7, Mode::Monoid);
            let eq = enumerate_equaliser(&[i.g().clone(), i.h().clone()], ball).unwrap();
            assert_eq!(image_ball(&r.psi, ball).unwrap(), eq, "instance {i:?}");
        }
    }

    /// Pairs `(u, v)` of nonempty words with `|u|, |v| ≤ radius` and
    /// `g(u) = h(v)`.
    fn brute_pairs(i: &Instance, radius: usize) -> Vec<(Word, Word)> {
        let words: Vec<Word> = crate::morphism::ball(i.sigma(), radius).into_iter().filter(|w| !w.is_empty()).collect();
        let mut out = Vec::new();
        for u in &words {
            let gu = i.g().apply(u).unwrap();
            for v in &words {
                if i.h().apply(v).unwrap() == gu {
                    out.push((u.clone(), v.clone()));
                }
            }
        }
        out
    }

    #[test]
    fn blocks_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..80 {
            let i = random::marked_instance(&mut rng, 2, 2, 2);
            let blocks = compute_blocks(i.g(), i.h()).unwrap();
            let pairs = brute_pairs(&i, 4);
            for (u, v) in &pairs {
                let gu = i.g().apply(u).unwrap();
                let b = blocks.iter().find(|b| Some(b.letter) == gu.first()).expect("pair without a block");
                // every solution starts with the block for its first letter
                assert!(b.u.is_prefix_of(u) && b.v.is_prefix_of(v), "{i:?}");
            }
            for b in &blocks {
                assert_eq!(i.g().apply(&b.u).unwrap(), i.h().apply(&b.v).unwrap());
                if b.u.len() <= 4 && b.v.len() <= 4 {
                    let shortest = pairs
                        .iter()
                        .filter(|(u, _)| i.g().apply(u).unwrap().first() == Some(b.letter))
                        .min_by_key(|(u, _)| i.g().apply(u).unwrap().len())
                        .unwrap();
                    assert_eq!((&shortest.0, &shortest.1), (&b.u, &b.v));
                }
            }
        }
    }
}
