use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::stallings::StallingsGraph;
use crate::words::{Alphabet, Letter, Mode, Word};
use crate::{Error, Result};

/// A morphism stored as its list of generator images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    domain: Alphabet,
    codomain: Alphabet,
    images: Vec<Word>,
}

/// Why a morphism fails to be marked (or to be an immersion).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkingDefect {
    /// A generator (or, in group mode, its inverse) has an empty image.
    EmptyImage(Letter),
    /// Two distinct domain letters have images with the same first letter.
    SharedFirstLetter(Letter, Letter),
}

/// Which characterization of immersions to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImmersionTest {
    /// Images of `Σ ∪ Σ⁻¹` form a marked set.
    Marked,
    /// The bouquet graph is deterministic and co-deterministic.
    Folded,
    /// Nonempty images and `|f(xy)| = |f(x)| + |f(y)|` whenever `xy ≠ 1`.
    LengthIdentity,
    /// All three, erroring if they disagree.
    All,
}

impl Morphism {
    pub fn new(domain: Alphabet, codomain: Alphabet, images: Vec<Word>) -> Result<Self> {
        if domain.mode() != codomain.mode() {
            return Err(Error::ModeMismatch { expected: domain.mode().as_str(), found: codomain.mode().as_str() });
        }
        if images.len() != domain.len() {
            return Err(Error::ImageCount { expected: domain.len(), found: images.len() });
        }
        for w in &images {
            codomain.check_word(w)?;
        }
        Ok(Morphism { domain, codomain, images })
    }

    pub(crate) fn new_unchecked(domain: Alphabet, codomain: Alphabet, images: Vec<Word>) -> Self {
        debug_assert_eq!(domain.len(), images.len());
        Morphism { domain, codomain, images }
    }

    /// Builds a morphism from image texts in the word syntax, one per domain
    /// generator.
    pub fn parse(domain: &Alphabet, codomain: &Alphabet, images: &[&str]) -> Result<Self> {
        let images = images.iter().map(|t| codomain.parse_word(t)).collect::<Result<Vec<_>>>()?;
        Morphism::new(domain.clone(), codomain.clone(), images)
    }

    pub fn identity(alphabet: &Alphabet) -> Self {
        let images = (0..alphabet.len() as u32).map(|i| Word::letter(Letter::pos(i))).collect();
        Morphism::new_unchecked(alphabet.clone(), alphabet.clone(), images)
    }

    pub fn domain(&self) -> &Alphabet {
        &self.domain
    }

    pub fn codomain(&self) -> &Alphabet {
        &self.codomain
    }

    pub fn mode(&self) -> Mode {
        self.domain.mode()
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, generator: u32) -> &Word {
        &self.images[generator as usize]
    }

    /// Image of a signed letter; `x⁻¹ ↦ f(x)⁻¹`.
    pub fn image_of(&self, l: Letter) -> Word {
        let w = self.image(l.index());
        if l.is_inverse() {
            w.inverse()
        } else {
            w.clone()
        }
    }

    /// Name of a domain letter, `a` or `a^-1`.
    pub fn letter_name(&self, l: Letter) -> String {
        self.domain.format_letter(l)
    }

    pub(crate) fn apply_unchecked(&self, w: &Word) -> Word {
        match self.mode() {
            Mode::Monoid => w.letters().iter().flat_map(|l| self.image(l.index()).letters().iter().copied()).collect(),
            Mode::Group => Word::free_reduce(w.letters().iter().flat_map(|&l| self.image_of(l).into_letters())),
        }
    }

    /// Homomorphic image of a word over the domain.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.domain.check_word(w)?;
        Ok(self.apply_unchecked(w))
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &Morphism) -> Result<Morphism> {
        if inner.codomain != self.domain {
            return Err(Error::AlphabetMismatch("inner codomain differs from outer domain"));
        }
        let images = inner.images.iter().map(|w| self.apply_unchecked(w)).collect();
        Ok(Morphism::new_unchecked(inner.domain.clone(), self.codomain.clone(), images))
    }

    /// Restriction to a subset of generators (kept in the given order).
    pub fn restrict(&self, generators: &[u32]) -> Morphism {
        let images = generators.iter().map(|&g| self.image(g).clone()).collect();
        Morphism::new_unchecked(self.domain.select(generators), self.codomain.clone(), images)
    }

    /// Domain letters whose images are checked for markedness together with
    /// their images: `Σ` in monoid mode, `Σ ∪ Σ⁻¹` in group mode.
    pub fn signed_images(&self) -> Vec<(Letter, Word)> {
        self.domain.letters().into_iter().map(|l| (l, self.image_of(l))).collect()
    }

    /// First obstruction to markedness, if any.
    pub fn marking_defect(&self) -> Option<MarkingDefect> {
        let mut by_first: BTreeMap<Letter, Letter> = BTreeMap::new();
        for (l, w) in self.signed_images() {
            match w.first() {
                None => return Some(MarkingDefect::EmptyImage(l)),
                Some(first) => {
                    if let Some(&other) = by_first.get(&first) {
                        return Some(MarkingDefect::SharedFirstLetter(other, l));
                    }
                    by_first.insert(first, l);
                }
            }
        }
        None
    }

    /// Marked: images of `Σ` (monoid) or `Σ ∪ Σ⁻¹` (group) are nonempty and
    /// start with pairwise distinct letters.
    pub fn is_marked(&self) -> bool {
        self.marking_defect().is_none()
    }

    fn defect_error(&self, defect: MarkingDefect) -> Error {
        match (defect, self.mode()) {
            (MarkingDefect::EmptyImage(l), _) => Error::EmptyImage(self.letter_name(l)),
            (MarkingDefect::SharedFirstLetter(a, b), Mode::Monoid) => {
                Error::NotMarked(self.letter_name(a), self.letter_name(b))
            }
            (MarkingDefect::SharedFirstLetter(a, b), Mode::Group) => {
                Error::NotImmersion(self.letter_name(a), self.letter_name(b))
            }
        }
    }

    /// `Ok(())` when the morphism is marked (monoid) or an immersion (group),
    /// otherwise an error naming the offending generators.
    pub fn require_marked(&self) -> Result<()> {
        match self.marking_defect() {
            None => Ok(()),
            Some(d) => Err(self.defect_error(d)),
        }
    }

    fn satisfies_length_identity(&self) -> bool {
        let signed = self.signed_images();
        if signed.iter().any(|(_, w)| w.is_empty()) {
            return false;
        }
        signed.iter().all(|(x, fx)| {
            signed.iter().all(|(y, fy)| *y == x.inverse() || fx.reduced_concat(fy).len() == fx.len() + fy.len())
        })
    }

    pub fn is_immersion(&self, test: ImmersionTest) -> Result<bool> {
        if self.mode() != Mode::Group {
            return Err(Error::ModeMismatch { expected: "group", found: "monoid" });
        }
        Ok(match test {
            ImmersionTest::Marked => self.is_marked(),
            ImmersionTest::Folded => match StallingsGraph::bouquet(self) {
                Ok(g) => g.is_folded_both_ways(),
                Err(Error::EmptyImage(_)) => false,
                Err(e) => return Err(e),
            },
            ImmersionTest::LengthIdentity => self.satisfies_length_identity(),
            ImmersionTest::All => {
                let [marked, folded, length] = self.immersion_characterizations()?;
                if marked != folded || folded != length {
                    return Err(Error::CharacterizationDisagreement { marked, folded, length });
                }
                marked
            }
        })
    }

    /// The three characterizations evaluated separately, in the order
    /// marked, folded, length identity.
    pub fn immersion_characterizations(&self) -> Result<[bool; 3]> {
        Ok([
            self.is_immersion(ImmersionTest::Marked)?,
            self.is_immersion(ImmersionTest::Folded)?,
            self.is_immersion(ImmersionTest::LengthIdentity)?,
        ])
    }

    /// Bounded search for a collision `f(u) = f(v)` with `u ≠ v` and
    /// `|u|, |v| ≤ radius` (reduced words in group mode).
    pub fn injectivity_witness(&self, radius: usize) -> Option<(Word, Word)> {
        let mut seen: BTreeMap<Word, Word> = BTreeMap::new();
        for w in ball(&self.domain, radius) {
            let image = self.apply_unchecked(&w);
            if let Some(prev) = seen.get(&image) {
                return Some((prev.clone(), w));
            }
            seen.insert(image, w);
        }
        None
    }
}

/// Words of length at most `radius` in shortlex order (reduced in group mode).
pub(crate) fn ball(alphabet: &Alphabet, radius: usize) -> Vec<Word> {
    let letters = alphabet.letters();
    let group = alphabet.mode() == Mode::Group;
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if group && w.last() == Some(l.inverse()) {
                    continue;
                }
                let mut v = w.letters().to_vec();
                v.push(l);
                next.push(Word::from_letters(v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
