use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::{Error, Result};

/// Whether words are elements of a free monoid or a free group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Monoid,
    Group,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Monoid => "monoid",
            Mode::Group => "group",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A generator index together with a sign.
///
/// Letters order as `x0 < x0⁻¹ < x1 < x1⁻¹ < …`, which is the letter order
/// used for shortlex enumeration and canonical petal ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    index: u32,
    inverse: bool,
}

impl Letter {
    pub const fn new(index: u32, inverse: bool) -> Self {
        Letter { index, inverse }
    }

    pub const fn pos(index: u32) -> Self {
        Letter::new(index, false)
    }

    pub const fn neg(index: u32) -> Self {
        Letter::new(index, true)
    }

    pub const fn index(self) -> u32 {
        self.index
    }

    pub const fn is_inverse(self) -> bool {
        self.inverse
    }

    pub const fn inverse(self) -> Self {
        Letter::new(self.index, !self.inverse)
    }

    /// Position of the letter in the order `x0, x0⁻¹, x1, …`.
    pub const fn key(self) -> usize {
        2 * self.index as usize + self.inverse as usize
    }

    pub const fn from_key(key: usize) -> Self {
        Letter::new((key / 2) as u32, key % 2 == 1)
    }
}

/// A finite word over an alphabet.
///
/// Group words built through [`Word::free_reduce`] or the reducing
/// operations are kept freely reduced, so equality of group elements is
/// sequence equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub const fn empty() -> Self {
        Word(Vec::new())
    }

    /// Wraps a letter sequence without reducing it.
    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// A positive word from generator indices.
    pub fn from_indices(indices: &[u32]) -> Self {
        Word(indices.iter().map(|&i| Letter::pos(i)).collect())
    }

    pub fn letter(letter: Letter) -> Self {
        Word(alloc::vec![letter])
    }

    /// Unique freely reduced form of a letter sequence.
    pub fn free_reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|l| !l.is_inverse())
    }

    /// Position of the first cancelling pair, if any.
    pub fn cancellation_at(&self) -> Option<usize> {
        self.0.windows(2).position(|w| w[1] == w[0].inverse())
    }

    pub fn is_reduced(&self) -> bool {
        self.cancellation_at().is_none()
    }

    /// Group inverse: reversed with every sign flipped.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Plain concatenation (monoid product).
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Group product of two reduced words: cancels across the junction only.
    pub fn reduced_concat(&self, other: &Word) -> Word {
        let common = self.0.iter().rev().zip(other.0.iter()).take_while(|(a, b)| **b == a.inverse()).count();
        let mut v = Vec::with_capacity(self.len() + other.len() - 2 * common);
        v.extend_from_slice(&self.0[..self.len() - common]);
        v.extend_from_slice(&other.0[common..]);
        Word(v)
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word(self.0[..len].to_vec())
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word(self.0[start..].to_vec())
    }

    /// All nonempty strict prefixes, shortest first.
    pub fn proper_prefixes(&self) -> Vec<Word> {
        (1..self.len()).map(|n| self.prefix(n)).collect()
    }

    pub fn longest_common_prefix(&self, other: &Word) -> Word {
        let n = self.0.iter().zip(other.0.iter()).take_while(|(a, b)| a == b).count();
        self.prefix(n)
    }

    /// Shortlex order: shorter words first, then lexicographic by letter order.
    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }

    pub fn max_index(&self) -> Option<u32> {
        self.0.iter().map(|l| l.index()).max()
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Ordered set of generator names, in monoid or group mode.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<String>,
    mode: Mode,
}

pub(crate) fn is_valid_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(mode: Mode, symbols: &[S]) -> Result<Self> {
        let mut out: Vec<String> = Vec::with_capacity(symbols.len());
        for s in symbols {
            let s = s.as_ref();
            if !is_valid_symbol(s) || s == "eps" {
                return Err(Error::InvalidSymbol(s.to_string()));
            }
            if out.iter().any(|t| t == s) {
                return Err(Error::DuplicateSymbol(s.to_string()));
            }
            out.push(s.to_string());
        }
        Ok(Alphabet { symbols: out, mode })
    }

    /// `prefix0, prefix1, …`, the fresh alphabets produced by reductions.
    pub fn numbered(mode: Mode, prefix: &str, n: usize) -> Self {
        Alphabet { symbols: (0..n).map(|i| format!("{prefix}{i}")).collect(), mode }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol(&self, index: u32) -> &str {
        &self.symbols[index as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.symbols.iter().position(|s| s == name).map(|i| i as u32)
    }

    /// Sub-alphabet keeping the given generator indices, in the given order.
    pub fn select(&self, indices: &[u32]) -> Alphabet {
        Alphabet { symbols: indices.iter().map(|&i| self.symbols[i as usize].clone()).collect(), mode: self.mode }
    }

    /// All letters of the alphabet: `Σ` in monoid mode, `Σ ∪ Σ⁻¹` in group mode.
    pub fn letters(&self) -> Vec<Letter> {
        let n = self.len() as u32;
        match self.mode {
            Mode::Monoid => (0..n).map(Letter::pos).collect(),
            Mode::Group => (0..2 * n as usize).map(Letter::from_key).collect(),
        }
    }

    fn check_letter(&self, l: Letter) -> Result<()> {
        if l.index() as usize >= self.len() {
            return Err(Error::LetterOutOfRange { index: l.index(), size: self.len() });
        }
        if l.is_inverse() && self.mode == Mode::Monoid {
            return Err(Error::InverseInMonoid);
        }
        Ok(())
    }

    /// Validates a word against this alphabet: letters in range, positive in
    /// monoid mode, freely reduced in group mode.
    pub fn check_word(&self, w: &Word) -> Result<()> {
        for &l in w.letters() {
            self.check_letter(l)?;
        }
        if self.mode == Mode::Group {
            if let Some(position) = w.cancellation_at() {
                return Err(Error::NotReduced { position });
            }
        }
        Ok(())
    }

    pub fn free_reduce(&self, letters: &[Letter]) -> Result<Word> {
        if self.mode == Mode::Monoid {
            return Err(Error::MonoidReduction);
        }
        for &l in letters {
            self.check_letter(l)?;
        }
        Ok(Word::free_reduce(letters.iter().copied()))
    }

    /// Product in the monoid or group over this alphabet.
    pub fn concat(&self, u: &Word, v: &Word) -> Result<Word> {
        self.check_word(u)?;
        self.check_word(v)?;
        Ok(match self.mode {
            Mode::Monoid => u.concat(v),
            Mode::Group => u.reduced_concat(v),
        })
    }

    pub fn invert(&self, w: &Word) -> Result<Word> {
        if self.mode == Mode::Monoid {
            return Err(Error::ModeMismatch { expected: "group", found: "monoid" });
        }
        self.check_word(w)?;
        Ok(w.inverse())
    }

    /// Parses one letter token: `x` or `x^-1`.
    pub fn parse_letter(&self, token: &str) -> Result<Letter> {
        let (name, inverse) = match token.strip_suffix("^-1") {
            Some(name) => (name, true),
            None => (token, false),
        };
        let index = self.index_of(name).ok_or_else(|| Error::UnknownSymbol(token.to_string()))?;
        let l = Letter::new(index, inverse);
        self.check_letter(l)?;
        Ok(l)
    }

    /// Parses the whitespace-separated word syntax (`x y^-1 x`, or `eps`).
    /// Group words must already be freely reduced.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens == ["eps"] || tokens.is_empty() {
            return Ok(Word::empty());
        }
        let w: Word =
            tokens.iter().map(|t| self.parse_letter(t)).collect::<Result<Vec<_>>>().map(Word::from_letters)?;
        self.check_word(&w)?;
        Ok(w)
    }

    pub fn format_letter(&self, l: Letter) -> String {
        if l.is_inverse() {
            format!("{}^-1", self.symbol(l.index()))
        } else {
            self.symbol(l.index()).to_string()
        }
    }

    /// Renders a word in the text syntax accepted by [`Alphabet::parse_word`].
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "eps".to_string();
        }
        let parts: Vec<String> = w.letters().iter().map(|&l| self.format_letter(l)).collect();
        parts.join(" ")
    }
}
