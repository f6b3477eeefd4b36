//! Brute-force ground truth on a ball of words.
//!
//! Nothing here goes through the solver's word arithmetic: words are plain
//! signed integers (`+(i+1)` for a generator, `-(i+1)` for its inverse) with
//! their own concatenation, reduction and decoding. Only the conversion from
//! and to [`Word`] is shared.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::words::{Letter, Mode, Word};
use crate::{EqualiserResult, Error, Morphism, Result};

type Raw = Vec<i32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BallSpec {
    pub radius: usize,
    pub mode: Mode,
}

impl BallSpec {
    pub fn new(radius: usize, mode: Mode) -> Self {
        BallSpec { radius, mode }
    }
}

fn to_raw(w: &Word) -> Raw {
    w.letters()
        .iter()
        .map(|l| {
            let n = l.index() as i32 + 1;
            if l.is_inverse() {
                -n
            } else {
                n
            }
        })
        .collect()
}

fn from_raw(w: &[i32]) -> Word {
    w.iter().map(|&n| Letter::new(n.unsigned_abs() - 1, n < 0)).collect()
}

/// Generator index first, positive before inverse.
fn order_key(n: i32) -> (u32, bool) {
    (n.unsigned_abs(), n < 0)
}

fn shortlex(a: &Raw, b: &Raw) -> core::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.iter().map(|&n| order_key(n)).cmp(b.iter().map(|&n| order_key(n))))
}

fn raw_images(f: &Morphism) -> Vec<Raw> {
    f.images().iter().map(to_raw).collect()
}

/// Image of `w`, freely reduced when `group` is set.
fn apply(images: &[Raw], w: &[i32], group: bool) -> Raw {
    let mut out: Raw = Vec::new();
    for &n in w {
        let img = &images[n.unsigned_abs() as usize - 1];
        let piece: Raw = if n > 0 { img.clone() } else { img.iter().rev().map(|&x| -x).collect() };
        for x in piece {
            if group && out.last() == Some(&-x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
    }
    out
}

/// All words of length at most `radius` over `k` generators (reduced words in
/// group mode), shortlex.
fn ball(k: usize, radius: usize, group: bool) -> Vec<Raw> {
    let letters: Vec<i32> =
        (1..=k as i32).flat_map(|i| if group { alloc::vec![i, -i] } else { alloc::vec![i] }).collect();
    let mut all = alloc::vec![Raw::new()];
    let mut layer = alloc::vec![Raw::new()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if group && w.last() == Some(&-l) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.sort_by(shortlex);
    all
}

fn check_shared(maps: &[Morphism], mode: Mode) -> Result<()> {
    let first = maps.first().ok_or(Error::TooFewMorphisms(0))?;
    for f in maps {
        if f.mode() != mode {
            return Err(Error::ModeMismatch { expected: mode.as_str(), found: f.mode().as_str() });
        }
        if f.domain() != first.domain() || f.codomain() != first.codomain() {
            return Err(Error::AlphabetMismatch("oracle morphisms must share domain and codomain"));
        }
    }
    Ok(())
}

/// Every word in the ball on which all of `maps` agree, shortlex; always
/// contains `ε`.
pub fn enumerate_equaliser(maps: &[Morphism], spec: BallSpec) -> Result<Vec<Word>> {
    check_shared(maps, spec.mode)?;
    let group = spec.mode == Mode::Group;
    let images: Vec<Vec<Raw>> = maps.iter().map(raw_images).collect();
    Ok(ball(maps[0].domain().len(), spec.radius, group)
        .into_iter()
        .filter(|w| {
            let first = apply(&images[0], w, group);
            images[1..].iter().all(|im| apply(im, w, group) == first)
        })
        .map(|w| from_raw(&w))
        .collect())
}

/// Images of the signed generators whose first letters are pairwise
/// distinct and nonempty; `None` otherwise.
fn decoding_table(images: &[Raw], group: bool) -> Option<Vec<(i32, Raw)>> {
    let mut table: Vec<(i32, Raw)> = Vec::new();
    for (i, img) in images.iter().enumerate() {
        let n = i as i32 + 1;
        table.push((n, img.clone()));
        if group {
            table.push((-n, img.iter().rev().map(|&x| -x).collect()));
        }
    }
    let firsts: BTreeSet<i32> = table.iter().filter_map(|(_, w)| w.first().copied()).collect();
    let all_nonempty = table.iter().all(|(_, w)| !w.is_empty());
    (all_nonempty && firsts.len() == table.len()).then_some(table)
}

/// Greedy decoding: the first letter of what is left picks the generator.
fn decode(table: &[(i32, Raw)], w: &[i32], group: bool) -> Option<Raw> {
    let mut rest = w;
    let mut out: Raw = Vec::new();
    while let Some(&c) = rest.first() {
        let (n, img) = table.iter().find(|(_, img)| img[0] == c)?;
        if !rest.starts_with(img) {
            return None;
        }
        if group && out.last() == Some(&-n) {
            return None;
        }
        out.push(*n);
        rest = &rest[img.len()..];
    }
    Some(out)
}

/// Elements of `Image(psi)` in the ball, found by decoding every word of the
/// ball; `psi` must be marked (monoid) or an immersion (group).
pub fn image_ball(psi: &Morphism, spec: BallSpec) -> Result<Vec<Word>> {
    check_shared(core::slice::from_ref(psi), spec.mode)?;
    let group = spec.mode == Mode::Group;
    let table = decoding_table(&raw_images(psi), group).ok_or(Error::Invalid("oracle decoding needs a marked map"))?;
    Ok(ball(psi.codomain().len(), spec.radius, group)
        .into_iter()
        .filter(|w| decode(&table, w, group).is_some())
        .map(|w| from_raw(&w))
        .collect())
}

/// A disagreement between a solver result and the brute-force oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// An equaliser element in the ball that `psi` does not reach.
    Missing(Word),
    /// An element of `Image(psi)` in the ball that is not in the equaliser.
    Spurious(Word),
    NotMarked,
    RankExceeded {
        basis: usize,
        alphabet: usize,
    },
    /// A basis word on which the morphisms disagree.
    BasisOutsideEqualiser(Word),
    /// `basis` and the images of `psi` differ.
    BasisMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub spec: BallSpec,
    /// Size of the oracle equaliser in the ball.
    pub equaliser_size: usize,
    pub violations: Vec<Violation>,
    symbols: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "eps".into();
        }
        let mut s = String::new();
        for (i, l) in w.letters().iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            s.push_str(&self.symbols[l.index() as usize]);
            if l.is_inverse() {
                s.push_str("^-1");
            }
        }
        s
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "pass" } else { "fail" };
        writeln!(f, "{verdict} radius {} equaliser-size {}", self.spec.radius, self.equaliser_size)?;
        for v in &self.violations {
            match v {
                Violation::Missing(w) => writeln!(f, "missing {}", self.word(w))?,
                Violation::Spurious(w) => writeln!(f, "spurious {}", self.word(w))?,
                Violation::NotMarked => writeln!(f, "psi is not marked")?,
                Violation::RankExceeded { basis, alphabet } => {
                    writeln!(f, "basis has {basis} elements but the alphabet has {alphabet}")?
                }
                Violation::BasisOutsideEqualiser(w) => {
                    writeln!(f, "basis word {} is not in the equaliser", self.word(w))?
                }
                Violation::BasisMismatch => writeln!(f, "basis differs from the images of psi")?,
            }
        }
        Ok(())
    }
}

/// Checks a solver result for `maps` against the oracle on the ball.
pub fn check_result(maps: &[Morphism], result: &EqualiserResult, spec: BallSpec) -> Result<Report> {
    let equaliser = enumerate_equaliser(maps, spec)?;
    let group = spec.mode == Mode::Group;
    let sigma = maps[0].domain();
    let mut violations = Vec::new();
    if result.psi.codomain() != sigma {
        return Err(Error::AlphabetMismatch("psi must map into the domain of the morphisms"));
    }
    let psi_images = raw_images(&result.psi);
    if result.basis.len() != psi_images.len() || result.basis.iter().map(to_raw).ne(psi_images.iter().cloned()) {
        violations.push(Violation::BasisMismatch);
    }
    if result.basis.len() > sigma.len() {
        violations.push(Violation::RankExceeded { basis: result.basis.len(), alphabet: sigma.len() });
    }
    let images: Vec<Vec<Raw>> = maps.iter().map(raw_images).collect();
    for b in &result.basis {
        let w = to_raw(b);
        let first = apply(&images[0], &w, group);
        if images[1..].iter().any(|im| apply(im, &w, group) != first) {
            violations.push(Violation::BasisOutsideEqualiser(b.clone()));
        }
    }
    match decoding_table(&psi_images, group) {
        None => violations.push(Violation::NotMarked),
        Some(table) => {
            let eq: BTreeSet<Raw> = equaliser.iter().map(to_raw).collect();
            let reached: Vec<Raw> = ball(sigma.len(), spec.radius, group)
                .into_iter()
                .filter(|w| decode(&table, w, group).is_some())
                .collect();
            let reached_set: BTreeSet<Raw> = reached.iter().cloned().collect();
            // ball order is shortlex, so the first hit is a shortest witness
            if let Some(w) = equaliser.iter().find(|w| !reached_set.contains(&to_raw(w))) {
                violations.push(Violation::Missing(w.clone()));
            }
            if let Some(w) = reached.iter().find(|w| !eq.contains(*w)) {
                violations.push(Violation::Spurious(from_raw(w)));
            }
        }
    }
    Ok(Report { spec, equaliser_size: equaliser.len(), violations, symbols: sigma.symbols().to_vec() })
}
