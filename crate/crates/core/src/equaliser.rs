use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::monoid::Block;
use crate::words::{Alphabet, Letter, Mode, Word};
use crate::{Error, Morphism, Result};

/// A pair of morphisms `g, h` with shared domain `Σ` and codomain `Δ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Instance {
    g: Morphism,
    h: Morphism,
}

impl Instance {
    pub fn new(g: Morphism, h: Morphism) -> Result<Self> {
        if g.domain() != h.domain() {
            return Err(Error::AlphabetMismatch("g and h have different domains"));
        }
        if g.codomain() != h.codomain() {
            return Err(Error::AlphabetMismatch("g and h have different codomains"));
        }
        Ok(Instance { g, h })
    }

    pub fn g(&self) -> &Morphism {
        &self.g
    }

    pub fn h(&self) -> &Morphism {
        &self.h
    }

    pub fn sigma(&self) -> &Alphabet {
        self.g.domain()
    }

    pub fn delta(&self) -> &Alphabet {
        self.g.codomain()
    }

    pub fn mode(&self) -> Mode {
        self.g.mode()
    }

    /// Both morphisms marked (monoid) or immersions (group).
    pub fn require_marked(&self) -> Result<()> {
        self.g.require_marked()?;
        self.h.require_marked()
    }

    /// Instance with generator names erased, for cycle detection.
    pub fn canonical(&self) -> CanonicalInstance {
        CanonicalInstance {
            domain: self.sigma().len(),
            codomain: self.delta().len(),
            g: self.g.images().to_vec(),
            h: self.h.images().to_vec(),
        }
    }

    /// Generators `a` with `g(a) = h(a)`, in alphabet order.
    pub fn agreeing_generators(&self) -> Vec<u32> {
        (0..self.sigma().len() as u32).filter(|&a| self.g.image(a) == self.h.image(a)).collect()
    }

    fn all_images_unit(&self) -> bool {
        self.g.images().iter().chain(self.h.images()).all(|w| w.len() == 1)
    }
}

/// Index-level view of an instance: alphabet sizes and image sequences in
/// the generator order produced by the reductions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalInstance {
    pub domain: usize,
    pub codomain: usize,
    pub g: Vec<Word>,
    pub h: Vec<Word>,
}

/// What produced the generators of a reduced instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepWitness {
    /// Monoid reduction: one generator per block.
    Blocks(Vec<Block>),
    /// Group reduction: one generator per petal of `Core(g, h)`, with the
    /// petal labels over `Δ`.
    Petals(Vec<Word>),
}

/// One reduction `I → I'` with `I' = (Σ', Σ, g', h')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub before: Instance,
    pub after: Instance,
    pub witness: StepWitness,
}

impl ReductionStep {
    pub fn g_prime(&self) -> &Morphism {
        self.after.g()
    }

    pub fn h_prime(&self) -> &Morphism {
        self.after.h()
    }
}

/// How the reduction sequence stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TerminationCase {
    EmptyAlphabet,
    AlphabetSizeOne,
    AllLengthOne,
    Cycle,
}

impl TerminationCase {
    pub fn as_str(self) -> &'static str {
        match self {
            TerminationCase::EmptyAlphabet => "empty-alphabet",
            TerminationCase::AlphabetSizeOne => "alphabet-size-1",
            TerminationCase::AllLengthOne => "all-length-1",
            TerminationCase::Cycle => "cycle",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [Self::EmptyAlphabet, Self::AlphabetSizeOne, Self::AllLengthOne, Self::Cycle]
            .into_iter()
            .find(|c| c.as_str() == s)
    }
}

impl fmt::Display for TerminationCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The equaliser as the image of `psi: Σ_S → Σ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualiserResult {
    pub psi: Morphism,
    /// Images of the generators of `psi`; a free basis of the equaliser.
    pub basis: Vec<Word>,
    pub trail: Vec<ReductionStep>,
    pub case: TerminationCase,
    /// Image intersections performed by a set solve (0 for a pair).
    pub intersections: usize,
}

impl EqualiserResult {
    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }
}

/// Iterates `reduce` until one of the stopping cases applies, then composes
/// the trail into `psi`.
pub(crate) fn solve_by_reduction(
    instance: &Instance,
    reduce: impl Fn(&Instance) -> Result<ReductionStep>,
    bound: u128,
) -> Result<EqualiserResult> {
    let mut current = instance.clone();
    let mut trail: Vec<ReductionStep> = Vec::new();
    let mut seen: BTreeSet<CanonicalInstance> = BTreeSet::new();
    let case = loop {
        if current.sigma().is_empty() {
            break TerminationCase::EmptyAlphabet;
        }
        if current.sigma().len() == 1 {
            break TerminationCase::AlphabetSizeOne;
        }
        if current.all_images_unit() {
            break TerminationCase::AllLengthOne;
        }
        if !seen.insert(current.canonical()) {
            break TerminationCase::Cycle;
        }
        if trail.len() as u128 >= bound {
            return Err(Error::BoundExceeded(bound));
        }
        let step = reduce(&current)?;
        current = step.after.clone();
        trail.push(step);
    };
    let basis_generators = match case {
        TerminationCase::EmptyAlphabet => Vec::new(),
        _ => current.agreeing_generators(),
    };
    let psi = orient_generators(compose_trail(&trail, current.sigma(), &basis_generators)?);
    Ok(EqualiserResult { basis: psi.images().to_vec(), psi, trail, case, intersections: 0 })
}

/// `g_1 ∘ g_2 ∘ … ∘ g_j` restricted to the chosen generators of `Σ_j`.
fn compose_trail(trail: &[ReductionStep], top: &Alphabet, generators: &[u32]) -> Result<Morphism> {
    let images = generators.iter().map(|&g| Word::letter(Letter::pos(g))).collect();
    let mut psi = Morphism::new_unchecked(top.select(generators), top.clone(), images);
    for step in trail.iter().rev() {
        psi = step.g_prime().compose(&psi)?;
    }
    Ok(psi)
}

/// In group mode, replaces each image by its inverse when that is smaller,
/// so a basis does not depend on how petals happened to be oriented.
fn orient_generators(psi: Morphism) -> Morphism {
    if psi.mode() != Mode::Group {
        return psi;
    }
    let images = psi.images().iter().map(|w| core::cmp::min(w.clone(), w.inverse())).collect();
    Morphism::new_unchecked(psi.domain().clone(), psi.codomain().clone(), images)
}

/// Solves a finite set by induction: `Eq(S) = Eq(g, h) ∩ Eq(S ∖ {g})`, the
/// intersection computed by `intersect`.
pub(crate) fn solve_set_by_induction(
    set: &[Morphism],
    solve_pair: &dyn Fn(&Instance) -> Result<EqualiserResult>,
    intersect: &dyn Fn(&Morphism, &Morphism) -> Result<Morphism>,
) -> Result<EqualiserResult> {
    if set.len() < 2 {
        return Err(Error::TooFewMorphisms(set.len()));
    }
    for f in set {
        f.require_marked()?;
    }
    let pair = solve_pair(&Instance::new(set[0].clone(), set[1].clone())?)?;
    if set.len() == 2 {
        return Ok(pair);
    }
    let rest = solve_set_by_induction(&set[1..], solve_pair, intersect)?;
    let psi = orient_generators(intersect(&rest.psi, &pair.psi)?);
    Ok(EqualiserResult {
        basis: psi.images().to_vec(),
        psi,
        trail: pair.trail,
        case: pair.case,
        intersections: rest.intersections + 1,
    })
}
