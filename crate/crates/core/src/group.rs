//! Immersions of free groups: prefix complexity, core-graph reduction and the
//! equaliser solver for pairs and finite sets.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::equaliser::{solve_by_reduction, solve_set_by_induction};
use crate::stallings::core_of_pair;
use crate::words::{Mode, Word};
use crate::{EqualiserResult, Error, Instance, Morphism, ReductionStep, Result, StepWitness};

/// `base^exp`, saturating at `u128::MAX`.
pub fn saturating_bound(base: u128, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
        if acc == u128::MAX || acc == 0 {
            break;
        }
    }
    acc
}

fn check_group(f: &Morphism) -> Result<()> {
    match f.mode() {
        Mode::Group => Ok(()),
        Mode::Monoid => Err(Error::ModeMismatch { expected: "group", found: "monoid" }),
    }
}

/// Distinct nonempty proper prefixes of `f(a)` over `a ∈ Σ^{±1}`.
pub fn signed_prefix_count(f: &Morphism) -> usize {
    f.images()
        .iter()
        .flat_map(|w| {
            let mut p = w.proper_prefixes();
            p.extend(w.inverse().proper_prefixes());
            p
        })
        .collect::<BTreeSet<Word>>()
        .len()
}

/// `σ(I)`: the signed prefix count of `g` plus that of `h`.
pub fn prefix_complexity(instance: &Instance) -> usize {
    signed_prefix_count(instance.g()) + signed_prefix_count(instance.h())
}

/// The maps `g': F(Σ') → F(Σ₁)` and `h': F(Σ') → F(Σ₂)` read off the petals
/// of `Core(g, h)`, with `g ∘ g' = h ∘ h'`.
pub fn reduce_pair(g: &Morphism, h: &Morphism) -> Result<(Morphism, Morphism, Vec<Word>)> {
    check_group(g)?;
    check_group(h)?;
    let pair = core_of_pair(g, h)?;
    let (g_prime, h_prime) = pair.petal_morphisms(g, h)?;
    Ok((g_prime, h_prime, pair.petal_labels()?))
}

/// Reduction `I → I' = (Σ', Σ, g', h')`.
pub fn reduce_instance(instance: &Instance) -> Result<ReductionStep> {
    let (g_prime, h_prime, petals) = reduce_pair(instance.g(), instance.h())?;
    Ok(ReductionStep {
        before: instance.clone(),
        after: Instance::new(g_prime, h_prime)?,
        witness: StepWitness::Petals(petals),
    })
}

/// `(2|Δ|)^(2|Σ|(σ(I) + 1))`, saturating at `u128::MAX`.
pub fn iteration_bound(instance: &Instance) -> u128 {
    saturating_bound(2 * instance.delta().len() as u128, 2 * instance.sigma().len() * (prefix_complexity(instance) + 1))
}

/// Immersion `ψ` with `Image(ψ) = Eq(g, h)`.
pub fn solve_pair(instance: &Instance) -> Result<EqualiserResult> {
    check_group(instance.g())?;
    instance.require_marked()?;
    solve_by_reduction(instance, reduce_instance, iteration_bound(instance))
}

/// Immersion whose image is `Image(ψ₁) ∩ Image(ψ₂)`.
pub fn intersect_images(psi1: &Morphism, psi2: &Morphism) -> Result<Morphism> {
    let (g_prime, _, _) = reduce_pair(psi1, psi2)?;
    psi1.compose(&g_prime)
}

/// Immersion `ψ_S` with `Image(ψ_S) = Eq(S)` for a finite set `S` of
/// immersions sharing domain and codomain.
pub fn solve_set(set: &[Morphism]) -> Result<EqualiserResult> {
    for f in set {
        check_group(f)?;
    }
    solve_set_by_induction(set, &solve_pair, &intersect_images)
}
