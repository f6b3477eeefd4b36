//! How common marked morphisms and immersions are among all morphisms with
//! images of length at most `n`.
//!
//! Exact measurements count images by first (and last) letter instead of
//! enumerating tuples, so they stay cheap for `n` in the tens. Sampling draws
//! each image uniformly from the ball of words of length `≤ n`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::random::{positive_word, reduced_word};
use crate::words::Letter;
use crate::{Error, Result};

pub const DEFAULT_SEED: u64 = 0x5eed;

const OVERFLOW: Error = Error::Invalid("count does not fit in 128 bits; sample instead");

fn factorial_ratio(top: u128, bottom: u128) -> u128 {
    // top! / bottom!
    (bottom + 1..=top).product()
}

/// `m! / (m^k (m−k)!)`, the limiting density of marked morphisms
/// `Σ* → Δ*` with `|Σ| = k`, `|Δ| = m`; zero when `k > m`.
pub fn marked_density_limit(k: usize, m: usize) -> Ratio<u128> {
    if k > m {
        return Ratio::from_integer(0);
    }
    let (k, m) = (k as u128, m as u128);
    Ratio::new(factorial_ratio(m, m - k), m.pow(k as u32))
}

/// Limiting density of immersions `F(k) → F(m)`: the first letters of the
/// images and the inverses of their last letters become independent and
/// uniform, so the density is the chance that `2k` uniform letters out of
/// `2m` are distinct. In rank one every image has equal first and last
/// letter, which makes the single-generator case always an immersion.
pub fn immersion_density_limit(k: usize, m: usize) -> Ratio<u128> {
    if m == 1 {
        return Ratio::from_integer((k <= 1) as u128);
    }
    if k > m {
        return Ratio::from_integer(0);
    }
    let (k, m) = (k as u128, m as u128);
    Ratio::new(factorial_ratio(2 * m, 2 * m - 2 * k), (2 * m).pow(2 * k as u32))
}

fn letter_set(m: usize, s: &[Letter]) -> Result<BTreeSet<Letter>> {
    for l in s {
        if l.index() as usize >= m {
            return Err(Error::LetterOutOfRange { index: l.index(), size: m });
        }
    }
    Ok(s.iter().copied().collect())
}

/// `f_{A,B}(n)`: reduced words of length `n ≥ 1` over `m` generators whose
/// first letter is not in `A` and whose last letter is not in `B`.
pub fn reduced_word_count(m: usize, n: usize, a: &[Letter], b: &[Letter]) -> Result<u128> {
    if n < 1 {
        return Err(Error::Invalid("reduced_word_count needs n >= 1"));
    }
    if m == 0 {
        return Ok(0);
    }
    let (a, b) = (letter_set(m, a)?, letter_set(m, b)?);
    let a_inv: BTreeSet<Letter> = a.iter().map(|l| l.inverse()).collect();
    let both = a.intersection(&b).count() as i128;
    let inv_both = a_inv.intersection(&b).count() as i128;
    let (x, y) = (both - inv_both, both + inv_both);
    let (mi, ai, bi) = (m as i128, a.len() as i128, b.len() as i128);
    let power = (2 * mi - 1).checked_pow(n as u32 - 1).ok_or(OVERFLOW)?;
    let lead = (2 * mi - ai).checked_mul(2 * mi - bi).and_then(|c| c.checked_mul(power)).ok_or(OVERFLOW)?;
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let total = lead + x * mi + sign * (ai * bi - y * mi);
    debug_assert!(total >= 0 && total % (2 * mi) == 0);
    Ok((total / (2 * mi)) as u128)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DensityKind {
    /// Marked morphisms among all monoid morphisms `Σ* → Δ*`.
    MarkedMonoid,
    /// Immersions among all group morphisms `F(Σ) → F(Δ)`.
    ImmersionGroup,
}

impl DensityKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DensityKind::MarkedMonoid => "marked-monoid",
            DensityKind::ImmersionGroup => "immersion-group",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [DensityKind::MarkedMonoid, DensityKind::ImmersionGroup].into_iter().find(|k| k.as_str() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DensityParams {
    pub k: usize,
    pub m: usize,
    pub n: usize,
    /// Number of sampled tuples; 0 counts exactly.
    pub samples: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Density {
    pub empirical: Ratio<u128>,
    pub predicted: Ratio<u128>,
}

pub fn ratio_to_f64(r: Ratio<u128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn measure_density(params: DensityParams, kind: DensityKind) -> Result<Density> {
    if params.n < 1 || params.m < 1 {
        return Err(Error::Invalid("density needs n >= 1 and m >= 1"));
    }
    let predicted = match kind {
        DensityKind::MarkedMonoid => marked_density_limit(params.k, params.m),
        DensityKind::ImmersionGroup => immersion_density_limit(params.k, params.m),
    };
    let empirical = if params.samples == 0 {
        match kind {
            DensityKind::MarkedMonoid => exact_marked(params.k, params.m, params.n)?,
            DensityKind::ImmersionGroup => exact_immersion(params.k, params.m, params.n)?,
        }
    } else {
        sampled(params, kind)?
    };
    Ok(Density { empirical, predicted })
}

fn pow(base: u128, exp: usize) -> Result<u128> {
    base.checked_pow(exp as u32).ok_or(OVERFLOW)
}

/// Words of length `1..=n` over `m` letters starting with a fixed letter.
fn monoid_class(m: usize, n: usize) -> Result<u128> {
    (0..n).try_fold(0u128, |acc, j| acc.checked_add(pow(m as u128, j)?).ok_or(OVERFLOW))
}

fn exact_marked(k: usize, m: usize, n: usize) -> Result<Ratio<u128>> {
    let ball = monoid_class(m, n)?.checked_mul(m as u128).and_then(|c| c.checked_add(1)).ok_or(OVERFLOW)?;
    let total = pow(ball, k)?;
    if k > m {
        return Ok(Ratio::new(0, total));
    }
    let marked =
        factorial_ratio(m as u128, (m - k) as u128).checked_mul(pow(monoid_class(m, n)?, k)?).ok_or(OVERFLOW)?;
    Ok(Ratio::new(marked, total))
}

/// Reduced words of length `1..=n` with first letter `alpha` and last letter
/// `beta`, by `f_{A,B}` with everything else excluded.
pub fn first_last_count(m: usize, n: usize, alpha: Letter, beta: Letter) -> Result<u128> {
    let all: Vec<Letter> = (0..m as u32).flat_map(|i| [Letter::pos(i), Letter::neg(i)]).collect();
    let a: Vec<Letter> = all.iter().copied().filter(|&l| l != alpha).collect();
    let b: Vec<Letter> = all.iter().copied().filter(|&l| l != beta).collect();
    let mut sum = (alpha == beta) as u128;
    for j in 2..=n {
        sum = sum.checked_add(reduced_word_count(m, j, &a, &b)?).ok_or(OVERFLOW)?;
    }
    Ok(sum)
}

/// Reduced words of length `≤ n` over `m` generators, `ε` included.
pub fn reduced_ball_size(m: usize, n: usize) -> Result<u128> {
    (1..=n).try_fold(1u128, |acc, j| acc.checked_add(reduced_word_count(m, j, &[], &[])?).ok_or(OVERFLOW))
}

fn exact_immersion(k: usize, m: usize, n: usize) -> Result<Ratio<u128>> {
    let total = pow(reduced_ball_size(m, n)?, k)?;
    if k > m {
        return Ok(Ratio::new(0, total));
    }
    if m > 10 {
        return Err(Error::Invalid("exact immersion counts need m <= 10; sample instead"));
    }
    let letters = 2 * m;
    // (alpha, beta^-1) keys with their class sizes
    let mut classes: Vec<(usize, usize, u128)> = Vec::new();
    for alpha in 0..letters {
        for beta in 0..letters {
            let (fa, lb) = (Letter::from_key(alpha), Letter::from_key(beta));
            let count = first_last_count(m, n, fa, lb)?;
            let inv = lb.inverse().key();
            if count > 0 && inv != alpha {
                classes.push((alpha, inv, count));
            }
        }
    }
    // ways[mask]: tuples of the first i images using exactly the letters in mask
    let mut ways: Vec<u128> = vec![0; 1 << letters];
    ways[0] = 1;
    for _ in 0..k {
        let mut next = vec![0u128; 1 << letters];
        for (mask, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for &(a, b, c) in &classes {
                let bits = (1 << a) | (1 << b);
                if mask & bits == 0 {
                    let add = w.checked_mul(c).ok_or(OVERFLOW)?;
                    next[mask | bits] = next[mask | bits].checked_add(add).ok_or(OVERFLOW)?;
                }
            }
        }
        ways = next;
    }
    let immersions = ways.iter().try_fold(0u128, |acc, &w| acc.checked_add(w).ok_or(OVERFLOW))?;
    Ok(Ratio::new(immersions, total))
}

/// Uniform word from the ball of radius `n`: the length is drawn with weight
/// equal to the number of words of that length.
fn sample_word<R: Rng>(rng: &mut R, m: usize, weights: &[u128], group: bool) -> crate::Word {
    let total: u128 = weights.iter().sum();
    let mut pick = rng.random_range(0..total);
    let mut len = 0;
    for (j, &w) in weights.iter().enumerate() {
        if pick < w {
            len = j;
            break;
        }
        pick -= w;
    }
    if group {
        reduced_word(rng, m, len)
    } else {
        positive_word(rng, m, len)
    }
}

fn sampled(params: DensityParams, kind: DensityKind) -> Result<Ratio<u128>> {
    let DensityParams { k, m, n, samples, seed } = params;
    let group = kind == DensityKind::ImmersionGroup;
    let weights: Vec<u128> = (0..=n)
        .map(|j| match (group, j) {
            (_, 0) => Ok(1),
            (true, j) => reduced_word_count(m, j, &[], &[]),
            (false, j) => pow(m as u128, j),
        })
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits: u128 = 0;
    for _ in 0..samples {
        let images: Vec<crate::Word> = (0..k).map(|_| sample_word(&mut rng, m, &weights, group)).collect();
        let mut seen = BTreeSet::new();
        let ok = images.iter().all(|w| {
            let (Some(first), Some(last)) = (w.first(), w.last()) else { return false };
            seen.insert(first) && (!group || seen.insert(last.inverse()))
        });
        hits += ok as u128;
    }
    Ok(Ratio::new(hits, samples as u128))
}
