//! Weightings, coweightings and the Euler characteristic of a finite category.
//!
//! A weighting is a solution `w` of `ζ w = u` where `ζ` is the similarity
//! matrix and `u` the all-ones vector; a coweighting solves `v ζ = uᵀ`. When
//! both exist, `χ(C) = Σ w = Σ v`. Acyclic categories have a unitriangular
//! similarity matrix and are solved by back-substitution; everything else
//! goes through exact Gaussian elimination.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::category::{FiniteCategory, ObjectSet};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::Rational;

/// Filter enumeration gives up beyond this many filters unless told otherwise.
pub const DEFAULT_FILTER_CAP: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    Weighting,
    Coweighting,
}

/// A weighting or coweighting, indexed like the objects of its category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weighting {
    pub values: Vec<Rational>,
    pub kind: WeightKind,
}

impl Weighting {
    pub fn total(&self) -> Rational {
        self.values.iter().sum()
    }
}

/// A solution of `ζ w = u`, if one exists.
pub fn weighting(cat: &FiniteCategory) -> Option<Weighting> {
    let values = if cat.is_acyclic() {
        Some(unitriangular_weighting(cat))
    } else {
        general_weighting(cat)
    }?;
    Some(Weighting {
        values,
        kind: WeightKind::Weighting,
    })
}

/// A solution of `v ζ = uᵀ`, if one exists.
pub fn coweighting(cat: &FiniteCategory) -> Option<Weighting> {
    weighting(&cat.opposite()).map(|w| Weighting {
        values: w.values,
        kind: WeightKind::Coweighting,
    })
}

/// `χ(C)`, or `None` when `C` lacks a weighting or a coweighting.
/// The empty category has `χ = 0`.
pub fn euler_characteristic(cat: &FiniteCategory) -> Option<Rational> {
    let w = weighting(cat)?.total();
    let v = coweighting(cat)?.total();
    assert_eq!(w, v, "weighting and coweighting sums disagree");
    Some(w)
}

/// `χ` of the full subcategory on `s`.
pub fn euler_characteristic_of(cat: &FiniteCategory, s: &ObjectSet) -> Result<Option<Rational>> {
    Ok(euler_characteristic(&cat.full_subcategory(s)?))
}

/// Weighting by Gaussian elimination regardless of shape. Exposed so the
/// triangular fast path can be checked against it.
pub fn general_weighting(cat: &FiniteCategory) -> Option<Vec<Rational>> {
    let n = cat.len();
    let zeta: Vec<Vec<Rational>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| Rational::from_integer(cat.hom(a, b).into()))
                .collect()
        })
        .collect();
    linalg::solve(&zeta, &vec![Rational::one(); n])
}

fn unitriangular_weighting(cat: &FiniteCategory) -> Vec<Rational> {
    let q = cat.quotient();
    let mut w = vec![Rational::zero(); cat.len()];
    // maximal classes first; acyclic means every class is a single object
    for &c in q.linear_extension().iter().rev() {
        let x = q.representative(c);
        let mut value = Rational::one();
        for (y, wy) in w.iter().enumerate() {
            if y != x && cat.arrow(x, y) {
                value -= wy * Rational::from_integer(cat.hom(x, y).into());
            }
        }
        w[x] = value;
    }
    w
}

/// `N_k` for `k = 0, 1, …`: the number of chains `x₀ → ⋯ → x_k` of
/// composable nonidentity morphisms in an acyclic category. Trailing zero
/// counts are dropped.
pub fn nerve_simplex_counts(cat: &FiniteCategory) -> Result<Vec<BigInt>> {
    if !cat.is_acyclic() {
        return Err(Error::NotAcyclic);
    }
    let n = cat.len();
    // chains[x] = number of k-chains starting at x
    let mut chains: Vec<BigInt> = vec![BigInt::one(); n];
    let mut counts = Vec::new();
    while chains.iter().any(|c| !c.is_zero()) {
        counts.push(chains.iter().sum());
        chains = (0..n)
            .map(|x| {
                (0..n)
                    .filter(|&y| y != x && cat.arrow(x, y))
                    .map(|y| BigInt::from(cat.hom(x, y)) * &chains[y])
                    .sum()
            })
            .collect();
    }
    Ok(counts)
}

/// `χ(BC) = Σ (-1)^k N_k` for an acyclic category.
pub fn nerve_euler_characteristic(cat: &FiniteCategory) -> Result<Rational> {
    let counts = nerve_simplex_counts(cat)?;
    let total: BigInt = counts
        .into_iter()
        .enumerate()
        .map(|(k, c)| if k % 2 == 0 { c } else { -c })
        .sum();
    Ok(Rational::from_integer(total))
}

/// All filters of `cat`, ordered by size and then lexicographically by members.
///
/// Filters correspond to antichains of `Po(C)` (their minimal classes), which
/// is how they are enumerated.
pub fn enumerate_filters(cat: &FiniteCategory, cap: usize) -> Result<Vec<ObjectSet>> {
    let q = cat.quotient();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn walk(
        q: &crate::category::QuotientPoset,
        next: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<ObjectSet>,
        cap: usize,
    ) -> Result<()> {
        if out.len() == cap {
            return Err(Error::CapExceeded(cap));
        }
        let up = (0..q.len()).filter(|&d| chosen.iter().any(|&c| q.leq(c, d)));
        out.push(q.lift(up));
        for c in next..q.len() {
            if chosen.iter().all(|&d| !q.leq(c, d) && !q.leq(d, c)) {
                chosen.push(c);
                walk(q, c + 1, chosen, out, cap)?;
                chosen.pop();
            }
        }
        Ok(())
    }
    walk(q, 0, &mut chosen, &mut out, cap)?;
    out.sort_by_key(|s| (s.len(), s.members()));
    Ok(out)
}

/// All ideals of `cat`, ordered like [`enumerate_filters`].
pub fn enumerate_ideals(cat: &FiniteCategory, cap: usize) -> Result<Vec<ObjectSet>> {
    let mut out = enumerate_filters(&cat.opposite(), cap)?;
    out.sort_by_key(|s| (s.len(), s.members()));
    Ok(out)
}

/// Every filter and every ideal (the empty ones included) has an Euler characteristic.
pub fn is_measurable(cat: &FiniteCategory, cap: usize) -> Result<bool> {
    let filters = enumerate_filters(cat, cap)?;
    for f in &filters {
        if euler_characteristic_of(cat, f)?.is_none() {
            return Ok(false);
        }
        let ideal = cat.complement(f)?;
        if euler_characteristic_of(cat, &ideal)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}
