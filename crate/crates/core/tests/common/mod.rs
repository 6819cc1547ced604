//! Brute-force oracles shared by the integration tests. None of these go
//! through the library's solvers or decompositions.

#![allow(dead_code)]

use std::path::PathBuf;

use eulercat::{FiniteCategory, ObjectSet, Rational};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Counts chains of nonidentity morphisms `x₀ → ⋯ → x_k` by explicit
/// depth-first enumeration of object sequences.
pub fn nerve_counts_by_dfs(cat: &FiniteCategory) -> Vec<BigInt> {
    fn extend(
        cat: &FiniteCategory,
        path: &mut Vec<usize>,
        mult: &BigInt,
        counts: &mut Vec<BigInt>,
    ) {
        let k = path.len() - 1;
        if counts.len() <= k {
            counts.push(BigInt::from(0));
        }
        counts[k] += mult;
        let last = *path.last().unwrap();
        for y in 0..cat.len() {
            if y != last && cat.hom(last, y) > 0 {
                assert!(!path.contains(&y), "cycle in supposedly acyclic category");
                path.push(y);
                extend(cat, path, &(mult * BigInt::from(cat.hom(last, y))), counts);
                path.pop();
            }
        }
    }
    let mut counts = Vec::new();
    for x in 0..cat.len() {
        extend(cat, &mut vec![x], &BigInt::from(1), &mut counts);
    }
    counts
}

pub fn alternating_sum(counts: &[BigInt]) -> Rational {
    let mut total = BigInt::from(0);
    for (k, c) in counts.iter().enumerate() {
        if k % 2 == 0 {
            total += c;
        } else {
            total -= c;
        }
    }
    Rational::from_integer(total)
}

/// Every subset of objects that passes the filter test, by exhaustion.
pub fn filters_by_exhaustion(cat: &FiniteCategory) -> Vec<ObjectSet> {
    let n = cat.len();
    (0u32..1 << n)
        .map(|mask| {
            (0..n)
                .filter(|&i| mask >> i & 1 == 1)
                .collect::<ObjectSet>()
        })
        .filter(|s| {
            s.iter()
                .all(|x| (0..n).all(|y| cat.hom(x, y) == 0 || s.contains(y)))
        })
        .collect()
}

/// `ζ · w` computed entrywise.
pub fn zeta_times(cat: &FiniteCategory, w: &[Rational]) -> Vec<Rational> {
    (0..cat.len())
        .map(|a| {
            (0..cat.len())
                .map(|b| Rational::from_integer(cat.hom(a, b).into()) * &w[b])
                .sum()
        })
        .collect()
}

/// `v · ζ` computed entrywise.
pub fn times_zeta(cat: &FiniteCategory, v: &[Rational]) -> Vec<Rational> {
    (0..cat.len())
        .map(|b| {
            (0..cat.len())
                .map(|a| &v[a] * Rational::from_integer(cat.hom(a, b).into()))
                .sum()
        })
        .collect()
}

/// Values of `Σ a_i δ_{A_i}` computed pointwise.
pub fn combination_values(n: usize, terms: &[(Rational, ObjectSet)]) -> Vec<Rational> {
    (0..n)
        .map(|x| {
            terms
                .iter()
                .filter(|(_, s)| s.contains(x))
                .map(|(a, _)| a.clone())
                .sum()
        })
        .collect()
}

/// `χ` of the full subcategory on `s`, panicking if absent.
pub fn chi(cat: &FiniteCategory, s: &ObjectSet) -> Rational {
    eulercat::euler::euler_characteristic_of(cat, s)
        .unwrap()
        .expect("Euler characteristic exists")
}

/// `χ` of the full subcategory on `s`, if present.
pub fn try_chi(cat: &FiniteCategory, s: &ObjectSet) -> Option<Rational> {
    eulercat::euler::euler_characteristic_of(cat, s).unwrap()
}

/// Draws random categories until one is measurable.
pub fn measurable_category<R: rand::Rng>(rng: &mut R, max_n: usize) -> FiniteCategory {
    loop {
        let n = rng.gen_range(1..=max_n);
        let cat = eulercat::random::random_category(rng, n);
        if eulercat::euler::is_measurable(&cat, eulercat::euler::DEFAULT_FILTER_CAP).unwrap() {
            return cat;
        }
    }
}

/// `∫ f dχ` over filters, from the triangular expansion
/// `f = Σ a_c δ_{∨c}` worked out directly on the hom matrix.
pub fn filter_integral_oracle(cat: &FiniteCategory, values: &[Rational]) -> Option<Rational> {
    let n = cat.len();
    let same = |x: usize, y: usize| cat.arrow(x, y) && cat.arrow(y, x);
    let reps: Vec<usize> = (0..n).filter(|&x| (0..x).all(|y| !same(x, y))).collect();
    let strictly_below = |c: usize, d: usize| cat.arrow(c, d) && !cat.arrow(d, c);
    let mut coef: Vec<Option<Rational>> = vec![None; n];
    fn solve(
        c: usize,
        reps: &[usize],
        values: &[Rational],
        below: &dyn Fn(usize, usize) -> bool,
        coef: &mut Vec<Option<Rational>>,
    ) -> Rational {
        if let Some(a) = &coef[c] {
            return a.clone();
        }
        let mut a = values[c].clone();
        for &d in reps {
            if below(d, c) {
                a -= solve(d, reps, values, below, coef);
            }
        }
        coef[c] = Some(a.clone());
        a
    }
    let mut total = Rational::from_integer(0.into());
    for &c in &reps {
        let a = solve(c, &reps, values, &strictly_below, &mut coef);
        if a != Rational::from_integer(0.into()) {
            let up: ObjectSet = (0..n).filter(|&y| cat.arrow(c, y)).collect();
            total += a * try_chi(cat, &up)?;
        }
    }
    Some(total)
}

/// `h(r)` recomputed from placements by breadth-first search along the
/// Hasse edges from each target's upper end.
pub fn counting_oracle(n: usize, hasse: &[(usize, usize)], heads: &[usize]) -> Vec<u64> {
    let mut h = vec![0u64; n];
    for &start in heads {
        let mut seen = vec![false; n];
        let mut queue = std::collections::VecDeque::from([start]);
        seen[start] = true;
        while let Some(p) = queue.pop_front() {
            h[p] += 1;
            for &(a, b) in hasse {
                if a == p && !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
    }
    h
}
