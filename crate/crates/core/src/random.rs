//! Seeded generators for random categories, maps and functions, used by
//! property tests and the acceptance harness.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::category::{FiniteCategory, ObjectSet};
use crate::definable::DefinableFunction;
use crate::integration::ObjectMap;
use crate::rational::Rational;

/// A random strict order on `0..n`: pairs of a shuffled sequence are related
/// with probability `p`, then closed transitively.
#[allow(clippy::needless_range_loop)]
pub fn random_strict_order<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<Vec<bool>> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut less = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                less[perm[i]][perm[j]] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if less[i][k] {
                for j in 0..n {
                    if less[k][j] {
                        less[i][j] = true;
                    }
                }
            }
        }
    }
    less
}

/// A random poset category on `n` elements named `{prefix}0, {prefix}1, …`.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, prefix: &str) -> FiniteCategory {
    let p = rng.gen_range(0.2..0.8);
    let less = random_strict_order(rng, n, p);
    let names = (0..n).map(|i| format!("{prefix}{i}")).collect();
    FiniteCategory::from_order(names, |i, j| less[i][j]).expect("strict order")
}

/// A random acyclic category: a random strict order with 1 or 2 morphisms
/// between related objects.
pub fn random_acyclic<R: Rng>(rng: &mut R, n: usize) -> FiniteCategory {
    let p = rng.gen_range(0.2..0.8);
    let less = random_strict_order(rng, n, p);
    let hom = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match () {
                    _ if i == j => 1,
                    _ if less[i][j] => rng.gen_range(1..=2),
                    _ => 0,
                })
                .collect()
        })
        .collect();
    FiniteCategory::new(names(n), hom).expect("closure holds by transitivity")
}

/// A random category whose reflexibility classes may have several objects
/// and whose hom-sets have 1 or 2 elements wherever they are nonempty.
pub fn random_category<R: Rng>(rng: &mut R, n: usize) -> FiniteCategory {
    let k = rng.gen_range(1..=n.max(1));
    let class: Vec<usize> = (0..n)
        .map(|x| if x < k { x } else { rng.gen_range(0..k) })
        .collect();
    let p = rng.gen_range(0.2..0.8);
    let less = random_strict_order(rng, k, p);
    let hom = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (a, b) = (class[i], class[j]);
                    if a == b || less[a][b] {
                        rng.gen_range(1..=2)
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    FiniteCategory::new(names(n), hom).expect("closure holds by transitivity")
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("o{i}")).collect()
}

/// A small random rational: numerator in `-6..=6`, denominator in `1..=3`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-6..=6).into(), rng.gen_range(1..=3).into())
}

/// A random definable function: one random value per reflexibility class.
pub fn random_definable<'c, R: Rng>(rng: &mut R, cat: &'c FiniteCategory) -> DefinableFunction<'c> {
    let q = cat.quotient();
    let per_class: Vec<Rational> = (0..q.len()).map(|_| random_rational(rng)).collect();
    let values = (0..cat.len())
        .map(|x| per_class[q.class_of(x)].clone())
        .collect();
    DefinableFunction::new(cat, values).expect("constant on classes")
}

/// The union of the prime filters of a random subset of objects.
pub fn random_filter<R: Rng>(rng: &mut R, cat: &FiniteCategory) -> ObjectSet {
    let p = rng.gen_range(0.1..0.6);
    (0..cat.len())
        .filter(|_| rng.gen_bool(p))
        .fold(ObjectSet::new(), |acc, x| {
            acc.union(&cat.prime_filter(x).expect("object"))
        })
}

/// The union of the prime ideals of a random subset of objects.
pub fn random_ideal<R: Rng>(rng: &mut R, cat: &FiniteCategory) -> ObjectSet {
    let p = rng.gen_range(0.1..0.6);
    (0..cat.len())
        .filter(|_| rng.gen_bool(p))
        .fold(ObjectSet::new(), |acc, x| {
            acc.union(&cat.prime_ideal(x).expect("object"))
        })
}

/// A random measurable map: monotone from the classes of `source` into the
/// preorder of `target`, with the members of a class sent into one target
/// class. Falls back to a constant map after repeated dead ends.
pub fn random_measurable_map<'a, R: Rng>(
    rng: &mut R,
    source: &'a FiniteCategory,
    target: &'a FiniteCategory,
) -> ObjectMap<'a> {
    assert!(
        !target.is_empty() || source.is_empty(),
        "no map into an empty category"
    );
    let q = source.quotient();
    'attempt: for _ in 0..32 {
        let mut assignment = vec![usize::MAX; source.len()];
        for &c in q.linear_extension() {
            let below: Vec<usize> = (0..q.len())
                .filter(|&d| q.less(d, c))
                .map(|d| assignment[q.representative(d)])
                .collect();
            let candidates: Vec<usize> = (0..target.len())
                .filter(|&y| below.iter().all(|&b| target.arrow(b, y)))
                .collect();
            let Some(&y) = candidates.choose(rng) else {
                continue 'attempt;
            };
            let tq = target.quotient();
            let same_class = tq.class(tq.class_of(y));
            for &x in q.class(c) {
                assignment[x] = *same_class.choose(rng).expect("nonempty class");
            }
        }
        return ObjectMap::new(source, target, assignment).expect("valid indices");
    }
    let y = rng.gen_range(0..target.len());
    ObjectMap::constant(source, target, y).expect("valid index")
}

/// A copy of `cat` with a terminal object `t` adjoined.
pub fn adjoin_terminal(cat: &FiniteCategory) -> FiniteCategory {
    let n = cat.len();
    let mut objects = cat.objects().to_vec();
    let mut name = "t".to_string();
    while objects.contains(&name) {
        name.push('\'');
    }
    objects.push(name);
    let mut hom = cat.hom_matrix();
    for row in hom.iter_mut() {
        row.push(1);
    }
    let mut last = vec![0; n];
    last.push(1);
    hom.push(last);
    FiniteCategory::new(objects, hom).expect("terminal object keeps closure")
}
