//! Definable functions and their expansion in the prime filter / prime ideal bases.
//!
//! A function on objects is definable when it is constant on reflexibility
//! classes. Choosing the lowest-index object `x_i` of each class, the
//! incidence functions `δ_{∨x_i}` form a basis of the definable functions,
//! and so do the `δ_{∧x_i}`. Coordinates in either basis come from a
//! triangular solve along a linear extension of `Po(C)`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::category::{FiniteCategory, ObjectSet};
use crate::error::{Error, Result};
use crate::linalg;
use crate::rational::Rational;

/// Orders named values by object index. Every object needs exactly one value.
pub fn values_by_name<'a, I>(cat: &FiniteCategory, named: I) -> Result<Vec<Rational>>
where
    I: IntoIterator<Item = (&'a str, Rational)>,
{
    let mut values: Vec<Option<Rational>> = vec![None; cat.len()];
    for (name, v) in named {
        values[cat.index_of(name)?] = Some(v);
    }
    values
        .into_iter()
        .enumerate()
        .map(|(x, v)| v.ok_or_else(|| Error::MissingValue(cat.name(x).to_string())))
        .collect()
}

/// First reflexible pair carrying different values, if any.
fn definability_witness(cat: &FiniteCategory, values: &[Rational]) -> Option<(usize, usize)> {
    let q = cat.quotient();
    q.classes().iter().find_map(|class| {
        let rep = class[0];
        class
            .iter()
            .find(|&&y| values[y] != values[rep])
            .map(|&y| (rep, y))
    })
}

fn check_len(cat: &FiniteCategory, values: &[Rational]) -> Result<()> {
    if values.len() < cat.len() {
        return Err(Error::MissingValue(cat.name(values.len()).to_string()));
    }
    if values.len() > cat.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} values for {} objects",
            values.len(),
            cat.len()
        )));
    }
    Ok(())
}

/// Values (indexed by object) are constant on every reflexibility class.
pub fn is_definable(cat: &FiniteCategory, values: &[Rational]) -> Result<bool> {
    check_len(cat, values)?;
    Ok(definability_witness(cat, values).is_none())
}

/// A rational-valued function on the objects of a category, constant on
/// reflexibility classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefinableFunction<'c> {
    ambient: &'c FiniteCategory,
    values: Vec<Rational>,
}

impl<'c> DefinableFunction<'c> {
    pub fn new(ambient: &'c FiniteCategory, values: Vec<Rational>) -> Result<Self> {
        check_len(ambient, &values)?;
        if let Some((x, y)) = definability_witness(ambient, &values) {
            return Err(Error::NotDefinable(
                ambient.name(x).to_string(),
                ambient.name(y).to_string(),
            ));
        }
        Ok(DefinableFunction { ambient, values })
    }

    pub fn from_named<'a, I>(ambient: &'c FiniteCategory, named: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, Rational)>,
    {
        Self::new(ambient, values_by_name(ambient, named)?)
    }

    pub fn zero(ambient: &'c FiniteCategory) -> Self {
        Self::constant(ambient, Rational::zero())
    }

    pub fn constant(ambient: &'c FiniteCategory, c: Rational) -> Self {
        DefinableFunction {
            ambient,
            values: vec![c; ambient.len()],
        }
    }

    /// `δ_S`: 1 on `S`, 0 elsewhere. `S` must be a union of reflexibility classes.
    pub fn incidence(ambient: &'c FiniteCategory, s: &ObjectSet) -> Result<Self> {
        ambient.require_class_closed(s)?;
        Ok(Self::incidence_unchecked(ambient, s))
    }

    fn incidence_unchecked(ambient: &'c FiniteCategory, s: &ObjectSet) -> Self {
        let values = (0..ambient.len())
            .map(|x| {
                if s.contains(x) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        DefinableFunction { ambient, values }
    }

    pub fn ambient(&self) -> &'c FiniteCategory {
        self.ambient
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, x: usize) -> &Rational {
        &self.values[x]
    }

    /// The clipping `f_S`: `f` on `S`, zero elsewhere.
    pub fn clip(&self, s: &ObjectSet) -> Result<Self> {
        self.ambient.require_class_closed(s)?;
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(x, v)| {
                if s.contains(x) {
                    v.clone()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        Ok(DefinableFunction {
            ambient: self.ambient,
            values,
        })
    }

    /// Values of the restriction `f|_S`, ordered like `ambient.full_subcategory(S)`.
    pub fn restricted_values(&self, s: &ObjectSet) -> Result<Vec<Rational>> {
        self.ambient.check_set(s)?;
        Ok(s.iter().map(|x| self.values[x].clone()).collect())
    }

    /// `self + k·other`. Both functions must live on the same category.
    pub fn add_scaled(&self, k: &Rational, other: &DefinableFunction<'_>) -> Self {
        assert_eq!(
            self.ambient, other.ambient,
            "functions on different categories"
        );
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + k * b)
            .collect();
        DefinableFunction {
            ambient: self.ambient,
            values,
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        DefinableFunction {
            ambient: self.ambient,
            values: self.values.iter().map(|v| v * k).collect(),
        }
    }

    /// Coordinates in the basis `δ_{∨x_i}`.
    pub fn decompose_filters(&self) -> FilterDecomposition<'c> {
        self.decompose(Basis::PrimeFilters)
    }

    /// Coordinates in the basis `δ_{∧x_i}`.
    pub fn decompose_ideals(&self) -> FilterDecomposition<'c> {
        self.decompose(Basis::PrimeIdeals)
    }

    pub fn decompose(&self, basis: Basis) -> FilterDecomposition<'c> {
        let q = self.ambient.quotient();
        let k = q.len();
        let mut coef = vec![Rational::zero(); k];
        // f([y]) = Σ_{[x] ≤ [y]} a_[x] for filters; Σ_{[x] ≥ [y]} b_[x] for ideals
        let order: Vec<usize> = match basis {
            Basis::PrimeFilters => q.linear_extension().to_vec(),
            Basis::PrimeIdeals => q.linear_extension().iter().rev().copied().collect(),
        };
        for &c in &order {
            let covered: Rational = (0..k)
                .filter(|&d| match basis {
                    Basis::PrimeFilters => q.less(d, c),
                    Basis::PrimeIdeals => q.less(c, d),
                })
                .map(|d| &coef[d])
                .sum();
            coef[c] = &self.values[q.representative(c)] - covered;
        }
        FilterDecomposition {
            ambient: self.ambient,
            basis,
            terms: coef
                .into_iter()
                .enumerate()
                .map(|(c, a)| (a, q.representative(c)))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    PrimeFilters,
    PrimeIdeals,
}

impl Basis {
    pub fn as_str(self) -> &'static str {
        match self {
            Basis::PrimeFilters => "prime-filters",
            Basis::PrimeIdeals => "prime-ideals",
        }
    }

    /// `∨x` or `∧x`.
    pub fn prime_set(self, cat: &FiniteCategory, x: usize) -> Result<ObjectSet> {
        match self {
            Basis::PrimeFilters => cat.prime_filter(x),
            Basis::PrimeIdeals => cat.prime_ideal(x),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Basis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "prime-filters" => Ok(Basis::PrimeFilters),
            "prime-ideals" => Ok(Basis::PrimeIdeals),
            other => Err(format!("unknown basis {other:?}")),
        }
    }
}

/// A linear combination `Σ coef · δ_{∨rep}` (or `δ_{∧rep}`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterDecomposition<'c> {
    ambient: &'c FiniteCategory,
    basis: Basis,
    terms: Vec<(Rational, usize)>,
}

impl<'c> FilterDecomposition<'c> {
    /// Any list of terms; representatives need not be distinct or canonical.
    pub fn new(
        ambient: &'c FiniteCategory,
        basis: Basis,
        terms: Vec<(Rational, usize)>,
    ) -> Result<Self> {
        for &(_, x) in &terms {
            ambient.check_object(x)?;
        }
        Ok(FilterDecomposition {
            ambient,
            basis,
            terms,
        })
    }

    pub fn ambient(&self) -> &'c FiniteCategory {
        self.ambient
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// `(coefficient, representative)` pairs, one per class for canonical
    /// decompositions, in class order.
    pub fn terms(&self) -> &[(Rational, usize)] {
        &self.terms
    }

    pub fn recompose(&self) -> DefinableFunction<'c> {
        let mut f = DefinableFunction::zero(self.ambient);
        for (a, x) in &self.terms {
            let prime = self
                .basis
                .prime_set(self.ambient, *x)
                .expect("representatives are checked at construction");
            let delta = DefinableFunction::incidence_unchecked(self.ambient, &prime);
            f = f.add_scaled(a, &delta);
        }
        f
    }
}

/// Rank of the incidence vectors `δ_{∨x_i}` (or `δ_{∧x_i}`) over the class
/// representatives. Equals `|Po(C)|` exactly when they are independent.
pub fn basis_rank(cat: &FiniteCategory, basis: Basis) -> usize {
    let q = cat.quotient();
    let rows: Vec<Vec<Rational>> = (0..q.len())
        .map(|c| {
            let prime = basis
                .prime_set(cat, q.representative(c))
                .expect("representative is an object");
            (0..cat.len())
                .map(|x| {
                    if prime.contains(x) {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    linalg::rank(&rows)
}
