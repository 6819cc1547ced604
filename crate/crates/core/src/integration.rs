//! Euler integration of definable functions, measurable maps and pushforwards.
//!
//! Integration on filters is the linear functional sending `δ_{∨x}` to
//! `χ(∨x)`; on ideals it sends `δ_{∧x}` to `χ(∧x)`. Both are evaluated
//! through the canonical prime-basis coordinates. Measurability is checked
//! lazily: only prime sets with a nonzero coefficient need an Euler
//! characteristic, unless the strict entry point is used.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::category::{FiniteCategory, ObjectSet};
use crate::definable::{Basis, DefinableFunction};
use crate::error::{Error, Result};
use crate::euler;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Side {
    #[default]
    Filters,
    Ideals,
}

impl Side {
    pub fn basis(self) -> Basis {
        match self {
            Side::Filters => Basis::PrimeFilters,
            Side::Ideals => Basis::PrimeIdeals,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Filters => "filters",
            Side::Ideals => "ideals",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "filters" => Ok(Side::Filters),
            "ideals" => Ok(Side::Ideals),
            other => Err(format!("unknown side {other:?}")),
        }
    }
}

/// `∫_C f dχ` on the given side.
pub fn integrate(f: &DefinableFunction<'_>, side: Side) -> Result<Rational> {
    let cat = f.ambient();
    let basis = side.basis();
    let mut total = Rational::zero();
    for (a, x) in f.decompose(basis).terms() {
        if a.is_zero() {
            continue;
        }
        let prime = basis.prime_set(cat, *x)?;
        let chi = euler::euler_characteristic_of(cat, &prime)?.ok_or_else(|| {
            let sym = match side {
                Side::Filters => '∨',
                Side::Ideals => '∧',
            };
            Error::NotMeasurable(format!("{sym}{}", cat.name(*x)))
        })?;
        total += a * chi;
    }
    Ok(total)
}

/// Like [`integrate`], but first requires the whole category to be measurable.
pub fn integrate_strict(f: &DefinableFunction<'_>, side: Side, cap: usize) -> Result<Rational> {
    if !euler::is_measurable(f.ambient(), cap)? {
        return Err(Error::NotMeasurable("category".to_string()));
    }
    integrate(f, side)
}

/// `∫_S f dχ`: the integral of the restriction of `f` over the full
/// subcategory on `S`.
pub fn integrate_over(f: &DefinableFunction<'_>, s: &ObjectSet, side: Side) -> Result<Rational> {
    let cat = f.ambient();
    cat.require_class_closed(s)?;
    let sub = cat.full_subcategory(s)?;
    let restricted = DefinableFunction::new(&sub, f.restricted_values(s)?)?;
    integrate(&restricted, side)
}

/// A map on objects between two finite categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectMap<'a> {
    source: &'a FiniteCategory,
    target: &'a FiniteCategory,
    assignment: Vec<usize>,
}

impl<'a> ObjectMap<'a> {
    pub fn new(
        source: &'a FiniteCategory,
        target: &'a FiniteCategory,
        assignment: Vec<usize>,
    ) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::ShapeMismatch(format!(
                "map assigns {} objects, source has {}",
                assignment.len(),
                source.len()
            )));
        }
        for &y in &assignment {
            target.check_object(y)?;
        }
        Ok(ObjectMap {
            source,
            target,
            assignment,
        })
    }

    /// Builds a map from `(source name, target name)` pairs covering every source object.
    pub fn from_named<'s, I>(
        source: &'a FiniteCategory,
        target: &'a FiniteCategory,
        pairs: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (&'s str, &'s str)>,
    {
        let mut assignment = vec![None; source.len()];
        for (x, y) in pairs {
            assignment[source.index_of(x)?] = Some(target.index_of(y)?);
        }
        let assignment = assignment
            .into_iter()
            .enumerate()
            .map(|(x, y)| y.ok_or_else(|| Error::MissingValue(source.name(x).to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, assignment)
    }

    pub fn identity(cat: &'a FiniteCategory) -> Self {
        ObjectMap {
            source: cat,
            target: cat,
            assignment: (0..cat.len()).collect(),
        }
    }

    /// Every object goes to `y`. With a one-object target this is the unique map to it.
    pub fn constant(
        source: &'a FiniteCategory,
        target: &'a FiniteCategory,
        y: usize,
    ) -> Result<Self> {
        Self::new(source, target, vec![y; source.len()])
    }

    /// `π: C → Po(C)`, where `quotient` must be `source.quotient().to_category(source)`.
    pub fn projection(source: &'a FiniteCategory, quotient: &'a FiniteCategory) -> Result<Self> {
        let q = source.quotient();
        if quotient.len() != q.len() {
            return Err(Error::ShapeMismatch(
                "target is not the quotient poset of the source".to_string(),
            ));
        }
        Self::new(source, quotient, q.projection().to_vec())
    }

    pub fn source(&self) -> &'a FiniteCategory {
        self.source
    }

    pub fn target(&self) -> &'a FiniteCategory {
        self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    /// `F⁻¹(S)`.
    pub fn preimage(&self, s: &ObjectSet) -> ObjectSet {
        (0..self.source.len())
            .filter(|&x| s.contains(self.assignment[x]))
            .collect()
    }

    /// Inverse images of prime filters are filters and of prime ideals are
    /// ideals. Every filter is a union of prime filters and preimages commute
    /// with unions, so this covers all filters and ideals.
    pub fn is_measurable(&self) -> bool {
        self.first_violation().is_none()
    }

    fn first_violation(&self) -> Option<String> {
        for d in 0..self.target.len() {
            let up = self.target.prime_filter(d).expect("index in range");
            if !self
                .source
                .is_filter(&self.preimage(&up))
                .expect("index in range")
            {
                return Some(format!(
                    "preimage of ∨{} is not a filter",
                    self.target.name(d)
                ));
            }
            let down = self.target.prime_ideal(d).expect("index in range");
            if !self
                .source
                .is_ideal(&self.preimage(&down))
                .expect("index in range")
            {
                return Some(format!(
                    "preimage of ∧{} is not an ideal",
                    self.target.name(d)
                ));
            }
        }
        None
    }

    pub fn require_measurable(&self) -> Result<()> {
        match self.first_violation() {
            Some(msg) => Err(Error::NotMeasurableMap(msg)),
            None => Ok(()),
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ObjectMap<'a>) -> Result<ObjectMap<'a>> {
        if !same_category(self.target, next.source) {
            return Err(Error::SourceTargetMismatch);
        }
        Ok(ObjectMap {
            source: self.source,
            target: next.target,
            assignment: self
                .assignment
                .iter()
                .map(|&y| next.assignment[y])
                .collect(),
        })
    }
}

/// `G ∘ F` for `F: C → D`, `G: D → E`.
pub fn compose_maps<'a>(f: &ObjectMap<'a>, g: &ObjectMap<'a>) -> Result<ObjectMap<'a>> {
    f.then(g)
}

fn same_category(a: &FiniteCategory, b: &FiniteCategory) -> bool {
    std::ptr::eq(a, b) || a == b
}

/// `F_*f(d) = ∫_{F⁻¹(∧d)} f dχ`.
pub fn pushforward<'a>(
    map: &ObjectMap<'a>,
    f: &DefinableFunction<'_>,
) -> Result<DefinableFunction<'a>> {
    if !same_category(map.source, f.ambient()) {
        return Err(Error::SourceTargetMismatch);
    }
    map.require_measurable()?;
    let target = map.target;
    let values = (0..target.len())
        .map(|d| {
            let down = target.prime_ideal(d)?;
            integrate_over(f, &map.preimage(&down), Side::Filters)
        })
        .collect::<Result<Vec<_>>>()?;
    DefinableFunction::new(target, values)
}

/// Both sides of `∫_C f dχ = ∫_D F_*f dχ` for a poset target `D`.
pub fn fubini_check(
    map: &ObjectMap<'_>,
    f: &DefinableFunction<'_>,
) -> Result<(Rational, Rational)> {
    if !map.target.is_poset() {
        return Err(Error::TargetNotPoset);
    }
    fubini_sides(map, f)
}

/// Both sides of the Fubini identity without the poset requirement on the
/// target. The sides may then differ.
pub fn fubini_sides(
    map: &ObjectMap<'_>,
    f: &DefinableFunction<'_>,
) -> Result<(Rational, Rational)> {
    let pushed = pushforward(map, f)?;
    Ok((
        integrate(f, Side::Filters)?,
        integrate(&pushed, Side::Filters)?,
    ))
}
