//! Finite categories presented by their similarity matrix.
//!
//! A [`FiniteCategory`] stores only the number of morphisms between each
//! ordered pair of objects. Everything the rest of the crate needs (the
//! reflexibility preorder, filters and ideals, weightings) is a function of
//! these counts.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// A finite set of object indices of some ambient category.
///
/// Members are kept sorted, so iteration follows the ambient input order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ObjectSet(BTreeSet<usize>);

impl ObjectSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(&x)
    }

    pub fn insert(&mut self, x: usize) -> bool {
        self.0.insert(x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn members(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &ObjectSet) -> ObjectSet {
        ObjectSet(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &ObjectSet) -> ObjectSet {
        ObjectSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &ObjectSet) -> ObjectSet {
        ObjectSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn is_subset(&self, other: &ObjectSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Member names in ambient order.
    pub fn names<'a>(&self, ambient: &'a FiniteCategory) -> Vec<&'a str> {
        self.iter().map(|x| ambient.name(x)).collect()
    }
}

impl FromIterator<usize> for ObjectSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ObjectSet(iter.into_iter().collect())
    }
}

/// A finite category given by objects and morphism counts `hom(a, b) = |C(a, b)|`.
pub struct FiniteCategory {
    objects: Vec<String>,
    index: HashMap<String, usize>,
    // row-major, side = objects.len()
    hom: Vec<u64>,
    quotient: OnceLock<QuotientPoset>,
}

impl Clone for FiniteCategory {
    fn clone(&self) -> Self {
        FiniteCategory {
            objects: self.objects.clone(),
            index: self.index.clone(),
            hom: self.hom.clone(),
            quotient: self.quotient.clone(),
        }
    }
}

impl PartialEq for FiniteCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects && self.hom == other.hom
    }
}

impl Eq for FiniteCategory {}

impl fmt::Debug for FiniteCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteCategory")
            .field("objects", &self.objects)
            .field("hom", &self.hom_matrix())
            .finish()
    }
}

impl FiniteCategory {
    /// Validates and builds a category. Only the necessary conditions are
    /// checked: distinct names, square shape, identities on the diagonal and
    /// existence of composites.
    pub fn new<S: Into<String>>(objects: Vec<S>, hom: Vec<Vec<u64>>) -> Result<Self> {
        let objects: Vec<String> = objects.into_iter().map(Into::into).collect();
        match Self::violations(&objects, &hom).into_iter().next() {
            Some(err) => Err(err),
            None => Ok(Self::from_parts_unchecked(objects, hom.concat())),
        }
    }

    /// Every violated invariant of a candidate presentation, in a fixed order.
    pub fn violations(objects: &[String], hom: &[Vec<u64>]) -> Vec<Error> {
        let mut out = Vec::new();
        let n = objects.len();
        let mut seen = HashMap::new();
        for name in objects {
            if seen.insert(name.as_str(), ()).is_some() {
                out.push(Error::DuplicateObject(name.clone()));
            }
        }
        if hom.len() != n {
            out.push(Error::ShapeMismatch(format!(
                "{} objects but {} matrix rows",
                n,
                hom.len()
            )));
            return out;
        }
        for (i, row) in hom.iter().enumerate() {
            if row.len() != n {
                out.push(Error::ShapeMismatch(format!(
                    "row {} has {} entries, expected {}",
                    objects[i],
                    row.len(),
                    n
                )));
            }
        }
        if out.iter().any(|e| matches!(e, Error::ShapeMismatch(_))) {
            return out;
        }
        for (i, row) in hom.iter().enumerate() {
            if row[i] == 0 {
                out.push(Error::MissingIdentity(objects[i].clone()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if hom[a][b] == 0 {
                    continue;
                }
                for c in 0..n {
                    if hom[b][c] > 0 && hom[a][c] == 0 {
                        out.push(Error::NotComposable {
                            first: objects[a].clone(),
                            middle: objects[b].clone(),
                            last: objects[c].clone(),
                        });
                    }
                }
            }
        }
        out
    }

    fn from_parts_unchecked(objects: Vec<String>, hom: Vec<u64>) -> Self {
        let index = objects
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        FiniteCategory {
            objects,
            index,
            hom,
            quotient: OnceLock::new(),
        }
    }

    /// The category with no objects.
    pub fn empty() -> Self {
        Self::from_parts_unchecked(Vec::new(), Vec::new())
    }

    /// The terminal category: one object, one identity.
    pub fn point(name: &str) -> Self {
        Self::from_parts_unchecked(vec![name.to_string()], vec![1])
    }

    /// A poset regarded as a category. `leq(i, j)` must be a partial order on
    /// `0..objects.len()`; it is validated like any other presentation.
    pub fn from_order<S, F>(objects: Vec<S>, leq: F) -> Result<Self>
    where
        S: Into<String>,
        F: Fn(usize, usize) -> bool,
    {
        let n = objects.len();
        let hom = (0..n)
            .map(|i| (0..n).map(|j| u64::from(i == j || leq(i, j))).collect())
            .collect();
        Self::new(objects, hom)
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    /// Name of object `x`. Panics if `x` is out of range.
    pub fn name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    /// `|C(a, b)|`. Panics if either index is out of range.
    pub fn hom(&self, a: usize, b: usize) -> u64 {
        self.hom[a * self.len() + b]
    }

    /// `C(a, b)` is nonempty.
    pub fn arrow(&self, a: usize, b: usize) -> bool {
        self.hom(a, b) > 0
    }

    pub fn hom_matrix(&self) -> Vec<Vec<u64>> {
        let n = self.len();
        (0..n)
            .map(|a| self.hom[a * n..(a + 1) * n].to_vec())
            .collect()
    }

    pub fn check_object(&self, x: usize) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownObject(format!("#{x}")))
        }
    }

    pub fn check_set(&self, s: &ObjectSet) -> Result<()> {
        s.iter().try_for_each(|x| self.check_object(x))
    }

    /// Resolves names to an [`ObjectSet`].
    pub fn object_set<S: AsRef<str>>(&self, names: &[S]) -> Result<ObjectSet> {
        names.iter().map(|s| self.index_of(s.as_ref())).collect()
    }

    pub fn all_objects(&self) -> ObjectSet {
        (0..self.len()).collect()
    }

    pub fn opposite(&self) -> FiniteCategory {
        let n = self.len();
        let mut hom = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                hom[b * n + a] = self.hom(a, b);
            }
        }
        Self::from_parts_unchecked(self.objects.clone(), hom)
    }

    /// Both `C(x, y)` and `C(y, x)` are nonempty.
    pub fn reflexible(&self, x: usize, y: usize) -> Result<bool> {
        self.check_object(x)?;
        self.check_object(y)?;
        Ok(self.arrow(x, y) && self.arrow(y, x))
    }

    /// The poset of reflexibility classes, computed once per category.
    pub fn quotient(&self) -> &QuotientPoset {
        self.quotient.get_or_init(|| QuotientPoset::build(self))
    }

    /// `∨x`: every object receiving a morphism from `x`.
    pub fn prime_filter(&self, x: usize) -> Result<ObjectSet> {
        self.check_object(x)?;
        Ok((0..self.len()).filter(|&y| self.arrow(x, y)).collect())
    }

    /// `∧x`: every object sending a morphism to `x`.
    pub fn prime_ideal(&self, x: usize) -> Result<ObjectSet> {
        self.check_object(x)?;
        Ok((0..self.len()).filter(|&y| self.arrow(y, x)).collect())
    }

    pub fn is_filter(&self, s: &ObjectSet) -> Result<bool> {
        self.check_set(s)?;
        Ok(s.iter()
            .all(|x| (0..self.len()).all(|y| !self.arrow(x, y) || s.contains(y))))
    }

    pub fn is_ideal(&self, s: &ObjectSet) -> Result<bool> {
        self.check_set(s)?;
        Ok(s.iter()
            .all(|x| (0..self.len()).all(|y| !self.arrow(y, x) || s.contains(y))))
    }

    /// `s` is a union of reflexibility classes.
    pub fn is_class_closed(&self, s: &ObjectSet) -> Result<bool> {
        self.check_set(s)?;
        let q = self.quotient();
        Ok(s.iter()
            .all(|x| q.class(q.class_of(x)).iter().all(|&y| s.contains(y))))
    }

    pub(crate) fn require_class_closed(&self, s: &ObjectSet) -> Result<()> {
        self.check_set(s)?;
        let q = self.quotient();
        for x in s.iter() {
            if q.class(q.class_of(x)).iter().any(|&y| !s.contains(y)) {
                return Err(Error::NotClassClosed(self.name(x).to_string()));
            }
        }
        Ok(())
    }

    pub fn complement(&self, s: &ObjectSet) -> Result<ObjectSet> {
        self.check_set(s)?;
        Ok((0..self.len()).filter(|&x| !s.contains(x)).collect())
    }

    /// Restriction to the objects of `s`, keeping input order.
    pub fn full_subcategory(&self, s: &ObjectSet) -> Result<FiniteCategory> {
        self.check_set(s)?;
        let members = s.members();
        let objects = members.iter().map(|&x| self.objects[x].clone()).collect();
        let mut hom = Vec::with_capacity(members.len() * members.len());
        for &a in &members {
            for &b in &members {
                hom.push(self.hom(a, b));
            }
        }
        Ok(Self::from_parts_unchecked(objects, hom))
    }

    /// Objects `x` such that every `y` reached from `x` also reaches back.
    pub fn maximal_objects(&self) -> ObjectSet {
        (0..self.len())
            .filter(|&x| (0..self.len()).all(|y| !self.arrow(x, y) || self.arrow(y, x)))
            .collect()
    }

    /// Objects `x` such that every `y` reaching `x` is also reached from it.
    pub fn minimal_objects(&self) -> ObjectSet {
        (0..self.len())
            .filter(|&x| (0..self.len()).all(|y| !self.arrow(y, x) || self.arrow(x, y)))
            .collect()
    }

    /// No nontrivial circuit of morphisms: reflexibility classes are
    /// singletons and every endomorphism is an identity.
    pub fn is_acyclic(&self) -> bool {
        (0..self.len()).all(|a| {
            self.hom(a, a) == 1
                && (0..self.len()).all(|b| a == b || !self.reflexible_unchecked(a, b))
        })
    }

    /// Acyclic with at most one morphism between any two objects.
    pub fn is_poset(&self) -> bool {
        self.is_acyclic() && self.hom.iter().all(|&c| c <= 1)
    }

    fn reflexible_unchecked(&self, a: usize, b: usize) -> bool {
        self.arrow(a, b) && self.arrow(b, a)
    }

    /// Some object `t` with exactly one morphism from every object.
    pub fn terminal_object(&self) -> Option<usize> {
        (0..self.len()).find(|&t| (0..self.len()).all(|x| self.hom(x, t) == 1))
    }

    /// Some object `s` with exactly one morphism to every object.
    pub fn initial_object(&self) -> Option<usize> {
        (0..self.len()).find(|&s| (0..self.len()).all(|x| self.hom(s, x) == 1))
    }
}

/// The poset `Po(C)` of reflexibility classes together with the projection.
///
/// Classes are numbered by their lowest member; that member is the fixed
/// representative of the class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientPoset {
    classes: Vec<Vec<usize>>,
    projection: Vec<usize>,
    // strict order, row-major k*k
    less: Vec<bool>,
    depth: Vec<usize>,
    linear_extension: Vec<usize>,
}

impl QuotientPoset {
    fn build(cat: &FiniteCategory) -> Self {
        let n = cat.len();
        let mut projection = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            if projection[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let members: Vec<usize> = (x..n)
                .filter(|&y| cat.arrow(x, y) && cat.arrow(y, x))
                .collect();
            for &y in &members {
                projection[y] = id;
            }
            classes.push(members);
        }
        let k = classes.len();
        let mut less = vec![false; k * k];
        for c in 0..k {
            for d in 0..k {
                less[c * k + d] = c != d && cat.arrow(classes[c][0], classes[d][0]);
            }
        }
        // A strictly smaller class has strictly fewer classes below it.
        let below: Vec<usize> = (0..k)
            .map(|c| (0..k).filter(|&d| less[d * k + c]).count())
            .collect();
        let mut topo: Vec<usize> = (0..k).collect();
        topo.sort_by_key(|&c| (below[c], c));
        let mut depth = vec![0usize; k];
        for &c in &topo {
            depth[c] = (0..k)
                .filter(|&d| less[d * k + c])
                .map(|d| depth[d] + 1)
                .max()
                .unwrap_or(0);
        }
        let mut linear_extension: Vec<usize> = (0..k).collect();
        linear_extension.sort_by_key(|&c| (depth[c], classes[c][0]));
        QuotientPoset {
            classes,
            projection,
            less,
            depth,
            linear_extension,
        }
    }

    /// Number of classes.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    /// `π(x)`.
    pub fn class_of(&self, x: usize) -> usize {
        self.projection[x]
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }

    pub fn representative(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn less(&self, c: usize, d: usize) -> bool {
        self.less[c * self.len() + d]
    }

    pub fn leq(&self, c: usize, d: usize) -> bool {
        c == d || self.less(c, d)
    }

    /// Length of the longest chain of classes ending at `c`.
    pub fn depth(&self, c: usize) -> usize {
        self.depth[c]
    }

    /// Classes ordered by `(depth, representative index)`; minimal classes first.
    pub fn linear_extension(&self) -> &[usize] {
        &self.linear_extension
    }

    pub fn is_maximal(&self, c: usize) -> bool {
        (0..self.len()).all(|d| !self.less(c, d))
    }

    pub fn is_minimal(&self, c: usize) -> bool {
        (0..self.len()).all(|d| !self.less(d, c))
    }

    /// All objects in the classes of `classes`.
    pub fn lift<I: IntoIterator<Item = usize>>(&self, classes: I) -> ObjectSet {
        classes
            .into_iter()
            .flat_map(|c| self.classes[c].iter().copied())
            .collect()
    }

    /// `Po(C)` as a poset category; each class is named after its representative.
    pub fn to_category(&self, ambient: &FiniteCategory) -> FiniteCategory {
        let k = self.len();
        let objects = (0..k)
            .map(|c| ambient.name(self.representative(c)).to_string())
            .collect();
        let hom = (0..k)
            .flat_map(|c| (0..k).map(move |d| (c, d)))
            .map(|(c, d)| u64::from(self.leq(c, d)))
            .collect();
        FiniteCategory::from_parts_unchecked(objects, hom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parallel() -> FiniteCategory {
        FiniteCategory::new(vec!["a", "b"], vec![vec![1, 2], vec![0, 1]]).unwrap()
    }

    fn groupoid() -> FiniteCategory {
        FiniteCategory::new(vec!["a", "b"], vec![vec![1, 1], vec![1, 1]]).unwrap()
    }

    fn set(xs: &[usize]) -> ObjectSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn construction_errors() {
        assert!(FiniteCategory::new(vec!["a"], vec![vec![1]]).is_ok());
        assert_eq!(
            FiniteCategory::new(vec!["a", "b"], vec![vec![1, 0], vec![0, 0]]),
            Err(Error::MissingIdentity("b".into()))
        );
        assert_eq!(
            FiniteCategory::new(vec!["a", "a"], vec![vec![1, 0], vec![0, 1]]),
            Err(Error::DuplicateObject("a".into()))
        );
        assert!(matches!(
            FiniteCategory::new(vec!["a", "b"], vec![vec![1, 0]]),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            FiniteCategory::new(vec!["a", "b"], vec![vec![1, 0], vec![0]]),
            Err(Error::ShapeMismatch(_))
        ));
        let err = FiniteCategory::new(
            vec!["a", "b", "c"],
            vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]],
        )
        .unwrap_err();
        assert_eq!(err.name(), "NotComposable");
    }

    #[test]
    fn violations_lists_everything() {
        let objects: Vec<String> = vec!["a".into(), "b".into()];
        let v = FiniteCategory::violations(&objects, &[vec![0, 0], vec![0, 0]]);
        assert_eq!(
            v,
            vec![
                Error::MissingIdentity("a".into()),
                Error::MissingIdentity("b".into())
            ]
        );
        assert_eq!(v[0].to_string(), "MissingIdentity at object a");
    }

    #[test]
    fn opposite_transposes() {
        let op = parallel().opposite();
        assert_eq!(op.hom_matrix(), vec![vec![1, 0], vec![2, 1]]);
        assert_eq!(op.opposite(), parallel());
        let pt = FiniteCategory::point("a");
        assert_eq!(pt.opposite(), pt);
    }

    #[test]
    fn reflexibility() {
        assert!(FiniteCategory::point("a").reflexible(0, 0).unwrap());
        assert!(!parallel().reflexible(0, 1).unwrap());
        assert!(groupoid().reflexible(0, 1).unwrap());
        assert!(matches!(
            parallel().reflexible(0, 5),
            Err(Error::UnknownObject(_))
        ));
    }

    #[test]
    fn quotient_shapes() {
        let q = groupoid().quotient().clone();
        assert_eq!(q.classes(), &[vec![0, 1]]);
        let p = parallel();
        let q = p.quotient();
        assert_eq!(q.len(), 2);
        assert!(q.less(q.class_of(0), q.class_of(1)));
        assert!(!q.less(q.class_of(1), q.class_of(0)));
        let chain = FiniteCategory::from_order(vec!["x", "y", "z"], |i, j| i <= j).unwrap();
        let q = chain.quotient();
        assert_eq!(q.len(), 3);
        assert!(q.less(0, 2) && q.less(1, 2) && !q.less(2, 1));
        assert_eq!(q.linear_extension(), &[0, 1, 2]);
        assert_eq!(q.depth(2), 2);
    }

    #[test]
    fn prime_sets() {
        let p = parallel();
        assert_eq!(p.prime_filter(0).unwrap(), set(&[0, 1]));
        assert_eq!(p.prime_filter(1).unwrap(), set(&[1]));
        assert_eq!(p.prime_ideal(1).unwrap(), set(&[0, 1]));
        assert_eq!(p.prime_ideal(0).unwrap(), set(&[0]));
        let pt = FiniteCategory::point("a");
        assert_eq!(pt.prime_filter(0).unwrap(), set(&[0]));
        assert_eq!(pt.prime_ideal(0).unwrap(), set(&[0]));
        assert!(p.prime_filter(2).is_err());
    }

    #[test]
    fn filters_and_ideals() {
        let p = parallel();
        assert!(p.is_filter(&p.all_objects()).unwrap());
        assert!(p.is_filter(&ObjectSet::new()).unwrap());
        assert!(p.is_ideal(&ObjectSet::new()).unwrap());
        assert!(p.is_ideal(&set(&[0])).unwrap());
        assert!(!p.is_ideal(&set(&[1])).unwrap());
        assert!(p.is_filter(&set(&[1])).unwrap());
        assert_eq!(p.complement(&set(&[1])).unwrap(), set(&[0]));
        assert_eq!(p.complement(&p.all_objects()).unwrap(), ObjectSet::new());
        assert!(p.is_filter(&set(&[7])).is_err());
    }

    #[test]
    fn subcategories() {
        let p = parallel();
        assert_eq!(p.full_subcategory(&p.all_objects()).unwrap(), p);
        assert_eq!(
            p.full_subcategory(&set(&[1])).unwrap(),
            FiniteCategory::point("b")
        );
        assert!(p.full_subcategory(&ObjectSet::new()).unwrap().is_empty());
    }

    #[test]
    fn extremal_and_acyclic() {
        let p = parallel();
        assert_eq!(p.maximal_objects(), set(&[1]));
        assert_eq!(p.minimal_objects(), set(&[0]));
        let pt = FiniteCategory::point("a");
        assert_eq!(pt.maximal_objects(), set(&[0]));
        assert_eq!(pt.minimal_objects(), set(&[0]));
        assert!(p.is_acyclic());
        assert!(!p.is_poset());
        assert!(!FiniteCategory::new(vec!["a"], vec![vec![2]])
            .unwrap()
            .is_acyclic());
        assert!(!groupoid().is_acyclic());
        assert_eq!(groupoid().maximal_objects(), set(&[0, 1]));
    }

    #[test]
    fn class_closure() {
        let g = groupoid();
        assert!(!g.is_class_closed(&set(&[0])).unwrap());
        assert!(g.is_class_closed(&set(&[0, 1])).unwrap());
        assert_eq!(
            g.require_class_closed(&set(&[1])),
            Err(Error::NotClassClosed("b".into()))
        );
    }

    #[test]
    fn terminal_and_initial() {
        let p = parallel();
        assert_eq!(p.terminal_object(), None);
        let chain = FiniteCategory::from_order(vec!["x", "y"], |i, j| i <= j).unwrap();
        assert_eq!(chain.terminal_object(), Some(1));
        assert_eq!(chain.initial_object(), Some(0));
    }
}
