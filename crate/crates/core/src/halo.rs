//! Halos and additive spines.
//!
//! The halo of `S ⊆ V` is the set of `v` admitting scalars `λ, μ` with
//! `λv ∈ S` and `μλv = v`. In the regular module this is the semiring halo
//! `{x : ∃ y, z with yx ∈ M, zyx = x}`: take `λ = y`, `μ = z`. Conversely a
//! module witness `(λ, μ)` is a semiring witness `(y, z) = (λ, μ)`, so one
//! scan serves both. Witnesses are the lexicographically least `(λ, μ)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::module::Module;
use crate::semiring::Semiring;
use crate::subset::Subset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HaloWitness {
    pub element: usize,
    pub lambda: usize,
    pub mu: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HaloResult {
    pub members: Subset,
    /// One witness per member, in increasing element order.
    pub witnesses: Vec<HaloWitness>,
}

/// Halo by direct scan over `(v, λ, μ)`.
pub fn halo(module: &Module, set: &Subset) -> HaloResult {
    let r = module.semiring();
    let mut members = Subset::empty(module.size());
    let mut witnesses = Vec::new();
    for v in 0..module.size() {
        'lambda: for lambda in r.elements() {
            let w = module.act(lambda, v);
            if !set.contains(w) {
                continue;
            }
            for mu in r.elements() {
                if module.act(mu, w) == v {
                    members.insert(v);
                    witnesses.push(HaloWitness {
                        element: v,
                        lambda,
                        mu,
                    });
                    break 'lambda;
                }
            }
        }
    }
    HaloResult { members, witnesses }
}

/// Precomputed return paths: for each `v`, every `λ` admitting some `μ`
/// with `μλv = v`, paired with the least such `μ`.
///
/// Membership of `v` in any halo is then a lookup: `v ∈ halo(S)` iff one of
/// its return points `λv` lies in `S`.
#[derive(Debug, Clone)]
pub struct HaloTable<'a> {
    module: &'a Module,
    returns: Vec<Vec<(usize, usize)>>,
    reach: Vec<Subset>,
}

impl<'a> HaloTable<'a> {
    pub fn new(module: &'a Module) -> Self {
        let r = module.semiring();
        let n = module.size();
        let mut returns = Vec::with_capacity(n);
        let mut reach = Vec::with_capacity(n);
        for v in 0..n {
            let mut paths = Vec::new();
            let mut points = Subset::empty(n);
            for lambda in r.elements() {
                let w = module.act(lambda, v);
                if let Some(mu) = r.elements().find(|&mu| module.act(mu, w) == v) {
                    paths.push((lambda, mu));
                    points.insert(w);
                }
            }
            returns.push(paths);
            reach.push(points);
        }
        Self {
            module,
            returns,
            reach,
        }
    }

    pub fn module(&self) -> &'a Module {
        self.module
    }

    /// Elements `λv` from which `v` can be recovered.
    pub fn return_points(&self, v: usize) -> &Subset {
        &self.reach[v]
    }

    pub fn members(&self, set: &Subset) -> Subset {
        let mut out = Subset::empty(self.module.size());
        for (v, points) in self.reach.iter().enumerate() {
            if points.intersects(set) {
                out.insert(v);
            }
        }
        out
    }

    pub fn halo(&self, set: &Subset) -> HaloResult {
        let mut members = Subset::empty(self.module.size());
        let mut witnesses = Vec::new();
        for (v, paths) in self.returns.iter().enumerate() {
            if let Some(&(lambda, mu)) = paths
                .iter()
                .find(|&&(lambda, _)| set.contains(self.module.act(lambda, v)))
            {
                members.insert(v);
                witnesses.push(HaloWitness {
                    element: v,
                    lambda,
                    mu,
                });
            }
        }
        HaloResult { members, witnesses }
    }

    pub fn spine_check(&self, set: &Subset) -> SpineCheck {
        SpineCheck::from_halo(self.module, self.members(set))
    }

    pub fn is_spine(&self, set: &Subset) -> bool {
        self.spine_check(set).is_spine
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpineCheck {
    pub is_spine: bool,
    /// Least element outside the additive closure of the halo.
    pub uncovered: Option<usize>,
    pub halo: Subset,
}

impl SpineCheck {
    fn from_halo(module: &Module, halo: Subset) -> Self {
        let closure = module.additive_closure(&halo);
        let uncovered = (0..module.size()).find(|&v| !closure.contains(v));
        Self {
            is_spine: uncovered.is_none(),
            uncovered,
            halo,
        }
    }
}

/// Whether the halo of `set` additively generates the module.
pub fn is_additive_spine(module: &Module, set: &Subset) -> SpineCheck {
    SpineCheck::from_halo(module, halo(module, set).members)
}

/// Checks `set` is an additive spine, turning a miss into an error.
pub fn require_spine(module: &Module, set: &Subset) -> Result<()> {
    match is_additive_spine(module, set).uncovered {
        None => Ok(()),
        Some(uncovered) => Err(Error::NotASpine { uncovered }),
    }
}

/// `{x : ∃ y, xyx = x}`.
pub fn von_neumann_regulars(r: &Semiring) -> Subset {
    let mut out = Subset::empty(r.size());
    for x in r.elements() {
        if r.elements().any(|y| r.mul(r.mul(x, y), x) == x) {
            out.insert(x);
        }
    }
    out
}

/// Split of the halo of `M ⊆ R` into the part coming from idempotents of `M`
/// and the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HaloDecomposition {
    /// `halo(M ∩ Id(R))`.
    pub regular_part: Subset,
    /// `halo(M ∖ Id(R))` with the regular part removed.
    pub irregular_part: Subset,
    /// `halo(M ∩ Id(R)) ∩ halo(M ∖ Id(R))` before removal.
    pub overlap: Subset,
    /// The von Neumann regular elements of `halo(M)`.
    pub regular_elements: Subset,
}

pub fn halo_decompose(r: &Semiring, set: &Subset) -> HaloDecomposition {
    let module = Module::regular(std::sync::Arc::new(r.clone()));
    let table = HaloTable::new(&module);
    decompose_with(&table, r, set)
}

pub(crate) fn decompose_with(
    table: &HaloTable<'_>,
    r: &Semiring,
    set: &Subset,
) -> HaloDecomposition {
    let id = r.idempotents();
    let regular_part = table.members(&set.intersection(&id));
    let raw = table.members(&set.difference(&id));
    let overlap = regular_part.intersection(&raw);
    let whole = table.members(set);
    HaloDecomposition {
        irregular_part: raw.difference(&regular_part),
        regular_elements: whole.intersection(&von_neumann_regulars(r)),
        regular_part,
        overlap,
    }
}

/// Result of translating a subset of `R` by a unit on the right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitTranslation {
    /// `S·u`.
    pub translated: Subset,
    /// `halo(S)·u`.
    pub halo_translated: Subset,
    /// `halo(S·u)`.
    pub halo_of_translated: Subset,
    pub spine_before: bool,
    pub spine_after: bool,
}

impl UnitTranslation {
    pub fn halo_commutes(&self) -> bool {
        self.halo_translated == self.halo_of_translated
    }

    pub fn spine_preserved(&self) -> bool {
        self.spine_before == self.spine_after
    }
}

pub fn right_translate(r: &Semiring, set: &Subset, t: usize) -> Subset {
    let mut out = Subset::empty(r.size());
    for s in set {
        out.insert(r.mul(s, t));
    }
    out
}

/// `S·u` for a two-sided unit `u` of `R`, with the halo and spine comparisons.
pub fn translate_spine_by_unit(r: &Semiring, set: &Subset, u: usize) -> Result<UnitTranslation> {
    if u >= r.size() {
        return Err(Error::OutOfRange {
            element: u,
            size: r.size(),
        });
    }
    r.inverse(u).ok_or(Error::NotAUnit(u))?;
    let module = Module::regular(std::sync::Arc::new(r.clone()));
    let table = HaloTable::new(&module);
    Ok(translate_with(&table, r, set, u))
}

pub(crate) fn translate_with(
    table: &HaloTable<'_>,
    r: &Semiring,
    set: &Subset,
    u: usize,
) -> UnitTranslation {
    let translated = right_translate(r, set, u);
    let halo_translated = right_translate(r, &table.members(set), u);
    let halo_of_translated = table.members(&translated);
    UnitTranslation {
        spine_before: table.is_spine(set),
        spine_after: table.is_spine(&translated),
        translated,
        halo_translated,
        halo_of_translated,
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use proptest::prelude::*;

    use super::*;
    use crate::matrix::MatrixSemiring;
    use crate::module::FreeModule;

    fn m2b() -> MatrixSemiring {
        MatrixSemiring::new(Arc::new(Semiring::boolean()), 2).unwrap()
    }

    /// Semiring halo with two independent scalars, as an oracle.
    fn two_scalar_halo(r: &Semiring, m: &Subset) -> Subset {
        let mut out = Subset::empty(r.size());
        for x in r.elements() {
            for y in r.elements() {
                let yx = r.mul(y, x);
                if m.contains(yx) && r.elements().any(|z| r.mul(z, yx) == x) {
                    out.insert(x);
                }
            }
        }
        out
    }

    #[test]
    fn halo_of_zero_is_zero() {
        let f = FreeModule::new(Arc::new(Semiring::boolean()), 2).unwrap();
        let m = f.module();
        assert_eq!(halo(m, &Subset::singleton(4, 0)).members.to_vec(), vec![0]);
        let n2 = Module::regular(Arc::new(Semiring::truncated_naturals(2).unwrap()));
        assert_eq!(
            halo(&n2, &Subset::singleton(3, 0)).members.to_vec(),
            vec![0]
        );
    }

    #[test]
    fn diagonal_units_halo_contains_all_matrix_units() {
        let ms = m2b();
        let v = Module::regular(ms.semiring().clone());
        let d = Subset::from_indices(16, [ms.unit(0, 0), ms.unit(1, 1)]).unwrap();
        let h = halo(&v, &d);
        for i in 0..2 {
            for j in 0..2 {
                assert!(h.members.contains(ms.unit(i, j)));
            }
        }
        for w in &h.witnesses {
            let lv = v.act(w.lambda, w.element);
            assert!(d.contains(lv));
            assert_eq!(v.act(w.mu, lv), w.element);
        }
    }

    #[test]
    fn halo_of_one_in_n2() {
        let v = Module::regular(Arc::new(Semiring::truncated_naturals(2).unwrap()));
        let h = halo(&v, &Subset::singleton(3, 1));
        assert_eq!(h.members.to_vec(), vec![1]);
        assert_eq!(
            h.witnesses,
            vec![HaloWitness {
                element: 1,
                lambda: 1,
                mu: 1
            }]
        );
    }

    #[test]
    fn spine_examples() {
        let b = Arc::new(Semiring::boolean());
        assert!(is_additive_spine(&Module::regular(b.clone()), &Subset::singleton(2, 1)).is_spine);
        let ms = m2b();
        let v = Module::regular(ms.semiring().clone());
        let d = Subset::from_indices(16, [ms.unit(0, 0), ms.unit(1, 1)]).unwrap();
        assert!(is_additive_spine(&v, &d).is_spine);
        let f = FreeModule::new(b, 2).unwrap();
        let check = is_additive_spine(f.module(), &Subset::singleton(4, 3));
        assert!(!check.is_spine);
        assert_eq!(check.uncovered, Some(f.basis(0)));
    }

    #[test]
    fn von_neumann_regular_examples() {
        assert_eq!(
            von_neumann_regulars(&Semiring::boolean()).to_vec(),
            vec![0, 1]
        );
        let n2 = Semiring::truncated_naturals(2).unwrap();
        assert_eq!(von_neumann_regulars(&n2).to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn decomposition_examples() {
        let b = Semiring::boolean();
        let d = halo_decompose(&b, &Subset::full(2));
        assert_eq!(d.regular_part.to_vec(), vec![0, 1]);
        assert!(d.irregular_part.is_empty());
        let empty = halo_decompose(&b, &Subset::empty(2));
        assert!(empty.regular_part.is_empty() && empty.irregular_part.is_empty());

        let ms = m2b();
        let r = ms.semiring();
        let m = Subset::from_indices(16, [ms.unit(0, 0), ms.unit(0, 1)]).unwrap();
        let d = halo_decompose(r, &m);
        assert!(!d.regular_part.intersects(&d.irregular_part));
        let whole = halo(&Module::regular(r.clone()), &m).members;
        assert_eq!(d.regular_part.union(&d.irregular_part), whole);
    }

    #[test]
    fn raw_halo_parts_can_overlap() {
        // e11 = e12·e21 and e21 = e21·e11: e11 lies in the halo of {e11} and of {e21}
        let ms = m2b();
        let r = ms.semiring();
        let m = Subset::from_indices(16, [ms.unit(0, 0), ms.unit(1, 0)]).unwrap();
        let d = halo_decompose(r, &m);
        assert!(d.overlap.contains(ms.unit(0, 0)));
        assert!(!d.regular_part.intersects(&d.irregular_part));
    }

    #[test]
    fn permutation_unit_moves_the_diagonal_spine() {
        let ms = m2b();
        let r = ms.semiring();
        let d = Subset::from_indices(16, [ms.unit(0, 0), ms.unit(1, 1)]).unwrap();
        let swap = r.add(ms.unit(0, 1), ms.unit(1, 0));
        let t = translate_spine_by_unit(r, &d, swap).unwrap();
        assert_eq!(
            t.translated,
            Subset::from_indices(16, [ms.unit(0, 1), ms.unit(1, 0)]).unwrap()
        );
        assert!(t.spine_before && t.spine_after);
        assert!(t.halo_commutes());
        let same = translate_spine_by_unit(r, &d, ms.identity()).unwrap();
        assert_eq!(same.translated, d);
        assert_eq!(
            translate_spine_by_unit(r, &d, ms.unit(0, 0)).unwrap_err(),
            Error::NotAUnit(ms.unit(0, 0))
        );
    }

    #[test]
    fn halo_of_one_is_left_invertibles() {
        for r in [
            Semiring::boolean(),
            Semiring::truncated_naturals(2).unwrap(),
            Semiring::truncated_maxplus(2).unwrap(),
            m2b().semiring().as_ref().clone(),
        ] {
            let v = Module::regular(Arc::new(r.clone()));
            let h = halo(&v, &Subset::singleton(r.size(), r.one()));
            assert_eq!(h.members, r.left_invertibles());
        }
    }

    proptest! {
        #[test]
        fn table_route_matches_direct_scan(mask in any::<u64>()) {
            let ms = m2b();
            let v = Module::regular(ms.semiring().clone());
            let table = HaloTable::new(&v);
            let s = Subset::from_mask(16, mask & 0xffff);
            prop_assert_eq!(table.halo(&s), halo(&v, &s));
            prop_assert_eq!(table.members(&s), two_scalar_halo(ms.semiring(), &s));
        }

        #[test]
        fn table_route_matches_on_large_carrier(indices in proptest::collection::vec(0usize..81, 0..6)) {
            let ms = MatrixSemiring::new(Arc::new(Semiring::truncated_naturals(2).unwrap()), 2).unwrap();
            let v = Module::regular(ms.semiring().clone());
            let table = HaloTable::new(&v);
            let s = Subset::from_indices(81, indices).unwrap();
            prop_assert_eq!(table.halo(&s), halo(&v, &s));
        }
    }
}
