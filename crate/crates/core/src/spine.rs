//! Spine constructions: products of spines through a compatible composition,
//! diagonal spines of matrix semirings, spines of monoid semirings and of
//! free modules.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::halo::{is_additive_spine, require_spine, HaloTable};
use crate::matrix::MatrixSemiring;
use crate::module::{FreeModule, Module};
use crate::monoid_semiring::MonoidSemiring;
use crate::semiring::Semiring;
use crate::subset::Subset;

/// A module over a subsemiring `R_i` of the ambient semiring, together with
/// the embedding `R_i → R`.
#[derive(Debug, Clone)]
pub struct Factor {
    pub module: Arc<Module>,
    pub embedding: Vec<usize>,
}

impl Factor {
    pub fn new(module: Arc<Module>, embedding: Vec<usize>) -> Self {
        Self { module, embedding }
    }

    /// `R_i` as a regular module over itself, cut out of `r` by `members`.
    pub fn regular_part(r: &Semiring, members: &Subset, name: &str) -> Result<Self> {
        let (sub, embedding) = r.subsemiring(members, name)?;
        Ok(Self {
            module: Arc::new(Module::regular(Arc::new(sub))),
            embedding,
        })
    }

    fn semiring(&self) -> &Semiring {
        self.module.semiring()
    }
}

/// A biadditive composition `V1 × V2 → V` with
/// `(λ1 λ2)(v1 • v2) = (λ1 v1) • (λ2 v2)`, where `V1`, `V2` are modules over
/// commuting subsemirings `R1`, `R2` with `R = Σ R1 R2`, and `V = Σ V1 • V2`.
#[derive(Debug, Clone)]
pub struct Composition {
    target: Arc<Module>,
    left: Factor,
    right: Factor,
    table: Vec<usize>,
}

impl Composition {
    /// Validates every hypothesis, reporting the first failure with a witness.
    pub fn new(
        target: Arc<Module>,
        left: Factor,
        right: Factor,
        table: Vec<usize>,
    ) -> Result<Self> {
        let r = target.semiring().clone();
        for (side, f) in [("left", &left), ("right", &right)] {
            check_embedding(&r, f)
                .map_err(|m| Error::Precondition(format!("{side} factor: {m}")))?;
        }
        let (n1, n2) = (left.module.size(), right.module.size());
        if table.len() != n1 * n2 {
            return Err(Error::Shape(format!(
                "composition table has {} entries, expected {n1}×{n2}",
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= target.size()) {
            return Err(Error::OutOfRange {
                element: bad,
                size: target.size(),
            });
        }
        for &a in &left.embedding {
            for &b in &right.embedding {
                if r.mul(a, b) != r.mul(b, a) {
                    return Err(Error::Precondition(format!(
                        "subsemirings do not commute: {a}·{b} ≠ {b}·{a}"
                    )));
                }
            }
        }
        let img1 = Subset::from_indices(r.size(), left.embedding.iter().copied())?;
        let img2 = Subset::from_indices(r.size(), right.embedding.iter().copied())?;
        let spanned = r.additive_closure(&r.product_set(&img1, &img2));
        if let Some(x) = Subset::full(r.size()).difference(&spanned).first() {
            return Err(Error::Precondition(format!(
                "R1·R2 does not additively generate R: {x} is missing"
            )));
        }
        let comp = Self {
            target,
            left,
            right,
            table,
        };
        comp.check_laws()?;
        let all = comp.compose(
            &Subset::full(comp.left.module.size()),
            &Subset::full(comp.right.module.size()),
        );
        let covered = comp.target.additive_closure(&all);
        if let Some(v) = Subset::full(comp.target.size())
            .difference(&covered)
            .first()
        {
            return Err(Error::Precondition(format!(
                "V1 • V2 does not additively generate V: {v} is missing"
            )));
        }
        Ok(comp)
    }

    /// `R1 × R2 → R` by multiplication, for commuting subsemirings given as subsets.
    pub fn subsemirings(r: &Arc<Semiring>, first: &Subset, second: &Subset) -> Result<Self> {
        let left = Factor::regular_part(r, first, "R1")?;
        let right = Factor::regular_part(r, second, "R2")?;
        let target = Arc::new(Module::regular(r.clone()));
        let mut table = Vec::with_capacity(left.embedding.len() * right.embedding.len());
        for &a in &left.embedding {
            for &b in &right.embedding {
                table.push(r.mul(a, b));
            }
        }
        Self::new(target, left, right, table)
    }

    /// `R × V → V` by the scalar action, with both factors over the full
    /// semiring (needs `R` commutative for the compatibility law).
    pub fn action(module: Arc<Module>) -> Result<Self> {
        let r = module.semiring().clone();
        let embedding: Vec<usize> = r.elements().collect();
        let left = Factor::new(Arc::new(Module::regular(r.clone())), embedding.clone());
        let right = Factor::new(module.clone(), embedding);
        let mut table = Vec::with_capacity(r.size() * module.size());
        for a in r.elements() {
            for v in 0..module.size() {
                table.push(module.act(a, v));
            }
        }
        Self::new(module, left, right, table)
    }

    fn check_laws(&self) -> Result<()> {
        let r = self.target.semiring();
        let (v1, v2) = (&self.left.module, &self.right.module);
        for x in 0..v1.size() {
            for y in 0..v2.size() {
                let xy = self.apply(x, y);
                for (l1, &e1) in self.left.embedding.iter().enumerate() {
                    for (l2, &e2) in self.right.embedding.iter().enumerate() {
                        let lhs = self.target.act(r.mul(e1, e2), xy);
                        let rhs = self.apply(v1.act(l1, x), v2.act(l2, y));
                        if lhs != rhs {
                            return Err(Error::Precondition(format!(
                                "compatibility fails at λ1={e1}, λ2={e2}, v1={x}, v2={y}"
                            )));
                        }
                    }
                }
                for x2 in 0..v1.size() {
                    if self.apply(v1.add(x, x2), y) != self.target.add(xy, self.apply(x2, y)) {
                        return Err(Error::Precondition(format!(
                            "composition is not additive in the first argument at ({x}, {x2}, {y})"
                        )));
                    }
                }
                for y2 in 0..v2.size() {
                    if self.apply(x, v2.add(y, y2)) != self.target.add(xy, self.apply(x, y2)) {
                        return Err(Error::Precondition(format!(
                            "composition is not additive in the second argument at ({x}, {y}, {y2})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn target(&self) -> &Arc<Module> {
        &self.target
    }

    pub fn left(&self) -> &Factor {
        &self.left
    }

    pub fn right(&self) -> &Factor {
        &self.right
    }

    pub fn apply(&self, v1: usize, v2: usize) -> usize {
        self.table[v1 * self.right.module.size() + v2]
    }

    /// `S1 • S2`.
    pub fn compose(&self, s1: &Subset, s2: &Subset) -> Subset {
        let mut out = Subset::empty(self.target.size());
        for a in s1 {
            for b in s2 {
                out.insert(self.apply(a, b));
            }
        }
        out
    }
}

fn check_embedding(r: &Semiring, f: &Factor) -> std::result::Result<(), String> {
    let sub = f.semiring();
    let e = &f.embedding;
    if e.len() != sub.size() {
        return Err(format!(
            "embedding has {} entries for a semiring of size {}",
            e.len(),
            sub.size()
        ));
    }
    if let Some(&bad) = e.iter().find(|&&x| x >= r.size()) {
        return Err(format!("embedding value {bad} out of range"));
    }
    if e[sub.zero()] != r.zero() || e[sub.one()] != r.one() {
        return Err("embedding does not preserve zero and one".into());
    }
    for a in sub.elements() {
        for b in sub.elements() {
            if e[sub.add(a, b)] != r.add(e[a], e[b]) || e[sub.mul(a, b)] != r.mul(e[a], e[b]) {
                return Err(format!("embedding is not a homomorphism at ({a}, {b})"));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpineProduct {
    /// `S1 • S2`.
    pub product: Subset,
    /// `halo(S1) • halo(S2) ⊆ halo(S1 • S2)`.
    pub halo_inclusion: bool,
    pub factors_are_spines: bool,
    pub is_spine: bool,
}

pub fn spine_product(comp: &Composition, s1: &Subset, s2: &Subset) -> Result<SpineProduct> {
    for (s, m) in [(s1, &comp.left.module), (s2, &comp.right.module)] {
        if s.domain() != m.size() {
            return Err(Error::Shape(format!(
                "subset over {} elements for a module of size {}",
                s.domain(),
                m.size()
            )));
        }
    }
    let t1 = HaloTable::new(&comp.left.module);
    let t2 = HaloTable::new(&comp.right.module);
    let target = HaloTable::new(&comp.target);
    let product = comp.compose(s1, s2);
    let halo_product = comp.compose(&t1.members(s1), &t2.members(s2));
    let halo_inclusion = halo_product.is_subset(&target.members(&product));
    Ok(SpineProduct {
        factors_are_spines: t1.is_spine(s1) && t2.is_spine(s2),
        is_spine: target.is_spine(&product),
        halo_inclusion,
        product,
    })
}

/// `C = Σ {1}`, the image of the natural numbers in `A`.
pub fn prime_subsemiring(a: &Semiring) -> Subset {
    a.additive_closure(&Subset::singleton(a.size(), a.one()))
}

/// `⋃ N·e_ii`: diagonal matrices with a single entry from `N`.
pub fn matrix_diagonal_spine(ms: &MatrixSemiring, n: &Subset) -> Result<Subset> {
    let base = ms.base();
    require_spine(&Module::regular(base.clone()), n)?;
    let mut out = Subset::empty(ms.semiring().size());
    for a in n {
        for i in 0..ms.n() {
            out.insert(ms.entry(a, i, i));
        }
    }
    Ok(out)
}

/// The factorization `M_n(A) = Σ M_n(C)·(A·I)` used to build diagonal spines.
pub fn matrix_composition(ms: &MatrixSemiring) -> Result<Composition> {
    let over_c = ms.with_entries_in(&prime_subsemiring(ms.base()));
    Composition::subsemirings(ms.semiring(), &over_c, &ms.scalars())
}

/// `N·T` inside `A[S]`.
pub fn monoid_semiring_spine(ms: &MonoidSemiring, n: &Subset, t: &Subset) -> Result<Subset> {
    require_spine(&Module::regular(ms.base().clone()), n)?;
    if let Some(element) = ms.monoid().monoid_spine_violation(t) {
        return Err(Error::NotAMonoidSpine { element });
    }
    let mut out = Subset::empty(ms.semiring().size());
    for a in n {
        for s in t {
            out.insert(ms.term(a, s));
        }
    }
    Ok(out)
}

/// The factorization `A[S] = Σ C[S]·A`.
pub fn monoid_composition(ms: &MonoidSemiring) -> Result<Composition> {
    let over_c = ms.with_coefficients_in(&prime_subsemiring(ms.base()));
    Composition::subsemirings(ms.semiring(), &over_c, &ms.scalars())
}

/// `⋃ M_i v_i` in a free module.
pub fn free_spine(free: &FreeModule, components: &[Subset]) -> Result<Subset> {
    if components.len() != free.rank() {
        return Err(Error::Shape(format!(
            "{} components for rank {}",
            components.len(),
            free.rank()
        )));
    }
    let v = free.module();
    let mut out = Subset::empty(v.size());
    for (i, m) in components.iter().enumerate() {
        for lambda in m {
            out.insert(v.act(lambda, free.basis(i)));
        }
    }
    Ok(out)
}

/// `M_i = {λ : λ v_i ∈ S}` for each basis vector.
pub fn spine_components(free: &FreeModule, set: &Subset) -> Vec<Subset> {
    let v = free.module();
    let r = v.semiring();
    (0..free.rank())
        .map(|i| {
            let mut m = Subset::empty(r.size());
            for lambda in r.elements() {
                if set.contains(v.act(lambda, free.basis(i))) {
                    m.insert(lambda);
                }
            }
            m
        })
        .collect()
}

/// All additive spines of a module, by brute force over its subsets.
pub fn all_spines(module: &Module) -> Result<Vec<Subset>> {
    if module.size() > 16 {
        return Err(Error::EnumerationCap {
            requested: module.size(),
            cap: 16,
        });
    }
    let table = HaloTable::new(module);
    Ok(Subset::all(module.size())
        .filter(|s| table.is_spine(s))
        .collect())
}

pub fn is_spine(module: &Module, set: &Subset) -> bool {
    is_additive_spine(module, set).is_spine
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::FiniteMonoid;

    fn boolean() -> Arc<Semiring> {
        Arc::new(Semiring::boolean())
    }

    #[test]
    fn diagonal_spines() {
        let m = MatrixSemiring::new(boolean(), 2).unwrap();
        let one = Subset::singleton(2, 1);
        let d = matrix_diagonal_spine(&m, &one).unwrap();
        assert_eq!(d.to_vec(), vec![m.unit(0, 0), m.unit(1, 1)]);
        assert!(is_spine(&Module::regular(m.semiring().clone()), &d));

        let n2 = Arc::new(Semiring::truncated_naturals(2).unwrap());
        let m = MatrixSemiring::new(n2.clone(), 2).unwrap();
        let d = matrix_diagonal_spine(&m, &Subset::singleton(3, 1)).unwrap();
        assert_eq!(d.len(), 2);
        assert!(is_spine(&Module::regular(m.semiring().clone()), &d));

        let m1 = MatrixSemiring::new(n2, 1).unwrap();
        let n = Subset::singleton(3, 1);
        assert_eq!(matrix_diagonal_spine(&m1, &n).unwrap(), n);

        let err = matrix_diagonal_spine(&m1, &Subset::singleton(3, 2)).unwrap_err();
        assert!(matches!(err, Error::NotASpine { .. }));
    }

    #[test]
    fn matrix_factorization_gives_the_diagonal_spine() {
        let m = MatrixSemiring::new(boolean(), 2).unwrap();
        let comp = matrix_composition(&m).unwrap();
        let d = Subset::from_indices(16, [m.unit(0, 0), m.unit(1, 1)]).unwrap();
        let local_d = Subset::from_indices(
            comp.left().embedding.len(),
            comp.left()
                .embedding
                .iter()
                .enumerate()
                .filter(|&(_, e)| d.contains(*e))
                .map(|(i, _)| i),
        )
        .unwrap();
        let one = Subset::singleton(
            comp.right().embedding.len(),
            comp.right().module.semiring().one(),
        );
        let p = spine_product(&comp, &local_d, &one).unwrap();
        assert_eq!(p.product, d);
        assert!(p.halo_inclusion && p.factors_are_spines && p.is_spine);
    }

    #[test]
    fn action_composition_on_free_module() {
        let f = FreeModule::new(boolean(), 2).unwrap();
        let v = Arc::new(f.module().clone());
        let comp = Composition::action(v).unwrap();
        let basis = Subset::from_indices(4, [f.basis(0), f.basis(1)]).unwrap();
        let p = spine_product(&comp, &Subset::singleton(2, 1), &basis).unwrap();
        assert_eq!(p.product, basis);
        assert!(p.is_spine && p.halo_inclusion);
        let empty = spine_product(&comp, &Subset::empty(2), &basis).unwrap();
        assert!(empty.product.is_empty());
        assert!(!empty.is_spine);
    }

    #[test]
    fn non_commuting_factors_are_rejected() {
        let m = MatrixSemiring::new(boolean(), 2).unwrap();
        let all = Subset::full(16);
        let err = Composition::subsemirings(m.semiring(), &all, &all).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        // M2(B) is not commutative, so the action law fails too
        let v = Arc::new(Module::regular(m.semiring().clone()));
        assert!(Composition::action(v).is_err());
    }

    #[test]
    fn monoid_spines() {
        let ms = MonoidSemiring::new(boolean(), Arc::new(FiniteMonoid::idempotent_pair())).unwrap();
        let n = Subset::singleton(2, 1);
        let t = Subset::full(2);
        let s = monoid_semiring_spine(&ms, &n, &t).unwrap();
        assert_eq!(s.to_vec(), vec![1, 2]);
        assert!(is_spine(&Module::regular(ms.semiring().clone()), &s));
        let err = monoid_semiring_spine(&ms, &n, &Subset::singleton(2, 1)).unwrap_err();
        assert_eq!(err, Error::NotAMonoidSpine { element: 0 });

        let mu = MonoidSemiring::new(boolean(), Arc::new(FiniteMonoid::matrix_units(2).unwrap()))
            .unwrap();
        // e11 = 0, e22 = 3, zero = 4
        let t = Subset::from_indices(5, [0, 3, 4]).unwrap();
        let s = monoid_semiring_spine(&mu, &n, &t).unwrap();
        let m = MatrixSemiring::new(boolean(), 2).unwrap();
        let expected = Subset::from_indices(16, [0, m.unit(0, 0), m.unit(1, 1)]).unwrap();
        assert_eq!(s, expected);
        assert!(is_spine(&Module::regular(mu.semiring().clone()), &s));
        assert!(monoid_composition(&mu).is_ok());

        let triv = MonoidSemiring::new(boolean(), Arc::new(FiniteMonoid::trivial())).unwrap();
        assert_eq!(
            monoid_semiring_spine(&triv, &n, &Subset::full(1)).unwrap(),
            n
        );
    }

    #[test]
    fn free_spines_from_components() {
        let n2 = Arc::new(Semiring::truncated_naturals(2).unwrap());
        let f = FreeModule::new(n2, 2).unwrap();
        let one = Subset::singleton(3, 1);
        let s = free_spine(&f, &[one.clone(), one.clone()]).unwrap();
        assert!(is_spine(f.module(), &s));
        for x in &s {
            assert_eq!(f.support(x).len(), 1);
        }
        assert_eq!(spine_components(&f, &s), vec![one.clone(), one]);
    }

    #[test]
    fn spines_of_boolean_plane() {
        let f = FreeModule::new(boolean(), 2).unwrap();
        let spines = all_spines(f.module()).unwrap();
        // every spine contains both basis vectors
        for s in &spines {
            assert!(s.contains(f.basis(0)) && s.contains(f.basis(1)));
        }
        assert_eq!(spines.len(), 4);
    }
}
