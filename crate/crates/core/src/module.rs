//! Finite left semimodules given by tables, and their submodules.

use std::sync::Arc;

use crate::error::{Error, Law, Result};
use crate::limits::{scan_triples, Limits, Verification};
use crate::matrix::{decode, encode};
use crate::semiring::{flatten_rect, flatten_square, Semiring};
use crate::subset::Subset;

/// A finite left module over a table semiring.
///
/// `act` is indexed `[scalar][vector]`.
#[derive(Debug, Clone)]
pub struct Module {
    semiring: Arc<Semiring>,
    size: usize,
    zero: usize,
    add: Vec<usize>,
    act: Vec<usize>,
    verification: Verification,
}

impl Module {
    pub fn new(
        semiring: Arc<Semiring>,
        zero: usize,
        add: Vec<Vec<usize>>,
        act: Vec<Vec<usize>>,
    ) -> Result<Self> {
        Self::with_limits(semiring, zero, add, act, &Limits::default())
    }

    pub fn with_limits(
        semiring: Arc<Semiring>,
        zero: usize,
        add: Vec<Vec<usize>>,
        act: Vec<Vec<usize>>,
        limits: &Limits,
    ) -> Result<Self> {
        let size = add.len();
        let add = flatten_square("add", add, size)?;
        let act = flatten_rect("act", act, semiring.size(), size)?;
        Self::from_flat(semiring, size, zero, add, act, limits)
    }

    pub(crate) fn from_flat(
        semiring: Arc<Semiring>,
        size: usize,
        zero: usize,
        add: Vec<usize>,
        act: Vec<usize>,
        limits: &Limits,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::Shape("module carrier must be non-empty".into()));
        }
        limits.check_carrier(size as u128)?;
        if zero >= size {
            return Err(Error::Shape(format!(
                "zero index {zero} out of range for size {size}"
            )));
        }
        if let Some(&bad) = add.iter().chain(&act).find(|&&e| e >= size) {
            return Err(Error::Shape(format!(
                "table entry {bad} out of range for size {size}"
            )));
        }
        let mut m = Module {
            semiring,
            size,
            zero,
            add,
            act,
            verification: Verification::Exhaustive,
        };
        m.verification = m.verify(limits)?;
        Ok(m)
    }

    fn verify(&self, limits: &Limits) -> Result<Verification> {
        let r = &*self.semiring;
        let (n, q) = (self.size, r.size());
        let fail = |law, witness: Vec<usize>| Error::Axiom { law, witness };
        for v in 0..n {
            if self.add(self.zero, v) != v || self.add(v, self.zero) != v {
                return Err(fail(Law::AdditiveIdentity, vec![v]));
            }
        }
        for v in 0..n {
            for w in 0..n {
                if self.add(v, w) != self.add(w, v) {
                    return Err(fail(Law::AdditiveCommutativity, vec![v, w]));
                }
            }
        }
        for v in 0..n {
            if self.act(r.one(), v) != v {
                return Err(fail(Law::UnitAction, vec![v]));
            }
            if self.act(r.zero(), v) != self.zero {
                return Err(fail(Law::ZeroScalarAction, vec![v]));
            }
        }
        for s in 0..q {
            if self.act(s, self.zero) != self.zero {
                return Err(fail(Law::ZeroVectorAction, vec![s]));
            }
        }
        let mut mode = scan_triples([n, n, n], limits, |u, v, w| {
            if self.add(self.add(u, v), w) != self.add(u, self.add(v, w)) {
                return Err(fail(Law::AdditiveAssociativity, vec![u, v, w]));
            }
            Ok(())
        })?;
        mode = mode.combine(scan_triples([q, n, n], limits, |s, v, w| {
            if self.act(s, self.add(v, w)) != self.add(self.act(s, v), self.act(s, w)) {
                return Err(fail(Law::ActionOverVectorSum, vec![s, v, w]));
            }
            Ok(())
        })?);
        mode = mode.combine(scan_triples([q, q, n], limits, |s, t, v| {
            if self.act(r.add(s, t), v) != self.add(self.act(s, v), self.act(t, v)) {
                return Err(fail(Law::ActionOverScalarSum, vec![s, t, v]));
            }
            Ok(())
        })?);
        mode = mode.combine(scan_triples([q, q, n], limits, |s, t, v| {
            if self.act(r.mul(s, t), v) != self.act(s, self.act(t, v)) {
                return Err(fail(Law::ActionCompatibility, vec![s, t, v]));
            }
            Ok(())
        })?);
        Ok(mode.combine(r.verification()))
    }

    /// The semiring acting on itself by left multiplication.
    pub fn regular(semiring: Arc<Semiring>) -> Self {
        Module {
            size: semiring.size(),
            zero: semiring.zero(),
            add: semiring.add_flat().to_vec(),
            act: semiring.mul_flat().to_vec(),
            verification: semiring.verification(),
            semiring,
        }
    }

    /// Componentwise direct product; the pair `(a, b)` is encoded as `a + |V1|·b`.
    pub fn product(left: &Module, right: &Module) -> Result<Self> {
        Self::product_with_limits(left, right, &Limits::default())
    }

    pub fn product_with_limits(left: &Module, right: &Module, limits: &Limits) -> Result<Self> {
        if !left.semiring.same_tables(&right.semiring) {
            return Err(Error::SemiringMismatch);
        }
        let size = limits.check_carrier(left.size as u128 * right.size as u128)?;
        let split = |x: usize| (x % left.size, x / left.size);
        let join = |a: usize, b: usize| a + left.size * b;
        let mut add = Vec::with_capacity(size * size);
        for x in 0..size {
            let (a, b) = split(x);
            for y in 0..size {
                let (c, d) = split(y);
                add.push(join(left.add(a, c), right.add(b, d)));
            }
        }
        let mut act = Vec::with_capacity(left.semiring.size() * size);
        for s in left.semiring.elements() {
            for x in 0..size {
                let (a, b) = split(x);
                act.push(join(left.act(s, a), right.act(s, b)));
            }
        }
        Ok(Module {
            semiring: left.semiring.clone(),
            size,
            zero: join(left.zero, right.zero),
            add,
            act,
            verification: left.verification.combine(right.verification),
        })
    }

    pub fn semiring(&self) -> &Arc<Semiring> {
        &self.semiring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn verification(&self) -> Verification {
        self.verification
    }

    #[inline]
    pub fn add(&self, v: usize, w: usize) -> usize {
        self.add[v * self.size + w]
    }

    #[inline]
    pub fn act(&self, scalar: usize, v: usize) -> usize {
        self.act[scalar * self.size + v]
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.size).map(<[_]>::to_vec).collect()
    }

    pub fn act_table(&self) -> Vec<Vec<usize>> {
        self.act.chunks(self.size).map(<[_]>::to_vec).collect()
    }

    /// Same semiring tables and same module tables.
    pub fn same_tables(&self, other: &Module) -> bool {
        self.semiring.same_tables(&other.semiring)
            && self.size == other.size
            && self.zero == other.zero
            && self.add == other.add
            && self.act == other.act
    }

    pub fn subset(&self, indices: &[usize]) -> Result<Subset> {
        Subset::from_indices(self.size, indices.iter().copied())
    }

    /// All finite sums of members of `set`, including the empty sum.
    pub fn additive_closure(&self, set: &Subset) -> Subset {
        self.additive_closure_ordered(&set.to_vec())
    }

    /// Worklist fixpoint with generators visited in the given order.
    pub fn additive_closure_ordered(&self, generators: &[usize]) -> Subset {
        let mut out = Subset::singleton(self.size, self.zero);
        let mut work = vec![self.zero];
        while let Some(x) = work.pop() {
            for &g in generators {
                let s = self.add(x, g);
                if out.insert(s) {
                    work.push(s);
                }
            }
        }
        out
    }

    /// `{r·v : r ∈ scalars, v ∈ vectors}`.
    pub fn product_set(&self, scalars: &Subset, vectors: &Subset) -> Subset {
        let mut out = Subset::empty(self.size);
        for r in scalars {
            for v in vectors {
                out.insert(self.act(r, v));
            }
        }
        out
    }

    /// The submodule `Σ^∞ R·S` generated by `set`.
    pub fn generated_submodule(&self, set: &Subset) -> Submodule {
        let orbit = self.product_set(&Subset::full(self.semiring.size()), set);
        Submodule(self.additive_closure(&orbit))
    }

    pub fn generates(&self, set: &Subset) -> bool {
        self.generated_submodule(set).len() == self.size
    }

    /// Validates `set` as a submodule.
    pub fn submodule(&self, set: Subset) -> Result<Submodule> {
        if set.domain() != self.size {
            return Err(Error::Shape(format!(
                "subset over {} elements, module has {}",
                set.domain(),
                self.size
            )));
        }
        if let Some(w) = self.submodule_violation(&set) {
            return Err(Error::NotSubmodule(w));
        }
        Ok(Submodule(set))
    }

    fn submodule_violation(&self, set: &Subset) -> Option<String> {
        if !set.contains(self.zero) {
            return Some("zero is missing".into());
        }
        let members = set.to_vec();
        for &v in &members {
            for &w in &members {
                if !set.contains(self.add(v, w)) {
                    return Some(format!("{v} + {w} = {} escapes", self.add(v, w)));
                }
            }
            for r in self.semiring.elements() {
                if !set.contains(self.act(r, v)) {
                    return Some(format!("{r}·{v} = {} escapes", self.act(r, v)));
                }
            }
        }
        None
    }

    pub fn is_submodule(&self, set: &Subset) -> bool {
        set.domain() == self.size && self.submodule_violation(set).is_none()
    }

    pub fn zero_submodule(&self) -> Submodule {
        Submodule(Subset::singleton(self.size, self.zero))
    }

    pub fn full_submodule(&self) -> Submodule {
        Submodule(Subset::full(self.size))
    }

    /// `W + W'`: the additive closure of the union.
    pub fn submodule_sum(&self, a: &Submodule, b: &Submodule) -> Submodule {
        Submodule(self.additive_closure(&a.0.union(&b.0)))
    }

    /// First pair `(x, y)` with `x + y = 0` and not both zero.
    pub fn zero_sum_witness(&self) -> Option<(usize, usize)> {
        for x in 0..self.size {
            for y in 0..self.size {
                if self.add(x, y) == self.zero && (x != self.zero || y != self.zero) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Lacks zero sums: `x + y = 0` forces `x = y = 0`.
    pub fn is_lzs(&self) -> bool {
        self.zero_sum_witness().is_none()
    }

    /// The submodule as a standalone module, with index maps in both directions.
    pub fn restrict(&self, sub: &Submodule) -> Restriction {
        let embed = sub.0.to_vec();
        let mut local = vec![None; self.size];
        for (i, &e) in embed.iter().enumerate() {
            local[e] = Some(i);
        }
        let k = embed.len();
        let at = |e: usize| local[e].expect("submodule is closed");
        let mut add = Vec::with_capacity(k * k);
        for &a in &embed {
            for &b in &embed {
                add.push(at(self.add(a, b)));
            }
        }
        let mut act = Vec::with_capacity(self.semiring.size() * k);
        for r in self.semiring.elements() {
            for &v in &embed {
                act.push(at(self.act(r, v)));
            }
        }
        let module = Module {
            semiring: self.semiring.clone(),
            size: k,
            zero: at(self.zero),
            add,
            act,
            verification: self.verification,
        };
        Restriction {
            module,
            embed,
            local,
        }
    }

    /// The same carrier viewed as a module over a subsemiring, given by its
    /// embedding into this module's semiring.
    pub fn restrict_scalars(&self, sub: Arc<Semiring>, embedding: &[usize]) -> Result<Module> {
        if embedding.len() != sub.size() {
            return Err(Error::Shape(format!(
                "embedding has {} entries, subsemiring has {}",
                embedding.len(),
                sub.size()
            )));
        }
        let mut act = Vec::with_capacity(sub.size() * self.size);
        for &r in embedding {
            if r >= self.semiring.size() {
                return Err(Error::OutOfRange {
                    element: r,
                    size: self.semiring.size(),
                });
            }
            act.extend_from_slice(&self.act[r * self.size..(r + 1) * self.size]);
        }
        Module::from_flat(
            sub,
            self.size,
            self.zero,
            self.add.clone(),
            act,
            &Limits::default(),
        )
    }
}

/// A validated submodule, represented by its full member set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(transparent)]
pub struct Submodule(Subset);

impl Submodule {
    pub fn as_subset(&self) -> &Subset {
        &self.0
    }

    pub fn into_subset(self) -> Subset {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(v)
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.0.is_subset(&other.0)
    }

    pub(crate) fn new_unchecked(set: Subset) -> Self {
        Submodule(set)
    }
}

impl std::ops::Deref for Submodule {
    type Target = Subset;

    fn deref(&self) -> &Subset {
        &self.0
    }
}

/// A submodule re-indexed as a module in its own right.
#[derive(Debug, Clone)]
pub struct Restriction {
    pub module: Module,
    embed: Vec<usize>,
    local: Vec<Option<usize>>,
}

impl Restriction {
    pub fn embedding(&self) -> &[usize] {
        &self.embed
    }

    /// `set ∩ W` in local indices.
    pub fn to_local(&self, set: &Subset) -> Subset {
        let mut out = Subset::empty(self.embed.len());
        for v in set {
            if let Some(i) = self.local[v] {
                out.insert(i);
            }
        }
        out
    }

    pub fn to_ambient(&self, set: &Subset) -> Subset {
        let mut out = Subset::empty(self.local.len());
        for i in set {
            out.insert(self.embed[i]);
        }
        out
    }
}

/// A free module `R^n` with coordinate `i` the digit of weight `|R|^i`.
#[derive(Debug, Clone)]
pub struct FreeModule {
    module: Module,
    rank: usize,
}

impl FreeModule {
    pub fn new(semiring: Arc<Semiring>, rank: usize) -> Result<Self> {
        Self::with_limits(semiring, rank, &Limits::default())
    }

    pub fn with_limits(semiring: Arc<Semiring>, rank: usize, limits: &Limits) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Precondition(
                "free module rank must be at least 1".into(),
            ));
        }
        let q = semiring.size();
        let requested = (q as u128).checked_pow(rank as u32).unwrap_or(u128::MAX);
        let size = limits.check_carrier(requested)?;
        let coords: Vec<Vec<usize>> = (0..size).map(|x| decode(x, q, rank)).collect();
        let mut add = Vec::with_capacity(size * size);
        let mut scratch = vec![0; rank];
        for x in &coords {
            for y in &coords {
                for i in 0..rank {
                    scratch[i] = semiring.add(x[i], y[i]);
                }
                add.push(encode(&scratch, q));
            }
        }
        let mut act = Vec::with_capacity(q * size);
        for r in semiring.elements() {
            for x in &coords {
                for i in 0..rank {
                    scratch[i] = semiring.mul(r, x[i]);
                }
                act.push(encode(&scratch, q));
            }
        }
        let module = Module {
            size,
            zero: encode(&vec![semiring.zero(); rank], q),
            add,
            act,
            verification: semiring.verification(),
            semiring,
        };
        Ok(Self { module, rank })
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn into_module(self) -> Module {
        self.module
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        assert_eq!(coords.len(), self.rank);
        encode(coords, self.module.semiring.size())
    }

    pub fn decode(&self, v: usize) -> Vec<usize> {
        decode(v, self.module.semiring.size(), self.rank)
    }

    /// Basis vector `v_i` (0-based).
    pub fn basis(&self, i: usize) -> usize {
        let r = &self.module.semiring;
        let mut c = vec![r.zero(); self.rank];
        c[i] = r.one();
        self.encode(&c)
    }

    /// Coordinates that are nonzero in `v`.
    pub fn support(&self, v: usize) -> Vec<usize> {
        let zero = self.module.semiring.zero();
        self.decode(v)
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c != zero)
            .map(|(i, _)| i)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b() -> Arc<Semiring> {
        Arc::new(Semiring::boolean())
    }

    fn n2() -> Arc<Semiring> {
        Arc::new(Semiring::truncated_naturals(2).unwrap())
    }

    fn b2() -> FreeModule {
        FreeModule::new(b(), 2).unwrap()
    }

    #[test]
    fn regular_module_validates_through_the_constructor() {
        let r = Semiring::boolean();
        let m = Module::new(Arc::new(r.clone()), 0, r.add_table(), r.mul_table()).unwrap();
        assert!(m.same_tables(&Module::regular(Arc::new(r))));
        assert_eq!(Module::regular(n2()).size(), 3);
    }

    #[test]
    fn mutated_unit_action_is_reported() {
        let f = b2();
        let m = f.module();
        let mut act = m.act_table();
        act[1][f.basis(0)] = f.basis(1);
        let err = Module::new(b(), 0, m.add_table(), act).unwrap_err();
        assert_eq!(
            err,
            Error::Axiom {
                law: Law::UnitAction,
                witness: vec![f.basis(0)]
            }
        );
        assert!(err.to_string().contains("1·v = v violated"));
    }

    #[test]
    fn free_modules() {
        let f = b2();
        assert_eq!(f.module().size(), 4);
        assert_eq!(f.basis(0), 1);
        assert_eq!(f.basis(1), 2);
        for v in 0..4 {
            assert_eq!(f.module().act(1, v), v);
        }
        let n = FreeModule::new(n2(), 1).unwrap();
        assert!(n.module().same_tables(&Module::regular(n2())));
    }

    #[test]
    fn products() {
        let rb = Module::regular(b());
        let p = Module::product(&rb, &rb).unwrap();
        assert!(p.same_tables(b2().module()));
        let rn = Module::regular(n2());
        assert_eq!(
            Module::product(&rn, &rb).unwrap_err(),
            Error::SemiringMismatch
        );
    }

    #[test]
    fn additive_closures() {
        let f = b2();
        let m = f.module();
        assert_eq!(m.additive_closure(&Subset::empty(4)).to_vec(), vec![0]);
        let gens = m.subset(&[1, 2]).unwrap();
        assert_eq!(m.additive_closure(&gens).to_vec(), vec![0, 1, 2, 3]);
        let rn = Module::regular(n2());
        assert_eq!(
            rn.additive_closure(&Subset::singleton(3, 1)).to_vec(),
            vec![0, 1, 2]
        );
    }

    #[test]
    fn generated_submodules() {
        let f = b2();
        let m = f.module();
        assert_eq!(
            m.generated_submodule(&Subset::singleton(4, 3)).to_vec(),
            vec![0, 3]
        );
        assert_eq!(m.generated_submodule(&Subset::empty(4)).to_vec(), vec![0]);
    }

    #[test]
    fn lzs() {
        assert!(b2().module().is_lzs());
        assert!(Module::regular(n2()).is_lzs());
        let f2 = Semiring::new(
            "F2",
            0,
            1,
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, 0], vec![0, 1]],
        )
        .unwrap();
        let m = Module::regular(Arc::new(f2));
        assert_eq!(m.zero_sum_witness(), Some((1, 1)));
    }

    #[test]
    fn submodule_validation() {
        let m = b2().into_module();
        assert!(m.submodule(m.subset(&[0, 1]).unwrap()).is_ok());
        assert!(matches!(
            m.submodule(m.subset(&[0, 1, 2]).unwrap()),
            Err(Error::NotSubmodule(_))
        ));
        assert!(matches!(
            m.submodule(m.subset(&[1]).unwrap()),
            Err(Error::NotSubmodule(_))
        ));
    }

    #[test]
    fn restriction_round_trips() {
        let m = b2().into_module();
        let w = m.generated_submodule(&Subset::singleton(4, 3));
        let r = m.restrict(&w);
        assert_eq!(r.module.size(), 2);
        let local = r.to_local(&Subset::full(4));
        assert_eq!(r.to_ambient(&local), *w.as_subset());
        assert_eq!(r.module.add(1, 1), 1);
    }

    fn zoo_modules() -> Vec<Module> {
        vec![
            b2().into_module(),
            Module::regular(n2()),
            FreeModule::new(n2(), 2).unwrap().into_module(),
            Module::regular(Arc::new(Semiring::truncated_maxplus(2).unwrap())),
        ]
    }

    proptest! {
        #[test]
        fn additive_closure_is_a_closure_operator(pick in 0usize..4, mask in any::<u64>(), extra in any::<u64>()) {
            let m = &zoo_modules()[pick];
            let x = Subset::from_mask(m.size(), mask);
            let y = x.union(&Subset::from_mask(m.size(), extra));
            let cx = m.additive_closure(&x);
            prop_assert!(x.is_subset(&cx));
            prop_assert_eq!(m.additive_closure(&cx), cx.clone());
            prop_assert!(cx.is_subset(&m.additive_closure(&y)));
        }

        #[test]
        fn closure_ignores_generator_order(pick in 0usize..4, mask in any::<u64>(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let m = &zoo_modules()[pick];
            let x = Subset::from_mask(m.size(), mask);
            let mut order = x.to_vec();
            order.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            prop_assert_eq!(m.additive_closure_ordered(&order), m.additive_closure(&x));
        }

        #[test]
        fn generated_submodule_is_least(pick in 0usize..4, mask in any::<u64>()) {
            let m = &zoo_modules()[pick];
            let x = Subset::from_mask(m.size(), mask);
            let g = m.generated_submodule(&x);
            prop_assert!(m.is_submodule(g.as_subset()));
            prop_assert!(x.is_subset(&g));
            for s in Subset::all(m.size()) {
                if x.is_subset(&s) && m.is_submodule(&s) {
                    prop_assert!(g.as_subset().is_subset(&s));
                }
            }
        }
    }

    #[test]
    fn lzs_is_closed_under_submodules_and_products() {
        for m in zoo_modules() {
            assert!(m.is_lzs());
            for s in Subset::all(m.size()) {
                if m.is_submodule(&s) {
                    let sub = m.submodule(s).unwrap();
                    assert!(m.restrict(&sub).module.is_lzs());
                }
            }
            assert!(Module::product(&m, &m).unwrap().is_lzs());
        }
    }
}
