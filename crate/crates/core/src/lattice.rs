//! Summand-absorbing submodules: the SA predicate and closure, enumeration
//! of `SA(V)` and `ΣSA(V)`, relative sets `SA(V; W0, V0)` and chain lengths.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::halo::HaloTable;
use crate::limits::Limits;
use crate::module::{Module, Submodule};
use crate::subset::Subset;

/// Least pair `(x, y)` with `x + y ∈ set` but `x ∉ set` or `y ∉ set`.
pub fn sa_violation(module: &Module, set: &Subset) -> Option<(usize, usize)> {
    let n = module.size();
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| set.contains(module.add(x, y)) && !(set.contains(x) && set.contains(y)))
}

pub fn is_sa(module: &Module, sub: &Submodule) -> bool {
    sa_violation(module, sub.as_subset()).is_none()
}

/// The least SA-submodule containing `set`.
pub fn sa_closure(module: &Module, set: &Subset) -> Submodule {
    let mut current = module.generated_submodule(set);
    loop {
        let mut grown = current.as_subset().clone();
        for x in 0..module.size() {
            for y in x..module.size() {
                if current.contains(module.add(x, y)) {
                    grown.insert(x);
                    grown.insert(y);
                }
            }
        }
        if grown.len() == current.len() {
            return current;
        }
        current = module.generated_submodule(&grown);
    }
}

/// A finite poset of submodules under inclusion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SaLattice {
    /// Sorted by cardinality, then lexicographically by members.
    pub members: Vec<Submodule>,
    /// Cover pairs `(lower, upper)` as indices into `members`.
    pub hasse_edges: Vec<(usize, usize)>,
}

impl SaLattice {
    pub fn from_members(members: impl IntoIterator<Item = Submodule>) -> Self {
        let mut members: Vec<Submodule> = members.into_iter().collect();
        members.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        members.dedup();
        let n = members.len();
        let below = |i: usize, j: usize| {
            members[i]
                .as_subset()
                .is_proper_subset(members[j].as_subset())
        };
        let mut hasse_edges = Vec::new();
        for j in 0..n {
            for i in 0..j {
                if below(i, j) && !(i + 1..j).any(|k| below(i, k) && below(k, j)) {
                    hasse_edges.push((i, j));
                }
            }
        }
        hasse_edges.sort_unstable();
        Self {
            members,
            hasse_edges,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, sub: &Submodule) -> Option<usize> {
        self.members.iter().position(|m| m == sub)
    }

    pub fn contains(&self, sub: &Submodule) -> bool {
        self.index_of(sub).is_some()
    }

    /// The sub-poset on the members satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&Submodule) -> bool) -> Self {
        Self::from_members(self.members.iter().filter(|m| keep(m)).cloned())
    }
}

/// Input for spine-based enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpineSource {
    /// An additive spine `T` of the module.
    Spine(Subset),
    /// `T = M·S` for a spine `M` of the semiring and generators `S`.
    Generators {
        semiring_spine: Subset,
        generators: Subset,
    },
}

impl SpineSource {
    /// Checks the hypotheses and returns the candidate set `T`.
    pub fn candidates(&self, module: &Module) -> Result<Subset> {
        match self {
            SpineSource::Spine(t) => {
                check_domain(t, module.size())?;
                let check = HaloTable::new(module).spine_check(t);
                match check.uncovered {
                    None => Ok(t.clone()),
                    Some(uncovered) => Err(Error::NotASpine { uncovered }),
                }
            }
            SpineSource::Generators {
                semiring_spine,
                generators,
            } => {
                let r = module.semiring();
                check_domain(semiring_spine, r.size())?;
                check_domain(generators, module.size())?;
                crate::halo::require_spine(&Module::regular(r.clone()), semiring_spine)?;
                if !module.generates(generators) {
                    return Err(Error::Precondition(
                        "the generating set does not generate the module".into(),
                    ));
                }
                Ok(module.product_set(semiring_spine, generators))
            }
        }
    }
}

fn check_domain(set: &Subset, size: usize) -> Result<()> {
    if set.domain() != size {
        return Err(Error::Shape(format!(
            "subset over {} elements, carrier has {size}",
            set.domain()
        )));
    }
    Ok(())
}

/// `SA(V)` from the submodules generated by subsets of a spine.
pub fn enumerate_sa(module: &Module, source: &SpineSource, limits: &Limits) -> Result<SaLattice> {
    let t = source.candidates(module)?.to_vec();
    if t.len() > limits.enumeration_cap {
        return Err(Error::EnumerationCap {
            requested: t.len(),
            cap: limits.enumeration_cap,
        });
    }
    let found = (0u64..1 << t.len())
        .into_par_iter()
        .fold(BTreeSet::new, |mut acc, mask| {
            let mut g = Subset::empty(module.size());
            for (bit, &x) in t.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    g.insert(x);
                }
            }
            let w = module.generated_submodule(&g);
            if is_sa(module, &w) {
                acc.insert(w);
            }
            acc
        })
        .reduce(BTreeSet::new, |mut a, mut b| {
            a.append(&mut b);
            a
        });
    Ok(SaLattice::from_members(found))
}

pub const BRUTEFORCE_CAP: usize = 16;

/// `SA(V)` by filtering every subset of the carrier.
pub fn enumerate_sa_bruteforce(module: &Module) -> Result<SaLattice> {
    if module.size() > BRUTEFORCE_CAP {
        return Err(Error::EnumerationCap {
            requested: module.size(),
            cap: BRUTEFORCE_CAP,
        });
    }
    let members = Subset::all(module.size())
        .filter(|s| module.is_submodule(s) && sa_violation(module, s).is_none())
        .map(|s| module.submodule(s).expect("checked"));
    Ok(SaLattice::from_members(members))
}

/// `ΣSA(V)`: closure of `SA(V)` under finite nonempty submodule sums.
pub fn enumerate_sigma_sa(module: &Module, sa: &SaLattice) -> SaLattice {
    let mut all: BTreeSet<Submodule> = sa.members.iter().cloned().collect();
    let mut frontier: Vec<Submodule> = all.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for b in &sa.members {
                let s = module.submodule_sum(a, b);
                if all.insert(s.clone()) {
                    next.push(s);
                }
            }
        }
        frontier = next;
    }
    SaLattice::from_members(all)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    /// Number of strict inclusions.
    pub length: usize,
    /// Member indices along a longest chain.
    pub witness_chain: Vec<usize>,
}

/// A longest strictly increasing chain, via the cover relation.
pub fn longest_chain(poset: &SaLattice) -> ChainReport {
    let n = poset.len();
    if n == 0 {
        return ChainReport {
            length: 0,
            witness_chain: Vec::new(),
        };
    }
    let mut best = vec![0usize; n];
    let mut prev = vec![None; n];
    // edges are sorted by lower index, and lower members come first
    let mut by_upper: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(i, j) in &poset.hasse_edges {
        by_upper[j].push(i);
    }
    for j in 0..n {
        for &i in &by_upper[j] {
            if best[i] + 1 > best[j] {
                best[j] = best[i] + 1;
                prev[j] = Some(i);
            }
        }
    }
    let top = (0..n)
        .max_by(|&a, &b| best[a].cmp(&best[b]).then(b.cmp(&a)))
        .unwrap();
    let mut chain = vec![top];
    let mut at = top;
    while let Some(p) = prev[at] {
        chain.push(p);
        at = p;
    }
    chain.reverse();
    ChainReport {
        length: best[top],
        witness_chain: chain,
    }
}

/// A longest strictly decreasing chain; on a finite poset every descending
/// chain stops, so the length is the only content.
pub fn descending_chain_report(poset: &SaLattice) -> ChainReport {
    let mut r = longest_chain(poset);
    r.witness_chain.reverse();
    r
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetweenReport {
    /// `{W ∈ SA(V) : W ∩ V0 = W0}`.
    pub members: Vec<Submodule>,
    pub chain: ChainReport,
    /// `|M|`.
    pub m: usize,
    /// `|S|`.
    pub s: usize,
}

impl BetweenReport {
    /// `2^(ms)`, saturating.
    pub fn size_bound(&self) -> u128 {
        1u128
            .checked_shl((self.m * self.s) as u32)
            .unwrap_or(u128::MAX)
    }

    pub fn chain_bound(&self) -> usize {
        self.m * self.s
    }

    pub fn within_bounds(&self) -> bool {
        (self.members.len() as u128) <= self.size_bound() && self.chain.length <= self.chain_bound()
    }
}

/// `SA(V; W0, V0)` with its size and chain length.
pub fn sa_between(
    module: &Module,
    sa: &SaLattice,
    v0: &Submodule,
    w0: &Submodule,
    generators: &Subset,
    semiring_spine: &Subset,
) -> Result<BetweenReport> {
    check_domain(generators, module.size())?;
    check_domain(semiring_spine, module.semiring().size())?;
    if let Some((x, y)) = sa_violation(module, w0.as_subset()) {
        return Err(Error::Precondition(format!(
            "W0 is not summand absorbing: {x} + {y} lies in W0"
        )));
    }
    if !w0.is_subset(v0) {
        return Err(Error::Precondition("W0 is not contained in V0".into()));
    }
    let span = module.submodule_sum(v0, &module.generated_submodule(generators));
    if let Some(v) = Subset::full(module.size())
        .difference(span.as_subset())
        .first()
    {
        return Err(Error::Precondition(format!("V0 + <S> misses {v}")));
    }
    crate::halo::require_spine(&Module::regular(module.semiring().clone()), semiring_spine)?;
    let filtered = sa.filter(|w| &w.as_subset().intersection(v0.as_subset()) == w0.as_subset());
    let chain = longest_chain(&filtered);
    Ok(BetweenReport {
        members: filtered.members,
        chain,
        m: semiring_spine.len(),
        s: generators.len(),
    })
}

/// Whether every member of `sa` is generated by its intersection with `t`.
pub fn is_sa_adapted(module: &Module, t: &Subset, sa: &SaLattice) -> Result<bool> {
    check_domain(t, module.size())?;
    if !module.generates(t) {
        return Err(Error::Precondition(
            "the set does not generate the module".into(),
        ));
    }
    Ok(sa
        .members
        .iter()
        .all(|w| &module.generated_submodule(&w.as_subset().intersection(t)) == w))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use proptest::prelude::*;

    use super::*;
    use crate::matrix::MatrixSemiring;
    use crate::module::FreeModule;
    use crate::semiring::Semiring;

    fn b2() -> FreeModule {
        FreeModule::new(Arc::new(Semiring::boolean()), 2).unwrap()
    }

    fn n2() -> Module {
        Module::regular(Arc::new(Semiring::truncated_naturals(2).unwrap()))
    }

    fn m2b() -> MatrixSemiring {
        MatrixSemiring::new(Arc::new(Semiring::boolean()), 2).unwrap()
    }

    fn set(n: usize, xs: &[usize]) -> Subset {
        Subset::from_indices(n, xs.iter().copied()).unwrap()
    }

    #[test]
    fn sa_predicate() {
        let f = b2();
        let v = f.module();
        assert_eq!(sa_violation(v, &set(4, &[0, 3])), Some((1, 2)));
        assert!(is_sa(v, &v.submodule(set(4, &[0, 1])).unwrap()));
        assert!(is_sa(v, &v.full_submodule()));
        assert!(is_sa(v, &v.zero_submodule()));
    }

    #[test]
    fn closure_examples() {
        let f = b2();
        let v = f.module();
        assert_eq!(sa_closure(v, &set(4, &[3])).len(), 4);
        assert_eq!(sa_closure(v, &Subset::empty(4)).to_vec(), vec![0]);
        assert_eq!(sa_closure(v, &set(4, &[1])).to_vec(), vec![0, 1]);
    }

    #[test]
    fn enumeration_examples() {
        let f = b2();
        let v = f.module();
        let lim = Limits::default();
        let sa = enumerate_sa(v, &SpineSource::Spine(set(4, &[1, 2])), &lim).unwrap();
        assert_eq!(sa.len(), 4);
        assert_eq!(sa, enumerate_sa_bruteforce(v).unwrap());

        let n = n2();
        let sa = enumerate_sa(&n, &SpineSource::Spine(set(3, &[1])), &lim).unwrap();
        assert_eq!(
            sa.members.iter().map(|m| m.to_vec()).collect::<Vec<_>>(),
            vec![vec![0], vec![0, 1, 2]]
        );

        let m = m2b();
        let r = Module::regular(m.semiring().clone());
        let d = set(16, &[m.unit(0, 0), m.unit(1, 1)]);
        let sa = enumerate_sa(&r, &SpineSource::Spine(d), &lim).unwrap();
        assert_eq!(sa.len(), 4);
        assert_eq!(sa, enumerate_sa_bruteforce(&r).unwrap());
        // left ideal of matrices with zero second column
        let col = r.generated_submodule(&Subset::singleton(16, m.unit(0, 0)));
        assert!(sa.contains(&col));
        assert!(col
            .iter()
            .all(|x| m.decode(x)[1] == 0 && m.decode(x)[3] == 0));
    }

    #[test]
    fn generator_source_and_errors() {
        let f = b2();
        let v = f.module();
        let lim = Limits::default();
        let src = SpineSource::Generators {
            semiring_spine: Subset::singleton(2, 1),
            generators: set(4, &[1, 2]),
        };
        assert_eq!(enumerate_sa(v, &src, &lim).unwrap().len(), 4);
        let bad = SpineSource::Spine(set(4, &[3]));
        assert_eq!(
            enumerate_sa(v, &bad, &lim).unwrap_err(),
            Error::NotASpine { uncovered: 1 }
        );
        let tight = Limits {
            enumeration_cap: 1,
            ..Limits::default()
        };
        let err = enumerate_sa(v, &SpineSource::Spine(set(4, &[1, 2])), &tight).unwrap_err();
        assert!(matches!(
            err,
            Error::EnumerationCap {
                requested: 2,
                cap: 1
            }
        ));
    }

    #[test]
    fn trivial_module_has_one_sa_submodule() {
        let zero = Module::new(
            Arc::new(Semiring::boolean()),
            0,
            vec![vec![0]],
            vec![vec![0], vec![0]],
        )
        .unwrap();
        let sa = enumerate_sa_bruteforce(&zero).unwrap();
        assert_eq!(sa.len(), 1);
        assert_eq!(longest_chain(&sa).length, 0);
        assert_eq!(descending_chain_report(&sa).length, 0);
    }

    #[test]
    fn sigma_sa_examples() {
        let f = b2();
        let v = f.module();
        let sa = enumerate_sa_bruteforce(v).unwrap();
        let sigma = enumerate_sigma_sa(v, &sa);
        assert_eq!(sigma, sa);
        let n = n2();
        let sa = enumerate_sa_bruteforce(&n).unwrap();
        assert_eq!(enumerate_sigma_sa(&n, &sa).len(), 2);
    }

    #[test]
    fn chains() {
        let f = b2();
        let sa = enumerate_sa_bruteforce(f.module()).unwrap();
        let c = longest_chain(&sa);
        assert_eq!(c.length, 2);
        let sets: Vec<Vec<usize>> = c
            .witness_chain
            .iter()
            .map(|&i| sa.members[i].to_vec())
            .collect();
        assert_eq!(sets, vec![vec![0], vec![0, 1], vec![0, 1, 2, 3]]);
        assert_eq!(descending_chain_report(&sa).length, 2);
        assert_eq!(sa.hasse_edges, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(
            longest_chain(&enumerate_sa_bruteforce(&n2()).unwrap()).length,
            1
        );
    }

    #[test]
    fn between_examples() {
        let f = b2();
        let v = f.module();
        let sa = enumerate_sa_bruteforce(v).unwrap();
        let e1 = v.generated_submodule(&set(4, &[1]));
        let e2 = v.generated_submodule(&set(4, &[2]));
        let one = Subset::singleton(2, 1);
        let s = set(4, &[2]);
        let r = sa_between(v, &sa, &e1, &v.zero_submodule(), &s, &one).unwrap();
        assert_eq!(r.members, vec![v.zero_submodule(), e2]);
        assert_eq!(r.chain.length, 1);
        assert_eq!(r.size_bound(), 2);
        assert!(r.within_bounds());

        let r = sa_between(v, &sa, &e1, &e1, &s, &one).unwrap();
        assert_eq!(r.members, vec![e1.clone(), v.full_submodule()]);

        let diag = v.generated_submodule(&set(4, &[3]));
        let err = sa_between(v, &sa, &v.full_submodule(), &diag, &s, &one).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn adapted_sets() {
        let f = b2();
        let v = f.module();
        let sa = enumerate_sa_bruteforce(v).unwrap();
        assert!(is_sa_adapted(v, &set(4, &[1, 2]), &sa).unwrap());
        assert!(is_sa_adapted(v, &set(4, &[1, 2, 3]), &sa).unwrap());
        assert!(is_sa_adapted(v, &set(4, &[3]), &sa).is_err());
    }

    fn oracle_closure(module: &Module, sa: &SaLattice, x: &Subset) -> Subset {
        sa.members
            .iter()
            .filter(|w| x.is_subset(w.as_subset()))
            .fold(Subset::full(module.size()), |acc, w| {
                acc.intersection(w.as_subset())
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn closure_is_least_sa_superset(mask in 0u64..1 << 16) {
            let m = m2b();
            let r = Module::regular(m.semiring().clone());
            let sa = enumerate_sa_bruteforce(&r).unwrap();
            let x = Subset::from_mask(16, mask);
            let c = sa_closure(&r, &x);
            prop_assert!(is_sa(&r, &c));
            prop_assert_eq!(c.as_subset(), &oracle_closure(&r, &sa, &x));
            prop_assert_eq!(&sa_closure(&r, c.as_subset()), &c);
        }
    }
}
