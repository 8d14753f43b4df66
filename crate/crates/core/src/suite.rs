//! The theorem suite: every halo, spine and SA statement checked by brute
//! force on an instance with declared spine data.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::halo::{
    decompose_with, right_translate, translate_with, von_neumann_regulars, HaloTable,
};
use crate::lattice::{
    descending_chain_report, enumerate_sa, enumerate_sa_bruteforce, enumerate_sigma_sa, is_sa,
    is_sa_adapted, longest_chain, sa_between, sa_closure, SaLattice, SpineSource,
};
use crate::limits::{Limits, Verification};
use crate::linear::LinearMap;
use crate::module::{Module, Restriction, Submodule};
use crate::semiring::Semiring;
use crate::spine::{
    all_spines, free_spine, matrix_composition, matrix_diagonal_spine, monoid_composition,
    monoid_semiring_spine, prime_subsemiring, spine_components, Composition,
};
use crate::subset::Subset;
use crate::zoo::{Construction, ZooInstance};

/// Every check the suite knows, in report order.
pub const THEOREMS: &[&str] = &[
    "oracle",
    "lzs",
    "sa-closure",
    "2.4",
    "2.5",
    "2.6",
    "2.7",
    "2.8",
    "2.9",
    "2.10",
    "2.11",
    "2.13",
    "2.14",
    "2.15",
    "2.18",
    "3.3",
    "3.4",
    "3.5",
    "3.6",
    "3.7",
    "3.8",
    "3.9",
    "3.10",
    "3.13",
    "4.1",
    "4.4",
    "4.6",
    "4.7",
    "9.12",
];

/// Carriers up to this size get every subset; larger ones a seeded sample.
pub const EXHAUSTIVE_SUBSETS: usize = 16;
const SAMPLED_SUBSETS: usize = 256;
/// Per-map and per-translation cap on subsets drawn from a family.
const PER_ITEM_SUBSETS: usize = 4096;
const PAIR_SUBSETS: usize = 48;
const MAX_SUBMODULES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Observations where a literal statement differs from what was checked.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub findings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub instance: String,
    pub semiring: String,
    pub semiring_size: usize,
    pub module_size: usize,
    pub verification: Verification,
    pub seed: u64,
    pub sa_size: usize,
    pub sigma_sa_size: usize,
    pub theorems: Vec<TheoremReport>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.theorems.iter().all(|t| t.status != Status::Fail)
    }

    pub fn theorem(&self, id: &str) -> Option<&TheoremReport> {
        self.theorems.iter().find(|t| t.id == id)
    }
}

#[derive(Debug, Clone, Default)]
pub struct SuiteOptions {
    pub limits: Limits,
    /// Restricts the run to these ids; `None` runs everything.
    pub theorems: Option<Vec<String>>,
    /// Records per-theorem wall-clock times (makes reports nondeterministic).
    pub timings: bool,
}

/// Checks theorem ids against the registry, returning them in report order.
pub fn select_theorems(filter: Option<&[String]>) -> Result<Vec<&'static str>> {
    let Some(ids) = filter else {
        return Ok(THEOREMS.to_vec());
    };
    if let Some(bad) = ids.iter().find(|id| !THEOREMS.contains(&id.as_str())) {
        return Err(Error::Precondition(format!("unknown theorem id {bad}")));
    }
    Ok(THEOREMS
        .iter()
        .copied()
        .filter(|t| ids.iter().any(|id| id == t))
        .collect())
}

/// Runs the suite on every instance concurrently; reports come back sorted by name.
pub fn run_checks(instances: &[ZooInstance], options: &SuiteOptions) -> Result<Vec<CheckReport>> {
    select_theorems(options.theorems.as_deref())?;
    let mut reports = instances
        .par_iter()
        .map(|inst| check_theorem_suite(inst, options))
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by(|a, b| a.instance.cmp(&b.instance));
    Ok(reports)
}

pub fn check_theorem_suite(inst: &ZooInstance, options: &SuiteOptions) -> Result<CheckReport> {
    let ids = select_theorems(options.theorems.as_deref())?;
    let limits = &options.limits;
    let v: &Module = &inst.module;
    let r: &Semiring = &inst.semiring;
    let reg = Module::regular(inst.semiring.clone());
    let sa = enumerate_sa(v, &SpineSource::Spine(inst.declared_spine.clone()), limits)?;
    let sigma = enumerate_sigma_sa(v, &sa);
    let ctx = Ctx {
        inst,
        limits,
        v,
        r,
        reg: &reg,
        vt: HaloTable::new(v),
        rt: HaloTable::new(&reg),
        submodules: submodule_sample(inst, &sa, limits),
        ms: v.product_set(&inst.semiring_spine, &inst.declared_generators),
        sa,
        sigma,
    };
    let mut theorems = Vec::with_capacity(ids.len());
    for id in ids {
        let start = Instant::now();
        let check = ctx.run(id)?;
        let mut report = check.into_report(id);
        if options.timings {
            report.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
        }
        theorems.push(report);
    }
    Ok(CheckReport {
        instance: inst.name.clone(),
        semiring: r.name().to_string(),
        semiring_size: r.size(),
        module_size: v.size(),
        verification: v.verification(),
        seed: limits.seed,
        sa_size: ctx.sa.len(),
        sigma_sa_size: ctx.sigma.len(),
        theorems,
    })
}

/// Accumulates checks; the first failure's witness is kept.
#[derive(Debug, Default)]
struct Check {
    checked: u64,
    witness: Option<String>,
    notes: Vec<String>,
    findings: Vec<String>,
    skipped: Option<String>,
}

impl Check {
    fn skip(reason: impl Into<String>) -> Self {
        Self {
            skipped: Some(reason.into()),
            ..Self::default()
        }
    }

    fn expect(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    fn finding(&mut self, finding: impl Into<String>) {
        self.findings.push(finding.into());
    }

    fn into_report(self, id: &str) -> TheoremReport {
        let status = if self.skipped.is_some() {
            Status::Skipped
        } else if self.witness.is_some() {
            Status::Fail
        } else {
            Status::Pass
        };
        TheoremReport {
            id: id.to_string(),
            status,
            reason: self.skipped,
            checked: self.checked,
            witness: self.witness,
            notes: self.notes,
            findings: self.findings,
            elapsed_ms: None,
        }
    }
}

/// Tally of a literal statement that is stronger than what holds.
struct Counter {
    count: usize,
    first: Option<String>,
}

impl Counter {
    fn new() -> Self {
        Self {
            count: 0,
            first: None,
        }
    }

    fn hit(&mut self, witness: impl FnOnce() -> String) {
        self.count += 1;
        if self.first.is_none() {
            self.first = Some(witness());
        }
    }
}

fn fnv(text: &str) -> u64 {
    text.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, small: bool) -> Subset {
    let mut s = Subset::empty(n);
    if small {
        for _ in 0..rng.random_range(1..=3) {
            s.insert(rng.random_range(0..n));
        }
    } else {
        for x in 0..n {
            if rng.random_bool(0.5) {
                s.insert(x);
            }
        }
    }
    s
}

/// Every subset of small carriers; empty, full and seeded random ones above.
fn subset_family(n: usize, rng: &mut ChaCha8Rng) -> Vec<Subset> {
    if n <= EXHAUSTIVE_SUBSETS {
        return Subset::all(n).collect();
    }
    let mut out = vec![Subset::empty(n), Subset::full(n)];
    for k in 0..SAMPLED_SUBSETS {
        out.push(random_subset(rng, n, k % 2 == 1));
    }
    out
}

/// At most `cap` members, evenly spread over the family.
fn thin<T>(items: &[T], cap: usize) -> impl Iterator<Item = &T> {
    let step = items.len().div_ceil(cap).max(1);
    items.iter().step_by(step)
}

fn elements_sample(n: usize, rng: &mut ChaCha8Rng, cap: usize) -> Vec<usize> {
    if n <= cap {
        (0..n).collect()
    } else {
        let mut out: Vec<usize> = (0..cap).map(|_| rng.random_range(0..n)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn submodule_sample(inst: &ZooInstance, sa: &SaLattice, limits: &Limits) -> Vec<Submodule> {
    let v = &inst.module;
    let mut all: Vec<Submodule> = if v.size() <= EXHAUSTIVE_SUBSETS {
        Subset::all(v.size())
            .filter(|s| v.is_submodule(s))
            .map(|s| v.submodule(s).expect("checked"))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(limits.seed ^ fnv(&inst.name) ^ fnv("submodules"));
        let mut found: Vec<Submodule> = sa.members.clone();
        found.push(v.zero_submodule());
        found.push(v.full_submodule());
        for _ in 0..64 {
            found.push(v.generated_submodule(&random_subset(&mut rng, v.size(), true)));
        }
        found
    };
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all.dedup();
    all
}

fn local(embedding: &[usize], set: &Subset) -> Subset {
    let mut out = Subset::empty(embedding.len());
    for (i, &e) in embedding.iter().enumerate() {
        if set.contains(e) {
            out.insert(i);
        }
    }
    out
}

fn ambient(embedding: &[usize], size: usize, set: &Subset) -> Subset {
    let mut out = Subset::empty(size);
    for i in set {
        out.insert(embedding[i]);
    }
    out
}

/// Greedily drops elements of `set` while it still generates `target`.
fn minimal_generators(v: &Module, set: &Subset, target: &Submodule) -> Subset {
    let mut out = set.clone();
    for x in set {
        out.remove(x);
        if &v.generated_submodule(&out) != target {
            out.insert(x);
        }
    }
    out
}

struct Ctx<'a> {
    inst: &'a ZooInstance,
    limits: &'a Limits,
    v: &'a Module,
    r: &'a Semiring,
    reg: &'a Module,
    vt: HaloTable<'a>,
    rt: HaloTable<'a>,
    sa: SaLattice,
    sigma: SaLattice,
    submodules: Vec<Submodule>,
    /// `M·S`.
    ms: Subset,
}

impl Ctx<'_> {
    fn rng(&self, id: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.limits.seed ^ fnv(&self.inst.name) ^ fnv(id))
    }

    fn run(&self, id: &str) -> Result<Check> {
        Ok(match id {
            "oracle" => self.oracle()?,
            "lzs" => self.lzs()?,
            "sa-closure" => self.closure(),
            "2.4" => self.halo_identities(),
            "2.5" => self.left_invertibles(),
            "2.6" => self.idempotent_halos(),
            "2.7" => self.regular_halo(),
            "2.8" => self.decomposition(),
            "2.9" => self.generation_by_ms(),
            "2.10" => self.generator_bound(),
            "2.11" => self.invertible_generation()?,
            "2.13" => self.subsemiring_product()?,
            "2.14" => self.diagonal_spine()?,
            "2.15" => self.diagonal_generation()?,
            "2.18" => self.monoid_spine()?,
            "3.3" => self.spine_generation(),
            "3.4" => self.submodule_halos(),
            "3.5" => self.halo_in_submodule(),
            "3.6" => self.family_halos(),
            "3.7" => self.free_spines()?,
            "3.8" => self.functoriality()?,
            "3.9" => self.right_translation(),
            "3.10" => self.unit_translation(),
            "3.13" => self.composition_product()?,
            "4.1" => self.relative_bound()?,
            "4.4" => self.sigma_bound(),
            "4.6" => self.finitely_generated_sums()?,
            "4.7" => self.sigma_spines(),
            "9.12" => self.chains()?,
            other => return Err(Error::Precondition(format!("unknown theorem id {other}"))),
        })
    }

    fn v_family(&self, id: &str) -> Vec<Subset> {
        subset_family(self.v.size(), &mut self.rng(id))
    }

    fn r_family(&self, id: &str) -> Vec<Subset> {
        subset_family(self.r.size(), &mut self.rng(id))
    }

    fn restriction(&self, w: &Submodule) -> Restriction {
        self.v.restrict(w)
    }

    fn oracle(&self) -> Result<Check> {
        let v = self.v;
        if v.size() > EXHAUSTIVE_SUBSETS {
            return Ok(Check::skip(format!(
                "carrier has {} elements; the subset oracle runs up to {EXHAUSTIVE_SUBSETS}",
                v.size()
            )));
        }
        let mut c = Check::default();
        let brute = enumerate_sa_bruteforce(v)?;
        c.expect(brute == self.sa, || {
            format!(
                "spine enumeration found {} members, brute force {}",
                self.sa.len(),
                brute.len()
            )
        });
        let via_ms = enumerate_sa(
            v,
            &SpineSource::Generators {
                semiring_spine: self.inst.semiring_spine.clone(),
                generators: self.inst.declared_generators.clone(),
            },
            self.limits,
        )?;
        c.expect(via_ms == brute, || {
            format!(
                "M·S enumeration found {} members, brute force {}",
                via_ms.len(),
                brute.len()
            )
        });
        c.note(format!("|SA(V)| = {}", brute.len()));
        Ok(c)
    }

    fn lzs(&self) -> Result<Check> {
        let v = self.v;
        let mut c = Check::default();
        if let Some((x, y)) = v.zero_sum_witness() {
            c.note(format!("module is not LZS: {x} + {y} = 0"));
            return Ok(c);
        }
        c.note("module is LZS");
        for w in &self.submodules {
            c.expect(self.restriction(w).module.is_lzs(), || {
                format!("submodule {w:?} is not LZS")
            });
        }
        if v.size() <= EXHAUSTIVE_SUBSETS {
            let p = Module::product(v, v)?;
            c.expect(p.is_lzs(), || "V × V is not LZS".into());
        } else {
            c.note("product V × V not formed above 16 elements");
        }
        if self.r.is_additively_idempotent() {
            c.expect(self.reg.is_lzs(), || {
                "idempotent semiring with a zero sum".into()
            });
        }
        Ok(c)
    }

    fn closure(&self) -> Check {
        let v = self.v;
        let mut c = Check::default();
        let family = self.v_family("sa-closure");
        let oracle = |x: &Subset| {
            self.sa
                .members
                .iter()
                .filter(|w| x.is_subset(w.as_subset()))
                .fold(Subset::full(v.size()), |acc, w| {
                    acc.intersection(w.as_subset())
                })
        };
        for x in &family {
            let cl = sa_closure(v, x);
            c.expect(is_sa(v, &cl) && x.is_subset(cl.as_subset()), || {
                format!("closure of {x} is {cl:?}, not an SA superset")
            });
            c.expect(cl.as_subset() == &oracle(x), || {
                format!("closure of {x} differs from the intersection of its SA supersets")
            });
            c.expect(sa_closure(v, cl.as_subset()) == cl, || {
                format!("closure of {x} is not idempotent")
            });
            if let Some(y) = Subset::full(v.size()).difference(x).first() {
                let mut bigger = x.clone();
                bigger.insert(y);
                c.expect(cl.is_subset(&sa_closure(v, &bigger)), || {
                    format!("closure is not monotone from {x} to {bigger}")
                });
            }
        }
        c
    }

    fn halo_identities(&self) -> Check {
        let (r, rt) = (self.r, &self.rt);
        let mut c = Check::default();
        let mut rng = self.rng("2.4");
        let family = subset_family(r.size(), &mut rng);
        let zero = Subset::singleton(r.size(), r.zero());
        c.expect(rt.members(&zero) == zero, || "halo({0}) ≠ {0}".into());
        let singles: Vec<Subset> = r
            .elements()
            .map(|x| rt.members(&Subset::singleton(r.size(), x)))
            .collect();
        let extensions = elements_sample(r.size(), &mut rng, 8);
        let mut literal = Counter::new();
        for m in &family {
            let h = rt.members(m);
            c.expect(m.is_subset(&h), || format!("{m} ⊄ halo({m})"));
            for &x in &extensions {
                let mut mx = m.clone();
                mx.insert(x);
                let hx = rt.members(&mx);
                c.expect(h.is_subset(&hx), || {
                    format!("halo not monotone from {m} to {mx}")
                });
                c.expect(hx == h.union(&singles[x]), || {
                    format!("halo({mx}) ≠ halo({m}) ∪ halo({{{x}}})")
                });
            }
            let mut m0 = m.clone();
            m0.remove(r.zero());
            let h0 = rt.members(&m0);
            let mut expected = h.clone();
            expected.remove(r.zero());
            c.expect(h0 == expected, || {
                format!("halo({m} ∖ {{0}}) ≠ halo({m}) ∖ {{0}}")
            });
            if h0 != h {
                literal.hit(|| m.to_string());
            }
        }
        if r.size() > EXHAUSTIVE_SUBSETS {
            for pair in family.chunks(2) {
                if let [a, b] = pair {
                    c.expect(
                        rt.members(&a.union(b)) == rt.members(a).union(&rt.members(b)),
                        || format!("halo({a} ∪ {b}) ≠ halo({a}) ∪ halo({b})"),
                    );
                }
            }
        }
        if literal.count > 0 {
            c.finding(format!(
                "halo(M ∖ {{0}}) = halo(M) holds only up to the element 0: it fails for {} subsets \
                 containing 0 (first: M = {}); halo(M ∖ {{0}}) = halo(M) ∖ {{0}} holds throughout",
                literal.count,
                literal.first.unwrap_or_default()
            ));
        }
        c
    }

    fn left_invertibles(&self) -> Check {
        let r = self.r;
        let mut c = Check::default();
        let h = self.rt.members(&Subset::singleton(r.size(), r.one()));
        c.expect(h == r.left_invertibles(), || {
            format!(
                "halo({{1}}) = {h}, left invertibles = {}",
                r.left_invertibles()
            )
        });
        c
    }

    fn idempotent_halos(&self) -> Check {
        let r = self.r;
        let mut c = Check::default();
        for e in &r.idempotents() {
            let h = self.rt.members(&Subset::singleton(r.size(), e));
            let mut direct = Subset::empty(r.size());
            for x in r.elements() {
                if r.elements()
                    .any(|y| r.mul(y, x) == e && r.mul(r.mul(x, y), x) == x)
                {
                    direct.insert(x);
                }
            }
            c.expect(h == direct, || {
                format!("halo({{{e}}}) = {h}, double scan gives {direct}")
            });
        }
        c
    }

    fn regular_halo(&self) -> Check {
        let r = self.r;
        let mut c = Check::default();
        let h = self.rt.members(&r.idempotents());
        let vn = von_neumann_regulars(r);
        c.expect(h == vn, || {
            format!("halo(Id) = {h}, regular elements = {vn}")
        });
        c
    }

    fn decomposition(&self) -> Check {
        let r = self.r;
        let mut c = Check::default();
        let mut overlap = Counter::new();
        let mut not_all_regular = Counter::new();
        for m in &self.r_family("2.8") {
            let d = decompose_with(&self.rt, r, m);
            let whole = self.rt.members(m);
            c.expect(!d.regular_part.intersects(&d.irregular_part), || {
                format!("parts of halo({m}) overlap")
            });
            c.expect(d.regular_part.union(&d.irregular_part) == whole, || {
                format!("parts of halo({m}) do not cover it")
            });
            c.expect(d.regular_part.is_subset(&d.regular_elements), || {
                format!("halo({m} ∩ Id) has a non-regular element")
            });
            if !d.overlap.is_empty() {
                overlap.hit(|| format!("M = {m}, common elements {}", d.overlap));
            }
            if d.regular_part != d.regular_elements {
                not_all_regular.hit(|| {
                    format!(
                        "M = {m}, regular elements of halo(M) not in halo(M ∩ Id): {}",
                        d.regular_elements.difference(&d.regular_part)
                    )
                });
            }
        }
        if overlap.count > 0 {
            c.finding(format!(
                "halo(M ∩ Id) and halo(M ∖ Id) intersect for {} subsets ({}); the irregular part is \
                 reported with the overlap removed",
                overlap.count,
                overlap.first.unwrap_or_default()
            ));
        }
        if not_all_regular.count > 0 {
            c.finding(format!(
                "halo(M ∩ Id) is smaller than the set of regular elements of halo(M) for {} subsets ({})",
                not_all_regular.count,
                not_all_regular.first.unwrap_or_default()
            ));
        }
        c
    }

    fn generation_by_ms(&self) -> Check {
        let mut c = Check::default();
        for w in &self.sa.members {
            let g = self
                .v
                .generated_submodule(&w.as_subset().intersection(&self.ms));
            c.expect(&g == w, || format!("W = {w:?} but <W ∩ MS> = {g:?}"));
        }
        c
    }

    fn generator_bound(&self) -> Check {
        let mut c = Check::default();
        let bound = self.inst.semiring_spine.len() * self.inst.declared_generators.len();
        let mut largest = 0;
        for w in &self.sa.members {
            let g = minimal_generators(self.v, &w.as_subset().intersection(&self.ms), w);
            largest = largest.max(g.len());
            c.expect(
                g.len() <= bound && &self.v.generated_submodule(&g) == w,
                || format!("W = {w:?} needs generators {g}, bound {bound}"),
            );
        }
        c.note(format!(
            "largest generating set used: {largest}, bound |M|·|S| = {bound}"
        ));
        c
    }

    fn invertible_generation(&self) -> Result<Check> {
        let (r, v) = (self.r, self.v);
        let units = r.left_invertibles();
        if r.additive_closure(&units).len() != r.size() {
            return Ok(Check::skip(
                "the semiring is not additively generated by its left invertible elements",
            ));
        }
        let mut c = Check::default();
        let mut sets: Vec<Subset> = if v.size() <= EXHAUSTIVE_SUBSETS {
            Subset::all(v.size()).filter(|s| v.generates(s)).collect()
        } else {
            let mut rng = self.rng("2.11");
            (0..SAMPLED_SUBSETS)
                .map(|k| random_subset(&mut rng, v.size(), k % 2 == 1))
                .filter(|s| v.generates(s))
                .collect()
        };
        sets.push(self.inst.declared_generators.clone());
        for s in &sets {
            c.expect(is_sa_adapted(v, s, &self.sa)?, || {
                format!("generating set {s} is not SA-adapted")
            });
        }
        c.note(format!("{} generating sets checked", sets.len()));
        Ok(c)
    }

    /// The factorization of `R` this instance offers, with the factor spines it implies.
    fn factorization(&self) -> Result<Option<(Composition, Subset, Subset, Subset)>> {
        Ok(match &self.inst.construction {
            Construction::Matrix {
                matrix, base_spine, ..
            } => {
                let comp = matrix_composition(matrix)?;
                let units = Subset::from_indices(
                    self.r.size(),
                    (0..matrix.n()).map(|i| matrix.unit(i, i)),
                )?;
                let scalars = ambient_scalars(self.r.size(), base_spine, |a| matrix.scalar(a));
                let m1 = local(&comp.left().embedding, &units);
                let m2 = local(&comp.right().embedding, &scalars);
                let expected = matrix_diagonal_spine(matrix, base_spine)?;
                Some((comp, m1, m2, expected))
            }
            Construction::MonoidSemiring {
                semiring,
                base_spine,
                monoid_spine,
            } => {
                let comp = monoid_composition(semiring)?;
                let image = semiring.monoid_image(monoid_spine);
                let scalars = ambient_scalars(self.r.size(), base_spine, |a| semiring.scalar(a));
                let m1 = local(&comp.left().embedding, &image);
                let m2 = local(&comp.right().embedding, &scalars);
                let expected = monoid_semiring_spine(semiring, base_spine, monoid_spine)?;
                Some((comp, m1, m2, expected))
            }
            _ if self.r.is_commutative() => {
                let full = Subset::full(self.r.size());
                let comp = Composition::subsemirings(&self.inst.semiring, &full, &full)?;
                let m = self.inst.semiring_spine.clone();
                let expected = self.r.product_set(&m, &m);
                let (m1, m2) = (
                    local(&comp.left().embedding, &m),
                    local(&comp.right().embedding, &m),
                );
                Some((comp, m1, m2, expected))
            }
            _ => None,
        })
    }

    fn subsemiring_product(&self) -> Result<Check> {
        let Some((comp, m1, m2, expected)) = self.factorization()? else {
            return Ok(Check::skip(
                "no commuting factorization of the semiring is known",
            ));
        };
        let mut c = Check::default();
        let t1 = HaloTable::new(&comp.left().module);
        let t2 = HaloTable::new(&comp.right().module);
        let product = comp.compose(&m1, &m2);
        c.expect(product == expected, || {
            format!("M1·M2 = {product}, expected {expected}")
        });
        c.expect(t1.is_spine(&m1) && t2.is_spine(&m2), || {
            "factor spines fail".into()
        });
        let inclusion = comp.compose(&t1.members(&m1), &t2.members(&m2));
        c.expect(inclusion.is_subset(&self.rt.members(&product)), || {
            format!("halo(M1)·halo(M2) ⊄ halo(M1·M2) for M1·M2 = {product}")
        });
        c.expect(self.rt.is_spine(&product), || {
            format!("M1·M2 = {product} is not a spine")
        });
        c.note(format!(
            "factors of sizes {} and {}",
            comp.left().module.size(),
            comp.right().module.size()
        ));
        Ok(c)
    }

    fn diagonal_spine(&self) -> Result<Check> {
        let Construction::Matrix {
            matrix,
            base_spine,
            translate,
        } = &self.inst.construction
        else {
            return Ok(Check::skip("not a matrix semiring"));
        };
        let mut c = Check::default();
        let base = Module::regular(matrix.base().clone());
        let mut spines = all_spines(&base).unwrap_or_default();
        if !spines.contains(base_spine) {
            spines.push(base_spine.clone());
        }
        for n in &spines {
            let d = matrix_diagonal_spine(matrix, n)?;
            c.expect(self.rt.is_spine(&d), || {
                format!("diagonal set from N = {n} is not a spine")
            });
        }
        if translate.is_none() {
            let d = matrix_diagonal_spine(matrix, base_spine)?;
            c.expect(d == self.inst.semiring_spine, || {
                "declared spine is not the diagonal one".into()
            });
        }
        c.note(format!("{} spines of the base checked", spines.len()));
        Ok(c)
    }

    fn diagonal_generation(&self) -> Result<Check> {
        let Construction::Matrix {
            matrix, base_spine, ..
        } = &self.inst.construction
        else {
            return Ok(Check::skip("not a matrix semiring"));
        };
        let mut c = Check::default();
        let d = matrix_diagonal_spine(matrix, base_spine)?;
        let bound = matrix.n() * base_spine.len();
        for w in &self.sa.members {
            let g = w.as_subset().intersection(&d);
            c.expect(
                g.len() <= bound && &self.v.generated_submodule(&g) == w,
                || format!("W = {w:?} is not generated by W ∩ diag(N) = {g}"),
            );
        }
        Ok(c)
    }

    fn monoid_spine(&self) -> Result<Check> {
        let Construction::MonoidSemiring {
            semiring: ms,
            base_spine,
            monoid_spine,
        } = &self.inst.construction
        else {
            return Ok(Check::skip("not a monoid semiring"));
        };
        let mut c = Check::default();
        let monoid = ms.monoid();
        c.expect(monoid.is_monoid_spine(monoid_spine), || {
            "declared monoid spine fails".into()
        });
        let mut spines: Vec<Subset> = if monoid.size() <= EXHAUSTIVE_SUBSETS {
            Subset::all(monoid.size())
                .filter(|t| monoid.is_monoid_spine(t))
                .collect()
        } else {
            Vec::new()
        };
        if !spines.contains(monoid_spine) {
            spines.push(monoid_spine.clone());
        }
        for t in &spines {
            let s = monoid_semiring_spine(ms, base_spine, t)?;
            c.expect(self.rt.is_spine(&s), || {
                format!("N·T for T = {t} is not a spine")
            });
        }
        c.note(format!("{} monoid spines checked", spines.len()));

        // inside C[S]: halo(T) = halo(S) = S
        let over_c = ms.with_coefficients_in(&prime_subsemiring(ms.base()));
        let (sub, embedding) = self.r.subsemiring(&over_c, "C[S]")?;
        let r1 = Module::regular(std::sync::Arc::new(sub));
        let t1 = HaloTable::new(&r1);
        let image_s = ms.monoid_image(&Subset::full(monoid.size()));
        let ht = ambient(
            &embedding,
            self.r.size(),
            &t1.members(&local(&embedding, &ms.monoid_image(monoid_spine))),
        );
        let hs = ambient(
            &embedding,
            self.r.size(),
            &t1.members(&local(&embedding, &image_s)),
        );
        if ht != image_s || hs != image_s {
            c.finding(format!(
                "in C[S], halo(T) = {ht} and halo(S) = {hs} while S = {image_s}; the three sets are not all equal"
            ));
        }
        Ok(c)
    }

    fn spine_generation(&self) -> Check {
        let mut c = Check::default();
        let t = &self.inst.declared_spine;
        for w in &self.sa.members {
            let wt = w.as_subset().intersection(t);
            c.expect(&self.v.generated_submodule(&wt) == w, || {
                format!("W = {w:?} is not generated by W ∩ T")
            });
            let res = self.restriction(w);
            let table = HaloTable::new(&res.module);
            c.expect(table.is_spine(&res.to_local(&wt)), || {
                format!("W ∩ T = {wt} is not a spine of W = {w:?}")
            });
        }
        c
    }

    fn submodule_tables(&self) -> Vec<Restriction> {
        self.submodules
            .iter()
            .take(MAX_SUBMODULES)
            .map(|w| self.restriction(w))
            .collect()
    }

    fn submodule_halos(&self) -> Check {
        let mut c = Check::default();
        let restrictions = self.submodule_tables();
        let tables: Vec<HaloTable> = restrictions
            .iter()
            .map(|r| HaloTable::new(&r.module))
            .collect();
        for s in &self.v_family("3.4") {
            let hv = self.vt.members(s);
            for ((res, table), w) in restrictions.iter().zip(&tables).zip(&self.submodules) {
                let ws = w.as_subset().intersection(s);
                let lhs = w.as_subset().intersection(&hv);
                let mid = res.to_ambient(&table.members(&res.to_local(&ws)));
                let rhs = self.vt.members(&ws);
                c.expect(lhs == mid && mid == rhs, || {
                    format!("S = {s}, W = {w:?}: W ∩ hal(S) = {lhs}, hal_W(W ∩ S) = {mid}, hal(W ∩ S) = {rhs}")
                });
            }
        }
        c.note(format!("{} submodules", restrictions.len()));
        c
    }

    fn halo_in_submodule(&self) -> Check {
        let mut c = Check::default();
        let mut rng = self.rng("3.5");
        for res in self.submodule_tables() {
            let table = HaloTable::new(&res.module);
            for s in subset_family(res.module.size(), &mut rng) {
                let inside = res.to_ambient(&table.members(&s));
                let outside = self.vt.members(&res.to_ambient(&s));
                c.expect(inside == outside, || {
                    format!(
                        "S = {}: halo in W = {inside}, halo in V = {outside}",
                        res.to_ambient(&s)
                    )
                });
            }
        }
        c
    }

    fn family_halos(&self) -> Check {
        let v = self.v;
        let mut c = Check::default();
        let restrictions = self.submodule_tables();
        let tables: Vec<HaloTable> = restrictions
            .iter()
            .map(|r| HaloTable::new(&r.module))
            .collect();
        let family = self.v_family("3.6");
        let probes: Vec<&Subset> = thin(&family, PAIR_SUBSETS).collect();
        let t = &self.inst.declared_spine;
        let n = restrictions.len();
        for i in 0..n {
            for j in i..n {
                let (wi, wj) = (&self.submodules[i], &self.submodules[j]);
                for x in &probes {
                    let si = wi.as_subset().intersection(x);
                    let sj = wj.as_subset().intersection(x);
                    let hi = restrictions[i]
                        .to_ambient(&tables[i].members(&restrictions[i].to_local(&si)));
                    let hj = restrictions[j]
                        .to_ambient(&tables[j].members(&restrictions[j].to_local(&sj)));
                    let whole = self.vt.members(&si.union(&sj));
                    c.expect(hi.union(&hj) == whole, || {
                        format!("hal_W1({si}) ∪ hal_W2({sj}) ≠ hal_V of the union")
                    });
                }
                if v.submodule_sum(wi, wj).len() == v.size() {
                    let candidates = [
                        (wi.as_subset().clone(), wj.as_subset().clone()),
                        (
                            wi.as_subset().intersection(t),
                            wj.as_subset().intersection(t),
                        ),
                    ];
                    for (si, sj) in candidates {
                        let spine_i = tables[i].is_spine(&restrictions[i].to_local(&si));
                        let spine_j = tables[j].is_spine(&restrictions[j].to_local(&sj));
                        if spine_i && spine_j {
                            c.expect(self.vt.is_spine(&si.union(&sj)), || {
                                format!("{si} ∪ {sj} is not a spine though W1 + W2 = V")
                            });
                        }
                    }
                }
            }
        }
        c
    }

    fn free_spines(&self) -> Result<Check> {
        let Construction::Free(free) = &self.inst.construction else {
            return Ok(Check::skip("not presented as a free module"));
        };
        let mut c = Check::default();
        let mut spines = all_spines(self.reg).unwrap_or_default();
        if !spines.contains(&self.inst.semiring_spine) {
            spines.push(self.inst.semiring_spine.clone());
        }
        let picks: Vec<Vec<usize>> = {
            let k = spines.len();
            let combos = k.pow(free.rank() as u32);
            let mut rng = self.rng("3.7");
            (0..combos.min(256))
                .map(|idx| {
                    if combos <= 256 {
                        (0..free.rank())
                            .map(|i| idx / k.pow(i as u32) % k)
                            .collect()
                    } else {
                        (0..free.rank()).map(|_| rng.random_range(0..k)).collect()
                    }
                })
                .collect()
        };
        for pick in &picks {
            let comps: Vec<Subset> = pick.iter().map(|&i| spines[i].clone()).collect();
            let s = free_spine(free, &comps)?;
            c.expect(self.vt.is_spine(&s), || {
                format!("⋃ M_i v_i = {s} is not a spine")
            });
            c.expect(s.iter().all(|x| free.support(x).len() <= 1), || {
                format!("{s} has an element with two nonzero coordinates")
            });
            let back = spine_components(free, &s);
            for (i, (m, b)) in comps.iter().zip(&back).enumerate() {
                c.expect(m.is_subset(b) && self.rt.is_spine(b), || {
                    format!("component {i} of {s} is {b}, not a spine containing {m}")
                });
            }
        }
        if let Ok(all) = all_spines(self.v) {
            let mixed = all
                .iter()
                .filter(|s| s.iter().any(|x| free.support(x).len() > 1))
                .count();
            if mixed > 0 {
                c.finding(format!(
                    "{mixed} of the {} additive spines of V contain an element with two or more nonzero \
                     coordinates, so not every spine is a union of sets M_i v_i; every spine built \
                     from spines M_i was confirmed",
                    all.len()
                ));
            }
        }
        Ok(c)
    }

    fn linear_maps(&self) -> Result<Vec<(String, LinearMap, bool)>> {
        let v = std::sync::Arc::new(self.v.clone());
        let reg = std::sync::Arc::new(self.reg.clone());
        let mut maps = vec![(
            "identity".to_string(),
            LinearMap::identity(v.clone()),
            false,
        )];
        match &self.inst.construction {
            Construction::Free(free) => {
                for i in 0..free.rank() {
                    let m = LinearMap::from_fn(v.clone(), reg.clone(), |x| free.decode(x)[i])?;
                    maps.push((format!("projection {i}"), m, true));
                }
                let r = self.r;
                let sum = LinearMap::from_fn(v.clone(), reg.clone(), |x| r.sum(free.decode(x)))?;
                maps.push(("coordinate sum".into(), sum, true));
                let swap = LinearMap::from_fn(v.clone(), v.clone(), |x| {
                    let mut c = free.decode(x);
                    c.reverse();
                    free.encode(&c)
                })?;
                maps.push(("coordinate reversal".into(), swap, false));
            }
            c if c.is_regular() => {
                let mut rng = self.rng("3.8");
                for t in elements_sample(self.r.size(), &mut rng, 16) {
                    let r = self.r;
                    let m = LinearMap::from_fn(v.clone(), v.clone(), |x| r.mul(x, t))?;
                    maps.push((format!("right multiplication by {t}"), m, false));
                }
            }
            _ => {}
        }
        Ok(maps)
    }

    fn functoriality(&self) -> Result<Check> {
        let mut c = Check::default();
        let family = self.v_family("3.8");
        let maps = self.linear_maps()?;
        for (name, phi, to_r) in &maps {
            let target = if *to_r { &self.rt } else { &self.vt };
            let image = phi.image();
            for s in thin(&family, PER_ITEM_SUBSETS) {
                let fs = phi.image_of(s);
                let h_fs = target.members(&fs);
                c.expect(phi.image_of(&self.vt.members(s)).is_subset(&h_fs), || {
                    format!("{name}: φ(halo({s})) ⊄ halo(φ({s}))")
                });
                if self.vt.is_spine(s) {
                    let closure = target.module().additive_closure(&h_fs);
                    c.expect(image.as_subset().is_subset(&closure), || {
                        format!("{name}: φ({s}) is not a spine of φ(V)")
                    });
                }
            }
        }
        c.note(format!("{} linear maps", maps.len()));
        Ok(c)
    }

    fn right_translation(&self) -> Check {
        let r = self.r;
        let mut c = Check::default();
        let mut rng = self.rng("3.9");
        let family = subset_family(r.size(), &mut rng);
        let ts = elements_sample(r.size(), &mut rng, 16);
        let full = Subset::full(r.size());
        for s in thin(&family, PER_ITEM_SUBSETS) {
            let h = self.rt.members(s);
            let spine = self.rt.is_spine(s);
            for &t in &ts {
                let st = right_translate(r, s, t);
                let hst = self.rt.members(&st);
                c.expect(right_translate(r, &h, t).is_subset(&hst), || {
                    format!("halo({s})·{t} ⊄ halo({s}·{t})")
                });
                if spine {
                    let rt = right_translate(r, &full, t);
                    c.expect(rt.is_subset(&r.additive_closure(&hst)), || {
                        format!("{s}·{t} is not a spine of R·{t}")
                    });
                }
            }
        }
        c
    }

    fn unit_translation(&self) -> Check {
        let r = self.r;
        let mut c = Check::default();
        let units = r.units();
        let family = self.r_family("3.10");
        for u in &units {
            for s in thin(&family, PER_ITEM_SUBSETS) {
                let t = translate_with(&self.rt, r, s, u);
                c.expect(t.halo_commutes() && t.spine_preserved(), || {
                    format!(
                        "translating {s} by the unit {u}: halo(S)·u = {}, halo(S·u) = {}",
                        t.halo_translated, t.halo_of_translated
                    )
                });
            }
            let mu = right_translate(r, &self.inst.semiring_spine, u);
            c.expect(self.rt.is_spine(&mu), || {
                format!("M·{u} = {mu} is not a spine")
            });
        }
        if let Construction::Matrix {
            matrix,
            base_spine,
            translate: Some(u),
        } = &self.inst.construction
        {
            if let Ok(d) = matrix_diagonal_spine(matrix, base_spine) {
                c.expect(
                    right_translate(r, &d, *u) == self.inst.semiring_spine,
                    || "the permuted diagonal is not the declared spine".into(),
                );
            }
        }
        c.note(format!("{} units", units.len()));
        c
    }

    fn composition_product(&self) -> Result<Check> {
        let comp = if self.r.is_commutative() {
            Composition::action(self.inst.module.clone())?
        } else if let Some((comp, ..)) = self.factorization()? {
            comp
        } else {
            return Ok(Check::skip(
                "no compatible composition is known for this instance",
            ));
        };
        let mut c = Check::default();
        let (l, rgt) = (&comp.left().module, &comp.right().module);
        let t1 = HaloTable::new(l);
        let t2 = HaloTable::new(rgt);
        let target = HaloTable::new(comp.target());
        let mut rng = self.rng("3.13");
        let f1 = subset_family(l.size(), &mut rng);
        let f2 = subset_family(rgt.size(), &mut rng);
        for s1 in thin(&f1, PAIR_SUBSETS) {
            let h1 = t1.members(s1);
            let spine1 = t1.is_spine(s1);
            for s2 in thin(&f2, PAIR_SUBSETS) {
                let product = comp.compose(s1, s2);
                let hp = target.members(&product);
                c.expect(comp.compose(&h1, &t2.members(s2)).is_subset(&hp), || {
                    format!("halo({s1}) • halo({s2}) ⊄ halo({s1} • {s2})")
                });
                if spine1 && t2.is_spine(s2) {
                    c.expect(target.is_spine(&product), || {
                        format!("{s1} • {s2} is not a spine")
                    });
                }
            }
        }
        Ok(c)
    }

    fn relative_bound(&self) -> Result<Check> {
        let v = self.v;
        let mut c = Check::default();
        let m = &self.inst.semiring_spine;
        let mut largest = 0;
        for v0 in self.submodules.iter().take(MAX_SUBMODULES) {
            let rest = self.inst.declared_spine.difference(v0.as_subset());
            let mut choices = vec![self.inst.declared_generators.clone()];
            if v.submodule_sum(v0, &v.generated_submodule(&rest)).len() == v.size() {
                choices.push(rest);
            }
            for w0 in self.sa.members.iter().filter(|w| w.is_subset(v0)) {
                for s in &choices {
                    let report = sa_between(v, &self.sa, v0, w0, s, m)?;
                    largest = largest.max(report.members.len());
                    c.expect(report.within_bounds(), || {
                        format!(
                            "V0 = {v0:?}, W0 = {w0:?}, S = {s}: {} members, chain {}, m·s = {}",
                            report.members.len(),
                            report.chain.length,
                            report.chain_bound()
                        )
                    });
                }
            }
        }
        c.note(format!("largest SA(V; W0, V0) seen: {largest}"));
        Ok(c)
    }

    fn sigma_bound(&self) -> Check {
        let mut c = Check::default();
        let t = &self.inst.declared_spine;
        let tl = t.len();
        let bound = 1u128.checked_shl(tl as u32).unwrap_or(u128::MAX);
        let chain = longest_chain(&self.sigma);
        c.expect((self.sigma.len() as u128) <= bound, || {
            format!("|ΣSA| = {} > 2^{tl}", self.sigma.len())
        });
        c.expect(chain.length <= tl, || {
            format!("ΣSA chain of length {} > {tl}", chain.length)
        });
        for u in &self.sigma.members {
            let g = self.v.generated_submodule(&u.as_subset().intersection(t));
            c.expect(&g == u, || format!("U = {u:?} is not generated by U ∩ T"));
        }
        c.note(format!(
            "|ΣSA| = {}, 2^t = {bound}, longest chain {}",
            self.sigma.len(),
            chain.length
        ));
        c
    }

    fn finitely_generated_sums(&self) -> Result<Check> {
        let mut c = Check::default();
        let m = &self.inst.semiring_spine;
        let t = &self.inst.declared_spine;
        for u in self.sigma.members.iter().take(MAX_SUBMODULES) {
            let res = self.restriction(u);
            let local_module = &res.module;
            let su = res.to_local(&minimal_generators(
                self.v,
                &u.as_subset().intersection(t),
                u,
            ));
            let source = SpineSource::Generators {
                semiring_spine: m.clone(),
                generators: su.clone(),
            };
            let lat = match enumerate_sa(local_module, &source, self.limits) {
                Ok(lat) => lat,
                Err(Error::EnumerationCap { requested, cap }) => {
                    c.note(format!(
                        "U = {u:?}: |M·S| = {requested} exceeds the cap {cap}"
                    ));
                    continue;
                }
                Err(e) => return Err(e),
            };
            let msu = local_module.product_set(m, &su);
            for w in &lat.members {
                let g = local_module.generated_submodule(&w.as_subset().intersection(&msu));
                c.expect(&g == w, || {
                    format!("in U = {u:?}, W = {w:?} is not generated by W ∩ MS")
                });
            }
            let chain = longest_chain(&lat).length;
            c.expect(chain <= m.len() * su.len(), || {
                format!(
                    "in U = {u:?}, SA(U) has a chain of length {chain} > |M|·|S| = {}",
                    m.len() * su.len()
                )
            });
            for w in self.sa.members.iter().filter(|w| w.is_subset(u)) {
                let lw = local_module.submodule(res.to_local(w.as_subset()))?;
                c.expect(lat.contains(&lw), || {
                    format!("W = {w:?} is SA in V but not in U = {u:?}")
                });
            }
            if local_module.size() <= EXHAUSTIVE_SUBSETS {
                c.expect(enumerate_sa_bruteforce(local_module)? == lat, || {
                    format!("SA(U) for U = {u:?} disagrees with brute force")
                });
            }
        }
        c.note("on finite carriers every submodule is finitely generated, so SA_f = SA and Σ_f SA_f = ΣSA");
        Ok(c)
    }

    fn sigma_spines(&self) -> Check {
        let v = self.v;
        let mut c = Check::default();
        let t = &self.inst.declared_spine;
        for u in &self.sigma.members {
            let ut = u.as_subset().intersection(t);
            c.expect(&v.generated_submodule(&ut) == u, || {
                format!("U = {u:?} is not generated by U ∩ T")
            });
            let res = self.restriction(u);
            c.expect(
                HaloTable::new(&res.module).is_spine(&res.to_local(&ut)),
                || format!("U ∩ T = {ut} is not a spine of U = {u:?}"),
            );
        }
        let members = &self.sa.members;
        let mut weaker = Counter::new();
        for (i, w1) in members.iter().enumerate() {
            for w2 in &members[i..] {
                let u = v.submodule_sum(w1, w2);
                let t1 = minimal_generators(v, &w1.as_subset().intersection(t), w1);
                let t2 = minimal_generators(v, &w2.as_subset().intersection(t), w2);
                let tp = t1.union(&t2);
                c.expect(v.generated_submodule(&tp) == u, || {
                    format!("T1 ∪ T2 = {tp} does not generate W1 + W2 = {u:?}")
                });
                let res = self.restriction(&u);
                if !HaloTable::new(&res.module).is_spine(&res.to_local(&tp)) {
                    weaker.hit(|| format!("W1 = {w1:?}, W2 = {w2:?}, T' = {tp}"));
                }
            }
        }
        if weaker.count > 0 {
            c.finding(format!(
                "a finite generating subset T' of U ∩ T need not be a spine of U: {} sums fail ({})",
                weaker.count,
                weaker.first.unwrap_or_default()
            ));
        }
        c.note("index families are finite pairs of SA-submodules");
        c
    }

    fn chains(&self) -> Result<Check> {
        let mut c = Check::default();
        let up = longest_chain(&self.sa);
        let down = descending_chain_report(&self.sa);
        c.expect(up.length == down.length, || {
            "ascending and descending lengths differ".into()
        });
        let adapted = is_sa_adapted(self.v, &self.inst.declared_spine, &self.sa)?;
        c.expect(adapted, || "the declared spine is not SA-adapted".into());
        c.note(format!(
            "longest strictly descending chain in SA(V): {}; only chain lengths are measured",
            down.length
        ));
        Ok(c)
    }
}

fn ambient_scalars(size: usize, base: &Subset, scalar: impl Fn(usize) -> usize) -> Subset {
    let mut out = Subset::empty(size);
    for a in base {
        out.insert(scalar(a));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::{instance, zoo};

    #[test]
    fn filter_validation() {
        assert_eq!(select_theorems(None).unwrap().len(), THEOREMS.len());
        let ids = vec!["3.3".to_string(), "2.9".to_string()];
        assert_eq!(select_theorems(Some(&ids)).unwrap(), vec!["2.9", "3.3"]);
        assert!(select_theorems(Some(&["2.99".to_string()])).is_err());
    }

    #[test]
    fn boolean_plane_passes_everything() {
        let inst = instance("boolean-free-2").unwrap();
        let report = check_theorem_suite(&inst, &SuiteOptions::default()).unwrap();
        for t in &report.theorems {
            assert_ne!(t.status, Status::Fail, "{t:?}");
        }
        assert_eq!(report.sa_size, 4);
        assert_eq!(report.sigma_sa_size, 4);
        assert_eq!(report.theorem("3.7").unwrap().status, Status::Pass);
        assert!(!report.theorem("3.7").unwrap().findings.is_empty());
    }

    #[test]
    fn small_instances_pass() {
        let options = SuiteOptions::default();
        for inst in zoo().unwrap().into_iter().filter(|i| i.module.size() <= 9) {
            let report = check_theorem_suite(&inst, &options).unwrap();
            assert!(report.passed(), "{}: {:?}", inst.name, report.theorems);
        }
    }

    #[test]
    fn filtered_run_reports_only_requested_ids() {
        let inst = instance("nat2-regular").unwrap();
        let options = SuiteOptions {
            theorems: Some(vec!["2.9".into()]),
            ..SuiteOptions::default()
        };
        let report = check_theorem_suite(&inst, &options).unwrap();
        assert_eq!(report.theorems.len(), 1);
        assert_eq!(report.theorems[0].id, "2.9");
    }
}

#[cfg(test)]
mod zoo_run {
    use super::*;

    #[test]
    fn whole_zoo_passes() {
        let reports = run_checks(&crate::zoo::zoo().unwrap(), &SuiteOptions::default()).unwrap();
        assert_eq!(reports.len(), 10);
        for r in &reports {
            assert!(r.passed(), "{}: {:?}", r.instance, r.theorems);
            assert_eq!(r.theorems.len(), THEOREMS.len());
        }
        let matunits = reports
            .iter()
            .find(|r| r.instance == "monoid-boolean-matunits")
            .unwrap();
        assert!(!matunits.theorem("2.18").unwrap().findings.is_empty());
        assert!(!matunits.theorem("2.8").unwrap().findings.is_empty());
    }
}
