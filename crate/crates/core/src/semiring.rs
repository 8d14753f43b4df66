//! Table-based finite semirings.
//!
//! Elements are dense indices `0..size`; all structure lives in the addition
//! and multiplication tables. Constructors run the axiom verifier, so a
//! `Semiring` value always satisfies the semiring laws (up to the sampling
//! recorded in [`Semiring::verification`]).

use crate::error::{Error, Law, Result};
use crate::limits::{scan_triples, Limits, Verification};
use crate::subset::Subset;

#[derive(Debug, Clone)]
pub struct Semiring {
    name: String,
    size: usize,
    zero: usize,
    one: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    verification: Verification,
}

impl Semiring {
    /// Validated constructor; tables are indexed `[a][b]`.
    pub fn new(
        name: impl Into<String>,
        zero: usize,
        one: usize,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
    ) -> Result<Self> {
        Self::with_limits(name, zero, one, add, mul, &Limits::default())
    }

    pub fn with_limits(
        name: impl Into<String>,
        zero: usize,
        one: usize,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        limits: &Limits,
    ) -> Result<Self> {
        let size = add.len();
        let add = flatten_square("add", add, size)?;
        let mul = flatten_square("mul", mul, size)?;
        Self::from_flat(name.into(), size, zero, one, add, mul, limits)
    }

    pub(crate) fn from_flat(
        name: String,
        size: usize,
        zero: usize,
        one: usize,
        add: Vec<usize>,
        mul: Vec<usize>,
        limits: &Limits,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::Shape("carrier must be non-empty".into()));
        }
        limits.check_carrier(size as u128)?;
        for (what, e) in [("zero", zero), ("one", one)] {
            if e >= size {
                return Err(Error::Shape(format!(
                    "{what} index {e} out of range for size {size}"
                )));
            }
        }
        debug_assert_eq!(add.len(), size * size);
        debug_assert_eq!(mul.len(), size * size);
        if let Some(&bad) = add.iter().chain(&mul).find(|&&e| e >= size) {
            return Err(Error::Shape(format!(
                "table entry {bad} out of range for size {size}"
            )));
        }
        let mut r = Semiring {
            name,
            size,
            zero,
            one,
            add,
            mul,
            verification: Verification::Exhaustive,
        };
        r.verification = r.verify(limits)?;
        Ok(r)
    }

    fn verify(&self, limits: &Limits) -> Result<Verification> {
        let n = self.size;
        let fail = |law, witness: Vec<usize>| Error::Axiom { law, witness };
        for a in 0..n {
            if self.add(self.zero, a) != a || self.add(a, self.zero) != a {
                return Err(fail(Law::AdditiveIdentity, vec![a]));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(fail(Law::AdditiveCommutativity, vec![a, b]));
                }
            }
        }
        for a in 0..n {
            if self.mul(self.one, a) != a || self.mul(a, self.one) != a {
                return Err(fail(Law::MultiplicativeIdentity, vec![a]));
            }
        }
        for a in 0..n {
            if self.mul(self.zero, a) != self.zero || self.mul(a, self.zero) != self.zero {
                return Err(fail(Law::ZeroAbsorption, vec![a]));
            }
        }
        let dims = [n, n, n];
        let mut mode = scan_triples(dims, limits, |a, b, c| {
            if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                return Err(fail(Law::AdditiveAssociativity, vec![a, b, c]));
            }
            Ok(())
        })?;
        mode = mode.combine(scan_triples(dims, limits, |a, b, c| {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(fail(Law::MultiplicativeAssociativity, vec![a, b, c]));
            }
            Ok(())
        })?);
        mode = mode.combine(scan_triples(dims, limits, |a, b, c| {
            if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                return Err(fail(Law::LeftDistributivity, vec![a, b, c]));
            }
            Ok(())
        })?);
        mode = mode.combine(scan_triples(dims, limits, |a, b, c| {
            if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                return Err(fail(Law::RightDistributivity, vec![a, b, c]));
            }
            Ok(())
        })?);
        Ok(mode)
    }

    /// The two-element idempotent semifield {0, 1} with 1 + 1 = 1.
    ///
    /// The max-plus rendering {-inf, 0} is the same structure with
    /// -inf as index 0 and 0 as index 1.
    pub fn boolean() -> Self {
        Self::new(
            "B",
            0,
            1,
            vec![vec![0, 1], vec![1, 1]],
            vec![vec![0, 0], vec![0, 1]],
        )
        .expect("boolean semifield tables are valid")
    }

    /// Natural numbers `0..=cap` with addition and multiplication saturating at `cap`.
    pub fn truncated_naturals(cap: usize) -> Result<Self> {
        Self::truncated_naturals_with_limits(cap, &Limits::default())
    }

    pub fn truncated_naturals_with_limits(cap: usize, limits: &Limits) -> Result<Self> {
        if cap == 0 {
            return Err(Error::Precondition(
                "truncated naturals need a cap of at least 1".into(),
            ));
        }
        let size = limits.check_carrier(cap as u128 + 1)?;
        let add = (0..size * size)
            .map(|i| (i / size + i % size).min(cap))
            .collect();
        let mul = (0..size * size)
            .map(|i| ((i / size) * (i % size)).min(cap))
            .collect();
        Self::from_flat(format!("N{cap}"), size, 0, 1, add, mul, limits)
    }

    /// Max-plus algebra on `{-inf, 0, 1, ..., cap}`: addition is max,
    /// multiplication is addition saturating at `cap`.
    ///
    /// Index 0 houses -inf (the zero); index `v + 1` houses the value `v`,
    /// so the one (value 0) sits at index 1.
    pub fn truncated_maxplus(cap: usize) -> Result<Self> {
        Self::truncated_maxplus_with_limits(cap, &Limits::default())
    }

    pub fn truncated_maxplus_with_limits(cap: usize, limits: &Limits) -> Result<Self> {
        let size = limits.check_carrier(cap as u128 + 2)?;
        let add = (0..size * size).map(|i| (i / size).max(i % size)).collect();
        let mul = (0..size * size)
            .map(|i| {
                let (a, b) = (i / size, i % size);
                if a == 0 || b == 0 {
                    0
                } else {
                    ((a - 1) + (b - 1)).min(cap) + 1
                }
            })
            .collect();
        Self::from_flat(format!("maxplus{cap}"), size, 0, 1, add, mul, limits)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn verification(&self) -> Verification {
        self.verification
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        self.add.chunks(self.size).map(<[_]>::to_vec).collect()
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.size).map(<[_]>::to_vec).collect()
    }

    pub(crate) fn mul_flat(&self) -> &[usize] {
        &self.mul
    }

    pub(crate) fn add_flat(&self) -> &[usize] {
        &self.add
    }

    /// Sum of an iterator of elements (empty sum is zero).
    pub fn sum<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.zero, |acc, x| self.add(acc, x))
    }

    /// Same carrier size, zero, one and tables. Names are ignored.
    pub fn same_tables(&self, other: &Semiring) -> bool {
        self.size == other.size
            && self.zero == other.zero
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_additively_idempotent(&self) -> bool {
        (0..self.size).all(|a| self.add(a, a) == a)
    }

    /// All `x` with `x·x = x`.
    pub fn idempotents(&self) -> Subset {
        let mut s = Subset::empty(self.size);
        for x in 0..self.size {
            if self.mul(x, x) == x {
                s.insert(x);
            }
        }
        s
    }

    /// All `x` with some `y` such that `y·x = 1`.
    pub fn left_invertibles(&self) -> Subset {
        let mut s = Subset::empty(self.size);
        for x in 0..self.size {
            if (0..self.size).any(|y| self.mul(y, x) == self.one) {
                s.insert(x);
            }
        }
        s
    }

    /// Two-sided inverse of `u`, if any.
    pub fn inverse(&self, u: usize) -> Option<usize> {
        (0..self.size).find(|&v| self.mul(u, v) == self.one && self.mul(v, u) == self.one)
    }

    pub fn units(&self) -> Subset {
        let mut s = Subset::empty(self.size);
        for u in 0..self.size {
            if self.inverse(u).is_some() {
                s.insert(u);
            }
        }
        s
    }

    /// Closure of `set ∪ {0}` under addition, computed in the semiring.
    pub fn additive_closure(&self, set: &Subset) -> Subset {
        let gens = set.to_vec();
        let mut out = Subset::singleton(self.size, self.zero);
        let mut work = vec![self.zero];
        while let Some(x) = work.pop() {
            for &g in &gens {
                let s = self.add(x, g);
                if out.insert(s) {
                    work.push(s);
                }
            }
        }
        out
    }

    /// `{a·b : a ∈ left, b ∈ right}`.
    pub fn product_set(&self, left: &Subset, right: &Subset) -> Subset {
        let mut out = Subset::empty(self.size);
        for a in left {
            for b in right {
                out.insert(self.mul(a, b));
            }
        }
        out
    }

    /// Reindexes a subsemiring as a standalone semiring.
    ///
    /// Returns the new semiring together with the embedding from its indices
    /// into `self` (increasing, so index order is preserved).
    pub fn subsemiring(&self, members: &Subset, name: &str) -> Result<(Semiring, Vec<usize>)> {
        if !members.contains(self.zero) || !members.contains(self.one) {
            return Err(Error::Precondition(
                "a subsemiring must contain zero and one".into(),
            ));
        }
        let embed = members.to_vec();
        let mut local = vec![usize::MAX; self.size];
        for (i, &e) in embed.iter().enumerate() {
            local[e] = i;
        }
        let k = embed.len();
        let mut add = Vec::with_capacity(k * k);
        let mut mul = Vec::with_capacity(k * k);
        for &a in &embed {
            for &b in &embed {
                for (table, value) in [(&mut add, self.add(a, b)), (&mut mul, self.mul(a, b))] {
                    if local[value] == usize::MAX {
                        return Err(Error::Precondition(format!(
                            "subset is not closed: ({a}, {b}) yields {value}"
                        )));
                    }
                    table.push(local[value]);
                }
            }
        }
        let sub = Semiring::from_flat(
            name.to_string(),
            k,
            local[self.zero],
            local[self.one],
            add,
            mul,
            &Limits::default(),
        )?;
        Ok((sub, embed))
    }
}

pub(crate) fn flatten_square(what: &str, rows: Vec<Vec<usize>>, size: usize) -> Result<Vec<usize>> {
    flatten_rect(what, rows, size, size)
}

pub(crate) fn flatten_rect(
    what: &str,
    rows: Vec<Vec<usize>>,
    height: usize,
    width: usize,
) -> Result<Vec<usize>> {
    if rows.len() != height {
        return Err(Error::Shape(format!(
            "{what} table has {} rows, expected {height}",
            rows.len()
        )));
    }
    let mut flat = Vec::with_capacity(height * width);
    for (i, row) in rows.into_iter().enumerate() {
        if row.len() != width {
            return Err(Error::Shape(format!(
                "{what} table row {i} has {} entries, expected {width}",
                row.len()
            )));
        }
        flat.extend(row);
    }
    Ok(flat)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boolean_tables() -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
        (vec![vec![0, 1], vec![1, 1]], vec![vec![0, 0], vec![0, 1]])
    }

    /// Independent law check used as the oracle for the verifier.
    fn satisfies_laws(zero: usize, one: usize, add: &[Vec<usize>], mul: &[Vec<usize>]) -> bool {
        let n = add.len();
        let idx = 0..n;
        for a in idx.clone() {
            if add[zero][a] != a || add[a][zero] != a || mul[one][a] != a || mul[a][one] != a {
                return false;
            }
            if mul[zero][a] != zero || mul[a][zero] != zero {
                return false;
            }
            for b in idx.clone() {
                if add[a][b] != add[b][a] {
                    return false;
                }
                for c in idx.clone() {
                    if add[add[a][b]][c] != add[a][add[b][c]]
                        || mul[mul[a][b]][c] != mul[a][mul[b][c]]
                        || mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]
                        || mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]]
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn boolean_semifield_shape() {
        let b = Semiring::boolean();
        assert_eq!(b.size(), 2);
        assert_eq!(b.add(1, 1), 1);
        assert_eq!(b.left_invertibles().to_vec(), vec![1]);
        assert_eq!(b.idempotents().to_vec(), vec![0, 1]);
        assert_eq!(b.verification(), Verification::Exhaustive);
    }

    #[test]
    fn saturating_three_element_tables_are_valid() {
        let add = (0..3)
            .map(|a| (0..3).map(|b| (a + b).min(2)).collect())
            .collect::<Vec<Vec<usize>>>();
        let mul = (0..3)
            .map(|a| (0..3).map(|b| (a * b).min(2)).collect())
            .collect::<Vec<Vec<usize>>>();
        assert!(satisfies_laws(0, 1, &add, &mul));
        let r = Semiring::new("sat2", 0, 1, add, mul).unwrap();
        assert!(r.same_tables(&Semiring::truncated_naturals(2).unwrap()));
    }

    #[test]
    fn truncated_naturals_two() {
        let n2 = Semiring::truncated_naturals(2).unwrap();
        assert_eq!(n2.add(1, 2), 2);
        assert_eq!(n2.idempotents().to_vec(), vec![0, 1, 2]);
        assert_eq!(n2.left_invertibles().to_vec(), vec![1]);
        assert!(matches!(
            Semiring::truncated_naturals(0),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn truncated_maxplus_one() {
        let r = Semiring::truncated_maxplus(1).unwrap();
        assert_eq!(r.size(), 3);
        assert!(r.is_additively_idempotent());
        // value 1 sits at index 2; 1 + 1 saturates to 1
        assert_eq!(r.mul(2, 2), 2);
        assert_eq!(r.zero(), 0);
        assert_eq!(r.one(), 1);
    }

    #[test]
    fn one_plus_one_equals_zero_is_a_valid_ring() {
        // Mutating 𝔹's 1 + 1 to 0 yields the two-element field, which is a semiring.
        let (mut add, mul) = boolean_tables();
        add[1][1] = 0;
        assert!(satisfies_laws(0, 1, &add, &mul));
        let f2 = Semiring::new("F2", 0, 1, add, mul).unwrap();
        assert_eq!(f2.add(1, 1), 0);
    }

    #[test]
    fn witness_for_broken_additive_identity() {
        let (mut add, mul) = boolean_tables();
        add[0][1] = 0;
        let err = Semiring::new("bad", 0, 1, add, mul).unwrap_err();
        assert_eq!(
            err,
            Error::Axiom {
                law: Law::AdditiveIdentity,
                witness: vec![1]
            }
        );
        assert!(err.to_string().contains("additive identity"));
    }

    #[test]
    fn every_single_entry_mutation_of_boolean_tables_agrees_with_oracle() {
        let (add, mul) = boolean_tables();
        let mut rejected = 0;
        for table in 0..2 {
            for a in 0..2 {
                for b in 0..2 {
                    let (mut add, mut mul) = (add.clone(), mul.clone());
                    let t = if table == 0 { &mut add } else { &mut mul };
                    t[a][b] = 1 - t[a][b];
                    let expected = satisfies_laws(0, 1, &add, &mul);
                    let got = Semiring::new("m", 0, 1, add, mul);
                    assert_eq!(got.is_ok(), expected, "table {table} entry ({a},{b})");
                    if let Err(e) = got {
                        assert!(matches!(e, Error::Axiom { .. }));
                        rejected += 1;
                    }
                }
            }
        }
        // only the 1 + 1 = 0 mutation survives
        assert_eq!(rejected, 7);
    }

    #[test]
    fn every_single_entry_mutation_of_n2_agrees_with_oracle() {
        let n2 = Semiring::truncated_naturals(2).unwrap();
        for table in 0..2 {
            for a in 0..3 {
                for b in 0..3 {
                    for value in 0..3 {
                        let (mut add, mut mul) = (n2.add_table(), n2.mul_table());
                        let t = if table == 0 { &mut add } else { &mut mul };
                        if t[a][b] == value {
                            continue;
                        }
                        t[a][b] = value;
                        let expected = satisfies_laws(0, 1, &add, &mul);
                        let got = Semiring::new("m", 0, 1, add, mul);
                        assert_eq!(got.is_ok(), expected, "table {table} ({a},{b}) -> {value}");
                    }
                }
            }
        }
    }

    #[test]
    fn non_square_tables_are_shape_errors() {
        let err = Semiring::new(
            "x",
            0,
            1,
            vec![vec![0, 1], vec![1]],
            vec![vec![0, 0], vec![0, 1]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Shape(_)));
        let err = Semiring::new(
            "x",
            0,
            5,
            vec![vec![0, 1], vec![1, 1]],
            vec![vec![0, 0], vec![0, 1]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Shape(_)));
    }

    #[test]
    fn carrier_cap_is_enforced() {
        let limits = Limits {
            carrier_cap: 3,
            ..Limits::default()
        };
        assert!(matches!(
            Semiring::truncated_naturals_with_limits(5, &limits),
            Err(Error::CarrierCap {
                requested: 6,
                cap: 3
            })
        ));
    }

    #[test]
    fn sampled_verification_is_recorded() {
        let limits = Limits {
            triple_budget: 10,
            sampled_triples: 100,
            ..Limits::default()
        };
        let r = Semiring::truncated_naturals_with_limits(4, &limits).unwrap();
        assert!(matches!(
            r.verification(),
            Verification::Sampled { samples: 100, .. }
        ));
    }

    #[test]
    fn subsemiring_reindexes() {
        let n3 = Semiring::truncated_naturals(3).unwrap();
        let members = Subset::from_indices(4, [0, 1, 2, 3]).unwrap();
        let (same, embed) = n3.subsemiring(&members, "copy").unwrap();
        assert!(same.same_tables(&n3));
        assert_eq!(embed, vec![0, 1, 2, 3]);
        let not_closed = Subset::from_indices(4, [0, 1]).unwrap();
        assert!(n3.subsemiring(&not_closed, "x").is_err());
    }
}
