use std::sync::Arc;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::matrix::{decode, encode};
use crate::monoid::FiniteMonoid;
use crate::semiring::Semiring;
use crate::subset::Subset;

/// The monoid semiring `A[S]`: the free `A`-module on the nonzero elements of
/// `S`, with `(a s)(b t) = (ab)(st)` and products landing on the zero of a
/// pointed `S` dropped.
///
/// Basis elements are the nonzero monoid elements in increasing index order;
/// the coefficient of the `k`-th basis element is the digit of weight `|A|^k`.
#[derive(Debug, Clone)]
pub struct MonoidSemiring {
    semiring: Arc<Semiring>,
    base: Arc<Semiring>,
    monoid: Arc<FiniteMonoid>,
    basis: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl MonoidSemiring {
    pub fn new(base: Arc<Semiring>, monoid: Arc<FiniteMonoid>) -> Result<Self> {
        Self::with_limits(base, monoid, &Limits::default())
    }

    pub fn with_limits(
        base: Arc<Semiring>,
        monoid: Arc<FiniteMonoid>,
        limits: &Limits,
    ) -> Result<Self> {
        let basis: Vec<usize> = (0..monoid.size())
            .filter(|&s| Some(s) != monoid.zero())
            .collect();
        let mut position = vec![None; monoid.size()];
        for (k, &s) in basis.iter().enumerate() {
            position[s] = Some(k);
        }
        let q = base.size();
        let k = basis.len();
        let requested = (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        let size = limits.check_carrier(requested)?;

        let coeffs: Vec<Vec<usize>> = (0..size).map(|x| decode(x, q, k)).collect();
        // products of basis elements, as basis positions (None = dropped zero)
        let basis_product: Vec<Option<usize>> = basis
            .iter()
            .flat_map(|&s| basis.iter().map(move |&t| (s, t)))
            .map(|(s, t)| position[monoid.op(s, t)])
            .collect();

        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        let mut scratch = vec![0; k];
        for x in &coeffs {
            for y in &coeffs {
                for p in 0..k {
                    scratch[p] = base.add(x[p], y[p]);
                }
                add.push(encode(&scratch, q));
                scratch.fill(base.zero());
                for (p, &a) in x.iter().enumerate() {
                    if a == base.zero() {
                        continue;
                    }
                    for (r, &b) in y.iter().enumerate() {
                        if let Some(target) = basis_product[p * k + r] {
                            scratch[target] = base.add(scratch[target], base.mul(a, b));
                        }
                    }
                }
                mul.push(encode(&scratch, q));
            }
        }
        let zero = encode(&vec![base.zero(); k], q);
        let one = match monoid.identity() {
            Some(e) => {
                let mut d = vec![base.zero(); k];
                if let Some(p) = position[e] {
                    d[p] = base.one();
                }
                encode(&d, q)
            }
            None => (0..size)
                .find(|&u| (0..size).all(|x| mul[u * size + x] == x && mul[x * size + u] == x))
                .ok_or_else(|| {
                    Error::Precondition(
                        "the monoid has no identity and A[S] has no multiplicative identity".into(),
                    )
                })?,
        };
        let semiring = Semiring::from_flat(
            format!("{}[S]", base.name()),
            size,
            zero,
            one,
            add,
            mul,
            limits,
        )?;
        Ok(Self {
            semiring: Arc::new(semiring),
            base,
            monoid,
            basis,
            position,
        })
    }

    pub fn semiring(&self) -> &Arc<Semiring> {
        &self.semiring
    }

    pub fn base(&self) -> &Arc<Semiring> {
        &self.base
    }

    pub fn monoid(&self) -> &Arc<FiniteMonoid> {
        &self.monoid
    }

    /// Nonzero monoid elements, in basis order.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn encode(&self, coefficients: &[usize]) -> usize {
        assert_eq!(coefficients.len(), self.basis.len());
        encode(coefficients, self.base.size())
    }

    pub fn decode(&self, x: usize) -> Vec<usize> {
        decode(x, self.base.size(), self.basis.len())
    }

    /// `a·s` for a base element `a` and monoid element `s` (zero when `s` is the monoid zero).
    pub fn term(&self, a: usize, s: usize) -> usize {
        let mut d = vec![self.base.zero(); self.basis.len()];
        if let Some(p) = self.position[s] {
            d[p] = a;
        }
        self.encode(&d)
    }

    /// The embedding `s ↦ 1_A·s`.
    pub fn monoid_element(&self, s: usize) -> usize {
        self.term(self.base.one(), s)
    }

    /// The embedding `a ↦ a·1`, scaling the coefficients of the identity.
    pub fn scalar(&self, a: usize) -> usize {
        let one = self.decode(self.semiring.one());
        let d: Vec<usize> = one.iter().map(|&c| self.base.mul(a, c)).collect();
        self.encode(&d)
    }

    /// Images of all monoid elements.
    pub fn monoid_image(&self, members: &Subset) -> Subset {
        let mut out = Subset::empty(self.semiring.size());
        for s in members {
            out.insert(self.monoid_element(s));
        }
        out
    }

    /// `{a·1 : a ∈ A}`.
    pub fn scalars(&self) -> Subset {
        let mut out = Subset::empty(self.semiring.size());
        for a in self.base.elements() {
            out.insert(self.scalar(a));
        }
        out
    }

    /// Elements whose coefficients all lie in `coefficients`.
    pub fn with_coefficients_in(&self, coefficients: &Subset) -> Subset {
        let mut out = Subset::empty(self.semiring.size());
        for x in self.semiring.elements() {
            if self.decode(x).iter().all(|&c| coefficients.contains(c)) {
                out.insert(x);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::MatrixSemiring;

    #[test]
    fn boolean_over_idempotent_pair() {
        let b = Arc::new(Semiring::boolean());
        let ms = MonoidSemiring::new(b, Arc::new(FiniteMonoid::idempotent_pair())).unwrap();
        let r = ms.semiring();
        assert_eq!(r.size(), 4);
        // elements 0, 1, a, 1 + a
        assert_eq!(ms.monoid_element(0), 1);
        assert_eq!(ms.monoid_element(1), 2);
        assert_eq!(r.add(1, 2), 3);
        assert_eq!(r.one(), 1);
        // a·a = a, (1 + a)(1 + a) = 1 + a
        assert_eq!(r.mul(2, 2), 2);
        assert_eq!(r.mul(3, 3), 3);
    }

    #[test]
    fn matrix_unit_monoid_semiring_equals_matrix_semiring() {
        let b = Arc::new(Semiring::boolean());
        let ms = MonoidSemiring::new(b.clone(), Arc::new(FiniteMonoid::matrix_units(2).unwrap()))
            .unwrap();
        let m = MatrixSemiring::new(b, 2).unwrap();
        assert!(ms.semiring().same_tables(m.semiring()));
        assert_eq!(ms.semiring().one(), m.identity());
    }

    #[test]
    fn trivial_monoid_gives_the_base() {
        for base in [
            Semiring::boolean(),
            Semiring::truncated_naturals(2).unwrap(),
            Semiring::truncated_maxplus(1).unwrap(),
        ] {
            let base = Arc::new(base);
            let ms = MonoidSemiring::new(base.clone(), Arc::new(FiniteMonoid::trivial())).unwrap();
            assert!(ms.semiring().same_tables(&base));
        }
    }

    #[test]
    fn scalar_embedding_commutes_with_monoid_elements() {
        let n2 = Arc::new(Semiring::truncated_naturals(2).unwrap());
        let ms = MonoidSemiring::new(n2.clone(), Arc::new(FiniteMonoid::matrix_units(2).unwrap()))
            .unwrap();
        let r = ms.semiring();
        for a in n2.elements() {
            for s in 0..5 {
                let x = ms.scalar(a);
                let y = ms.monoid_element(s);
                assert_eq!(r.mul(x, y), r.mul(y, x));
                assert_eq!(r.mul(x, y), ms.term(a, s));
            }
        }
    }
}
