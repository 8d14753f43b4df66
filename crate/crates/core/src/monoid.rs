use crate::error::{Error, Law, Result};
use crate::semiring::flatten_square;
use crate::subset::Subset;

/// A finite multiplicative monoid given by its operation table.
///
/// The identity is optional: the matrix-unit semigroup `{e_ij} ∪ {0}` has no
/// identity for n ≥ 2, yet its monoid semiring is the full matrix semiring.
/// The optional zero marks a pointed monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMonoid {
    size: usize,
    identity: Option<usize>,
    zero: Option<usize>,
    op: Vec<usize>,
}

impl FiniteMonoid {
    pub fn new(identity: Option<usize>, zero: Option<usize>, op: Vec<Vec<usize>>) -> Result<Self> {
        let size = op.len();
        if size == 0 {
            return Err(Error::Shape("monoid carrier must be non-empty".into()));
        }
        let op = flatten_square("op", op, size)?;
        for e in identity.into_iter().chain(zero).chain(op.iter().copied()) {
            if e >= size {
                return Err(Error::OutOfRange { element: e, size });
            }
        }
        let m = FiniteMonoid {
            size,
            identity,
            zero,
            op,
        };
        m.verify()?;
        Ok(m)
    }

    fn verify(&self) -> Result<()> {
        let n = self.size;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.op(self.op(a, b), c) != self.op(a, self.op(b, c)) {
                        return Err(Error::Axiom {
                            law: Law::MonoidAssociativity,
                            witness: vec![a, b, c],
                        });
                    }
                }
            }
        }
        if let Some(one) = self.identity {
            if let Some(a) = (0..n).find(|&a| self.op(one, a) != a || self.op(a, one) != a) {
                return Err(Error::Axiom {
                    law: Law::MonoidIdentity,
                    witness: vec![a],
                });
            }
        }
        if let Some(z) = self.zero {
            if let Some(a) = (0..n).find(|&a| self.op(z, a) != z || self.op(a, z) != z) {
                return Err(Error::Axiom {
                    law: Law::MonoidZero,
                    witness: vec![a],
                });
            }
        }
        Ok(())
    }

    /// `{1}`.
    pub fn trivial() -> Self {
        Self::new(Some(0), None, vec![vec![0]]).expect("trivial monoid")
    }

    /// `{1, a}` with `a·a = a`; index 0 is 1, index 1 is a.
    pub fn idempotent_pair() -> Self {
        Self::new(Some(0), None, vec![vec![0, 1], vec![1, 1]]).expect("idempotent pair")
    }

    /// Matrix units `e_ij` (0-based `i, j < n`) with `e_ij e_kl = δ_jk e_il`,
    /// plus an absorbing zero.
    ///
    /// `e_ij` sits at index `i·n + j` and the zero at index `n²`. For n = 1
    /// the single unit `e_00` is the identity.
    pub fn matrix_units(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("matrix size must be at least 1".into()));
        }
        let units = n * n;
        let zero = units;
        let op = (0..=units)
            .map(|a| {
                (0..=units)
                    .map(|b| {
                        if a == zero || b == zero {
                            return zero;
                        }
                        let (i, j) = (a / n, a % n);
                        let (k, l) = (b / n, b % n);
                        if j == k {
                            i * n + l
                        } else {
                            zero
                        }
                    })
                    .collect()
            })
            .collect();
        let identity = (n == 1).then_some(0);
        Self::new(identity, Some(zero), op)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> Option<usize> {
        self.identity
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.op[a * self.size + b]
    }

    pub fn op_table(&self) -> Vec<Vec<usize>> {
        self.op.chunks(self.size).map(<[_]>::to_vec).collect()
    }

    /// The monoid-spine condition: every `s` has `s1, s2` with
    /// `t = s1·s ∈ spine` and `s2·t = s`. Returns the first `s` without a witness.
    pub fn monoid_spine_violation(&self, spine: &Subset) -> Option<usize> {
        (0..self.size).find(|&s| {
            !(0..self.size).any(|s1| {
                let t = self.op(s1, s);
                spine.contains(t) && (0..self.size).any(|s2| self.op(s2, t) == s)
            })
        })
    }

    pub fn is_monoid_spine(&self, spine: &Subset) -> bool {
        self.monoid_spine_violation(spine).is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_units_multiply_by_delta_rule() {
        let s = FiniteMonoid::matrix_units(2).unwrap();
        // e12 = index 1, e21 = index 2, e11 = 0, e22 = 3
        assert_eq!(s.op(1, 2), 0);
        assert_eq!(s.op(2, 1), 3);
        assert_eq!(s.op(0, 3), 4);
        assert_eq!(s.identity(), None);
        assert_eq!(s.zero(), Some(4));
    }

    #[test]
    fn idempotent_pair_spines() {
        let s = FiniteMonoid::idempotent_pair();
        let both = Subset::full(2);
        assert!(s.is_monoid_spine(&both));
        // no left multiple of 1 lands in {a} and maps back to 1
        let a_only = Subset::singleton(2, 1);
        assert_eq!(s.monoid_spine_violation(&a_only), Some(0));
    }

    #[test]
    fn diagonal_units_with_zero_are_a_monoid_spine() {
        let s = FiniteMonoid::matrix_units(2).unwrap();
        let t = Subset::from_indices(5, [0, 3, 4]).unwrap();
        assert!(s.is_monoid_spine(&t));
        let no_zero = Subset::from_indices(5, [0, 3]).unwrap();
        assert_eq!(s.monoid_spine_violation(&no_zero), Some(4));
    }

    #[test]
    fn identity_and_zero_are_validated() {
        let op = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            FiniteMonoid::new(Some(1), None, op.clone()),
            Err(Error::Axiom {
                law: Law::MonoidIdentity,
                ..
            })
        ));
        assert!(FiniteMonoid::new(Some(0), Some(1), op.clone()).is_ok());
        assert!(matches!(
            FiniteMonoid::new(Some(0), Some(0), op),
            Err(Error::Axiom {
                law: Law::MonoidZero,
                ..
            })
        ));
        // left-zero semigroup a·b = a is associative but has no identity
        let lz = vec![vec![0, 0], vec![1, 1]];
        assert!(FiniteMonoid::new(None, None, lz.clone()).is_ok());
        assert!(FiniteMonoid::new(Some(0), None, lz).is_err());
    }
}
