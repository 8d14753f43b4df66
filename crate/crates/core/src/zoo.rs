//! Curated instances with declared spine data.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::halo::require_spine;
use crate::limits::Limits;
use crate::matrix::MatrixSemiring;
use crate::module::{FreeModule, Module};
use crate::monoid::FiniteMonoid;
use crate::monoid_semiring::MonoidSemiring;
use crate::semiring::Semiring;
use crate::spine::{matrix_diagonal_spine, monoid_semiring_spine};
use crate::subset::Subset;

/// How an instance was built; constructions carry the data their checks need.
#[derive(Debug, Clone)]
pub enum Construction {
    /// The semiring as a module over itself.
    Regular,
    Free(FreeModule),
    /// Regular module of a matrix semiring. `base_spine` is a spine `N` of
    /// the base; `translate` is a unit applied on the right to the diagonal
    /// spine.
    Matrix {
        matrix: MatrixSemiring,
        base_spine: Subset,
        translate: Option<usize>,
    },
    /// Regular module of a monoid semiring.
    MonoidSemiring {
        semiring: MonoidSemiring,
        base_spine: Subset,
        monoid_spine: Subset,
    },
    /// A module read from a file, with no further structure known.
    Custom,
}

impl Construction {
    pub fn is_regular(&self) -> bool {
        matches!(
            self,
            Construction::Regular
                | Construction::Matrix { .. }
                | Construction::MonoidSemiring { .. }
        )
    }
}

#[derive(Debug, Clone)]
pub struct ZooInstance {
    pub name: String,
    pub semiring: Arc<Semiring>,
    pub module: Arc<Module>,
    /// `T`, an additive spine of the module.
    pub declared_spine: Subset,
    /// `S`, a generating set of the module.
    pub declared_generators: Subset,
    /// `M`, an additive spine of the semiring.
    pub semiring_spine: Subset,
    pub construction: Construction,
}

impl ZooInstance {
    /// Validates the declared data.
    pub fn new(
        name: impl Into<String>,
        module: Arc<Module>,
        declared_spine: Subset,
        declared_generators: Subset,
        semiring_spine: Subset,
        construction: Construction,
    ) -> Result<Self> {
        let name = name.into();
        let semiring = module.semiring().clone();
        let ctx = |e: Error| Error::Precondition(format!("instance {name}: {e}"));
        for (set, size) in [
            (&declared_spine, module.size()),
            (&declared_generators, module.size()),
            (&semiring_spine, semiring.size()),
        ] {
            if set.domain() != size {
                return Err(ctx(Error::Shape(format!(
                    "subset over {} elements, carrier has {size}",
                    set.domain()
                ))));
            }
        }
        require_spine(&module, &declared_spine).map_err(ctx)?;
        require_spine(&Module::regular(semiring.clone()), &semiring_spine).map_err(ctx)?;
        if !module.generates(&declared_generators) {
            return Err(ctx(Error::Precondition(
                "declared generators do not generate the module".into(),
            )));
        }
        Ok(Self {
            name,
            semiring,
            module,
            declared_spine,
            declared_generators,
            semiring_spine,
            construction,
        })
    }
}

fn set(n: usize, xs: impl IntoIterator<Item = usize>) -> Subset {
    Subset::from_indices(n, xs).expect("zoo indices are in range")
}

fn regular(
    name: &str,
    r: Arc<Semiring>,
    spine: Subset,
    construction: Construction,
) -> Result<ZooInstance> {
    let module = Arc::new(Module::regular(r.clone()));
    let one = Subset::singleton(r.size(), r.one());
    ZooInstance::new(name, module, spine.clone(), one, spine, construction)
}

fn free(name: &str, r: Arc<Semiring>, rank: usize, limits: &Limits) -> Result<ZooInstance> {
    let f = FreeModule::with_limits(r.clone(), rank, limits)?;
    let basis = set(f.module().size(), (0..rank).map(|i| f.basis(i)));
    let module = Arc::new(f.module().clone());
    let one = Subset::singleton(r.size(), r.one());
    ZooInstance::new(
        name,
        module,
        basis.clone(),
        basis,
        one,
        Construction::Free(f),
    )
}

fn matrix(name: &str, base: Arc<Semiring>, permuted: bool, limits: &Limits) -> Result<ZooInstance> {
    let m = MatrixSemiring::with_limits(base.clone(), 2, limits)?;
    let n = Subset::singleton(base.size(), base.one());
    let diagonal = matrix_diagonal_spine(&m, &n)?;
    let r = m.semiring().clone();
    let (spine, translate) = if permuted {
        let swap = r.add(m.unit(0, 1), m.unit(1, 0));
        (
            crate::halo::right_translate(&r, &diagonal, swap),
            Some(swap),
        )
    } else {
        (diagonal, None)
    };
    let construction = Construction::Matrix {
        matrix: m,
        base_spine: n,
        translate,
    };
    regular(name, r, spine, construction)
}

fn monoid(
    name: &str,
    monoid: FiniteMonoid,
    spine: &[usize],
    limits: &Limits,
) -> Result<ZooInstance> {
    let base = Arc::new(Semiring::boolean());
    let t = set(monoid.size(), spine.iter().copied());
    let ms = MonoidSemiring::with_limits(base.clone(), Arc::new(monoid), limits)?;
    let n = Subset::singleton(2, base.one());
    let s = monoid_semiring_spine(&ms, &n, &t)?;
    let r = ms.semiring().clone();
    let construction = Construction::MonoidSemiring {
        semiring: ms,
        base_spine: n,
        monoid_spine: t,
    };
    regular(name, r, s, construction)
}

/// The built-in instances, sorted by name.
pub fn zoo() -> Result<Vec<ZooInstance>> {
    zoo_with_limits(&Limits::default())
}

pub fn zoo_with_limits(limits: &Limits) -> Result<Vec<ZooInstance>> {
    let b = Arc::new(Semiring::boolean());
    let n2 = Arc::new(Semiring::truncated_naturals_with_limits(2, limits)?);
    let mp = Arc::new(Semiring::truncated_maxplus_with_limits(2, limits)?);
    let mp_size = mp.size();
    let mut out = vec![
        free("boolean-free-2", b.clone(), 2, limits)?,
        regular(
            "boolean-regular",
            b.clone(),
            set(2, [1]),
            Construction::Regular,
        )?,
        matrix("mat2-boolean-permuted", b.clone(), true, limits)?,
        matrix("mat2-boolean-regular", b.clone(), false, limits)?,
        matrix("mat2-nat2-regular", n2.clone(), false, limits)?,
        // every element above -inf is needed: none is reachable from another
        regular(
            "maxplus2-regular",
            mp,
            set(mp_size, 1..mp_size),
            Construction::Regular,
        )?,
        monoid(
            "monoid-boolean-idem",
            FiniteMonoid::idempotent_pair(),
            &[0, 1],
            limits,
        )?,
        monoid(
            "monoid-boolean-matunits",
            FiniteMonoid::matrix_units(2)?,
            &[0, 3, 4],
            limits,
        )?,
        free("nat2-free-2", n2.clone(), 2, limits)?,
        regular("nat2-regular", n2, set(3, [1]), Construction::Regular)?,
    ];
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}

pub fn instance(name: &str) -> Result<ZooInstance> {
    zoo()?
        .into_iter()
        .find(|z| z.name == name)
        .ok_or_else(|| Error::Precondition(format!("no zoo instance named {name}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zoo_loads_and_is_sorted() {
        let z = zoo().unwrap();
        assert_eq!(z.len(), 10);
        let names: Vec<&str> = z.iter().map(|i| i.name.as_str()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        let sizes: Vec<usize> = z.iter().map(|i| i.module.size()).collect();
        assert_eq!(sizes, vec![4, 2, 16, 16, 81, 4, 4, 16, 9, 3]);
    }

    #[test]
    fn matrix_spines() {
        let m = instance("mat2-boolean-regular").unwrap();
        assert_eq!(m.declared_spine.to_vec(), vec![1, 8]);
        let p = instance("mat2-boolean-permuted").unwrap();
        assert_eq!(p.declared_spine.to_vec(), vec![2, 4]);
        let mu = instance("monoid-boolean-matunits").unwrap();
        assert_eq!(mu.declared_spine.to_vec(), vec![0, 1, 8]);
    }

    #[test]
    fn bad_declarations_are_rejected() {
        let f = FreeModule::new(Arc::new(Semiring::boolean()), 2).unwrap();
        let v = Arc::new(f.module().clone());
        let err = ZooInstance::new(
            "bad",
            v,
            Subset::singleton(4, 3),
            Subset::singleton(4, 3),
            Subset::singleton(2, 1),
            Construction::Custom,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }
}
