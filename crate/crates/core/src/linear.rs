use std::sync::Arc;

use crate::error::{Error, Result};
use crate::module::{Module, Submodule};
use crate::subset::Subset;

/// An R-linear map between finite modules, stored as a total table.
#[derive(Debug, Clone)]
pub struct LinearMap {
    domain: Arc<Module>,
    codomain: Arc<Module>,
    table: Vec<usize>,
}

impl LinearMap {
    pub fn new(domain: Arc<Module>, codomain: Arc<Module>, table: Vec<usize>) -> Result<Self> {
        if !domain.semiring().same_tables(codomain.semiring()) {
            return Err(Error::SemiringMismatch);
        }
        if table.len() != domain.size() {
            return Err(Error::Shape(format!(
                "map table has {} entries, domain has {}",
                table.len(),
                domain.size()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&y| y >= codomain.size()) {
            return Err(Error::OutOfRange {
                element: bad,
                size: codomain.size(),
            });
        }
        let f = |x: usize| table[x];
        if f(domain.zero()) != codomain.zero() {
            return Err(Error::NotLinear("φ(0) ≠ 0".into()));
        }
        for x in 0..domain.size() {
            for y in 0..domain.size() {
                if f(domain.add(x, y)) != codomain.add(f(x), f(y)) {
                    return Err(Error::NotLinear(format!("φ({x} + {y}) ≠ φ({x}) + φ({y})")));
                }
            }
            for r in domain.semiring().elements() {
                if f(domain.act(r, x)) != codomain.act(r, f(x)) {
                    return Err(Error::NotLinear(format!("φ({r}·{x}) ≠ {r}·φ({x})")));
                }
            }
        }
        Ok(Self {
            domain,
            codomain,
            table,
        })
    }

    pub fn from_fn(
        domain: Arc<Module>,
        codomain: Arc<Module>,
        f: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        let table = (0..domain.size()).map(f).collect();
        Self::new(domain, codomain, table)
    }

    pub fn identity(module: Arc<Module>) -> Self {
        let table = (0..module.size()).collect();
        Self {
            domain: module.clone(),
            codomain: module,
            table,
        }
    }

    pub fn domain(&self) -> &Arc<Module> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Module> {
        &self.codomain
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn image_of(&self, set: &Subset) -> Subset {
        let mut out = Subset::empty(self.codomain.size());
        for x in set {
            out.insert(self.table[x]);
        }
        out
    }

    /// `φ(V)`, a submodule of the codomain.
    pub fn image(&self) -> Submodule {
        let img = self.image_of(&Subset::full(self.domain.size()));
        debug_assert!(self.codomain.is_submodule(&img));
        Submodule::new_unchecked(img)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::FreeModule;
    use crate::semiring::Semiring;

    fn setup() -> (FreeModule, Arc<Module>, Arc<Module>) {
        let b = Arc::new(Semiring::boolean());
        let f = FreeModule::new(b.clone(), 2).unwrap();
        let v = Arc::new(f.module().clone());
        let r = Arc::new(Module::regular(b));
        (f, v, r)
    }

    #[test]
    fn coordinate_sum_is_linear_and_onto() {
        let (f, v, r) = setup();
        let phi = LinearMap::from_fn(v, r.clone(), |x| {
            let c = f.decode(x);
            r.add(c[0], c[1])
        })
        .unwrap();
        assert_eq!(phi.image().to_vec(), vec![0, 1]);
    }

    #[test]
    fn identity_and_swap() {
        let (f, v, _) = setup();
        let id = LinearMap::identity(v.clone());
        assert_eq!(id.image().len(), 4);
        let swap = LinearMap::from_fn(v.clone(), v, |x| {
            let c = f.decode(x);
            f.encode(&[c[1], c[0]])
        })
        .unwrap();
        assert_eq!(swap.apply(f.basis(0)), f.basis(1));
        assert_eq!(swap.image().len(), 4);
    }

    #[test]
    fn non_linear_maps_are_rejected() {
        let (_, v, r) = setup();
        // sends only e1 + e2 to 1: additivity fails at e1 + e2
        let err = LinearMap::from_fn(v.clone(), r.clone(), |x| usize::from(x == 3)).unwrap_err();
        assert!(matches!(err, Error::NotLinear(_)));
        let err = LinearMap::from_fn(v, r, |_| 1).unwrap_err();
        assert!(matches!(err, Error::NotLinear(_)));
    }
}
