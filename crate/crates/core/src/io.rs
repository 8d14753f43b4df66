//! JSON formats for semirings, modules, monoids and check configurations.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::module::Module;
use crate::monoid::FiniteMonoid;
use crate::semiring::Semiring;
use crate::subset::Subset;
use crate::zoo::{Construction, ZooInstance};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemiringFile {
    pub name: String,
    pub size: usize,
    pub zero: usize,
    pub one: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidFile {
    pub size: usize,
    pub identity: Option<usize>,
    #[serde(default)]
    pub zero: Option<usize>,
    pub op: Vec<Vec<usize>>,
}

/// A module's semiring: a path relative to the module file, or the table inline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SemiringRef {
    Path(String),
    Inline(SemiringFile),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub semiring: SemiringRef,
    pub size: usize,
    pub zero: usize,
    pub add: Vec<Vec<usize>>,
    /// Indexed `[scalar][vector]`.
    pub act: Vec<Vec<usize>>,
}

/// Options for `sa check`. With a module, `generators` and `semiring_spine`
/// are required and `spine` defaults to their product `M·S`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckConfig {
    pub name: Option<String>,
    pub spine: Option<Vec<usize>>,
    pub generators: Option<Vec<usize>>,
    pub semiring_spine: Option<Vec<usize>>,
    /// Zoo instance names to run when no module is given.
    pub instances: Option<Vec<String>>,
    pub theorems: Option<Vec<String>>,
}

#[derive(Debug, Clone)]
pub enum Structure {
    Semiring(Semiring),
    Module(Module),
    Monoid(FiniteMonoid),
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Semiring(_) => "semiring",
            Structure::Module(_) => "module",
            Structure::Monoid(_) => "monoid",
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn parse<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn check_size(declared: usize, table: &[Vec<usize>], what: &str) -> Result<()> {
    if declared != table.len() {
        return Err(Error::Shape(format!(
            "size is {declared} but the {what} table has {} rows",
            table.len()
        )));
    }
    Ok(())
}

impl SemiringFile {
    pub fn build(self, limits: &Limits) -> Result<Semiring> {
        check_size(self.size, &self.add, "add")?;
        Semiring::with_limits(self.name, self.zero, self.one, self.add, self.mul, limits)
    }

    pub fn from_semiring(r: &Semiring) -> Self {
        Self {
            name: r.name().to_string(),
            size: r.size(),
            zero: r.zero(),
            one: r.one(),
            add: r.add_table(),
            mul: r.mul_table(),
        }
    }
}

impl MonoidFile {
    pub fn build(self) -> Result<FiniteMonoid> {
        check_size(self.size, &self.op, "op")?;
        FiniteMonoid::new(self.identity, self.zero, self.op)
    }

    pub fn from_monoid(m: &FiniteMonoid) -> Self {
        Self {
            size: m.size(),
            identity: m.identity(),
            zero: m.zero(),
            op: m.op_table(),
        }
    }
}

impl ModuleFile {
    /// `base` resolves a semiring given by path.
    pub fn build(self, base: &Path, limits: &Limits) -> Result<Module> {
        check_size(self.size, &self.add, "add")?;
        let r = match self.semiring {
            SemiringRef::Inline(file) => file.build(limits)?,
            SemiringRef::Path(p) => load_semiring_with(&base.join(p), limits)?,
        };
        Module::with_limits(Arc::new(r), self.zero, self.add, self.act, limits)
    }

    pub fn from_module(v: &Module) -> Self {
        Self {
            semiring: SemiringRef::Inline(SemiringFile::from_semiring(v.semiring())),
            size: v.size(),
            zero: v.zero(),
            add: v.add_table(),
            act: v.act_table(),
        }
    }
}

fn dir_of(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

pub fn load_semiring(path: impl AsRef<Path>) -> Result<Semiring> {
    load_semiring_with(path.as_ref(), &Limits::from_env())
}

pub fn load_semiring_with(path: &Path, limits: &Limits) -> Result<Semiring> {
    parse::<SemiringFile>(&read(path)?, &path.display().to_string())?.build(limits)
}

pub fn load_module(path: impl AsRef<Path>) -> Result<Module> {
    load_module_with(path.as_ref(), &Limits::from_env())
}

pub fn load_module_with(path: &Path, limits: &Limits) -> Result<Module> {
    parse::<ModuleFile>(&read(path)?, &path.display().to_string())?.build(&dir_of(path), limits)
}

pub fn load_monoid(path: impl AsRef<Path>) -> Result<FiniteMonoid> {
    let path = path.as_ref();
    parse::<MonoidFile>(&read(path)?, &path.display().to_string())?.build()
}

pub fn load_config(path: impl AsRef<Path>) -> Result<CheckConfig> {
    let path = path.as_ref();
    parse(&read(path)?, &path.display().to_string())
}

/// Loads whichever structure the file holds, judged by its table keys.
pub fn load_structure(path: impl AsRef<Path>, limits: &Limits) -> Result<Structure> {
    let path = path.as_ref();
    let text = read(path)?;
    let what = path.display().to_string();
    let value: serde_json::Value = parse(&text, &what)?;
    let has = |key: &str| value.get(key).is_some();
    if has("act") {
        Ok(Structure::Module(
            parse::<ModuleFile>(&text, &what)?.build(&dir_of(path), limits)?,
        ))
    } else if has("mul") {
        Ok(Structure::Semiring(
            parse::<SemiringFile>(&text, &what)?.build(limits)?,
        ))
    } else if has("op") {
        Ok(Structure::Monoid(
            parse::<MonoidFile>(&text, &what)?.build()?,
        ))
    } else {
        Err(Error::Parse(format!(
            "{what}: expected a semiring (mul), module (act) or monoid (op) table"
        )))
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

pub fn emit_semiring(r: &Semiring) -> String {
    to_json(&SemiringFile::from_semiring(r))
}

pub fn emit_module(v: &Module) -> String {
    to_json(&ModuleFile::from_module(v))
}

pub fn emit_monoid(m: &FiniteMonoid) -> String {
    to_json(&MonoidFile::from_monoid(m))
}

/// Parses `1,4,7` (or an empty string) into a subset of `0..domain`.
pub fn parse_subset(text: &str, domain: usize) -> Result<Subset> {
    let mut indices = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let x: usize = part
            .parse()
            .map_err(|_| Error::Parse(format!("{part:?} is not an element index")))?;
        indices.push(x);
    }
    Subset::from_indices(domain, indices)
}

fn subset_of(indices: &[usize], domain: usize) -> Result<Subset> {
    Subset::from_indices(domain, indices.iter().copied())
}

/// Builds a checkable instance from a module and the spine data in `config`.
pub fn instance_from_config(module: Module, config: &CheckConfig) -> Result<ZooInstance> {
    let missing = |field: &str| Error::Parse(format!("check config needs `{field}` for a module"));
    let module = Arc::new(module);
    let r = module.semiring().clone();
    let generators = subset_of(
        config
            .generators
            .as_deref()
            .ok_or_else(|| missing("generators"))?,
        module.size(),
    )?;
    let m = subset_of(
        config
            .semiring_spine
            .as_deref()
            .ok_or_else(|| missing("semiring_spine"))?,
        r.size(),
    )?;
    let spine = match &config.spine {
        Some(t) => subset_of(t, module.size())?,
        None => module.product_set(&m, &generators),
    };
    let name = config.name.clone().unwrap_or_else(|| "custom".to_string());
    ZooInstance::new(name, module, spine, generators, m, Construction::Custom)
}
