//! Loading a workspace file: named algebras, quivers, groups, modules,
//! Frobenius data and chains over one scalar field.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;
use thiserror::Error;

use nchrr_core::constructors::{group_algebra, lambda_vg, DirectedAlgebra, DirectedError, FiniteGroupData, FrobeniusData};
use nchrr_core::json::{AlgebraRef, AlgebraSpec, ChainSpec, FrobeniusSpec, GroupSpec, JsonError, ModuleSpec, QuiverSpec};
use nchrr_core::perfect::PerfectModule;
use nchrr_core::{DgAlgebra, Field, HochschildChain};

/// Problems with the input itself; these map to exit code 2.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("{0}")]
    Reference(String),
    #[error("{object}: {source}")]
    Shape { object: String, source: JsonError },
    #[error("bad field: {0}")]
    Field(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWorkspace {
    #[serde(default)]
    field: Option<String>,
    #[serde(default)]
    algebras: BTreeMap<String, AlgebraEntry>,
    #[serde(default)]
    groups: BTreeMap<String, GroupSpec>,
    #[serde(default)]
    modules: BTreeMap<String, ModuleEntry>,
    #[serde(default)]
    frobenius: BTreeMap<String, FrobeniusSpec>,
    #[serde(default)]
    chains: BTreeMap<String, ChainEntry>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AlgebraEntry {
    Quiver { quiver: QuiverSpec },
    GroupAlgebra { group_algebra: String },
    Lambda { lambda_vg: String },
    Table(AlgebraSpec),
}

#[derive(Clone, Deserialize)]
#[serde(untagged)]
pub enum ObjectRef {
    Index(usize),
    Label(String),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ModuleBody {
    Projective { projective: ObjectRef },
    Simple { simple: ObjectRef },
    Twisted(ModuleSpec),
}

#[derive(Deserialize)]
struct ModuleEntry {
    algebra: String,
    #[serde(flatten)]
    body: ModuleBody,
}

#[derive(Deserialize)]
struct ChainEntry {
    algebra: String,
    #[serde(flatten)]
    chain: ChainSpec,
}

/// A structural validator that rejected a named object.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Failure {
    pub object: String,
    pub message: String,
}

pub struct NamedModule {
    pub algebra: String,
    pub module: PerfectModule,
}

pub struct NamedChain {
    pub algebra: String,
    pub chain: HochschildChain,
}

/// Everything that loaded and validated. Objects that failed a validator are
/// left out and listed in `failures`.
pub struct Workspace {
    pub field: Field,
    pub algebras: BTreeMap<String, Arc<DgAlgebra>>,
    pub quivers: BTreeMap<String, DirectedAlgebra>,
    pub groups: BTreeMap<String, FiniteGroupData>,
    pub modules: BTreeMap<String, NamedModule>,
    pub frobenius: BTreeMap<String, FrobeniusData>,
    pub chains: BTreeMap<String, NamedChain>,
    pub failures: Vec<Failure>,
    declared: Vec<String>,
}

impl Workspace {
    pub fn read(path: &str, field_override: Option<&str>) -> Result<Self, InputError> {
        let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
            path: path.to_string(),
            source,
        })?;
        Self::parse(&text, field_override)
    }

    pub fn parse(text: &str, field_override: Option<&str>) -> Result<Self, InputError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let raw: RawWorkspace = serde_path_to_error::deserialize(de).map_err(|e| InputError::Parse {
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })?;
        let spec = field_override.map(str::to_string).or(raw.field.clone()).unwrap_or_else(|| "q".into());
        let field: Field = spec.parse().map_err(|_| InputError::Field(spec.clone()))?;
        let mut ws = Workspace {
            field,
            algebras: BTreeMap::new(),
            quivers: BTreeMap::new(),
            groups: BTreeMap::new(),
            modules: BTreeMap::new(),
            frobenius: BTreeMap::new(),
            chains: BTreeMap::new(),
            failures: Vec::new(),
            declared: raw.algebras.keys().cloned().collect(),
        };
        ws.load(raw)?;
        Ok(ws)
    }

    fn fail(&mut self, object: String, message: impl ToString) {
        self.failures.push(Failure {
            object,
            message: message.to_string(),
        });
    }

    fn load(&mut self, raw: RawWorkspace) -> Result<(), InputError> {
        let field = self.field;
        let shape = |object: String| move |source: JsonError| InputError::Shape { object, source };

        for (name, g) in &raw.groups {
            let data = g.build_unchecked(field).map_err(shape(format!("groups.{name}")))?;
            match data.validate() {
                Ok(()) => {
                    self.groups.insert(name.clone(), data);
                }
                Err(e) => self.fail(format!("groups.{name}"), e),
            }
        }

        for (name, entry) in &raw.algebras {
            let object = format!("algebras.{name}");
            let alg = match entry {
                AlgebraEntry::Table(spec) => spec.build(field).map_err(shape(object.clone()))?,
                AlgebraEntry::Quiver { quiver } => match quiver.build(field) {
                    Ok(d) => {
                        let alg = d.algebra().as_ref().clone();
                        self.quivers.insert(name.clone(), d);
                        alg
                    }
                    Err(JsonError::Directed(e @ (DirectedError::Shape(_) | DirectedError::Composition(_)))) => {
                        return Err(InputError::Shape {
                            object,
                            source: JsonError::Directed(e),
                        })
                    }
                    Err(e) => {
                        self.fail(object, e);
                        continue;
                    }
                },
                AlgebraEntry::GroupAlgebra { group_algebra: g } | AlgebraEntry::Lambda { lambda_vg: g } => {
                    if !raw.groups.contains_key(g) {
                        return Err(InputError::Reference(format!("{object} refers to unknown group {g:?}")));
                    }
                    let Some(data) = self.groups.get(g) else {
                        self.fail(object, format!("group {g:?} failed validation"));
                        continue;
                    };
                    if matches!(entry, AlgebraEntry::GroupAlgebra { .. }) {
                        group_algebra(data)
                    } else {
                        match lambda_vg(data) {
                            Ok(a) => a,
                            Err(e) => {
                                self.fail(object, e);
                                continue;
                            }
                        }
                    }
                }
            };
            let report = alg.validate();
            if report.is_ok() {
                self.algebras.insert(name.clone(), Arc::new(alg));
            } else {
                for f in &report.failures {
                    self.fail(object.clone(), f);
                }
                self.quivers.remove(name);
            }
        }

        for (name, entry) in &raw.modules {
            let object = format!("modules.{name}");
            let Some(alg) = self.algebra_for(&object, &entry.algebra)? else {
                continue;
            };
            let built = match &entry.body {
                ModuleBody::Twisted(spec) => match spec.build_unchecked(&alg) {
                    Err(e) => return Err(shape(object)(e)),
                    Ok(_) => spec.build(&alg).map_err(|e| e.to_string()),
                },
                ModuleBody::Projective { projective: o } | ModuleBody::Simple { simple: o } => {
                    let Some(quiver) = self.quivers.get(&entry.algebra) else {
                        return Err(InputError::Reference(format!("{object}: algebra {:?} is not a quiver", entry.algebra)));
                    };
                    let i = object_index(quiver, o).ok_or_else(|| InputError::Reference(format!("{object}: no such object")))?;
                    let m = if matches!(entry.body, ModuleBody::Projective { .. }) {
                        quiver.projective_module(i)
                    } else {
                        quiver.simple_resolution(i)
                    };
                    m.map_err(|e| e.to_string())
                }
            };
            match built {
                Ok(module) => {
                    self.modules.insert(
                        name.clone(),
                        NamedModule {
                            algebra: entry.algebra.clone(),
                            module,
                        },
                    );
                }
                Err(e) => self.fail(object, e),
            }
        }

        for (name, spec) in &raw.frobenius {
            let object = format!("frobenius.{name}");
            if let AlgebraRef::Name(a) = &spec.algebra {
                if self.algebra_for(&object, a)?.is_none() {
                    continue;
                }
            }
            match spec.build(field, |n| self.algebras.get(n).cloned()) {
                Ok(f) => {
                    self.frobenius.insert(name.clone(), f);
                }
                Err(e @ (JsonError::Frobenius(_) | JsonError::Algebra(_))) => self.fail(object, e),
                Err(e) => return Err(shape(object)(e)),
            }
        }

        for (name, entry) in &raw.chains {
            let object = format!("chains.{name}");
            let Some(alg) = self.algebra_for(&object, &entry.algebra)? else {
                continue;
            };
            let chain = entry.chain.build(&alg).map_err(shape(object))?;
            self.chains.insert(
                name.clone(),
                NamedChain {
                    algebra: entry.algebra.clone(),
                    chain,
                },
            );
        }
        Ok(())
    }

    /// `Ok(None)` when the algebra exists but failed validation.
    fn algebra_for(&mut self, object: &str, name: &str) -> Result<Option<Arc<DgAlgebra>>, InputError> {
        if !self.declared.iter().any(|d| d == name) {
            return Err(InputError::Reference(format!("{object} refers to unknown algebra {name:?}")));
        }
        match self.algebras.get(name) {
            Some(a) => Ok(Some(a.clone())),
            None => {
                self.fail(object.to_string(), format!("algebra {name:?} failed validation"));
                Ok(None)
            }
        }
    }
}

fn object_index(quiver: &DirectedAlgebra, o: &ObjectRef) -> Option<usize> {
    match o {
        ObjectRef::Index(i) => (*i < quiver.objects()).then_some(*i),
        ObjectRef::Label(l) => quiver.data().objects.iter().position(|x| x == l),
    }
}
