use crate::CliError;
use rcat::finset::{map_from_json, ParMap};
use rcat::gbundles::fixtures::{circle_principal, Circle};
use rcat::gbundles::FinGBundle;
use rcat::liegroups::TangentGroup;
use rcat::manifolds::{atlas_from_json, bundle_from_json, FinAtlas, FinBundle};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Finset,
    Poly,
}

/// Effective settings of a run, echoed into the report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Config {
    pub model: ModelKind,
    pub prime: u32,
    pub jet_depth: usize,
    pub budget: u64,
    pub seed: u64,
    /// Law suites enumerate every tuple when all objects have at most this many points.
    pub size_bound: usize,
    /// Pointwise checks enumerate carriers up to this size and sample this many points above it.
    pub samples: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            model: ModelKind::Poly,
            prime: 5,
            jet_depth: 3,
            budget: 1_000_000,
            seed: 7,
            size_bound: 16,
            samples: 100_000,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigPatch {
    pub model: Option<ModelKind>,
    pub prime: Option<u32>,
    pub jet_depth: Option<usize>,
    pub budget: Option<u64>,
    pub seed: Option<u64>,
    pub size_bound: Option<usize>,
    pub samples: Option<usize>,
}

impl Config {
    pub fn apply(&mut self, p: &ConfigPatch) {
        macro_rules! take {
            ($($f:ident),*) => { $(if let Some(v) = p.$f { self.$f = v; })* };
        }
        take!(model, prime, jet_depth, budget, seed, size_bound, samples);
    }
}

/// Something a campaign's checks run against. Paths are relative to the
/// campaign file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Target {
    /// A group file, or `builtin`: `heisenberg` or `additive:<k>` over the configured prime.
    Group {
        path: Option<PathBuf>,
        builtin: Option<String>,
    },
    /// One of the principal `C2` bundles over the 8-point circle.
    Circle {
        builtin: String,
    },
    Atlas {
        path: PathBuf,
    },
    Bundle {
        path: PathBuf,
    },
    /// `{"maps": [map, ...]}` added to the law-suite sample.
    Maps {
        path: PathBuf,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Campaign {
    pub name: String,
    #[serde(default)]
    pub targets: Vec<Target>,
    pub checks: Vec<String>,
    #[serde(default)]
    pub config: ConfigPatch,
}

/// Loaded targets plus the effective config.
#[derive(Debug, Default)]
pub struct Context {
    pub config: Config,
    pub groups: Vec<TangentGroup>,
    pub circles: Vec<(String, FinGBundle)>,
    pub atlases: Vec<(String, FinAtlas)>,
    pub bundles: Vec<(String, FinBundle)>,
    pub maps: Vec<ParMap>,
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Input {
        path: path.to_owned(),
        source: e.into(),
    })
}

fn input<T>(path: &Path, r: rcat::Result<T>) -> Result<T, CliError> {
    r.map_err(|source| CliError::Input {
        path: path.to_owned(),
        source,
    })
}

pub fn load_campaign(path: &Path) -> Result<Campaign, CliError> {
    let v = read_json(path)?;
    input(path, serde_json::from_value(v).map_err(rcat::Error::from))
}

pub fn circle_kind(name: &str) -> Option<Circle> {
    Circle::ALL.into_iter().find(|c| c.name() == name)
}

fn builtin_group(name: &str, cfg: &Config) -> rcat::Result<TangentGroup> {
    if name == "heisenberg" {
        return TangentGroup::heisenberg(cfg.prime, cfg.jet_depth);
    }
    let k = name
        .strip_prefix("additive:")
        .and_then(|k| k.parse().ok())
        .ok_or_else(|| rcat::Error::model(format!("unknown builtin group `{name}`")))?;
    TangentGroup::additive(cfg.prime, k, cfg.jet_depth)
}

impl Context {
    pub fn load(campaign: &Campaign, base: &Path, config: Config) -> Result<Context, CliError> {
        let mut cx = Context {
            config,
            ..Context::default()
        };
        let cfg = cx.config.clone();
        for t in &campaign.targets {
            match t {
                Target::Group {
                    path: Some(p),
                    builtin: None,
                } => {
                    let p = base.join(p);
                    let v = read_json(&p)?;
                    cx.groups
                        .push(input(&p, TangentGroup::from_json(&v, cfg.jet_depth))?);
                }
                Target::Group {
                    path: None,
                    builtin: Some(b),
                } => {
                    cx.groups.push(input(base, builtin_group(b, &cfg))?);
                }
                Target::Group { .. } => {
                    return Err(CliError::Input {
                        path: base.to_owned(),
                        source: rcat::Error::model(
                            "a group target needs exactly one of `path` and `builtin`",
                        ),
                    })
                }
                Target::Circle { builtin } => {
                    let kind = circle_kind(builtin).ok_or_else(|| CliError::Input {
                        path: base.to_owned(),
                        source: rcat::Error::model(format!("unknown circle bundle `{builtin}`")),
                    })?;
                    cx.circles
                        .push((builtin.clone(), input(base, circle_principal(kind))?));
                }
                Target::Atlas { path } => {
                    let p = base.join(path);
                    let v = read_json(&p)?;
                    cx.atlases
                        .push((path.display().to_string(), input(&p, atlas_from_json(&v))?));
                }
                Target::Bundle { path } => {
                    let p = base.join(path);
                    let v = read_json(&p)?;
                    cx.bundles
                        .push((path.display().to_string(), input(&p, bundle_from_json(&v))?));
                }
                Target::Maps { path } => {
                    let p = base.join(path);
                    let v = read_json(&p)?;
                    let maps =
                        v.get("maps")
                            .and_then(Value::as_array)
                            .ok_or_else(|| CliError::Input {
                                path: p.clone(),
                                source: rcat::Error::model("expected {\"maps\": [...]}"),
                            })?;
                    for m in maps {
                        cx.maps.push(input(&p, map_from_json(m))?);
                    }
                }
            }
        }
        Ok(cx)
    }
}
