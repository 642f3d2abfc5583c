//! JSON scene files: one bundle carries the group, the representation, the
//! seed state, and optional channel/POVM/cost inputs; each command selects
//! the parts it needs. Complex entries are `[re, im]` pairs throughout.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use confusability::channel::QuantumChannel;
use confusability::estimation::CostFunction;
use confusability::group::{FiniteGroup, GroupKind};
use confusability::linalg::{ComplexMatrix, StateVector, Tolerance};
use confusability::representation::{validate_rep, ProjectiveRep};

use crate::CliError;

/// On-disk scene document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SceneFile {
    pub group: GroupSpec,
    pub rep: RepSpec,
    pub state: StateVector,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub channel: Option<ChannelSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub povm_seed: Option<ComplexMatrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cost: Option<CostSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

/// Either a standard-group name such as `"cyclic 6"` or an inline Cayley
/// table.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Standard(String),
    Inline { table: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepSpec {
    pub dim: usize,
    pub matrices: Vec<ComplexMatrix>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChannelSpec {
    pub dim: usize,
    pub kraus: Vec<ComplexMatrix>,
}

/// Cost table: the named zero-one cost or an explicit matrix.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CostSpec {
    Named { kind: String },
    Table { matrix: Vec<Vec<f64>> },
}

/// A scene with every part validated and all dimensions cross-checked.
pub struct LoadedScene {
    pub rep: ProjectiveRep,
    pub seed: StateVector,
    pub channel: Option<QuantumChannel>,
    pub povm_seed: Option<ComplexMatrix>,
    pub cost: Option<CostFunction>,
    pub tol: Tolerance,
}

impl SceneFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|source| CliError::Json {
            path: path.display().to_string(),
            source,
        })
    }

    /// Validates the scene; `tol_flag` takes precedence over the scene's
    /// own tolerance. All dimension cross-checks happen here, before any
    /// analysis runs.
    pub fn realize(self, tol_flag: Option<f64>) -> Result<LoadedScene, CliError> {
        let tol = match tol_flag.or(self.tolerance) {
            Some(eps) => Tolerance::new(eps)?,
            None => Tolerance::default(),
        };

        let group = match &self.group {
            GroupSpec::Standard(name) => FiniteGroup::standard(&GroupKind::from_str(name)?)?,
            GroupSpec::Inline { table } => FiniteGroup::from_cayley_table(table)?,
        };

        let dim = self.rep.dim;
        if self.rep.matrices.len() != group.order {
            return Err(CliError::Scene(format!(
                "scene lists {} rep matrices for a group of order {}",
                self.rep.matrices.len(),
                group.order
            )));
        }
        for (g, m) in self.rep.matrices.iter().enumerate() {
            if m.rows != dim || m.cols != dim {
                return Err(CliError::Scene(format!(
                    "rep matrix {g} is {}x{}, but the scene declares dim {dim}",
                    m.rows, m.cols
                )));
            }
        }
        if self.state.dim() != dim {
            return Err(CliError::Scene(format!(
                "state has dimension {}, but the rep acts on dimension {dim}",
                self.state.dim()
            )));
        }
        if let Some(channel) = &self.channel {
            if channel.dim != dim {
                return Err(CliError::Scene(format!(
                    "channel declares dim {}, but the rep acts on dimension {dim}",
                    channel.dim
                )));
            }
            for (i, k) in channel.kraus.iter().enumerate() {
                if k.rows != dim || k.cols != dim {
                    return Err(CliError::Scene(format!(
                        "kraus operator {i} is {}x{}, but the scene declares dim {dim}",
                        k.rows, k.cols
                    )));
                }
            }
        }
        if let Some(seed_operator) = &self.povm_seed {
            if seed_operator.rows != dim || seed_operator.cols != dim {
                return Err(CliError::Scene(format!(
                    "povm_seed is {}x{}, but the rep acts on dimension {dim}",
                    seed_operator.rows, seed_operator.cols
                )));
            }
        }

        let order = group.order;
        let rep = validate_rep(group, self.rep.matrices, tol)?;
        let channel = match self.channel {
            Some(spec) => Some(QuantumChannel::new(spec.kraus, tol)?),
            None => None,
        };
        let cost = match self.cost {
            Some(CostSpec::Named { kind }) if kind == "delta" => Some(CostFunction::delta(order)),
            Some(CostSpec::Named { kind }) => {
                return Err(CliError::Scene(format!(
                    "unknown cost kind '{kind}'; only 'delta' is named"
                )));
            }
            Some(CostSpec::Table { matrix }) => {
                Some(CostFunction::from_matrix(&rep.group, &matrix)?)
            }
            None => None,
        };

        Ok(LoadedScene {
            rep,
            seed: self.state,
            channel,
            povm_seed: self.povm_seed,
            cost,
            tol,
        })
    }
}
