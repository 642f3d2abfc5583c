//! Command implementations. Each returns the rendered report plus the exit
//! code; verification failures are reports with exit code 1, while input
//! problems surface as [`CliError`] and exit with 2.

use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use confusability::channel::verify_dfs;
use confusability::estimation::{evaluate_cost, syndrome_reduce, validate_povm};
use confusability::graph::{build_graph, verify_prop2, ConfusabilityGraph};
use confusability::linalg::{max_abs_diff, ComplexMatrix};
use confusability::subspace::{complete_family, component_subspaces, decohere, DensityOperator};
use confusability::{Error, Verdict};

use crate::scene::LoadedScene;
use crate::CliError;

/// Rendered report plus the process exit code it calls for.
pub struct CommandOutput {
    pub stdout: String,
    pub exit_code: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Dot,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Prop1,
    Prop2,
    Deco,
    Dfs,
    Reduce,
}

impl FromStr for CheckKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.trim() {
            "prop1" => Ok(Self::Prop1),
            "prop2" => Ok(Self::Prop2),
            "deco" => Ok(Self::Deco),
            "dfs" => Ok(Self::Dfs),
            "reduce" => Ok(Self::Reduce),
            other => Err(CliError::Scene(format!(
                "unknown check '{other}'; expected prop1, prop2, deco, dfs, or reduce"
            ))),
        }
    }
}

fn pretty(value: &serde_json::Value) -> Result<String, CliError> {
    Ok(format!("{}\n", serde_json::to_string_pretty(value)?))
}

/// Renders the scene's confusability graph as DOT or JSON.
pub fn cmd_graph(scene: &LoadedScene, format: OutputFormat) -> Result<CommandOutput, CliError> {
    let graph = build_graph(&scene.rep, &scene.seed, scene.tol)?;
    let stdout = match format {
        OutputFormat::Dot => graph.to_dot(),
        OutputFormat::Json => {
            let n = graph.group.order;
            let adjacency: Vec<Vec<u8>> = (0..n)
                .map(|g| (0..n).map(|h| u8::from(graph.adjacent(g, h))).collect())
                .collect();
            let magnitudes: Vec<f64> = graph.overlaps.values.iter().map(|v| v.norm()).collect();
            pretty(&json!({
                "eps": graph.eps,
                "order": n,
                "overlap_magnitudes": magnitudes,
                "connect_set": graph.connect_set.members,
                "adjacency": adjacency,
                "components": graph.components,
                "identity_component": graph.identity_component.members,
                "near_threshold": graph.near_threshold,
            }))?
        }
    };
    Ok(CommandOutput {
        stdout,
        exit_code: 0,
    })
}

#[derive(Serialize)]
struct DecoReport {
    verdict: Verdict,
    max_orbit_residual: f64,
    idempotence_residual: f64,
    subspace_dims: Vec<usize>,
}

fn deco_check(scene: &LoadedScene, graph: &ConfusabilityGraph) -> Result<DecoReport, CliError> {
    let family = component_subspaces(&scene.rep, &scene.seed, graph, scene.tol)?;
    let orbit = scene.rep.orbit(&scene.seed, scene.tol)?;
    let mut max_orbit_residual: f64 = 0.0;
    for phi in &orbit {
        let rho = DensityOperator::from_pure(phi, scene.tol)?;
        let fixed = decohere(&family, &rho)?;
        max_orbit_residual = max_orbit_residual.max(max_abs_diff(&fixed.matrix, &rho.matrix));
    }

    let completed = complete_family(family, scene.tol)?;
    let mut blend = ComplexMatrix::identity(scene.rep.dim);
    for phi in &orbit {
        blend = blend.add(&ComplexMatrix::outer(phi, phi));
    }
    let total = (orbit.len() + scene.rep.dim) as f64;
    let rho = DensityOperator::new(blend.scale(Complex64::new(1.0 / total, 0.0)), scene.tol)?;
    let once = decohere(&completed, &rho)?;
    let twice = decohere(&completed, &once)?;
    let idempotence_residual = max_abs_diff(&twice.matrix, &once.matrix);

    let threshold = 10.0 * scene.tol.eps();
    let verdict = if max_orbit_residual <= threshold && idempotence_residual <= threshold {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(DecoReport {
        verdict,
        max_orbit_residual,
        idempotence_residual,
        subspace_dims: completed.dims,
    })
}

#[derive(Serialize)]
struct ReduceReport {
    verdict: Verdict,
    max_disturbance: f64,
    subgroup_order: usize,
    reduced_dim: usize,
    representatives: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<String>,
}

fn reduce_check(scene: &LoadedScene, graph: &ConfusabilityGraph) -> Result<ReduceReport, CliError> {
    let family = component_subspaces(&scene.rep, &scene.seed, graph, scene.tol)?;
    let n = scene.rep.group.order;
    let mut max_disturbance: f64 = 0.0;
    let mut representatives = Vec::new();
    let mut subgroup_order = 0;
    let mut reduced_dim = 0;
    let mut failure = None;
    for secret in 0..n {
        match syndrome_reduce(&scene.rep, &scene.seed, &family, secret, scene.tol) {
            Ok(result) => {
                max_disturbance = max_disturbance.max(result.disturbance);
                subgroup_order = result.reduced_rep.group.order;
                reduced_dim = result.reduced_rep.dim;
                if !representatives.contains(&result.representative) {
                    representatives.push(result.representative);
                }
            }
            Err(
                err @ (Error::NoCapturingSubspace { .. }
                | Error::ReductionMismatch { .. }
                | Error::ReducedNotUnitary { .. }),
            ) => {
                failure = Some(err.to_string());
                break;
            }
            Err(other) => return Err(other.into()),
        }
    }
    let verdict = if failure.is_none() && max_disturbance <= 10.0 * scene.tol.eps() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(ReduceReport {
        verdict,
        max_disturbance,
        subgroup_order,
        reduced_dim,
        representatives,
        failure,
    })
}

/// Runs the selected verification checks and aggregates their verdicts.
/// With no explicit selection, all applicable checks run: `dfs` joins the
/// default set only when the scene provides a channel; selecting it
/// explicitly without one is an input error.
pub fn cmd_verify(
    scene: &LoadedScene,
    checks: Option<&[String]>,
    trials: usize,
    rng_seed: u64,
) -> Result<CommandOutput, CliError> {
    let selected: Vec<CheckKind> = match checks {
        Some(names) if !names.is_empty() => names
            .iter()
            .map(|name| CheckKind::from_str(name))
            .collect::<Result<_, _>>()?,
        _ => {
            let mut all = vec![CheckKind::Prop1, CheckKind::Prop2, CheckKind::Deco];
            if scene.channel.is_some() {
                all.push(CheckKind::Dfs);
            }
            all.push(CheckKind::Reduce);
            all
        }
    };
    if selected.contains(&CheckKind::Dfs) && scene.channel.is_none() {
        return Err(CliError::Scene(
            "the dfs check needs a channel in the scene".into(),
        ));
    }

    let graph = build_graph(&scene.rep, &scene.seed, scene.tol)?;
    let mut reports = serde_json::Map::new();
    let mut all_ok = true;
    for check in selected {
        let (name, value, verdict) = match check {
            CheckKind::Prop1 => {
                let report = graph.verify_prop1();
                ("prop1", serde_json::to_value(&report)?, report.verdict)
            }
            CheckKind::Prop2 => {
                let report = verify_prop2(&scene.rep, &scene.seed, &graph, scene.tol)?;
                ("prop2", serde_json::to_value(&report)?, report.verdict)
            }
            CheckKind::Deco => {
                let report = deco_check(scene, &graph)?;
                ("deco", serde_json::to_value(&report)?, report.verdict)
            }
            CheckKind::Dfs => {
                let channel = scene.channel.as_ref().expect("presence checked above");
                let report = verify_dfs(
                    channel,
                    &scene.rep,
                    &scene.seed,
                    trials,
                    rng_seed,
                    scene.tol,
                )?;
                ("dfs", serde_json::to_value(&report)?, report.verdict)
            }
            CheckKind::Reduce => {
                let report = reduce_check(scene, &graph)?;
                ("reduce", serde_json::to_value(&report)?, report.verdict)
            }
        };
        all_ok &= verdict != Verdict::Fail;
        reports.insert(name.into(), value);
    }

    let stdout = pretty(&json!({
        "tolerance": scene.tol.eps(),
        "checks": reports,
    }))?;
    Ok(CommandOutput {
        stdout,
        exit_code: i32::from(!all_ok),
    })
}

/// Builds the covariant POVM from the scene's seed effect and evaluates the
/// cost functional. An invalid POVM (non-hermitian or negative seed,
/// incomplete elements) is a verification failure: the residual is reported
/// and the exit code is 1.
pub fn cmd_estimate(scene: &LoadedScene) -> Result<CommandOutput, CliError> {
    let Some(seed_operator) = &scene.povm_seed else {
        return Err(CliError::Scene(
            "estimate needs povm_seed in the scene".into(),
        ));
    };
    let Some(cost) = &scene.cost else {
        return Err(CliError::Scene("estimate needs a cost in the scene".into()));
    };

    let povm = match validate_povm(&scene.rep, seed_operator, scene.tol) {
        Ok(povm) => povm,
        Err(err) => {
            let residual = match &err {
                Error::SeedNotHermitian { residual } => *residual,
                Error::SeedNotPositive { min_eigenvalue } => *min_eigenvalue,
                Error::PovmIncomplete { residual } => *residual,
                _ => return Err(err.into()),
            };
            let stdout = pretty(&json!({
                "verdict": Verdict::Fail,
                "error": err.to_string(),
                "residual": residual,
            }))?;
            return Ok(CommandOutput {
                stdout,
                exit_code: 1,
            });
        }
    };

    let n = scene.rep.group.order;
    let identity = ComplexMatrix::identity(scene.rep.dim);
    let mut sum = ComplexMatrix::zeros(scene.rep.dim, scene.rep.dim);
    for element in &povm.elements {
        sum = sum.add(element);
    }
    let completeness_residual = max_abs_diff(&sum, &identity);
    let mut covariance_residual: f64 = 0.0;
    for g in 0..n {
        let u = &scene.rep.matrices[g];
        let u_adjoint = u.adjoint();
        for ghat in 0..n {
            let moved = u.mul(&povm.elements[ghat]).mul(&u_adjoint);
            let target = &povm.elements[scene.rep.group.op(g, ghat)];
            covariance_residual = covariance_residual.max(max_abs_diff(&moved, target));
        }
    }

    let report = evaluate_cost(&scene.rep, &scene.seed, &povm, cost, scene.tol)?;
    let stdout = pretty(&json!({
        "worst_case": report.worst_case,
        "per_element": report.per_element,
        "completeness_residual": completeness_residual,
        "covariance_residual": covariance_residual,
        "tolerance": scene.tol.eps(),
    }))?;
    Ok(CommandOutput {
        stdout,
        exit_code: 0,
    })
}
