//! Writes the bundled scene files under `scenes/` at the workspace root.
//! Regenerate with `cargo run -p confusability-cli --example gen_scenes`;
//! output is deterministic, so reruns are byte-identical.

use std::fs;
use std::path::PathBuf;

use num_complex::Complex64;

use confusability::graph::build_graph;
use confusability::group::{FiniteGroup, GroupKind};
use confusability::linalg::{ComplexMatrix, StateVector, Tolerance};
use confusability::representation::validate_rep;
use confusability::subspace::{complete_family, component_subspaces};
use confusability_cli::scene::{ChannelSpec, CostSpec, GroupSpec, RepSpec, SceneFile};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn tol() -> Tolerance {
    Tolerance::default()
}

fn scenes_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenes")
}

fn write_scene(relative: &str, scene: &SceneFile) {
    let path = scenes_dir().join(relative);
    fs::create_dir_all(path.parent().unwrap()).unwrap();
    let text = format!("{}\n", serde_json::to_string_pretty(scene).unwrap());
    fs::write(&path, text).unwrap();
    println!("wrote {relative}");
}

/// The completed component-projector channel of `(group, matrices, state)`.
fn completed_projector_channel(
    kind: &GroupKind,
    matrices: &[ComplexMatrix],
    state: &StateVector,
) -> ChannelSpec {
    let group = FiniteGroup::standard(kind).unwrap();
    let rep = validate_rep(group, matrices.to_vec(), tol()).unwrap();
    let graph = build_graph(&rep, state, tol()).unwrap();
    let family = component_subspaces(&rep, state, &graph, tol()).unwrap();
    let completed = complete_family(family, tol()).unwrap();
    ChannelSpec {
        dim: rep.dim,
        kraus: completed.projectors,
    }
}

fn z6_matrices() -> Vec<ComplexMatrix> {
    let zeta = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
    (0..6)
        .map(|g| ComplexMatrix::from_diag(&[Complex64::ONE, zeta.powu(2 * g), zeta.powu(4 * g)]))
        .collect()
}

fn z6_state() -> StateVector {
    let s = 1.0 / 3f64.sqrt();
    StateVector::from_reals(&[s, s, s])
}

fn z6_povm_seed() -> ComplexMatrix {
    let eta = StateVector::from_reals(&[1.0, 1.0, 1.0]);
    ComplexMatrix::outer(&eta, &eta).scale(c(1.0 / 6.0, 0.0))
}

fn z6_scene() -> SceneFile {
    let kind = GroupKind::Cyclic(6);
    let matrices = z6_matrices();
    let state = z6_state();
    let channel = completed_projector_channel(&kind, &matrices, &state);
    SceneFile {
        group: GroupSpec::Standard(kind.to_string()),
        rep: RepSpec { dim: 3, matrices },
        state,
        channel: Some(channel),
        povm_seed: Some(z6_povm_seed()),
        cost: Some(CostSpec::Named {
            kind: "delta".into(),
        }),
        tolerance: None,
    }
}

fn klein_scene() -> SceneFile {
    let kind = GroupKind::Klein;
    let z = ComplexMatrix::from_diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
    let x = ComplexMatrix::new(
        2,
        2,
        vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
    )
    .unwrap();
    let zx = z.mul(&x);
    let matrices = vec![ComplexMatrix::identity(2), z, x, zx];
    let state = StateVector::basis_state(2, 0);
    let channel = completed_projector_channel(&kind, &matrices, &state);
    SceneFile {
        group: GroupSpec::Standard(kind.to_string()),
        rep: RepSpec { dim: 2, matrices },
        state,
        channel: Some(channel),
        povm_seed: Some(ComplexMatrix::identity(2).scale(c(0.25, 0.0))),
        cost: Some(CostSpec::Named {
            kind: "delta".into(),
        }),
        tolerance: None,
    }
}

fn s3_perm_matrices() -> Vec<ComplexMatrix> {
    confusability::group::lexicographic_permutations(3)
        .iter()
        .map(|p| {
            let mut m = ComplexMatrix::zeros(3, 3);
            for j in 0..3 {
                m.set(p[j], j, Complex64::ONE);
            }
            m
        })
        .collect()
}

fn s3_perm_scene() -> SceneFile {
    let kind = GroupKind::Symmetric(3);
    let matrices = s3_perm_matrices();
    let state = StateVector::basis_state(3, 0);
    let channel = completed_projector_channel(&kind, &matrices, &state);
    SceneFile {
        group: GroupSpec::Standard(kind.to_string()),
        rep: RepSpec { dim: 3, matrices },
        state,
        channel: Some(channel),
        povm_seed: Some(ComplexMatrix::from_diag(&[
            c(0.5, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
        ])),
        cost: Some(CostSpec::Named {
            kind: "delta".into(),
        }),
        tolerance: None,
    }
}

fn s3_sign_scene() -> SceneFile {
    let kind = GroupKind::Symmetric(3);
    let matrices: Vec<ComplexMatrix> = confusability::group::lexicographic_permutations(3)
        .iter()
        .map(|p| {
            let mut inversions = 0;
            for i in 0..3 {
                for j in (i + 1)..3 {
                    if p[i] > p[j] {
                        inversions += 1;
                    }
                }
            }
            let sgn = if inversions % 2 == 0 { 1.0 } else { -1.0 };
            ComplexMatrix::from_diag(&[Complex64::ONE, c(sgn, 0.0)])
        })
        .collect();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let state = StateVector::from_reals(&[s, s]);
    let channel = completed_projector_channel(&kind, &matrices, &state);
    SceneFile {
        group: GroupSpec::Standard(kind.to_string()),
        rep: RepSpec { dim: 2, matrices },
        state,
        channel: Some(channel),
        povm_seed: Some(ComplexMatrix::identity(2).scale(c(1.0 / 6.0, 0.0))),
        cost: Some(CostSpec::Named {
            kind: "delta".into(),
        }),
        tolerance: None,
    }
}

fn z2_dim3_matrices() -> Vec<ComplexMatrix> {
    vec![
        ComplexMatrix::identity(3),
        ComplexMatrix::from_diag(&[c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]),
    ]
}

fn z2_dephasing_kraus() -> Vec<ComplexMatrix> {
    vec![
        ComplexMatrix::from_diag(&[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]),
        ComplexMatrix::from_diag(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]),
    ]
}

fn z2_dephase_scene() -> SceneFile {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    SceneFile {
        group: GroupSpec::Standard(GroupKind::Cyclic(2).to_string()),
        rep: RepSpec {
            dim: 3,
            matrices: z2_dim3_matrices(),
        },
        state: StateVector::from_reals(&[s, 0.0, s]),
        channel: Some(ChannelSpec {
            dim: 3,
            kraus: z2_dephasing_kraus(),
        }),
        povm_seed: Some(ComplexMatrix::identity(3).scale(c(0.5, 0.0))),
        cost: Some(CostSpec::Named {
            kind: "delta".into(),
        }),
        tolerance: None,
    }
}

/// Computational dephasing is not covariant for the {I, Hadamard} rep, so
/// the dfs check must record a premise failure and exit 1.
fn noncovariant_scene() -> SceneFile {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let hadamard =
        ComplexMatrix::new(2, 2, vec![c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)]).unwrap();
    SceneFile {
        group: GroupSpec::Standard(GroupKind::Cyclic(2).to_string()),
        rep: RepSpec {
            dim: 2,
            matrices: vec![ComplexMatrix::identity(2), hadamard],
        },
        state: StateVector::basis_state(2, 0),
        channel: Some(ChannelSpec {
            dim: 2,
            kraus: vec![
                ComplexMatrix::from_diag(&[c(1.0, 0.0), c(0.0, 0.0)]),
                ComplexMatrix::from_diag(&[c(0.0, 0.0), c(1.0, 0.0)]),
            ],
        }),
        povm_seed: None,
        cost: None,
        tolerance: None,
    }
}

/// The channel is covariant but the seed is not a fixed point, so the dfs
/// check must record a premise failure and exit 1.
fn unfixed_seed_scene() -> SceneFile {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    SceneFile {
        group: GroupSpec::Standard(GroupKind::Cyclic(2).to_string()),
        rep: RepSpec {
            dim: 3,
            matrices: z2_dim3_matrices(),
        },
        state: StateVector::from_reals(&[s, s, 0.0]),
        channel: Some(ChannelSpec {
            dim: 3,
            kraus: z2_dephasing_kraus(),
        }),
        povm_seed: None,
        cost: None,
        tolerance: None,
    }
}

/// The unscaled seed effect sums to 6I instead of I, so estimate must report
/// the completeness residual and exit 1.
fn unscaled_povm_scene() -> SceneFile {
    let eta = StateVector::from_reals(&[1.0, 1.0, 1.0]);
    SceneFile {
        group: GroupSpec::Standard(GroupKind::Cyclic(6).to_string()),
        rep: RepSpec {
            dim: 3,
            matrices: z6_matrices(),
        },
        state: z6_state(),
        channel: None,
        povm_seed: Some(ComplexMatrix::outer(&eta, &eta)),
        cost: Some(CostSpec::Named {
            kind: "delta".into(),
        }),
        tolerance: None,
    }
}

fn main() {
    write_scene("z6_phase.json", &z6_scene());
    write_scene("klein_pauli.json", &klein_scene());
    write_scene("s3_perm.json", &s3_perm_scene());
    write_scene("s3_sign.json", &s3_sign_scene());
    write_scene("z2_dephase.json", &z2_dephase_scene());
    write_scene("negative/noncovariant.json", &noncovariant_scene());
    write_scene("negative/unfixed_seed.json", &unfixed_seed_scene());
    write_scene("negative/unscaled_povm.json", &unscaled_povm_scene());
}
