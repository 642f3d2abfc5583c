//! Shared builders for the acceptance suite: the bundled example systems,
//! a randomized quotient-system generator, and an independent Gram/BFS
//! component oracle that never touches the characteristic-function shortcut.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use confusability::channel::QuantumChannel;
use confusability::group::{FiniteGroup, GroupKind, Subset};
use confusability::linalg::{orthonormal_span, ComplexMatrix, StateVector, Tolerance};
use confusability::representation::{validate_rep, ProjectiveRep};
use confusability::subspace::DensityOperator;

pub fn tol() -> Tolerance {
    Tolerance::default()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// One bundled example system with its expected class-state status.
pub struct BundledSystem {
    pub name: &'static str,
    pub rep: ProjectiveRep,
    pub seed: StateVector,
    pub class_state: bool,
}

/// Z_6 with `U_g = diag(1, zeta^2g, zeta^4g)`, `zeta = exp(i pi/3)`, and the
/// uniform seed.
pub fn z6_phase_system() -> BundledSystem {
    let group = FiniteGroup::standard(&GroupKind::Cyclic(6)).unwrap();
    let zeta = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
    let matrices = (0..6)
        .map(|g| ComplexMatrix::from_diag(&[Complex64::ONE, zeta.powu(2 * g), zeta.powu(4 * g)]))
        .collect();
    let rep = validate_rep(group, matrices, tol()).unwrap();
    let s = 1.0 / 3f64.sqrt();
    BundledSystem {
        name: "z6_phase",
        rep,
        seed: StateVector::from_reals(&[s, s, s]),
        class_state: true,
    }
}

/// Klein group on C^2 via the Pauli unitaries: a projective rep.
pub fn klein_pauli_system() -> BundledSystem {
    let group = FiniteGroup::standard(&GroupKind::Klein).unwrap();
    let z = ComplexMatrix::from_diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
    let x = ComplexMatrix::new(
        2,
        2,
        vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
    )
    .unwrap();
    let zx = z.mul(&x);
    let matrices = vec![ComplexMatrix::identity(2), z, x, zx];
    let rep = validate_rep(group, matrices, tol()).unwrap();
    BundledSystem {
        name: "klein_pauli",
        rep,
        seed: StateVector::basis_state(2, 0),
        class_state: true,
    }
}

/// S_3 permutation matrices on C^3 with a basis-state seed; the stabilizer
/// is a non-normal order-2 subgroup and the seed is not a class state.
pub fn s3_perm_system() -> BundledSystem {
    let group = FiniteGroup::standard(&GroupKind::Symmetric(3)).unwrap();
    let perms = confusability::group::lexicographic_permutations(3);
    let matrices = perms
        .iter()
        .map(|p| {
            let mut m = ComplexMatrix::zeros(3, 3);
            for j in 0..3 {
                m.set(p[j], j, Complex64::ONE);
            }
            m
        })
        .collect();
    let rep = validate_rep(group, matrices, tol()).unwrap();
    BundledSystem {
        name: "s3_perm",
        rep,
        seed: StateVector::basis_state(3, 0),
        class_state: false,
    }
}

/// S_3 through the sign character on C^2: a class state whose identity
/// component is the alternating subgroup.
pub fn s3_sign_system() -> BundledSystem {
    let group = FiniteGroup::standard(&GroupKind::Symmetric(3)).unwrap();
    let perms = confusability::group::lexicographic_permutations(3);
    let matrices = perms
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
    let rep = validate_rep(group, matrices, tol()).unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    BundledSystem {
        name: "s3_sign",
        rep,
        seed: StateVector::from_reals(&[s, s]),
        class_state: true,
    }
}

/// Z_2 on C^3 with `U_1 = diag(1, 1, -1)` and seed `(1, 0, 1)/sqrt(2)`.
pub fn z2_dim3_system() -> BundledSystem {
    let group = FiniteGroup::standard(&GroupKind::Cyclic(2)).unwrap();
    let matrices = vec![
        ComplexMatrix::identity(3),
        ComplexMatrix::from_diag(&[c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]),
    ];
    let rep = validate_rep(group, matrices, tol()).unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    BundledSystem {
        name: "z2_dim3",
        rep,
        seed: StateVector::from_reals(&[s, 0.0, s]),
        class_state: true,
    }
}

pub fn bundled_systems() -> Vec<BundledSystem> {
    vec![
        z6_phase_system(),
        klein_pauli_system(),
        s3_perm_system(),
        s3_sign_system(),
        z2_dim3_system(),
    ]
}

/// Projective measurement splitting axis 1 from the {0, 2} plane: covariant
/// for the Z_2 dim-3 rep and fixing its bundled seed.
pub fn z2_dim3_dephasing_channel() -> QuantumChannel {
    let kraus = vec![
        ComplexMatrix::from_diag(&[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]),
        ComplexMatrix::from_diag(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]),
    ];
    QuantumChannel::new(kraus, tol()).unwrap()
}

/// Z_2 represented by {I, Hadamard}: the computational dephasing channel is
/// not covariant for it, which makes a premise-gating control.
pub fn hadamard_system() -> (ProjectiveRep, StateVector) {
    let group = FiniteGroup::standard(&GroupKind::Cyclic(2)).unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let hadamard =
        ComplexMatrix::new(2, 2, vec![c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)]).unwrap();
    let rep = validate_rep(group, vec![ComplexMatrix::identity(2), hadamard], tol()).unwrap();
    (rep, StateVector::basis_state(2, 0))
}

/// Full dephasing in the computational basis of C^2.
pub fn computational_dephasing() -> QuantumChannel {
    let kraus = vec![
        ComplexMatrix::from_diag(&[c(1.0, 0.0), c(0.0, 0.0)]),
        ComplexMatrix::from_diag(&[c(0.0, 0.0), c(1.0, 0.0)]),
    ];
    QuantumChannel::new(kraus, tol()).unwrap()
}

/// A full-rank mixed state built from the orbit average blended with the
/// maximally mixed state.
pub fn blended_density(rep: &ProjectiveRep, seed: &StateVector) -> DensityOperator {
    let orbit = rep.orbit(seed, tol()).unwrap();
    let d = rep.dim;
    let mut m = ComplexMatrix::identity(d);
    for phi in &orbit {
        m = m.add(&ComplexMatrix::outer(phi, phi));
    }
    let total = (orbit.len() + d) as f64;
    DensityOperator::new(m.scale(c(1.0 / total, 0.0)), tol()).unwrap()
}

/// A random orbit system whose component structure is known by construction.
pub struct RandomSystem {
    pub rep: ProjectiveRep,
    pub seed: StateVector,
    pub subgroup: Subset,
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Haar-distributed unitary from Gram-Schmidt on Gaussian columns.
pub fn random_unitary(dim: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    loop {
        let vectors: Vec<StateVector> = (0..dim)
            .map(|_| StateVector::new((0..dim).map(|_| gaussian(rng)).collect()).unwrap())
            .collect();
        let Ok(basis) = orthonormal_span(&vectors, tol()) else {
            continue;
        };
        if basis.len() < dim {
            continue;
        }
        let mut w = ComplexMatrix::zeros(dim, dim);
        for (col, vector) in basis.iter().enumerate() {
            for row in 0..dim {
                w.set(row, col, vector.amplitudes[row]);
            }
        }
        return w;
    }
}

/// Random quotient construction: pick a standard group and a random subgroup
/// H, represent the group by its permutation action on the left cosets of H,
/// conjugate by a random unitary, and optionally twist by a coboundary
/// phase. With the seed taken to the coset of the identity, the orbit's
/// confusability components are the left cosets of H by construction.
pub fn random_quotient_system(rng: &mut ChaCha8Rng) -> RandomSystem {
    let kind = match rng.random_range(0..6u32) {
        0 => GroupKind::Cyclic(rng.random_range(2..=12)),
        1 => GroupKind::Dihedral(rng.random_range(3..=6)),
        2 => GroupKind::Symmetric(3),
        3 => GroupKind::Symmetric(4),
        4 => GroupKind::Klein,
        _ => GroupKind::Product(
            Box::new(GroupKind::Cyclic(2)),
            Box::new(GroupKind::Cyclic(rng.random_range(2..=5))),
        ),
    };
    let group = FiniteGroup::standard(&kind).unwrap();

    let mut generators = Vec::new();
    for _ in 0..rng.random_range(0..=2u32) {
        generators.push(rng.random_range(0..group.order));
    }
    generators.sort_unstable();
    generators.dedup();
    let subgroup = group.generated_subgroup(&Subset::new(&group, generators).unwrap());
    let cosets = group.left_cosets(&subgroup).unwrap();
    let dim = cosets.len();

    let mut coset_of = vec![0usize; group.order];
    for (block_index, block) in cosets.iter().enumerate() {
        for &member in block {
            coset_of[member] = block_index;
        }
    }
    let representatives: Vec<usize> = cosets.iter().map(|block| block[0]).collect();

    let w = random_unitary(dim, rng);
    let w_adjoint = w.adjoint();
    let twisted = rng.random::<bool>();
    let matrices: Vec<ComplexMatrix> = (0..group.order)
        .map(|g| {
            let mut p = ComplexMatrix::zeros(dim, dim);
            for (j, &r) in representatives.iter().enumerate() {
                p.set(coset_of[group.op(g, r)], j, Complex64::ONE);
            }
            let phase = if twisted && g != FiniteGroup::IDENTITY {
                Complex64::from_polar(1.0, rng.random::<f64>() * std::f64::consts::TAU)
            } else {
                Complex64::ONE
            };
            w.mul(&p).mul(&w_adjoint).scale(phase)
        })
        .collect();
    let seed = w.column(0);
    let rep = validate_rep(group, matrices, tol()).unwrap();
    RandomSystem {
        rep,
        seed,
        subgroup,
    }
}

/// Independent component oracle: materialize the orbit, form the dense Gram
/// matrix with a local inner product, and run breadth-first search over the
/// thresholded adjacency. No union-find and no connect-set shortcut.
pub fn gram_bfs_components(rep: &ProjectiveRep, seed: &StateVector, eps: f64) -> Vec<Vec<usize>> {
    let n = rep.group.order;
    let d = rep.dim;
    let orbit: Vec<Vec<Complex64>> = (0..n)
        .map(|g| {
            let u = &rep.matrices[g];
            (0..d)
                .map(|row| {
                    (0..d)
                        .map(|col| u.get(row, col) * seed.amplitudes[col])
                        .sum()
                })
                .collect()
        })
        .collect();

    let mut adjacent = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            let overlap: Complex64 = (0..d).map(|k| orbit[i][k].conj() * orbit[j][k]).sum();
            adjacent[i][j] = overlap.norm() > eps;
        }
    }

    let mut visited = vec![false; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut block = Vec::new();
        let mut queue = std::collections::VecDeque::from([start]);
        visited[start] = true;
        while let Some(i) = queue.pop_front() {
            block.push(i);
            for j in 0..n {
                if adjacent[i][j] && !visited[j] {
                    visited[j] = true;
                    queue.push_back(j);
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    blocks
}

/// Canonical form of a partition: blocks sorted internally and ordered by
/// their minimal element.
pub fn normalize_partition(blocks: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = blocks
        .iter()
        .map(|block| {
            let mut b = block.clone();
            b.sort_unstable();
            b
        })
        .collect();
    out.sort();
    out
}
