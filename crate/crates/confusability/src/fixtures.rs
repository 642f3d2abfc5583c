//! Shared example systems for unit tests.

use num_complex::Complex64;

use crate::group::{FiniteGroup, GroupKind};
use crate::linalg::{ComplexMatrix, StateVector, Tolerance};
use crate::representation::{validate_rep, ProjectiveRep};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn tol() -> Tolerance {
    Tolerance::default()
}

/// Z_6 with `U_g = diag(1, zeta^(2g), zeta^(4g))`, `zeta = exp(i pi/3)`.
pub fn z6_phase_rep() -> ProjectiveRep {
    let group = FiniteGroup::standard(&GroupKind::Cyclic(6)).unwrap();
    let zeta = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
    let matrices = (0..6)
        .map(|g| ComplexMatrix::from_diag(&[Complex64::ONE, zeta.powu(2 * g), zeta.powu(4 * g)]))
        .collect();
    validate_rep(group, matrices, tol()).unwrap()
}

/// Uniform seed `(1,1,1)/sqrt(3)` for the Z_6 system.
pub fn z6_seed() -> StateVector {
    let s = 1.0 / 3f64.sqrt();
    StateVector::from_reals(&[s, s, s])
}

/// Klein group {e, a, b, ab} on dimension 2 via the Pauli matrices
/// U_a = Z, U_b = X, U_ab = ZX: a genuinely projective rep.
pub fn klein_pauli_rep() -> ProjectiveRep {
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
    validate_rep(group, matrices, tol()).unwrap()
}

pub fn klein_seed() -> StateVector {
    StateVector::basis_state(2, 0)
}

/// S_3 acting on C^3 by permutation matrices `(U_p) e_j = e_{p(j)}`.
pub fn s3_perm_rep() -> ProjectiveRep {
    let group = FiniteGroup::standard(&GroupKind::Symmetric(3)).unwrap();
    let perms = crate::group::lexicographic_permutations(3);
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
    validate_rep(group, matrices, tol()).unwrap()
}

/// Basis seed fixed by exactly the stabilizer {identity, swap of 1 and 2}.
pub fn s3_perm_seed() -> StateVector {
    StateVector::basis_state(3, 0)
}

/// S_3 with `U_g = diag(1, sgn g)`.
pub fn s3_sign_rep() -> ProjectiveRep {
    let group = FiniteGroup::standard(&GroupKind::Symmetric(3)).unwrap();
    let perms = crate::group::lexicographic_permutations(3);
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
    validate_rep(group, matrices, tol()).unwrap()
}

pub fn s3_sign_seed() -> StateVector {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    StateVector::from_reals(&[s, s])
}

/// Z_2 on dimension 3 with `U_g = diag(1, 1, -1)`.
pub fn z2_dim3_rep() -> ProjectiveRep {
    let group = FiniteGroup::standard(&GroupKind::Cyclic(2)).unwrap();
    let matrices = vec![
        ComplexMatrix::identity(3),
        ComplexMatrix::from_diag(&[c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]),
    ];
    validate_rep(group, matrices, tol()).unwrap()
}

/// Seed `(1, 0, 1)/sqrt(2)` whose orbit spans two one-dimensional components.
pub fn z2_dim3_seed() -> StateVector {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    StateVector::from_reals(&[s, 0.0, s])
}

/// Projective measurement splitting axis 1 from the {0,2} plane: covariant
/// for the Z_2 dim-3 rep and fixing its seed.
pub fn z2_dim3_kraus() -> Vec<ComplexMatrix> {
    vec![
        ComplexMatrix::from_diag(&[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]),
        ComplexMatrix::from_diag(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]),
    ]
}
