//! Projective unitary representations and characteristic functions.
//!
//! [`validate_rep`] turns one unitary matrix per group element into a
//! [`ProjectiveRep`], extracting the cocycle phase of every product pair and
//! rejecting inputs where `U_g U_h` is not a unit-modulus multiple of
//! `U_{gh}`. The identity matrix is normalized to exactly the identity by
//! dividing out its global phase, which pins the phase convention used by
//! every downstream overlap: the characteristic function then satisfies
//! `f(e) = 1` for any normalized seed.

use num_complex::Complex64;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{inner_product, max_abs_diff, ComplexMatrix, StateVector, Tolerance};

/// Relative trace-magnitude floor below which the cocycle phase of a product
/// pair is considered undefined: `|tr(U_{gh}^dagger U_g U_h)|` must be at
/// least `dim * (1 - PHASE_TRACE_SLACK)`.
pub const PHASE_TRACE_SLACK: f64 = 1e-6;

/// A projective unitary representation of a finite group.
///
/// `matrices[g]` is `U_g`; `cocycle[g * order + h]` is the unit-modulus phase
/// with `U_g U_h == cocycle(g,h) * U_{gh}`.
#[derive(Debug, Clone)]
pub struct ProjectiveRep {
    pub group: FiniteGroup,
    pub dim: usize,
    pub matrices: Vec<ComplexMatrix>,
    pub cocycle: Vec<Complex64>,
}

/// The overlap profile `f(g) = <seed|U_g|seed>` over all group elements.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacteristicFunction {
    pub values: Vec<Complex64>,
}

impl Serialize for CharacteristicFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.values.len()))?;
        for v in &self.values {
            seq.serialize_element(&[v.re, v.im])?;
        }
        seq.end()
    }
}

/// Validates one matrix per element as a projective representation.
///
/// Checks, in order: matrix count, square shape and shared dimension,
/// unitarity of each matrix, identity normalization, and the cocycle
/// relation for every pair. The phase is extracted as
/// `tr(U_{gh}^dagger U_g U_h)` normalized to unit modulus; a trace magnitude
/// below `dim * (1 - PHASE_TRACE_SLACK)` means the product is not a phase
/// multiple of any `U_{gh}` and is reported as such rather than force-fitted.
pub fn validate_rep(
    group: FiniteGroup,
    mut matrices: Vec<ComplexMatrix>,
    tol: Tolerance,
) -> Result<ProjectiveRep> {
    let n = group.order;
    if matrices.len() != n {
        return Err(Error::WrongMatrixCount {
            expected: n,
            got: matrices.len(),
        });
    }
    let dim = matrices[0].rows;
    for (element, m) in matrices.iter().enumerate() {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows,
                cols: m.cols,
            });
        }
        if m.rows != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: m.rows,
            });
        }
        let residual = crate::linalg::unitarity_residual(m);
        if residual > tol.eps() {
            return Err(Error::NotUnitary { element, residual });
        }
    }

    // Normalize U_e to the identity by dividing out a global phase. A
    // unitary that is a phase multiple of I has |trace| == dim; anything
    // smaller is not the identity in disguise.
    let d = dim as f64;
    let tr = matrices[FiniteGroup::IDENTITY].trace();
    let phase = if tr.norm() > d * (1.0 - PHASE_TRACE_SLACK) {
        tr / tr.norm()
    } else {
        Complex64::ONE
    };
    let normalized = matrices[FiniteGroup::IDENTITY].scale(Complex64::ONE / phase);
    let residual = max_abs_diff(&normalized, &ComplexMatrix::identity(dim));
    if residual > tol.eps() {
        return Err(Error::BadIdentityMatrix { residual });
    }
    matrices[FiniteGroup::IDENTITY] = ComplexMatrix::identity(dim);

    let mut cocycle = vec![Complex64::ONE; n * n];
    for g in 0..n {
        for h in 0..n {
            let product = matrices[g].mul(&matrices[h]);
            let target = &matrices[group.op(g, h)];
            let tr = target.overlap_trace(&product);
            let required = d * (1.0 - PHASE_TRACE_SLACK);
            if tr.norm() < required {
                return Err(Error::CocycleUndefined {
                    g,
                    h,
                    magnitude: tr.norm(),
                    required,
                });
            }
            let omega = tr / tr.norm();
            let residual = max_abs_diff(&product, &target.scale(omega));
            if residual > tol.eps() {
                return Err(Error::CocycleResidual { g, h, residual });
            }
            cocycle[g * n + h] = omega;
        }
    }

    Ok(ProjectiveRep {
        group,
        dim,
        matrices,
        cocycle,
    })
}

/// The (left) regular representation: `U_g |h> = |gh>` on dimension `order`.
pub fn regular_rep(group: FiniteGroup, tol: Tolerance) -> Result<ProjectiveRep> {
    let n = group.order;
    let matrices = (0..n)
        .map(|g| {
            let mut m = ComplexMatrix::zeros(n, n);
            for h in 0..n {
                m.set(group.op(g, h), h, Complex64::ONE);
            }
            m
        })
        .collect();
    validate_rep(group, matrices, tol)
}

impl ProjectiveRep {
    pub fn cocycle_at(&self, g: usize, h: usize) -> Complex64 {
        self.cocycle[g * self.group.order + h]
    }

    /// True iff any cocycle phase deviates from 1 beyond `eps`. A true value
    /// means the matrices do not form an ordinary representation under this
    /// crate's phase convention; it does not decide cohomological
    /// nontriviality.
    pub fn has_nontrivial_cocycle(&self, tol: Tolerance) -> bool {
        self.cocycle
            .iter()
            .any(|w| (w - Complex64::ONE).norm() > tol.eps())
    }

    /// `U_g` applied to `state`.
    pub fn apply(&self, g: usize, state: &StateVector) -> StateVector {
        self.matrices[g].apply_vec(state)
    }

    /// The orbit `(U_g seed)` in element order. The seed must match the
    /// representation dimension and be normalized.
    pub fn orbit(&self, seed: &StateVector, tol: Tolerance) -> Result<Vec<StateVector>> {
        self.check_seed(seed, tol)?;
        Ok((0..self.group.order).map(|g| self.apply(g, seed)).collect())
    }

    /// `f(g) = <seed|U_g|seed>` for every element.
    pub fn characteristic_function(
        &self,
        seed: &StateVector,
        tol: Tolerance,
    ) -> Result<CharacteristicFunction> {
        self.check_seed(seed, tol)?;
        let values = (0..self.group.order)
            .map(|g| inner_product(seed, &self.apply(g, seed)))
            .collect::<Result<Vec<_>>>()?;
        Ok(CharacteristicFunction { values })
    }

    /// True iff `f` is a class function: `f(h^-1 g h) == f(g)` for all pairs,
    /// compared in amplitude within `eps`. Conjugation is evaluated on group
    /// indices through the Cayley table, never through matrix products.
    pub fn is_class_state(&self, seed: &StateVector, tol: Tolerance) -> Result<bool> {
        let f = self.characteristic_function(seed, tol)?;
        let n = self.group.order;
        for g in 0..n {
            for h in 0..n {
                let conj = self.group.conjugate(g, h);
                if (f.values[conj] - f.values[g]).norm() > tol.eps() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn check_seed(&self, seed: &StateVector, tol: Tolerance) -> Result<()> {
        if seed.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: seed.dim(),
            });
        }
        if !seed.is_normalized(tol) {
            return Err(Error::NotNormalized {
                deviation: (seed.norm_sq() - 1.0).abs(),
            });
        }
        Ok(())
    }
}
