//! Orbit-induced subspaces, their projectors, and the decoherence map.
//!
//! Each graph component `X_k` spans a subspace `S_k`; the subspaces of
//! distinct components are mutually orthogonal because orbit states in
//! different components have vanishing overlap. The decoherence map
//! `D(rho) = sum_k P_k rho P_k` kills coherences between the subspaces while
//! fixing every orbit state's projector.
//!
//! The component projectors need not resolve the identity when the orbit
//! does not span the whole space; [`complete_family`] appends the orthogonal
//! complement explicitly so the map becomes trace preserving. The completion
//! is a separate, visible step rather than a silent default.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::ConfusabilityGraph;
use crate::linalg::{
    max_abs_diff, min_eigenvalue, orthonormal_span, projector_onto, ComplexMatrix, StateVector,
    Tolerance,
};
use crate::representation::ProjectiveRep;

/// Identifies one subspace in a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubspaceLabel {
    /// A graph component, identified by its minimal element.
    Component(usize),
    /// The orthogonal complement appended by [`complete_family`].
    Rest,
}

impl SubspaceLabel {
    fn describe(&self) -> String {
        match self {
            Self::Component(rep) => format!("component {rep}"),
            Self::Rest => "rest".into(),
        }
    }
}

/// A family of mutually orthogonal subspaces of a `dim`-dimensional space.
///
/// Parallel per-label vectors: `members[i]` lists the group elements of the
/// component behind `labels[i]` (empty for the rest label), `bases[i]` is an
/// orthonormal basis of the subspace, `projectors[i]` its projector, and
/// `dims[i]` its dimension.
#[derive(Debug, Clone, Serialize)]
pub struct SubspaceFamily {
    pub dim: usize,
    pub labels: Vec<SubspaceLabel>,
    pub members: Vec<Vec<usize>>,
    pub bases: Vec<Vec<StateVector>>,
    pub projectors: Vec<ComplexMatrix>,
    pub dims: Vec<usize>,
}

/// Builds the subspace family of a graph's components.
///
/// Basis vectors within a component are produced in ascending order of the
/// contributing group element, so outputs are reproducible. Mutual
/// orthogonality of the projectors is verified, not assumed: a failure means
/// the graph's edge threshold and the span tolerance disagree about some
/// overlap, which must surface as an error rather than a slightly wrong
/// family.
pub fn component_subspaces(
    rep: &ProjectiveRep,
    seed: &StateVector,
    graph: &ConfusabilityGraph,
    tol: Tolerance,
) -> Result<SubspaceFamily> {
    let orbit = rep.orbit(seed, tol)?;
    let mut labels = Vec::new();
    let mut members = Vec::new();
    let mut bases = Vec::new();
    let mut projectors = Vec::new();
    let mut dims = Vec::new();
    for block in &graph.components {
        let vectors: Vec<StateVector> = block.iter().map(|&x| orbit[x].clone()).collect();
        let basis = orthonormal_span(&vectors, tol)?;
        let projector = projector_onto(&basis, tol)?;
        labels.push(SubspaceLabel::Component(block[0]));
        members.push(block.clone());
        dims.push(basis.len());
        bases.push(basis);
        projectors.push(projector);
    }

    for i in 0..projectors.len() {
        for j in (i + 1)..projectors.len() {
            let residual = projectors[i].mul(&projectors[j]).max_abs();
            if residual > 10.0 * tol.eps() {
                return Err(Error::SubspacesNotOrthogonal {
                    label_a: labels[i].describe(),
                    label_b: labels[j].describe(),
                    residual,
                });
            }
        }
    }

    Ok(SubspaceFamily {
        dim: rep.dim,
        labels,
        members,
        bases,
        projectors,
        dims,
    })
}

/// Appends the orthogonal complement of the family as a `Rest` subspace, so
/// the projectors resolve the identity. A family that already sums to the
/// identity is returned unchanged.
pub fn complete_family(family: SubspaceFamily, tol: Tolerance) -> Result<SubspaceFamily> {
    let mut sum = ComplexMatrix::zeros(family.dim, family.dim);
    for p in &family.projectors {
        sum = sum.add(p);
    }
    let rest = ComplexMatrix::identity(family.dim).sub(&sum);
    let rank = rest.trace().re;
    if rank < 0.5 {
        return Ok(family);
    }
    let columns: Vec<StateVector> = (0..family.dim).map(|c| rest.column(c)).collect();
    let basis = orthonormal_span(&columns, tol)?;
    let projector = projector_onto(&basis, tol)?;
    let mut family = family;
    family.labels.push(SubspaceLabel::Rest);
    family.members.push(Vec::new());
    family.dims.push(basis.len());
    family.bases.push(basis);
    family.projectors.push(projector);
    Ok(family)
}

impl SubspaceFamily {
    /// Index of the component labeled by group element `representative`.
    pub fn position_of_component(&self, representative: usize) -> Option<usize> {
        self.labels
            .iter()
            .position(|l| *l == SubspaceLabel::Component(representative))
    }
}

/// A density operator; construction via [`DensityOperator::new`] validates
/// self-adjointness, unit trace, and positive semidefiniteness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityOperator {
    pub matrix: ComplexMatrix,
}

impl DensityOperator {
    pub fn new(matrix: ComplexMatrix, tol: Tolerance) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidDensity {
                reason: format!("matrix is {}x{}", matrix.rows, matrix.cols),
            });
        }
        let asym = max_abs_diff(&matrix, &matrix.adjoint());
        if asym > tol.eps() {
            return Err(Error::InvalidDensity {
                reason: format!("not self-adjoint: residual {asym:.3e}"),
            });
        }
        let trace = matrix.trace();
        if (trace - Complex64::ONE).norm() > tol.eps() {
            return Err(Error::InvalidDensity {
                reason: format!("trace is {trace}, expected 1"),
            });
        }
        let min = min_eigenvalue(&matrix)?;
        if min < -tol.eps() {
            return Err(Error::InvalidDensity {
                reason: format!("negative eigenvalue {min:.3e}"),
            });
        }
        Ok(Self { matrix })
    }

    /// The pure state `|psi><psi|`; the state must be normalized.
    pub fn from_pure(psi: &StateVector, tol: Tolerance) -> Result<Self> {
        if !psi.is_normalized(tol) {
            return Err(Error::NotNormalized {
                deviation: (psi.norm_sq() - 1.0).abs(),
            });
        }
        Ok(Self {
            matrix: ComplexMatrix::outer(psi, psi),
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows
    }
}

/// The decoherence map `D(rho) = sum_k P_k rho P_k` over the family.
///
/// No renormalization is applied: on a family of component projectors that
/// does not resolve the identity the output trace is `tr(sum_k P_k rho)`,
/// which can be below 1. Apply [`complete_family`] first for a trace
/// preserving map.
pub fn decohere(family: &SubspaceFamily, rho: &DensityOperator) -> Result<DensityOperator> {
    if rho.dim() != family.dim {
        return Err(Error::DimensionMismatch {
            left: family.dim,
            right: rho.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(family.dim, family.dim);
    for p in &family.projectors {
        out = out.add(&p.mul(&rho.matrix).mul(p));
    }
    Ok(DensityOperator { matrix: out })
}
