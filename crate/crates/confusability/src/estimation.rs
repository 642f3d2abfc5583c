//! Covariant estimation over a group orbit: POVM validation, expected-cost
//! evaluation, and syndrome reduction of the orbit problem to the identity
//! subgroup acting on its own component subspace.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subset};
use crate::linalg::{
    inner_product, max_abs_diff, min_eigenvalue, unitarity_residual, ComplexMatrix, StateVector,
    Tolerance,
};
use crate::representation::{validate_rep, ProjectiveRep};
use crate::subspace::{SubspaceFamily, SubspaceLabel};

/// Covariant POVM `P(g) = U_g xi U_g^dagger` generated from a seed effect.
#[derive(Debug, Clone)]
pub struct CovariantPovm {
    pub seed_operator: ComplexMatrix,
    pub elements: Vec<ComplexMatrix>,
}

/// Builds the covariant POVM from a seed effect and checks that the seed is
/// positive semidefinite and the conjugated elements resolve the identity.
pub fn validate_povm(
    rep: &ProjectiveRep,
    seed_operator: &ComplexMatrix,
    tol: Tolerance,
) -> Result<CovariantPovm> {
    if !seed_operator.is_square() {
        return Err(Error::NotSquare {
            rows: seed_operator.rows,
            cols: seed_operator.cols,
        });
    }
    if seed_operator.rows != rep.dim {
        return Err(Error::DimensionMismatch {
            left: seed_operator.rows,
            right: rep.dim,
        });
    }
    let hermiticity = max_abs_diff(seed_operator, &seed_operator.adjoint());
    if hermiticity > tol.eps() {
        return Err(Error::SeedNotHermitian {
            residual: hermiticity,
        });
    }
    let min = min_eigenvalue(seed_operator)?;
    if min < -tol.eps() {
        return Err(Error::SeedNotPositive {
            min_eigenvalue: min,
        });
    }
    let elements: Vec<ComplexMatrix> = rep
        .matrices
        .iter()
        .map(|u| u.mul(seed_operator).mul(&u.adjoint()))
        .collect();
    let mut sum = ComplexMatrix::zeros(rep.dim, rep.dim);
    for p in &elements {
        sum = sum.add(p);
    }
    let residual = max_abs_diff(&sum, &ComplexMatrix::identity(rep.dim));
    if residual > tol.eps() {
        return Err(Error::PovmIncomplete { residual });
    }
    Ok(CovariantPovm {
        seed_operator: seed_operator.clone(),
        elements,
    })
}

/// Cost table `c(ghat, g)` for guessing `ghat` when the truth is `g`,
/// stored row-major over guesses. Left-invariance is required so that the
/// cost depends only on the relative element `ghat^-1 g`.
#[derive(Debug, Clone)]
pub struct CostFunction {
    pub order: usize,
    pub values: Vec<f64>,
}

impl CostFunction {
    /// Zero-one cost: unit penalty for every wrong guess.
    pub fn delta(order: usize) -> Self {
        let mut values = vec![1.0; order * order];
        for g in 0..order {
            values[g * order + g] = 0.0;
        }
        CostFunction { order, values }
    }

    /// Validates an explicit cost table: square shape, finite entries, and
    /// exact left-invariance `c(h ghat, h g) = c(ghat, g)` over the group.
    pub fn from_matrix(group: &FiniteGroup, rows: &[Vec<f64>]) -> Result<Self> {
        let n = group.order;
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                left: rows.len(),
                right: n,
            });
        }
        let mut values = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    left: row.len(),
                    right: n,
                });
            }
            values.extend_from_slice(row);
        }
        for (index, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { index });
            }
        }
        for h in 0..n {
            for ghat in 0..n {
                for g in 0..n {
                    let moved = values[group.op(h, ghat) * n + group.op(h, g)];
                    if moved != values[ghat * n + g] {
                        return Err(Error::CostNotLeftInvariant { h, ghat, g });
                    }
                }
            }
        }
        Ok(CostFunction { order: n, values })
    }

    pub fn get(&self, ghat: usize, g: usize) -> f64 {
        self.values[ghat * self.order + g]
    }
}

/// Expected cost per true element and the worst case over the orbit.
#[derive(Debug, Clone, Serialize)]
pub struct CostReport {
    pub worst_case: f64,
    pub per_element: Vec<f64>,
}

/// Evaluates the expected cost of measuring the covariant POVM on each orbit
/// state: `R(g) = sum_ghat c(ghat, g) <phi_g| P(ghat) |phi_g>`.
pub fn evaluate_cost(
    rep: &ProjectiveRep,
    seed: &StateVector,
    povm: &CovariantPovm,
    cost: &CostFunction,
    tol: Tolerance,
) -> Result<CostReport> {
    let n = rep.group.order;
    if cost.order != n {
        return Err(Error::DimensionMismatch {
            left: cost.order,
            right: n,
        });
    }
    if povm.elements.len() != n {
        return Err(Error::DimensionMismatch {
            left: povm.elements.len(),
            right: n,
        });
    }
    let orbit = rep.orbit(seed, tol)?;
    let mut per_element = Vec::with_capacity(n);
    for g in 0..n {
        let phi = &orbit[g];
        let mut total = 0.0;
        for (ghat, element) in povm.elements.iter().enumerate() {
            let c = cost.get(ghat, g);
            if c == 0.0 {
                continue;
            }
            total += c * inner_product(phi, &element.apply_vec(phi))?.re;
        }
        per_element.push(total);
    }
    let worst_case = per_element
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(CostReport {
        worst_case,
        per_element,
    })
}

/// Result of the syndrome measurement on one hidden orbit state: the coset
/// read off the capturing component, the relative subgroup element, and the
/// equivalent estimation problem compressed onto the identity component.
#[derive(Debug, Clone)]
pub struct ReductionResult {
    pub coset_index: usize,
    pub representative: usize,
    pub h: usize,
    pub disturbance: f64,
    pub reduced_state: StateVector,
    pub reduced_rep: ProjectiveRep,
}

/// Projects the orbit state of `secret` onto its unique component subspace,
/// reconstructs the coset representative and the relative subgroup element
/// `h = rep^-1 secret`, and expresses the transported state in the identity
/// component basis. Fails if no component captures the state or if the
/// transported state disagrees with the subgroup orbit state up to phase.
pub fn syndrome_reduce(
    rep: &ProjectiveRep,
    seed: &StateVector,
    family: &SubspaceFamily,
    secret: usize,
    tol: Tolerance,
) -> Result<ReductionResult> {
    let n = rep.group.order;
    if secret >= n {
        return Err(Error::SubsetOutOfRange {
            member: secret,
            order: n,
        });
    }
    if family.dim != rep.dim {
        return Err(Error::DimensionMismatch {
            left: family.dim,
            right: rep.dim,
        });
    }
    let orbit = rep.orbit(seed, tol)?;
    let phi = &orbit[secret];

    let mut best_index = None;
    let mut best_norm_sq = f64::NEG_INFINITY;
    for (index, label) in family.labels.iter().enumerate() {
        if !matches!(label, SubspaceLabel::Component(_)) {
            continue;
        }
        let norm_sq = inner_product(phi, &family.projectors[index].apply_vec(phi))?.re;
        if norm_sq > best_norm_sq {
            best_norm_sq = norm_sq;
            best_index = Some(index);
        }
    }
    let coset_index = best_index.ok_or(Error::NoCapturingSubspace {
        element: secret,
        best_norm_sq: 0.0,
    })?;
    if (best_norm_sq - 1.0).abs() > 10.0 * tol.eps() {
        return Err(Error::NoCapturingSubspace {
            element: secret,
            best_norm_sq,
        });
    }
    let disturbance = family.projectors[coset_index]
        .apply_vec(phi)
        .sub(phi)
        .norm();
    let representative = match family.labels[coset_index] {
        SubspaceLabel::Component(r) => r,
        SubspaceLabel::Rest => unreachable!("rest label filtered above"),
    };

    let identity_index = family.position_of_component(FiniteGroup::IDENTITY).ok_or(
        Error::IdentityComponentMismatch {
            details: "family has no identity-component subspace".into(),
        },
    )?;
    let members = family.members[identity_index].clone();
    let subgroup = Subset::new(&rep.group, members)?;
    let reduced_rep = reduced_problem(rep, &subgroup, family, tol)?;

    let h = rep.group.op(rep.group.inv(representative), secret);
    let transported = rep.matrices[representative].adjoint().apply_vec(phi);
    let basis = &family.bases[identity_index];
    let coords: Vec<Complex64> = basis
        .iter()
        .map(|b| inner_product(b, &transported))
        .collect::<Result<_>>()?;
    let reduced_state = StateVector::new(coords)?.normalized()?;

    let expected: Vec<Complex64> = basis
        .iter()
        .map(|b| inner_product(b, &orbit[h]))
        .collect::<Result<_>>()?;
    let expected = StateVector::new(expected)?.normalized()?;
    let overlap = inner_product(&expected, &reduced_state)?.norm();
    if (overlap - 1.0).abs() > 10.0 * tol.eps() {
        return Err(Error::ReductionMismatch { secret, h, overlap });
    }

    Ok(ReductionResult {
        coset_index,
        representative,
        h,
        disturbance,
        reduced_state,
        reduced_rep,
    })
}

/// Compresses the restriction of the representation to a subgroup onto the
/// identity-component subspace, which that subgroup leaves invariant, and
/// validates the compressed matrices as a projective representation.
pub fn reduced_problem(
    rep: &ProjectiveRep,
    subgroup: &Subset,
    family: &SubspaceFamily,
    tol: Tolerance,
) -> Result<ProjectiveRep> {
    if !rep.group.is_subgroup(subgroup) {
        return Err(Error::NotASubgroup {
            reason: "reduction requires a subgroup of the orbit group".into(),
        });
    }
    let identity_index = family.position_of_component(FiniteGroup::IDENTITY).ok_or(
        Error::IdentityComponentMismatch {
            details: "family has no identity-component subspace".into(),
        },
    )?;
    let basis = &family.bases[identity_index];

    let k = subgroup.len();
    let position = |element: usize| subgroup.members.iter().position(|&m| m == element);
    let mut table = vec![vec![0usize; k]; k];
    for (i, &a) in subgroup.members.iter().enumerate() {
        for (j, &b) in subgroup.members.iter().enumerate() {
            let product = rep.group.op(a, b);
            let Some(p) = position(product) else {
                return Err(Error::NotASubgroup {
                    reason: format!("product of members {a} and {b} escapes the subgroup"),
                });
            };
            table[i][j] = p;
        }
    }
    let mut small = if k <= crate::group::MAX_VALIDATED_ORDER {
        FiniteGroup::from_cayley_table(&table)?
    } else {
        FiniteGroup::from_cayley_table_trusted(&table)?
    };
    small.names = subgroup
        .members
        .iter()
        .map(|&m| rep.group.names[m].clone())
        .collect();

    let mut compressed = Vec::with_capacity(k);
    for &m in &subgroup.members {
        let u = &rep.matrices[m];
        let mut entries = Vec::with_capacity(basis.len() * basis.len());
        for bi in basis {
            for bj in basis {
                entries.push(inner_product(bi, &u.apply_vec(bj))?);
            }
        }
        let matrix = ComplexMatrix::new(basis.len(), basis.len(), entries)?;
        let residual = unitarity_residual(&matrix);
        if residual > tol.eps() {
            return Err(Error::ReducedNotUnitary {
                element: m,
                residual,
            });
        }
        compressed.push(matrix);
    }
    validate_rep(small, compressed, tol)
}
