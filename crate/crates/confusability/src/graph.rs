//! Orbit confusability graphs and their component structure.
//!
//! Vertices are group elements; `g` and `h` are adjacent when the orbit
//! states overlap, `<phi_g|phi_h> != 0` numerically. Because
//! `<phi_g|phi_h> = <phi|U_g^dagger U_h|phi>` equals `f(g^-1 h)` up to a
//! unit-modulus cocycle phase, adjacency depends only on `|f(g^-1 h)|`:
//! the graph needs just the `|G|` values of the characteristic function, not
//! all `|G|^2` pairwise overlaps, and projective phases can never change it.
//! That phase-invariance is exercised by a coboundary-twist test below.
//!
//! The component containing the identity is simultaneously computed as a
//! union-find component and as the subgroup generated by the connect set;
//! the two must agree, and their agreement is asserted rather than assumed.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subset};
use crate::linalg::{StateVector, Tolerance};
use crate::representation::{CharacteristicFunction, ProjectiveRep};
use crate::Verdict;

/// Union-find with path compression and union by size.
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}

/// The confusability graph of a group orbit.
///
/// `connect_set` is `D = {g : |f(g)| > eps}`, symmetrized under inverses so
/// that adjacency is a symmetric relation even when a magnitude sits exactly
/// at the threshold. `components` is canonical: members sorted ascending,
/// blocks ordered by minimal element. `near_threshold` lists elements whose
/// overlap magnitude falls in `(eps/10, eps]`; component structure is
/// discontinuous in such overlaps, so they are surfaced in reports instead
/// of being silently rounded either way.
#[derive(Debug, Clone)]
pub struct ConfusabilityGraph {
    pub group: FiniteGroup,
    pub overlaps: CharacteristicFunction,
    pub connect_set: Subset,
    pub components: Vec<Vec<usize>>,
    pub identity_component: Subset,
    pub near_threshold: Vec<usize>,
    pub eps: f64,
}

/// Builds the confusability graph of `(rep, seed)`.
///
/// Edge rule: `g ~ h` iff `|f(g^-1 h)| > eps` (strictly greater). Components
/// are computed by union-find over the left-invariant edge set.
pub fn build_graph(
    rep: &ProjectiveRep,
    seed: &StateVector,
    tol: Tolerance,
) -> Result<ConfusabilityGraph> {
    let overlaps = rep.characteristic_function(seed, tol)?;
    let group = rep.group.clone();
    let n = group.order;
    let eps = tol.eps();

    let magnitude = |g: usize| overlaps.values[g].norm();
    let members: Vec<usize> = (0..n)
        .filter(|&g| magnitude(g) > eps || magnitude(group.inv(g)) > eps)
        .collect();
    let connect_set = Subset { members };
    let near_threshold: Vec<usize> = (0..n)
        .filter(|&g| {
            let m = magnitude(g);
            m > eps / 10.0 && m <= eps
        })
        .collect();

    let mut uf = UnionFind::new(n);
    for g in 0..n {
        for &d in &connect_set.members {
            uf.union(g, group.op(g, d));
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut block_of = vec![usize::MAX; n];
    for g in 0..n {
        let root = uf.find(g);
        if block_of[root] == usize::MAX {
            block_of[root] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[block_of[root]].push(g);
    }
    // Members are pushed in ascending order, so each block is sorted and
    // blocks are already ordered by minimal element.
    let identity_component = Subset {
        members: blocks[block_of[uf.find(FiniteGroup::IDENTITY)]].clone(),
    };

    Ok(ConfusabilityGraph {
        group,
        overlaps,
        connect_set,
        components: blocks,
        identity_component,
        near_threshold,
        eps,
    })
}

/// Report for the subgroup/coset structure of the component partition.
#[derive(Debug, Clone, Serialize)]
pub struct Prop1Report {
    pub verdict: Verdict,
    pub subgroup_closed: bool,
    pub components_match_cosets: bool,
    pub identity_component: Vec<usize>,
    pub counterexample: Option<String>,
}

/// Report for normality of the identity component under the class-state
/// premise.
#[derive(Debug, Clone, Serialize)]
pub struct Prop2Report {
    pub verdict: Verdict,
    pub class_state: bool,
    pub normal: Option<bool>,
    pub cosets_coincide: Option<bool>,
    /// Set when the rep has a nontrivial cocycle: the class-state test is
    /// then phase-convention dependent and the premise should be read with
    /// that caveat.
    pub projective_warning: bool,
    pub counterexample: Option<String>,
}

impl ConfusabilityGraph {
    /// True iff `g` and `h` are adjacent (including `g == h`).
    pub fn adjacent(&self, g: usize, h: usize) -> bool {
        self.connect_set
            .contains(self.group.op(self.group.inv(g), h))
    }

    /// The identity component as a subgroup: computed independently as the
    /// closure of the connect set, then asserted equal to the union-find
    /// component of the identity.
    pub fn identity_subgroup(&self) -> Result<Subset> {
        let closed = self.group.generated_subgroup(&self.connect_set);
        if closed.members != self.identity_component.members {
            return Err(Error::IdentityComponentMismatch {
                details: format!(
                    "closure of connect set {:?} differs from the identity component {:?}",
                    closed.members, self.identity_component.members
                ),
            });
        }
        Ok(closed)
    }

    /// Checks that the identity component is a subgroup and that the
    /// component partition equals its left cosets.
    pub fn verify_prop1(&self) -> Prop1Report {
        let h = &self.identity_component;
        let mut counterexample = None;

        let subgroup_closed = self.group.is_subgroup(h) && self.identity_subgroup().is_ok();
        if !subgroup_closed {
            counterexample = self.closure_counterexample(h);
        }

        let components_match_cosets = subgroup_closed
            && match self.group.left_cosets(h) {
                Ok(cosets) => {
                    if cosets == self.components {
                        true
                    } else {
                        let mismatch = cosets
                            .iter()
                            .zip(&self.components)
                            .find(|(a, b)| a != b)
                            .map(|(a, b)| (a.clone(), b.clone()));
                        counterexample = Some(match mismatch {
                            Some((coset, comp)) => {
                                format!("coset {coset:?} differs from component {comp:?}")
                            }
                            None => format!(
                                "{} cosets versus {} components",
                                cosets.len(),
                                self.components.len()
                            ),
                        });
                        false
                    }
                }
                Err(e) => {
                    counterexample.get_or_insert_with(|| e.to_string());
                    false
                }
            };

        let verdict = if subgroup_closed && components_match_cosets {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Prop1Report {
            verdict,
            subgroup_closed,
            components_match_cosets,
            identity_component: h.members.clone(),
            counterexample,
        }
    }

    fn closure_counterexample(&self, h: &Subset) -> Option<String> {
        for &x in &h.members {
            if !h.contains(self.group.inv(x)) {
                return Some(format!("inverse of {x} is outside the identity component"));
            }
            for &y in &h.members {
                if !h.contains(self.group.op(x, y)) {
                    return Some(format!(
                        "product {x}*{y} = {} is outside the identity component",
                        self.group.op(x, y)
                    ));
                }
            }
        }
        if !h.contains(FiniteGroup::IDENTITY) {
            return Some("identity is outside the identity component".into());
        }
        None
    }
}

/// Checks normality of the identity component when the seed is a class
/// state; reports "not applicable" otherwise, asserting nothing.
pub fn verify_prop2(
    rep: &ProjectiveRep,
    seed: &StateVector,
    graph: &ConfusabilityGraph,
    tol: Tolerance,
) -> Result<Prop2Report> {
    let class_state = rep.is_class_state(seed, tol)?;
    let projective_warning = rep.has_nontrivial_cocycle(tol);
    if !class_state {
        return Ok(Prop2Report {
            verdict: Verdict::NotApplicable,
            class_state,
            normal: None,
            cosets_coincide: None,
            projective_warning,
            counterexample: None,
        });
    }
    let h = &graph.identity_component;
    let normal = graph.group.is_normal(h);
    let cosets_coincide = match (graph.group.left_cosets(h), graph.group.right_cosets(h)) {
        (Ok(left), Ok(right)) => left == right,
        _ => false,
    };
    let mut counterexample = None;
    if !normal {
        'outer: for g in 0..graph.group.order {
            for &x in &h.members {
                let conj = graph.group.op(graph.group.op(g, x), graph.group.inv(g));
                if !h.contains(conj) {
                    counterexample = Some(format!(
                        "{g}*{x}*{g}^-1 = {conj} leaves the identity component"
                    ));
                    break 'outer;
                }
            }
        }
    }
    let verdict = if normal && cosets_coincide {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(Prop2Report {
        verdict,
        class_state,
        normal: Some(normal),
        cosets_coincide: Some(cosets_coincide),
        projective_warning,
        counterexample,
    })
}

impl ConfusabilityGraph {
    /// Renders the graph in DOT, one cluster per component, with vertex and
    /// edge order fixed so identical graphs produce identical bytes.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph confusability {\n  node [shape=circle];\n");
        for (k, block) in self.components.iter().enumerate() {
            out.push_str(&format!(
                "  subgraph cluster_{k} {{\n    label=\"component {k}\";\n"
            ));
            for &g in block {
                out.push_str(&format!(
                    "    v{g} [label=\"{g}:{}\"];\n",
                    self.group.names[g]
                ));
            }
            out.push_str("  }\n");
        }
        for g in 0..self.group.order {
            for h in (g + 1)..self.group.order {
                if self.adjacent(g, h) {
                    out.push_str(&format!("  v{g} -- v{h};\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}
