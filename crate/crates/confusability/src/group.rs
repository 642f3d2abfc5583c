//! Finite groups as validated Cayley tables.
//!
//! A [`FiniteGroup`] stores the full multiplication table over element
//! indices `0..order`, with the identity pinned at index 0 (constructors
//! re-index when the input puts it elsewhere). Construction checks the group
//! axioms up front: entry ranges, a two-sided identity, two-sided inverses,
//! and associativity for orders up to [`MAX_VALIDATED_ORDER`]. Beyond that
//! limit the caller must opt into trusting associativity explicitly.
//!
//! [`Subset`] is a sorted, deduplicated list of element indices used for
//! subgroups and cosets; the owning group is passed to each operation rather
//! than stored, keeping the type free of lifetimes.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest order for which construction always verifies associativity.
///
/// The check is a cubic scan of the table; past this size construction
/// refuses unless the trusted constructor is used.
pub const MAX_VALIDATED_ORDER: usize = 256;

/// A finite group given by its Cayley table.
///
/// `table` is row-major: `table[i * order + j]` is the index of `g_i * g_j`.
/// Index 0 is always the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    pub order: usize,
    pub table: Vec<usize>,
    pub inverses: Vec<usize>,
    pub names: Vec<String>,
}

/// A sorted set of element indices within some group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subset {
    pub members: Vec<usize>,
}

impl Subset {
    /// Validates range and distinctness; members are stored sorted.
    pub fn new(group: &FiniteGroup, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        for pair in members.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateMember { member: pair[0] });
            }
        }
        if let Some(&last) = members.last() {
            if last >= group.order {
                return Err(Error::SubsetOutOfRange {
                    member: last,
                    order: group.order,
                });
            }
        }
        Ok(Self { members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, element: usize) -> bool {
        self.members.binary_search(&element).is_ok()
    }
}

impl FiniteGroup {
    /// The identity element's index under this crate's convention.
    pub const IDENTITY: usize = 0;

    /// Builds and fully validates a group from a Cayley table.
    ///
    /// Validation order: square shape, entry ranges, a two-sided identity
    /// (re-indexed to 0 if found elsewhere), two-sided inverses, then
    /// associativity. Orders above [`MAX_VALIDATED_ORDER`] are refused here;
    /// see [`FiniteGroup::from_cayley_table_trusted`].
    pub fn from_cayley_table(table: &[Vec<usize>]) -> Result<Self> {
        Self::build(table, false)
    }

    /// Like [`FiniteGroup::from_cayley_table`], but skips the cubic
    /// associativity scan for orders above [`MAX_VALIDATED_ORDER`]. All other
    /// axioms are still checked. Intended for tables produced by
    /// constructions that are associative by design.
    pub fn from_cayley_table_trusted(table: &[Vec<usize>]) -> Result<Self> {
        Self::build(table, true)
    }

    fn build(table: &[Vec<usize>], trust_associativity: bool) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::MissingIdentity);
        }
        for (bad_row, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::TableNotSquare {
                    rows: n,
                    bad_row,
                    bad_len: row.len(),
                });
            }
        }
        for (row, r) in table.iter().enumerate() {
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(Error::TableEntryOutOfRange {
                        row,
                        col,
                        value,
                        order: n,
                    });
                }
            }
        }

        let identity = (0..n)
            .find(|&e| (0..n).all(|j| table[e][j] == j && table[j][e] == j))
            .ok_or(Error::MissingIdentity)?;

        // Re-index by swapping the identity with index 0; the swap is its own
        // inverse, so it applies uniformly to rows, columns, and entries.
        let swap = |i: usize| -> usize {
            if i == identity {
                0
            } else if i == 0 {
                identity
            } else {
                i
            }
        };
        let mut flat = vec![0usize; n * n];
        for i in 0..n {
            for j in 0..n {
                flat[i * n + j] = swap(table[swap(i)][swap(j)]);
            }
        }

        let mut inverses = vec![usize::MAX; n];
        for i in 0..n {
            match (0..n).find(|&j| flat[i * n + j] == 0 && flat[j * n + i] == 0) {
                Some(j) => inverses[i] = j,
                None => return Err(Error::MissingInverse { element: i }),
            }
        }

        if n <= MAX_VALIDATED_ORDER {
            for i in 0..n {
                for j in 0..n {
                    let ij = flat[i * n + j];
                    for k in 0..n {
                        if flat[ij * n + k] != flat[i * n + flat[j * n + k]] {
                            return Err(Error::NotAssociative { i, j, k });
                        }
                    }
                }
            }
        } else if !trust_associativity {
            return Err(Error::OrderTooLarge {
                order: n,
                limit: MAX_VALIDATED_ORDER,
            });
        }

        let names = (0..n).map(|i| format!("g{i}")).collect();
        Ok(Self {
            order: n,
            table: flat,
            inverses,
            names,
        })
    }

    /// Product of elements `i * j`.
    #[inline]
    pub fn op(&self, i: usize, j: usize) -> usize {
        self.table[i * self.order + j]
    }

    /// Inverse of element `i`.
    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        self.inverses[i]
    }

    /// Conjugate `h^-1 * g * h`.
    #[inline]
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.op(self.op(self.inv(h), g), h)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|i| (i + 1..self.order).all(|j| self.op(i, j) == self.op(j, i)))
    }

    /// Builds one of the canonical example groups; see [`GroupKind`] for the
    /// element orderings.
    pub fn standard(kind: &GroupKind) -> Result<Self> {
        let (table, names) = kind.build_table()?;
        let mut group = if table.len() <= MAX_VALIDATED_ORDER {
            Self::from_cayley_table(&table)?
        } else {
            Self::from_cayley_table_trusted(&table)?
        };
        group.names = names;
        Ok(group)
    }

    /// Smallest subset containing `seeds` and the identity, closed under
    /// product and inverse.
    pub fn generated_subgroup(&self, seeds: &Subset) -> Subset {
        let mut in_set = vec![false; self.order];
        in_set[Self::IDENTITY] = true;
        let mut frontier: Vec<usize> = vec![Self::IDENTITY];
        for &s in &seeds.members {
            if !in_set[s] {
                in_set[s] = true;
                frontier.push(s);
            }
        }
        // Fixed-point closure: products of known members discover new ones.
        while let Some(x) = frontier.pop() {
            let ix = self.inv(x);
            if !in_set[ix] {
                in_set[ix] = true;
                frontier.push(ix);
            }
            for y in 0..self.order {
                if !in_set[y] {
                    continue;
                }
                for p in [self.op(x, y), self.op(y, x)] {
                    if !in_set[p] {
                        in_set[p] = true;
                        frontier.push(p);
                    }
                }
            }
        }
        Subset {
            members: (0..self.order).filter(|&i| in_set[i]).collect(),
        }
    }

    /// True iff `subset` contains the identity and is closed under product
    /// and inverse.
    pub fn is_subgroup(&self, subset: &Subset) -> bool {
        subset.contains(Self::IDENTITY)
            && subset.members.iter().all(|&x| {
                subset.contains(self.inv(x))
                    && subset
                        .members
                        .iter()
                        .all(|&y| subset.contains(self.op(x, y)))
            })
    }

    /// Partition into left cosets `g * H`, blocks sorted by minimal element.
    pub fn left_cosets(&self, h: &Subset) -> Result<Vec<Vec<usize>>> {
        self.cosets(h, |g, x| self.op(g, x))
    }

    /// Partition into right cosets `H * g`, blocks sorted by minimal element.
    pub fn right_cosets(&self, h: &Subset) -> Result<Vec<Vec<usize>>> {
        self.cosets(h, |g, x| self.op(x, g))
    }

    fn cosets(
        &self,
        h: &Subset,
        translate: impl Fn(usize, usize) -> usize,
    ) -> Result<Vec<Vec<usize>>> {
        if !self.is_subgroup(h) {
            return Err(Error::NotASubgroup {
                reason: format!(
                    "subset {:?} is not closed under product and inverse or misses the identity",
                    h.members
                ),
            });
        }
        let mut seen = vec![false; self.order];
        let mut blocks = Vec::new();
        for g in 0..self.order {
            if seen[g] {
                continue;
            }
            let mut block: Vec<usize> = h.members.iter().map(|&x| translate(g, x)).collect();
            block.sort_unstable();
            for &m in &block {
                seen[m] = true;
            }
            blocks.push(block);
        }
        // Scanning g upward already yields blocks ordered by minimal element.
        Ok(blocks)
    }

    /// True iff `g * H * g^-1 == H` for every `g`. The caller is expected to
    /// pass a subgroup; for arbitrary subsets this still decides whether the
    /// set is conjugation-invariant.
    pub fn is_normal(&self, h: &Subset) -> bool {
        (0..self.order).all(|g| {
            h.members
                .iter()
                .all(|&x| h.contains(self.op(self.op(g, x), self.inv(g))))
        })
    }
}

/// Canonical example groups with documented element orderings.
///
/// - `Cyclic(n)`: residues 0..n, addition mod n.
/// - `Dihedral(n)`: order 2n; indices 0..n are rotations `r^k`, indices
///   n..2n are reflections `s r^k`, with `s r s = r^-1`.
/// - `Symmetric(n)`, n <= 5: permutations of 0..n in lexicographic one-line
///   order; product is composition, left factor applied second.
/// - `Klein`: {e, a, b, ab}, every non-identity element an involution.
/// - `Product(a, b)`: direct product; index `i_a * order_b + i_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Klein,
    Product(Box<GroupKind>, Box<GroupKind>),
}

impl GroupKind {
    fn order(&self) -> usize {
        match self {
            Self::Cyclic(n) => *n,
            Self::Dihedral(n) => 2 * n,
            Self::Symmetric(n) => (1..=*n).product(),
            Self::Klein => 4,
            Self::Product(a, b) => a.order() * b.order(),
        }
    }

    fn build_table(&self) -> Result<(Vec<Vec<usize>>, Vec<String>)> {
        match self {
            Self::Cyclic(n) => {
                let n = *n;
                if n == 0 || n > MAX_VALIDATED_ORDER {
                    return Err(Error::UnsupportedGroup {
                        reason: format!(
                            "cyclic order must be in 1..={MAX_VALIDATED_ORDER}, got {n}"
                        ),
                    });
                }
                let table = (0..n)
                    .map(|i| (0..n).map(|j| (i + j) % n).collect())
                    .collect();
                let names = (0..n).map(|i| i.to_string()).collect();
                Ok((table, names))
            }
            Self::Dihedral(n) => {
                let n = *n;
                if n == 0 || 2 * n > MAX_VALIDATED_ORDER {
                    return Err(Error::UnsupportedGroup {
                        reason: format!(
                            "dihedral parameter must be in 1..={}, got {n}",
                            MAX_VALIDATED_ORDER / 2
                        ),
                    });
                }
                // Element t*n + k encodes s^t r^k; s r^k s = r^-k gives
                // (s^t1 r^k1)(s^t2 r^k2) = s^(t1 xor t2) r^(k2 +- k1).
                let encode = |t: usize, k: usize| t * n + k;
                let mut table = vec![vec![0usize; 2 * n]; 2 * n];
                for t1 in 0..2 {
                    for k1 in 0..n {
                        for t2 in 0..2 {
                            for k2 in 0..n {
                                let t = t1 ^ t2;
                                let k = if t2 == 0 {
                                    (k1 + k2) % n
                                } else {
                                    (n + k2 - k1) % n
                                };
                                table[encode(t1, k1)][encode(t2, k2)] = encode(t, k);
                            }
                        }
                    }
                }
                let names = (0..2 * n)
                    .map(|i| {
                        if i < n {
                            format!("r{i}")
                        } else {
                            format!("sr{}", i - n)
                        }
                    })
                    .collect();
                Ok((table, names))
            }
            Self::Symmetric(n) => {
                let n = *n;
                if n == 0 || n > 5 {
                    return Err(Error::UnsupportedGroup {
                        reason: format!("symmetric degree must be in 1..=5, got {n}"),
                    });
                }
                let perms = lexicographic_permutations(n);
                let index_of =
                    |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
                let table = perms
                    .iter()
                    .map(|a| {
                        perms
                            .iter()
                            .map(|b| {
                                // Composition a after b: x -> a(b(x)).
                                let ab: Vec<usize> = (0..n).map(|x| a[b[x]]).collect();
                                index_of(&ab)
                            })
                            .collect()
                    })
                    .collect();
                let names = perms
                    .iter()
                    .map(|p| p.iter().map(ToString::to_string).collect::<String>())
                    .collect();
                Ok((table, names))
            }
            Self::Klein => {
                let table = vec![
                    vec![0, 1, 2, 3],
                    vec![1, 0, 3, 2],
                    vec![2, 3, 0, 1],
                    vec![3, 2, 1, 0],
                ];
                let names = ["e", "a", "b", "ab"].map(String::from).to_vec();
                Ok((table, names))
            }
            Self::Product(a, b) => {
                let order = self.order();
                if order > MAX_VALIDATED_ORDER {
                    return Err(Error::UnsupportedGroup {
                        reason: format!(
                            "product order {order} exceeds the limit {MAX_VALIDATED_ORDER}"
                        ),
                    });
                }
                let (ta, na) = a.build_table()?;
                let (tb, nb) = b.build_table()?;
                let (oa, ob) = (ta.len(), tb.len());
                let mut table = vec![vec![0usize; order]; order];
                for i1 in 0..oa {
                    for j1 in 0..ob {
                        for i2 in 0..oa {
                            for j2 in 0..ob {
                                table[i1 * ob + j1][i2 * ob + j2] = ta[i1][i2] * ob + tb[j1][j2];
                            }
                        }
                    }
                }
                let names = (0..oa)
                    .flat_map(|i| {
                        let left = na[i].clone();
                        nb.iter().map(move |right| format!("({left},{right})"))
                    })
                    .collect();
                Ok((table, names))
            }
        }
    }
}

/// All permutations of `0..n` in lexicographic one-line order.
pub fn lexicographic_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    fn rec(
        n: usize,
        depth: usize,
        current: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == n {
            out.push(current.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                current[depth] = v;
                rec(n, depth + 1, current, used, out);
                used[v] = false;
            }
        }
    }
    rec(n, 0, &mut current, &mut used, &mut out);
    out
}

impl FromStr for GroupKind {
    type Err = Error;

    /// Accepts `"cyclic N"`, `"dihedral N"`, `"symmetric N"`, `"klein"`, and
    /// products spelled `"<kind> x <kind>"` (right associative).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((left, right)) = s.split_once(" x ") {
            return Ok(Self::Product(
                Box::new(left.parse()?),
                Box::new(right.parse()?),
            ));
        }
        if s.eq_ignore_ascii_case("klein") {
            return Ok(Self::Klein);
        }
        let unsupported = |reason: String| Error::UnsupportedGroup { reason };
        let (kind, arg) = s.split_once(' ').ok_or_else(|| {
            unsupported(format!(
                "unrecognized group '{s}'; expected 'cyclic N', 'dihedral N', 'symmetric N', 'klein', or 'A x B'"
            ))
        })?;
        let n: usize = arg
            .trim()
            .parse()
            .map_err(|_| unsupported(format!("group size '{}' is not a number", arg.trim())))?;
        match kind.to_ascii_lowercase().as_str() {
            "cyclic" => Ok(Self::Cyclic(n)),
            "dihedral" => Ok(Self::Dihedral(n)),
            "symmetric" => Ok(Self::Symmetric(n)),
            other => Err(unsupported(format!("unrecognized group kind '{other}'"))),
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Cyclic(n) => write!(f, "cyclic {n}"),
            Self::Dihedral(n) => write!(f, "dihedral {n}"),
            Self::Symmetric(n) => write!(f, "symmetric {n}"),
            Self::Klein => write!(f, "klein"),
            Self::Product(a, b) => write!(f, "{a} x {b}"),
        }
    }
}
