//! Finite groups given by Cayley tables, their right actions on finite
//! parameter spaces, and parameter functions on those spaces.

mod action;
mod parameter;
mod triangle;

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use action::{invariant_measure, is_transitive, orbits, GroupAction, InvariantMeasure};
pub use parameter::{
    find_intertwiner, find_intertwiner_with, induced_parameter_action, is_permissible, maximal_permissible_subgroup,
    ParameterFunction,
};
pub use triangle::{s3_triangle, Triangle, TRIANGLE_CORNERS};

/// Closure size at which [`generate_group`] gives up.
pub const DEFAULT_ORDER_CAP: usize = 10_080;

/// Tables up to this order are verified over every triple; larger ones are sampled.
pub const EXHAUSTIVE_LIMIT: usize = 64;

const SAMPLED_TRIPLES: usize = 20_000;
const SAMPLING_SEED: u64 = 0x5eed_0f9a;

/// A finite group stored as its multiplication table.
///
/// Entry `(i, j)` of the table is the index of `g_i g_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    cayley: Vec<u32>,
    identity: usize,
    inverse: Vec<usize>,
}

/// A failed group axiom, located by the offending element indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxiomViolation {
    NotSquare,
    OutOfRange { row: usize, col: usize },
    NoIdentity,
    NoInverse(usize),
    NotAssociative(usize, usize, usize),
}

impl std::fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AxiomViolation::NotSquare => write!(f, "table is not square"),
            AxiomViolation::OutOfRange { row, col } => {
                write!(f, "entry ({row}, {col}) out of range")
            }
            AxiomViolation::NoIdentity => write!(f, "no two-sided identity"),
            AxiomViolation::NoInverse(g) => write!(f, "element {g} has no inverse"),
            AxiomViolation::NotAssociative(a, b, c) => {
                write!(f, "associativity fails for ({a}, {b}, {c})")
            }
        }
    }
}

/// Checks a raw multiplication table against the group axioms.
///
/// Returns every identity/inverse failure and the first associativity
/// failure found. Associativity is checked over all triples when
/// `n <= EXHAUSTIVE_LIMIT` and over a fixed-seed random sample otherwise.
pub fn check_group_table(table: &[Vec<usize>]) -> Vec<AxiomViolation> {
    let n = table.len();
    if n == 0 || table.iter().any(|row| row.len() != n) {
        return vec![AxiomViolation::NotSquare];
    }
    let mut out = Vec::new();
    for (i, row) in table.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            if e >= n {
                out.push(AxiomViolation::OutOfRange { row: i, col: j });
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    let Some(e) = (0..n).find(|&e| (0..n).all(|j| table[e][j] == j && table[j][e] == j)) else {
        out.push(AxiomViolation::NoIdentity);
        return out;
    };
    for (g, row) in table.iter().enumerate() {
        if !(0..n).any(|h| row[h] == e && table[h][g] == e) {
            out.push(AxiomViolation::NoInverse(g));
        }
    }
    let assoc = |a: usize, b: usize, c: usize| table[table[a][b]][c] == table[a][table[b][c]];
    if n <= EXHAUSTIVE_LIMIT {
        'outer: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !assoc(a, b, c) {
                        out.push(AxiomViolation::NotAssociative(a, b, c));
                        break 'outer;
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLING_SEED);
        for _ in 0..SAMPLED_TRIPLES {
            let (a, b, c) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
            if !assoc(a, b, c) {
                out.push(AxiomViolation::NotAssociative(a, b, c));
                break;
            }
        }
    }
    out
}

impl FiniteGroup {
    /// Builds a group from its multiplication table, verifying the axioms.
    pub fn from_cayley(table: Vec<Vec<usize>>) -> Result<Self> {
        if let Some(v) = check_group_table(&table).first() {
            return Err(Error::InvalidGroup(v.to_string()));
        }
        let n = table.len();
        let identity = (0..n)
            .find(|&e| (0..n).all(|j| table[e][j] == j))
            .expect("checked above");
        let inverse = (0..n)
            .map(|g| (0..n).find(|&h| table[g][h] == identity).expect("checked above"))
            .collect();
        let cayley = table.iter().flatten().map(|&x| x as u32).collect();
        Ok(Self {
            order: n,
            cayley,
            identity,
            inverse,
        })
    }

    pub fn trivial() -> Self {
        Self {
            order: 1,
            cayley: vec![0],
            identity: 0,
            inverse: vec![0],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Index of `g_a g_b`.
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order + b] as usize
    }

    #[inline]
    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn cayley_rows(&self) -> Vec<Vec<usize>> {
        self.cayley
            .chunks(self.order)
            .map(|row| row.iter().map(|&x| x as usize).collect())
            .collect()
    }

    pub fn axiom_violations(&self) -> Vec<AxiomViolation> {
        check_group_table(&self.cayley_rows())
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// A subgroup stored as a sorted list of element indices of its parent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    /// Validates that `elements` is nonempty and closed under products and inverses.
    pub fn new(group: &FiniteGroup, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut elements: Vec<usize> = elements.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        if elements.is_empty() || elements.iter().any(|&g| g >= group.order()) {
            return Err(Error::NotASubgroup);
        }
        let sub = Self { elements };
        let closed = sub
            .elements
            .iter()
            .all(|&a| sub.contains(group.inverse(a)) && sub.elements.iter().all(|&b| sub.contains(group.mul(a, b))));
        if closed {
            Ok(sub)
        } else {
            Err(Error::NotASubgroup)
        }
    }

    pub fn full(group: &FiniteGroup) -> Self {
        Self {
            elements: group.elements().collect(),
        }
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Self {
            elements: vec![group.identity()],
        }
    }

    /// Smallest subgroup containing `generators`.
    pub fn generated_by(group: &FiniteGroup, generators: &[usize]) -> Self {
        let mut elements = vec![group.identity()];
        let mut seen = vec![false; group.order()];
        seen[group.identity()] = true;
        let mut i = 0;
        while i < elements.len() {
            let x = elements[i];
            for &s in generators {
                let y = group.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    elements.push(y);
                }
            }
            i += 1;
        }
        elements.sort_unstable();
        Self { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    /// Parent index of the subgroup's `local`-th element.
    pub fn parent_index(&self, local: usize) -> usize {
        self.elements[local]
    }

    pub fn local_index(&self, parent: usize) -> Option<usize> {
        self.elements.binary_search(&parent).ok()
    }

    /// The subgroup as a standalone group; local index `i` is parent element `elements()[i]`.
    pub fn as_group(&self, parent: &FiniteGroup) -> FiniteGroup {
        let table = self
            .elements
            .iter()
            .map(|&a| {
                self.elements
                    .iter()
                    .map(|&b| self.local_index(parent.mul(a, b)).expect("closed"))
                    .collect()
            })
            .collect();
        FiniteGroup::from_cayley(table).expect("subgroup of a valid group")
    }
}

/// Closure of a set of permutations of `0..degree` under composition.
///
/// Elements act on the right: `x·(gh) = (x·g)·h`, so the product `gh` is the
/// permutation `x ↦ h[g[x]]`. Element 0 of the result is the identity and the
/// returned action is the defining permutation action.
pub fn generate_group(generators: &[Vec<usize>]) -> Result<(FiniteGroup, GroupAction)> {
    generate_group_with_cap(generators, DEFAULT_ORDER_CAP)
}

pub fn generate_group_with_cap(generators: &[Vec<usize>], cap: usize) -> Result<(FiniteGroup, GroupAction)> {
    let degree = generators
        .first()
        .map(Vec::len)
        .ok_or_else(|| Error::InvalidPermutation("no generators".into()))?;
    for g in generators {
        if g.len() != degree {
            return Err(Error::InvalidPermutation("generators act on different sets".into()));
        }
        let mut seen = vec![false; degree];
        for &x in g {
            if x >= degree || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!("{g:?} is not a bijection")));
            }
        }
    }

    let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { p.iter().map(|&x| q[x]).collect() };
    let mut elements: Vec<Vec<usize>> = vec![(0..degree).collect()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(elements[0].clone(), 0)]);
    let mut next = 0;
    while next < elements.len() {
        for s in generators {
            let prod = compose(&elements[next], s);
            if !index.contains_key(&prod) {
                if elements.len() == cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                index.insert(prod.clone(), elements.len());
                elements.push(prod);
            }
        }
        next += 1;
    }

    let cayley: Vec<Vec<usize>> = elements
        .iter()
        .map(|a| elements.iter().map(|b| index[&compose(a, b)]).collect())
        .collect();
    let group = FiniteGroup::from_cayley(cayley)?;
    let action = GroupAction::new(group.clone(), degree, elements)?;
    Ok((group, action))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_from_two_generators() {
        let (g, action) = generate_group(&[vec![1, 2, 0], vec![0, 2, 1]]).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.identity(), 0);
        assert!(!g.is_abelian());
        assert_eq!(action.space_size(), 3);
    }

    #[test]
    fn identity_generator_gives_trivial_group() {
        let (g, _) = generate_group(&[vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g, FiniteGroup::trivial());
    }

    #[test]
    fn four_cycle_is_cyclic_of_order_four() {
        let (g, _) = generate_group(&[vec![1, 2, 3, 0]]).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());
        // an element of order 4 exists
        let gen = 1;
        let mut x = gen;
        let mut k = 1;
        while x != g.identity() {
            x = g.mul(x, gen);
            k += 1;
        }
        assert_eq!(k, 4);
    }

    #[test]
    fn cap_is_enforced() {
        // S5 has order 120
        let gens = [vec![1, 2, 3, 4, 0], vec![1, 0, 2, 3, 4]];
        assert_eq!(
            generate_group_with_cap(&gens, 100).unwrap_err(),
            Error::GroupTooLarge { cap: 100 }
        );
        assert_eq!(generate_group(&gens).unwrap().0.order(), 120);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(matches!(
            generate_group(&[vec![0, 0, 1]]),
            Err(Error::InvalidPermutation(_))
        ));
        assert!(generate_group(&[]).is_err());
        assert!(generate_group(&[vec![0, 1], vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn corrupted_table_fails_associativity() {
        let (g, _) = generate_group(&[vec![1, 2, 0], vec![0, 2, 1]]).unwrap();
        let mut table = g.cayley_rows();
        // swap two non-identity entries of a row; the row stays a permutation
        let row = (1..6).find(|&r| r != g.identity()).unwrap();
        let (a, b) = (1, 2);
        table[row].swap(a, b);
        let v = check_group_table(&table);
        assert!(
            v.iter().any(|v| matches!(v, AxiomViolation::NotAssociative(..))),
            "{v:?}"
        );
        assert!(FiniteGroup::from_cayley(table).is_err());
    }

    #[test]
    fn subgroup_validation() {
        let (g, _) = generate_group(&[vec![1, 2, 0], vec![0, 2, 1]]).unwrap();
        assert_eq!(Subgroup::full(&g).order(), 6);
        assert_eq!(Subgroup::trivial(&g).order(), 1);
        // any two distinct transpositions generate S3, so such a pair is never closed
        let involutions: Vec<usize> = g.elements().filter(|&x| x != 0 && g.mul(x, x) == 0).collect();
        assert_eq!(involutions.len(), 3);
        assert_eq!(
            Subgroup::new(&g, [0, involutions[0], involutions[1]]).unwrap_err(),
            Error::NotASubgroup
        );
        let h = Subgroup::new(&g, [0, involutions[0]]).unwrap();
        let hg = h.as_group(&g);
        assert_eq!(hg.order(), 2);
        let all = Subgroup::generated_by(&g, &involutions[..2]);
        assert_eq!(all, Subgroup::full(&g));
        assert_eq!(Subgroup::generated_by(&g, &[]), Subgroup::trivial(&g));
    }

    #[test]
    fn large_group_uses_sampled_check() {
        // S6, order 720 > EXHAUSTIVE_LIMIT
        let (g, _) = generate_group(&[vec![1, 2, 3, 4, 5, 0], vec![1, 0, 2, 3, 4, 5]]).unwrap();
        assert_eq!(g.order(), 720);
        assert!(g.axiom_violations().is_empty());
    }
}
