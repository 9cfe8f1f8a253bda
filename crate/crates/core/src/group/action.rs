use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FiniteGroup, Subgroup, EXHAUSTIVE_LIMIT};
use crate::{Error, Result};

/// A right action of a finite group on the points `0..space_size`.
///
/// `table[g][x]` is `x·g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    group: FiniteGroup,
    space_size: usize,
    table: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn new(group: FiniteGroup, space_size: usize, table: Vec<Vec<usize>>) -> Result<Self> {
        if space_size == 0 {
            return Err(Error::InvalidAction("empty space".into()));
        }
        if table.len() != group.order() {
            return Err(Error::InvalidAction(format!(
                "{} rows for a group of order {}",
                table.len(),
                group.order()
            )));
        }
        for (g, row) in table.iter().enumerate() {
            let mut seen = vec![false; space_size];
            if row.len() != space_size
                || row
                    .iter()
                    .any(|&y| y >= space_size || std::mem::replace(&mut seen[y], true))
            {
                return Err(Error::InvalidAction(format!("row {g} is not a permutation")));
            }
        }
        if table[group.identity()].iter().enumerate().any(|(x, &y)| x != y) {
            return Err(Error::InvalidAction("identity does not act trivially".into()));
        }
        let action = Self {
            group,
            space_size,
            table,
        };
        if let Some((g1, g2, x)) = action.compatibility_violation() {
            return Err(Error::InvalidAction(format!(
                "(x·g{g1})·g{g2} != x·(g{g1}g{g2}) at x = {x}"
            )));
        }
        Ok(action)
    }

    /// The action of a group on itself by right multiplication, `x·g = xg`.
    pub fn right_regular(group: &FiniteGroup) -> Self {
        let table = group
            .elements()
            .map(|g| group.elements().map(|x| group.mul(x, g)).collect())
            .collect();
        Self {
            group: group.clone(),
            space_size: group.order(),
            table,
        }
    }

    /// Trivial action of the one-element group on `n` points.
    pub fn trivial(n: usize) -> Self {
        Self {
            group: FiniteGroup::trivial(),
            space_size: n,
            table: vec![(0..n).collect()],
        }
    }

    fn compatibility_violation(&self) -> Option<(usize, usize, usize)> {
        let g = &self.group;
        let n = g.order();
        let bad = |g1: usize, g2: usize| {
            (0..self.space_size).find(|&x| self.table[g2][self.table[g1][x]] != self.table[g.mul(g1, g2)][x])
        };
        if n <= EXHAUSTIVE_LIMIT {
            for g1 in 0..n {
                for g2 in 0..n {
                    if let Some(x) = bad(g1, g2) {
                        return Some((g1, g2, x));
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0xac7);
            for _ in 0..4096 {
                let (g1, g2) = (rng.random_range(0..n), rng.random_range(0..n));
                if let Some(x) = bad(g1, g2) {
                    return Some((g1, g2, x));
                }
            }
        }
        None
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn space_size(&self) -> usize {
        self.space_size
    }

    /// `x·g`.
    #[inline]
    pub fn apply(&self, x: usize, g: usize) -> usize {
        self.table[g][x]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    /// The same action seen as an action of `sub`, reindexed as in [`Subgroup::as_group`].
    pub fn restrict(&self, sub: &Subgroup) -> Self {
        let group = sub.as_group(&self.group);
        let table = sub.elements().iter().map(|&g| self.table[g].clone()).collect();
        Self {
            group,
            space_size: self.space_size,
            table,
        }
    }
}

/// Orbit partition of the space. Blocks are sorted and ordered by least element.
pub fn orbits(action: &GroupAction) -> Vec<Vec<usize>> {
    let n = action.space_size();
    let mut block_of = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if block_of[start] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        let mut block = vec![start];
        block_of[start] = id;
        let mut i = 0;
        while i < block.len() {
            let x = block[i];
            for row in action.table() {
                let y = row[x];
                if block_of[y] == usize::MAX {
                    block_of[y] = id;
                    block.push(y);
                }
            }
            i += 1;
        }
        block.sort_unstable();
        blocks.push(block);
    }
    blocks
}

pub fn is_transitive(action: &GroupAction) -> bool {
    orbits(action).len() == 1
}

/// A probability measure on the points of a finite parameter space.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantMeasure {
    weights: Vec<f64>,
}

impl InvariantMeasure {
    pub fn uniform(n: usize) -> Self {
        Self {
            weights: vec![1.0 / n as f64; n],
        }
    }

    /// Nonnegative weights summing to one within 1e-12. Invariance is not
    /// checked here; see [`InvariantMeasure::is_invariant`].
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() || weights.iter().any(|&w| w.is_nan() || w < 0.0) {
            return Err(Error::InvalidMeasure("weights must be nonnegative".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidMeasure(format!("weights sum to {total}")));
        }
        Ok(Self { weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn mass(&self, points: &[usize]) -> f64 {
        points.iter().map(|&x| self.weights[x]).sum()
    }

    /// `ν(x·g) = ν(x)` for every point and element, which gives `ν(Bg) = ν(B)` for every set `B`.
    pub fn is_invariant(&self, action: &GroupAction) -> bool {
        self.weights.len() == action.space_size()
            && action.table().iter().all(|row| {
                row.iter()
                    .enumerate()
                    .all(|(x, &y)| (self.weights[x] - self.weights[y]).abs() <= 1e-12)
            })
    }
}

/// The invariant probability measure used throughout: uniform on every point.
///
/// On a transitive action invariance forces this; on a non-transitive one it
/// is uniform within each orbit with orbits weighted by their size.
pub fn invariant_measure(action: &GroupAction) -> InvariantMeasure {
    InvariantMeasure::uniform(action.space_size())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{generate_group, s3_triangle};

    #[test]
    fn right_regular_is_transitive() {
        let t = s3_triangle();
        let o = orbits(&t.action);
        assert_eq!(o, vec![(0..6).collect::<Vec<_>>()]);
        assert!(is_transitive(&t.action));
    }

    #[test]
    fn trivial_action_has_singleton_orbits() {
        let a = GroupAction::trivial(5);
        assert_eq!(orbits(&a).len(), 5);
        assert!(orbits(&a).iter().all(|b| b.len() == 1));
        assert!(!is_transitive(&a));
        assert!(is_transitive(&GroupAction::trivial(1)));
    }

    #[test]
    fn cyclic_subgroup_has_two_orbits_on_orientations() {
        let t = s3_triangle();
        let c3 = t.action.restrict(&t.cyclic_subgroup());
        let o = orbits(&c3);
        assert_eq!(o, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert!(!is_transitive(&c3));
    }

    #[test]
    fn rejects_bad_tables() {
        let (g, _) = generate_group(&[vec![1, 2, 0]]).unwrap();
        let good = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        assert!(GroupAction::new(g.clone(), 3, good).is_ok());
        let broken = vec![vec![0, 1, 2], vec![1, 2, 0], vec![1, 2, 0]];
        assert!(GroupAction::new(g.clone(), 3, broken).is_err());
        assert!(GroupAction::new(g.clone(), 3, vec![vec![0, 1, 2]; 2]).is_err());
        assert!(GroupAction::new(g, 3, vec![vec![1, 0, 2], vec![1, 2, 0], vec![2, 0, 1]]).is_err());
    }

    #[test]
    fn uniform_measure() {
        let t = s3_triangle();
        let nu = invariant_measure(&t.action);
        assert!(nu.weights().iter().all(|&w| (w - 1.0 / 6.0).abs() < 1e-15));
        assert!(nu.is_invariant(&t.action));
        let five = invariant_measure(&GroupAction::trivial(5));
        assert!(five.weights().iter().all(|&w| (w - 0.2).abs() < 1e-15));
        assert!(InvariantMeasure::from_weights(vec![0.5, 0.6]).is_err());
        assert!(InvariantMeasure::from_weights(vec![-0.5, 1.5]).is_err());
    }

    #[test]
    fn two_orbit_measure_is_invariant_on_every_subset() {
        // orbit {0,1} under a swap, orbit {2,3,4,5} under a 4-cycle, driven by one generator
        let (_, action) = generate_group(&[vec![1, 0, 3, 4, 5, 2]]).unwrap();
        let o = orbits(&action);
        assert_eq!(o.iter().map(Vec::len).collect::<Vec<_>>(), vec![2, 4]);
        let nu = invariant_measure(&action);
        assert!(nu.weights().iter().all(|&w| (w - 1.0 / 6.0).abs() < 1e-15));
        // nu(Bg) = nu(B) over all 64 subsets
        for mask in 0u32..64 {
            let b: Vec<usize> = (0..6).filter(|&x| mask >> x & 1 == 1).collect();
            for g in action.group().elements() {
                let bg: Vec<usize> = b.iter().map(|&x| action.apply(x, g)).collect();
                assert!((nu.mass(&bg) - nu.mass(&b)).abs() < 1e-15);
            }
        }
        // orbit-uniform but not globally uniform is still invariant
        let w = vec![0.1, 0.1, 0.2, 0.2, 0.2, 0.2];
        assert!(InvariantMeasure::from_weights(w).unwrap().is_invariant(&action));
        let w = vec![0.2, 0.0, 0.2, 0.2, 0.2, 0.2];
        assert!(!InvariantMeasure::from_weights(w).unwrap().is_invariant(&action));
    }
}
