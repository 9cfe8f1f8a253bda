use std::collections::HashMap;

use super::{GroupAction, Subgroup};
use crate::{Error, Result};

/// A function on a finite parameter space with finitely many named values.
///
/// `labels[x]` indexes into `value_set`. Every value in the set is taken by
/// at least one point, so level sets are nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterFunction {
    labels: Vec<usize>,
    value_set: Vec<String>,
}

impl ParameterFunction {
    /// Value set in order of first appearance.
    pub fn from_labels<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        let mut value_set: Vec<String> = Vec::new();
        for l in labels {
            if !value_set.iter().any(|v| v == l.as_ref()) {
                value_set.push(l.as_ref().to_owned());
            }
        }
        Self::with_values(value_set, labels)
    }

    pub fn with_values<S: AsRef<str>>(value_set: Vec<String>, labels: &[S]) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidParameter("empty space".into()));
        }
        let index: HashMap<&str, usize> = value_set.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        if index.len() != value_set.len() {
            return Err(Error::InvalidParameter("duplicate values in value set".into()));
        }
        let labels = labels
            .iter()
            .map(|l| {
                index
                    .get(l.as_ref())
                    .copied()
                    .ok_or_else(|| Error::InvalidParameter(format!("label {:?} not in value set", l.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut used = vec![false; value_set.len()];
        labels.iter().for_each(|&k| used[k] = true);
        if let Some(k) = used.iter().position(|u| !u) {
            return Err(Error::InvalidParameter(format!(
                "value {:?} is never taken",
                value_set[k]
            )));
        }
        Ok(Self { labels, value_set })
    }

    /// A function taking the same value everywhere.
    pub fn constant(space_size: usize) -> Self {
        Self {
            labels: vec![0; space_size],
            value_set: vec!["*".into()],
        }
    }

    pub fn space_size(&self) -> usize {
        self.labels.len()
    }

    pub fn value_count(&self) -> usize {
        self.value_set.len()
    }

    pub fn value_set(&self) -> &[String] {
        &self.value_set
    }

    /// Value index at point `x`.
    #[inline]
    pub fn at(&self, x: usize) -> usize {
        self.labels[x]
    }

    pub fn name_at(&self, x: usize) -> &str {
        &self.value_set[self.labels[x]]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn level_set(&self, k: usize) -> Vec<usize> {
        (0..self.labels.len()).filter(|&x| self.labels[x] == k).collect()
    }

    pub fn level_sets(&self) -> Vec<Vec<usize>> {
        (0..self.value_count()).map(|k| self.level_set(k)).collect()
    }

    /// The induced value map `λ(x) ↦ λ(x·g)` when it is well defined.
    fn value_map(&self, action: &GroupAction, g: usize) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.value_count()];
        for x in 0..self.space_size() {
            let (from, to) = (self.labels[x], self.labels[action.apply(x, g)]);
            if map[from] == usize::MAX {
                map[from] = to;
            } else if map[from] != to {
                return None;
            }
        }
        Some(map)
    }
}

fn check_sizes(lambda: &ParameterFunction, action: &GroupAction) -> Result<()> {
    if lambda.space_size() != action.space_size() {
        return Err(Error::DimensionMismatch {
            expected: action.space_size(),
            found: lambda.space_size(),
        });
    }
    Ok(())
}

/// Whether `λ(φ₁) = λ(φ₂)` implies `λ(φ₁g) = λ(φ₂g)` for every `g` in `subgroup`.
pub fn is_permissible(lambda: &ParameterFunction, action: &GroupAction, subgroup: &Subgroup) -> Result<bool> {
    check_sizes(lambda, action)?;
    if subgroup.elements().iter().any(|&g| g >= action.group().order()) {
        return Err(Error::NotASubgroup);
    }
    Ok(subgroup
        .elements()
        .iter()
        .all(|&g| lambda.value_map(action, g).is_some()))
}

/// The set of all elements under which `λ` is permissible.
///
/// The set is closed under products and, being a submonoid of a finite
/// group, under inverses; it contains every subgroup under which `λ` is
/// permissible.
pub fn maximal_permissible_subgroup(lambda: &ParameterFunction, action: &GroupAction) -> Result<Subgroup> {
    check_sizes(lambda, action)?;
    let elements = action
        .group()
        .elements()
        .filter(|&g| lambda.value_map(action, g).is_some());
    Subgroup::new(action.group(), elements)
}

/// The action `v·g = λ(φg)` for any `φ` with `λ(φ) = v`, as an action of
/// `subgroup` (reindexed as in [`Subgroup::as_group`]) on value indices.
pub fn induced_parameter_action(
    lambda: &ParameterFunction,
    action: &GroupAction,
    subgroup: &Subgroup,
) -> Result<GroupAction> {
    check_sizes(lambda, action)?;
    let table = subgroup
        .elements()
        .iter()
        .map(|&g| lambda.value_map(action, g).ok_or(Error::NotPermissible))
        .collect::<Result<Vec<_>>>()?;
    GroupAction::new(subgroup.as_group(action.group()), lambda.value_count(), table)
}

/// Some `k` with `λ_b(φ) = λ_a(φ·k)` for every `φ`, matching values by name.
///
/// Returns `None` when the value sets differ or no element works.
pub fn find_intertwiner(
    lambda_a: &ParameterFunction,
    lambda_b: &ParameterFunction,
    action: &GroupAction,
) -> Option<usize> {
    let mut a_names: Vec<&String> = lambda_a.value_set().iter().collect();
    let mut b_names: Vec<&String> = lambda_b.value_set().iter().collect();
    a_names.sort();
    b_names.sort();
    if a_names != b_names {
        return None;
    }
    let bijection: Vec<usize> = lambda_a
        .value_set()
        .iter()
        .map(|v| lambda_b.value_set().iter().position(|w| w == v).expect("same set"))
        .collect();
    find_intertwiner_with(lambda_a, lambda_b, action, &bijection)
}

/// Like [`find_intertwiner`], with an explicit bijection from `λ_a`'s value
/// indices to `λ_b`'s.
pub fn find_intertwiner_with(
    lambda_a: &ParameterFunction,
    lambda_b: &ParameterFunction,
    action: &GroupAction,
    bijection: &[usize],
) -> Option<usize> {
    let n = action.space_size();
    if lambda_a.space_size() != n
        || lambda_b.space_size() != n
        || bijection.len() != lambda_a.value_count()
        || lambda_a.value_count() != lambda_b.value_count()
    {
        return None;
    }
    action
        .group()
        .elements()
        .find(|&k| (0..n).all(|x| lambda_b.at(x) == bijection[lambda_a.at(action.apply(x, k))]))
}
