//! Six orientations of a two-coloured equilateral triangle seen through one
//! polar and three equatorial windows.
//!
//! Orientations are identified with the elements of S₃: orientation `i` is
//! the reference orientation moved by `g_i`, and the group acts by right
//! multiplication. Each element is stored as the permutation `π` with
//! reading `ABC ↦ X`, `X[w] = ABC[π(w)]`, and products compose as
//! `π_{gh} = π_g ∘ π_h`.
//!
//! With this encoding the reading at a window is constant on the cosets
//! `xH` of the two-element stabilizer `H` of that window's position, so the
//! largest subgroup under which it is permissible is `H` itself.

use super::{FiniteGroup, GroupAction, ParameterFunction, Subgroup};

pub const TRIANGLE_CORNERS: [&str; 3] = ["A", "B", "C"];

/// `g₁ … g₆` as images of `ABC`: ABC, CAB, BCA, ACB, CBA, BAC.
const ELEMENTS: [[usize; 3]; 6] = [[0, 1, 2], [2, 0, 1], [1, 2, 0], [0, 2, 1], [2, 1, 0], [1, 0, 2]];

#[derive(Debug, Clone)]
pub struct Triangle {
    pub action: GroupAction,
    /// Side facing the polar window: `Bl` on `g₁,g₂,g₃`, `Wh` on `g₄,g₅,g₆`.
    pub colour: ParameterFunction,
    /// Corner visible at windows `a`, `b`, `c`.
    pub windows: [ParameterFunction; 3],
}

impl Triangle {
    pub fn group(&self) -> &FiniteGroup {
        self.action.group()
    }

    /// `{g₁, g₂, g₃}`.
    pub fn cyclic_subgroup(&self) -> Subgroup {
        Subgroup::new(self.group(), [0, 1, 2]).expect("rotations form a subgroup")
    }

    /// The reading `ABC ↦ X` of orientation `i`.
    pub fn reading(&self, i: usize) -> String {
        ELEMENTS[i].iter().map(|&p| TRIANGLE_CORNERS[p]).collect()
    }
}

pub fn s3_triangle() -> Triangle {
    let index_of = |p: [usize; 3]| ELEMENTS.iter().position(|&e| e == p).expect("closed");
    let cayley: Vec<Vec<usize>> = ELEMENTS
        .iter()
        .map(|g| ELEMENTS.iter().map(|h| index_of([g[h[0]], g[h[1]], g[h[2]]])).collect())
        .collect();
    let group = FiniteGroup::from_cayley(cayley).expect("S3 table");
    let action = GroupAction::right_regular(&group);

    let colour_labels: Vec<&str> = (0..6).map(|i| if i < 3 { "Bl" } else { "Wh" }).collect();
    let colour = ParameterFunction::with_values(vec!["Bl".into(), "Wh".into()], &colour_labels).unwrap();
    let corners: Vec<String> = TRIANGLE_CORNERS.iter().map(|s| s.to_string()).collect();
    let windows = [0, 1, 2].map(|w| {
        let labels: Vec<&str> = ELEMENTS.iter().map(|e| TRIANGLE_CORNERS[e[w]]).collect();
        ParameterFunction::with_values(corners.clone(), &labels).unwrap()
    });
    Triangle {
        action,
        colour,
        windows,
    }
}
