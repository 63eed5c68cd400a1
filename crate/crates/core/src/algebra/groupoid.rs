//! Arrows of a groupoid: partially defined composition between vertices.

use serde::{Deserialize, Serialize};

use super::{AlgebraError, Permutation};

/// An arrow `source -> target` carrying its effect on configuration slots.
///
/// For the sliding-tile puzzle the vertices are blank positions and the effect
/// swaps the blank with the tile it moves.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupoidArrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
    pub effect: Permutation,
}

impl GroupoidArrow {
    pub fn new(label: impl Into<String>, source: usize, target: usize, effect: Permutation) -> Self {
        GroupoidArrow {
            label: label.into(),
            source,
            target,
            effect,
        }
    }

    pub fn identity(vertex: usize, degree: usize) -> Self {
        GroupoidArrow {
            label: format!("1_{}", vertex + 1),
            source: vertex,
            target: vertex,
            effect: Permutation::identity(degree),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.effect.is_identity()
    }

    pub fn inverse(&self) -> Self {
        GroupoidArrow {
            label: format!("{}^-1", self.label),
            source: self.target,
            target: self.source,
            effect: self.effect.inverse(),
        }
    }
}

/// `g` after `h`: defined only when `h` ends where `g` starts.
///
/// The composite runs from `source(h)` to `target(g)`.
pub fn compose_arrows(g: &GroupoidArrow, h: &GroupoidArrow) -> Result<GroupoidArrow, AlgebraError> {
    if g.source != h.target {
        return Err(AlgebraError::NotComposable {
            later: g.label.clone(),
            earlier: h.label.clone(),
        });
    }
    Ok(GroupoidArrow {
        label: format!("{}·{}", g.label, h.label),
        source: h.source,
        target: g.target,
        effect: g.effect.compose(&h.effect)?,
    })
}

/// The groupoid of an equivalence relation: one arrow `(x, y)` for every
/// related pair, with `(y, z)(x, y) = (x, z)` and `(x, y)^-1 = (y, x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceGroupoid {
    class_of: Vec<usize>,
}

impl EquivalenceGroupoid {
    /// `class_of[x]` names the block containing `x`.
    pub fn from_partition(class_of: Vec<usize>) -> Self {
        EquivalenceGroupoid { class_of }
    }

    pub fn vertex_count(&self) -> usize {
        self.class_of.len()
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        x < self.class_of.len() && y < self.class_of.len() && self.class_of[x] == self.class_of[y]
    }

    pub fn arrow(&self, x: usize, y: usize) -> Option<GroupoidArrow> {
        self.related(x, y).then(|| GroupoidArrow {
            label: format!("({},{})", x + 1, y + 1),
            source: x,
            target: y,
            effect: Permutation::identity(0),
        })
    }

    pub fn arrows(&self) -> Vec<GroupoidArrow> {
        let n = self.vertex_count();
        (0..n)
            .flat_map(|x| (0..n).filter_map(move |y| self.arrow(x, y)))
            .collect()
    }
}
