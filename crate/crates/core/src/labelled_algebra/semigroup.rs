use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{is_subset, LabelPath, LabelledSpace, VSet};
use crate::inverse_semigroup::{Graded, InverseSemigroup};
use crate::partial_action::{FreeGroup, Word};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LElem {
    Zero,
    /// `(α, A, β)` with `∅ ≠ A ∈ 𝓑_α ∩ 𝓑_β`.
    Triple(LabelPath, VSet, LabelPath),
}

/// The inverse semigroup of a labelled space, graded by `(α, A, β) ↦ αβ⁻¹`.
#[derive(Debug, Clone)]
pub struct LabelledSemigroup {
    space: LabelledSpace,
    group: FreeGroup,
}

impl LabelledSemigroup {
    pub fn new(space: LabelledSpace) -> Self {
        let group = FreeGroup::new(space.graph().alphabet().iter().cloned()).expect("labels were checked");
        LabelledSemigroup { space, group }
    }

    pub fn space(&self) -> &LabelledSpace {
        &self.space
    }

    /// `(α, A, β)`, or `None` when `A` is not a nonempty member of
    /// `𝓑_α ∩ 𝓑_β`.
    pub fn triple(&self, alpha: &[usize], a: VSet, beta: &[usize]) -> Option<LElem> {
        let g = self.space.graph();
        let ok = a != 0
            && self.space.contains(a)
            && is_subset(a, g.range(alpha))
            && is_subset(a, g.range(beta));
        ok.then(|| LElem::Triple(alpha.to_vec(), a, beta.to_vec()))
    }

    /// `(α,A,α) ≤ (β,B,β)` iff `α = βα'` and `A ⊆ r(B, α')`.
    pub fn order(&self, x: &LElem, y: &LElem) -> bool {
        match (x, y) {
            (LElem::Zero, _) => true,
            (_, LElem::Zero) => false,
            (LElem::Triple(alpha, a, _), LElem::Triple(beta, b, _)) => alpha
                .strip_prefix(beta.as_slice())
                .is_some_and(|rest| is_subset(*a, self.space.graph().r_path(*b, rest))),
        }
    }

    fn nonzero(alpha: LabelPath, a: VSet, beta: LabelPath) -> LElem {
        if a == 0 {
            LElem::Zero
        } else {
            LElem::Triple(alpha, a, beta)
        }
    }
}

impl InverseSemigroup for LabelledSemigroup {
    type Elem = LElem;

    fn zero(&self) -> LElem {
        LElem::Zero
    }

    fn mul(&self, x: &LElem, y: &LElem) -> LElem {
        let (LElem::Triple(alpha, a, beta), LElem::Triple(gamma, b, delta)) = (x, y) else {
            return LElem::Zero;
        };
        let g = self.space.graph();
        if beta == gamma {
            Self::nonzero(alpha.clone(), a & b, delta.clone())
        } else if let Some(rest) = gamma.strip_prefix(beta.as_slice()) {
            let mut head = alpha.clone();
            head.extend_from_slice(rest);
            Self::nonzero(head, g.r_path(*a, rest) & b, delta.clone())
        } else if let Some(rest) = beta.strip_prefix(gamma.as_slice()) {
            let mut tail = delta.clone();
            tail.extend_from_slice(rest);
            Self::nonzero(alpha.clone(), a & g.r_path(*b, rest), tail)
        } else {
            LElem::Zero
        }
    }

    fn star(&self, x: &LElem) -> LElem {
        match x {
            LElem::Zero => LElem::Zero,
            LElem::Triple(alpha, a, beta) => LElem::Triple(beta.clone(), *a, alpha.clone()),
        }
    }

    /// Triples with label paths of length at most `bound`; everything when
    /// the graph has no cycles.
    fn enumerate(&self, bound: usize) -> Vec<LElem> {
        let g = self.space.graph();
        let bound = if self.is_finite() { g.vertices().len() } else { bound };
        let paths = g.label_paths(bound);
        let mut out = alloc::vec![LElem::Zero];
        for alpha in &paths {
            for beta in &paths {
                let r = g.range(alpha) & g.range(beta);
                for &a in self.space.family() {
                    if a != 0 && is_subset(a, r) {
                        out.push(LElem::Triple(alpha.clone(), a, beta.clone()));
                    }
                }
            }
        }
        out
    }

    fn is_finite(&self) -> bool {
        self.space.graph().is_acyclic()
    }

    fn render(&self, x: &LElem) -> String {
        let g = self.space.graph();
        match x {
            LElem::Zero => String::from("0"),
            LElem::Triple(alpha, a, beta) => {
                format!("({},{},{})", g.render_path(alpha), g.render_set(*a), g.render_path(beta))
            }
        }
    }
}

impl Graded for LabelledSemigroup {
    type Group = FreeGroup;

    fn group(&self) -> &FreeGroup {
        &self.group
    }

    fn grade(&self, x: &LElem) -> Option<Word> {
        match x {
            LElem::Zero => None,
            LElem::Triple(alpha, _, beta) => Some(Word::quotient(alpha, beta)),
        }
    }
}
