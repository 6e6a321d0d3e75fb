use serde::Serialize;

use crate::surgery::SurgeryKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FallbackReason {
    /// No 4-cycle and no 6-cycle: the exhaustive search stands in for the
    /// base-case theorems.
    NoFourOrSixCycle,
    /// No triangle in a whole-graph colouring request.
    TriangleFree,
    /// No reduction passed its runtime guard.
    NoApplicableReduction,
    /// A reduced problem could not be extended, so the search reran here.
    SubproblemFailed,
}

/// How an extension was obtained. Every child has smaller `sigma` than its
/// parent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Trace {
    /// Nothing left to colour.
    Direct { sigma: usize },
    FallbackSearch { sigma: usize, reason: FallbackReason },
    Reduce { surgery: SurgeryKind, detail: Vec<String>, sigma: usize, next: Box<Trace> },
    Split { cycle: Vec<String>, padding: usize, sigma: usize, outer: Box<Trace>, inner: Box<Trace> },
}

impl Trace {
    pub fn sigma(&self) -> usize {
        match self {
            Trace::Direct { sigma }
            | Trace::FallbackSearch { sigma, .. }
            | Trace::Reduce { sigma, .. }
            | Trace::Split { sigma, .. } => *sigma,
        }
    }

    fn children(&self) -> Vec<&Trace> {
        match self {
            Trace::Direct { .. } | Trace::FallbackSearch { .. } => Vec::new(),
            Trace::Reduce { next, .. } => vec![next],
            Trace::Split { outer, inner, .. } => vec![outer, inner],
        }
    }

    /// Surgeries on the longest root-to-leaf chain.
    pub fn length(&self) -> usize {
        self.children().iter().map(|c| 1 + c.length()).max().unwrap_or(0)
    }

    /// Total number of surgeries.
    pub fn steps(&self) -> usize {
        let ch = self.children();
        usize::from(!ch.is_empty()) + ch.iter().map(|c| c.steps()).sum::<usize>()
    }

    pub fn sigma_strictly_decreases(&self) -> bool {
        self.children().iter().all(|c| c.sigma() < self.sigma() && c.sigma_strictly_decreases())
    }

    /// Number of surgeries of each kind, in the order of [`SurgeryKind::ALL`].
    pub fn surgery_counts(&self) -> [usize; 5] {
        let mut counts = [0; 5];
        self.count_into(&mut counts);
        counts
    }

    fn count_into(&self, counts: &mut [usize; 5]) {
        match self {
            Trace::Reduce { surgery, .. } => counts[SurgeryKind::ALL.iter().position(|k| k == surgery).unwrap()] += 1,
            Trace::Split { .. } => counts[4] += 1,
            _ => {}
        }
        for c in self.children() {
            c.count_into(counts);
        }
    }

    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> Vec<&Trace> {
        let ch = self.children();
        if ch.is_empty() {
            return vec![self];
        }
        ch.into_iter().flat_map(Trace::leaves).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_is_the_longest_chain() {
        let leaf = |s| Box::new(Trace::Direct { sigma: s });
        let t = Trace::Split {
            cycle: vec![],
            padding: 0,
            sigma: 30,
            outer: Box::new(Trace::Reduce {
                surgery: SurgeryKind::IdentifyDiagonal,
                detail: vec![],
                sigma: 20,
                next: leaf(15),
            }),
            inner: leaf(10),
        };
        assert_eq!(t.length(), 2);
        assert_eq!(t.steps(), 2);
        assert!(t.sigma_strictly_decreases());
        assert_eq!(t.surgery_counts(), [0, 0, 1, 0, 1]);
        assert_eq!(t.leaves().len(), 2);
        let bad = Trace::Reduce { surgery: SurgeryKind::SubdivideEdge, detail: vec![], sigma: 5, next: leaf(5) };
        assert!(!bad.sigma_strictly_decreases());
    }
}
