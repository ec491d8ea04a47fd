//! Recolouring sequences: walks in the reconfiguration graph written as
//! single-vertex colour changes.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colouring::{is_proper, Colour, Colouring};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub vertex: Vertex,
    pub colour: Colour,
}

impl Step {
    pub fn new(vertex: Vertex, colour: Colour) -> Self {
        Step { vertex, colour }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecolouringSequence {
    steps: Vec<Step>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("start colouring is not proper for this graph")]
    ImproperStart,
    #[error("step {0} produces an improper colouring")]
    ImproperIntermediate(usize),
    #[error("step {0} recolours a vertex to its current colour")]
    NoOpStep(usize),
    #[error("step {step}: vertex {vertex} out of range")]
    VertexOutOfRange { step: usize, vertex: Vertex },
    #[error("step {step}: colour {colour} outside 1..={k}")]
    ColourOutOfRange { step: usize, colour: Colour, k: Colour },
    #[error("line {line}: malformed sequence line {content:?}")]
    Malformed { line: usize, content: String },
    #[error("header announces {expected} steps but {found} were listed")]
    StepCountMismatch { expected: usize, found: usize },
}

impl RecolouringSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn push(&mut self, step: Step) {
        self.steps.push(step);
    }

    pub fn extend(&mut self, other: RecolouringSequence) {
        self.steps.extend(other.steps);
    }

    /// Number of times each vertex is recoloured.
    pub fn recolour_counts(&self, n: usize) -> Vec<usize> {
        let mut counts = vec![0; n];
        for s in &self.steps {
            counts[s.vertex] += 1;
        }
        counts
    }

    /// Largest colour used by any step (0 when empty).
    pub fn max_colour(&self) -> Colour {
        self.steps.iter().map(|s| s.colour).max().unwrap_or(0)
    }
}

impl FromIterator<Step> for RecolouringSequence {
    fn from_iter<I: IntoIterator<Item = Step>>(iter: I) -> Self {
        RecolouringSequence {
            steps: iter.into_iter().collect(),
        }
    }
}

impl From<Vec<Step>> for RecolouringSequence {
    fn from(steps: Vec<Step>) -> Self {
        RecolouringSequence { steps }
    }
}

/// Replays `seq` from `start`, checking every intermediate colouring.
///
/// Steps must change the colour of their vertex, stay in `1..=start.k()` and
/// keep the colouring proper.
pub fn apply_sequence(
    g: &Graph,
    start: &Colouring,
    seq: &RecolouringSequence,
) -> Result<Colouring, SequenceError> {
    if !is_proper(g, start).unwrap_or(false) {
        return Err(SequenceError::ImproperStart);
    }
    let mut current = start.clone();
    for (i, step) in seq.steps.iter().enumerate() {
        apply_step(g, &mut current, i, *step)?;
    }
    Ok(current)
}

fn apply_step(
    g: &Graph,
    current: &mut Colouring,
    index: usize,
    step: Step,
) -> Result<(), SequenceError> {
    let Step { vertex, colour } = step;
    if vertex >= g.n() {
        return Err(SequenceError::VertexOutOfRange { step: index, vertex });
    }
    if colour == 0 || colour > current.k() {
        return Err(SequenceError::ColourOutOfRange {
            step: index,
            colour,
            k: current.k(),
        });
    }
    if current.colour(vertex) == colour {
        return Err(SequenceError::NoOpStep(index));
    }
    if g.neighbours(vertex).iter().any(|&w| current.colour(w) == colour) {
        return Err(SequenceError::ImproperIntermediate(index));
    }
    current.set(vertex, colour);
    Ok(())
}

/// The walk back: applied to the final colouring of `seq` it returns to
/// `start`.
pub fn reverse_sequence(
    g: &Graph,
    start: &Colouring,
    seq: &RecolouringSequence,
) -> Result<RecolouringSequence, SequenceError> {
    if !is_proper(g, start).unwrap_or(false) {
        return Err(SequenceError::ImproperStart);
    }
    let mut current = start.clone();
    let mut previous = Vec::with_capacity(seq.len());
    for (i, step) in seq.steps.iter().enumerate() {
        previous.push(Step::new(step.vertex, current.colour(step.vertex)));
        apply_step(g, &mut current, i, *step)?;
    }
    previous.reverse();
    Ok(previous.into())
}

/// `steps: N` followed by one `v c` line per step.
pub fn format_sequence(seq: &RecolouringSequence) -> String {
    let mut out = format!("steps: {}\n", seq.len());
    for s in &seq.steps {
        let _ = writeln!(out, "{} {}", s.vertex, s.colour);
    }
    out
}

pub fn parse_sequence(text: &str) -> Result<RecolouringSequence, SequenceError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().unwrap_or((1, ""));
    let expected: usize = header
        .strip_prefix("steps:")
        .and_then(|rest| rest.trim().parse().ok())
        .ok_or_else(|| SequenceError::Malformed {
            line: 1,
            content: header.to_string(),
        })?;
    let mut steps = Vec::with_capacity(expected);
    for (line, content) in lines {
        if content.trim().is_empty() {
            continue;
        }
        let malformed = || SequenceError::Malformed {
            line,
            content: content.to_string(),
        };
        let mut it = content.split_whitespace();
        let vertex = it.next().and_then(|t| t.parse().ok()).ok_or_else(malformed)?;
        let colour = it.next().and_then(|t| t.parse().ok()).ok_or_else(malformed)?;
        if it.next().is_some() {
            return Err(malformed());
        }
        steps.push(Step::new(vertex, colour));
    }
    if steps.len() != expected {
        return Err(SequenceError::StepCountMismatch {
            expected,
            found: steps.len(),
        });
    }
    Ok(steps.into())
}
