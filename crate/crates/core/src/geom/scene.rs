use serde::{Deserialize, Serialize};

use super::circle::Circle;
use super::line::Line;

/// A scene: the two curve collections every pipeline stage consumes.
///
/// Curves are addressed by a single global index throughout the crate and
/// all reports: lines first in input order, then circles.
#[derive(Clone, PartialEq, Eq, Default, Debug, Serialize, Deserialize)]
pub struct Scene {
    pub lines: Vec<Line>,
    pub circles: Vec<Circle>,
}

impl Scene {
    pub fn new(lines: Vec<Line>, circles: Vec<Circle>) -> Self {
        Scene { lines, circles }
    }

    pub fn empty() -> Self {
        Scene::default()
    }

    pub fn curve_count(&self) -> usize {
        self.lines.len() + self.circles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curve_count() == 0
    }

    /// Curve by global index (lines first, then circles).
    pub fn curve(&self, index: usize) -> CurveRef<'_> {
        if index < self.lines.len() {
            CurveRef::Line(&self.lines[index])
        } else {
            CurveRef::Circle(&self.circles[index - self.lines.len()])
        }
    }

    pub fn curves(&self) -> Vec<CurveRef<'_>> {
        (0..self.curve_count()).map(|i| self.curve(i)).collect()
    }

    /// Extends this scene with another one's curves.
    pub fn merge(&mut self, other: Scene) {
        self.lines.extend(other.lines);
        self.circles.extend(other.circles);
    }
}

/// Borrowed view of a single curve, the unit the fitter and the covering
/// loop operate on.
#[derive(Clone, Copy, Debug)]
pub enum CurveRef<'a> {
    Line(&'a Line),
    Circle(&'a Circle),
}

impl<'a> CurveRef<'a> {
    pub fn kind_name(&self) -> &'static str {
        match self {
            CurveRef::Line(_) => "line",
            CurveRef::Circle(_) => "circle",
        }
    }
}

/// Global curve labels used in diagnostics: lines first, then circles.
pub fn curve_label(index: usize, line_count: usize) -> String {
    if index < line_count {
        format!("line {index}")
    } else {
        format!("circle {}", index - line_count)
    }
}
