//! Geometry of the twisted toroidal supergraph.
//!
//! Every label `Π^L` of the toroidal shorthand pairs macronode `i` with
//! `c_L − i (mod N)`, where `c_1 = M−1`, `c_0 = −M−3`, `c_3 = −3`,
//! `c_2 = −1`. Labels `{Π¹, Π⁰}` span the horizontal lattice axis and
//! `{Π³, Π²}` the vertical one: from an even macronode, right is `Π¹` and up
//! is `Π³`; from an odd one, right is `Π⁰` and up is `Π²`.
//!
//! The resulting torus is `Z² / ⟨(M−1, −1), (1, M+1)⟩`: closing a loop in
//! either direction picks up a one-unit transverse shift. Straight axis
//! lines never close early; each is a single cycle through all M² macronodes.
//!
//! The chart puts macronode `(x, y)`, `0 ≤ x, y < M`, at lattice point
//! `(x + y, y)`. Chart rows are closed horizontal meridians of M macronodes;
//! stepping right off the end of row `y` lands on `(0, y + 1)`. A vertical
//! lattice step moves `(x, y) → (x − 1, y + 1)` in the chart.

use crate::lattice::LatticeError;

/// Labels spanning the horizontal axis (from even, odd macronodes).
pub const AXIS_HORIZONTAL: [usize; 2] = [1, 0];
/// Labels spanning the vertical axis (from even, odd macronodes).
pub const AXIS_VERTICAL: [usize; 2] = [3, 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Right,
    Left,
    Up,
    Down,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacronodeCoords {
    m: usize,
    chart: Vec<(usize, usize)>,
    inverse: Vec<usize>,
}

pub fn coordinates(m: usize) -> Result<MacronodeCoords, LatticeError> {
    if m < 4 || !m.is_multiple_of(2) {
        return Err(LatticeError::TorusSize(m));
    }
    let n = m * m;
    let mut chart = vec![(usize::MAX, usize::MAX); n];
    let mut inverse = vec![0; n];
    for y in 0..m {
        for x in 0..m {
            let i = node_at(m, (x + y) as i64, y as i64);
            debug_assert_eq!(chart[i].0, usize::MAX, "chart collision at ({x},{y})");
            chart[i] = (x, y);
            inverse[y * m + x] = i;
        }
    }
    Ok(MacronodeCoords { m, chart, inverse })
}

/// Macronode at lattice point `(px, py)`.
fn node_at(m: usize, px: i64, py: i64) -> usize {
    let n = (m * m) as i64;
    let h = (py - (m as i64 + 1) * px).rem_euclid(n);
    let i = if (px + py).rem_euclid(2) == 0 {
        h
    } else {
        (-2 - h).rem_euclid(n)
    };
    i as usize
}

impl MacronodeCoords {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n_macro(&self) -> usize {
        self.m * self.m
    }

    pub fn coords(&self, i: usize) -> (usize, usize) {
        self.chart[i]
    }

    pub fn macronode(&self, x: usize, y: usize) -> usize {
        self.inverse[y * self.m + x]
    }

    pub fn lattice_point(&self, i: usize) -> (i64, i64) {
        let (x, y) = self.chart[i];
        ((x + y) as i64, y as i64)
    }

    pub fn node_at(&self, px: i64, py: i64) -> usize {
        node_at(self.m, px, py)
    }

    /// Generators of the identification lattice.
    pub fn period_vectors(&self) -> [(i64, i64); 2] {
        let m = self.m as i64;
        [(m - 1, -1), (1, m + 1)]
    }

    pub fn step(&self, i: usize, step: Step) -> usize {
        let (px, py) = self.lattice_point(i);
        match step {
            Step::Right => self.node_at(px + 1, py),
            Step::Left => self.node_at(px - 1, py),
            Step::Up => self.node_at(px, py + 1),
            Step::Down => self.node_at(px, py - 1),
        }
    }

    /// Closed horizontal loop of class `(M−1, −1)` through chart cell `(x0, y0)`:
    /// M macronodes straight right, closed by one step down. For `x0 = 0`
    /// this is chart row `y0`.
    pub fn horizontal_meridian(&self, x0: usize, y0: usize) -> Vec<usize> {
        let (px, py) = self.lattice_point(self.macronode(x0, y0));
        (0..self.m as i64).map(|k| self.node_at(px + k, py)).collect()
    }

    /// Closed vertical loop of class `(1, M+1)` through chart cell `(x0, y0)`:
    /// M+2 macronodes straight up, closed by one step right.
    pub fn vertical_meridian(&self, x0: usize, y0: usize) -> Vec<usize> {
        let (px, py) = self.lattice_point(self.macronode(x0, y0));
        (0..self.m as i64 + 2).map(|k| self.node_at(px, py + k)).collect()
    }

    /// Lengths of the cycles traced by repeatedly stepping along one axis.
    pub fn axis_cycle_lengths(&self, step: Step) -> Vec<usize> {
        let n = self.n_macro();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                len += 1;
                i = self.step(i, step);
            }
            lengths.push(len);
        }
        lengths
    }

    /// One-line description of the convention, written into reports.
    pub fn convention(&self) -> String {
        let [(a, b), (c, d)] = self.period_vectors();
        format!("chart=(x+y,y) periods=({a},{b}),({c},{d}) horizontal=P1/P0 vertical=P3/P2 even-right=P1 even-up=P3")
    }
}
