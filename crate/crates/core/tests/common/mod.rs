//! Shared replay helpers: reconstruct the interval row of a finished run
//! from its chronological trial log.

use indexbound::index::Trial;

/// One subdivision step: the interval that was split and the trial that
/// split it.
#[derive(Debug, Clone, Copy)]
pub struct Subdivision {
    pub left: Trial,
    pub right: Trial,
    pub child: Trial,
}

/// Replays the trial log of a run. The first two trials are the domain
/// endpoints; every later trial lands strictly inside the interval
/// between its x-sorted neighbors among the earlier trials, which is
/// exactly the interval the solver subdivided.
pub fn subdivisions(trials: &[Trial]) -> Vec<Subdivision> {
    assert!(trials.len() >= 2, "a run always evaluates both endpoints");
    let mut row = vec![trials[0], trials[1]];
    if row[0].x > row[1].x {
        row.swap(0, 1);
    }
    let mut out = Vec::with_capacity(trials.len().saturating_sub(2));
    for &t in &trials[2..] {
        let pos = row.partition_point(|u| u.x < t.x);
        assert!(
            pos > 0 && pos < row.len(),
            "trial {} falls outside the current row",
            t.x
        );
        out.push(Subdivision {
            left: row[pos - 1],
            right: row[pos],
            child: t,
        });
        row.insert(pos, t);
    }
    out
}

/// Walks the run iteration by iteration. After every trial insertion the
/// callback receives the x-sorted row so far and the best feasible
/// objective value at that moment (the running record over feasible
/// trials, improving strictly).
pub fn replay_rows<F>(trials: &[Trial], m: usize, mut visit: F)
where
    F: FnMut(&[Trial], Option<f64>),
{
    let mut row: Vec<Trial> = Vec::new();
    let mut best: Option<f64> = None;
    for &t in trials {
        let pos = row.partition_point(|u| u.x < t.x);
        row.insert(pos, t);
        if t.index == m + 1 && best.is_none_or(|b| t.raw < b) {
            best = Some(t.raw);
        }
        visit(&row, best);
    }
}
