//! Doubling experiments.

use std::time::Instant;

/// Wall-clock seconds for every (round, size).
#[derive(Clone, Debug, PartialEq)]
pub struct Doubling {
    pub sizes: Vec<usize>,
    pub rounds: Vec<Vec<f64>>,
}

impl Doubling {
    /// Fastest time per size.
    pub fn best(&self) -> Vec<f64> {
        (0..self.sizes.len())
            .map(|i| {
                self.rounds
                    .iter()
                    .map(|r| r[i])
                    .fold(f64::INFINITY, f64::min)
            })
            .collect()
    }

    /// Time ratio between consecutive sizes: the median over rounds of each
    /// round's own ratio. Sizes in a round run back to back, so slow phases of
    /// the machine mostly cancel out.
    pub fn ratios(&self) -> Vec<f64> {
        (1..self.sizes.len())
            .map(|i| {
                let mut r: Vec<f64> = self.rounds.iter().map(|t| t[i] / t[i - 1]).collect();
                r.sort_by(f64::total_cmp);
                let m = r.len() / 2;
                if r.len() % 2 == 1 {
                    r[m]
                } else {
                    (r[m - 1] + r[m]) / 2.0
                }
            })
            .collect()
    }
}

/// Time `run` on one input per size, visiting every size once per round.
/// Inputs are built before any timing starts.
pub fn doubling<I>(
    sizes: &[usize],
    rounds: usize,
    make: impl Fn(usize) -> I,
    run: impl Fn(&I),
) -> Doubling {
    let inputs: Vec<I> = sizes.iter().map(|&s| make(s)).collect();
    let rounds = (0..rounds.max(1))
        .map(|_| {
            inputs
                .iter()
                .map(|input| {
                    let t = Instant::now();
                    run(input);
                    t.elapsed().as_secs_f64()
                })
                .collect()
        })
        .collect();
    Doubling {
        sizes: sizes.to_vec(),
        rounds,
    }
}
