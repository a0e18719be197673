use serde::Serialize;

use crate::problem::Problem;

/// CFHT of the (2:2)-EA with one-bit mutation only, indexed by the zero
/// counts `(i, j)` of the two members.
#[derive(Clone, Debug, Serialize)]
pub struct CfhtTable {
    pub problem: Problem,
    pub n: usize,
    values: Vec<f64>,
}

impl CfhtTable {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i <= self.n && j <= self.n, "index ({i}, {j}) outside table");
        self.values[i * (self.n + 1) + j]
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        let w = self.n + 1;
        self.values[i * w + j] = v;
        self.values[j * w + i] = v;
    }

    /// Right-hand side of the defining recurrence at an interior entry.
    pub fn recurrence(&self, i: usize, j: usize) -> f64 {
        let n = self.n as f64;
        let (fi, fj) = (i as f64, j as f64);
        match self.problem {
            Problem::LeadingOnes => {
                (n * n
                    + (n - 1.0) * self.get(i - 1, j)
                    + (n - 1.0) * self.get(i, j - 1)
                    + self.get(i - 1, j - 1))
                    / (2.0 * n - 1.0)
            }
            Problem::OneMax => {
                (n * n
                    + fi * fj * self.get(i - 1, j - 1)
                    + fi * (n - fj) * self.get(i - 1, j)
                    + (n - fi) * fj * self.get(i, j - 1))
                    / ((fi + fj) * n - fi * fj)
            }
        }
    }

    /// Largest absolute gap between an interior entry and its recurrence.
    pub fn max_recurrence_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 1..=self.n {
            for j in 1..=self.n {
                worst = worst.max((self.get(i, j) - self.recurrence(i, j)).abs());
            }
        }
        worst
    }
}

/// Fills the table by increasing `i + j`; entries with a zero index vanish.
pub fn cfht_table(problem: Problem, n: usize) -> CfhtTable {
    assert!(n >= 1, "n must be at least 1");
    let mut t = CfhtTable {
        problem,
        n,
        values: vec![0.0; (n + 1) * (n + 1)],
    };
    for s in 2..=2 * n {
        for i in 1..=n.min(s - 1) {
            let j = s - i;
            if j < i || j > n {
                continue;
            }
            let v = t.recurrence(i, j);
            t.set(i, j, v);
        }
    }
    t
}
