//! Bookkeeping for the acceptance suite: each criterion collects its checks
//! and prints one verdict line straight to the process stderr, so the line
//! shows up whether or not the test harness captures output.

use std::io::Write;

pub struct Criterion {
    id: u8,
    title: &'static str,
    checks: usize,
    failures: Vec<String>,
    facts: Vec<String>,
}

impl Criterion {
    pub fn new(id: u8, title: &'static str) -> Self {
        Criterion { id, title, checks: 0, failures: Vec::new(), facts: Vec::new() }
    }

    pub fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(detail());
        }
    }

    /// Extra context printed under the verdict line.
    pub fn fact(&mut self, text: impl Into<String>) {
        self.facts.push(text.into());
    }

    pub fn checks(&self) -> usize {
        self.checks
    }

    pub fn failures(&self) -> usize {
        self.failures.len()
    }

    /// Print the verdict and panic if anything failed.
    pub fn finish(self) {
        let passed = self.failures.is_empty();
        let mut text = format!(
            "criterion {:02} {} {} ({} checks, {} failed)\n",
            self.id,
            if passed { "PASS" } else { "FAIL" },
            self.title,
            self.checks,
            self.failures.len()
        );
        for f in &self.facts {
            text.push_str(&format!("    {f}\n"));
        }
        for f in self.failures.iter().take(5) {
            text.push_str(&format!("    failed: {f}\n"));
        }
        let _ = std::io::stderr().write_all(text.as_bytes());
        assert!(passed, "criterion {:02} failed {} of {} checks", self.id, self.failures.len(), self.checks);
    }
}

/// |got − want| ≤ tol·max(1, |want|)
pub fn close(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol * want.abs().max(1.0)
}

/// Every coefficient vector of length 2..=7 over {0, 1, 2, 3} with a
/// non-zero top coefficient (degree 1 to 6).
pub fn small_polys() -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for len in 2..=7usize {
        let total = 4usize.pow(len as u32);
        for code in 0..total {
            let c: Vec<f64> = (0..len).map(|i| ((code / 4usize.pow(i as u32)) % 4) as f64).collect();
            if c[len - 1] != 0.0 {
                out.push(c);
            }
        }
    }
    out
}
