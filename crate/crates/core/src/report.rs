//! Outcomes of exact identity checks.

use std::fmt;

use rayon::prelude::*;

use crate::lincomb::LinComb;

/// The outcome of one exact identity check: passes iff the residual is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub weight: u32,
    pub passed: bool,
    /// Printed residual, empty when the check passes.
    pub residual: String,
}

impl Check {
    pub fn new(name: impl Into<String>, weight: u32, passed: bool, residual: String) -> Self {
        Check { name: name.into(), weight, passed, residual }
    }

    /// A check whose residual is a linear combination.
    pub fn of<T: Ord + Clone + fmt::Display>(name: impl Into<String>, weight: u32, residual: &LinComb<T>) -> Self {
        let passed = residual.is_zero();
        Check::new(name, weight, passed, if passed { String::new() } else { residual.to_string() })
    }

    /// A check that two displayable values coincide.
    pub fn equal<T: PartialEq + fmt::Display>(name: impl Into<String>, weight: u32, got: &T, want: &T) -> Self {
        let passed = got == want;
        Check::new(name, weight, passed, if passed { String::new() } else { format!("got {got}, want {want}") })
    }
}

/// Runs `residual` on every word; the residual of the check lists the first failures.
pub fn over_words<T, U>(
    name: impl Into<String>,
    weight: u32,
    words: &[T],
    residual: impl Fn(&T) -> LinComb<U> + Sync,
) -> Check
where
    T: fmt::Display + Sync,
    U: Ord + Clone + fmt::Display + Send,
{
    let failures: Vec<String> = words
        .par_iter()
        .filter_map(|w| {
            let r = residual(w);
            (!r.is_zero()).then(|| format!("{w}: {r}"))
        })
        .collect();
    let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
    let residual = match failures.len() {
        0 => String::new(),
        n if n <= 3 => shown.join("; "),
        n => format!("{}; ... ({n} words)", shown.join("; ")),
    };
    Check::new(name, weight, failures.is_empty(), residual)
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "ok" } else { "FAIL" };
        write!(f, "{status} {} (weight {})", self.name, self.weight)?;
        if !self.passed {
            write!(f, ": residual {}", self.residual)?;
        }
        Ok(())
    }
}
