//! Work limits for exhaustive searches.

use std::cell::Cell;
use std::time::{Duration, Instant};

/// Result of an exhaustive search. `Absent` is a definitive negative answer;
/// `Exhausted` means the budget ran out first and nothing is claimed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    Absent,
    Exhausted,
}

impl<T> Outcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, Outcome::Absent)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Found(x) => Outcome::Found(f(x)),
            Outcome::Absent => Outcome::Absent,
            Outcome::Exhausted => Outcome::Exhausted,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutOfBudget;

/// Per-task search budget: an optional wall-clock deadline and an optional
/// cap on search steps. Also counts steps, which serve as a deterministic
/// work measure in reports.
#[derive(Debug)]
pub struct Budget {
    deadline: Option<Instant>,
    max_steps: Option<u64>,
    steps: Cell<u64>,
}

const CLOCK_STRIDE: u64 = 1 << 12;

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            deadline: None,
            max_steps: None,
            steps: Cell::new(0),
        }
    }

    pub fn with_time(limit: Duration) -> Self {
        Budget {
            deadline: Some(Instant::now() + limit),
            ..Self::unlimited()
        }
    }

    pub fn with_steps(max_steps: u64) -> Self {
        Budget {
            max_steps: Some(max_steps),
            ..Self::unlimited()
        }
    }

    /// Reads `PRISMATIC_BUDGET_MS`; unset or unparsable means unlimited.
    pub fn from_env() -> Self {
        match std::env::var("PRISMATIC_BUDGET_MS")
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
        {
            Some(ms) => Self::with_time(Duration::from_millis(ms)),
            None => Self::unlimited(),
        }
    }

    #[inline]
    pub fn tick(&self) -> Result<(), OutOfBudget> {
        let s = self.steps.get() + 1;
        self.steps.set(s);
        if let Some(max) = self.max_steps {
            if s > max {
                return Err(OutOfBudget);
            }
        }
        if s.is_multiple_of(CLOCK_STRIDE) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(OutOfBudget);
                }
            }
        }
        Ok(())
    }

    pub fn steps(&self) -> u64 {
        self.steps.get()
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::unlimited()
    }
}
