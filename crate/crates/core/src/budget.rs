//! Limits shared by every exponential-time operation.
//!
//! A [`Budget`] carries an optional bound on the instance size (number of
//! equations, or left vertices for biclique search) and an optional wall-clock
//! deadline. Long enumerations poll the deadline through a [`Ticker`].

use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Default maximum number of equations accepted by brute-force operations.
pub const DEFAULT_MAX_BRUTEFORCE: usize = 24;

/// Environment variable that replaces [`DEFAULT_MAX_BRUTEFORCE`].
pub const MAX_BRUTEFORCE_ENV: &str = "CAUSORD_MAX_BRUTEFORCE";

const POLL_INTERVAL: u32 = 1 << 12;

#[derive(Debug, Clone, Copy)]
pub struct Budget {
    max_size: Option<usize>,
    timeout: Option<Duration>,
    started: Instant,
}

impl Default for Budget {
    fn default() -> Self {
        Self::new(Some(DEFAULT_MAX_BRUTEFORCE), None)
    }
}

impl Budget {
    pub fn new(max_size: Option<usize>, timeout: Option<Duration>) -> Self {
        Self {
            max_size,
            timeout,
            started: Instant::now(),
        }
    }

    /// No size bound and no deadline.
    pub fn unlimited() -> Self {
        Self::new(None, None)
    }

    pub fn with_max_size(mut self, max_size: Option<usize>) -> Self {
        self.max_size = max_size;
        self
    }

    /// Sets the deadline relative to now.
    pub fn with_timeout(mut self, timeout: Option<Duration>) -> Self {
        self.timeout = timeout;
        self.started = Instant::now();
        self
    }

    pub fn max_size(&self) -> Option<usize> {
        self.max_size
    }

    pub fn check_size(&self, size: usize) -> Result<()> {
        match self.max_size {
            Some(limit) if size > limit => Err(Error::GuardExceeded { size, limit }),
            _ => Ok(()),
        }
    }

    pub fn check_deadline(&self) -> Result<()> {
        match self.timeout {
            Some(t) if self.started.elapsed() >= t => Err(Error::Timeout(t)),
            _ => Ok(()),
        }
    }

    pub fn ticker(&self) -> Ticker<'_> {
        Ticker {
            budget: self,
            count: 0,
        }
    }
}

/// Amortizes deadline checks over many cheap steps.
pub struct Ticker<'a> {
    budget: &'a Budget,
    count: u32,
}

impl Ticker<'_> {
    #[inline]
    pub fn tick(&mut self) -> Result<()> {
        self.count += 1;
        if self.count >= POLL_INTERVAL {
            self.count = 0;
            self.budget.check_deadline()?;
        }
        Ok(())
    }
}
