//! Cooperative time budgets for the compute stages.
//!
//! A stage deadline is installed for the current thread; the Groebner engine
//! polls it inside its hot loops and aborts with [`Error::Timeout`] when the
//! deadline passes. With no deadline installed (the default, and the only
//! mode the test suite uses) the checks are free and nothing can time out.

use crate::error::{Error, Result};
use std::cell::RefCell;
use std::time::{Duration, Instant};

thread_local! {
    static DEADLINE: RefCell<Option<(Instant, String)>> = const { RefCell::new(None) };
}

/// Runs `f` under a stage deadline (when `limit` is set), restoring the
/// previous deadline afterwards.
pub fn with_stage<T>(stage: &str, limit: Option<Duration>, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let prev = DEADLINE.with(|d| {
        d.replace(limit.map(|l| (Instant::now() + l, stage.to_string())))
    });
    let out = f();
    DEADLINE.with(|d| {
        *d.borrow_mut() = prev;
    });
    out
}

/// Polled by long-running loops.
pub fn check() -> Result<()> {
    DEADLINE.with(|d| {
        if let Some((deadline, stage)) = d.borrow().as_ref() {
            if Instant::now() > *deadline {
                return Err(Error::Timeout { stage: stage.clone() });
            }
        }
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_deadline_never_fires() {
        assert!(check().is_ok());
    }

    #[test]
    fn expired_deadline_fires_and_restores() {
        let r = with_stage("gb", Some(Duration::from_millis(0)), || {
            std::thread::sleep(Duration::from_millis(5));
            check()
        });
        match r {
            Err(Error::Timeout { stage }) => assert_eq!(stage, "gb"),
            other => panic!("expected timeout, got {other:?}"),
        }
        assert!(check().is_ok());
    }
}
