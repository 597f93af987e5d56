//! Batch harness over the `circstab` library: surveys of connection sets,
//! verification suites and the S + n/2 isomorphism probe.

pub mod probe;
pub mod suites;
pub mod survey;

use circstab::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_FALSIFIED: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Falsified(_) => EXIT_FALSIFIED,
        Error::Budget(_) | Error::ClosureCap(_) => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

/// Applies CIRCSTAB_NODE_BUDGET, if set.
pub fn node_budget_from_env() -> Result<(), Error> {
    match std::env::var("CIRCSTAB_NODE_BUDGET") {
        Ok(v) => {
            let budget = v
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::Invalid(format!("CIRCSTAB_NODE_BUDGET={v:?} is not a count")))?;
            circstab::permgrp::set_node_budget(budget);
            Ok(())
        }
        Err(_) => Ok(()),
    }
}

/// Runs `f` on a pool of `threads` workers (0 = one per core).
pub fn with_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T, Error> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}
