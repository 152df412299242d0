//! Multi-threaded search driver and wall-clock budgets.
//!
//! Every subtree of a [`SearchPlan`] is searched on a worker pool with the
//! full subtree budget, then the outcomes are merged in subtree order with
//! the node budget handed out as if the subtrees had run one after another.
//! A subtree whose parallel run overspent its sequential share is searched
//! again with the exact share, so certificates do not depend on the number
//! of threads unless the clock fires.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::{Duration, Instant};

use girthbound_core::search::{Clock, SearchError, SearchPlan, SubtreeOutcome};
use girthbound_core::{GirthTarget, SearchCertificate, SearchLimits};

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(60);

pub struct InstantClock {
    start: Instant,
    deadline: Option<Instant>,
}

impl InstantClock {
    /// A clock that expires `timeout` from now, or never.
    pub fn new(timeout: Option<Duration>) -> Self {
        let start = Instant::now();
        InstantClock { start, deadline: timeout.and_then(|t| start.checked_add(t)) }
    }
}

impl Clock for InstantClock {
    fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }
}

pub fn default_threads() -> usize {
    thread::available_parallelism().map_or(1, |n| n.get())
}

pub fn search(
    v: usize,
    w: usize,
    girth: GirthTarget,
    limits: SearchLimits,
    threads: usize,
    clock: &dyn Clock,
) -> Result<SearchCertificate, SearchError> {
    let plan = SearchPlan::new(v, w, girth, limits)?;
    let count = plan.subtree_count();
    let threads = threads.clamp(1, count.max(1));
    if threads == 1 {
        return Ok(plan.certify(|k, budget| plan.run_subtree(k, budget, clock), clock));
    }

    let full = plan.subtree_budget();
    let results: Vec<Mutex<Option<SubtreeOutcome>>> = (0..count).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= count {
                    break;
                }
                let out = plan.run_subtree(k, full, clock);
                *results[k].lock().unwrap() = Some(out);
            });
        }
    });

    let cert = plan.certify(
        |k, budget| {
            let cached = results[k].lock().unwrap().take().expect("every subtree ran");
            // a truncated run is reusable if the clock stopped it or it hit exactly this share
            let reusable = cached.nodes <= budget && (!cached.truncated || cached.nodes < full || cached.nodes == budget);
            if reusable {
                cached
            } else {
                plan.run_subtree(k, budget, clock)
            }
        },
        clock,
    );
    Ok(cert)
}
