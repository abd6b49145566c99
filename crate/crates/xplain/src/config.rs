use std::time::Duration;

use xplain_core::dialogue::DEFAULT_GOAL_BOUND;

use crate::pddl::GroundOptions;

pub const DEFAULT_PORT: u16 = 8080;
pub const DEFAULT_TTL_SECS: u64 = 3600;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub port: u16,
    /// Sessions are evicted this long after creation.
    pub ttl: Duration,
    /// Step bound for the feasibility search behind goal questions.
    pub goal_bound: usize,
    pub ground: GroundOptions,
    /// How long a request waits for a busy session before giving up with 409.
    pub lock_timeout: Duration,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            port: DEFAULT_PORT,
            ttl: Duration::from_secs(DEFAULT_TTL_SECS),
            goal_bound: DEFAULT_GOAL_BOUND,
            ground: GroundOptions::default(),
            lock_timeout: Duration::from_secs(2),
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<(), String> {
        if self.ttl.is_zero() {
            return Err("the session TTL must be positive".into());
        }
        if self.goal_bound == 0 {
            return Err("the search bound must be positive".into());
        }
        if self.ground.max_objects == 0 || self.ground.max_actions == 0 {
            return Err("grounding limits must be positive".into());
        }
        if self.lock_timeout.is_zero() {
            return Err("the lock timeout must be positive".into());
        }
        Ok(())
    }
}
