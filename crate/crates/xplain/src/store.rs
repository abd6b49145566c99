//! In-memory session store with TTL eviction and per-session locking.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::time::Duration;

use tokio::sync::{Mutex as AsyncMutex, OwnedMutexGuard};
use tokio::time::Instant;
use xplain_core::dialogue::Session;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum StoreError {
    #[error("no such session")]
    NotFound,
    #[error("the session has expired or was deleted")]
    Gone,
    #[error("the session is busy, retry")]
    Busy,
}

struct Entry {
    created: Instant,
    session: Arc<AsyncMutex<Session>>,
}

enum Slot {
    Live(Arc<Entry>),
    /// Kept so a stale id answers "gone" rather than "not found".
    Tombstone(Instant),
}

pub struct Store {
    slots: Mutex<HashMap<String, Slot>>,
    ttl: Duration,
    lock_timeout: Duration,
}

/// Exclusive access to one session for the lifetime of the guard.
pub type SessionGuard = OwnedMutexGuard<Session>;

fn new_id() -> String {
    format!("{:032x}", rand::random::<u128>())
}

impl Store {
    pub fn new(ttl: Duration, lock_timeout: Duration) -> Self {
        Store { slots: Mutex::new(HashMap::new()), ttl, lock_timeout }
    }

    pub fn ttl(&self) -> Duration {
        self.ttl
    }

    pub fn insert(&self, session: Session) -> String {
        let mut slots = self.slots.lock().unwrap();
        let mut id = new_id();
        while slots.contains_key(&id) {
            id = new_id();
        }
        let entry = Entry { created: Instant::now(), session: Arc::new(AsyncMutex::new(session)) };
        slots.insert(id.clone(), Slot::Live(Arc::new(entry)));
        id
    }

    fn entry(&self, id: &str) -> Result<Arc<Entry>, StoreError> {
        let mut slots = self.slots.lock().unwrap();
        match slots.get(id) {
            None => Err(StoreError::NotFound),
            Some(Slot::Tombstone(_)) => Err(StoreError::Gone),
            Some(Slot::Live(e)) if e.created.elapsed() >= self.ttl => {
                slots.insert(id.to_string(), Slot::Tombstone(Instant::now()));
                Err(StoreError::Gone)
            }
            Some(Slot::Live(e)) => Ok(e.clone()),
        }
    }

    /// Locks the session, waiting at most the configured timeout.
    pub async fn lock(&self, id: &str) -> Result<SessionGuard, StoreError> {
        let entry = self.entry(id)?;
        tokio::time::timeout(self.lock_timeout, entry.session.clone().lock_owned())
            .await
            .map_err(|_| StoreError::Busy)
    }

    pub fn remove(&self, id: &str) -> Result<(), StoreError> {
        self.entry(id)?;
        self.slots.lock().unwrap().insert(id.to_string(), Slot::Tombstone(Instant::now()));
        Ok(())
    }

    /// Evicts expired sessions and forgets tombstones older than a day's worth of TTLs.
    pub fn sweep(&self) -> usize {
        let mut slots = self.slots.lock().unwrap();
        let now = Instant::now();
        let mut evicted = 0;
        for slot in slots.values_mut() {
            if let Slot::Live(e) = slot {
                if now.duration_since(e.created) >= self.ttl {
                    *slot = Slot::Tombstone(now);
                    evicted += 1;
                }
            }
        }
        let keep = self.ttl.saturating_mul(24).max(Duration::from_secs(24 * 3600));
        slots.retain(|_, s| !matches!(s, Slot::Tombstone(t) if now.duration_since(*t) > keep));
        evicted
    }

    pub fn live_count(&self) -> usize {
        self.slots.lock().unwrap().values().filter(|s| matches!(s, Slot::Live(_))).count()
    }
}
