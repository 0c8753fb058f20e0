// Copyright 2026 The Paradox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, MutexGuard, RwLock};
use std::time::{Duration, Instant};

use rand::distr::{Alphanumeric, SampleString};

pub const ID_LEN: usize = 16;
pub const DEFAULT_IDLE_TTL: Duration = Duration::from_secs(60 * 60);

struct Entry<T> {
    session: Mutex<T>,
    last_used: Mutex<Instant>,
}

/// Handle to one stored session. Locking serializes all operations on it.
#[derive(Clone)]
pub struct SessionHandle<T> {
    entry: Arc<Entry<T>>,
}

impl<T> SessionHandle<T> {
    pub fn lock(&self) -> MutexGuard<'_, T> {
        *self
            .entry
            .last_used
            .lock()
            .unwrap_or_else(|e| e.into_inner()) = Instant::now();
        self.entry.session.lock().unwrap_or_else(|e| e.into_inner())
    }
}

/// In-memory sessions keyed by random alphanumeric ids, evicted after
/// `idle_ttl` without access.
pub struct SessionStore<T> {
    sessions: RwLock<HashMap<String, Arc<Entry<T>>>>,
    idle_ttl: Duration,
}

impl<T> Default for SessionStore<T> {
    fn default() -> Self {
        Self::with_idle_ttl(DEFAULT_IDLE_TTL)
    }
}

impl<T> SessionStore<T> {
    pub fn with_idle_ttl(idle_ttl: Duration) -> Self {
        SessionStore {
            sessions: RwLock::new(HashMap::new()),
            idle_ttl,
        }
    }

    pub fn idle_ttl(&self) -> Duration {
        self.idle_ttl
    }

    pub fn insert(&self, session: T) -> String {
        let entry = Arc::new(Entry {
            session: Mutex::new(session),
            last_used: Mutex::new(Instant::now()),
        });
        let mut sessions = self.sessions.write().unwrap_or_else(|e| e.into_inner());
        loop {
            let id = Alphanumeric.sample_string(&mut rand::rng(), ID_LEN);
            if !sessions.contains_key(&id) {
                sessions.insert(id.clone(), entry);
                return id;
            }
        }
    }

    pub fn get(&self, id: &str) -> Option<SessionHandle<T>> {
        self.evict_idle(Instant::now());
        let sessions = self.sessions.read().unwrap_or_else(|e| e.into_inner());
        sessions.get(id).map(|entry| SessionHandle {
            entry: Arc::clone(entry),
        })
    }

    pub fn len(&self) -> usize {
        self.sessions
            .read()
            .unwrap_or_else(|e| e.into_inner())
            .len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Drops sessions idle for longer than the ttl as of `now`; returns how
    /// many were removed.
    pub fn evict_idle(&self, now: Instant) -> usize {
        let mut sessions = self.sessions.write().unwrap_or_else(|e| e.into_inner());
        let before = sessions.len();
        sessions.retain(|_, entry| {
            let last = *entry.last_used.lock().unwrap_or_else(|e| e.into_inner());
            now.saturating_duration_since(last) <= self.idle_ttl
        });
        before - sessions.len()
    }
}
