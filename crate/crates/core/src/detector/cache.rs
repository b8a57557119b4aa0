use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::Result;
use crate::mimetic::{build_grad_2d, build_weights_2d, DiagonalWeights, Gradient2D, Order};

/// Gradient and face weights for one `(order, height, width)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MimeticPair {
    pub gradient: Gradient2D,
    pub weights: DiagonalWeights,
}

impl MimeticPair {
    pub fn build(order: Order, height: usize, width: usize) -> Result<Self> {
        Ok(MimeticPair {
            gradient: build_grad_2d(order, width, height)?,
            weights: build_weights_2d(order, width, height)?,
        })
    }
}

type Key = (Order, usize, usize);

/// Operators keyed by `(order, height, width)`. Lookups take a shared lock;
/// a miss builds outside the lock and inserts under the exclusive one.
#[derive(Debug, Default)]
pub struct OperatorCache {
    entries: RwLock<HashMap<Key, Arc<MimeticPair>>>,
}

impl OperatorCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide cache behind the free functions of this module.
    pub fn global() -> &'static OperatorCache {
        static GLOBAL: OnceLock<OperatorCache> = OnceLock::new();
        GLOBAL.get_or_init(OperatorCache::new)
    }

    pub fn get(&self, order: Order, height: usize, width: usize) -> Result<Arc<MimeticPair>> {
        let key = (order, height, width);
        if let Some(hit) = self.entries.read().expect("cache lock poisoned").get(&key) {
            return Ok(Arc::clone(hit));
        }
        let built = Arc::new(MimeticPair::build(order, height, width)?);
        let mut entries = self.entries.write().expect("cache lock poisoned");
        Ok(Arc::clone(entries.entry(key).or_insert(built)))
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
