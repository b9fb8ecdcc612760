use serde::{Deserialize, Serialize};

/// Cap on the number of witnesses kept per failure class.
pub const MAX_WITNESSES: usize = 16;

/// A bounded list of failure witnesses together with the number actually seen.
///
/// Producers push witnesses in lexicographic order, so the retained prefix is
/// always the lexicographically least `MAX_WITNESSES` entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses<T> {
    pub items: Vec<T>,
    pub total: usize,
}

impl<T> Default for Witnesses<T> {
    fn default() -> Self {
        Witnesses {
            items: Vec::new(),
            total: 0,
        }
    }
}

impl<T> Witnesses<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, item: T) {
        if self.items.len() < MAX_WITNESSES {
            self.items.push(item);
        }
        self.total += 1;
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn truncated(&self) -> usize {
        self.total - self.items.len()
    }
}

impl<T: Ord> Witnesses<T> {
    /// Builds a bounded list from an unordered collection.
    pub fn from_unsorted(mut all: Vec<T>) -> Self {
        all.sort();
        let total = all.len();
        all.truncate(MAX_WITNESSES);
        Witnesses { items: all, total }
    }
}
