/// Limits on enumeration work.
///
/// `candidates` bounds the number of candidate tuples an enumeration may
/// inspect; `table_entries` bounds the size of composition tables that are
/// materialized for constructed categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub candidates: u64,
    pub table_entries: u64,
}

impl Budget {
    pub const DEFAULT_CANDIDATES: u64 = 1_000_000;
    pub const DEFAULT_TABLE_ENTRIES: u64 = 50_000_000;

    pub fn with_candidates(candidates: u64) -> Self {
        Budget {
            candidates,
            ..Budget::default()
        }
    }

    pub fn unlimited() -> Self {
        Budget {
            candidates: u64::MAX,
            table_entries: u64::MAX,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            candidates: Self::DEFAULT_CANDIDATES,
            table_entries: Self::DEFAULT_TABLE_ENTRIES,
        }
    }
}

/// Running counter checked against a budget.
#[derive(Debug)]
pub(crate) struct Meter {
    used: u64,
    limit: u64,
    what: &'static str,
}

impl Meter {
    pub(crate) fn new(limit: u64, what: &'static str) -> Self {
        Meter { used: 0, limit, what }
    }

    pub(crate) fn tick(&mut self, n: u64) -> crate::Result<()> {
        self.used = self.used.saturating_add(n);
        if self.used > self.limit {
            return crate::error::resource(format!("{} exceeded budget of {}", self.what, self.limit));
        }
        Ok(())
    }
}
