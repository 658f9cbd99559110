/// Default cap on enumerated code elements (2^20).
pub const DEFAULT_ELEMENT_GUARD: u64 = 1 << 20;
/// Default cap on code size for the exhaustive basis oracle (2^10).
pub const DEFAULT_ORACLE_GUARD: u64 = 1 << 10;
/// Default cap on the order of the equivalence group.
pub const DEFAULT_ORBIT_GUARD: u64 = 1_000_000;
/// Default cap on the ambient size for code censuses.
pub const DEFAULT_CENSUS_GUARD: u64 = 4096;
/// Default node budget for the sign-pattern basis search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;

/// Enumeration limits. Exceeding one yields `Error::GuardExceeded`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guards {
    pub elements: u64,
    pub oracle: u64,
    pub orbit: u64,
    pub census: u64,
    pub search: u64,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            elements: DEFAULT_ELEMENT_GUARD,
            oracle: DEFAULT_ORACLE_GUARD,
            orbit: DEFAULT_ORBIT_GUARD,
            census: DEFAULT_CENSUS_GUARD,
            search: DEFAULT_SEARCH_BUDGET,
        }
    }
}
