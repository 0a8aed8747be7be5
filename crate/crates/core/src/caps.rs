/// Resource caps for the exact deciders.  Exceeding a cap is an error, never
/// a silent truncation.
#[derive(Debug, Clone, Copy)]
pub struct Caps {
    /// Maximum number of subset-automaton (or product) states per search.
    pub max_states: usize,
    /// Maximum number of members materialized in an explicit set family.
    pub max_family: usize,
    /// Maximum number of family pairs examined by the weak left-resolving
    /// checker.
    pub max_pairs: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_states: 1 << 20,
            max_family: 10_000,
            max_pairs: 1 << 20,
        }
    }
}
