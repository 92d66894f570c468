use crate::error::{budget_err, Result};

/// Default cap on the number of elements any exhaustive enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 1 << 20;

/// Current enumeration budget. `DRINFELD_BUDGET` overrides the default.
pub fn budget() -> u128 {
    std::env::var("DRINFELD_BUDGET")
        .ok()
        .and_then(|s| s.parse::<u128>().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// Fail with a budget error when `size` elements exceed the current budget.
pub fn check_budget(size: u128, what: &str) -> Result<()> {
    let b = budget();
    if size > b {
        budget_err(format!("{what}: {size} elements exceeds budget {b}"))
    } else {
        Ok(())
    }
}
