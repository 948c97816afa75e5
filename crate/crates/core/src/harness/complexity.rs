use std::fmt;
use std::str::FromStr;

use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolicyKind {
    Markov,
    Query,
}

impl FromStr for PolicyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "markov" => Ok(PolicyKind::Markov),
            "query" => Ok(PolicyKind::Query),
            other => Err(Error::InvalidConfig(format!(
                "unknown paradigm {other:?} (expected markov or query)"
            ))),
        }
    }
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolicyKind::Markov => "markov",
            PolicyKind::Query => "query",
        })
    }
}

/// Table sizes a policy needs to store.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Complexity {
    pub model_entries: u64,
    pub value_entries: u64,
}

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "model={} value={}", self.model_entries, self.value_entries)
    }
}

/// Markov: `|S|^2 |A|` transition entries and `|S|` values.
/// Query: `2 (|S| |A|)^2` inducibility entries and `|S| |A|` values.
pub fn policy_complexity(n_states: u64, n_actions: u64, kind: PolicyKind) -> Complexity {
    match kind {
        PolicyKind::Markov => Complexity {
            model_entries: n_states * n_states * n_actions,
            value_entries: n_states,
        },
        PolicyKind::Query => {
            let pairs = n_states * n_actions;
            Complexity {
                model_entries: 2 * pairs * pairs,
                value_entries: pairs,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_sizes() {
        assert_eq!(
            policy_complexity(12, 3, PolicyKind::Markov),
            Complexity { model_entries: 432, value_entries: 12 }
        );
        assert_eq!(policy_complexity(12, 3, PolicyKind::Query).to_string(), "model=2592 value=36");
        assert_eq!(
            policy_complexity(1, 1, PolicyKind::Markov),
            Complexity { model_entries: 1, value_entries: 1 }
        );
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("query".parse::<PolicyKind>().unwrap(), PolicyKind::Query);
        assert!("pomdp".parse::<PolicyKind>().is_err());
    }
}
