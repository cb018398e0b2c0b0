use serde::Deserialize;

use crate::error::CliError;

/// Hard limits. Exceeding one is an error, never a silent truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budgets {
    /// Candidates examined by any exhaustive enumeration.
    pub enumeration: u128,
    /// Dimension of the ambient path coalgebra of a truncation.
    pub max_truncation_dim: usize,
    /// Morphisms of any finite category built from an instance.
    pub max_category_morphisms: usize,
}

impl Default for Budgets {
    fn default() -> Budgets {
        Budgets { enumeration: 1 << 22, max_truncation_dim: 4096, max_category_morphisms: 4096 }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    #[serde(default)]
    budgets: Budgets,
}

impl Budgets {
    pub fn from_toml(path: &str) -> Result<Budgets, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
        let cfg: ConfigFile =
            toml::from_str(&text).map_err(|e| CliError::Parse { path: path.to_string(), message: e.to_string() })?;
        Ok(cfg.budgets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_config_keeps_defaults() {
        let cfg: ConfigFile = toml::from_str("[budgets]\nenumeration = 10\n").unwrap();
        assert_eq!(cfg.budgets.enumeration, 10);
        assert_eq!(cfg.budgets.max_truncation_dim, Budgets::default().max_truncation_dim);
        assert!(toml::from_str::<ConfigFile>("[budgets]\nbogus = 1\n").is_err());
    }
}
