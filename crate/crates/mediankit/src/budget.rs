//! Search caps. `MEDIANKIT_BUDGET` overrides the defaults, either as a bare
//! integer (wall cap) or as `key=value` pairs separated by commas, e.g.
//! `walls=24,words=6,nodes=10000000`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Walls allowed for full point enumeration and automorphism search.
    pub max_walls: usize,
    /// Walls allowed to take part in the clique search for rank.
    pub max_clique_walls: usize,
    /// Default word length for bounded group searches.
    pub max_word_len: usize,
    /// Walls allowed in the deepest stage of a subdivision tower.
    pub max_tower_walls: usize,
    /// Backtracking nodes allowed in a single enumeration.
    pub max_nodes: u64,
    /// Elements allowed when closing a finite group.
    pub max_group_order: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_walls: 20,
            max_clique_walls: 64,
            max_word_len: 4,
            max_tower_walls: 4096,
            max_nodes: 20_000_000,
            max_group_order: 200_000,
        }
    }
}

pub const BUDGET_ENV: &str = "MEDIANKIT_BUDGET";

impl Budget {
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(spec) => Budget::default().with_overrides(&spec),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Ok(self);
        }
        if let Ok(n) = spec.parse::<usize>() {
            self.max_walls = n;
            return Ok(self);
        }
        for item in spec.split(',') {
            let (key, value) = item.split_once('=').ok_or_else(|| {
                Error::Invalid(format!("{BUDGET_ENV}: expected key=value, got {item:?}"))
            })?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("{BUDGET_ENV}: {key} needs an integer")))?;
            match key.trim() {
                "walls" => self.max_walls = value as usize,
                "clique" => self.max_clique_walls = value as usize,
                "words" => self.max_word_len = value as usize,
                "tower" => self.max_tower_walls = value as usize,
                "nodes" => self.max_nodes = value,
                "group" => self.max_group_order = value as usize,
                other => {
                    return Err(Error::Invalid(format!(
                        "{BUDGET_ENV}: unknown key {other:?}"
                    )))
                }
            }
        }
        Ok(self)
    }

    /// Same caps with a different wall limit.
    pub fn with_walls(&self, walls: usize) -> Self {
        Budget {
            max_walls: walls,
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let b = Budget::default().with_overrides("24").unwrap();
        assert_eq!(b.max_walls, 24);
        let b = Budget::default()
            .with_overrides("walls=3, words=7")
            .unwrap();
        assert_eq!((b.max_walls, b.max_word_len), (3, 7));
        assert!(Budget::default().with_overrides("bogus=1").is_err());
        assert!(Budget::default().with_overrides("walls").is_err());
    }
}
