//! Search and materialization limits shared by the library and the CLI.

use crate::error::{Error, Result};

/// Environment variable holding a global ceiling on level arguments.
pub const MAX_LEVEL_ENV: &str = "FIBTREE_MAX_LEVEL";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Default number of levels for dumps and suites.
    pub levels: u32,
    /// Default depth for map-word searches.
    pub depth: u32,
    /// Default level cap for sequence searches.
    pub find_cap: u32,
    /// Hard ceiling on any level argument, if set.
    pub ceiling: Option<u32>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            levels: 30,
            depth: 10,
            find_cap: 60,
            ceiling: None,
        }
    }
}

impl Limits {
    /// Defaults, with the ceiling read from [`MAX_LEVEL_ENV`].
    pub fn from_env() -> Result<Self> {
        let ceiling = match std::env::var(MAX_LEVEL_ENV) {
            Ok(raw) => Some(raw.trim().parse::<u32>().map_err(|_| {
                Error::InvalidArgument(format!("{MAX_LEVEL_ENV}={raw:?} is not a level"))
            })?),
            Err(_) => None,
        };
        Ok(Limits {
            ceiling,
            ..Limits::default()
        })
    }

    /// Rejects a level argument above the ceiling.
    pub fn check_level(&self, requested: u32) -> Result<u32> {
        match self.ceiling {
            Some(cap) if requested > cap => Err(Error::LevelCap { requested, cap }),
            _ => Ok(requested),
        }
    }

    /// Lowers a search or materialization cap to the ceiling.
    pub fn clamp(&self, cap: u32) -> u32 {
        self.ceiling.map_or(cap, |c| cap.min(c))
    }
}
