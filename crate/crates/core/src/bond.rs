use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An entry of a Coxeter matrix, or the order of a group element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bond {
    Finite(u32),
    Inf,
}

impl Bond {
    pub fn finite(self) -> Option<u32> {
        match self {
            Bond::Finite(m) => Some(m),
            Bond::Inf => None,
        }
    }

    pub fn is_inf(self) -> bool {
        matches!(self, Bond::Inf)
    }

    /// `m/2` for an even (or infinite) order.
    pub fn half(self) -> Option<Bond> {
        match self {
            Bond::Inf => Some(Bond::Inf),
            Bond::Finite(m) if m % 2 == 0 => Some(Bond::Finite(m / 2)),
            Bond::Finite(_) => None,
        }
    }

    pub fn double(self) -> Bond {
        match self {
            Bond::Inf => Bond::Inf,
            Bond::Finite(m) => Bond::Finite(2 * m),
        }
    }

    /// Odd label, in the sense used for conjugacy of simple reflections.
    pub fn is_odd(self) -> bool {
        matches!(self, Bond::Finite(m) if m % 2 == 1)
    }
}

impl fmt::Display for Bond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bond::Finite(m) => write!(f, "{m}"),
            Bond::Inf => f.write_str("inf"),
        }
    }
}

impl FromStr for Bond {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "inf" | "Inf" | "INF" | "oo" | "∞" => Ok(Bond::Inf),
            _ => s
                .parse::<u32>()
                .ok()
                .filter(|&m| m >= 1)
                .map(Bond::Finite)
                .ok_or_else(|| Error::Parse(format!("bad Coxeter matrix entry `{s}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_halve() {
        assert_eq!("inf".parse::<Bond>().unwrap(), Bond::Inf);
        assert_eq!("4".parse::<Bond>().unwrap(), Bond::Finite(4));
        assert!("0".parse::<Bond>().is_err());
        assert_eq!(Bond::Finite(8).half(), Some(Bond::Finite(4)));
        assert_eq!(Bond::Finite(3).half(), None);
        assert_eq!(Bond::Inf.half(), Some(Bond::Inf));
        assert!(Bond::Finite(3).is_odd());
        assert!(!Bond::Inf.is_odd());
    }
}
