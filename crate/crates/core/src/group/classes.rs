use std::fmt;
use std::str::FromStr;

use super::{commutator_subgroup, FiniteGroup};
use crate::error::{Error, Result};

/// Group classes closed under subgroups, quotients and finite products.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupClass {
    Abelian,
    /// Groups of order `p^k`, `k >= 0`.
    PGroup(u32),
    Solvable,
    Nilpotent,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl FromStr for GroupClass {
    type Err = Error;

    /// Accepts `abelian`, `solvable`, `nilpotent`, `<p>-group` and `p-group(<p>)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let prime = |digits: &str| -> Result<GroupClass> {
            let p: u32 = digits.parse().map_err(|_| Error::UnknownClass(s.clone()))?;
            if !is_prime(p) {
                return Err(Error::UnknownClass(format!("{s}: {p} is not prime")));
            }
            Ok(GroupClass::PGroup(p))
        };
        match s.as_str() {
            "abelian" => Ok(Self::Abelian),
            "solvable" => Ok(Self::Solvable),
            "nilpotent" => Ok(Self::Nilpotent),
            _ => {
                if let Some(inner) = s.strip_prefix("p-group(").and_then(|r| r.strip_suffix(')')) {
                    prime(inner)
                } else if let Some(digits) = s.strip_suffix("-group") {
                    prime(digits)
                } else {
                    Err(Error::UnknownClass(s.clone()))
                }
            }
        }
    }
}

impl fmt::Display for GroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Abelian => write!(f, "abelian"),
            Self::PGroup(p) => write!(f, "{p}-group"),
            Self::Solvable => write!(f, "solvable"),
            Self::Nilpotent => write!(f, "nilpotent"),
        }
    }
}

impl GroupClass {
    pub fn contains(&self, group: &FiniteGroup) -> bool {
        match *self {
            Self::Abelian => group.is_abelian(),
            Self::PGroup(p) => {
                let mut m = group.order();
                while m.is_multiple_of(p as usize) {
                    m /= p as usize;
                }
                m == 1
            }
            Self::Solvable => {
                let mut current: Vec<usize> = group.elements().collect();
                loop {
                    let next = commutator_subgroup(group, &current, &current);
                    if next.len() == current.len() {
                        return next.len() == 1;
                    }
                    current = next;
                }
            }
            Self::Nilpotent => {
                let all: Vec<usize> = group.elements().collect();
                let mut current = all.clone();
                loop {
                    let next = commutator_subgroup(group, &current, &all);
                    if next.len() == current.len() {
                        return next.len() == 1;
                    }
                    current = next;
                }
            }
        }
    }
}

/// Membership test by class name.
pub fn class_predicate(name: &str, group: &FiniteGroup) -> Result<bool> {
    Ok(name.parse::<GroupClass>()?.contains(group))
}
