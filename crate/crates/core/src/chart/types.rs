//! Core chart data types: positions, cyclic summands, presented entries.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::steenrod::GroundRing;

/// Finite or infinite exponent; `Finite(n)` reads as l^n (or tau^n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Order {
    pub fn is_finite(self) -> bool {
        matches!(self, Order::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::Infinite => write!(f, "inf"),
        }
    }
}

/// Chart cell address in Adams indexing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pos {
    pub s: i64,
    pub stem: i64,
}

impl Pos {
    pub fn new(s: i64, stem: i64) -> Pos {
        Pos { s, stem }
    }

    /// Internal degree t = s + stem.
    pub fn t(&self) -> i64 {
        self.s + self.stem
    }
}

impl std::fmt::Display for Pos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.s, self.stem)
    }
}

/// Trigraded position: filtration, stem and weight; t is derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Trigrade {
    pub s: i64,
    pub stem: i64,
    pub u: i64,
}

impl Trigrade {
    pub fn t(&self) -> i64 {
        self.s + self.stem
    }

    pub fn pos(&self) -> Pos {
        Pos {
            s: self.s,
            stem: self.stem,
        }
    }
}

/// One cyclic module `Z/l^m[tau]/(tau^k)` (m or k possibly infinite) with a
/// generator weight; the atom of chart entries.
///
/// `l_exp = Infinite` encodes Z_l and may occur only at the origin;
/// `tau_exp = Infinite` means free over the ground ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSummand {
    pub l_exp: Order,
    pub tau_exp: Order,
    pub gen_weight: i64,
    pub label: Option<String>,
}

impl CyclicSummand {
    pub fn free(l_exp: u32, gen_weight: i64, label: Option<String>) -> Self {
        CyclicSummand {
            l_exp: Order::Finite(l_exp),
            tau_exp: Order::Infinite,
            gen_weight,
            label,
        }
    }

    pub fn torsion(l_exp: u32, tau_exp: u32, gen_weight: i64, label: Option<String>) -> Self {
        CyclicSummand {
            l_exp: Order::Finite(l_exp),
            tau_exp: Order::Finite(tau_exp),
            gen_weight,
            label,
        }
    }

    pub fn origin() -> Self {
        CyclicSummand {
            l_exp: Order::Infinite,
            tau_exp: Order::Infinite,
            gen_weight: 0,
            label: Some("1".to_string()),
        }
    }

    pub fn is_torsion(&self) -> bool {
        self.tau_exp.is_finite()
    }

    /// Order of the weight-u slice of this summand: `Some(0)` means an
    /// infinite cyclic slice, `None` means the slice is empty.
    pub fn slice_order(&self, u: i64, ring: &GroundRing) -> Option<u64> {
        let step = ring.weight_step();
        let offset = self.gen_weight - u;
        if offset < 0 || offset % step != 0 {
            return None;
        }
        let j = (offset / step) as u32;
        if let Order::Finite(k) = self.tau_exp {
            if j >= k {
                return None;
            }
        }
        match self.l_exp {
            Order::Finite(m) => Some(ring.prime.pow(m)),
            Order::Infinite => Some(0),
        }
    }

    pub fn format(&self, ring: &GroundRing) -> String {
        let mut out = match self.l_exp {
            Order::Finite(m) => format!("l^{m}"),
            Order::Infinite => "l^inf".to_string(),
        };
        match self.tau_exp {
            Order::Finite(k) => out.push_str(&format!("/{}^{k}", ring.ground_symbol())),
            Order::Infinite => {}
        }
        out.push_str(&format!(" @{}", self.gen_weight));
        if let Some(l) = &self.label {
            out.push_str(&format!(" {l}"));
        }
        out
    }
}

/// One coefficient of a relation: `coeff * ground^tau_pow` applied to the
/// generator in the same slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelCoef {
    pub coeff: i64,
    pub tau_pow: u32,
}

impl RelCoef {
    pub fn zero() -> Self {
        RelCoef {
            coeff: 0,
            tau_pow: 0,
        }
    }
}

/// A graded module presentation over `Z_l[tau]`, retained verbatim when an
/// entry does not split into cyclic summands. Generator l-power orders are
/// explicit relations (`l^n g`), so a well-formed presentation always has
/// finite weight slices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedEntry {
    /// (generator weight, optional label) per generator.
    pub generators: Vec<(i64, Option<String>)>,
    /// Relations as coefficient vectors over the generators; each relation
    /// must be weight-homogeneous.
    pub relations: Vec<Vec<RelCoef>>,
    /// Set when normalization failed to split the module.
    pub non_split: bool,
}

impl PresentedEntry {
    pub fn new(generators: Vec<(i64, Option<String>)>, relations: Vec<Vec<RelCoef>>) -> Self {
        PresentedEntry {
            generators,
            relations,
            non_split: false,
        }
    }

    /// The common weight of a relation, or an error if it is not
    /// homogeneous.
    pub fn relation_weight(&self, rel: &[RelCoef], ring: &GroundRing) -> Result<Option<i64>> {
        let step = ring.weight_step();
        let mut weight = None;
        for (j, c) in rel.iter().enumerate() {
            if c.coeff == 0 {
                continue;
            }
            let w = self.generators[j].0 - c.tau_pow as i64 * step;
            match weight {
                None => weight = Some(w),
                Some(prev) if prev != w => {
                    return Err(Error::Invariant(vec![crate::error::Violation::global(
                        "presentation-homogeneity",
                        format!("relation mixes weights {prev} and {w}"),
                    )]));
                }
                _ => {}
            }
        }
        Ok(weight)
    }
}
