//! Ground rings for the two base fields.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Base field of the motivic category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BaseField {
    /// Complex numbers; coefficients `F_l[tau]`, |tau| = (0,-1) homologically.
    C,
    /// Real numbers; coefficients `F_l[theta]`, |theta| = (0,-2) homologically.
    R,
}

impl std::fmt::Display for BaseField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BaseField::C => write!(f, "C"),
            BaseField::R => write!(f, "R"),
        }
    }
}

/// The coefficient ring of motivic cohomology of the point: a polynomial
/// ring over F_l on one ground generator whose weight step depends on the
/// base field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroundRing {
    pub base: BaseField,
    pub prime: u64,
}

impl GroundRing {
    pub fn new(base: BaseField, prime: u64) -> Result<Self> {
        if prime < 3 || prime.is_multiple_of(2) || !is_prime(prime) {
            return Err(Error::Config(format!("prime {prime} is not an odd prime")));
        }
        Ok(GroundRing { base, prime })
    }

    /// Weight lost per power of the ground generator: 1 over C, 2 over R.
    pub fn weight_step(&self) -> i64 {
        match self.base {
            BaseField::C => 1,
            BaseField::R => 2,
        }
    }

    /// Homological bidegree (t, u) of the ground generator.
    pub fn ground_bidegree(&self) -> (i64, i64) {
        (0, -self.weight_step())
    }

    /// Display symbol of the ground generator.
    pub fn ground_symbol(&self) -> &'static str {
        match self.base {
            BaseField::C => "τ",
            BaseField::R => "θ",
        }
    }

    /// Sparseness modulus q = 2l - 2.
    pub fn q(&self) -> i64 {
        2 * self.prime as i64 - 2
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
