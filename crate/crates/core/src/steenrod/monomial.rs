//! Monomials in the dual Steenrod algebra generators.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::ground::GroundRing;

/// Set of exterior generator indices, each appearing at most once
/// (the relation tau_i^2 = 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct TauSet(pub u64);

impl TauSet {
    pub const EMPTY: TauSet = TauSet(0);

    pub fn singleton(i: u32) -> TauSet {
        TauSet(1 << i)
    }

    pub fn contains(self, i: u32) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn count(self) -> u32 {
        self.0.count_ones()
    }

    pub fn iter(self) -> impl Iterator<Item = u32> {
        (0..64).filter(move |&i| self.contains(i))
    }

    fn intersects(self, other: TauSet) -> bool {
        self.0 & other.0 != 0
    }

    fn union(self, other: TauSet) -> TauSet {
        TauSet(self.0 | other.0)
    }

    /// Number of index pairs (i, j) with i in self, j in other and i > j:
    /// the transpositions needed to merge the two sorted factor lists.
    fn inversions(self, other: TauSet) -> u32 {
        let mut count = 0;
        for j in other.iter() {
            // indices of self strictly above j
            count += (self.0 >> (j + 1)).count_ones();
        }
        count
    }
}

impl PartialOrd for TauSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TauSet {
    /// Lexicographic on the ascending index sequence.
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) => match x.cmp(&y) {
                    Ordering::Equal => continue,
                    ord => return ord,
                },
            }
        }
    }
}

/// A monomial in the dual Steenrod algebra: a product of xi_i powers,
/// distinct tau_i factors and a power of the ground generator.
///
/// Bidegrees are always computed from the exponents, never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    /// `xi[i]` is the exponent of xi_{i+1}.  Trailing zeros are trimmed.
    xi: Vec<u32>,
    tau: TauSet,
    ground: u32,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial {
            xi: Vec::new(),
            tau: TauSet::EMPTY,
            ground: 0,
        }
    }

    pub fn from_parts(xi: Vec<u32>, tau: TauSet, ground: u32) -> Monomial {
        let mut m = Monomial { xi, tau, ground };
        m.trim();
        m
    }

    /// xi_n for n >= 1.
    pub fn xi_gen(n: usize) -> Monomial {
        assert!(n >= 1);
        let mut xi = vec![0; n];
        xi[n - 1] = 1;
        Monomial {
            xi,
            tau: TauSet::EMPTY,
            ground: 0,
        }
    }

    /// xi_n^e; `xi_pow(0, _)` is the unit.
    pub fn xi_pow(n: usize, e: u32) -> Monomial {
        if n == 0 || e == 0 {
            return Monomial::one();
        }
        let mut xi = vec![0; n];
        xi[n - 1] = e;
        Monomial {
            xi,
            tau: TauSet::EMPTY,
            ground: 0,
        }
    }

    /// tau_n for n >= 0.
    pub fn tau_gen(n: u32) -> Monomial {
        Monomial {
            xi: Vec::new(),
            tau: TauSet::singleton(n),
            ground: 0,
        }
    }

    /// Power of the ground generator.
    pub fn ground_pow(n: u32) -> Monomial {
        Monomial {
            xi: Vec::new(),
            tau: TauSet::EMPTY,
            ground: n,
        }
    }

    fn trim(&mut self) {
        while self.xi.last() == Some(&0) {
            self.xi.pop();
        }
    }

    pub fn xi_exponents(&self) -> &[u32] {
        &self.xi
    }

    pub fn tau_set(&self) -> TauSet {
        self.tau
    }

    pub fn ground(&self) -> u32 {
        self.ground
    }

    pub fn with_ground(&self, ground: u32) -> Monomial {
        Monomial {
            xi: self.xi.clone(),
            tau: self.tau,
            ground,
        }
    }

    /// Strips the ground power, returning it separately.
    pub fn split_ground(&self) -> (Monomial, u32) {
        (self.with_ground(0), self.ground)
    }

    /// True if the monomial is a pure ground power (possibly the unit):
    /// such elements lie in the image of the unit and die in the
    /// augmentation coideal.
    pub fn is_ground_only(&self) -> bool {
        self.xi.is_empty() && self.tau.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.is_ground_only() && self.ground == 0
    }

    /// Number of exterior factors; a well-defined grading preserved by both
    /// product and coproduct.
    pub fn tau_count(&self) -> u32 {
        self.tau.count()
    }

    /// Parity of the topological degree: odd exactly when an odd number of
    /// exterior factors is present.
    pub fn is_odd(&self) -> bool {
        self.tau_count() % 2 == 1
    }

    /// Topological (first homological) degree. |xi_i| = 2l^i - 2,
    /// |tau_i| = 2l^i - 1, ground contributes 0.
    pub fn t_degree(&self, l: u64) -> i64 {
        let l = l as i64;
        let mut t = 0;
        let mut pw = l;
        for &e in &self.xi {
            t += e as i64 * (2 * pw - 2);
            pw *= l;
        }
        for i in self.tau.iter() {
            t += 2 * l.pow(i) - 1;
        }
        t
    }

    /// Motivic weight. |xi_i| has weight l^i - 1, |tau_i| has weight
    /// l^i - 1, and each ground power lowers the weight by the ring's step.
    pub fn weight(&self, ring: &GroundRing) -> i64 {
        let l = ring.prime as i64;
        let mut u = 0;
        let mut pw = l;
        for &e in &self.xi {
            u += e as i64 * (pw - 1);
            pw *= l;
        }
        for i in self.tau.iter() {
            u += l.pow(i) - 1;
        }
        u - self.ground as i64 * ring.weight_step()
    }

    /// Weight of the ground-free part.
    pub fn free_weight(&self, l: u64) -> i64 {
        self.with_ground(0).weight(&GroundRing {
            base: super::BaseField::C,
            prime: l,
        })
    }

    /// Graded-commutative product. Returns `None` when a tau factor would
    /// square to zero; otherwise the Koszul sign (from commuting odd
    /// exterior factors past each other) and the product monomial.
    pub fn mul(&self, other: &Monomial) -> Option<(i8, Monomial)> {
        if self.tau.intersects(other.tau) {
            return None;
        }
        let inversions = self.tau.inversions(other.tau);
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        let mut xi = vec![0u32; self.xi.len().max(other.xi.len())];
        for (i, &e) in self.xi.iter().enumerate() {
            xi[i] += e;
        }
        for (i, &e) in other.xi.iter().enumerate() {
            xi[i] += e;
        }
        Some((
            sign,
            Monomial::from_parts(xi, self.tau.union(other.tau), self.ground + other.ground),
        ))
    }

    /// The base-change embedding theta -> tau^2: reinterprets an R-monomial
    /// as a C-monomial, doubling the ground power.
    pub fn base_change_r_to_c(&self) -> Monomial {
        self.with_ground(self.ground * 2)
    }

    /// Human-readable form, e.g. `ξ1^2·τ0·τ^3`.
    pub fn format(&self, ring: &GroundRing) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.xi.iter().enumerate() {
            if e == 1 {
                parts.push(format!("ξ{}", i + 1));
            } else if e > 1 {
                parts.push(format!("ξ{}^{}", i + 1, e));
            }
        }
        for i in self.tau.iter() {
            parts.push(format!("τ{i}"));
        }
        if self.ground == 1 {
            parts.push(ring.ground_symbol().to_string());
        } else if self.ground > 1 {
            parts.push(format!("{}^{}", ring.ground_symbol(), self.ground));
        }
        parts.join("·")
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Canonical order: ground power, then xi exponents lexicographically,
    /// then the tau index set lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.ground
            .cmp(&other.ground)
            .then_with(|| self.xi.cmp(&other.xi))
            .then_with(|| self.tau.cmp(&other.tau))
    }
}
