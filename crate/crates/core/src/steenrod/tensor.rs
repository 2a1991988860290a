//! Formal F_l-linear combinations of tensor pairs and triples.
//!
//! Tensors are taken over the ground ring, so ground powers float freely
//! across the tensor sign; the canonical form collects the total ground
//! power on the leftmost factor. Terms are kept in canonical order with no
//! zero coefficients.

use std::collections::BTreeMap;

use super::monomial::Monomial;

/// An F_l-linear combination of pairs (m, m').
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorExpression {
    prime: u64,
    terms: BTreeMap<(Monomial, Monomial), u64>,
}

impl TensorExpression {
    pub fn zero(prime: u64) -> Self {
        TensorExpression {
            prime,
            terms: BTreeMap::new(),
        }
    }

    /// The unit 1 (x) 1.
    pub fn one(prime: u64) -> Self {
        let mut e = Self::zero(prime);
        e.add_term(Monomial::one(), Monomial::one(), 1);
        e
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// Adds `coeff * (left (x) right)`, moving the right factor's ground
    /// power to the left factor (the tensor is over the ground ring).
    pub fn add_term(&mut self, left: Monomial, right: Monomial, coeff: u64) {
        let coeff = coeff % self.prime;
        if coeff == 0 {
            return;
        }
        let (right0, g) = right.split_ground();
        let left = left.with_ground(left.ground() + g);
        let key = (left, right0);
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry = (*entry + coeff) % self.prime;
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn add_signed(&mut self, left: Monomial, right: Monomial, coeff: u64, sign: i8) {
        let c = if sign >= 0 {
            coeff % self.prime
        } else {
            (self.prime - coeff % self.prime) % self.prime
        };
        self.add_term(left, right, c);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial), u64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Graded tensor product: (a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd,
    /// with products vanishing on repeated exterior factors.
    pub fn mul(&self, other: &TensorExpression) -> TensorExpression {
        debug_assert_eq!(self.prime, other.prime);
        let mut out = TensorExpression::zero(self.prime);
        for ((a, b), ca) in self.terms() {
            for ((c, d), cb) in other.terms() {
                let Some((s1, left)) = a.mul(c) else { continue };
                let Some((s2, right)) = b.mul(d) else {
                    continue;
                };
                let koszul = b.is_odd() && c.is_odd();
                let mut sign = s1 * s2;
                if koszul {
                    sign = -sign;
                }
                out.add_signed(left, right, ca * cb % self.prime, sign);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> TensorExpression {
        let mut acc = TensorExpression::one(self.prime);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Drops every term with a ground-only factor on either side, leaving
    /// the image in the tensor square of the augmentation coideal.
    pub fn reduced(&self) -> TensorExpression {
        let mut out = TensorExpression::zero(self.prime);
        for ((a, b), c) in self.terms() {
            if a.is_ground_only() || b.is_ground_only() {
                continue;
            }
            out.add_term(a.clone(), b.clone(), c);
        }
        out
    }

    /// Collapses the left factor with the counit; nonzero only on
    /// ground-only left factors.
    pub fn counit_left(&self) -> BTreeMap<Monomial, u64> {
        let mut out = BTreeMap::new();
        for ((a, b), c) in self.terms() {
            if !a.is_ground_only() {
                continue;
            }
            let m = b.with_ground(b.ground() + a.ground());
            let e = out.entry(m).or_insert(0);
            *e = (*e + c) % self.prime;
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Collapses the right factor with the counit.
    pub fn counit_right(&self) -> BTreeMap<Monomial, u64> {
        let mut out = BTreeMap::new();
        for ((a, b), c) in self.terms() {
            if !b.is_ground_only() {
                continue;
            }
            let m = a.with_ground(a.ground() + b.ground());
            let e = out.entry(m).or_insert(0);
            *e = (*e + c) % self.prime;
        }
        out.retain(|_, v| *v != 0);
        out
    }
}

/// An F_l-linear combination of tensor triples, used for coassociativity
/// checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriTensor {
    prime: u64,
    terms: BTreeMap<(Monomial, Monomial, Monomial), u64>,
}

impl TriTensor {
    pub fn zero(prime: u64) -> Self {
        TriTensor {
            prime,
            terms: BTreeMap::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, a: Monomial, b: Monomial, c: Monomial, coeff: u64) {
        let coeff = coeff % self.prime;
        if coeff == 0 {
            return;
        }
        let (b0, gb) = b.split_ground();
        let (c0, gc) = c.split_ground();
        let a = a.with_ground(a.ground() + gb + gc);
        let key = (a, b0, c0);
        let entry = self.terms.entry(key.clone()).or_insert(0);
        *entry = (*entry + coeff) % self.prime;
        if *entry == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, Monomial, Monomial), u64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_powers_float_to_the_left() {
        let mut e = TensorExpression::zero(3);
        e.add_term(Monomial::tau_gen(0), Monomial::ground_pow(2), 1);
        let ((l, r), c) = e.terms().next().unwrap();
        assert_eq!(l.ground(), 2);
        assert_eq!(r.ground(), 0);
        assert_eq!(c, 1);
    }

    #[test]
    fn cancelling_terms_vanish() {
        let mut e = TensorExpression::zero(3);
        e.add_term(Monomial::one(), Monomial::tau_gen(0), 1);
        e.add_term(Monomial::one(), Monomial::tau_gen(0), 2);
        assert!(e.is_zero());
    }

    #[test]
    fn koszul_sign_applies_to_odd_odd_crossings() {
        // (1 (x) tau0)(tau1 (x) 1) = -tau1 (x) tau0
        let mut a = TensorExpression::zero(3);
        a.add_term(Monomial::one(), Monomial::tau_gen(0), 1);
        let mut b = TensorExpression::zero(3);
        b.add_term(Monomial::tau_gen(1), Monomial::one(), 1);
        let prod = a.mul(&b);
        let ((l, r), c) = prod.terms().next().unwrap();
        assert_eq!(l, &Monomial::tau_gen(1));
        assert_eq!(r, &Monomial::tau_gen(0));
        assert_eq!(c, 2); // -1 mod 3
    }
}
