//! Degreewise monomial bases with a concurrent memo cache, and the
//! multiplicative extension of the comultiplication.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use super::coproduct::{comult_tau, comult_xi};
use super::ground::GroundRing;
use super::monomial::{Monomial, TauSet};
use super::tensor::{TensorExpression, TriTensor};
use crate::error::{Error, Result};

/// Which Hopf algebra the monomials live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgebraKind {
    /// Full dual Steenrod algebra: xi_i and tau_i.
    A,
    /// Polynomial part on the xi_i.
    P,
    /// Exterior part on the tau_i.
    E,
}

impl std::fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AlgebraKind::A => write!(f, "A"),
            AlgebraKind::P => write!(f, "P"),
            AlgebraKind::E => write!(f, "E"),
        }
    }
}

/// Enumeration bounds: a hard ceiling on the degrees any basis request may
/// touch. Downstream complexes are range-limited, so the bound mostly
/// guards against runaway queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumBounds {
    pub s_max: usize,
    pub t_max: i64,
    pub u_abs_max: i64,
}

impl Default for EnumBounds {
    fn default() -> Self {
        EnumBounds {
            s_max: 16,
            t_max: 512,
            u_abs_max: 512,
        }
    }
}

type BasisCache = RwLock<HashMap<(AlgebraKind, i64), Arc<Vec<Monomial>>>>;
type ComultCache = RwLock<HashMap<(AlgebraKind, Monomial), Arc<TensorExpression>>>;

/// The dual motivic Steenrod algebra over a fixed ground ring, together
/// with a read-mostly cache of ground-free bases keyed by topological
/// degree. Cache population is idempotent, so concurrent fills are safe.
#[derive(Debug)]
pub struct DualAlgebra {
    ring: GroundRing,
    bounds: EnumBounds,
    cache: BasisCache,
    comult_cache: ComultCache,
    reduced_cache: ComultCache,
}

impl DualAlgebra {
    pub fn new(ring: GroundRing, bounds: EnumBounds) -> Self {
        DualAlgebra {
            ring,
            bounds,
            cache: RwLock::new(HashMap::new()),
            comult_cache: RwLock::new(HashMap::new()),
            reduced_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn ring(&self) -> &GroundRing {
        &self.ring
    }

    pub fn bounds(&self) -> &EnumBounds {
        &self.bounds
    }

    pub fn prime(&self) -> u64 {
        self.ring.prime
    }

    /// Ground-free monomials of exact topological degree `t`, canonically
    /// ordered.
    pub fn ground_free_basis(&self, kind: AlgebraKind, t: i64) -> Result<Arc<Vec<Monomial>>> {
        if t < 0 {
            return Ok(Arc::new(Vec::new()));
        }
        if t > self.bounds.t_max {
            return Err(Error::Range(format!(
                "degree t = {t} exceeds enumeration bound {}",
                self.bounds.t_max
            )));
        }
        if let Some(hit) = self.cache.read().unwrap().get(&(kind, t)) {
            return Ok(Arc::clone(hit));
        }
        let computed = Arc::new(self.enumerate(kind, t));
        let mut w = self.cache.write().unwrap();
        // idempotent: a racing fill computed the same canonical list
        let entry = w.entry((kind, t)).or_insert_with(|| Arc::clone(&computed));
        Ok(Arc::clone(entry))
    }

    fn enumerate(&self, kind: AlgebraKind, t: i64) -> Vec<Monomial> {
        let l = self.ring.prime;
        let mut out = Vec::new();
        match kind {
            AlgebraKind::P => {
                for xi in xi_exponents_of_degree(l, t) {
                    out.push(Monomial::from_parts(xi, TauSet::EMPTY, 0));
                }
            }
            AlgebraKind::E => {
                for tau in tau_sets_of_degree(l, t) {
                    out.push(Monomial::from_parts(Vec::new(), tau, 0));
                }
            }
            AlgebraKind::A => {
                // split t between the polynomial and exterior parts
                for xi_deg in 0..=t {
                    let taus = tau_sets_of_degree(l, t - xi_deg);
                    if taus.is_empty() {
                        continue;
                    }
                    for xi in xi_exponents_of_degree(l, xi_deg) {
                        for &tau in &taus {
                            out.push(Monomial::from_parts(xi.clone(), tau, 0));
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Complete basis of the given algebra in exact bidegree (t, u),
    /// including ground powers, optionally filtered by exterior count.
    pub fn basis(
        &self,
        kind: AlgebraKind,
        t: i64,
        u: i64,
        tau_count: Option<u32>,
    ) -> Result<Vec<Monomial>> {
        if u.abs() > self.bounds.u_abs_max {
            return Err(Error::Range(format!(
                "weight u = {u} exceeds enumeration bound {}",
                self.bounds.u_abs_max
            )));
        }
        let step = self.ring.weight_step();
        let free = self.ground_free_basis(kind, t)?;
        let mut out = Vec::new();
        for m in free.iter() {
            if let Some(filter) = tau_count {
                if m.tau_count() != filter {
                    continue;
                }
            }
            let deficit = m.weight(&self.ring) - u;
            if deficit < 0 || deficit % step != 0 {
                continue;
            }
            out.push(m.with_ground((deficit / step) as u32));
        }
        out.sort();
        Ok(out)
    }

    /// Full comultiplication, extended multiplicatively over the factors of
    /// `m` with graded signs; ground powers are carried as grouplike
    /// scalars on the left. Memoized per (algebra, monomial).
    pub fn comult(&self, kind: AlgebraKind, m: &Monomial) -> Arc<TensorExpression> {
        let key = (kind, m.clone());
        if let Some(hit) = self.comult_cache.read().unwrap().get(&key) {
            return Arc::clone(hit);
        }
        let l = self.ring.prime;
        let mut acc = TensorExpression::zero(l);
        acc.add_term(Monomial::ground_pow(m.ground()), Monomial::one(), 1);
        for (i, &e) in m.xi_exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            debug_assert!(kind != AlgebraKind::E);
            acc = acc.mul(&comult_xi(l, i + 1).pow(e));
        }
        for i in m.tau_set().iter() {
            debug_assert!(kind != AlgebraKind::P);
            acc = acc.mul(&comult_tau(l, kind, i));
        }
        let acc = Arc::new(acc);
        let mut w = self.comult_cache.write().unwrap();
        let entry = w.entry(key).or_insert_with(|| Arc::clone(&acc));
        Arc::clone(entry)
    }

    /// Reduced comultiplication: comult with the primitive boundary terms
    /// removed, landing in the tensor square of the augmentation coideal.
    pub fn reduced_comult(&self, kind: AlgebraKind, m: &Monomial) -> Arc<TensorExpression> {
        let key = (kind, m.clone());
        if let Some(hit) = self.reduced_cache.read().unwrap().get(&key) {
            return Arc::clone(hit);
        }
        let reduced = Arc::new(self.comult(kind, m).reduced());
        let mut w = self.reduced_cache.write().unwrap();
        let entry = w.entry(key).or_insert_with(|| Arc::clone(&reduced));
        Arc::clone(entry)
    }

    /// Expands (Delta (x) id) Delta(m) or (id (x) Delta) Delta(m).
    pub fn comult_iterated(&self, kind: AlgebraKind, m: &Monomial, left_first: bool) -> TriTensor {
        let outer = self.comult(kind, m);
        let mut out = TriTensor::zero(self.ring.prime);
        for ((a, b), c) in outer.terms() {
            let inner = if left_first {
                self.comult(kind, a)
            } else {
                self.comult(kind, b)
            };
            for ((x, y), c2) in inner.terms() {
                let coeff = c * c2 % self.ring.prime;
                if left_first {
                    out.add_term(x.clone(), y.clone(), b.clone(), coeff);
                } else {
                    out.add_term(a.clone(), x.clone(), y.clone(), coeff);
                }
            }
        }
        out
    }
}

/// All xi exponent vectors of total degree at most `t`, filtered to exact
/// degree by the caller; generated in ascending index order.
fn xi_exponents_of_degree(l: u64, t: i64) -> Vec<Vec<u32>> {
    // highest usable index: 2(l^k - 1) <= t
    let mut max_k = 0usize;
    let mut pw = l as i64;
    while 2 * (pw - 1) <= t {
        max_k += 1;
        pw *= l as i64;
    }
    let mut out = Vec::new();
    let mut current = vec![0u32; max_k];
    fn rec(l: i64, t_left: i64, k: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 0 {
            if t_left == 0 {
                out.push(current.clone());
            }
            return;
        }
        let deg = 2 * (l.pow(k as u32) - 1);
        let max_e = if deg > 0 { t_left / deg } else { 0 };
        for e in 0..=max_e {
            current[k - 1] = e as u32;
            rec(l, t_left - e * deg, k - 1, current, out);
        }
        current[k - 1] = 0;
    }
    rec(l as i64, t, max_k, &mut current, &mut out);
    out
}

/// All squarefree tau index sets of exact total degree `t`.
fn tau_sets_of_degree(l: u64, t: i64) -> Vec<TauSet> {
    if t < 0 {
        return Vec::new();
    }
    let mut degs = Vec::new();
    let mut i = 0u32;
    loop {
        let d = 2 * (l as i64).pow(i) - 1;
        if d > t {
            break;
        }
        degs.push((i, d));
        i += 1;
    }
    let mut out = Vec::new();
    fn rec(degs: &[(u32, i64)], idx: usize, t_left: i64, acc: TauSet, out: &mut Vec<TauSet>) {
        if t_left == 0 {
            out.push(acc);
            return;
        }
        if idx >= degs.len() || t_left < 0 {
            return;
        }
        // skip degs[idx]
        rec(degs, idx + 1, t_left, acc, out);
        // take degs[idx]
        let (i, d) = degs[idx];
        rec(degs, idx + 1, t_left - d, TauSet(acc.0 | (1 << i)), out);
    }
    rec(&degs, 0, t, TauSet::EMPTY, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::super::ground::BaseField;
    use super::*;
    use proptest::prelude::*;

    fn alg_c3() -> DualAlgebra {
        DualAlgebra::new(
            GroundRing::new(BaseField::C, 3).unwrap(),
            EnumBounds::default(),
        )
    }

    #[test]
    fn unit_spans_p_in_degree_zero() {
        let alg = alg_c3();
        let b = alg.basis(AlgebraKind::P, 0, 0, None).unwrap();
        assert_eq!(b, vec![Monomial::one()]);
    }

    #[test]
    fn tau0_spans_e_in_degree_one_zero() {
        // |tau_0| = (2l^0 - 1, l^0 - 1) = (1, 0)
        let alg = alg_c3();
        let b = alg.basis(AlgebraKind::E, 1, 0, None).unwrap();
        assert_eq!(b, vec![Monomial::tau_gen(0)]);
    }

    #[test]
    fn xi1_spans_a_in_degree_four_two() {
        // |xi_1| = (2l - 2, l - 1) = (4, 2)
        let alg = alg_c3();
        let b = alg.basis(AlgebraKind::A, 4, 2, None).unwrap();
        assert_eq!(b, vec![Monomial::xi_gen(1)]);
    }

    #[test]
    fn ground_powers_fill_lower_weights() {
        let alg = alg_c3();
        // weight 1 in degree 4: tau * xi_1
        let b = alg.basis(AlgebraKind::A, 4, 1, None).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].ground(), 1);
        // weight 3 in degree 4: nothing (weights only go down)
        assert!(alg.basis(AlgebraKind::A, 4, 3, None).unwrap().is_empty());
    }

    #[test]
    fn out_of_bounds_requests_are_range_errors() {
        let alg = DualAlgebra::new(
            GroundRing::new(BaseField::C, 3).unwrap(),
            EnumBounds {
                s_max: 4,
                t_max: 10,
                u_abs_max: 10,
            },
        );
        assert!(matches!(
            alg.ground_free_basis(AlgebraKind::A, 11),
            Err(Error::Range(_))
        ));
        assert!(matches!(
            alg.basis(AlgebraKind::A, 4, 11, None),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn comult_of_xi1_squared_matches_symbolic_square() {
        let alg = alg_c3();
        let sq = Monomial::xi_pow(1, 2);
        let direct = alg.comult(AlgebraKind::P, &sq);
        let via_square = {
            let single = alg.comult(AlgebraKind::P, &Monomial::xi_gen(1));
            single.mul(&single)
        };
        assert_eq!(*direct, via_square);
        // (x+y)^2 = x^2 + 2xy + y^2
        let mut expect = TensorExpression::zero(3);
        expect.add_term(Monomial::xi_pow(1, 2), Monomial::one(), 1);
        expect.add_term(Monomial::xi_gen(1), Monomial::xi_gen(1), 2);
        expect.add_term(Monomial::one(), Monomial::xi_pow(1, 2), 1);
        assert_eq!(*direct, expect);
    }

    #[test]
    fn coassociativity_on_products_of_exteriors() {
        // the sign-critical case: tau_0 tau_1
        let alg = alg_c3();
        let m = Monomial::from_parts(vec![], TauSet(0b11), 0);
        for kind in [AlgebraKind::A, AlgebraKind::E] {
            let lhs = alg.comult_iterated(kind, &m, true);
            let rhs = alg.comult_iterated(kind, &m, false);
            assert_eq!(lhs, rhs, "coassociativity fails for {kind}");
        }
    }

    #[test]
    fn counit_collapses_to_identity() {
        let alg = alg_c3();
        let m = Monomial::from_parts(vec![2, 1], TauSet(0b101), 1);
        let d = alg.comult(AlgebraKind::A, &m);
        let left = d.counit_left();
        assert_eq!(left.len(), 1);
        let (only, c) = left.iter().next().unwrap();
        assert_eq!((only, *c), (&m, 1));
        let right = d.counit_right();
        let (only, c) = right.iter().next().unwrap();
        assert_eq!((only, *c), (&m, 1));
    }

    #[test]
    fn tau_count_is_conserved_by_comult() {
        let alg = alg_c3();
        for t in 0..=12 {
            for m in alg.ground_free_basis(AlgebraKind::A, t).unwrap().iter() {
                for ((a, b), _) in alg.comult(AlgebraKind::A, m).terms() {
                    assert_eq!(a.tau_count() + b.tau_count(), m.tau_count());
                }
            }
        }
    }

    #[test]
    fn comult_is_degree_additive() {
        let alg = alg_c3();
        let ring = *alg.ring();
        for t in 0..=12 {
            for m in alg.ground_free_basis(AlgebraKind::A, t).unwrap().iter() {
                for ((a, b), _) in alg.comult(AlgebraKind::A, m).terms() {
                    assert_eq!(a.t_degree(3) + b.t_degree(3), m.t_degree(3));
                    assert_eq!(a.weight(&ring) + b.weight(&ring), m.weight(&ring));
                }
            }
        }
    }

    proptest! {
        /// Coassociativity on every basis monomial in a bounded range,
        /// exercised across both base fields.
        #[test]
        fn coassociativity_holds(t in 0i64..14, base_r in any::<bool>()) {
            let base = if base_r { BaseField::R } else { BaseField::C };
            let alg = DualAlgebra::new(
                GroundRing::new(base, 3).unwrap(),
                EnumBounds::default(),
            );
            for kind in [AlgebraKind::A, AlgebraKind::P, AlgebraKind::E] {
                for m in alg.ground_free_basis(kind, t).unwrap().iter() {
                    let lhs = alg.comult_iterated(kind, m, true);
                    let rhs = alg.comult_iterated(kind, m, false);
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
