//! Comodule coefficients for the cobar complex.
//!
//! Three comodules cover everything in scope: the trivial comodule (the
//! ground ring itself), the polynomial comodule on the Cotor_E generators
//! a_i with the P-coaction psi(a_n) = sum xi_{n-i}^{l^i} (x) a_i, and the
//! associated-graded coefficients Z/l[q_0, q_1, ...] of the I-adic
//! filtration, which carry the same coaction formula with a shifted
//! internal grading (|q_i| = (1, 2l^i - 2) against |a_i| = (1, 2l^i - 1)).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::steenrod::{cotor_e_coaction, Monomial};

/// A monomial in the comodule generators, as an exponent vector
/// (`exps[i]` is the exponent of a_i resp. q_i). Trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GenMono(Vec<u32>);

impl GenMono {
    pub fn unit() -> GenMono {
        GenMono(Vec::new())
    }

    pub fn generator(i: usize) -> GenMono {
        let mut v = vec![0; i + 1];
        v[i] = 1;
        GenMono(v)
    }

    pub fn from_exps(mut exps: Vec<u32>) -> GenMono {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        GenMono(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Total polynomial degree.
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    fn mul(&self, other: &GenMono) -> GenMono {
        let mut v = vec![0u32; self.0.len().max(other.0.len())];
        for (i, &e) in self.0.iter().enumerate() {
            v[i] += e;
        }
        for (i, &e) in other.0.iter().enumerate() {
            v[i] += e;
        }
        GenMono(v)
    }

    pub fn format(&self, symbol: &str) -> String {
        if self.is_unit() {
            return "1".to_string();
        }
        self.0
            .iter()
            .enumerate()
            .filter(|&(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("{symbol}{i}")
                } else {
                    format!("{symbol}{i}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("·")
    }
}

/// An F_l-linear combination of pairs (Hopf-algebra monomial, comodule
/// generator monomial); the target of the coaction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoactionExpr {
    prime: u64,
    terms: BTreeMap<(Monomial, GenMono), u64>,
}

impl CoactionExpr {
    fn zero(prime: u64) -> Self {
        CoactionExpr {
            prime,
            terms: BTreeMap::new(),
        }
    }

    fn one(prime: u64) -> Self {
        let mut e = Self::zero(prime);
        e.add_term(Monomial::one(), GenMono::unit(), 1);
        e
    }

    fn add_term(&mut self, hopf: Monomial, gen: GenMono, coeff: u64) {
        let coeff = coeff % self.prime;
        if coeff == 0 {
            return;
        }
        let key = (hopf, gen);
        let e = self.terms.entry(key.clone()).or_insert(0);
        *e = (*e + coeff) % self.prime;
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    /// Product in Gamma (x) M; every participating monomial here is even,
    /// so no signs arise.
    fn mul(&self, other: &CoactionExpr) -> CoactionExpr {
        let mut out = CoactionExpr::zero(self.prime);
        for ((p1, g1), c1) in self.terms() {
            for ((p2, g2), c2) in other.terms() {
                let Some((sign, p)) = p1.mul(p2) else {
                    continue;
                };
                debug_assert_eq!(sign, 1);
                out.add_term(p, g1.mul(g2), c1 * c2 % self.prime);
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Monomial, GenMono), u64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    /// Drops unit Hopf factors, leaving the reduced coaction.
    fn reduced(&self) -> CoactionExpr {
        let mut out = CoactionExpr::zero(self.prime);
        for ((p, g), c) in self.terms() {
            if p.is_ground_only() {
                debug_assert_eq!(p.ground(), 0);
                continue;
            }
            out.add_term(p.clone(), g.clone(), c);
        }
        out
    }
}

/// Which comodule the cobar complex takes coefficients in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComoduleKind {
    /// The ground ring with trivial coaction.
    Trivial,
    /// P(a_0, a_1, ...), |a_i| = (1, 2l^i - 1, l^i - 1), graded by
    /// polynomial degree.
    CotorE,
    /// Z/l[q_0, q_1, ...], |q_i| = (1, 2(l^i - 1)) with weight l^i - 1,
    /// graded by Novikov degree.
    Novikov,
}

/// A concrete comodule over P with on-demand monomial generation and a
/// memoized coaction; coassociativity and counitality of the coaction are
/// checked on the generators at construction time.
#[derive(Debug)]
pub struct Comodule {
    kind: ComoduleKind,
    prime: u64,
    name: String,
    coaction_cache: RwLock<HashMap<GenMono, Arc<CoactionExpr>>>,
}

impl Comodule {
    pub fn new(kind: ComoduleKind, prime: u64) -> Result<Self> {
        let name = match kind {
            ComoduleKind::Trivial => "trivial".to_string(),
            ComoduleKind::CotorE => "P(a0,a1,...)".to_string(),
            ComoduleKind::Novikov => "Z/l[q0,q1,...]".to_string(),
        };
        let c = Comodule {
            kind,
            prime,
            name,
            coaction_cache: RwLock::new(HashMap::new()),
        };
        // generator 4 already involves xi powers up to l^4, enough to
        // exercise every branch of the coaction formula
        c.validate_generators(4)?;
        Ok(c)
    }

    pub fn kind(&self) -> ComoduleKind {
        self.kind
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Generator symbol for display.
    pub fn symbol(&self) -> &'static str {
        match self.kind {
            ComoduleKind::Trivial => "1",
            ComoduleKind::CotorE => "a",
            ComoduleKind::Novikov => "q",
        }
    }

    /// Auxiliary grading of a generator monomial: polynomial degree for
    /// CotorE, Novikov degree for Novikov, 0 for the trivial comodule.
    pub fn gen_aux(&self, g: &GenMono) -> i64 {
        match self.kind {
            ComoduleKind::Trivial => 0,
            _ => g.degree(),
        }
    }

    /// Topological degree of a generator monomial.
    pub fn gen_t(&self, g: &GenMono) -> i64 {
        let l = self.prime as i64;
        match self.kind {
            ComoduleKind::Trivial => 0,
            ComoduleKind::CotorE => g
                .exps()
                .iter()
                .enumerate()
                .map(|(i, &e)| e as i64 * (2 * l.pow(i as u32) - 1))
                .sum(),
            ComoduleKind::Novikov => g
                .exps()
                .iter()
                .enumerate()
                .map(|(i, &e)| e as i64 * (2 * l.pow(i as u32) - 2))
                .sum(),
        }
    }

    /// Motivic weight of a generator monomial (a_i and q_i both carry
    /// weight l^i - 1).
    pub fn gen_weight(&self, g: &GenMono) -> i64 {
        let l = self.prime as i64;
        match self.kind {
            ComoduleKind::Trivial => 0,
            _ => g
                .exps()
                .iter()
                .enumerate()
                .map(|(i, &e)| e as i64 * (l.pow(i as u32) - 1))
                .sum(),
        }
    }

    /// All generator monomials of exact auxiliary degree `aux` and exact
    /// topological degree `t`.
    pub fn generators(&self, aux: i64, t: i64) -> Vec<GenMono> {
        match self.kind {
            ComoduleKind::Trivial => {
                if aux == 0 && t == 0 {
                    vec![GenMono::unit()]
                } else {
                    Vec::new()
                }
            }
            ComoduleKind::CotorE | ComoduleKind::Novikov => {
                if aux < 0 || t < 0 {
                    return Vec::new();
                }
                // reduced degree: strip one unit of t per a-exponent so both
                // families enumerate over the q-style degrees 2(l^i - 1)
                let reduced_t = match self.kind {
                    ComoduleKind::CotorE => t - aux,
                    _ => t,
                };
                if reduced_t < 0 {
                    return Vec::new();
                }
                let l = self.prime as i64;
                let mut out = Vec::new();
                // e_i for i >= 1 with sum e_i * 2(l^i - 1) = reduced_t,
                // then e_0 = aux - sum e_i must be >= 0
                let mut max_k = 0usize;
                let mut pw = l;
                while 2 * (pw - 1) <= reduced_t {
                    max_k += 1;
                    pw *= l;
                }
                let mut current = vec![0u32; max_k + 1];
                enumerate_high(l, reduced_t, max_k, aux, &mut current, &mut out);
                out.sort();
                out
            }
        }
    }

    /// Full coaction on a generator monomial, extended multiplicatively;
    /// memoized.
    pub fn coaction(&self, g: &GenMono) -> Arc<CoactionExpr> {
        if let Some(hit) = self.coaction_cache.read().unwrap().get(g) {
            return Arc::clone(hit);
        }
        let expr = match self.kind {
            ComoduleKind::Trivial => Arc::new(CoactionExpr::one(self.prime)),
            ComoduleKind::CotorE | ComoduleKind::Novikov => {
                let mut acc = CoactionExpr::one(self.prime);
                for (i, &e) in g.exps().iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let mut gen_expr = CoactionExpr::zero(self.prime);
                    for (p, j, c) in cotor_e_coaction(self.prime, i) {
                        gen_expr.add_term(p, GenMono::generator(j), c);
                    }
                    for _ in 0..e {
                        acc = acc.mul(&gen_expr);
                    }
                }
                Arc::new(acc)
            }
        };
        let mut w = self.coaction_cache.write().unwrap();
        let entry = w.entry(g.clone()).or_insert_with(|| Arc::clone(&expr));
        Arc::clone(entry)
    }

    /// Reduced coaction (unit Hopf factors dropped).
    pub fn reduced_coaction(&self, g: &GenMono) -> CoactionExpr {
        self.coaction(g).reduced()
    }

    /// Counitality and coassociativity of the coaction on single
    /// generators, verified symbolically.
    fn validate_generators(&self, max_index: usize) -> Result<()> {
        if self.kind == ComoduleKind::Trivial {
            return Ok(());
        }
        let alg = crate::steenrod::DualAlgebra::new(
            crate::steenrod::GroundRing::new(crate::steenrod::BaseField::C, self.prime)
                .expect("validated prime"),
            crate::steenrod::EnumBounds::default(),
        );
        for n in 0..=max_index {
            let g = GenMono::generator(n);
            let psi = self.coaction(&g);
            // counit: the unique unit-Hopf term must be 1 (x) g
            let unit_terms: Vec<_> = psi
                .terms()
                .filter(|((p, _), _)| p.is_ground_only())
                .collect();
            if unit_terms.len() != 1 || unit_terms[0].0 .1 != g || unit_terms[0].1 != 1 {
                return Err(Error::Config(format!(
                    "coaction on generator {n} is not counital"
                )));
            }
            // coassociativity: (Delta (x) id) psi = (id (x) psi) psi
            let mut lhs: BTreeMap<(Monomial, Monomial, GenMono), u64> = BTreeMap::new();
            let mut rhs = lhs.clone();
            for ((p, h), c) in psi.terms() {
                for ((p1, p2), c2) in alg.comult(crate::steenrod::AlgebraKind::P, p).terms() {
                    add3(
                        &mut lhs,
                        p1.clone(),
                        p2.clone(),
                        h.clone(),
                        c * c2,
                        self.prime,
                    );
                }
                for ((p2, h2), c2) in self.coaction(h).terms() {
                    add3(
                        &mut rhs,
                        p.clone(),
                        p2.clone(),
                        h2.clone(),
                        c * c2,
                        self.prime,
                    );
                }
            }
            if lhs != rhs {
                return Err(Error::Config(format!(
                    "coaction on generator {n} is not coassociative"
                )));
            }
        }
        Ok(())
    }
}

fn add3(
    map: &mut BTreeMap<(Monomial, Monomial, GenMono), u64>,
    a: Monomial,
    b: Monomial,
    g: GenMono,
    coeff: u64,
    l: u64,
) {
    let coeff = coeff % l;
    if coeff == 0 {
        return;
    }
    let key = (a, b, g);
    let e = map.entry(key.clone()).or_insert(0);
    *e = (*e + coeff) % l;
    if *e == 0 {
        map.remove(&key);
    }
}

fn enumerate_high(
    l: i64,
    t_left: i64,
    k: usize,
    aux: i64,
    current: &mut Vec<u32>,
    out: &mut Vec<GenMono>,
) {
    if k == 0 {
        if t_left == 0 {
            let high_sum: i64 = current[1..].iter().map(|&e| e as i64).sum();
            let e0 = aux - high_sum;
            if e0 >= 0 {
                current[0] = e0 as u32;
                out.push(GenMono::from_exps(current.clone()));
                current[0] = 0;
            }
        }
        return;
    }
    let deg = 2 * (l.pow(k as u32) - 1);
    let max_e = t_left / deg;
    for e in 0..=max_e {
        current[k] = e as u32;
        enumerate_high(l, t_left - e * deg, k - 1, aux, current, out);
    }
    current[k] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_comodule_has_one_generator() {
        let c = Comodule::new(ComoduleKind::Trivial, 3).unwrap();
        assert_eq!(c.generators(0, 0), vec![GenMono::unit()]);
        assert!(c.generators(0, 1).is_empty());
        assert!(c.generators(1, 0).is_empty());
    }

    #[test]
    fn cotor_e_generator_degrees_at_l3() {
        let c = Comodule::new(ComoduleKind::CotorE, 3).unwrap();
        // a_0: (1, 1, 0); a_1: (1, 5, 2)
        let a0 = GenMono::generator(0);
        let a1 = GenMono::generator(1);
        assert_eq!((c.gen_aux(&a0), c.gen_t(&a0), c.gen_weight(&a0)), (1, 1, 0));
        assert_eq!((c.gen_aux(&a1), c.gen_t(&a1), c.gen_weight(&a1)), (1, 5, 2));
        // a_0 a_1: (2, 6, 2)
        let a01 = GenMono::from_exps(vec![1, 1]);
        assert_eq!(
            (c.gen_aux(&a01), c.gen_t(&a01), c.gen_weight(&a01)),
            (2, 6, 2)
        );
        assert_eq!(c.generators(2, 6), vec![a01]);
    }

    #[test]
    fn novikov_generator_degrees_at_l3() {
        let c = Comodule::new(ComoduleKind::Novikov, 3).unwrap();
        // q_0: (1, 0, 0); q_1: (1, 4, 2)
        let q0 = GenMono::generator(0);
        let q1 = GenMono::generator(1);
        assert_eq!((c.gen_aux(&q0), c.gen_t(&q0), c.gen_weight(&q0)), (1, 0, 0));
        assert_eq!((c.gen_aux(&q1), c.gen_t(&q1), c.gen_weight(&q1)), (1, 4, 2));
        // q_0^3 is the unique Novikov-degree-3 monomial in internal degree 0
        assert_eq!(c.generators(3, 0), vec![GenMono::from_exps(vec![3])]);
    }

    #[test]
    fn coaction_extends_multiplicatively() {
        let c = Comodule::new(ComoduleKind::CotorE, 3).unwrap();
        // psi(a_0 a_1) = psi(a_0) psi(a_1)
        //             = (1 (x) a_0)(xi_1 (x) a_0 + 1 (x) a_1)
        //             = xi_1 (x) a_0^2 + 1 (x) a_0 a_1
        let g = GenMono::from_exps(vec![1, 1]);
        let psi = c.coaction(&g);
        let mut expect = CoactionExpr::zero(3);
        expect.add_term(Monomial::xi_gen(1), GenMono::from_exps(vec![2]), 1);
        expect.add_term(Monomial::one(), GenMono::from_exps(vec![1, 1]), 1);
        assert_eq!(*psi, expect);
    }

    #[test]
    fn coaction_preserves_gradings() {
        let c = Comodule::new(ComoduleKind::CotorE, 3).unwrap();
        let ring = crate::steenrod::GroundRing::new(crate::steenrod::BaseField::C, 3).unwrap();
        for aux in 0..4 {
            for t in 0..10 {
                for g in c.generators(aux, t) {
                    for ((p, h), _) in c.coaction(&g).terms() {
                        assert_eq!(c.gen_aux(h), aux);
                        assert_eq!(p.t_degree(3) + c.gen_t(h), t);
                        assert_eq!(p.weight(&ring) + c.gen_weight(h), c.gen_weight(&g));
                    }
                }
            }
        }
    }
}
