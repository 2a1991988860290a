//! Comultiplication formulas and the coaction on Cotor_E generators.

use super::basis::AlgebraKind;
use super::monomial::Monomial;
use super::tensor::TensorExpression;

/// Delta(xi_n) = sum_{i=0}^{n} xi_{n-i}^{l^i} (x) xi_i, with xi_0 = 1.
pub(super) fn comult_xi(l: u64, n: usize) -> TensorExpression {
    let mut e = TensorExpression::zero(l);
    for i in 0..=n {
        let pow = l.pow(i as u32) as u32;
        e.add_term(Monomial::xi_pow(n - i, pow), Monomial::xi_pow(i, 1), 1);
    }
    e
}

/// Delta(tau_n) = tau_n (x) 1 + sum_{i=0}^{n} xi_{n-i}^{l^i} (x) tau_i.
///
/// In the exterior quotient E the xi_i vanish, leaving tau_n primitive.
pub(super) fn comult_tau(l: u64, kind: AlgebraKind, n: u32) -> TensorExpression {
    let mut e = TensorExpression::zero(l);
    e.add_term(Monomial::tau_gen(n), Monomial::one(), 1);
    match kind {
        AlgebraKind::E => {
            e.add_term(Monomial::one(), Monomial::tau_gen(n), 1);
        }
        AlgebraKind::A => {
            for i in 0..=n {
                let pow = l.pow(i) as u32;
                e.add_term(
                    Monomial::xi_pow((n - i) as usize, pow),
                    Monomial::tau_gen(i),
                    1,
                );
            }
        }
        AlgebraKind::P => unreachable!("P contains no exterior generators"),
    }
    e
}

/// The P-coaction on the polynomial generators of Cotor_E:
/// psi(a_n) = sum_i xi_{n-i}^{l^i} (x) a_i.
///
/// Returned as pairs (P-monomial, generator index, coefficient); the
/// extension to monomials in the a_i lives with the comodule machinery.
pub fn cotor_e_coaction(l: u64, n: usize) -> Vec<(Monomial, usize, u64)> {
    (0..=n)
        .map(|i| {
            let pow = l.pow(i as u32) as u32;
            (Monomial::xi_pow(n - i, pow), i, 1)
        })
        .collect()
}
