//! Integer matrices, Smith normal form and finitely presented abelian groups.
//!
//! Relation matrices use arbitrary-precision integers throughout: the
//! l-power orders appearing in chart entries are small in practice, but the
//! lattice manipulations below (preimages, solving inside lattices) can blow
//! intermediate entries past machine words.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Row-major integer matrix. `m[r][c]` is the entry in row `r`, column `c`.
pub type IntMat = Vec<Vec<BigInt>>;

pub fn int_mat(rows: usize, cols: usize) -> IntMat {
    vec![vec![BigInt::zero(); cols]; rows]
}

pub fn identity_mat(n: usize) -> IntMat {
    let mut m = int_mat(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = BigInt::one();
    }
    m
}

pub fn mat_mul(a: &IntMat, b: &IntMat) -> IntMat {
    let rows = a.len();
    let inner = if rows > 0 { a[0].len() } else { 0 };
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    debug_assert_eq!(inner, b.len());
    let mut out = int_mat(rows, cols);
    for r in 0..rows {
        for k in 0..inner {
            if a[r][k].is_zero() {
                continue;
            }
            for c in 0..cols {
                if !b[k][c].is_zero() {
                    let prod = &a[r][k] * &b[k][c];
                    out[r][c] += prod;
                }
            }
        }
    }
    out
}

fn mat_vec(a: &IntMat, v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Smith normal form `S = P * A * Q` with unimodular `P`, `Q`.
#[derive(Debug, Clone)]
pub struct Snf {
    /// Diagonal entries `d_1 | d_2 | ... | d_rank`, all positive.
    pub diag: Vec<BigInt>,
    pub rank: usize,
    pub p: IntMat,
    pub q: IntMat,
}

/// Computes the Smith normal form of an integer matrix.
pub fn snf(a: &IntMat) -> Snf {
    let rows = a.len();
    let cols = if rows > 0 { a[0].len() } else { 0 };
    let mut m = a.clone();
    let mut p = identity_mat(rows);
    let mut q = identity_mat(cols);

    let limit = rows.min(cols);
    let mut k = 0;
    while k < limit {
        let Some((pi, pj)) = min_abs_pivot(&m, k) else {
            break;
        };
        swap_rows(&mut m, &mut p, k, pi);
        swap_cols(&mut m, &mut q, k, pj);
        loop {
            // clear column k below and above
            let mut dirty = false;
            for i in 0..rows {
                if i != k && !m[i][k].is_zero() {
                    let f = div_round(&m[i][k], &m[k][k]);
                    add_row(&mut m, &mut p, i, k, &-f);
                    if !m[i][k].is_zero() {
                        // remainder became the new, smaller pivot
                        swap_rows(&mut m, &mut p, k, i);
                        dirty = true;
                    }
                }
            }
            for j in 0..cols {
                if j != k && !m[k][j].is_zero() {
                    let f = div_round(&m[k][j], &m[k][k]);
                    add_col(&mut m, &mut q, j, k, &-f);
                    if !m[k][j].is_zero() {
                        swap_cols(&mut m, &mut q, k, j);
                        dirty = true;
                    }
                }
            }
            if !dirty && row_col_clear(&m, k) {
                break;
            }
        }
        if m[k][k].is_negative() {
            negate_row(&mut m, &mut p, k);
        }
        // divisibility: pivot must divide the rest of the submatrix
        if let Some(i) = find_nondivisible_row(&m, k) {
            let one = BigInt::one();
            add_row(&mut m, &mut p, k, i, &one);
            continue; // restart elimination at the same k
        }
        k += 1;
    }

    let diag: Vec<BigInt> = (0..limit)
        .map(|i| m[i][i].clone())
        .take_while(|d| !d.is_zero())
        .collect();
    let rank = diag.len();
    Snf { diag, rank, p, q }
}

fn min_abs_pivot(m: &IntMat, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..m.len() {
        for j in k..m[i].len() {
            if m[i][j].is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if m[i][j].abs() < m[bi][bj].abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

fn row_col_clear(m: &IntMat, k: usize) -> bool {
    let rows = m.len();
    let cols = m[0].len();
    (0..rows).all(|i| i == k || m[i][k].is_zero()) && (0..cols).all(|j| j == k || m[k][j].is_zero())
}

fn find_nondivisible_row(m: &IntMat, k: usize) -> Option<usize> {
    let d = m[k][k].clone();
    (k + 1..m.len()).find(|&i| m[i][k + 1..].iter().any(|x| !(x % &d).is_zero()))
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // truncating division is fine: we only need remainders to shrink
    a / b
}

fn swap_rows(m: &mut IntMat, p: &mut IntMat, a: usize, b: usize) {
    if a != b {
        m.swap(a, b);
        p.swap(a, b);
    }
}

fn swap_cols(m: &mut IntMat, q: &mut IntMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for row in m.iter_mut() {
        row.swap(a, b);
    }
    for row in q.iter_mut() {
        row.swap(a, b);
    }
}

/// row_i += f * row_j (also applied to P)
fn add_row(m: &mut IntMat, p: &mut IntMat, i: usize, j: usize, f: &BigInt) {
    for c in 0..m[j].len() {
        let add = f * &m[j][c];
        m[i][c] += add;
    }
    for c in 0..p[j].len() {
        let add = f * &p[j][c];
        p[i][c] += add;
    }
}

/// col_j += f * col_k (also applied to Q)
fn add_col(m: &mut IntMat, q: &mut IntMat, j: usize, k: usize, f: &BigInt) {
    for row in m.iter_mut() {
        let add = f * &row[k];
        row[j] += add;
    }
    for row in q.iter_mut() {
        let add = f * &row[k];
        row[j] += add;
    }
}

fn negate_row(m: &mut IntMat, p: &mut IntMat, k: usize) {
    for x in m[k].iter_mut() {
        *x = -x.clone();
    }
    for x in p[k].iter_mut() {
        *x = -x.clone();
    }
}

/// Basis of the integer kernel of `a`, returned as columns.
pub fn kernel_basis(a: &IntMat) -> Vec<Vec<BigInt>> {
    if a.is_empty() {
        return Vec::new();
    }
    let cols = a[0].len();
    let s = snf(a);
    // kernel = Q * span(e_{rank}..e_{cols-1})
    (s.rank..cols)
        .map(|j| (0..cols).map(|i| s.q[i][j].clone()).collect())
        .collect()
}

/// Generating set (columns) of the lattice `{x : D x \in span(L)}`.
///
/// `d` is `t x s_cols` (rows may be empty when `t = 0`), `l_cols` are
/// columns in `Z^t`. The result spans the preimage lattice but is not
/// necessarily a basis.
pub fn preimage_lattice(d: &IntMat, s_cols: usize, l_cols: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let t = d.len();
    let s = s_cols;
    if t == 0 {
        // no constraints
        return (0..s)
            .map(|i| {
                (0..s)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
    }
    // stack [D | L] and project its kernel onto the first s coordinates
    let mut stacked = int_mat(t, s + l_cols.len());
    for r in 0..t {
        for c in 0..s {
            stacked[r][c] = d[r][c].clone();
        }
        for (c, col) in l_cols.iter().enumerate() {
            stacked[r][s + c] = col[r].clone();
        }
    }
    kernel_basis(&stacked)
        .into_iter()
        .map(|v| v[..s].to_vec())
        .collect()
}

/// One solution `x` of `A x = b`, if any.
pub fn solve_exact(a: &IntMat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let rows = a.len();
    let cols = if rows > 0 { a[0].len() } else { 0 };
    let s = snf(a);
    let pb = mat_vec(&s.p, b);
    let mut y = vec![BigInt::zero(); cols];
    for i in 0..rows {
        if i < s.rank {
            if (&pb[i] % &s.diag[i]).is_zero() {
                y[i] = &pb[i] / &s.diag[i];
            } else {
                return None;
            }
        } else if !pb[i].is_zero() {
            return None;
        }
    }
    Some(mat_vec(&s.q, &y))
}

/// Invariant factors of the abelian group `Z^gens / span(relations)`.
///
/// Factors come back normalized: entries `> 1` first, each dividing the
/// next, then one `0` per infinite cyclic summand. Trivial factors are
/// dropped.
pub fn quotient_invariants(gens: usize, relations: &[Vec<BigInt>]) -> Vec<BigInt> {
    if gens == 0 {
        return Vec::new();
    }
    let mut m = int_mat(gens, relations.len().max(1));
    for (c, rel) in relations.iter().enumerate() {
        debug_assert_eq!(rel.len(), gens);
        for r in 0..gens {
            m[r][c] = rel[r].clone();
        }
    }
    let s = snf(&m);
    let mut factors: Vec<BigInt> = s.diag.iter().filter(|d| !d.is_one()).cloned().collect();
    for _ in s.rank..gens {
        factors.push(BigInt::zero());
    }
    factors
}

/// A finitely presented abelian group: `Z^generators / span(relations)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianPresentation {
    pub generators: usize,
    /// Relations as column vectors of length `generators`.
    pub relations: Vec<Vec<BigInt>>,
    /// Populated by [`FiniteAbelianPresentation::smith_normalize`]; sorted by
    /// divisibility with `0` for each infinite cyclic factor.
    pub invariant_factors: Option<Vec<BigInt>>,
}

impl FiniteAbelianPresentation {
    pub fn new(generators: usize, relations: Vec<Vec<BigInt>>) -> Self {
        FiniteAbelianPresentation {
            generators,
            relations,
            invariant_factors: None,
        }
    }

    pub fn from_orders(orders: &[u64]) -> Self {
        let n = orders.len();
        let relations = orders
            .iter()
            .enumerate()
            .filter(|&(_, &o)| o != 0)
            .map(|(i, &o)| {
                let mut col = vec![BigInt::zero(); n];
                col[i] = BigInt::from(o);
                col
            })
            .collect();
        FiniteAbelianPresentation::new(n, relations)
    }

    /// Normalizes to the canonical diagonal presentation.
    ///
    /// Idempotent: normalizing a normalized presentation returns an equal
    /// value. The group isomorphism class is preserved.
    pub fn smith_normalize(&self) -> FiniteAbelianPresentation {
        let factors = quotient_invariants(self.generators, &self.relations);
        let n = factors.len();
        let relations = factors
            .iter()
            .enumerate()
            .filter(|(_, f)| !f.is_zero())
            .map(|(i, f)| {
                let mut col = vec![BigInt::zero(); n];
                col[i] = f.clone();
                col
            })
            .collect();
        FiniteAbelianPresentation {
            generators: n,
            relations,
            invariant_factors: Some(factors),
        }
    }

    /// Order of the torsion subgroup (product of the finite invariant factors).
    pub fn torsion_order(&self) -> BigInt {
        let factors = match &self.invariant_factors {
            Some(f) => f.clone(),
            None => quotient_invariants(self.generators, &self.relations),
        };
        factors.iter().filter(|f| !f.is_zero()).product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn mat(rows: &[&[i64]]) -> IntMat {
        rows.iter()
            .map(|r| r.iter().map(|&x| big(x)).collect())
            .collect()
    }

    #[test]
    fn snf_diagonal_divisibility_and_transforms() {
        let a = mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let s = snf(&a);
        for w in s.diag.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        // S = P A Q
        let paq = mat_mul(&mat_mul(&s.p, &a), &s.q);
        for (i, row) in paq.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let expect = if i == j && i < s.diag.len() {
                    s.diag[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(*v, expect, "at ({i},{j})");
            }
        }
    }

    #[test]
    fn single_relation_three_x() {
        let p = FiniteAbelianPresentation::new(1, vec![vec![big(3)]]);
        let n = p.smith_normalize();
        assert_eq!(n.invariant_factors.as_ref().unwrap(), &vec![big(3)]);
    }

    #[test]
    fn diagonal_three_and_nine() {
        let p = FiniteAbelianPresentation::new(2, vec![vec![big(3), big(0)], vec![big(0), big(9)]]);
        let n = p.smith_normalize();
        assert_eq!(n.invariant_factors.as_ref().unwrap(), &vec![big(3), big(9)]);
        assert_eq!(n.torsion_order(), big(27));
    }

    /// Oracle: enumerate the quotient Z^2 / <(3,3),(0,9)> directly and count
    /// elements of each order; compare with the invariant-factor answer.
    #[test]
    fn mixed_relations_cross_checked_by_enumeration() {
        let rels = vec![vec![big(3), big(3)], vec![big(0), big(9)]];
        let p = FiniteAbelianPresentation::new(2, rels);
        let n = p.smith_normalize();
        let factors: Vec<u64> = n
            .invariant_factors
            .as_ref()
            .unwrap()
            .iter()
            .map(|f| u64::try_from(f).unwrap())
            .collect();

        // membership of (a, b) in the relation lattice: (a,b) = x(3,3) + y(0,9)
        let in_lattice = |a: i64, b: i64| a % 3 == 0 && (b - a) % 9 == 0;
        // enumerate cosets of Z^2 mod the lattice, representatives mod 27
        let mut orders_direct = std::collections::BTreeMap::new();
        let mut seen = std::collections::BTreeSet::new();
        for a in 0..27i64 {
            for b in 0..27i64 {
                // canonical representative: smallest (a', b') in the coset
                let mut canon = (a, b);
                for x in 0..27i64 {
                    for y in 0..27i64 {
                        let ca = (a - 3 * x).rem_euclid(27);
                        let cb = (b - 3 * x - 9 * y).rem_euclid(27);
                        if (ca, cb) < canon {
                            canon = (ca, cb);
                        }
                    }
                }
                if !seen.insert(canon) {
                    continue;
                }
                let mut k = 1;
                while !in_lattice(k * a, k * b) {
                    k += 1;
                }
                *orders_direct.entry(k).or_insert(0usize) += 1;
            }
        }
        let total: usize = orders_direct.values().sum();
        assert_eq!(total as u64, factors.iter().product::<u64>());

        // element-order census of the predicted group
        let mut orders_predicted = std::collections::BTreeMap::new();
        let mut reps = vec![vec![0u64; factors.len()]];
        for (i, &f) in factors.iter().enumerate() {
            let mut next = Vec::new();
            for r in &reps {
                for v in 0..f {
                    let mut r2 = r.clone();
                    r2[i] = v;
                    next.push(r2);
                }
            }
            reps = next;
        }
        for r in &reps {
            let ord = r
                .iter()
                .zip(&factors)
                .map(|(&v, &f)| if v == 0 { 1 } else { f / gcd(v, f) })
                .fold(1u64, lcm);
            *orders_predicted.entry(ord as i64).or_insert(0usize) += 1;
        }
        assert_eq!(orders_direct, orders_predicted);
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    fn lcm(a: u64, b: u64) -> u64 {
        a / gcd(a, b) * b
    }

    #[test]
    fn solve_exact_finds_solutions() {
        let a = mat(&[&[2, 0], &[0, 3]]);
        let x = solve_exact(&a, &[big(4), big(9)]).unwrap();
        assert_eq!(mat_vec(&a, &x), vec![big(4), big(9)]);
        assert!(solve_exact(&a, &[big(1), big(0)]).is_none());
    }

    #[test]
    fn preimage_lattice_of_mod_constraint() {
        // {x in Z^1 : 2x in 6Z} = 3Z
        let d = mat(&[&[2]]);
        let pre = preimage_lattice(&d, 1, &[vec![big(6)]]);
        // generated lattice must be exactly 3Z
        let g = pre
            .iter()
            .map(|v| v[0].clone())
            .fold(BigInt::zero(), |acc, x| num_integer_gcd(&acc, &x));
        assert_eq!(g, big(3));
    }

    fn num_integer_gcd(a: &BigInt, b: &BigInt) -> BigInt {
        let (mut a, mut b) = (a.abs(), b.abs());
        while !b.is_zero() {
            let r = &a % &b;
            a = b;
            b = r;
        }
        a
    }

    proptest! {
        #[test]
        fn normalization_is_idempotent(
            entries in proptest::collection::vec(-12i64..12, 1..9),
            gens in 1usize..4,
        ) {
            let relations: Vec<Vec<BigInt>> = entries
                .chunks(gens)
                .filter(|c| c.len() == gens)
                .map(|c| c.iter().map(|&x| big(x)).collect())
                .collect();
            let p = FiniteAbelianPresentation::new(gens, relations);
            let n1 = p.smith_normalize();
            let n2 = n1.smith_normalize();
            prop_assert_eq!(n1, n2);
        }

        #[test]
        fn snf_preserves_determinant_up_to_sign(seed in any::<u64>()) {
            let mut state = seed | 1;
            let mut next = move || { state ^= state << 13; state ^= state >> 7; state ^= state << 17; (state % 9) as i64 - 4 };
            let a = mat(&[&[next(), next(), next()], &[next(), next(), next()], &[next(), next(), next()]]);
            let det = det3(&a);
            let s = snf(&a);
            let prod: BigInt = s.diag.iter().product();
            if s.rank == 3 {
                prop_assert_eq!(prod, det.abs());
            } else {
                prop_assert!(det.is_zero());
            }
        }
    }

    fn det3(a: &IntMat) -> BigInt {
        let m = |i: usize, j: usize| a[i][j].clone();
        m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
            - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
            + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
    }
}
