//! Splitting presented entries into cyclic summands.
//!
//! A finitely presented graded module over Z_l[tau] (with explicit l-power
//! order relations) is a direct sum of cyclics Z/l^m[tau]/(tau^k) exactly
//! when the family of slice-order invariants
//!
//! ```text
//! f(u, j, a) = log_l |(l^a tau^j M)_u|
//! ```
//!
//! matches that of some multiset of cyclics. The multiset, if it exists,
//! is uniquely determined by finite differences of `f` (candidate
//! generator weights are the presentation's generator weights, and torsion
//! tau-orders are bounded by the relation degrees plus the weight span, so
//! a finite window of `u`, `j`, `a` decides). The algorithm measures `f`
//! with exact integer linear algebra, deconvolves the candidate multiset,
//! verifies it reproduces every measured value, and falls back to the
//! reduced presentation with a `non_split` flag when any step fails.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::chart::types::{CyclicSummand, Order, PresentedEntry};
use crate::error::Result;
use crate::linalg::{int_mat, quotient_invariants, snf, IntMat};
use crate::steenrod::GroundRing;

/// Result of [`normalize_entry`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NormalizeOutcome {
    /// The module is the direct sum of these cyclic summands.
    Split(Vec<CyclicSummand>),
    /// No cyclic decomposition exists (or the presentation is outside the
    /// representable class); the reduced presentation is retained.
    NonSplit(PresentedEntry),
}

impl NormalizeOutcome {
    pub fn into_entry_parts(self) -> (Vec<CyclicSummand>, Option<PresentedEntry>) {
        match self {
            NormalizeOutcome::Split(s) => (s, None),
            NormalizeOutcome::NonSplit(p) => (Vec::new(), Some(p)),
        }
    }
}

/// Attempts to express a presented graded module as a direct sum of
/// cyclic summands; see the module docs for the method.
pub fn normalize_entry(p: &PresentedEntry, ring: &GroundRing) -> Result<NormalizeOutcome> {
    if p.generators.is_empty() {
        return Ok(NormalizeOutcome::Split(Vec::new()));
    }
    for rel in &p.relations {
        p.relation_weight(rel, ring)?; // homogeneity
    }
    let l = ring.prime;
    let step = ring.weight_step();
    let w_max = p.generators.iter().map(|g| g.0).max().unwrap();
    let w_min = p.generators.iter().map(|g| g.0).min().unwrap();
    let rel_depth = p
        .relations
        .iter()
        .flat_map(|r| r.iter())
        .filter(|c| c.coeff != 0)
        .map(|c| c.tau_pow as i64)
        .max()
        .unwrap_or(0);
    let span = (w_max - w_min) / step;
    // finite tau-orders of any cyclic decomposition are bounded by
    // span + rel_depth: below every generator and relation, tau acts as an
    // isomorphism between consecutive slices
    let j_max = (span + rel_depth + 1) as u32;
    let u_lo = w_min - (j_max as i64 + 1) * step;

    // measure slice orders first; bail out on non-l-power or infinite slices
    let mut max_val = 0u32;
    let mut u = w_max;
    while u >= u_lo {
        for order in slice_orders(p, u, ring) {
            match l_valuation(&order, l) {
                Some(v) => max_val = max_val.max(v),
                None => return Ok(NormalizeOutcome::NonSplit(reduced(p))),
            }
        }
        u -= 1;
    }
    let a_max = max_val;

    // f(u, j, a) over the sampling window
    let us: Vec<i64> = (u_lo..=w_max).collect();
    let u_index = |u: i64| (u - u_lo) as usize;
    let mut f = vec![0u32; us.len() * (j_max as usize + 2) * (a_max as usize + 1)];
    let idx = |ui: usize, j: u32, a: u32| {
        (ui * (j_max as usize + 2) + j as usize) * (a_max as usize + 1) + a as usize
    };
    for &u in &us {
        for j in 0..=j_max + 1 {
            for a in 0..=a_max {
                let Some(v) = image_log_order(p, u, j, a, ring) else {
                    return Ok(NormalizeOutcome::NonSplit(reduced(p)));
                };
                f[idx(u_index(u), j, a)] = v;
            }
        }
    }
    let f_at = |u: i64, j: u32, a: u32| -> i64 {
        if a > a_max {
            return 0;
        }
        if u > w_max {
            return 0;
        }
        if u < u_lo {
            // below the window every slice is tau-stable; clamp
            return f[idx(0, j, a)] as i64;
        }
        f[idx(u_index(u), j, a)] as i64
    };
    // h(w, j, a) = #{summands: weight w, tau-order > j, l-exp > a}
    let h = |w: i64, j: u32, a: u32| -> i64 {
        let u = w - j as i64 * step;
        let da = |jj: u32| f_at(u, jj, a) - f_at(u, jj, a + 1);
        da(j) - da(j + 1)
    };

    // deconvolve the candidate multiset
    let mut weights: Vec<i64> = p.generators.iter().map(|g| g.0).collect();
    weights.sort_unstable();
    weights.dedup();
    let mut candidate: Vec<CyclicSummand> = Vec::new();
    for &w in &weights {
        for m in 1..=a_max {
            // infinite tau-order
            let n_inf = h(w, j_max, m - 1) - h(w, j_max, m);
            if n_inf < 0 {
                return Ok(NormalizeOutcome::NonSplit(reduced(p)));
            }
            for _ in 0..n_inf {
                candidate.push(CyclicSummand::free(m, w, None));
            }
            for k in 1..=j_max {
                let n = (h(w, k - 1, m - 1) - h(w, k, m - 1)) - (h(w, k - 1, m) - h(w, k, m));
                if n < 0 {
                    return Ok(NormalizeOutcome::NonSplit(reduced(p)));
                }
                for _ in 0..n {
                    candidate.push(CyclicSummand::torsion(m, k, w, None));
                }
            }
        }
    }

    // verification: the candidate must reproduce every measured invariant
    for &u in &us {
        for j in 0..=j_max + 1 {
            for a in 0..=a_max {
                let predicted: i64 = candidate
                    .iter()
                    .map(|c| {
                        let off = c.gen_weight - u;
                        if off < 0 || off % step != 0 {
                            return 0;
                        }
                        let i = (off / step) as u32;
                        if i < j {
                            return 0;
                        }
                        if let Order::Finite(k) = c.tau_exp {
                            if i >= k {
                                return 0;
                            }
                        }
                        let m = c.l_exp.finite().expect("candidates are finite");
                        m.saturating_sub(a) as i64
                    })
                    .sum();
                if predicted != f_at(u, j, a) {
                    return Ok(NormalizeOutcome::NonSplit(reduced(p)));
                }
            }
        }
    }

    candidate.sort_by(|a, b| {
        (b.gen_weight, a.l_exp, a.tau_exp).cmp(&(a.gen_weight, b.l_exp, b.tau_exp))
    });
    Ok(NormalizeOutcome::Split(candidate))
}

/// Slice orders of a presentation at one weight.
fn slice_orders(p: &PresentedEntry, u: i64, ring: &GroundRing) -> Vec<BigInt> {
    crate::chart::motivic::presentation_slice(p, u, ring)
}

fn l_valuation(order: &BigInt, l: u64) -> Option<u32> {
    if order.is_zero() {
        return None; // infinite cyclic slice
    }
    let l = BigInt::from(l);
    let mut o = order.clone();
    let mut v = 0;
    while (&o % &l).is_zero() {
        o /= &l;
        v += 1;
    }
    if o == BigInt::from(1) {
        Some(v)
    } else {
        None // not an l-group
    }
}

/// `log_l` of the order of the image of `l^a tau^j : M_{u + j*step} -> M_u`,
/// or `None` when the ambient slice is infinite.
fn image_log_order(p: &PresentedEntry, u: i64, j: u32, a: u32, ring: &GroundRing) -> Option<u32> {
    let step = ring.weight_step();
    let l = ring.prime;
    let gens_at = |u: i64| -> Vec<usize> {
        (0..p.generators.len())
            .filter(|&i| {
                let off = p.generators[i].0 - u;
                off >= 0 && off % step == 0
            })
            .collect()
    };
    let low = gens_at(u);
    if low.is_empty() {
        return Some(0);
    }
    let high = gens_at(u + j as i64 * step);
    // relation columns of the low slice
    let mut rel_cols: Vec<Vec<BigInt>> = Vec::new();
    for rel in &p.relations {
        let Ok(Some(w)) = p.relation_weight(rel, ring) else {
            continue;
        };
        let off = w - u;
        if off < 0 || off % step != 0 {
            continue;
        }
        rel_cols.push(
            low.iter()
                .map(|&i| BigInt::from(rel.get(i).map(|c| c.coeff).unwrap_or(0)))
                .collect(),
        );
    }
    let ambient = log_order(low.len(), &rel_cols, l)?;
    // add the image generators l^a * e_i for i in the high slice
    let scale = BigInt::from(l).pow(a);
    let mut with_image = rel_cols.clone();
    for &i in &high {
        let slot = low.iter().position(|&x| x == i).expect("high slice embeds");
        let mut col = vec![BigInt::zero(); low.len()];
        col[slot] = scale.clone();
        with_image.push(col);
    }
    let quotient = log_order(low.len(), &with_image, l)?;
    Some(ambient - quotient)
}

/// `log_l |Z^n / span(cols)|`, or `None` if infinite or not an l-group.
fn log_order(n: usize, cols: &[Vec<BigInt>], l: u64) -> Option<u32> {
    let factors = quotient_invariants(n, cols);
    let mut total = 0u32;
    for fct in factors {
        total += l_valuation(&fct, l)?;
    }
    Some(total)
}

/// Light canonicalization of a presentation kept as non-split: drop zero
/// relations and duplicates.
fn reduced(p: &PresentedEntry) -> PresentedEntry {
    let mut relations: Vec<_> = p
        .relations
        .iter()
        .filter(|r| r.iter().any(|c| c.coeff != 0))
        .cloned()
        .collect();
    relations.sort_by_key(|r| r.iter().map(|c| (c.coeff, c.tau_pow)).collect::<Vec<_>>());
    relations.dedup();
    PresentedEntry {
        generators: p.generators.clone(),
        relations,
        non_split: true,
    }
}

/// Kernel-side helper used by page propagation: invariant factors of the
/// kernel of an integer matrix map between finite abelian l-groups.
///
/// `orders[j]` are the source cyclic orders, `target_orders[i]` the target
/// ones, and `matrix[i][j]` the map coefficients; the map must be
/// well-defined (`orders[j] * matrix[i][j] = 0` in the target), which
/// callers validate first. Returns the kernel's invariant factors in
/// canonical SNF order.
pub fn kernel_invariants(
    orders: &[BigInt],
    target_orders: &[BigInt],
    matrix: &[Vec<i64>],
) -> Vec<BigInt> {
    let s = orders.len();
    let t = target_orders.len();
    if s == 0 {
        return Vec::new();
    }
    // lattice K = {x in Z^s : D x in L_t}, containing L_s
    let mut d = int_mat(t, s);
    for (i, row) in matrix.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            d[i][j] = BigInt::from(c);
        }
    }
    let l_t: Vec<Vec<BigInt>> = (0..t)
        .map(|i| {
            let mut col = vec![BigInt::zero(); t];
            col[i] = target_orders[i].clone();
            col
        })
        .collect();
    let k_gens = crate::linalg::preimage_lattice(&d, s, &l_t);
    // present K / L_s: solve K z = l for each source order relation
    let k_mat: IntMat = (0..s)
        .map(|r| k_gens.iter().map(|c| c[r].clone()).collect())
        .collect();
    let mut rels: Vec<Vec<BigInt>> = Vec::new();
    for (j, o) in orders.iter().enumerate() {
        let mut rhs = vec![BigInt::zero(); s];
        rhs[j] = o.clone();
        let sol = crate::linalg::solve_exact(&k_mat, &rhs)
            .expect("order lattice is contained in the kernel lattice");
        rels.push(sol);
    }
    // internal relations among the chosen kernel generators
    for col in crate::linalg::kernel_basis(&k_mat) {
        rels.push(col);
    }
    let _ = snf(&k_mat); // keep deterministic shape
    quotient_invariants(k_gens.len(), &rels)
}
