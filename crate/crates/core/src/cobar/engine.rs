//! Entry points: build cobar columns in a range and assemble Cotor tables.

use crate::cobar::comodule::{Comodule, ComoduleKind};
use crate::cobar::complex::{build_column, Column, ColumnKey};
use crate::cobar::table::{CotorEntry, CotorTable, RangeStamp, TableKey};
use crate::error::Result;
use crate::par::{self, ExecMode};
use crate::steenrod::{AlgebraKind, DualAlgebra};

/// Range and resource parameters for a Cotor computation.
#[derive(Debug, Clone, Copy)]
pub struct CotorRange {
    /// Largest filtration reported in the table. Chains are built one
    /// filtration beyond so every reported entry is a verified homology
    /// dimension (no edge flags) unless that would cross the enumeration
    /// bound.
    pub s_max: usize,
    pub t_max: i64,
    /// Weight window per column: `[floor(t/2) - weight_depth, floor(t/2)]`.
    /// `None` picks the default `s_max * (l - 1)`.
    pub weight_depth: Option<i64>,
    /// Cap on the number of chains in any single slice.
    pub max_slice: usize,
}

impl CotorRange {
    pub fn new(s_max: usize, t_max: i64) -> Self {
        CotorRange {
            s_max,
            t_max,
            weight_depth: None,
            max_slice: 200_000,
        }
    }

    pub fn depth(&self, l: u64) -> i64 {
        self.weight_depth
            .unwrap_or(self.s_max as i64 * (l as i64 - 1))
    }
}

/// All column keys in range for the given comodule.
fn column_keys(alg: &DualAlgebra, comodule: &Comodule, range: &CotorRange) -> Vec<ColumnKey> {
    let l = alg.prime();
    let depth = range.depth(l);
    let mut keys = Vec::new();
    for t in 0..=range.t_max {
        let top = t.div_euclid(2);
        let aux_max = match comodule.kind() {
            ComoduleKind::Trivial => 0,
            // a_i carries at least one unit of t per factor
            ComoduleKind::CotorE => t,
            // q_0 is invisible to t; bound by the reindexed internal degree
            ComoduleKind::Novikov => range.t_max - t,
        };
        for aux in 0..=aux_max {
            for u in (top - depth)..=top {
                keys.push(ColumnKey { aux, t, u });
            }
        }
    }
    keys
}

/// Builds the reduced cobar complex for every column in range; the
/// columns are independent, so the map is data-parallel with a
/// deterministic merge.
pub fn build_cobar(
    alg: &DualAlgebra,
    hopf: AlgebraKind,
    comodule: &Comodule,
    range: &CotorRange,
    mode: ExecMode,
) -> Result<Vec<Column>> {
    let s_levels = (range.s_max + 1).min(alg.bounds().s_max);
    let keys = column_keys(alg, comodule, range);
    par::map(mode, keys, |key| {
        build_column(alg, hopf, comodule, key, s_levels, range.max_slice)
    })
    .into_iter()
    .collect()
}

/// Cotor table over the given Hopf algebra and coefficients.
pub fn cotor(
    alg: &DualAlgebra,
    hopf: AlgebraKind,
    comodule: &Comodule,
    range: &CotorRange,
    mode: ExecMode,
) -> Result<CotorTable> {
    let columns = build_cobar(alg, hopf, comodule, range, mode)?;
    let l = alg.prime();
    let mut entries = std::collections::BTreeMap::new();
    for col in &columns {
        for s in 0..=range.s_max.min(col.levels.len().saturating_sub(1)) {
            let (dim, edge) = col.homology(s, l)?;
            if dim == 0 {
                continue;
            }
            entries.insert(
                TableKey {
                    s: s as i64,
                    aux: col.key.aux,
                    t: col.key.t,
                    u: col.key.u,
                },
                CotorEntry { dim, edge },
            );
        }
    }
    Ok(CotorTable {
        ring: *alg.ring(),
        hopf,
        coefficients: comodule.name().to_string(),
        range: RangeStamp {
            s_max: range.s_max as i64,
            t_max: range.t_max,
            weight_depth: range.depth(l),
        },
        entries,
    })
}

/// The Cartan-Eilenberg E2 page: Cotor over P with coefficients in
/// P(a_0, a_1, ...), quadruply indexed by (s1, s2, t, u) with s2 the
/// polynomial degree in the a_i.
pub fn cess_e2(alg: &DualAlgebra, range: &CotorRange, mode: ExecMode) -> Result<CotorTable> {
    let comodule = Comodule::new(ComoduleKind::CotorE, alg.prime())?;
    cotor(alg, AlgebraKind::P, &comodule, range, mode)
}

/// The algebraic Novikov E1 page: Cotor over P with coefficients in the
/// associated graded Z/l[q_0, q_1, ...], indexed by (s1, Novikov degree,
/// t, u). Identical to [`cess_e2`] after the documented q <-> a reindexing.
pub fn algnov_e1(alg: &DualAlgebra, range: &CotorRange, mode: ExecMode) -> Result<CotorTable> {
    let comodule = Comodule::new(ComoduleKind::Novikov, alg.prime())?;
    cotor(alg, AlgebraKind::P, &comodule, range, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobar::table::{algnov_key_to_cess, cess_key_to_algnov};
    use crate::steenrod::{BaseField, EnumBounds, GroundRing};

    fn alg(base: BaseField, l: u64) -> DualAlgebra {
        DualAlgebra::new(GroundRing::new(base, l).unwrap(), EnumBounds::default())
    }

    fn triv(l: u64) -> Comodule {
        Comodule::new(ComoduleKind::Trivial, l).unwrap()
    }

    /// Combinatorial oracle: monomials tau^n * prod a_i^{e_i} of exact
    /// trigrade (s, t, u), with |a_i| = (1, 2l^i - 1, l^i - 1).
    fn count_a_monomials(l: i64, step: i64, s: i64, t: i64, u: i64) -> usize {
        fn rec(l: i64, step: i64, idx: u32, s: i64, t: i64, u_free: i64, target_u: i64) -> usize {
            if s == 0 {
                // remaining weight deficit must be a nonneg multiple of step
                let deficit = u_free - target_u;
                return if t == 0 && deficit >= 0 && deficit % step == 0 {
                    1
                } else {
                    0
                };
            }
            let gen_t = 2 * l.pow(idx) - 1;
            if gen_t > t {
                return 0;
            }
            let gen_u = l.pow(idx) - 1;
            // either use a_idx once more, or move on to higher generators
            rec(l, step, idx, s - 1, t - gen_t, u_free + gen_u, target_u)
                + rec(l, step, idx + 1, s, t, u_free, target_u)
        }
        rec(l, step, 0, s, t, 0, u)
    }

    #[test]
    fn cotor_e_ground_row_and_a0() {
        let alg = alg(BaseField::C, 3);
        let table = cotor(
            &alg,
            AlgebraKind::E,
            &triv(3),
            &CotorRange::new(2, 6),
            ExecMode::Sequential,
        )
        .unwrap();
        // (0,0,0): the unit
        assert_eq!(table.dim(0, 0, 0, 0), 1);
        // (1,1,0): a_0 = [tau_0]
        assert_eq!(table.dim(1, 0, 1, 0), 1);
        // (2,6,2): a_0 a_1
        assert_eq!(table.dim(2, 0, 6, 2), 1);
        // nothing above the weight ceiling
        assert_eq!(table.dim(1, 0, 1, 1), 0);
    }

    #[test]
    fn cotor_e_matches_polynomial_count_in_range() {
        // Cotor_E(H, H) = P(a_0, a_1, ...): every trigraded dimension equals
        // the monomial count.
        let alg = alg(BaseField::C, 3);
        let range = CotorRange::new(3, 10);
        let table = cotor(&alg, AlgebraKind::E, &triv(3), &range, ExecMode::Sequential).unwrap();
        let depth = range.depth(3);
        for s in 0..=3i64 {
            for t in 0..=10i64 {
                let top = t.div_euclid(2);
                for u in (top - depth)..=top {
                    let expect = count_a_monomials(3, 1, s, t, u);
                    assert_eq!(
                        table.dim(s, 0, t, u),
                        expect,
                        "mismatch at (s,t,u)=({s},{t},{u})"
                    );
                }
            }
        }
    }

    #[test]
    fn cotor_e_matches_polynomial_count_at_l5() {
        // |a_0| = (1,1,0), |a_1| = (1,9,4) at l = 5
        let alg = alg(BaseField::C, 5);
        let range = CotorRange::new(2, 10);
        let table = cotor(&alg, AlgebraKind::E, &triv(5), &range, ExecMode::Sequential).unwrap();
        let depth = range.depth(5);
        for s in 0..=2i64 {
            for t in 0..=10i64 {
                let top = t.div_euclid(2);
                for u in (top - depth)..=top {
                    let expect = count_a_monomials(5, 1, s, t, u);
                    assert_eq!(
                        table.dim(s, 0, t, u),
                        expect,
                        "mismatch at l=5, (s,t,u)=({s},{t},{u})"
                    );
                }
            }
        }
        assert_eq!(table.dim(1, 0, 9, 4), 1); // a_1
    }

    #[test]
    fn real_table_is_even_weight_part_of_complex_table() {
        let range = CotorRange::new(2, 8);
        let c_table = cotor(
            &alg(BaseField::C, 3),
            AlgebraKind::E,
            &triv(3),
            &range,
            ExecMode::Sequential,
        )
        .unwrap();
        let r_table = cotor(
            &alg(BaseField::R, 3),
            AlgebraKind::E,
            &triv(3),
            &range,
            ExecMode::Sequential,
        )
        .unwrap();
        // wherever the R table reaches (its ground steps by 2), it must
        // agree with the C table; R misses the odd-offset weights
        for (k, e) in &r_table.entries {
            assert_eq!(e.dim, c_table.dim(k.s, k.aux, k.t, k.u), "at {k:?}");
        }
        for (k, e) in &c_table.entries {
            if e.edge {
                continue;
            }
            let r_dim = r_table.dim(k.s, k.aux, k.t, k.u);
            if r_dim != 0 {
                assert_eq!(r_dim, e.dim);
            }
        }
    }

    #[test]
    fn weight_dimensions_are_monotone_below_the_ceiling() {
        // freeness over F_l[tau]: for fixed (s, t), dims grow weakly as the
        // weight drops, stabilizing at the total generator count
        let alg = alg(BaseField::C, 3);
        let table = cotor(
            &alg,
            AlgebraKind::E,
            &triv(3),
            &CotorRange::new(3, 8),
            ExecMode::Sequential,
        )
        .unwrap();
        for s in 0..=3i64 {
            for t in 0..=8i64 {
                let top = t.div_euclid(2);
                let depth = table.range.weight_depth;
                for u in (top - depth + 1)..=top {
                    assert!(
                        table.dim(s, 0, t, u - 1) >= table.dim(s, 0, t, u),
                        "not monotone at ({s},{t},{u})"
                    );
                }
            }
        }
        // and the profile extraction agrees with P(a) generator weights
        let profile = table.free_generator_profile().unwrap();
        assert_eq!(profile.get(&(1, 0, 1)), Some(&vec![(0i64, 1usize)]));
        assert_eq!(profile.get(&(2, 0, 6)), Some(&vec![(2i64, 1usize)]));
    }

    #[test]
    fn cess_page_small_entries() {
        let alg = alg(BaseField::C, 3);
        let table = cess_e2(&alg, &CotorRange::new(2, 6), ExecMode::Sequential).unwrap();
        // (s1, s2) = (0, 0) at (t, u) = (0, 0): the unit
        assert_eq!(table.dim(0, 0, 0, 0), 1);
        // (s1, s2) = (0, 1) at (t, u) = (1, 0): the class a_0
        assert_eq!(table.dim(0, 1, 1, 0), 1);
    }

    #[test]
    fn cess_collapse_matches_direct_cotor_a() {
        // total ground-ring rank of the Cartan-Eilenberg E2 at s1 + s2 = s
        // equals the directly computed Cotor_A dimension
        let alg = alg(BaseField::C, 3);
        let range = CotorRange::new(2, 8);
        let cess = cess_e2(&alg, &range, ExecMode::Sequential).unwrap();
        let direct = cotor(&alg, AlgebraKind::A, &triv(3), &range, ExecMode::Sequential).unwrap();
        let depth = range.depth(3);
        for s in 0..=2i64 {
            for t in 0..=8i64 {
                let top = t.div_euclid(2);
                for u in (top - depth)..=top {
                    assert_eq!(
                        cess.total_dim(s, t, u),
                        direct.dim(s, 0, t, u),
                        "collapse fails at ({s},{t},{u})"
                    );
                }
            }
        }
    }

    #[test]
    fn algnov_reindexes_onto_cess() {
        let alg = alg(BaseField::C, 3);
        let range = CotorRange::new(2, 8);
        let cess = cess_e2(&alg, &range, ExecMode::Sequential).unwrap();
        let algnov = algnov_e1(&alg, &range, ExecMode::Sequential).unwrap();
        // q_0 column at Novikov degree 1 matches the a_0 column, and the
        // whole tables match under the index map where both are in range
        assert_eq!(algnov.dim(0, 1, 0, 0), cess.dim(0, 1, 1, 0));
        for (k, e) in algnov.entries.iter().filter(|(_, e)| !e.edge) {
            let ck = algnov_key_to_cess(*k);
            if cess.range.contains(&ck) {
                assert_eq!(e.dim, cess.dim(ck.s, ck.aux, ck.t, ck.u), "at {k:?}");
            }
        }
        for (k, e) in cess.entries.iter().filter(|(_, e)| !e.edge) {
            let ak = cess_key_to_algnov(*k);
            if algnov.range.contains(&ak) && ak.t >= 0 {
                assert_eq!(e.dim, algnov.dim(ak.s, ak.aux, ak.t, ak.u), "at {k:?}");
            }
        }
        // degree-0 row: the ground ring only
        assert_eq!(algnov.dim(0, 0, 0, 0), 1);
        for (k, e) in &algnov.entries {
            if k.aux == 0 && k.s == 0 && !e.edge {
                assert!(k.t == 0, "unexpected degree-0 entry at {k:?}");
            }
        }
    }

    #[test]
    fn capped_enumeration_bounds_mark_edge_entries() {
        // bounds.s_max equals the requested table depth, so the extra
        // chain level cannot be built and the top filtration becomes an
        // unverified upper bound
        let alg = DualAlgebra::new(
            GroundRing::new(BaseField::C, 3).unwrap(),
            crate::steenrod::EnumBounds {
                s_max: 2,
                t_max: 64,
                u_abs_max: 64,
            },
        );
        let table = cotor(
            &alg,
            AlgebraKind::E,
            &triv(3),
            &CotorRange::new(2, 4),
            ExecMode::Sequential,
        )
        .unwrap();
        let edge: Vec<_> = table.entries.iter().filter(|(_, e)| e.edge).collect();
        assert!(!edge.is_empty());
        assert!(edge.iter().all(|(k, _)| k.s == 2));
        // verified entries sit strictly below the cap
        assert!(table
            .entries
            .iter()
            .filter(|(_, e)| !e.edge)
            .all(|(k, _)| k.s < 2));
        // the report carries the flag
        assert!(table.report().contains("edge-unverified"));
    }

    #[test]
    fn parallel_and_sequential_tables_agree() {
        let alg = alg(BaseField::C, 3);
        let range = CotorRange::new(2, 8);
        let seq = cotor(&alg, AlgebraKind::E, &triv(3), &range, ExecMode::Sequential).unwrap();
        let par = cotor(&alg, AlgebraKind::E, &triv(3), &range, ExecMode::Parallel).unwrap();
        assert_eq!(seq, par);
    }
}
