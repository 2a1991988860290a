//! Seeded random classical charts for the property and oracle suites.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::chart::classical::{ClassicalChart, ClassicalDifferential, ClassicalGroup};
use crate::chart::types::{Order, Pos};

/// Parameters for the generator. All charts it produces satisfy every
/// classical-chart invariant by construction.
#[derive(Debug, Clone, Copy)]
pub struct RandomChartConfig {
    pub prime: u64,
    pub max_stem: i64,
    pub max_filtration: i64,
    /// Probability that an admissible cell is populated.
    pub cell_density: f64,
    /// How many differentials to attempt.
    pub differentials: usize,
    /// Allow partial-order images (sources of non-split entries).
    pub mixed_images: bool,
}

impl Default for RandomChartConfig {
    fn default() -> Self {
        RandomChartConfig {
            prime: 3,
            max_stem: 20,
            max_filtration: 12,
            cell_density: 0.35,
            differentials: 3,
            mixed_images: true,
        }
    }
}

/// Generates a valid classical chart from a seed; identical seeds give
/// identical charts.
pub fn random_classical(config: &RandomChartConfig, seed: u64) -> ClassicalChart {
    let mut rng = StdRng::seed_from_u64(seed);
    let q = 2 * config.prime as i64 - 2;
    let mut chart = ClassicalChart::empty(config.prime);
    let mut gen_counter = 0usize;
    let new_group = |rng: &mut StdRng, counter: &mut usize| ClassicalGroup {
        l_exp: Order::Finite(rng.random_range(1..=3)),
        label: {
            *counter += 1;
            format!("g{counter}")
        },
    };

    // populate admissible cells: 1 <= s <= stem, q | t
    for stem in 1..=config.max_stem {
        for s in 1..=stem.min(config.max_filtration) {
            if (s + stem).rem_euclid(q) != 0 {
                continue;
            }
            if rng.random_bool(config.cell_density) {
                let n = rng.random_range(1..=2);
                let gs = (0..n)
                    .map(|_| new_group(&mut rng, &mut gen_counter))
                    .collect();
                chart.groups.insert(Pos::new(s, stem), gs);
            }
        }
    }

    // differentials between fresh cells so every cell participates in at
    // most one differential
    let mut used: std::collections::BTreeSet<Pos> = std::collections::BTreeSet::new();
    for _ in 0..config.differentials {
        // admissible source cells: valid positions whose d_page target also
        // sits above the vanishing line, neither end already used
        let n_pages = ((config.max_filtration - 1) / q).max(1);
        let page = q * rng.random_range(1..=n_pages) + 1;
        let candidates: Vec<Pos> = (2..=config.max_stem)
            .flat_map(|stem| {
                (1..=(stem - 1 - page).min(config.max_filtration - page).max(0))
                    .map(move |s| Pos::new(s, stem))
            })
            .filter(|pos| {
                pos.t().rem_euclid(q) == 0
                    && !used.contains(pos)
                    && !used.contains(&Pos::new(pos.s + page, pos.stem - 1))
            })
            .collect();
        if candidates.is_empty() {
            continue;
        }
        let source = candidates[rng.random_range(0..candidates.len())];
        let target = Pos::new(source.s + page, source.stem - 1);
        // ensure both cells exist, creating single-generator cells if not
        chart
            .groups
            .entry(source)
            .or_insert_with(|| vec![new_group(&mut rng, &mut gen_counter)]);
        chart
            .groups
            .entry(target)
            .or_insert_with(|| vec![new_group(&mut rng, &mut gen_counter)]);
        let src: Vec<u32> = chart.groups[&source]
            .iter()
            .map(|g| g.l_exp.finite().unwrap())
            .collect();
        let tgt: Vec<u32> = chart.groups[&target]
            .iter()
            .map(|g| g.l_exp.finite().unwrap())
            .collect();
        let matrix = random_matrix(&mut rng, config, &src, &tgt);
        used.insert(source);
        used.insert(target);
        chart.differentials.push(ClassicalDifferential {
            page,
            source,
            target,
            matrix,
        });
    }
    chart
        .differentials
        .sort_by_key(|d| (d.page, d.source.s, d.source.stem));

    debug_assert!(chart.validate().is_ok());
    chart
}

/// Random integer matrix satisfying the order-divisibility bound
/// l^{max(0, n_i - n_j)} | D[i][j].
fn random_matrix(
    rng: &mut StdRng,
    config: &RandomChartConfig,
    src: &[u32],
    tgt: &[u32],
) -> Vec<Vec<i64>> {
    let l = config.prime as i64;
    tgt.iter()
        .map(|&ni| {
            src.iter()
                .map(|&nj| {
                    let base = l.pow(ni.saturating_sub(nj));
                    let max_c = l.pow(ni.min(nj + 2).min(4));
                    let c = if config.mixed_images {
                        rng.random_range(0..=max_c / base.max(1))
                    } else {
                        // unit or zero coefficient only
                        rng.random_range(0..=1)
                    };
                    base * c
                })
                .collect()
        })
        .collect()
}
