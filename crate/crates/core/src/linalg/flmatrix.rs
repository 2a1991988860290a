//! Sparse matrices over the prime field F_l with deterministic row reduction.

use crate::error::{Error, Result};

fn is_odd_prime(l: u64) -> bool {
    if l < 3 || l.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= l {
        if l.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Sparse matrix over F_l in triplet form.
///
/// Entries are stored sorted in row-major order with all residues in
/// `[1, l-1]`; zeros are never stored. The matrix represents a linear map
/// `F_l^cols -> F_l^rows` acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlMatrix {
    rows: usize,
    cols: usize,
    modulus: u64,
    entries: Vec<(usize, usize, u64)>,
}

impl FlMatrix {
    /// Builds a matrix from arbitrary (row, col, value) triplets.
    ///
    /// Values are reduced mod l, duplicates at the same position are summed,
    /// and resulting zeros dropped, so the stored form is canonical.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        modulus: u64,
        triplets: impl IntoIterator<Item = (usize, usize, u64)>,
    ) -> Result<Self> {
        if !is_odd_prime(modulus) {
            return Err(Error::Config(format!(
                "modulus {modulus} is not an odd prime"
            )));
        }
        let mut entries: Vec<(usize, usize, u64)> = Vec::new();
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::Config(format!(
                    "entry ({r},{c}) outside {rows}x{cols} matrix"
                )));
            }
            entries.push((r, c, v % modulus));
        }
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut canon: Vec<(usize, usize, u64)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            match canon.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 = (last.2 + v) % modulus,
                _ => canon.push((r, c, v)),
            }
        }
        canon.retain(|&(_, _, v)| v != 0);
        Ok(FlMatrix {
            rows,
            cols,
            modulus,
            entries: canon,
        })
    }

    pub fn zero(rows: usize, cols: usize, modulus: u64) -> Result<Self> {
        Self::from_triplets(rows, cols, modulus, std::iter::empty())
    }

    pub fn identity(n: usize, modulus: u64) -> Result<Self> {
        Self::from_triplets(n, n, modulus, (0..n).map(|i| (i, i, 1)))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn entries(&self) -> &[(usize, usize, u64)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Sparse product `self * other`.
    pub fn mul(&self, other: &FlMatrix) -> Result<FlMatrix> {
        if self.modulus != other.modulus {
            return Err(Error::Config(format!(
                "modulus mismatch: {} vs {}",
                self.modulus, other.modulus
            )));
        }
        if self.cols != other.rows {
            return Err(Error::Config(format!(
                "dimension mismatch: {}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        // rows of `other`, for cache-friendly accumulation
        let mut other_rows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); other.rows];
        for &(r, c, v) in &other.entries {
            other_rows[r].push((c, v));
        }
        let mut triplets = Vec::new();
        let mut acc: std::collections::BTreeMap<usize, u64> = std::collections::BTreeMap::new();
        let mut i = 0;
        while i < self.entries.len() {
            let row = self.entries[i].0;
            acc.clear();
            while i < self.entries.len() && self.entries[i].0 == row {
                let (_, k, v) = self.entries[i];
                for &(c, w) in &other_rows[k] {
                    let e = acc.entry(c).or_insert(0);
                    *e = (*e + v * w) % self.modulus;
                }
                i += 1;
            }
            for (&c, &v) in &acc {
                if v != 0 {
                    triplets.push((row, c, v));
                }
            }
        }
        FlMatrix::from_triplets(self.rows, other.cols, self.modulus, triplets)
    }

    /// Deterministic reduction to reduced row echelon form.
    ///
    /// Pivots are chosen by scanning for the first nonzero entry in row-major
    /// order among rows not yet used as pivots; since the RREF of a matrix is
    /// unique, the reported rank, kernel basis and pivot columns are canonical.
    pub fn row_reduce(&self) -> RowReduction {
        let l = self.modulus;
        let mut rows: Vec<Vec<(usize, u64)>> = vec![Vec::new(); self.rows];
        for &(r, c, v) in &self.entries {
            rows[r].push((c, v));
        }
        let mut pivot_of_row: Vec<Option<usize>> = vec![None; self.rows];
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
        while let Some(r) =
            (0..self.rows).find(|&r| pivot_of_row[r].is_none() && !rows[r].is_empty())
        {
            let c = rows[r][0].0;
            let inv = mod_inverse(rows[r][0].1, l);
            scale_row(&mut rows[r], inv, l);
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r {
                    continue;
                }
                if let Some(v) = row_get(row, c) {
                    let factor = l - v; // add (-v) * pivot_row
                    *row = add_scaled(row, &pivot_row, factor, l);
                }
            }
            pivot_of_row[r] = Some(c);
            pivots.push((r, c));
        }
        pivots.sort_unstable_by_key(|&(_, c)| c);
        let rank = pivots.len();
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();

        // kernel basis: one vector per free column, canonical RREF form
        let is_pivot = {
            let mut v = vec![false; self.cols];
            for &c in &pivot_cols {
                v[c] = true;
            }
            v
        };
        let mut kernel = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut vec = vec![0u64; self.cols];
            vec[f] = 1;
            for &(r, c) in &pivots {
                if let Some(v) = row_get(&rows[r], f) {
                    vec[c] = (l - v) % l;
                }
            }
            kernel.push(vec);
        }

        // image basis: the original columns at the pivot column indices
        let mut image = Vec::new();
        for &c in &pivot_cols {
            let mut col = vec![0u64; self.rows];
            for &(r, cc, v) in &self.entries {
                if cc == c {
                    col[r] = v;
                }
            }
            image.push(col);
        }

        RowReduction {
            rank,
            pivot_cols,
            kernel,
            image,
        }
    }

    /// Applies the matrix to a dense column vector.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.rows];
        for &(r, c, a) in &self.entries {
            out[r] = (out[r] + a * (v[c] % self.modulus)) % self.modulus;
        }
        out
    }
}

/// Result of [`FlMatrix::row_reduce`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowReduction {
    pub rank: usize,
    /// Pivot columns in increasing order; an intrinsic invariant of the matrix.
    pub pivot_cols: Vec<usize>,
    /// Basis of the kernel, one dense vector of length `cols` per free column.
    pub kernel: Vec<Vec<u64>>,
    /// Basis of the column space: the original columns at the pivot indices.
    pub image: Vec<Vec<u64>>,
}

/// Dimension of `ker(d_out) / im(d_in)` for a pair of consecutive
/// differentials (`d_in` maps into the middle term, `d_out` maps out of it).
///
/// The composite `d_out * d_in` is verified to be zero first; a nonzero
/// composite signals a broken complex and is reported as
/// [`Error::ComplexConstruction`].
pub fn homology_dim(d_in: &FlMatrix, d_out: &FlMatrix) -> Result<usize> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::Config(format!(
            "inner dimension mismatch: d_in is {}x{}, d_out is {}x{}",
            d_in.rows(),
            d_in.cols(),
            d_out.rows(),
            d_out.cols()
        )));
    }
    let composite = d_out.mul(d_in)?;
    if !composite.is_zero() {
        return Err(Error::ComplexConstruction(format!(
            "d_out . d_in != 0 ({} nonzero entries)",
            composite.nnz()
        )));
    }
    let rank_out = d_out.row_reduce().rank;
    let rank_in = d_in.row_reduce().rank;
    let ker_out = d_out.cols() - rank_out;
    debug_assert!(rank_in <= ker_out);
    Ok(ker_out - rank_in)
}

fn mod_inverse(a: u64, l: u64) -> u64 {
    // Fermat: a^(l-2) mod l
    let mut base = a % l;
    let mut exp = l - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % l;
        }
        base = base * base % l;
        exp >>= 1;
    }
    acc
}

fn row_get(row: &[(usize, u64)], col: usize) -> Option<u64> {
    row.binary_search_by_key(&col, |&(c, _)| c)
        .ok()
        .map(|i| row[i].1)
}

fn scale_row(row: &mut [(usize, u64)], factor: u64, l: u64) {
    for e in row.iter_mut() {
        e.1 = e.1 * factor % l;
    }
}

/// `a + factor * b` as sorted sparse rows.
fn add_scaled(a: &[(usize, u64)], b: &[(usize, u64)], factor: u64, l: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(&(ca, va)), Some(&(cb, vb))) if ca == cb => {
                let v = (va + factor * vb) % l;
                if v != 0 {
                    out.push((ca, v));
                }
                i += 1;
                j += 1;
            }
            (Some(&(ca, va)), Some(&(cb, _))) if ca < cb => {
                out.push((ca, va));
                i += 1;
            }
            (Some(_), Some(&(cb, vb))) => {
                let v = factor * vb % l;
                if v != 0 {
                    out.push((cb, v));
                }
                j += 1;
            }
            (Some(&(ca, va)), None) => {
                out.push((ca, va));
                i += 1;
            }
            (None, Some(&(cb, vb))) => {
                let v = factor * vb % l;
                if v != 0 {
                    out.push((cb, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}
