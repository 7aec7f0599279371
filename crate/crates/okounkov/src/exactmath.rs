//! Exact integer lattice and rational linear algebra.
//!
//! Everything here is over arbitrary-precision integers ([`Int`]) and
//! rationals ([`Rat`]); no floating point anywhere. The lattice normal
//! forms (row Hermite form, Smith form) fix one convention — positive
//! pivots, entries above a pivot reduced into `[0, pivot)` — so outputs
//! are reproducible.

use std::cmp::Ordering;

use num::{BigInt, BigRational, One, Signed, Zero};
use num_integer::Integer;

use crate::error::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Rectangular matrix over `Int`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: Vec<Vec<Int>>,
    ncols: usize,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<Int>>) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "matrix rows must have equal length"
        );
        IntMatrix { rows, ncols }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        IntMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Int::one() } else { Int::zero() })
                    .collect()
            })
            .collect();
        IntMatrix { rows, ncols: n }
    }

    pub fn zero(nrows: usize, ncols: usize) -> Self {
        IntMatrix {
            rows: vec![vec![Int::zero(); ncols]; nrows],
            ncols,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<Int>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.rows[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> &Int {
        &self.rows[i][j]
    }

    pub fn transpose(&self) -> IntMatrix {
        let rows = (0..self.ncols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        IntMatrix {
            rows,
            ncols: self.nrows(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols, other.nrows());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..other.ncols)
                    .map(|j| {
                        r.iter()
                            .zip(&other.rows)
                            .map(|(a, br)| a * &br[j])
                            .sum::<Int>()
                    })
                    .collect()
            })
            .collect();
        IntMatrix {
            rows,
            ncols: other.ncols,
        }
    }

    /// Determinant of a square matrix, via exact rational elimination.
    pub fn det(&self) -> Int {
        assert_eq!(self.nrows(), self.ncols);
        let rows: Vec<Vec<Rat>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| Rat::from(x.clone())).collect())
            .collect();
        let d = rat_det(&rows);
        assert!(d.is_integer());
        d.to_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }
}

// row ops shared by hnf and snf
fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    m.rows.swap(a, b);
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for x in &mut m.rows[i] {
        *x = -std::mem::take(x);
    }
}

/// rows[i] -= q * rows[k]
fn sub_scaled_row(m: &mut IntMatrix, i: usize, k: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    let src = m.rows[k].clone();
    for (x, s) in m.rows[i].iter_mut().zip(&src) {
        *x -= q * s;
    }
}

/// Row Hermite normal form. Returns `(H, U)` with `H = U * M`, `U`
/// unimodular, `H` upper echelon with positive pivots and entries above
/// each pivot reduced into `[0, pivot)`.
pub fn hnf(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.nrows());
    let nrows = m.nrows();
    let mut pivot_row = 0usize;
    for col in 0..m.ncols() {
        if pivot_row == nrows {
            break;
        }
        // Euclid on the column entries below pivot_row.
        loop {
            let nonzero: Vec<usize> = (pivot_row..nrows)
                .filter(|&i| !h.rows[i][col].is_zero())
                .collect();
            if nonzero.is_empty() {
                break;
            }
            let best = *nonzero
                .iter()
                .min_by_key(|&&i| h.rows[i][col].abs())
                .unwrap();
            swap_rows(&mut h, pivot_row, best);
            swap_rows(&mut u, pivot_row, best);
            if h.rows[pivot_row][col].is_negative() {
                negate_row(&mut h, pivot_row);
                negate_row(&mut u, pivot_row);
            }
            let p = h.rows[pivot_row][col].clone();
            let mut all_cleared = true;
            for i in pivot_row + 1..nrows {
                if !h.rows[i][col].is_zero() {
                    let q = h.rows[i][col].div_floor(&p);
                    sub_scaled_row(&mut h, i, pivot_row, &q);
                    sub_scaled_row(&mut u, i, pivot_row, &q);
                    if !h.rows[i][col].is_zero() {
                        all_cleared = false;
                    }
                }
            }
            if all_cleared {
                // reduce entries above the pivot into [0, p)
                for i in 0..pivot_row {
                    let q = h.rows[i][col].div_floor(&p);
                    sub_scaled_row(&mut h, i, pivot_row, &q);
                    sub_scaled_row(&mut u, i, pivot_row, &q);
                }
                pivot_row += 1;
                break;
            }
        }
    }
    (h, u)
}

/// Smith normal form. Returns `(D, U, V)` with `D = U * M * V` diagonal,
/// `d_1 | d_2 | ...`, `U` and `V` unimodular, diagonal entries nonnegative.
pub fn snf(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.nrows());
    let mut v = IntMatrix::identity(m.ncols());
    let nrows = m.nrows();
    let ncols = m.ncols();

    let swap_cols = |d: &mut IntMatrix, v: &mut IntMatrix, a: usize, b: usize| {
        for r in &mut d.rows {
            r.swap(a, b);
        }
        for r in &mut v.rows {
            r.swap(a, b);
        }
    };
    // col[a] -= q * col[b]
    let sub_scaled_col = |d: &mut IntMatrix, v: &mut IntMatrix, a: usize, b: usize, q: &Int| {
        if q.is_zero() {
            return;
        }
        for r in &mut d.rows {
            let s = r[b].clone();
            r[a] -= q * &s;
        }
        for r in &mut v.rows {
            let s = r[b].clone();
            r[a] -= q * &s;
        }
    };

    let mut t = 0usize;
    'outer: while t < nrows && t < ncols {
        // find a nonzero entry in the remaining block
        let mut found = None;
        'search: for i in t..nrows {
            for j in t..ncols {
                if !d.rows[i][j].is_zero() {
                    found = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some(_) = found else { break };
        loop {
            // move min-abs nonzero of the block to (t, t)
            let (bi, bj) = {
                let mut best: Option<(usize, usize)> = None;
                for i in t..nrows {
                    for j in t..ncols {
                        if !d.rows[i][j].is_zero() {
                            let better = match &best {
                                None => true,
                                Some((pi, pj)) => d.rows[i][j].abs() < d.rows[*pi][*pj].abs(),
                            };
                            if better {
                                best = Some((i, j));
                            }
                        }
                    }
                }
                best.unwrap()
            };
            if bi != t {
                swap_rows(&mut d, t, bi);
                swap_rows(&mut u, t, bi);
            }
            if bj != t {
                swap_cols(&mut d, &mut v, t, bj);
            }
            if d.rows[t][t].is_negative() {
                negate_row(&mut d, t);
                negate_row(&mut u, t);
            }
            let p = d.rows[t][t].clone();
            let mut clean = true;
            for i in t + 1..nrows {
                if !d.rows[i][t].is_zero() {
                    let q = d.rows[i][t].div_floor(&p);
                    sub_scaled_row(&mut d, i, t, &q);
                    sub_scaled_row(&mut u, i, t, &q);
                    if !d.rows[i][t].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..ncols {
                if !d.rows[t][j].is_zero() {
                    let q = d.rows[t][j].div_floor(&p);
                    sub_scaled_col(&mut d, &mut v, j, t, &q);
                    if !d.rows[t][j].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the remaining block for the divisibility chain
            let mut fixed = true;
            'divcheck: for i in t + 1..nrows {
                for j in t + 1..ncols {
                    if !d.rows[i][j].mod_floor(&p).is_zero() {
                        // fold row i into row t and restart reduction
                        let minus_one = -Int::one();
                        sub_scaled_row(&mut d, t, i, &minus_one);
                        sub_scaled_row(&mut u, t, i, &minus_one);
                        fixed = false;
                        break 'divcheck;
                    }
                }
            }
            if fixed {
                t += 1;
                continue 'outer;
            }
        }
    }
    (d, u, v)
}

/// Lexicographic comparison on integer vectors; first coordinate most
/// significant.
pub fn lex_cmp(a: &[Int], b: &[Int]) -> Result<Ordering> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    Ok(a.cmp(b))
}

/// Index of a sublattice inside a containing lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(Int),
    Infinite,
}

impl LatticeIndex {
    pub fn finite(&self) -> Option<&Int> {
        match self {
            LatticeIndex::Finite(n) => Some(n),
            LatticeIndex::Infinite => None,
        }
    }
}

/// Sublattice of `Z^ambient`, stored by a canonical (HNF) basis of
/// linearly independent rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    basis: Vec<Vec<Int>>,
    ambient: usize,
}

impl Lattice {
    /// Lattice generated by an arbitrary (possibly dependent) set of
    /// vectors. The stored basis is the nonzero part of the HNF.
    pub fn from_generators(ambient: usize, generators: Vec<Vec<Int>>) -> Self {
        for g in &generators {
            assert_eq!(g.len(), ambient, "generator length mismatch");
        }
        if generators.is_empty() {
            return Lattice {
                basis: vec![],
                ambient,
            };
        }
        let (h, _) = hnf(&IntMatrix::new(generators));
        let basis = h
            .rows()
            .iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .cloned()
            .collect();
        Lattice { basis, ambient }
    }

    pub fn trivial(ambient: usize) -> Self {
        Lattice {
            basis: vec![],
            ambient,
        }
    }

    pub fn standard(ambient: usize) -> Self {
        Lattice::from_generators(
            ambient,
            IntMatrix::identity(ambient).rows().to_vec(),
        )
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Int>] {
        &self.basis
    }

    fn basis_rat(&self) -> Vec<Vec<Rat>> {
        self.basis
            .iter()
            .map(|r| r.iter().map(|x| Rat::from(x.clone())).collect())
            .collect()
    }

    /// Coordinates of `v` with respect to the basis, over the rationals.
    pub fn span_coordinates(&self, v: &[Int]) -> Option<Vec<Rat>> {
        let target: Vec<Rat> = v.iter().map(|x| Rat::from(x.clone())).collect();
        solve_combination(&self.basis_rat(), &target)
    }

    pub fn span_contains(&self, v: &[Int]) -> bool {
        self.span_coordinates(v).is_some()
    }

    pub fn contains(&self, v: &[Int]) -> bool {
        match self.span_coordinates(v) {
            Some(coords) => coords.iter().all(|c| c.is_integer()),
            None => false,
        }
    }
}

/// `[B : A]` for a sublattice `A` of `B`.
///
/// Returns `Infinite` when `rank A < rank B`; errors with `NOT_SUBGROUP`
/// when `A` is not contained in `B`.
pub fn subgroup_index(a: &Lattice, b: &Lattice) -> Result<LatticeIndex> {
    assert_eq!(a.ambient, b.ambient, "ambient dimension mismatch");
    if a.rank() > b.rank() {
        return Err(Error::NotSubgroup);
    }
    // coordinates of each basis vector of A with respect to B's basis
    let mut coords = Vec::with_capacity(a.rank());
    for v in &a.basis {
        match b.span_coordinates(v) {
            None => return Err(Error::NotSubgroup),
            Some(c) => {
                if c.iter().any(|x| !x.is_integer()) {
                    return Err(Error::NotSubgroup);
                }
                coords.push(c);
            }
        }
    }
    if a.rank() < b.rank() {
        return Ok(LatticeIndex::Infinite);
    }
    let d = rat_det(&coords);
    if d.is_zero() {
        // basis vectors of A are independent, so this cannot happen
        unreachable!("independent basis gave singular coordinate matrix");
    }
    let idx = d.to_integer().abs();
    Ok(LatticeIndex::Finite(idx))
}

/// Integer left kernel of a matrix: a basis of `{ x : x * M = 0 }`.
/// The result is saturated (a kernel lattice always is).
pub fn left_kernel(m: &IntMatrix) -> Vec<Vec<Int>> {
    let (h, u) = hnf(m);
    h.rows()
        .iter()
        .zip(u.rows())
        .filter(|(hr, _)| hr.iter().all(|x| x.is_zero()))
        .map(|(_, ur)| ur.clone())
        .collect()
}

/// Saturation: `(Q-span of L) ∩ Z^ambient`, which contains `L` with
/// finite index.
pub fn saturate(l: &Lattice) -> Lattice {
    let r = l.rank();
    let k = l.ambient;
    if r == 0 {
        return Lattice::trivial(k);
    }
    if r == k {
        return Lattice::standard(k);
    }
    // integer orthogonal complement of the span, then its kernel again
    let basis_t = IntMatrix::new(l.basis.clone()).transpose();
    let orth = left_kernel(&basis_t);
    let orth_t = IntMatrix::new(orth).transpose();
    let sat = left_kernel(&orth_t);
    Lattice::from_generators(k, sat)
}

// ---------------------------------------------------------------------------
// rational elimination helpers, used across the crate

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut pr = 0usize;
    for col in 0..ncols {
        if pr == nrows {
            break;
        }
        let Some(sel) = (pr..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(pr, sel);
        let inv = rows[pr][col].clone();
        for x in &mut rows[pr] {
            *x = std::mem::take(x) / &inv;
        }
        for i in 0..nrows {
            if i != pr && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                let src = rows[pr].clone();
                for (x, s) in rows[i].iter_mut().zip(&src) {
                    *x -= &f * s;
                }
            }
        }
        pivots.push(col);
        pr += 1;
    }
    pivots
}

pub fn rat_rank(rows: &[Vec<Rat>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Determinant of a square rational matrix.
pub fn rat_det(rows: &[Vec<Rat>]) -> Rat {
    let n = rows.len();
    if n == 0 {
        return Rat::one();
    }
    assert!(rows.iter().all(|r| r.len() == n));
    let mut m = rows.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let Some(sel) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return Rat::zero();
        };
        if sel != col {
            m.swap(col, sel);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for i in col + 1..n {
            if !m[i][col].is_zero() {
                let f = m[i][col].clone() / &p;
                let src = m[col].clone();
                for (x, s) in m[i].iter_mut().zip(&src) {
                    *x -= &f * s;
                }
            }
        }
    }
    det
}

/// Solve `sum_i x_i * rows[i] = target`; returns one solution (free
/// coordinates set to zero) or `None` when inconsistent.
pub fn solve_combination(rows: &[Vec<Rat>], target: &[Rat]) -> Option<Vec<Rat>> {
    let r = rows.len();
    let k = target.len();
    if r == 0 {
        return if target.iter().all(|x| x.is_zero()) {
            Some(vec![])
        } else {
            None
        };
    }
    // augmented system: columns are the rows-as-vectors, last column target
    let mut aug: Vec<Vec<Rat>> = (0..k)
        .map(|j| {
            let mut row: Vec<Rat> = rows.iter().map(|v| v[j].clone()).collect();
            row.push(target[j].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&r) {
        return None; // pivot in the augmented column
    }
    let mut x = vec![Rat::zero(); r];
    for (row_idx, &col) in pivots.iter().enumerate() {
        x[col] = aug[row_idx][r].clone();
    }
    Some(x)
}

/// Basis of `{ x : sum_i x_i * rows[i] = 0 }`.
pub fn left_nullspace(rows: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let r = rows.len();
    if r == 0 {
        return vec![];
    }
    let k = rows[0].len();
    let mut m: Vec<Vec<Rat>> = (0..k)
        .map(|j| rows.iter().map(|v| v[j].clone()).collect())
        .collect();
    let pivots = rref(&mut m);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..r {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut x = vec![Rat::zero(); r];
        x[free] = Rat::one();
        for (row_idx, &col) in pivots.iter().enumerate() {
            x[col] = -m[row_idx][free].clone();
        }
        basis.push(x);
    }
    basis
}
