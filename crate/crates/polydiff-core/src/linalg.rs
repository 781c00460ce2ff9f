// SPDX-License-Identifier: MIT OR Apache-2.0
//! Exact rational scalars and sparse linear algebra over ℚ.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

/// Sparse vector as strictly increasing `(index, value)` pairs without zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// Builds `n/d` from machine integers.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats as `p/q`, with `q = 1` written out.
pub fn fmt_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p`, `-p`, `p/q` or `-p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse { line: 1, column: 1, message: format!("not a rational: {s:?}") };
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Sorts a list of entries, merges duplicates and drops zeros.
pub fn normalize_sparse(mut v: Vec<(usize, Rational)>) -> SparseVec {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y += x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

/// Row-major sparse matrix over ℚ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    n_rows: usize,
    n_cols: usize,
    rows: Vec<SparseVec>,
}

impl SparseMatrix {
    /// The zero matrix of the given shape.
    pub fn zero(n_rows: usize, n_cols: usize) -> Self {
        SparseMatrix { n_rows, n_cols, rows: alloc::vec![Vec::new(); n_rows] }
    }

    /// The identity matrix.
    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| alloc::vec![(i, Rational::one())]).collect();
        SparseMatrix { n_rows: n, n_cols: n, rows }
    }

    /// Builds from rows, normalizing each one.
    pub fn from_rows(n_cols: usize, rows: Vec<Vec<(usize, Rational)>>) -> Result<Self> {
        let rows: Vec<SparseVec> = rows.into_iter().map(normalize_sparse).collect();
        for r in &rows {
            if let Some(&(c, _)) = r.last() {
                if c >= n_cols {
                    return Err(Error::IndexOutOfRange { index: c + 1, bound: n_cols });
                }
            }
        }
        Ok(SparseMatrix { n_rows: rows.len(), n_cols, rows })
    }

    /// Builds from columns, each a list of `(row, value)` entries.
    pub fn from_columns(n_rows: usize, cols: &[Vec<(usize, Rational)>]) -> Result<Self> {
        let mut rows: Vec<Vec<(usize, Rational)>> = alloc::vec![Vec::new(); n_rows];
        for (c, col) in cols.iter().enumerate() {
            for (r, x) in col {
                if *r >= n_rows {
                    return Err(Error::IndexOutOfRange { index: r + 1, bound: n_rows });
                }
                rows[*r].push((c, x.clone()));
            }
        }
        Self::from_rows(cols.len(), rows)
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets(
        n_rows: usize,
        n_cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Result<Self> {
        let mut rows: Vec<Vec<(usize, Rational)>> = alloc::vec![Vec::new(); n_rows];
        for (r, c, x) in entries {
            if r >= n_rows {
                return Err(Error::IndexOutOfRange { index: r + 1, bound: n_rows });
            }
            rows[r].push((c, x));
        }
        Self::from_rows(n_cols, rows)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Number of stored nonzero entries.
    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Entry at `(r, c)`, zero if not stored.
    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.rows[r].binary_search_by_key(&c, |e| e.0) {
            Ok(k) => self.rows[r][k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<SparseVec> = alloc::vec![Vec::new(); self.n_cols];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, x) in row {
                rows[*c].push((r, x.clone()));
            }
        }
        SparseMatrix { n_rows: self.n_cols, n_cols: self.n_rows, rows }
    }

    /// Columns as sparse vectors indexed by row.
    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().rows
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[(usize, Rational)]) -> Result<SparseVec> {
        if let Some(&(c, _)) = v.iter().max_by_key(|e| e.0) {
            if c >= self.n_cols {
                return Err(Error::DimensionMismatch { expected: self.n_cols, found: c + 1 });
            }
        }
        let dense: BTreeMap<usize, &Rational> = v.iter().map(|(i, x)| (*i, x)).collect();
        let mut out = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc = Rational::zero();
            for (c, x) in row {
                if let Some(y) = dense.get(c) {
                    acc += x * *y;
                }
            }
            if !acc.is_zero() {
                out.push((r, acc));
            }
        }
        Ok(out)
    }

    /// Text dump: header `rows cols`, then one `r c p/q` line per entry.
    pub fn to_dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.n_rows, self.n_cols);
        for (r, row) in self.rows.iter().enumerate() {
            for (c, x) in row {
                let _ = writeln!(s, "{} {} {}", r, c, fmt_rational(x));
            }
        }
        s
    }

    /// Parses the text dump produced by [`SparseMatrix::to_dump`].
    pub fn from_dump(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let perr = |line: usize, message: &str| Error::Parse {
            line: line + 1,
            column: 1,
            message: message.to_string(),
        };
        let (hl, header) = lines.next().ok_or_else(|| perr(0, "missing header"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<core::result::Result<_, _>>()
            .map_err(|_| perr(hl, "bad header"))?;
        if dims.len() != 2 {
            return Err(perr(hl, "header must be `rows cols`"));
        }
        let mut entries = Vec::new();
        for (ln, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(perr(ln, "entry must be `r c p/q`"));
            }
            let r: usize = toks[0].parse().map_err(|_| perr(ln, "bad row index"))?;
            let c: usize = toks[1].parse().map_err(|_| perr(ln, "bad column index"))?;
            let x = parse_rational(toks[2]).map_err(|_| perr(ln, "bad value"))?;
            if c >= dims[1] {
                return Err(perr(ln, "column index out of range"));
            }
            entries.push((r, c, x));
        }
        Self::from_triplets(dims[0], dims[1], entries)
    }
}

/// Incremental row echelon form with normalized pivots.
///
/// Each stored row has leading entry 1 at its pivot column.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseVec>,
}

fn axpy(acc: &mut BTreeMap<usize, Rational>, factor: &Rational, row: &[(usize, Rational)]) {
    for (c, x) in row {
        let e = acc.entry(*c).or_insert_with(Rational::zero);
        *e -= factor * x;
        if e.is_zero() {
            acc.remove(c);
        }
    }
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Pivot columns in increasing order.
    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Stored row for a pivot column.
    pub fn row(&self, pivot: usize) -> Option<&SparseVec> {
        self.pivots.get(&pivot)
    }

    /// Reduces `v` against every pivot; the result vanishes on all pivot columns.
    pub fn reduce(&self, v: &[(usize, Rational)]) -> SparseVec {
        let mut acc: BTreeMap<usize, Rational> = v.iter().cloned().filter(|e| !e.1.is_zero()).collect();
        let mut cursor = 0usize;
        loop {
            let next = acc.range(cursor..).find(|(c, _)| self.pivots.contains_key(c)).map(|(c, x)| (*c, x.clone()));
            match next {
                None => break,
                Some((c, x)) => {
                    axpy(&mut acc, &x, &self.pivots[&c]);
                    cursor = c + 1;
                }
            }
        }
        acc.into_iter().collect()
    }

    /// Adds `v` to the row space; returns the new pivot column if `v` was independent.
    pub fn insert(&mut self, v: &[(usize, Rational)]) -> Option<usize> {
        let mut acc: BTreeMap<usize, Rational> = v.iter().cloned().filter(|e| !e.1.is_zero()).collect();
        loop {
            let (c, x) = match acc.iter().next() {
                None => return None,
                Some((c, x)) => (*c, x.clone()),
            };
            match self.pivots.get(&c) {
                Some(row) => axpy(&mut acc, &x, row),
                None => {
                    let inv = x.recip();
                    let row: SparseVec = acc.into_iter().map(|(k, y)| (k, y * &inv)).collect();
                    self.pivots.insert(c, row);
                    return Some(c);
                }
            }
        }
    }

    /// True iff `v` lies in the row space.
    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Brings the rows to reduced row echelon form.
    pub fn make_reduced(&mut self) {
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        for &p in cols.iter().rev() {
            let prow = self.pivots[&p].clone();
            for &q in cols.iter().filter(|&&q| q < p) {
                let row = self.pivots.get_mut(&q).unwrap();
                if let Ok(k) = row.binary_search_by_key(&p, |e| e.0) {
                    let factor = row[k].1.clone();
                    let mut acc: BTreeMap<usize, Rational> = core::mem::take(row).into_iter().collect();
                    axpy(&mut acc, &factor, &prow);
                    *row = acc.into_iter().collect();
                }
            }
        }
    }
}

fn row_echelon(m: &SparseMatrix) -> Echelon {
    let mut order: Vec<usize> = (0..m.n_rows).collect();
    order.sort_by_key(|&r| m.rows[r].len());
    let mut ech = Echelon::new();
    for r in order {
        ech.insert(&m.rows[r]);
    }
    ech
}

/// Exact rank over ℚ.
pub fn rank(m: &SparseMatrix) -> usize {
    row_echelon(m).rank()
}

/// Basis of the right kernel `{x : M x = 0}`, one vector per free column.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<SparseVec> {
    let mut ech = row_echelon(m);
    ech.make_reduced();
    let pivots: BTreeMap<usize, &SparseVec> = ech.pivots.iter().map(|(c, r)| (*c, r)).collect();
    let mut basis = Vec::new();
    for f in (0..m.n_cols).filter(|c| !pivots.contains_key(c)) {
        let mut v: SparseVec = alloc::vec![(f, Rational::one())];
        for (p, row) in &pivots {
            if let Ok(k) = row.binary_search_by_key(&f, |e| e.0) {
                v.push((*p, -row[k].1.clone()));
            }
        }
        basis.push(normalize_sparse(v));
    }
    basis
}

/// Decides whether `M x = b` has a solution.
pub fn in_image(m: &SparseMatrix, b: &[(usize, Rational)]) -> Result<bool> {
    if let Some(&(i, _)) = b.iter().max_by_key(|e| e.0) {
        if i >= m.n_rows {
            return Err(Error::DimensionMismatch { expected: m.n_rows, found: i + 1 });
        }
    }
    let ech = row_echelon(&m.transpose());
    Ok(ech.contains(b))
}

/// Solves `M x = b`, returning one solution with free variables set to zero.
pub fn solve(m: &SparseMatrix, b: &[(usize, Rational)]) -> Result<Option<SparseVec>> {
    let mut rows: Vec<Vec<(usize, Rational)>> = m.rows.clone();
    for (i, x) in b {
        if *i >= m.n_rows {
            return Err(Error::DimensionMismatch { expected: m.n_rows, found: i + 1 });
        }
        rows[*i].push((m.n_cols, x.clone()));
    }
    let mut ech = Echelon::new();
    for r in &rows {
        ech.insert(r);
    }
    if ech.pivots.contains_key(&m.n_cols) {
        return Ok(None);
    }
    ech.make_reduced();
    let mut x = Vec::new();
    for (p, row) in &ech.pivots {
        if let Some((c, v)) = row.last() {
            if *c == m.n_cols {
                x.push((*p, v.clone()));
            }
        }
    }
    Ok(Some(x))
}
