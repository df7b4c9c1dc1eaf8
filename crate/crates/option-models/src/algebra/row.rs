//! Sparse transition rows with dense-matrix semantics.
//!
//! A `TransRow` is one row of an n x n substochastic matrix. Absent entries
//! are exact zeros, entries are kept in ascending column order, and exact
//! zeros are never stored, so accumulating a row left-to-right produces the
//! same binary64 values as a dense row scan that skips zeros. Deterministic
//! domains keep a single entry per row, which the `One` variant holds inline
//! without a heap allocation.

/// One row of a discounted transition matrix.
#[derive(Clone, Debug, PartialEq)]
pub enum TransRow {
    /// All zeros (exited / absorbed mass).
    Empty,
    /// A single entry: column and value.
    One(u32, f64),
    /// Two or more entries in ascending column order.
    Many(RowData),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RowData {
    idx: Box<[u32]>,
    val: Box<[f64]>,
}

impl TransRow {
    pub fn nnz(&self) -> usize {
        match self {
            TransRow::Empty => 0,
            TransRow::One(..) => 1,
            TransRow::Many(d) => d.idx.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, TransRow::Empty)
    }

    pub fn iter(&self) -> RowIter<'_> {
        RowIter { row: self, pos: 0 }
    }

    /// Builds a row from `(column, value)` pairs in ascending column order.
    /// Zero values are dropped; the representation is canonicalized.
    pub fn from_sorted_pairs(pairs: &[(u32, f64)]) -> TransRow {
        debug_assert!(pairs.windows(2).all(|w| w[0].0 < w[1].0));
        let nonzero: Vec<(u32, f64)> = pairs.iter().copied().filter(|&(_, v)| v != 0.0).collect();
        match nonzero.len() {
            0 => TransRow::Empty,
            1 => TransRow::One(nonzero[0].0, nonzero[0].1),
            _ => TransRow::Many(RowData {
                idx: nonzero.iter().map(|&(j, _)| j).collect(),
                val: nonzero.iter().map(|&(_, v)| v).collect(),
            }),
        }
    }

    pub fn from_dense(row: &[f64]) -> TransRow {
        let pairs: Vec<(u32, f64)> = row
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v != 0.0)
            .map(|(j, &v)| (j as u32, v))
            .collect();
        TransRow::from_sorted_pairs(&pairs)
    }

    pub fn to_dense(&self, n: usize) -> Vec<f64> {
        let mut out = vec![0.0; n];
        for (j, v) in self.iter() {
            out[j] = v;
        }
        out
    }

    /// Dot product against a dense vector, accumulated in ascending column
    /// order (bit-identical to a dense scan that skips zero entries).
    pub fn dot(&self, dense: &[f64]) -> f64 {
        match self {
            TransRow::Empty => 0.0,
            TransRow::One(j, v) => v * dense[*j as usize],
            TransRow::Many(d) => {
                let mut acc = 0.0;
                for (j, v) in d.idx.iter().zip(d.val.iter()) {
                    acc += v * dense[*j as usize];
                }
                acc
            }
        }
    }

    /// Two dot products in one pass over the row. Each accumulator sums in
    /// ascending column order, exactly as the single-vector `dot` would.
    pub fn dot2(&self, u1: &[f64], u2: &[f64]) -> (f64, f64) {
        match self {
            TransRow::Empty => (0.0, 0.0),
            TransRow::One(j, v) => (v * u1[*j as usize], v * u2[*j as usize]),
            TransRow::Many(d) => {
                let mut a = 0.0;
                let mut b = 0.0;
                for (j, v) in d.idx.iter().zip(d.val.iter()) {
                    a += v * u1[*j as usize];
                    b += v * u2[*j as usize];
                }
                (a, b)
            }
        }
    }

    /// Sum of the entries (the retained probability mass).
    pub fn sum(&self) -> f64 {
        match self {
            TransRow::Empty => 0.0,
            TransRow::One(_, v) => *v,
            TransRow::Many(d) => d.val.iter().sum(),
        }
    }

    pub fn scaled(&self, c: f64) -> TransRow {
        if c == 0.0 {
            return TransRow::Empty;
        }
        if c == 1.0 {
            return self.clone();
        }
        match self {
            TransRow::Empty => TransRow::Empty,
            TransRow::One(j, v) => {
                let w = c * v;
                if w == 0.0 {
                    TransRow::Empty
                } else {
                    TransRow::One(*j, w)
                }
            }
            TransRow::Many(d) => {
                let pairs: Vec<(u32, f64)> = d
                    .idx
                    .iter()
                    .zip(d.val.iter())
                    .map(|(&j, &v)| (j, c * v))
                    .collect();
                TransRow::from_sorted_pairs(&pairs)
            }
        }
    }

    /// Largest absolute entrywise difference between two rows.
    pub fn max_abs_diff(&self, other: &TransRow) -> f64 {
        let mut a = self.iter();
        let mut b = other.iter();
        let mut cur_a = a.next();
        let mut cur_b = b.next();
        let mut worst = 0.0f64;
        loop {
            match (cur_a, cur_b) {
                (None, None) => return worst,
                (Some((_, va)), None) => {
                    worst = worst.max(va.abs());
                    cur_a = a.next();
                }
                (None, Some((_, vb))) => {
                    worst = worst.max(vb.abs());
                    cur_b = b.next();
                }
                (Some((ja, va)), Some((jb, vb))) => {
                    if ja == jb {
                        worst = worst.max((va - vb).abs());
                        cur_a = a.next();
                        cur_b = b.next();
                    } else if ja < jb {
                        worst = worst.max(va.abs());
                        cur_a = a.next();
                    } else {
                        worst = worst.max(vb.abs());
                        cur_b = b.next();
                    }
                }
            }
        }
    }

    /// Approximate heap footprint, for memory accounting in long sweeps.
    pub fn heap_bytes(&self) -> usize {
        match self {
            TransRow::Many(d) => d.idx.len() * (4 + 8),
            _ => 0,
        }
    }
}

pub struct RowIter<'a> {
    row: &'a TransRow,
    pos: usize,
}

impl Iterator for RowIter<'_> {
    type Item = (usize, f64);

    fn next(&mut self) -> Option<(usize, f64)> {
        let out = match self.row {
            TransRow::Empty => None,
            TransRow::One(j, v) => (self.pos == 0).then_some((*j as usize, *v)),
            TransRow::Many(d) => d
                .idx
                .get(self.pos)
                .map(|&j| (j as usize, d.val[self.pos])),
        };
        if out.is_some() {
            self.pos += 1;
        }
        out
    }
}

/// Dense accumulator for building one row as a sum of scaled rows.
///
/// Values land in a dense buffer; touched columns are recorded and sorted on
/// drain so the resulting row is canonical. Reused across rows to avoid
/// reallocation.
pub struct Scratch {
    dense: Vec<f64>,
    touched: Vec<u32>,
}

impl Scratch {
    pub fn new(n: usize) -> Scratch {
        Scratch {
            dense: vec![0.0; n],
            touched: Vec::new(),
        }
    }

    /// Adds `coef * row` into the accumulator.
    pub fn axpy(&mut self, coef: f64, row: &TransRow) {
        if coef == 0.0 {
            return;
        }
        for (j, v) in row.iter() {
            let add = coef * v;
            if add != 0.0 {
                if self.dense[j] == 0.0 {
                    self.touched.push(j as u32);
                }
                self.dense[j] += add;
            }
        }
    }

    /// Adds a single entry.
    pub fn add(&mut self, j: usize, v: f64) {
        if v != 0.0 {
            if self.dense[j] == 0.0 {
                self.touched.push(j as u32);
            }
            self.dense[j] += v;
        }
    }

    /// Extracts the accumulated row and resets the accumulator.
    pub fn drain(&mut self) -> TransRow {
        self.touched.sort_unstable();
        let mut pairs = Vec::with_capacity(self.touched.len());
        for &j in &self.touched {
            let v = self.dense[j as usize];
            self.dense[j as usize] = 0.0;
            if v != 0.0 {
                pairs.push((j, v));
            }
        }
        self.touched.clear();
        TransRow::from_sorted_pairs(&pairs)
    }
}
