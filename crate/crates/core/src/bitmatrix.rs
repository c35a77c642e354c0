//! Dense row-major bit-packed binary matrix.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

const WORD_BITS: usize = 64;

/// `num_rows × num_cols` binary matrix, each row padded to a whole number of
/// `u64` words. Padding bits are always zero.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    num_rows: usize,
    num_cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(num_rows: usize, num_cols: usize) -> Self {
        let words_per_row = num_cols.div_ceil(WORD_BITS);
        Self {
            num_rows,
            num_cols,
            words_per_row,
            bits: vec![0; num_rows * words_per_row],
        }
    }

    pub fn ones(num_rows: usize, num_cols: usize) -> Self {
        let mut m = Self::zeros(num_rows, num_cols);
        for i in 0..num_rows {
            for j in 0..num_cols {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of `bool`s; all rows must share a width.
    pub fn from_rows<R: AsRef<[bool]>>(rows: &[R]) -> Option<Self> {
        let width = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), width);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != width {
                return None;
            }
            for (j, &b) in row.iter().enumerate() {
                m.set(i, j, b);
            }
        }
        Some(m)
    }

    pub fn num_rows(&self) -> usize {
        self.num_rows
    }

    pub fn num_cols(&self) -> usize {
        self.num_cols
    }

    /// # Panics
    /// On out-of-range indices.
    pub fn get(&self, row: usize, col: usize) -> bool {
        assert!(row < self.num_rows && col < self.num_cols, "index ({row}, {col}) out of range");
        self.bits[row * self.words_per_row + col / WORD_BITS] >> (col % WORD_BITS) & 1 == 1
    }

    /// # Panics
    /// On out-of-range indices.
    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        assert!(row < self.num_rows && col < self.num_cols, "index ({row}, {col}) out of range");
        let word = &mut self.bits[row * self.words_per_row + col / WORD_BITS];
        let mask = 1u64 << (col % WORD_BITS);
        if value {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    pub fn flip(&mut self, row: usize, col: usize) {
        let v = self.get(row, col);
        self.set(row, col, !v);
    }

    pub fn row(&self, row: usize) -> BitRow<'_> {
        let start = row * self.words_per_row;
        BitRow {
            words: &self.bits[start..start + self.words_per_row],
            len: self.num_cols,
        }
    }

    pub(crate) fn row_words_mut(&mut self, row: usize) -> &mut [u64] {
        let start = row * self.words_per_row;
        &mut self.bits[start..start + self.words_per_row]
    }

    pub fn column_sums(&self) -> Vec<u64> {
        let mut sums = vec![0u64; self.num_cols];
        for i in 0..self.num_rows {
            for j in self.row(i).ones() {
                sums[j] += 1;
            }
        }
        sums
    }

    /// Column-major transpose: column `j` packed over rows, `words` per column.
    pub(crate) fn column_bitsets(&self) -> (Vec<u64>, usize) {
        let words = self.num_rows.div_ceil(WORD_BITS).max(1);
        let mut cols = vec![0u64; self.num_cols * words];
        for i in 0..self.num_rows {
            for j in self.row(i).ones() {
                cols[j * words + i / WORD_BITS] |= 1u64 << (i % WORD_BITS);
            }
        }
        (cols, words)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.num_rows, self.num_cols)?;
        for i in 0..self.num_rows {
            writeln!(f, "{}", self.row(i))?;
        }
        Ok(())
    }
}

/// Borrowed view of one matrix row.
#[derive(Clone, Copy)]
pub struct BitRow<'a> {
    words: &'a [u64],
    len: usize,
}

impl<'a> BitRow<'a> {
    pub fn from_words(words: &'a [u64], len: usize) -> Self {
        assert!(words.len() * WORD_BITS >= len);
        Self { words, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, col: usize) -> Option<bool> {
        (col < self.len).then(|| self.words[col / WORD_BITS] >> (col % WORD_BITS) & 1 == 1)
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + 'a {
        let words = self.words;
        words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            core::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD_BITS + b)
            })
        })
    }
}

impl fmt::Display for BitRow<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.len {
            f.write_str(if self.get(j) == Some(true) { "1" } else { "0" })?;
        }
        Ok(())
    }
}
