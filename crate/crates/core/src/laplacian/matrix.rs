use std::fmt;

use crate::polyring::Polynomial;

use super::LaplacianError;

/// Dense square matrix of polynomials, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    size: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(size: usize) -> Self {
        PolyMatrix {
            size,
            entries: vec![Polynomial::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m.set(i, i, Polynomial::one());
        }
        m
    }

    /// Panics if the rows are ragged or not square.
    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Self {
        let size = rows.len();
        assert!(
            rows.iter().all(|r| r.len() == size),
            "matrix must be square"
        );
        PolyMatrix {
            size,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.size + j] = p;
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Polynomial {
        &mut self.entries[i * self.size + j]
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.size..(i + 1) * self.size]
    }

    pub fn rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.size).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn row_sums_vanish(&self) -> bool {
        (0..self.size).all(|i| self.row(i).iter().cloned().sum::<Polynomial>().is_zero())
    }

    pub fn mul_vec(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        assert_eq!(v.len(), self.size, "vector length mismatch");
        (0..self.size)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Removes `row` and `col`, returning the minor and `(-1)^(row+col)`.
    pub fn reduce(&self, row: usize, col: usize) -> Result<(PolyMatrix, i8), LaplacianError> {
        if row >= self.size || col >= self.size {
            return Err(LaplacianError::IndexOutOfRange {
                row,
                col,
                size: self.size,
            });
        }
        let n = self.size - 1;
        let mut entries = Vec::with_capacity(n * n);
        for i in (0..self.size).filter(|&i| i != row) {
            for j in (0..self.size).filter(|&j| j != col) {
                entries.push(self.get(i, j).clone());
            }
        }
        let sign = if (row + col).is_multiple_of(2) { 1 } else { -1 };
        Ok((PolyMatrix { size: n, entries }, sign))
    }
}

impl fmt::Display for PolyMatrix {
    /// Text grid, one row per line, columns padded to a common width.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|p| p.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.size {
            let row: Vec<String> = (0..self.size)
                .map(|j| format!("{:>width$}", cells[i * self.size + j]))
                .collect();
            writeln!(f, "[ {} ]", row.join(" | "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix {}x{}\n{self}", self.size, self.size)
    }
}
