//! Dense matrices over the field with five elements and their rank.

/// Rectangular matrix with entries in Z/5Z, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct F5Matrix {
    rows: Vec<Vec<u8>>,
}

impl F5Matrix {
    /// Entries are reduced mod 5 on construction. Panics if rows have
    /// differing lengths.
    pub fn new(rows: Vec<Vec<u8>>) -> Self {
        if let Some(w) = rows.first().map(Vec::len) {
            assert!(rows.iter().all(|r| r.len() == w), "ragged matrix");
        }
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| x % 5).collect())
            .collect();
        F5Matrix { rows }
    }

    pub fn empty() -> Self {
        F5Matrix { rows: Vec::new() }
    }

    pub fn push_row(&mut self, row: Vec<u8>) {
        if let Some(w) = self.rows.first().map(Vec::len) {
            assert_eq!(row.len(), w, "row width mismatch");
        }
        self.rows.push(row.into_iter().map(|x| x % 5).collect());
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// Row rank over GF(5) by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<u8>> = self.rows.clone();
        let ncols = m.first().map_or(0, Vec::len);
        let mut rank = 0;
        for col in 0..ncols {
            let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(rank, pivot);
            let inv = INV5[m[rank][col] as usize];
            for x in m[rank].iter_mut() {
                *x = *x * inv % 5;
            }
            let pivot_row = m[rank].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != rank && row[col] != 0 {
                    let c = 5 - row[col];
                    for (x, &p) in row.iter_mut().zip(&pivot_row) {
                        *x = (*x + c * p) % 5;
                    }
                }
            }
            rank += 1;
            if rank == m.len() {
                break;
            }
        }
        rank
    }
}

const INV5: [u8; 5] = [0, 1, 3, 2, 4];

pub fn f5_rank(rows: &[Vec<u8>]) -> usize {
    F5Matrix::new(rows.to_vec()).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: row-echelon with last-pivot selection order.
    fn rank_oracle(rows: &[Vec<u8>]) -> usize {
        let mut basis: Vec<Vec<u8>> = Vec::new();
        for row in rows {
            let mut row: Vec<u8> = row.iter().map(|&x| x % 5).collect();
            for b in &basis {
                let lead = b.iter().position(|&x| x != 0).unwrap();
                if row[lead] != 0 {
                    let c = 5 - row[lead] * INV5[b[lead] as usize] % 5;
                    for (x, &bv) in row.iter_mut().zip(b) {
                        *x = (*x + c * bv) % 5;
                    }
                }
            }
            if row.iter().any(|&x| x != 0) {
                basis.push(row);
            }
        }
        basis.len()
    }

    #[test]
    fn empty_matrix() {
        assert_eq!(F5Matrix::empty().rank(), 0);
    }

    #[test]
    fn proportional_rows() {
        assert_eq!(f5_rank(&[vec![1, 2], vec![2, 4]]), 1);
    }

    #[test]
    fn full_rank() {
        assert_eq!(f5_rank(&[vec![1, 0], vec![0, 4]]), 2);
    }

    #[test]
    fn agrees_with_oracle_on_random_matrices() {
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..1_000 {
            let nrows = (next() % 8 + 1) as usize;
            let ncols = (next() % 8 + 1) as usize;
            let rows: Vec<Vec<u8>> = (0..nrows)
                .map(|_| (0..ncols).map(|_| (next() % 5) as u8).collect())
                .collect();
            assert_eq!(f5_rank(&rows), rank_oracle(&rows));
        }
    }
}
