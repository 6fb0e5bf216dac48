use crate::error::OracleError;

/// Coefficients modulo 2, 3 or 5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField(u32);

impl PrimeField {
    pub const F2: PrimeField = PrimeField(2);
    pub const F3: PrimeField = PrimeField(3);
    pub const F5: PrimeField = PrimeField(5);

    pub fn new(p: u32) -> Result<Self, OracleError> {
        match p {
            2 | 3 | 5 => Ok(PrimeField(p)),
            _ => Err(OracleError::UnsupportedField(p)),
        }
    }

    pub fn modulus(self) -> u32 {
        self.0
    }

    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    fn inv(self, x: u32) -> u32 {
        // Fermat; p is tiny
        let mut r = 1;
        for _ in 0..self.0 - 2 {
            r = r * x % self.0;
        }
        r
    }
}

/// Bring `m` to reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<u32>], ncols: usize, f: PrimeField) -> Vec<usize> {
    let p = f.0;
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(piv) = (row..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, piv);
        let inv = f.inv(m[row][col]);
        for x in m[row].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..m.len() {
            if r != row && m[r][col] != 0 {
                let c = m[r][col];
                for k in 0..ncols {
                    let sub = c * m[row][k] % p;
                    m[r][k] = (m[r][k] + p - sub) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

fn reduce_rows(rows: &[Vec<i64>], f: PrimeField) -> (Vec<Vec<u32>>, usize) {
    let ncols = rows.first().map_or(0, Vec::len);
    let m = rows
        .iter()
        .map(|r| r.iter().map(|&x| f.reduce(x)).collect())
        .collect();
    (m, ncols)
}

/// Rank over F_p of an integer matrix given by rows.
pub fn rank_mod_p(rows: &[Vec<i64>], f: PrimeField) -> usize {
    let (mut m, ncols) = reduce_rows(rows, f);
    rref(&mut m, ncols, f).len()
}

pub(crate) fn rank_reduced(mut m: Vec<Vec<u32>>, ncols: usize, f: PrimeField) -> usize {
    rref(&mut m, ncols, f).len()
}

/// A basis of the right kernel `{x : A x = 0}` over F_p, each vector of length `ncols`.
pub fn nullspace_mod_p(rows: &[Vec<i64>], ncols: usize, f: PrimeField) -> Vec<Vec<u32>> {
    let mut m: Vec<Vec<u32>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| f.reduce(x)).collect())
        .collect();
    let pivots = rref(&mut m, ncols, f);
    let p = f.0;
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0; ncols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][free]) % p;
            }
            v
        })
        .collect()
}
