//! Dense linear algebra over a prime field. Matrices are row vectors.

use super::field::PrimeField;

pub type Matrix = Vec<Vec<u64>>;

/// Reduced row echelon form in place. Returns the pivot column of each
/// nonzero row; nonzero rows end up first, in pivot order, and zero rows
/// are truncated.
pub fn rref(rows: &mut Matrix, f: &PrimeField) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let factor = row[c];
            for (x, &p) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = f.sub(*x, f.mul(factor, p));
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : A x = 0}` for a square matrix `A`.
pub fn nullspace(a: &Matrix, f: &PrimeField) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, Vec::len);
    let mut rows = a.clone();
    let pivots = rref(&mut rows, f);
    let mut is_pivot = vec![false; n];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..n)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0; n];
            v[free] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                v[pc] = f.neg(row[free]);
            }
            v
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[u64], f: &PrimeField) -> Vec<u64> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y))))
        .collect()
}

/// Characteristic polynomial `det(xI − A)` via reduction to upper
/// Hessenberg form followed by the standard determinant recurrence.
pub fn charpoly(a: &Matrix, f: &PrimeField) -> Vec<u64> {
    let n = a.len();
    let mut h = a.clone();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = f.inv(h[m][m - 1]);
        for j in m + 1..n {
            if h[j][m - 1] == 0 {
                continue;
            }
            let u = f.mul(h[j][m - 1], inv);
            // row_j -= u · row_m, then col_m += u · col_j
            for c in 0..n {
                let t = f.mul(u, h[m][c]);
                h[j][c] = f.sub(h[j][c], t);
            }
            for row in h.iter_mut() {
                let t = f.mul(u, row[j]);
                row[m] = f.add(row[m], t);
            }
        }
    }

    // polys[m] = characteristic polynomial of the leading m×m block.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        // (x − h[m][m]) · polys[m]
        let prev = &polys[m];
        let mut next = vec![0; prev.len() + 1];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = f.add(next[i + 1], c);
            next[i] = f.sub(next[i], f.mul(h[m][m], c));
        }
        let mut t = 1;
        for i in 1..=m {
            t = f.mul(t, h[m - i + 1][m - i]);
            let coeff = f.mul(t, h[m - i][m]);
            if coeff == 0 {
                continue;
            }
            for (k, &c) in polys[m - i].iter().enumerate() {
                next[k] = f.sub(next[k], f.mul(coeff, c));
            }
        }
        polys.push(next);
    }
    polys.pop().expect("at least the constant polynomial")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Determinant by elimination, an independent route to `charpoly(λ)`.
    fn det(mut a: Matrix, f: &PrimeField) -> u64 {
        let n = a.len();
        let mut d = 1;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| a[i][c] != 0) else {
                return 0;
            };
            if p != c {
                a.swap(p, c);
                d = f.neg(d);
            }
            d = f.mul(d, a[c][c]);
            let inv = f.inv(a[c][c]);
            for i in c + 1..n {
                let factor = f.mul(a[i][c], inv);
                for j in c..n {
                    let t = f.mul(factor, a[c][j]);
                    a[i][j] = f.sub(a[i][j], t);
                }
            }
        }
        d
    }

    fn pseudo_matrix(n: usize, seed: u64, f: &PrimeField) -> Matrix {
        let mut s = seed;
        (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        // sparse-ish, so the Hessenberg pivot search is exercised
                        if (s >> 33) % 3 == 0 { 0 } else { f.reduce(s >> 40) }
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn charpoly_matches_determinant() {
        let f = PrimeField::new(10_007);
        for (n, seed) in [(1, 1), (2, 2), (5, 3), (9, 4), (16, 5)] {
            let a = pseudo_matrix(n, seed, &f);
            let cp = charpoly(&a, &f);
            assert_eq!(cp.len(), n + 1);
            for lambda in [0u64, 1, 17, 5000] {
                let shifted: Matrix = (0..n)
                    .map(|i| (0..n).map(|j| {
                        let diag = if i == j { lambda } else { 0 };
                        f.sub(diag, a[i][j])
                    }).collect())
                    .collect();
                assert_eq!(f.poly_eval(&cp, lambda), det(shifted, &f), "n={n} λ={lambda}");
            }
        }
    }

    #[test]
    fn nullspace_is_annihilated() {
        let f = PrimeField::new(101);
        let a: Matrix = vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]];
        let ns = nullspace(&a, &f);
        assert_eq!(ns.len(), 1);
        assert!(mat_vec(&a, &ns[0], &f).iter().all(|&x| x == 0));
    }
}
