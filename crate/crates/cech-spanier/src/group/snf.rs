//! Smith normal form over the integers, with the transforming unimodular
//! matrices, used to decide membership in the row space of an integer
//! relation matrix.

/// Decomposition `U · A · V = D` with `U`, `V` unimodular and `D` diagonal
/// with a divisibility chain `d1 | d2 | …`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: Vec<Vec<i128>>,
    pub d: Vec<Vec<i128>>,
    pub v: Vec<Vec<i128>>,
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let (n, m) = (a.len(), b[0].len());
    let k = b.len();
    let mut out = vec![vec![0i128; m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l] == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += a[i][l] * b[l][j];
            }
        }
    }
    out
}

/// Determinant by fraction-free elimination; used to confirm unimodularity.
pub fn determinant(a: &[Vec<i128>]) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = a.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let swap = (k + 1..n).find(|&i| m[i][k] != 0);
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Computes the Smith normal form of `a` (rows × cols, possibly empty).
pub fn smith_normal_form(a: &[Vec<i128>]) -> Smith {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut d: Vec<Vec<i128>> = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        // find a pivot: the nonzero entry of least magnitude in the
        // remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if d[i][j] != 0
                    && pivot
                        .map(|(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        for row in d.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }

        // clear the pivot row and column; restart if a reduction leaves a
        // nonzero remainder elsewhere
        let mut clean = true;
        for i in t + 1..rows {
            if d[i][t] != 0 {
                let q = d[i][t].div_euclid(d[t][t]);
                for j in 0..cols {
                    d[i][j] -= q * d[t][j];
                }
                for j in 0..rows {
                    u[i][j] -= q * u[t][j];
                }
                if d[i][t] != 0 {
                    clean = false;
                }
            }
        }
        for j in t + 1..cols {
            if d[t][j] != 0 {
                let q = d[t][j].div_euclid(d[t][t]);
                for row in d.iter_mut() {
                    row[j] -= q * row[t];
                }
                for row in v.iter_mut() {
                    row[j] -= q * row[t];
                }
                if d[t][j] != 0 {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }
        // enforce divisibility d[t][t] | d[i][j] on the rest of the block
        let mut divisible = true;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if d[i][j] % d[t][t] != 0 {
                    // fold row i into row t so the elimination revisits it
                    for l in 0..cols {
                        d[t][l] += d[i][l];
                    }
                    for l in 0..rows {
                        u[t][l] += u[i][l];
                    }
                    divisible = false;
                    break 'scan;
                }
            }
        }
        if !divisible {
            continue;
        }
        if d[t][t] < 0 {
            for j in 0..cols {
                d[t][j] = -d[t][j];
            }
            for j in 0..rows {
                u[t][j] = -u[t][j];
            }
        }
        t += 1;
    }
    Smith { u, d, v }
}

impl Smith {
    /// Diagonal entries, including trailing zeros up to min(rows, cols).
    pub fn diagonal(&self) -> Vec<i128> {
        let rows = self.d.len();
        let cols = self.d.first().map(|r| r.len()).unwrap_or(0);
        (0..rows.min(cols)).map(|i| self.d[i][i]).collect()
    }
}

/// Whether the integer vector `e` lies in the row space (integer span of
/// the rows) of the matrix decomposed in `smith`. With `U·A·V = D`, this
/// holds iff `e·V` is componentwise divisible by the diagonal, with zeros
/// where the diagonal is zero.
pub fn in_row_space(smith: &Smith, e: &[i128]) -> bool {
    let cols = e.len();
    let mut ev = vec![0i128; cols];
    for j in 0..cols {
        for (k, &ek) in e.iter().enumerate() {
            ev[j] += ek * smith.v[k][j];
        }
    }
    let diag = smith.diagonal();
    for (j, &val) in ev.iter().enumerate() {
        let d = diag.get(j).copied().unwrap_or(0);
        if d == 0 {
            if val != 0 {
                return false;
            }
        } else if val % d != 0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: Vec<Vec<i128>>) {
        let s = smith_normal_form(&a);
        let rows = a.len();
        let cols = a.first().map(|r| r.len()).unwrap_or(0);
        let uav = mat_mul(&mat_mul(&s.u, &a), &s.v);
        assert_eq!(uav, s.d, "U·A·V must equal D for {a:?}");
        assert_eq!(determinant(&s.u).abs(), 1, "U unimodular");
        assert_eq!(determinant(&s.v).abs(), 1, "V unimodular");
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    assert_eq!(s.d[i][j], 0, "D diagonal");
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if w[0] != 0 {
                assert_eq!(w[1] % w[0], 0, "divisibility chain in {diag:?}");
            } else {
                assert_eq!(w[1], 0, "zeros trail in {diag:?}");
            }
        }
    }

    #[test]
    fn small_fixed_matrices() {
        check(vec![vec![2, 4], vec![6, 8]]);
        check(vec![vec![0, 0], vec![0, 0]]);
        check(vec![vec![1]]);
        check(vec![vec![3, 0], vec![0, 5]]);
        check(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        check(vec![vec![6, 10, 15]]);
    }

    #[test]
    fn known_invariant_factors() {
        let s = smith_normal_form(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        assert_eq!(s.diagonal(), vec![2, 2, 156]);
    }

    #[test]
    fn row_space_membership() {
        // rows generate {(x, y) : x ≡ y mod 2} with index-2 sublattice 2Z × Z? no:
        // span of (2,0) and (0,1)
        let a = vec![vec![2, 0], vec![0, 1]];
        let s = smith_normal_form(&a);
        assert!(in_row_space(&s, &[4, 3]));
        assert!(!in_row_space(&s, &[3, 3]));
        // empty relation matrix: only the zero vector
        let empty = smith_normal_form(&[vec![0, 0]]);
        assert!(in_row_space(&empty, &[0, 0]));
        assert!(!in_row_space(&empty, &[1, 0]));
    }
}
