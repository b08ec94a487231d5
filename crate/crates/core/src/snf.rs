//! Smith normal form over the integers and a congruence solver built on it.
//!
//! The solver answers systems A x = d where A has integer entries and the
//! unknowns and right-hand side live in Q/Z. Row operations are mirrored onto
//! the right-hand side instead of materializing the left transform, which
//! keeps tall systems (thousands of congruences, dozens of unknowns) cheap.
//! Since Q/Z is divisible, a diagonalized row s * x = e is solvable whenever
//! s != 0; obstructions only arise on zero rows with nonzero targets.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, v) in row.into_iter().enumerate() {
                *m.get_mut(i, j) = BigInt::from(v);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] += v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_i -= q * row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(t, j) * q;
            self.data[i * self.cols + j] -= v;
        }
    }

    /// col_j -= q * col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, t) * q;
            self.data[i * self.cols + j] -= v;
        }
    }
}

/// Fractional part in [0, 1).
pub fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// Diagonalization result: `diag` holds the pivots (rank many, nonzero),
/// `col_transform` is V with original_x = V * reduced_x.
struct Diagonalized {
    diag: Vec<BigInt>,
    col_transform: IntMatrix,
    rhs: Vec<BigRational>,
}

/// Brings `a` to diagonal form by unimodular row and column operations,
/// mirroring row operations onto `rhs` and column operations onto V.
fn diagonalize(mut a: IntMatrix, mut rhs: Vec<BigRational>) -> Diagonalized {
    assert_eq!(a.rows, rhs.len());
    let cols = a.cols;
    let mut v = IntMatrix::zeros(cols, cols);
    for j in 0..cols {
        *v.get_mut(j, j) = BigInt::one();
    }
    let mut diag = Vec::new();
    let mut t = 0usize;
    while t < a.rows && t < a.cols {
        // Locate a nonzero entry of minimal absolute value in the submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..a.rows {
            for j in t..a.cols {
                if !a.get(i, j).is_zero()
                    && pivot.map_or(true, |(pi, pj)| {
                        a.get(i, j).abs() < a.get(pi, pj).abs()
                    })
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap_rows(t, pi);
        rhs.swap(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        // Clear the pivot column and row; repeat because clearing one can
        // reintroduce entries in the other.
        loop {
            let mut dirty = false;
            for i in t + 1..a.rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let (q, r) = a.get(i, t).div_mod_floor(a.get(t, t));
                a.row_sub(i, t, &q);
                let d = &rhs[t] * BigRational::from(q.clone());
                rhs[i] -= d;
                if !r.is_zero() {
                    // Remainder is smaller than the pivot: promote it.
                    a.swap_rows(t, i);
                    rhs.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..a.cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let (q, r) = a.get(t, j).div_mod_floor(a.get(t, t));
                a.col_sub(j, t, &q);
                v.col_sub(j, t, &q);
                if !r.is_zero() {
                    a.swap_cols(t, j);
                    v.swap_cols(t, j);
                    dirty = true;
                }
            }
            let col_clear = (t + 1..a.rows).all(|i| a.get(i, t).is_zero());
            let row_clear = (t + 1..a.cols).all(|j| a.get(t, j).is_zero());
            if !dirty && col_clear && row_clear {
                break;
            }
        }
        diag.push(a.get(t, t).clone());
        t += 1;
    }
    Diagonalized {
        diag,
        col_transform: v,
        rhs,
    }
}

/// Smith normal form diagonal (with the divisibility chain d1 | d2 | ...),
/// without transforms. Signs are normalized to be nonnegative.
pub fn smith_diagonal(a: IntMatrix) -> Vec<BigInt> {
    let rows = a.rows;
    let d = diagonalize(a, vec![BigRational::zero(); rows]);
    let mut diag = d.diag;
    // Enforce the divisibility chain pairwise: replace (a, b) by
    // (gcd(a, b), lcm(a, b)) until stable.
    let n = diag.len();
    loop {
        let mut changed = false;
        for i in 0..n.saturating_sub(1) {
            let (a, b) = (diag[i].clone(), diag[i + 1].clone());
            if (&b % &a).is_zero() {
                continue;
            }
            let g = a.gcd(&b);
            let l = (&a / &g) * &b;
            diag[i] = g;
            diag[i + 1] = l;
            changed = true;
        }
        if !changed {
            break;
        }
    }
    diag.iter().map(|d| d.abs()).collect()
}

/// Solves A x = d with x and d read modulo 1. Returns a witness vector with
/// entries in [0, 1) or None when no solution exists over Q/Z.
pub fn solve_mod1(a: IntMatrix, d: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let rows = a.rows;
    let cols = a.cols;
    let out = diagonalize(a, d);
    let rank = out.diag.len();
    // Zero rows: the target must vanish modulo 1.
    for i in rank..rows {
        if !frac(&out.rhs[i]).is_zero() {
            return None;
        }
    }
    let mut reduced = vec![BigRational::zero(); cols];
    for (i, s) in out.diag.iter().enumerate() {
        debug_assert!(!s.is_zero());
        reduced[i] = frac(&out.rhs[i]) / BigRational::from(s.clone());
    }
    // Map back through the column transform: x = V * reduced.
    let v = out.col_transform;
    let mut x = vec![BigRational::zero(); cols];
    for (i, xi) in x.iter_mut().enumerate() {
        for (j, r) in reduced.iter().enumerate() {
            if !r.is_zero() && !v.get(i, j).is_zero() {
                *xi += BigRational::from(v.get(i, j).clone()) * r;
            }
        }
        *xi = frac(xi);
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn textbook_smith_diagonal() {
        let a = IntMatrix::from_rows(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(smith_diagonal(a), vec![big(2), big(6), big(12)]);
    }

    #[test]
    fn diagonal_chain_divides() {
        let a = IntMatrix::from_rows(vec![vec![6, 0], vec![0, 4]]);
        assert_eq!(smith_diagonal(a), vec![big(2), big(12)]);
    }

    #[test]
    fn rank_deficient_diagonal() {
        let a = IntMatrix::from_rows(vec![vec![1, 2], vec![2, 4], vec![3, 6]]);
        let d = smith_diagonal(a);
        assert_eq!(d, vec![big(1)]);
    }

    #[test]
    fn solve_simple_congruence() {
        // 2x = 1/2 mod 1 has the solution x = 1/4.
        let a = IntMatrix::from_rows(vec![vec![2]]);
        let x = solve_mod1(a, vec![rat(1, 2)]).unwrap();
        assert_eq!(frac(&(rat(2, 1) * &x[0])), rat(1, 2));
    }

    #[test]
    fn solve_detects_obstruction() {
        // x - x = 1/3 is unsolvable.
        let a = IntMatrix::from_rows(vec![vec![0]]);
        assert!(solve_mod1(a, vec![rat(1, 3)]).is_none());
    }

    #[test]
    fn solve_overdetermined_system() {
        // x + y = 1/3, x - y = 1/3, 2x = 2/3: consistent.
        let a = IntMatrix::from_rows(vec![vec![1, 1], vec![1, -1], vec![2, 0]]);
        let d = vec![rat(1, 3), rat(1, 3), rat(2, 3)];
        let x = solve_mod1(a.clone(), d.clone()).unwrap();
        for i in 0..3 {
            let mut acc = BigRational::zero();
            for j in 0..2 {
                acc += BigRational::from(a.get(i, j).clone()) * &x[j];
            }
            assert_eq!(frac(&acc), frac(&d[i]), "row {i}");
        }
    }

    #[test]
    fn randomized_solver_roundtrip() {
        use rand::{rngs::StdRng, Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(1..5);
            let mut a = IntMatrix::zeros(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    *a.get_mut(i, j) = BigInt::from(rng.gen_range(-4i64..5));
                }
            }
            // Plant a solution and rebuild the right-hand side from it.
            let planted: Vec<BigRational> =
                (0..cols).map(|_| rat(rng.gen_range(0..12), 12)).collect();
            let d: Vec<BigRational> = (0..rows)
                .map(|i| {
                    let mut acc = BigRational::zero();
                    for j in 0..cols {
                        acc += BigRational::from(a.get(i, j).clone()) * &planted[j];
                    }
                    frac(&acc)
                })
                .collect();
            let x = solve_mod1(a.clone(), d.clone()).expect("planted system must be solvable");
            for i in 0..rows {
                let mut acc = BigRational::zero();
                for j in 0..cols {
                    acc += BigRational::from(a.get(i, j).clone()) * &x[j];
                }
                assert_eq!(frac(&acc), d[i]);
            }
        }
    }
}
