use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, LinAlgError};

/// Smith normal form of `A` together with its certificate.
///
/// `u * A * v` is the `rows x cols` matrix with `d` on the leading diagonal
/// and zeros elsewhere. `u_inv` is the inverse of `u`, kept in sync during
/// elimination so callers never have to invert a unimodular matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub d: Vec<BigInt>,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.d.len()
    }

    /// The block matrix `[D 0; 0 0]` with the shape of the input.
    pub fn normal_form(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.u.rows(), self.v.cols());
        for (i, d) in self.d.iter().enumerate() {
            out[(i, i)] = d.clone();
        }
        out
    }

    /// Recomputes `u * a * v` and compares it with the normal form.
    pub fn certifies(&self, a: &IntMatrix) -> bool {
        if self.u.rows() != a.rows() || self.v.rows() != a.cols() {
            return false;
        }
        let Ok(uav) = self.u.mul(a).and_then(|ua| ua.mul(&self.v)) else {
            return false;
        };
        uav == self.normal_form()
            && self.u.is_unimodular()
            && self.v.is_unimodular()
            && self.d.iter().all(|x| x.is_positive())
            && self.d.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }
}

/// Working state: every row operation on `a` is mirrored on `u` (and its
/// inverse on `u_inv`), every column operation on `v`.
struct Elimination {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl Elimination {
    fn new(a: IntMatrix) -> Self {
        let (rows, cols) = a.shape();
        Elimination {
            a,
            u: IntMatrix::identity(rows),
            u_inv: IntMatrix::identity(rows),
            v: IntMatrix::identity(cols),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row_multiple(dst, src, k);
        self.u.add_row_multiple(dst, src, k);
        self.u_inv.add_col_multiple(src, dst, &-k);
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col_multiple(dst, src, k);
        self.v.add_col_multiple(dst, src, k);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Applies a determinant-one 2x2 transform `l` to rows `(i, j)`.
    fn combine_rows(&mut self, i: usize, j: usize, l: [[BigInt; 2]; 2]) {
        let inv = [
            [l[1][1].clone(), -&l[0][1]],
            [-&l[1][0], l[0][0].clone()],
        ];
        self.a.combine_rows(i, j, &l);
        self.u.combine_rows(i, j, &l);
        self.u_inv.combine_cols(i, j, &inv);
    }

    fn combine_cols(&mut self, i: usize, j: usize, r: [[BigInt; 2]; 2]) {
        self.a.combine_cols(i, j, &r);
        self.v.combine_cols(i, j, &r);
    }

    /// Position of the nonzero entry of least absolute value in the
    /// trailing submatrix starting at `(t, t)`.
    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.magnitude() < self.a[(bi, bj)].magnitude()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Smallest nonzero entry in column `t` (rows below `t`) or row `t`
    /// (columns right of `t`).
    fn smallest_in_cross(&self, t: usize) -> Option<(usize, usize)> {
        let below = (t + 1..self.a.rows()).map(|i| (i, t));
        let right = (t + 1..self.a.cols()).map(|j| (t, j));
        below
            .chain(right)
            .filter(|&p| !self.a[p].is_zero())
            .min_by(|&p, &q| self.a[p].magnitude().cmp(self.a[q].magnitude()))
    }

    fn move_to_pivot(&mut self, t: usize, (i, j): (usize, usize)) {
        self.swap_rows(t, i);
        self.swap_cols(t, j);
    }

    /// Clears row `t` and column `t` outside the pivot. Each pass replaces
    /// the pivot with a strictly smaller remainder until everything divides.
    fn clear_cross(&mut self, t: usize) {
        loop {
            for i in t + 1..self.a.rows() {
                if self.a[(i, t)].is_zero() {
                    continue;
                }
                let q = self.a[(i, t)].div_floor(&self.a[(t, t)]);
                self.add_row(i, t, &-q);
            }
            for j in t + 1..self.a.cols() {
                if self.a[(t, j)].is_zero() {
                    continue;
                }
                let q = self.a[(t, j)].div_floor(&self.a[(t, t)]);
                self.add_col(j, t, &-q);
            }
            match self.smallest_in_cross(t) {
                None => return,
                Some((i, j)) => {
                    if i != t {
                        self.swap_rows(t, i);
                    } else {
                        self.swap_cols(t, j);
                    }
                }
            }
        }
    }

    fn diagonalize(&mut self) -> usize {
        let steps = self.a.rows().min(self.a.cols());
        for t in 0..steps {
            let Some(p) = self.smallest_in_block(t) else {
                return t;
            };
            self.move_to_pivot(t, p);
            self.clear_cross(t);
        }
        steps
    }

    /// Replaces `diag(x, y)` at positions `i < j` by `diag(gcd, lcm)` using
    /// a unimodular row transform and a unimodular column transform.
    fn gcd_lcm_fixup(&mut self, i: usize, j: usize) {
        let x = self.a[(i, i)].clone();
        let y = self.a[(j, j)].clone();
        let e = x.extended_gcd(&y);
        let (g, r, s) = (e.gcd, e.x, e.y);
        let xg = &x / &g;
        let yg = &y / &g;
        // [[r, s], [-y/g, x/g]] has determinant (r x + s y) / g = 1
        let l = [[r.clone(), s.clone()], [-&yg, xg.clone()]];
        let c = [[BigInt::one(), -(&s * &yg)], [BigInt::one(), &r * &xg]];
        self.combine_rows(i, j, l);
        self.combine_cols(i, j, c);
    }

    fn normalize_signs(&mut self, rank: usize) {
        for i in 0..rank {
            if self.a[(i, i)].is_negative() {
                self.negate_row(i);
            }
        }
    }

    fn enforce_divisibility(&mut self, rank: usize) {
        for i in 0..rank {
            for j in i + 1..rank {
                if !self.a[(j, j)].is_multiple_of(&self.a[(i, i)]) {
                    self.gcd_lcm_fixup(i, j);
                }
            }
        }
        self.normalize_signs(rank);
    }
}

/// Smith normal form by elementary unimodular row and column operations.
///
/// Total on every input, including empty and all-zero matrices, which give
/// rank 0 and identity transforms. Deterministic.
pub fn snf(a: &IntMatrix) -> SnfResult {
    let mut e = Elimination::new(a.clone());
    let rank = e.diagonalize();
    e.normalize_signs(rank);
    e.enforce_divisibility(rank);
    let d = (0..rank).map(|i| e.a[(i, i)].clone()).collect();
    SnfResult {
        d,
        u: e.u,
        u_inv: e.u_inv,
        v: e.v,
    }
}

/// Whether `v` is an integer combination of the columns of `m`.
///
/// With `u m v' = [D 0; 0 0]`, `v` lies in the span iff the first `rank`
/// coordinates of `u v` are divisible by the matching `d` and the rest
/// vanish.
pub fn intcol_membership(m: &IntMatrix, v: &[BigInt]) -> Result<bool, LinAlgError> {
    if v.len() != m.rows() {
        return Err(LinAlgError::DimensionMismatch {
            op: "intcol_membership",
            left: m.shape(),
            right: (v.len(), 1),
        });
    }
    let s = snf(m);
    Ok(membership_with(&s, v))
}

pub(crate) fn membership_with(s: &SnfResult, v: &[BigInt]) -> bool {
    let uv = s.u.mul_vec(v).expect("snf transform matches vector length");
    uv.iter().enumerate().all(|(i, x)| match s.d.get(i) {
        Some(d) => x.is_multiple_of(d),
        None => x.is_zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_input() {
        let a = IntMatrix::identity(2);
        let s = snf(&a);
        assert_eq!(s.d, big(&[1, 1]));
        assert!(s.certifies(&a));
    }

    #[test]
    fn zero_and_empty_inputs() {
        for a in [
            IntMatrix::zeros(2, 2),
            IntMatrix::zeros(0, 3),
            IntMatrix::zeros(3, 0),
            IntMatrix::zeros(0, 0),
        ] {
            let s = snf(&a);
            assert_eq!(s.rank(), 0);
            assert_eq!(s.u, IntMatrix::identity(a.rows()));
            assert_eq!(s.v, IntMatrix::identity(a.cols()));
            assert!(s.certifies(&a));
        }
    }

    // Frozen from the brute-force minor-gcd oracle in tests/snf_properties.rs:
    // gcd of 1x1 minors is 2 and |det| = 8.
    #[test]
    fn two_by_two() {
        let a = m(&[vec![2, 4], vec![6, 8]]);
        let s = snf(&a);
        assert_eq!(s.d, big(&[2, 4]));
        assert!(s.certifies(&a));
    }

    #[test]
    fn single_row() {
        let a = m(&[vec![3, 5]]);
        let s = snf(&a);
        assert_eq!(s.d, big(&[1]));
        assert!(s.certifies(&a));
    }

    #[test]
    fn needs_divisibility_repair() {
        // diagonal input that is not a divisibility chain
        let a = m(&[vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10]]);
        let s = snf(&a);
        assert_eq!(s.d, big(&[2, 2, 60]));
        assert!(s.certifies(&a));
    }

    #[test]
    fn u_inv_is_inverse() {
        let a = m(&[vec![2, 0, 1], vec![0, 2, 1]]);
        let s = snf(&a);
        assert_eq!(s.d, big(&[1, 2]));
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), IntMatrix::identity(2));
    }

    #[test]
    fn membership_examples() {
        let two = m(&[vec![2, 0], vec![0, 2]]);
        assert!(intcol_membership(&two, &big(&[2, 4])).unwrap());
        assert!(!intcol_membership(&two, &big(&[1, 1])).unwrap());
        let a = m(&[vec![2, 4], vec![6, 8]]);
        assert!(intcol_membership(&a, &big(&[2, 6])).unwrap());
        assert!(!intcol_membership(&a, &big(&[1, 0])).unwrap());
    }

    #[test]
    fn membership_in_rank_deficient_lattice() {
        let a = m(&[vec![1, 2], vec![1, 2]]);
        assert!(intcol_membership(&a, &big(&[3, 3])).unwrap());
        assert!(!intcol_membership(&a, &big(&[3, 4])).unwrap());
        assert!(intcol_membership(&IntMatrix::zeros(2, 0), &big(&[0, 0])).unwrap());
        assert!(!intcol_membership(&IntMatrix::zeros(2, 0), &big(&[0, 1])).unwrap());
    }

    #[test]
    fn membership_dimension_mismatch() {
        let a = m(&[vec![1, 2]]);
        assert!(matches!(
            intcol_membership(&a, &big(&[1, 2])),
            Err(LinAlgError::DimensionMismatch { .. })
        ));
    }
}
