//! Column Hermite and Smith normal forms over a Euclidean domain.

use crate::matrix::Matrix;
use crate::scalar::EuclideanDomain;

/// Column Hermite form `H = M · U` with `U` unimodular.
#[derive(Clone, Debug)]
pub struct ColumnHermite<R: EuclideanDomain> {
    pub h: Matrix<R>,
    pub u: Matrix<R>,
    /// Pivot row of each of the first `rank` columns of `h`.
    pub pivots: Vec<usize>,
}

impl<R: EuclideanDomain> ColumnHermite<R> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns of `U` spanning the kernel of `M`.
    pub fn kernel(&self) -> Matrix<R> {
        let n = self.u.cols();
        self.u.submatrix(0..self.u.rows(), self.rank()..n)
    }

    /// The nonzero columns of `H`: a basis of the column module.
    pub fn basis(&self) -> Matrix<R> {
        self.h.submatrix(0..self.h.rows(), 0..self.rank())
    }
}

fn col_axpy<R: EuclideanDomain>(m: &mut Matrix<R>, dst: usize, src: usize, q: &R) {
    // column dst -= q * column src
    for i in 0..m.rows() {
        let s = m[(i, src)].clone();
        if !s.is_zero() {
            m[(i, dst)] = m[(i, dst)].clone() - q.clone() * s;
        }
    }
}

fn col_scale<R: EuclideanDomain>(m: &mut Matrix<R>, c: usize, k: &R) {
    for i in 0..m.rows() {
        m[(i, c)] = m[(i, c)].clone() * k.clone();
    }
}

pub fn column_hermite<R: EuclideanDomain>(m: &Matrix<R>) -> ColumnHermite<R> {
    hermite_impl(m, true)
}

/// Hermite form without tracking the transform (`u` is left empty).
pub fn column_hermite_basis<R: EuclideanDomain>(m: &Matrix<R>) -> ColumnHermite<R> {
    hermite_impl(m, false)
}

fn hermite_impl<R: EuclideanDomain>(m: &Matrix<R>, track: bool) -> ColumnHermite<R> {
    let mut h = m.clone();
    let mut u = Matrix::identity(if track { m.cols() } else { 0 });
    let mut pivots = Vec::new();
    let mut pc = 0;
    for row in 0..h.rows() {
        if pc == h.cols() {
            break;
        }
        loop {
            // Smallest nonzero entry in this row among active columns.
            let best = (pc..h.cols())
                .filter(|&j| !h[(row, j)].is_zero())
                .min_by_key(|&j| h[(row, j)].size());
            let Some(b) = best else { break };
            h.swap_cols(pc, b);
            if track {
                u.swap_cols(pc, b);
            }
            let mut done = true;
            for j in pc + 1..h.cols() {
                if h[(row, j)].is_zero() {
                    continue;
                }
                let (q, r) = h[(row, j)].div_rem(&h[(row, pc)]);
                col_axpy(&mut h, j, pc, &q);
                if track {
                    col_axpy(&mut u, j, pc, &q);
                }
                if !r.is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(row, pc)].is_zero() {
            continue;
        }
        let (_, unit_inv) = h[(row, pc)].normalize_unit();
        col_scale(&mut h, pc, &unit_inv);
        if track {
            col_scale(&mut u, pc, &unit_inv);
        }
        // Reduce earlier pivot columns modulo this pivot.
        for j in 0..pc {
            let (q, _) = h[(row, j)].div_rem(&h[(row, pc)]);
            if !q.is_zero() {
                col_axpy(&mut h, j, pc, &q);
                if track {
                    col_axpy(&mut u, j, pc, &q);
                }
            }
        }
        pivots.push(row);
        pc += 1;
    }
    ColumnHermite { h, u, pivots }
}

/// Solve `basis · X = m` for `X` when `basis` is a column Hermite basis and
/// the columns of `m` lie in its column module.
pub fn hermite_coordinates<R: EuclideanDomain>(herm: &ColumnHermite<R>, m: &Matrix<R>) -> Option<Matrix<R>> {
    let k = herm.rank();
    let mut x = Matrix::zeros(k, m.cols());
    for c in 0..m.cols() {
        let mut rest: Vec<R> = m.column(c);
        for (j, &p) in herm.pivots.iter().enumerate() {
            let q = rest[p].exact_div(&herm.h[(p, j)])?;
            for (i, r) in rest.iter_mut().enumerate() {
                let hij = &herm.h[(i, j)];
                if !hij.is_zero() {
                    *r = r.clone() - q.clone() * hij.clone();
                }
            }
            x[(j, c)] = q;
        }
        if rest.iter().any(|r| !r.is_zero()) {
            return None;
        }
    }
    Some(x)
}

/// Diagonal of the Smith normal form, normalized, in divisibility order.
/// Only the nonzero invariant factors are returned.
pub fn smith_diagonal<R: EuclideanDomain>(m: &Matrix<R>) -> Vec<R> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let best = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[(i, j)].is_zero())
            .min_by_key(|&(i, j)| a[(i, j)].size());
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        let mut clean = true;
        for i in t + 1..rows {
            if a[(i, t)].is_zero() {
                continue;
            }
            let (q, r) = a[(i, t)].div_rem(&a[(t, t)]);
            for j in t..cols {
                let v = a[(t, j)].clone();
                a[(i, j)] = a[(i, j)].clone() - q.clone() * v;
            }
            if !r.is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if a[(t, j)].is_zero() {
                continue;
            }
            let (q, r) = a[(t, j)].div_rem(&a[(t, t)]);
            col_axpy(&mut a, j, t, &q);
            if !r.is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // Enforce divisibility: fold a row with a non-multiple into row t.
        let offending = (t + 1..rows).find(|&i| {
            (t + 1..cols).any(|j| !a[(i, j)].is_zero() && a[(i, j)].exact_div(&a[(t, t)]).is_none())
        });
        if let Some(i) = offending {
            for j in t..cols {
                let v = a[(i, j)].clone();
                a[(t, j)] = a[(t, j)].clone() + v;
            }
            continue;
        }
        out.push(a[(t, t)].normalize_unit().0);
        t += 1;
    }
    out
}

/// Hermite basis of the column module of `m` plus `modulus · R^n`, keeping
/// entries below the current row reduced modulo `modulus`.
pub fn hermite_mod<R: EuclideanDomain>(m: &Matrix<R>, modulus: &R) -> ColumnHermite<R> {
    let n = m.rows();
    let reduce = |x: &R| x.div_rem(modulus).1;
    let mut cols: Vec<Vec<R>> = (0..m.cols()).map(|j| m.column(j).iter().map(reduce).collect()).collect();
    let mut done: Vec<Vec<R>> = Vec::with_capacity(n);
    for row in 0..n {
        let mut unit = vec![R::zero(); n];
        unit[row] = modulus.clone();
        cols.push(unit);
        loop {
            cols.retain(|c| c.iter().any(|x| !x.is_zero()));
            let Some(b) = (0..cols.len()).filter(|&j| !cols[j][row].is_zero()).min_by_key(|&j| cols[j][row].size())
            else {
                unreachable!("modulus column keeps the row nonzero")
            };
            cols.swap(0, b);
            let mut clean = true;
            for j in 1..cols.len() {
                if cols[j][row].is_zero() {
                    continue;
                }
                let (q, r) = cols[j][row].div_rem(&cols[0][row]);
                for i in row..n {
                    let v = cols[0][i].clone();
                    if !v.is_zero() {
                        let x = cols[j][i].clone() - q.clone() * v;
                        cols[j][i] = if i > row { reduce(&x) } else { x };
                    }
                }
                if !r.is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        let mut pivot = cols.swap_remove(0);
        let (_, unit_inv) = pivot[row].normalize_unit();
        for (i, x) in pivot.iter_mut().enumerate() {
            let y = x.clone() * unit_inv.clone();
            *x = if i > row { reduce(&y) } else { y };
        }
        done.push(pivot);
    }
    // Reduce each entry modulo the pivot of its row.
    for j in 0..n {
        for k in j + 1..n {
            let (q, _) = done[j][k].div_rem(&done[k][k]);
            if !q.is_zero() {
                let src = done[k].clone();
                for (i, s) in src.iter().enumerate().skip(k) {
                    done[j][i] = done[j][i].clone() - q.clone() * s.clone();
                }
            }
        }
    }
    let h = Matrix::from_fn(n, n, |i, j| done[j][i].clone());
    ColumnHermite { h, u: Matrix::zeros(0, 0), pivots: (0..n).collect() }
}

/// `X` with `h · X = scale · I` for square lower-triangular `h`, when `X` is
/// integral.
pub fn scaled_lower_inverse<R: EuclideanDomain>(h: &Matrix<R>, scale: &R) -> Option<Matrix<R>> {
    let n = h.rows();
    let mut x: Matrix<R> = Matrix::zeros(n, n);
    for c in 0..n {
        for i in c..n {
            let mut acc = if i == c { scale.clone() } else { R::zero() };
            for k in c..i {
                if !h[(i, k)].is_zero() && !x[(k, c)].is_zero() {
                    acc = acc - h[(i, k)].clone() * x[(k, c)].clone();
                }
            }
            x[(i, c)] = acc.exact_div(&h[(i, i)])?;
        }
    }
    Some(x)
}

/// Greatest common divisor, normalized.
pub fn ed_gcd<R: EuclideanDomain>(a: &R, b: &R) -> R {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = x.div_rem(&y).1;
        x = y;
        y = r;
    }
    if x.is_zero() {
        x
    } else {
        x.normalize_unit().0
    }
}

/// Invariant factors of a full-rank module containing `modulus · R^n`,
/// computed with entries reduced modulo `modulus`.
pub fn smith_mod<R: EuclideanDomain>(m: &Matrix<R>, modulus: &R) -> Vec<R> {
    let n = m.rows();
    let reduced = m.map(|x| x.div_rem(modulus).1);
    let mut diag = smith_reduced(reduced, modulus);
    diag.resize(n, R::zero());
    diag.iter().map(|d| ed_gcd(d, modulus)).collect()
}

fn smith_reduced<R: EuclideanDomain>(mut a: Matrix<R>, modulus: &R) -> Vec<R> {
    let reduce = |x: R| x.div_rem(modulus).1;
    let (rows, cols) = (a.rows(), a.cols());
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let best = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[(i, j)].is_zero())
            .min_by_key(|&(i, j)| a[(i, j)].size());
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        let mut clean = true;
        for i in t + 1..rows {
            if a[(i, t)].is_zero() {
                continue;
            }
            let (q, r) = a[(i, t)].div_rem(&a[(t, t)]);
            for j in t..cols {
                let v = a[(t, j)].clone();
                a[(i, j)] = reduce(a[(i, j)].clone() - q.clone() * v);
            }
            if !r.is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if a[(t, j)].is_zero() {
                continue;
            }
            let (q, r) = a[(t, j)].div_rem(&a[(t, t)]);
            for i in t..rows {
                let v = a[(i, t)].clone();
                a[(i, j)] = reduce(a[(i, j)].clone() - q.clone() * v);
            }
            if !r.is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        let offending = (t + 1..rows).find(|&i| {
            (t + 1..cols).any(|j| !a[(i, j)].is_zero() && a[(i, j)].exact_div(&a[(t, t)]).is_none())
        });
        if let Some(i) = offending {
            for j in t..cols {
                let v = a[(i, j)].clone();
                a[(t, j)] = reduce(a[(t, j)].clone() + v);
            }
            continue;
        }
        out.push(a[(t, t)].clone());
        t += 1;
    }
    out
}
