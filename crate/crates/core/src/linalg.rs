//! Exact linear algebra over the rationals: reduced row-echelon form,
//! subspaces, characteristic polynomials and rational eigenvalues.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

pub type Matrix = Vec<Vec<Q>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    row.iter()
                        .zip(b.iter())
                        .fold(Q::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[Q]) -> Vec<Q> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Reduced row-echelon form. Returns the nonzero rows and pivot columns.
pub fn rref(mut rows: Matrix) -> (Matrix, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Q::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: &Matrix) -> usize {
    rref(rows.clone()).1.len()
}

/// Basis of `{x : A x = 0}` for `A` with `ncols` columns.
pub fn nullspace(rows: &Matrix, ncols: usize) -> Matrix {
    let (r, pivots) = rref(rows.clone());
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Q::zero(); ncols];
            x[f] = Q::one();
            for (row, &p) in r.iter().zip(&pivots) {
                x[p] = -row[f].clone();
            }
            x
        })
        .collect()
}

pub fn det(a: &Matrix) -> Q {
    let n = a.len();
    let mut m = a.clone();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        let pivot_row = m[c].clone();
        for row in m.iter_mut().skip(c + 1) {
            if !row[c].is_zero() {
                let f = &row[c] / &pivot_row[c];
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
    }
    d
}

/// Leading principal minors `det(A[..k][..k])`, `k = 1..=n`.
pub fn leading_minors(a: &Matrix) -> Vec<Q> {
    (1..=a.len())
        .map(|k| det(&a[..k].iter().map(|r| r[..k].to_vec()).collect()))
        .collect()
}

/// A subspace of `Q^n` held as a reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vec<Q>>) -> Self {
        let rows: Matrix = vectors.into_iter().collect();
        debug_assert!(rows.iter().all(|r| r.len() == ambient));
        let (basis, pivots) = rref(rows);
        Subspace {
            ambient,
            basis,
            pivots,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Self::span(ambient, std::iter::empty())
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, identity(ambient))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Q]) -> Option<Vec<Q>> {
        let coords: Vec<Q> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (c, row) in coords.iter().zip(&self.basis) {
            for (x, b) in rest.iter_mut().zip(row) {
                *x -= c * b;
            }
        }
        rest.iter().all(Zero::is_zero).then_some(coords)
    }

    /// `{φ : φ(v) = 0 for all v in self}` in the dual coordinates.
    pub fn annihilator(&self) -> Subspace {
        Subspace::span(self.ambient, nullspace(&self.basis, self.ambient))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(
            self.ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    /// Frame indices (0-based) outside the pivot set; the matching unit
    /// vectors complete the echelon basis to a basis of the ambient space.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }
}

/// Characteristic polynomial `det(t I - A)`, coefficients from degree 0 up
/// (monic). Faddeev-LeVerrier recursion.
pub fn char_poly(a: &Matrix) -> Vec<Q> {
    let n = a.len();
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut m = vec![vec![Q::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let am = mat_mul(a, &m);
        let trace = (0..n).fold(Q::zero(), |acc, i| acc + &am[i][i]);
        coeffs[n - k] = -trace / Q::from_integer(BigInt::from(k));
    }
    coeffs
}

pub fn poly_eval(p: &[Q], x: &Q) -> Q {
    p.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

/// Synthetic division by `(t - root)`; assumes `root` is a root.
fn deflate(p: &[Q], root: &Q) -> Vec<Q> {
    let n = p.len() - 1;
    let mut out = vec![Q::zero(); n];
    let mut carry = Q::zero();
    for i in (0..n).rev() {
        carry = &p[i + 1] + &carry * root;
        out[i] = carry.clone();
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            small.push(d.clone());
            let other = &n / &d;
            if other != d {
                large.push(other);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Rational roots with multiplicity, in increasing order, plus the degree of
/// the remaining factor that has no rational roots.
pub fn rational_roots(poly: &[Q]) -> (Vec<(Q, usize)>, usize) {
    let mut p: Vec<Q> = poly.to_vec();
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    let mut roots: Vec<(Q, usize)> = Vec::new();
    let push = |roots: &mut Vec<(Q, usize)>, r: Q| match roots.iter_mut().find(|(x, _)| *x == r) {
        Some((_, m)) => *m += 1,
        None => roots.push((r, 1)),
    };
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
        push(&mut roots, Q::zero());
    }
    loop {
        if p.len() <= 1 {
            break;
        }
        // clear denominators
        let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p.iter().map(|c| (c * Q::from_integer(l.clone())).to_integer()).collect();
        let lead = ints.last().unwrap().clone();
        let constant = ints[0].clone();
        let mut found = None;
        'search: for num in divisors(&constant) {
            for den in divisors(&lead) {
                for cand in [Q::new(num.clone(), den.clone()), Q::new(-num.clone(), den.clone())] {
                    if poly_eval(&p, &cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(r) => {
                p = deflate(&p, &r);
                push(&mut roots, r);
            }
            None => break,
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    (roots, p.len() - 1)
}
