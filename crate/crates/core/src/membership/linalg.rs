//! Row echelon forms with unimodular transforms over ℤ and over fields.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::poly::{Integers, IntegersMod, Rationals, Ring};

/// A ring in which row reduction by quotient-and-remainder steps
/// terminates: ℤ with floor division, or a field.
pub trait EchelonRing: Ring {
    /// `q` such that `a - q*b` is smaller than `b` (zero over a field).
    fn euclid_quotient(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Size used to choose pivots; zero only for zero.
    fn euclid_size(&self, a: &Self::Elem) -> BigInt;
    /// Unit `u` making `u*a` the canonical associate of `a`.
    fn canonical_unit(&self, a: &Self::Elem) -> Self::Elem;
}

impl EchelonRing for Integers {
    fn euclid_quotient(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a.div_floor(b)
    }
    fn euclid_size(&self, a: &BigInt) -> BigInt {
        a.abs()
    }
    fn canonical_unit(&self, a: &BigInt) -> BigInt {
        if a.is_negative() {
            BigInt::from(-1)
        } else {
            BigInt::from(1)
        }
    }
}

impl EchelonRing for Rationals {
    fn euclid_quotient(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a / b
    }
    fn euclid_size(&self, a: &Self::Elem) -> BigInt {
        BigInt::from(u8::from(!a.is_zero()))
    }
    fn canonical_unit(&self, a: &Self::Elem) -> Self::Elem {
        a.recip()
    }
}

/// Only meaningful for prime moduli; callers check.
impl EchelonRing for IntegersMod {
    fn euclid_quotient(&self, a: &u64, b: &u64) -> u64 {
        self.divide_exact(a, b).expect("nonzero pivot is a unit modulo a prime")
    }
    fn euclid_size(&self, a: &u64) -> BigInt {
        BigInt::from(u8::from(*a != 0))
    }
    fn canonical_unit(&self, a: &u64) -> u64 {
        self.divide_exact(&1, a).expect("nonzero pivot is a unit modulo a prime")
    }
}

pub type Matrix<E> = Vec<Vec<E>>;

/// `transform * input = form`, with `transform` unimodular (invertible over
/// the ring) and `form` in row echelon form: row `i < rank` has its first
/// nonzero entry (a canonical pivot) in column `pivots[i]`, entries above a
/// pivot are reduced, and rows from `rank` on are zero.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    pub form: Matrix<E>,
    pub transform: Matrix<E>,
    pub pivots: Vec<usize>,
}

impl<E> Echelon<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// `target -= q * source` on two rows of the same matrix.
fn sub_multiple<R: Ring>(ring: &R, m: &mut Matrix<R::Elem>, target: usize, source: usize, q: &R::Elem) {
    if ring.is_zero(q) {
        return;
    }
    let (t, s) = if target < source {
        let (a, b) = m.split_at_mut(source);
        (&mut a[target], &b[0])
    } else {
        let (a, b) = m.split_at_mut(target);
        (&mut b[0], &a[source])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !ring.is_zero(y) {
            *x = ring.sub(x, &ring.mul(q, y));
        }
    }
}

fn scale_row<R: Ring>(ring: &R, row: &mut [R::Elem], u: &R::Elem) {
    for x in row.iter_mut() {
        if !ring.is_zero(x) {
            *x = ring.mul(x, u);
        }
    }
}

/// Row echelon form of `input` (`rows x cols`) with its transform.
pub fn echelon<R: EchelonRing>(ring: &R, input: Matrix<R::Elem>, cols: usize) -> Echelon<R::Elem> {
    let rows = input.len();
    let mut m = input;
    let mut v: Matrix<R::Elem> = (0..rows)
        .map(|i| {
            (0..rows)
                .map(|j| if i == j { ring.one() } else { ring.zero() })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let best = (r..rows)
                .filter(|&i| !ring.is_zero(&m[i][col]))
                .min_by_key(|&i| ring.euclid_size(&m[i][col]));
            let Some(best) = best else { break };
            m.swap(r, best);
            v.swap(r, best);
            let mut cleared = true;
            for i in r + 1..rows {
                if ring.is_zero(&m[i][col]) {
                    continue;
                }
                let q = ring.euclid_quotient(&m[i][col], &m[r][col]);
                sub_multiple(ring, &mut m, i, r, &q);
                sub_multiple(ring, &mut v, i, r, &q);
                if !ring.is_zero(&m[i][col]) {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if ring.is_zero(&m[r][col]) {
            continue;
        }
        let u = ring.canonical_unit(&m[r][col]);
        scale_row(ring, &mut m[r], &u);
        scale_row(ring, &mut v[r], &u);
        for i in 0..r {
            if ring.is_zero(&m[i][col]) {
                continue;
            }
            let q = ring.euclid_quotient(&m[i][col], &m[r][col]);
            sub_multiple(ring, &mut m, i, r, &q);
            sub_multiple(ring, &mut v, i, r, &q);
        }
        pivots.push(col);
        r += 1;
    }
    Echelon {
        form: m,
        transform: v,
        pivots,
    }
}

/// Outcome of solving `w^T * form = b^T` for the nonzero rows of an
/// echelon form.
#[derive(Clone, Debug, PartialEq)]
pub enum LeftSolve<E> {
    Solved(Vec<E>),
    /// The value forced at pivot `index` is not a ring element.
    PivotObstruction { index: usize },
    /// Pivots solved but `b` has a component outside the row space.
    Residual { column: usize },
}

pub fn solve_left<R: Ring>(ring: &R, ech: &Echelon<R::Elem>, b: &[R::Elem]) -> LeftSolve<R::Elem> {
    let mut w: Vec<R::Elem> = Vec::with_capacity(ech.rank());
    for (i, &p) in ech.pivots.iter().enumerate() {
        let mut s = b[p].clone();
        for (j, wj) in w.iter().enumerate() {
            s = ring.sub(&s, &ring.mul(wj, &ech.form[j][p]));
        }
        match ring.divide_exact(&s, &ech.form[i][p]) {
            Some(q) => w.push(q),
            None => return LeftSolve::PivotObstruction { index: i },
        }
    }
    for (col, bc) in b.iter().enumerate() {
        let mut s = bc.clone();
        for (j, wj) in w.iter().enumerate() {
            s = ring.sub(&s, &ring.mul(wj, &ech.form[j][col]));
        }
        if !ring.is_zero(&s) {
            return LeftSolve::Residual { column: col };
        }
    }
    LeftSolve::Solved(w)
}

/// `u^T = w^T * transform` restricted to the first `w.len()` rows.
pub fn combine_rows<R: Ring>(ring: &R, ech: &Echelon<R::Elem>, w: &[R::Elem]) -> Vec<R::Elem> {
    let n = ech.transform.len();
    let mut u = vec![ring.zero(); n];
    for (wi, row) in w.iter().zip(&ech.transform) {
        if ring.is_zero(wi) {
            continue;
        }
        for (uj, vij) in u.iter_mut().zip(row) {
            if !ring.is_zero(vij) {
                *uj = ring.add(uj, &ring.mul(wi, vij));
            }
        }
    }
    u
}

/// Over a field: `y` with `form * y = 0` and `y[free] = 1`, zero on the
/// other non-pivot columns.
pub fn null_vector<R: Ring>(ring: &R, ech: &Echelon<R::Elem>, cols: usize, free: usize) -> Vec<R::Elem> {
    let mut y = vec![ring.zero(); cols];
    y[free] = ring.one();
    back_substitute(ring, ech, &mut y, |_| ring.zero());
    y
}

/// Over a field: `y` supported on pivot columns with `form * y = e_index`.
pub fn pivot_dual_vector<R: Ring>(ring: &R, ech: &Echelon<R::Elem>, cols: usize, index: usize) -> Vec<R::Elem> {
    let mut y = vec![ring.zero(); cols];
    back_substitute(ring, ech, &mut y, |i| if i == index { ring.one() } else { ring.zero() });
    y
}

/// Fills the pivot entries of `y` so that row `i` of the form dotted with
/// `y` equals `rhs(i)`, given the non-pivot entries.
fn back_substitute<R: Ring>(
    ring: &R,
    ech: &Echelon<R::Elem>,
    y: &mut [R::Elem],
    rhs: impl Fn(usize) -> R::Elem,
) {
    for (i, &p) in ech.pivots.iter().enumerate().rev() {
        let mut s = rhs(i);
        for (j, yj) in y.iter().enumerate().skip(p + 1) {
            if !ring.is_zero(yj) {
                s = ring.sub(&s, &ring.mul(&ech.form[i][j], yj));
            }
        }
        y[p] = ring.divide_exact(&s, &ech.form[i][p]).expect("field division");
    }
}

fn inner(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).map(|(x, y)| x * y).sum()
}

/// Nearest integer to `a / b` for `b > 0`.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    (a * BigInt::from(2) + b).div_floor(&(b * BigInt::from(2)))
}

/// An LLL-reduced basis (with parameter 3/4) kept in integral form:
/// `d[i + 1]` is the Gram determinant of the first `i + 1` vectors and
/// `lambda[k][j] = d[j + 1] * mu_kj`, so no rationals are needed.
#[derive(Clone, Debug)]
pub struct ReducedLattice {
    pub basis: Matrix<BigInt>,
    d: Vec<BigInt>,
    lambda: Matrix<BigInt>,
}

impl ReducedLattice {
    /// Reduces `basis`, which must consist of linearly independent rows.
    pub fn new(basis: Matrix<BigInt>) -> Self {
        let n = basis.len();
        let mut lat = ReducedLattice {
            basis,
            d: vec![BigInt::from(1); n + 1],
            lambda: vec![vec![BigInt::zero(); n]; n],
        };
        if n == 0 {
            return lat;
        }
        lat.d[1] = inner(&lat.basis[0], &lat.basis[0]);
        let (mut k, mut kmax) = (1, 0);
        while k < n {
            if k > kmax {
                kmax = k;
                lat.orthogonalize(k);
            }
            lat.reduce_pair(k, k - 1);
            let lhs = &lat.d[k + 1] * &lat.d[k - 1] * 4;
            let rhs = &lat.d[k] * &lat.d[k] * 3 - &lat.lambda[k][k - 1] * &lat.lambda[k][k - 1] * 4;
            if lhs < rhs {
                lat.swap(k, kmax);
                k = k.saturating_sub(1).max(1);
            } else {
                for l in (0..k - 1).rev() {
                    lat.reduce_pair(k, l);
                }
                k += 1;
            }
        }
        lat
    }

    /// Fills `lambda[k][..k]` and `d[k + 1]` for a new vector `k`.
    fn orthogonalize(&mut self, k: usize) {
        for j in 0..=k {
            let mut u = inner(&self.basis[k], &self.basis[j]);
            for i in 0..j {
                u = (&self.d[i + 1] * &u - &self.lambda[k][i] * &self.lambda[j][i]) / &self.d[i];
            }
            if j < k {
                self.lambda[k][j] = u;
            } else {
                assert!(!u.is_zero(), "lattice basis is linearly dependent");
                self.d[k + 1] = u;
            }
        }
    }

    fn reduce_pair(&mut self, k: usize, l: usize) {
        if (&self.lambda[k][l] * BigInt::from(2)).abs() <= self.d[l + 1] {
            return;
        }
        let q = round_div(&self.lambda[k][l], &self.d[l + 1]);
        let bl = self.basis[l].clone();
        for (x, y) in self.basis[k].iter_mut().zip(&bl) {
            *x -= &q * y;
        }
        self.lambda[k][l] -= &q * &self.d[l + 1];
        for i in 0..l {
            let t = &q * &self.lambda[l][i];
            self.lambda[k][i] -= t;
        }
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        self.basis.swap(k, k - 1);
        for j in 0..k - 1 {
            let t = self.lambda[k][j].clone();
            self.lambda[k][j] = std::mem::replace(&mut self.lambda[k - 1][j], t);
        }
        let lam = self.lambda[k][k - 1].clone();
        let b = (&self.d[k - 1] * &self.d[k + 1] + &lam * &lam) / &self.d[k];
        for i in k + 1..=kmax {
            let t = self.lambda[i][k].clone();
            self.lambda[i][k] = (&self.d[k + 1] * &self.lambda[i][k - 1] - &lam * &t) / &self.d[k];
            self.lambda[i][k - 1] = (&b * &t + &lam * &self.lambda[i][k]) / &self.d[k + 1];
        }
        self.d[k] = b;
    }

    /// Subtracts lattice vectors from `v` until each Gram-Schmidt
    /// coefficient is at most 1/2 (nearest-plane reduction).
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let n = self.basis.len();
        let mut v = v.to_vec();
        let mut lam = vec![BigInt::zero(); n];
        for j in 0..n {
            let mut u = inner(&v, &self.basis[j]);
            for i in 0..j {
                u = (&self.d[i + 1] * &u - &lam[i] * &self.lambda[j][i]) / &self.d[i];
            }
            lam[j] = u;
        }
        for l in (0..n).rev() {
            if (&lam[l] * BigInt::from(2)).abs() <= self.d[l + 1] {
                continue;
            }
            let q = round_div(&lam[l], &self.d[l + 1]);
            for (x, y) in v.iter_mut().zip(&self.basis[l]) {
                *x -= &q * y;
            }
            lam[l] -= &q * &self.d[l + 1];
            for i in 0..l {
                lam[i] -= &q * &self.lambda[l][i];
            }
        }
        v
    }
}
