//! Exterior algebra over the rationals on a fixed coframe `e1, ..., en`.
//!
//! A [`KForm`] is a homogeneous form stored as a sparse map from basis
//! monomials to nonzero coefficients. Monomials are bitmasks, so wedge and
//! contraction signs reduce to popcounts.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, is_one, sign_abs, Q};

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 14;

/// A basis monomial `e_{i1...ik}` with `i1 < ... < ik`, stored as a bitmask
/// (bit `i-1` set for index `i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(u16);

impl Monomial {
    pub const EMPTY: Monomial = Monomial(0);

    pub fn from_mask(mask: u16) -> Self {
        Monomial(mask)
    }

    pub fn mask(self) -> u16 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// 1-based indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        (0..16).filter(|b| self.0 >> b & 1 == 1).map(|b| b + 1).collect()
    }

    pub fn contains(self, index: usize) -> bool {
        index >= 1 && index <= 16 && self.0 >> (index - 1) & 1 == 1
    }

    /// Sorts an index word into a monomial, returning the permutation sign.
    pub fn from_word(word: &[usize], dim: usize) -> Result<(i8, Monomial)> {
        let mut mask = 0u16;
        let mut sign = 1i8;
        for &i in word {
            if i == 0 || i > dim {
                return Err(Error::IndexOutOfRange { index: i, dim });
            }
            let bit = 1u16 << (i - 1);
            if mask & bit != 0 {
                return Err(Error::RepeatedIndex(i));
            }
            // each already-present larger index is one transposition
            if (mask & !(bit | (bit - 1))).count_ones() % 2 == 1 {
                sign = -sign;
            }
            mask |= bit;
        }
        Ok((sign, Monomial(mask)))
    }

    /// `self ∧ other` as `(sign, monomial)`, or `None` when they overlap.
    pub fn wedge(self, other: Monomial) -> Option<(i8, Monomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let b = rest.trailing_zeros();
            let above = !((1u32 << (b + 1)) - 1) as u16;
            swaps += (self.0 & above).count_ones();
            rest &= rest - 1;
        }
        let sign = if swaps % 2 == 0 { 1 } else { -1 };
        Some((sign, Monomial(self.0 | other.0)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", monomial_name(*self))
    }
}

fn monomial_name(m: Monomial) -> String {
    let idx = m.indices();
    if idx.iter().all(|&i| i <= 9) {
        let digits: String = idx.iter().map(|i| i.to_string()).collect();
        format!("e{digits}")
    } else {
        let list: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
        format!("e{{{}}}", list.join(","))
    }
}

/// A vector in the frame `E1, ..., En` dual to the coframe.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    comps: Vec<Q>,
}

impl Vector {
    pub fn zero(dim: usize) -> Self {
        Vector {
            comps: vec![Q::zero(); dim],
        }
    }

    /// `E_i`, 1-based.
    pub fn basis(dim: usize, i: usize) -> Result<Self> {
        if i == 0 || i > dim {
            return Err(Error::IndexOutOfRange { index: i, dim });
        }
        let mut v = Self::zero(dim);
        v.comps[i - 1] = Q::one();
        Ok(v)
    }

    pub fn from_components(comps: Vec<Q>) -> Self {
        Vector { comps }
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Q] {
        &self.comps
    }

    /// Component along `E_i`, 1-based.
    pub fn get(&self, i: usize) -> &Q {
        &self.comps[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Vector {
            comps: self.comps.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Vector) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(Vector {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Vector) -> Result<Self> {
        self.add(&other.scale(&-Q::one()))
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), format!("E{}", i + 1)));
        write_sum(f, terms)
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vector({self})")
    }
}

fn write_sum(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (Q, String)>) -> fmt::Result {
    let mut first = true;
    for (c, name) in terms {
        let (neg, abs) = sign_abs(&c);
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        if is_one(&abs) && !name.is_empty() {
            write!(f, "{name}")?;
        } else if name.is_empty() {
            write!(f, "{}", fmt_q(&abs))?;
        } else {
            write!(f, "{}*{name}", fmt_q(&abs))?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

fn check_dim(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(a, b))
    }
}

/// A homogeneous exterior form of degree `degree` on `R^dim`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KForm {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Monomial, Q>,
}

impl KForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= MAX_DIM, "ambient dimension {dim} exceeds {MAX_DIM}");
        KForm {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: usize, c: Q) -> Self {
        let mut f = Self::zero(dim, 0);
        f.add_term(Monomial::EMPTY, c);
        f
    }

    /// `e_{i1...ik}` for an arbitrary index word; the word is sorted and
    /// the permutation sign absorbed.
    pub fn basis(dim: usize, word: &[usize]) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::DimensionTooLarge(dim));
        }
        let (sign, m) = Monomial::from_word(word, dim)?;
        let mut f = Self::zero(dim, word.len());
        f.add_term(m, Q::from_integer(sign.into()));
        Ok(f)
    }

    /// Builds from `(coefficient, index word)` pairs.
    pub fn from_words(dim: usize, degree: usize, words: &[(Q, Vec<usize>)]) -> Result<Self> {
        let mut f = Self::zero(dim, degree);
        for (c, w) in words {
            if w.len() != degree {
                return Err(Error::DegreeMismatch(degree, w.len()));
            }
            let (sign, m) = Monomial::from_word(w, dim)?;
            f.add_term(m, c * Q::from_integer(sign.into()));
        }
        Ok(f)
    }

    /// The 1-form with the given components.
    pub fn covector(comps: &[Q]) -> Self {
        let mut f = Self::zero(comps.len(), 1);
        for (i, c) in comps.iter().enumerate() {
            f.add_term(Monomial(1 << i), c.clone());
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> Q {
        self.terms.get(&m).cloned().unwrap_or_else(Q::zero)
    }

    /// Coefficients of a 1-form as a dense vector.
    pub fn covector_components(&self) -> Vec<Q> {
        debug_assert_eq!(self.degree, 1);
        (0..self.dim).map(|i| self.coeff(Monomial(1 << i))).collect()
    }

    /// Adds `c * m`; `m` must have the form's degree.
    pub fn add_term(&mut self, m: Monomial, c: Q) {
        debug_assert_eq!(m.degree(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn same_shape(&self, other: &KForm) -> Result<()> {
        check_dim(self.dim, other.dim)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &KForm) -> Result<KForm> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &KForm) -> Result<KForm> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, c: &Q) -> KForm {
        let mut out = KForm::zero(self.dim, self.degree);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, v)| (*m, v * c)).collect();
        out
    }

    pub fn wedge(&self, other: &KForm) -> Result<KForm> {
        check_dim(self.dim, other.dim)?;
        let mut out = KForm::zero(self.dim, self.degree + other.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((s, m)) = ma.wedge(*mb) {
                    let c = ca * cb;
                    out.add_term(m, if s > 0 { c } else { -c });
                }
            }
        }
        Ok(out)
    }

    /// Contraction `v ⌟ self`. Degree-0 input gives the zero 0-form.
    pub fn interior(&self, v: &Vector) -> Result<KForm> {
        check_dim(self.dim, v.dim())?;
        if self.degree == 0 {
            return Ok(KForm::zero(self.dim, 0));
        }
        let mut out = KForm::zero(self.dim, self.degree - 1);
        for (m, c) in &self.terms {
            let mut rest = m.0;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let vb = &v.components()[b];
                if vb.is_zero() {
                    continue;
                }
                let below = (m.0 & ((1u16 << b) - 1)).count_ones();
                let term = c * vb;
                let mm = Monomial(m.0 & !(1 << b));
                out.add_term(mm, if below % 2 == 0 { term } else { -term });
            }
        }
        Ok(out)
    }

    /// Value of a 1-form on a vector.
    pub fn pair(&self, v: &Vector) -> Result<Q> {
        if self.degree != 1 {
            return Err(Error::WrongDegree {
                expected: 1,
                got: self.degree,
            });
        }
        Ok(self.interior(v)?.coeff(Monomial::EMPTY))
    }

    /// Evaluates the form on `degree` vectors (determinant convention,
    /// `e12(E1, E2) = 1`).
    pub fn eval(&self, vs: &[Vector]) -> Result<Q> {
        if vs.len() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, vs.len()));
        }
        let mut f = self.clone();
        for v in vs {
            f = f.interior(v)?;
        }
        Ok(f.coeff(Monomial::EMPTY))
    }

    /// Hodge star for the orthonormal coframe with volume form
    /// `orientation * e1...n`.
    pub fn hodge_star(&self, orientation: i8) -> KForm {
        let full: u16 = ((1u32 << self.dim) - 1) as u16;
        let mut out = KForm::zero(self.dim, self.dim - self.degree);
        for (m, c) in &self.terms {
            let comp = Monomial(full & !m.0);
            let (s, _) = m.wedge(comp).expect("complement is disjoint");
            let sign = s * orientation;
            out.add_term(comp, if sign > 0 { c.clone() } else { -c.clone() });
        }
        out
    }

    /// Matrix of a 2-form: `A[i][j] = self(E_i, E_j)`.
    pub fn to_matrix(&self) -> Vec<Vec<Q>> {
        debug_assert_eq!(self.degree, 2);
        let n = self.dim;
        let mut a = vec![vec![Q::zero(); n]; n];
        for (m, c) in &self.terms {
            let idx = m.indices();
            let (i, j) = (idx[0] - 1, idx[1] - 1);
            a[i][j] = c.clone();
            a[j][i] = -c.clone();
        }
        a
    }

    /// Inverse of [`KForm::to_matrix`]; only the upper triangle is read.
    pub fn from_matrix(a: &[Vec<Q>]) -> KForm {
        let n = a.len();
        let mut f = KForm::zero(n, 2);
        for i in 0..n {
            for j in i + 1..n {
                f.add_term(Monomial((1 << i) | (1 << j)), a[i][j].clone());
            }
        }
        f
    }
}

impl Add for &KForm {
    type Output = KForm;

    /// Panics on shape mismatch; use [`KForm::checked_add`] for fallible use.
    fn add(self, rhs: &KForm) -> KForm {
        self.checked_add(rhs).expect("adding forms of different shape")
    }
}

impl Sub for &KForm {
    type Output = KForm;

    fn sub(self, rhs: &KForm) -> KForm {
        self.checked_sub(rhs).expect("subtracting forms of different shape")
    }
}

impl Neg for &KForm {
    type Output = KForm;

    fn neg(self) -> KForm {
        self.scale(&-Q::one())
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(m, c)| {
            let name = if m.degree() == 0 {
                String::new()
            } else {
                monomial_name(*m)
            };
            (c.clone(), name)
        });
        write_sum(f, terms)
    }
}

impl fmt::Debug for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KForm<{};{}>({self})", self.dim, self.degree)
    }
}
