//! Lie algebras presented by their Chevalley-Eilenberg differential.
//!
//! The sign convention is `dα(X, Y) = -α([X, Y])`, so the structure
//! constants are `c^k_ij = -(d e_k)(E_i, E_j)` with `[E_i, E_j] = Σ c^k_ij E_k`.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exterior::{KForm, Monomial, Vector, MAX_DIM};
use crate::linalg::{self, char_poly, nullspace, rational_roots, Matrix, Subspace};
use crate::notation::{self, Bindings};
use crate::rational::Q;

#[derive(Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    diffs: Vec<KForm>,
    /// `consts[(i * n + j) * n + k] = c^k_ij`, 0-based.
    consts: Vec<Q>,
}

/// Outcome of checking `d ∘ d = 0` on every generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    /// `(k, d(d e_k))` for every generator where the 3-form is nonzero.
    pub failures: Vec<(usize, KForm)>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    /// `n^(1) ⊇ n^(2) ⊇ ...` until the series is zero or stabilizes.
    pub lower_central: Vec<Subspace>,
    /// `g' ⊇ g'' ⊇ ...` likewise.
    pub derived: Vec<Subspace>,
    pub abelian: bool,
    pub nilpotent: bool,
    pub solvable: bool,
    /// Smallest `r` with `n^(r) = 0`.
    pub step_length: Option<usize>,
    /// Smallest `l` with `g^(l) = 0`.
    pub derived_length: Option<usize>,
}

/// `V_0 > V_1 > ... > V_{r-1}` with `V_i = Ann(n^(r-i))`, as subspaces of
/// the dual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub levels: Vec<Subspace>,
}

impl Filtration {
    pub fn step_length(&self) -> usize {
        self.levels.len()
    }

    /// Basis covectors of `V_i`.
    pub fn level_forms(&self, i: usize) -> Vec<KForm> {
        self.levels[i].basis().iter().map(|r| KForm::covector(r)).collect()
    }

    /// Whether `a` lies in `Λ^k V_i`. `i` may equal the step length (`V_r = 0`).
    pub fn contains_form(&self, i: usize, a: &KForm) -> Result<bool> {
        if a.is_zero() {
            return Ok(true);
        }
        let Some(level) = self.levels.get(i) else {
            return Ok(false);
        };
        // Λ^k Ann(U) is cut out by contraction with U = Ann(V_i)
        for u in level.annihilator().basis() {
            if !a.interior(&Vector::from_components(u.clone()))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Simultaneous rational eigenspaces of `g/n` acting on the last nonzero
/// term of the lower central series of `n = g'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShearLines {
    /// Frame vectors spanning a complement of `n`; eigenvalues are listed
    /// in this order.
    pub generators: Vec<Vector>,
    /// The invariant subspace that was diagonalized.
    pub target: Vec<Vector>,
    pub eigenspaces: Vec<Eigenspace>,
    /// Some generator has eigenvalues that are not rational (irrational or
    /// complex); those directions are not reported.
    pub unrepresentable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenspace {
    pub eigenvalues: Vec<Q>,
    pub basis: Vec<Vector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub abelian: bool,
    pub nilpotent: bool,
    pub solvable: bool,
    pub derived_dim: usize,
    /// Has an abelian ideal of codimension one.
    pub almost_abelian: bool,
    pub step_length: Option<usize>,
    pub derived_length: Option<usize>,
}

impl LieAlgebra {
    /// Builds from `d e_1, ..., d e_n`. Jacobi is not required here; see
    /// [`LieAlgebra::jacobi_check`].
    pub fn new(diffs: Vec<KForm>) -> Result<Self> {
        let dim = diffs.len();
        if dim > MAX_DIM {
            return Err(Error::DimensionTooLarge(dim));
        }
        for d in &diffs {
            if d.dim() != dim {
                return Err(Error::DimensionMismatch(dim, d.dim()));
            }
            if d.degree() != 2 {
                return Err(Error::WrongDegree {
                    expected: 2,
                    got: d.degree(),
                });
            }
        }
        let mut consts = vec![Q::zero(); dim * dim * dim];
        for (k, d) in diffs.iter().enumerate() {
            for (m, c) in d.terms() {
                let idx = m.indices();
                let (i, j) = (idx[0] - 1, idx[1] - 1);
                consts[(i * dim + j) * dim + k] = -c.clone();
                consts[(j * dim + i) * dim + k] = c.clone();
            }
        }
        Ok(LieAlgebra { dim, diffs, consts })
    }

    pub fn abelian(dim: usize) -> Result<Self> {
        Self::new(vec![KForm::zero(dim, 2); dim])
    }

    pub fn parse_salamon(text: &str) -> Result<Self> {
        Self::parse_salamon_with(text, &Bindings::new())
    }

    pub fn parse_salamon_with(text: &str, params: &Bindings) -> Result<Self> {
        Self::new(notation::parse_salamon(text, params)?)
    }

    /// Salamon string, or `None` above dimension 9.
    pub fn to_salamon(&self) -> Option<String> {
        notation::print_salamon(&self.diffs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `d e_k`, 1-based.
    pub fn diff(&self, k: usize) -> &KForm {
        &self.diffs[k - 1]
    }

    pub fn diffs(&self) -> &[KForm] {
        &self.diffs
    }

    /// `c^k_ij`, 1-based.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Q {
        let n = self.dim;
        &self.consts[((i - 1) * n + (j - 1)) * n + (k - 1)]
    }

    fn check_form(&self, a: &KForm) -> Result<()> {
        if a.dim() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, a.dim()));
        }
        Ok(())
    }

    fn check_vector(&self, v: &Vector) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, v.dim()));
        }
        Ok(())
    }

    /// Extends `d` from the generators to all forms as an antiderivation.
    pub fn d(&self, a: &KForm) -> Result<KForm> {
        self.check_form(a)?;
        let mut out = KForm::zero(self.dim, a.degree() + 1);
        for (m, c) in a.terms() {
            let mask = m.mask();
            let mut rest = mask;
            let mut position = 0usize;
            while rest != 0 {
                let b = rest.trailing_zeros();
                rest &= rest - 1;
                let left = Monomial::from_mask(mask & ((1u16 << b) - 1));
                let right = Monomial::from_mask(mask & !((1u32 << (b + 1)) - 1) as u16);
                for (dm, dc) in self.diffs[b as usize].terms() {
                    let Some((s1, lm)) = left.wedge(*dm) else { continue };
                    let Some((s2, full)) = lm.wedge(right) else { continue };
                    let mut coeff = c * dc;
                    if (s1 * s2 < 0) != (position % 2 == 1) {
                        coeff = -coeff;
                    }
                    out.add_term(full, coeff);
                }
                position += 1;
            }
        }
        Ok(out)
    }

    pub fn jacobi_check(&self) -> JacobiReport {
        let failures = self
            .diffs
            .iter()
            .enumerate()
            .filter_map(|(k, de)| {
                let dd = self.d(de).expect("same dimension");
                (!dd.is_zero()).then_some((k + 1, dd))
            })
            .collect();
        JacobiReport { failures }
    }

    pub fn is_lie(&self) -> bool {
        self.jacobi_check().passed()
    }

    fn require_jacobi(&self) -> Result<()> {
        match self.jacobi_check().failures.first() {
            Some((k, _)) => Err(Error::JacobiFailure(*k)),
            None => Ok(()),
        }
    }

    fn bracket_raw(&self, v: &[Q], w: &[Q]) -> Vec<Q> {
        let n = self.dim;
        let mut out = vec![Q::zero(); n];
        for i in 0..n {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if w[j].is_zero() || i == j {
                    continue;
                }
                let vw = &v[i] * &w[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.consts[(i * n + j) * n + k];
                    if !c.is_zero() {
                        *o += c * &vw;
                    }
                }
            }
        }
        out
    }

    pub fn bracket(&self, v: &Vector, w: &Vector) -> Result<Vector> {
        self.check_vector(v)?;
        self.check_vector(w)?;
        Ok(Vector::from_components(self.bracket_raw(v.components(), w.components())))
    }

    /// Jacobi identity checked on brackets of frame vectors, independently of
    /// the exterior derivative.
    pub fn jacobi_by_brackets(&self) -> bool {
        let n = self.dim;
        let e = |i: usize| {
            let mut v = vec![Q::zero(); n];
            v[i] = Q::from_integer(1.into());
            v
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.bracket_raw(&self.bracket_raw(&e(i), &e(j)), &e(k));
                    let b = self.bracket_raw(&self.bracket_raw(&e(j), &e(k)), &e(i));
                    let c = self.bracket_raw(&self.bracket_raw(&e(k), &e(i)), &e(j));
                    if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(x + y + z).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Matrix of `ad(v)` on the frame; column `j` is `[v, E_j]`.
    pub fn ad_matrix(&self, v: &Vector) -> Result<Matrix> {
        self.check_vector(v)?;
        let cols: Vec<Vec<Q>> = (1..=self.dim)
            .map(|j| self.bracket(v, &Vector::basis(self.dim, j).unwrap()).unwrap().components().to_vec())
            .collect();
        Ok(linalg::transpose(&cols))
    }

    /// `[A, B]` for subspaces given by bases.
    fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vs = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                vs.push(self.bracket_raw(x, y));
            }
        }
        Subspace::span(self.dim, vs)
    }

    /// Lower central series `[s, s], [s, [s, s]], ...` of a subalgebra,
    /// through the first zero or repeated term.
    pub fn lower_central_of(&self, s: &Subspace) -> Vec<Subspace> {
        let mut out: Vec<Subspace> = Vec::new();
        let mut prev = s.clone();
        loop {
            let next = self.bracket_span(s, &prev);
            let done = next.is_zero() || next == prev;
            out.push(next.clone());
            if done {
                return out;
            }
            prev = next;
        }
    }

    fn derived_series(&self) -> Vec<Subspace> {
        let mut out: Vec<Subspace> = Vec::new();
        let mut prev = Subspace::full(self.dim);
        loop {
            let next = self.bracket_span(&prev, &prev);
            let done = next.is_zero() || next == prev;
            out.push(next.clone());
            if done {
                return out;
            }
            prev = next;
        }
    }

    pub fn derived_algebra(&self) -> Subspace {
        let full = Subspace::full(self.dim);
        self.bracket_span(&full, &full)
    }

    pub fn series(&self) -> Result<SeriesReport> {
        self.require_jacobi()?;
        let lower_central = self.lower_central_of(&Subspace::full(self.dim));
        let derived = self.derived_series();
        let nilpotent = lower_central.last().is_some_and(Subspace::is_zero);
        let solvable = derived.last().is_some_and(Subspace::is_zero);
        Ok(SeriesReport {
            abelian: lower_central[0].is_zero(),
            step_length: nilpotent.then_some(lower_central.len()),
            derived_length: solvable.then_some(derived.len()),
            lower_central,
            derived,
            nilpotent,
            solvable,
        })
    }

    pub fn classify(&self) -> Result<Classification> {
        let s = self.series()?;
        Ok(Classification {
            abelian: s.abelian,
            nilpotent: s.nilpotent,
            solvable: s.solvable,
            derived_dim: s.derived[0].dim(),
            almost_abelian: self.almost_abelian_witness().is_some(),
            step_length: s.step_length,
            derived_length: s.derived_length,
        })
    }

    /// A nonzero 1-form `φ` whose kernel is an abelian ideal of codimension
    /// one, if any exists.
    ///
    /// A hyperplane `ker φ` is an ideal exactly when it contains `g'`, and it
    /// is abelian exactly when every `d e_k` is divisible by `φ`, i.e.
    /// `d e_k ∧ φ = 0`. Both conditions are linear in `φ`.
    pub fn almost_abelian_witness(&self) -> Option<KForm> {
        let n = self.dim;
        let mut rows: Matrix = self.derived_algebra().basis().clone();
        for de in &self.diffs {
            // one row per 3-monomial: the coefficient of de ∧ e_i, as i varies
            let images: Vec<KForm> = (1..=n)
                .map(|i| de.wedge(&KForm::basis(n, &[i]).unwrap()).unwrap())
                .collect();
            let mut monos: Vec<Monomial> = images.iter().flat_map(|f| f.terms().map(|(m, _)| *m)).collect();
            monos.sort();
            monos.dedup();
            for m in monos {
                rows.push(images.iter().map(|f| f.coeff(m)).collect());
            }
        }
        let ns = nullspace(&rows, n);
        let phi = Subspace::span(n, ns).basis().first().cloned()?;
        Some(KForm::covector(&phi))
    }

    pub fn twist_filtration(&self) -> Result<Filtration> {
        let s = self.series()?;
        if !s.nilpotent {
            return Err(Error::NotNilpotent);
        }
        let r = s.step_length.expect("nilpotent");
        // n^(0) = g, then the lower central terms; n^(r) = 0
        let mut terms = vec![Subspace::full(self.dim)];
        terms.extend(s.lower_central.iter().cloned());
        let levels: Vec<Subspace> = (0..r).map(|i| terms[r - i].annihilator()).collect();
        let filt = Filtration { levels };
        for i in 0..r {
            for v in filt.level_forms(i) {
                if !filt.contains_form(i + 1, &self.d(&v)?)? {
                    return Err(Error::Internal(format!(
                        "filtration check failed: d({v}) not in Λ²V_{}",
                        i + 1
                    )));
                }
            }
        }
        Ok(filt)
    }

    /// `L_v a = v ⌟ da + d(v ⌟ a)`.
    pub fn lie_derivative(&self, v: &Vector, a: &KForm) -> Result<KForm> {
        self.check_vector(v)?;
        let first = self.d(a)?.interior(v)?;
        if a.degree() == 0 {
            return Ok(first);
        }
        Ok(&first + &self.d(&a.interior(v)?)?)
    }

    pub fn find_shear_lines(&self) -> Result<ShearLines> {
        let s = self.series()?;
        if !s.solvable {
            return Err(Error::NotSolvable);
        }
        if s.abelian {
            return Err(Error::Abelian);
        }
        let n = self.derived_algebra();
        let lcs = self.lower_central_of(&n);
        // last nonzero term, counting n itself as n^(0)
        let target = lcs
            .iter()
            .rev()
            .find(|t| !t.is_zero())
            .cloned()
            .unwrap_or_else(|| n.clone());
        let generators: Vec<Vector> = n
            .complement_indices()
            .into_iter()
            .map(|i| Vector::basis(self.dim, i + 1).unwrap())
            .collect();

        // each group: (eigenvalues so far, basis of the subspace in target coordinates)
        let t = target.dim();
        let mut groups: Vec<(Vec<Q>, Matrix)> = vec![(Vec::new(), linalg::identity(t))];
        let mut unrepresentable = false;
        for g in &generators {
            let op = self.restricted_ad(g, &target);
            let mut next = Vec::new();
            for (eigs, basis) in groups {
                let sub = Subspace::span(t, basis.clone());
                // matrix of op on the group subspace, in its echelon basis
                let cols: Vec<Vec<Q>> = sub
                    .basis()
                    .iter()
                    .map(|b| {
                        sub.coordinates(&linalg::mat_vec(&op, b))
                            .expect("generators act on a commuting invariant subspace")
                    })
                    .collect();
                let m = linalg::transpose(&cols);
                let (roots, rest) = rational_roots(&char_poly(&m));
                unrepresentable |= rest > 0;
                for (lambda, _) in roots {
                    let mut shifted = m.clone();
                    for (i, row) in shifted.iter_mut().enumerate() {
                        row[i] -= &lambda;
                    }
                    let kernel = nullspace(&shifted, m.len());
                    let vecs: Matrix = kernel
                        .iter()
                        .map(|c| {
                            let mut v = vec![Q::zero(); t];
                            for (ci, b) in c.iter().zip(sub.basis()) {
                                for (x, y) in v.iter_mut().zip(b) {
                                    *x += ci * y;
                                }
                            }
                            v
                        })
                        .collect();
                    let mut e = eigs.clone();
                    e.push(lambda);
                    next.push((e, vecs));
                }
            }
            groups = next;
        }
        let eigenspaces = groups
            .into_iter()
            .map(|(eigenvalues, coords)| {
                let frame: Matrix = coords
                    .iter()
                    .map(|c| {
                        let mut v = vec![Q::zero(); self.dim];
                        for (ci, b) in c.iter().zip(target.basis()) {
                            for (x, y) in v.iter_mut().zip(b) {
                                *x += ci * y;
                            }
                        }
                        v
                    })
                    .collect();
                let basis = Subspace::span(self.dim, frame)
                    .basis()
                    .iter()
                    .map(|r| Vector::from_components(r.clone()))
                    .collect();
                Eigenspace { eigenvalues, basis }
            })
            .collect();
        Ok(ShearLines {
            generators,
            target: target
                .basis()
                .iter()
                .map(|r| Vector::from_components(r.clone()))
                .collect(),
            eigenspaces,
            unrepresentable,
        })
    }

    /// Matrix of `ad(g)` restricted to an invariant subspace, in the
    /// subspace's echelon coordinates.
    fn restricted_ad(&self, g: &Vector, sub: &Subspace) -> Matrix {
        let cols: Vec<Vec<Q>> = sub
            .basis()
            .iter()
            .map(|b| {
                let img = self.bracket_raw(g.components(), b);
                sub.coordinates(&img).expect("subspace is ad-invariant")
            })
            .collect();
        linalg::transpose(&cols)
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_salamon() {
            Some(s) => write!(f, "{s}"),
            None => {
                write!(f, "{{dim: {}, d: [", self.dim)?;
                for (k, d) in self.diffs.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{d}")?;
                }
                write!(f, "]}}")
            }
        }
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra{self}")
    }
}
