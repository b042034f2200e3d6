//! Invariant geometric structures on Lie algebras: symplectic, Kähler,
//! half-flat SU(3), co-calibrated G2 and stable 3-forms.
//!
//! Complex structures are real endomorphisms `J` of the frame; column `j`
//! of the matrix is `J E_j`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exterior::{KForm, Monomial, Vector};
use crate::lie::LieAlgebra;
use crate::linalg::{self, leading_minors, mat_mul, transpose, Matrix};
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Metric {
    gram: Matrix,
}

impl Metric {
    pub fn new(gram: Matrix) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::Internal("metric must be square".into()));
        }
        if gram != transpose(&gram) {
            return Err(Error::Internal("metric must be symmetric".into()));
        }
        Ok(Metric { gram })
    }

    /// `Σ e_i²`.
    pub fn euclidean(n: usize) -> Self {
        Metric {
            gram: linalg::identity(n),
        }
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    /// Sylvester's criterion.
    pub fn is_positive_definite(&self) -> bool {
        leading_minors(&self.gram).iter().all(Signed::is_positive)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexStructure {
    j: Matrix,
}

impl ComplexStructure {
    pub fn new(j: Matrix) -> Result<Self> {
        let n = j.len();
        if n % 2 == 1 {
            return Err(Error::OddDimension(n));
        }
        if j.iter().any(|r| r.len() != n) {
            return Err(Error::NotComplexStructure);
        }
        let sq = mat_mul(&j, &j);
        let minus_id: Matrix = linalg::identity(n)
            .into_iter()
            .map(|r| r.into_iter().map(|x| -x).collect())
            .collect();
        if sq != minus_id {
            return Err(Error::NotComplexStructure);
        }
        Ok(ComplexStructure { j })
    }

    /// `J E_{2i-1} = E_{2i}`, `J E_{2i} = -E_{2i-1}`; compatible with
    /// `ω = e12 + e34 + ...` and the Euclidean metric.
    pub fn standard(n: usize) -> Result<Self> {
        if n % 2 == 1 {
            return Err(Error::OddDimension(n));
        }
        let mut j = vec![vec![Q::zero(); n]; n];
        for p in (0..n).step_by(2) {
            j[p + 1][p] = Q::one();
            j[p][p + 1] = -Q::one();
        }
        Self::new(j)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.j
    }

    pub fn dim(&self) -> usize {
        self.j.len()
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        Vector::from_components(linalg::mat_vec(&self.j, v.components()))
    }

    /// `θ ∘ J` for a 1-form `θ`.
    pub fn pull_back_1form(&self, theta: &KForm) -> KForm {
        let row = theta.covector_components();
        let comps: Vec<Q> = (0..self.dim())
            .map(|c| row.iter().enumerate().fold(Q::zero(), |acc, (r, t)| acc + t * &self.j[r][c]))
            .collect();
        KForm::covector(&comps)
    }

    /// `F(J·, J·)` for a 2-form.
    pub fn pull_back_2form(&self, f: &KForm) -> KForm {
        let a = f.to_matrix();
        KForm::from_matrix(&mat_mul(&mat_mul(&transpose(&self.j), &a), &self.j))
    }

    /// `F(J·, ·) + F(·, J·)`.
    fn derivation_2form(&self, f: &KForm) -> KForm {
        let a = f.to_matrix();
        let lhs = mat_mul(&transpose(&self.j), &a);
        let rhs = mat_mul(&a, &self.j);
        let sum: Matrix = lhs
            .iter()
            .zip(&rhs)
            .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect())
            .collect();
        KForm::from_matrix(&sum)
    }
}

pub fn is_closed(g: &LieAlgebra, a: &KForm) -> Result<bool> {
    Ok(g.d(a)?.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticReport {
    pub closed: bool,
    /// `ω^{n/2}`.
    pub top_power: KForm,
}

impl SymplecticReport {
    pub fn nondegenerate(&self) -> bool {
        !self.top_power.is_zero()
    }

    pub fn passed(&self) -> bool {
        self.closed && self.nondegenerate()
    }
}

pub fn symplectic_check(g: &LieAlgebra, omega: &KForm) -> Result<SymplecticReport> {
    let n = g.dim();
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    expect_degree(omega, 2)?;
    let mut top = KForm::scalar(n, Q::one());
    for _ in 0..n / 2 {
        top = top.wedge(omega)?;
    }
    Ok(SymplecticReport {
        closed: is_closed(g, omega)?,
        top_power: top,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NijenhuisReport {
    /// `((i, j), N(E_i, E_j))` for `i < j`, 1-based.
    pub entries: Vec<((usize, usize), Vector)>,
}

impl NijenhuisReport {
    pub fn integrable(&self) -> bool {
        self.entries.iter().all(|(_, v)| v.is_zero())
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &((usize, usize), Vector)> {
        self.entries.iter().filter(|(_, v)| !v.is_zero())
    }
}

/// `N(v, w) = [Jv, Jw] - J[Jv, w] - J[v, Jw] - [v, w]` on all frame pairs.
pub fn nijenhuis(g: &LieAlgebra, j: &ComplexStructure) -> Result<NijenhuisReport> {
    let n = g.dim();
    if j.dim() != n {
        return Err(Error::DimensionMismatch(n, j.dim()));
    }
    let mut entries = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            let n_ab = nijenhuis_pair(g, j, &Vector::basis(n, a)?, &Vector::basis(n, b)?)?;
            entries.push(((a, b), n_ab));
        }
    }
    Ok(NijenhuisReport { entries })
}

/// `N(v, w)` for arbitrary vectors.
pub fn nijenhuis_pair(g: &LieAlgebra, j: &ComplexStructure, v: &Vector, w: &Vector) -> Result<Vector> {
    let (jv, jw) = (j.apply(v), j.apply(w));
    let t1 = g.bracket(&jv, &jw)?;
    let t2 = j.apply(&g.bracket(&jv, w)?);
    let t3 = j.apply(&g.bracket(v, &jw)?);
    let t4 = g.bracket(v, w)?;
    t1.sub(&t2)?.sub(&t3)?.sub(&t4)
}

/// Integrability through forms: for every covector `θ`,
/// `2 (dθ)^{(2,0)+(0,2)} + (d(θ∘J))(J·,·) + (d(θ∘J))(·,J·) = 0`,
/// which is `θ ∘ N` written with `d` in place of brackets.
pub fn integrable_by_types(g: &LieAlgebra, j: &ComplexStructure) -> Result<bool> {
    let n = g.dim();
    for k in 1..=n {
        let theta = KForm::basis(n, &[k])?;
        let (rem, _) = type_components(j, &g.d(&theta)?)?;
        let dtj = g.d(&j.pull_back_1form(&theta))?;
        let total = &rem.scale(&Q::from_integer(2.into())) + &j.derivation_2form(&dtj);
        if !total.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Splits a 2-form into its `(2,0)+(0,2)` part and its `(1,1)` part
/// `½(F + F(J·,J·))`.
pub fn type_components(j: &ComplexStructure, f: &KForm) -> Result<(KForm, KForm)> {
    expect_degree(f, 2)?;
    if f.dim() != j.dim() {
        return Err(Error::DimensionMismatch(j.dim(), f.dim()));
    }
    let half = Q::new(1.into(), 2.into());
    let f11 = (f + &j.pull_back_2form(f)).scale(&half);
    let rem = f - &f11;
    Ok((rem, f11))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KahlerReport {
    pub positive_definite: bool,
    /// `g(J·, J·) = g`.
    pub metric_compatible: bool,
    /// `ω = g(J·, ·)`.
    pub omega_compatible: bool,
    pub closed: bool,
    pub integrable: bool,
}

impl KahlerReport {
    pub fn passed(&self) -> bool {
        self.positive_definite
            && self.metric_compatible
            && self.omega_compatible
            && self.closed
            && self.integrable
    }
}

pub fn kahler_check(
    g: &LieAlgebra,
    metric: &Metric,
    j: &ComplexStructure,
    omega: &KForm,
) -> Result<KahlerReport> {
    let n = g.dim();
    if n % 2 == 1 {
        return Err(Error::OddDimension(n));
    }
    for d in [metric.dim(), j.dim(), omega.dim()] {
        if d != n {
            return Err(Error::DimensionMismatch(n, d));
        }
    }
    expect_degree(omega, 2)?;
    let jt = transpose(j.matrix());
    let pulled = mat_mul(&mat_mul(&jt, metric.gram()), j.matrix());
    let from_metric = KForm::from_matrix(&mat_mul(&jt, metric.gram()));
    // from_matrix reads only the upper triangle; g(J·,·) is antisymmetric
    // exactly when the metric is J-invariant
    Ok(KahlerReport {
        positive_definite: metric.is_positive_definite(),
        metric_compatible: &pulled == metric.gram(),
        omega_compatible: &from_metric == omega,
        closed: is_closed(g, omega)?,
        integrable: nijenhuis(g, j)?.integrable(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfFlatReport {
    /// `d(ω ∧ ω) = 0`.
    pub co_symplectic: bool,
    /// `dρ₋ = 0`.
    pub rho_minus_closed: bool,
    /// `ω ∧ ρ₋ = 0`; reported, not required.
    pub compatible: bool,
}

impl HalfFlatReport {
    pub fn passed(&self) -> bool {
        self.co_symplectic && self.rho_minus_closed
    }
}

pub fn half_flat_check(g: &LieAlgebra, omega: &KForm, rho_minus: &KForm) -> Result<HalfFlatReport> {
    expect_dim(g, 6)?;
    expect_degree(omega, 2)?;
    expect_degree(rho_minus, 3)?;
    Ok(HalfFlatReport {
        co_symplectic: is_closed(g, &omega.wedge(omega)?)?,
        rho_minus_closed: is_closed(g, rho_minus)?,
        compatible: omega.wedge(rho_minus)?.is_zero(),
    })
}

/// Closure of the 4-form of a G2-structure. Whether `ψ` is a genuine G2
/// 4-form is not decided here.
pub fn g2_cocal_check(g: &LieAlgebra, psi: &KForm) -> Result<bool> {
    expect_dim(g, 7)?;
    expect_degree(psi, 4)?;
    is_closed(g, psi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Definiteness {
    Positive,
    Negative,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiStability {
    /// `B(E_i, E_j) e1...7 = (E_i ⌟ φ) ∧ (E_j ⌟ φ) ∧ φ`.
    pub b: Matrix,
    pub definiteness: Definiteness,
}

impl PhiStability {
    pub fn stable(&self) -> bool {
        self.definiteness != Definiteness::Neither
    }
}

pub fn phi_stability(phi: &KForm) -> Result<PhiStability> {
    if phi.dim() != 7 {
        return Err(Error::WrongDimension {
            expected: 7,
            got: phi.dim(),
        });
    }
    expect_degree(phi, 3)?;
    let vol = Monomial::from_mask(0x7f);
    let contractions: Vec<KForm> = (1..=7)
        .map(|i| phi.interior(&Vector::basis(7, i).unwrap()).unwrap())
        .collect();
    let mut b = vec![vec![Q::zero(); 7]; 7];
    for i in 0..7 {
        let left = contractions[i].wedge(phi)?;
        for jx in i..7 {
            let c = contractions[jx].wedge(&left)?.coeff(vol);
            b[i][jx] = c.clone();
            b[jx][i] = c;
        }
    }
    let minors = leading_minors(&b);
    let definiteness = if minors.iter().all(Signed::is_positive) {
        Definiteness::Positive
    } else if minors
        .iter()
        .enumerate()
        .all(|(k, m)| if k % 2 == 0 { m.is_negative() } else { m.is_positive() })
    {
        Definiteness::Negative
    } else {
        Definiteness::Neither
    };
    Ok(PhiStability { b, definiteness })
}

/// A closed `σ` stays closed after the shear by `F0` along `X` exactly when
/// `F0 ∧ (X ⌟ σ) = 0`.
pub fn preserves_closure(x: &Vector, f0: &KForm, sigma: &KForm) -> Result<bool> {
    if sigma.degree() == 0 {
        return Ok(true);
    }
    Ok(f0.wedge(&sigma.interior(x)?)?.is_zero())
}

fn expect_degree(f: &KForm, degree: usize) -> Result<()> {
    if f.degree() != degree {
        return Err(Error::WrongDegree {
            expected: degree,
            got: f.degree(),
        });
    }
    Ok(())
}

fn expect_dim(g: &LieAlgebra, n: usize) -> Result<()> {
    if g.dim() != n {
        return Err(Error::WrongDimension {
            expected: n,
            got: g.dim(),
        });
    }
    Ok(())
}
