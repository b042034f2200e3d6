//! Twist and shear constructions on Lie algebras.
//!
//! Given a generator `X` of a one-dimensional ideal, a 1-form `α` with
//! `α(X) = 1` and a deformation 2-form `F0`, the sheared algebra lives on the
//! same coframe: every covector `e` keeps its differential up to the
//! correction `e(X) F`, where `F = -a⁻¹ F0` for the transfer constant `a`.
//! With the default `a = -1` this is `F0` itself.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::{KForm, Vector};
use crate::lie::LieAlgebra;
use crate::linalg::Subspace;
use crate::rational::{fmt_q, Q};

/// Data for one shear: `X`, `α`, `F0`, the constant `a` and optionally the
/// 1-form `η` of the geometric structure equation `dF = η ∧ F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShearData {
    pub x: Vector,
    pub alpha: KForm,
    pub f0: KForm,
    pub a: Q,
    pub eta_g: Option<KForm>,
}

impl ShearData {
    pub fn new(x: Vector, alpha: KForm, f0: KForm, a: Q) -> Result<Self> {
        let n = x.dim();
        for f in [&alpha, &f0] {
            if f.dim() != n {
                return Err(Error::DimensionMismatch(n, f.dim()));
            }
        }
        if alpha.degree() != 1 {
            return Err(Error::WrongDegree {
                expected: 1,
                got: alpha.degree(),
            });
        }
        if f0.degree() != 2 {
            return Err(Error::WrongDegree {
                expected: 2,
                got: f0.degree(),
            });
        }
        if a.is_zero() {
            return Err(Error::ZeroTransferConstant);
        }
        let ax = alpha.pair(&x)?;
        if !ax.is_one() {
            return Err(Error::AlphaNormalization(fmt_q(&ax)));
        }
        Ok(ShearData {
            x,
            alpha,
            f0,
            a,
            eta_g: None,
        })
    }

    /// Shear along `E_i` with `α = e_i` and `a = -1`.
    pub fn along_basis(dim: usize, i: usize, f0: KForm) -> Result<Self> {
        Self::new(
            Vector::basis(dim, i)?,
            KForm::basis(dim, &[i])?,
            f0,
            -Q::one(),
        )
    }

    pub fn with_eta_g(mut self, eta_g: KForm) -> Result<Self> {
        if eta_g.degree() != 1 {
            return Err(Error::WrongDegree {
                expected: 1,
                got: eta_g.degree(),
            });
        }
        if eta_g.dim() != self.x.dim() {
            return Err(Error::DimensionMismatch(self.x.dim(), eta_g.dim()));
        }
        self.eta_g = Some(eta_g);
        Ok(self)
    }

    pub fn with_a(mut self, a: Q) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroTransferConstant);
        }
        self.a = a;
        Ok(self)
    }

    /// The 2-form actually added: `-a⁻¹ F0`.
    pub fn effective_f(&self) -> KForm {
        self.f0.scale(&-(Q::one() / &self.a))
    }

    /// `ν = X ⌟ F0`.
    pub fn nu(&self) -> KForm {
        self.f0.interior(&self.x).expect("checked dimensions")
    }
}

/// `dα = η ∧ α + F` with `X ⌟ η = 0` and `X ⌟ F = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompResult {
    pub eta_str: KForm,
    pub f_str: KForm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ConditionKind {
    /// `span X` is an ideal, i.e. `dW ⊂ Λ²W`.
    Ideal,
    /// `dF = η0 ∧ F` for the effective deformation form.
    StructureEquation,
    /// `dη0 = 0`.
    Eta0Closed,
    /// `η0(X) = 0`.
    Eta0AnnihilatesX,
    /// `dν ∧ ν = 0`.
    NuIntegrable,
    /// `dν = 0` (`d(a⁻¹ν) = 0` for constant `a`).
    NuClosed,
    /// `dF0 = η_g ∧ F0`.
    EtaGStructure,
    /// `dη_g = 0`.
    EtaGClosed,
    /// `η_g(X) = 0`.
    EtaGAnnihilatesX,
}

impl ConditionKind {
    /// Whether the condition decides if the sheared bracket is a Lie bracket.
    pub fn required(self) -> bool {
        matches!(
            self,
            Self::Ideal | Self::StructureEquation | Self::Eta0Closed | Self::Eta0AnnihilatesX
        )
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Ideal => "xi is an ideal (dW in L2 W)",
            Self::StructureEquation => "dF = eta0 ^ F",
            Self::Eta0Closed => "d eta0 = 0",
            Self::Eta0AnnihilatesX => "eta0(X) = 0",
            Self::NuIntegrable => "d nu ^ nu = 0",
            Self::NuClosed => "d nu = 0",
            Self::EtaGStructure => "dF0 = eta_g ^ F0",
            Self::EtaGClosed => "d eta_g = 0",
            Self::EtaGAnnihilatesX => "eta_g(X) = 0",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub kind: ConditionKind,
    pub passed: bool,
    /// The form that must vanish (e.g. `dF - η0 ∧ F`), when the condition
    /// is an identity between forms.
    pub residual: Option<KForm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShearReport {
    pub valid: bool,
    pub eta_str: KForm,
    pub f_str: KForm,
    /// `F = -a⁻¹ F0`.
    pub f_eff: KForm,
    pub eta_prime: KForm,
    pub f_prime: KForm,
    pub eta_0: KForm,
    pub eta_tilde: KForm,
    pub f_tilde: KForm,
    pub nu: KForm,
    /// The η of `[A, X] = η(A) X`, which differs in sign from `eta_str`.
    pub eta_bracket: KForm,
    pub conditions: Vec<Condition>,
}

impl ShearReport {
    pub fn condition(&self, kind: ConditionKind) -> Option<&Condition> {
        self.conditions.iter().find(|c| c.kind == kind)
    }

    pub fn failed_required(&self) -> Vec<ConditionKind> {
        self.conditions
            .iter()
            .filter(|c| c.kind.required() && !c.passed)
            .map(|c| c.kind)
            .collect()
    }
}

impl fmt::Display for ShearReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "valid: {}", self.valid)?;
        writeln!(f, "eta = {}", self.eta_str)?;
        writeln!(f, "F = {}", self.f_str)?;
        writeln!(f, "eta' = {}", self.eta_prime)?;
        writeln!(f, "F' = {}", self.f_prime)?;
        writeln!(f, "eta0 = {}", self.eta_0)?;
        writeln!(f, "eta~ = {}", self.eta_tilde)?;
        writeln!(f, "F~ = {}", self.f_tilde)?;
        writeln!(f, "nu = {}", self.nu)?;
        for c in &self.conditions {
            let tag = if c.kind.required() { "" } else { " (geometric)" };
            write!(f, "[{}] {}{tag}", if c.passed { "pass" } else { "FAIL" }, c.kind.label())?;
            match &c.residual {
                Some(r) if !c.passed => writeln!(f, ": residual {r}")?,
                _ => writeln!(f)?,
            }
        }
        Ok(())
    }
}

fn check_dims(g: &LieAlgebra, d: &ShearData) -> Result<()> {
    if d.x.dim() != g.dim() {
        return Err(Error::DimensionMismatch(g.dim(), d.x.dim()));
    }
    Ok(())
}

/// Basis of `W = Ann(span X)` as 1-forms.
pub fn annihilator_of(x: &Vector) -> Vec<KForm> {
    Subspace::span(x.dim(), [x.components().to_vec()])
        .annihilator()
        .basis()
        .iter()
        .map(|r| KForm::covector(r))
        .collect()
}

/// Checks that `span X` is an ideal: `X ⌟ dw = 0` for `w` in `Ann(X)`.
pub fn check_ideal(g: &LieAlgebra, x: &Vector) -> Result<()> {
    if x.is_zero() {
        return Err(Error::NotAnIdeal("X = 0".into()));
    }
    for w in annihilator_of(x) {
        if !g.d(&w)?.interior(x)?.is_zero() {
            return Err(Error::NotAnIdeal(w.to_string()));
        }
    }
    Ok(())
}

pub fn decompose_dalpha(g: &LieAlgebra, x: &Vector, alpha: &KForm) -> Result<DecompResult> {
    if x.dim() != g.dim() {
        return Err(Error::DimensionMismatch(g.dim(), x.dim()));
    }
    let ax = alpha.pair(x)?;
    if !ax.is_one() {
        return Err(Error::AlphaNormalization(fmt_q(&ax)));
    }
    check_ideal(g, x)?;
    let da = g.d(alpha)?;
    let eta_str = -&da.interior(x)?;
    let f_str = &da - &eta_str.wedge(alpha)?;
    Ok(DecompResult { eta_str, f_str })
}

fn condition(kind: ConditionKind, residual: KForm) -> Condition {
    Condition {
        kind,
        passed: residual.is_zero(),
        residual: Some(residual),
    }
}

pub fn validate_shear(g: &LieAlgebra, d: &ShearData) -> Result<ShearReport> {
    check_dims(g, d)?;
    let DecompResult { eta_str, f_str } = decompose_dalpha(g, &d.x, &d.alpha)?;
    let x = &d.x;
    let f_eff = d.effective_f();
    let x_f = f_eff.interior(x)?;
    let eta_prime = -&x_f;
    let f_prime = &f_eff - &eta_prime.wedge(&d.alpha)?;
    let eta_0 = &eta_str - &x_f;
    let eta_tilde = &eta_str + &eta_prime;
    let f_tilde = &f_str + &f_prime;
    let nu = d.nu();

    let mut conditions = vec![Condition {
        kind: ConditionKind::Ideal,
        passed: true,
        residual: None,
    }];
    conditions.push(condition(
        ConditionKind::StructureEquation,
        &g.d(&f_eff)? - &eta_0.wedge(&f_eff)?,
    ));
    conditions.push(condition(ConditionKind::Eta0Closed, g.d(&eta_0)?));
    conditions.push(condition(ConditionKind::Eta0AnnihilatesX, eta_0.interior(x)?));
    let dnu = g.d(&nu)?;
    conditions.push(condition(ConditionKind::NuIntegrable, dnu.wedge(&nu)?));
    conditions.push(condition(ConditionKind::NuClosed, dnu));
    if let Some(eta_g) = &d.eta_g {
        conditions.push(condition(
            ConditionKind::EtaGStructure,
            &g.d(&d.f0)? - &eta_g.wedge(&d.f0)?,
        ));
        conditions.push(condition(ConditionKind::EtaGClosed, g.d(eta_g)?));
        conditions.push(condition(ConditionKind::EtaGAnnihilatesX, eta_g.interior(x)?));
    }
    let valid = conditions.iter().all(|c| c.passed || !c.kind.required());

    // [A, X] = η(A) X: read off η(E_j) from the X-component of [E_j, X]
    let eta_bracket = {
        let n = g.dim();
        let comps: Vec<Q> = (1..=n)
            .map(|j| {
                let b = g.bracket(&Vector::basis(n, j).unwrap(), x).unwrap();
                d.alpha.pair(&b).unwrap()
            })
            .collect();
        KForm::covector(&comps)
    };

    Ok(ShearReport {
        valid,
        eta_str,
        f_str,
        f_eff,
        eta_prime,
        f_prime,
        eta_0,
        eta_tilde,
        f_tilde,
        nu,
        eta_bracket,
        conditions,
    })
}

/// The sheared differentials without any validity check:
/// `d_new e = d e + e(X) F`.
pub fn candidate(g: &LieAlgebra, d: &ShearData) -> Result<LieAlgebra> {
    check_dims(g, d)?;
    let f_eff = d.effective_f();
    let diffs = g
        .diffs()
        .iter()
        .zip(d.x.components())
        .map(|(de, xk)| de + &f_eff.scale(xk))
        .collect();
    LieAlgebra::new(diffs)
}

pub fn apply_shear(g: &LieAlgebra, d: &ShearData) -> Result<LieAlgebra> {
    let report = validate_shear(g, d)?;
    if !report.valid {
        let failed: Vec<&str> = report.failed_required().iter().map(|k| k.label()).collect();
        return Err(Error::InvalidShear(failed.join("; ")));
    }
    candidate(g, d)
}

/// `d_S σ = dσ - a⁻¹ F0 ∧ (X ⌟ σ)`.
pub fn ds_form(g: &LieAlgebra, d: &ShearData, form: &KForm) -> Result<KForm> {
    check_dims(g, d)?;
    let contracted = form.interior(&d.x)?;
    let correction = d.effective_f().wedge(&contracted)?;
    let ds = g.d(form)?;
    if form.degree() == 0 {
        return Ok(ds);
    }
    Ok(&ds + &correction)
}

/// Tests `L_X σ = γ ∧ (X ⌟ σ)` with `γ = a⁻¹ ν - η_g`; returns the verdict
/// and `γ`.
pub fn is_automorphic(g: &LieAlgebra, d: &ShearData, form: &KForm) -> Result<(bool, KForm)> {
    check_dims(g, d)?;
    let eta_g = d
        .eta_g
        .as_ref()
        .ok_or_else(|| Error::InvalidShear("automorphic test needs eta_g".into()))?;
    let gamma = &d.nu().scale(&(Q::one() / &d.a)) - eta_g;
    let lhs = g.lie_derivative(&d.x, form)?;
    let contracted = form.interior(&d.x)?;
    let rhs = if form.degree() == 0 {
        KForm::zero(g.dim(), 1)
    } else {
        gamma.wedge(&contracted)?
    };
    Ok((lhs == rhs, gamma))
}

/// Data undoing a shear: the same `X`, `α` and `a` with `-F0`. Fails if
/// that data is not a valid shear of `sheared`.
pub fn invert_shear(sheared: &LieAlgebra, d: &ShearData) -> Result<ShearData> {
    let mut inv = d.clone();
    inv.f0 = -&d.f0;
    if inv.eta_g.is_some() {
        // η_g belongs to the original geometry
        inv.eta_g = None;
    }
    let report = validate_shear(sheared, &inv)?;
    if !report.valid {
        let failed: Vec<&str> = report.failed_required().iter().map(|k| k.label()).collect();
        return Err(Error::InvalidShear(format!(
            "inverse data is not valid on the sheared algebra: {}",
            failed.join("; ")
        )));
    }
    Ok(inv)
}

/// Twist of a nilpotent algebra: keep `d` on `W` and set `dβ = dα + F`.
///
/// `X` is taken from the last nonzero lower central term with `α(X) = 1`,
/// so it is central. For an abelian input the minimal filtration has no
/// `V_1`; any splitting is admissible there and `F` is only required to
/// lie in `Λ²W`.
pub fn apply_twist(g: &LieAlgebra, alpha: &KForm, f: &KForm) -> Result<LieAlgebra> {
    let n = g.dim();
    if alpha.dim() != n || f.dim() != n {
        return Err(Error::DimensionMismatch(n, alpha.dim().max(f.dim())));
    }
    if alpha.degree() != 1 || f.degree() != 2 {
        return Err(Error::InvalidTwist("alpha must be a 1-form and F a 2-form".into()));
    }
    let filt = g.twist_filtration()?;
    let series = g.series()?;
    let r = filt.step_length();
    let last = if r >= 2 {
        series.lower_central[r - 2].clone()
    } else {
        Subspace::full(n)
    };
    let x = last
        .basis()
        .iter()
        .map(|b| Vector::from_components(b.clone()))
        .find_map(|v| {
            let a = alpha.pair(&v).ok()?;
            (!a.is_zero()).then(|| v.scale(&(Q::one() / a)))
        })
        .ok_or_else(|| Error::InvalidTwist(format!("alpha = {alpha} lies in V1")))?;

    let admissible = if r >= 2 {
        filt.contains_form(1, f)?
    } else {
        f.interior(&x)?.is_zero()
    };
    if !admissible {
        return Err(Error::InvalidTwist(format!("F = {f} is not in L2 V1")));
    }
    if !g.d(f)?.is_zero() {
        return Err(Error::InvalidTwist(format!("dF = {} is nonzero", g.d(f)?)));
    }

    // direct route: split e_k = e_k(X) α + w_k and put dβ = dα + F
    let da = g.d(alpha)?;
    let dbeta = &da + f;
    let mut diffs = Vec::with_capacity(n);
    for k in 1..=n {
        let ek = KForm::basis(n, &[k])?;
        let xk = x.get(k).clone();
        let wk = &ek - &alpha.scale(&xk);
        diffs.push(&dbeta.scale(&xk) + &g.d(&wk)?);
    }
    let twisted = LieAlgebra::new(diffs)?;

    // the same algebra as a shear with a = -1 and vanishing η-parts
    let data = ShearData::new(x, alpha.clone(), f.clone(), -Q::one())?;
    let report = validate_shear(g, &data)?;
    if !report.eta_str.is_zero() || !report.eta_prime.is_zero() || !report.valid {
        return Err(Error::Internal("twist data is not a flat shear".into()));
    }
    if apply_shear(g, &data)? != twisted {
        return Err(Error::Internal("twist and shear constructions disagree".into()));
    }
    Ok(twisted)
}
