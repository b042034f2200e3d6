//! Bounded enumeration of deformation forms `F0` giving valid shears.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::{KForm, Monomial, Vector};
use crate::geometry::preserves_closure;
use crate::lie::LieAlgebra;
use crate::rational::Q;
use crate::shear::{candidate, validate_shear, ShearData, ShearReport};

pub const DEFAULT_CAP: u128 = 1_000_000;

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub base: LieAlgebra,
    pub x: Vector,
    pub alpha: KForm,
    pub a: Q,
    /// Zero is always implied; duplicates are ignored.
    pub coefficients: Vec<Q>,
    /// `None` means every `e_ij` with `e_i(X) = e_j(X) = 0`.
    pub support: Option<Vec<Monomial>>,
    pub max_terms: usize,
    pub preserve: Vec<KForm>,
    pub cap: u128,
}

impl SearchSpec {
    /// Search along `E_i` with `α = e_i`, `a = -1`, coefficients `{-1, 0, 1}`.
    pub fn along_basis(base: LieAlgebra, i: usize, max_terms: usize) -> Result<Self> {
        let n = base.dim();
        Ok(SearchSpec {
            x: Vector::basis(n, i)?,
            alpha: KForm::basis(n, &[i])?,
            base,
            a: -Q::one(),
            coefficients: vec![-Q::one(), Q::zero(), Q::one()],
            support: None,
            max_terms,
            preserve: Vec::new(),
            cap: DEFAULT_CAP,
        })
    }

    pub fn resolved_support(&self) -> Result<Vec<Monomial>> {
        let n = self.base.dim();
        let mut s = match &self.support {
            Some(s) => {
                for m in s {
                    if m.degree() != 2 {
                        return Err(Error::WrongDegree {
                            expected: 2,
                            got: m.degree(),
                        });
                    }
                    if let Some(&i) = m.indices().iter().find(|&&i| i > n) {
                        return Err(Error::IndexOutOfRange { index: i, dim: n });
                    }
                }
                s.clone()
            }
            None => {
                let free: Vec<usize> = (1..=n).filter(|&i| self.x.get(i).is_zero()).collect();
                let mut out = Vec::new();
                for (p, &i) in free.iter().enumerate() {
                    for &j in &free[p + 1..] {
                        out.push(Monomial::from_mask((1 << (i - 1)) | (1 << (j - 1))));
                    }
                }
                out
            }
        };
        s.sort();
        s.dedup();
        Ok(s)
    }

    fn nonzero_coefficients(&self) -> Vec<Q> {
        let mut c: Vec<Q> = self.coefficients.iter().filter(|c| !c.is_zero()).cloned().collect();
        c.sort();
        c.dedup();
        c
    }

    /// Number of candidates: `Σ_t C(|S|, t) |C \ 0|^t` for `t ≤ max_terms`.
    pub fn space_size(&self) -> Result<u128> {
        let s = self.resolved_support()?.len() as u128;
        let c = self.nonzero_coefficients().len() as u128;
        let mut total: u128 = 0;
        let mut binom: u128 = 1;
        let mut power: u128 = 1;
        for t in 0..=(self.max_terms as u128).min(s) {
            if t > 0 {
                binom = binom.saturating_mul(s - t + 1) / t;
                power = power.saturating_mul(c);
            }
            total = total.saturating_add(binom.saturating_mul(power));
        }
        Ok(total)
    }
}

#[derive(Clone, Debug)]
pub struct SearchHit {
    pub f0: KForm,
    pub report: ShearReport,
    pub sheared: LieAlgebra,
}

/// All valid `F0` in the search space that keep every `σ` in `preserve`
/// closed, ordered by term count, then monomials, then coefficients.
pub fn enumerate_f0(spec: &SearchSpec) -> Result<Vec<SearchHit>> {
    let n = spec.base.dim();
    let size = spec.space_size()?;
    if size > spec.cap {
        return Err(Error::SearchSpaceTooLarge { size, cap: spec.cap });
    }
    for s in &spec.preserve {
        if s.dim() != n {
            return Err(Error::DimensionMismatch(n, s.dim()));
        }
    }
    // surfaces data errors once rather than per candidate
    ShearData::new(spec.x.clone(), spec.alpha.clone(), KForm::zero(n, 2), spec.a.clone())?;

    let support = spec.resolved_support()?;
    let coeffs = spec.nonzero_coefficients();
    let mut hits = Vec::new();
    for t in 0..=spec.max_terms.min(support.len()) {
        for combo in combinations(support.len(), t) {
            for choice in tuples(coeffs.len(), t) {
                let mut f0 = KForm::zero(n, 2);
                for (&m, &c) in combo.iter().zip(&choice) {
                    f0.add_term(support[m], coeffs[c].clone());
                }
                if let Some(hit) = try_candidate(spec, f0)? {
                    hits.push(hit);
                }
            }
        }
    }
    Ok(hits)
}

fn try_candidate(spec: &SearchSpec, f0: KForm) -> Result<Option<SearchHit>> {
    for s in &spec.preserve {
        if !preserves_closure(&spec.x, &f0, s)? {
            return Ok(None);
        }
    }
    let data = ShearData::new(spec.x.clone(), spec.alpha.clone(), f0.clone(), spec.a.clone())?;
    let report = validate_shear(&spec.base, &data)?;
    if !report.valid {
        return Ok(None);
    }
    let sheared = candidate(&spec.base, &data)?;
    if !sheared.is_lie() {
        return Err(Error::Internal(format!(
            "F0 = {f0} passed validation but the sheared algebra fails Jacobi"
        )));
    }
    Ok(Some(SearchHit { f0, report, sheared }))
}

/// Increasing index sets of size `k` from `0..n`, lexicographic.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[pos] += 1;
        for i in pos + 1..k {
            cur[i] = cur[i - 1] + 1;
        }
    }
}

/// All `k`-tuples over `0..n`, lexicographic.
fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..n).map(move |i| {
                    let mut p = prefix.clone();
                    p.push(i);
                    p
                })
            })
            .collect();
    }
    out
}
