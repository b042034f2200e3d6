//! Exterior-algebra laws as runnable properties, shared by the property
//! tests and the acceptance harness.

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use shearlab::{KForm, LieAlgebra, Vector};

use super::{kform, raw_algebra, runner, shape, solvable_algebra, vector};

pub type Outcome = Result<(), String>;

fn sign(k: usize) -> i64 {
    if k % 2 == 0 { 1 } else { -1 }
}

fn check<S: Strategy>(cases: u32, s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Outcome
where
    S::Value: std::fmt::Debug,
{
    runner(cases).run(&s, f).map_err(|e| e.to_string())
}

fn pair_of_forms() -> impl Strategy<Value = (KForm, KForm)> {
    shape().prop_flat_map(|(n, k)| (Just(n), Just(k), 0..=n - k)).prop_flat_map(|(n, k, l)| (kform(n, k), kform(n, l)))
}

fn triple_of_forms() -> impl Strategy<Value = (KForm, KForm, KForm)> {
    (1usize..=7)
        .prop_flat_map(|n| (Just(n), 0..=n, 0..=n, 0..=n))
        .prop_flat_map(|(n, a, b, c)| (kform(n, a), kform(n, b), kform(n, c)))
}

/// `a ∧ b = (-1)^{kl} b ∧ a`.
pub fn anticommutativity(cases: u32) -> Outcome {
    check(cases, pair_of_forms(), |(a, b)| {
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        let s = sign(a.degree() * b.degree());
        prop_assert_eq!(ab, ba.scale(&super::q(s)));
        Ok(())
    })
}

pub fn associativity(cases: u32) -> Outcome {
    check(cases, triple_of_forms(), |(a, b, c)| {
        let left = a.wedge(&b).and_then(|ab| ab.wedge(&c));
        let right = b.wedge(&c).and_then(|bc| a.wedge(&bc));
        match (left, right) {
            (Ok(l), Ok(r)) => prop_assert_eq!(l, r),
            (l, r) => prop_assert_eq!(l.is_err(), r.is_err()),
        }
        Ok(())
    })
}

/// `ι_v (a ∧ b) = ι_v a ∧ b + (-1)^k a ∧ ι_v b` and `ι_v ι_w = -ι_w ι_v`.
pub fn interior_antiderivation(cases: u32) -> Outcome {
    let s = pair_of_forms().prop_flat_map(|(a, b)| {
        let n = a.dim();
        (Just(a), Just(b), vector(n), vector(n))
    });
    check(cases, s, |(a, b, v, w)| {
        let lhs = a.wedge(&b).unwrap().interior(&v).unwrap();
        let mut rhs = KForm::zero(a.dim(), lhs.degree());
        if a.degree() > 0 {
            rhs = &rhs + &a.interior(&v).unwrap().wedge(&b).unwrap();
        }
        if b.degree() > 0 {
            let t = a.wedge(&b.interior(&v).unwrap()).unwrap();
            rhs = &rhs + &t.scale(&super::q(sign(a.degree())));
        }
        if a.degree() + b.degree() > 0 {
            prop_assert_eq!(lhs, rhs);
        }
        if a.degree() >= 2 {
            let vw = a.interior(&w).unwrap().interior(&v).unwrap();
            let wv = a.interior(&v).unwrap().interior(&w).unwrap();
            prop_assert_eq!(vw, -&wv);
            prop_assert!(a.interior(&v).unwrap().interior(&v).unwrap().is_zero());
        }
        Ok(())
    })
}

/// `d(a ∧ b) = da ∧ b + (-1)^k a ∧ db` on arbitrary structure constants.
pub fn d_antiderivation(cases: u32) -> Outcome {
    let s = raw_algebra().prop_flat_map(|g| {
        let n = g.dim();
        (Just(g), 0..=n).prop_flat_map(move |(g, k)| (Just(g), kform(n, k), 0..=n - k))
            .prop_flat_map(move |(g, a, l)| (Just(g), Just(a), kform(n, l)))
    });
    check(cases, s, |(g, a, b)| {
        if a.degree() + b.degree() + 1 > g.dim() {
            return Ok(());
        }
        let lhs = g.d(&a.wedge(&b).unwrap()).unwrap();
        let t1 = g.d(&a).unwrap().wedge(&b).unwrap();
        let t2 = a.wedge(&g.d(&b).unwrap()).unwrap().scale(&super::q(sign(a.degree())));
        prop_assert_eq!(lhs, &t1 + &t2);
        Ok(())
    })
}

/// `d∘d = 0` on generators agrees with the Jacobi identity on brackets, and
/// on Lie algebras `d∘d` vanishes on every form.
pub fn dd_iff_jacobi(cases: u32) -> Outcome {
    let s = prop_oneof![raw_algebra(), solvable_algebra()].prop_flat_map(|g| {
        let n = g.dim();
        (Just(g), (0..n).prop_flat_map(move |k| kform(n, k)))
    });
    check(cases, s, |(g, a): (LieAlgebra, KForm)| {
        let by_forms = g.jacobi_check().passed();
        prop_assert_eq!(by_forms, g.jacobi_by_brackets());
        if by_forms && a.degree() + 2 <= g.dim() {
            prop_assert!(g.d(&g.d(&a).unwrap()).unwrap().is_zero());
        }
        Ok(())
    })
}

/// `⋆⋆ = (-1)^{k(n-k)}` and `a ∧ ⋆a = |a|² vol`.
pub fn star_star(cases: u32) -> Outcome {
    check(cases, shape().prop_flat_map(|(n, k)| kform(n, k)), |a| {
        let n = a.dim();
        let k = a.degree();
        for o in [1i8, -1] {
            let ss = a.hodge_star(o).hodge_star(o);
            prop_assert_eq!(ss, a.scale(&super::q(sign(k * (n - k)))));
        }
        let norm: shearlab::Q = a.terms().map(|(_, c)| c * c).sum();
        let vol = KForm::scalar(n, norm).hodge_star(1);
        prop_assert_eq!(a.wedge(&a.hodge_star(1)).unwrap(), vol);
        Ok(())
    })
}

/// `α(v)` for 1-forms agrees with evaluation, and evaluation is the
/// determinant of pairings on decomposable forms.
pub fn evaluation(cases: u32) -> Outcome {
    let s = (2usize..=5).prop_flat_map(|n| (kform(n, 1), kform(n, 1), vector(n), vector(n)));
    check(cases, s, |(a, b, v, w): (KForm, KForm, Vector, Vector)| {
        let ab = a.wedge(&b).unwrap();
        let det = a.pair(&v).unwrap() * b.pair(&w).unwrap() - a.pair(&w).unwrap() * b.pair(&v).unwrap();
        prop_assert_eq!(ab.eval(&[v, w]).unwrap(), det);
        Ok(())
    })
}
