mod common;

use common::{alg, form, q};
use proptest::prelude::*;

use shearlab::search::{enumerate_f0, SearchSpec};
use shearlab::shear::{candidate, ShearData};
use shearlab::{KForm, LieAlgebra, Monomial};

/// Every coefficient assignment in `{-1, 0, 1}` over the support, kept when
/// the directly built algebra satisfies Jacobi by brackets.
fn brute_force(spec: &SearchSpec) -> Vec<String> {
    let support = spec.resolved_support().unwrap();
    let n = spec.base.dim();
    let mut out = Vec::new();
    for code in 0..3usize.pow(support.len() as u32) {
        let mut f0 = KForm::zero(n, 2);
        let mut c = code;
        for &m in &support {
            f0.add_term(m, q(c as i64 % 3 - 1));
            c /= 3;
        }
        if f0.num_terms() > spec.max_terms {
            continue;
        }
        let d = ShearData::new(spec.x.clone(), spec.alpha.clone(), f0.clone(), spec.a.clone()).unwrap();
        if candidate(&spec.base, &d).unwrap().jacobi_by_brackets() {
            out.push(f0.to_string());
        }
    }
    out.sort();
    out
}

fn run(spec: &SearchSpec) -> Vec<String> {
    let mut found: Vec<String> = enumerate_f0(spec).unwrap().iter().map(|h| h.f0.to_string()).collect();
    found.sort();
    found
}

fn mono(s: &str, n: usize) -> Monomial {
    *form(s, n).terms().next().unwrap().0
}

#[test]
fn complete_on_small_supports() {
    let cases = [
        ("(51,52,53,2.54,0)", 4, vec!["e12", "e13", "e15", "e35"]),
        ("(0,0,12,13)", 4, vec!["e12", "e13", "e23"]),
        ("(0,0,0,12)", 4, vec!["e12", "e13", "e23"]),
        ("(3.17,27,2.37,3.74,75,2.76,0)", 1, vec!["e23", "e27", "e45", "e67"]),
    ];
    for (s, x, support) in cases {
        let g = alg(s);
        let n = g.dim();
        for max_terms in 0..=4 {
            let mut spec = SearchSpec::along_basis(g.clone(), x, max_terms).unwrap();
            spec.support = Some(support.iter().map(|w| mono(w, n)).collect());
            assert_eq!(run(&spec), brute_force(&spec), "{s}, max terms {max_terms}");
        }
    }
}

#[test]
fn output_is_ordered() {
    let g = alg("(51,52,53,2.54,0)");
    let mut spec = SearchSpec::along_basis(g, 4, 2).unwrap();
    spec.support = Some(["e12", "e13", "e15", "e35"].iter().map(|w| mono(w, 5)).collect());
    let hits = enumerate_f0(&spec).unwrap();
    let keys: Vec<(usize, Vec<Monomial>, Vec<String>)> = hits
        .iter()
        .map(|h| {
            let (ms, cs): (Vec<Monomial>, Vec<String>) = h.f0.terms().map(|(m, c)| (*m, c.to_string())).unzip();
            (ms.len(), ms, cs)
        })
        .collect();
    for w in keys.windows(2) {
        assert!((w[0].0, &w[0].1) <= (w[1].0, &w[1].1));
    }
    for h in &hits {
        assert!(h.sheared.is_lie() && h.report.valid);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn complete_on_random_algebras(
        g in common::solvable_algebra(),
        picks in prop::collection::vec(0usize..64, 1..=4),
        max_terms in 0usize..=4,
    ) {
        let gens: Vec<usize> = (1..=g.dim())
            .filter(|&i| shearlab::shear::check_ideal(&g, &shearlab::Vector::basis(g.dim(), i).unwrap()).is_ok())
            .collect();
        prop_assume!(!gens.is_empty());
        let x = gens[picks[0] % gens.len()];
        let mut spec = SearchSpec::along_basis(g.clone(), x, max_terms).unwrap();
        let all = spec.resolved_support().unwrap();
        prop_assume!(!all.is_empty());
        let mut support: Vec<Monomial> = picks.iter().map(|p| all[p % all.len()]).collect();
        support.sort();
        support.dedup();
        spec.support = Some(support);
        prop_assert_eq!(run(&spec), brute_force(&spec));
    }
}

#[test]
fn abelian_accepts_everything() {
    let g = LieAlgebra::abelian(4).unwrap();
    let spec = SearchSpec::along_basis(g, 1, 3).unwrap();
    // Λ²W for W = span(e2, e3, e4) has three monomials; every F0 is closed
    assert_eq!(enumerate_f0(&spec).unwrap().len(), 27);
}
