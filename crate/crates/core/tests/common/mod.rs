#![allow(dead_code)]

pub mod props;

use num_traits::Zero;
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use shearlab::notation::{parse_form, Bindings};
use shearlab::shear::{check_ideal, ShearData};
use shearlab::{KForm, LieAlgebra, Monomial, Vector, Q};

pub const PSI: &str = "e1425 + e1436 + e2536 - e4567 + e4237 + e1267 + e1537";
pub const G_LM: &str = "([l+m].17,[l].27,[m].37,-[l+m].47,-[l].57,-[m].67,0)";

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn alg(s: &str) -> LieAlgebra {
    LieAlgebra::parse_salamon(s).unwrap()
}

pub fn form(s: &str, n: usize) -> KForm {
    parse_form(s, n, None, &Bindings::new()).unwrap()
}

pub fn g_lm(l: i64, m: i64) -> LieAlgebra {
    let mut b = Bindings::new();
    b.insert("l".into(), q(l));
    b.insert("m".into(), q(m));
    LieAlgebra::parse_salamon_with(G_LM, &b).unwrap()
}

/// Deterministic runner with the given number of cases.
pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

/// Draws `count` values from a strategy with a fixed seed.
pub fn sample<S: Strategy>(strategy: S, count: usize) -> Vec<S::Value> {
    let mut r = runner(1);
    (0..count)
        .map(|_| strategy.new_tree(&mut r).unwrap().current())
        .collect()
}

pub fn small_q() -> impl Strategy<Value = Q> {
    prop_oneof![
        3 => (-3i64..=3).prop_map(q),
        1 => ((-3i64..=3), (1i64..=3)).prop_map(|(n, d)| qf(n, d)),
    ]
}

pub fn kform(dim: usize, degree: usize) -> impl Strategy<Value = KForm> {
    let monos: Vec<Monomial> = (0u32..1 << dim)
        .filter(|m| m.count_ones() as usize == degree)
        .map(|m| Monomial::from_mask(m as u16))
        .collect();
    let count = monos.len();
    prop::collection::vec((0..count.max(1), small_q()), 0..5).prop_map(move |terms| {
        let mut f = KForm::zero(dim, degree);
        if count > 0 {
            for (i, c) in terms {
                f.add_term(monos[i], c);
            }
        }
        f
    })
}

pub fn vector(dim: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(small_q(), dim).prop_map(Vector::from_components)
}

/// `(dim, degree)` pairs with room for a second factor.
pub fn shape() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=7).prop_flat_map(|n| (Just(n), 0..=n))
}

/// Arbitrary structure constants, Jacobi or not: `d e_k` supported on
/// sparse random 2-monomials.
pub fn raw_algebra() -> impl Strategy<Value = LieAlgebra> {
    (3usize..=6).prop_flat_map(|n| {
        prop::collection::vec(
            prop::collection::vec((1..=n, 1..=n, -2i64..=2), 0..3),
            n,
        )
        .prop_map(move |rows| {
            let diffs = rows
                .into_iter()
                .map(|terms| {
                    let mut f = KForm::zero(n, 2);
                    for (i, j, c) in terms {
                        if i != j {
                            let (s, m) = Monomial::from_word(&[i, j], n).unwrap();
                            f.add_term(m, q(c * s as i64));
                        }
                    }
                    f
                })
                .collect();
            LieAlgebra::new(diffs).unwrap()
        })
    })
}

/// Nilpotent algebras built by successive central extensions: `d e_k` is a
/// random combination of `e_ij` with `i < j < k`, kept only if closed.
pub fn nilpotent_algebra(dim: usize) -> impl Strategy<Value = LieAlgebra> {
    prop::collection::vec(prop::collection::vec((0usize..64, -2i64..=2), 0..3), dim).prop_map(
        move |rows| {
            let mut diffs: Vec<KForm> = vec![KForm::zero(dim, 2); dim];
            for (k, terms) in rows.into_iter().enumerate() {
                let pairs: Vec<(usize, usize)> = (1..=k)
                    .flat_map(|i| (i + 1..=k).map(move |j| (i, j)))
                    .collect();
                if pairs.is_empty() {
                    continue;
                }
                let mut f = KForm::zero(dim, 2);
                for (p, c) in terms {
                    let (i, j) = pairs[p % pairs.len()];
                    f.add_term(Monomial::from_word(&[i, j], dim).unwrap().1, q(c));
                }
                let current = LieAlgebra::new(diffs.clone()).unwrap();
                if current.d(&f).unwrap().is_zero() {
                    diffs[k] = f;
                }
            }
            LieAlgebra::new(diffs).unwrap()
        },
    )
}

/// `R^{n-1} ⋊_A R` with `d e_k = -Σ_j A_kj e_j ∧ e_n`.
pub fn almost_abelian_algebra(dim: usize) -> impl Strategy<Value = LieAlgebra> {
    prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(0i64), 1 => -2i64..=2], dim - 1), dim - 1)
        .prop_map(move |a| {
            let mut diffs = vec![KForm::zero(dim, 2); dim];
            for (k, row) in a.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    let (s, m) = Monomial::from_word(&[j + 1, dim], dim).unwrap();
                    diffs[k].add_term(m, q(-c * s as i64));
                }
            }
            LieAlgebra::new(diffs).unwrap()
        })
}

/// Nilpotent algebra extended by a diagonal derivation: weights `w_k` with
/// `w_k = w_i + w_j` on every term `e_ij` of `d e_k`, realized by
/// `d e_k += -w_k e_k ∧ e_n`.
pub fn diagonal_extension(dim: usize) -> impl Strategy<Value = LieAlgebra> {
    (nilpotent_algebra(dim - 1), prop::collection::vec(-2i64..=2, dim - 1)).prop_map(move |(nil, seeds)| {
        let m = dim - 1;
        let mut w: Vec<Option<i64>> = vec![None; m];
        for k in 0..m {
            let de = nil.diff(k + 1);
            let mut forced = None;
            let mut consistent = true;
            for (mono, _) in de.terms() {
                let idx = mono.indices();
                let s = w[idx[0] - 1].unwrap_or(0) + w[idx[1] - 1].unwrap_or(0);
                match forced {
                    None => forced = Some(s),
                    Some(f) if f != s => consistent = false,
                    _ => {}
                }
            }
            w[k] = Some(if consistent { forced.unwrap_or(seeds[k]) } else { 0 });
            if !consistent {
                // inconsistent weights: fall back to a plain central extension
                return LieAlgebra::new(
                    nil.diffs()
                        .iter()
                        .map(|f| embed(f, dim))
                        .chain(std::iter::once(KForm::zero(dim, 2)))
                        .collect(),
                )
                .unwrap();
            }
        }
        let mut diffs: Vec<KForm> = nil.diffs().iter().map(|f| embed(f, dim)).collect();
        for (k, wk) in w.iter().enumerate() {
            let wk = wk.unwrap();
            if wk != 0 {
                let (s, mono) = Monomial::from_word(&[k + 1, dim], dim).unwrap();
                diffs[k].add_term(mono, q(-wk * s as i64));
            }
        }
        diffs.push(KForm::zero(dim, 2));
        LieAlgebra::new(diffs).unwrap()
    })
}

fn embed(f: &KForm, dim: usize) -> KForm {
    let mut out = KForm::zero(dim, f.degree());
    for (m, c) in f.terms() {
        out.add_term(*m, c.clone());
    }
    out
}

/// Random solvable algebras of dimension 5 to 7.
pub fn solvable_algebra() -> impl Strategy<Value = LieAlgebra> {
    (5usize..=7).prop_flat_map(|n| {
        prop_oneof![
            nilpotent_algebra(n),
            almost_abelian_algebra(n),
            diagonal_extension(n),
        ]
    })
}

pub fn named_algebras() -> Vec<LieAlgebra> {
    vec![
        alg("(0,0,12)"),
        alg("(0,0,0)"),
        alg("(51,52,53,2.54,0)"),
        alg("(51,52,53,13+2.54,0)"),
        alg("(51,52,53,0,0)"),
        alg("(0,0,0,0,0,0)"),
        alg("(12,0,0,0,0,0)"),
        g_lm(1, 2),
        g_lm(1, -1),
        g_lm(3, 0),
        alg("(3.17+23,27,2.37,3.74,75,2.76,0)"),
    ]
}

/// Basis vectors spanning an ideal, and sums of two when those do too.
pub fn ideal_generators(g: &LieAlgebra) -> Vec<Vector> {
    let n = g.dim();
    let mut out = Vec::new();
    for i in 1..=n {
        let v = Vector::basis(n, i).unwrap();
        if check_ideal(g, &v).is_ok() {
            out.push(v);
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            let v = Vector::basis(n, i).unwrap().add(&Vector::basis(n, j).unwrap()).unwrap();
            if check_ideal(g, &v).is_ok() {
                out.push(v);
            }
        }
    }
    out
}

/// Random shear data on `g` with `X` generating an ideal. Returns `None`
/// when `g` has no such generator among the candidates tried.
pub fn shear_data_for(g: &LieAlgebra) -> impl Strategy<Value = Option<ShearData>> + use<> {
    let n = g.dim();
    let gens = ideal_generators(g);
    (
        0usize..64,
        prop::collection::vec(small_q(), n),
        prop::collection::vec((1..=n, 1..=n, -2i64..=2), 0..4),
        prop_oneof![3 => Just(q(-1)), 1 => Just(q(1)), 1 => Just(q(2)), 1 => Just(qf(-1, 2))],
        any::<bool>(),
    )
        .prop_map(move |(pick, alpha_seed, f_terms, a, confine)| {
            if gens.is_empty() {
                return None;
            }
            let x = gens[pick % gens.len()].clone();
            let lead = (1..=n).find(|&i| !x.get(i).is_zero()).unwrap();
            let mut alpha_c = alpha_seed;
            alpha_c[lead - 1] = Q::from_integer(0.into());
            let raw = KForm::covector(&alpha_c);
            let lead_form = KForm::basis(n, &[lead]).unwrap();
            let ax = raw.pair(&x).unwrap();
            let alpha = &raw + &lead_form.scale(&((q(1) - ax) / x.get(lead)));
            let mut f0 = KForm::zero(n, 2);
            for (i, j, c) in f_terms {
                if i == j || (confine && (!x.get(i).is_zero() || !x.get(j).is_zero())) {
                    continue;
                }
                let (s, m) = Monomial::from_word(&[i, j], n).unwrap();
                f0.add_term(m, q(c * s as i64));
            }
            Some(ShearData::new(x, alpha, f0, a).unwrap())
        })
}

/// At least `count` `(algebra, data)` pairs mixing the named algebras
/// with random solvable ones.
pub fn shear_corpus(count: usize) -> Vec<(LieAlgebra, ShearData)> {
    let mut out = Vec::new();
    let named = named_algebras();
    for g in &named {
        for d in sample(shear_data_for(g), 12).into_iter().flatten() {
            out.push((g.clone(), d));
        }
    }
    let mut r = runner(1);
    while out.len() < count {
        let g = solvable_algebra().new_tree(&mut r).unwrap().current();
        assert!(g.is_lie(), "generator produced a non-Lie algebra: {g}");
        let data = shear_data_for(&g).new_tree(&mut r).unwrap().current();
        if let Some(d) = data {
            out.push((g, d));
        }
    }
    out
}
