//! Property tests for the structural invariants of every module.

use cqg_twist::catalog::{self, cocycle_pairs, named_corep, named_pair, ALGEBRAS, COREPS};
use cqg_twist::cocycle::{cocycle_functionals, convolve2, induce, verify_cocycle, DualCocycle};
use cqg_twist::corep::{ad_pattern_residual, ad_v, decompose_corep, operator_spectral_basis, pi_u, spectral_maps};
use cqg_twist::deform::{r_sigma, Deformation, RTwistedVolume};
use cqg_twist::hopf::FiniteHopfStarAlgebra;
use cqg_twist::linalg;
use cqg_twist::peter_weyl::{decompose, haar_invariance_residual, haar_state, PeterWeylData};
use cqg_twist::random;
use cqg_twist::scalar::{c, max_diff, ScalarContext, C64};
use cqg_twist::suite::block_form_family;
use cqg_twist::twist::{hopf_sub_report, twist_algebra};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ctx() -> ScalarContext {
    ScalarContext::default()
}

fn algebra(i: usize) -> FiniteHopfStarAlgebra {
    catalog::named_algebra(ALGEBRAS[i % ALGEBRAS.len()].0).unwrap()
}

fn pw_of(host: &FiniteHopfStarAlgebra) -> PeterWeylData {
    decompose(host, &haar_state(host, &ctx()).unwrap(), &ctx()).unwrap()
}

#[test]
fn catalog_algebras_satisfy_axioms_to_rounding() {
    for (name, _) in ALGEBRAS {
        let rep = catalog::named_algebra(name).unwrap().verify_hopf_axioms(&ctx());
        assert!(rep.max_residual() < 1e-12, "{name}\n{rep}");
    }
}

#[test]
fn pairing_with_matrix_units_is_nondegenerate() {
    for (name, _) in ALGEBRAS {
        let a = catalog::named_algebra(name).unwrap();
        let pw = pw_of(&a);
        let units: Vec<_> = pw.blocks.iter().flat_map(|b| b.units.iter()).collect();
        let gram = DMatrix::from_fn(units.len(), a.dim(), |u, i| a.pair(&a.basis(i), units[u]));
        let smin = gram.singular_values().iter().cloned().fold(f64::INFINITY, f64::min);
        assert!(smin > 1e-8, "{name}");
    }
}

#[test]
fn haar_and_peter_weyl_invariants() {
    for (name, _) in ALGEBRAS {
        let a = catalog::named_algebra(name).unwrap();
        let h = haar_state(&a, &ctx()).unwrap();
        assert!(haar_invariance_residual(&a, &h) <= 1e-9, "{name}");
        let pw = decompose(&a, &h, &ctx()).unwrap();
        assert_eq!(pw.block_dims().iter().map(|d| d * d).sum::<usize>(), a.dim(), "{name}");
        for (p, bp) in pw.blocks.iter().enumerate() {
            let (ev, _) = linalg::hermitian_eigen(&bp.f);
            assert!(ev[0] > 0.0);
            let finv = linalg::inverse(&bp.f).unwrap();
            assert!((bp.f.trace() - finv.trace()).norm() <= 1e-9);
            for bq in pw.blocks.iter().skip(p + 1) {
                for x in &bp.coeffs {
                    for y in &bq.coeffs {
                        assert!(h.eval(&a.product(x, &a.star(y))).norm() <= 1e-9, "{name}");
                    }
                }
            }
        }
        let q = pw.coefficient_matrix();
        assert!(linalg::condition_number(&q) < 1e8, "{name}");
    }
}

#[test]
fn isotypic_projections_sum_to_identity_and_follow_the_ad_pattern() {
    for (name, _) in COREPS {
        let (_, host, v) = named_corep(name).unwrap();
        let pw = pw_of(&host);
        let maps = spectral_maps(&host, &v, &pw);
        let n = v.hdim();
        for i in 0..n {
            for j in 0..n {
                let t = linalg::matrix_unit(n, i, j);
                let sum = (0..pw.blocks.len()).fold(DMatrix::zeros(n, n), |acc, b| acc + maps.apply_p(b, &t));
                assert!(max_diff(&sum, &t) <= 1e-9, "{name}");
            }
        }
        let basis = operator_spectral_basis(&maps, &pw);
        assert_eq!(basis.len(), n * n);
        assert!(ad_pattern_residual(&host, &v, &pw, &basis) <= 1e-9, "{name}");
    }
}

#[test]
fn cocycle_inverse_and_unitarity_on_catalog() {
    for (alg, name) in cocycle_pairs() {
        let (host, s) = named_pair(alg, name).unwrap();
        let e = host.counit() * host.counit().transpose();
        assert!(max_diff(&convolve2(&host, s.sigma(), s.sigma_inv()), &e) <= 1e-9);
        assert!(max_diff(&convolve2(&host, s.sigma_inv(), s.sigma()), &e) <= 1e-9);
        let rep = verify_cocycle(&host, &s, &ctx()).unwrap();
        assert!(rep.residual("unitarity") <= 1e-9, "{name}");
    }
}

#[test]
fn induction_is_functorial() {
    let ctx = ctx();
    let (k, fourier) = catalog::fourier_morphism(&[2, 2]);
    let top = cqg_twist::cocycle::from_bicharacter(&k, &catalog::sign_bicharacter(&k), &ctx).unwrap();
    for n in [4, 6] {
        let g = catalog::dihedral(n);
        let (kk, emb) = catalog::klein_in_dihedral(n);
        let res = catalog::restriction_morphism(&g, &kk, &emb).unwrap();
        let (cg, ck, gk) = (catalog::function_algebra(&g), catalog::function_algebra(&k), catalog::group_algebra(&k));
        let mid = induce(&top, &fourier, &ck, &gk, &ctx).unwrap();
        let two = induce(&mid, &res, &cg, &ck, &ctx).unwrap();
        let one = induce(&top, &res.then(&fourier), &cg, &gk, &ctx).unwrap();
        assert!(max_diff(two.sigma(), one.sigma()) <= 1e-12);
    }
}

#[test]
fn quotients_intertwine_twists() {
    let ctx = ctx();
    let ck = catalog::klein_cocycle_on_function_algebra(&ctx).unwrap();
    for n in [4, 6] {
        let g = catalog::dihedral(n);
        let (k, emb) = catalog::klein_in_dihedral(n);
        let res = catalog::restriction_morphism(&g, &k, &emb).unwrap();
        let rep = hopf_sub_report(&catalog::function_algebra(&g), &catalog::function_algebra(&k), &res, &ck, &ctx).unwrap();
        assert!(rep.passed(), "{rep}");
    }
}

#[test]
fn twisted_axioms_on_all_pairs() {
    for (alg, name) in cocycle_pairs() {
        let (host, s) = named_pair(alg, name).unwrap();
        let tw = twist_algebra(&host, &s, &ctx()).unwrap();
        assert!(tw.transcript.passed(), "{name}\n{}", tw.transcript);
        let o = host.tensors();
        let t = tw.twisted.tensors();
        assert!(o.comul == t.comul && o.unit == t.unit && o.counit == t.counit);
    }
}

#[test]
fn block_form_equivalence_on_small_coreps() {
    for (i, (name, _)) in COREPS.iter().enumerate() {
        let (_, host, v) = named_corep(name).unwrap();
        if v.hdim() > 8 {
            continue;
        }
        let pw = pw_of(&host);
        let sd = decompose_corep(&host, &v, &pw, &ctx()).unwrap();
        let f = block_form_family(&host, &v, &pw, &sd, 50, 100 + i as u64, &ctx());
        assert_eq!(f.agreements, 50, "{name}");
        assert!(f.extraction_residual <= 1e-9, "{name}");
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn convolution_is_associative(alg in 0usize..ALGEBRAS.len(), seed in any::<u64>()) {
        let a = algebra(alg);
        let mut r = rng(seed);
        let (f, g, h) = (random::functional(&mut r, a.dim()), random::functional(&mut r, a.dim()), random::functional(&mut r, a.dim()));
        let l = a.convolve(&a.convolve(&f, &g).unwrap(), &h).unwrap();
        let rr = a.convolve(&f, &a.convolve(&g, &h).unwrap()).unwrap();
        prop_assert!(l.max_diff(&rr) <= 1e-9);
    }

    #[test]
    fn dual_star_reverses_convolution(alg in 0usize..ALGEBRAS.len(), seed in any::<u64>()) {
        let a = algebra(alg);
        let mut r = rng(seed);
        let (f, g) = (random::functional(&mut r, a.dim()), random::functional(&mut r, a.dim()));
        let l = a.dual_star(&a.convolve(&f, &g).unwrap());
        let rr = a.convolve(&a.dual_star(&g), &a.dual_star(&f)).unwrap();
        prop_assert!(l.max_diff(&rr) <= 1e-9);
    }

    #[test]
    fn ad_commutes_with_adjoint(cor in 0usize..COREPS.len(), seed in any::<u64>()) {
        let (_, host, v) = named_corep(COREPS[cor].0).unwrap();
        let t = random::matrix(&mut rng(seed), v.hdim(), v.hdim());
        let l = ad_v(&host, &v, &t.adjoint());
        let rr = ad_v(&host, &v, &t).adjoint(&host);
        prop_assert!(l.max_diff(&rr) <= 1e-9);
    }

    #[test]
    fn pi_u_is_multiplicative_on_random_functionals(cor in 0usize..COREPS.len(), seed in any::<u64>()) {
        let (_, host, v) = named_corep(COREPS[cor].0).unwrap();
        let mut r = rng(seed);
        let (f, g) = (random::functional(&mut r, host.dim()), random::functional(&mut r, host.dim()));
        let l = pi_u(&v, &host.convolve(&f, &g).unwrap());
        prop_assert!(max_diff(&l, &(pi_u(&v, &f) * pi_u(&v, &g))) <= 1e-9);
    }

    #[test]
    fn double_twist_recovers_operators(pair in 0usize..3, seed in any::<u64>()) {
        let (alg, coc, corep) = [
            ("cg-z2z2", "cg-z2z2/bicharacter", "cg-z2z2/regular"),
            ("c-d6", "c-d6/klein-gauged", "c-d6/regular"),
            ("c-d4", "c-d4/klein", "c-d4/regular"),
        ][pair];
        let ctx = ctx();
        let (host, s) = named_pair(alg, coc).unwrap();
        let (_, _, v) = named_corep(corep).unwrap();
        let tw = twist_algebra(&host, &s, &ctx).unwrap();
        let back = DualCocycle::new(&tw.twisted, s.sigma_inv().clone(), &ctx).unwrap();
        let there = Deformation::new(&host, &v, &s, &ctx).unwrap();
        let undo = Deformation::new(&tw.twisted, &v, &back, &ctx).unwrap();
        let t = random::matrix(&mut rng(seed), v.hdim(), v.hdim());
        prop_assert!(max_diff(&undo.rho(&there.rho(&t)), &t) <= 1e-9);
    }

    #[test]
    fn double_twist_recovers_volume(pair in 0usize..2, weights in proptest::collection::vec(0.5f64..2.0, 12)) {
        let (alg, coc, corep) = [("cg-z2z2", "cg-z2z2/bicharacter", "cg-z2z2/regular"), ("c-d6", "c-d6/klein-gauged", "c-d6/regular")][pair];
        let ctx = ctx();
        let (host, s) = named_pair(alg, coc).unwrap();
        let (_, _, v) = named_corep(corep).unwrap();
        let pw = pw_of(&host);
        let r = pw.blocks.iter().zip(&weights).fold(DMatrix::<C64>::zeros(v.hdim(), v.hdim()), |acc, (b, w)| {
            acc + pi_u(&v, &b.rho_trace()) * c(*w, 0.0)
        });
        let rv = RTwistedVolume::new(r);
        let tw = twist_algebra(&host, &s, &ctx).unwrap();
        let rs = r_sigma(&rv, &v, &cocycle_functionals(&host, &s, &ctx).unwrap().v);
        let back = DualCocycle::new(&tw.twisted, s.sigma_inv().clone(), &ctx).unwrap();
        let rr = r_sigma(&rs, &v, &cocycle_functionals(&tw.twisted, &back, &ctx).unwrap().v);
        prop_assert!(max_diff(&rr.r, &rv.r) <= 1e-9);
    }
}

#[test]
fn catalog_is_deterministic() {
    for (kind, name, _) in catalog::entries() {
        let again = catalog::entries().into_iter().find(|(_, n, _)| *n == name).unwrap();
        assert_eq!(again.0, kind);
    }
    assert!(catalog::named_algebra("c-d6").unwrap() == catalog::named_algebra("c-d6").unwrap());
    let ctx = ctx();
    assert_eq!(catalog::named_cocycle("c-d6/klein-gauged", &ctx).unwrap().2, catalog::named_cocycle("c-d6/klein-gauged", &ctx).unwrap().2);
}
