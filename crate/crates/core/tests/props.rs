use proptest::prelude::*;

use phasediag_core::gspace::GComplex;
use phasediag_core::matrix::{int, Matrix};
use phasediag_core::singularity::parse::parse_polynomial;
use phasediag_core::singularity::Poly;
use phasediag_core::{DiscreteObservable, FiniteGroup, Permutation};

fn permutation(degree: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..degree).collect::<Vec<_>>()).prop_shuffle()
}

fn generators() -> impl Strategy<Value = (usize, Vec<Vec<usize>>)> {
    (2usize..=5).prop_flat_map(|d| (Just(d), prop::collection::vec(permutation(d), 1..=2)))
}

fn distribution() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-5i32..=5, 1u32..=10), 2..=5).prop_filter_map("needs two values", |raw| {
        let total: u32 = raw.iter().map(|r| r.1).sum();
        let mut out: Vec<(f64, f64)> = raw.iter().map(|&(v, w)| (v as f64, w as f64 / total as f64)).collect();
        let head: f64 = out[..out.len() - 1].iter().map(|o| o.1).sum();
        out.last_mut().unwrap().1 = 1.0 - head;
        let first = out[0].0;
        out.iter().any(|o| o.0 != first).then_some(out)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_groups_satisfy_axioms((degree, gens) in generators()) {
        let g = FiniteGroup::from_images(degree, &gens).unwrap();
        prop_assert!(g.element(0).is_identity());
        for a in 0..g.order() {
            prop_assert_eq!(g.mul(a, g.inv(a)), 0);
            for b in 0..g.order() {
                let ab = g.mul(a, b);
                prop_assert_eq!(g.element(ab), &(g.element(a) * g.element(b)));
            }
        }
        let mut sorted = g.elements().to_vec();
        sorted.sort();
        prop_assert_eq!(sorted.as_slice(), g.elements());
    }

    #[test]
    fn closure_is_idempotent((degree, gens) in generators()) {
        let g = FiniteGroup::from_images(degree, &gens).unwrap();
        let again = FiniteGroup::generate(degree, g.elements().to_vec()).unwrap();
        prop_assert_eq!(again.elements(), g.elements());
        let all: Vec<usize> = (0..g.order()).collect();
        prop_assert_eq!(g.generated_by(&all).order(), g.order());
        prop_assert!(g.is_subgroup(&all));
    }

    #[test]
    fn orbit_stabilizer((degree, gens) in generators()) {
        let g = FiniteGroup::from_images(degree, &gens).unwrap();
        let x = GComplex::new(&g, degree, vec![], gens.clone()).unwrap();
        for v in 0..degree {
            let orbit = x.orbit_of(v).unwrap();
            let stab = x.isotropy(v).unwrap();
            prop_assert_eq!(orbit.len() * stab.order(), g.order());
        }
    }

    #[test]
    fn cycle_notation_round_trips(images in (1usize..=7).prop_flat_map(permutation)) {
        let p = Permutation::new(images.clone()).unwrap();
        let q = Permutation::from_cycles(images.len(), &p.cycle_notation()).unwrap();
        prop_assert_eq!(p, q);
    }

    #[test]
    fn polynomial_display_round_trips(
        terms in prop::collection::vec(((0u32..4, 0u32..4, 0u32..3), -6i64..=6, 1i64..=3), 0..6)
    ) {
        let f = Poly::from_terms(terms.into_iter().map(|((a, b, c), n, d)| ([a, b, c], int(n) / int(d))));
        let text = f.to_string();
        prop_assert_eq!(parse_polynomial(&text).unwrap(), f, "{}", text);
    }

    #[test]
    fn conjugate_is_nonnegative_and_dominates(outcomes in distribution(), theta in -3.0f64..3.0, t in 0.02f64..0.98) {
        let obs = DiscreteObservable::new(outcomes).unwrap();
        let x = obs.min_value() + t * (obs.max_value() - obs.min_value());
        let conj = obs.legendre(x).unwrap();
        prop_assert!(conj >= 0.0);
        prop_assert!(theta * x - obs.cgf(theta) <= conj + 1e-9 * (1.0 + conj));
        prop_assert!(obs.legendre(obs.mean()).unwrap() < 1e-10);
    }

    #[test]
    fn rref_is_idempotent(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..=4)) {
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let m = Matrix::from_i64(&refs);
        let (r, pivots) = m.rref();
        let (rr, pivots2) = r.rref();
        prop_assert!(r == rr);
        prop_assert_eq!(&pivots, &pivots2);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert!(pivots.len() <= rows.len().min(4));
    }
}
