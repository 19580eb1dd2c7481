//! Acceptance suite: one line per criterion, non-zero exit on any failure.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;

use num_traits::Zero;
use phasediag_core::category::{find_isomorphism, Functor};
use phasediag_core::fixtures;
use phasediag_core::io::{export_dot, export_olog, import_olog};
use phasediag_core::large_dev::{bernoulli_relative_entropy, DiscreteObservable};
use phasediag_core::matrix::{int, rat, Rational};
use phasediag_core::orbit_category::OrbitCategory;
use phasediag_core::perm_group::all_subgroups;
use phasediag_core::phase_diagram::{quotient_functor, transformation_groupoid, PhaseCategory};
use phasediag_core::singularity::{
    milnor_number, spectrum_grading, weight_milnor, AdjacencyCorpus, SingularityError,
};
use phasediag_core::{PolyGerm, QuasihomogeneousGerm};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn orbit_hom_oracle() -> Outcome {
    let mut checked = 0;
    for (name, g) in fixtures::groups() {
        let oc = OrbitCategory::build(&g).map_err(|e| format!("{name}: {e}"))?;
        let classes = &oc.lattice.classes;
        for (i, ci) in classes.iter().enumerate() {
            for (j, cj) in classes.iter().enumerate() {
                let expected =
                    common::equivariant_map_count(&g, ci.representative.members(), cj.representative.members());
                let got = oc.category.hom(i, j).len();
                ensure(got == expected, || format!("{name}: |hom({i},{j})| = {got}, brute force {expected}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} hom-sets over 7 groups"))
}

fn point_is_orbit_category() -> Outcome {
    for (name, g) in fixtures::groups() {
        let oc = OrbitCategory::build(&g).map_err(|e| format!("{name}: {e}"))?;
        let x = phasediag_core::GComplex::point(&g);
        let phase = PhaseCategory::build(&oc, &x).map_err(|e| format!("{name}: {e}"))?;
        let w = find_isomorphism(&phase.category, &oc.category).map_err(|e| format!("{name}: {e}"))?;
        let w = w.ok_or_else(|| format!("{name}: no isomorphism found"))?;
        ensure(w.is_isomorphism(&phase.category, &oc.category), || format!("{name}: witness is not an isomorphism"))?;
    }
    Ok("witness found for all 7 groups".into())
}

fn grothendieck_cardinality() -> Outcome {
    let mut n = 0;
    for (name, g, x) in fixtures::g_spaces() {
        let oc = OrbitCategory::build(&g).map_err(|e| format!("{name}: {e}"))?;
        let phase = PhaseCategory::build(&oc, &x).map_err(|e| format!("{name}: {e}"))?;
        let mut expected = 0;
        for (k, class) in oc.lattice.classes.iter().enumerate() {
            let h = class.representative.members();
            let comps = common::components_on(&x, &common::fixed_vertices(&x, h));
            let ours: BTreeSet<BTreeSet<usize>> =
                phase.presheaf.fixes[k].components.iter().map(|c| c.iter().copied().collect()).collect();
            ensure(ours == comps, || format!("{name}: components of Fix({}) differ", class.label()))?;
            expected += comps.len();
        }
        ensure(phase.objects.len() == expected, || {
            format!("{name}: {} objects, expected {expected}", phase.objects.len())
        })?;
        for (o, obj) in phase.objects.iter().enumerate() {
            let class = &oc.lattice.classes[obj.class_index];
            let comp: BTreeSet<usize> =
                phase.presheaf.fixes[obj.class_index].components[obj.component].iter().copied().collect();
            let oracle = common::weyl_stabilizer_order(&g, &x, class.representative.members(), &comp);
            let got = phase.category.aut_order(o);
            ensure(got == oracle, || format!("{name}: |Aut| of object {o} is {got}, oracle {oracle}"))?;
        }
        if name == "square-reflection" {
            ensure(phase.aut_orders == vec![2, 1, 1], || format!("square aut orders {:?}", phase.aut_orders))?;
        }
        n += 1;
    }
    Ok(format!("{n} fixtures; square with reflection has 3 objects, |Aut| = (2, 1, 1)"))
}

fn functoriality() -> Outcome {
    let mut n = 0;
    for (name, g, x) in fixtures::g_spaces() {
        let oc = OrbitCategory::build(&g).map_err(|e| format!("{name}: {e}"))?;
        let phase = PhaseCategory::build(&oc, &x).map_err(|e| format!("{name}: {e}"))?;
        let groupoid = transformation_groupoid(&g, &x).map_err(|e| format!("{name}: {e}"))?;
        quotient_functor(&oc, &x, &phase)
            .check(&groupoid, &phase.category)
            .map_err(|e| format!("{name}: quotient functor: {e}"))?;
        phase.forgetful().check(&phase.category, &oc.category).map_err(|e| format!("{name}: forgetful: {e}"))?;
        n += 1;
    }
    Ok(format!("quotient and forgetful functors on {n} fixtures"))
}

fn character_fix_dim(rep: &phasediag_core::LinearAction, members: &[usize]) -> Rational {
    let total = members.iter().fold(Rational::zero(), |acc, &h| acc + rep.matrix(h).trace());
    total / int(members.len() as i64)
}

fn linear_rep_exactness() -> Outcome {
    let mut projectors = 0;
    let mut arrows = 0;
    for (name, g, rep) in fixtures::representations() {
        for h in all_subgroups(&g) {
            let p = rep.averaging_projector(&h);
            ensure(&p * &p == p, || format!("{name}: P² ≠ P for {:?}", h.members()))?;
            for &x in h.members() {
                ensure(rep.matrix(x) * &p == p, || format!("{name}: ρ(h)P ≠ P"))?;
            }
            let dim = rep.fix_subspace(&h).len();
            ensure(character_fix_dim(&rep, h.members()) == int(dim as i64), || {
                format!("{name}: fixed dimension disagrees with the character average")
            })?;
            projectors += 1;
        }
        let lattice = phasediag_core::SubgroupLattice::new(&g);
        let quiver = rep.degeneracy_quiver(&g, &lattice).map_err(|e| format!("{name}: {e}"))?;
        ensure(quiver.dimensions_add_up(), || format!("{name}: quiver dimensions do not add up"))?;
        for a in &quiver.arrows {
            let src = &lattice.classes[a.source].representative;
            let tgt = &lattice.classes[a.target].representative;
            let d0 = character_fix_dim(&rep, src.members());
            let d1 = character_fix_dim(&rep, tgt.members());
            ensure(d0 - d1 == int(a.normal.dim() as i64), || format!("{name}: normal dimension on arrow"))?;
            arrows += 1;
        }
    }
    Ok(format!("{projectors} projectors, {arrows} quiver arrows"))
}

fn singularity_numbers() -> Outcome {
    let corpus = AdjacencyCorpus::bundled();
    let mut expected: Vec<(String, usize)> = (1..=8).map(|k| (format!("A{k}"), k)).collect();
    expected.extend((4..=8).map(|k| (format!("D{k}"), k)));
    expected.extend([("E6".to_string(), 6), ("E7".to_string(), 7), ("E8".to_string(), 8)]);
    for (name, k) in &expected {
        let q = corpus.germ(name).map_err(|e| e.to_string())?;
        let mu = milnor_number(q.germ()).map_err(|e| format!("{name}: {e}"))?;
        let formula = weight_milnor(q.weights()).map_err(|e| e.to_string())?;
        ensure(mu == *k && formula == int(*k as i64), || format!("{name}: mu {mu}, formula {formula}, expected {k}"))?;
        let s = q.stabilize().map_err(|e| format!("{name}: {e}"))?;
        let smu = milnor_number(s.germ()).map_err(|e| format!("{name} stabilized: {e}"))?;
        ensure(smu == *k, || format!("{name}: stabilized mu {smu}"))?;
        let d = q.euler_operator();
        ensure(d.apply(q.germ().poly()) == *q.germ().poly(), || format!("{name}: D(f) ≠ f"))?;
    }
    ensure(corpus.entries().len() == expected.len(), || "corpus size".into())?;
    let x2y = PolyGerm::parse("x^2*y").map_err(|e| e.to_string())?;
    ensure(matches!(milnor_number(&x2y), Err(SingularityError::NonIsolated(_))), || "x^2*y not flagged".into())?;
    for a in corpus.arrows() {
        let f = milnor_number(corpus.germ(&a.from).unwrap().germ()).map_err(|e| e.to_string())?;
        let g = milnor_number(corpus.germ(&a.to).unwrap().germ()).map_err(|e| e.to_string())?;
        ensure(f == g + 1, || format!("arrow {} -> {} drops mu by {}", a.from, a.to, f as i64 - g as i64))?;
    }
    let e6 = QuasihomogeneousGerm::new(
        PolyGerm::parse("x^3 + y^4").unwrap(),
        vec![rat(1, 3), rat(1, 4)],
    )
    .map_err(|e| e.to_string())?;
    let spectrum = spectrum_grading(&e6).map_err(|e| e.to_string())?;
    let want = vec![int(0), rat(1, 4), rat(1, 3), rat(1, 2), rat(7, 12), rat(5, 6)];
    ensure(spectrum == want, || format!("E6 spectrum {spectrum:?}"))?;
    Ok(format!("{} entries, {} arrows, E6 spectrum exact", expected.len(), corpus.arrows().len()))
}

fn large_deviations() -> Outcome {
    let mut worst: f64 = 0.0;
    for (p, obs) in fixtures::bernoulli_profiles() {
        for i in 1..=9 {
            let x = i as f64 / 10.0;
            let got = obs.legendre(x).map_err(|e| e.to_string())?;
            let want = bernoulli_relative_entropy(x, p);
            worst = worst.max((got - want).abs());
            ensure((got - want).abs() <= 1e-9, || format!("p={p}, x={x}: {got} vs {want}"))?;
        }
        ensure(obs.cgf(0.0).abs() <= 1e-14, || format!("p={p}: Γ(0) ≠ 0"))?;
        let at_mean = obs.legendre(obs.mean()).map_err(|e| e.to_string())?;
        ensure(at_mean <= 1e-12, || format!("p={p}: Γ*(mean) = {at_mean}"))?;
        let h = 1e-3;
        for k in -10_000..10_000 {
            let t = k as f64 * h;
            let second = obs.cgf(t + h) - 2.0 * obs.cgf(t) + obs.cgf(t - h);
            ensure(second >= -1e-9, || format!("p={p}: convexity fails at θ={t}"))?;
        }
        for theta in [-2.0f64, -1.0, 0.0, 1.0, 2.0] {
            let closed = (1.0 - p * (1.0 - theta.exp())).ln();
            ensure((obs.cgf(theta) - closed).abs() <= 1e-12, || format!("p={p}: Γ({theta}) off closed form"))?;
        }
    }
    let two = DiscreteObservable::new(vec![(0.0, 0.5), (2.0, 0.5)]).map_err(|e| e.to_string())?;
    ensure((two.cgf(1.0) - ((1.0 + 2f64.exp()) / 2.0).ln()).abs() <= 1e-12, || "two-point cgf".into())?;
    Ok(format!("max deviation from closed form {worst:.1e}"))
}

fn determinism_and_round_trip() -> Outcome {
    let mut cats: Vec<(String, Box<dyn Fn() -> phasediag_core::FiniteCategory>)> = Vec::new();
    for (name, _) in fixtures::groups() {
        let name = name.to_string();
        let n2 = name.clone();
        cats.push((format!("orbit/{name}"), Box::new(move || {
            let g = fixtures::groups().into_iter().find(|(n, _)| *n == n2).unwrap().1;
            OrbitCategory::build(&g).unwrap().category
        })));
    }
    for (name, _, _) in fixtures::g_spaces() {
        let n2 = name.clone();
        cats.push((format!("phase/{name}"), Box::new(move || {
            let (_, g, x) = fixtures::g_spaces().into_iter().find(|(n, _, _)| *n == n2).unwrap();
            let oc = OrbitCategory::build(&g).unwrap();
            PhaseCategory::build(&oc, &x).unwrap().category
        })));
    }
    for (name, _) in fixtures::strata() {
        cats.push((format!("strata/{name}"), Box::new(move || {
            let s = fixtures::strata().into_iter().find(|(n, _)| *n == name).unwrap().1;
            s.strata_category().unwrap()
        })));
    }
    for (name, build) in &cats {
        let (a, b) = (build(), build());
        ensure(export_dot(&a) == export_dot(&b), || format!("{name}: DOT differs between runs"))?;
        let exported = export_olog(&a);
        let text = serde_json::to_string(&exported).map_err(|e| e.to_string())?;
        let parsed = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        let imported = import_olog(&parsed).map_err(|e| format!("{name}: {e}"))?;
        let id = Functor::identity(&a);
        ensure(id.is_isomorphism(&a, &imported.category), || format!("{name}: identity is not an isomorphism"))?;
        ensure(export_olog(&imported.category) == exported, || format!("{name}: re-export differs"))?;
        let ids_ok = imported.object_ids.iter().enumerate().all(|(i, s)| *s == format!("o{i}"));
        ensure(ids_ok, || format!("{name}: object ids not preserved"))?;
    }
    Ok(format!("{} categories", cats.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("orbit-category hom-sets equal brute-force equivariant map counts", orbit_hom_oracle),
        ("phase diagram of a point is isomorphic to the orbit category", point_is_orbit_category),
        ("object count equals the sum of pi0 Fix(H); Aut orders match stabilizers", grothendieck_cardinality),
        ("quotient and forgetful functors preserve identities and composition", functoriality),
        ("projectors are exact idempotents fixed by H; quiver dimensions add up", linear_rep_exactness),
        ("Milnor numbers, stabilization, adjacency drops, Euler identity, E6 spectrum", singularity_numbers),
        ("Bernoulli rate function, cgf identities and convexity", large_deviations),
        ("DOT output is deterministic; olog export/import round-trips", determinism_and_round_trip),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {title} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {title}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
