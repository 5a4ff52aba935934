mod common;

use auxetic::analysis::{deformation_space, find_strict_auxetic, necessary_screen, SearchConfig};
use auxetic::generator::{
    assemble_framework, builtin_pseudotriangulation, builtin_tetrahedral, builtin_tetrahedral_diagram, generate,
    generate_batch, Generated, GeneratorConfig,
};
use auxetic::model::{PeriodicFramework, QuotientMultigraph};
use auxetic::ratmath::{dot, int, lattice_span, rat, sub, RatMatrix, RatVec, Rational};
use auxetic::{Error, ExecMode};
use num_traits::Signed;
use proptest::prelude::*;

fn multigraphs() -> Vec<(&'static str, QuotientMultigraph)> {
    vec![
        ("doubled triangle", QuotientMultigraph::cycle(3, 2).unwrap()),
        ("quadruple edge", QuotientMultigraph::from_triples(2, &[(0, 1, 4)]).unwrap()),
        ("doubled K4", QuotientMultigraph::complete(4, 2).unwrap()),
        ("path with 2 + 3 edges", QuotientMultigraph::from_triples(3, &[(0, 1, 2), (1, 2, 3)]).unwrap()),
    ]
}

fn cartesian(fw: &PeriodicFramework, v: &[Rational]) -> RatVec {
    fw.lattice().expect("generated frameworks keep their basis").mul_vec(v)
}

/// Exact checks that do not go through the construction code.
fn check_generated(out: &Generated, d: usize) {
    let fw = &out.framework;
    assert!(fw.validate().is_ok());
    let lattice = fw.lattice().unwrap();
    assert_eq!(lattice.rank(), d);
    // Every edge endpoint sits on the sphere with diameter p_from p_to
    // (Thales): ⟨E, E − (p_to − p_from)⟩ = 0 for the Cartesian edge vector E.
    let p = &out.diagram.placement;
    for k in 0..fw.m() {
        let e = fw.edge(k);
        let big_e = cartesian(fw, &fw.edge_vector(k));
        assert_eq!(dot(&big_e, &sub(&big_e, &sub(&p[e.to], &p[e.from]))), int(0), "edge {k}");
    }
    let cert = &out.certificate.deformation;
    assert_eq!(&cert.omegadot, fw.gram());
    assert!(cert.residuals(fw).iter().all(|r| *r == int(0)));
    assert!(cert.is_strict());
    for i in 0..fw.n() {
        let expect: RatVec = sub(&p[i], &p[0]).iter().map(|x| x * rat(-1, 2)).collect();
        assert_eq!(cartesian(fw, &cert.qdot[i]), expect);
    }
}

#[test]
fn fifty_seeded_runs_are_sound() {
    let mut runs = 0;
    for (name, g) in multigraphs() {
        for d in [2, 3] {
            let seeds: Vec<u64> = (0..7).collect();
            for (seed, out) in seeds.iter().zip(generate_batch(&g, d, &seeds, &GeneratorConfig::default(), ExecMode::default())) {
                let out = out.unwrap_or_else(|e| panic!("{name}, d={d}, seed {seed}: {e}"));
                check_generated(&out, d);
                runs += 1;
            }
        }
    }
    assert!(runs >= 50);
}

#[test]
fn generated_frameworks_pass_screen_and_search() {
    for (name, g) in multigraphs() {
        for d in [2, 3] {
            let out = generate(&g, d, &GeneratorConfig::with_seed(11)).unwrap();
            assert_eq!(necessary_screen(&out.framework), Ok(()), "{name}");
            let space = deformation_space(&out.framework);
            assert!(find_strict_auxetic(&space, &SearchConfig::default()).is_strict(), "{name}, d={d}");
        }
    }
}

#[test]
fn generation_is_deterministic_and_mode_independent() {
    let g = QuotientMultigraph::cycle(3, 2).unwrap();
    let seeds: Vec<u64> = (20..28).collect();
    let seq = generate_batch(&g, 2, &seeds, &GeneratorConfig::default(), ExecMode::Sequential);
    let par = generate_batch(&g, 2, &seeds, &GeneratorConfig::default(), ExecMode::Parallel);
    for ((a, b), s) in seq.iter().zip(&par).zip(&seeds) {
        let (a, b) = (a.as_ref().unwrap(), b.as_ref().unwrap());
        assert_eq!(a.framework, b.framework);
        assert_eq!(a.framework, generate(&g, 2, &GeneratorConfig::with_seed(*s)).unwrap().framework);
    }
}

#[test]
fn too_few_generators_is_a_usage_error() {
    let triple = QuotientMultigraph::from_triples(2, &[(0, 1, 3)]).unwrap();
    assert!(generate(&triple, 2, &GeneratorConfig::default()).is_ok());
    assert!(matches!(generate(&triple, 3, &GeneratorConfig::default()), Err(Error::Usage(_))));
}

#[test]
fn relabeling_the_diagram_gives_the_same_framework() {
    let g = QuotientMultigraph::complete(4, 2).unwrap();
    let out = generate(&g, 3, &GeneratorConfig::with_seed(3)).unwrap();
    let perm = [2, 0, 3, 1];
    let moved = assemble_framework(&out.diagram.relabeled(&perm).unwrap()).unwrap();
    let columns = |fw: &PeriodicFramework| {
        let l = fw.lattice().unwrap();
        lattice_span(&(0..l.cols()).map(|j| l.column(j)).collect::<Vec<_>>()).unwrap()
    };
    assert_eq!(columns(&out.framework).basis(), columns(&moved).basis());
    // Sorted multiset of (endpoints, Cartesian edge vector), oriented lo → hi.
    let orbits = |fw: &PeriodicFramework, rename: &dyn Fn(usize) -> usize| {
        let mut keys: Vec<(usize, usize, RatVec)> = (0..fw.m())
            .map(|k| {
                let e = fw.edge(k);
                let v = cartesian(fw, &fw.edge_vector(k));
                let (a, b) = (rename(e.from), rename(e.to));
                if a <= b {
                    (a, b, v)
                } else {
                    (b, a, v.iter().map(|x| -x).collect())
                }
            })
            .collect();
        keys.sort();
        keys
    };
    assert_eq!(orbits(&out.framework, &|v| perm[v]), orbits(&moved, &|v| v));
}

#[test]
fn tetrahedral_family_lattice_and_quadrilaterals() {
    // Rational points of (α−1)² + (β−1)² = 2 with α ≠ β.
    for (alpha, beta) in [(rat(12, 5), rat(6, 5)), (rat(6, 5), rat(12, 5)), (rat(4, 5), rat(12, 5)), (rat(30, 13), rat(20, 13)), (int(2), int(0))] {
        let (fw, cert) = builtin_tetrahedral(&alpha, &beta).unwrap();
        let step = &alpha - &beta;
        let l = fw.lattice().unwrap();
        assert_eq!(l.det().abs(), step.abs().pow(3), "alpha={alpha}, beta={beta}");
        let cubic = lattice_span(&(0..3).map(|j| RatMatrix::identity(3).scale(&step).column(j)).collect::<Vec<_>>()).unwrap();
        let own = lattice_span(&(0..3).map(|j| l.column(j)).collect::<Vec<_>>()).unwrap();
        assert_eq!(own.basis(), cubic.basis());
        // (2, 0) is a special member where two extra motions appear.
        let dof = if beta == int(0) { 6 } else { 4 };
        assert_eq!(deformation_space(&fw).dimension(), dof, "alpha={alpha}, beta={beta}");
        assert!(cert.deformation.satisfies(&fw) && cert.deformation.is_strict());

        let vec_of = |label: &str| {
            let (k, reversed) = match (0..fw.m()).find(|&k| fw.edge(k).label.as_deref() == Some(label)) {
                Some(k) => (k, false),
                None => {
                    let flipped: String = format!("{}{}{}", &label[1..2], &label[0..1], &label[2..]);
                    ((0..fw.m()).find(|&k| fw.edge(k).label.as_deref() == Some(flipped.as_str())).unwrap(), true)
                }
            };
            let v = cartesian(&fw, &fw.edge_vector(k));
            if reversed {
                v.iter().map(|x| -x).collect()
            } else {
                v
            }
        };
        let expected = vec![int(0), beta.clone(), beta.clone()];
        let sum = |a: &str, b: &str| -> RatVec { vec_of(a).iter().zip(vec_of(b)).map(|(x, y)| x + y).collect() };
        assert_eq!(sum("12A", "23A"), expected);
        assert_eq!(sum("14B", "43B"), expected);
    }
    assert!(builtin_tetrahedral_diagram(&int(3), &int(1)).is_err());
    assert!(builtin_tetrahedral_diagram(&int(2), &int(2)).is_err());
}

#[test]
fn pseudotriangulation_has_one_degree_of_freedom() {
    let (fw, cert) = builtin_pseudotriangulation();
    assert_eq!((fw.n(), fw.m()), (3, 6));
    assert_eq!(deformation_space(&fw).dimension(), 1);
    assert!(cert.deformation.satisfies(&fw) && cert.deformation.is_strict());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn any_seed_completes_soundly(seed in 0u64..1_000_000, which in 0usize..4, d in 2usize..=3) {
        let (_, g) = multigraphs().swap_remove(which);
        let out = generate(&g, d, &GeneratorConfig::with_seed(seed)).unwrap();
        check_generated(&out, d);
        prop_assert!(out.attempts >= 1 && out.attempts <= 100);
    }
}
