//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the lines reach the log.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use auxetic::analysis::{
    analyze, deformation_space, ellipsoid_diagram, find_strict_auxetic, necessary_screen, reconstruct_from_diagram,
    rigidity_system, InfDeformation, SearchConfig,
};
use auxetic::designer::{design_planar_n2, design_spatial_n2, search_octuple, ApexChoice, OctupleSearch, Rejection};
use auxetic::generator::{
    builtin_kagome, builtin_kagome_regular, builtin_pseudotriangulation, builtin_tetrahedral, generate,
    generate_batch, GeneratorConfig,
};
use auxetic::model::{dof_formula, EdgeOrbit, PeriodicFramework, QuotientMultigraph};
use auxetic::pathfollow::{scalar_gram_pins, trace_auxetic_path, Orientation, Termination, TraceConfig};
use auxetic::ratmath::{
    int, intvec, is_integer, is_positive_definite_exact, lattice_span, quadric_space_through, rat, sub, to_f64,
    RatMatrix, RatVec, Rational,
};
use auxetic::{Error, ExecMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !bool::from($cond) {
            return Err(format!($($fmt)+));
        }
    };
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("kagome: one degree of freedom, certified strict", kagome_fixture),
        ("kagome diagram: homothetic ellipses, zero cycle sum", kagome_diagram),
        ("tetrahedral (12/5, 6/5): rank 11, nullity 4, lattice, quadrilaterals", tetrahedral_fixture),
        ("constraint-count formula", constraint_counts),
        ("generator soundness over seeded runs", generator_soundness),
        ("diagram reconstruction round trip", reconstruction),
        ("screen soundness on random frameworks", screen_soundness),
        ("planar two-orbit designer", planar_designer),
        ("spatial two-orbit designer", spatial_designer),
        ("path following", path_following),
        ("affine invariance of verdicts", affine_invariance),
        ("CLI determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({detail}; {secs:.1} s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.1} s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn abs(r: &Rational) -> Rational {
    if *r < int(0) {
        -r
    } else {
        r.clone()
    }
}

fn columns(m: &RatMatrix) -> Vec<RatVec> {
    (0..m.cols()).map(|j| m.column(j)).collect()
}

fn cartesian(fw: &PeriodicFramework, v: &[Rational]) -> RatVec {
    fw.lattice().expect("stored basis").mul_vec(v)
}

fn certified(fw: &PeriodicFramework, def: &InfDeformation) -> bool {
    def.satisfies(fw) && is_positive_definite_exact(&def.omegadot).unwrap_or(false)
}

fn kagome_fixture() -> Check {
    let (fw, _) = builtin_kagome();
    let space = deformation_space(&fw);
    ensure!(space.dimension() == 1, "dimension {}", space.dimension());
    let found = find_strict_auxetic(&space, &SearchConfig::default());
    let def = found.strict().ok_or("search found no certificate")?;
    ensure!(certified(&fw, def), "certificate fails the exact checks");
    Ok(format!("omegadot {:?}", def.omegadot))
}

fn kagome_diagram() -> Check {
    let (fw, def) = builtin_kagome();
    let diag = ellipsoid_diagram(&fw, &def).map_err(|e| e.to_string())?;
    ensure!(diag.edges.len() == 3, "{} quadrics", diag.edges.len());
    let quads: Vec<RatMatrix> = (0..3).map(|r| diag.quadric(r).quadratic_part()).collect();
    ensure!(quads.iter().all(|q| *q == quads[0]), "quadratic parts differ");
    let g = diag.reduced_graph().map_err(|e| e.to_string())?;
    for c in 0..g.cycles().len() {
        ensure!(diag.cycle_sum(&g, c).iter().all(|x| *x == int(0)), "cycle {c} sums to nonzero");
    }
    Ok(format!("{} cycle(s)", g.cycles().len()))
}

/// Cartesian vector of the edge labeled `label`, or of its reverse.
fn labeled_vector(fw: &PeriodicFramework, label: &str) -> Option<RatVec> {
    let find = |l: &str| (0..fw.m()).find(|&k| fw.edge(k).label.as_deref() == Some(l));
    if let Some(k) = find(label) {
        return Some(cartesian(fw, &fw.edge_vector(k)));
    }
    let flipped = format!("{}{}{}", &label[1..2], &label[0..1], &label[2..]);
    find(&flipped).map(|k| cartesian(fw, &fw.edge_vector(k)).iter().map(|x| -x).collect())
}

fn tetrahedral_fixture() -> Check {
    let (alpha, beta) = (rat(12, 5), rat(6, 5));
    let (fw, _) = builtin_tetrahedral(&alpha, &beta).map_err(|e| e.to_string())?;
    let system = rigidity_system(&fw);
    let (rank, cols) = (system.rank(), system.cols());
    ensure!(rank == 11 && cols - rank == 4, "rank {rank}, columns {cols}");
    let own = lattice_span(&columns(fw.lattice().ok_or("no basis")?)).map_err(|e| e.to_string())?;
    let cubic = lattice_span(&columns(&RatMatrix::identity(3).scale(&rat(6, 5)))).map_err(|e| e.to_string())?;
    ensure!(own.basis() == cubic.basis(), "lattice HNF differs from (6/5)Z^3");
    let expected = vec![int(0), beta.clone(), beta.clone()];
    for (a, b) in [("12A", "23A"), ("14B", "43B")] {
        let (va, vb) = (labeled_vector(&fw, a).ok_or(a)?, labeled_vector(&fw, b).ok_or(b)?);
        let sum: RatVec = va.iter().zip(&vb).map(|(x, y)| x + y).collect();
        ensure!(sum == expected, "{a} + {b} = {sum:?}");
    }
    Ok("exact".into())
}

fn constraint_counts() -> Check {
    let got = [dof_formula(2, 3, 6), dof_formula(3, 2, 8), dof_formula(2, 2, 4)];
    ensure!(got == [1, 1, 1], "{got:?}");
    Ok("1, 1, 1".into())
}

fn multigraphs() -> Vec<QuotientMultigraph> {
    vec![
        QuotientMultigraph::cycle(3, 2).unwrap(),
        QuotientMultigraph::from_triples(2, &[(0, 1, 4)]).unwrap(),
        QuotientMultigraph::complete(4, 2).unwrap(),
        QuotientMultigraph::from_triples(3, &[(0, 1, 2), (1, 2, 3)]).unwrap(),
    ]
}

fn generator_soundness() -> Check {
    let start = Instant::now();
    let seeds: Vec<u64> = (100..107).collect();
    let mut runs = 0;
    for (gi, g) in multigraphs().iter().enumerate() {
        for d in [2, 3] {
            for (seed, out) in seeds.iter().zip(generate_batch(g, d, &seeds, &GeneratorConfig::default(), ExecMode::default())) {
                let tag = format!("graph {gi}, d={d}, seed {seed}");
                let out = out.map_err(|e| format!("{tag}: {e}"))?;
                let fw = &out.framework;
                ensure!(fw.validate().is_ok(), "{tag}: invalid framework");
                ensure!(fw.lattice().map(|l| l.rank()) == Some(d), "{tag}: lattice rank");
                let cert = &out.certificate.deformation;
                ensure!(cert.omegadot == *fw.gram(), "{tag}: omegadot differs from omega");
                ensure!(cert.residuals(fw).iter().all(|r| *r == int(0)), "{tag}: nonzero residual");
                ensure!(is_positive_definite_exact(&cert.omegadot).unwrap_or(false), "{tag}: not strict");
                let p = &out.diagram.placement;
                for i in 0..fw.n() {
                    let expect: RatVec = sub(&p[i], &p[0]).iter().map(|x| x * rat(-1, 2)).collect();
                    ensure!(cartesian(fw, &cert.qdot[i]) == expect, "{tag}: qdot_{i} is not -q_{i}/2");
                }
                runs += 1;
            }
        }
    }
    ensure!(runs >= 50, "only {runs} runs");
    ensure!(start.elapsed() <= Duration::from_secs(60), "took {:?}", start.elapsed());
    Ok(format!("{runs} runs, 0 failures"))
}

fn is_unimodular(b: &RatMatrix) -> bool {
    (0..b.rows()).all(|i| (0..b.cols()).all(|j| is_integer(&b[(i, j)]))) && abs(&b.det()) == int(1)
}

fn reconstruction() -> Check {
    let (k, kd) = builtin_kagome();
    let (t, tc) = builtin_tetrahedral(&rat(12, 5), &rat(6, 5)).map_err(|e| e.to_string())?;
    let mut cases = vec![("kagome".to_string(), k, kd), ("tetrahedral".to_string(), t, tc.deformation)];
    let graphs = multigraphs();
    for i in 0..10u64 {
        let g = &graphs[i as usize % graphs.len()];
        let d = 2 + (i as usize / graphs.len()) % 2;
        let out = generate(g, d, &GeneratorConfig::with_seed(200 + i)).map_err(|e| e.to_string())?;
        cases.push((format!("generated {i}"), out.framework, out.certificate.deformation));
    }
    for (name, fw, def) in &cases {
        let diag = ellipsoid_diagram(fw, def).map_err(|e| format!("{name}: {e}"))?;
        let rec = reconstruct_from_diagram(&diag).map_err(|e| format!("{name}: {e}"))?;
        let b = &rec.basis_change;
        ensure!(is_unimodular(b), "{name}: basis change not in GL_d(Z)");
        let inv = b.inverse().ok_or("singular basis change")?;
        let back = rec.framework.change_basis(&inv).map_err(|e| e.to_string())?;
        ensure!(back.same_up_to_translation(fw), "{name}: framework differs");
        let def_back = rec.deformation.change_basis(&inv).map_err(|e| e.to_string())?;
        ensure!(def_back.positive_multiple_of(def).is_some(), "{name}: deformation not a positive multiple");
    }
    Ok(format!("{} instances", cases.len()))
}

fn small_rational(rng: &mut ChaCha8Rng, bound: i64, den: i64) -> Rational {
    let d = rng.random_range(1..=den);
    rat(rng.random_range(-bound * d..=bound * d), d)
}

fn random_framework(rng: &mut ChaCha8Rng) -> PeriodicFramework {
    let d = 2;
    let n = rng.random_range(1..=3usize);
    let unknowns = d * (n - 1) + 3;
    let m = rng.random_range(unknowns.saturating_sub(3).max(1)..=unknowns);
    let a = RatMatrix::from_fn(d, d, |_, _| small_rational(rng, 2, 3));
    let gram = a.transpose().mul(&a).add(&RatMatrix::identity(d).scale(&rat(1, 4)));
    let vertices: Vec<RatVec> = (1..n).map(|_| (0..d).map(|_| small_rational(rng, 1, 4)).collect()).collect();
    let edges = (0..m)
        .map(|_| {
            let (from, to) = (rng.random_range(0..n), rng.random_range(0..n));
            let shift: Vec<i64> = (0..d).map(|_| rng.random_range(-1..=1)).collect();
            EdgeOrbit::new(from, to, &shift)
        })
        .collect();
    PeriodicFramework::from_parts_unchecked(d, None, Some(gram), vertices, edges).unwrap()
}

fn screen_soundness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let config = SearchConfig { starts: 16, iterations: 100, ..Default::default() };
    let (mut screened, mut strict) = (0, 0);
    for i in 0..100 {
        let fw = random_framework(&mut rng);
        let found = find_strict_auxetic(&deformation_space(&fw), &config);
        if let Some(def) = found.strict() {
            ensure!(certified(&fw, def), "instance {i}: bad certificate");
            strict += 1;
        }
        if let Err(f) = necessary_screen(&fw) {
            screened += 1;
            ensure!(!found.is_strict(), "instance {i}: screen says {f} but a strict certificate exists");
        }
    }
    Ok(format!("100 frameworks, {screened} screened out, {strict} strict"))
}

fn rejection<T>(r: Result<T, Error>) -> Option<Rejection> {
    match r {
        Err(Error::Rejected(x)) => Some(x),
        _ => None,
    }
}

fn planar_designer() -> Check {
    let square = vec![intvec(&[0, 0]), intvec(&[1, 0]), intvec(&[1, 1]), intvec(&[0, 1])];
    let config = SearchConfig::default();
    let design = design_planar_n2(&square, None, &ApexChoice::default_for(2), &config).map_err(|e| e.to_string())?;
    let space = deformation_space(&design.framework);
    ensure!(space.dimension() == 1, "nullity {}", space.dimension());
    ensure!(certified(&design.framework, &design.certificate), "certificate fails");
    let coarse = vec![intvec(&[0, 0]), intvec(&[2, 0]), intvec(&[2, 2]), intvec(&[0, 2])];
    let got = rejection(design_planar_n2(&coarse, None, &ApexChoice::default_for(2), &config));
    ensure!(matches!(got, Some(Rejection::ProperSublattice { .. })), "sublattice case: {got:?}");
    let concave = vec![intvec(&[0, 0]), intvec(&[3, 0]), intvec(&[0, 3]), intvec(&[1, 1])];
    let got = rejection(design_planar_n2(&concave, None, &ApexChoice::default_for(2), &config));
    ensure!(got == Some(Rejection::NotStrictlyConvex), "concave case: {got:?}");
    let apex: Vec<String> = design.apex.iter().map(|x| x.to_string()).collect();
    Ok(format!("apex ({})", apex.join(", ")))
}

fn spatial_designer() -> Check {
    let mut symmetric = Vec::new();
    for sx in [1, -1] {
        for sy in [2, -2] {
            for sz in [3, -3] {
                symmetric.push(intvec(&[sx, sy, sz]));
            }
        }
    }
    let family = quadric_space_through(&symmetric).map_err(|e| e.to_string())?.len();
    ensure!(family == 3, "family dimension {family}");
    let got = rejection(design_spatial_n2(&symmetric, None, &ApexChoice::default_for(3), &SearchConfig::default()));
    ensure!(got.is_some(), "symmetric octuple accepted");

    let start = Instant::now();
    let hit = search_octuple(&OctupleSearch { seed: 0, trials: 100_000, ..Default::default() })
        .ok_or("no admissible octuple in 1e5 trials")?;
    ensure!(start.elapsed() <= Duration::from_secs(300), "search took {:?}", start.elapsed());
    let design = design_spatial_n2(&hit.points, None, &ApexChoice::default_for(3), &SearchConfig::default())
        .map_err(|e| e.to_string())?;
    ensure!(certified(&design.framework, &design.certificate), "certificate fails");
    Ok(format!("family dimension 3, {}; hit at trial {}", got.unwrap(), hit.trial))
}

fn path_following() -> Check {
    let (fw, def) = builtin_kagome();
    let trace = trace_auxetic_path(&fw, &def, &TraceConfig { h: 1e-2, max_steps: 1000, pins: None })
        .map_err(|e| e.to_string())?;
    ensure!(trace.orientation == Orientation::Expand, "orientation");
    ensure!(trace.termination == Termination::Boundary, "terminated by {:?}", trace.termination);
    for s in &trace.states {
        ensure!(s.residual <= 1e-9, "step {}: residual {}", s.step, s.residual);
        ensure!(s.lambda_min >= -1e-9, "step {}: lambda_min {}", s.step, s.lambda_min);
    }
    ensure!(trace.states.windows(2).all(|w| w[1].det_gram > w[0].det_gram), "det omega not increasing");
    let last = trace.states.last().unwrap();
    ensure!(last.lambda_min <= 1e-6, "final lambda_min {}", last.lambda_min);

    let (alpha, beta) = (rat(12, 5), rat(6, 5));
    let (tfw, cert) = builtin_tetrahedral(&alpha, &beta).map_err(|e| e.to_string())?;
    let pins = Some(scalar_gram_pins(3, 4));
    let ttrace = trace_auxetic_path(&tfw, &cert.deformation, &TraceConfig { h: 2e-2, max_steps: 300, pins })
        .map_err(|e| e.to_string())?;
    let k = (0..tfw.m()).find(|&k| tfw.edge(k).label.as_deref() == Some("12A")).ok_or("no 12A")?;
    let e = tfw.edge(k);
    let target = to_f64(&(&alpha * &alpha + &beta * &beta));
    let mut drift = 0.0_f64;
    for s in &ttrace.states {
        // Scalar ω: Cartesian coordinates are √ω₀₀ times lattice coordinates.
        let scale = s.gram[(0, 0)].sqrt();
        let v: Vec<f64> = (0..3).map(|a| (s.q[e.to][a] + e.shift[a] as f64 - s.q[e.from][a]) * scale).collect();
        drift = drift.max((v[0] * v[0] + v[1] * v[1] - target).abs());
    }
    ensure!(drift <= 1e-8, "alpha^2 + beta^2 drifts by {drift}");
    Ok(format!(
        "kagome {} states to det {:.6}; tetrahedral {} states, drift {drift:.1e}",
        trace.states.len(),
        last.det_gram,
        ttrace.states.len()
    ))
}

fn random_invertible(rng: &mut ChaCha8Rng, d: usize) -> RatMatrix {
    loop {
        let m = RatMatrix::from_fn(d, d, |_, _| small_rational(rng, 3, 4));
        if m.det() != int(0) {
            return m;
        }
    }
}

/// Rank of the span of the `ω̇` parts.
fn omegadot_rank(bases: &[&[InfDeformation]]) -> usize {
    let rows: Vec<RatVec> = bases
        .iter()
        .flat_map(|b| b.iter())
        .map(|def| {
            let d = def.omegadot.rows();
            (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).map(|(i, j)| def.omegadot[(i, j)].clone()).collect()
        })
        .collect();
    if rows.is_empty() {
        return 0;
    }
    RatMatrix::from_rows(rows).unwrap().rank()
}

fn affine_invariance() -> Check {
    let (k, _) = builtin_kagome();
    let (t, _) = builtin_tetrahedral(&rat(12, 5), &rat(6, 5)).map_err(|e| e.to_string())?;
    let (p, _) = builtin_pseudotriangulation();
    let g = generate(&QuotientMultigraph::complete(3, 2).unwrap(), 3, &GeneratorConfig::with_seed(7))
        .map_err(|e| e.to_string())?
        .framework;
    let fixtures = [("kagome", k), ("tetrahedral", t), ("pseudotriangulation", p), ("generated", g), ("regular kagome", builtin_kagome_regular())];
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let config = SearchConfig::default();
    let mut strict_count = 0;
    for (name, fw) in &fixtures {
        let base = analyze(fw, &config);
        let base_space = deformation_space(fw);
        strict_count += usize::from(base.outcome.is_strict());
        for i in 0..10 {
            let m = random_invertible(&mut rng, fw.dim());
            let moved = fw.transform_gram(&m).map_err(|e| e.to_string())?;
            let a = analyze(&moved, &config);
            ensure!(a.outcome.is_strict() == base.outcome.is_strict(), "{name}, map {i}: verdict changed");
            ensure!(a.dof == base.dof, "{name}, map {i}: dof {} vs {}", a.dof, base.dof);
            let space = deformation_space(&moved);
            let r = omegadot_rank(&[&base_space.basis, &space.basis]);
            ensure!(
                r == omegadot_rank(&[&base_space.basis]) && r == omegadot_rank(&[&space.basis]),
                "{name}, map {i}: omegadot spans differ"
            );
        }
    }
    Ok(format!("50 maps, {strict_count}/5 fixtures strict"))
}

fn auxetic(dir: &Path, args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_auxetic"))
        .current_dir(dir)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("auxetic {args:?}: {}", String::from_utf8_lossy(&out.stderr)));
    }
    std::fs::write(dir.join(format!("stdout-{}", args.join("_").replace(['/', ' ', ';', ','], "-"))), &out.stdout)
        .map_err(|e| e.to_string())
}

/// Every pipeline stage on every fixture, with all outputs in `dir`.
fn pipeline(dir: &Path) -> Result<(), String> {
    std::fs::write(
        dir.join("graph.json"),
        r#"{"n": 3, "edges": [{"from": 0, "to": 1, "multiplicity": 2}, {"from": 1, "to": 2, "multiplicity": 2}, {"from": 2, "to": 0, "multiplicity": 2}]}"#,
    )
    .map_err(|e| e.to_string())?;
    auxetic(dir, &["examples", "kagome", "-o", "kagome.json", "--certificate", "kagome.cert.json"])?;
    auxetic(dir, &["examples", "tetrahedral", "--alpha", "12/5", "--beta", "6/5", "-o", "tetrahedral.json", "--certificate", "tetrahedral.cert.json"])?;
    auxetic(dir, &["examples", "pseudotriangulation", "-o", "pseudo.json", "--certificate", "pseudo.cert.json"])?;
    auxetic(dir, &["generate", "graph.json", "--seed", "5", "--dim", "3", "-o", "gen.json", "--certificate", "gen.cert.json", "--report", "gen.report.json"])?;
    auxetic(dir, &["design2d", "--points", "0,0;1,0;1,1;0,1", "-o", "square.json", "--certificate", "square.cert.json", "--report", "square.report.json"])?;
    for name in ["kagome", "tetrahedral", "pseudo", "gen", "square"] {
        let fw = format!("{name}.json");
        auxetic(dir, &["validate", &fw])?;
        auxetic(dir, &["analyze", &fw, "--certificate", &format!("{name}.found.json"), "--diagram", &format!("{name}.diagram.json")])?;
    }
    auxetic(dir, &["trace", "kagome.json", "kagome.cert.json", "--steps", "50", "--h", "0.01", "-o", "kagome.trace.jsonl"])?;
    auxetic(dir, &["trace", "tetrahedral.json", "tetrahedral.cert.json", "--steps", "20", "--h", "0.02", "--scalar-gram", "-o", "tetrahedral.trace.jsonl"])?;
    auxetic(dir, &["export", "kagome.json", "--box", "3,3", "--format", "svg", "-o", "kagome.svg"])?;
    auxetic(dir, &["export", "pseudo.json", "--box", "-1:1,0:1", "--format", "svg", "-o", "pseudo.svg"])?;
    auxetic(dir, &["export", "tetrahedral.json", "--box", "2,2,2", "--format", "obj", "-o", "tetrahedral.obj"])?;
    Ok(())
}

fn listing(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap())
        .map(|e| (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap()))
        .collect();
    files.sort();
    files
}

fn determinism() -> Check {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    pipeline(a.path())?;
    pipeline(b.path())?;
    let (la, lb) = (listing(a.path()), listing(b.path()));
    ensure!(la.len() == lb.len(), "different file sets");
    for ((na, ca), (nb, cb)) in la.iter().zip(&lb) {
        ensure!(na == nb, "file sets differ at {na} / {nb}");
        ensure!(ca == cb, "{na} differs between runs");
        ensure!(!ca.is_empty() || na.starts_with("stdout-"), "{na} is empty");
    }
    // The files are real results, not error text.
    let kagome: serde_json::Value = serde_json::from_slice(&std::fs::read(a.path().join("stdout-analyze_kagome.json_--certificate_kagome.found.json_--diagram_kagome.diagram.json")).unwrap()).unwrap();
    ensure!(kagome["verdict"] == "strictly auxetic" && kagome["dof"] == 1, "kagome report {kagome}");
    Ok(format!("{} files byte-identical across two runs", la.len()))
}
