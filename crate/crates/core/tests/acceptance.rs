//! Acceptance criteria, one line each. Set `SQTOP_SCAN6=1` to include the
//! six-vertex scan (several minutes in a debug build).

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;
use sqtop_core::cohomology::{betti, BettiMap, Cochain, CohomologyBasis};
use sqtop_core::enumeration::{scan_sq1, EnumOptions};
use sqtop_core::moment_angle::{low_degree_sq1_check, sq_dim_bound_check, za_betti, za_sq_profile, ZkOptions};
use sqtop_core::polyhedral_join::{
    composition, extend_cocycle_substitution, polyhedral_join, predicted_betti_composition,
    predicted_betti_substitution, substitution, LabelingMode, PairSpec,
};
use sqtop_core::stanley_reisner::{hilbert_function, monomial_basis, sq_graded_matrix, verify_a_ideal};
use sqtop_core::steenrod::sq_cochain;
use sqtop_core::{corpus, registry, ProfileEntry, Simplex, SimplicialComplex};

type Outcome = Result<String, String>;

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn s(v: &[usize]) -> Simplex {
    Simplex::from_vertices(v).unwrap()
}

fn x_of(k: &SimplicialComplex) -> Cochain<'_> {
    Cochain::from_vertex_lists(k, &[[1, 4], [1, 6], [2, 5], [2, 6], [4, 5]]).unwrap()
}

fn random_corpus() -> Vec<SimplicialComplex> {
    let mut rng = corpus::rng(2024);
    (0..200).map(|_| corpus::random_small_complex(&mut rng, 7)).collect()
}

fn p26_ground_truth() -> Outcome {
    let p = registry::p26();
    check(betti(&p, true) == BettiMap::from([(1, 1), (2, 1)]), "reduced Betti of P26")?;
    let x = x_of(&p);
    let xp = Cochain::from_vertex_lists(&p, &[[1, 2], [1, 3], [1, 4], [1, 5], [2, 4], [2, 5], [2, 6], [3, 4], [4, 6]]).unwrap();
    let sx = sq_cochain(&x, 1);
    let sxp = sq_cochain(&xp, 1);
    check(sx == Cochain::from_vertex_lists(&p, &[[1, 4, 5]]).unwrap(), format!("Sq^1(x) = {sx}"))?;
    let want = Cochain::from_vertex_lists(&p, &[[1, 2, 6], [1, 4, 6], [3, 4, 6]]).unwrap();
    check(sxp == want, format!("Sq^1(x') = {sxp}"))?;
    let basis = CohomologyBasis::new(&p, true);
    let (a, b) = (basis.reduce(&sx).map_err(|e| e.to_string())?, basis.reduce(&sxp).map_err(|e| e.to_string())?);
    check(a == b && !a.is_zero(), "Sq^1 images differ in H^2 or vanish")?;
    Ok(format!("Sq^1(x) = {sx}, Sq^1(x') = {sxp}, same nonzero class"))
}

fn moment_angle_p26() -> Outcome {
    let p = registry::p26();
    let b = za_betti(&p, &ZkOptions::default()).map_err(|e| e.to_string())?;
    check(b == BettiMap::from([(0, 1), (5, 10), (6, 15), (7, 6), (8, 1), (9, 1)]), format!("za_betti = {b:?}"))?;
    let prof = za_sq_profile(&p, &ZkOptions::default()).map_err(|e| e.to_string())?;
    check(prof.aggregate.entries() == vec![ProfileEntry { n: 1, degree: 8, rank: 1 }], format!("{:?}", prof.aggregate))?;
    Ok(format!("H*(Z) = {b:?}; profile {{(1, 8, 1)}}"))
}

fn five_vertex_scan() -> Outcome {
    let opts = EnumOptions::default();
    let r4 = scan_sq1(4, &opts).map_err(|e| e.to_string())?;
    check(r4.hits.is_empty(), "hits on 4 vertices")?;
    let t = Instant::now();
    let r5 = scan_sq1(5, &opts).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    check(r5.hits.is_empty(), format!("{} hits on 5 vertices", r5.hits.len()))?;
    check(r5.complexes == 7580, format!("{} complexes on 5 vertices", r5.complexes))?;
    check(elapsed < Duration::from_secs(60), format!("scan took {elapsed:?}"))?;
    let mut detail = format!("{} complexes on [5], 0 with nontrivial Sq^1, {:.2?}", r5.complexes, elapsed);
    if std::env::var("SQTOP_SCAN6").is_ok_and(|v| v == "1") {
        let opts6 = EnumOptions { allow_long: true, exec: sqtop_core::Execution::Parallel { jobs: 0 }, ..opts };
        let r6 = scan_sq1(6, &opts6).map_err(|e| e.to_string())?;
        let p26: Vec<Vec<usize>> = registry::p26().facets().iter().map(|f| f.to_vec()).collect();
        check(r6.hits.iter().any(|h| h.facets == p26), "six-vertex scan misses P26")?;
        detail.push_str(&format!("; six vertices: {} hits including P26", r6.hits.len()));
    } else {
        detail.push_str("; six-vertex scan skipped (SQTOP_SCAN6=1)");
    }
    Ok(detail)
}

fn substitution_propagation() -> Outcome {
    let p = registry::p26();
    let x = x_of(&p);
    let mut s0 = vec![registry::points(2)];
    s0.extend((0..5).map(|_| registry::points(1)));
    let sub = substitution(&p, &s0, LabelingMode::Paper).map_err(|e| e.to_string())?;
    let mut added: Vec<Simplex> = sub.facets().iter().copied().filter(|f| !p.facets().contains(f)).collect();
    added.sort();
    let want: Vec<Simplex> = [[2, 3, 7], [2, 6, 7], [3, 5, 7], [4, 5, 7], [4, 6, 7]].iter().map(|f| s(f)).collect();
    check(added == want && sub.facets().len() == 15, format!("added facets {added:?}"))?;
    let y = extend_cocycle_substitution(&sub, &s0, &x, LabelingMode::Paper).map_err(|e| e.to_string())?;
    let mut expected = x.support();
    expected.extend([s(&[4, 7]), s(&[6, 7])]);
    check(y == Cochain::from_simplices(&sub, 1, &expected).unwrap(), format!("y = {y}"))?;
    let sy = sq_cochain(&y, 1);
    check(sy == Cochain::from_vertex_lists(&sub, &[[1, 4, 5], [2, 6, 7]]).unwrap(), format!("Sq^1(y) = {sy}"))?;

    let mut d2 = vec![registry::boundary(2)];
    d2.extend((0..5).map(|_| registry::points(1)));
    let sub2 = substitution(&p, &d2, LabelingMode::Paper).map_err(|e| e.to_string())?;
    let y2 = extend_cocycle_substitution(&sub2, &d2, &x, LabelingMode::Paper).map_err(|e| e.to_string())?;
    let sy2 = sq_cochain(&y2, 1);
    let want2 = [[1, 4, 5], [1, 4, 7], [1, 4, 8], [1, 6, 7], [1, 6, 8], [2, 6, 7], [2, 6, 8]];
    check(sy2 == Cochain::from_vertex_lists(&sub2, &want2).unwrap(), format!("Sq^1(y) = {sy2}"))?;
    Ok(format!("Sq^1(y) = {sy}; 7-term image over the triangle boundary"))
}

fn composition_identity() -> Outcome {
    let pair = (registry::simplex(1), registry::boundary(1));
    let spec = PairSpec::new(vec![pair.clone(), pair]).map_err(|e| e.to_string())?;
    let j = polyhedral_join(&registry::points(2), &spec, LabelingMode::Paper).map_err(|e| e.to_string())?;
    check(j.face_set() == registry::boundary(3).face_set(), "not the tetrahedron boundary")?;
    Ok("(Δ¹, ∂Δ¹)^{*two points} = ∂Δ³".into())
}

fn splitting_oracle() -> Outcome {
    let mut rng = corpus::rng(6);
    let bases = corpus::connected_bases();
    let subs = corpus::substituents();
    let (mut n_sub, mut n_comp) = (0, 0);
    let mut attempts = 0;
    while (n_sub < 60 || n_comp < 50) && attempts < 10_000 {
        attempts += 1;
        let (kname, k) = bases.choose(&mut rng).unwrap();
        let args: Vec<(String, SimplicialComplex)> =
            (0..k.num_vertices()).map(|_| subs.choose(&mut rng).unwrap().clone()).collect();
        let total: usize = args.iter().map(|(_, c)| c.num_vertices()).sum();
        let complexes: Vec<SimplicialComplex> = args.iter().map(|(_, c)| c.clone()).collect();
        let names: Vec<&str> = args.iter().map(|(n, _)| n.as_str()).collect();
        if n_sub < 60 && total <= 20 {
            let sub = substitution(k, &complexes, LabelingMode::Paper).map_err(|e| e.to_string())?;
            let predicted = predicted_betti_substitution(k, &complexes).map_err(|e| e.to_string())?;
            let direct = betti(&sub, true);
            check(predicted == direct, format!("{kname}<{names:?}>: predicted {predicted:?}, direct {direct:?}"))?;
            n_sub += 1;
        }
        if n_comp < 50 && total <= 12 {
            let comp = composition(k, &complexes, LabelingMode::Paper).map_err(|e| e.to_string())?;
            let predicted = predicted_betti_composition(k, &complexes).map_err(|e| e.to_string())?;
            let direct = betti(&comp, true);
            check(predicted == direct, format!("{kname}({names:?}): predicted {predicted:?}, direct {direct:?}"))?;
            n_comp += 1;
        }
    }
    check(n_sub >= 50 && n_comp >= 50, format!("only {n_sub} substitutions and {n_comp} compositions"))?;
    Ok(format!("{n_sub} substitutions and {n_comp} compositions match"))
}

fn steenrod_suite() -> Outcome {
    let mut rng = corpus::rng(7);
    let mut checks = 0;
    for (i, k) in random_corpus().iter().enumerate() {
        checks += common::steenrod_properties(k, &mut rng).map_err(|e| format!("instance {i}: {e}"))?;
    }
    Ok(format!("200 complexes, {checks} checks"))
}

fn stanley_reisner_suite() -> Outcome {
    let corpus = random_corpus();
    for k in corpus.iter().take(60) {
        for deg in 0..=6 {
            let basis = monomial_basis(k, deg).len() as u128;
            check(basis == hilbert_function(k, deg), format!("Hilbert count in degree {deg}"))?;
        }
    }
    let mut rng = corpus::rng(8);
    let mut targets = vec![registry::points(2), registry::p26()];
    for _ in 0..10 {
        let m = rng.gen_range(4..=6);
        targets.push(corpus::random_complex(&mut rng, m, 3));
    }
    let mut checked = 0;
    for k in &targets {
        for d in [1, 2] {
            let r = verify_a_ideal(k, d, 8).map_err(|e| e.to_string())?;
            check(r.is_ok(), format!("A-ideal fails: {:?}", r.counterexample))?;
            checked += r.checked;
        }
        for deg in (0..=8).step_by(2) {
            for n in (1..=9).step_by(2) {
                let m = sq_graded_matrix(k, n, deg, 2).map_err(|e| e.to_string())?;
                check(m.is_zero(), format!("odd Sq^{n} nonzero on degree {deg}"))?;
            }
        }
    }
    Ok(format!("Hilbert counts on 60 complexes, {checked} ideal monomials, odd squares vanish"))
}

fn bound_checks() -> Outcome {
    let opts = ZkOptions::default();
    let mut all = random_corpus();
    all.push(registry::p26());
    for (i, k) in all.iter().enumerate() {
        let a = sq_dim_bound_check(k, &opts).map_err(|e| e.to_string())?;
        let b = low_degree_sq1_check(k, &opts).map_err(|e| e.to_string())?;
        check(a.passed() && b.passed(), format!("instance {i}: {:?} {:?}", a.violations, b.violations))?;
    }
    let p = za_sq_profile(&registry::p26(), &opts).map_err(|e| e.to_string())?;
    check(p.aggregate.rank(1, 8) == 1, "no Sq^1 in degree 8 for P26")?;
    Ok(format!("{} complexes pass both bounds; P26 attains degree 8", all.len()))
}

fn ghost_convention() -> Outcome {
    let opts = ZkOptions::default();
    let a = za_betti(&registry::point_with_ghost(), &opts).map_err(|e| e.to_string())?;
    let b = za_betti(&registry::points(2), &opts).map_err(|e| e.to_string())?;
    check(a == BettiMap::from([(0, 1), (1, 1)]), format!("point with ghost: {a:?}"))?;
    check(b == BettiMap::from([(0, 1), (3, 1)]), format!("two points: {b:?}"))?;
    Ok("Z = S^1 and S^3".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("P26 ground truth", p26_ground_truth),
        ("moment-angle complex over P26", moment_angle_p26),
        ("five-vertex Sq^1 scan", five_vertex_scan),
        ("substitution propagation", substitution_propagation),
        ("composition identity", composition_identity),
        ("splitting-theorem oracle", splitting_oracle),
        ("Steenrod property suite", steenrod_suite),
        ("Stanley-Reisner suite", stanley_reisner_suite),
        ("moment-angle bound checks", bound_checks),
        ("ghost-vertex Hochster convention", ghost_convention),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(err) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {err} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
