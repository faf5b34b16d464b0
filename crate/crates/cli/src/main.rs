use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sqtop_core::cohomology::{betti, cup, BettiMap, Cochain, CohomologyBasis};
use sqtop_core::enumeration::{scan_sq1, EnumOptions};
use sqtop_core::io;
use sqtop_core::moment_angle::{hochster_table, za_sq_profile, ZkOptions, DEFAULT_VERTEX_CAP};
use sqtop_core::polyhedral_join::{
    extend_cocycle_substitution, polyhedral_join, predicted_betti_substitution, predicted_sq_profile_substitution,
    substitution, LabelingMode,
};
use sqtop_core::stanley_reisner::{monomial_basis, sq_graded_matrix, verify_a_ideal};
use sqtop_core::steenrod::{sq_cochain, sq_profile};
use sqtop_core::{corpus, Error, Execution, SimplicialComplex, SteenrodProfile};

#[derive(Parser)]
#[command(name = "sqtop", version, about = "Steenrod squares on simplicial complexes")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Basic invariants of a complex.
    Info { complex: String },
    /// Betti numbers and cocycle representatives.
    Cohomology {
        complex: String,
        /// Unreduced cohomology.
        #[arg(long)]
        unreduced: bool,
    },
    /// Cup product of two cochains.
    Cup {
        complex: String,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Sq^n of a cochain, or the Steenrod profile when no cochain is given.
    Sq {
        complex: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        cochain: Option<PathBuf>,
    },
    /// Steenrod squares on the face ring.
    Sr {
        complex: String,
        /// Source degree (topological).
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Degree of the generators (1 or 2).
        #[arg(long, default_value_t = 2)]
        d: u32,
        /// Also check that Sq preserves the face ideal up to this degree.
        #[arg(long)]
        verify_ideal: Option<u32>,
    },
    /// Cohomology of the moment-angle complex.
    Za {
        complex: String,
        /// Include the Steenrod profile.
        #[arg(long)]
        profile: bool,
        #[command(flatten)]
        za: ZaArgs,
    },
    /// Hochster table: reduced Betti numbers of every full subcomplex on a non-face.
    Hochster {
        complex: String,
        #[command(flatten)]
        za: ZaArgs,
    },
    /// Polyhedral join from a spec file.
    Join {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = Labeling::Paper)]
        labeling: Labeling,
    },
    /// Substitution complex K<K1,...,Km>.
    Substitute {
        complex: String,
        /// Comma-separated substituted complexes.
        complexes: String,
        #[arg(long, value_enum, default_value_t = Labeling::Paper)]
        labeling: Labeling,
        /// Print predicted and direct Betti numbers and Steenrod profiles.
        #[arg(long)]
        predict: bool,
    },
    /// Propagate a cocycle of K to the substitution complex.
    ExtendCocycle {
        complex: String,
        complexes: String,
        #[arg(long)]
        cochain: PathBuf,
        #[arg(long, value_enum, default_value_t = Labeling::Paper)]
        labeling: Labeling,
        /// Also print Sq^1 of the extension.
        #[arg(long)]
        sq1: bool,
    },
    /// Enumerate every complex on [n] and report those with nontrivial Sq^1.
    Scan {
        #[arg(long, default_value_t = 5)]
        max_vertices: usize,
        /// Look for every Sq^k, not only Sq^1.
        #[arg(long)]
        full_sq: bool,
        /// Permit the six-vertex enumeration.
        #[arg(long)]
        allow_long: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Seeded corpus check of the splitting predictions and moment-angle bounds.
    Check {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

#[derive(Args)]
struct ZaArgs {
    /// Vertex cap (default 16, or SQTOP_VERTEX_CAP).
    #[arg(long)]
    max_vertices: Option<usize>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl ZaArgs {
    fn options(&self) -> Result<ZkOptions, Error> {
        let cap = match self.max_vertices {
            Some(c) => c,
            None => match std::env::var("SQTOP_VERTEX_CAP") {
                Ok(v) => v.trim().parse().map_err(|_| Error::Unsupported(format!("bad SQTOP_VERTEX_CAP: {v:?}")))?,
                Err(_) => DEFAULT_VERTEX_CAP,
            },
        };
        Ok(ZkOptions { vertex_cap: cap, exec: Execution::from_jobs(self.jobs) })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Labeling {
    Paper,
    Block,
}

impl From<Labeling> for LabelingMode {
    fn from(l: Labeling) -> Self {
        match l {
            Labeling::Paper => LabelingMode::Paper,
            Labeling::Block => LabelingMode::Block,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Error::VerificationFailed(_)) if matches!(cli.command, Command::Check { .. }) => ExitCode::from(4),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource_guard() { 3 } else { 2 })
        }
    }
}

type Out = Result<String, Error>;

fn load_list(spec: &str) -> Result<Vec<SimplicialComplex>, Error> {
    spec.split(',').map(|s| io::load_complex(s.trim())).collect()
}

fn read(path: &Path) -> Result<String, Error> {
    Ok(std::fs::read_to_string(path)?)
}

fn load_cochain<'a>(k: &'a SimplicialComplex, path: &Path) -> Result<Cochain<'a>, Error> {
    let simplices = io::parse_simplex_list(&read(path)?)?;
    let degree = simplices.first().map(|s| s.dim()).ok_or_else(|| Error::Parse { line: 0, msg: "empty cochain file".into() })?;
    Cochain::from_simplices(k, degree, &simplices)
}

fn cochain_lines(c: &Cochain<'_>) -> String {
    if c.is_zero() {
        "0\n".into()
    } else {
        io::simplices_to_text(&c.support())
    }
}

fn cochain_json(c: &Cochain<'_>) -> Value {
    json!({ "degree": c.degree(), "simplices": c.support().iter().map(|s| s.to_vec()).collect::<Vec<_>>() })
}

fn betti_lines(b: &BettiMap, symbol: &str) -> String {
    b.iter().map(|(d, v)| format!("{symbol}^{d} = {v}\n")).collect()
}

fn profile_lines(p: &SteenrodProfile) -> String {
    p.entries()
        .iter()
        .map(|e| format!("Sq^{}: H^{} -> H^{} rank {}\n", e.n, e.degree, e.degree + e.n as isize, e.rank))
        .collect()
}

fn run(cli: &Cli) -> Out {
    let json_out = cli.json;
    match &cli.command {
        Command::Info { complex } => {
            let k = io::load_complex(complex)?;
            let b = betti(&k, true);
            if json_out {
                return Ok(json!({
                    "vertices": k.num_vertices(),
                    "ghost_vertices": k.ghost_vertices(),
                    "dimension": k.dimension(),
                    "f_vector": k.f_vector(),
                    "euler_characteristic": k.euler_characteristic(),
                    "connected": k.is_connected(),
                    "facets": k.facets().iter().map(|f| f.to_vec()).collect::<Vec<_>>(),
                    "reduced_betti": b,
                })
                .to_string()
                    + "\n");
            }
            let mut s = String::new();
            writeln!(s, "vertices {}", k.num_vertices()).unwrap();
            writeln!(s, "ghost vertices {:?}", k.ghost_vertices()).unwrap();
            writeln!(s, "dimension {}", k.dimension()).unwrap();
            writeln!(s, "f-vector {:?}", k.f_vector()).unwrap();
            writeln!(s, "euler characteristic {}", k.euler_characteristic()).unwrap();
            writeln!(s, "connected {}", k.is_connected()).unwrap();
            writeln!(s, "facets {}", k.facets().len()).unwrap();
            s.push_str(&betti_lines(&b, "H~"));
            Ok(s)
        }
        Command::Cohomology { complex, unreduced } => {
            let k = io::load_complex(complex)?;
            let basis = CohomologyBasis::new(&k, !unreduced);
            let symbol = if *unreduced { "H" } else { "H~" };
            if json_out {
                let reps: Vec<Value> = basis
                    .betti()
                    .keys()
                    .flat_map(|&j| basis.representatives(j).into_iter().map(|r| cochain_json(&r)).collect::<Vec<_>>())
                    .collect();
                return Ok(json!({ "betti": basis.betti(), "representatives": reps }).to_string() + "\n");
            }
            let mut s = String::new();
            for (&j, &b) in &basis.betti() {
                writeln!(s, "{symbol}^{j} = {b}").unwrap();
                for r in basis.representatives(j) {
                    writeln!(s, "  {r}").unwrap();
                }
            }
            Ok(s)
        }
        Command::Cup { complex, a, b } => {
            let k = io::load_complex(complex)?;
            let (x, y) = (load_cochain(&k, a)?, load_cochain(&k, b)?);
            let c = cup(&x, &y)?;
            Ok(if json_out { cochain_json(&c).to_string() + "\n" } else { cochain_lines(&c) })
        }
        Command::Sq { complex, n, cochain } => {
            let k = io::load_complex(complex)?;
            match cochain {
                Some(path) => {
                    let x = load_cochain(&k, path)?;
                    let y = sq_cochain(&x, *n);
                    Ok(if json_out { cochain_json(&y).to_string() + "\n" } else { cochain_lines(&y) })
                }
                None => {
                    let p = sq_profile(&k)?;
                    Ok(if json_out { json!({ "profile": p.entries() }).to_string() + "\n" } else { profile_lines(&p) })
                }
            }
        }
        Command::Sr { complex, degree, n, d, verify_ideal } => {
            let k = io::load_complex(complex)?;
            let m = sq_graded_matrix(&k, *n, *degree, *d)?;
            let source = monomial_basis(&k, degree / d);
            let target_deg = *degree + *n as u32;
            let target = if target_deg.is_multiple_of(*d) { monomial_basis(&k, target_deg / d) } else { Vec::new() };
            let images: Vec<(String, Vec<String>)> = source
                .iter()
                .enumerate()
                .map(|(c, mono)| {
                    let terms = (0..m.num_rows()).filter(|&r| m.get(r, c)).map(|r| target[r].to_string()).collect();
                    (mono.to_string(), terms)
                })
                .collect();
            let ideal = verify_ideal.map(|max| verify_a_ideal(&k, *d, max)).transpose()?;
            if json_out {
                let ideal_json = ideal.as_ref().map(|r| {
                    json!({
                        "checked": r.checked,
                        "counterexample": r.counterexample.as_ref().map(|c| json!({
                            "monomial": c.monomial.to_string(), "n": c.n, "image": c.image.to_string()
                        })),
                    })
                });
                let imgs: Vec<Value> = images.iter().map(|(s, t)| json!({ "source": s, "image": t })).collect();
                return Ok(json!({
                    "n": n, "degree": degree, "generator_degree": d,
                    "source_dim": m.num_cols(), "target_dim": m.num_rows(), "rank": m.rank(),
                    "images": imgs, "a_ideal": ideal_json,
                })
                .to_string()
                    + "\n");
            }
            let mut s = String::new();
            writeln!(s, "Sq^{n}: F[K]_{degree} -> F[K]_{target_deg} ({} -> {}), rank {}", m.num_cols(), m.num_rows(), m.rank()).unwrap();
            for (src, terms) in &images {
                let rhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
                writeln!(s, "{src} -> {rhs}").unwrap();
            }
            if let Some(r) = ideal {
                match r.counterexample {
                    None => writeln!(s, "A-ideal: ok ({} monomials)", r.checked).unwrap(),
                    Some(c) => writeln!(s, "A-ideal: fails, Sq^{} {} contains {}", c.n, c.monomial, c.image).unwrap(),
                }
            }
            Ok(s)
        }
        Command::Za { complex, profile, za } => {
            let k = io::load_complex(complex)?;
            let opts = za.options()?;
            let table = hochster_table(&k, &opts)?;
            let b = table.za_betti();
            let prof = if *profile { Some(za_sq_profile(&k, &opts)?) } else { None };
            if json_out {
                let entries: Vec<Value> =
                    table.entries.iter().map(|e| json!({ "subset": e.subset.to_vec(), "betti": e.betti })).collect();
                return Ok(json!({
                    "hochster": entries,
                    "betti": b,
                    "profile": prof.map(|p| p.aggregate.entries()),
                })
                .to_string()
                    + "\n");
            }
            let mut s = betti_lines(&b, "H");
            if let Some(p) = prof {
                s.push_str(&profile_lines(&p.aggregate));
            }
            Ok(s)
        }
        Command::Hochster { complex, za } => {
            let k = io::load_complex(complex)?;
            let table = hochster_table(&k, &za.options()?)?;
            if json_out {
                let entries: Vec<Value> =
                    table.entries.iter().map(|e| json!({ "subset": e.subset.to_vec(), "betti": e.betti })).collect();
                return Ok(json!({ "hochster": entries }).to_string() + "\n");
            }
            let mut s = String::new();
            for e in &table.entries {
                let b: Vec<String> = e.betti.iter().map(|(d, v)| format!("{d}:{v}")).collect();
                writeln!(s, "{} {{{}}}", e.subset, b.join(",")).unwrap();
            }
            Ok(s)
        }
        Command::Join { spec, labeling } => {
            let (k, pairs) = io::parse_join_spec(&read(spec)?, spec.parent())?;
            let j = polyhedral_join(&k, &pairs, (*labeling).into())?;
            Ok(complex_out(&j, json_out))
        }
        Command::Substitute { complex, complexes, labeling, predict } => {
            let k = io::load_complex(complex)?;
            let parts = load_list(complexes)?;
            let sub = substitution(&k, &parts, (*labeling).into())?;
            if !predict {
                return Ok(complex_out(&sub, json_out));
            }
            let predicted = predicted_betti_substitution(&k, &parts)?;
            let direct = betti(&sub, true);
            let pp = predicted_sq_profile_substitution(&k, &parts)?;
            let dp = sq_profile(&sub)?;
            if json_out {
                return Ok(json!({
                    "complex": io::complex_to_json_value(&sub),
                    "predicted_betti": predicted, "direct_betti": direct,
                    "predicted_profile": pp.entries(), "direct_profile": dp.entries(),
                })
                .to_string()
                    + "\n");
            }
            let mut s = io::complex_to_text(&sub);
            writeln!(s, "predicted").unwrap();
            s.push_str(&betti_lines(&predicted, "H~"));
            s.push_str(&profile_lines(&pp));
            writeln!(s, "direct").unwrap();
            s.push_str(&betti_lines(&direct, "H~"));
            s.push_str(&profile_lines(&dp));
            Ok(s)
        }
        Command::ExtendCocycle { complex, complexes, cochain, labeling, sq1 } => {
            let k = io::load_complex(complex)?;
            let parts = load_list(complexes)?;
            let x = load_cochain(&k, cochain)?;
            let sub = substitution(&k, &parts, (*labeling).into())?;
            let y = extend_cocycle_substitution(&sub, &parts, &x, (*labeling).into())?;
            let sq = sq1.then(|| sq_cochain(&y, 1));
            if json_out {
                return Ok(json!({ "cocycle": cochain_json(&y), "sq1": sq.as_ref().map(cochain_json) }).to_string() + "\n");
            }
            let mut s = cochain_lines(&y);
            if let Some(z) = sq {
                writeln!(s, "Sq^1").unwrap();
                s.push_str(&cochain_lines(&z));
            }
            Ok(s)
        }
        Command::Scan { max_vertices, full_sq, allow_long, jobs } => {
            let opts = EnumOptions { exec: Execution::from_jobs(*jobs), allow_long: *allow_long, full_sq: *full_sq };
            let t = Instant::now();
            let r = scan_sq1(*max_vertices, &opts)?;
            eprintln!("elapsed {:.3}s", t.elapsed().as_secs_f64());
            if json_out {
                return Ok(serde_json::to_string(&r)? + "\n");
            }
            let op = if *full_sq { "Sq^k" } else { "Sq^1" };
            let mut s = String::new();
            writeln!(s, "{} complexes enumerated", r.complexes).unwrap();
            writeln!(s, "{} candidates after Betti filter", r.candidates).unwrap();
            writeln!(s, "{} complexes with nontrivial {op}", r.hits.len()).unwrap();
            for h in &r.hits {
                let facets: Vec<String> = h.facets.iter().map(|f| format!("{f:?}").replace(' ', "")).collect();
                writeln!(s, "{}", facets.join(" ")).unwrap();
            }
            Ok(s)
        }
        Command::Check { seed, count } => run_check(*seed, *count, json_out),
    }
}

fn complex_out(k: &SimplicialComplex, json_out: bool) -> String {
    if json_out {
        io::complex_to_json(k) + "\n"
    } else {
        io::complex_to_text(k)
    }
}

/// Random substitution instances and random complexes, each checked against
/// an independent computation.
fn run_check(seed: u64, count: usize, json_out: bool) -> Out {
    use rand::seq::SliceRandom;
    let mut rng = corpus::rng(seed);
    let bases = corpus::connected_bases();
    let subs = corpus::substituents();
    let mut failures = Vec::new();
    let mut checked = 0;
    while checked < count {
        let (kname, k) = bases.choose(&mut rng).expect("nonempty");
        let parts: Vec<(String, SimplicialComplex)> =
            (0..k.num_vertices()).map(|_| subs.choose(&mut rng).expect("nonempty").clone()).collect();
        if parts.iter().map(|(_, c)| c.num_vertices()).sum::<usize>() > 20 {
            continue;
        }
        let complexes: Vec<SimplicialComplex> = parts.iter().map(|(_, c)| c.clone()).collect();
        let sub = substitution(k, &complexes, LabelingMode::Paper)?;
        let name = format!("{kname}<{}>", parts.iter().map(|(n, _)| n.as_str()).collect::<Vec<_>>().join(","));
        if predicted_betti_substitution(k, &complexes)? != betti(&sub, true) {
            failures.push(format!("betti {name}"));
        }
        let small = corpus::random_small_complex(&mut rng, 8);
        let zk = za_sq_profile(&small, &ZkOptions::default())?;
        if !zk.dim_bound_violations(small.dimension()).is_empty() || !zk.low_degree_sq1_violations().is_empty() {
            failures.push(format!("moment-angle bounds {:?}", small.facets()));
        }
        checked += 1;
    }
    let s = if json_out {
        json!({ "seed": seed, "instances": checked, "failures": failures }).to_string() + "\n"
    } else {
        let mut s = format!("seed {seed}: {checked} instances, {} failures\n", failures.len());
        for f in &failures {
            writeln!(s, "{f}").unwrap();
        }
        s
    };
    if failures.is_empty() {
        Ok(s)
    } else {
        print!("{s}");
        Err(Error::VerificationFailed(sqtop_core::error::VerificationFailure::NotIsomorphic))
    }
}
