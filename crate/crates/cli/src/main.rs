use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use vigor_core::orbit::{self, OrbitClass};
use vigor_core::twogen::{self, GenerationCertificate};
use vigor_core::{witness, words, Arity, ClopenSet, GroupWord, Outcome, PrefixBijection, WitnessReport};

const SCHEMA: &str = "vigor/1";

#[derive(Parser)]
#[command(name = "vigor", version, about = "Exact computation in the Higman–Thompson groups V_n")]
struct Cli {
    /// Seed for every randomized operation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args)]
struct NArg {
    #[arg(long, default_value_t = 2)]
    n: usize,
}

#[derive(Subcommand)]
enum Verb {
    /// Canonical form of a cone list.
    Canon {
        #[command(flatten)]
        n: NArg,
        #[arg(long, default_value = "")]
        cones: String,
    },
    /// First `f`, then `g`.
    Compose {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    Support {
        #[arg(long)]
        elem: String,
    },
    Order {
        #[arg(long)]
        elem: String,
        #[arg(long, default_value_t = vigor_core::DEFAULT_ORDER_BOUND)]
        bound: u64,
    },
    #[command(subcommand)]
    Witness(WitnessVerb),
    #[command(subcommand)]
    Factor(FactorVerb),
    /// Glue pieces given as a JSON list of `{"set": …, "element": …}`.
    Glue {
        #[arg(long)]
        pieces: String,
    },
    #[command(subcommand)]
    Homology(HomologyVerb),
    #[command(subcommand)]
    Free(FreeVerb),
    #[command(subcommand)]
    Laws(LawsVerb),
    /// Two-generator pipeline.
    Twogen {
        #[command(flatten)]
        n: NArg,
        #[arg(long, default_value_t = 2)]
        order: u64,
        /// Generation certificate to use instead of searching.
        #[arg(long)]
        cert: Option<String>,
        #[arg(long, default_value_t = 6)]
        bfs_depth: u32,
        /// Number of (psi, omega) pairs sought.
        #[arg(long, default_value_t = 2)]
        j: usize,
        /// Emit only the generation certificate.
        #[arg(long)]
        generation_only: bool,
        #[arg(long)]
        out: Option<String>,
    },
    /// Re-check any certificate, dispatching on its `kind`.
    Verify { path: String },
}

#[derive(Subcommand)]
enum WitnessVerb {
    Vigorous {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
    },
    Flexible {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
    },
    MovedSet {
        #[arg(long)]
        elem: String,
    },
    Minime {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        i: String,
        #[arg(long)]
        k: String,
        #[arg(long)]
        elem: String,
    },
    NormalClosure {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        j: String,
    },
    /// Realize a block permutation; translates are element JSON separated by `;`.
    Even {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        c: String,
        #[arg(long, value_delimiter = ';')]
        translates: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        perm: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum FactorVerb {
    Ssgp {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        elem: String,
        #[arg(long)]
        u: String,
    },
    Split {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        elem: String,
        #[arg(long)]
        l: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        d: String,
    },
    Acd {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        elem: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        c: String,
        #[arg(long)]
        d: String,
    },
    SmallSupport {
        #[arg(long)]
        elem: String,
    },
}

#[derive(Subcommand)]
enum HomologyVerb {
    Class {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        set: String,
    },
    Add {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    Inverse {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        set: String,
    },
    /// Partition of the space into blocks with the given residues.
    Partition {
        #[command(flatten)]
        n: NArg,
        #[arg(long, value_delimiter = ',')]
        targets: Vec<usize>,
    },
    /// Whether `a` and `b` lie in one orbit, with the carrying element.
    Witness {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
}

#[derive(Subcommand)]
enum FreeVerb {
    Pingpong {
        #[command(flatten)]
        n: NArg,
        #[arg(long, default_value_t = words::DEFAULT_WORD_DEPTH)]
        depth: u32,
    },
}

#[derive(Subcommand)]
enum LawsVerb {
    Witness {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        word: String,
    },
    /// Values of a word on seeded random tuples fixing `a` pointwise.
    Sample {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        word: String,
        #[arg(long)]
        a: String,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
}

/// Malformed input or an unmet precondition.
struct Bad(String);

impl From<vigor_core::Error> for Bad {
    fn from(e: vigor_core::Error) -> Self {
        Bad(e.to_string())
    }
}

type Out = Result<(Value, u8), Bad>;

fn arity(a: &NArg) -> Result<Arity, Bad> {
    Ok(Arity::new(a.n)?)
}

fn set(a: &NArg, cones: &str) -> Result<ClopenSet, Bad> {
    let list: Vec<&str> = cones.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    Ok(ClopenSet::parse(arity(a)?, &list)?)
}

/// Inline JSON when it starts with `{` or `[`, otherwise a file path.
fn json_text(src: &str) -> Result<String, Bad> {
    let t = src.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        Ok(src.to_string())
    } else {
        fs::read_to_string(src).map_err(|e| Bad(format!("cannot read {src}: {e}")))
    }
}

fn load<T: serde::de::DeserializeOwned>(src: &str) -> Result<T, Bad> {
    serde_json::from_str(&json_text(src)?).map_err(|e| Bad(format!("cannot decode {src}: {e}")))
}

fn value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn report(r: WitnessReport) -> Out {
    for c in r.failed() {
        eprintln!("failed: {}", c.desc);
    }
    let code = if r.all_pass { 0 } else { 1 };
    Ok((value(&r), code))
}

fn run(cli: Cli) -> Out {
    match cli.verb {
        Verb::Canon { n, cones } => Ok((json!({ "cones": value(&set(&n, &cones)?)["cones"] }), 0)),
        Verb::Compose { f, g } => {
            let (f, g): (PrefixBijection, PrefixBijection) = (load(&f)?, load(&g)?);
            Ok((value(&f.compose(&g)?), 0))
        }
        Verb::Support { elem } => {
            let g: PrefixBijection = load(&elem)?;
            Ok((json!({ "support": value(&g.support()) }), 0))
        }
        Verb::Order { elem, bound } => {
            let g: PrefixBijection = load(&elem)?;
            Ok(match g.order(bound).finite() {
                Some(k) => (json!({ "order": k }), 0),
                None => (json!({ "order": null, "exceeds_bound": bound }), 2),
            })
        }
        Verb::Witness(w) => witness_verb(w),
        Verb::Factor(f) => factor_verb(f),
        Verb::Glue { pieces } => {
            #[derive(serde::Deserialize)]
            struct Piece {
                set: ClopenSet,
                element: PrefixBijection,
            }
            let ps: Vec<Piece> = load(&pieces)?;
            let ps: Vec<(ClopenSet, PrefixBijection)> = ps.into_iter().map(|p| (p.set, p.element)).collect();
            report(witness::glue(&ps)?)
        }
        Verb::Homology(h) => homology_verb(h),
        Verb::Free(FreeVerb::Pingpong { n, depth }) => {
            let cert = words::pingpong_pair(&words::default_blocks(arity(&n)?), depth)?;
            let code = if cert.verdict == "certified" { 0 } else { 1 };
            Ok((value(&cert), code))
        }
        Verb::Laws(LawsVerb::Witness { n, word }) => {
            let w: GroupWord = word.parse()?;
            let cert = vigor_core::LawlessnessCertificate::new(arity(&n)?, &w)?;
            let code = if cert.conditions.iter().all(|c| c.pass) { 0 } else { 1 };
            Ok((value(&cert), code))
        }
        Verb::Laws(LawsVerb::Sample { n, word, a, count }) => {
            let w: GroupWord = word.parse()?;
            let values = words::verbal_small_sample(&w, &set(&n, &a)?, cli.seed, count)?;
            Ok((json!({ "word": w.to_string(), "seed": cli.seed, "values": value(&values) }), 0))
        }
        Verb::Twogen { n, order, cert, bfs_depth, j, generation_only, out } => {
            let ar = arity(&n)?;
            let generation: GenerationCertificate = match cert {
                Some(src) => load(&src)?,
                None => {
                    let (c, d) = twogen::choose_c_d(ar)?;
                    let support = c.union(&d)?;
                    let targets = twogen::default_targets(&support)?;
                    twogen::generation_certificate_search(&support, order, &targets, j, bfs_depth)?
                }
            };
            let (body, status, failed) = if generation_only {
                let failed: Vec<String> = generation.conditions.iter().filter(|c| !c.pass).map(|c| c.desc.clone()).collect();
                let status = if failed.is_empty() { generation.status.clone() } else { "failed".into() };
                (value(&generation), status, failed)
            } else {
                let cert = twogen::build_two_generators(ar, order, &generation)?;
                let failed = cert.identity_checks.iter().filter(|c| !c.pass).map(|c| c.desc.clone()).collect();
                (value(&cert), cert.status, failed)
            };
            for desc in &failed {
                eprintln!("failed: {desc}");
            }
            let code = match status.as_str() {
                "verified" => 0,
                "inconclusive" => 2,
                _ => 1,
            };
            match out {
                Some(path) => {
                    let text = render(body)?;
                    fs::write(&path, text).map_err(|e| Bad(format!("cannot write {path}: {e}")))?;
                    Ok((json!({ "written": path, "status": status }), code))
                }
                None => Ok((body, code)),
            }
        }
        Verb::Verify { path } => {
            let verdict = vigor_core::verify_str(&json_text(&path)?)?;
            for c in verdict.failed() {
                eprintln!("failed: {}", c.desc);
            }
            let (outcome, code) = match verdict.outcome {
                Outcome::Pass => ("pass", 0),
                Outcome::Fail => ("fail", 1),
                Outcome::Inconclusive => ("inconclusive", 2),
            };
            let failed: Vec<&str> = verdict.failed().map(|c| c.desc.as_str()).collect();
            Ok((
                json!({
                    "kind": verdict.kind,
                    "outcome": outcome,
                    "checked": verdict.conditions.len(),
                    "failed": failed,
                }),
                code,
            ))
        }
    }
}

fn witness_verb(w: WitnessVerb) -> Out {
    match w {
        WitnessVerb::Vigorous { n, a, b, c } => report(witness::vigorous_witness(&set(&n, &a)?, &set(&n, &b)?, &set(&n, &c)?)?),
        WitnessVerb::Flexible { n, a, b, c } => {
            report(witness::flexible_to_vigorous_witness(&set(&n, &a)?, &set(&n, &b)?, &set(&n, &c)?)?)
        }
        WitnessVerb::MovedSet { elem } => report(witness::moved_set_witness(&load(&elem)?)?),
        WitnessVerb::Minime { n, i, k, elem } => {
            report(witness::minime_shrink_witness(&set(&n, &i)?, &set(&n, &k)?, &load(&elem)?)?)
        }
        WitnessVerb::NormalClosure { n, delta, mu, nu, j } => {
            report(witness::normal_closure_trick(&load(&delta)?, &load(&mu)?, &load(&nu)?, &set(&n, &j)?)?)
        }
        WitnessVerb::Even { n, c, translates, perm } => {
            let ts: Vec<PrefixBijection> = translates.iter().map(|t| load(t)).collect::<Result<_, _>>()?;
            report(twogen::even_realization(&set(&n, &c)?, &ts, &perm)?)
        }
    }
}

fn factor_verb(f: FactorVerb) -> Out {
    match f {
        FactorVerb::Ssgp { n, elem, u } => report(witness::ssgp_factor(&load(&elem)?, &set(&n, &u)?)?),
        FactorVerb::Split { n, elem, l, c, d } => {
            report(witness::split_by_stabilisers(&load(&elem)?, &set(&n, &l)?, &set(&n, &c)?, &set(&n, &d)?)?)
        }
        FactorVerb::Acd { n, elem, a, c, d } => {
            report(witness::acd_factor(&load(&elem)?, &set(&n, &a)?, &set(&n, &c)?, &set(&n, &d)?)?)
        }
        FactorVerb::SmallSupport { elem } => report(witness::small_support_factor(&load(&elem)?)?),
    }
}

fn homology_verb(h: HomologyVerb) -> Out {
    match h {
        HomologyVerb::Class { n, set: s } => Ok((json!({ "class": value(&orbit::class_of(&set(&n, &s)?)?) }), 0)),
        HomologyVerb::Add { n, u, v } => report(orbit::set_add(&set(&n, &u)?, &set(&n, &v)?)?),
        HomologyVerb::Inverse { n, set: s } => report(orbit::inverse_witness(&set(&n, &s)?)?.1),
        HomologyVerb::Partition { n, targets } => {
            let ar = arity(&n)?;
            let ts: Vec<OrbitClass> = targets.iter().map(|&r| OrbitClass::new(ar, r)).collect::<Result<_, _>>()?;
            report(orbit::partition_witness(ar, &ts)?)
        }
        HomologyVerb::Witness { n, a, b } => report(orbit::orbit_witness(&set(&n, &a)?, &set(&n, &b)?)?),
    }
}

fn render(body: Value) -> Result<String, Bad> {
    let Value::Object(mut map) = body else {
        return Err(Bad("output is not an object".into()));
    };
    map.insert("schema".into(), Value::String(SCHEMA.into()));
    Ok(serde_json::to_string_pretty(&Value::Object(map)).expect("serializable") + "\n")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli).and_then(|(body, code)| Ok((render(body)?, code))) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(Bad(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
