//! The `pcml` command line: argument parsing and command dispatch.
//!
//! [`run`] turns parsed arguments into an [`Outcome`] (exit code plus the
//! text for stdout and stderr) so the binary stays a thin wrapper.

pub mod sample;

use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use pcml_core::equivalence::decide_universal_equivalence;
use pcml_core::hom::{find_injective_phi, closure, GraphMap, GraphMapSpec, PhiSearch, PhiSite, DEFAULT_PHI_BOUND};
use pcml_core::oracle::QuotientComponent;
use pcml_core::structure::{
    annihilator_generators, centralizer_description, centralizer_intersection_check, in_annihilator,
    in_centralizer, phi_formula_witness, two_nonendpoint_witness, WitnessReport,
};
use pcml_core::{parse_comm, parse_lie, Graph, LiePoly, MultiDegree, PCAlgebra, Vertex};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Parser)]
#[command(name = "pcml", version, about = "Partially commutative metabelian Lie rings over the integers")]
pub struct Cli {
    /// Print JSON instead of the plain line protocol
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GraphArg {
    /// Graph file with `vertices N` and `edge I J` lines
    #[arg(short = 'g', long = "graph", value_name = "FILE")]
    pub graph: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Formula {
    /// The formula separating trees with different T*
    Phi,
    /// The induced path through two adjacent non-endpoints
    Two,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical form of an expression
    Nf {
        #[command(flatten)]
        g: GraphArg,
        expr: String,
    },
    /// Whether two expressions are equal
    Eq {
        #[command(flatten)]
        g: GraphArg,
        lhs: String,
        rhs: String,
    },
    /// Canonical form of [P, Q]
    Bracket {
        #[command(flatten)]
        g: GraphArg,
        p: String,
        q: String,
    },
    /// Canonical form of U.F for U in the derived subalgebra
    Act {
        #[command(flatten)]
        g: GraphArg,
        u: String,
        f: String,
    },
    /// Basis monomials by multidegree
    Basis {
        #[command(flatten)]
        g: GraphArg,
        /// Largest total degree
        #[arg(long, default_value_t = 3)]
        degree: u32,
        /// A single multidegree, e.g. `1,0,1,1`
        #[arg(long, conflicts_with = "degree")]
        multidegree: Option<String>,
    },
    /// Annihilator of [xI, xJ]
    Ann {
        #[command(flatten)]
        g: GraphArg,
        i: Vertex,
        j: Vertex,
        /// Also test membership of this commutative polynomial
        #[arg(long)]
        poly: Option<String>,
    },
    /// Centralizer of a generator, or the check for a linear combination
    Cent {
        #[command(flatten)]
        g: GraphArg,
        x: Option<Vertex>,
        /// Element to test against the centralizer
        #[arg(long)]
        element: Option<String>,
        /// Linear combination `v:a,...`, e.g. `2:1,3:-1`; needs --element
        #[arg(long, requires = "element", conflicts_with = "x")]
        combination: Option<String>,
    },
    /// Universal equivalence of two tree-defined rings
    Ueq {
        #[arg(long, value_name = "FILE")]
        g1: PathBuf,
        #[arg(long, value_name = "FILE")]
        g2: PathBuf,
        /// Print the canonical forms of both T*
        #[arg(long)]
        certificate: bool,
    },
    /// T* of a tree (T' with --prime) in graph file format
    Tstar {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long)]
        prime: bool,
    },
    /// Apply a homomorphism, or search for an injective phi map
    Phi {
        #[command(flatten)]
        g: GraphArg,
        /// Map spec file
        #[arg(long, value_name = "FILE", conflicts_with_all = ["find", "lambda", "p"])]
        spec: Option<PathBuf>,
        #[arg(long)]
        endpoint: Option<Vertex>,
        #[arg(long, requires = "endpoint")]
        sib1: Option<Vertex>,
        #[arg(long, requires = "endpoint")]
        sib2: Option<Vertex>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<BigInt>,
        #[arg(long, allow_hyphen_values = true)]
        p: Option<BigInt>,
        /// Search for the smallest (p, lambda) keeping the expressions apart
        #[arg(long)]
        find: bool,
        /// Search bound for p and lambda
        #[arg(long, env = "PCML_MAX_SEARCH", default_value_t = DEFAULT_PHI_BOUND)]
        bound: u64,
        exprs: Vec<String>,
    },
    /// Witness assignment for an existential formula
    Witness {
        #[command(flatten)]
        g: GraphArg,
        #[arg(long, value_enum, default_value_t = Formula::Phi)]
        formula: Formula,
    },
    /// Certify the basis against the brute-force quotient model
    OracleCheck {
        #[command(flatten)]
        g: GraphArg,
        /// Largest total degree
        #[arg(long, default_value_t = 4)]
        degree: u32,
        /// Random equality checks to run as well
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    text: String,
    json: Value,
    code: i32,
    warnings: Vec<String>,
}

impl Report {
    fn new(text: String, json: Value) -> Self {
        Report { text, json, code: 0, warnings: Vec::new() }
    }

    fn code(mut self, code: i32) -> Self {
        self.code = code;
        self
    }
}

#[derive(Debug)]
struct Failure(String);

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<pcml_core::Error> for Failure {
    fn from(e: pcml_core::Error) -> Self {
        Failure(e.to_string())
    }
}

type Fallible<T> = Result<T, Failure>;

pub fn run(cli: &Cli) -> Outcome {
    match execute(&cli.command) {
        Ok(report) => {
            let mut stdout = if cli.json {
                serde_json::to_string_pretty(&report.json).expect("values serialize")
            } else {
                report.text
            };
            if !stdout.is_empty() && !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            let stderr = report.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
            Outcome { code: report.code, stdout, stderr }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn load_graph(path: &Path) -> Fallible<Graph> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
    Graph::parse(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn algebra(g: &GraphArg) -> Fallible<PCAlgebra> {
    Ok(PCAlgebra::new(load_graph(&g.graph)?))
}

fn element(alg: &PCAlgebra, text: &str) -> Fallible<LiePoly> {
    let expr = parse_lie(text).map_err(|e| Failure(format!("in `{text}`: {e}")))?;
    Ok(alg.normal_form(&expr)?)
}

fn execute(command: &Command) -> Fallible<Report> {
    match command {
        Command::Nf { g, expr } => {
            let p = element(&algebra(g)?, expr)?;
            Ok(Report::new(p.to_string(), json!({ "normal_form": p.to_string() })))
        }
        Command::Eq { g, lhs, rhs } => {
            let alg = algebra(g)?;
            let (a, b) = (element(&alg, lhs)?, element(&alg, rhs)?);
            let equal = a == b;
            let text = if equal { "equal" } else { "not equal" };
            Ok(Report::new(
                text.into(),
                json!({ "equal": equal, "lhs": a.to_string(), "rhs": b.to_string() }),
            ))
        }
        Command::Bracket { g, p, q } => {
            let alg = algebra(g)?;
            let r = alg.bracket(&element(&alg, p)?, &element(&alg, q)?);
            Ok(Report::new(r.to_string(), json!({ "normal_form": r.to_string() })))
        }
        Command::Act { g, u, f } => {
            let alg = algebra(g)?;
            let u = element(&alg, u)?;
            let f = parse_comm(f).map_err(|e| Failure(format!("in `{f}`: {e}")))?;
            alg.check_comm(&f)?;
            let r = alg.act(&u, &f)?;
            Ok(Report::new(r.to_string(), json!({ "normal_form": r.to_string() })))
        }
        Command::Basis { g, degree, multidegree } => basis(&algebra(g)?, *degree, multidegree.as_deref()),
        Command::Ann { g, i, j, poly } => {
            let alg = algebra(g)?;
            alg.graph().check_vertex(*i)?;
            alg.graph().check_vertex(*j)?;
            let ideal = annihilator_generators(&alg, *i, *j)?;
            let mut text = format!("generators: {ideal}");
            let gens: Vec<String> = ideal.generators.iter().map(ToString::to_string).collect();
            let mut out = json!({ "pair": [i, j], "generators": gens });
            if let Some(f) = poly {
                let f = parse_comm(f).map_err(|e| Failure(format!("in `{f}`: {e}")))?;
                alg.check_comm(&f)?;
                let member = in_annihilator(&alg, *i, *j, &f)?;
                write!(text, "\nmember: {member}").unwrap();
                out["member"] = json!(member);
            }
            Ok(Report::new(text, out))
        }
        Command::Cent { g, x, element: elem, combination } => {
            let alg = algebra(g)?;
            if let Some(comb) = combination {
                let comb = parse_combination(comb)?;
                let c = element(&alg, elem.as_deref().expect("clap requires --element"))?;
                let (lhs, rhs) = centralizer_intersection_check(&alg, &comb, &c)?;
                let text = format!("combination: {lhs}\nevery generator: {rhs}\nagree: {}", lhs == rhs);
                return Ok(Report::new(
                    text,
                    json!({ "combination": lhs, "every_generator": rhs, "agree": lhs == rhs }),
                ));
            }
            let x = x.ok_or_else(|| Failure("give a generator index or --combination".into()))?;
            let d = centralizer_description(&alg, x)?;
            let mut text = d.to_string();
            let quad: Vec<String> = d.quadratic.iter().map(|(i, j)| format!("[x{j},x{i}]")).collect();
            let mut out = json!({
                "target": x,
                "case": d.case.to_string(),
                "linear": d.linear,
                "quadratic": quad,
            });
            if let Some(e) = elem {
                let v = element(&alg, e)?;
                let c = in_centralizer(&alg, &LiePoly::generator(x), &v);
                write!(text, "\ncentralizes: {c}").unwrap();
                out["centralizes"] = json!(c);
            }
            Ok(Report::new(text, out))
        }
        Command::Ueq { g1, g2, certificate } => {
            let v = decide_universal_equivalence(&load_graph(g1)?, &load_graph(g2)?)?;
            let text = if *certificate {
                v.to_string()
            } else {
                (if v.equivalent { "equivalent" } else { "inequivalent" }).to_string()
            };
            let out = json!({
                "equivalent": v.equivalent,
                "certificate": [v.certificate.0, v.certificate.1],
                "t_prime": [v.t_prime.0, v.t_prime.1],
            });
            Ok(Report::new(text, out).code(if v.equivalent { 0 } else { 1 }))
        }
        Command::Tstar { g, prime } => {
            let t = load_graph(&g.graph)?;
            let r = if *prime { t.t_prime()? } else { t.t_star()? };
            let canonical = r.graph.tree_canonical_form()?;
            let origin: Vec<String> = r.origin.iter().map(|v| format!("x{v}")).collect();
            let mut text = r.graph.to_text();
            writeln!(text, "# origin {}", if origin.is_empty() { "none".into() } else { origin.join(" ") }).unwrap();
            write!(text, "# canonical {canonical}").unwrap();
            let edges: Vec<[Vertex; 2]> = r.graph.edges().into_iter().map(|(a, b)| [a, b]).collect();
            Ok(Report::new(
                text,
                json!({ "vertices": r.graph.n(), "edges": edges, "origin": r.origin, "canonical": canonical }),
            ))
        }
        Command::Phi { g, spec, endpoint, sib1, sib2, lambda, p, find, bound, exprs } => {
            let alg = algebra(g)?;
            let site = match endpoint {
                None => None,
                Some(e) => Some(phi_site(alg.graph(), *e, *sib1, *sib2)?),
            };
            if *find {
                let gamma = exprs.iter().map(|e| element(&alg, e)).collect::<Fallible<Vec<_>>>()?;
                let site = match site {
                    Some(s) => s,
                    None => PhiSite::auto(alg.graph())?,
                };
                return phi_search(&alg, site, &gamma, *bound);
            }
            let spec = match (spec, site) {
                (Some(path), None) => {
                    let text = fs::read_to_string(path)
                        .map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))?;
                    GraphMapSpec::parse(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))?
                }
                (None, Some(site)) => {
                    let (Some(l), Some(p)) = (lambda, p) else {
                        return Err(Failure("--lambda and --p are required with --endpoint".into()));
                    };
                    site.spec(l.clone(), p.clone())
                }
                (Some(_), Some(_)) => return Err(Failure("give either --spec or --endpoint".into())),
                (None, None) => return Err(Failure("give --spec FILE, --endpoint, or --find".into())),
            };
            apply_map(&alg, &spec, exprs)
        }
        Command::Witness { g, formula } => {
            let t = load_graph(&g.graph)?;
            let report = match formula {
                Formula::Phi => phi_formula_witness(&t)?,
                Formula::Two => two_nonendpoint_witness(&t)?
                    .ok_or_else(|| Failure("tree has fewer than two non-endpoints".into()))?,
            };
            let code = if report.verified() { 0 } else { 1 };
            Ok(Report::new(report.to_string(), witness_json(&report)).code(code))
        }
        Command::OracleCheck { g, degree, samples, seed } => oracle_check(&load_graph(&g.graph)?, *degree, *samples, *seed),
    }
}

fn parse_multidegree(text: &str, n: usize) -> Fallible<MultiDegree> {
    let counts = text
        .split(',')
        .map(|w| w.trim().parse::<u32>().map_err(|_| Failure(format!("bad multidegree entry `{w}`"))))
        .collect::<Fallible<Vec<_>>>()?;
    if counts.len() != n {
        return Err(Failure(format!("multidegree has {} entries, the graph has {n} vertices", counts.len())));
    }
    Ok(MultiDegree::from_counts(counts))
}

fn basis(alg: &PCAlgebra, degree: u32, single: Option<&str>) -> Fallible<Report> {
    let groups = match single {
        Some(text) => {
            let d = parse_multidegree(text, alg.n())?;
            let b = alg.basis_for_multidegree(&d);
            vec![(d, b)]
        }
        None => alg.enumerate_basis(degree),
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut count = 0;
    for (d, ms) in &groups {
        let names: Vec<String> = ms.iter().map(ToString::to_string).collect();
        count += names.len();
        writeln!(text, "{d} {}", if names.is_empty() { "none".into() } else { names.join(" ") }).unwrap();
        rows.push(json!({ "multidegree": d.counts(), "basis": names }));
    }
    write!(text, "count {count}").unwrap();
    Ok(Report::new(text, json!({ "components": rows, "count": count })))
}

fn parse_combination(text: &str) -> Fallible<Vec<(Vertex, BigInt)>> {
    text.split(',')
        .map(|item| {
            let bad = || Failure(format!("bad combination entry `{item}`, expected `v:a`"));
            let (v, a) = item.split_once(':').ok_or_else(bad)?;
            Ok((v.trim().parse().map_err(|_| bad())?, a.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

fn phi_site(g: &Graph, endpoint: Vertex, sib1: Option<Vertex>, sib2: Option<Vertex>) -> Fallible<PhiSite> {
    g.check_vertex(endpoint)?;
    let (sib1, sib2) = match (sib1, sib2) {
        (Some(a), Some(b)) => (a, b),
        (None, None) => {
            let center = *g
                .neighbors(endpoint)
                .first()
                .ok_or_else(|| Failure(format!("x{endpoint} is isolated")))?;
            let sibs: Vec<Vertex> = g.neighbors(center).iter().copied().filter(|&v| v != endpoint).collect();
            match sibs[..] {
                [a, b, ..] => (a, b),
                _ => return Err(Failure(format!("x{endpoint} is not an unnecessary endpoint"))),
            }
        }
        _ => return Err(Failure("give both --sib1 and --sib2 or neither".into())),
    };
    Ok(PhiSite { endpoint, sib1, sib2 })
}

fn phi_search(alg: &PCAlgebra, site: PhiSite, gamma: &[LiePoly], bound: u64) -> Fallible<Report> {
    let size = closure(alg, gamma)?.len();
    let site_text = format!("site endpoint=x{} sib1=x{} sib2=x{}", site.endpoint, site.sib1, site.sib2);
    let site_json = json!({ "endpoint": site.endpoint, "sib1": site.sib1, "sib2": site.sib2 });
    match find_injective_phi(alg, site, gamma, bound)? {
        PhiSearch::Found { lambda, p } => Ok(Report::new(
            format!("{site_text}\nclosure {size}\nfound lambda={lambda} p={p}"),
            json!({ "site": site_json, "closure": size, "found": true, "lambda": lambda, "p": p }),
        )),
        PhiSearch::NotFound { bound } => Ok(Report::new(
            format!("{site_text}\nclosure {size}\nnot found bound={bound}"),
            json!({ "site": site_json, "closure": size, "found": false, "bound": bound }),
        )
        .code(1)),
    }
}

fn apply_map(alg: &PCAlgebra, spec: &GraphMapSpec, exprs: &[String]) -> Fallible<Report> {
    let map = GraphMap::new(alg.graph(), spec)?;
    let mut text = map.target().graph().to_text();
    text.push_str(&map.to_string());
    let images: Vec<String> = alg.graph().vertices().map(|v| map.image_of(v).to_string()).collect();
    let mut applied = Vec::new();
    for e in exprs {
        let image = map.apply(&element(alg, e)?);
        writeln!(text, "{e} => {image}").unwrap();
        applied.push(json!({ "expr": e, "image": image.to_string() }));
    }
    let target = map.target().graph();
    let edges: Vec<[Vertex; 2]> = target.edges().into_iter().map(|(a, b)| [a, b]).collect();
    let mut report = Report::new(
        text.trim_end().to_string(),
        json!({
            "target": { "vertices": target.n(), "edges": edges },
            "images": images,
            "applied": applied,
            "warnings": map.warnings(),
        }),
    );
    report.warnings = map.warnings().to_vec();
    Ok(report)
}

fn witness_json(r: &WitnessReport) -> Value {
    let assignment: serde_json::Map<String, Value> =
        r.assignment.iter().map(|(name, v)| (name.clone(), json!(v))).collect();
    let conjuncts: Vec<Value> = r
        .conjuncts
        .iter()
        .map(|c| json!({ "expr": c.expr, "expected": c.expected, "got": c.got }))
        .collect();
    json!({ "assignment": assignment, "conjuncts": conjuncts, "verified": r.verified() })
}

fn oracle_check(g: &Graph, degree: u32, samples: usize, seed: u64) -> Fallible<Report> {
    use rand::seq::SliceRandom;

    let alg = PCAlgebra::new(g.clone());
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut certified = 0;
    let mut components = Vec::new();
    for d in MultiDegree::all_up_to(g.n(), degree) {
        if d.total() == 0 {
            continue;
        }
        let qc = QuotientComponent::build(g, &d);
        let basis: Vec<LiePoly> = alg
            .basis_for_multidegree(&d)
            .into_iter()
            .map(|m| LiePoly::term(m, 1))
            .collect();
        let det = qc.basis_determinant(&basis)?;
        let ok = det.as_ref().is_some_and(|x| x.abs().is_one());
        certified += usize::from(ok);
        let det_text = det.as_ref().map_or("none".to_string(), ToString::to_string);
        writeln!(
            text,
            "DELTA {d} RANK {} BASIS {} DET {det_text} {}",
            qc.rank(),
            basis.len(),
            if ok { "OK" } else { "FAIL" }
        )
        .unwrap();
        rows.push(json!({
            "multidegree": d.counts(),
            "rank": qc.rank(),
            "basis": basis.len(),
            "determinant": det_text,
            "ok": ok,
        }));
        components.push(qc);
    }
    let total = components.len();
    write!(text, "COMPONENTS {total} CERTIFIED {certified}").unwrap();
    let mut out = json!({ "components": rows, "total": total, "certified": certified });
    let mut all_ok = certified == total;
    if samples > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nontrivial: Vec<&QuotientComponent> = components.iter().filter(|c| c.multidegree().total() >= 2).collect();
        let mut agree = 0;
        if !nontrivial.is_empty() {
            for k in 0..samples {
                let qc = *nontrivial.choose(&mut rng).expect("nonempty");
                let d = qc.multidegree();
                let p = sample::homogeneous(&mut rng, d, 4, 9);
                let q = if k % 2 == 0 {
                    &p + &sample::ideal_element(&mut rng, g, d, 3, 9)
                } else {
                    sample::homogeneous(&mut rng, d, 4, 9)
                };
                let by_nf = alg.reduce(&p) == alg.reduce(&q);
                let by_oracle = qc.coordinates(&p)? == qc.coordinates(&q)?;
                agree += usize::from(by_nf == by_oracle);
            }
        } else {
            agree = samples;
        }
        all_ok &= agree == samples;
        write!(text, "\nSAMPLES {samples} AGREE {agree} SEED {seed}").unwrap();
        out["samples"] = json!({ "count": samples, "agree": agree, "seed": seed });
    }
    Ok(Report::new(text, out).code(if all_ok { 0 } else { 1 }))
}
