//! Command-line front end. [`run`] returns the rendered document and an
//! exit status so the binary stays a thin wrapper.
//!
//! Exit status: 0 when every check passed, 1 when a verifiable identity or
//! claim failed (the counterexample is in the document), 2 on usage errors.

use std::ffi::OsString;
use std::fmt::Display;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::conjecture::check_star_sequences;
use crate::digraph::{
    for_each_function, is_gracefully_labeled, EdgeLabelSequence, FunctionalDigraph,
};
use crate::expansion::{
    count_valid_gammas, enumerate_sp, enumerate_valid_gammas, sp_sum_identity_check, tau_bounds,
    tau_bruteforce, IdentityCheck,
};
use crate::genfun::{
    check_f_properties, check_p_properties, compute_f, compute_f_bruteforce, compute_p,
    compute_p_bruteforce, encode_sequence, tdmtt_check, Family,
};
use crate::matrix::{IntMatrix, PolyMatrix, Ring};
use crate::neighbors::{completeness_check, neighbors_via_expansion, ExpansionFamily};
use crate::polyring::SparsePoly;
use crate::whitty::{calibrate, whitty_check, Calibration, SignFactor, WhittyReport};

/// Random matrices draw entries from `[ENTRY_LO, ENTRY_HI]`.
pub const ENTRY_LO: i64 = 1;
pub const ENTRY_HI: i64 = 50;

/// Largest `n` for each kind of work.
const SCAN_MAX: usize = 7;
const DET_MAX: usize = 10;
const COUNT_MAX: usize = 12;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "graceful",
    version,
    about = "Gracefully labeled functional digraphs: enumeration and identity checks"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Cap on the number of listed items.
    #[arg(long, global = true)]
    pub limit: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    F,
    P,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Sign {
    Printed,
    Oriented,
}

#[derive(Args, Debug, Clone)]
pub struct GraphArg {
    /// Digraph as `n:f0,f1,...`.
    #[arg(long)]
    pub graph: FunctionalDigraph,
}

#[derive(Args, Debug, Clone)]
pub struct SizeArg {
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug, Clone)]
pub struct SeededArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Sorted edge label sequence of a digraph.
    Labels(GraphArg),
    /// Whether a digraph is gracefully labeled, and whether it is graceful.
    Graceful(GraphArg),
    /// Distinct gracefully labeled conjugates.
    Grl(GraphArg),
    /// Valid γ permutations and their count.
    Gammas(SizeArg),
    /// Signed permutations and the matching sum identity on a random matrix.
    Sp(SeededArgs),
    /// Digraphs without isolated vertices against the counting bounds.
    Tau(SizeArg),
    /// Label-sequence generating function.
    Genfun {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        n: usize,
        /// Compare with the brute-force polynomial.
        #[arg(long)]
        oracle: bool,
    },
    /// Coefficient of one label sequence.
    Coeff {
        /// Sorted labels `l0,l1,...`.
        #[arg(long)]
        sequence: EdgeLabelSequence,
        #[arg(long, value_enum, default_value_t = Which::F)]
        which: Which,
        #[arg(long)]
        oracle: bool,
    },
    /// Structural claims about a generating function.
    Props {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        n: usize,
    },
    /// Directed matrix-tree identity.
    Tdmtt {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use an indeterminate matrix instead of a random one.
        #[arg(long)]
        symbolic: bool,
    },
    /// Signed determinantal sum over graceful trees rooted at 0.
    Whitty {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        symbolic: bool,
        #[arg(long, value_enum, default_value_t = Sign::Printed)]
        sign: Sign,
    },
    /// Graceful digraphs one sign flip away.
    Neighbors {
        #[arg(long)]
        graph: FunctionalDigraph,
        /// Compare with the brute-force neighbor scan.
        #[arg(long)]
        oracle: bool,
    },
    /// Star sequences against every tree class.
    Conjecture(SizeArg),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    CheckFailed = 1,
    Usage = 2,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: Status,
    pub document: String,
}

/// Text lines plus the structured equivalent.
struct Doc {
    lines: Vec<String>,
    data: Value,
    ok: bool,
}

type Usage = String;

fn require(n: usize, lo: usize, hi: usize, what: &str) -> Result<(), Usage> {
    if (lo..=hi).contains(&n) {
        Ok(())
    } else {
        Err(format!(
            "{what}: n = {n} is outside the supported range {lo}..={hi}"
        ))
    }
}

fn take<T>(items: impl IntoIterator<Item = T>, limit: Option<usize>) -> Vec<T> {
    items
        .into_iter()
        .take(limit.unwrap_or(usize::MAX))
        .collect()
}

fn strings<T: Display>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    items.into_iter().map(|x| x.to_string()).collect()
}

pub fn run_from_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config),
        Err(e) => Outcome {
            status: if e.use_stderr() {
                Status::Usage
            } else {
                Status::Ok
            },
            document: e.render().to_string(),
        },
    }
}

pub fn run(config: &RunConfig) -> Outcome {
    match dispatch(&config.command, config.limit) {
        Ok(doc) => Outcome {
            status: if doc.ok {
                Status::Ok
            } else {
                Status::CheckFailed
            },
            document: match config.format {
                Format::Text => doc.lines.join("\n") + "\n",
                Format::Structured => {
                    serde_json::to_string_pretty(&doc.data).expect("json values serialize") + "\n"
                }
            },
        },
        Err(message) => Outcome {
            status: Status::Usage,
            document: format!("error: {message}\n"),
        },
    }
}

fn dispatch(command: &Command, limit: Option<usize>) -> Result<Doc, Usage> {
    match command {
        Command::Labels(a) => Ok(labels(&a.graph)),
        Command::Graceful(a) => graceful(&a.graph),
        Command::Grl(a) => grl(&a.graph, limit),
        Command::Gammas(a) => gammas(a.n, limit),
        Command::Sp(a) => sp(a.n, a.seed, limit),
        Command::Tau(a) => tau(a.n),
        Command::Genfun { which, n, oracle } => genfun(*which, *n, *oracle),
        Command::Coeff {
            sequence,
            which,
            oracle,
        } => coeff(sequence, *which, *oracle),
        Command::Props { which, n } => props(*which, *n),
        Command::Tdmtt { n, seed, symbolic } => tdmtt(*n, *seed, *symbolic),
        Command::Whitty {
            n,
            seed,
            symbolic,
            sign,
        } => whitty(*n, *seed, *symbolic, *sign),
        Command::Neighbors { graph, oracle } => neighbors(graph, *oracle, limit),
        Command::Conjecture(a) => conjecture(a.n),
    }
}

fn labels(g: &FunctionalDigraph) -> Doc {
    let labels = g.edge_labels();
    Doc {
        lines: vec![labels.to_string()],
        data: json!({
            "graph": g.to_string(),
            "labels": labels.labels(),
            "gracefully_labeled": g.is_gracefully_labeled(),
        }),
        ok: true,
    }
}

fn graceful(g: &FunctionalDigraph) -> Result<Doc, Usage> {
    require(g.n(), 1, DET_MAX, "graceful")?;
    let labeled = g.is_gracefully_labeled();
    let witness = g.grl_set().into_iter().next();
    let mut lines = vec![
        format!("gracefully_labeled: {labeled}"),
        format!("graceful: {}", witness.is_some()),
    ];
    if let Some(w) = &witness {
        lines.push(format!("witness: {w}"));
    }
    Ok(Doc {
        lines,
        data: json!({
            "graph": g.to_string(),
            "gracefully_labeled": labeled,
            "graceful": witness.is_some(),
            "witness": witness.map(|w| w.to_string()),
        }),
        ok: true,
    })
}

fn grl(g: &FunctionalDigraph, limit: Option<usize>) -> Result<Doc, Usage> {
    require(g.n(), 1, DET_MAX, "grl")?;
    let set = g.grl_set();
    let listed = strings(take(&set, limit));
    let mut lines = listed.clone();
    lines.push(format!("count: {}", set.len()));
    Ok(Doc {
        lines,
        data: json!({ "graph": g.to_string(), "count": set.len(), "members": listed }),
        ok: true,
    })
}

fn gammas(n: usize, limit: Option<usize>) -> Result<Doc, Usage> {
    require(n, 1, COUNT_MAX, "gammas")?;
    let all = enumerate_valid_gammas(n);
    let formula = count_valid_gammas(n);
    let (lo, hi) = ((n - 1) / 2, n / 2);
    let ok = formula == all.len().into();
    let listed = strings(take(&all, limit));
    let mut lines = listed.clone();
    lines.push(format!("{} = {lo}!*{hi}!", all.len()));
    if !ok {
        lines.push(format!("formula gives {formula}"));
    }
    Ok(Doc {
        lines,
        data: json!({
            "n": n,
            "count": all.len(),
            "formula": formula.to_string(),
            "matches_formula": ok,
            "gammas": listed,
        }),
        ok,
    })
}

fn random_matrix(n: usize, seed: u64) -> IntMatrix {
    IntMatrix::random(n, seed, ENTRY_LO, ENTRY_HI)
}

fn sp(n: usize, seed: u64, limit: Option<usize>) -> Result<Doc, Usage> {
    require(n, 1, SCAN_MAX, "sp")?;
    let all = enumerate_sp(n);
    let mut scanned = 0usize;
    for_each_function(n, |f| {
        if f[0] == 0 && is_gracefully_labeled(f) {
            scanned += 1;
        }
    });
    let check = sp_sum_identity_check(&random_matrix(n, seed));
    let listed = strings(take(&all, limit));
    let mut lines = listed.clone();
    lines.push(format!("count: {}", all.len()));
    lines.push(format!("scan count: {scanned}"));
    lines.extend(identity_lines(&check));
    Ok(Doc {
        lines,
        data: json!({
            "n": n,
            "seed": seed,
            "count": all.len(),
            "scan_count": scanned,
            "identity": identity_json(&check),
            "signed_permutations": listed,
        }),
        ok: check.equal && scanned == all.len(),
    })
}

fn identity_lines<T: Display>(c: &IdentityCheck<T>) -> Vec<String> {
    vec![
        format!("left: {}", c.left),
        format!("right: {}", c.right),
        format!("equal: {}", c.equal),
    ]
}

fn identity_json<T: Display>(c: &IdentityCheck<T>) -> Value {
    json!({ "left": c.left.to_string(), "right": c.right.to_string(), "equal": c.equal })
}

fn tau(n: usize) -> Result<Doc, Usage> {
    require(n, 1, SCAN_MAX, "tau")?;
    let b = tau_bounds(n);
    let t = tau_bruteforce(n);
    let within = b.lower <= t && t <= b.upper;
    Ok(Doc {
        lines: vec![
            format!("lower: {}", b.lower),
            format!("tau: {t}"),
            format!("upper: {}", b.upper),
            format!("within_bounds: {within}"),
        ],
        data: json!({
            "n": n,
            "lower": b.lower.to_string(),
            "tau": t.to_string(),
            "upper": b.upper.to_string(),
            "within_bounds": within,
        }),
        ok: within,
    })
}

fn poly_json(p: &SparsePoly) -> Value {
    serde_json::to_value(p).expect("polynomials serialize")
}

fn genfun(which: Which, n: usize, oracle: bool) -> Result<Doc, Usage> {
    let (name, max) = match which {
        Which::F => ("genfun f", DET_MAX),
        Which::P => ("genfun p", 9),
    };
    require(n, 1, if oracle { SCAN_MAX } else { max }, name)?;
    let p = match which {
        Which::F => compute_f(n),
        Which::P => compute_p(n),
    };
    let mut lines = vec![p.to_golden()];
    let mut data = json!({ "which": format!("{which:?}").to_lowercase(), "n": n, "polynomial": poly_json(&p) });
    let mut ok = true;
    if oracle {
        let brute = match which {
            Which::F => compute_f_bruteforce(n),
            Which::P => compute_p_bruteforce(n),
        };
        ok = brute == p;
        if ok {
            lines.push("oracle: identical".into());
        } else {
            lines.push("oracle: differs".into());
            lines.push(format!("oracle polynomial: {}", brute.to_golden()));
            lines.push(format!("difference: {}", (&p - &brute).to_golden()));
        }
        data["oracle"] = json!({ "identical": ok, "polynomial": poly_json(&brute) });
    }
    Ok(Doc { lines, data, ok })
}

fn coeff(seq: &EdgeLabelSequence, which: Which, oracle: bool) -> Result<Doc, Usage> {
    let n = seq.len();
    let (family, max) = match which {
        Which::F => (Family::Digraphs, DET_MAX),
        Which::P => (Family::Trees, 9),
    };
    require(n, 1, if oracle { SCAN_MAX } else { max }, "coeff")?;
    let e = encode_sequence(seq, family.base(n));
    let p = match which {
        Which::F => compute_f(n),
        Which::P => compute_p(n),
    };
    let c = p.coefficient(&e);
    let mut lines = vec![
        format!("sequence: {seq}"),
        format!("exponent: {e}"),
        format!("coefficient: {c}"),
    ];
    let mut data = json!({
        "sequence": seq.labels(),
        "which": format!("{which:?}").to_lowercase(),
        "exponent": e.to_string(),
        "coefficient": c.to_string(),
    });
    let mut ok = true;
    if oracle {
        let brute: BigInt = match which {
            Which::F => compute_f_bruteforce(n),
            Which::P => compute_p_bruteforce(n),
        }
        .coefficient(&e);
        ok = brute == c;
        lines.push(format!("oracle: {brute}"));
        data["oracle"] = json!(brute.to_string());
    }
    Ok(Doc { lines, data, ok })
}

fn props(which: Which, n: usize) -> Result<Doc, Usage> {
    require(n, 1, SCAN_MAX, "props")?;
    let report = match which {
        Which::F => check_f_properties(n),
        Which::P => check_p_properties(n),
    };
    let mut lines = vec![
        format!("family: {} n={}", report.family, report.n),
        format!("min_degree: {}", report.min_degree),
        format!("max_degree: {}", report.max_degree),
    ];
    for c in &report.claims {
        lines.push(format!(
            "{}: {} (predicted {}, computed {})",
            c.claim, c.status, c.predicted, c.computed
        ));
    }
    Ok(Doc {
        lines,
        data: serde_json::to_value(&report).expect("reports serialize"),
        ok: report.passed(),
    })
}

fn tdmtt(n: usize, seed: u64, symbolic: bool) -> Result<Doc, Usage> {
    if symbolic {
        require(n, 1, 6, "tdmtt --symbolic")?;
        let check = tdmtt_check(&PolyMatrix::symbolic(n));
        let c = IdentityCheck {
            left: check.left.to_golden(),
            right: check.right.to_golden(),
            equal: check.equal,
        };
        return Ok(identity_doc(n, None, c));
    }
    require(n, 1, 8, "tdmtt")?;
    Ok(identity_doc(
        n,
        Some(seed),
        tdmtt_check(&random_matrix(n, seed)),
    ))
}

fn identity_doc<T: Display>(n: usize, seed: Option<u64>, c: IdentityCheck<T>) -> Doc {
    Doc {
        lines: identity_lines(&c),
        data: json!({ "n": n, "seed": seed, "identity": identity_json(&c) }),
        ok: c.equal,
    }
}

fn whitty(n: usize, seed: u64, symbolic: bool, sign: Sign) -> Result<Doc, Usage> {
    require(n, 1, SCAN_MAX, "whitty")?;
    let sign = match sign {
        Sign::Printed => SignFactor::Printed,
        Sign::Oriented => SignFactor::Oriented,
    };
    let cal = calibrate(sign, 4);
    if symbolic {
        let r = whitty_check(&PolyMatrix::symbolic_symmetric(n), &cal);
        Ok(whitty_doc(&cal, &r, None, SparsePoly::to_golden))
    } else {
        let r = whitty_check(&random_matrix(n, seed), &cal);
        Ok(whitty_doc(&cal, &r, Some(seed), BigInt::to_string))
    }
}

fn whitty_doc<T: Ring>(
    cal: &Calibration,
    r: &WhittyReport<T>,
    seed: Option<u64>,
    show: fn(&T) -> String,
) -> Doc {
    let mut lines = vec![
        format!("convention: {}", cal.convention),
        format!(
            "epsilon: {} (consistent through n={}: {})",
            cal.epsilon, cal.checked_up_to, cal.consistent
        ),
    ];
    for t in &cal.trials {
        let eps = t.epsilon.map_or("none".to_string(), |e| e.to_string());
        let fail = t
            .first_failure
            .map_or("none".to_string(), |n| n.to_string());
        lines.push(format!(
            "trial {}: epsilon={eps} first_failure={fail}",
            t.convention
        ));
    }
    lines.push(format!("lhs: {}", show(&r.lhs)));
    lines.push(format!("rhs: {}", show(&r.rhs)));
    lines.push(format!(
        "equal_up_to_calibrated_sign: {}",
        r.equal_up_to_calibrated_sign
    ));
    Doc {
        lines,
        data: json!({
            "n": r.n,
            "seed": seed,
            "calibration": cal,
            "lhs": show(&r.lhs),
            "rhs": show(&r.rhs),
            "epsilon": r.epsilon,
            "equal_up_to_calibrated_sign": r.equal_up_to_calibrated_sign,
        }),
        ok: r.equal_up_to_calibrated_sign,
    }
}

fn neighbors(g: &FunctionalDigraph, oracle: bool, limit: Option<usize>) -> Result<Doc, Usage> {
    require(
        g.n(),
        1,
        if oracle { SCAN_MAX } else { DET_MAX },
        "neighbors",
    )?;
    let fam = ExpansionFamily::from_base(g).map_err(|e| e.to_string())?;
    if !oracle {
        let generated = neighbors_via_expansion(&fam);
        let listed = strings(take(&generated, limit));
        let mut lines = listed.clone();
        lines.push(format!("count: {}", generated.len()));
        return Ok(Doc {
            lines,
            data: json!({ "graph": g.to_string(), "family_size": fam.members.len(), "generated": listed }),
            ok: true,
        });
    }
    let r = completeness_check(&fam);
    let mut lines = Vec::new();
    let mut data = json!({ "graph": g.to_string(), "family_size": fam.members.len() });
    for (key, set) in [
        ("generated", &r.generated),
        ("oracle", &r.oracle),
        ("missing", &r.missing),
        ("extra", &r.extra),
    ] {
        let listed = strings(take(set, limit));
        lines.push(format!("{key}: {}", set.len()));
        lines.extend(listed.iter().map(|s| format!("  {s}")));
        data[key] = json!(listed);
    }
    lines.push(format!("complete: {}", r.complete()));
    data["complete"] = json!(r.complete());
    Ok(Doc {
        lines,
        data,
        ok: r.complete(),
    })
}

fn conjecture(n: usize) -> Result<Doc, Usage> {
    require(n, 1, SCAN_MAX, "conjecture")?;
    let r = check_star_sequences(n);
    let mut lines = vec![format!("star sequences: {}", r.star_sequences.len())];
    lines.extend(r.star_sequences.iter().map(|s| format!("  {s}")));
    let mut classes = Vec::new();
    for c in &r.classes {
        let verdict = if c.missing.is_empty() { "pass" } else { "fail" };
        lines.push(format!(
            "class {} size={} sequences={} graceful={}: {verdict}",
            c.class.representative, c.class.size, c.sequence_count, c.graceful
        ));
        lines.extend(c.missing.iter().map(|s| format!("  missing {s}")));
        classes.push(json!({
            "representative": c.class.representative.to_string(),
            "size": c.class.size,
            "sequences": c.sequence_count,
            "graceful": c.graceful,
            "missing": strings(&c.missing),
        }));
    }
    lines.push(format!("classes: {}", r.classes.len()));
    lines.push(format!("holds: {}", r.holds()));
    Ok(Doc {
        lines,
        data: json!({
            "n": n,
            "star_sequences": strings(&r.star_sequences),
            "classes": classes,
            "holds": r.holds(),
        }),
        ok: r.holds(),
    })
}
