use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nuschroder::bijection::{left_flush, right_flush};
use nuschroder::enumerate::{
    enum_dyck, enum_large, enum_small, enumerate, large_counts, narayana_counts, rational_catalan,
    rational_large_count, rational_narayana, rational_small_count, sch_counts, CountVector, PathClass,
};
use nuschroder::forest::{forest_to_tree, tree_to_forest, CoveringForest, ForestJson};
use nuschroder::morse::{build_matching, has_alternating_cycle, verify_acyclic, verify_matching};
use nuschroder::poset::{build_path_poset, to_dot, PosetJson};
use nuschroder::schema::{big_number, PathJson, TreeJson};
use nuschroder::tree::NuTree;
use nuschroder::verify::run_suite;
use nuschroder::{BasePath, StepWord};

/// Relative `--output` paths are resolved against this directory when set.
const OUTPUT_DIR_VAR: &str = "NUSCH_OUTPUT_DIR";

#[derive(Parser)]
#[command(name = "nuschroder", version, about = "nu-Schroder paths, trees, forests and their face poset")]
struct Cli {
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Face counts, Narayana counts, totals and the Euler sum as JSON.
    Count {
        /// Base path: a word over N/E or "a/b".
        #[arg(long)]
        nu: String,
    },
    /// One path per line in canonical order (small paths by default).
    Enumerate {
        #[arg(long)]
        nu: String,
        #[arg(long, conflicts_with = "dyck")]
        large: bool,
        #[arg(long)]
        dyck: bool,
    },
    /// Transport a JSON object between paths, trees and forests.
    Convert {
        #[arg(long)]
        from: Kind,
        #[arg(long)]
        to: Kind,
        /// JSON input file; stdin when absent.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// The face poset of small paths.
    Poset {
        #[arg(long)]
        nu: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// The acyclic matching and its critical cells, after verification.
    Morse {
        #[arg(long)]
        nu: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run every invariant over all base paths up to a length.
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=16))]
        max_len: u32,
        #[arg(long)]
        json: bool,
    },
    /// Closed-form rational counts, cross-checked by enumeration.
    Rational {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Path,
    Tree,
    Forest,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

enum Failure {
    /// Bad input or an operation outside its domain.
    Usage(String),
    /// A checked property does not hold; carries the witness.
    Verification(String),
}

impl From<nuschroder::Error> for Failure {
    fn from(e: nuschroder::Error) -> Self {
        match e {
            nuschroder::Error::Verification(w) => Failure::Verification(w),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(msg.to_string())
}

fn base(spec: &str) -> Result<BasePath, Failure> {
    Ok(BasePath::parse_spec(spec)?)
}

macro_rules! json_line {
    ($v:expr) => {{
        let mut s = serde_json::to_string(&$v).expect("serializable");
        s.push('\n');
        s
    }};
}

fn count(spec: &str) -> Outcome {
    let nu = base(spec)?;
    let sch = sch_counts(&nu);
    let large = large_counts(&nu);
    Ok(json_line!(json!({
        "nu": nu.word(),
        "a": nu.a(),
        "b": nu.b(),
        "sch": sch,
        "narayana": narayana_counts(&nu),
        "large": large,
        "total_small": big_number(&sch.total()),
        "total_large": big_number(&large.total()),
        "euler": sch.alternating_sum().to_string().parse::<Value>().expect("integer"),
    })))
}

fn enumerate_cmd(spec: &str, large: bool, dyck: bool) -> Outcome {
    let nu = base(spec)?;
    let class = match (large, dyck) {
        (true, _) => PathClass::Large,
        (_, true) => PathClass::Dyck,
        _ => PathClass::Small,
    };
    Ok(enumerate(&nu, class).iter().map(|w| format!("{w}\n")).collect())
}

fn read_input(input: Option<&PathBuf>) -> Result<String, Failure> {
    let mut text = String::new();
    match input {
        Some(p) => text = std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?,
        None => {
            std::io::stdin().read_to_string(&mut text).map_err(usage)?;
        }
    }
    Ok(text)
}

fn convert(from: Kind, to: Kind, input: Option<&PathBuf>) -> Outcome {
    let text = read_input(input)?;
    let tree = match from {
        Kind::Path => {
            let j: PathJson = serde_json::from_str(&text).map_err(usage)?;
            let (nu, w) = j.decode()?;
            right_flush(&w, &nu)?
        }
        Kind::Tree => {
            let j: TreeJson = serde_json::from_str(&text).map_err(usage)?;
            NuTree::try_from(j)?
        }
        Kind::Forest => {
            let j: ForestJson = serde_json::from_str(&text).map_err(usage)?;
            forest_to_tree(&CoveringForest::try_from(j)?)?
        }
    };
    Ok(match to {
        Kind::Path => json_line!(PathJson::new(tree.base(), &left_flush(&tree))),
        Kind::Tree => json_line!(TreeJson::from(&tree)),
        Kind::Forest => json_line!(ForestJson::from(&tree_to_forest(&tree))),
    })
}

fn poset(spec: &str, format: Format) -> Outcome {
    let p = build_path_poset(&base(spec)?);
    Ok(match format {
        Format::Json => json_line!(PosetJson::from(&p)),
        Format::Dot => to_dot(&p, None),
    })
}

fn morse(spec: &str, format: Format) -> Outcome {
    let nu = base(spec)?;
    let p = build_path_poset(&nu);
    let m = build_matching(&p)?;
    verify_matching(p.len(), p.covers(), &m).map_err(|e| Failure::Verification(format!("nu={nu}: {e}")))?;
    if !verify_acyclic(p.len(), p.covers(), &m) || has_alternating_cycle(p.len(), p.covers(), &m) {
        return Err(Failure::Verification(format!("nu={nu}: matching has a cycle")));
    }
    if format == Format::Dot {
        return Ok(to_dot(&p, Some(&m.pairs)));
    }
    let mut ranks = vec![0u64; nu.a() + 1];
    for &c in &m.critical {
        ranks[p.rank(c)] += 1;
    }
    let words = |ix: &[usize]| ix.iter().map(|&i| p.elements()[i].clone()).collect::<Vec<StepWord>>();
    Ok(json_line!(json!({
        "nu": nu.word(),
        "pairs": m.pairs.iter().map(|&(lo, hi)| [lo, hi]).collect::<Vec<_>>(),
        "pair_words": m.pairs.iter().map(|&(lo, hi)| [&p.elements()[lo], &p.elements()[hi]]).collect::<Vec<_>>(),
        "critical": m.critical,
        "critical_words": words(&m.critical),
        "critical_by_rank": CountVector::from_u64s(&ranks),
        "valid": true,
        "acyclic": true,
    })))
}

fn verify(max_len: usize, as_json: bool) -> Outcome {
    let report = run_suite(max_len);
    let text = if as_json {
        json_line!(report)
    } else {
        let mut s = format!("checked {} base paths with |nu| <= {max_len}\n", report.base_paths);
        for name in &report.properties {
            match report.failures.iter().find(|w| w.property == *name) {
                None => s.push_str(&format!("ok    {name}\n")),
                Some(w) => s.push_str(&format!("FAIL  {name}: nu={:?} {}\n", w.nu, w.detail)),
            }
        }
        s
    };
    if report.passed() {
        Ok(text)
    } else {
        Err(Failure::Verification(text))
    }
}

fn rational(a: usize, b: usize) -> Outcome {
    let cat = rational_catalan(a, b)?;
    let nu = BasePath::rational(a, b)?;
    let nar: Vec<_> = (0..=a).map(|i| rational_narayana(a, b, i)).collect::<Result<_, _>>()?;
    let big: Vec<_> = (0..=a).map(|i| rational_large_count(a, b, i)).collect::<Result<_, _>>()?;
    let small: Vec<_> = (0..a).map(|i| rational_small_count(a, b, i)).collect::<Result<_, _>>()?;

    let tally = |ws: Vec<StepWord>, f: fn(&StepWord) -> usize, len: usize| {
        let mut v = vec![0u64; len];
        for w in ws {
            v[f(&w)] += 1;
        }
        CountVector::from_u64s(&v)
    };
    let checks = [
        ("Cat", CountVector::new(vec![cat.clone()]), CountVector::from_u64s(&[enum_dyck(&nu).len() as u64])),
        ("Nar", CountVector::new(nar.clone()), tally(enum_dyck(&nu), |w| w.peaks().len(), a + 1)),
        ("Sch", CountVector::new(big.clone()), tally(enum_large(&nu), StepWord::diag_count, a + 1)),
        ("sch", CountVector::new(small.clone()), tally(enum_small(&nu), StepWord::diag_count, a + 1)),
    ];
    if let Some((name, formula, brute)) = checks.iter().find(|(_, f, b)| f != b) {
        return Err(Failure::Verification(format!(
            "{name}({a},{b}): formula {:?} but enumeration {:?}",
            formula.to_u64s(),
            brute.to_u64s()
        )));
    }
    let nums = |v: &[_]| v.iter().map(big_number).collect::<Vec<_>>();
    Ok(json_line!(json!({
        "a": a,
        "b": b,
        "nu": nu.word(),
        "catalan": big_number(&cat),
        "narayana": nums(&nar),
        "large": nums(&big),
        "small": nums(&small),
        "enumeration_agrees": true,
    })))
}

fn resolve_output(path: &PathBuf) -> PathBuf {
    match std::env::var_os(OUTPUT_DIR_VAR) {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path.clone(),
    }
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), Failure> {
    match output {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(p) => {
            let target = resolve_output(p);
            if let Some(parent) = target.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(|e| usage(format!("{}: {e}", parent.display())))?;
            }
            std::fs::write(&target, text).map_err(|e| usage(format!("{}: {e}", target.display())))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Count { nu } => count(nu),
        Command::Enumerate { nu, large, dyck } => enumerate_cmd(nu, *large, *dyck),
        Command::Convert { from, to, input } => convert(*from, *to, input.as_ref()),
        Command::Poset { nu, format } => poset(nu, *format),
        Command::Morse { nu, format } => morse(nu, *format),
        Command::Verify { max_len, json } => verify(*max_len as usize, *json),
        Command::Rational { a, b } => rational(*a, *b),
    };
    let result = result.and_then(|text| emit(&text, cli.output.as_ref()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(witness)) => {
            print!("{witness}");
            if !witness.ends_with('\n') {
                println!();
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
