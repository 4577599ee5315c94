mod json;
mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fibtree_core::represent::DEFAULT_SEARCH_CAP;
use fibtree_core::tree::level_interval;
use fibtree_core::verify::run_suites;
use fibtree_core::{
    branch_sequence, classify, find_interval_level, find_sequence, hofstadter_g,
    hofstadter_levels, is_subtree, least_upper_bound, self_containment, tree_sum, u, v, word,
    wythoff_array, Error, FibSeq, FibTree, Limits, Suite,
};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::json::{int, ints, object, pair};

/// Labeled Fibonacci trees, Wythoff pairs and the subtree order.
#[derive(Parser, Debug)]
#[command(name = "fibtree", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Ascii,
    Dot,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    All,
    Labels,
    Wythoff,
    Group,
    Represent,
    Order,
    Array,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dump levels 0..=N of a tree.
    Tree {
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        id: (BigInt, BigInt),
        #[arg(long, default_value_t = 5)]
        levels: u32,
        /// Largest level that may be materialized.
        #[arg(long, default_value_t = Limits::default().levels)]
        cap: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Top-left corner of the Wythoff array.
    Array {
        #[arg(long, default_value_t = 10)]
        rows: usize,
        #[arg(long, default_value_t = 10)]
        cols: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Table of u(n), v(n).
    Wythoff {
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Tree sum.
    Sum {
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        t1: (BigInt, BigInt),
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        t2: (BigInt, BigInt),
    },
    /// Which side of Ψ a tree lies on.
    Classify {
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        id: (BigInt, BigInt),
    },
    /// Locate a Fibonacci sequence along an ascending branch.
    FindSeq {
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        id: (BigInt, BigInt),
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        seq: (BigInt, BigInt),
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        cap: u32,
    },
    /// Smallest level from which an interval stays inside the labels.
    Interval {
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        id: (BigInt, BigInt),
        #[arg(long, allow_hyphen_values = true)]
        lo: BigInt,
        #[arg(long, allow_hyphen_values = true)]
        hi: BigInt,
    },
    /// Decide whether one tree is a subtree of another.
    Subtree {
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        child: (BigInt, BigInt),
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        parent: (BigInt, BigInt),
        #[arg(long, default_value_t = 30)]
        cap: u32,
    },
    /// Forward words under which a tree is its own subtree.
    SelfContain {
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        id: (BigInt, BigInt),
        #[arg(long, default_value_t = Limits::default().depth)]
        depth: u32,
    },
    /// Bounded least-upper-bound search.
    Lub {
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        t1: (BigInt, BigInt),
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        t2: (BigInt, BigInt),
        #[arg(long, default_value_t = Limits::default().depth)]
        depth: u32,
    },
    /// Label intervals of the Hofstadter tree.
    Hofstadter {
        #[arg(long, default_value_t = 10)]
        levels: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Hofstadter's g(n) = n - g(g(n-1)).
    G {
        #[arg(long, allow_hyphen_values = true)]
        n: BigInt,
    },
    /// Run property suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 15)]
        max_level: u32,
    },
}

fn parse_pair(s: &str) -> Result<(BigInt, BigInt), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two integers \"a,b\", got {s:?}"))?;
    let parse = |x: &str| x.trim().parse::<BigInt>().map_err(|e| format!("{x:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

fn tree_of(p: &(BigInt, BigInt)) -> FibTree {
    FibTree::new(p.0.clone(), p.1.clone())
}

/// What a subcommand produced.
enum Output {
    Json(Value),
    Text(String),
    /// Verification report; the flag is whether every suite passed.
    Report(Value, bool),
}

fn unsupported(format: Format, command: &str) -> Error {
    Error::InvalidArgument(format!("{command} does not support {format:?} output"))
}

fn run(cmd: &Command, limits: &Limits) -> Result<Output, Error> {
    Ok(match cmd {
        Command::Tree { id, levels, cap, format } => {
            let t = tree_of(id);
            let cap = limits.clamp(*cap);
            if *levels > cap {
                return Err(Error::LevelCap { requested: *levels, cap });
            }
            match format {
                Format::Json => {
                    let dump: Vec<Value> = (0..=*levels)
                        .map(|n| {
                            let iv = level_interval(&t, n);
                            let pattern = word(n).map(|w| w.to_string()).unwrap_or_default();
                            object([
                                ("level", json!(n)),
                                ("lo", int(&iv.lo)),
                                ("hi", int(&iv.hi)),
                                ("letters", json!(pattern)),
                            ])
                        })
                        .collect();
                    Output::Json(object([("tree", json::tree(&t)), ("levels", Value::Array(dump))]))
                }
                Format::Ascii => Output::Text(render::ascii_tree(&t, *levels)?),
                Format::Dot => Output::Text(render::dot_tree(&t, *levels)?),
                Format::Csv => return Err(unsupported(*format, "tree")),
            }
        }
        Command::Array { rows, cols, format } => {
            let arr = wythoff_array(*rows, *cols)?;
            match format {
                Format::Json => Output::Json(object([(
                    "rows",
                    Value::Array(arr.rows.iter().map(ints).collect()),
                )])),
                Format::Csv => Output::Text(render::csv_array(&arr)),
                _ => return Err(unsupported(*format, "array")),
            }
        }
        Command::Wythoff { from, to, format } => {
            if from > to || to - from > 1_000_000 {
                return Err(Error::InvalidArgument(format!(
                    "range {from}..={to} must be nonempty and at most 10^6 long"
                )));
            }
            let rows: Vec<(BigInt, BigInt, BigInt)> = (*from..=*to)
                .map(|n| {
                    let n = BigInt::from(n);
                    let (un, vn) = (u(&n), v(&n));
                    (n, un, vn)
                })
                .collect();
            match format {
                Format::Json => Output::Json(object([(
                    "pairs",
                    Value::Array(
                        rows.iter()
                            .map(|(n, un, vn)| object([("n", int(n)), ("u", int(un)), ("v", int(vn))]))
                            .collect(),
                    ),
                )])),
                Format::Csv => Output::Text(render::csv_wythoff(&rows)),
                _ => return Err(unsupported(*format, "wythoff")),
            }
        }
        Command::Sum { t1, t2 } => {
            let s = tree_sum(&tree_of(t1), &tree_of(t2));
            Output::Json(object([("sum", json::tree(&s))]))
        }
        Command::Classify { id } => {
            let class = classify(&tree_of(id));
            Output::Json(object([("class", json!(class.name()))]))
        }
        Command::FindSeq { id, seq, cap } => {
            let cap = limits.clamp(*cap);
            let t = tree_of(id);
            let s = FibSeq::new(seq.0.clone(), seq.1.clone());
            let occ = find_sequence(&t, &s, cap)?;
            let branch = branch_sequence(&t, &occ.node(), 10)?;
            Output::Json(object([
                ("level", json!(occ.level)),
                ("pos", int(&occ.pos)),
                ("pair", pair(&occ.pair.0, &occ.pair.1)),
                ("shift", json!(occ.shift)),
                ("primitive", json!(occ.primitive)),
                ("route", json!(format!("{:?}", occ.route))),
                ("branch", ints(&branch)),
            ]))
        }
        Command::Interval { id, lo, hi } => {
            let n = find_interval_level(&tree_of(id), lo, hi)?;
            Output::Json(object([("level", json!(n))]))
        }
        Command::Subtree { child, parent, cap } => {
            let cap = limits.clamp(*cap);
            let w = is_subtree(&tree_of(child), &tree_of(parent), cap);
            let witness = match &w {
                Some(w) => object([
                    ("level", json!(w.level)),
                    ("pos", int(&w.pos)),
                    ("word", json::word(&w.word)),
                ]),
                None => Value::Null,
            };
            Output::Json(object([
                ("subtree", json!(w.is_some())),
                ("cap", json!(cap)),
                ("witness", witness),
            ]))
        }
        Command::SelfContain { id, depth } => {
            let words = self_containment(&tree_of(id), *depth)?;
            Output::Json(object([
                ("depth", json!(depth)),
                ("words", Value::Array(words.iter().map(json::word).collect())),
            ]))
        }
        Command::Lub { t1, t2, depth } => {
            let lub = least_upper_bound(&tree_of(t1), &tree_of(t2), *depth)?;
            Output::Json(object([("lub", Value::Array(lub.iter().map(json::tree).collect()))]))
        }
        Command::Hofstadter { levels, format } => {
            limits.check_level(*levels)?;
            let lv = hofstadter_levels(*levels);
            match format {
                Format::Json => Output::Json(object([(
                    "levels",
                    Value::Array(
                        lv.iter()
                            .map(|l| object([("level", json!(l.level)), ("lo", int(&l.lo)), ("hi", int(&l.hi))]))
                            .collect(),
                    ),
                )])),
                Format::Ascii => Output::Text(
                    lv.iter()
                        .map(|l| format!("{:>3}  {}..{}\n", l.level, l.lo, l.hi))
                        .collect(),
                ),
                _ => return Err(unsupported(*format, "hofstadter")),
            }
        }
        Command::G { n } => Output::Json(object([("g", int(&hofstadter_g(n)?))])),
        Command::Verify { suite, max_level } => {
            let max_level = limits.check_level(*max_level)?;
            let suites: Vec<Suite> = match suite {
                SuiteArg::All => Suite::ALL.to_vec(),
                SuiteArg::Labels => vec![Suite::Labels],
                SuiteArg::Wythoff => vec![Suite::Wythoff],
                SuiteArg::Group => vec![Suite::Group],
                SuiteArg::Represent => vec![Suite::Represent],
                SuiteArg::Order => vec![Suite::Order],
                SuiteArg::Array => vec![Suite::Array],
            };
            let reports = run_suites(&suites, max_level);
            let passed = reports.iter().all(|r| r.passed());
            let body: Vec<Value> = reports
                .iter()
                .map(|r| {
                    object([
                        ("suite", json!(r.suite.name())),
                        ("passed", json!(r.passed())),
                        ("checks", json!(r.checks)),
                        ("failed", json!(r.failed)),
                        ("failures", json!(r.failures)),
                    ])
                })
                .collect();
            Output::Report(
                object([
                    ("passed", json!(passed)),
                    ("max_level", json!(max_level)),
                    ("suites", Value::Array(body)),
                ]),
                passed,
            )
        }
    })
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Tree { .. } => "tree",
        Command::Array { .. } => "array",
        Command::Wythoff { .. } => "wythoff",
        Command::Sum { .. } => "sum",
        Command::Classify { .. } => "classify",
        Command::FindSeq { .. } => "find-seq",
        Command::Interval { .. } => "interval",
        Command::Subtree { .. } => "subtree",
        Command::SelfContain { .. } => "self-contain",
        Command::Lub { .. } => "lub",
        Command::Hofstadter { .. } => "hofstadter",
        Command::G { .. } => "g",
        Command::Verify { .. } => "verify",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        // usage errors exit with 2, --help and --version with 0
        Err(e) => e.exit(),
    };
    let name = command_name(&cli.command);
    let result = Limits::from_env().and_then(|limits| run(&cli.command, &limits));
    match result {
        Ok(Output::Json(v)) => {
            println!("{}", json::envelope(name, v));
            ExitCode::SUCCESS
        }
        Ok(Output::Text(s)) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Ok(Output::Report(v, passed)) => {
            println!("{}", json::envelope(name, v));
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(e) => {
            eprintln!("fibtree {name}: {e}");
            ExitCode::from(1)
        }
    }
}
