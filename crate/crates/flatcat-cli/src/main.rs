//! `flatcat` — enumeration, generating functions, closed forms, bijections,
//! and self-verification for flattened Catalan words.
//!
//! Exit codes: 0 on success, 1 when a verification suite reports a failure,
//! 2 on usage errors (bad flags, unknown identifiers, malformed words).

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use flatcat::bijections::{
    hat_involution, prime_inverse, prime_map, swap_231_221, tilde_involution, trun_map,
    trun_map_inverse, valley_map, valley_map_inverse, MarkedWord,
};
use flatcat::catalog::{self, CatalogId, Family};
use flatcat::counts;
use flatcat::enumerate::{iter_avoiders, iter_flattened, iter_flattened_by_trun};
use flatcat::poly::{JsonTerm, Var};
use flatcat::verify::{run_all, run_suite, Suite};
use flatcat::words::{BinaryWord, CatalanWord, Pattern};
use flatcat::Error;

/// Exhaustive length up to which the `totals` and `avoid` tables fill their
/// oracle column by brute-force enumeration.
const ORACLE_MAX_N: usize = 12;

#[derive(Parser)]
#[command(
    name = "flatcat",
    version,
    about = "Enumeration toolkit for flattened Catalan words",
    long_about = "Enumeration toolkit for flattened Catalan words: exhaustive generation, \
                  exact generating-function expansion, closed-form counting, structure-\
                  preserving bijections, and self-verification against brute force.\n\n\
                  Words are written as comma-separated letters (\"1,2,3,1,2\"); marked words \
                  append a 0-based index (\"1,2,3,1,2@2\"); patterns are digit strings \
                  (\"312\"). Exit codes: 0 success, 1 verification failure, 2 usage error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stream the flattened Catalan words of one length.
    Enumerate(EnumerateArgs),
    /// Expand a cataloged generating function as exact series coefficients.
    Gf(GfArgs),
    /// Run self-verification suites and emit a JSON report.
    Verify(VerifyArgs),
    /// Tabulate total pattern occurrences against formula, oracle, and OEIS labels.
    Totals(TotalsArgs),
    /// Tabulate pattern-avoiding word counts against formula and oracle.
    Avoid(AvoidArgs),
    /// Dump a statistic family's triangular recurrence rows.
    Recurrence(RecurrenceArgs),
    /// Apply a bijection to one word, or exhaustively verify all of them.
    Bijection(BijectionArgs),
}

#[derive(Args)]
struct EnumerateArgs {
    /// Word length (n ≥ 1).
    #[arg(long)]
    n: usize,
    /// Keep only words whose terminal run has exactly this many distinct letters.
    #[arg(long, conflicts_with = "avoid")]
    trun: Option<usize>,
    /// Keep only words avoiding this consecutive pattern (digit string, e.g. 312).
    #[arg(long)]
    avoid: Option<String>,
    /// `lines` prints one word per line; `count` prints only the number of words.
    #[arg(long, value_enum, default_value_t = WordFormat::Lines)]
    format: WordFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum WordFormat {
    Lines,
    Count,
}

#[derive(Args)]
struct GfArgs {
    /// Catalog identifier (e.g. A, B, trun, F_21, shortValley, U_A).
    #[arg(long)]
    id: String,
    /// Highest power of x to expand to (inclusive).
    #[arg(long, default_value_t = 20)]
    terms: usize,
    /// Substitute an integer for a variable before expanding, e.g. --set q=1.
    /// May be repeated.
    #[arg(long = "set", value_name = "VAR=INT")]
    set: Vec<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: table1, theorems, functional, recurrences, totals, avoiders,
    /// bijections, all.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Bound for exhaustive checks (series order for the functional suite).
    /// Defaults: 10 for enumeration suites, 20 for functional.
    #[arg(long)]
    max_n: Option<usize>,
}

#[derive(Args)]
#[command(
    after_help = "CSV columns: pattern,n,formula,oracle,match. The oracle column is \
                        filled by exhaustive enumeration for n <= 12 and left empty beyond; \
                        match is `ok` or `FAIL` when both values are present. Rows start at \
                        n = 2 for two-letter patterns and n = 3 for three-letter patterns. \
                        Leading `#` comment lines carry the OEIS labels of the cited total \
                        sequences."
)]
struct TotalsArgs {
    /// A single pattern (e.g. 21) or `all` for every cataloged pattern.
    #[arg(long, default_value = "all")]
    pattern: String,
    /// Largest word length tabulated.
    #[arg(long, default_value_t = 20)]
    max_n: usize,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
}

#[derive(Args)]
#[command(
    after_help = "CSV columns: pattern,n,formula,oracle,match. The oracle column is \
                        filled by exhaustive enumeration for n <= 12 and left empty beyond; \
                        match is `ok` or `FAIL` when both values are present. Closed forms \
                        exist for 11, 111, 121, 122, 123, 211, 212, 221, 231, 312 (the 111 \
                        rows start at n = 3)."
)]
struct AvoidArgs {
    /// A single pattern (e.g. 312) or `all` for every pattern with a closed form.
    #[arg(long, default_value = "all")]
    pattern: String,
    /// Largest word length tabulated.
    #[arg(long, default_value_t = 20)]
    max_n: usize,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct RecurrenceArgs {
    /// Statistic family: A, B, C, D, or E.
    #[arg(long)]
    family: String,
    /// Number of rows to build.
    #[arg(long, default_value_t = 10)]
    max_n: usize,
}

#[derive(Args)]
#[command(
    after_help = "Maps: prime (binary word -> level-free word), prime-inverse, tilde, \
                        hat, swap (whole-word involutions), trun (needs --mark: designated \
                        terminal-run letter), trun-inverse, valley (needs --mark: start of a \
                        312 occurrence), valley-inverse (needs --mark: start of a valley). \
                        Marks are 0-based; marked output is printed as word@mark. --word \
                        also accepts the word@mark form directly."
)]
struct BijectionArgs {
    /// Which map to apply (see --help for the list).
    #[arg(long, required_unless_present = "verify")]
    map: Option<String>,
    /// Input word: comma-separated letters; bits for `prime`; word@mark allowed.
    #[arg(long, conflicts_with = "verify")]
    word: Option<String>,
    /// 0-based mark index for the maps that need one.
    #[arg(long, conflicts_with = "verify")]
    mark: Option<usize>,
    /// Run the exhaustive bijection suite instead of applying a map.
    #[arg(long)]
    verify: bool,
    /// Bound for the exhaustive suite (default 10).
    #[arg(long, requires = "verify")]
    max_n: Option<usize>,
}

/// Buffered stdout that exits quietly (status 0) when the consumer closes
/// the pipe, e.g. `flatcat gf --id A | head`.
struct Output {
    inner: std::io::BufWriter<std::io::Stdout>,
}

impl Output {
    fn new() -> Output {
        Output {
            inner: std::io::BufWriter::new(std::io::stdout()),
        }
    }

    fn line(&mut self, text: impl std::fmt::Display) {
        if writeln!(self.inner, "{text}").is_err() {
            std::process::exit(0);
        }
    }

    fn text(&mut self, text: &str) {
        if self.inner.write_all(text.as_bytes()).is_err() {
            std::process::exit(0);
        }
    }

    fn finish(mut self) {
        if self.inner.flush().is_err() {
            std::process::exit(0);
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = Output::new();
    match run(cli.command, &mut out) {
        Ok(code) => {
            out.finish();
            code
        }
        Err(e) => {
            out.finish();
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, out: &mut Output) -> Result<ExitCode, Error> {
    match command {
        Command::Enumerate(args) => cmd_enumerate(args, out),
        Command::Gf(args) => cmd_gf(args, out),
        Command::Verify(args) => cmd_verify(args, out),
        Command::Totals(args) => cmd_totals(args, out),
        Command::Avoid(args) => cmd_avoid(args, out),
        Command::Recurrence(args) => cmd_recurrence(args, out),
        Command::Bijection(args) => cmd_bijection(args, out),
    }
}

// ---------------------------------------------------------------------------
// enumerate

fn cmd_enumerate(args: EnumerateArgs, out: &mut Output) -> Result<ExitCode, Error> {
    if args.n == 0 {
        return Err(Error::InvalidInput("words have length at least 1".into()));
    }
    let avoid = args
        .avoid
        .as_deref()
        .map(str::parse::<Pattern>)
        .transpose()?;
    if let Some(m) = args.trun {
        if !(1..=args.n).contains(&m) {
            return Err(Error::InvalidInput(format!(
                "--trun must lie in 1..={}",
                args.n
            )));
        }
    }

    match args.format {
        WordFormat::Lines => {
            let mut emit = |w: CatalanWord| out.line(w);
            match (args.trun, &avoid) {
                (Some(m), _) => iter_flattened_by_trun(args.n, m).for_each(&mut emit),
                (None, Some(p)) => iter_avoiders(args.n, p).for_each(&mut emit),
                (None, None) => iter_flattened(args.n).for_each(&mut emit),
            }
        }
        WordFormat::Count => {
            let count: u64 = match (args.trun, &avoid) {
                (Some(m), _) => iter_flattened_by_trun(args.n, m).count() as u64,
                (None, Some(p)) => iter_avoiders(args.n, p).count_words(),
                (None, None) => iter_flattened(args.n).count_words(),
            };
            out.line(count);
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// gf

fn cmd_gf(args: GfArgs, out: &mut Output) -> Result<ExitCode, Error> {
    let id: CatalogId = args.id.parse()?;
    let mut gf = catalog::entry(id).gf;
    for binding in &args.set {
        let (var, value) = parse_binding(binding)?;
        gf = gf.substitute(&[(var, value)]);
    }
    let series = gf.expand(args.terms)?;
    let mut buf = String::new();
    for k in 0..=args.terms {
        let line =
            serde_json::to_string(&series.coeff(k).json_terms()).expect("terms serialize to JSON");
        buf.push_str(&line);
        buf.push('\n');
    }
    out.text(&buf);
    Ok(ExitCode::SUCCESS)
}

fn parse_binding(s: &str) -> Result<(Var, i64), Error> {
    let (name, value) = s.split_once('=').ok_or_else(|| {
        Error::InvalidInput(format!("--set expects VAR=INT (e.g. q=1), got {s:?}"))
    })?;
    let var = Var::parse(name.trim())?;
    let value: i64 = value.trim().parse().map_err(|e| {
        Error::InvalidInput(format!("binding value {value:?} is not an integer: {e}"))
    })?;
    Ok((var, value))
}

// ---------------------------------------------------------------------------
// verify

fn cmd_verify(args: VerifyArgs, out: &mut Output) -> Result<ExitCode, Error> {
    let (json, passed) = if args.suite == "all" {
        let reports = run_all(args.max_n);
        let passed = reports.iter().all(|r| r.passed());
        (
            serde_json::to_string_pretty(&reports).expect("reports serialize"),
            passed,
        )
    } else {
        let suite: Suite = args.suite.parse()?;
        let report = run_suite(suite, args.max_n);
        let passed = report.passed();
        (
            serde_json::to_string_pretty(&report).expect("report serializes"),
            passed,
        )
    };
    out.line(json);
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

// ---------------------------------------------------------------------------
// totals / avoid tables

#[derive(Serialize)]
struct TableRow {
    n: usize,
    formula: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<String>,
    #[serde(rename = "match", skip_serializing_if = "Option::is_none")]
    matches: Option<bool>,
}

#[derive(Serialize)]
struct PatternTable {
    pattern: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    oeis: Option<String>,
    rows: Vec<TableRow>,
}

fn all_pattern_literals() -> [&'static str; 13] {
    [
        "11", "12", "21", "111", "112", "121", "122", "123", "211", "212", "221", "231", "312",
    ]
}

fn parse_pattern_selection(
    selection: &str,
    supported: &[&'static str],
    what: &str,
) -> Result<Vec<Pattern>, Error> {
    if selection == "all" {
        return supported.iter().map(|s| s.parse()).collect();
    }
    let pat: Pattern = selection.parse()?;
    if !supported.contains(&selection) {
        return Err(Error::InvalidInput(format!(
            "no {what} closed form for pattern {selection}; supported: {}",
            supported.join(", ")
        )));
    }
    Ok(vec![pat])
}

fn print_tables(
    tables: &[PatternTable],
    format: TableFormat,
    comments: &[String],
    out: &mut Output,
) {
    match format {
        TableFormat::Json => {
            out.line(serde_json::to_string_pretty(tables).expect("tables serialize"));
        }
        TableFormat::Csv => {
            let mut buf = String::new();
            for c in comments {
                buf.push_str(&format!("# {c}\n"));
            }
            buf.push_str("pattern,n,formula,oracle,match\n");
            for t in tables {
                for row in &t.rows {
                    buf.push_str(&format!(
                        "{},{},{},{},{}\n",
                        t.pattern,
                        row.n,
                        row.formula,
                        row.oracle.as_deref().unwrap_or(""),
                        match row.matches {
                            Some(true) => "ok",
                            Some(false) => "FAIL",
                            None => "",
                        }
                    ));
                }
            }
            out.text(&buf);
        }
    }
}

fn cmd_totals(args: TotalsArgs, out: &mut Output) -> Result<ExitCode, Error> {
    let patterns = parse_pattern_selection(&args.pattern, &all_pattern_literals(), "total")?;
    let mut tables = Vec::new();
    for tau in &patterns {
        let lo = if tau.len() == 3 { 3 } else { 2 };
        let mut rows = Vec::new();
        for n in lo..=args.max_n.max(lo) {
            let formula = counts::tot(tau, n as u64)?;
            let oracle = (n <= ORACLE_MAX_N).then(|| {
                BigInt::from(
                    iter_flattened(n)
                        .map(|w| w.count_pattern(tau) as u64)
                        .sum::<u64>(),
                )
            });
            let matches = oracle.as_ref().map(|o| *o == formula);
            rows.push(TableRow {
                n,
                formula: formula.to_string(),
                oracle: oracle.map(|o| o.to_string()),
                matches,
            });
        }
        tables.push(PatternTable {
            pattern: tau.to_string(),
            oeis: counts::oeis_label(Some(tau)).map(str::to_string),
            rows,
        });
    }
    let comments = vec![
        format!(
            "total occurrences over all flattened Catalan words of length n; oracle filled for n <= {ORACLE_MAX_N}"
        ),
        format!(
            "OEIS: |F_n| -> {}, tot(11) -> A082133, tot(21) -> A261064, tot(123) -> A027471, tot(312) -> A212337",
            counts::oeis_label(None).expect("cardinality label")
        ),
    ];
    print_tables(&tables, args.format, &comments, out);
    Ok(ExitCode::SUCCESS)
}

fn cmd_avoid(args: AvoidArgs, out: &mut Output) -> Result<ExitCode, Error> {
    let supported = [
        "11", "111", "121", "122", "123", "211", "212", "221", "231", "312",
    ];
    let patterns = parse_pattern_selection(&args.pattern, &supported, "avoider")?;
    let mut tables = Vec::new();
    for tau in &patterns {
        let lo = if tau.to_string() == "111" { 3 } else { 1 };
        let mut rows = Vec::new();
        for n in lo..=args.max_n.max(lo) {
            let formula = counts::avoiders(tau, n as u64)?;
            let oracle = (n <= ORACLE_MAX_N).then(|| BigInt::from(iter_avoiders(n, tau).count()));
            let matches = oracle.as_ref().map(|o| *o == formula);
            rows.push(TableRow {
                n,
                formula: formula.to_string(),
                oracle: oracle.map(|o| o.to_string()),
                matches,
            });
        }
        tables.push(PatternTable {
            pattern: tau.to_string(),
            oeis: None,
            rows,
        });
    }
    let comments = vec![format!(
        "pattern-avoiding flattened Catalan words of length n; oracle filled for n <= {ORACLE_MAX_N}"
    )];
    print_tables(&tables, args.format, &comments, out);
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// recurrence

#[derive(Serialize)]
struct RecurrenceRow<'a> {
    family: &'a str,
    n: usize,
    /// `entries[m−1]` is the distribution over words whose terminal run has
    /// m distinct letters, as JSON polynomial terms.
    entries: Vec<Vec<JsonTerm>>,
}

fn cmd_recurrence(args: RecurrenceArgs, out: &mut Output) -> Result<ExitCode, Error> {
    let family: Family = args.family.to_uppercase().parse()?;
    if args.max_n == 0 {
        return Err(Error::InvalidInput("--max-n must be at least 1".into()));
    }
    let array = flatcat::arrays::StatArray::build(family, args.max_n);
    let mut buf = String::new();
    for n in 1..=args.max_n {
        let row = RecurrenceRow {
            family: family.name(),
            n,
            entries: (1..=n).map(|m| array.entry(n, m).json_terms()).collect(),
        };
        buf.push_str(&serde_json::to_string(&row).expect("row serializes"));
        buf.push('\n');
    }
    out.text(&buf);
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// bijection

fn cmd_bijection(args: BijectionArgs, out: &mut Output) -> Result<ExitCode, Error> {
    if args.verify {
        let report = run_suite(Suite::Bijections, args.max_n);
        let passed = report.passed();
        out.line(serde_json::to_string_pretty(&report).expect("report serializes"));
        return Ok(if passed {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        });
    }

    let map = args
        .map
        .as_deref()
        .expect("clap requires --map without --verify");
    let word = args
        .word
        .as_deref()
        .ok_or_else(|| Error::InvalidInput("--word is required to apply a map".into()))?;

    // Split an optional @mark suffix off the word; an explicit --mark flag
    // may not contradict it.
    let (letters, mark) = match word.split_once('@') {
        Some((w, m)) => {
            if args.mark.is_some() {
                return Err(Error::InvalidInput(
                    "give the mark either as --mark or as word@mark, not both".into(),
                ));
            }
            let mark: usize = m
                .trim()
                .parse()
                .map_err(|e| Error::InvalidInput(format!("mark {m:?} is not an index: {e}")))?;
            (w, Some(mark))
        }
        None => (word, args.mark),
    };

    let need_mark = || {
        mark.ok_or_else(|| {
            Error::InvalidInput(format!("map {map:?} needs a mark (--mark or word@mark)"))
        })
    };
    let parse_word = || letters.parse::<CatalanWord>();
    let parse_marked =
        || -> Result<MarkedWord, Error> { MarkedWord::new(parse_word()?, need_mark()?) };

    let image = match map {
        "prime" => {
            let bits: BinaryWord = letters.parse()?;
            prime_map(&bits).to_string()
        }
        "prime-inverse" => prime_inverse(&parse_word()?)?.to_string(),
        "tilde" => tilde_involution(&parse_word()?)?.to_string(),
        "hat" => hat_involution(&parse_word()?)?.to_string(),
        "swap" => swap_231_221(&parse_word()?)?.to_string(),
        "trun" => trun_map(&parse_marked()?)?.to_string(),
        "trun-inverse" => trun_map_inverse(&parse_word()?)?.to_string(),
        "valley" => valley_map(&parse_marked()?)?.to_string(),
        "valley-inverse" => valley_map_inverse(&parse_marked()?)?.to_string(),
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown map {other:?}; expected one of: prime, prime-inverse, tilde, hat, \
                 swap, trun, trun-inverse, valley, valley-inverse"
            )))
        }
    };
    out.line(image);
    Ok(ExitCode::SUCCESS)
}
