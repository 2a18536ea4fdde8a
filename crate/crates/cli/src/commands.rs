use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::sync::Mutex;

use skolemgen::engine::{count_open_levels_bounded, parallel_enumerate};
use skolemgen::sequence::parse_entries;
use skolemgen::{
    base_blocks, check_skolem, develop_sts, dfs_enumerate, enumerate_skolem, parallel_count,
    verify_sts, EngineError, Entry, EnumerationReport, OpenState, SearchError, SearchOptions,
    SkolemSequence,
};

use crate::args::{
    CountOpenArgs, DiagramFormat, EnumerateArgs, RenderArgs, SequenceFormat, StsArgs, VerifyArgs,
    WorkerArgs,
};
use crate::exit;
use crate::record::{OutputRecord, SkolemLine};
use crate::render::{render_ascii, render_svg};
use crate::Io;

pub const WORKERS_ENV: &str = "SKOLEMGEN_WORKERS";

/// `--workers`, else `SKOLEMGEN_WORKERS`, else 1.
pub fn resolve_workers(args: &WorkerArgs) -> Result<usize, String> {
    if let Some(w) = args.workers {
        return Ok(w as usize);
    }
    match std::env::var(WORKERS_ENV) {
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(w) if w >= 1 => Ok(w),
            _ => Err(format!("{WORKERS_ENV} must be a positive integer, got {raw:?}")),
        },
        Err(_) => Ok(1),
    }
}

macro_rules! workers_or_usage {
    ($args:expr, $io:expr) => {
        match resolve_workers($args) {
            Ok(w) => w,
            Err(msg) => {
                let _ = writeln!($io.stderr, "error: {msg}");
                return exit::USAGE;
            }
        }
    };
}

pub fn count_open(args: &CountOpenArgs, io: &mut Io<'_>) -> u8 {
    let workers = workers_or_usage!(&args.workers, io);
    let max_order = args.max_n as usize;
    if workers > 1 && args.node_budget.is_none() {
        let counts = match parallel_count(max_order, workers) {
            Ok(c) => c,
            Err(e) => return engine_failure(&e, io),
        };
        for (i, c) in counts.iter().enumerate() {
            if writeln!(io.stdout, "{}", OutputRecord::count(i + 1, *c)).is_err() {
                return exit::IO;
            }
        }
        return flush(io.stdout);
    }
    let mut write_err = None;
    let stdout = &mut *io.stdout;
    let result = count_open_levels_bounded(max_order, args.node_budget.unwrap_or(u64::MAX), |n, c| {
        if write_err.is_none() {
            if let Err(e) = writeln!(stdout, "{}", OutputRecord::count(n, c)).and_then(|_| stdout.flush()) {
                write_err = Some(e);
            }
        }
    });
    if write_err.is_some() {
        return exit::IO;
    }
    match result {
        Ok(_) => exit::OK,
        Err(e) => engine_failure(&e, io),
    }
}

fn engine_failure(e: &EngineError, io: &mut Io<'_>) -> u8 {
    let _ = writeln!(io.stderr, "error: {e}");
    match e {
        EngineError::Exhausted { .. } => exit::RESOURCE,
        EngineError::ZeroOrder | EngineError::OrderTooLarge { .. } => exit::USAGE,
    }
}

fn flush(w: &mut dyn Write) -> u8 {
    match w.flush() {
        Ok(()) => exit::OK,
        Err(_) => exit::IO,
    }
}

/// `(2n)!` as decimal, the size of the naive permutation search.
pub fn permutation_count(order: usize) -> String {
    (1..=2 * order as u128)
        .try_fold(1u128, |acc, k| acc.checked_mul(k))
        .map(|v| v.to_string())
        .unwrap_or_else(|| {
            let log10: f64 = (1..=2 * order).map(|k| (k as f64).log10()).sum();
            format!("~1e{}", log10.floor())
        })
}

pub fn summary_line(report: &EnumerationReport) -> String {
    let n = report.target_order;
    format!(
        "summary order={n} count={} searched={} permutations={} pruned={} visited={} elapsed_ms={}",
        report.skolem_count,
        report.per_level_counts.last().copied().unwrap_or(0),
        permutation_count(n),
        report.pruned_nodes,
        report.visited(),
        report.elapsed.as_millis()
    )
}

fn write_sequence(out: &mut dyn Write, format: SequenceFormat, w: &SkolemSequence) -> io::Result<()> {
    match format {
        SequenceFormat::Text => writeln!(out, "{}", OutputRecord::skolem(w)),
        SequenceFormat::Ndjson => {
            serde_json::to_writer(&mut *out, &SkolemLine::from(w))?;
            out.write_all(b"\n")
        }
    }
}

pub fn enumerate(args: &EnumerateArgs, io: &mut Io<'_>) -> u8 {
    let workers = workers_or_usage!(&args.workers, io);
    let mut file_out;
    let out: &mut (dyn Write + Send) = match &args.out {
        Some(path) => match File::create(path) {
            Ok(f) => {
                file_out = BufWriter::new(f);
                &mut file_out
            }
            Err(e) => {
                let _ = writeln!(io.stderr, "error: cannot write {}: {e}", path.display());
                return exit::IO;
            }
        },
        None => &mut *io.stdout,
    };
    let options = SearchOptions {
        prune: args.prune(),
        progress: args.progress,
    };
    let order = args.order as usize;
    let format = args.format;
    let result = if workers > 1 {
        let shared = Mutex::new(out);
        let r = parallel_enumerate(order, options, workers, |w| {
            let mut guard = shared.lock().expect("output lock");
            write_sequence(&mut **guard, format, &w)
        });
        let out = shared.into_inner().expect("output lock");
        r.and_then(|rep| out.flush().map(|_| rep).map_err(SearchError::Sink))
    } else {
        dfs_enumerate(order, options, |w| write_sequence(out, format, &w))
            .and_then(|rep| out.flush().map(|_| rep).map_err(SearchError::Sink))
    };
    match result {
        Ok(report) => {
            let _ = writeln!(io.stderr, "{}", summary_line(&report));
            exit::OK
        }
        Err(SearchError::Engine(e)) => engine_failure(&e, io),
        Err(SearchError::Sink(e)) => {
            let _ = writeln!(io.stderr, "error: write failed: {e}");
            exit::IO
        }
    }
}

/// Verdict for one input line: `Ok(order)` or a short failure reason.
pub fn verdict(line: &str) -> Result<usize, &'static str> {
    let values: Vec<i64> = if line.trim_start().starts_with('{') {
        let rec: SkolemLine = serde_json::from_str(line).map_err(|_| "syntax")?;
        if rec.values.len() != 2 * rec.order {
            return Err("order");
        }
        rec.values.iter().map(|&v| v.into()).collect()
    } else {
        let entries = parse_entries(line).map_err(|_| "syntax")?;
        entries
            .iter()
            .map(|e| match e {
                Entry::Closed(k) => Ok(i64::from(*k)),
                Entry::Open(_) => Err("open"),
            })
            .collect::<Result<_, _>>()?
    };
    check_skolem(&values).map_err(|v| v.tag())?;
    Ok(values.len() / 2)
}

pub fn verify(args: &VerifyArgs, io: &mut Io<'_>) -> u8 {
    let mut file_in;
    let input: &mut dyn BufRead = match &args.input {
        Some(path) => match File::open(path) {
            Ok(f) => {
                file_in = BufReader::new(f);
                &mut file_in
            }
            Err(e) => {
                let _ = writeln!(io.stderr, "error: cannot read {}: {e}", path.display());
                return exit::IO;
            }
        },
        None => &mut *io.stdin,
    };
    let mut all_ok = true;
    for line in input.lines() {
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                let _ = writeln!(io.stderr, "error: read failed: {e}");
                return exit::IO;
            }
        };
        if line.trim().is_empty() {
            continue;
        }
        let written = match verdict(&line) {
            Ok(order) => writeln!(io.stdout, "OK order={order}"),
            Err(reason) => {
                all_ok = false;
                writeln!(io.stdout, "FAIL {reason}")
            }
        };
        if written.is_err() {
            return exit::IO;
        }
    }
    match flush(io.stdout) {
        exit::OK if all_ok => exit::OK,
        exit::OK => exit::INVALID_INPUT,
        code => code,
    }
}

fn invalid(io: &mut Io<'_>, msg: impl std::fmt::Display) -> u8 {
    let _ = writeln!(io.stderr, "error: {msg}");
    exit::INVALID_INPUT
}

pub fn sts(args: &StsArgs, io: &mut Io<'_>) -> u8 {
    let w: SkolemSequence = match (&args.sequence, args.order, args.index) {
        (Some(text), _, _) => match text.parse() {
            Ok(w) => w,
            Err(e) => return invalid(io, format!("not a Skolem sequence: {e}")),
        },
        (None, Some(order), Some(index)) => {
            let found = enumerate_skolem(order as usize, true)
                .map(|mut it| it.nth(index as usize - 1));
            match found {
                Ok(Some(w)) => w,
                Ok(None) => return invalid(io, format!("order {order} has fewer than {index} sequences")),
                Err(e) => return invalid(io, e),
            }
        }
        _ => return invalid(io, "need --sequence or --order with --index"),
    };
    let base = match base_blocks(&w, args.x) {
        Ok(b) => b,
        Err(e) => return invalid(io, e),
    };
    let system = develop_sts(&base, w.order());
    let ok = verify_sts(&system);
    let mut text = String::new();
    for [a, b, c] in &base {
        text.push_str(&format!("base {a} {b} {c}\n"));
    }
    text.push_str(&OutputRecord::sts(&system, w.order()).payload);
    text.push_str(if ok { "VERIFIED\n" } else { "FAILED\n" });
    if io.stdout.write_all(text.as_bytes()).is_err() {
        return exit::IO;
    }
    match flush(io.stdout) {
        exit::OK if ok => exit::OK,
        exit::OK => exit::INVALID_INPUT,
        code => code,
    }
}

pub fn render(args: &RenderArgs, io: &mut Io<'_>) -> u8 {
    let state: OpenState = match args.sequence.parse() {
        Ok(s) => s,
        Err(e) => return invalid(io, format!("cannot parse sequence: {e}")),
    };
    let doc = match args.format {
        DiagramFormat::Ascii => render_ascii(&state),
        DiagramFormat::Svg => render_svg(&state),
    };
    match &args.out {
        Some(path) => write_file(path, &doc, io),
        None => match io.stdout.write_all(doc.as_bytes()) {
            Ok(()) => flush(io.stdout),
            Err(_) => exit::IO,
        },
    }
}

fn write_file(path: &Path, contents: &str, io: &mut Io<'_>) -> u8 {
    match std::fs::write(path, contents) {
        Ok(()) => exit::OK,
        Err(e) => {
            let _ = writeln!(io.stderr, "error: cannot write {}: {e}", path.display());
            exit::IO
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts() {
        assert_eq!(verdict("3,4,2,3,2,4,1,1"), Ok(4));
        assert_eq!(verdict("1,1,2,2"), Err("gap"));
        assert_eq!(verdict("*1"), Err("open"));
        assert_eq!(verdict("a,b"), Err("syntax"));
        assert_eq!(verdict("1,1,1,1"), Err("count"));
        assert_eq!(verdict(r#"{"order":1,"values":[1,1]}"#), Ok(1));
        assert_eq!(verdict(r#"{"order":2,"values":[1,1]}"#), Err("order"));
    }

    #[test]
    fn permutations() {
        assert_eq!(permutation_count(5), "3628800");
        assert_eq!(permutation_count(8), "20922789888000");
        assert!(permutation_count(31).starts_with("~1e"));
    }
}
