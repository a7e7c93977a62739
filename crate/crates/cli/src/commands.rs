use std::io::Write;

use lgeuler::check::{self, CheckResult};
use lgeuler::obstruction::{euler_both_cached, euler_recursion_cached};
use lgeuler::symmat::RankPair;
use lgeuler::vanishing::vanishing_certificate;
use lgeuler::word::{parse_partition, partition_from_word, word_from_partition};
use lgeuler::{
    bruhat_leq, count_labelings, decorate, enumerate_labelings, euler, explain, symmetric_euler_formula,
    symmetric_to_words, Method, ObstructionValue, SharedCache, Word,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::render;
use crate::{
    Command, ComputeArgs, ConvertArgs, Failure, Format, LabelingsArgs, Outcome, PairArgs, SelfcheckArgs,
    SymmetricArgs, TableArgs, TreeArgs,
};

const CACHE_ENV: &str = "LGEULER_CACHE_SIZE";
const DEFAULT_CACHE_SIZE: usize = 1 << 16;

pub fn run(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Compute(a) => compute(a, out),
        Command::Table(a) => table(a, out),
        Command::Tree(a) => tree(a, out),
        Command::Labelings(a) => labelings(a, out),
        Command::Vanishing(a) => vanishing(a, out),
        Command::Symmetric(a) => symmetric(a, out),
        Command::Convert(a) => convert(a, out),
        Command::Selfcheck(a) => selfcheck(a, out),
    }
}

fn allow(format: Format, allowed: &[Format], command: &str) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Failure::Usage(format!("--format {format:?} is not available for {command}").to_lowercase()))
    }
}

fn cache() -> Result<Option<SharedCache<ObstructionValue>>, Failure> {
    let size = match std::env::var(CACHE_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| Failure::Usage(format!("{CACHE_ENV} must be a non-negative integer, got {v:?}")))?,
        Err(_) => DEFAULT_CACHE_SIZE,
    };
    Ok((size > 0).then(|| SharedCache::new(size)))
}

fn evaluate(
    y: &Word,
    w: &Word,
    method: Method,
    cache: Option<&SharedCache<ObstructionValue>>,
) -> lgeuler::Result<ObstructionValue> {
    match (method, cache) {
        (Method::Recursion, Some(c)) => euler_recursion_cached(y, w, c),
        (Method::Both, Some(c)) => euler_both_cached(y, w, c),
        (m, _) => euler(y, w, m),
    }
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Recursion => "recursion",
        Method::Count => "count",
        Method::Both => "both",
    }
}

fn json_line(out: &mut dyn Write, value: &impl Serialize) -> Outcome {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Internal(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out)
}

fn csv_failure(e: csv::Error) -> Failure {
    Failure::Internal(format!("csv output failed: {e}"))
}

#[derive(Serialize)]
struct ComputeJson<'a> {
    y: &'a Word,
    w: &'a Word,
    method: &'static str,
    e: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<&'a [lgeuler::obstruction::TraceStep]>,
}

fn compute(a: ComputeArgs, out: &mut dyn Write) -> Outcome {
    let PairArgs { y, w, format } = &a.pair;
    allow(*format, &[Format::Text, Format::Json], "compute")?;
    let method = Method::from(a.method);
    let value = evaluate(y, w, method, cache()?.as_ref())?;
    let trace = if a.trace { Some(explain(y, w)?) } else { None };
    if let Some(t) = &trace {
        if t.value != value {
            return Err(Failure::Internal(format!(
                "trace value {} differs from computed value {value}",
                t.value
            )));
        }
    }
    match format {
        Format::Json => json_line(
            out,
            &ComputeJson {
                y,
                w,
                method: method_name(method),
                e: value.to_string(),
                trace: trace.as_ref().map(|t| t.steps.as_slice()),
            },
        ),
        _ => {
            if let Some(t) = &trace {
                for step in &t.steps {
                    writeln!(out, "{step}")?;
                }
            }
            writeln!(out, "{value}")?;
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct Row {
    y: Word,
    w: Word,
    e: String,
}

fn table(a: TableArgs, out: &mut dyn Write) -> Outcome {
    allow(a.format, &[Format::Text, Format::Json, Format::Csv], "table")?;
    let n = match (&a.w, a.n) {
        (Some(w), Some(n)) if w.len() != n => {
            return Err(Failure::Usage(format!("--n {n} does not match the length of --w {w}")))
        }
        (Some(w), _) => w.len(),
        (None, Some(n)) => n,
        (None, None) => return Err(Failure::Usage("table needs --n or --w".into())),
    };
    if n > a.max_n {
        return Err(Failure::Usage(format!("n = {n} exceeds --max-n {}", a.max_n)));
    }
    let words: Vec<Word> = Word::all(n).collect();
    let pairs: Vec<(Word, Word)> = match &a.w {
        Some(w) => words.iter().map(|y| (y.clone(), w.clone())).collect(),
        None => words
            .iter()
            .flat_map(|w| words.iter().map(move |y| (y.clone(), w.clone())))
            .filter(|(y, w)| bruhat_leq(y, w).expect("equal lengths"))
            .collect(),
    };
    let method = Method::from(a.method);
    let cache = cache()?;
    let mut rows = pairs
        .into_par_iter()
        .map(|(y, w)| {
            let e = evaluate(&y, &w, method, cache.as_ref())?;
            Ok(Row { y, w, e: e.to_string() })
        })
        .collect::<lgeuler::Result<Vec<Row>>>()?;
    rows.sort_by(|p, q| (&p.y, &p.w).cmp(&(&q.y, &q.w)));
    match a.format {
        Format::Json => json_line(out, &rows),
        Format::Csv => {
            let mut wtr = csv_writer(out);
            for row in &rows {
                wtr.serialize(row).map_err(csv_failure)?;
            }
            wtr.flush()?;
            Ok(())
        }
        _ => {
            for row in &rows {
                writeln!(out, "{} {} {}", row.y, row.w, row.e)?;
            }
            Ok(())
        }
    }
}

fn tree(a: TreeArgs, out: &mut dyn Write) -> Outcome {
    let t = decorate(&a.y, &a.w)?;
    match a.format {
        Format::Ascii | Format::Text => write!(out, "{}", render::ascii(&t))?,
        Format::Dot => write!(out, "{}", render::dot(&t))?,
        Format::Json => json_line(out, &t.to_json_schema())?,
        Format::Csv => allow(a.format, &[], "tree")?,
    }
    Ok(())
}

#[derive(Serialize)]
struct LabelingsJson {
    edges: Vec<String>,
    count: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    labelings: Option<Vec<lgeuler::Labeling>>,
}

fn labelings(a: LabelingsArgs, out: &mut dyn Write) -> Outcome {
    let PairArgs { y, w, format } = &a.pair;
    allow(*format, &[Format::Text, Format::Json], "labelings")?;
    let t = decorate(y, w)?;
    let count = count_labelings(&t);
    let listed = if a.count {
        None
    } else {
        let all = enumerate_labelings(&t, Some(a.max_states))?;
        if ObstructionValue::from(all.len()) != count {
            return Err(Failure::Internal(format!(
                "enumerated {} labelings but counted {count}",
                all.len()
            )));
        }
        Some(all)
    };
    let names: Vec<String> = (0..t.tree().edge_count()).map(|e| render::edge_name(t.tree(), e)).collect();
    if *format == Format::Json {
        return json_line(
            out,
            &LabelingsJson {
                edges: names,
                count: count.to_string(),
                labelings: listed,
            },
        );
    }
    for l in listed.iter().flatten() {
        let line: Vec<String> = names.iter().zip(l.values()).map(|(n, v)| format!("{n}={v}")).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    writeln!(out, "{count}")?;
    Ok(())
}

#[derive(Serialize)]
struct VanishingJson {
    verdict: &'static str,
    summary: String,
    certificate: lgeuler::vanishing::VanishingCertificate,
}

fn vanishing(a: PairArgs, out: &mut dyn Write) -> Outcome {
    allow(a.format, &[Format::Text, Format::Json], "vanishing")?;
    let cert = vanishing_certificate(&a.y, &a.w)?;
    let verdict = if cert.vanishes() { "zero" } else { "nonzero" };
    if a.format == Format::Json {
        return json_line(
            out,
            &VanishingJson {
                verdict,
                summary: cert.to_string(),
                certificate: cert,
            },
        );
    }
    writeln!(out, "{verdict}\n{cert}")?;
    Ok(())
}

#[derive(Serialize)]
struct SymmetricRow {
    i: usize,
    j: usize,
    e: String,
}

fn symmetric(a: SymmetricArgs, out: &mut dyn Write) -> Outcome {
    allow(a.format, &[Format::Text, Format::Json, Format::Csv], "symmetric")?;
    if a.n > a.max_n {
        return Err(Failure::Usage(format!("n = {} exceeds --max-n {}", a.n, a.max_n)));
    }
    let cells: Vec<(usize, usize)> = match (a.i, a.j) {
        (Some(i), Some(j)) => vec![(i, j)],
        _ => (0..=a.n).flat_map(|i| (0..=a.n).map(move |j| (i, j))).collect(),
    };
    let mut rows = Vec::with_capacity(cells.len());
    for (i, j) in cells {
        let p = RankPair::new(a.n, i, j)?;
        let e = symmetric_euler_formula(p);
        if a.verify && i <= j {
            let (y, w) = symmetric_to_words(p)?;
            let direct = euler(&y, &w, Method::Both)?;
            if direct != e {
                return Err(Failure::Check(format!(
                    "n={} i={i} j={j}: formula {e}, words ({y}, {w}) give {direct}",
                    a.n
                )));
            }
        }
        rows.push(SymmetricRow { i, j, e: e.to_string() });
    }
    match a.format {
        Format::Json => json_line(out, &rows),
        Format::Csv => {
            let mut wtr = csv_writer(out);
            for row in &rows {
                wtr.serialize(row).map_err(csv_failure)?;
            }
            wtr.flush()?;
            Ok(())
        }
        _ if rows.len() == 1 => {
            writeln!(out, "{}", rows[0].e)?;
            Ok(())
        }
        _ => {
            let width = rows.iter().map(|r| r.e.len()).max().unwrap_or(1);
            for line in rows.chunks(a.n + 1) {
                let cells: Vec<String> = line.iter().map(|r| format!("{:>width$}", r.e)).collect();
                writeln!(out, "{}", cells.join(" "))?;
            }
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct ConvertJson {
    n: usize,
    word: Word,
    partition: Vec<usize>,
}

fn convert(a: ConvertArgs, out: &mut dyn Write) -> Outcome {
    allow(a.format, &[Format::Text, Format::Json], "convert")?;
    let (word, partition, from_word) = match (&a.partition, a.n, &a.word) {
        (Some(text), Some(n), None) => {
            let p = parse_partition(text, n)?;
            (word_from_partition(&p), p, false)
        }
        (None, _, Some(w)) => (w.clone(), partition_from_word(w), true),
        _ => return Err(Failure::Usage("convert needs --partition with --n, or --word".into())),
    };
    if a.format == Format::Json {
        return json_line(
            out,
            &ConvertJson {
                n: word.len(),
                word,
                partition: partition.parts().iter().copied().filter(|&p| p > 0).collect(),
            },
        );
    }
    if from_word {
        writeln!(out, "{partition}")?;
    } else {
        writeln!(out, "{word}")?;
    }
    Ok(())
}

fn selfcheck(a: SelfcheckArgs, out: &mut dyn Write) -> Outcome {
    let enum_n = a.max_n.min(a.max_enum_n);
    let checks: Vec<(String, Box<dyn Fn() -> CheckResult>)> = vec![
        ("worked examples".into(), Box::new(check::worked_examples::<ObstructionValue>)),
        (
            format!("recursion = count, zero iff vanishing criterion, n <= {}", a.max_n),
            Box::new(move || check::recursion_count_vanishing(a.max_n)),
        ),
        (
            format!("enumeration = count, n <= {enum_n}"),
            Box::new(move || check::enumeration_count(enum_n, Some(a.max_states))),
        ),
        (
            format!("symmetric formula = word methods, n <= {}", a.max_n),
            Box::new(move || check::symmetric_embedding(a.max_n)),
        ),
    ];
    let total = checks.len();
    for (name, run) in checks {
        match run() {
            Ok(cases) => writeln!(out, "PASS {name} ({cases} cases)")?,
            Err(c) => {
                writeln!(out, "FAIL {name}")?;
                return Err(Failure::Check(format!("counterexample: {c}")));
            }
        }
    }
    writeln!(out, "{total} of {total} checks passed")?;
    Ok(())
}
