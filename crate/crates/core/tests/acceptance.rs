//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.
//!
//! Criterion 7 compares against real Covid/MovieLens datasets only when
//! `UPSET_COVID_DATA` / `UPSET_MOVIES_DATA` point at them; the synthetic
//! reconstructions always run.

mod common;

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::net::{SocketAddr, TcpStream};
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use upset_alttext::api::http::router;
use upset_alttext::api::{self, DescriptionResponse, ErrorBody};
use upset_alttext::patterns::{fit_distribution, summarize_statistics, DistributionLabel, SetSize};
use upset_alttext::textgen::HEADINGS;
use upset_alttext::{
    analyze, compute_table, describe_plot, DescriptionOptions, Intersection, IntersectionTable,
    PlotConfig, SetDataset, SortBy, SortOrder,
};

use common::{
    brute_force, check_golden, describe_fixture, random_dataset, random_visible, FIXTURES,
};

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;
type Shape = fn(f64) -> f64;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

// ---------------------------------------------------------------- data

const COVID_SETS: [&str; 6] = [
    "Cough",
    "Anosmia",
    "Fatigue",
    "Fever",
    "Diarrhea",
    "Shortness of Breath",
];

/// 32 rows; set sizes 1531/1051/897/363/350/148, largest rows as in the reference text.
const COVID_ROWS: &[(&[&str], u64)] = &[
    (&["Anosmia", "Fatigue"], 281),
    (&["Cough", "Anosmia", "Fatigue"], 259),
    (&["Fatigue"], 198),
    (&["Cough", "Fatigue"], 179),
    (&["Anosmia"], 140),
    (&["Cough", "Fatigue", "Fever"], 135),
    (&["Cough", "Anosmia", "Fatigue", "Fever"], 60),
    (&["Cough", "Anosmia", "Fatigue", "Diarrhea"], 52),
    (&["Anosmia", "Fatigue", "Diarrhea"], 45),
    (&["Cough", "Anosmia", "Fatigue", "Shortness of Breath"], 40),
    (&["Fatigue", "Fever"], 36),
    (&["Cough", "Fatigue", "Diarrhea"], 33),
    (&["Fatigue", "Diarrhea"], 30),
    (
        &[
            "Cough",
            "Anosmia",
            "Fatigue",
            "Diarrhea",
            "Shortness of Breath",
        ],
        28,
    ),
    (&["Cough", "Anosmia", "Fatigue", "Fever", "Diarrhea"], 26),
    (&["Anosmia", "Diarrhea"], 25),
    (
        &[
            "Cough",
            "Anosmia",
            "Fatigue",
            "Fever",
            "Diarrhea",
            "Shortness of Breath",
        ],
        23,
    ),
    (&["Fatigue", "Fever", "Diarrhea"], 21),
    (&["Cough", "Fatigue", "Fever", "Diarrhea"], 19),
    (&["Cough", "Anosmia", "Diarrhea"], 17),
    (&["Shortness of Breath"], 15),
    (&["Anosmia", "Fatigue", "Fever"], 14),
    (&["Anosmia", "Fatigue", "Fever", "Diarrhea"], 12),
    (
        &["Anosmia", "Fatigue", "Diarrhea", "Shortness of Breath"],
        11,
    ),
    (&["Fever"], 10),
    (&["Anosmia", "Fatigue", "Shortness of Breath"], 9),
    (&["Cough", "Fatigue", "Diarrhea", "Shortness of Breath"], 8),
    (&["Cough", "Fatigue", "Fever", "Shortness of Breath"], 7),
    (&["Cough", "Anosmia"], 7),
    (&["Cough", "Fatigue", "Shortness of Breath"], 4),
    (&["Anosmia", "Shortness of Breath"], 2),
    (&["Fatigue", "Shortness of Breath"], 1),
];

const MOVIES_VISIBLE: [&str; 6] = [
    "Thriller",
    "Action",
    "Adventure",
    "Children",
    "War",
    "Western",
];

/// Hidden genres and their sizes (4563 memberships in total).
const MOVIES_HIDDEN: [(&str, usize); 11] = [
    ("Drama", 1542),
    ("Comedy", 1200),
    ("Romance", 471),
    ("Crime", 211),
    ("Horror", 343),
    ("Sci-Fi", 276),
    ("Documentary", 127),
    ("Musical", 114),
    ("Mystery", 106),
    ("Animation", 105),
    ("Fantasy", 68),
];

/// 28 rows over the visible genres; set sizes 503/492/283/251/143/68.
const MOVIES_ROWS: &[(&[&str], u64)] = &[
    (&[], 2569),
    (&["Thriller"], 349),
    (&["Action"], 218),
    (&["Children"], 160),
    (&["Thriller", "Action"], 104),
    (&["Action", "Adventure"], 103),
    (&["Adventure"], 100),
    (&["Adventure", "War"], 70),
    (&["War"], 45),
    (&["Action", "Children"], 30),
    (&["Western"], 22),
    (&["Action", "Children", "Western"], 16),
    (&["Thriller", "Children", "Western"], 14),
    (&["Thriller", "War"], 7),
    (&["Action", "War"], 7),
    (&["Children", "War"], 7),
    (&["Action", "Western"], 6),
    (&["Children", "Western"], 6),
    (&["Action", "Thriller", "Adventure"], 5),
    (&["Action", "Thriller", "Children"], 5),
    (&["Adventure", "Children"], 4),
    (&["Thriller", "Children"], 4),
    (&["Action", "Children", "War"], 3),
    (&["Action", "Thriller", "Western"], 2),
    (&["Action", "War", "Western"], 2),
    (&["Action", "Thriller", "War"], 1),
    (&["Thriller", "Children", "War"], 1),
    (&["Action", "Adventure", "Children"], 1),
];

fn expand(rows: &[(&[&str], u64)]) -> Vec<Vec<String>> {
    rows.iter()
        .flat_map(|(sets, n)| (0..*n).map(move |_| sets.iter().map(|s| s.to_string()).collect()))
        .collect()
}

fn covid_dataset() -> SetDataset {
    let members = expand(COVID_ROWS);
    let ids: Vec<String> = (0..members.len()).map(|i| format!("case{i:04}")).collect();
    SetDataset::new(
        ids.clone(),
        COVID_SETS.map(String::from),
        ids.into_iter().zip(members),
    )
    .unwrap()
}

fn movies_dataset() -> SetDataset {
    let mut members = expand(MOVIES_ROWS);
    let n = members.len();
    // hidden genres wrap around the element list, so no element repeats within one genre
    let mut offset = 0;
    for (genre, size) in MOVIES_HIDDEN {
        for k in 0..size {
            members[(offset + k) % n].push(genre.to_owned());
        }
        offset = (offset + size) % n;
    }
    let names: Vec<String> = MOVIES_VISIBLE
        .iter()
        .chain(MOVIES_HIDDEN.iter().map(|h| &h.0))
        .map(|s| s.to_string())
        .collect();
    let ids: Vec<String> = (0..n).map(|i| format!("movie{i:04}")).collect();
    SetDataset::new(ids.clone(), names, ids.into_iter().zip(members)).unwrap()
}

fn section<'a>(markdown: &'a str, heading: &str) -> Option<&'a str> {
    let body = markdown.strip_prefix("# ").unwrap_or(markdown);
    body.split("\n# ")
        .find_map(|s| s.strip_prefix(heading).map(str::trim))
}

// ---------------------------------------------------------------- 1, 2

fn partition_invariant() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(2024);
    for seed in 0..1000u64 {
        let ds = random_dataset(seed, rng.gen_range(1..=200), rng.gen_range(1..=8));
        let cfg = random_visible(seed, &ds);
        let table = compute_table(&ds, &cfg).map_err(|e| e.to_string())?;
        ensure!(
            table.total() == ds.len() as u64,
            "seed {seed}: sizes sum to {} for {} elements",
            table.total(),
            ds.len()
        );
    }
    let elapsed = start.elapsed();
    ensure!(
        elapsed < Duration::from_secs(5),
        "took {elapsed:.2?} (limit 5 s)"
    );
    Ok(format!("1000 datasets partitioned in {elapsed:.2?}"))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(77);
    let mut checked = 0;
    for seed in 0..500u64 {
        let ds = random_dataset(seed, rng.gen_range(1..=12), rng.gen_range(1..=4));
        for cfg in [PlotConfig::all_sets(&ds), random_visible(seed, &ds)] {
            let table = compute_table(&ds, &cfg).map_err(|e| e.to_string())?;
            let got: BTreeMap<Vec<String>, u64> = table
                .rows
                .iter()
                .map(|r| (r.sets.clone(), r.size))
                .collect();
            ensure!(
                got == brute_force(&ds, &cfg.visible_sets),
                "seed {seed}: table differs from 2^n enumeration"
            );
            checked += 1;
        }
    }
    Ok(format!("{checked} tables match subset enumeration exactly"))
}

// ---------------------------------------------------------------- 3, 4

fn percentile_fidelity() -> Outcome {
    let mut detail = Vec::new();
    for (name, ds, visible, rank, expected) in [
        ("32-row", covid_dataset(), COVID_SETS.to_vec(), 29, 179),
        ("28-row", movies_dataset(), MOVIES_VISIBLE.to_vec(), 26, 218),
    ] {
        let report = analyze(&ds, &PlotConfig::new(visible).validate(&ds).unwrap())
            .map_err(|e| e.to_string())?;
        let mut ascending: Vec<u64> = report.table.rows.iter().map(|r| r.size).collect();
        ascending.sort_unstable();
        let oracle = ascending[rank - 1];
        ensure!(
            oracle == expected,
            "{name}: rank-{rank} value is {oracle}, fixture expects {expected}"
        );
        ensure!(
            report.statistics.p90 == expected,
            "{name}: p90 = {}, expected {expected}",
            report.statistics.p90
        );
        detail.push(format!("{name} p90 = {}", report.statistics.p90));
    }
    Ok(detail.join(", "))
}

fn table_of(sizes: &[u64]) -> IntersectionTable {
    IntersectionTable {
        rows: sizes
            .iter()
            .enumerate()
            .map(|(i, &size)| Intersection {
                sets: vec![format!("S{i}")],
                size,
            })
            .collect(),
        n_visible: sizes.len(),
        sort_by: SortBy::Size,
        sort_order: SortOrder::Descending,
    }
}

fn dominance_factor() -> Outcome {
    let set_sizes = |t: &IntersectionTable| -> Vec<SetSize> {
        t.rows
            .iter()
            .map(|r| SetSize {
                name: r.sets[0].clone(),
                size: r.size,
            })
            .collect()
    };
    let peaked = table_of(&[2569, 349, 218, 160, 104]);
    let got = summarize_statistics(&peaked, &set_sizes(&peaked)).dominance_factor;
    ensure!(got == Some(2569 / 349), "2569/349 gave {got:?}");
    ensure!(got == Some(7), "2569/349 gave {got:?}, expected 7");

    for sizes in [[100u64, 60, 5], [199, 100, 1], [10, 10, 3]] {
        let t = table_of(&sizes);
        let got = summarize_statistics(&t, &set_sizes(&t)).dominance_factor;
        ensure!(got.is_none(), "{sizes:?} gave {got:?}, expected none");
    }
    let movies = analyze(
        &movies_dataset(),
        &PlotConfig::new(MOVIES_VISIBLE)
            .validate(&movies_dataset())
            .unwrap(),
    )
    .map_err(|e| e.to_string())?;
    ensure!(
        movies.statistics.dominance_factor == Some(7),
        "movies reconstruction factor {:?}",
        movies.statistics.dominance_factor
    );
    Ok("2569/349 -> 7; ratios below 2 -> none".into())
}

// ---------------------------------------------------------------- 5

fn distribution_recovery() -> Outcome {
    let families: [(&str, DistributionLabel, Shape); 4] = [
        (
            "exponential beta=0.5",
            DistributionLabel::RapidlyFlattening,
            |x| (-0.5 * x).exp(),
        ),
        (
            "exponential beta=0.9",
            DistributionLabel::DrasticallyFlattening,
            |x| (-0.9 * x).exp(),
        ),
        ("quadratic", DistributionLabel::QuicklyFlattening, |x| {
            0.15 + 0.85 * (1.0 - x).powi(2)
        }),
        ("linear", DistributionLabel::SteadilyFlattening, |x| {
            1.0 - 0.8 * x
        }),
    ];
    let mut summary = Vec::new();
    for (name, expected, shape) in families {
        let mut hits = 0;
        for seed in 0..50u64 {
            let mut rng = StdRng::seed_from_u64(seed);
            let n = rng.gen_range(6..=60);
            let scale = rng.gen_range(10.0..10_000.0);
            let mut series: Vec<f64> = (0..n)
                .map(|i| scale * shape(i as f64 / (n - 1) as f64))
                .collect();
            // input order must not matter
            series.reverse();
            let got = fit_distribution(&series).label;
            ensure!(
                got == expected,
                "{name}, seed {seed} (n={n}): got {got:?}, expected {expected:?}"
            );
            hits += 1;
        }
        summary.push(format!("{name} {hits}/50"));
    }
    Ok(summary.join(", "))
}

// ---------------------------------------------------------------- 6

fn check_structure(doc: &upset_alttext::DescriptionDocument, glossary: bool) -> Result<(), String> {
    let headings: Vec<&str> = doc
        .long_markdown
        .lines()
        .filter_map(|l| l.strip_prefix("# "))
        .collect();
    let mut expected = HEADINGS.to_vec();
    if glossary {
        expected.push("Glossary");
    }
    ensure!(headings == expected, "headings {headings:?}");
    let intro = section(&doc.long_markdown, HEADINGS[0]).ok_or("no introduction")?;
    ensure!(
        intro.contains(&doc.short_text),
        "short text missing from the introduction"
    );
    Ok(())
}

fn template_structure() -> Outcome {
    let mut goldens = 0;
    for (name, _, _) in FIXTURES {
        for (suffix, options) in [
            ("md", DescriptionOptions::default()),
            (
                "paragraphs.md",
                DescriptionOptions {
                    bullets: false,
                    glossary: false,
                    ..Default::default()
                },
            ),
        ] {
            let doc = describe_fixture(name, &options);
            check_structure(&doc, options.glossary).map_err(|e| format!("{name}: {e}"))?;
            check_golden(&format!("{name}.{suffix}"), &doc.long_markdown)?;
            goldens += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(6);
    for seed in 0..300u64 {
        let ds = random_dataset(seed, rng.gen_range(1..=150), rng.gen_range(1..=8));
        let cfg = random_visible(seed, &ds);
        let options = DescriptionOptions {
            bullets: rng.gen(),
            glossary: rng.gen(),
            ..Default::default()
        };
        let doc = describe_plot(&ds, &cfg, &options).map_err(|e| e.to_string())?;
        check_structure(&doc, options.glossary).map_err(|e| format!("random seed {seed}: {e}"))?;
    }
    Ok(format!("{goldens} golden files match; 300 random inputs have the six headings and contain the short text"))
}

// ---------------------------------------------------------------- 7

const COVID_DATASET: &str =
    "The dataset contains 6 sets and 4340 elements, of which 6 sets are shown in the plot.";
const COVID_SETS_TEXT: &str = "The set sizes are diverging a lot, ranging from 148 to 1531. The largest set is Fatigue with 1531 elements, followed by Anosmia with 1051, Cough with 897, Fever with 363, Diarrhea with 350, and Shortness of Breath with 148.";
const MOVIES_DATASET: &str =
    "The dataset contains 17 sets and 6303 elements, of which 6 sets are shown in the plot.";
const MOVIES_SETS_TEXT: &str = "The set sizes are diverging a lot, ranging from 68 to 503. The largest set is Action with 503 elements, followed by Thriller with 492, Adventure with 283, Children with 251, War with 143, and Western with 68.";

fn compare_reference(
    ds: &SetDataset,
    visible: &[&str],
    dataset_text: &str,
    sets_text: &str,
) -> Outcome {
    let cfg = PlotConfig::new(visible.iter().copied())
        .validate(ds)
        .map_err(|e| e.to_string())?;
    let options = DescriptionOptions {
        bullets: false,
        glossary: false,
        ..Default::default()
    };
    let doc = describe_plot(ds, &cfg, &options).map_err(|e| e.to_string())?;
    let got = section(&doc.long_markdown, "Dataset Properties").unwrap_or_default();
    ensure!(
        got == dataset_text,
        "dataset sentence\n    got:      {got}\n    expected: {dataset_text}"
    );
    let got = section(&doc.long_markdown, "Set Properties").unwrap_or_default();
    ensure!(
        got == sets_text,
        "set sentence\n    got:      {got}\n    expected: {sets_text}"
    );

    let report = analyze(ds, &cfg).map_err(|e| e.to_string())?;
    let st = &report.statistics;
    Ok(format!(
        "rows {}, mean {}, median {}, p90 {}, p10 {}",
        report.table.len(),
        st.mean.round(),
        st.median.round(),
        st.p90,
        st.p10
    ))
}

fn reference_reproduction() -> Outcome {
    let covid = compare_reference(
        &covid_dataset(),
        &COVID_SETS,
        COVID_DATASET,
        COVID_SETS_TEXT,
    )
    .map_err(|e| format!("covid reconstruction: {e}"))?;
    let movies = compare_reference(
        &movies_dataset(),
        &MOVIES_VISIBLE,
        MOVIES_DATASET,
        MOVIES_SETS_TEXT,
    )
    .map_err(|e| format!("movies reconstruction: {e}"))?;
    for (name, got, expected) in [
        (
            "covid",
            &covid,
            "rows 32, mean 55, median 24, p90 179, p10 7",
        ),
        (
            "movies",
            &movies,
            "rows 28, mean 138, median 7, p90 218, p10 1",
        ),
    ] {
        ensure!(
            got == expected,
            "{name} reconstruction statistics: {got}, expected {expected}"
        );
    }

    let mut real = Vec::new();
    for (var, visible, dataset_text, sets_text) in [
        (
            "UPSET_COVID_DATA",
            &COVID_SETS[..],
            COVID_DATASET,
            COVID_SETS_TEXT,
        ),
        (
            "UPSET_MOVIES_DATA",
            &MOVIES_VISIBLE[..],
            MOVIES_DATASET,
            MOVIES_SETS_TEXT,
        ),
    ] {
        match std::env::var_os(var) {
            Some(path) => {
                let ds = upset_alttext::ingest::load_dataset(Path::new(&path))
                    .map_err(|e| format!("{var}: {e}"))?
                    .value;
                compare_reference(&ds, visible, dataset_text, sets_text)
                    .map_err(|e| format!("{var}: {e}"))?;
                real.push(format!("{var} matches"));
            }
            None => real.push(format!("{var} unset, real-data check skipped")),
        }
    }
    Ok(format!(
        "synthetic reconstructions reproduce the Dataset/Set Properties text (covid: {covid}; movies: {movies}; \
         reference figures 32/55/24/179/7 and 28/138/7/218/1; the element count is total memberships); {}",
        real.join("; ")
    ))
}

// ---------------------------------------------------------------- 8, 9

fn start_server(max_body_bytes: usize) -> SocketAddr {
    let (tx, rx) = std::sync::mpsc::channel();
    std::thread::spawn(move || {
        let runtime = tokio::runtime::Runtime::new().unwrap();
        runtime.block_on(async move {
            let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
            tx.send(listener.local_addr().unwrap()).unwrap();
            axum::serve(listener, router(max_body_bytes)).await.unwrap();
        });
    });
    rx.recv().unwrap()
}

struct HttpReply {
    status: u16,
    content_type: String,
    body: Vec<u8>,
}

fn http(addr: SocketAddr, method: &str, path: &str, body: &[u8]) -> Result<HttpReply, String> {
    let mut stream = TcpStream::connect(addr).map_err(|e| e.to_string())?;
    stream.set_read_timeout(Some(Duration::from_secs(10))).ok();
    let head = format!(
        "{method} {path} HTTP/1.1\r\nHost: localhost\r\nContent-Type: application/json\r\n\
         Content-Length: {}\r\nConnection: close\r\n\r\n",
        body.len()
    );
    stream
        .write_all(head.as_bytes())
        .map_err(|e| e.to_string())?;
    // the server may answer 413 before taking the whole body
    let _ = stream.write_all(body);
    let mut raw = Vec::new();
    stream.read_to_end(&mut raw).map_err(|e| e.to_string())?;

    let split = raw
        .windows(4)
        .position(|w| w == b"\r\n\r\n")
        .ok_or("no header terminator")?;
    let head = String::from_utf8_lossy(&raw[..split]).to_string();
    let status = head
        .split_whitespace()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .ok_or("no status line")?;
    let content_type = head
        .lines()
        .find_map(|l| {
            let (k, v) = l.split_once(':')?;
            k.eq_ignore_ascii_case("content-type")
                .then(|| v.trim().to_owned())
        })
        .unwrap_or_default();
    Ok(HttpReply {
        status,
        content_type,
        body: raw[split + 4..].to_vec(),
    })
}

fn determinism() -> Outcome {
    let config = common::fixture("organizations.config.json");
    let bin = env!("CARGO_BIN_EXE_upset-alttext");
    let mut first: Option<Vec<u8>> = None;
    for i in 0..100 {
        let out = Command::new(bin)
            .args(["--config", config.to_str().unwrap(), "--top-k", "7"])
            .output()
            .map_err(|e| e.to_string())?;
        ensure!(
            out.status.success(),
            "CLI run {i} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        match &first {
            None => first = Some(out.stdout),
            Some(f) => ensure!(*f == out.stdout, "CLI run {i} differs"),
        }
    }

    let addr = start_server(api::http::DEFAULT_MAX_BODY_BYTES);
    let body = std::fs::read(&config).map_err(|e| e.to_string())?;
    let reference = http(addr, "POST", "/api/v1/description?topK=7", &body)?;
    ensure!(reference.status == 200, "HTTP status {}", reference.status);
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let body = body.clone();
            std::thread::spawn(move || {
                (0..25)
                    .map(|_| {
                        http(addr, "POST", "/api/v1/description?topK=7", &body).map(|r| r.body)
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
        })
        .collect();
    for handle in handles {
        for reply in handle.join().map_err(|_| "client thread panicked")?? {
            ensure!(reply == reference.body, "HTTP response body differs");
        }
    }

    let response: DescriptionResponse =
        serde_json::from_slice(&reference.body).map_err(|e| e.to_string())?;
    let cli_text = String::from_utf8(first.unwrap()).map_err(|e| e.to_string())?;
    ensure!(
        cli_text
            == format!(
                "{}\n\n{}",
                response.short_description, response.long_description
            ),
        "CLI and HTTP descriptions differ"
    );
    Ok("100 CLI runs and 100 concurrent HTTP requests byte-identical; CLI matches HTTP".into())
}

fn http_contract() -> Outcome {
    let start = Instant::now();
    let addr = start_server(api::http::DEFAULT_MAX_BODY_BYTES);
    let small = start_server(4096);

    let error_of = |reply: &HttpReply| -> Result<ErrorBody, String> {
        ensure!(
            reply.content_type == "application/json",
            "error content type {}",
            reply.content_type
        );
        serde_json::from_slice(&reply.body)
            .map_err(|e| format!("error body is not structured: {e}"))
    };

    let r = http(
        addr,
        "POST",
        "/api/v1/description",
        br#"{"data": {"sets": "#,
    )?;
    ensure!(r.status == 400, "malformed JSON gave {}", r.status);
    ensure!(error_of(&r)?.code == "SyntaxError", "malformed JSON code");

    let r = http(
        addr,
        "POST",
        "/api/v1/description",
        br#"{"visibleSets": ["A"]}"#,
    )?;
    ensure!(
        r.status == 400 && error_of(&r)?.code == "MissingData",
        "missing data gave {}",
        r.status
    );

    let oversize = format!(
        r#"{{"title": "{}", "data": {{"sets": {{"A": ["a"]}}}}}}"#,
        "x".repeat(6000)
    );
    let r = http(small, "POST", "/api/v1/description", oversize.as_bytes())?;
    ensure!(r.status == 413, "oversize body gave {}", r.status);
    ensure!(error_of(&r)?.code == "PayloadTooLarge", "oversize code");

    let body = br#"{"data": {"sets": {"A": ["a", "b"], "B": ["b"]}}, "visibleSets": ["A", "C"]}"#;
    let r = http(addr, "POST", "/api/v1/description", body)?;
    ensure!(r.status == 422, "unknown visible set gave {}", r.status);
    let err = error_of(&r)?;
    ensure!(
        err.code == "UnknownVisibleSet" && err.path == "/visibleSets/1",
        "422 body {err:?}"
    );

    let r = http(addr, "GET", "/api/v1/health", b"")?;
    ensure!(
        r.status == 200 && r.body == b"ok",
        "health gave {} {:?}",
        r.status,
        r.body
    );

    let r = http(addr, "GET", "/api/v1/schema", b"")?;
    ensure!(r.status == 200, "schema gave {}", r.status);
    ensure!(
        r.content_type == "application/schema+json",
        "schema content type {}",
        r.content_type
    );
    ensure!(
        r.body == api::CONFIG_SCHEMA.as_bytes(),
        "schema body differs"
    );

    let valid =
        std::fs::read(common::fixture("organizations.config.json")).map_err(|e| e.to_string())?;
    let r = http(addr, "POST", "/api/v1/description", &valid)?;
    ensure!(r.status == 200, "valid request gave {}", r.status);

    let elapsed = start.elapsed();
    ensure!(
        elapsed < Duration::from_secs(30),
        "contract suite took {elapsed:.2?}"
    );
    Ok(format!(
        "400/413/422, health and schema as specified in {elapsed:.2?}"
    ))
}

// ---------------------------------------------------------------- runner

fn main() {
    let criteria: [(&str, Check); 9] = [
        ("partition invariant", partition_invariant),
        ("oracle equivalence", oracle_equivalence),
        ("percentile fidelity", percentile_fidelity),
        ("dominance factor", dominance_factor),
        ("distribution-fit recovery", distribution_recovery),
        ("template structure", template_structure),
        ("reference text reproduction", reference_reproduction),
        ("determinism", determinism),
        ("HTTP contract", http_contract),
    ];

    // `cargo test -- --list` and filters pass through here too
    if std::env::args().any(|a| a == "--list") {
        return;
    }

    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|payload| {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    let _ = panic::take_hook();
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
