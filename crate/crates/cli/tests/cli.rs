use std::fs;
use std::process::{Command, Output};

fn ais(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ais"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = ais(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn generate_prints_the_catalog() {
    let text = stdout(&["generate"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 919);
    assert_eq!(
        lines[0],
        "\"label\",\"row\",\"intervals\",\"s\",\"p\",\"l\",\"link_windows\""
    );
    assert!(lines[1].starts_with("\"12-0P\",\"[0 1 3 7 2 5 11 10 8 4 9 6]\""));
    assert!(lines[918].starts_with("\"12-917L\""));
    assert_eq!(text, stdout(&["generate"]));
}

#[test]
fn generate_writes_selected_formats() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    stdout(&["generate", "--out", out, "--format", "json"]);
    assert!(dir.path().join("catalog.json").exists());
    assert!(!dir.path().join("catalog.csv").exists());
}

#[test]
fn transform_single_operations() {
    let p = "[0 1 3 7 2 5 11 10 8 4 9 6]";
    assert_eq!(
        stdout(&["transform", p, "I"]),
        "[0 11 9 5 10 7 1 2 4 8 3 6]\n"
    );
    assert_eq!(
        stdout(&["transform", "12-0P", "R"]),
        "[0 3 10 2 4 5 11 8 1 9 7 6]\n"
    );
    assert_eq!(
        stdout(&["transform", "12-0P", "M"]),
        "[0 5 3 11 10 1 7 2 4 8 9 6]\n"
    );
    assert_eq!(
        stdout(&["transform", "12-0P", "Q"]),
        "[0 11 9 5 10 7 1 2 4 8 3 6]\n"
    );
    assert_eq!(
        stdout(&["transform", p, "T:3"]),
        "[3 4 6 10 5 8 2 1 11 7 0 9]\n"
    );
    assert_eq!(
        stdout(&["transform", "0,1,3,7,2,5,11,10,8,4,9,6", "T:0"]),
        format!("{p}\n")
    );
}

#[test]
fn transform_star_and_constellation() {
    let star = stdout(&["transform", "12-0P", "star"]);
    assert_eq!(star.lines().count(), 5);
    assert!(star.lines().any(|l| l == "M  [0 5 3 11 10 1 7 2 4 8 9 6]"));
    let table = stdout(&["transform", "12-0P", "constellation"]);
    assert_eq!(table.lines().count(), 16);
    assert!(table
        .lines()
        .any(|l| l == "QR.IM [0 3 2 10 8 1 7 4 5 9 11 6]"));
}

#[test]
fn classify_reports_flags() {
    let text = stdout(&["classify", "12-12L", "[0 1 3 10 2 5 11 8 4 9 7 6]"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[1], "12-12L\t[0 1 3 8 2 5 9 7 4 11 10 6]\t0\t0\t1\t1");
    assert_eq!(lines[2], "12-25S\t[0 1 3 10 2 5 11 8 4 9 7 6]\t1\t0\t0\t");
    assert_eq!(stdout(&["classify"]).lines().count(), 919);
}

#[test]
fn neighbors_sorted_by_distance_then_label() {
    let text = stdout(&["neighbors", "12-657"]);
    let rows: Vec<(String, u32)> = text
        .lines()
        .map(|l| {
            let mut f = l.split('\t');
            (
                f.next().unwrap().to_owned(),
                f.next().unwrap().parse().unwrap(),
            )
        })
        .collect();
    assert_eq!(rows[0], ("12-656".to_owned(), 2));
    assert!(rows.windows(2).all(|w| w[0].1 <= w[1].1));
    assert!(rows.iter().all(|(_, d)| *d <= 20));
    assert!(stdout(&["neighbors", "12-657", "--threshold-sq", "0"]).is_empty());
}

#[test]
fn network_writes_files_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let text = stdout(&["network", "--out", out, "--seed", "4"]);
    assert!(text.contains("giant_component\t648\n"));
    assert!(text.contains("isolated\t111\n"));
    assert!(text.contains("close_coupled\t42\n"));
    for f in [
        "catalog.csv",
        "catalog.json",
        "network.gexf",
        "network.graphml",
        "edges.csv",
        "stats.json",
    ] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    let stats: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("stats.json")).unwrap()).unwrap();
    assert_eq!(stats["edges"], 1142);
    assert_eq!(stats["louvain_seed"], 4);

    let again = tempfile::tempdir().unwrap();
    stdout(&[
        "network",
        "--out",
        again.path().to_str().unwrap(),
        "--seed",
        "4",
    ]);
    for f in ["network.gexf", "network.graphml", "stats.json"] {
        assert_eq!(
            fs::read(dir.path().join(f)).unwrap(),
            fs::read(again.path().join(f)).unwrap(),
            "{f}"
        );
    }
}

#[test]
fn network_at_threshold_zero() {
    let dir = tempfile::tempdir().unwrap();
    let text = stdout(&[
        "network",
        "--threshold-sq",
        "0",
        "--out",
        dir.path().to_str().unwrap(),
        "--format",
        "edgelist",
    ]);
    assert!(text.contains("edges\t0\n"));
    assert!(text.contains("isolated\t918\n"));
    assert_eq!(
        fs::read_to_string(dir.path().join("edges.csv"))
            .unwrap()
            .lines()
            .count(),
        1
    );
}

#[test]
fn stats_and_fit_are_json() {
    let stats: serde_json::Value =
        serde_json::from_str(&stdout(&["stats", "--weight", "inv-d"])).unwrap();
    assert_eq!(stats["weight_mode"], "inv-d");
    assert_eq!(stats["normal_forms"], 3856);
    let fit: serde_json::Value = serde_json::from_str(&stdout(&["fit-degree"])).unwrap();
    assert!(
        fit["truncated"]["r_squared"].as_f64().unwrap()
            >= fit["pure"]["r_squared"].as_f64().unwrap()
    );
}

#[test]
fn cliques_and_distances() {
    let cliques = stdout(&["cliques", "--min-size", "6"]);
    assert!(cliques
        .lines()
        .any(|l| l.starts_with("6\t") && l.contains("12-657")));
    let dist = stdout(&["distances", "--cap", "2"]);
    assert_eq!(dist.lines().count(), 43);
    assert_eq!(dist.lines().nth(1).unwrap(), "12-5,12-7,2");
}

#[test]
fn exit_codes() {
    assert_eq!(ais(&["bogus"]).status.code(), Some(1));
    assert_eq!(ais(&["generate", "--format", "xml"]).status.code(), Some(1));
    assert_eq!(
        ais(&["network", "--weight", "square"]).status.code(),
        Some(1)
    );
    assert_eq!(ais(&["transform", "12-9999", "I"]).status.code(), Some(1));
    assert_eq!(ais(&["transform", "[0 1 2]", "I"]).status.code(), Some(1));
    assert_eq!(ais(&["transform", "12-0P", "X"]).status.code(), Some(1));
    assert_eq!(ais(&["--help"]).status.code(), Some(0));

    let file = tempfile::NamedTempFile::new().unwrap();
    let blocked = file.path().join("sub");
    assert_eq!(
        ais(&["network", "--out", blocked.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}
