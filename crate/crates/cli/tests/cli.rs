use std::path::Path;
use std::process::{Command, Output};

fn outdiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_outdiv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = outdiv(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(String::from).collect()).collect()
}

#[test]
fn table_rows_for_fixed_families() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    stdout(&["table2", "--instances", "1", "--n-samples", "200", "--reps", "2", "--out", d]);
    let csv = read(dir.path(), "table2.csv");
    assert_eq!(csv.lines().next().unwrap(), "family,m,size,ansd,outdiv,dist1,dist1_norm,std");
    let rows = csv_rows(&csv);
    let find = |name: &str| rows.iter().find(|r| r[0] == name).unwrap().clone();
    let round3 = |s: &str| format!("{:.3}", s.parse::<f64>().unwrap());
    let sp = find("SP");
    assert_eq!((sp[2].as_str(), round3(&sp[3]), round3(&sp[4]), sp[5].as_str()), ("128", "0.284".into(), "0.432".into(), "384"));
    assert_eq!(sp[6].parse::<f64>().unwrap(), 3.0);
    let spoc = find("SPOC");
    assert_eq!((spoc[2].as_str(), round3(&spoc[3]), round3(&spoc[4]), spoc[5].as_str()), ("512", "0.196".into(), "0.608".into(), "1280"));
    assert_eq!(spoc[6].parse::<f64>().unwrap(), 2.5);
    let vr = find("Vote+Rev");
    assert_eq!((vr[2].as_str(), round3(&vr[3]), round3(&vr[4]), vr[5].as_str()), ("2", "0.384".into(), "0.232".into(), "14"));
    assert_eq!(vr[6].parse::<f64>().unwrap(), 7.0);
    assert!(vr[7].is_empty());
    assert!(!find("3D-Cube")[7].is_empty());
    assert_eq!(rows.len(), 10);
    assert!(dir.path().join("table2_instances.json").exists());
    assert!(dir.path().join("manifest.json").exists());
}

#[test]
fn lc_row_comes_from_a_domain_file() {
    let dir = tempfile::tempdir().unwrap();
    let lc = dir.path().join("lc.txt");
    std::fs::write(&lc, "# m=8 family=lc\n0 1 2 3 4 5 6 7\n7 6 5 4 3 2 1 0\n").unwrap();
    let out = dir.path().join("t");
    stdout(&[
        "table2", "--instances", "1", "--n-samples", "100", "--reps", "2",
        "--lc-file", lc.to_str().unwrap(), "--out", out.to_str().unwrap(),
    ]);
    let rows = csv_rows(&read(&out, "table2.csv"));
    assert_eq!(rows.last().unwrap()[0], "LC");
    assert_eq!(rows.last().unwrap()[5], "14");
    let manifest: serde_json::Value = serde_json::from_str(&read(&out, "manifest.json")).unwrap();
    assert_eq!(manifest["inputs"].as_array().unwrap().len(), 1);
}

#[test]
fn reruns_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        stdout(&[
            "maxdiverse", "--m", "5", "--sizes", "1,2,8", "--thresholds", "3-4", "--runs", "2",
            "--budget", "300", "--seed", "4", "--out", dir.path().to_str().unwrap(),
        ]);
    }
    let (x, y) = (read(a.path(), "sizes.csv"), read(b.path(), "sizes.csv"));
    assert_eq!(x, y);
    let rows = csv_rows(&x);
    let size1: Vec<_> = rows.iter().filter(|r| r[2] == "1").collect();
    assert!(size1.iter().all(|r| r[3].parse::<f64>().unwrap() == 0.0));
    assert!(rows.iter().any(|r| r[0] == "thres-ic"));
    assert!(rows.iter().any(|r| r[0] == "GS/cat"));
    assert!(a.path().join("domains/anneal_k8.txt").exists());
    assert!(a.path().join("domains/thres-ic_t3.txt").exists());
    let ma: serde_json::Value = serde_json::from_str(&read(a.path(), "manifest.json")).unwrap();
    let mb: serde_json::Value = serde_json::from_str(&read(b.path(), "manifest.json")).unwrap();
    assert_eq!(ma["outputs"], mb["outputs"]);
}

#[test]
fn manifest_hashes_match_outputs() {
    let dir = tempfile::tempdir().unwrap();
    stdout(&["histogram", "--family", "gs-cat", "--m", "5", "--out", dir.path().to_str().unwrap()]);
    let manifest: serde_json::Value = serde_json::from_str(&read(dir.path(), "manifest.json")).unwrap();
    let entry = &manifest["outputs"][0];
    let content = std::fs::read(dir.path().join(entry["path"].as_str().unwrap())).unwrap();
    use sha2::Digest;
    let mut h = sha2::Sha256::new();
    h.update(format!("blob {}\0", content.len()));
    h.update(&content);
    let hex: String = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
    assert_eq!(entry["sha256"].as_str().unwrap(), hex);
    assert_eq!(manifest["command"], "histogram");
}

#[test]
fn exit_codes() {
    assert_eq!(outdiv(&["diversity", "--family", "nope", "--m", "4"]).status.code(), Some(2));
    assert_eq!(outdiv(&["diversity", "--family", "sp"]).status.code(), Some(2));
    assert_eq!(outdiv(&["diversity", "--family", "sp", "--m", "12", "--mode", "exact"]).status.code(), Some(3));
    assert_eq!(outdiv(&["popularity", "--family", "sp", "--m", "9"]).status.code(), Some(3));
    assert_eq!(outdiv(&["export-lp", "--m", "7", "--k", "2"]).status.code(), Some(3));
    assert_eq!(outdiv(&["distance", "--family", "sp", "--m", "3", "--ranking", "0 1"]).status.code(), Some(2));
    assert_eq!(outdiv(&["nonsense"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "# m=3 family=x\n0 1 2\n0 1 1\n").unwrap();
    let out = outdiv(&["diversity", "--domain-file", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn generated_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    stdout(&["generate", "--family", "2d", "--m", "5", "--seed", "3", "--out", d]);
    let file = dir.path().join("domain.txt");
    assert!(read(dir.path(), "domain.txt").starts_with("# m=5 family=2d\n"));
    let from_file = stdout(&["diversity", "--domain-file", file.to_str().unwrap()]);
    let from_family = stdout(&["diversity", "--family", "2d", "--m", "5", "--seed", "3"]);
    assert_eq!(from_file, from_family);
    let spec = read(dir.path(), "spec.txt");
    let from_spec = stdout(&["diversity", "--spec", spec.trim()]);
    assert_eq!(from_spec, from_family);
}

#[test]
fn distance_with_check() {
    let csv = stdout(&[
        "distance", "--spec", "family=sp-tree m=5 edges=0-1,1-2,1-3,3-4", "--ranking", "4 2 0 1 3",
        "--ranking", "0 1 2 3 4", "--check",
    ]);
    let rows = csv_rows(&csv);
    assert_eq!(rows[1], vec!["0 1 2 3 4", "0"]);
    assert!(rows[0][1].parse::<usize>().unwrap() > 0);
}

#[test]
fn sampled_diversity_for_large_m() {
    let text = stdout(&["diversity", "--family", "spoc", "--m", "40", "--n-samples", "200", "--reps", "3"]);
    let report: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(report["samples"]["reps"], 3);
    assert_eq!(report["samples"]["estimates"].as_array().unwrap().len(), 3);
    assert!(report["layers"].is_null());
}

#[test]
fn neighborhood_of_caterpillar() {
    let text = stdout(&["neighborhood", "--family", "gs-cat", "--m", "6"]);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["size"], 32);
    for member in doc["members"].as_array().unwrap() {
        assert_eq!(member["unique"], 3);
        assert_eq!(member["shared"], 1);
    }
}

#[test]
fn microscope_outputs() {
    let dir = tempfile::tempdir().unwrap();
    stdout(&["microscope", "--family", "gs-bal", "--m", "8", "--out", dir.path().to_str().unwrap()]);
    let pop = csv_rows(&read(dir.path(), "popularity.csv"));
    assert_eq!(pop.len(), 128);
    assert!(pop.iter().all(|r| r[2] == "1.000000"));
    let matrix = csv_rows(&read(dir.path(), "matrix.csv"));
    assert_eq!(matrix.len(), 128);
    for (i, row) in matrix.iter().enumerate() {
        assert_eq!(row[i + 1], "0");
        for (j, other) in matrix.iter().enumerate() {
            assert_eq!(row[j + 1], other[i + 1]);
        }
    }

    let sp = tempfile::tempdir().unwrap();
    stdout(&["microscope", "--family", "sp", "--m", "8", "--out", sp.path().to_str().unwrap()]);
    let pop = csv_rows(&read(sp.path(), "popularity.csv"));
    let best = pop.iter().map(|r| r[2].parse::<f64>().unwrap()).fold(0.0, f64::max);
    let top: Vec<&str> = pop.iter().filter(|r| r[2].parse::<f64>().unwrap() == best).map(|r| r[0].as_str()).collect();
    assert_eq!(top, vec!["0 1 2 3 4 5 6 7", "7 6 5 4 3 2 1 0"]);
}

#[test]
fn lp_export() {
    let dir = tempfile::tempdir().unwrap();
    stdout(&["export-lp", "--m", "3", "--k", "1", "--out", dir.path().to_str().unwrap()]);
    let lp = read(dir.path(), "kmedian_m3_k1.lp");
    let binary = lp.split("Binary\n").nth(1).unwrap();
    assert_eq!(binary.lines().filter(|l| *l != "End").count(), 42);
    assert_eq!(lp.lines().filter(|l| l.contains(": ") && !l.contains("obj:")).count(), 43);
}

#[test]
fn curve_csv() {
    let text = stdout(&["curve", "--families", "gs-cat,spoc", "--m-min", "4", "--m-max", "10", "--n-samples", "300", "--reps", "2"]);
    assert_eq!(text.lines().next().unwrap(), "family,m,outdiv,std");
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 14);
    assert!(rows.iter().filter(|r| r[1].parse::<usize>().unwrap() <= 8).all(|r| r[3].is_empty()));
    assert!(rows.iter().filter(|r| r[1].parse::<usize>().unwrap() > 8).all(|r| !r[3].is_empty()));
}
