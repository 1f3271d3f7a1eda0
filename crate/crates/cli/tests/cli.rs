use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn misub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_misub"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const SMALL_CSV: &str = "x,y,z,label\n\
    1.0,2.0,0.5,a\n1.5,2.5,0.1,a\n0.5,1.0,0.3,a\n2.0,1.0,0.7,a\n\
    5.0,6.0,0.2,b\n5.5,6.5,0.9,b\n6.0,5.0,0.4,b\n4.5,5.5,0.6,b\n";

#[test]
fn diff_of_index_lists() {
    let o = misub(&["diff", "--a", "0,1,2", "--b", "2,3,4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "66.67\n");
    assert_eq!(
        misub(&["diff", "--a", "0,1", "--b", "0"]).status.code(),
        Some(2)
    );
}

#[test]
fn bases_and_rank_emit_csv() {
    let dir = tempfile::tempdir().unwrap();
    let data = write(dir.path(), "d.csv", SMALL_CSV);
    let o = misub(&["bases", "--data", &data, "--transform", "pca"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.starts_with("# kind=PCA"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 3);

    let o = misub(&["rank", "--data", &data, "--transform", "dct", "--bins", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(
        text.lines().next().unwrap(),
        "base_index,conventional_rank,mi_bits,fluctuation,selected_rank"
    );
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn eval_writes_report_and_details() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "d.csv", SMALL_CSV);
    let cfg = write(
        dir.path(),
        "run.cfg",
        "# relative to this file\ndataset = d.csv\nlabel_column = label\n\
         transforms = dct, pca\nfractions = 0.5, 1.0\nclassifiers = knn\nneighbors = 1\n\
         repeats = 2\nbins = 4\n",
    );
    let out = dir.path().join("r.csv");
    let details = dir.path().join("details.csv");
    let o = misub(&[
        "eval",
        "--config",
        &cfg,
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
        "--details",
        details.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report = fs::read_to_string(&out).unwrap();
    assert_eq!(
        report.lines().next().unwrap(),
        "transform,selector,classifier,50%,100%"
    );
    assert_eq!(report.lines().count(), 5);
    assert_eq!(
        fs::read_to_string(&details).unwrap().lines().count(),
        1 + 2 * 2 * 2 * 2
    );

    // flags override the file
    let o = misub(&[
        "eval",
        "--config",
        &cfg,
        "--transforms",
        "lda",
        "--format",
        "csv",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).lines().skip(1).all(|l| l.starts_with("LDA,")));

    let o = misub(&["diff", "--config", &cfg]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next().unwrap(), "transform,50%,100%");
}

#[test]
fn synth_writes_projections() {
    let dir = tempfile::tempdir().unwrap();
    let proj = dir.path().join("p.csv");
    let o = misub(&[
        "synth",
        "--seed",
        "2",
        "--projections",
        proj.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("Fano lower bound"));
    let text = fs::read_to_string(&proj).unwrap();
    assert_eq!(text.lines().count(), 201);
    assert!(text.lines().nth(1).unwrap().starts_with("0,conventional,"));
}

#[test]
fn configuration_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad_key = write(dir.path(), "a.cfg", "colour = red\n");
    let bad_fraction = write(dir.path(), "b.cfg", "fractions = 0.5, 1.5\n");
    let missing = dir.path().join("none.cfg");
    for cfg in [
        bad_key.as_str(),
        bad_fraction.as_str(),
        missing.to_str().unwrap(),
    ] {
        assert_eq!(
            misub(&["eval", "--config", cfg]).status.code(),
            Some(2),
            "{cfg}"
        );
    }
    assert_eq!(
        misub(&["eval", "--transforms", "wavelet"]).status.code(),
        Some(2)
    );
    assert_eq!(misub(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn data_errors_exit_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let blank = write(dir.path(), "blank.csv", "x,label\n1.0,a\n,b\n");
    let o = misub(&["bases", "--data", &blank, "--transform", "dct"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("row 3"));

    let missing = dir.path().join("absent.csv");
    let o = misub(&["eval", "--dataset", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn numeric_failures_exit_with_4() {
    let dir = tempfile::tempdir().unwrap();
    // the constant column leaves the within-class scatter singular
    let data = write(
        dir.path(),
        "flat.csv",
        "x,c,label\n1.0,3.0,a\n2.0,3.0,a\n5.0,3.0,b\n7.0,3.0,b\n",
    );
    let o = misub(&[
        "bases",
        "--data",
        &data,
        "--transform",
        "lda",
        "--ridge",
        "0",
    ]);
    assert_eq!(
        o.status.code(),
        Some(4),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}
