use std::fs;
use std::path::PathBuf;

use metafib_cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("metafib").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data/oeis")
}

fn values(text: &str) -> Vec<i64> {
    text.lines().map(|l| l.parse().unwrap()).collect()
}

fn coefficients(text: &str) -> Vec<i64> {
    text.lines()
        .map(|l| l.split(' ').nth(1).unwrap().parse().unwrap())
        .collect()
}

#[test]
fn seq_rows() {
    let (code, out, _) = call(&["seq", "a", "--s", "0", "--to", "20"]);
    assert_eq!(code, 0);
    assert_eq!(
        values(&out),
        vec![1, 2, 2, 3, 4, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 9, 10, 10, 11, 12]
    );
    let (_, out, _) = call(&["seq", "p", "--s", "2", "--to", "5"]);
    assert_eq!(values(&out), vec![1, 4, 8, 9, 14]);
    let (_, out, _) = call(&["seq", "d", "--s", "1", "--from", "1", "--to", "1"]);
    assert_eq!(out, "1\n");
}

#[test]
fn seq_formats() {
    let (_, out, _) = call(&[
        "seq", "a", "--s", "1", "--from", "0", "--to", "2", "--format", "tsv",
    ]);
    assert_eq!(out, "0\t1\n1\t1\n2\t1\n");
    let (_, out, _) = call(&["seq", "p", "--to", "3", "--format", "bfile"]);
    assert_eq!(out, "# p_0(n), n = 1..3\n1 1\n2 2\n3 4\n");
}

#[test]
fn seq_usage_errors() {
    assert_eq!(call(&["seq", "a", "--from", "5", "--to", "2"]).0, 2);
    assert_eq!(call(&["seq", "d", "--from", "0", "--to", "2"]).0, 2);
    assert_eq!(call(&["seq", "q", "--to", "2"]).0, 2);
    assert_eq!(call(&["seq", "a"]).0, 2);
    assert_eq!(call(&["seq", "a", "--to", "-3"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&[]).0, 2);
}

#[test]
fn help_goes_to_stdout() {
    let (code, out, err) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("oeis-check"));
    assert!(err.is_empty());
}

#[test]
fn gf_coefficients() {
    let (code, out, _) = call(&["gf", "D", "--s", "2", "--order", "20"]);
    assert_eq!(code, 0);
    assert_eq!(
        &coefficients(&out)[1..],
        &[1, 0, 0, 1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 1, 1, 0, 0]
    );
    let (_, out, _) = call(&["gf", "ruler", "--order", "8"]);
    assert_eq!(&coefficients(&out)[1..], &[1, 2, 1, 3, 1, 2, 1, 4]);
    let (_, out, _) = call(&["gf", "P", "--s", "0", "--order", "0"]);
    assert_eq!(out, "0 1\n");
    let (_, out, _) = call(&["gf", "A", "--s", "1", "--order", "6", "--format", "tsv"]);
    assert_eq!(out, "0\t0\n1\t1\n2\t1\n3\t2\n4\t2\n5\t2\n6\t3\n");
}

#[test]
fn gf_closed_form_needs_positive_shift() {
    let (code, out, err) = call(&["gf", "A", "--s", "0", "--order", "6"]);
    assert_eq!(code, 0);
    assert!(err.contains("note"));
    assert_eq!(&coefficients(&out)[1..], &[1, 2, 2, 3, 4, 4]);

    let (code, _, err) = call(&["gf", "A", "--s", "0", "--order", "6", "--form", "closed"]);
    assert_eq!(code, 2);
    assert!(err.contains("s >= 1"));

    let (a, _, _) = call(&["gf", "A", "--s", "3", "--order", "300", "--form", "closed"]);
    let (b, _, _) = call(&["gf", "A", "--s", "3", "--order", "300", "--form", "from-d"]);
    assert_eq!((a, b), (0, 0));
    assert_eq!(
        call(&["gf", "A", "--s", "3", "--order", "300", "--form", "closed"]).1,
        call(&["gf", "A", "--s", "3", "--order", "300", "--form", "from-d"]).1
    );
    assert_eq!(call(&["gf", "ruler", "--order", "65537"]).0, 2);
    assert_eq!(call(&["gf", "D", "--order", "4", "--form", "closed"]).0, 2);
}

#[test]
fn codes_commands() {
    let (code, out, _) = call(&["codes", "enumerate", "--n", "5"]);
    assert_eq!(code, 0);
    assert_eq!(out, "3,3,3,3,1\n3,3,2,2,2\n4,4,3,2,1\n");
    assert_eq!(
        call(&["codes", "greedy", "--n", "4", "--h", "3"]).1,
        "3,3,2,1\n"
    );
    assert_eq!(call(&["codes", "mtable", "--nmax", "2"]).1, "n\t1\n2\t1\n");
    let (_, out, _) = call(&["codes", "mtable", "--nmax", "5"]);
    let rows: Vec<&str> = out.lines().collect();
    assert_eq!(rows[0], "n\t1\t2\t3\t4");
    assert_eq!(rows[4], "5\t0\t0\t2\t1");
    assert!(out.lines().all(|l| !l.ends_with('\t')));
    assert_eq!(
        call(&["codes", "amax", "--nmax", "6"]).1,
        "2 1\n3 1\n4 2\n5 2\n6 2\n"
    );
    assert_eq!(
        call(&["codes", "bseq", "--nmax", "4"]).1,
        "1 1\n2 2\n3 2\n4 3\n"
    );
}

#[test]
fn codes_guards_name_the_violation() {
    let (code, _, err) = call(&["codes", "greedy", "--n", "9", "--h", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("outside"), "{err}");
    let (code, _, err) = call(&["codes", "enumerate", "--n", "40"]);
    assert_eq!(code, 2);
    assert!(err.contains("enumeration limit"), "{err}");
    assert_eq!(call(&["codes", "mtable", "--nmax", "1"]).0, 2);
    assert_eq!(call(&["codes", "greedy", "--n", "4", "--h", "0"]).0, 2);
}

#[test]
fn deterministic_output() {
    for args in [
        &["seq", "p", "--s", "3", "--to", "500"][..],
        &["gf", "P", "--s", "2", "--order", "300"][..],
        &["codes", "mtable", "--nmax", "12"][..],
        &["render", "--s", "2", "--n", "40"][..],
    ] {
        assert_eq!(call(args), call(args));
    }
}

#[test]
fn verify_quick_passes() {
    let (code, out, _) = call(&["verify", "--depth", "quick"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().filter(|l| l.starts_with("PASS")).count() >= 20);
    assert!(!out.contains("FAIL"));
}

#[test]
fn bfile_export_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for (which, s) in [("a", "0"), ("a", "4"), ("d", "2"), ("p", "3")] {
        let (_, text, _) = call(&["seq", which, "--s", s, "--to", "1500", "--format", "bfile"]);
        let path = dir.path().join(format!("{which}{s}.txt"));
        fs::write(&path, text).unwrap();
        let (code, out, _) = call(&[
            "oeis-check",
            "--bfile",
            path.to_str().unwrap(),
            "--sequence",
            which,
            "--s",
            s,
        ]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("1500 terms match"));
    }
}

#[test]
fn oeis_fixtures_match() {
    let dir = fixtures();
    let roles = dir.join("roles.toml");
    let (code, out, err) = call(&[
        "oeis-check",
        "--roles",
        roles.to_str().unwrap(),
        "--fixtures",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}{err}");
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 7);
    assert!(out.contains("A101925 = A005187 + 1"));

    let (code, out, _) = call(&[
        "oeis-check",
        "--roles",
        roles.to_str().unwrap(),
        "--id",
        "A046699",
        "--bfile",
        dir.join("b046699.txt").to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("2000 terms match"));
}

#[test]
fn oeis_mismatch_and_malformed() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "1 1\n2 2\n3 2\n4 4\n5 4\n").unwrap();
    let (code, out, _) = call(&[
        "oeis-check",
        "--bfile",
        bad.to_str().unwrap(),
        "--sequence",
        "a",
    ]);
    assert_eq!(code, 1);
    assert!(out.contains("n = 4"), "{out}");

    let broken = dir.path().join("broken.txt");
    fs::write(&broken, "1 1\n2\t2\n").unwrap();
    let (code, _, err) = call(&[
        "oeis-check",
        "--bfile",
        broken.to_str().unwrap(),
        "--sequence",
        "a",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");

    let empty = dir.path().join("empty.txt");
    fs::write(&empty, "# nothing here\n").unwrap();
    let (code, out, err) = call(&[
        "oeis-check",
        "--bfile",
        empty.to_str().unwrap(),
        "--sequence",
        "p",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("0 terms"));
    assert!(err.contains("warning"));

    let missing = dir.path().join("missing.txt");
    assert_eq!(
        call(&[
            "oeis-check",
            "--bfile",
            missing.to_str().unwrap(),
            "--sequence",
            "p"
        ])
        .0,
        2
    );
    assert_eq!(call(&["oeis-check", "--sequence", "p"]).0, 2);
}

#[test]
fn render_small_forest() {
    let (code, out, _) = call(&["render", "--s", "1", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "*1\n[2..2]\n |*3\n");
    assert_eq!(call(&["render", "--s", "1", "--n", "100000"]).0, 2);
}
