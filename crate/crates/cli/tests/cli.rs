use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use schubert_core::code::Code;
use schubert_core::field::{Elem, Field};
use schubert_core::io::{parse_generator, parse_words, write_words};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schubert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn params_examples() {
    let o = run(&["params", "--q", "2", "--m", "4", "--alpha", "2,4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n=19 k=5 d=8 J=7 t=3 delta=3 dhalf=3\n");

    let o = run(&["params", "--q", "2", "--m", "5", "--alpha", "3,5"]);
    assert!(stdout(&o).contains("d=32 J=29 t=14"));

    let o = run(&["params", "--q", "2", "--m", "4", "--alpha", "1,2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("trivial code"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["params", "--q", "2"]).status.code(), Some(1));
    assert_eq!(
        run(&["params", "--q", "6", "--m", "4", "--alpha", "2,4"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["params", "--q", "2", "--m", "4", "--alpha", "4,2"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["verify", "--q", "2", "--m", "4", "--alpha", "2,4", "--suite", "bogus"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn build_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let gen = dir.path().join("gen.txt");
    let o = run(&[
        "build",
        "--q",
        "3",
        "--m",
        "4",
        "--alpha",
        "2,4",
        "--out",
        p(&gen),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let parsed = parse_generator(&fs::read_to_string(&gen).unwrap()).unwrap();
    let code = Code::schubert(&[2, 4], 4, &Field::new(3).unwrap()).unwrap();
    assert_eq!(&parsed, code.generator());

    // Grassmann code through the default l
    let o = run(&["build", "--q", "2", "--m", "4"]);
    assert!(stdout(&o).starts_with("2 4 2\n6 35\n"));
}

fn noisy_words(code: &Code) -> (Vec<Vec<Elem>>, Vec<Vec<Elem>>) {
    let f = code.field();
    let mut clean = Vec::new();
    let mut noisy = Vec::new();
    for (i, msg) in [
        [0u8, 0, 0, 0, 0],
        [1, 0, 1, 1, 0],
        [1, 1, 1, 1, 1],
        [0, 1, 0, 0, 1],
    ]
    .iter()
    .enumerate()
    {
        let m: Vec<Elem> = msg.iter().map(|&x| Elem(x)).collect();
        let c = code.generator().encode(&m, f);
        let mut r = c.clone();
        for p in [i, 5 + 2 * i, 17 - i] {
            r[p] = f.add(r[p], Elem::ONE);
        }
        clean.push(c);
        noisy.push(r);
    }
    (clean, noisy)
}

#[test]
fn decode_from_files_matches_in_memory_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let gen = dir.path().join("gen.txt");
    let checks = dir.path().join("checks.txt");
    let words = dir.path().join("words.txt");
    let out_files = dir.path().join("out_files.txt");
    let out_mem = dir.path().join("out_mem.txt");
    let log = dir.path().join("log.txt");
    let code_args = ["--q", "2", "--m", "4", "--alpha", "2,4"];
    assert_eq!(
        run(&[&["build"][..], &code_args, &["--out", p(&gen)]].concat())
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&[&["checks"][..], &code_args, &["--out", p(&checks)]].concat())
            .status
            .code(),
        Some(0)
    );

    let code = Code::schubert(&[2, 4], 4, &Field::new(2).unwrap()).unwrap();
    let (clean, noisy) = noisy_words(&code);
    fs::write(&words, write_words(&noisy)).unwrap();

    let o = run(&[
        "decode",
        "--gen",
        p(&gen),
        "--checks",
        p(&checks),
        "--in",
        p(&words),
        "--out",
        p(&out_files),
        "--log",
        p(&log),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let decoded = parse_words(&fs::read_to_string(&out_files).unwrap(), 2, 19).unwrap();
    assert_eq!(decoded, clean);
    let log_text = fs::read_to_string(&log).unwrap();
    assert_eq!(
        log_text.lines().filter(|l| l.starts_with("word=")).count(),
        4
    );
    assert!(log_text.contains("word=1 success=true corrections=3"));

    let o = run(&[
        &["decode", "--in", p(&words), "--out", p(&out_mem)][..],
        &code_args,
    ]
    .concat());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read(&out_mem).unwrap(), fs::read(&out_files).unwrap());

    // noiseless words pass through unchanged
    fs::write(&words, write_words(&clean)).unwrap();
    let o = run(&[
        "decode",
        "--gen",
        p(&gen),
        "--checks",
        p(&checks),
        "--in",
        p(&words),
    ]);
    assert_eq!(stdout(&o), write_words(&clean));
}

#[test]
fn malformed_inputs_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let gen = dir.path().join("gen.txt");
    let checks = dir.path().join("checks.txt");
    let words = dir.path().join("words.txt");
    fs::write(&gen, "2 4 2 2 4\n5 19\n0 1\n").unwrap();
    fs::write(&checks, "2 4 2 2 4 0\n").unwrap();
    fs::write(&words, "").unwrap();
    let o = run(&[
        "decode",
        "--gen",
        p(&gen),
        "--checks",
        p(&checks),
        "--in",
        p(&words),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));

    let missing = dir.path().join("absent.txt");
    let o = run(&[
        "decode",
        "--gen",
        p(&missing),
        "--checks",
        p(&checks),
        "--in",
        p(&words),
    ]);
    assert_eq!(o.status.code(), Some(3));

    // a valid generator with an empty check table
    let o = run(&[
        "build",
        "--q",
        "2",
        "--m",
        "4",
        "--alpha",
        "2,4",
        "--out",
        p(&gen),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&[
        "decode",
        "--gen",
        p(&gen),
        "--checks",
        p(&checks),
        "--in",
        p(&words),
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn seeded_commands_are_reproducible() {
    let args = [
        "simulate", "--q", "2", "--m", "5", "--alpha", "2,5", "--t", "7", "--trials", "2000",
        "--seed", "1",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("status=PASS check=decode.monte_carlo"));
    assert!(stdout(&a).ends_with("seed=1\n"));

    let dir = tempfile::tempdir().unwrap();
    let (x, y) = (dir.path().join("x.txt"), dir.path().join("y.txt"));
    for f in [&x, &y] {
        let o = run(&[
            "checks",
            "--q",
            "3",
            "--m",
            "4",
            "--alpha",
            "2,4",
            "--out",
            p(f),
        ]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(&x).unwrap(), fs::read(&y).unwrap());
}

#[test]
fn verify_all_passes() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.txt");
    let o = run(&[
        "verify",
        "--suite",
        "all",
        "--q",
        "2",
        "--m",
        "4",
        "--alpha",
        "2,4",
        "--out",
        p(&report),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&report).unwrap();
    assert_eq!(text, stdout(&o));
    assert!(text.contains("fail=0"));
    assert!(!text.contains("status=FAIL"));
    assert!(text.contains("status=WARN check=counts.printed_outside_form"));
}
