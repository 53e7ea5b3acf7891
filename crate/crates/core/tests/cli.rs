use std::io::Write;
use std::process::{Command, Output};

fn subgroup(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn freedep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freedep")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn depq_on_powers() {
    let h = subgroup("aaaaaaaaaa\nbbbbbbbbbb\n");
    let p = h.path().to_str().unwrap();
    let o = freedep(&["depq", p, "a"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "dependent\n"));
    assert_eq!(stdout(&freedep(&["depq", p, "ab"])), "independent\n");
}

#[test]
fn every_verb_runs() {
    let h = subgroup("#alphabet: a b\nabA\nb\n");
    let g = subgroup("ab\nb\n");
    let trivial_meet = subgroup("a\n");
    let (p, q) = (h.path().to_str().unwrap(), g.path().to_str().unwrap());
    let cases: &[&[&str]] = &[
        &["rank", p],
        &["member", p, "abbA"],
        &["basis", p],
        &["depq", p, "a", "--witness"],
        &["dep-cosets", p],
        &["dep-cosets", p, "--no-reduce"],
        &["dep-gens", p],
        &["closure", p],
        &["closed", p],
        &["echelon", p, "--order", "b a"],
        &["intersect", p, q],
        &["eq-basis", p, "a"],
        &["eq-fold", p, "a"],
        &["eq-verify", p, "x b X aBA = 1", "a"],
        &["transport", p, "x b X aBA = 1", "b", "1"],
        &["degree-bound", p],
        &["oracle-pure", p, "--bound", "3", "--exponent-bound", "2"],
        &["oracle-malnormal", p, "--bound", "2"],
        &["dot", p],
        &["dot", p, "--dep"],
    ];
    for args in cases {
        let o = freedep(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stdout.is_empty(), "{args:?}");
        let kv: Vec<&str> = std::iter::once("--format").chain(["kv"]).chain(args.iter().copied()).collect();
        let o = freedep(&kv);
        assert_eq!(o.status.code(), Some(0), "{kv:?}");
        for line in stdout(&o).lines() {
            assert!(line.contains('='), "{kv:?}: {line}");
        }
    }
    assert_eq!(stdout(&freedep(&["member", p, "abbA"])), "true\n");
    assert_eq!(stdout(&freedep(&["intersect", p, q])), "b\nabA\n");
    let t = trivial_meet.path().to_str().unwrap();
    assert_eq!(stdout(&freedep(&["intersect", p, t])), "");
    assert_eq!(stdout(&freedep(&["eq-verify", p, "x b X aBA = 1", "a"])), "true\n");
}

#[test]
fn errors_and_exit_codes() {
    let h = subgroup("aa\n");
    let p = h.path().to_str().unwrap();
    let o = freedep(&["eq-basis", p, "b"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("\"b\""));
    assert_eq!(freedep(&["no-such-verb", "/nonexistent"]).status.code(), Some(2));
    assert_eq!(freedep(&["rank"]).status.code(), Some(2));
    let bad = subgroup("ab\n\nab!\n");
    let o = freedep(&["rank", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":3:"));
}

#[test]
fn dep_gens_feed_back_into_rank() {
    let h = subgroup("BB\nbaBA\n");
    let gens = stdout(&freedep(&["dep-gens", h.path().to_str().unwrap()]));
    let d = subgroup(&gens);
    assert_eq!(stdout(&freedep(&["rank", d.path().to_str().unwrap()])), "2\n");
    let closure = stdout(&freedep(&["closure", h.path().to_str().unwrap()]));
    assert!(closure.starts_with("length 2\n"), "{closure}");
}
