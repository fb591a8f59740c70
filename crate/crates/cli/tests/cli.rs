use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rmtf::{Ciphertext, ParamSet, Step};

const TOY: [&str; 16] = ["--q", "2", "--m", "23", "--n", "8", "--L", "4", "--k", "3", "--w", "2", "--t", "2", "--N", "5"];

/// TOY with some flag values replaced.
fn toy_with(over: &[(&'static str, &'static str)]) -> Vec<&'static str> {
    let mut v = TOY.to_vec();
    for (flag, val) in over {
        let i = v.iter().position(|a| a == flag).expect("known flag");
        v[i + 1] = val;
    }
    v
}

fn rmtf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rmtf")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn keygen(dir: &Path, tag: &str, seed: &str) -> (PathBuf, PathBuf) {
    let pk = dir.join(format!("{tag}.pk"));
    let tk = dir.join(format!("{tag}.tk"));
    let mut args = vec!["keygen", "--seed", seed, "--pk", s(&pk), "--tk", s(&tk)];
    args.extend(TOY);
    let o = rmtf(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    (pk, tk)
}

#[test]
fn sphere_small_case() {
    let o = rmtf(&["sphere", "--q", "2", "--m", "2", "--L", "2", "--w", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("exact=9"));
}

#[test]
fn sphere_reads_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("p.toml");
    std::fs::write(&cfg, "q = 3\nm = 3\nL = 3\nw = 1\n").unwrap();
    let o = rmtf(&["sphere", "--config", s(&cfg)]);
    assert!(stdout(&o).starts_with("exact=338\n"), "{}", stdout(&o));
    let o = rmtf(&["sphere", "--config", s(&cfg), "--w", "0"]);
    assert!(stdout(&o).starts_with("exact=1\n"));
}

#[test]
fn keygen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (pk1, tk1) = keygen(dir.path(), "a", "7");
    let (pk2, tk2) = keygen(dir.path(), "b", "7");
    let (pk3, _) = keygen(dir.path(), "c", "8");
    let read = |p: &Path| std::fs::read(p).unwrap();
    assert_eq!(read(&pk1), read(&pk2));
    assert_eq!(read(&tk1), read(&tk2));
    assert_ne!(read(&pk1), read(&pk3));
}

#[test]
fn pipeline_roundtrip_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let (pk, tk) = keygen(d, "k", "11");
    let mut cts = Vec::new();
    for tag in ["1", "2"] {
        let ct = d.join(format!("{tag}.ct"));
        let (x, e) = (d.join(format!("{tag}.x")), d.join(format!("{tag}.e")));
        let o = rmtf(&["eval", "--pk", s(&pk), "--ct", s(&ct), "--seed", "3", "--x-out", s(&x), "--e-out", s(&e)]);
        assert_eq!(code(&o), 0);
        cts.push(std::fs::read(&ct).unwrap());
    }
    assert_eq!(cts[0], cts[1]);

    let (x2, e2) = (d.join("r.x"), d.join("r.e"));
    let o = rmtf(&["invert", "--pk", s(&pk), "--tk", s(&tk), "--ct", s(&d.join("1.ct")), "--x-out", s(&x2), "--e-out", s(&e2)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("status=ok"));
    assert_eq!(std::fs::read(d.join("1.x")).unwrap(), std::fs::read(&x2).unwrap());
    assert_eq!(std::fs::read(d.join("1.e")).unwrap(), std::fs::read(&e2).unwrap());

    // Feeding the recovered matrices back reproduces the ciphertext.
    let ct3 = d.join("3.ct");
    let o = rmtf(&["eval", "--pk", s(&pk), "--ct", s(&ct3), "--x", s(&x2), "--e", s(&e2)]);
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read(&ct3).unwrap(), cts[0]);
}

#[test]
fn validate_table_rows() {
    let o = rmtf(&["validate", "--table"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().filter(|l| l.starts_with("table=")).collect();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.contains(" PASS ")));
    let mismatched: Vec<&&str> = rows.iter().filter(|r| r.contains("MISMATCH")).collect();
    assert_eq!(mismatched.len(), 1);
    assert!(mismatched[0].starts_with("table=1 lambda=192") && mismatched[0].contains("ct_kb=5767 (printed 5694 MISMATCH)"));
    assert!(out.contains("rows=8 constraints=PASS size_mismatches=1"));
}

#[test]
fn validate_records_and_violation() {
    let o = rmtf(&["validate", "--records", "--lambda", "0"].iter().copied().chain(TOY).collect::<Vec<_>>());
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("name=") && l.ends_with("result=PASS")));

    let mut args = vec!["validate", "--lambda", "0"];
    args.extend(toy_with(&[("--k", "5")]));
    let o = rmtf(&args);
    assert_eq!(code(&o), 6);
    assert!(stdout(&o).contains("k_le_L"));
}

#[test]
fn sizes_match_library() {
    let o = rmtf(&["sizes"].iter().copied().chain(TOY).collect::<Vec<_>>());
    assert_eq!(code(&o), 0);
    let p = ParamSet { q: 2, m: 23, n: 8, l: 4, k: 3, w: 2, t: 2, samples: 5, lambda: 0 };
    let sz = rmtf::analysis::key_sizes(&p);
    assert!(stdout(&o).contains(&format!("pk_bytes={} ", sz.pk)));
    assert!(stdout(&o).contains(&format!("ct_bytes={} ", sz.ct)));
    let o = rmtf(&["sizes", "--table"]);
    assert_eq!(stdout(&o).lines().count(), 9);
}

#[test]
fn simulate_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sim.csv");
    let args = ["simulate", "--q", "2", "--m", "13", "--n", "6", "--L", "2", "--w", "2", "--t", "2", "--N", "5"];
    let mut with_seed = args.to_vec();
    with_seed.extend(["--trials", "40", "--seed", "9", "--out", s(&out)]);
    let o = rmtf(&with_seed);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "trial,step_failed,seed");
    assert_eq!(lines.len(), 41);
    assert!(lines[1].starts_with("0,"));
    let direct = rmtf(&with_seed[..with_seed.len() - 2]);
    assert_eq!(stdout(&direct), csv);

    let mut no_seed = args.to_vec();
    no_seed.extend(["--trials", "4"]);
    assert_eq!(code(&rmtf(&no_seed)), 2);
}

#[test]
fn help_documents_csv_and_exit_codes() {
    let o = rmtf(&["simulate", "--help"]);
    assert_eq!(code(&o), 0);
    let h = stdout(&o);
    assert!(h.contains("trial") && h.contains("step_failed") && h.contains("seed"));
    let o = rmtf(&["--help"]);
    assert!(stdout(&o).contains("6 parameter violation"));
}

#[test]
fn usage_and_parameter_exit_codes() {
    assert_eq!(code(&rmtf(&[])), 2);
    assert_eq!(code(&rmtf(&["frobnicate"])), 2);
    // Randomized commands refuse to run without a seed.
    let dir = tempfile::tempdir().unwrap();
    let pk = dir.path().join("x.pk");
    let mut args = vec!["keygen", "--pk", s(&pk)];
    args.extend(TOY);
    assert_eq!(code(&rmtf(&args)), 2);
    assert!(!pk.exists());
    let mut args = vec!["keygen", "--seed", "1", "--pk", s(&pk)];
    args.extend(toy_with(&[("--q", "6")]));
    assert_eq!(code(&rmtf(&args)), 6);
    let mut args = vec!["keygen", "--seed", "1", "--pk", s(&pk)];
    args.extend(toy_with(&[("--L", "1")]));
    assert_eq!(code(&rmtf(&args)), 6);
}

#[test]
fn malformed_and_missing_files_exit_5() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let (pk, tk) = keygen(d, "k", "2");
    let ct = d.join("c.ct");
    assert_eq!(code(&rmtf(&["eval", "--pk", s(&pk), "--ct", s(&ct), "--seed", "1"])), 0);

    let missing = d.join("nope.ct");
    let o = rmtf(&["invert", "--pk", s(&pk), "--tk", s(&tk), "--ct", s(&missing)]);
    assert_eq!(code(&o), 5);
    assert!(String::from_utf8_lossy(&o.stderr).contains("nope.ct"));

    let bytes = std::fs::read(&ct).unwrap();
    let cut = d.join("cut.ct");
    std::fs::write(&cut, &bytes[..bytes.len() - 1]).unwrap();
    assert_eq!(code(&rmtf(&["invert", "--pk", s(&pk), "--tk", s(&tk), "--ct", s(&cut)])), 5);
    // Key file passed where a ciphertext is expected.
    assert_eq!(code(&rmtf(&["invert", "--pk", s(&pk), "--tk", s(&tk), "--ct", s(&pk)])), 5);

    let cfg = d.join("bad.toml");
    std::fs::write(&cfg, "q = \"two\"\n").unwrap();
    assert_eq!(code(&rmtf(&["sphere", "--config", s(&cfg)])), 5);
}

/// Writes ciphertexts under fresh keys until inversion fails at `step`.
fn failing_case(dir: &Path, step: Step) -> (PathBuf, PathBuf, PathBuf) {
    let p = ParamSet { q: 2, m: 7, n: 4, l: 2, k: 2, w: 2, t: 2, samples: 4, lambda: 0 };
    for seed in 0..2000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (pk, tk) = rmtf::gen(&p, &mut rng).unwrap();
        let ct = match step {
            // A uniformly random C almost never has a decodable syndrome.
            Step::SupportRecovery => Ciphertext::new(p, rmtf::MatFqm::random(pk.ctx(), p.samples, p.n + p.l, &mut rng)).unwrap(),
            Step::CoefficientRecovery => {
                let (x, e) = rmtf::sample_input(&pk, &mut rng).unwrap();
                rmtf::eval(&pk, &x, &e).unwrap()
            }
        };
        let got = rmtf::invert(&pk, &tk, &ct).err().and_then(|e| e.decode_step());
        if got == Some(step) {
            let paths = (dir.join("f.pk"), dir.join("f.tk"), dir.join("f.ct"));
            std::fs::write(&paths.0, pk.to_bytes()).unwrap();
            std::fs::write(&paths.1, tk.to_bytes()).unwrap();
            std::fs::write(&paths.2, ct.to_bytes()).unwrap();
            return paths;
        }
    }
    panic!("no {step:?} failure found");
}

#[test]
fn invert_exit_codes_name_the_failed_step() {
    for (step, want, label) in [(Step::SupportRecovery, 3, "I"), (Step::CoefficientRecovery, 4, "II")] {
        let dir = tempfile::tempdir().unwrap();
        let (pk, tk, ct) = failing_case(dir.path(), step);
        let o = rmtf(&["invert", "--pk", s(&pk), "--tk", s(&tk), "--ct", s(&ct)]);
        assert_eq!(code(&o), want);
        assert_eq!(stdout(&o).trim(), format!("step_failed={label}"));
    }
}
