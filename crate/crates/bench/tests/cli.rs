use std::path::Path;
use std::process::{Command, Output};

fn ldml(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ldml"))
        .args(args)
        .current_dir(dir)
        .env_remove("LDML_THREADS")
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

const SMALL: &str = "ldml-config-v1
name = tiny
k = 2
d = 3
weights = 0.5, 0.5
eps = 0.1
separation = 30
n = 600
attacks = gaussian_adversary
seeds = 2
algorithms = ours, kmeans
w_low = 0.2
kmeans.k = 2, 3
metric = list_size:5
c_beta = 0.4
c_gamma = 0.4
c_gammaprime_psi = 0.4
c_gammaprime_f = 0.4
use_rme = false
learner.c_f = 0.2
";

#[test]
fn gen_run_bench_plot_round() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    std::fs::write(p.join("tiny.cfg"), SMALL).unwrap();

    let out = ldml(&["gen", "--config", "tiny.cfg", "--seed", "3", "--out", "d.ldml"], p);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(std::fs::read_to_string(p.join("d.ldml")).unwrap().starts_with("ldml-v1 600 3 1\n"));

    let out = ldml(&["run", "--data", "d.ldml", "--config", "tiny.cfg"], p);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("# worst_error"), "{stdout}");

    let out = ldml(&["run", "--data", "d.ldml", "--algorithm", "kmeans", "--params", "k=2"], p);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8(out.stdout).unwrap().contains("# list_size 2"));

    let out = ldml(&["bench", "--config", "tiny.cfg", "--out", "r.csv", "--plot", "r.svg", "--threads", "2"], p);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(p.join("r.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 3 * 2);
    assert!(std::fs::read_to_string(p.join("r.svg")).unwrap().starts_with("<svg"));

    let out = ldml(&["plot", "--csv", "r.csv", "--out", "e.svg", "--mode", "error:100"], p);
    assert_eq!(code(&out), 0);

    // LDML_THREADS overrides the flag without changing the bytes
    let out = Command::new(env!("CARGO_BIN_EXE_ldml"))
        .args(["bench", "--config", "tiny.cfg", "--out", "r1.csv", "--threads", "2"])
        .current_dir(p)
        .env("LDML_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read_to_string(p.join("r1.csv")).unwrap(), csv);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    std::fs::write(p.join("tiny.cfg"), SMALL).unwrap();
    std::fs::write(p.join("bad.cfg"), "ldml-config-v1\nk = 2\nd = three\nn = 10\n").unwrap();
    std::fs::write(p.join("bad.csv"), "not,a,report\n").unwrap();
    std::fs::write(p.join("bad.ldml"), "ldml-v1 2 2 0\n1 2\n").unwrap();

    assert_eq!(code(&ldml(&["frobnicate"], p)), 2);
    assert_eq!(code(&ldml(&["bench", "--config", "bad.cfg", "--out", "x.csv"], p)), 2);
    assert_eq!(code(&ldml(&["bench", "--preset", "nope", "--out", "x.csv"], p)), 2);
    assert_eq!(code(&ldml(&["gen", "--config", "tiny.cfg", "--attack", "adversarial_line", "--out", "x"], p)), 2);
    assert_eq!(code(&ldml(&["plot", "--csv", "r.csv", "--out", "x.svg", "--mode", "fast"], p)), 2);
    assert_eq!(code(&ldml(&["run", "--data", "missing.ldml"], p)), 3);
    assert_eq!(code(&ldml(&["run", "--data", "bad.ldml"], p)), 3);
    assert_eq!(code(&ldml(&["plot", "--csv", "bad.csv", "--out", "x.svg"], p)), 3);
    let out = Command::new(env!("CARGO_BIN_EXE_ldml"))
        .args(["bench", "--config", "tiny.cfg", "--out", "x.csv"])
        .current_dir(p)
        .env("LDML_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert_eq!(code(&ldml(&["--help"], p)), 0);
}
