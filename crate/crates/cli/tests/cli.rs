//! End-to-end checks of the compiled binary: exit codes, file formats
//! on disk, pipeline determinism and the catalog sidecar.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_polysew"))
}

fn work_dir(test: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("polysew-cli-{}-{test}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary spawns")
}

fn assert_exit(out: &Output, code: i32) {
    assert_eq!(
        out.status.code(),
        Some(code),
        "stdout: {}\nstderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn gen_verify_sew_happy_path() {
    let dir = work_dir("happy");
    let c74 = dir.join("c74.json");
    let out = run(bin().args(["gen-cyclic", "7", "4", "-o"]).arg(&c74));
    assert_exit(&out, 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("14 facets"));

    let out = run(bin()
        .args(["verify"])
        .arg(&c74)
        .args(["--neighbourly", "--facet-formula", "--universal-dims"]));
    assert_exit(&out, 0);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.contains("universal 1-faces: 7"));
    assert!(text.contains("universal 3-faces: 14"));

    let sewn = dir.join("p8.json");
    let out = run(bin()
        .arg("sew")
        .arg(&c74)
        .args(["--tower", "0:1,2:3", "--label", "s1", "--oracle-check", "-o"])
        .arg(&sewn));
    assert_exit(&out, 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("oracle check: ok"));

    let out = run(bin()
        .arg("verify")
        .arg(&sewn)
        .args(["--neighbourly", "--facet-formula"]));
    assert_exit(&out, 0);
}

#[test]
fn text_format_round_trips_through_the_binary() {
    let dir = work_dir("text");
    let txt = dir.join("c64.txt");
    assert_exit(&run(bin().args(["gen-cyclic", "6", "4", "-o"]).arg(&txt)), 0);
    let body = std::fs::read_to_string(&txt).unwrap();
    assert!(body.starts_with("# polysew facets v1"));
    assert_eq!(body.lines().filter(|l| !l.starts_with('#')).count(), 9);
    assert_exit(&run(bin().arg("verify").arg(&txt).arg("--neighbourly")), 0);
}

#[test]
fn exit_codes_match_failure_classes() {
    let dir = work_dir("exits");

    // Usage: n < d + 1.
    let out = run(bin().args(["gen-cyclic", "3", "4", "-o"]).arg(dir.join("x.json")));
    assert_exit(&out, 2);

    // Parse: not a polytope file.
    let garbled = dir.join("garbled.json");
    std::fs::write(&garbled, "{\"hello\": 1}").unwrap();
    assert_exit(&run(bin().arg("verify").arg(&garbled)), 2);

    // Verification: well-formed file, broken ridge condition.
    let c74 = dir.join("c74.json");
    assert_exit(&run(bin().args(["gen-cyclic", "7", "4", "-o"]).arg(&c74)), 0);
    let body = std::fs::read_to_string(&c74).unwrap();
    let mut json: serde_json::Value = serde_json::from_str(&body).unwrap();
    json["facets"].as_array_mut().unwrap().pop();
    let broken = dir.join("broken.json");
    std::fs::write(&broken, serde_json::to_string_pretty(&json).unwrap()).unwrap();
    let out = run(bin().arg("verify").arg(&broken));
    assert_exit(&out, 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("ridge"));

    // Verification: neighbourliness check failing on a valid polytope.
    // The 4-dimensional cross-polytope is simplicial but not neighbourly.
    let cross = dir.join("cross.txt");
    let mut text = String::from("# polysew facets v1\n# dim: 4\n# vertices: a0 a1 b0 b1 c0 c1 d0 d1\n");
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    text.push_str(&format!("a{a} b{b} c{c} d{d}\n"));
                }
            }
        }
    }
    std::fs::write(&cross, text).unwrap();
    assert_exit(&run(bin().arg("verify").arg(&cross)), 0);
    assert_exit(&run(bin().arg("verify").arg(&cross).arg("--neighbourly")), 1);

    // Usage: sewing a polytope with too few vertices.
    let c64 = dir.join("c64.json");
    assert_exit(&run(bin().args(["gen-cyclic", "6", "4", "-o"]).arg(&c64)), 0);
    let out = run(bin()
        .arg("sew")
        .arg(&c64)
        .args(["--tower", "0:1,2:3", "-o"])
        .arg(dir.join("nope.json")));
    assert_exit(&out, 2);

    // Usage: clap rejects unknown subcommands.
    assert_exit(&run(bin().arg("frobnicate")), 2);
}

#[test]
fn towers_warns_but_lists_on_small_polytopes() {
    let dir = work_dir("towers");
    let c64 = dir.join("c64.json");
    assert_exit(&run(bin().args(["gen-cyclic", "6", "4", "-o"]).arg(&c64)), 0);
    let out = run(bin().arg("towers").arg(&c64).args(["--limit", "0"]));
    assert_exit(&out, 0);
    let stdout = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(stdout.contains("36 tower(s)"), "{stdout}");
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn towers_rejects_non_neighbourly_input() {
    let dir = work_dir("towers-bad");
    let cross = dir.join("cross.txt");
    let mut text =
        String::from("# polysew facets v1\n# dim: 4\n# vertices: a0 a1 b0 b1 c0 c1 d0 d1\n");
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    text.push_str(&format!("a{a} b{b} c{c} d{d}\n"));
                }
            }
        }
    }
    std::fs::write(&cross, text).unwrap();
    let out = run(bin().arg("towers").arg(&cross));
    assert_exit(&out, 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("neighbourly"));
}

#[test]
fn pipelines_are_deterministic() {
    let dir_a = work_dir("pipeline-a");
    let dir_b = work_dir("pipeline-b");
    let script = "gen base 7 4\nsew-auto g1 base\nsew-auto g2 g1\nsew-auto g3 g2\nverify g3\nreport g3\n";
    for dir in [&dir_a, &dir_b] {
        std::fs::write(dir.join("grow.psw"), script).unwrap();
    }
    let first = run(bin()
        .current_dir(&dir_a)
        .args(["pipeline", "grow.psw", "-o", "final.json"]));
    assert_exit(&first, 0);
    let second = run(bin()
        .current_dir(&dir_b)
        .args(["pipeline", "grow.psw", "-o", "final.json"]));
    assert_exit(&second, 0);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(
        std::fs::read(dir_a.join("final.json")).unwrap(),
        std::fs::read(dir_b.join("final.json")).unwrap(),
        "identical scripts must write identical bytes"
    );
    let text = String::from_utf8_lossy(&first.stdout).to_string();
    assert!(text.contains("35 facets"), "{text}");
}

#[test]
fn empty_and_broken_pipelines() {
    let dir = work_dir("pipeline-edge");
    let empty = dir.join("empty.psw");
    std::fs::write(&empty, "# nothing here\n").unwrap();
    assert_exit(&run(bin().arg("pipeline").arg(&empty)), 0);

    let broken = dir.join("broken.psw");
    std::fs::write(&broken, "gen base 7 4\nverify missing\n").unwrap();
    let out = run(bin().arg("pipeline").arg(&broken));
    assert_exit(&out, 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("undefined"));
}

#[test]
fn track_universal_writes_a_faithful_sidecar() {
    let dir = work_dir("sidecar");
    let c74 = dir.join("c74.json");
    assert_exit(&run(bin().args(["gen-cyclic", "7", "4", "-o"]).arg(&c74)), 0);
    let sewn_path = dir.join("p8.json");
    let out = run(bin()
        .arg("sew")
        .arg(&c74)
        .args(["--tower", "0:1,2:3", "--label", "s1", "--track-universal", "-o"])
        .arg(&sewn_path));
    assert_exit(&out, 0);

    let sidecar = dir.join("p8.catalog.json");
    let written = std::fs::read_to_string(&sidecar).unwrap();
    // The sidecar must equal the brute-force catalog of the output.
    let (sewn, _) = polysew_cli::format::load(&sewn_path).unwrap();
    let brute = polysew::tracking::UniversalCatalog::brute_force(&sewn).unwrap();
    assert_eq!(written, polysew_cli::format::catalog_to_json(&sewn, &brute));
}

#[test]
fn bench_runs_and_reports() {
    let out = run(bin().args(["bench", "7", "9"]));
    assert_exit(&out, 0);
    let text = String::from_utf8_lossy(&out.stdout).to_string();
    assert!(text.contains("touch/facet"), "{text}");
    assert_eq!(text.lines().filter(|l| l.trim().starts_with(char::is_numeric)).count(), 2);

    // Refused below the sewing threshold.
    let out = run(bin().args(["bench", "6", "10"]));
    assert_exit(&out, 2);
}

#[test]
fn thread_count_env_var_does_not_change_output() {
    let dir = work_dir("threads");
    let c96 = dir.join("c96.json");
    assert_exit(&run(bin().args(["gen-cyclic", "9", "6", "-o"]).arg(&c96)), 0);
    let single = run(bin()
        .arg("verify")
        .arg(&c96)
        .arg("--universal-dims")
        .env("POLYSEW_THREADS", "1"));
    let multi = run(bin()
        .arg("verify")
        .arg(&c96)
        .arg("--universal-dims")
        .env("POLYSEW_THREADS", "4"));
    assert_exit(&single, 0);
    assert_exit(&multi, 0);
    assert_eq!(single.stdout, multi.stdout);
}

#[test]
fn sew_refuses_non_universal_towers() {
    let dir = work_dir("badtower");
    let c74 = dir.join("c74.json");
    assert_exit(&run(bin().args(["gen-cyclic", "7", "4", "-o"]).arg(&c74)), 0);
    // {0,2} lies inside a missing face of C(7,4).
    let out = run(bin()
        .arg("sew")
        .arg(&c74)
        .args(["--tower", "0:2,1:3", "-o"])
        .arg(dir.join("x.json")));
    assert_exit(&out, 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("tower rejected"));
}
