use std::path::Path;
use std::process::{Command, Output};

fn hamzip(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamzip"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn tetrahedron_report_passes_as_csv() {
    let o = hamzip(&["report", "tetrahedron", "--format", "csv"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.starts_with("solid,metric,expected,computed,pass\n"));
    assert!(text.contains("tetrahedron,zippings,continuum,continuum,true"));
}

#[test]
fn dodecahedron_report_passes() {
    let o = hamzip(&["report", "dodecahedron"]);
    assert_eq!(code(&o), 0);
    let rows = json(&o)["rows"].as_array().unwrap().clone();
    let rigid = rows.iter().find(|r| r["metric"] == "zip-rigid").unwrap();
    assert_eq!(rigid["expected"], "ALL");
    assert_eq!(rigid["pass"], true);
}

#[test]
fn mismatching_report_exits_one() {
    let o = hamzip(&["report", "icosahedron", "--format", "csv"]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    for row in [
        "labeled paths, endpoints at distance 1\",512,512,true",
        "labeled paths, endpoints at distance 2\",608,608,true",
        "labeled paths, endpoints at distance 3\",720,720,true",
    ] {
        assert!(text.contains(row), "{row}");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&hamzip(&[])), 2);
    assert_eq!(code(&hamzip(&["report", "prism"])), 2);
    assert_eq!(code(&hamzip(&["paths", "prism"])), 2);
    assert_eq!(code(&hamzip(&["--jobs", "0", "solids"])), 2);
    assert_eq!(
        code(&hamzip(&["--tolerance-override", "0", "report", "cube"])),
        2
    );
    assert_eq!(
        code(&hamzip(&[
            "--format",
            "csv",
            "unfold",
            "cube",
            "--path",
            "0,1,3,2,6,4,5,7"
        ])),
        2
    );
    assert_eq!(code(&hamzip(&["verify", "--shipped", "no-such-spec"])), 2);
    assert_eq!(code(&hamzip(&["--help"])), 0);
}

#[test]
fn data_errors_exit_three() {
    assert_eq!(code(&hamzip(&["zip", "cube", "--path", "0,1,2"])), 3);
    assert_eq!(
        code(&hamzip(&["unfold", "cube", "--path", "0,1,2,3,4,5,6,7"])),
        3
    );
    assert_eq!(code(&hamzip(&["verify", "/no/such/file.json"])), 3);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"net\": 3}").unwrap();
    assert_eq!(code(&hamzip(&["verify", bad.to_str().unwrap()])), 3);
}

#[test]
fn json_is_byte_identical_across_runs_and_thread_counts() {
    let a = hamzip(&["--jobs", "1", "report", "cube"]);
    let b = hamzip(&["--jobs", "4", "report", "cube"]);
    assert_eq!(a.stdout, b.stdout);
    let a = hamzip(&["dedupe", "octahedron"]);
    let b = hamzip(&["--jobs", "3", "dedupe", "octahedron"]);
    assert_eq!(a.stdout, b.stdout);
    let z = [
        "zip",
        "cube",
        "--path",
        "0,1,3,7,5,4,6,2",
        "--dump-rejected",
    ];
    assert_eq!(hamzip(&z).stdout, hamzip(&z).stdout);
}

#[test]
fn out_flag_writes_file_and_net_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("z.json");
    let o = hamzip(&[
        "unfold",
        "cube",
        "--path",
        "0,1,3,7,5,4,6,2",
        "--out",
        net.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let from_file = hamzip(&["zip", "--net", net.to_str().unwrap()]);
    let direct = hamzip(&["zip", "cube", "--path", "0,1,3,7,5,4,6,2"]);
    assert_eq!(code(&from_file), 0);
    assert_eq!(from_file.stdout, direct.stdout);
    let zippings = json(&direct)[0]["zippings"].as_array().unwrap().clone();
    assert_eq!(
        zippings.iter().filter(|z| z["identity"] == false).count(),
        6
    );
}

#[test]
fn dodecahedron_dump_shows_the_angle_obstruction() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("d.json");
    let path = "0,8,4,13,6,14,2,10,16,1,9,15,5,11,17,3,12,18,7,19";
    hamzip(&[
        "unfold",
        "dodecahedron",
        "--path",
        path,
        "--out",
        net.to_str().unwrap(),
    ]);
    let o = hamzip(&["zip", "--net", net.to_str().unwrap(), "--dump-rejected"]);
    assert_eq!(code(&o), 0);
    let v = &json(&o)[0];
    let deg = |x: &serde_json::Value| x.as_f64().unwrap().to_degrees();
    assert!((deg(&v["reflex_angle"]) - 324.0).abs() < 1e-9);
    assert!((deg(&v["external_angle"]) - 36.0).abs() < 1e-9);
    let pruned = v["pruned"].as_array().unwrap();
    assert!(!pruned.is_empty());
    assert!(pruned
        .iter()
        .all(|p| (deg(&p["angle"]) - 108.0).abs() < 1e-9));
    assert!(pruned.iter().all(|p| deg(&p["total"]) > 360.0));
    assert_eq!(v["zippings"].as_array().unwrap().len(), 1);
}

#[test]
fn verify_shipped_rhombus() {
    let o = hamzip(&["verify", "--shipped", "tetrahedron-rhombus"]);
    assert_eq!(code(&o), 0);
    let r = &json(&o)[0];
    assert_eq!(r["pass"], true);
    let sides = r["target"]["sides"].as_array().unwrap();
    assert!(sides
        .iter()
        .all(|s| (s.as_f64().unwrap() - 1.0).abs() < 1e-6));
}

#[test]
fn verify_spec_from_file_and_detect_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let src =
        Path::new(env!("CARGO_MANIFEST_DIR")).join("data/foldspecs/cube-s-parallelogram.json");
    assert_eq!(code(&hamzip(&["verify", src.to_str().unwrap()])), 0);
    let mut spec: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&src).unwrap()).unwrap();
    let tx = spec["isometries"][0]["tx"].as_f64().unwrap();
    spec["isometries"][0]["tx"] = (tx + 0.01).into();
    let bad = dir.path().join("tampered.json");
    std::fs::write(&bad, spec.to_string()).unwrap();
    assert_eq!(code(&hamzip(&["verify", bad.to_str().unwrap()])), 1);
}

#[test]
fn svg_of_cube_s_net() {
    let o = hamzip(&["svg", "cube", "--path", "0,1,3,2,6,4,5,7"]);
    assert_eq!(code(&o), 0);
    let svg = stdout(&o);
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches(r#"<polygon class="face""#).count(), 6);
    let o = hamzip(&["svg", "--shipped", "icosahedron-parallelogram"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains(r#"class="target""#));
}

#[test]
fn paths_and_solids() {
    let o = hamzip(&["paths", "icosahedron", "--between", "0", "1"]);
    assert_eq!(json(&o).as_array().unwrap().len(), 512);
    let o = hamzip(&[
        "paths",
        "icosahedron",
        "--distance-classes",
        "--format",
        "csv",
    ]);
    assert_eq!(stdout(&o).lines().count(), 1 + 1840);
    let o = hamzip(&["solids"]);
    let v = json(&o);
    let counts: Vec<(u64, u64, u64)> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|s| {
            let n = |k: &str| s[k].as_u64().unwrap();
            (n("vertex_count"), n("edge_count"), n("face_count"))
        })
        .collect();
    assert_eq!(
        counts,
        [
            (4, 6, 4),
            (8, 12, 6),
            (6, 12, 8),
            (20, 30, 12),
            (12, 30, 20)
        ]
    );
}
