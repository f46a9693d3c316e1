use std::process::{Command, Output};

fn chomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chomp")).args(args).output().expect("spawn chomp")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn solve_text_and_json() {
    let o = chomp(&["solve", "--rule", "0,1", "--position", "2,1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("ordinal"));

    let o = chomp(&["solve", "--rule", "0,1", "--position", "2,1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["ordinal"], 1);
    assert_eq!(v["solutions"], serde_json::json!([[]]));
}

#[test]
fn iso_reports_counterexample() {
    let o = chomp(&["iso", "--f", "0,1,2,3", "--g", "0,1,3,2", "--volume", "8"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("counterexample 4 "), "{text}");
    assert!(text.contains("minVolume 4"), "{text}");
}

#[test]
fn classify_lists_seven_classes() {
    let o = chomp(&["classify", "--players", "4", "--volume", "12"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("7 classes"), "{text}");
    assert!(text.contains("(0132) ~ (0231)"), "{text}");
}

#[test]
fn table_csv_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("chomp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.csv");
    let o = chomp(&["table", "--rule", "0,2,1", "--volume", "8", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    let rule = "0,2,1".parse().unwrap();
    let back = chomp_core::OrdinalTable::from_csv(&rule, &text).unwrap();
    assert_eq!(back, chomp_core::OrdinalTable::compute(&rule, 8).unwrap());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_passes_small_bound() {
    let o = chomp(&["verify", "--volume", "8", "--players", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn play_engine_only() {
    let o = chomp(&["play", "--rule", "0,1", "--position", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn errors_exit_nonzero() {
    let o = chomp(&["solve", "--rule", "0,0", "--position", "2"]);
    assert!(!o.status.success());
    let o = chomp(&["solve", "--rule", "0,1", "--position", "1,3"]);
    assert!(!o.status.success());
    let o = chomp(&["classify", "--players", "9"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn solve_line_under_standard_four() {
    let o = chomp(&["solve", "--rule", "0,1,2,3", "--position", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["ordinal"], 4);
}

#[test]
fn iso_three_players() {
    let o = chomp(&["iso", "--f", "0,1,2", "--g", "0,2,1", "--volume", "6"]);
    let text = stdout(&o);
    assert!(text.starts_with("counterexample 3 "), "{text}");
    assert!(text.contains("minVolume 3"), "{text}");
}

#[test]
fn verify_minimal_bound() {
    let o = chomp(&["verify", "--volume", "4", "--players", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PASS move-count"));
}

#[test]
fn table_json_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("chomp-cli-json-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t.json");
    let o = chomp(&["table", "--rule", "0,1,3,2", "--volume", "10", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let back = chomp_core::OrdinalTable::from_json(&text).unwrap();
    assert_eq!(back, chomp_core::OrdinalTable::compute(&"0,1,3,2".parse().unwrap(), 10).unwrap());
    assert_eq!(back.to_json() + "\n", text);
    std::fs::remove_dir_all(&dir).ok();
}
