use socle_lab::cli::{execute, parse_input, run, Request};
use socle_lab::report::{ClaimVerdict, OutputMode, Provenance, ScenarioReport};
use socle_lab::Error;

fn cli(line: &str) -> socle_lab::cli::Outcome {
    let mut args = vec!["socle-lab".to_string()];
    args.extend(shell_words(line));
    run(args)
}

fn shell_words(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut any = false;
    for c in line.chars() {
        match c {
            '"' => {
                quoted = !quoted;
                any = true;
            }
            c if c.is_whitespace() && !quoted => {
                if any {
                    out.push(std::mem::take(&mut cur));
                    any = false;
                }
            }
            c => {
                cur.push(c);
                any = true;
            }
        }
    }
    if any {
        out.push(cur);
    }
    out
}

#[test]
fn request_grammar() {
    let inv = parse_input(r#"kummer-rank --field "F7(t,u)" --p 3 --elems "t+u, t+u+1, t+u+2""#).unwrap();
    match inv.request {
        Request::Rank { p, ref elems, .. } => assert_eq!((p, elems.len()), (3, 3)),
        ref other => panic!("unexpected {other:?}"),
    }
    assert_eq!(inv.mode, OutputMode::Human);
    assert!(matches!(
        parse_input(r#"kummer-rank --p 7 --field "F7(t)""#),
        Err(Error::Semantic(_))
    ));
    assert!(matches!(parse_input(r#"as-rank --field "Q(t)""#), Err(Error::Semantic(_))));
    assert!(matches!(parse_input(r#"as-rank --field "F3(t)" --p 2"#), Err(Error::Semantic(_))));
    assert!(matches!(parse_input(r#"kummer-rank --field "F7(t" --p 3"#), Err(Error::Parse { .. })));
    assert!(matches!(parse_input(r#"kummer-rank --field "F7(t)" --p 3 --elems "t+""#), Err(Error::Parse { .. })));
    assert!(matches!(parse_input("scenario nope"), Err(Error::UnknownScenario(_))));
    assert!(matches!(parse_input("frobnicate"), Err(Error::InvalidArgument(_))));
    assert!(matches!(parse_input(r#"kummer-rank --field "F7(t)"#), Err(Error::Parse { .. })));
    let inv = parse_input("scenario lemma34 prop35 --format jsonl --jobs 2").unwrap();
    assert_eq!(inv.mode, OutputMode::JsonLines);
    assert_eq!(inv.jobs, Some(2));
}

#[test]
fn exit_codes() {
    let ok = cli(r#"kummer-rank --field "F7(t,u)" --p 3 --elems "t+u, t+u+1, t+u+2""#);
    assert_eq!(ok.code, 0, "{}", ok.stderr);
    assert!(ok.stdout.contains("certified-independent"));
    // a dependent system is still a passing computation
    let dep = cli(r#"kummer-rank --field "F7(t)" --p 3 --elems "t, t^4""#);
    assert_eq!(dep.code, 0);
    assert!(dep.stdout.contains("dependence-witness"));
    // an unresolved constant class gives a lower bound only
    let inc = cli(r#"kummer-rank --field "Q(zeta4)(t)" --p 2 --elems "t, 3""#);
    assert_eq!(inc.code, 2, "{}", inc.stdout);
    for bad in [r#"kummer-rank --p 7 --field "F7(t)""#, "scenario nope", "explore --max-order 65", "frattini --p 4"] {
        let out = cli(bad);
        assert_eq!(out.code, 3, "{bad}");
        assert!(out.stderr.starts_with("error:"));
    }
    assert_eq!(cli("--help").code, 0);
}

#[test]
fn jsonl_rows_follow_claim_order() {
    let out = cli("scenario remark16 --p 3 --format jsonl");
    assert_eq!(out.code, 0);
    let rows: Vec<serde_json::Value> = out.stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 4);
    for row in &rows {
        let keys: Vec<&str> = row.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys.len(), 6);
        for k in ["scenario", "claim", "computed", "expected", "provenance", "verdict"] {
            assert!(keys.contains(&k));
        }
        assert_eq!(row["verdict"], "pass");
    }
    assert_eq!(rows[0]["provenance"], "PAPER");
    assert_eq!(rows[1]["provenance"], "TRIVIAL");
    let again = cli("scenario remark16 --p 3 --format jsonl");
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn empty_report_renders_header_only() {
    let r = ScenarioReport::new("empty");
    assert_eq!(r.emit(OutputMode::JsonLines), "");
    let human = r.emit(OutputMode::Human);
    assert!(human.contains("claim"));
    assert!(human.contains("verdict: pass"));
    assert_eq!(r.exit_code(), 0);
    let mut r = ScenarioReport::new("mixed");
    r.row("a", 1, 1, Provenance::Trivial, ClaimVerdict::Inconclusive);
    assert_eq!(r.exit_code(), 2);
    r.row("b", 1, 2, Provenance::Trivial, ClaimVerdict::Fail);
    assert_eq!(r.exit_code(), 1);
}

#[test]
fn additive_commands() {
    let out = cli(r#"wp-solve --field "F3(t)" --b "t^3 - t + 1/t^3 - 1/t" --format jsonl"#);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("alpha"));
    let out = cli(r#"wp-solve --field "F3(t)" --b "1/t""#);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("obstruction re-checks"));
    let out = cli(r#"as-rank --field "F2(t)" --elems "1/t, 1/t^3, 1/t + 1/t^3""#);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("dependence-witness"));
    let out = cli(r#"as-rank --relative --field "F4(t,u)" --elems "1/(t+u), g/(t+u)""#);
    assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
}

#[test]
fn membership_command() {
    let out = cli(r#"membership --field "F7(t)" --p 3 --elems "t, t+1" --b "t^2*(t+1)*(t+3)^3""#);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.contains("∏ a_i^nu_i · alpha^p = b"));
    let out = cli(r#"membership --field "F7(t)" --p 3 --elems "t" --b "t+1""#);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("b ∉"));
}

#[test]
fn group_commands() {
    let out = cli("frattini --group Q8 --p 2 --format jsonl");
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("order 2 [0, "));
    let out = cli("frattini --p 3 --format jsonl");
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().count(), 2 * socle_lab::groups::NAMES.len());
    let out = cli("relative-frattini --group S4 --p 2 --subgroup 1");
    assert_eq!(out.code, 0, "{}", out.stderr);
    let out = cli(r#"socle --group "perm: 20 (1 2 3 4 5); (2 3 5 4)" --p 2 --subgroup """#);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("order 10"));
    assert_eq!(cli("socle --p 2 --subgroup 1").code, 3);
    assert_eq!(cli("socle --group C4 --p 2 --subgroup 9").code, 3);
}

#[test]
fn catalog_file_replaces_catalog() {
    let dir = std::env::temp_dir().join(format!("socle-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("groups.txt");
    std::fs::write(&path, "# two groups\nS3\nF20 = perm: 20 (1 2 3 4 5); (2 3 5 4)\n").unwrap();
    let path = path.display().to_string();
    let out = cli(&format!(r#"frattini --p 2 --catalog "{path}" --format jsonl"#));
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout.lines().count(), 4);
    let out = cli(&format!(r#"socle --group F20 --p 2 --subgroup "" --catalog "{path}""#));
    assert_eq!(out.code, 0, "{}", out.stderr);
    let out = cli(&format!(r#"scenario prop24-verify --catalog "{path}" --max-order 24 --format jsonl"#));
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout.lines().count(), 4);
    std::fs::write(dir.join("bad.txt"), "table: 2 0 1 1 1\n").unwrap();
    let bad = dir.join("bad.txt").display().to_string();
    assert_eq!(cli(&format!(r#"frattini --p 2 --catalog "{bad}""#)).code, 3);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn disjoint_command() {
    let out = cli(r#"disjoint --field "Q(zeta5)(r:x^5-2)" --sub1 r --sub2 "zeta5*r" --auts "zeta5, zeta5*r; zeta5^2, r" --format jsonl"#);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("(5, 5, 20)"));
    let out = cli(r#"disjoint --field "Q(zeta8)" --sub1 "zeta8 + zeta8^7" --sub2 "zeta8^2""#);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("(2, 2, 4)"));
    assert_eq!(cli(r#"disjoint --field "Q(zeta5)" --sub1 r"#).code, 3);
}

#[test]
fn scenarios_with_jobs_keep_order() {
    let inv = parse_input("scenario remark16 lemma34 example25 --jobs 3 --format jsonl").unwrap();
    let reports = execute(&inv).unwrap();
    let names: Vec<&str> = reports.iter().map(|r| r.scenario.as_str()).collect();
    assert_eq!(names, ["remark16", "lemma34", "example25"]);
    assert!(reports.iter().all(|r| r.verdict() == ClaimVerdict::Pass));
    let out = cli("explore --max-order 8 --p 2 --format jsonl");
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("prop24-explore"));
}
