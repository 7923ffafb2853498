use super::*;

fn opts() -> RunOptions {
    RunOptions::default()
}

#[test]
fn catalog_is_stable_and_complete() {
    let list = list_presets();
    assert!(list.len() >= 12);
    let names: Vec<&str> = list.iter().map(|p| p.name).collect();
    assert!(names.contains(&"im_emb_model"));
    assert!(names.contains(&"tor_h4"));
    assert_eq!(list, list_presets());
    for p in &list {
        assert!(!p.anchor.is_empty());
        assert!(!p.description.is_empty());
    }
}

#[test]
fn unknown_preset_is_rejected() {
    assert!(matches!(
        run_preset("nope", &opts()),
        Err(Error::UnknownPreset(_))
    ));
}

#[test]
fn zero_k_is_rejected() {
    let mut o = opts();
    o.k = RatLit::new(0, 1).unwrap();
    assert!(matches!(run_preset("im_emb_model", &o), Err(Error::Input(_))));
}

#[test]
fn illegal_field_is_rejected() {
    let mut o = opts();
    o.field = Some(FieldSpec::Rationals);
    assert!(run_preset("fiber_z2", &o).is_err());
    o.field = Some(FieldSpec::Prime(2));
    assert!(run_preset("zp_dimension_match", &o).is_err());
    assert!(run_preset("pontryagin_full", &o).is_err());
    o.field = Some(FieldSpec::Prime(5));
    assert!(run_preset("im_emb_model", &o).is_err());
}

#[test]
fn im_emb_preset_passes_at_default_degree() {
    let report = run_preset("im_emb_model", &opts()).unwrap();
    assert!(report.passed(), "{}", report.render_text());
    assert_eq!(
        report.series.as_deref().unwrap(),
        &[1, 0, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]
    );
    assert_eq!(report.verdict, "PASS");
}

#[test]
fn symp_models_pass() {
    for name in ["symp_m_model", "symp_mtilde_model"] {
        let report = run_preset(name, &opts()).unwrap();
        assert!(report.passed(), "{name}: {}", report.render_text());
    }
}

#[test]
fn relative_model_passes_with_quotient_and_candidates() {
    let mut o = opts();
    o.max_degree = Some(8);
    let report = run_preset("relative_model", &o).unwrap();
    assert!(report.passed(), "{}", report.render_text());
    let labels: Vec<&str> = report.rows.iter().map(|r| r.label.as_str()).collect();
    assert!(labels.contains(&"quotient generators"));
    assert!(labels.contains(&"quotient differential"));
    assert!(labels.contains(&"cohomology generated by the named cocycles"));
}

#[test]
fn emb_model_passes_with_sn_rows() {
    let report = run_preset("emb_model", &opts()).unwrap();
    assert!(report.passed(), "{}", report.render_text());
    assert_eq!(report.series.as_deref().unwrap()[..7], [1, 0, 1, 3, 0, 2, 4]);
    let sn_rows: Vec<&ReportRow> = report
        .rows
        .iter()
        .filter(|r| r.label.starts_with("s_"))
        .collect();
    // n = 1 (degree 6) and n = 2 (degree 10) fit below 12.
    assert_eq!(sn_rows.len(), 4);
    assert!(report.notes.iter().any(|n| n.contains("uncompared")));
}

#[test]
fn s_n_check_runs_three_terms() {
    let report = s_n_cocycle_check(3, &opts()).unwrap();
    assert!(report.passed(), "{}", report.render_text());
    assert!(report.rows.iter().any(|r| r.label.starts_with("s_3 closed")));
    assert_eq!(report.source, "s_n_cocycle_check");
}

#[test]
fn pontryagin_presets_pass() {
    let mut o = opts();
    o.max_degree = Some(8);
    let report = run_preset("pontryagin_tilde", &o).unwrap();
    assert!(report.passed(), "{}", report.render_text());
    assert_eq!(
        report.series.as_deref().unwrap(),
        &[1, 3, 4, 4, 4, 4, 4, 4, 4]
    );
    for p in [2u64, 3, 5] {
        let mut o = opts();
        o.max_degree = Some(6);
        o.field = Some(FieldSpec::Prime(p));
        let report = run_preset("pontryagin_tilde", &o).unwrap();
        assert!(report.passed(), "F{p}: {}", report.render_text());
    }
    let mut o = opts();
    o.max_degree = Some(10);
    let report = run_preset("pontryagin_full", &o).unwrap();
    assert!(report.passed(), "{}", report.render_text());
    assert_eq!(
        report.series.as_deref().unwrap(),
        &[1, 1, 0, 2, 3, 1, 1, 3, 3, 1, 1]
    );
}

#[test]
fn tor_preset_passes_and_names_rs() {
    let mut o = opts();
    o.max_degree = Some(6);
    let report = run_preset("tor_h4", &o).unwrap();
    assert!(report.passed(), "{}", report.render_text());
    assert_eq!(report.series.as_deref().unwrap()[..5], [1, 0, 2, 1, 1]);
    let text = report.render_text();
    assert!(text.contains("total degree 4: dim 1, representative rs"));
    assert!(report
        .rows
        .iter()
        .any(|r| r.label.contains("cohomology cross-check") && r.pass));
}

#[test]
fn fiber_and_split_presets_pass() {
    let mut o = opts();
    o.max_degree = Some(8);
    let report = run_preset("fiber_z2", &o).unwrap();
    assert!(report.passed(), "{}", report.render_text());
    assert_eq!(
        report.series.as_deref().unwrap(),
        &[1, 0, 0, 1, 1, 1, 2, 3, 4]
    );
    let report = run_preset("im_emb_z2_split", &o).unwrap();
    assert!(report.passed(), "{}", report.render_text());
    assert_eq!(
        report.series.as_deref().unwrap(),
        &[1, 0, 2, 1, 2, 3, 4, 6, 9]
    );
}

#[test]
fn zp_match_passes_for_three_and_five() {
    for p in [3u64, 5] {
        let mut o = opts();
        o.field = Some(FieldSpec::Prime(p));
        let report = run_preset("zp_dimension_match", &o).unwrap();
        assert!(report.passed(), "p = {p}: {}", report.render_text());
        assert_eq!(
            report.series.as_deref().unwrap(),
            &[1, 0, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]
        );
    }
}

#[test]
fn splitting_check_passes() {
    let report = run_preset("splitting_check", &opts()).unwrap();
    assert!(report.passed());
    assert_eq!(report.rows.len(), 1);
    assert_eq!(report.rows[0].computed, "2 2 3 3 3 4");
}

#[test]
fn k_invariance_of_the_model_presets() {
    for name in ["im_emb_model", "emb_model"] {
        let baseline = run_preset(name, &opts()).unwrap();
        for k in ["2", "-3", "7/2"] {
            let mut o = opts();
            o.k = RatLit::parse(k).unwrap();
            let report = run_preset(name, &o).unwrap();
            assert!(report.passed(), "{name} k={k}");
            assert_eq!(report.series, baseline.series, "{name} k={k}");
        }
    }
}

#[test]
fn verdicts_are_deterministic() {
    let r1 = run_preset("im_emb_model", &opts()).unwrap();
    let r2 = run_preset("im_emb_model", &opts()).unwrap();
    assert_eq!(r1.to_json(), r2.to_json());
    assert_eq!(r1.render_text(), r2.render_text());
}

#[test]
fn cross_oracle_tor_equals_im_emb_low_degrees() {
    let mut o = opts();
    o.max_degree = Some(4);
    let tor = run_preset("tor_h4", &o).unwrap();
    let cdga = run_preset("im_emb_model", &o).unwrap();
    assert_eq!(
        tor.series.as_deref().unwrap(),
        cdga.series.as_deref().unwrap()
    );
}

#[test]
fn preset_spec_files_round_trip() {
    for info in list_presets() {
        let preset = presets::find(info.name).unwrap();
        let n_max = 8;
        let field = preset.default_field;
        let file = (preset.build)(field, n_max);
        let mut o = opts();
        o.field = Some(field);
        o.max_degree = Some(n_max);
        let direct = run_spec_file(&file, &o).unwrap();
        let json = file.to_json();
        let parsed = SpecFile::from_json(&json).unwrap();
        let reparsed = run_spec_file(&parsed, &o).unwrap();
        assert_eq!(direct.to_json(), reparsed.to_json(), "{}", info.name);
        assert!(direct.passed(), "{}: {}", info.name, direct.render_text());
    }
}

#[test]
fn representatives_appear_on_request() {
    let mut o = opts();
    o.max_degree = Some(5);
    o.representatives = true;
    let report = run_preset("im_emb_model", &o).unwrap();
    let all: Vec<&String> = report
        .representatives
        .iter()
        .flat_map(|(_, reps)| reps.iter())
        .collect();
    assert!(all.iter().any(|r| r.as_str() == "g"));
    let text = report.render_text();
    assert!(text.contains("representatives:"));
}

#[test]
fn json_contains_every_number_of_the_text_output() {
    let report = run_preset("im_emb_model", &opts()).unwrap();
    let json = report.to_json();
    let text = report.render_text();
    for token in text.split_whitespace() {
        if token.chars().all(|c| c.is_ascii_digit()) {
            assert!(json.contains(token), "missing {token}");
        }
    }
}
