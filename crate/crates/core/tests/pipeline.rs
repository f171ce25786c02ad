mod common;

use mirror_guard::cover::Mode;
use mirror_guard::pipeline::{render_svg, solve, verify, Instance, SvgOptions};
use mirror_guard::Error;

#[test]
fn dropping_a_guard_orphans_a_spike() {
    let mut inst = common::load_mode("comb3", Mode::DirectOnly);
    inst.options.exact_cover = true;
    inst.options.exact_cap = 200;
    let run = solve(&inst).unwrap();
    let p = &inst.polygon;
    let guards = &run.solution.guards;
    assert_eq!(guards.len(), 3);
    assert!(verify(p, guards, 4000, 11, false).pass);
    // more visibility never hurts
    assert!(verify(p, guards, 4000, 11, true).pass);

    for skip in 0..guards.len() {
        let fewer: Vec<_> = guards.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, g)| g.clone()).collect();
        let v = verify(p, &fewer, 4000, 11, false);
        assert!(!v.pass);
        // every miss sits above the body, inside one spike
        for [_, y] in &v.failures {
            let y: mirror_guard::kernel::Scalar = y.parse().unwrap();
            assert!(y > mirror_guard::kernel::Scalar::from_int(10));
        }
    }
}

#[test]
fn reflection_guard_covers_the_comb() {
    let mut inst = common::load_mode("comb4", Mode::Reflection);
    inst.options.samples = 3000;
    let run = solve(&inst).unwrap();
    assert_eq!(run.solution.guards.len(), 1);
    assert!(run.report.verify.as_ref().unwrap().pass);
    // the same guard alone is not enough without the mirror
    assert!(!verify(&inst.polygon, &run.solution.guards, 3000, 0, false).pass);
}

#[test]
fn every_corpus_instance_verifies() {
    for name in ["triangle", "square", "hexagon", "octagon", "ell"] {
        for mode in [Mode::Reflection, Mode::DirectOnly] {
            let mut inst = common::load_mode(name, mode);
            inst.options.samples = 1000;
            let run = solve(&inst).unwrap();
            let v = run.report.verify.unwrap();
            assert!(v.pass, "{name} {mode:?}: {:?}", v.failures);
            assert_eq!(run.solution.guards.len(), run.report.chosen.len());
        }
    }
}

#[test]
fn report_and_svg_are_stable() {
    let inst = common::load("ell");
    let a = solve(&inst).unwrap();
    let b = solve(&inst).unwrap();
    assert_eq!(a.report.to_json(false), b.report.to_json(false));
    let text = a.report.to_json(false);
    assert!(text.contains("\"timings_ms\": {}"));
    let keys = ["\"mode\"", "\"line_level\"", "\"line_count\"", "\"scr_count\"", "\"greedy_size\"", "\"guards\""];
    let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "key order changed");

    let opts = SvgOptions { selected_scr: Some(3), reflected: Some((0, 0)) };
    let (s1, s2) = (render_svg(&inst, &a, &opts), render_svg(&inst, &b, &opts));
    assert_eq!(s1, s2);
    for layer in ["cells", "guarding-regions", "reflected", "polygon", "guards"] {
        assert!(s1.contains(&format!("<g id=\"{layer}\">")), "{layer}");
    }
    let plain = render_svg(&inst, &a, &SvgOptions::default());
    assert!(!plain.contains("guarding-regions") && !plain.contains("reflected"));
}

#[test]
fn instance_parsing() {
    let ok = Instance::from_json(r#"{"vertices": [[0,0],[3,0],[0,3]], "options": {"mode": "DirectOnly", "line_level": "pairs"}}"#).unwrap();
    assert_eq!(ok.options.mode, Mode::DirectOnly);
    // no mirror list: every edge reflects
    assert_eq!(ok.polygon.mirror_edges(), vec![0, 1, 2]);
    // clockwise input is accepted and reoriented
    let cw = Instance::from_json(r#"{"vertices": [[0,0],[0,3],[3,0]], "mirrors": [0]}"#).unwrap();
    assert_eq!(cw.polygon.mirror_edges().len(), 1);
    for bad in [
        r#"{"vertices": [[0,0],[3,0],[0,3]], "mirrors": [3]}"#,
        r#"{"vertices": [[0,0],[3,0],[0,3]], "options": {"colour": 1}}"#,
        r#"{"vertices": [[0,0],[3,0]]}"#,
        r#"{"vertices": "nope"}"#,
    ] {
        assert!(matches!(Instance::from_json(bad), Err(Error::InvalidInstance(_) | Error::InvalidPolygon(_))), "{bad}");
    }
}
