use amalgam_core::complex::{build_amalgam_complex, iso_check};
use amalgam_core::covers::faults::Fault;
use amalgam_core::covers::{
    build_tower_x, build_tower_z, check_x5_iso_z2, kmn_cover_fragment, neumann_cover_exists, partitions_of,
    realized_partitions, verify_cover, Condition, Link,
};
use amalgam_core::{CurveSpec, Spec, SurfaceAmalgamSpec};

fn spec(m: u32, n: u32, a: CurveSpec, b: CurveSpec) -> SurfaceAmalgamSpec {
    SurfaceAmalgamSpec::new(2, 3, m, n, a, b).unwrap()
}

#[test]
fn every_fault_is_caught_on_every_tower_link() {
    let s = spec(3, 4, CurveSpec::separating(1, 1), CurveSpec::NonSeparating);
    let tower = build_tower_x(&s).unwrap();
    for (link, cm) in tower.covers() {
        assert!(verify_cover(cm).pass, "link {link}");
        for fault in Fault::ALL {
            if let Some(bad) = fault.apply(cm) {
                let report = verify_cover(&bad);
                assert!(!report.pass, "link {link} {fault:?}");
                assert!(report.has(fault.target()), "link {link} {fault:?}: {:?}", report.violations);
            }
        }
    }
}

#[test]
fn claimed_degree_must_match() {
    let mut cm = kmn_cover_fragment(2, 3);
    cm.degree = 5;
    let report = verify_cover(&cm);
    assert!(!report.pass);
    assert!(report.has(Condition::PieceDegreeSum) || report.has(Condition::EulerMultiplicative));
}

#[test]
fn towers_without_tubes_on_the_product_side() {
    // N = 0: both windings one, no tori after collapsing
    let s = spec(1, 1, CurveSpec::NonSeparating, CurveSpec::separating(1, 2));
    let x = build_tower_x(&s).unwrap();
    assert!(x.verify().iter().all(|c| c.pass));
    assert!(check_x5_iso_z2(&s).unwrap().is_some());
    let z = build_tower_z(&s);
    assert!(z.euler_matches_vector);
}

#[test]
fn tower_links_alternate_covers_and_one_collapse() {
    let s = spec(2, 3, CurveSpec::NonSeparating, CurveSpec::NonSeparating);
    let x = build_tower_x(&s).unwrap();
    let kinds: Vec<bool> = x.links.iter().map(|l| matches!(l, Link::Cover(_))).collect();
    assert_eq!(kinds, vec![true, true, false, true, true]);
    let names: Vec<&str> = x.stages.iter().map(|s| s.name.as_str()).collect();
    assert_eq!(names, vec!["X", "X1", "X2", "X3", "X4", "X5"]);
    assert_eq!(x.stage("X").unwrap(), &build_amalgam_complex(&s));
}

#[test]
fn different_specs_give_different_tops() {
    let a = build_tower_x(&spec(2, 3, CurveSpec::NonSeparating, CurveSpec::NonSeparating)).unwrap();
    let b = build_tower_x(&spec(2, 3, CurveSpec::NonSeparating, CurveSpec::separating(1, 2))).unwrap();
    assert!(iso_check(a.stage("X5").unwrap(), b.stage("X5").unwrap()).is_none());
}

#[test]
fn parity_matches_enumeration_on_a_wider_range() {
    for (genus, boundary, d) in [(1, 1, 4), (1, 3, 2), (2, 1, 3)] {
        let realized = realized_partitions(genus, boundary, d);
        let euler = 2 - 2 * genus as i64 - boundary as i64;
        let mut tuples: Vec<Vec<Vec<u64>>> = vec![Vec::new()];
        for _ in 0..boundary {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    partitions_of(d as u64).into_iter().map(move |p| {
                        let mut t = t.clone();
                        t.push(p);
                        t
                    })
                })
                .collect();
        }
        for t in tuples {
            let parity = neumann_cover_exists(euler, boundary, d as u64, &t).unwrap();
            assert_eq!(parity, realized.contains(&t), "g={genus} b={boundary} d={d} {t:?}");
        }
    }
}

#[test]
fn spec_json_round_trip() {
    let text = r#"{"family":"C","g":2,"h":3,"m":3,"n":2,"curve_a":{"kind":"nonseparating"},"curve_b":{"kind":"separating","split":[1,2]}}"#;
    let parsed: Result<Spec, _> = serde_json::from_str(text);
    let spec = match parsed {
        Ok(s) => s.validate().unwrap(),
        Err(e) => panic!("{e}"),
    };
    let Spec::Amalgam(a) = &spec else { panic!("family") };
    assert_eq!((a.m, a.n, a.g, a.h), (2, 3, 3, 2));
    let again: Spec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
    assert_eq!(again, spec);
}
