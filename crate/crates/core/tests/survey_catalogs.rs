use std::path::PathBuf;

use preprim::classify::Caps;
use preprim::enumerate::{export_catalog, transitive_groups};
use preprim::survey::{classify_catalog, in_set_a, load_catalog, parse_catalog, scan_degree, survey_table};

const CATALOG_DEGREES: [usize; 10] = [8, 9, 10, 11, 12, 13, 14, 15, 33, 35];

fn path(degree: usize) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("../../data/catalogs/deg{degree}.cat"))
}

#[test]
fn catalog_rows_are_consistent() {
    let caps = Caps::default();
    for degree in CATALOG_DEGREES {
        let cat = load_catalog(&path(degree)).unwrap();
        assert_eq!(cat.complete_degree, Some(degree));
        let records = classify_catalog(&cat.entries, &caps);
        assert!(records.iter().all(|r| r.outcome.is_ok()), "degree {degree}");
        let rows = survey_table(&records);
        assert_eq!(rows.len(), 1);
        let row = &rows[0];
        assert_eq!(row.t as usize, cat.entries.len());
        // primitive iff quasiprimitive and pre-primitive
        assert_eq!(row.pp_and_qp, row.p, "degree {degree}");
        if [11, 13].contains(&degree) {
            assert!(row.t == row.p && row.p == row.pp && row.pp == row.qp);
        }
        let scan = scan_degree(degree, true, &records).unwrap();
        if scan.in_s {
            assert!(in_set_a(degree as u64), "S not inside A at {degree}");
        }
    }
}

#[test]
fn enumerated_degrees_respect_set_inclusion() {
    let caps = Caps::default();
    for n in 2..=7 {
        let text = export_catalog(n, &transitive_groups(n).unwrap());
        let cat = parse_catalog(&text).unwrap();
        assert_eq!(cat.complete_degree, Some(n));
        let records = classify_catalog(&cat.entries, &caps);
        let scan = scan_degree(n, true, &records).unwrap();
        if scan.in_s {
            assert!(in_set_a(n as u64));
        }
        let row = &survey_table(&records)[0];
        assert_eq!(row.pp_and_qp, row.p);
    }
}

#[test]
fn exported_catalogs_reload_to_the_same_groups() {
    for n in 2..=6 {
        let groups = transitive_groups(n).unwrap();
        let cat = parse_catalog(&export_catalog(n, &groups)).unwrap();
        for (g, e) in groups.iter().zip(&cat.entries) {
            assert_eq!(&e.group().unwrap().order(), &g.order());
            assert_eq!(e.generators, g.generators());
        }
    }
}
