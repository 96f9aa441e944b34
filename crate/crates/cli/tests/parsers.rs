use proptest::prelude::*;
use wavebound_cli::{parse_key_values, read_csv, Cell, Report, RunConfig};

fn key() -> impl Strategy<Value = String> {
    "[a-z][a-z0-9_]{0,12}"
}

proptest! {
    #[test]
    fn config_parser_never_panics(text in "\\PC{0,200}") {
        let _ = parse_key_values(&text);
        let _ = RunConfig::from_text(&text);
    }

    #[test]
    fn csv_reader_never_panics(text in "\\PC{0,200}") {
        let _ = read_csv(&text);
        let _ = read_csv(&format!("# wavebound-csv v1\n{text}"));
    }

    #[test]
    fn key_values_round_trip(
        pairs in proptest::collection::btree_map(key(), "[A-Za-z0-9.+-]{1,10}", 0..8),
        pad in " {0,3}",
    ) {
        let text: String = pairs
            .iter()
            .map(|(k, v)| format!("{pad}{k}{pad}={pad}{v}\n# comment\n\n"))
            .collect();
        let parsed = parse_key_values(&text).unwrap();
        let expect: Vec<(String, String)> = pairs.into_iter().collect();
        prop_assert_eq!(parsed, expect);
    }

    #[test]
    fn report_csv_round_trip(
        values in proptest::collection::vec(proptest::num::f64::NORMAL | proptest::num::f64::ZERO, 0..20),
        flag in proptest::bool::ANY,
    ) {
        let mut r = Report::new("sweep", vec!["i", "v", "flag"]);
        r.note("flag", flag);
        for (i, &v) in values.iter().enumerate() {
            r.push(vec![Cell::from(i), Cell::from(v), Cell::from(flag)]);
        }
        let t = read_csv(&r.to_csv()).unwrap();
        prop_assert_eq!(t.numbers("v").unwrap(), values);
        prop_assert_eq!(t.meta("flag"), Some(if flag { "true" } else { "false" }));
    }
}
