#![no_main]

use arbitrary::Arbitrary;
use libfuzzer_sys::fuzz_target;
use wavebound_cli::{parse_key_values, RunConfig};

#[derive(Debug, Arbitrary)]
struct Input<'a> {
    text: &'a str,
    key: &'a str,
    value: &'a str,
}

fuzz_target!(|input: Input<'_>| {
    if let Ok(pairs) = parse_key_values(input.text) {
        // Accepted files never carry duplicate or empty keys.
        for (i, (k, _)) in pairs.iter().enumerate() {
            assert!(!k.is_empty());
            assert!(pairs[..i].iter().all(|(seen, _)| seen != k));
        }
    }
    if let Ok(mut cfg) = RunConfig::from_text(input.text) {
        let _ = cfg.set(input.key, input.value);
        let _ = cfg.validate();
        let _ = cfg.geometry();
    }
});
