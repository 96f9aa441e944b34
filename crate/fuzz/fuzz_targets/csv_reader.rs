#![no_main]

use libfuzzer_sys::fuzz_target;
use wavebound_cli::read_csv;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(table) = read_csv(text) {
        for row in &table.rows {
            assert_eq!(row.len(), table.columns.len());
        }
        for c in &table.columns {
            let _ = table.numbers(c);
        }
    }
});
