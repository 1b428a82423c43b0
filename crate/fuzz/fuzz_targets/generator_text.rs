#![no_main]

use denniston::funcode::GeneratorMatrix;
use denniston::gf::FieldContext;
use libfuzzer_sys::fuzz_target;

// First byte picks the degree; the rest is matrix text.
fuzz_target!(|data: &[u8]| {
    let Some((&m, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let f = FieldContext::with_degree(1 + (m as u32) % 8).unwrap();
    if let Ok(g) = GeneratorMatrix::from_text(&f, text) {
        let back = GeneratorMatrix::from_text(&f, &g.to_text()).unwrap();
        assert_eq!(back.rows(), g.rows());
        let _ = g.rank();
    }
});
