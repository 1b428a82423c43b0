#![no_main]

use denniston::gf::{parse_hex, FieldContext, FieldSpec};
use libfuzzer_sys::fuzz_target;

// First line: a field spec as JSON or `m modulus`; remaining lines: elements.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let mut lines = text.lines();
    let Some(head) = lines.next() else {
        return;
    };
    let spec = serde_json::from_str::<FieldSpec>(head).ok().or_else(|| {
        let (m, modulus) = head.split_once(' ')?;
        Some(FieldSpec::new(
            m.trim().parse().ok()?,
            parse_hex(modulus).ok()?,
        ))
    });
    let Some(spec) = spec else {
        return;
    };
    if spec.m > 16 {
        return;
    }
    let Ok(f) = FieldContext::new(spec) else {
        return;
    };
    for line in lines {
        if let Ok(e) = f.parse_elem(line) {
            assert_eq!(f.parse_elem(&e.to_string()).unwrap(), e);
            if !e.is_zero() {
                assert_eq!(f.mul(e, f.inv(e).unwrap()).0, 1);
            }
        }
    }
});
