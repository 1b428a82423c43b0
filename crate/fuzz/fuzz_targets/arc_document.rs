#![no_main]

use denniston::arcs::ArcDocument;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(doc) = ArcDocument::from_json(text) else {
        return;
    };
    if doc.field.m > 8 {
        return;
    }
    if let Ok(arc) = doc.into_arc() {
        let again = ArcDocument::from_json(&arc.to_document().to_json()).unwrap();
        assert_eq!(again.points.len(), arc.len());
    }
});
