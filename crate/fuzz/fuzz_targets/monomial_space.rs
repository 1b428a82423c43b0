#![no_main]

use denniston::funcode::MonomialSpace;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(space) = text.parse::<MonomialSpace>() {
        let again: MonomialSpace = space.to_string().parse().unwrap();
        assert_eq!(again, space);
    }
});
