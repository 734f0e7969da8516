#![no_main]
use libfuzzer_sys::fuzz_target;
use skewring::Scalar;

mod fields;

fuzz_target!(|data: &[u8]| {
    let Some((&selector, rest)) = data.split_first() else {
        return;
    };
    let Ok(input) = std::str::from_utf8(rest) else {
        return;
    };
    let field = fields::pick(selector);
    if let Ok(x) = Scalar::parse(&field, input) {
        // Round-trip: the printed form must parse back to the same element.
        let shown = x.to_string();
        let back = Scalar::parse(&field, &shown).unwrap();
        assert_eq!(back, x);
    }
});
