#![no_main]
use libfuzzer_sys::fuzz_target;

mod fields;

fuzz_target!(|data: &[u8]| {
    let Some((&selector, rest)) = data.split_first() else {
        return;
    };
    let Ok(input) = std::str::from_utf8(rest) else {
        return;
    };
    let field = fields::pick(selector);
    // Parsing must never panic; lowering a well-formed tree must not either.
    if let Ok(ast) = skewring::parse_expr(&field, input) {
        let _ = skewring::lower(&field, &ast);
    }
});
