#![no_main]
use libfuzzer_sys::fuzz_target;
use skewring::{ElementMap, FiniteInvariantSet, OrbitFunction, Scalar};
use std::collections::BTreeMap;

mod fields;

// The same decode pipeline the CLI runs for `invert --table`: a JSON object
// of element literals, parsed over the selected field, assembled into a
// function on the orbit of 1.
fuzz_target!(|data: &[u8]| {
    let Some((&selector, rest)) = data.split_first() else {
        return;
    };
    let field = fields::pick(selector);
    let Ok(raw) = serde_json::from_slice::<BTreeMap<String, String>>(rest) else {
        return;
    };
    let mut map = ElementMap::new();
    for (k, v) in &raw {
        let (Ok(point), Ok(value)) = (Scalar::parse(&field, k), Scalar::parse(&field, v)) else {
            return;
        };
        map.insert(point, value);
    }
    let Ok(set) = FiniteInvariantSet::orbit_of(&Scalar::one(&field)) else {
        return;
    };
    if let Ok(f) = OrbitFunction::from_map(&set, &map) {
        let _ = f.skew_inverse();
    }
});
