//! Field roster shared by the fuzz targets: the first input byte picks one
//! of the built-in coefficient fields, the rest is handed to the parser
//! under test.

use skewring::{FieldDescriptor, FieldRef, GaussianSigma, Scalar};

pub fn pick(selector: u8) -> FieldRef {
    match selector % 6 {
        0 => FieldDescriptor::finite_field(2, &[1, 1, 1], 1).unwrap(),
        1 => FieldDescriptor::finite_field(3, &[1, 0, 1], 1).unwrap(),
        2 => FieldDescriptor::gaussian(GaussianSigma::Conjugation),
        3 => FieldDescriptor::gaussian(GaussianSigma::Identity),
        4 => FieldDescriptor::quaternions(),
        _ => {
            let base = FieldDescriptor::finite_field(2, &[1, 1, 1], 1).unwrap();
            let g = Scalar::parse(&base, "g").unwrap();
            base.with_inner_derivation(&g).unwrap()
        }
    }
}
