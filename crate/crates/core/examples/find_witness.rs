//! The README walkthrough: search a parity coloring for a witness and
//! round-trip a polynomial through its symbolic preimage.

use symvdw::evaluation::{encode_poly, IntPoly};
use symvdw::vdw_search::{find_poly_vdw, verify_witness, Coloring};

fn main() {
    let polys = vec![IntPoly::new(vec![0, 1]), IntPoly::new(vec![0, 0, 1])];
    let parity = Coloring::modular(vec![0, 1]).unwrap();
    if let Some(w) = find_poly_vdw(&polys, &parity, 10, 10).unwrap() {
        assert!(verify_witness(&w, &polys, &parity));
        println!("a = {}, values = {:?}, color = {}", w.a, w.values, w.color);
    }

    let eta = encode_poly(&IntPoly::new(vec![0, 2, 3]), 2).unwrap();
    assert_eq!(eta.to_string(), "T{2;1} + T{3;1,1}");
    println!("eta = {eta}");
}
