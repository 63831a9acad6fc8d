use repcalc_bench::{dense, hidden_sum, tube_module};
use repcalc_core::homcalc::decompose;
use repcalc_core::Field;

#[test]
fn fixtures_are_well_formed() {
    let f = Field::prime(101).unwrap();
    assert_eq!(dense(&f, 5, 3), dense(&f, 5, 3));
    assert_eq!(tube_module(&f, 2, 3).dim(), 6);
    let h = hidden_sum(&f);
    assert!(h.validate().unwrap().is_valid());
    assert_eq!(decompose(&h).unwrap().summands.len(), 9);
}
