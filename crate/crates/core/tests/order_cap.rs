//! The order cap is process-wide, so these checks live in their own test binary.

use projpair::constructions::{direct_product, wreath_product};
use projpair::group::{catalog, order_cap, set_order_cap, DEFAULT_ORDER_CAP};
use projpair::Error;

#[test]
fn cap_blocks_large_constructions() {
    assert_eq!(order_cap(), DEFAULT_ORDER_CAP);
    let s4 = catalog::group("S4").unwrap();
    let s5 = catalog::group("S5").unwrap();
    // S4 wr C3 has order 24^3 * 3
    assert!(matches!(
        wreath_product(&s4, &catalog::group("C3").unwrap()),
        Err(Error::OrderCap { .. })
    ));
    assert!(direct_product(&s4, &s5).is_ok());

    set_order_cap(100);
    match direct_product(&s4, &s5) {
        Err(Error::OrderCap { order, cap }) => assert_eq!((order, cap), (2880, 100)),
        other => panic!("expected a cap error, got {other:?}"),
    }
    assert!(catalog::group("S3").is_some());
    set_order_cap(DEFAULT_ORDER_CAP);
    assert!(direct_product(&s4, &s5).is_ok());
}
