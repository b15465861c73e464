//! The quotient of the straight left I-order {0, 1, 2, 4} of B2, checked
//! against the ambient table directly.

use iorder_lab::bitset::BitSet;
use iorder_lab::catalog;
use iorder_lab::inverse::inverse_data;
use iorder_lab::iorder::extract_relations;
use iorder_lab::quotient::{build_quotient, QuotientOptions};

#[test]
fn classes_are_fibres_of_inverse_product() {
    let b2 = catalog::brandt(2).unwrap();
    let inv = inverse_data(&b2).unwrap();
    let ex = extract_relations(&b2, &inv, &BitSet::from_indices(5, [0, 1, 2, 4])).unwrap();
    let p = build_quotient(&ex.sub, &ex.rprime, &ex.leql, QuotientOptions::default()).unwrap();
    let value = |(a, b): (usize, usize)| {
        let (a, b) = (ex.embedding[a], ex.embedding[b]);
        b2.mul(inv.inverse(a), b)
    };
    for &x in &p.sigma {
        for &y in &p.sigma {
            assert_eq!(p.class_of_pair(x.0, x.1) == p.class_of_pair(y.0, y.1), value(x) == value(y), "{x:?} {y:?}");
        }
    }
    assert_eq!(p.order(), 5);
}

#[test]
fn idempotents_of_the_quotient_commute() {
    let b2 = catalog::brandt(2).unwrap();
    let inv = inverse_data(&b2).unwrap();
    let ex = extract_relations(&b2, &inv, &BitSet::from_indices(5, [0, 1, 2, 4])).unwrap();
    let p = build_quotient(&ex.sub, &ex.rprime, &ex.leql, QuotientOptions::default()).unwrap();
    let es = p.p.idempotents();
    assert_eq!(es.len(), 3);
    for &e in &es {
        for &f in &es {
            assert_eq!(p.p.mul(e, f), p.p.mul(f, e));
        }
    }
}
