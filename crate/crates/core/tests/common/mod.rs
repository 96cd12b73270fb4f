//! Shared D=10 data: the weight-k T₃ matrices, the eigenvalue maps from T₃
//! to T₇ and the printed T₇ matrices.

#![allow(dead_code)]

use modeq_core::exactalg::rational::{int, rat};
use modeq_core::exactalg::{parse_rational, BiPoly, BigRational, RatMatrix, UniPoly};
use modeq_core::heckeforms::{EigenTransferMap, HeckeTable};
use modeq_core::schwarzian::{CurveData, EllipticPoint};

pub fn d10_curve() -> CurveData {
    CurveData::new(
        "X0(10)/W10",
        vec![
            EllipticPoint::finite(int(0), 3, rat(20, 243)),
            EllipticPoint::finite(int(2), 2, rat(-29, 400)),
            EllipticPoint::finite(int(27), 2, rat(-953, 97200)),
            EllipticPoint::infinite(2),
        ],
    )
    .unwrap()
    .with_discriminant(10)
}

fn table(prime: u64, blocks: &[(u32, &[&[i64]])]) -> HeckeTable {
    let mut t = HeckeTable::new(prime);
    for &(k, rows) in blocks {
        t.insert(k, RatMatrix::from_int_rows(rows).unwrap());
    }
    t
}

pub fn t3() -> HeckeTable {
    table(
        3,
        &[
            (4, &[&[-8]]),
            (8, &[&[28]]),
            (12, &[&[468, -98], &[-1728, 136]]),
            (16, &[&[1728, 490], &[34560, -3572]]),
            (20, &[&[-2268, -2450], &[-328320, 35992]]),
            (24, &[&[227772, -272244, 14406], &[-388800, -258192, 12250], &[2985984, 711936, -199556]]),
            (28, &[&[420552, 949620, -72030], &[-933120, 4479732, -61250], &[-104509440, 31147200, -196568]]),
            (32, &[&[29821932, -5456052, 360150], &[95084928, -48253536, 306250], &[1803534336, -618444288, 19290988]]),
        ],
    )
}

pub fn t7_printed() -> HeckeTable {
    table(
        7,
        &[
            (4, &[&[-4]]),
            (8, &[&[104]]),
            (12, &[&[-22336, 17346], &[305856, 36428]]),
            (16, &[&[628484, 207270], &[14618880, -1613416]]),
            (20, &[&[49507856, 1021650], &[136909440, 33553436]]),
            (
                24,
                &[
                    &[-826476664, -2549118572, 216037178],
                    &[-4554273600, -3184965196, 546964950],
                    &[27509870592, 52096359168, 934073672],
                ],
            ),
            (
                28,
                &[
                    &[-91564144564, 113245670860, 5617780910],
                    &[438283664640, 412736094176, -12502504350],
                    &[15396166471680, -2162558865600, -111965170324],
                ],
            ),
            (
                32,
                &[
                    &[4631981436536, -203996300396, 50284263050],
                    &[-11858411062656, 12584751782372, 97180354950],
                    &[18304356630528, 78355740427776, 4460404162424],
                ],
            ),
        ],
    )
}

pub fn eigenmap() -> EigenTransferMap {
    let rows: [(u32, i64, &[i64]); 8] = [
        (4, 1, &[-4]),
        (8, 1, &[104]),
        (12, 1, &[60500, -177]),
        (16, 1, &[-102460, 423]),
        (20, 1, &[48562100, -417]),
        (24, 24, &[145233723936, 156628, -1]),
        (28, 84, &[-75168751256976, -17897672, 11]),
        (32, 216, &[407319502919904, -14315428, 1]),
    ];
    let mut m = EigenTransferMap::new(3, 7);
    for (k, den, coeffs) in rows {
        m.insert(k, UniPoly::from_ints(coeffs, 'a').scale(&rat(1, den)));
    }
    m
}

/// Parses the `i j coefficient` body of a Φ fixture.
pub fn phi_fixture(text: &str) -> BiPoly {
    let terms = text.lines().skip(1).filter(|l| !l.trim().is_empty()).map(|l| {
        let mut it = l.split_whitespace();
        let i: usize = it.next().unwrap().parse().unwrap();
        let j: usize = it.next().unwrap().parse().unwrap();
        let c: BigRational = parse_rational(it.next().unwrap()).unwrap();
        ((i, j), c)
    });
    BiPoly::from_terms(terms, ('x', 'y'))
}

pub const D10_PHI7: &str = include_str!("../../../../fixtures/d10/phi7.txt");
