//! Classical multi-term identities.

use super::{MachinIdentity, Term};
use crate::exact::Rational;

fn build(terms: &[(i64, i64)]) -> MachinIdentity {
    MachinIdentity::new(
        terms
            .iter()
            .map(|&(c, q)| Term::new(c, Rational::new(1, q).expect("nonzero")))
            .collect(),
    )
    .expect("well-formed corpus entry")
}

/// `4·arctan(1/5) - arctan(1/239)`
pub fn machin() -> MachinIdentity {
    build(&[(4, 5), (-1, 239)])
}

/// `arctan(1/2) + arctan(1/3)`
pub fn euler() -> MachinIdentity {
    build(&[(1, 2), (1, 3)])
}

/// `12·arctan(1/18) + 8·arctan(1/57) - 5·arctan(1/239)`
pub fn gauss() -> MachinIdentity {
    build(&[(12, 18), (8, 57), (-5, 239)])
}

/// `8·arctan(1/10) - arctan(1/239) - 4·arctan(1/515)`
pub fn simson() -> MachinIdentity {
    build(&[(8, 10), (-1, 239), (-4, 515)])
}

/// `44·arctan(1/57) + 7·arctan(1/239) - 12·arctan(1/682) + 24·arctan(1/12943)`
pub fn kanada_a() -> MachinIdentity {
    build(&[(44, 57), (7, 239), (-12, 682), (24, 12943)])
}

/// `12·arctan(1/49) + 32·arctan(1/57) - 5·arctan(1/239) + 12·arctan(1/110443)`
pub fn kanada_b() -> MachinIdentity {
    build(&[(12, 49), (32, 57), (-5, 239), (12, 110443)])
}

/// Every corpus identity with a short name.
pub fn all() -> Vec<(&'static str, MachinIdentity)> {
    vec![
        ("machin", machin()),
        ("euler", euler()),
        ("gauss", gauss()),
        ("simson", simson()),
        ("kanada-a", kanada_a()),
        ("kanada-b", kanada_b()),
    ]
}
