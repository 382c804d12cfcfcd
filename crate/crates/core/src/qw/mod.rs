//! Complexes of complexes and their totalization, the Euler characteristic,
//! and the Eilenberg swindle on eventually periodic complexes.
//!
//! Towers stop at depth one: entries are bounded complexes and outer
//! differentials are chain maps.

mod periodic;
mod tower;

use serde::{Deserialize, Serialize};

use crate::complex_core::Complex;

pub use periodic::{
    ep_homology, swindle_f, swindle_iso, swindle_terms, EventuallyPeriodicComplex, PeriodicMap, SwindleWitness,
};
pub use tower::{is_levelwise_acyclic, is_qw_total, totalize, TowerComplex, TowerMap};

/// Alternating rank sum of a bounded complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EulerChar {
    pub value: i64,
}

impl std::ops::Mul for EulerChar {
    type Output = EulerChar;

    fn mul(self, rhs: EulerChar) -> EulerChar {
        EulerChar {
            value: self.value * rhs.value,
        }
    }
}

pub fn euler_char(x: &Complex) -> EulerChar {
    EulerChar {
        value: x.euler_characteristic(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_core::tensor;

    #[test]
    fn small_values() {
        assert_eq!(euler_char(&Complex::sphere(3)).value, -1);
        assert_eq!(euler_char(&Complex::sphere(-2)).value, 1);
        assert_eq!(euler_char(&Complex::c()).value, 0);
        let x = Complex::sphere(0)
            .direct_sum(&Complex::sphere(1))
            .direct_sum(&Complex::sphere(2));
        assert_eq!(euler_char(&x).value, 1);
        assert_eq!(euler_char(&x.shift()).value, -1);
        let y = Complex::sphere(1).direct_sum(&Complex::sphere(1));
        assert_eq!(euler_char(&tensor(&x, &y)), euler_char(&x) * euler_char(&y));
    }
}
