use std::fmt;
use std::sync::Arc;

use crate::complex_core::{split_epi_witness, ChainMap, Complex};
use crate::frobenius::cone_complex;
use crate::homotopy::{is_acyclic, is_contractible, is_homotopy_equivalence, is_quasi_iso, QisMode};

type MorphismPredicate = dyn Fn(&ChainMap) -> bool + Send + Sync;
type ObjectPredicate = dyn Fn(&Complex) -> bool + Send + Sync;

/// A named class of chain maps, a candidate class of weak equivalences.
#[derive(Clone)]
pub struct MorphismClass {
    name: String,
    pred: Arc<MorphismPredicate>,
}

impl MorphismClass {
    pub fn new(name: impl Into<String>, pred: impl Fn(&ChainMap) -> bool + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            pred: Arc::new(pred),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn contains(&self, f: &ChainMap) -> bool {
        (self.pred)(f)
    }

    /// Chain isomorphisms.
    pub fn iso() -> Self {
        Self::new("ISO", ChainMap::is_iso)
    }

    /// Maps with contractible cone.
    pub fn homotopy_eq() -> Self {
        Self::new("HOMOTOPY_EQ", is_homotopy_equivalence)
    }

    /// Maps inducing isomorphisms on all homology groups.
    pub fn qis() -> Self {
        Self::new("QIS", |f| is_quasi_iso(f, QisMode::Homological))
    }

    pub fn all() -> Self {
        Self::new("ALL", |_| true)
    }

    /// Degreewise surjections. Not a class of weak equivalences; it exists
    /// to exercise counterexample reporting.
    pub fn degreewise_surjective() -> Self {
        Self::new("DEGREEWISE_SURJECTIVE", |f| split_epi_witness(f).is_some())
    }

    /// Looks up a built-in class by name, ignoring case.
    pub fn builtin(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().replace('-', "_").as_str() {
            "iso" => Some(Self::iso()),
            "homotopy_eq" | "hoeq" => Some(Self::homotopy_eq()),
            "qis" => Some(Self::qis()),
            "all" => Some(Self::all()),
            "degreewise_surjective" | "surjective" => Some(Self::degreewise_surjective()),
            _ => None,
        }
    }
}

impl fmt::Debug for MorphismClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MorphismClass({})", self.name)
    }
}

/// A named class of complexes, a candidate null class.
#[derive(Clone)]
pub struct ObjectClass {
    name: String,
    pred: Arc<ObjectPredicate>,
}

impl ObjectClass {
    pub fn new(name: impl Into<String>, pred: impl Fn(&Complex) -> bool + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            pred: Arc::new(pred),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn contains(&self, x: &Complex) -> bool {
        (self.pred)(x)
    }

    pub fn zero() -> Self {
        Self::new("ZERO", Complex::is_zero)
    }

    pub fn contractible() -> Self {
        Self::new("CONTRACTIBLE", is_contractible)
    }

    pub fn acyclic() -> Self {
        Self::new("ACYCLIC", is_acyclic)
    }

    pub fn all() -> Self {
        Self::new("ALL", |_| true)
    }

    /// Complexes concentrated in even degrees. Closed under homotopy
    /// equivalence only by accident; used to exercise counterexamples.
    pub fn even_degrees() -> Self {
        Self::new("EVEN_DEGREES", |x| x.degrees().all(|n| n % 2 == 0 || x.rank(n) == 0))
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().replace('-', "_").as_str() {
            "zero" => Some(Self::zero()),
            "contractible" => Some(Self::contractible()),
            "acyclic" => Some(Self::acyclic()),
            "all" => Some(Self::all()),
            "even_degrees" | "even" => Some(Self::even_degrees()),
            _ => None,
        }
    }
}

impl fmt::Debug for ObjectClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ObjectClass({})", self.name)
    }
}

/// `E^w`: the objects `x` with `0 -> x` in `w`.
pub fn null_from_we(w: &MorphismClass) -> ObjectClass {
    let w = w.clone();
    ObjectClass::new(format!("trivial({})", w.name()), move |x| {
        w.contains(&ChainMap::from_zero(x))
    })
}

/// `w_N`: the maps whose cone lies in `N`.
pub fn we_from_null(n: &ObjectClass) -> MorphismClass {
    let n = n.clone();
    MorphismClass::new(format!("cone_in({})", n.name()), move |f| n.contains(&cone_complex(f)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins() {
        let x = Complex::disk(0);
        assert!(MorphismClass::qis().contains(&ChainMap::from_zero(&x)));
        assert!(MorphismClass::homotopy_eq().contains(&ChainMap::from_zero(&x)));
        assert!(!MorphismClass::iso().contains(&ChainMap::from_zero(&x)));
        let two = ChainMap::identity(&Complex::sphere(0)).scale(&2.into());
        assert!(!MorphismClass::qis().contains(&two));
        assert!(ObjectClass::contractible().contains(&Complex::c()));
        assert!(!ObjectClass::acyclic().contains(&Complex::elementary(0, 2)));
        assert!(MorphismClass::builtin("HoEq").is_some());
        assert!(ObjectClass::builtin("nope").is_none());
    }

    #[test]
    fn derived_classes() {
        let n = null_from_we(&MorphismClass::iso());
        assert!(n.contains(&Complex::zero()));
        assert!(!n.contains(&Complex::disk(2)));
        let w = we_from_null(&ObjectClass::zero());
        assert!(!w.contains(&ChainMap::identity(&Complex::sphere(0))));
        assert!(w.contains(&ChainMap::identity(&Complex::zero())));
        let w = we_from_null(&ObjectClass::acyclic());
        assert!(w.contains(&ChainMap::from_zero(&Complex::c())));
    }
}
