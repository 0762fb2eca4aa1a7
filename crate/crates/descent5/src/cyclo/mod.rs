//! Arithmetic in K = Q(zeta_5): prime splitting, fixed prime-ideal
//! generators, exact valuations, and K(S,5) exponent vectors with the unit
//! part resolved by quintic residue characters.

mod class;
mod element;
mod ideal;

pub use class::{auxiliary_primes, ks5_class, unit_class, AuxPrime, KS5Vector};
pub use element::CycloElement;

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt_pub(q: &crate::arith::BigRational) -> Option<crate::arith::BigRational> {
    element::rational_sqrt(q)
}
pub use ideal::{
    fifth_roots_of_unity, prime_generators, splitting_type, valuation_at, CycloError,
    PrimeIdealGen, SplittingType,
};

use std::collections::BTreeMap;

/// Read-only table of prime-ideal generators keyed by rational prime, built
/// once up front (the pipeline's initialization step) and shared by workers.
#[derive(Debug, Clone, Default)]
pub struct GeneratorTable {
    map: BTreeMap<u64, Vec<PrimeIdealGen>>,
    aux: Vec<AuxPrime>,
}

impl GeneratorTable {
    pub fn build(primes: impl IntoIterator<Item = u64>) -> Result<Self, CycloError> {
        let mut map = BTreeMap::new();
        for p in primes {
            map.entry(p).or_insert(prime_generators(p)?);
        }
        Ok(GeneratorTable {
            map,
            aux: auxiliary_primes(),
        })
    }

    pub fn generators(&self, p: u64) -> &[PrimeIdealGen] {
        self.map
            .get(&p)
            .unwrap_or_else(|| panic!("prime {p} missing from the generator table"))
    }

    pub fn aux(&self) -> &[AuxPrime] {
        &self.aux
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.map.keys().copied()
    }

    /// Ideal generators over every prime in `primes`, in table order.
    pub fn support_for(&self, primes: &[u64]) -> Vec<PrimeIdealGen> {
        primes
            .iter()
            .flat_map(|&p| self.generators(p).iter().cloned())
            .collect()
    }
}
