use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config_count::PointSet;
use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::point::GridShape;

/// `ceil(rho q^d)`, computed so that exact products such as `0.5 * 169`
/// are not pushed up by rounding noise.
pub fn target_cardinality(q: u64, dim: usize, rho: f64) -> Result<usize> {
    if !(rho > 0.0 && rho <= 1.0) {
        return Err(Error::InvalidArgument(format!("density {rho} is not in (0, 1]")));
    }
    let cells = (q as f64).powi(dim as i32);
    let k = (rho * cells - 1e-9).ceil().max(1.0) as usize;
    Ok(k.min(cells as usize))
}

/// The first `ceil(rho q^d)` cells of a ChaCha8 shuffle of the grid seeded by
/// `seed`. Sets for the same seed are nested in `rho`.
pub fn random_set(field: PrimeField, dim: usize, rho: f64, seed: u64) -> Result<PointSet> {
    let shape = GridShape::new(field, dim)?;
    let k = target_cardinality(field.modulus(), dim, rho)?;
    let mut cells: Vec<usize> = (0..shape.len()).collect();
    cells.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    cells.truncate(k);
    PointSet::from_indices(field, dim, cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardinality_examples() {
        let f = PrimeField::new(13).unwrap();
        assert_eq!(random_set(f, 2, 0.5, 1).unwrap().cardinality(), 85);
        assert_eq!(random_set(f, 2, 1.0, 9).unwrap(), PointSet::full(f, 2).unwrap());
        assert_eq!(target_cardinality(31, 2, 0.5).unwrap(), 481);
        assert_eq!(target_cardinality(10, 2, 0.3).unwrap(), 30);
        assert_eq!(target_cardinality(7, 3, 1e-6).unwrap(), 1);
        assert!(random_set(f, 2, 0.0, 1).is_err());
        assert!(random_set(f, 2, 1.5, 1).is_err());
    }

    #[test]
    fn deterministic_and_nested() {
        let f = PrimeField::new(11).unwrap();
        let a = random_set(f, 2, 0.3, 42).unwrap();
        assert_eq!(a, random_set(f, 2, 0.3, 42).unwrap());
        assert_ne!(a, random_set(f, 2, 0.3, 43).unwrap());
        assert!(a.is_subset_of(&random_set(f, 2, 0.7, 42).unwrap()));
        assert_eq!(random_set(f, 3, 0.1, 5).unwrap().cardinality(), 134);
    }
}
