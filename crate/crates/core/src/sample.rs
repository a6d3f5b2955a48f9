//! Small random exact values for spot checks and property tests.

use rand::Rng;

use crate::algebra::{Algebra, Element};
use crate::exact::{Field, Scalar};
use crate::two_dim::Herm2;

fn small_rational<R: Rng>(rng: &mut R) -> (i64, i64) {
    (rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

/// Numerators in `[-5, 5]`, denominators in `[1, 3]`, in each part.
pub fn random_scalar<R: Rng>(field: Field, rng: &mut R) -> Scalar {
    let (p, q) = small_rational(rng);
    let re = Scalar::from_ratio(Field::Rational, p, q);
    match field {
        Field::Rational => re,
        Field::Gaussian => {
            let (a, b) = small_rational(rng);
            let im = Scalar::from_ratio(Field::Rational, a, b);
            &Scalar::from_rational(field, re.as_rational().unwrap().clone())
                + &(&Scalar::i() * &Scalar::from_rational(field, im.as_rational().unwrap().clone()))
        }
    }
}

pub fn random_element<R: Rng>(alg: &Algebra, rng: &mut R) -> Element {
    Element::new(
        (0..alg.dim())
            .map(|_| random_scalar(alg.field(), rng))
            .collect(),
    )
}

pub fn random_herm2<R: Rng>(alg: &Algebra, rng: &mut R) -> Herm2 {
    Herm2::new(
        random_scalar(alg.field(), rng),
        random_scalar(alg.field(), rng),
        random_element(alg, rng),
    )
}
