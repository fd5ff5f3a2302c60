use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::kernel::{dot, parse_all, rat, to_strings, Rational};

macro_rules! coefficient_vector {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, Hash)]
        pub struct $name(Vec<Rational>);

        impl $name {
            pub fn new(coeffs: Vec<Rational>) -> Self {
                $name(coeffs)
            }

            pub fn zeros(n: usize) -> Self {
                $name(vec![Rational::zero(); n])
            }

            pub fn unit(n: usize, i: usize) -> Self {
                let mut v = Self::zeros(n);
                v.0[i] = rat(1);
                v
            }

            pub fn from_i64(xs: &[i64]) -> Self {
                $name(xs.iter().map(|&x| rat(x)).collect())
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn coeffs(&self) -> &[Rational] {
                &self.0
            }

            pub fn into_coeffs(self) -> Vec<Rational> {
                self.0
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(Zero::is_zero)
            }

            /// Indices of nonzero coordinates.
            pub fn support(&self) -> Vec<usize> {
                (0..self.0.len()).filter(|&i| !self.0[i].is_zero()).collect()
            }

            pub fn add(&self, other: &Self) -> Self {
                $name(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
            }

            pub fn sub(&self, other: &Self) -> Self {
                $name(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
            }

            pub fn neg(&self) -> Self {
                $name(self.0.iter().map(|a| -a).collect())
            }

            pub fn scale(&self, s: &Rational) -> Self {
                $name(self.0.iter().map(|a| a * s).collect())
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                to_strings(&self.0).serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let raw = Vec::<String>::deserialize(d)?;
                parse_all(&raw).map($name).map_err(serde::de::Error::custom)
            }
        }
    };
}

coefficient_vector!(
    /// Element of 𝔤 in Chevalley-basis coordinates.
    GElement
);

coefficient_vector!(
    /// Element of 𝔤* in dual-basis coordinates.
    GStarElement
);

impl GStarElement {
    /// `γ(x)`: the coordinate dot product.
    pub fn eval(&self, x: &GElement) -> Rational {
        dot(&self.0, x.coeffs())
    }
}
