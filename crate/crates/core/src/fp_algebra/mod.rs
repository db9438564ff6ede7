//! Polynomial arithmetic over F_p, Gröbner bases and ideal operations.

mod groebner;
mod ideal;
mod monomial;
mod parse;
mod poly;
mod ring;

pub use groebner::{cmp_polys, minimal_monomials, normal_form, reduced_groebner_basis};
pub use ideal::{bracket_power, ideal_combine, ideal_contains, ideal_equal, Combine, Ideal};
pub use monomial::Monomial;
pub use parse::{parse_ideal, parse_poly, parse_ring};
pub use poly::Poly;
pub use ring::{is_prime, Coeff, MonomialOrder, Ring, MAX_PRIME, MAX_VARS};
