#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "tits/finite_field.hpp"

namespace tits {

/// Integer polynomial, coefficients low to high.
using IntPoly = std::vector<mpz_class>;

bool is_prime(std::uint64_t n);
std::uint64_t next_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

/// Resultant of two nonzero integer polynomials.
mpz_class resultant(const IntPoly& a, const IntPoly& b);

/// Discriminant of a monic polynomial: (-1)^(k(k-1)/2) Res(f, f').
mpz_class discriminant(const IntPoly& f);

/// f mod p as a GF(p) polynomial.
GFPoly reduce_mod_p(const IntPoly& f, std::uint32_t p);

/// Irreducible factors of f mod p, repeated by multiplicity, sorted by degree and then
/// lexicographically by coefficients from the constant term. `seed` drives the
/// equal-degree splitting; the output does not depend on it.
std::vector<GFPoly> factor_mod_p(const IntPoly& f, std::uint32_t p, std::uint64_t seed = 0x7175);

/// Irreducibility over Q of a monic integer polynomial (degree-pattern sieve, then
/// Hensel lifting and factor recombination).
bool is_irreducible_over_q(const IntPoly& f);

IntPoly cyclotomic_polynomial(unsigned c);

/// c when f is exactly the c-th cyclotomic polynomial.
std::optional<unsigned> cyclotomic_index(const IntPoly& f);

}  // namespace tits
