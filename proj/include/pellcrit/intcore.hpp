#pragma once

// Exact integer services: primality, factorization, modular arithmetic.

#include <gmpxx.h>

#include <optional>
#include <vector>

namespace pellcrit {

using Int = mpz_class;
using Rational = mpq_class;

struct PrimePower {
    Int prime;
    unsigned exponent = 0;

    bool operator==(const PrimePower&) const = default;
};

/// Signed prime-power decomposition of a nonzero integer.
/// Primes are strictly increasing; zero is unrepresentable.
struct Factorization {
    int sign = 1;
    std::vector<PrimePower> factors;

    Int value() const;
    unsigned exponent_of(const Int& p) const;
    bool operator==(const Factorization&) const = default;
};

bool is_prime(const Int& n);

/// Throws std::invalid_argument on n == 0.
Factorization factor(const Int& n);

/// Smallest root r in [0, (p-1)/2] of r^2 = a (mod p), p an odd prime.
/// Throws std::invalid_argument if p is not an odd prime.
std::optional<Int> sqrt_mod(const Int& a, const Int& p);

/// Every z in [0, m) with z^2 = a (mod m), sorted.  m >= 1.
std::vector<Int> sqrt_mod_all(const Int& a, const Int& m);

// Small helpers shared by every module.

/// Nonnegative residue of a modulo m (m > 0).
Int mod(const Int& a, const Int& m);
Int powmod(const Int& base, const Int& exp, const Int& m);
Int isqrt(const Int& n);
bool is_square(const Int& n);
/// l-adic valuation of a nonzero integer.
unsigned valuation(const Int& n, const Int& l);
/// l-adic valuation of a nonzero rational (may be negative).
long valuation(const Rational& q, const Int& l);
Int gcd(const Int& a, const Int& b);
/// Inverse of a modulo m; throws if gcd(a, m) != 1.
Int invmod(const Int& a, const Int& m);
Int pow(const Int& base, unsigned long exp);
/// Squarefree kernel times sign: n = sign * core * square.
Int squarefree_part(const Int& n);
/// Primes dividing |n|, increasing.
std::vector<Int> prime_divisors(const Int& n);

}  // namespace pellcrit
