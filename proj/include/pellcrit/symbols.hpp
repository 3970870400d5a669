#pragma once

// Residue symbols over Q and its completions.
//
// Symbol values are plain ints in {-1, 0, +1}. Quartic and Hilbert symbols
// never return 0.

#include "pellcrit/intcore.hpp"

namespace pellcrit {

/// A place of Q: a finite prime or the real place.
class Place {
  public:
    static Place real() { return Place(); }
    static Place prime(Int p);

    bool is_real() const { return real_; }
    /// Throws std::logic_error for the real place.
    const Int& prime() const;

    bool operator==(const Place&) const = default;

  private:
    Place() = default;
    bool real_ = true;
    Int p_ = 0;
};

/// Jacobi symbol (a/m), m odd and positive; 0 when gcd(a, m) > 1.
int jacobi(const Int& a, const Int& m);

/// Rational quartic symbol (a/p)_4 = a^((p-1)/4) mod p, for p = 1 mod 4 prime
/// and a a nonzero quadratic residue mod p.
int quartic_residue(const Int& a, const Int& p);

/// (2/d)_4 = prod over p^e || d of (2/p)_4^e; every prime of d must be 1 mod 8.
int quartic_2_of_d(const Factorization& d);

/// Burde's rational form of (p/q)_4 (q/p)_4:
///   (-1)^((p-1)/4) * ((ad - bc)/p),  p = a^2 + b^2, q = c^2 + d^2,
/// with a, c odd and b, d even, all positive.  Requires (q/p) = 1.
int burde_product(const Int& p, const Int& q);

/// Quadratic Hilbert symbol (a, b)_v over Q_v.
int hilbert_q(const Rational& a, const Rational& b, const Place& v);

/// Places that can contribute to prod_v (a, b)_v: primes dividing 2ab and infinity.
std::vector<Place> relevant_places(const Rational& a, const Rational& b);

}  // namespace pellcrit
