#pragma once

// Arithmetic data about E = Q(sqrt D) and the order Z[sqrt D].

#include "pellcrit/intcore.hpp"

#include <string>
#include <utility>
#include <vector>

namespace pellcrit {

enum class SplittingType { Split, Inert, Ramified };

std::string to_string(SplittingType t);

/// How the prime l decomposes in Q(sqrt D).  Uses the squarefree kernel of D,
/// so for squarefree D this is the usual (D/l) test.
SplittingType splitting_type(const Int& D, const Int& l);

/// The families the decision criteria cover.
struct QuadOrderInfo {
    enum class Family { PQ, TwoD, Other };

    Int D;
    Int discriminant;  // 4D
    Family family = Family::Other;
    // PQ: D = p*q with p < q, both 1 mod 4, (q/p) = 1, (p/q)_4 (q/p)_4 = -1.
    Int p, q;
    // TwoD: D = 2d, d a squarefree product of primes = 1 mod 8 and
    // 2d = r^2 + s^2 with r, s = +-3 mod 8.
    Int d;
};

/// Throws std::invalid_argument if D is not a positive non-square.
QuadOrderInfo classify_order(const Int& D);

struct TwoSquaresRep {
    Int r, s;
    bool operator==(const TwoSquaresRep&) const = default;
};

/// p = a^2 + b^2 with a odd, b even, both positive (p = 2 gives (1, 1)).
std::pair<Int, Int> two_squares_prime(const Int& p);

/// All primitive m = r^2 + s^2 up to order and sign.  Pairs have r >= s when
/// both are odd, and the odd entry first otherwise.
std::vector<TwoSquaresRep> two_squares_all(const Int& m);

/// A primitive a^2 + 2b^2 = m with a, b >= 0 and the smallest such b.
std::optional<std::pair<Int, Int>> repr_x2_plus_2y2(const Int& m);

/// True when some primitive 2d = r^2 + s^2 has r, s = +-3 mod 8.
bool has_pm3_two_squares(const Int& two_d);

/// Primitive solution of x0^2 - D y0^2 = ell z0^2 fixing Theta = E(sqrt(x0 - y0 sqrt D)).
struct ThetaData {
    Int x0, y0, z0;
    Int ell;
    Int D;
};

/// Smallest z0, then smallest y0 > 0.  Throws std::domain_error when nothing
/// is found with z0 <= max_z.
ThetaData find_theta_data(const Int& D, const Int& ell, unsigned max_z = 1000);

/// a + b sqrt(D) with rational coordinates; D is carried by the caller.
struct QuadElem {
    Rational a, b;

    bool is_zero() const { return a == 0 && b == 0; }
    bool operator==(const QuadElem&) const = default;
};

QuadElem qmul(const QuadElem& x, const QuadElem& y, const Int& D);
QuadElem qadd(const QuadElem& x, const QuadElem& y);
QuadElem qsub(const QuadElem& x, const QuadElem& y);
QuadElem qconj(const QuadElem& x);
QuadElem qinv(const QuadElem& x, const Int& D);
Rational qnorm(const QuadElem& x, const Int& D);

}  // namespace pellcrit
