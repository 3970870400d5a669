#pragma once

// Closed-form decision procedures, with the oracle behind every gap.

#include "pellcrit/intcore.hpp"
#include "pellcrit/verdict.hpp"

#include <optional>
#include <vector>

namespace pellcrit {

/// Which of a fixed list of right-hand sides is solvable.  `target` is empty
/// only if the oracle finds none of them solvable.
struct Classification {
    std::optional<Int> target;
    Verdict verdict;
};

/// Which of x^2 - pq y^2 = -1, p, q is solvable.  Throws
/// std::invalid_argument for p == q or non-primes.
Classification classify_pq(const Int& p, const Int& q);

/// Which of x^2 - 2p y^2 = -1, 2, -2 is solvable, p an odd prime.
Classification classify_2p(const Int& p);

/// n = (-1)^s0 2^s1 13^s2 17^s3 prod p_i^e_i.
struct N221Data {
    int s0 = 0;
    unsigned s1 = 0, s2 = 0, s3 = 0;
    std::vector<PrimePower> P;
    std::vector<Int> P1;  // (13/p) = (17/p) = -1
    std::vector<Int> P2;  // (221/p) = -1
    std::vector<Int> P3;  // (13/p) = (17/p) = 1 and x^4 - 238 x^2 + 17 has a root mod p
    Int n1 = 1;           // prod over p in P \ P2 of p^e
};

N221Data n221_data(const Int& n);

/// Readings of the displayed conditions for D = 221.
struct Reading221 {
    /// Adds s3 to the sign exponent s0 + s2.
    bool include_s3 = false;
    /// Restricts the P3 product to primes outside P2.
    bool p3_outside_p2 = false;
    /// Takes the (-1)^e product over P \ (P2 u P3) instead of over P3.
    bool p3_complement = false;
};

/// The reading that agrees with the oracle.
inline constexpr Reading221 kAdopted221{false, false, true};

/// Both conditions for x^2 - 221 y^2 = n.  Throws std::invalid_argument for n = 0.
Verdict decide_221(const Int& n, Reading221 reading = kAdopted221);

/// Unsolvable verdicts for x^2 - 2d y^2 = n, n in {-1, 2, -2}, when one of
/// the known obstructions applies.
std::optional<Verdict> prop_checks(const Int& d, const Int& n);

}  // namespace pellcrit
