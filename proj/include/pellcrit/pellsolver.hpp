#pragma once

// Ground-truth solver for x^2 - D y^2 = n built on continued fractions.

#include "pellcrit/intcore.hpp"
#include "pellcrit/verdict.hpp"

#include <utility>
#include <vector>

namespace pellcrit {

/// sqrt(D) = [a0; period...], with the complete quotients (P + sqrt D)/Q
/// for indices 0..period length.
struct CFExpansion {
    Int a0;
    std::vector<Int> period;
    std::vector<std::pair<Int, Int>> pq_states;
};

/// Minimal positive solution of x^2 - D y^2 = +-1.
struct PellFundamental {
    Int x1, y1;
    int unit_norm = 1;
};

/// Throws std::invalid_argument for square or nonpositive D.
std::pair<CFExpansion, PellFundamental> cf_fundamental(const Int& D);

/// Memoised fundamental unit.
const PellFundamental& fundamental_unit(const Int& D);

/// Complete decision of x^2 - D y^2 = n.  A solvable verdict carries the
/// witness with the smallest |y| (and x > 0).  Throws std::invalid_argument
/// for n == 0 or square D.
Verdict solve(const Int& D, const Int& n);

/// Largest y with D y^2 < |n| u, where u > 1 is the fundamental unit.  Every
/// orbit of solutions of x^2 - D y^2 = +-n under u has a member in that range.
Int orbit_search_bound(const Int& D, const Int& n, const PellFundamental& unit);

/// Exhaustive search over |y| <= bound (orbit_search_bound times the
/// multiplier).  Exposed for cross-checking the class-based path.
Verdict solve_by_search(const Int& D, const Int& n, const Int& bound);

/// Reduction of the classes z^2 = D (mod |m|) for every m = n/f^2.
Verdict solve_by_classes(const Int& D, const Int& n);

/// Multiplier for the orbit search bound, from PELLCRIT_BOUND_MULT (default 1).
unsigned bound_multiplier();

/// Orbit bounds above this go through solve_by_classes instead of searching.
inline constexpr unsigned long kMaxSearchBound = 20'000;

}  // namespace pellcrit
