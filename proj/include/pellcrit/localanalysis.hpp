#pragma once

// Local computations at the completions of Q and of E = Q(sqrt D).

#include "pellcrit/intcore.hpp"
#include "pellcrit/quadring.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace pellcrit {

// ---------------------------------------------------------------------------
// l-adic helpers

/// x with x^2 = a in Z_l, returned modulo l^(precision + v_l(a)/2).  Requires
/// a to be a nonzero square in Q_l.
Int sqrt_padic(const Int& a, const Int& l, unsigned precision);

/// True when the nonzero rational q is a square in Q_l.
bool is_square_ql(const Rational& q, const Int& l);

/// Searches t in start + l^k Z_l for g(t) = A t^2 + B t + C with
///   target == 0: g(t) a square in Q_l (zero allowed), or
///   target != 0: g(t) in target * (Z_l^x)^2.
/// Returns an exact integer t.  Either g(t) itself qualifies, or (target == 0
/// only) v(g(t)) > 2 v(g'(t)) and a root of g lies in t + l v(g'(t)) Z_l.
std::optional<Int> padic_quadratic_search(const Int& A, const Int& B, const Int& C, const Int& l,
                                          const Int& start, unsigned k, const Int& target);

// ---------------------------------------------------------------------------
// Local solvability of x^2 - D y^2 = n

struct LocalPoint {
    Int l;
    unsigned precision = 0;
    Int x, y;  // x^2 - D y^2 = n (mod l^precision)
    /// y is exact and D y^2 + n is a square in Z_l, so a Z_l point exists.
    bool liftable = false;
};

bool local_solvable(const Int& D, const Int& n, const Int& l);

/// A Z_l point with congruence precision at least `precision`.
std::optional<LocalPoint> local_point(const Int& D, const Int& n, const Int& l, unsigned precision = 0);

// ---------------------------------------------------------------------------
// Square classes of Q_2

struct SquareClass2 {
    bool odd_valuation = false;
    /// One of 1, -1, 2, -2, 5, -5, 10, -10: u or 2u for the unit class u.
    int representative = 1;
};

/// The 2-adic square class of u: parity of v_2(u) and the representative of
/// u modulo squares.
SquareClass2 square_class_2(const Rational& u);

// ---------------------------------------------------------------------------
// Places of E and Hilbert symbols over E_v

struct PlaceOfE {
    Int l;
    SplittingType type = SplittingType::Inert;
    /// Split places only: the image of sqrt D in Z_l, modulo l^precision.
    Int root;
    unsigned precision = 0;
};

/// The places of E above l; a split prime yields both embeddings.
std::vector<PlaceOfE> places_over(const Int& D, const Int& l);

/// Quadratic Hilbert symbol (alpha, beta)_v over the completion E_v.  Split
/// places delegate to hilbert_q; odd nonsplit places use the tame formula;
/// places over 2 decide solvability of z^2 = alpha x^2 + beta y^2 by a
/// digit search in E_v.
int hilbert_ev(const QuadElem& alpha, const QuadElem& beta, const PlaceOfE& v, const Int& D);

/// Whether u is a square in E_v (u nonzero).
bool is_square_ev(const QuadElem& u, const PlaceOfE& v, const Int& D);

// ---------------------------------------------------------------------------
// The Theta-extension

struct CharacterTable {
    int chi_1 = 1, chi_neg1 = 1, chi_2 = 1, chi_neg2 = 1;
    bool operator==(const CharacterTable&) const = default;
};

/// (xi, theta)_v at the place over 2 for local points xi of norm 1, -1, 2, -2.
/// D = 2d with d a squarefree product of primes = 1 mod 8.
CharacterTable theta_character(const Int& D, const ThetaData& theta);

/// The same table from the closed forms: chi_2 by d mod 16, chi_{-2} = (2/d)_4,
/// chi_{-1} = chi_2 chi_{-2}.
CharacterTable theta_character_closed_form(const Int& D);

/// Whether v splits in Theta/E: theta (unit part) is a square in the residue
/// field of v.  Throws std::invalid_argument for v over 2 * ell.
bool splits_in_theta(const Int& D, const ThetaData& theta, const PlaceOfE& v);

/// theta = x0 - y0 sqrt D.
inline QuadElem theta_element(const ThetaData& t) { return {Rational(t.x0), Rational(-t.y0)}; }

}  // namespace pellcrit
