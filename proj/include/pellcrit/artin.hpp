#pragma once

// Artin conditions for x^2 - D y^2 = n: ideal classes of adelic points and
// the Theta-symbol.

#include "pellcrit/forms.hpp"
#include "pellcrit/localanalysis.hpp"
#include "pellcrit/quadring.hpp"
#include "pellcrit/verdict.hpp"

#include <vector>

namespace pellcrit {

/// The ideal g * [|m|, z + sqrt D] of norm |n| = g^2 |m|, standing for the
/// adelic points whose idele has that ideal.  At a split prime l | m the
/// residue z picks which conjugate place carries the exponent v_l(m).
struct AdelicChoice {
    Int g, m, z;
    Form form;  // (|m|, 2z, (z^2 - D)/|m|)
    bool principal = false;
};

struct ClassImages {
    /// Some Z_l has no point; choices is then empty.
    bool local_failure = false;
    Int failing_prime = 0;
    std::vector<AdelicChoice> choices;
};

/// Split primes of n above this make the enumeration throw std::domain_error.
inline constexpr unsigned kMaxSplitPrimes = 12;

ClassImages class_images_of_norm(const Int& D, const Int& n);

/// Valuation at the place v of the ideal that `choice` generates in the
/// maximal order.
long choice_order(const AdelicChoice& choice, const PlaceOfE& v, const Int& D);

/// A local f-value of norm n at l compatible with `choice`.  Different
/// `variant` values select different local points where possible.
QuadElem local_class_element(const Int& D, const AdelicChoice& choice, const Int& l, unsigned variant = 0);

/// Image of the choice's idele in Gal(Theta/E) = {+1, -1}.
int psi_theta(const Int& D, const ThetaData& theta, const AdelicChoice& choice, const Int& n, unsigned variant = 0);

/// Theta data used for D: ell = 2 for the 2d family, ell in {q, p} for pq.
const std::vector<ThetaData>& theta_candidates(const Int& D);

/// Solvable iff every Z_l has a point and one choice is principal with
/// psi_theta = +1.  D outside both families goes to the oracle and is marked
/// with provenance "oracle-fallback".
Verdict joint_artin_decide(const Int& D, const Int& n);

}  // namespace pellcrit
