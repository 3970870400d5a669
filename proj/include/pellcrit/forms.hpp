#pragma once

// Indefinite binary quadratic forms a x^2 + b xy + c y^2 of discriminant 4D.

#include "pellcrit/intcore.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <vector>

namespace pellcrit {

struct Form {
    Int a, b, c;

    Int discriminant() const { return b * b - 4 * a * c; }
    bool operator==(const Form&) const = default;
};

bool is_reduced(const Form& f);

/// One step of the reduction operator rho, a proper equivalence.
Form rho(const Form& f);

/// A properly equivalent reduced form.
Form reduce(const Form& f);

/// The rho-cycle of a reduced form, starting with it.
std::vector<Form> cycle(const Form& reduced);

/// Proper equivalence.
bool properly_equivalent(const Form& f, const Form& g);

/// Same ideal class in the wide sense: f ~ g or f ~ -g.
bool wide_equivalent(const Form& f, const Form& g);

/// f represents +1 or -1 properly, i.e. its ideal class is principal.
bool is_wide_principal(const Form& f);

/// Gauss composition of primitive forms of equal discriminant, reduced.
Form compose(const Form& f, const Form& g);

/// The wide class group of primitive forms of discriminant 4D.
struct ClassGroup {
    Int D;
    /// One reduced form per class; reps[0] is the principal class.
    std::vector<Form> reps;
    /// Number of proper (narrow) classes.
    std::size_t narrow_order = 0;

    std::size_t order() const { return reps.size(); }
    /// Index in reps of the class of f.
    std::size_t index_of(const Form& f) const;
    std::size_t multiply(std::size_t i, std::size_t j) const;

    /// Every reduced form, keyed by (a, b, c), mapped to its class index.
    std::map<std::array<Int, 3>, std::size_t> lookup;
};

/// Throws std::invalid_argument unless disc = 4D with D a positive
/// non-square.  Memoised.
const ClassGroup& class_group(const Int& disc);

}  // namespace pellcrit
