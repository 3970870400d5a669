#pragma once

#include "pellcrit/intcore.hpp"

#include <optional>
#include <string>
#include <utility>

namespace pellcrit {

enum class Status { Solvable, Unsolvable, Undetermined };

enum class Reason {
    None,
    /// No Z_l point for the prime in `obstruction_prime`.
    LocalObstruction,
    /// Every orbit representative up to the unit bound was tested.
    OrbitSearchExhausted,
    /// Every class of primitive solutions was reduced and none has norm n.
    ClassesExhausted,
    /// A closed-form criterion fired.
    Criterion,
    /// The Artin conditions fail for every adelic choice.
    ArtinCondition,
};

std::string to_string(Status s);
std::string to_string(Reason r);

struct Verdict {
    Status status = Status::Undetermined;
    std::optional<std::pair<Int, Int>> witness;
    Reason reason = Reason::None;
    Int obstruction_prime = 0;
    /// Which procedure produced the verdict, e.g. "oracle" or "scholz-brown".
    std::string provenance;

    bool solvable() const { return status == Status::Solvable; }
};

}  // namespace pellcrit
