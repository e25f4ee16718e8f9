#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cheshire/tensor_core.hpp"

namespace cheshire {

enum class Particle : int { one = 1, two = 2 };

// Path projector |b><b| on particle k's path factor, identity elsewhere.
Operator path_projector(Particle k, Path b);

// S_z = (|up><up| - |down><down|)/2 on particle k's spin (hbar = 1).
Operator spin_z(Particle k);

// path_projector(k, b) * spin_z(k); the factors sit in different slots and commute.
Operator path_spin(Particle k, Path b);

// The eight observables every table is built from, in the fixed order
//   Pi_u1, Pi_u2, Pi_d1, Pi_d2, Pi_u1*S1, Pi_u2*S2, Pi_d1*S1, Pi_d2*S2
std::vector<Operator> canonical_observables();
const std::vector<std::string>& canonical_labels();

// Throws DomainError for an unknown label.
Operator observable_by_label(std::string_view label);

// Filesystem-friendly form of a label ("Pi_u1*S1" -> "Pi_u1_S1").
std::string label_slug(std::string_view label);

}  // namespace cheshire
