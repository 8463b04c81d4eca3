#pragma once

#include <string>
#include <vector>

#include "qst/hermitian.hpp"

namespace qst {

// Named single-mode test states in their minimal Fock-space dimension.
// Labels: fock0, fock1, fock2, plus01 = (|0>+|1>)/sqrt(2),
// plus012 = (|0>+|1>+|2>)/sqrt(3), thermal2..thermal5 (mean photon number
// 0.5, truncated to H_2..H_5 and renormalized).
DensityMatrix make_state(const std::string& label);

std::vector<std::string> default_state_roster();

}  // namespace qst
