#pragma once

#include "qsv/hopf.hpp"
#include "qsv/report.hpp"

namespace qsv {

/// The U_Lhbar preset with primitive structure maps; c stays formal.
HopfStructure enveloping_algebra();

/// Local confluence of the enveloping rules on all words up to max_len,
/// plus the normal forms of v xi u and of u xi^2 - xi^2 u.
CheckReport check_enveloping_confluence(int max_len);

/// x_+^k theta = q^k theta x_+^k and
/// [x_+^k, x_-] = s^-1 (q^{2k} - 1)/(q - 1) theta^2 x_+^{k-1} in P_red for k = 1..k_max.
CheckReport check_bridge_identities(int k_max);

/// Well-definedness, Hopf axioms up to max_degree, S^2 = id and closure of
/// primitives under the bracket, all on the enveloping algebra.
CheckReport check_lie_hopf(int max_degree = 4);

}  // namespace qsv
