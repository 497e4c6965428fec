#pragma once

#include "slgreen/basis.hpp"

namespace slgreen {

/// |Δ13Δ24 - Δ14Δ23 - Δ12Δ34| in units of the rounding bound eps · Σ|terms|,
/// where each term uses the absolute-value minors |βi||βj| + |βj||βi|.
double plucker_defect_ulps(const TransmissionSpec& t);

/// ‖jump_backward(jump_forward(s)) - s‖∞ in units of eps · ‖|B||F||s|‖∞, with F and B
/// the forward and backward matrices.
double jump_roundtrip_ulps(const Minors& m, State s);

}  // namespace slgreen
