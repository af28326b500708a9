#pragma once

#include <string>

#include "cmplchg/cubature.hpp"
#include "cmplchg/synthesis.hpp"

namespace cmplchg {

// Writes the quadruple as CSV with header "x1,x2,x3,w,phi,Phi,psi,Psi", one
// row per node in cubature order, every float printed with 17 significant
// digits so values round-trip bitwise. Throws Error(io_error) when the path
// is not writable.
void export_quadruple(const Quadruple& q, const Cubature& c, const std::string& path);

}  // namespace cmplchg
