#pragma once

#include <vector>

#include "psigrh/zero_bounds.hpp"

namespace psigrh::detail {

struct RowSpec {
  enum class Kind { value, deriv, decay } kind;
  mpq gamma;  // meaningful for value/deriv rows
};

std::vector<RowSpec> certificate_rows(const std::vector<mpq>& nodes);

// Entry of the interpolation matrix for a row against column j (1-based).
mpq certificate_entry(const RowSpec& row, int j);

// Fully exact solve: rational elimination against rational interval
// enclosures of the right-hand side. Slower than the floating path but
// decides every ceiling unconditionally.
MajorantCertificate solve_certificate_exact(const std::vector<mpq>& nodes);

}  // namespace psigrh::detail
