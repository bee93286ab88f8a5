#pragma once

#include <string>

#include "lrsc/code.hpp"

namespace lrsc {

/// p_i(t) as a sum of m_s(t') terms ordered by time, then symbol; "-" when
/// no term survives.  Numeric mode prints coefficients (1 omitted, prime
/// field values as integers, others in gf text).  Symbolic mode prints the
/// matrix entry a term comes from: c_{s,j} (or alpha_j c_{s,j} for j >= 2)
/// for LRSC codes and g_{s,i} for the baseline.
std::string render_parity(const Code& code, int parity, long t, bool symbolic = false);

/// One line per parity per time: "p_i(t) = ...".
std::string render_table(const Code& code, long first, long last, bool symbolic = false);

}  // namespace lrsc
