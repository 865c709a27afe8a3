#pragma once

// Fixed CSV formatting: 17 significant digits, '.' decimal point, ','
// separator, LF line endings. Identical inputs give byte-identical output.

#include <ostream>
#include <string>

#include "hbvm/integrator.hpp"

namespace hbvm::csv {

std::string format_double(double value);

/// Header t,y_1,...,y_n then one row per recorded state.
void write_trajectory(std::ostream& out, const Trajectory& trajectory);

}  // namespace hbvm::csv
