#include "graphwise/errors.hpp"

#include "graphwise/record.hpp"

namespace graphwise {

DebiasError::DebiasError(int j, int k, double denominator)
    : NumericalError("debias denominator " + format_double(denominator, 6) + " for edge (" +
                     std::to_string(j) + "," + std::to_string(k) +
                     ") is below the 0.5 reliability guard"),
      j_(j),
      k_(k),
      denominator_(denominator) {}

}  // namespace graphwise
