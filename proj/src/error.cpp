#include "starflow/error.hpp"

#include <sstream>

namespace starflow {

const char* to_string(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::config: return "config";
    case ErrorCategory::admissibility: return "admissibility";
    case ErrorCategory::numerical: return "numerical";
    case ErrorCategory::domain: return "domain";
    case ErrorCategory::io: return "io";
  }
  return "unknown";
}

int exit_code(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::config:
    case ErrorCategory::domain: return 2;
    case ErrorCategory::admissibility: return 3;
    case ErrorCategory::numerical: return 4;
    case ErrorCategory::io: return 1;
  }
  return 1;
}

namespace {
std::string describe(std::size_t node, const std::vector<double>& kappa) {
  std::ostringstream os;
  os << "node " << node << " left the Garding cone Gamma_2, kappa = (";
  for (std::size_t i = 0; i < kappa.size(); ++i) os << (i ? ", " : "") << kappa[i];
  os << ")";
  return os.str();
}
}  // namespace

AdmissibilityError::AdmissibilityError(std::size_t node, std::vector<double> kappa)
    : Error(ErrorCategory::admissibility, describe(node, kappa)),
      node_(node),
      kappa_(std::move(kappa)) {}

}  // namespace starflow
