#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace starflow {

enum class ErrorCategory { config, admissibility, numerical, domain, io };

const char* to_string(ErrorCategory category);

/// Process exit code for an error category: config/domain 2, admissibility 3,
/// numerical 4, io 1.
int exit_code(ErrorCategory category);

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorCategory::config, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCategory::domain, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ErrorCategory::numerical, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCategory::io, what) {}
};

/// A grid node whose principal curvatures left the cone {sigma_1 > 0, sigma_2 > 0}.
class AdmissibilityError : public Error {
 public:
  AdmissibilityError(std::size_t node, std::vector<double> kappa);

  std::size_t node() const noexcept { return node_; }
  const std::vector<double>& kappa() const noexcept { return kappa_; }

 private:
  std::size_t node_;
  std::vector<double> kappa_;
};

}  // namespace starflow
