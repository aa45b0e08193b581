#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace thinlayer {

/// Base of all library errors. The category maps onto the CLI exit codes.
class Error : public std::runtime_error {
 public:
  enum class Category { config, solver, guard };

  Error(Category c, const std::string &what) : std::runtime_error(what), category_(c) {}
  Category category() const noexcept { return category_; }

  int exit_code() const noexcept {
    switch (category_) {
      case Category::config: return 2;
      case Category::solver: return 3;
      case Category::guard: return 4;
    }
    return 1;
  }

 private:
  Category category_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string &what) : Error(Category::config, what) {}
};

class SolverError : public Error {
 public:
  explicit SolverError(const std::string &what) : Error(Category::solver, what) {}
};

class GuardError : public Error {
 public:
  explicit GuardError(const std::string &what) : Error(Category::guard, what) {}
};

class InvalidMediumError : public ConfigError {
  using ConfigError::ConfigError;
};

/// Green's function evaluated at coincident points.
class SingularityError : public SolverError {
  using SolverError::SolverError;
};

class ParseError : public ConfigError {
 public:
  ParseError(const std::string &what, std::size_t position)
      : ConfigError(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Expression evaluated outside its domain (sqrt of a negative, division by zero, overflow).
class DomainError : public ConfigError {
  using ConfigError::ConfigError;
};

/// Negative density, negative Re h, bad kappa or radius.
class InvalidSpecError : public ConfigError {
  using ConfigError::ConfigError;
};

class SamplingError : public ConfigError {
  using ConfigError::ConfigError;
};

class AssemblyError : public SolverError {
  using SolverError::SolverError;
};

class IllConditionedError : public SolverError {
 public:
  IllConditionedError(const std::string &what, double condition)
      : SolverError(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// Field requested too close to a source.
class ProximityError : public ConfigError {
  using ConfigError::ConfigError;
};

class DegenerateTestError : public ConfigError {
  using ConfigError::ConfigError;
};

}  // namespace thinlayer
