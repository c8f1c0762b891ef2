#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace minkflow {

// Gauge failed strict positivity/convexity (a > 0, a + a'' >= eps_conv).
class ConvexityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Initial curvature does not satisfy the closing conditions.
class ClosingConditionError : public std::runtime_error {
 public:
  ClosingConditionError(const std::string& what, std::array<double, 2> residual,
                        double tolerance)
      : std::runtime_error(what), residual_(residual), tolerance_(tolerance) {}

  const std::array<double, 2>& residual() const { return residual_; }
  double tolerance() const { return tolerance_; }

 private:
  std::array<double, 2> residual_;
  double tolerance_;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                    : what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace minkflow
