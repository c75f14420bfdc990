#ifndef VEKUA_VERIFY_HPP
#define VEKUA_VERIFY_HPP

#include <string>
#include <vector>

#include "vekua/cli.hpp"

namespace vekua::cli {

struct VerifyCheck {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string note;
};

/// Runs the library's structural-identity suites against the configured
/// weight, sequence and equation: coordinate analyticity, weight
/// positivity/separability, the particular-solution residual, pair
/// positivity and successor identities, a-vanishing, closed-form
/// coefficients, the antiderivative identity, closed loops, formal-power
/// residuals, asymptotics, member equation residuals, and the classical
/// reduction when f == 1.
std::vector<VerifyCheck> run_verification(const RunConfig& cfg);

}  // namespace vekua::cli

#endif  // VEKUA_VERIFY_HPP
