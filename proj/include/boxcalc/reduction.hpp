#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "boxcalc/syntax.hpp"

namespace boxcalc {

// One enumerated single-step reduct: the rule fired, the position of the
// redex (path segments from the root), and the resulting whole term.
struct StepOutcome {
  std::vector<std::string> path;
  std::string rule;
  Term result;
};

std::string print_path(const std::vector<std::string>& path);

// Enumerates every one-step reduct in leftmost-outermost order: beta at any
// position outside a box body, let-box contraction when the bound term is a
// contextual box, isapp on boxed arguments, and delta steps for the
// arithmetic and boolean constants on value arguments. Never descends into
// a box body. An empty result means the term is a normal form.
std::vector<StepOutcome> step_all(const Term& t);

struct NormalizeReport {
  Term result;
  uint64_t steps = 0;
  enum class Status { Normal, FuelExhausted } status = Status::Normal;
};

constexpr uint64_t kDefaultFuel = 100000;

// Repeatedly applies the first enumerated step.
NormalizeReport normalize(const Term& t, uint64_t fuel = kDefaultFuel);

}  // namespace boxcalc
