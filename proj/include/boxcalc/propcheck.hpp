#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "boxcalc/denotation.hpp"
#include "boxcalc/syntax.hpp"
#include "boxcalc/typing.hpp"

namespace boxcalc {
namespace propcheck {

struct GenConfig {
  uint64_t seed = 1;
  int max_size = 40;
  int type_depth = 2;
  TypeMode mode = TypeMode::Contextual;
  // Relative weight overrides for generated constants, keyed by name.
  std::map<std::string, int> constant_weights;
};

struct GenExhausted : std::runtime_error {
  explicit GenExhausted(const std::string& what) : std::runtime_error(what) {}
};

// Type-directed generation: the result always typechecks at the requested
// type under the given context (generation reads the typing rules bottom-up;
// box bodies see only the box binders and the context's unknowns).
Term gen_typed_term(const TypingCtx& ctx, const Type& target, const GenConfig& cfg);

// Domain-matching valuation built from evaluated closed terms, so every
// value is shapely by construction; check_valuation holds on the result.
Valuation gen_valuation(const TypingCtx& ctx, const GenConfig& cfg);

struct PropFailure {
  uint64_t seed = 0;
  std::string term;
  std::string property;
};

struct PropReport {
  std::string suite;
  int cases = 0;
  // Cases abandoned because evaluation hit an engineering bound (for
  // example a recursor argument too large to iterate). Not failures: the
  // property is about computations that complete.
  int resource_skips = 0;
  std::vector<PropFailure> failures;
  bool ok() const { return failures.empty(); }
};

const std::vector<std::string>& suite_names();

// Runs `cases` generated instances of the named metatheorem suite. Failures
// are shrunk by replacing subterms with smaller well-typed terms and are
// replayable from the recorded per-case seed.
PropReport run_suite(const std::string& name, int cases, const GenConfig& cfg);

// Harness self-test: the shapeliness suite with a deliberately non-shapely
// binding in scope. A healthy harness reports failures here.
PropReport run_shapeliness_injected(int cases, const GenConfig& cfg);

std::string report_to_json(const PropReport& report);

}  // namespace propcheck
}  // namespace boxcalc
