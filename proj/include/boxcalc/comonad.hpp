#pragma once

#include <functional>
#include <string>
#include <vector>

#include "boxcalc/denotation.hpp"

namespace boxcalc {

// The comonad structure lives on modal box denotations: an arrow from A to B
// is a function from [[box A]] to [[box B]].
using BoxArrow = std::function<Den(const Den&)>;

// Functor action on arrows: sends box box s :: x to
// box (hd (f (box s :: [[s]]))) :: f x. Types are supplied because the
// probe value for the inner syntax must be rebuilt at [[box A]].
Den boxdot_map(const BoxArrow& f, const Type& a, const Type& b, const Den& x);

// Counit at A: [[box box A]] -> [[box A]], dropping the outer quotation.
Den counit_delta(const Den& x);

// Comultiplication at A: [[box box A]] -> [[box box box A]], quoting once more.
Den comult_epsilon(const Den& x);

struct NamedArrow {
  std::string name;
  Type src;
  Type dst;
  BoxArrow fn;
};

struct LawFailure {
  std::string law;
  size_t probe_index;
  std::string detail;
};

struct LawReport {
  size_t probes = 0;
  size_t checks = 0;
  std::vector<LawFailure> failures;
  bool ok() const { return failures.empty(); }
};

// Verifies, on every probe in [[box box ty]]: both counit laws,
// coassociativity, functoriality (identity and composition), and naturality
// of counit and comultiplication against the supplied arrows with source ty.
// Heads are compared up to alpha, tails by probed equality.
LawReport check_comonad_laws(const Type& ty, const std::vector<Den>& probes,
                             const std::vector<NamedArrow>& arrows, const ProbeBudget& budget);

}  // namespace boxcalc
