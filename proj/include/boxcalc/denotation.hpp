#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "boxcalc/bignat.hpp"
#include "boxcalc/subst.hpp"
#include "boxcalc/syntax.hpp"
#include "boxcalc/typing.hpp"

namespace boxcalc {

struct ShapeMismatchError : std::runtime_error {
  explicit ShapeMismatchError(const std::string& what) : std::runtime_error(what) {}
};

struct EvalError : std::runtime_error {
  enum class Kind {
    UnboundName,
    NotApplicable,
    NotABox,
    ArityMismatch,
    MalformedValuation,
    MalformedBox,
  };
  EvalError(Kind kind, const std::string& detail);
  Kind kind;
};

// Semantic value: truth value, natural, applicable function, or a box value
// pairing closed boxed syntax with a purported denotation for it. A box tail
// deliberately need not match its head.
class Den {
public:
  enum class Kind { Bool, Nat, Fun, Box };

  static Den boolean(bool b);
  static Den nat(BigNat n);
  static Den nat(uint64_t n) { return nat(BigNat(n)); }
  static Den fun(std::function<Den(const Den&)> f);
  // n = 0 box: the tail is a single value.
  static Den box(Type box_type, Term head, Den tail);
  // n > 0 box: the tail maps n-tuples of values to a value.
  static Den box(Type box_type, Term head, std::function<Den(const std::vector<Den>&)> tail);

  Kind kind() const;

  bool bool_value() const;
  const BigNat& nat_value() const;
  Den apply(const Den& arg) const;

  const Type& box_type() const;
  const Term& head() const;
  size_t box_arity() const;
  const Den& tail_value() const;                       // arity 0 only
  Den tail_apply(const std::vector<Den>& args) const;  // any arity

  // Shallow structural check of a value against the denotation of a type:
  // booleans against o, naturals against nat, functions against arrows, and
  // box values against their declared box type. Membership of a function
  // value beyond its shape is not checkable and is accepted.
  bool shape_matches(const Type& ty) const;

private:
  struct Node;
  explicit Den(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// hd/tl projections. hd of a non-box value is a "not a box" marker (nullopt);
// tl is undefined (nullopt) on non-boxes and on boxes of nonzero arity, whose
// tail is a tuple function rather than a single value.
std::optional<Term> hd(const Den& x);
std::optional<Den> tl(const Den& x);

// Finite partial map from atoms and unknowns to semantic values.
class Valuation {
public:
  Valuation() = default;

  Valuation with(const Atom& a, Den d) const;
  Valuation with(const Unknown& x, Den d) const;

  const Den* find(const Atom& a) const;
  const Den* find(const Unknown& x) const;

  const std::map<std::string, Den>& atoms() const { return atoms_; }
  const std::map<std::string, Den>& unknowns() const { return unknowns_; }
  bool empty() const { return atoms_.empty() && unknowns_.empty(); }

private:
  std::map<std::string, Den> atoms_;
  std::map<std::string, Den> unknowns_;
};

// The substitution sending each unknown of the valuation to the head of its
// box value. Throws EvalError{MalformedValuation} if an unknown is bound to
// a non-box value.
UnknownSubst valuation_unknowns(const Valuation& v);

// Gamma |- varsigma: equal domains, values shape-matching their types, box
// values for unknowns carrying exactly the declared box type.
bool check_valuation(const TypingCtx& ctx, const Valuation& v);

Den eval(const Valuation& v, const Term& t);

// Finite probe sets used to compare and shape-check values over infinite
// domains.
struct ProbeBudget {
  std::vector<uint64_t> nat_probes = {0, 1, 2, 3, 4, 5, 6, 7, 8};
  int fun_probe_depth = 2;
  std::map<Type, std::vector<Term>> probe_corpus;  // closed terms per type
};

enum class Verdict { Equal, Unequal, Indeterminate };

struct EqResult {
  Verdict verdict = Verdict::Indeterminate;
  bool probed = false;  // comparison was probe-limited rather than exhaustive
  bool unequal() const { return verdict == Verdict::Unequal; }
};

// Compares two values at a type. Base types compare exactly; functions
// pointwise on probe inputs; boxes by alpha-equal heads and recursively (or
// pointwise, for nonzero arity) compared tails.
EqResult den_eq(const Den& x, const Den& y, const Type& at, const ProbeBudget& budget);

enum class ShapeVerdict { Shapely, NotShapely, Indeterminate };

struct ShapeResult {
  ShapeVerdict verdict = ShapeVerdict::Indeterminate;
  bool probed = false;
  bool not_shapely() const { return verdict == ShapeVerdict::NotShapely; }
};

// A box value is shapely when it equals the denotation of its own head and
// its tail is recursively shapely; functions are shapely when they map
// shapely probes to shapely results; base values always are.
ShapeResult shapely(const Den& x, const Type& at, const ProbeBudget& budget);

// Probe values for a type: booleans, the budget's naturals, and evaluated
// corpus terms (falling back to a trivial inhabitant). All probes are
// denotations of closed terms, hence shapely.
std::vector<Den> probes_for(const Type& ty, const ProbeBudget& budget);

// Curries the tail of a box value into a chain of unary functions (the value
// itself for arity 0).
Den curry_tail(const Den& box);

std::string print_den(const Den& d);

}  // namespace boxcalc
