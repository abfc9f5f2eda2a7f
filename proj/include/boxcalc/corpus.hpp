#pragma once

#include <string>
#include <vector>

#include "boxcalc/denotation.hpp"
#include "boxcalc/syntax.hpp"
#include "boxcalc/typing.hpp"

namespace boxcalc {
namespace corpus {

struct Entry {
  std::string name;
  Term term;
  Type type;
  TypeMode mode;
};

// Every named term of the development, with schema terms instantiated at
// sample types and contexts of length up to 3. Each entry typechecks at its
// declared type in its declared mode.
std::vector<Entry> entries();

// --- schema generators -----------------------------------------------------

// \a:box A. let box X = a in X@()            : box A -> A
Term axiom_t(const Type& a);
// \a:box A. let box X = a in box box X@()    : box A -> box box A
Term axiom_four(const Type& a);
// \f:box(A->B). \x:box A. let box F = f in let box X = x in box (F@() X@())
Term axiom_k(const Type& a, const Type& b);

// \c:[A]B. let box X = c in box (\a:A. X@(a))       : [A]B -> box(A->B)
Term fun_intro(const Type& a, const Type& b);
// \c:box(A->B). let box X = c in [a:A]((X@()) a)    : box(A->B) -> [A]B
Term fun_elim(const Type& a, const Type& b);

// \b:[G]B. let box X = b in \g1...gn. X@(g1,...,gn) : [G]B -> G1->...->B
Term unpack(const std::vector<Type>& ctx, const Type& b);

// \x:[G]A. let box X = x in box [G](X@(idG))        : [G]A -> box [G]A
Term axiom_four_ctx(const std::vector<Type>& ctx, const Type& a);
// [G](A->B) -> [G]A -> [G]B
Term axiom_k_ctx(const std::vector<Type>& ctx, const Type& a, const Type& b);

// [G1]A -> [G1,G2]A
Term weaken(const std::vector<Type>& g1, const std::vector<Type>& g2, const Type& a);
// [B,B]A -> [B]A
Term contract(const Type& b, const Type& a);
// [B,C]A -> [C,B]A
Term exchange(const Type& b, const Type& c, const Type& a);

// Syntax transformers over boxed truth values.
Term negate_boxed();       // box o -> box o
Term conjoin_boxed();      // box o -> box o -> box o
Term duplicate_conjoin();  // box o -> box o

// Staged exponentiation and numeral reification, via the recursor.
Term exp_modal();       // nat -> box(nat -> nat)
Term exp_contextual();  // nat -> [nat]nat
Term reify_nat();       // nat -> box nat

// Evaluate-and-apply: box(A->B) -> A -> B
Term eval_apply(const Type& a, const Type& b);

// A probe budget whose corpus probes are drawn from the closed corpus terms,
// keyed by type.
ProbeBudget default_probe_budget();

struct GoldenResult {
  std::string name;
  bool ok;
  std::string detail;
};

// The worked typings, normal forms, and denotations of the corpus, checked
// end to end: the double-quoted let-box value, staged exponentiation in both
// systems, numeral reification, and the evaluate/quote axiom behaviors.
std::vector<GoldenResult> golden_checks();

}  // namespace corpus
}  // namespace boxcalc
