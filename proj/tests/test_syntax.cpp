#include "doctest.h"

#include <random>

#include "boxcalc/parse.hpp"
#include "boxcalc/propcheck.hpp"
#include "boxcalc/syntax.hpp"
#include "helpers.hpp"
#include "nameless.hpp"

using namespace boxcalc;

namespace {

Term pt(const char* s) { return parse_term(s); }

Term random_term(uint64_t seed) {
  propcheck::GenConfig cfg;
  cfg.seed = seed;
  cfg.max_size = 25;
  TypingCtx ctx = TypingCtx{}
                      .bind(Atom{"v0"}, Type::nat())
                      .bind(Atom{"v1"}, Type::truth())
                      .bind(Unknown{"U0"}, Type::ctx_box({Type::nat()}, Type::nat()));
  Type ty = (seed % 3 == 0)   ? Type::nat()
            : (seed % 3 == 1) ? Type::arrow(Type::nat(), Type::nat())
                              : Type::ctx_box({Type::nat()}, Type::nat());
  return propcheck::gen_typed_term(ctx, ty, cfg);
}

}  // namespace

TEST_CASE("free atoms follow the binder structure") {
  CHECK(free_atoms(pt("\\a:nat. a")).empty());
  CHECK(free_atoms(pt("X@(b)")) == std::set<Atom>{Atom{"b"}});
  CHECK(free_atoms(pt("let box X = box b in X@()")) == std::set<Atom>{Atom{"b"}});
  // binder shadowing: the inner box removes the lambda's atom
  CHECK(free_atoms(pt("\\a:nat. [a:o](neg a)")).empty());
  CHECK(free_atoms(pt("\\c:nat. [b:o] a")) == std::set<Atom>{Atom{"a"}});
}

TEST_CASE("free unknowns follow let-box binding") {
  CHECK(free_unknowns(pt("let box X = box 0 in X@()")).empty());
  CHECK(free_unknowns(pt("X@(Y@())")) == std::set<Unknown>{Unknown{"X"}, Unknown{"Y"}});
  CHECK(free_unknowns(pt("\\a:o. a")).empty());
  // bound term is outside the binder's scope
  CHECK(free_unknowns(pt("let box X = X@() in X@()")) == std::set<Unknown>{Unknown{"X"}});
}

TEST_CASE("alpha equivalence identifies renamed binders") {
  CHECK(alpha_eq(pt("\\a:nat. a"), pt("\\b:nat. b")));
  CHECK(alpha_eq(pt("let box X = [a:nat]a in X@(b)"), pt("let box Y = [b:nat]b in Y@(b)")));
  CHECK(alpha_eq(pt("\\a:nat. X@(a) a"), pt("\\b:nat. X@(b) b")));
  CHECK_FALSE(alpha_eq(pt("\\a:nat. a"), pt("\\a:o. a")));
  CHECK_FALSE(alpha_eq(pt("X@()"), pt("Y@()")));
}

TEST_CASE("alpha inequivalence: rebinding changes reference structure") {
  // \b:A. [b:B]((X@(b)) b)  vs  \b:A. [a:B]((X@(a)) b): in the first term both
  // occurrences point at the box binder, in the second the trailing b escapes
  // to the lambda.
  Term lhs = pt("\\b:nat. [b:o]((X@(b)) b)");
  Term rhs = pt("\\b:nat. [a:o]((X@(a)) b)");
  CHECK_FALSE(alpha_eq(lhs, rhs));
  CHECK(alpha_eq(lhs, pt("\\c:nat. [d:o]((X@(d)) d)")));
}

TEST_CASE("alpha equivalence agrees with the nameless oracle on random terms") {
  for (uint64_t seed = 0; seed < 300; ++seed) {
    Term t = random_term(seed);
    Term renamed = testutil::rename_all_binders(t, 1000);
    CHECK(alpha_eq(t, renamed));
    CHECK(nameless::equal(nameless::convert(t), nameless::convert(renamed)));
    Term other = random_term(seed + 7717);
    bool impl = alpha_eq(t, other);
    bool oracle = nameless::equal(nameless::convert(t), nameless::convert(other));
    CHECK(impl == oracle);
  }
}

TEST_CASE("alpha invariance of free variable computations") {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    Term t = random_term(seed);
    Term renamed = testutil::rename_all_binders(t, 5000);
    CHECK(free_atoms(t) == free_atoms(renamed));
    CHECK(free_unknowns(t) == free_unknowns(renamed));
  }
}

TEST_CASE("fresh names take the least unused suffix") {
  std::set<Atom> avoid = {Atom{"a"}, Atom{"a1"}, Atom{"a3"}};
  CHECK(fresh_atom(Atom{"a"}, avoid) == Atom{"a2"});
  CHECK(fresh_atom(Atom{"b"}, avoid) == Atom{"b"});
  CHECK(fresh_atom(Atom{"a1"}, avoid) == Atom{"a2"});
  std::set<Unknown> uavoid = {Unknown{"X"}};
  CHECK(fresh_unknown(Unknown{"X"}, uavoid) == Unknown{"X1"});
}

TEST_CASE("numerals abbreviate successor chains") {
  CHECK(alpha_eq(numeral(0), Term::constant(ConstKind::Zero)));
  CHECK(alpha_eq(numeral(2), pt("succ (succ zero)")));
  CHECK(numeral_value(pt("3")) == 3);
  CHECK_FALSE(numeral_value(pt("succ a")).has_value());
  CHECK(print_term(numeral(7)) == "7");
}

TEST_CASE("duplicate box binders are unrepresentable") {
  CHECK_THROWS_AS(Term::ctx_box({Binder{Atom{"a"}, Type::nat()}, Binder{Atom{"a"}, Type::truth()}},
                                numeral(0)),
                  std::invalid_argument);
}

TEST_CASE("atom and unknown namespaces are disjoint and validated") {
  CHECK_THROWS_AS(Atom{"Bad"}, std::invalid_argument);
  CHECK_THROWS_AS(Atom{"box"}, std::invalid_argument);
  CHECK_THROWS_AS(Unknown{"bad"}, std::invalid_argument);
  CHECK_NOTHROW(Atom{"a'"});
  CHECK_NOTHROW(Unknown{"X_1"});
}

TEST_CASE("typing contexts replace on rebinding and restrict") {
  TypingCtx ctx =
      TypingCtx{}.bind(Atom{"a"}, Type::nat()).bind(Atom{"a"}, Type::truth());
  REQUIRE(ctx.find(Atom{"a"}) != nullptr);
  CHECK(*ctx.find(Atom{"a"}) == Type::truth());
  ctx = ctx.bind(Unknown{"X"}, Type::box(Type::nat()));
  TypingCtx cut = ctx.restricted({}, {Unknown{"X"}});
  CHECK(cut.find(Atom{"a"}) == nullptr);
  CHECK(cut.find(Unknown{"X"}) != nullptr);
  CHECK(ctx.atoms_only().find(Unknown{"X"}) == nullptr);
}

TEST_CASE("trivial inhabitants typecheck at their types") {
  for (uint64_t seed = 0; seed < 40; ++seed) {
    propcheck::GenConfig cfg;
    cfg.seed = seed;
    // use the generator's type machinery indirectly through random terms
    Term t = random_term(seed);
    (void)t;
  }
  Type fancy = Type::arrow(Type::ctx_box({Type::nat(), Type::truth()}, Type::nat()),
                           Type::arrow(Type::truth(), Type::nat()));
  Term inhab = trivial_inhabitant(fancy);
  auto ty = typecheck_opt(TypingCtx{}, inhab);
  REQUIRE(ty.has_value());
  CHECK(*ty == fancy);
}
