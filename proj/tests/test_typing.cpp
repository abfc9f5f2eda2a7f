#include "doctest.h"

#include "boxcalc/corpus.hpp"
#include "boxcalc/parse.hpp"
#include "boxcalc/subst.hpp"
#include "boxcalc/typing.hpp"

using namespace boxcalc;

namespace {

Term pt(const char* s) { return parse_term(s); }

TypeErrorKind kind_of(const TypingCtx& ctx, const char* src,
                      TypeMode mode = TypeMode::Contextual) {
  try {
    typecheck(ctx, parse_term(src), mode);
  } catch (const TypeError& e) {
    return e.kind;
  }
  throw std::logic_error("expected a type error");
}

}  // namespace

TEST_CASE("negation transformer types at box o -> box o in both modes") {
  Term t = pt("\\a:[]o. let box X = a in box (neg X!)");
  Type expect = Type::arrow(Type::box(Type::truth()), Type::box(Type::truth()));
  CHECK(typecheck(TypingCtx{}, t, TypeMode::Modal) == expect);
  CHECK(typecheck(TypingCtx{}, t, TypeMode::Contextual) == expect);
}

TEST_CASE("there is no term of type A -> box A: open bodies are rejected") {
  CHECK(kind_of(TypingCtx{}, "\\a:o. box a") == TypeErrorKind::BoxOpenBody);
  CHECK(kind_of(TypingCtx{}, "\\a:o. box a", TypeMode::Modal) == TypeErrorKind::BoxOpenBody);
}

TEST_CASE("the K combinator over boxed syntax") {
  Term t = pt(
      "\\f:[](nat -> o). \\x:[]nat. let box F = f in let box X = x in box (F! X!)");
  Type a = Type::nat(), b = Type::truth();
  CHECK(typecheck(TypingCtx{}, t) ==
        Type::arrow(Type::box(Type::arrow(a, b)),
                    Type::arrow(Type::box(a), Type::box(b))));
  CHECK(alpha_eq(corpus::axiom_k(a, b), t));
}

TEST_CASE("named type errors fire on their rules") {
  TypingCtx ctx;
  CHECK(kind_of(ctx, "a") == TypeErrorKind::UnboundAtom);
  CHECK(kind_of(ctx, "X@()") == TypeErrorKind::UnboundUnknown);
  CHECK(kind_of(ctx, "top bot") == TypeErrorKind::NotAFunction);
  CHECK(kind_of(ctx, "succ top") == TypeErrorKind::ArgMismatch);
  CHECK(kind_of(ctx, "let box X = 0 in X@()") == TypeErrorKind::LetBoxNotBox);
  CHECK(kind_of(ctx, "isapp") == TypeErrorKind::Ambiguous);
  CHECK(kind_of(ctx, "natrec") == TypeErrorKind::Ambiguous);

  TypingCtx with_unknown = TypingCtx{}.bind(Unknown{"X"}, Type::ctx_box({Type::nat()}, Type::nat()));
  CHECK(kind_of(with_unknown, "X@()") == TypeErrorKind::ExtArityMismatch);
  CHECK(kind_of(with_unknown, "X@(top)") == TypeErrorKind::ExtArgMismatch);

  TypingCtx bad = TypingCtx{}.bind(Unknown{"X"}, Type::nat());
  CHECK(kind_of(bad, "X@()") == TypeErrorKind::NonBoxUnknownInCtx);
}

TEST_CASE("modal mode rejects contextual features") {
  CHECK(kind_of(TypingCtx{}, "[a:nat](succ a)", TypeMode::Modal) ==
        TypeErrorKind::ModalModeViolation);
  CHECK(kind_of(TypingCtx{}, "\\x:[nat]nat. x", TypeMode::Modal) ==
        TypeErrorKind::ModalModeViolation);
  TypingCtx ctx = TypingCtx{}.bind(Unknown{"X"}, Type::ctx_box({Type::nat()}, Type::nat()));
  CHECK(kind_of(ctx, "top", TypeMode::Modal) == TypeErrorKind::ModalModeViolation);
  // but the same term is fine contextually
  CHECK(typecheck(ctx, pt("X@(1)")) == Type::nat());
}

TEST_CASE("schematic constants resolve from their applied argument") {
  CHECK(typecheck(TypingCtx{}, pt("isapp (box 0)")) == Type::truth());
  CHECK(typecheck(TypingCtx{}, pt("isapp[[]nat] (box 0)")) == Type::truth());
  CHECK(typecheck(TypingCtx{}, pt("natrec 0 (\\m:nat. \\x:nat. succ x) 3")) == Type::nat());
  CHECK(kind_of(TypingCtx{}, "isapp 0") == TypeErrorKind::ArgMismatch);
  // annotated but misapplied
  CHECK(kind_of(TypingCtx{}, "isapp[[]nat] (box top)") == TypeErrorKind::ArgMismatch);
}

TEST_CASE("substitution typing judgments") {
  TypingCtx ctx = TypingCtx{}
                      .bind(Atom{"a"}, Type::nat())
                      .bind(Atom{"b"}, Type::nat())
                      .bind(Atom{"c"}, Type::truth())
                      .bind(Unknown{"X"}, Type::box(Type::nat()))
                      .bind(Unknown{"Y"}, Type::ctx_box({Type::nat()}, Type::nat()));

  CHECK(check_subst_typing_atoms(ctx, AtomSubst::single(Atom{"a"}, pt("succ 0"))));
  CHECK(check_subst_typing_atoms(ctx, AtomSubst::single(Atom{"a"}, pt("b"))));
  CHECK_FALSE(check_subst_typing_atoms(ctx, AtomSubst::single(Atom{"c"}, pt("0"))));
  CHECK_FALSE(check_subst_typing_atoms(ctx, AtomSubst::single(Atom{"zz"}, pt("0"))));

  CHECK(check_subst_typing_unknowns(ctx, UnknownSubst::single(Unknown{"X"}, pt("box 0"))));
  CHECK_FALSE(check_subst_typing_unknowns(ctx, UnknownSubst::single(Unknown{"X"}, pt("box top"))));
  CHECK(check_subst_typing_unknowns(ctx,
                                    UnknownSubst::single(Unknown{"Y"}, pt("[a:nat](succ a)"))));
  // images may mention the context's unknowns
  CHECK(check_subst_typing_unknowns(
      ctx, UnknownSubst::single(Unknown{"Y"}, pt("[a:nat](plus a X@())"))));
}

TEST_CASE("typing is preserved by well-typed substitutions (hand cases)") {
  TypingCtx ctx = TypingCtx{}
                      .bind(Atom{"a"}, Type::nat())
                      .bind(Unknown{"X"}, Type::ctx_box({Type::nat()}, Type::nat()));
  Term t = pt("plus a (X@(succ a))");
  REQUIRE(typecheck(ctx, t) == Type::nat());

  Term after_sigma = subst_atoms(t, AtomSubst::single(Atom{"a"}, pt("times 2 3")));
  CHECK(typecheck(ctx, after_sigma) == Type::nat());

  Term after_theta =
      subst_unknowns(t, UnknownSubst::single(Unknown{"X"}, pt("[b:nat](times b b)")));
  CHECK(typecheck(ctx, after_theta) == Type::nat());
  CHECK(alpha_eq(after_theta, pt("plus a (times (succ a) (succ a))")));
}

TEST_CASE("weakening and strengthening by hand") {
  Term t = pt("plus a 1");
  TypingCtx small = TypingCtx{}.bind(Atom{"a"}, Type::nat());
  TypingCtx big = small.bind(Atom{"junk"}, Type::truth())
                      .bind(Unknown{"J"}, Type::box(Type::truth()));
  CHECK(typecheck(small, t) == Type::nat());
  CHECK(typecheck(big, t) == Type::nat());
}

TEST_CASE("synthesis is deterministic") {
  TypingCtx ctx = TypingCtx{}.bind(Atom{"a"}, Type::nat());
  Term t = pt("\\b:nat. plus a b");
  Type first = typecheck(ctx, t);
  for (int i = 0; i < 5; ++i) CHECK(typecheck(ctx, t) == first);
}

TEST_CASE("shadowing inside a box is allowed; escaping atoms are not") {
  TypingCtx ctx = TypingCtx{}.bind(Atom{"a"}, Type::nat());
  // the box binder a:o shadows the context's a:nat
  CHECK(typecheck(ctx, pt("[a:o](neg a)")) ==
        Type::ctx_box({Type::truth()}, Type::truth()));
  CHECK(kind_of(ctx, "[b:o] a") == TypeErrorKind::BoxOpenBody);
  // unknowns stay visible under boxes
  TypingCtx ctx2 = TypingCtx{}.bind(Unknown{"X"}, Type::box(Type::nat()));
  CHECK(typecheck(ctx2, pt("box (plus X@() 1)")) == Type::box(Type::nat()));
}

#include "helpers.hpp"

TEST_CASE("typecheck is alpha-invariant under random renaming") {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    auto inst = testutil::random_instance(seed);
    Term renamed = testutil::rename_all_binders(inst.term, 100);
    REQUIRE(alpha_eq(inst.term, renamed));
    auto t1 = typecheck_opt(inst.ctx, inst.term);
    auto t2 = typecheck_opt(inst.ctx, renamed);
    REQUIRE(t1.has_value());
    REQUIRE(t2.has_value());
    CHECK(*t1 == *t2);
  }
}
