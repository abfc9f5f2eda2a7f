#include "doctest.h"

#include "boxcalc/corpus.hpp"
#include "boxcalc/parse.hpp"
#include "boxcalc/reduction.hpp"

using namespace boxcalc;

namespace {

Term pt(const char* s) { return parse_term(s); }
Den ev(const char* s) { return eval(Valuation{}, parse_term(s)); }
const ProbeBudget& budget() {
  static const ProbeBudget b = corpus::default_probe_budget();
  return b;
}

}  // namespace

TEST_CASE("head and tail are the box projections") {
  Den d = Den::box(Type::box(Type::nat()), pt("box (plus 1 2)"), Den::nat(3));
  REQUIRE(hd(d).has_value());
  CHECK(alpha_eq(*hd(d), pt("box (plus 1 2)")));
  REQUIRE(tl(d).has_value());
  CHECK(tl(d)->nat_value() == BigNat(3));

  CHECK_FALSE(hd(Den::nat(5)).has_value());
  CHECK_FALSE(tl(Den::nat(5)).has_value());

  Den f = ev("[a:nat](succ a)");
  REQUIRE(hd(f).has_value());
  CHECK(alpha_eq(*hd(f), pt("[a:nat](succ a)")));
  CHECK_FALSE(tl(f).has_value());  // nonzero arity: the tail is a tuple function
  CHECK(f.tail_apply({Den::nat(4)}).nat_value() == BigNat(5));
}

TEST_CASE("box values validate their head at construction") {
  CHECK_THROWS_AS(Den::box(Type::box(Type::nat()), pt("box top"), Den::nat(0)), EvalError);
  CHECK_THROWS_AS(Den::box(Type::box(Type::nat()), pt("box a"), Den::nat(0)), EvalError);
  CHECK_THROWS_AS(Den::box(Type::box(Type::nat()), pt("0"), Den::nat(0)), EvalError);
  // inflation is allowed: a mismatched tail of the right shape is fine
  CHECK_NOTHROW(Den::box(Type::box(Type::nat()), pt("box 0"), Den::nat(1)));
}

TEST_CASE("valuations project to unknowns-substitutions") {
  Valuation v = Valuation{}
                    .with(Unknown{"X"}, Den::box(Type::box(Type::nat()), pt("box 0"), Den::nat(0)))
                    .with(Atom{"a"}, Den::nat(3));
  UnknownSubst theta = valuation_unknowns(v);
  CHECK(theta.mapping().size() == 1);  // atoms dropped
  CHECK(alpha_eq(*theta.find(Unknown{"X"}), pt("box 0")));

  Valuation bad = Valuation{}.with(Unknown{"X"}, Den::nat(3));
  CHECK_THROWS_AS(valuation_unknowns(bad), EvalError);
}

TEST_CASE("valuation well-formedness against a context") {
  Type box_nat = Type::box(Type::nat());
  TypingCtx ctx = TypingCtx{}.bind(Unknown{"X"}, box_nat);
  Valuation good = Valuation{}.with(Unknown{"X"}, ev("box (plus 1 2)"));
  CHECK(check_valuation(ctx, good));

  TypingCtx ctx2 = TypingCtx{}.bind(Atom{"a"}, Type::truth());
  CHECK_FALSE(check_valuation(ctx2, Valuation{}.with(Atom{"a"}, Den::nat(2))));
  // domain mismatch in either direction
  TypingCtx ctx3 = ctx2.bind(Unknown{"X"}, box_nat);
  CHECK_FALSE(check_valuation(ctx3, Valuation{}.with(Atom{"a"}, Den::boolean(true))));
  CHECK_FALSE(check_valuation(ctx2, Valuation{}
                                        .with(Atom{"a"}, Den::boolean(true))
                                        .with(Atom{"b"}, Den::nat(0))));
  // unknown bound to a box of the wrong declared type
  CHECK_FALSE(check_valuation(
      ctx, Valuation{}.with(Unknown{"X"}, ev("box top"))));
}

TEST_CASE("the worked double-quotation denotation") {
  Den d = ev("let box X = box (plus 1 2) in box box X@()");
  REQUIRE(d.kind() == Den::Kind::Box);
  CHECK(alpha_eq(d.head(), pt("box box (plus 1 2)")));
  const Den& inner = d.tail_value();
  REQUIRE(inner.kind() == Den::Kind::Box);
  CHECK(alpha_eq(inner.head(), pt("box (plus 1 2)")));
  CHECK(inner.tail_value().nat_value() == BigNat(3));
  CHECK(print_den(d) == "box box (plus 1 2) :: box (plus 1 2) :: 3");
}

TEST_CASE("evaluate and quote behave as projections and requotation") {
  // evaluate: box r :: d  |->  d
  Den t_den = eval(Valuation{}, corpus::axiom_t(Type::nat()));
  Den input = Den::box(Type::box(Type::nat()), pt("box 0"), Den::nat(42));
  CHECK(t_den.apply(input).nat_value() == BigNat(42));

  // quote: box r :: d  |->  box box r :: box r :: d
  Den four_den = eval(Valuation{}, corpus::axiom_four(Type::nat()));
  Den out = four_den.apply(input);
  CHECK(alpha_eq(out.head(), pt("box box 0")));
  CHECK(alpha_eq(out.tail_value().head(), pt("box 0")));
  CHECK(out.tail_value().tail_value().nat_value() == BigNat(42));
}

TEST_CASE("evaluation under valuations uses the syntactic part for heads") {
  // [[ box (plus X@() 1) ]] with X bound to box 2 :: 7 pairs the substituted
  // syntax with the purported-denotation arithmetic
  Valuation v = Valuation{}.with(Unknown{"X"},
                                 Den::box(Type::box(Type::nat()), pt("box 2"), Den::nat(7)));
  Den d = eval(v, pt("box (plus X@() 1)"));
  CHECK(alpha_eq(d.head(), pt("box (plus 2 1)")));
  CHECK(d.tail_value().nat_value() == BigNat(8));  // tail uses the tail, not the syntax
}

TEST_CASE("evaluation errors are reserved for ill-formed input") {
  CHECK_THROWS_AS(eval(Valuation{}, pt("a")), EvalError);
  CHECK_THROWS_AS(eval(Valuation{}, pt("X@()")), EvalError);
  CHECK_THROWS_AS(eval(Valuation{}, pt("0 1")), EvalError);
  Valuation v = Valuation{}.with(Unknown{"X"}, Den::nat(3));
  CHECK_THROWS_AS(eval(v, pt("X@()")), EvalError);
  Valuation v2 = Valuation{}.with(Unknown{"X"},
                                  Den::box(Type::box(Type::nat()), pt("box 0"), Den::nat(0)));
  CHECK_THROWS_AS(eval(v2, pt("X@(1)")), EvalError);  // arity mismatch
}

TEST_CASE("isapp denotation inspects head syntax") {
  CHECK(ev("isapp (box (plus 1 2))").bool_value());
  // numerals other than zero are successor applications, syntactically
  CHECK(ev("isapp (box 3)").bool_value());
  CHECK_FALSE(ev("isapp (box 0)").bool_value());
  CHECK_FALSE(ev("isapp (box top)").bool_value());
  CHECK_FALSE(ev("isapp (box (\\a:nat. plus a 1))").bool_value());
  CHECK(ev("isapp ([b:nat](succ b))").bool_value() == true);
}

TEST_CASE("probed equality at base, arrow, and box types") {
  CHECK(den_eq(Den::nat(3), Den::nat(3), Type::nat(), budget()).verdict == Verdict::Equal);
  CHECK(den_eq(Den::nat(3), Den::nat(4), Type::nat(), budget()).verdict == Verdict::Unequal);

  // heads differ syntactically though the tails agree
  Type bn = Type::box(Type::nat());
  EqResult r = den_eq(ev("box (plus 1 2)"), ev("box (plus 2 1)"), bn, budget());
  CHECK(r.verdict == Verdict::Unequal);

  Type oo = Type::arrow(Type::truth(), Type::truth());
  EqResult fun = den_eq(ev("\\a:o. a"), ev("\\a:o. top"), oo, budget());
  CHECK(fun.verdict == Verdict::Unequal);
  // the two-point domain is exhausted, so equality there is not probe-limited
  EqResult same = den_eq(ev("\\a:o. a"), ev("\\a:o. neg (neg a)"), oo, budget());
  CHECK(same.verdict == Verdict::Equal);
  CHECK_FALSE(same.probed);

  Type nn = Type::arrow(Type::nat(), Type::nat());
  EqResult probed = den_eq(ev("\\a:nat. plus a a"), ev("\\a:nat. times a 2"), nn, budget());
  CHECK(probed.verdict == Verdict::Equal);
  CHECK(probed.probed);  // infinite domain: probe-limited

  CHECK_THROWS_AS(den_eq(Den::nat(0), Den::boolean(true), Type::nat(), budget()),
                  ShapeMismatchError);
}

TEST_CASE("shapeliness distinguishes matching heads and tails") {
  Type bn = Type::box(Type::nat());
  Den bad = Den::box(bn, pt("box 0"), Den::nat(1));
  CHECK(shapely(bad, bn, budget()).verdict == ShapeVerdict::NotShapely);

  CHECK(shapely(Den::nat(7), Type::nat(), budget()).verdict == ShapeVerdict::Shapely);
  CHECK(shapely(ev("box (plus 1 2)"), bn, budget()).verdict == ShapeVerdict::Shapely);

  // nonzero arity: the same equation at [nat]nat
  Type cb = Type::ctx_box({Type::nat()}, Type::nat());
  CHECK(shapely(ev("[b:nat](times b b)"), cb, budget()).verdict == ShapeVerdict::Shapely);
  Den mixed = Den::box(cb, pt("[b:nat](times b b)"),
                       std::function<Den(const std::vector<Den>&)>(
                           [](const std::vector<Den>& xs) { return xs[0]; }));
  CHECK(shapely(mixed, cb, budget()).verdict == ShapeVerdict::NotShapely);
}

TEST_CASE("unpack collapses shapely boxes to their tails") {
  // tl(x) = [[ unpack hd(x) ]] for shapely x
  Type cb = Type::ctx_box({Type::nat()}, Type::nat());
  Den x = ev("[b:nat](plus b 3)");
  Den unpacked = eval(Valuation{}, Term::app(corpus::unpack({Type::nat()}, Type::nat()),
                                             *hd(x)));
  Den curried = curry_tail(x);
  Type fn = Type::arrow(Type::nat(), Type::nat());
  CHECK_FALSE(den_eq(curried, unpacked, fn, budget()).unequal());
}

TEST_CASE("natural number denotations are unbounded") {
  // squaring eight times starting from 2: far beyond 64 bits
  Den f = ev("\\a:nat. times a a");
  Den acc = Den::nat(2);
  for (int i = 0; i < 8; ++i) acc = f.apply(acc);
  CHECK(acc.nat_value().to_string() ==
        "115792089237316195423570985008687907853269984665640564039457584007913129639936");
}

TEST_CASE("den printing") {
  CHECK(print_den(Den::boolean(true)) == "⊤");
  CHECK(print_den(Den::boolean(false)) == "⊥");
  CHECK(print_den(Den::nat(12)) == "12");
  CHECK(print_den(ev("\\a:nat. a")) == "<fun>");
  CHECK(print_den(ev("[b:nat](succ b)")) == "[b:nat](succ b) :: <fun>");
}

#include "helpers.hpp"
#include "boxcalc/propcheck.hpp"

TEST_CASE("eval is alpha-invariant under random renaming") {
  for (uint64_t seed = 0; seed < 150; ++seed) {
    auto inst = testutil::random_instance(seed);
    Term renamed = testutil::rename_all_binders(inst.term, 100);
    propcheck::GenConfig cfg;
    cfg.seed = seed + 424242;
    Valuation v = propcheck::gen_valuation(inst.ctx, cfg);
    Den d1 = eval(v, inst.term);
    Den d2 = eval(v, renamed);
    CHECK_FALSE(den_eq(d1, d2, inst.type, budget()).unequal());
  }
}

TEST_CASE("valuations extract to well-typed substitutions") {
  // Gamma |- varsigma implies Gamma |- varsigma_X, and applying the
  // extracted substitution leaves only the atoms of Gamma relevant.
  for (uint64_t seed = 0; seed < 150; ++seed) {
    auto inst = testutil::random_instance(seed);
    propcheck::GenConfig cfg;
    cfg.seed = seed + 909;
    Valuation v = propcheck::gen_valuation(inst.ctx, cfg);
    REQUIRE(check_valuation(inst.ctx, v));
    UnknownSubst theta = valuation_unknowns(v);
    CHECK(check_subst_typing_unknowns(inst.ctx, theta));
    Term applied = subst_unknowns(inst.term, theta);
    auto ty = typecheck_opt(inst.ctx.atoms_only(), applied);
    REQUIRE_MESSAGE(ty.has_value(), "seed ", seed, ": ", print_term(applied));
    CHECK(*ty == inst.type);
  }
}

TEST_CASE("extraction applies the stored tail to arguments in order") {
  Type cb = Type::ctx_box({Type::nat(), Type::nat()}, Type::nat());
  Den first = Den::box(cb, pt("[a:nat, b:nat]a"),
                       std::function<Den(const std::vector<Den>&)>(
                           [](const std::vector<Den>& xs) { return xs[0]; }));
  Valuation v = Valuation{}.with(Unknown{"X"}, first);
  CHECK(eval(v, pt("X@(3, 5)")).nat_value() == BigNat(3));
  Den second = Den::box(cb, pt("[a:nat, b:nat]b"),
                        std::function<Den(const std::vector<Den>&)>(
                            [](const std::vector<Den>& xs) { return xs[1]; }));
  Valuation v2 = Valuation{}.with(Unknown{"X"}, second);
  CHECK(eval(v2, pt("X@(3, 5)")).nat_value() == BigNat(5));
}

TEST_CASE("shapely valuations collapse to their syntactic part") {
  // for shapely varsigma: [[t]]_varsigma equals [[t varsigma_X]] over the
  // atoms alone
  for (uint64_t seed = 0; seed < 150; ++seed) {
    auto inst = testutil::random_instance(seed);
    propcheck::GenConfig cfg;
    cfg.seed = seed + 5150;
    Valuation v = propcheck::gen_valuation(inst.ctx, cfg);
    Valuation atoms_only;
    for (const auto& [name, den] : v.atoms()) atoms_only = atoms_only.with(Atom{name}, den);
    Term substituted = subst_unknowns(inst.term, valuation_unknowns(v));
    Den lhs = eval(v, inst.term);
    Den rhs = eval(atoms_only, substituted);
    CHECK_FALSE(den_eq(lhs, rhs, inst.type, budget()).unequal());
  }
}
