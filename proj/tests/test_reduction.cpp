#include "doctest.h"

#include "boxcalc/corpus.hpp"
#include "boxcalc/denotation.hpp"
#include "boxcalc/parse.hpp"
#include "boxcalc/reduction.hpp"

using namespace boxcalc;

namespace {

Term pt(const char* s) { return parse_term(s); }

Term norm(const char* s) {
  NormalizeReport r = normalize(parse_term(s));
  REQUIRE(r.status == NormalizeReport::Status::Normal);
  return r.result;
}

bool den_equal_closed(const Term& a, const Term& b, const Type& at) {
  ProbeBudget budget = corpus::default_probe_budget();
  return !den_eq(eval(Valuation{}, a), eval(Valuation{}, b), at, budget).unequal();
}

}  // namespace

TEST_CASE("beta at the root") {
  auto steps = step_all(pt("(\\a:nat. a) 0"));
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].rule == "beta");
  CHECK(steps[0].path.empty());
  CHECK(alpha_eq(steps[0].result, numeral(0)));
}

TEST_CASE("let-box contraction on a modal box") {
  auto steps = step_all(pt("let box X = box 0 in X@()"));
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].rule == "beta-box");
  CHECK(alpha_eq(steps[0].result, numeral(0)));
}

TEST_CASE("isapp inspects the boxed body syntactically") {
  auto steps = step_all(pt("isapp (box ((\\a:nat. a) 0))"));
  REQUIRE(!steps.empty());
  CHECK(steps[0].rule == "isapp-top");
  CHECK(alpha_eq(steps[0].result, Term::constant(ConstKind::Top)));
  // the redex under the box is untouched: only the isapp step is offered
  CHECK(steps.size() == 1);

  auto steps2 = step_all(pt("isapp (box (\\a:nat. a))"));
  REQUIRE(steps2.size() == 1);
  CHECK(steps2[0].rule == "isapp-bot");
}

TEST_CASE("isapp waits for extraction bodies to be instantiated") {
  // the boxed body X@() is not an application *yet*; deciding bot here would
  // contradict the denotation once X is bound to application syntax
  CHECK(step_all(pt("isapp[[]o] (box X@())")).empty());

  Term t = pt("let box X = box ((\\u:o. u) top) in isapp[[]o] (box X@())");
  NormalizeReport r = normalize(t);
  REQUIRE(r.status == NormalizeReport::Status::Normal);
  CHECK(alpha_eq(r.result, Term::constant(ConstKind::Top)));
  // every step along the way preserves the denotation
  ProbeBudget budget = corpus::default_probe_budget();
  Den before = eval(Valuation{}, t);
  for (const StepOutcome& s : step_all(t))
    CHECK_FALSE(den_eq(before, eval(Valuation{}, s.result), Type::truth(), budget).unequal());
}

TEST_CASE("no reduction ever enters a box body") {
  Term t = pt("box ((\\a:nat. a) 0)");
  CHECK(step_all(t).empty());
  Term t2 = pt("[b:nat](plus ((\\a:nat. a) b) 1)");
  CHECK(step_all(t2).empty());
  // and paths of enumerated reducts elsewhere never contain a box segment
  Term t3 = pt("(\\x:[]nat. let box X = x in plus X@() ((\\a:nat. a) 2)) (box 1)");
  for (const StepOutcome& s : step_all(t3))
    for (const std::string& seg : s.path) CHECK(seg != "box");
}

TEST_CASE("delta arithmetic on numerals") {
  CHECK(alpha_eq(norm("plus 1 2"), numeral(3)));
  CHECK(alpha_eq(norm("times 3 4"), numeral(12)));
  CHECK(alpha_eq(norm("neg top"), Term::constant(ConstKind::Bot)));
  CHECK(alpha_eq(norm("and top (neg bot)"), Term::constant(ConstKind::Top)));
  CHECK(alpha_eq(norm("natrec 0 (\\m:nat. \\x:nat. plus x 2) 5"), numeral(10)));
  // non-values do not fire delta rules
  CHECK(step_all(pt("\\a:nat. plus a 1")).empty());
}

TEST_CASE("reduction under lambda is allowed") {
  auto steps = step_all(pt("\\a:nat. (\\b:nat. b) a"));
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].path == std::vector<std::string>{"body"});
  CHECK(alpha_eq(steps[0].result, pt("\\a:nat. a")));
}

TEST_CASE("staged exponentiation reduces to the expected quoted function") {
  Term applied = Term::app(corpus::exp_modal(), numeral(2));
  NormalizeReport r = normalize(applied);
  REQUIRE(r.status == NormalizeReport::Status::Normal);
  Term expected = pt("box (\\b:nat. times b ((\\b:nat. times b ((\\b:nat. 1) b)) b))");
  CHECK(alpha_eq(r.result, expected));
}

TEST_CASE("numeral reification reduces to iterated successor additions") {
  Term applied = Term::app(corpus::reify_nat(), numeral(2));
  NormalizeReport r = normalize(applied);
  REQUIRE(r.status == NormalizeReport::Status::Normal);
  CHECK(alpha_eq(r.result, pt("box (plus (plus 0 1) 1)")));
  // cross-check by the evaluator: both sides denote the same box value
  CHECK(den_equal_closed(applied, r.result, Type::box(Type::nat())));
}

TEST_CASE("contextual let-box contraction instantiates extractions") {
  auto steps = step_all(pt("let box X = [a:nat](succ a) in X@(0)"));
  REQUIRE(steps.size() == 1);
  CHECK(steps[0].rule == "beta-box");
  CHECK(alpha_eq(steps[0].result, pt("succ 0")));
  CHECK(den_equal_closed(pt("let box X = [a:nat](succ a) in X@(0)"), steps[0].result,
                         Type::nat()));

  auto steps2 = step_all(pt("let box X = [a:nat]a in box (\\b:nat. X@(b))"));
  REQUIRE(!steps2.empty());
  CHECK(alpha_eq(steps2[0].result, pt("box (\\b:nat. b)")));
  CHECK(den_equal_closed(pt("let box X = [a:nat]a in box (\\b:nat. X@(b))"),
                         steps2[0].result, Type::box(Type::arrow(Type::nat(), Type::nat()))));
}

TEST_CASE("normalization is deterministic and counts steps") {
  Term t = pt("plus ((\\a:nat. a) 1) ((\\b:nat. b) 2)");
  NormalizeReport r1 = normalize(t);
  NormalizeReport r2 = normalize(t);
  CHECK(alpha_eq(r1.result, r2.result));
  CHECK(r1.steps == r2.steps);
  CHECK(r1.steps == 3);  // two betas, one delta
  CHECK(alpha_eq(r1.result, numeral(3)));
}

TEST_CASE("fuel exhaustion is a status, not an error") {
  Term t = pt("plus ((\\a:nat. a) 1) ((\\b:nat. b) 2)");
  NormalizeReport r = normalize(t, 1);
  CHECK(r.status == NormalizeReport::Status::FuelExhausted);
  CHECK(r.steps == 1);
}

TEST_CASE("leftmost-outermost ordering: the root redex comes first") {
  Term t = pt("(\\a:nat. (\\b:nat. b) a) ((\\c:nat. c) 0)");
  auto steps = step_all(t);
  REQUIRE(steps.size() == 3);
  CHECK(steps[0].path.empty());              // root beta
  CHECK(steps[1].path == std::vector<std::string>{"fun", "body"});
  CHECK(steps[2].path == std::vector<std::string>{"arg"});
}

TEST_CASE("step outcomes apply their rule at their path") {
  // navigating the path in the source and the result differs exactly there
  Term t = pt("let box X = box ((\\a:nat. a) 1) in plus X@() ((\\b:nat. b) 2)");
  for (const StepOutcome& s : step_all(t)) {
    auto ty1 = typecheck_opt(TypingCtx{}, t);
    auto ty2 = typecheck_opt(TypingCtx{}, s.result);
    REQUIRE(ty1.has_value());
    REQUIRE(ty2.has_value());
    CHECK(*ty1 == *ty2);
  }
}
