#include "boxcalc/corpus.hpp"

#include <functional>

#include "boxcalc/parse.hpp"
#include "boxcalc/reduction.hpp"

namespace boxcalc {
namespace corpus {

namespace {

Atom at(const char* n) { return Atom{n}; }
Unknown un(const char* n) { return Unknown{n}; }

Term ext0(const char* x) { return Term::ext(un(x), {}); }

std::vector<Binder> ctx_binders(const std::vector<Type>& ctx, const char* stem = "g") {
  std::vector<Binder> out;
  for (size_t i = 0; i < ctx.size(); ++i)
    out.push_back(Binder{Atom{stem + std::to_string(i + 1)}, ctx[i]});
  return out;
}

std::vector<Term> id_subst_args(const std::vector<Binder>& binders) {
  std::vector<Term> out;
  for (const Binder& b : binders) out.push_back(Term::atom(b.atom));
  return out;
}

}  // namespace

Term axiom_t(const Type& a) {
  return Term::lam(at("a"), Type::box(a),
                   Term::let_box(un("X"), Term::atom(at("a")), ext0("X")));
}

Term axiom_four(const Type& a) {
  return Term::lam(at("a"), Type::box(a),
                   Term::let_box(un("X"), Term::atom(at("a")),
                                 Term::box(Term::box(ext0("X")))));
}

Term axiom_k(const Type& a, const Type& b) {
  return Term::lam(
      at("f"), Type::box(Type::arrow(a, b)),
      Term::lam(at("x"), Type::box(a),
                Term::let_box(un("F"), Term::atom(at("f")),
                              Term::let_box(un("X"), Term::atom(at("x")),
                                            Term::box(Term::app(ext0("F"), ext0("X")))))));
}

Term fun_intro(const Type& a, const Type& b) {
  return Term::lam(
      at("c"), Type::ctx_box({a}, b),
      Term::let_box(un("X"), Term::atom(at("c")),
                    Term::box(Term::lam(at("a"), a,
                                        Term::ext(un("X"), {Term::atom(at("a"))})))));
}

Term fun_elim(const Type& a, const Type& b) {
  return Term::lam(
      at("c"), Type::box(Type::arrow(a, b)),
      Term::let_box(un("X"), Term::atom(at("c")),
                    Term::ctx_box({Binder{at("a"), a}},
                                  Term::app(ext0("X"), Term::atom(at("a"))))));
}

Term unpack(const std::vector<Type>& ctx, const Type& b) {
  std::vector<Binder> binders = ctx_binders(ctx, "a");
  Term body = Term::ext(un("X"), id_subst_args(binders));
  for (size_t i = binders.size(); i-- > 0;)
    body = Term::lam(binders[i].atom, binders[i].type, std::move(body));
  return Term::lam(at("b"), Type::ctx_box(ctx, b),
                   Term::let_box(un("X"), Term::atom(at("b")), std::move(body)));
}

Term axiom_four_ctx(const std::vector<Type>& ctx, const Type& a) {
  std::vector<Binder> binders = ctx_binders(ctx);
  Term inner = Term::ctx_box(binders, Term::ext(un("X"), id_subst_args(binders)));
  return Term::lam(at("x"), Type::ctx_box(ctx, a),
                   Term::let_box(un("X"), Term::atom(at("x")), Term::box(std::move(inner))));
}

Term axiom_k_ctx(const std::vector<Type>& ctx, const Type& a, const Type& b) {
  std::vector<Binder> binders = ctx_binders(ctx);
  Term applied = Term::app(Term::ext(un("F"), id_subst_args(binders)),
                           Term::ext(un("X"), id_subst_args(binders)));
  return Term::lam(
      at("f"), Type::ctx_box(ctx, Type::arrow(a, b)),
      Term::lam(at("x"), Type::ctx_box(ctx, a),
                Term::let_box(un("F"), Term::atom(at("f")),
                              Term::let_box(un("X"), Term::atom(at("x")),
                                            Term::ctx_box(binders, std::move(applied))))));
}

Term weaken(const std::vector<Type>& g1, const std::vector<Type>& g2, const Type& a) {
  std::vector<Binder> binders = ctx_binders(g1);
  std::vector<Term> args = id_subst_args(binders);
  std::vector<Binder> all = binders;
  for (size_t i = 0; i < g2.size(); ++i)
    all.push_back(Binder{Atom{"h" + std::to_string(i + 1)}, g2[i]});
  std::vector<Type> wide = g1;
  wide.insert(wide.end(), g2.begin(), g2.end());
  return Term::lam(at("z"), Type::ctx_box(g1, a),
                   Term::let_box(un("Z"), Term::atom(at("z")),
                                 Term::ctx_box(all, Term::ext(un("Z"), std::move(args)))));
}

Term contract(const Type& b, const Type& a) {
  return Term::lam(
      at("z"), Type::ctx_box({b, b}, a),
      Term::let_box(un("Z"), Term::atom(at("z")),
                    Term::ctx_box({Binder{at("x"), b}},
                                  Term::ext(un("Z"), {Term::atom(at("x")),
                                                      Term::atom(at("x"))}))));
}

Term exchange(const Type& b, const Type& c, const Type& a) {
  return Term::lam(
      at("z"), Type::ctx_box({b, c}, a),
      Term::let_box(un("Z"), Term::atom(at("z")),
                    Term::ctx_box({Binder{at("y"), c}, Binder{at("x"), b}},
                                  Term::ext(un("Z"), {Term::atom(at("x")),
                                                      Term::atom(at("y"))}))));
}

Term negate_boxed() {
  return Term::lam(at("a"), Type::box(Type::truth()),
                   Term::let_box(un("X"), Term::atom(at("a")),
                                 Term::box(Term::app(Term::constant(ConstKind::Neg),
                                                     ext0("X")))));
}

Term conjoin_boxed() {
  Term body = Term::box(
      Term::app(Term::app(Term::constant(ConstKind::And), ext0("X")), ext0("Y")));
  return Term::lam(
      at("a"), Type::box(Type::truth()),
      Term::lam(at("b"), Type::box(Type::truth()),
                Term::let_box(un("X"), Term::atom(at("a")),
                              Term::let_box(un("Y"), Term::atom(at("b")), std::move(body)))));
}

Term duplicate_conjoin() {
  Term body = Term::box(
      Term::app(Term::app(Term::constant(ConstKind::And), ext0("X")), ext0("X")));
  return Term::lam(at("a"), Type::box(Type::truth()),
                   Term::let_box(un("X"), Term::atom(at("a")), std::move(body)));
}

Term eval_apply(const Type& a, const Type& b) {
  return Term::lam(
      at("a"), Type::box(Type::arrow(a, b)),
      Term::lam(at("b"), a,
                Term::app(Term::let_box(un("X"), Term::atom(at("a")), ext0("X")),
                          Term::atom(at("b")))));
}

namespace {

const Type kNat = Type::nat();

// natrec[R] base (\m:nat. \x:R. step) n
Term nat_recursion(const Type& result, Term base, Term step_body) {
  Term step = Term::lam(at("m"), kNat, Term::lam(at("x"), result, std::move(step_body)));
  Term rec = Term::app(
      Term::app(Term::app(Term::constant(ConstKind::NatRec, result), std::move(base)),
                std::move(step)),
      Term::atom(at("n")));
  return Term::lam(at("n"), kNat, std::move(rec));
}

}  // namespace

Term exp_modal() {
  const Type fun_ty = Type::arrow(kNat, kNat);
  const Type box_fun = Type::box(fun_ty);
  // base: box (\b:nat. 1)
  Term base = Term::box(Term::lam(at("b"), kNat, numeral(1)));
  // step: let box X = x in box (\b:nat. times b (X@() b))
  Term inner = Term::lam(at("b"), kNat,
                         Term::app(Term::app(Term::constant(ConstKind::Times),
                                             Term::atom(at("b"))),
                                   Term::app(ext0("X"), Term::atom(at("b")))));
  Term step_body =
      Term::let_box(un("X"), Term::atom(at("x")), Term::box(std::move(inner)));
  return nat_recursion(box_fun, std::move(base), std::move(step_body));
}

Term exp_contextual() {
  const Type box_ty = Type::ctx_box({kNat}, kNat);
  // base: [b:nat] 1
  Term base = Term::ctx_box({Binder{at("b"), kNat}}, numeral(1));
  // step: let box X = x in [b:nat](times b X@(b))
  Term inner = Term::ctx_box(
      {Binder{at("b"), kNat}},
      Term::app(Term::app(Term::constant(ConstKind::Times), Term::atom(at("b"))),
                Term::ext(un("X"), {Term::atom(at("b"))})));
  Term step_body = Term::let_box(un("X"), Term::atom(at("x")), std::move(inner));
  return nat_recursion(box_ty, std::move(base), std::move(step_body));
}

Term reify_nat() {
  const Type box_nat = Type::box(kNat);
  Term base = Term::box(Term::constant(ConstKind::Zero));
  // step: let box X = x in box (plus X@() 1)
  Term inner = Term::app(Term::app(Term::constant(ConstKind::Plus), ext0("X")), numeral(1));
  Term step_body =
      Term::let_box(un("X"), Term::atom(at("x")), Term::box(std::move(inner)));
  return nat_recursion(box_nat, std::move(base), std::move(step_body));
}

std::vector<Entry> entries() {
  const Type o = Type::truth();
  const Type n = Type::nat();
  const Type n2n = Type::arrow(n, n);

  std::vector<Entry> out;
  auto add = [&out](std::string name, Term t, Type ty, TypeMode mode) {
    out.push_back(Entry{std::move(name), std::move(t), std::move(ty), mode});
  };

  // syntax transformers over boxed truth values
  add("negate_boxed", negate_boxed(), Type::arrow(Type::box(o), Type::box(o)),
      TypeMode::Modal);
  add("conjoin_boxed", conjoin_boxed(),
      Type::arrow(Type::box(o), Type::arrow(Type::box(o), Type::box(o))), TypeMode::Modal);
  add("duplicate_conjoin", duplicate_conjoin(), Type::arrow(Type::box(o), Type::box(o)),
      TypeMode::Modal);

  // modal axioms at sample types
  {
    const std::pair<Type, const char*> samples[] = {{n, "_nat"}, {o, "_o"}, {n2n, "_fn"}};
    for (const auto& [a, suffix] : samples) {
      add(std::string("axiom_t") + suffix, axiom_t(a), Type::arrow(Type::box(a), a),
          TypeMode::Modal);
      add(std::string("axiom_four") + suffix, axiom_four(a),
          Type::arrow(Type::box(a), Type::box(Type::box(a))), TypeMode::Modal);
    }
  }
  add("axiom_k_nat_o", axiom_k(n, o),
      Type::arrow(Type::box(Type::arrow(n, o)),
                  Type::arrow(Type::box(n), Type::box(o))),
      TypeMode::Modal);
  add("eval_apply_nat_nat", eval_apply(n, n),
      Type::arrow(Type::box(n2n), Type::arrow(n, n)), TypeMode::Modal);

  // moving between [A]B and box(A->B)
  add("fun_intro_nat_nat", fun_intro(n, n),
      Type::arrow(Type::ctx_box({n}, n), Type::box(n2n)), TypeMode::Contextual);
  add("fun_elim_nat_nat", fun_elim(n, n),
      Type::arrow(Type::box(n2n), Type::ctx_box({n}, n)), TypeMode::Contextual);

  // unpack schema, contexts of length 0..3
  {
    std::vector<std::vector<Type>> ctxs = {{}, {n}, {n, o}, {n, o, n}};
    for (const auto& ctx : ctxs) {
      Type curried = n;
      for (size_t i = ctx.size(); i-- > 0;) curried = Type::arrow(ctx[i], curried);
      add("unpack_" + std::to_string(ctx.size()), unpack(ctx, n),
          Type::arrow(Type::ctx_box(ctx, n), curried), TypeMode::Contextual);
    }
  }

  // contextual axioms and structural rules
  {
    std::vector<std::vector<Type>> ctxs = {{}, {n}, {n, o}, {o, n, n}};
    for (const auto& ctx : ctxs) {
      std::string suffix = "_" + std::to_string(ctx.size());
      add("axiom_four_ctx" + suffix, axiom_four_ctx(ctx, n),
          Type::arrow(Type::ctx_box(ctx, n), Type::box(Type::ctx_box(ctx, n))),
          TypeMode::Contextual);
      add("axiom_k_ctx" + suffix, axiom_k_ctx(ctx, n, n),
          Type::arrow(Type::ctx_box(ctx, n2n),
                      Type::arrow(Type::ctx_box(ctx, n), Type::ctx_box(ctx, n))),
          TypeMode::Contextual);
    }
    add("weaken_1_2", weaken({n}, {o, n}, n),
        Type::arrow(Type::ctx_box({n}, n), Type::ctx_box({n, o, n}, n)),
        TypeMode::Contextual);
    add("contract_nat", contract(n, n),
        Type::arrow(Type::ctx_box({n, n}, n), Type::ctx_box({n}, n)), TypeMode::Contextual);
    add("exchange_nat_o", exchange(n, o, n),
        Type::arrow(Type::ctx_box({n, o}, n), Type::ctx_box({o, n}, n)),
        TypeMode::Contextual);
  }

  // staged arithmetic
  add("exp_modal", exp_modal(), Type::arrow(n, Type::box(n2n)), TypeMode::Modal);
  add("exp_contextual", exp_contextual(), Type::arrow(n, Type::ctx_box({n}, n)),
      TypeMode::Contextual);
  add("reify_nat", reify_nat(), Type::arrow(n, Type::box(n)), TypeMode::Modal);

  // the worked let-box denotation
  add("letbox_double_quote",
      Term::let_box(un("X"),
                    Term::box(Term::app(Term::app(Term::constant(ConstKind::Plus), numeral(1)),
                                        numeral(2))),
                    Term::box(Term::box(ext0("X")))),
      Type::box(Type::box(n)), TypeMode::Modal);

  return out;
}

ProbeBudget default_probe_budget() {
  ProbeBudget budget;
  const Type o = Type::truth();
  const Type n = Type::nat();

  auto put = [&budget](const Type& ty, Term t) { budget.probe_corpus[ty].push_back(std::move(t)); };

  // closed boxes at the base box types
  put(Type::box(n), Term::box(numeral(0)));
  put(Type::box(n), Term::box(Term::app(Term::app(Term::constant(ConstKind::Plus), numeral(1)),
                                        numeral(2))));
  put(Type::box(o), Term::box(Term::constant(ConstKind::Top)));
  put(Type::box(o), Term::box(Term::app(Term::constant(ConstKind::Neg),
                                        Term::constant(ConstKind::Bot))));

  // closed functions on naturals
  const Type n2n = Type::arrow(n, n);
  put(n2n, Term::constant(ConstKind::Succ));
  put(n2n, Term::lam(Atom{"v"}, n,
                     Term::app(Term::app(Term::constant(ConstKind::Times), Term::atom(Atom{"v"})),
                               Term::atom(Atom{"v"}))));
  put(n2n, Term::lam(Atom{"v"}, n, numeral(1)));

  // boolean functions
  put(Type::arrow(o, o), Term::constant(ConstKind::Neg));
  put(Type::arrow(o, o), Term::lam(Atom{"v"}, o, Term::atom(Atom{"v"})));

  // boxed function syntax
  put(Type::box(n2n), Term::box(Term::constant(ConstKind::Succ)));
  put(Type::ctx_box({n}, n),
      Term::ctx_box({Binder{Atom{"v"}, n}},
                    Term::app(Term::constant(ConstKind::Succ), Term::atom(Atom{"v"}))));

  return budget;
}

// ---------------------------------------------------------------------------
// Golden checks

namespace {

struct GoldenRun {
  std::vector<GoldenResult> results;

  void check(const std::string& name, bool ok, const std::string& detail = "") {
    results.push_back(GoldenResult{name, ok, ok ? "" : detail});
  }

  void run(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      check(name + " (threw)", false, e.what());
    }
  }
};

Den apply_to(const Term& fun, uint64_t n) {
  return eval(Valuation{}, Term::app(fun, numeral(n)));
}

}  // namespace

std::vector<GoldenResult> golden_checks() {
  GoldenRun g;
  const Type n = Type::nat();

  g.run("typecheck-entries", [&] {
    for (const Entry& e : entries()) {
      auto ty = typecheck_opt(TypingCtx{}, e.term, e.mode);
      g.check("typecheck " + e.name, ty.has_value() && *ty == e.type,
              ty ? "synthesized " + print_type(*ty) + ", declared " + print_type(e.type)
                 : "does not typecheck");
    }
  });

  g.run("letbox-double-quote", [&] {
    Term t = parse_term("let box X = box (plus 1 2) in box box X@()");
    Den d = eval(Valuation{}, t);
    Term expect_outer = parse_term("box box (plus 1 2)");
    Term expect_inner = parse_term("box (plus 1 2)");
    bool ok = d.kind() == Den::Kind::Box && alpha_eq(d.head(), expect_outer);
    if (ok) {
      const Den& inner = d.tail_value();
      ok = inner.kind() == Den::Kind::Box && alpha_eq(inner.head(), expect_inner) &&
           inner.tail_value().kind() == Den::Kind::Nat &&
           inner.tail_value().nat_value() == BigNat(3);
    }
    g.check("letbox-double-quote", ok, "got " + print_den(d));
  });

  g.run("exp-modal-2", [&] {
    Den d = apply_to(exp_modal(), 2);
    Term expected_head = parse_term(
        "box (\\b:nat. times b ((\\b:nat. times b ((\\b:nat. 1) b)) b))");
    g.check("exp-modal-2 head", alpha_eq(d.head(), expected_head),
            "got " + print_term(d.head()));
    bool squares = true;
    for (uint64_t k = 0; k <= 8; ++k) {
      Den out = d.tail_value().apply(Den::nat(k));
      if (!(out.nat_value() == BigNat(k * k))) squares = false;
    }
    g.check("exp-modal-2 tail squares", squares);
    NormalizeReport nr = normalize(Term::app(exp_modal(), numeral(2)));
    g.check("exp-modal-2 normal form",
            nr.status == NormalizeReport::Status::Normal && alpha_eq(nr.result, expected_head),
            "got " + print_term(nr.result));
  });

  g.run("exp-contextual-2", [&] {
    Den d = apply_to(exp_contextual(), 2);
    Term expected_head = parse_term("[b:nat](times b (times b 1))");
    g.check("exp-contextual-2 head", alpha_eq(d.head(), expected_head),
            "got " + print_term(d.head()));
    bool squares = true;
    for (uint64_t k = 0; k <= 8; ++k) {
      Den out = d.tail_apply({Den::nat(k)});
      if (!(out.nat_value() == BigNat(k * k))) squares = false;
    }
    g.check("exp-contextual-2 tail squares", squares);
    bool no_beta = true;
    for (const StepOutcome& s : step_all(d.head().box_body()))
      if (s.rule == "beta") no_beta = false;
    g.check("exp-contextual-2 head beta-free", no_beta);
  });

  g.run("reify-nat", [&] {
    bool ok = true;
    std::string detail;
    for (uint64_t k = 0; k <= 20 && ok; ++k) {
      Den d = apply_to(reify_nat(), k);
      if (!(d.tail_value().nat_value() == BigNat(k))) {
        ok = false;
        detail = "tail at " + std::to_string(k);
        break;
      }
      NormalizeReport nr = normalize(d.head().box_body());
      auto value = numeral_value(nr.result);
      if (!value || *value != k) {
        ok = false;
        detail = "head normal form at " + std::to_string(k);
      }
    }
    g.check("reify-nat 0..20", ok, detail);
  });

  g.run("axiom-t-4-behavior", [&] {
    // T maps box r :: d to d; 4 maps box r :: d to box box r :: box r :: d
    Den t_den = eval(Valuation{}, axiom_t(n));
    Den four_den = eval(Valuation{}, axiom_four(n));
    bool t_ok = true, four_ok = true;
    for (uint64_t k = 0; k < 20; ++k) {
      Den input = Den::box(Type::box(n), Term::box(numeral(k)), Den::nat(k + 1));
      Den t_out = t_den.apply(input);
      if (!(t_out.nat_value() == BigNat(k + 1))) t_ok = false;
      Den four_out = four_den.apply(input);
      if (!alpha_eq(four_out.head(), Term::box(Term::box(numeral(k))))) four_ok = false;
      const Den& mid = four_out.tail_value();
      if (!alpha_eq(mid.head(), Term::box(numeral(k)))) four_ok = false;
      if (!(mid.tail_value().nat_value() == BigNat(k + 1))) four_ok = false;
    }
    g.check("axiom-t behavior", t_ok);
    g.check("axiom-four behavior", four_ok);
  });

  return g.results;
}

}  // namespace corpus
}  // namespace boxcalc

