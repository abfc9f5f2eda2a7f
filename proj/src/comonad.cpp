#include "boxcalc/comonad.hpp"

namespace boxcalc {

namespace {

// x in [[box box A]]: an arity-0 box whose head is box (box s) and whose
// tail is itself a box value.
void require_double_box(const Den& x, const char* who) {
  if (x.kind() != Den::Kind::Box || x.box_arity() != 0)
    throw ShapeMismatchError(std::string(who) + ": expected an arity-0 box value");
  const Type& ty = x.box_type();
  if (!ty.body().is_box() || !ty.body().ctx().empty())
    throw ShapeMismatchError(std::string(who) + ": expected a doubly-boxed value, got " +
                             print_type(ty));
  if (x.tail_value().kind() != Den::Kind::Box)
    throw ShapeMismatchError(std::string(who) + ": tail is not a box value");
}

Term inner_syntax(const Den& x, const char* who) {
  const Term& head = x.head();  // box (box s)
  if (head.box_body().kind() != Term::Kind::CtxBox)
    throw ShapeMismatchError(std::string(who) + ": head is not doubly boxed");
  return head.box_body().box_body();  // s
}

}  // namespace

Den boxdot_map(const BoxArrow& f, const Type& a, const Type& b, const Den& x) {
  require_double_box(x, "boxdot_map");
  Term s = inner_syntax(x, "boxdot_map");

  Den probe = Den::box(Type::box(a), Term::box(s), eval(Valuation{}, s));
  Den f_probe = f(probe);
  if (f_probe.kind() != Den::Kind::Box)
    throw ShapeMismatchError("boxdot_map: arrow image is not a box value");

  Den f_tail = f(x.tail_value());
  if (f_tail.kind() != Den::Kind::Box)
    throw ShapeMismatchError("boxdot_map: arrow image is not a box value");

  Type bb = Type::box(Type::box(b));
  return Den::box(std::move(bb), Term::box(f_probe.head()), std::move(f_tail));
}

Den counit_delta(const Den& x) {
  require_double_box(x, "counit_delta");
  return x.tail_value();
}

Den comult_epsilon(const Den& x) {
  require_double_box(x, "comult_epsilon");
  Type triple = Type::box(x.box_type());
  return Den::box(std::move(triple), Term::box(x.head()), x);
}

namespace {

struct LawChecker {
  const ProbeBudget& budget;
  LawReport report;

  void check(const std::string& law, size_t probe_index, const Den& got, const Den& want,
             const Type& at) {
    ++report.checks;
    try {
      EqResult eq = den_eq(got, want, at, budget);
      if (eq.verdict == Verdict::Unequal)
        report.failures.push_back({law, probe_index,
                                   "got " + print_den(got) + ", want " + print_den(want)});
    } catch (const ShapeMismatchError& e) {
      report.failures.push_back({law, probe_index, e.what()});
    } catch (const EvalError& e) {
      report.failures.push_back({law, probe_index, e.what()});
    }
  }
};

}  // namespace

LawReport check_comonad_laws(const Type& ty, const std::vector<Den>& probes,
                             const std::vector<NamedArrow>& arrows, const ProbeBudget& budget) {
  LawChecker c{budget, {}};
  c.report.probes = probes.size();

  const Type box_a = Type::box(ty);
  const Type bb = Type::box(box_a);
  const Type bbbb = Type::box(Type::box(bb));

  BoxArrow delta = [](const Den& d) { return counit_delta(d); };
  BoxArrow epsilon = [](const Den& d) { return comult_epsilon(d); };

  for (size_t i = 0; i < probes.size(); ++i) {
    const Den& p = probes[i];

    // counit-left: delta_{box A} . epsilon_A = id
    c.check("counit-left", i, counit_delta(comult_epsilon(p)), p, bb);

    // counit-right: boxdot(delta_A) . epsilon_A = id
    c.check("counit-right", i, boxdot_map(delta, box_a, ty, comult_epsilon(p)), p, bb);

    // coassociativity: boxdot(epsilon_A) . epsilon_A = epsilon_{box A} . epsilon_A
    c.check("coassociativity", i, boxdot_map(epsilon, box_a, bb, comult_epsilon(p)),
            comult_epsilon(comult_epsilon(p)), bbbb);

    // functor identity: boxdot(id) = id
    c.check("functor-identity", i,
            boxdot_map([](const Den& d) { return d; }, ty, ty, p), p, bb);

    for (const NamedArrow& f : arrows) {
      if (f.src != ty) continue;

      // naturality of delta: f . delta_A = delta_B . boxdot f
      c.check("naturality-delta(" + f.name + ")", i, f.fn(counit_delta(p)),
              counit_delta(boxdot_map(f.fn, ty, f.dst, p)), Type::box(f.dst));

      // naturality of epsilon: boxdot(boxdot f) . epsilon_A = epsilon_B . boxdot f
      BoxArrow bf = [&f, &ty](const Den& d) { return boxdot_map(f.fn, ty, f.dst, d); };
      c.check("naturality-epsilon(" + f.name + ")", i,
              boxdot_map(bf, Type::box(ty), Type::box(f.dst), comult_epsilon(p)),
              comult_epsilon(boxdot_map(f.fn, ty, f.dst, p)),
              Type::box(Type::box(Type::box(f.dst))));

      // functor composition: boxdot(g . f) = boxdot g . boxdot f
      for (const NamedArrow& g : arrows) {
        if (!(g.src == f.dst)) continue;
        BoxArrow composed = [&f, &g](const Den& d) { return g.fn(f.fn(d)); };
        c.check("functor-compose(" + g.name + "." + f.name + ")", i,
                boxdot_map(composed, f.src, g.dst, p),
                boxdot_map(g.fn, f.dst, g.dst, boxdot_map(f.fn, f.src, f.dst, p)),
                Type::box(Type::box(g.dst)));
      }
    }
  }
  return c.report;
}

}  // namespace boxcalc
