#include "boxcalc/reduction.hpp"

#include "boxcalc/subst.hpp"

namespace boxcalc {

std::string print_path(const std::vector<std::string>& path) {
  if (path.empty()) return "root";
  std::string out;
  for (size_t i = 0; i < path.size(); ++i) {
    if (i) out += ".";
    out += path[i];
  }
  return out;
}

namespace {

bool is_const(const Term& t, ConstKind k) {
  return t.kind() == Term::Kind::Const && t.const_kind() == k;
}

bool bool_literal(const Term& t, bool& out) {
  if (is_const(t, ConstKind::Top)) {
    out = true;
    return true;
  }
  if (is_const(t, ConstKind::Bot)) {
    out = false;
    return true;
  }
  return false;
}

struct Enumerator {
  std::vector<StepOutcome> out;
  std::vector<std::string> path;

  void emit(const std::string& rule, Term result) {
    out.push_back(StepOutcome{path, rule, std::move(result)});
  }

  // Root-position rules for an application node.
  void root_app_rules(const Term& t) {
    const Term& fun = t.app_fun();
    const Term& arg = t.app_arg();

    if (fun.kind() == Term::Kind::Lam) {
      emit("beta", subst_atoms(fun.lam_body(), AtomSubst::single(fun.lam_binder(), arg)));
      return;
    }

    if (fun.kind() == Term::Kind::Const && arg.kind() == Term::Kind::CtxBox) {
      ConstKind k = fun.const_kind();
      if (k == ConstKind::IsApp) {
        if (arg.box_body().kind() == Term::Kind::App) {
          emit("isapp-top", Term::constant(ConstKind::Top));
        } else if (arg.box_body().kind() != Term::Kind::Ext) {
          // an extraction body has no stable shape: instantiating its
          // unknown may turn it into an application, so neither rule fires
          // until the enclosing let-box substitutes it away
          emit("isapp-bot", Term::constant(ConstKind::Bot));
        }
        return;
      }
    }

    if (fun.kind() == Term::Kind::Const && fun.const_kind() == ConstKind::Neg) {
      bool b;
      if (bool_literal(arg, b))
        emit("delta-neg", Term::constant(b ? ConstKind::Bot : ConstKind::Top));
      return;
    }

    // two-argument heads: plus / times / and
    if (fun.kind() == Term::Kind::App && fun.app_fun().kind() == Term::Kind::Const) {
      ConstKind k = fun.app_fun().const_kind();
      const Term& lhs = fun.app_arg();
      if (k == ConstKind::Plus || k == ConstKind::Times) {
        auto m = numeral_value(lhs);
        auto n = numeral_value(arg);
        if (m && n) {
          if (k == ConstKind::Plus)
            emit("delta-plus", numeral(*m + *n));
          else
            emit("delta-times", numeral(*m * *n));
        }
        return;
      }
      if (k == ConstKind::And) {
        bool b1, b2;
        if (bool_literal(lhs, b1) && bool_literal(arg, b2))
          emit("delta-and", Term::constant(b1 && b2 ? ConstKind::Top : ConstKind::Bot));
        return;
      }
    }

    // natrec z s n with n a numeral value
    if (fun.kind() == Term::Kind::App && fun.app_fun().kind() == Term::Kind::App &&
        is_const(fun.app_fun().app_fun(), ConstKind::NatRec)) {
      if (!numeral_value(arg)) return;
      const Term& z = fun.app_fun().app_arg();
      const Term& s = fun.app_arg();
      if (is_const(arg, ConstKind::Zero)) {
        emit("delta-natrec-zero", z);
      } else {
        const Term& pred = arg.app_arg();
        Term rec = Term::app(fun, pred);  // natrec z s pred
        emit("delta-natrec-succ", Term::app(Term::app(s, pred), std::move(rec)));
      }
      return;
    }
  }

  void root_letbox_rule(const Term& t) {
    if (t.letbox_bound().kind() != Term::Kind::CtxBox) return;
    try {
      UnknownSubst theta = UnknownSubst::single(t.letbox_unknown(), t.letbox_bound());
      emit("beta-box", subst_unknowns(t.letbox_body(), theta));
    } catch (const std::invalid_argument&) {
      // bound box is ill-formed (open body); no step
    } catch (const ArityError&) {
      // ill-typed extraction inside the body; no step
    }
  }

  // Rebuilds the whole term around a reduced child.
  template <typename Rebuild>
  void child(const Term& sub, const char* segment, Rebuild rebuild) {
    path.push_back(segment);
    size_t before = out.size();
    walk(sub);
    for (size_t i = before; i < out.size(); ++i) out[i].result = rebuild(out[i].result);
    path.pop_back();
  }

  void walk(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Const:
      case Term::Kind::Atom:
      case Term::Kind::Ext:
      case Term::Kind::CtxBox:
        // box bodies never reduce
        return;
      case Term::Kind::App:
        root_app_rules(t);
        child(t.app_fun(), "fun", [&](const Term& r) { return Term::app(r, t.app_arg()); });
        child(t.app_arg(), "arg", [&](const Term& r) { return Term::app(t.app_fun(), r); });
        return;
      case Term::Kind::Lam:
        child(t.lam_body(), "body",
              [&](const Term& r) { return Term::lam(t.lam_binder(), t.lam_type(), r); });
        return;
      case Term::Kind::LetBox:
        root_letbox_rule(t);
        child(t.letbox_bound(), "bound", [&](const Term& r) {
          return Term::let_box(t.letbox_unknown(), r, t.letbox_body());
        });
        child(t.letbox_body(), "body", [&](const Term& r) {
          return Term::let_box(t.letbox_unknown(), t.letbox_bound(), r);
        });
        return;
    }
  }
};

}  // namespace

std::vector<StepOutcome> step_all(const Term& t) {
  Enumerator e;
  e.walk(t);
  return e.out;
}

NormalizeReport normalize(const Term& t, uint64_t fuel) {
  NormalizeReport report{t, 0, NormalizeReport::Status::Normal};
  while (true) {
    auto steps = step_all(report.result);
    if (steps.empty()) {
      report.status = NormalizeReport::Status::Normal;
      return report;
    }
    if (report.steps >= fuel) {
      report.status = NormalizeReport::Status::FuelExhausted;
      return report;
    }
    report.result = std::move(steps.front().result);
    ++report.steps;
  }
}

}  // namespace boxcalc
