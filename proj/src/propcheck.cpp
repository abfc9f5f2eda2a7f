#include "boxcalc/propcheck.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "boxcalc/comonad.hpp"
#include "boxcalc/corpus.hpp"
#include "boxcalc/reduction.hpp"
#include "boxcalc/subst.hpp"

#include "json.hpp"

namespace boxcalc {
namespace propcheck {

namespace {

uint64_t mix_seed(uint64_t seed, uint64_t index) {
  // splitmix64 step over seed ^ golden-ratio-scaled index
  uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

class Gen {
public:
  Gen(uint64_t seed, const GenConfig& cfg) : rng_(seed), cfg_(cfg) {}

  int pick(int n) { return static_cast<int>(rng_() % static_cast<uint64_t>(n)); }
  bool chance(int percent) { return pick(100) < percent; }

  int weight(const char* name, int fallback) const {
    auto it = cfg_.constant_weights.find(name);
    return it == cfg_.constant_weights.end() ? fallback : it->second;
  }

  Type gen_type(int depth) {
    int roll = pick(10);
    if (depth <= 0 || roll < 3) return Type::nat();
    if (roll < 6) return Type::truth();
    if (roll < 8) return Type::arrow(gen_type(depth - 1), gen_type(depth - 1));
    std::vector<Type> ctx;
    if (cfg_.mode == TypeMode::Contextual) {
      int n = pick(3);
      for (int i = 0; i < n; ++i) ctx.push_back(gen_type(depth - 1));
    }
    return Type::ctx_box(std::move(ctx), gen_type(depth - 1));
  }

  Type gen_box_type(int depth) {
    std::vector<Type> ctx;
    if (cfg_.mode == TypeMode::Contextual) {
      int n = pick(3);
      for (int i = 0; i < n; ++i) ctx.push_back(gen_type(depth - 1));
    }
    return Type::ctx_box(std::move(ctx), gen_type(depth - 1));
  }

  TypingCtx gen_ctx() {
    TypingCtx ctx;
    int atoms = pick(4);
    for (int i = 0; i < atoms; ++i)
      ctx = ctx.bind(Atom{"v" + std::to_string(i)}, gen_type(cfg_.type_depth));
    int unknowns = pick(3);
    for (int i = 0; i < unknowns; ++i)
      ctx = ctx.bind(Unknown{"U" + std::to_string(i)}, gen_box_type(cfg_.type_depth));
    return ctx;
  }

  Atom fresh(const TypingCtx& ctx) {
    while (true) {
      Atom a{"w" + std::to_string(fresh_counter_++)};
      if (!ctx.find(a)) return a;
    }
  }

  Unknown fresh_unknown(const TypingCtx& ctx) {
    while (true) {
      Unknown x{"W" + std::to_string(fresh_counter_++)};
      if (!ctx.find(x)) return x;
    }
  }

  // The smallest closed-under-ctx inhabitant; used as the recursion floor.
  Term minimal(const Type& ty) { return trivial_inhabitant(ty); }

  struct Option {
    int weight;
    std::function<Term()> build;
  };

  Term gen_term(const TypingCtx& ctx, const Type& target, int size) {
    if (size <= 1) return gen_leaf(ctx, target);

    std::vector<Option> options;
    auto add = [&options](int w, std::function<Term()> f) {
      if (w > 0) options.push_back({w, std::move(f)});
    };

    // Hyp
    std::vector<Atom> hyp_atoms;
    for (const auto& [name, ty] : ctx.atoms())
      if (ty == target) hyp_atoms.push_back(Atom{name});
    if (!hyp_atoms.empty())
      add(5, [this, hyp_atoms] { return Term::atom(hyp_atoms[pick((int)hyp_atoms.size())]); });

    // Ext
    std::vector<Unknown> ext_unknowns;
    for (const auto& [name, ty] : ctx.unknowns())
      if (ty.is_box() && ty.body() == target) ext_unknowns.push_back(Unknown{name});
    if (!ext_unknowns.empty())
      add(4, [this, &ctx, ext_unknowns, size] {
        Unknown x = ext_unknowns[pick((int)ext_unknowns.size())];
        const Type& ty = *ctx.find(x);
        std::vector<Term> args;
        int arg_budget = std::max(1, (size - 1) / std::max<int>(1, ty.ctx().size()));
        for (const Type& at : ty.ctx()) args.push_back(gen_term(ctx, at, arg_budget));
        return Term::ext(x, std::move(args));
      });

    // Constants and constant-headed applications at the target type
    add_const_options(options, ctx, target, size);

    // ->I
    if (target.kind() == Type::Kind::Arrow)
      add(6, [this, &ctx, &target, size] {
        Atom a = fresh(ctx);
        return Term::lam(a, target.dom(),
                         gen_term(ctx.bind(a, target.dom()), target.cod(), size - 1));
      });

    // []I: the body sees only the new binders and the context's unknowns
    if (target.kind() == Type::Kind::CtxBox)
      add(6, [this, &ctx, &target, size] {
        TypingCtx inner;
        for (const auto& [name, ty] : ctx.unknowns()) inner = inner.bind(Unknown{name}, ty);
        std::vector<Binder> binders;
        for (const Type& bt : target.ctx()) {
          Atom a = fresh(inner);
          binders.push_back(Binder{a, bt});
          inner = inner.bind(a, bt);
        }
        return Term::ctx_box(std::move(binders), gen_term(inner, target.body(), size - 1));
      });

    // []E
    add(3, [this, &ctx, &target, size] {
      Type bty = gen_box_type(cfg_.type_depth);
      Unknown x = fresh_unknown(ctx);
      Term bound = gen_term(ctx, bty, (size - 1) / 2);
      Term body = gen_term(ctx.bind(x, bty), target, (size - 1) / 2);
      return Term::let_box(x, std::move(bound), std::move(body));
    });

    // ->E with a random argument type
    add(3, [this, &ctx, &target, size] {
      Type arg_ty = pick_arg_type(ctx);
      Term fun = gen_term(ctx, Type::arrow(arg_ty, target), (size - 1) / 2);
      Term arg = gen_term(ctx, arg_ty, (size - 1) / 2);
      return Term::app(std::move(fun), std::move(arg));
    });

    if (options.empty()) return minimal(target);
    int total = 0;
    for (const Option& o : options) total += o.weight;
    int roll = pick(total);
    for (const Option& o : options) {
      roll -= o.weight;
      if (roll < 0) return o.build();
    }
    return minimal(target);
  }

private:
  Term gen_leaf(const TypingCtx& ctx, const Type& target) {
    std::vector<Term> choices;
    for (const auto& [name, ty] : ctx.atoms())
      if (ty == target) choices.push_back(Term::atom(Atom{name}));
    if (target.kind() == Type::Kind::Truth) {
      choices.push_back(Term::constant(ConstKind::Top));
      choices.push_back(Term::constant(ConstKind::Bot));
    }
    if (target.kind() == Type::Kind::Nat) choices.push_back(numeral(pick(5)));
    if (choices.empty()) return minimal(target);
    return choices[pick((int)choices.size())];
  }

  Type pick_arg_type(const TypingCtx& ctx) {
    std::vector<Type> pool = {Type::nat(), Type::truth()};
    for (const auto& [name, ty] : ctx.atoms()) pool.push_back(ty);
    return pool[pick((int)pool.size())];
  }

  void add_const_options(std::vector<Option>& options, const TypingCtx& ctx, const Type& target,
                         int size) {
    auto add = [&options](int w, std::function<Term()> f) {
      if (w > 0) options.push_back({w, std::move(f)});
    };
    const Type n = Type::nat();
    const Type o = Type::truth();

    if (target.kind() == Type::Kind::Nat) {
      add(3, [this] { return numeral(pick(5)); });
      add(weight("succ", 2), [this, &ctx, size] {
        return Term::app(Term::constant(ConstKind::Succ),
                         gen_term(ctx, Type::nat(), size - 2));
      });
      add(weight("plus", 2), [this, &ctx, size, n] {
        return Term::app(Term::app(Term::constant(ConstKind::Plus),
                                   gen_term(ctx, n, (size - 2) / 2)),
                         gen_term(ctx, n, (size - 2) / 2));
      });
      add(weight("times", 1), [this, &ctx, size, n] {
        return Term::app(Term::app(Term::constant(ConstKind::Times),
                                   gen_term(ctx, n, (size - 2) / 2)),
                         gen_term(ctx, n, (size - 2) / 2));
      });
    }
    if (target.kind() == Type::Kind::Truth) {
      add(2, [this] { return Term::constant(pick(2) ? ConstKind::Top : ConstKind::Bot); });
      add(weight("neg", 1), [this, &ctx, size, o] {
        return Term::app(Term::constant(ConstKind::Neg), gen_term(ctx, o, size - 2));
      });
      add(weight("and", 1), [this, &ctx, size, o] {
        return Term::app(Term::app(Term::constant(ConstKind::And),
                                   gen_term(ctx, o, (size - 2) / 2)),
                         gen_term(ctx, o, (size - 2) / 2));
      });
      add(weight("isapp", 1), [this, &ctx, size] {
        Type bty = gen_box_type(cfg_.type_depth);
        return Term::app(Term::constant(ConstKind::IsApp, bty),
                         gen_term(ctx, bty, size - 2));
      });
    }
    add(weight("natrec", 1), [this, &ctx, &target, size] {
      const Type nt = Type::nat();
      Term z = gen_term(ctx, target, (size - 2) / 3);
      Term s = gen_term(ctx, Type::arrow(nt, Type::arrow(target, target)), (size - 2) / 3);
      Term count = gen_term(ctx, nt, std::min(4, (size - 2) / 3));
      return Term::app(
          Term::app(Term::app(Term::constant(ConstKind::NatRec, target), std::move(z)),
                    std::move(s)),
          std::move(count));
    });
  }

  std::mt19937_64 rng_;
  const GenConfig& cfg_;
  int fresh_counter_ = 0;
};

}  // namespace

Term gen_typed_term(const TypingCtx& ctx, const Type& target, const GenConfig& cfg) {
  Gen gen(cfg.seed, cfg);
  Term t = gen.gen_term(ctx, target, cfg.max_size);
  auto check = typecheck_opt(ctx, t, cfg.mode);
  if (!check || *check != target)
    throw GenExhausted("generated term fails its own typecheck: " + print_term(t));
  return t;
}

namespace {

Den shapely_value_for(Gen& gen, const Type& ty, const GenConfig& cfg) {
  Term t = gen.gen_term(TypingCtx{}, ty, std::max(4, cfg.max_size / 4));
  return eval(Valuation{}, t);
}

Valuation gen_valuation_with(Gen& gen, const TypingCtx& ctx, const GenConfig& cfg) {
  Valuation v;
  for (const auto& [name, ty] : ctx.atoms())
    v = v.with(Atom{name}, shapely_value_for(gen, ty, cfg));
  for (const auto& [name, ty] : ctx.unknowns())
    v = v.with(Unknown{name}, shapely_value_for(gen, ty, cfg));
  return v;
}

// Inflation: pair one generated box's head with another's tail.
Den perturbed_box_value(Gen& gen, const Type& ty, const GenConfig& cfg) {
  Den d1 = shapely_value_for(gen, ty, cfg);
  Den d2 = shapely_value_for(gen, ty, cfg);
  if (ty.ctx().empty()) return Den::box(ty, d1.head(), d2.tail_value());
  return Den::box(ty, d1.head(),
                  [d2](const std::vector<Den>& args) { return d2.tail_apply(args); });
}

Valuation gen_perturbed_valuation(Gen& gen, const TypingCtx& ctx, const GenConfig& cfg) {
  Valuation v;
  for (const auto& [name, ty] : ctx.atoms()) {
    if (ty.is_box() && gen.chance(70))
      v = v.with(Atom{name}, perturbed_box_value(gen, ty, cfg));
    else
      v = v.with(Atom{name}, shapely_value_for(gen, ty, cfg));
  }
  for (const auto& [name, ty] : ctx.unknowns()) {
    if (gen.chance(70))
      v = v.with(Unknown{name}, perturbed_box_value(gen, ty, cfg));
    else
      v = v.with(Unknown{name}, shapely_value_for(gen, ty, cfg));
  }
  return v;
}

}  // namespace

Valuation gen_valuation(const TypingCtx& ctx, const GenConfig& cfg) {
  Gen gen(cfg.seed, cfg);
  Valuation v = gen_valuation_with(gen, ctx, cfg);
  if (!check_valuation(ctx, v)) throw GenExhausted("generated valuation fails its check");
  return v;
}

// ---------------------------------------------------------------------------
// Shrinking: replace subterms by minimal terms of the same type while the
// property keeps failing.

namespace {

// Proposes whole-term candidates with the node at each position replaced by
// one of its own children or by a constant leaf. Type-incorrect candidates
// are filtered by the caller.
void collect_shrinks(const Term& t, const std::function<Term(const Term&)>& rebuild,
                     std::vector<Term>& out) {
  auto propose = [&](const Term& replacement) { out.push_back(rebuild(replacement)); };
  propose(Term::constant(ConstKind::Top));
  propose(Term::constant(ConstKind::Zero));
  switch (t.kind()) {
    case Term::Kind::Const:
    case Term::Kind::Atom:
      return;
    case Term::Kind::App:
      propose(t.app_fun());
      propose(t.app_arg());
      collect_shrinks(t.app_fun(),
                      [&](const Term& r) { return rebuild(Term::app(r, t.app_arg())); }, out);
      collect_shrinks(t.app_arg(),
                      [&](const Term& r) { return rebuild(Term::app(t.app_fun(), r)); }, out);
      return;
    case Term::Kind::Lam:
      collect_shrinks(
          t.lam_body(),
          [&](const Term& r) { return rebuild(Term::lam(t.lam_binder(), t.lam_type(), r)); },
          out);
      return;
    case Term::Kind::CtxBox:
      collect_shrinks(
          t.box_body(),
          [&](const Term& r) { return rebuild(Term::ctx_box(t.box_binders(), r)); }, out);
      return;
    case Term::Kind::Ext:
      return;
    case Term::Kind::LetBox:
      propose(t.letbox_body());
      collect_shrinks(t.letbox_bound(),
                      [&](const Term& r) {
                        return rebuild(Term::let_box(t.letbox_unknown(), r, t.letbox_body()));
                      },
                      out);
      collect_shrinks(t.letbox_body(),
                      [&](const Term& r) {
                        return rebuild(Term::let_box(t.letbox_unknown(), t.letbox_bound(), r));
                      },
                      out);
      return;
  }
}

size_t term_size(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Const:
    case Term::Kind::Atom:
      return 1;
    case Term::Kind::App:
      return 1 + term_size(t.app_fun()) + term_size(t.app_arg());
    case Term::Kind::Lam:
      return 1 + term_size(t.lam_body());
    case Term::Kind::CtxBox:
      return 1 + term_size(t.box_body());
    case Term::Kind::Ext: {
      size_t s = 1;
      for (const Term& a : t.ext_args()) s += term_size(a);
      return s;
    }
    case Term::Kind::LetBox:
      return 1 + term_size(t.letbox_bound()) + term_size(t.letbox_body());
  }
  return 1;
}

// pred(t) is true when the property FAILS on t.
Term shrink_term(Term t, const TypingCtx& ctx, TypeMode mode,
                 const std::function<bool(const Term&)>& pred) {
  int attempts = 0;
  bool improved = true;
  Type target;
  if (auto ty = typecheck_opt(ctx, t, mode))
    target = *ty;
  else
    return t;
  while (improved && attempts < 200) {
    improved = false;
    std::vector<Term> raw;
    collect_shrinks(t, [](const Term& r) { return r; }, raw);
    // also try replacing the whole term
    raw.push_back(trivial_inhabitant(target));
    for (const Term& cand : raw) {
      if (attempts >= 200) break;
      if (term_size(cand) >= term_size(t)) continue;
      auto ty = typecheck_opt(ctx, cand, mode);
      if (!ty || *ty != target) continue;
      ++attempts;
      if (pred(cand)) {
        t = cand;
        improved = true;
        break;
      }
    }
  }
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// Suites

namespace {

struct CaseCtx {
  Gen gen;
  GenConfig cfg;
  uint64_t case_seed;
  ProbeBudget budget;
};

using SuiteFn = std::function<void(CaseCtx&, PropReport&)>;

void record(PropReport& report, CaseCtx& cc, const Term& t, const std::string& property,
            const std::function<bool(const Term&)>& still_fails, const TypingCtx& ctx) {
  Term shrunk = t;
  if (still_fails) {
    try {
      shrunk = shrink_term(t, ctx, cc.cfg.mode, still_fails);
    } catch (const std::exception&) {
      shrunk = t;
    }
  }
  report.failures.push_back(PropFailure{cc.case_seed, print_term(shrunk), property});
}

// Generates the standard instance: a context, a target type, and a term.
struct Instance {
  TypingCtx ctx;
  Type type;
  Term term;
};

Instance gen_instance(CaseCtx& cc, bool closed = false) {
  TypingCtx ctx = closed ? TypingCtx{} : cc.gen.gen_ctx();
  Type ty = cc.gen.gen_type(cc.cfg.type_depth);
  Term t = cc.gen.gen_term(ctx, ty, cc.cfg.max_size);
  return Instance{std::move(ctx), std::move(ty), std::move(t)};
}

bool generator_sound(CaseCtx& cc, const Instance& inst, PropReport& report) {
  auto ty = typecheck_opt(inst.ctx, inst.term, cc.cfg.mode);
  if (ty && *ty == inst.type) return true;
  report.failures.push_back(PropFailure{cc.case_seed, print_term(inst.term),
                                        "generated term does not typecheck at its target type"});
  return false;
}

void suite_weakening(CaseCtx& cc, PropReport& report) {
  Instance inst = gen_instance(cc);
  if (!generator_sound(cc, inst, report)) return;
  auto fa = free_atoms(inst.term);
  auto fv = free_unknowns(inst.term);
  // drop irrelevant bindings
  TypingCtx narrowed = inst.ctx.restricted(fa, fv);
  // and add fresh irrelevant ones
  TypingCtx widened = narrowed;
  int extra = cc.gen.pick(3);
  for (int i = 0; i < extra; ++i)
    widened = widened.bind(Atom{"irr" + std::to_string(i)}, cc.gen.gen_type(cc.cfg.type_depth));
  widened = widened.bind(Unknown{"Irr"}, cc.gen.gen_box_type(cc.cfg.type_depth));

  for (const TypingCtx* ctx2 : {&narrowed, &widened}) {
    auto ty = typecheck_opt(*ctx2, inst.term, cc.cfg.mode);
    if (!ty || *ty != inst.type) {
      record(report, cc, inst.term, "weakening/strengthening changed the synthesized type",
             nullptr, inst.ctx);
      return;
    }
  }
}

AtomSubst gen_atom_subst(CaseCtx& cc, const TypingCtx& ctx) {
  std::map<Atom, Term> m;
  for (const auto& [name, ty] : ctx.atoms())
    if (cc.gen.chance(60))
      m.emplace(Atom{name}, cc.gen.gen_term(ctx, ty, cc.cfg.max_size / 4));
  return AtomSubst{std::move(m)};
}

UnknownSubst gen_unknown_subst(CaseCtx& cc, const TypingCtx& ctx) {
  TypingCtx unknowns_only;
  for (const auto& [name, ty] : ctx.unknowns())
    unknowns_only = unknowns_only.bind(Unknown{name}, ty);
  std::map<Unknown, Term> m;
  for (const auto& [name, ty] : ctx.unknowns()) {
    if (!cc.gen.chance(60)) continue;
    TypingCtx inner = unknowns_only;
    std::vector<Binder> binders;
    int i = 0;
    for (const Type& bt : ty.ctx()) {
      Atom a{"s" + std::to_string(i++)};
      binders.push_back(Binder{a, bt});
      inner = inner.bind(a, bt);
    }
    Term body = cc.gen.gen_term(inner, ty.body(), cc.cfg.max_size / 4);
    m.emplace(Unknown{name}, Term::ctx_box(std::move(binders), std::move(body)));
  }
  return UnknownSubst{std::move(m)};
}

void suite_subst_typing_atoms(CaseCtx& cc, PropReport& report) {
  Instance inst = gen_instance(cc);
  if (!generator_sound(cc, inst, report)) return;
  AtomSubst sigma = gen_atom_subst(cc, inst.ctx);
  if (!check_subst_typing_atoms(inst.ctx, sigma)) {
    record(report, cc, inst.term, "generated atoms-substitution fails its typing judgment",
           nullptr, inst.ctx);
    return;
  }
  Term out = subst_atoms(inst.term, sigma);
  auto ty = typecheck_opt(inst.ctx, out, cc.cfg.mode);
  if (!ty || *ty != inst.type) {
    auto fails = [&](const Term& t2) {
      auto base = typecheck_opt(inst.ctx, t2, cc.cfg.mode);
      if (!base || *base != inst.type) return false;
      auto after = typecheck_opt(inst.ctx, subst_atoms(t2, sigma), cc.cfg.mode);
      return !after || *after != *base;
    };
    record(report, cc, inst.term, "atoms-substitution does not preserve typing", fails,
           inst.ctx);
  }
}

void suite_subst_typing_unknowns(CaseCtx& cc, PropReport& report) {
  Instance inst = gen_instance(cc);
  if (!generator_sound(cc, inst, report)) return;
  UnknownSubst theta = gen_unknown_subst(cc, inst.ctx);
  if (!check_subst_typing_unknowns(inst.ctx, theta)) {
    record(report, cc, inst.term, "generated unknowns-substitution fails its typing judgment",
           nullptr, inst.ctx);
    return;
  }
  Term out = subst_unknowns(inst.term, theta);
  auto ty = typecheck_opt(inst.ctx, out, cc.cfg.mode);
  if (!ty || *ty != inst.type) {
    auto fails = [&](const Term& t2) {
      auto base = typecheck_opt(inst.ctx, t2, cc.cfg.mode);
      if (!base || *base != inst.type) return false;
      auto after = typecheck_opt(inst.ctx, subst_unknowns(t2, theta), cc.cfg.mode);
      return !after || *after != *base;
    };
    record(report, cc, inst.term, "unknowns-substitution does not preserve typing", fails,
           inst.ctx);
  }
}

// In the modal fragment fa(r theta) = fa(r) holds outright. With extraction
// arguments an image that ignores one of its binders drops that argument's
// atoms, so only the inclusion holds in general; equality is still checked
// whenever every image uses all of its binders.
void suite_fa_theta(CaseCtx& cc, PropReport& report) {
  Instance inst = gen_instance(cc);
  if (!generator_sound(cc, inst, report)) return;
  UnknownSubst theta = gen_unknown_subst(cc, inst.ctx);
  bool images_use_all_binders = true;
  for (const auto& [x, image] : theta.mapping()) {
    auto body_fa = free_atoms(image.box_body());
    for (const Binder& b : image.box_binders())
      if (!body_fa.count(b.atom)) images_use_all_binders = false;
  }
  Term out = subst_unknowns(inst.term, theta);
  auto fa_before = free_atoms(inst.term);
  auto fa_after = free_atoms(out);
  bool included =
      std::includes(fa_before.begin(), fa_before.end(), fa_after.begin(), fa_after.end());
  bool must_be_equal = cc.cfg.mode == TypeMode::Modal || images_use_all_binders;
  if (!included || (must_be_equal && fa_after != fa_before)) {
    auto fails = [&](const Term& t2) {
      auto before = free_atoms(t2);
      auto after = free_atoms(subst_unknowns(t2, theta));
      bool inc = std::includes(before.begin(), before.end(), after.begin(), after.end());
      return !inc || (must_be_equal && after != before);
    };
    record(report, cc, inst.term, "unknowns-substitution changed the free atoms", fails,
           inst.ctx);
  }
}

void suite_subject_reduction(CaseCtx& cc, PropReport& report) {
  Instance inst = gen_instance(cc);
  if (!generator_sound(cc, inst, report)) return;
  for (const StepOutcome& step : step_all(inst.term)) {
    auto ty = typecheck_opt(inst.ctx, step.result, cc.cfg.mode);
    if (!ty || *ty != inst.type) {
      auto fails = [&](const Term& t2) {
        auto base = typecheck_opt(inst.ctx, t2, cc.cfg.mode);
        if (!base || *base != inst.type) return false;
        for (const StepOutcome& s2 : step_all(t2)) {
          auto ty2 = typecheck_opt(inst.ctx, s2.result, cc.cfg.mode);
          if (!ty2 || *ty2 != *base) return true;
        }
        return false;
      };
      record(report, cc, inst.term,
             "subject reduction failed via rule " + step.rule + " at " + print_path(step.path),
             fails, inst.ctx);
      return;
    }
  }
}

void suite_soundness(CaseCtx& cc, PropReport& report) {
  Instance inst = gen_instance(cc);
  if (!generator_sound(cc, inst, report)) return;
  Valuation shapely_v = gen_valuation_with(cc.gen, inst.ctx, cc.cfg);
  Valuation inflated_v = gen_perturbed_valuation(cc.gen, inst.ctx, cc.cfg);
  for (const auto& [label, v] :
       {std::pair<const char*, const Valuation*>{"shapely", &shapely_v},
        std::pair<const char*, const Valuation*>{"tail-perturbed", &inflated_v}}) {
    if (!check_valuation(inst.ctx, *v)) {
      record(report, cc, inst.term,
             std::string("generated ") + label + " valuation fails its check", nullptr,
             inst.ctx);
      continue;
    }
    try {
      Den d = eval(*v, inst.term);
      if (!d.shape_matches(inst.type))
        record(report, cc, inst.term,
               std::string("evaluation under a ") + label +
                   " valuation left the type's denotation",
               nullptr, inst.ctx);
    } catch (const ResourceLimitError&) {
      throw;
    } catch (const std::exception& e) {
      const Valuation* vp = v;
      auto fails = [&, vp](const Term& t2) {
        try {
          eval(*vp, t2);
          return false;
        } catch (const std::exception&) {
          return true;
        }
      };
      record(report, cc, inst.term,
             std::string("evaluation under a ") + label + " valuation failed: " + e.what(),
             fails, inst.ctx);
    }
  }
}

void suite_relevance(CaseCtx& cc, PropReport& report) {
  Instance inst = gen_instance(cc);
  if (!generator_sound(cc, inst, report)) return;
  Valuation v1 = gen_valuation_with(cc.gen, inst.ctx, cc.cfg);
  auto fa = free_atoms(inst.term);
  auto fv = free_unknowns(inst.term);
  // regenerate values only at irrelevant names
  Valuation v2 = v1;
  for (const auto& [name, ty] : inst.ctx.atoms())
    if (!fa.count(Atom{name})) v2 = v2.with(Atom{name}, shapely_value_for(cc.gen, ty, cc.cfg));
  for (const auto& [name, ty] : inst.ctx.unknowns())
    if (!fv.count(Unknown{name}))
      v2 = v2.with(Unknown{name}, shapely_value_for(cc.gen, ty, cc.cfg));
  try {
    EqResult eq = den_eq(eval(v1, inst.term), eval(v2, inst.term), inst.type, cc.budget);
    if (eq.unequal())
      record(report, cc, inst.term, "denotation depended on an irrelevant binding", nullptr,
             inst.ctx);
  } catch (const ResourceLimitError&) {
    throw;
  } catch (const std::exception& e) {
    record(report, cc, inst.term, std::string("relevance check errored: ") + e.what(), nullptr,
           inst.ctx);
  }
}

void suite_letbox_clause(CaseCtx& cc, PropReport& report) {
  TypingCtx ctx = cc.gen.gen_ctx();
  Type bty = cc.gen.gen_box_type(cc.cfg.type_depth);
  Type target = cc.gen.gen_type(cc.cfg.type_depth);
  Unknown x = Unknown{"Q"};
  Term bound = cc.gen.gen_term(ctx, bty, cc.cfg.max_size / 2);
  Term body = cc.gen.gen_term(ctx.bind(x, bty), target, cc.cfg.max_size / 2);
  Term t = Term::let_box(x, bound, body);
  Valuation v = gen_valuation_with(cc.gen, ctx, cc.cfg);
  try {
    Den lhs = eval(v, t);
    Den rhs = eval(v.with(x, eval(v, bound)), body);
    EqResult eq = den_eq(lhs, rhs, target, cc.budget);
    if (eq.unequal())
      record(report, cc, t, "let-box clause is not the valuation-extension equation", nullptr,
             ctx);
  } catch (const ResourceLimitError&) {
    throw;
  } catch (const std::exception& e) {
    record(report, cc, t, std::string("let-box clause check errored: ") + e.what(), nullptr,
           ctx);
  }
}

void suite_subst_den_exchange(CaseCtx& cc, PropReport& report) {
  TypingCtx ctx = cc.gen.gen_ctx();
  Valuation v = gen_valuation_with(cc.gen, ctx, cc.cfg);
  Type target = cc.gen.gen_type(cc.cfg.type_depth);

  // atoms: [[ t[a:=s] ]]_v = [[ t ]]_{v[a := [[s]]_v]}
  {
    Atom a{"p0"};
    Type bty = cc.gen.gen_type(cc.cfg.type_depth);
    Term t = cc.gen.gen_term(ctx.bind(a, bty), target, cc.cfg.max_size / 2);
    Term s = cc.gen.gen_term(ctx, bty, cc.cfg.max_size / 2);
    try {
      Den s_den = eval(v, s);
      Den lhs = eval(v, subst_atoms(t, AtomSubst::single(a, s)));
      Den rhs = eval(v.with(a, s_den), t);
      if (den_eq(lhs, rhs, target, cc.budget).unequal())
        record(report, cc, t, "atoms-substitution/denotation exchange failed", nullptr, ctx);
    } catch (const ResourceLimitError&) {
      throw;
    } catch (const std::exception& e) {
      record(report, cc, t, std::string("atoms exchange errored: ") + e.what(), nullptr, ctx);
    }
  }

  // unknowns: [[ t[X:=img] ]]_v = [[ t ]]_{v[X := [[img]]_v]}
  {
    Unknown x{"P"};
    Type bty = cc.gen.gen_box_type(cc.cfg.type_depth);
    Term t = cc.gen.gen_term(ctx.bind(x, bty), target, cc.cfg.max_size / 2);
    TypingCtx unknowns_only;
    for (const auto& [name, ty] : ctx.unknowns())
      unknowns_only = unknowns_only.bind(Unknown{name}, ty);
    std::vector<Binder> binders;
    TypingCtx inner = unknowns_only;
    int i = 0;
    for (const Type& bt2 : bty.ctx()) {
      Atom ba{"q" + std::to_string(i++)};
      binders.push_back(Binder{ba, bt2});
      inner = inner.bind(ba, bt2);
    }
    Term img = Term::ctx_box(binders, cc.gen.gen_term(inner, bty.body(), cc.cfg.max_size / 3));
    try {
      Den img_den = eval(v, img);
      Den lhs = eval(v, subst_unknowns(t, UnknownSubst::single(x, img)));
      Den rhs = eval(v.with(x, img_den), t);
      if (den_eq(lhs, rhs, target, cc.budget).unequal())
        record(report, cc, t, "unknowns-substitution/denotation exchange failed", nullptr, ctx);
    } catch (const ResourceLimitError&) {
      throw;
    } catch (const std::exception& e) {
      record(report, cc, t, std::string("unknowns exchange errored: ") + e.what(), nullptr,
             ctx);
    }
  }
}

void suite_reduction_soundness(CaseCtx& cc, PropReport& report) {
  Instance inst = gen_instance(cc, /*closed=*/true);
  if (!generator_sound(cc, inst, report)) return;
  try {
    Den before = eval(Valuation{}, inst.term);
    for (const StepOutcome& step : step_all(inst.term)) {
      Den after = eval(Valuation{}, step.result);
      if (den_eq(before, after, inst.type, cc.budget).unequal()) {
        record(report, cc, inst.term,
               "reduction via " + step.rule + " at " + print_path(step.path) +
                   " changed the denotation",
               nullptr, inst.ctx);
        return;
      }
    }
  } catch (const ResourceLimitError&) {
    throw;
  } catch (const std::exception& e) {
    record(report, cc, inst.term, std::string("reduction soundness errored: ") + e.what(),
           nullptr, inst.ctx);
  }
}

void suite_shapeliness(CaseCtx& cc, PropReport& report) {
  Instance inst = gen_instance(cc, /*closed=*/true);
  if (!generator_sound(cc, inst, report)) return;
  try {
    ShapeResult r = shapely(eval(Valuation{}, inst.term), inst.type, cc.budget);
    if (r.not_shapely()) {
      auto fails = [&](const Term& t2) {
        try {
          return shapely(eval(Valuation{}, t2), inst.type, cc.budget).not_shapely();
        } catch (const std::exception&) {
          return false;
        }
      };
      record(report, cc, inst.term, "closed well-typed term evaluated to a non-shapely value",
             fails, inst.ctx);
    }
  } catch (const ResourceLimitError&) {
    throw;
  } catch (const std::exception& e) {
    record(report, cc, inst.term, std::string("shapeliness check errored: ") + e.what(),
           nullptr, inst.ctx);
  }
}

void suite_comonad(CaseCtx& cc, PropReport& report) {
  static const std::vector<Type> sample_types = {Type::nat(), Type::truth(),
                                                 Type::arrow(Type::nat(), Type::nat())};
  const Type& ty = sample_types[cc.gen.pick((int)sample_types.size())];
  Term s = cc.gen.gen_term(TypingCtx{}, ty, cc.cfg.max_size / 4);
  Den probe = eval(Valuation{}, Term::box(Term::box(s)));
  // also exercise non-shapely probes: pair the head with another tail
  Term s2 = cc.gen.gen_term(TypingCtx{}, ty, cc.cfg.max_size / 4);
  Den inner = Den::box(Type::box(ty), Term::box(s), eval(Valuation{}, s2));
  Den perturbed = Den::box(Type::box(Type::box(ty)), Term::box(Term::box(s)), inner);

  std::vector<NamedArrow> arrows;
  arrows.push_back(NamedArrow{"id", ty, ty, [](const Den& d) { return d; }});
  Den four = eval(Valuation{}, corpus::axiom_four(ty));
  arrows.push_back(
      NamedArrow{"quote", ty, Type::box(ty), [four](const Den& d) { return four.apply(d); }});

  LawReport laws = check_comonad_laws(ty, {probe, perturbed}, arrows, cc.budget);
  for (const LawFailure& f : laws.failures)
    report.failures.push_back(PropFailure{
        cc.case_seed, print_den(f.probe_index == 0 ? probe : perturbed),
        "comonad law " + f.law + " failed: " + f.detail});
}

const std::map<std::string, SuiteFn>& suites() {
  static const std::map<std::string, SuiteFn> table = {
      {"weakening", suite_weakening},
      {"subst-typing-atoms", suite_subst_typing_atoms},
      {"subst-typing-unknowns", suite_subst_typing_unknowns},
      {"fa-theta", suite_fa_theta},
      {"subject-reduction", suite_subject_reduction},
      {"soundness", suite_soundness},
      {"relevance", suite_relevance},
      {"letbox-clause", suite_letbox_clause},
      {"subst-denotation-exchange", suite_subst_den_exchange},
      {"reduction-soundness", suite_reduction_soundness},
      {"shapeliness", suite_shapeliness},
      {"comonad", suite_comonad},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suites()) out.push_back(name);
    return out;
  }();
  return names;
}

PropReport run_suite(const std::string& name, int cases, const GenConfig& cfg) {
  auto it = suites().find(name);
  if (it == suites().end()) throw std::invalid_argument("unknown suite: " + name);
  PropReport report;
  report.suite = name;
  report.cases = cases;
  ProbeBudget budget = corpus::default_probe_budget();
  for (int i = 0; i < cases; ++i) {
    uint64_t case_seed = mix_seed(cfg.seed, static_cast<uint64_t>(i));
    CaseCtx cc{Gen(case_seed, cfg), cfg, case_seed, budget};
    try {
      it->second(cc, report);
    } catch (const ResourceLimitError&) {
      ++report.resource_skips;
    } catch (const std::exception& e) {
      report.failures.push_back(
          PropFailure{case_seed, "", std::string("suite case threw: ") + e.what()});
    }
  }
  std::sort(report.failures.begin(), report.failures.end(),
            [](const PropFailure& a, const PropFailure& b) { return a.seed < b.seed; });
  return report;
}

PropReport run_shapeliness_injected(int cases, const GenConfig& cfg) {
  PropReport report;
  report.suite = "shapeliness-injected";
  report.cases = cases;
  ProbeBudget budget = corpus::default_probe_budget();
  const Type bad_ty = Type::box(Type::nat());
  const Atom bad{"bad"};
  Den bad_value = Den::box(bad_ty, Term::box(Term::constant(ConstKind::Zero)), Den::nat(1));
  TypingCtx ctx = TypingCtx{}.bind(bad, bad_ty);
  Valuation v = Valuation{}.with(bad, bad_value);
  for (int i = 0; i < cases; ++i) {
    uint64_t case_seed = mix_seed(cfg.seed ^ 0xbadbadbadull, static_cast<uint64_t>(i));
    Gen gen(case_seed, cfg);
    // bias half the cases toward the injected type so the bad binding is used
    Type target = (i % 2 == 0) ? bad_ty : gen.gen_type(cfg.type_depth);
    Term t = gen.gen_term(ctx, target, cfg.max_size);
    try {
      ShapeResult r = shapely(eval(v, t), target, budget);
      if (r.not_shapely())
        report.failures.push_back(
            PropFailure{case_seed, print_term(t), "non-shapely value observed"});
    } catch (const std::exception&) {
      // evaluation errors are not shapeliness failures
    }
  }
  return report;
}

std::string report_to_json(const PropReport& report) {
  nlohmann::json j;
  j["suite"] = report.suite;
  j["cases"] = report.cases;
  j["resource_skips"] = report.resource_skips;
  j["failures"] = nlohmann::json::array();
  for (const PropFailure& f : report.failures)
    j["failures"].push_back({{"seed", f.seed}, {"term", f.term}, {"property", f.property}});
  return j.dump(2);
}

}  // namespace propcheck
}  // namespace boxcalc
