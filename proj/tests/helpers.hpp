#pragma once

// Shared helpers for the test binaries: random instance construction and
// whole-term binder renaming (used for alpha-invariance properties).

#include <map>
#include <string>

#include "boxcalc/propcheck.hpp"
#include "boxcalc/syntax.hpp"

namespace testutil {

using namespace boxcalc;

inline Term rename_all_binders_rec(const Term& t, std::map<std::string, std::string>& atom_env,
                                   std::map<std::string, std::string>& unk_env, int& counter) {
  switch (t.kind()) {
    case Term::Kind::Const:
      return t;
    case Term::Kind::Atom: {
      auto it = atom_env.find(t.atom_name().name());
      if (it == atom_env.end()) return t;
      return Term::atom(Atom{it->second});
    }
    case Term::Kind::Lam: {
      std::string fresh = "rn" + std::to_string(counter++);
      auto saved = atom_env;
      atom_env[t.lam_binder().name()] = fresh;
      Term body = rename_all_binders_rec(t.lam_body(), atom_env, unk_env, counter);
      atom_env = saved;
      return Term::lam(Atom{fresh}, t.lam_type(), std::move(body));
    }
    case Term::Kind::App:
      return Term::app(rename_all_binders_rec(t.app_fun(), atom_env, unk_env, counter),
                       rename_all_binders_rec(t.app_arg(), atom_env, unk_env, counter));
    case Term::Kind::CtxBox: {
      auto saved = atom_env;
      std::vector<Binder> binders;
      for (const Binder& b : t.box_binders()) {
        std::string fresh = "rn" + std::to_string(counter++);
        atom_env[b.atom.name()] = fresh;
        binders.push_back(Binder{Atom{fresh}, b.type});
      }
      Term body = rename_all_binders_rec(t.box_body(), atom_env, unk_env, counter);
      atom_env = saved;
      return Term::ctx_box(std::move(binders), std::move(body));
    }
    case Term::Kind::Ext: {
      std::vector<Term> args;
      for (const Term& a : t.ext_args())
        args.push_back(rename_all_binders_rec(a, atom_env, unk_env, counter));
      auto it = unk_env.find(t.ext_unknown().name());
      Unknown x = it == unk_env.end() ? t.ext_unknown() : Unknown{it->second};
      return Term::ext(std::move(x), std::move(args));
    }
    case Term::Kind::LetBox: {
      Term bound = rename_all_binders_rec(t.letbox_bound(), atom_env, unk_env, counter);
      std::string fresh = "RN" + std::to_string(counter++);
      auto saved = unk_env;
      unk_env[t.letbox_unknown().name()] = fresh;
      Term body = rename_all_binders_rec(t.letbox_body(), atom_env, unk_env, counter);
      unk_env = saved;
      return Term::let_box(Unknown{fresh}, std::move(bound), std::move(body));
    }
  }
  throw std::logic_error("unreachable");
}

// Renames every binder to a globally fresh name; the result is
// alpha-equivalent to the input.
inline Term rename_all_binders(const Term& t, int counter_start = 0) {
  std::map<std::string, std::string> ae, ue;
  int counter = counter_start;
  return rename_all_binders_rec(t, ae, ue, counter);
}

struct RandomInstance {
  TypingCtx ctx;
  Type type;
  Term term;
};

// A deterministic well-typed instance over a mixed context.
inline RandomInstance random_instance(uint64_t seed, int size = 25,
                                      TypeMode mode = TypeMode::Contextual) {
  propcheck::GenConfig cfg;
  cfg.seed = seed;
  cfg.max_size = size;
  cfg.mode = mode;
  TypingCtx ctx = TypingCtx{}
                      .bind(Atom{"v0"}, Type::nat())
                      .bind(Atom{"v1"}, Type::truth())
                      .bind(Unknown{"U0"}, mode == TypeMode::Modal
                                               ? Type::box(Type::nat())
                                               : Type::ctx_box({Type::nat()}, Type::nat()))
                      .bind(Unknown{"U1"}, Type::box(Type::truth()));
  Type ty = (seed % 4 == 0)   ? Type::nat()
            : (seed % 4 == 1) ? Type::truth()
            : (seed % 4 == 2) ? Type::arrow(Type::nat(), Type::nat())
                              : Type::box(Type::nat());
  return RandomInstance{ctx, ty, propcheck::gen_typed_term(ctx, ty, cfg)};
}

}  // namespace testutil
