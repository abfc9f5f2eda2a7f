#pragma once

// Test-only locally-nameless oracle, independent of the library's named
// representation: bound atoms and unknowns become de Bruijn indices, free
// ones remain names. Alpha-equivalence is plain structural equality here,
// and substitution of free names needs no capture analysis at all because
// images are converted with empty binder stacks (their bound structure is
// internal, so nothing can dangle into a capture).

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "boxcalc/syntax.hpp"

namespace nameless {

struct NTerm;
using NP = std::shared_ptr<const NTerm>;

struct NTerm {
  enum class K {
    Const,
    BoundAtom,    // de Bruijn index into the atom stack
    FreeAtom,     // name
    Lam,
    App,
    Box,
    Ext,          // unknown is either a bound index or a free name
    LetBox,
  };
  K k;
  boxcalc::ConstKind ck{};
  std::optional<boxcalc::Type> annot;
  int index = -1;
  std::string name;
  boxcalc::Type ty;
  std::vector<boxcalc::Type> binder_types;  // Box
  NP sub1, sub2;                            // Lam body | App fun,arg | Box body | LetBox bound,body
  std::vector<NP> args;                     // Ext
  bool unknown_bound = false;               // Ext: index vs name
};

inline NP mk(NTerm t) { return std::make_shared<const NTerm>(std::move(t)); }

inline bool equal(const NP& a, const NP& b) {
  if (a->k != b->k) return false;
  switch (a->k) {
    case NTerm::K::Const:
      return a->ck == b->ck && a->annot == b->annot;
    case NTerm::K::BoundAtom:
      return a->index == b->index;
    case NTerm::K::FreeAtom:
      return a->name == b->name;
    case NTerm::K::Lam:
      return a->ty == b->ty && equal(a->sub1, b->sub1);
    case NTerm::K::App:
      return equal(a->sub1, b->sub1) && equal(a->sub2, b->sub2);
    case NTerm::K::Box: {
      if (a->binder_types.size() != b->binder_types.size()) return false;
      for (size_t i = 0; i < a->binder_types.size(); ++i)
        if (a->binder_types[i] != b->binder_types[i]) return false;
      return equal(a->sub1, b->sub1);
    }
    case NTerm::K::Ext: {
      if (a->unknown_bound != b->unknown_bound) return false;
      if (a->unknown_bound ? (a->index != b->index) : (a->name != b->name)) return false;
      if (a->args.size() != b->args.size()) return false;
      for (size_t i = 0; i < a->args.size(); ++i)
        if (!equal(a->args[i], b->args[i])) return false;
      return true;
    }
    case NTerm::K::LetBox:
      return equal(a->sub1, b->sub1) && equal(a->sub2, b->sub2);
  }
  return false;
}

struct ConvertEnv {
  std::vector<std::string> atom_stack;     // innermost last
  std::vector<std::string> unknown_stack;  // innermost last

  std::optional<int> atom_index(const std::string& n) const {
    for (size_t i = atom_stack.size(); i-- > 0;)
      if (atom_stack[i] == n) return static_cast<int>(atom_stack.size() - 1 - i);
    return std::nullopt;
  }
  std::optional<int> unknown_index(const std::string& n) const {
    for (size_t i = unknown_stack.size(); i-- > 0;)
      if (unknown_stack[i] == n) return static_cast<int>(unknown_stack.size() - 1 - i);
    return std::nullopt;
  }
};

inline NP convert(const boxcalc::Term& t, ConvertEnv& env) {
  using boxcalc::Term;
  switch (t.kind()) {
    case Term::Kind::Const: {
      NTerm n{NTerm::K::Const};
      n.ck = t.const_kind();
      n.annot = t.const_annot();
      return mk(std::move(n));
    }
    case Term::Kind::Atom: {
      if (auto idx = env.atom_index(t.atom_name().name())) {
        NTerm n{NTerm::K::BoundAtom};
        n.index = *idx;
        return mk(std::move(n));
      }
      NTerm n{NTerm::K::FreeAtom};
      n.name = t.atom_name().name();
      return mk(std::move(n));
    }
    case Term::Kind::Lam: {
      env.atom_stack.push_back(t.lam_binder().name());
      NTerm n{NTerm::K::Lam};
      n.ty = t.lam_type();
      n.sub1 = convert(t.lam_body(), env);
      env.atom_stack.pop_back();
      return mk(std::move(n));
    }
    case Term::Kind::App: {
      NTerm n{NTerm::K::App};
      n.sub1 = convert(t.app_fun(), env);
      n.sub2 = convert(t.app_arg(), env);
      return mk(std::move(n));
    }
    case Term::Kind::CtxBox: {
      NTerm n{NTerm::K::Box};
      for (const boxcalc::Binder& b : t.box_binders()) {
        n.binder_types.push_back(b.type);
        env.atom_stack.push_back(b.atom.name());
      }
      n.sub1 = convert(t.box_body(), env);
      for (size_t i = 0; i < t.box_binders().size(); ++i) env.atom_stack.pop_back();
      return mk(std::move(n));
    }
    case Term::Kind::Ext: {
      NTerm n{NTerm::K::Ext};
      if (auto idx = env.unknown_index(t.ext_unknown().name())) {
        n.unknown_bound = true;
        n.index = *idx;
      } else {
        n.unknown_bound = false;
        n.name = t.ext_unknown().name();
      }
      for (const boxcalc::Term& a : t.ext_args()) n.args.push_back(convert(a, env));
      return mk(std::move(n));
    }
    case Term::Kind::LetBox: {
      NTerm n{NTerm::K::LetBox};
      n.sub1 = convert(t.letbox_bound(), env);
      env.unknown_stack.push_back(t.letbox_unknown().name());
      n.sub2 = convert(t.letbox_body(), env);
      env.unknown_stack.pop_back();
      return mk(std::move(n));
    }
  }
  throw std::logic_error("nameless convert: unreachable");
}

inline NP convert(const boxcalc::Term& t) {
  ConvertEnv env;
  return convert(t, env);
}

// Simultaneous substitution of free atom names. Images are locally closed
// (converted with empty stacks), so no index shifting or renaming is needed.
inline NP subst_free_atoms(const NP& t, const std::map<std::string, NP>& images) {
  switch (t->k) {
    case NTerm::K::Const:
    case NTerm::K::BoundAtom:
      return t;
    case NTerm::K::FreeAtom: {
      auto it = images.find(t->name);
      return it == images.end() ? t : it->second;
    }
    case NTerm::K::Lam: {
      NTerm n = *t;
      n.sub1 = subst_free_atoms(t->sub1, images);
      return mk(std::move(n));
    }
    case NTerm::K::App: {
      NTerm n = *t;
      n.sub1 = subst_free_atoms(t->sub1, images);
      n.sub2 = subst_free_atoms(t->sub2, images);
      return mk(std::move(n));
    }
    case NTerm::K::Box: {
      NTerm n = *t;
      n.sub1 = subst_free_atoms(t->sub1, images);
      return mk(std::move(n));
    }
    case NTerm::K::Ext: {
      NTerm n = *t;
      n.args.clear();
      for (const NP& a : t->args) n.args.push_back(subst_free_atoms(a, images));
      return mk(std::move(n));
    }
    case NTerm::K::LetBox: {
      NTerm n = *t;
      n.sub1 = subst_free_atoms(t->sub1, images);
      n.sub2 = subst_free_atoms(t->sub2, images);
      return mk(std::move(n));
    }
  }
  throw std::logic_error("nameless subst: unreachable");
}

// Oracle for the library's subst_atoms: convert, substitute names, compare.
inline NP oracle_subst_atoms(const boxcalc::Term& t,
                             const std::map<std::string, boxcalc::Term>& sigma) {
  std::map<std::string, NP> images;
  for (const auto& [name, image] : sigma) images.emplace(name, convert(image));
  return subst_free_atoms(convert(t), images);
}

}  // namespace nameless
