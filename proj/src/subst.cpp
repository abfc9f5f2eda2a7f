#include "boxcalc/subst.hpp"

#include <algorithm>
#include <functional>

namespace boxcalc {

AtomSubst AtomSubst::single(Atom a, Term image) {
  std::map<Atom, Term> m;
  m.emplace(std::move(a), std::move(image));
  return AtomSubst{std::move(m)};
}

const Term* AtomSubst::find(const Atom& a) const {
  auto it = mapping_.find(a);
  return it == mapping_.end() ? nullptr : &it->second;
}

AtomSubst AtomSubst::extended(Atom a, Term image) const {
  AtomSubst out = *this;
  out.mapping_.insert_or_assign(std::move(a), std::move(image));
  return out;
}

std::set<Atom> AtomSubst::free_atoms() const {
  std::set<Atom> out;
  for (const auto& [a, image] : mapping_) {
    out.insert(a);
    auto fa = boxcalc::free_atoms(image);
    out.insert(fa.begin(), fa.end());
  }
  return out;
}

std::set<Unknown> AtomSubst::image_unknowns() const {
  std::set<Unknown> out;
  for (const auto& [a, image] : mapping_) {
    auto fv = boxcalc::free_unknowns(image);
    out.insert(fv.begin(), fv.end());
  }
  return out;
}

UnknownSubst::UnknownSubst(std::map<Unknown, Term> mapping) : mapping_(std::move(mapping)) {
  for (const auto& [x, image] : mapping_) {
    if (image.kind() != Term::Kind::CtxBox)
      throw std::invalid_argument("unknowns-substitution image for " + x.name() +
                                  " is not a contextual box");
    if (!boxcalc::free_atoms(image).empty())
      throw std::invalid_argument("unknowns-substitution image for " + x.name() +
                                  " has free atoms outside its binders");
  }
}

UnknownSubst UnknownSubst::single(Unknown x, Term image) {
  std::map<Unknown, Term> m;
  m.emplace(std::move(x), std::move(image));
  return UnknownSubst{std::move(m)};
}

const Term* UnknownSubst::find(const Unknown& x) const {
  auto it = mapping_.find(x);
  return it == mapping_.end() ? nullptr : &it->second;
}

std::set<Unknown> UnknownSubst::free_unknowns() const {
  std::set<Unknown> out;
  for (const auto& [x, image] : mapping_) {
    out.insert(x);
    auto fv = boxcalc::free_unknowns(image);
    out.insert(fv.begin(), fv.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Atoms-substitution, capture-avoiding.

namespace {

struct AtomSubstState {
  AtomSubst sigma;
  std::set<Atom> sigma_fa;        // dom ∪ fa(images), kept in sync with sigma
  std::set<Unknown> sigma_fv;     // free unknowns of images
};

Term subst_atoms_rec(const Term& t, const AtomSubstState& st);

// Renames clashing binders and substitutes the body under an extended map.
Term subst_under_atom_binders(const Term& body, std::vector<Binder> binders,
                              const AtomSubstState& st,
                              const std::function<Term(std::vector<Binder>, Term)>& rebuild) {
  bool clash = false;
  for (const Binder& b : binders)
    if (st.sigma_fa.count(b.atom)) clash = true;

  if (!clash) {
    return rebuild(std::move(binders), subst_atoms_rec(body, st));
  }

  std::set<Atom> avoid = st.sigma_fa;
  auto body_fa = free_atoms(body);
  avoid.insert(body_fa.begin(), body_fa.end());
  for (const Binder& b : binders) avoid.insert(b.atom);

  AtomSubstState ext = st;
  for (Binder& b : binders) {
    if (!st.sigma_fa.count(b.atom)) continue;
    Atom fresh = fresh_atom(b.atom, avoid);
    avoid.insert(fresh);
    ext.sigma = ext.sigma.extended(b.atom, Term::atom(fresh));
    ext.sigma_fa.insert(b.atom);
    ext.sigma_fa.insert(fresh);
    b.atom = fresh;
  }
  return rebuild(std::move(binders), subst_atoms_rec(body, ext));
}

Term subst_atoms_rec(const Term& t, const AtomSubstState& st) {
  switch (t.kind()) {
    case Term::Kind::Const:
      return t;
    case Term::Kind::Atom:
      if (const Term* image = st.sigma.find(t.atom_name())) return *image;
      return t;
    case Term::Kind::App: {
      Term fun = subst_atoms_rec(t.app_fun(), st);
      Term arg = subst_atoms_rec(t.app_arg(), st);
      if (fun.same_node(t.app_fun()) && arg.same_node(t.app_arg())) return t;
      return Term::app(std::move(fun), std::move(arg), t.span());
    }
    case Term::Kind::Lam:
      return subst_under_atom_binders(
          t.lam_body(), {Binder{t.lam_binder(), t.lam_type()}}, st,
          [&](std::vector<Binder> bs, Term body) {
            if (bs[0].atom == t.lam_binder() && body.same_node(t.lam_body())) return t;
            return Term::lam(bs[0].atom, bs[0].type, std::move(body), t.span());
          });
    case Term::Kind::CtxBox:
      return subst_under_atom_binders(t.box_body(), t.box_binders(), st,
                                      [&](std::vector<Binder> bs, Term body) {
                                        return Term::ctx_box(std::move(bs), std::move(body),
                                                             t.span());
                                      });
    case Term::Kind::Ext: {
      std::vector<Term> args;
      args.reserve(t.ext_args().size());
      for (const Term& a : t.ext_args()) args.push_back(subst_atoms_rec(a, st));
      return Term::ext(t.ext_unknown(), std::move(args), t.span());
    }
    case Term::Kind::LetBox: {
      Term bound = subst_atoms_rec(t.letbox_bound(), st);
      Unknown binder = t.letbox_unknown();
      Term body = t.letbox_body();
      if (st.sigma_fv.count(binder)) {
        std::set<Unknown> avoid = st.sigma_fv;
        auto body_fv = free_unknowns(body);
        avoid.insert(body_fv.begin(), body_fv.end());
        avoid.insert(binder);
        Unknown fresh = fresh_unknown(binder, avoid);
        body = rename_unknown(body, binder, fresh);
        binder = fresh;
      }
      return Term::let_box(binder, std::move(bound), subst_atoms_rec(body, st), t.span());
    }
  }
  throw std::logic_error("subst_atoms: unreachable");
}

}  // namespace

Term subst_atoms(const Term& t, const AtomSubst& sigma) {
  if (sigma.empty()) return t;
  AtomSubstState st{sigma, sigma.free_atoms(), sigma.image_unknowns()};
  return subst_atoms_rec(t, st);
}

// ---------------------------------------------------------------------------
// Unknowns-substitution. Images are atom-closed, so no atom capture can
// arise; the only renaming needed is of let-box binders against fv(theta).

namespace {

Term subst_unknowns_rec(const Term& t, const UnknownSubst& theta,
                        const std::set<Unknown>& theta_fv) {
  switch (t.kind()) {
    case Term::Kind::Const:
    case Term::Kind::Atom:
      return t;
    case Term::Kind::App: {
      Term fun = subst_unknowns_rec(t.app_fun(), theta, theta_fv);
      Term arg = subst_unknowns_rec(t.app_arg(), theta, theta_fv);
      if (fun.same_node(t.app_fun()) && arg.same_node(t.app_arg())) return t;
      return Term::app(std::move(fun), std::move(arg), t.span());
    }
    case Term::Kind::Lam: {
      Term body = subst_unknowns_rec(t.lam_body(), theta, theta_fv);
      if (body.same_node(t.lam_body())) return t;
      return Term::lam(t.lam_binder(), t.lam_type(), std::move(body), t.span());
    }
    case Term::Kind::CtxBox: {
      Term body = subst_unknowns_rec(t.box_body(), theta, theta_fv);
      if (body.same_node(t.box_body())) return t;
      return Term::ctx_box(t.box_binders(), std::move(body), t.span());
    }
    case Term::Kind::Ext: {
      std::vector<Term> args;
      args.reserve(t.ext_args().size());
      for (const Term& a : t.ext_args()) args.push_back(subst_unknowns_rec(a, theta, theta_fv));
      const Term* image = theta.find(t.ext_unknown());
      if (!image) return Term::ext(t.ext_unknown(), std::move(args), t.span());
      const auto& binders = image->box_binders();
      if (binders.size() != args.size())
        throw ArityError(t.ext_unknown(), binders.size(), args.size());
      std::map<Atom, Term> m;
      for (size_t i = 0; i < binders.size(); ++i) m.insert_or_assign(binders[i].atom, args[i]);
      return subst_atoms(image->box_body(), AtomSubst{std::move(m)});
    }
    case Term::Kind::LetBox: {
      Term bound = subst_unknowns_rec(t.letbox_bound(), theta, theta_fv);
      Unknown binder = t.letbox_unknown();
      Term body = t.letbox_body();
      if (theta_fv.count(binder)) {
        std::set<Unknown> avoid = theta_fv;
        auto body_fv = free_unknowns(body);
        avoid.insert(body_fv.begin(), body_fv.end());
        avoid.insert(binder);
        Unknown fresh = fresh_unknown(binder, avoid);
        body = rename_unknown(body, binder, fresh);
        binder = fresh;
      }
      return Term::let_box(binder, std::move(bound), subst_unknowns_rec(body, theta, theta_fv),
                           t.span());
    }
  }
  throw std::logic_error("subst_unknowns: unreachable");
}

}  // namespace

Term subst_unknowns(const Term& t, const UnknownSubst& theta) {
  if (theta.empty()) return t;
  return subst_unknowns_rec(t, theta, theta.free_unknowns());
}

Term rename_unknown(const Term& t, const Unknown& from, const Unknown& to) {
  switch (t.kind()) {
    case Term::Kind::Const:
    case Term::Kind::Atom:
      return t;
    case Term::Kind::App:
      return Term::app(rename_unknown(t.app_fun(), from, to),
                       rename_unknown(t.app_arg(), from, to), t.span());
    case Term::Kind::Lam:
      return Term::lam(t.lam_binder(), t.lam_type(), rename_unknown(t.lam_body(), from, to),
                       t.span());
    case Term::Kind::CtxBox:
      return Term::ctx_box(t.box_binders(), rename_unknown(t.box_body(), from, to), t.span());
    case Term::Kind::Ext: {
      std::vector<Term> args;
      for (const Term& a : t.ext_args()) args.push_back(rename_unknown(a, from, to));
      Unknown x = t.ext_unknown() == from ? to : t.ext_unknown();
      return Term::ext(std::move(x), std::move(args), t.span());
    }
    case Term::Kind::LetBox: {
      Term bound = rename_unknown(t.letbox_bound(), from, to);
      if (t.letbox_unknown() == from)
        return Term::let_box(t.letbox_unknown(), std::move(bound), t.letbox_body(), t.span());
      return Term::let_box(t.letbox_unknown(), std::move(bound),
                           rename_unknown(t.letbox_body(), from, to), t.span());
    }
  }
  throw std::logic_error("rename_unknown: unreachable");
}

}  // namespace boxcalc
