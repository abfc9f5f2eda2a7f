#pragma once

#include <map>
#include <stdexcept>

#include "boxcalc/syntax.hpp"

// Substitutions are applied one shot at a time; there is deliberately no
// composition operation on substitutions themselves.

namespace boxcalc {

// Finite partial map from atoms to terms.
class AtomSubst {
public:
  AtomSubst() = default;
  explicit AtomSubst(std::map<Atom, Term> mapping) : mapping_(std::move(mapping)) {}

  static AtomSubst identity() { return AtomSubst{}; }
  static AtomSubst single(Atom a, Term image);

  const Term* find(const Atom& a) const;
  const std::map<Atom, Term>& mapping() const { return mapping_; }
  bool empty() const { return mapping_.empty(); }

  AtomSubst extended(Atom a, Term image) const;

  // dom together with the free atoms of all images.
  std::set<Atom> free_atoms() const;
  // free unknowns of all images (for let-box capture avoidance).
  std::set<Unknown> image_unknowns() const;

private:
  std::map<Atom, Term> mapping_;
};

// Finite partial map from unknowns to contextual boxes. Every image must be
// a CtxBox whose body's free atoms are covered by its binders; violating
// maps are rejected at construction.
class UnknownSubst {
public:
  UnknownSubst() = default;
  explicit UnknownSubst(std::map<Unknown, Term> mapping);

  static UnknownSubst identity() { return UnknownSubst{}; }
  static UnknownSubst single(Unknown x, Term image);

  const Term* find(const Unknown& x) const;
  const std::map<Unknown, Term>& mapping() const { return mapping_; }
  bool empty() const { return mapping_.empty(); }

  // dom together with the free unknowns of all images.
  std::set<Unknown> free_unknowns() const;

private:
  std::map<Unknown, Term> mapping_;
};

// Extraction supplied n arguments against a box binding m != n atoms.
struct ArityError : std::runtime_error {
  ArityError(const Unknown& x, size_t expected, size_t got)
      : std::runtime_error("extraction arity mismatch on " + x.name() + ": box binds " +
                           std::to_string(expected) + " atoms, " + std::to_string(got) +
                           " arguments supplied") {}
};

Term subst_atoms(const Term& t, const AtomSubst& sigma);

// Throws ArityError on an extraction whose argument count does not match the
// instantiated box (only possible on ill-typed input).
Term subst_unknowns(const Term& t, const UnknownSubst& theta);

// Alpha-conversion helper: renames free occurrences of one unknown.
Term rename_unknown(const Term& t, const Unknown& from, const Unknown& to);

}  // namespace boxcalc
