#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace boxcalc {

// Source position, 1-based. line == 0 means "no position recorded".
struct Span {
  uint32_t line = 0;
  uint32_t column = 0;
  bool known() const { return line != 0; }
};

bool is_reserved_word(const std::string& s);
bool valid_atom_name(const std::string& s);
bool valid_unknown_name(const std::string& s);

// An engineering bound was hit (a numeral too large to materialize, a
// recursor argument too large to iterate). Distinct from semantic errors:
// the computation is well-defined, just not feasible.
struct ResourceLimitError : std::runtime_error {
  explicit ResourceLimitError(const std::string& what) : std::runtime_error(what) {}
};

// Ordinary lambda-calculus variable. Names are lowercase-leading identifiers,
// lexically disjoint from Unknown names.
class Atom {
public:
  explicit Atom(std::string name);
  const std::string& name() const { return name_; }
  friend bool operator==(const Atom& a, const Atom& b) { return a.name_ == b.name_; }
  friend auto operator<=>(const Atom& a, const Atom& b) { return a.name_ <=> b.name_; }

private:
  std::string name_;
};

// Second-level variable ranging over boxed syntax. Uppercase-leading names.
class Unknown {
public:
  explicit Unknown(std::string name);
  const std::string& name() const { return name_; }
  friend bool operator==(const Unknown& a, const Unknown& b) { return a.name_ == b.name_; }
  friend auto operator<=>(const Unknown& a, const Unknown& b) { return a.name_ <=> b.name_; }

private:
  std::string name_;
};

// Types: o | nat | A -> B | [A1,...,An]A. The modal box type is the n = 0 case.
class Type {
public:
  enum class Kind { Truth, Nat, Arrow, CtxBox };

  Type() : Type(truth()) {}

  static Type truth();
  static Type nat();
  static Type arrow(Type dom, Type cod);
  static Type ctx_box(std::vector<Type> ctx, Type body);
  static Type box(Type body) { return ctx_box({}, std::move(body)); }

  Kind kind() const;
  const Type& dom() const;   // Arrow
  const Type& cod() const;   // Arrow
  const std::vector<Type>& ctx() const;  // CtxBox
  const Type& body() const;              // CtxBox

  bool is_box() const { return kind() == Kind::CtxBox; }
  // True when no contextual box in the type carries a nonempty context.
  bool is_modal() const;

  int compare(const Type& other) const;
  friend bool operator==(const Type& a, const Type& b) { return a.compare(b) == 0; }
  friend bool operator!=(const Type& a, const Type& b) { return a.compare(b) != 0; }
  friend bool operator<(const Type& a, const Type& b) { return a.compare(b) < 0; }

private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

enum class ConstKind { Top, Bot, IsApp, Zero, Succ, Plus, Times, Neg, And, NatRec };

const char* const_name(ConstKind k);

// Type of a constant. IsApp and NatRec are type-schematic: without an
// annotation their type is not determined, and nullopt is returned.
std::optional<Type> const_type(ConstKind k, const std::optional<Type>& annot);

struct Binder {
  Atom atom;
  Type type;
};

// Terms of the unified contextual AST. Modal terms are the fragment where
// every CtxBox has an empty binder list and every Ext an empty argument list.
class Term {
public:
  enum class Kind { Const, Atom, Lam, App, CtxBox, Ext, LetBox };

  static Term constant(ConstKind k, Span span = {});
  static Term constant(ConstKind k, Type annot, Span span = {});
  static Term atom(Atom a, Span span = {});
  static Term lam(Atom binder, Type ty, Term body, Span span = {});
  static Term app(Term fun, Term arg, Span span = {});
  // Binder atoms must be pairwise distinct.
  static Term ctx_box(std::vector<Binder> binders, Term body, Span span = {});
  static Term box(Term body, Span span = {}) { return ctx_box({}, std::move(body), span); }
  static Term ext(Unknown x, std::vector<Term> args, Span span = {});
  static Term let_box(Unknown x, Term bound, Term body, Span span = {});

  Kind kind() const;
  Span span() const;

  ConstKind const_kind() const;
  const std::optional<Type>& const_annot() const;
  const Atom& atom_name() const;
  const Atom& lam_binder() const;
  const Type& lam_type() const;
  const Term& lam_body() const;
  const Term& app_fun() const;
  const Term& app_arg() const;
  const std::vector<Binder>& box_binders() const;
  const Term& box_body() const;
  const Unknown& ext_unknown() const;
  const std::vector<Term>& ext_args() const;
  const Unknown& letbox_unknown() const;
  const Term& letbox_bound() const;
  const Term& letbox_body() const;

  bool same_node(const Term& other) const { return node_ == other.node_; }

private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// succ^n(0)
Term numeral(uint64_t n);
// Value of a full numeral chain; nullopt for anything else.
std::optional<uint64_t> numeral_value(const Term& t);

// A closed term of the given type: top, 0, constant functions, boxes of these.
Term trivial_inhabitant(const Type& ty);

std::set<Atom> free_atoms(const Term& t);
std::set<Unknown> free_unknowns(const Term& t);

bool alpha_eq(const Term& s, const Term& t);

// Least numeric suffix on the base's stem that avoids the given set.
Atom fresh_atom(const Atom& base, const std::set<Atom>& avoid);
Unknown fresh_unknown(const Unknown& base, const std::set<Unknown>& avoid);

// Finite partial map from atoms and unknowns to types. Extension replaces
// any previous binding for the same name.
class TypingCtx {
public:
  TypingCtx() = default;

  TypingCtx bind(const Atom& a, Type ty) const;
  TypingCtx bind(const Unknown& x, Type ty) const;

  const Type* find(const Atom& a) const;
  const Type* find(const Unknown& x) const;

  TypingCtx restricted(const std::set<Atom>& atoms, const std::set<Unknown>& unknowns) const;
  TypingCtx atoms_only() const;

  const std::map<std::string, Type>& atoms() const { return atoms_; }
  const std::map<std::string, Type>& unknowns() const { return unknowns_; }
  bool empty() const { return atoms_.empty() && unknowns_.empty(); }

private:
  std::map<std::string, Type> atoms_;
  std::map<std::string, Type> unknowns_;
};

std::string print_type(const Type& ty);
std::string print_term(const Term& t);

}  // namespace boxcalc
