#include "boxcalc/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <variant>

namespace boxcalc {

namespace {

const char* kReserved[] = {"let",  "box",  "in",   "def",  "o",   "nat",    "top",
                           "bot",  "isapp", "zero", "succ", "plus", "times", "neg",
                           "and",  "natrec"};

bool ident_tail_ok(const std::string& s) {
  for (size_t i = 1; i < s.size(); ++i) {
    char c = s[i];
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  }
  return true;
}

}  // namespace

bool is_reserved_word(const std::string& s) {
  for (const char* w : kReserved)
    if (s == w) return true;
  return false;
}

bool valid_atom_name(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  return ident_tail_ok(s) && !is_reserved_word(s);
}

bool valid_unknown_name(const std::string& s) {
  if (s.empty() || !std::isupper(static_cast<unsigned char>(s[0]))) return false;
  return ident_tail_ok(s);
}

Atom::Atom(std::string name) : name_(std::move(name)) {
  if (!valid_atom_name(name_)) throw std::invalid_argument("invalid atom name: " + name_);
}

Unknown::Unknown(std::string name) : name_(std::move(name)) {
  if (!valid_unknown_name(name_)) throw std::invalid_argument("invalid unknown name: " + name_);
}

// ---------------------------------------------------------------------------
// Types

struct Type::Node {
  Kind kind;
  std::vector<Type> ctx;  // CtxBox context only
  std::vector<Type> sub;  // Arrow: {dom, cod}; CtxBox: {body}
};

Type Type::truth() {
  static const Type t{std::make_shared<const Node>(Node{Kind::Truth, {}, {}})};
  return t;
}

Type Type::nat() {
  static const Type t{std::make_shared<const Node>(Node{Kind::Nat, {}, {}})};
  return t;
}

Type Type::arrow(Type dom, Type cod) {
  return Type{
      std::make_shared<const Node>(Node{Kind::Arrow, {}, {std::move(dom), std::move(cod)}})};
}

Type Type::ctx_box(std::vector<Type> ctx, Type body) {
  return Type{
      std::make_shared<const Node>(Node{Kind::CtxBox, std::move(ctx), {std::move(body)}})};
}

Type::Kind Type::kind() const { return node_->kind; }

const Type& Type::dom() const { return node_->sub[0]; }
const Type& Type::cod() const { return node_->sub[1]; }

const std::vector<Type>& Type::ctx() const { return node_->ctx; }

const Type& Type::body() const { return node_->sub[0]; }

bool Type::is_modal() const {
  switch (kind()) {
    case Kind::Truth:
    case Kind::Nat:
      return true;
    case Kind::Arrow:
      return dom().is_modal() && cod().is_modal();
    case Kind::CtxBox:
      return node_->ctx.empty() && body().is_modal();
  }
  return false;
}

int Type::compare(const Type& other) const {
  if (node_ == other.node_) return 0;
  if (kind() != other.kind()) return kind() < other.kind() ? -1 : 1;
  const auto cmp_vec = [](const std::vector<Type>& a, const std::vector<Type>& b) -> int {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = 0; i < a.size(); ++i)
      if (int c = a[i].compare(b[i]); c != 0) return c;
    return 0;
  };
  if (int c = cmp_vec(node_->ctx, other.node_->ctx); c != 0) return c;
  return cmp_vec(node_->sub, other.node_->sub);
}

// ---------------------------------------------------------------------------
// Constants

const char* const_name(ConstKind k) {
  switch (k) {
    case ConstKind::Top: return "top";
    case ConstKind::Bot: return "bot";
    case ConstKind::IsApp: return "isapp";
    case ConstKind::Zero: return "zero";
    case ConstKind::Succ: return "succ";
    case ConstKind::Plus: return "plus";
    case ConstKind::Times: return "times";
    case ConstKind::Neg: return "neg";
    case ConstKind::And: return "and";
    case ConstKind::NatRec: return "natrec";
  }
  return "?";
}

std::optional<Type> const_type(ConstKind k, const std::optional<Type>& annot) {
  const Type o = Type::truth();
  const Type n = Type::nat();
  switch (k) {
    case ConstKind::Top:
    case ConstKind::Bot:
      return o;
    case ConstKind::Zero:
      return n;
    case ConstKind::Succ:
      return Type::arrow(n, n);
    case ConstKind::Plus:
    case ConstKind::Times:
      return Type::arrow(n, Type::arrow(n, n));
    case ConstKind::Neg:
      return Type::arrow(o, o);
    case ConstKind::And:
      return Type::arrow(o, Type::arrow(o, o));
    case ConstKind::IsApp:
      if (!annot || !annot->is_box()) return std::nullopt;
      return Type::arrow(*annot, o);
    case ConstKind::NatRec:
      if (!annot) return std::nullopt;
      // A -> (nat -> A -> A) -> nat -> A
      return Type::arrow(*annot, Type::arrow(Type::arrow(n, Type::arrow(*annot, *annot)),
                                             Type::arrow(n, *annot)));
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Terms

struct Term::Node {
  struct ConstData {
    ConstKind kind;
    std::optional<Type> annot;
  };
  struct AtomData {
    Atom a;
  };
  struct LamData {
    Atom binder;
    Type ty;
    Term body;
  };
  struct AppData {
    Term fun;
    Term arg;
  };
  struct CtxBoxData {
    std::vector<Binder> binders;
    Term body;
  };
  struct ExtData {
    Unknown x;
    std::vector<Term> args;
  };
  struct LetBoxData {
    Unknown x;
    Term bound;
    Term body;
  };

  std::variant<ConstData, AtomData, LamData, AppData, CtxBoxData, ExtData, LetBoxData> data;
  Span span;
};

Term Term::constant(ConstKind k, Span span) {
  return Term{std::make_shared<const Node>(Node{Node::ConstData{k, std::nullopt}, span})};
}

Term Term::constant(ConstKind k, Type annot, Span span) {
  if (k != ConstKind::IsApp && k != ConstKind::NatRec)
    throw std::invalid_argument("only isapp and natrec take a type annotation");
  if (k == ConstKind::IsApp && !annot.is_box())
    throw std::invalid_argument("isapp annotation must be a box type");
  return Term{std::make_shared<const Node>(Node{Node::ConstData{k, std::move(annot)}, span})};
}

Term Term::atom(Atom a, Span span) {
  return Term{std::make_shared<const Node>(Node{Node::AtomData{std::move(a)}, span})};
}

Term Term::lam(Atom binder, Type ty, Term body, Span span) {
  return Term{std::make_shared<const Node>(
      Node{Node::LamData{std::move(binder), std::move(ty), std::move(body)}, span})};
}

Term Term::app(Term fun, Term arg, Span span) {
  return Term{
      std::make_shared<const Node>(Node{Node::AppData{std::move(fun), std::move(arg)}, span})};
}

Term Term::ctx_box(std::vector<Binder> binders, Term body, Span span) {
  for (size_t i = 0; i < binders.size(); ++i)
    for (size_t j = i + 1; j < binders.size(); ++j)
      if (binders[i].atom == binders[j].atom)
        throw std::invalid_argument("duplicate binder in contextual box: " +
                                    binders[i].atom.name());
  return Term{std::make_shared<const Node>(
      Node{Node::CtxBoxData{std::move(binders), std::move(body)}, span})};
}

Term Term::ext(Unknown x, std::vector<Term> args, Span span) {
  return Term{
      std::make_shared<const Node>(Node{Node::ExtData{std::move(x), std::move(args)}, span})};
}

Term Term::let_box(Unknown x, Term bound, Term body, Span span) {
  return Term{std::make_shared<const Node>(
      Node{Node::LetBoxData{std::move(x), std::move(bound), std::move(body)}, span})};
}

Term::Kind Term::kind() const {
  return static_cast<Kind>(node_->data.index());
}

Span Term::span() const { return node_->span; }

ConstKind Term::const_kind() const { return std::get<Node::ConstData>(node_->data).kind; }
const std::optional<Type>& Term::const_annot() const {
  return std::get<Node::ConstData>(node_->data).annot;
}
const Atom& Term::atom_name() const { return std::get<Node::AtomData>(node_->data).a; }
const Atom& Term::lam_binder() const { return std::get<Node::LamData>(node_->data).binder; }
const Type& Term::lam_type() const { return std::get<Node::LamData>(node_->data).ty; }
const Term& Term::lam_body() const { return std::get<Node::LamData>(node_->data).body; }
const Term& Term::app_fun() const { return std::get<Node::AppData>(node_->data).fun; }
const Term& Term::app_arg() const { return std::get<Node::AppData>(node_->data).arg; }
const std::vector<Binder>& Term::box_binders() const {
  return std::get<Node::CtxBoxData>(node_->data).binders;
}
const Term& Term::box_body() const { return std::get<Node::CtxBoxData>(node_->data).body; }
const Unknown& Term::ext_unknown() const { return std::get<Node::ExtData>(node_->data).x; }
const std::vector<Term>& Term::ext_args() const {
  return std::get<Node::ExtData>(node_->data).args;
}
const Unknown& Term::letbox_unknown() const { return std::get<Node::LetBoxData>(node_->data).x; }
const Term& Term::letbox_bound() const { return std::get<Node::LetBoxData>(node_->data).bound; }
const Term& Term::letbox_body() const { return std::get<Node::LetBoxData>(node_->data).body; }

Term numeral(uint64_t n) {
  if (n > 10000000) throw ResourceLimitError("numeral too large to materialize as a term");
  Term t = Term::constant(ConstKind::Zero);
  for (uint64_t i = 0; i < n; ++i) t = Term::app(Term::constant(ConstKind::Succ), t);
  return t;
}

std::optional<uint64_t> numeral_value(const Term& t) {
  uint64_t n = 0;
  const Term* cur = &t;
  while (true) {
    if (cur->kind() == Term::Kind::Const && cur->const_kind() == ConstKind::Zero) return n;
    if (cur->kind() == Term::Kind::App && cur->app_fun().kind() == Term::Kind::Const &&
        cur->app_fun().const_kind() == ConstKind::Succ) {
      ++n;
      cur = &cur->app_arg();
      continue;
    }
    return std::nullopt;
  }
}

Term trivial_inhabitant(const Type& ty) {
  switch (ty.kind()) {
    case Type::Kind::Truth:
      return Term::constant(ConstKind::Top);
    case Type::Kind::Nat:
      return Term::constant(ConstKind::Zero);
    case Type::Kind::Arrow: {
      Atom a{"u"};
      return Term::lam(a, ty.dom(), trivial_inhabitant(ty.cod()));
    }
    case Type::Kind::CtxBox: {
      std::vector<Binder> binders;
      int i = 0;
      for (const Type& c : ty.ctx()) binders.push_back(Binder{Atom{"u" + std::to_string(i++)}, c});
      return Term::ctx_box(std::move(binders), trivial_inhabitant(ty.body()));
    }
  }
  throw std::logic_error("trivial_inhabitant: unreachable");
}

// ---------------------------------------------------------------------------
// Free variables

namespace {

void collect_free_atoms(const Term& t, std::set<Atom>& bound_shadow, std::set<Atom>& out) {
  switch (t.kind()) {
    case Term::Kind::Const:
      return;
    case Term::Kind::Atom:
      if (!bound_shadow.count(t.atom_name())) out.insert(t.atom_name());
      return;
    case Term::Kind::Lam: {
      bool inserted = bound_shadow.insert(t.lam_binder()).second;
      collect_free_atoms(t.lam_body(), bound_shadow, out);
      if (inserted) bound_shadow.erase(t.lam_binder());
      return;
    }
    case Term::Kind::App:
      collect_free_atoms(t.app_fun(), bound_shadow, out);
      collect_free_atoms(t.app_arg(), bound_shadow, out);
      return;
    case Term::Kind::CtxBox: {
      std::vector<Atom> inserted;
      for (const Binder& b : t.box_binders())
        if (bound_shadow.insert(b.atom).second) inserted.push_back(b.atom);
      collect_free_atoms(t.box_body(), bound_shadow, out);
      for (const Atom& a : inserted) bound_shadow.erase(a);
      return;
    }
    case Term::Kind::Ext:
      for (const Term& a : t.ext_args()) collect_free_atoms(a, bound_shadow, out);
      return;
    case Term::Kind::LetBox:
      collect_free_atoms(t.letbox_bound(), bound_shadow, out);
      collect_free_atoms(t.letbox_body(), bound_shadow, out);
      return;
  }
}

void collect_free_unknowns(const Term& t, std::set<Unknown>& bound_shadow,
                           std::set<Unknown>& out) {
  switch (t.kind()) {
    case Term::Kind::Const:
    case Term::Kind::Atom:
      return;
    case Term::Kind::Lam:
      collect_free_unknowns(t.lam_body(), bound_shadow, out);
      return;
    case Term::Kind::App:
      collect_free_unknowns(t.app_fun(), bound_shadow, out);
      collect_free_unknowns(t.app_arg(), bound_shadow, out);
      return;
    case Term::Kind::CtxBox:
      collect_free_unknowns(t.box_body(), bound_shadow, out);
      return;
    case Term::Kind::Ext:
      if (!bound_shadow.count(t.ext_unknown())) out.insert(t.ext_unknown());
      for (const Term& a : t.ext_args()) collect_free_unknowns(a, bound_shadow, out);
      return;
    case Term::Kind::LetBox: {
      collect_free_unknowns(t.letbox_bound(), bound_shadow, out);
      bool inserted = bound_shadow.insert(t.letbox_unknown()).second;
      collect_free_unknowns(t.letbox_body(), bound_shadow, out);
      if (inserted) bound_shadow.erase(t.letbox_unknown());
      return;
    }
  }
}

}  // namespace

std::set<Atom> free_atoms(const Term& t) {
  std::set<Atom> shadow, out;
  collect_free_atoms(t, shadow, out);
  return out;
}

std::set<Unknown> free_unknowns(const Term& t) {
  std::set<Unknown> shadow, out;
  collect_free_unknowns(t, shadow, out);
  return out;
}

// ---------------------------------------------------------------------------
// Alpha-equivalence: binders are compared by de Bruijn level.

namespace {

struct AlphaEnv {
  std::unordered_map<std::string, int> left_atoms, right_atoms;
  std::unordered_map<std::string, int> left_unknowns, right_unknowns;
  int next_atom = 0;
  int next_unknown = 0;
};

// Resolve a name to its binding level on one side, or -1 when free.
int resolve(const std::unordered_map<std::string, int>& m, const std::string& name) {
  auto it = m.find(name);
  return it == m.end() ? -1 : it->second;
}

bool alpha_rec(const Term& s, const Term& t, AlphaEnv& env);

bool alpha_with_atom_binders(const Term& sb, const Term& tb,
                             const std::vector<std::pair<std::string, std::string>>& names,
                             AlphaEnv& env) {
  std::vector<std::pair<std::string, std::optional<int>>> saved_left, saved_right;
  for (const auto& [ln, rn] : names) {
    auto put = [](std::unordered_map<std::string, int>& m, const std::string& n, int lvl,
                  std::vector<std::pair<std::string, std::optional<int>>>& saved) {
      auto it = m.find(n);
      saved.emplace_back(n, it == m.end() ? std::nullopt : std::optional<int>(it->second));
      m[n] = lvl;
    };
    int lvl = env.next_atom++;
    put(env.left_atoms, ln, lvl, saved_left);
    put(env.right_atoms, rn, lvl, saved_right);
  }
  bool ok = alpha_rec(sb, tb, env);
  auto restore = [](std::unordered_map<std::string, int>& m,
                    std::vector<std::pair<std::string, std::optional<int>>>& saved) {
    for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
      if (it->second)
        m[it->first] = *it->second;
      else
        m.erase(it->first);
    }
  };
  restore(env.left_atoms, saved_left);
  restore(env.right_atoms, saved_right);
  env.next_atom -= static_cast<int>(names.size());
  return ok;
}

bool alpha_rec(const Term& s, const Term& t, AlphaEnv& env) {
  if (s.kind() != t.kind()) return false;
  switch (s.kind()) {
    case Term::Kind::Const:
      return s.const_kind() == t.const_kind() && s.const_annot() == t.const_annot();
    case Term::Kind::Atom: {
      int ls = resolve(env.left_atoms, s.atom_name().name());
      int lt = resolve(env.right_atoms, t.atom_name().name());
      if (ls != lt) return false;
      if (ls == -1) return s.atom_name() == t.atom_name();
      return true;
    }
    case Term::Kind::Lam:
      if (s.lam_type() != t.lam_type()) return false;
      return alpha_with_atom_binders(s.lam_body(), t.lam_body(),
                                     {{s.lam_binder().name(), t.lam_binder().name()}}, env);
    case Term::Kind::App:
      return alpha_rec(s.app_fun(), t.app_fun(), env) && alpha_rec(s.app_arg(), t.app_arg(), env);
    case Term::Kind::CtxBox: {
      const auto& sb = s.box_binders();
      const auto& tb = t.box_binders();
      if (sb.size() != tb.size()) return false;
      std::vector<std::pair<std::string, std::string>> names;
      for (size_t i = 0; i < sb.size(); ++i) {
        if (sb[i].type != tb[i].type) return false;
        names.emplace_back(sb[i].atom.name(), tb[i].atom.name());
      }
      return alpha_with_atom_binders(s.box_body(), t.box_body(), names, env);
    }
    case Term::Kind::Ext: {
      int ls = resolve(env.left_unknowns, s.ext_unknown().name());
      int lt = resolve(env.right_unknowns, t.ext_unknown().name());
      if (ls != lt) return false;
      if (ls == -1 && !(s.ext_unknown() == t.ext_unknown())) return false;
      const auto& sa = s.ext_args();
      const auto& ta = t.ext_args();
      if (sa.size() != ta.size()) return false;
      for (size_t i = 0; i < sa.size(); ++i)
        if (!alpha_rec(sa[i], ta[i], env)) return false;
      return true;
    }
    case Term::Kind::LetBox: {
      if (!alpha_rec(s.letbox_bound(), t.letbox_bound(), env)) return false;
      const std::string& ln = s.letbox_unknown().name();
      const std::string& rn = t.letbox_unknown().name();
      int lvl = env.next_unknown++;
      auto lit = env.left_unknowns.find(ln);
      auto rit = env.right_unknowns.find(rn);
      std::optional<int> saved_l =
          lit == env.left_unknowns.end() ? std::nullopt : std::optional<int>(lit->second);
      std::optional<int> saved_r =
          rit == env.right_unknowns.end() ? std::nullopt : std::optional<int>(rit->second);
      env.left_unknowns[ln] = lvl;
      env.right_unknowns[rn] = lvl;
      bool ok = alpha_rec(s.letbox_body(), t.letbox_body(), env);
      if (saved_l)
        env.left_unknowns[ln] = *saved_l;
      else
        env.left_unknowns.erase(ln);
      if (saved_r)
        env.right_unknowns[rn] = *saved_r;
      else
        env.right_unknowns.erase(rn);
      --env.next_unknown;
      return ok;
    }
  }
  return false;
}

}  // namespace

bool alpha_eq(const Term& s, const Term& t) {
  if (s.same_node(t)) return true;
  AlphaEnv env;
  return alpha_rec(s, t, env);
}

// ---------------------------------------------------------------------------
// Fresh names

namespace {

std::string name_stem(const std::string& s) {
  size_t end = s.size();
  while (end > 1 && std::isdigit(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(0, end);
}

}  // namespace

Atom fresh_atom(const Atom& base, const std::set<Atom>& avoid) {
  if (!avoid.count(base)) return base;
  std::string stem = name_stem(base.name());
  for (uint64_t k = 1;; ++k) {
    Atom cand{stem + std::to_string(k)};
    if (!avoid.count(cand)) return cand;
  }
}

Unknown fresh_unknown(const Unknown& base, const std::set<Unknown>& avoid) {
  if (!avoid.count(base)) return base;
  std::string stem = name_stem(base.name());
  for (uint64_t k = 1;; ++k) {
    Unknown cand{stem + std::to_string(k)};
    if (!avoid.count(cand)) return cand;
  }
}

// ---------------------------------------------------------------------------
// Typing contexts

TypingCtx TypingCtx::bind(const Atom& a, Type ty) const {
  TypingCtx out = *this;
  out.atoms_[a.name()] = std::move(ty);
  return out;
}

TypingCtx TypingCtx::bind(const Unknown& x, Type ty) const {
  TypingCtx out = *this;
  out.unknowns_[x.name()] = std::move(ty);
  return out;
}

const Type* TypingCtx::find(const Atom& a) const {
  auto it = atoms_.find(a.name());
  return it == atoms_.end() ? nullptr : &it->second;
}

const Type* TypingCtx::find(const Unknown& x) const {
  auto it = unknowns_.find(x.name());
  return it == unknowns_.end() ? nullptr : &it->second;
}

TypingCtx TypingCtx::restricted(const std::set<Atom>& atoms,
                                const std::set<Unknown>& unknowns) const {
  TypingCtx out;
  for (const Atom& a : atoms)
    if (const Type* ty = find(a)) out.atoms_[a.name()] = *ty;
  for (const Unknown& x : unknowns)
    if (const Type* ty = find(x)) out.unknowns_[x.name()] = *ty;
  return out;
}

TypingCtx TypingCtx::atoms_only() const {
  TypingCtx out;
  out.atoms_ = atoms_;
  return out;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_type_rec(std::ostream& os, const Type& ty, bool arrow_needs_parens) {
  switch (ty.kind()) {
    case Type::Kind::Truth:
      os << "o";
      return;
    case Type::Kind::Nat:
      os << "nat";
      return;
    case Type::Kind::Arrow:
      if (arrow_needs_parens) os << "(";
      print_type_rec(os, ty.dom(), true);
      os << " -> ";
      print_type_rec(os, ty.cod(), false);
      if (arrow_needs_parens) os << ")";
      return;
    case Type::Kind::CtxBox: {
      os << "[";
      bool first = true;
      for (const Type& c : ty.ctx()) {
        if (!first) os << ", ";
        first = false;
        print_type_rec(os, c, false);
      }
      os << "]";
      print_type_rec(os, ty.body(), true);
      return;
    }
  }
}

enum class Pos { Top, AppHead, AppArg, BoxBody, LetBound };

void print_term_rec(std::ostream& os, const Term& t, Pos pos);

bool needs_parens(const Term& t, Pos pos) {
  if (numeral_value(t)) return false;
  switch (t.kind()) {
    case Term::Kind::Const:
    case Term::Kind::Atom:
    case Term::Kind::Ext:
      return false;
    case Term::Kind::App:
      return pos == Pos::AppArg || pos == Pos::BoxBody;
    case Term::Kind::Lam:
    case Term::Kind::LetBox:
      return pos != Pos::Top && pos != Pos::LetBound;
    case Term::Kind::CtxBox:
      // box chains print bare in box-body position: "box box X@()"
      return pos == Pos::AppHead || pos == Pos::AppArg;
  }
  return false;
}

void print_term_rec(std::ostream& os, const Term& t, Pos pos) {
  if (auto n = numeral_value(t)) {
    os << *n;
    return;
  }
  bool parens = needs_parens(t, pos);
  if (parens) os << "(";
  switch (t.kind()) {
    case Term::Kind::Const:
      os << const_name(t.const_kind());
      if (t.const_annot()) os << "[" << print_type(*t.const_annot()) << "]";
      break;
    case Term::Kind::Atom:
      os << t.atom_name().name();
      break;
    case Term::Kind::Lam:
      os << "\\" << t.lam_binder().name() << ":" << print_type(t.lam_type()) << ". ";
      print_term_rec(os, t.lam_body(), Pos::Top);
      break;
    case Term::Kind::App:
      print_term_rec(os, t.app_fun(), Pos::AppHead);
      os << " ";
      print_term_rec(os, t.app_arg(), Pos::AppArg);
      break;
    case Term::Kind::CtxBox:
      if (t.box_binders().empty()) {
        os << "box ";
      } else {
        os << "[";
        bool first = true;
        for (const Binder& b : t.box_binders()) {
          if (!first) os << ", ";
          first = false;
          os << b.atom.name() << ":" << print_type(b.type);
        }
        os << "]";
      }
      print_term_rec(os, t.box_body(), Pos::BoxBody);
      break;
    case Term::Kind::Ext: {
      os << t.ext_unknown().name() << "@(";
      bool first = true;
      for (const Term& a : t.ext_args()) {
        if (!first) os << ", ";
        first = false;
        print_term_rec(os, a, Pos::Top);
      }
      os << ")";
      break;
    }
    case Term::Kind::LetBox:
      os << "let box " << t.letbox_unknown().name() << " = ";
      print_term_rec(os, t.letbox_bound(), Pos::LetBound);
      os << " in ";
      print_term_rec(os, t.letbox_body(), Pos::Top);
      break;
  }
  if (parens) os << ")";
}

}  // namespace

std::string print_type(const Type& ty) {
  std::ostringstream os;
  print_type_rec(os, ty, false);
  return os.str();
}

std::string print_term(const Term& t) {
  std::ostringstream os;
  print_term_rec(os, t, Pos::Top);
  return os.str();
}

}  // namespace boxcalc
