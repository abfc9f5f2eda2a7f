#include "boxcalc/denotation.hpp"

#include <sstream>
#include <variant>

namespace boxcalc {

namespace {

const char* eval_error_name(EvalError::Kind k) {
  switch (k) {
    case EvalError::Kind::UnboundName: return "UnboundName";
    case EvalError::Kind::NotApplicable: return "NotApplicable";
    case EvalError::Kind::NotABox: return "NotABox";
    case EvalError::Kind::ArityMismatch: return "ArityMismatch";
    case EvalError::Kind::MalformedValuation: return "MalformedValuation";
    case EvalError::Kind::MalformedBox: return "MalformedBox";
  }
  return "?";
}

}  // namespace

EvalError::EvalError(Kind kind, const std::string& detail)
    : std::runtime_error(std::string("eval error ") + eval_error_name(kind) + ": " + detail),
      kind(kind) {}

// ---------------------------------------------------------------------------
// Den

struct Den::Node {
  struct BoolData {
    bool b;
  };
  struct NatData {
    BigNat n;
  };
  struct FunData {
    std::function<Den(const Den&)> f;
  };
  struct BoxData {
    Type box_type;
    Term head;
    std::optional<Den> value;                              // arity 0
    std::function<Den(const std::vector<Den>&)> tail_fn;   // arity > 0
  };
  std::variant<BoolData, NatData, FunData, BoxData> data;
};

Den Den::boolean(bool b) {
  return Den{std::make_shared<const Node>(Node{Node::BoolData{b}})};
}

Den Den::nat(BigNat n) {
  return Den{std::make_shared<const Node>(Node{Node::NatData{std::move(n)}})};
}

Den Den::fun(std::function<Den(const Den&)> f) {
  return Den{std::make_shared<const Node>(Node{Node::FunData{std::move(f)}})};
}

namespace {

void validate_box_head(const Type& box_type, const Term& head) {
  if (!box_type.is_box())
    throw EvalError(EvalError::Kind::MalformedBox, "claimed type is not a box type");
  if (head.kind() != Term::Kind::CtxBox)
    throw EvalError(EvalError::Kind::MalformedBox, "head is not a contextual box");
  if (!free_atoms(head).empty() || !free_unknowns(head).empty())
    throw EvalError(EvalError::Kind::MalformedBox, "head is not closed: " + print_term(head));
  auto ty = typecheck_opt(TypingCtx{}, head);
  if (!ty || *ty != box_type)
    throw EvalError(EvalError::Kind::MalformedBox,
                    "head " + print_term(head) + " does not typecheck at " + print_type(box_type));
}

}  // namespace

Den Den::box(Type box_type, Term head, Den tail) {
  validate_box_head(box_type, head);
  if (!box_type.ctx().empty())
    throw EvalError(EvalError::Kind::MalformedBox,
                    "a box with a nonempty context needs a tuple-function tail");
  if (!tail.shape_matches(box_type.body()))
    throw EvalError(EvalError::Kind::MalformedBox,
                    "tail does not inhabit " + print_type(box_type.body()));
  return Den{std::make_shared<const Node>(
      Node{Node::BoxData{std::move(box_type), std::move(head), std::move(tail), nullptr}})};
}

Den Den::box(Type box_type, Term head, std::function<Den(const std::vector<Den>&)> tail) {
  validate_box_head(box_type, head);
  if (box_type.ctx().empty())
    throw EvalError(EvalError::Kind::MalformedBox,
                    "a box with an empty context carries a single value tail");
  return Den{std::make_shared<const Node>(Node{
      Node::BoxData{std::move(box_type), std::move(head), std::nullopt, std::move(tail)}})};
}

Den::Kind Den::kind() const { return static_cast<Kind>(node_->data.index()); }

bool Den::bool_value() const { return std::get<Node::BoolData>(node_->data).b; }
const BigNat& Den::nat_value() const { return std::get<Node::NatData>(node_->data).n; }

Den Den::apply(const Den& arg) const {
  if (kind() != Kind::Fun)
    throw EvalError(EvalError::Kind::NotApplicable, "value " + print_den(*this) +
                                                        " applied to " + print_den(arg));
  return std::get<Node::FunData>(node_->data).f(arg);
}

const Type& Den::box_type() const { return std::get<Node::BoxData>(node_->data).box_type; }
const Term& Den::head() const { return std::get<Node::BoxData>(node_->data).head; }
size_t Den::box_arity() const { return box_type().ctx().size(); }

const Den& Den::tail_value() const {
  const auto& bd = std::get<Node::BoxData>(node_->data);
  if (!bd.value)
    throw EvalError(EvalError::Kind::NotABox, "tail of a box with nonzero arity is a function");
  return *bd.value;
}

Den Den::tail_apply(const std::vector<Den>& args) const {
  const auto& bd = std::get<Node::BoxData>(node_->data);
  if (bd.value) {
    if (!args.empty())
      throw EvalError(EvalError::Kind::ArityMismatch, "arity-0 box tail takes no arguments");
    return *bd.value;
  }
  if (args.size() != box_arity())
    throw EvalError(EvalError::Kind::ArityMismatch,
                    "box tail expects " + std::to_string(box_arity()) + " arguments, got " +
                        std::to_string(args.size()));
  return bd.tail_fn(args);
}

bool Den::shape_matches(const Type& ty) const {
  switch (ty.kind()) {
    case Type::Kind::Truth:
      return kind() == Kind::Bool;
    case Type::Kind::Nat:
      return kind() == Kind::Nat;
    case Type::Kind::Arrow:
      return kind() == Kind::Fun;
    case Type::Kind::CtxBox:
      return kind() == Kind::Box && box_type() == ty;
  }
  return false;
}

std::optional<Term> hd(const Den& x) {
  if (x.kind() != Den::Kind::Box) return std::nullopt;
  return x.head();
}

std::optional<Den> tl(const Den& x) {
  if (x.kind() != Den::Kind::Box || x.box_arity() != 0) return std::nullopt;
  return x.tail_value();
}

// ---------------------------------------------------------------------------
// Valuations

Valuation Valuation::with(const Atom& a, Den d) const {
  Valuation out = *this;
  out.atoms_.insert_or_assign(a.name(), std::move(d));
  return out;
}

Valuation Valuation::with(const Unknown& x, Den d) const {
  Valuation out = *this;
  out.unknowns_.insert_or_assign(x.name(), std::move(d));
  return out;
}

const Den* Valuation::find(const Atom& a) const {
  auto it = atoms_.find(a.name());
  return it == atoms_.end() ? nullptr : &it->second;
}

const Den* Valuation::find(const Unknown& x) const {
  auto it = unknowns_.find(x.name());
  return it == unknowns_.end() ? nullptr : &it->second;
}

UnknownSubst valuation_unknowns(const Valuation& v) {
  std::map<Unknown, Term> m;
  for (const auto& [name, den] : v.unknowns()) {
    if (den.kind() != Den::Kind::Box)
      throw EvalError(EvalError::Kind::MalformedValuation,
                      "unknown " + name + " is bound to a non-box value");
    m.emplace(Unknown{name}, den.head());
  }
  return UnknownSubst{std::move(m)};
}

bool check_valuation(const TypingCtx& ctx, const Valuation& v) {
  if (ctx.atoms().size() != v.atoms().size() || ctx.unknowns().size() != v.unknowns().size())
    return false;
  for (const auto& [name, ty] : ctx.atoms()) {
    auto it = v.atoms().find(name);
    if (it == v.atoms().end() || !it->second.shape_matches(ty)) return false;
  }
  for (const auto& [name, ty] : ctx.unknowns()) {
    auto it = v.unknowns().find(name);
    if (it == v.unknowns().end()) return false;
    const Den& den = it->second;
    if (den.kind() != Den::Kind::Box || !ty.is_box()) return false;
    if (den.box_type() != ty) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

Den nat_unary(BigNat (*op)(const BigNat&)) {
  return Den::fun([op](const Den& a) {
    if (a.kind() != Den::Kind::Nat)
      throw EvalError(EvalError::Kind::NotApplicable, "expected a natural");
    return Den::nat(op(a.nat_value()));
  });
}

Den nat_binary(BigNat (*op)(const BigNat&, const BigNat&)) {
  return Den::fun([op](const Den& a) {
    if (a.kind() != Den::Kind::Nat)
      throw EvalError(EvalError::Kind::NotApplicable, "expected a natural");
    BigNat lhs = a.nat_value();
    return Den::fun([op, lhs](const Den& b) {
      if (b.kind() != Den::Kind::Nat)
        throw EvalError(EvalError::Kind::NotApplicable, "expected a natural");
      return Den::nat(op(lhs, b.nat_value()));
    });
  });
}

// Bounded only by available time: iterating a semantic natural. Guarded so a
// runaway recursion argument fails loudly instead of hanging forever.
constexpr uint64_t kNatRecLimit = 100000000;

Den natrec_den() {
  return Den::fun([](const Den& z) {
    return Den::fun([z](const Den& s) {
      return Den::fun([z, s](const Den& n) {
        if (n.kind() != Den::Kind::Nat)
          throw EvalError(EvalError::Kind::NotApplicable, "expected a natural");
        if (!n.nat_value().fits_u64() || n.nat_value().as_u64() > kNatRecLimit)
          throw ResourceLimitError("natrec: recursion argument too large to iterate");
        uint64_t count = n.nat_value().as_u64();
        Den acc = z;
        for (uint64_t i = 0; i < count; ++i) acc = s.apply(Den::nat(i)).apply(acc);
        return acc;
      });
    });
  });
}

Den isapp_den() {
  return Den::fun([](const Den& a) {
    if (a.kind() != Den::Kind::Box)
      throw EvalError(EvalError::Kind::NotABox, "isapp expects a box value");
    return Den::boolean(a.head().box_body().kind() == Term::Kind::App);
  });
}

Den const_den(ConstKind k) {
  switch (k) {
    case ConstKind::Top:
      return Den::boolean(true);
    case ConstKind::Bot:
      return Den::boolean(false);
    case ConstKind::Zero:
      return Den::nat(0);
    case ConstKind::Succ:
      return nat_unary(+[](const BigNat& n) { return n.succ(); });
    case ConstKind::Plus:
      return nat_binary(+[](const BigNat& a, const BigNat& b) { return a + b; });
    case ConstKind::Times:
      return nat_binary(+[](const BigNat& a, const BigNat& b) { return a * b; });
    case ConstKind::Neg:
      return Den::fun([](const Den& a) {
        if (a.kind() != Den::Kind::Bool)
          throw EvalError(EvalError::Kind::NotApplicable, "expected a truth value");
        return Den::boolean(!a.bool_value());
      });
    case ConstKind::And:
      return Den::fun([](const Den& a) {
        if (a.kind() != Den::Kind::Bool)
          throw EvalError(EvalError::Kind::NotApplicable, "expected a truth value");
        bool lhs = a.bool_value();
        return Den::fun([lhs](const Den& b) {
          if (b.kind() != Den::Kind::Bool)
            throw EvalError(EvalError::Kind::NotApplicable, "expected a truth value");
          return Den::boolean(lhs && b.bool_value());
        });
      });
    case ConstKind::IsApp:
      return isapp_den();
    case ConstKind::NatRec:
      return natrec_den();
  }
  throw std::logic_error("const_den: unreachable");
}

Den eval_rec(const Valuation& v, const Term& t);

Den eval_ctx_box(const Valuation& v, const Term& t) {
  // head: the body with every unknown replaced by the syntax part of its
  // value; tail: the semantic abstraction over the binder denotations.
  Term head_body = subst_unknowns(t.box_body(), valuation_unknowns(v));
  Term head = Term::ctx_box(t.box_binders(), head_body);

  std::vector<Type> ctx_types;
  TypingCtx head_ctx;
  for (const Binder& b : t.box_binders()) {
    ctx_types.push_back(b.type);
    head_ctx = head_ctx.bind(b.atom, b.type);
  }
  Type body_ty;
  try {
    body_ty = typecheck(head_ctx, head_body);
  } catch (const TypeError& e) {
    throw EvalError(EvalError::Kind::MalformedBox,
                    "boxed body does not typecheck: " + std::string(e.what()));
  }
  Type box_ty = Type::ctx_box(std::move(ctx_types), std::move(body_ty));

  if (t.box_binders().empty()) return Den::box(std::move(box_ty), std::move(head), eval_rec(v, t.box_body()));

  std::vector<Binder> binders = t.box_binders();
  Term body = t.box_body();
  return Den::box(std::move(box_ty), std::move(head), [v, binders, body](const std::vector<Den>& xs) {
    Valuation inner = v;
    for (size_t i = 0; i < binders.size(); ++i) inner = inner.with(binders[i].atom, xs[i]);
    return eval_rec(inner, body);
  });
}

Den eval_rec(const Valuation& v, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Const:
      return const_den(t.const_kind());
    case Term::Kind::Atom: {
      if (const Den* d = v.find(t.atom_name())) return *d;
      throw EvalError(EvalError::Kind::UnboundName,
                      "atom " + t.atom_name().name() + " has no value");
    }
    case Term::Kind::Lam: {
      Atom binder = t.lam_binder();
      Term body = t.lam_body();
      return Den::fun([v, binder, body](const Den& x) { return eval_rec(v.with(binder, x), body); });
    }
    case Term::Kind::App:
      return eval_rec(v, t.app_fun()).apply(eval_rec(v, t.app_arg()));
    case Term::Kind::CtxBox:
      return eval_ctx_box(v, t);
    case Term::Kind::Ext: {
      const Den* d = v.find(t.ext_unknown());
      if (!d)
        throw EvalError(EvalError::Kind::UnboundName,
                        "unknown " + t.ext_unknown().name() + " has no value");
      if (d->kind() != Den::Kind::Box)
        throw EvalError(EvalError::Kind::NotABox,
                        "unknown " + t.ext_unknown().name() + " is bound to a non-box value");
      std::vector<Den> args;
      args.reserve(t.ext_args().size());
      for (const Term& a : t.ext_args()) args.push_back(eval_rec(v, a));
      return d->tail_apply(args);
    }
    case Term::Kind::LetBox:
      return eval_rec(v.with(t.letbox_unknown(), eval_rec(v, t.letbox_bound())),
                      t.letbox_body());
  }
  throw std::logic_error("eval: unreachable");
}

}  // namespace

Den eval(const Valuation& v, const Term& t) { return eval_rec(v, t); }

// ---------------------------------------------------------------------------
// Probes and comparison

std::vector<Den> probes_for(const Type& ty, const ProbeBudget& budget) {
  std::vector<Den> out;
  switch (ty.kind()) {
    case Type::Kind::Truth:
      out.push_back(Den::boolean(false));
      out.push_back(Den::boolean(true));
      return out;
    case Type::Kind::Nat:
      for (uint64_t n : budget.nat_probes) out.push_back(Den::nat(n));
      if (out.empty()) out.push_back(Den::nat(0));
      return out;
    case Type::Kind::Arrow:
    case Type::Kind::CtxBox: {
      auto it = budget.probe_corpus.find(ty);
      if (it != budget.probe_corpus.end())
        for (const Term& probe : it->second) out.push_back(eval(Valuation{}, probe));
      if (out.empty()) out.push_back(eval(Valuation{}, trivial_inhabitant(ty)));
      return out;
    }
  }
  return out;
}

namespace {

std::vector<std::vector<Den>> probe_tuples(const std::vector<Type>& types,
                                           const ProbeBudget& budget, size_t cap = 32) {
  std::vector<std::vector<Den>> tuples = {{}};
  for (const Type& ty : types) {
    std::vector<Den> probes = probes_for(ty, budget);
    std::vector<std::vector<Den>> next;
    for (const auto& tup : tuples) {
      for (const Den& p : probes) {
        next.push_back(tup);
        next.back().push_back(p);
        if (next.size() >= cap) break;
      }
      if (next.size() >= cap) break;
    }
    tuples = std::move(next);
  }
  return tuples;
}

EqResult den_eq_rec(const Den& x, const Den& y, const Type& at, const ProbeBudget& budget,
                    int depth) {
  if (!x.shape_matches(at) || !y.shape_matches(at))
    throw ShapeMismatchError("den_eq: values do not match type " + print_type(at));
  switch (at.kind()) {
    case Type::Kind::Truth:
      return {x.bool_value() == y.bool_value() ? Verdict::Equal : Verdict::Unequal, false};
    case Type::Kind::Nat:
      return {x.nat_value() == y.nat_value() ? Verdict::Equal : Verdict::Unequal, false};
    case Type::Kind::Arrow: {
      if (depth <= 0) return {Verdict::Equal, true};
      bool probed = at.dom().kind() != Type::Kind::Truth;
      for (const Den& p : probes_for(at.dom(), budget)) {
        EqResult sub = den_eq_rec(x.apply(p), y.apply(p), at.cod(), budget, depth - 1);
        if (sub.verdict == Verdict::Unequal) return {Verdict::Unequal, false};
        probed = probed || sub.probed;
      }
      return {Verdict::Equal, probed};
    }
    case Type::Kind::CtxBox: {
      if (!alpha_eq(x.head(), y.head())) return {Verdict::Unequal, false};
      if (at.ctx().empty())
        return den_eq_rec(x.tail_value(), y.tail_value(), at.body(), budget, depth);
      if (depth <= 0) return {Verdict::Equal, true};
      bool probed = true;
      for (const auto& tup : probe_tuples(at.ctx(), budget)) {
        EqResult sub =
            den_eq_rec(x.tail_apply(tup), y.tail_apply(tup), at.body(), budget, depth - 1);
        if (sub.verdict == Verdict::Unequal) return {Verdict::Unequal, false};
      }
      return {Verdict::Equal, probed};
    }
  }
  return {Verdict::Indeterminate, false};
}

}  // namespace

EqResult den_eq(const Den& x, const Den& y, const Type& at, const ProbeBudget& budget) {
  return den_eq_rec(x, y, at, budget, budget.fun_probe_depth);
}

namespace {

ShapeResult shapely_rec(const Den& x, const Type& at, const ProbeBudget& budget, int depth) {
  if (!x.shape_matches(at))
    throw ShapeMismatchError("shapely: value does not match type " + print_type(at));
  switch (at.kind()) {
    case Type::Kind::Truth:
    case Type::Kind::Nat:
      return {ShapeVerdict::Shapely, false};
    case Type::Kind::Arrow: {
      if (depth <= 0) return {ShapeVerdict::Shapely, true};
      bool probed = true;
      for (const Den& p : probes_for(at.dom(), budget)) {
        ShapeResult sub = shapely_rec(x.apply(p), at.cod(), budget, depth - 1);
        if (sub.verdict == ShapeVerdict::NotShapely) return {ShapeVerdict::NotShapely, false};
      }
      return {ShapeVerdict::Shapely, probed};
    }
    case Type::Kind::CtxBox: {
      // x must equal the denotation of its own head.
      Den of_head = eval(Valuation{}, x.head());
      EqResult eq = den_eq_rec(x, of_head, at, budget, std::max(depth, 1));
      if (eq.verdict == Verdict::Unequal) return {ShapeVerdict::NotShapely, false};
      bool probed = eq.probed;
      if (at.ctx().empty()) {
        ShapeResult sub = shapely_rec(x.tail_value(), at.body(), budget, depth);
        if (sub.verdict == ShapeVerdict::NotShapely) return {ShapeVerdict::NotShapely, false};
        probed = probed || sub.probed;
      } else {
        if (depth <= 0) return {ShapeVerdict::Shapely, true};
        for (const auto& tup : probe_tuples(at.ctx(), budget)) {
          ShapeResult sub = shapely_rec(x.tail_apply(tup), at.body(), budget, depth - 1);
          if (sub.verdict == ShapeVerdict::NotShapely) return {ShapeVerdict::NotShapely, false};
        }
        probed = true;
      }
      return {ShapeVerdict::Shapely, probed};
    }
  }
  return {ShapeVerdict::Indeterminate, false};
}

}  // namespace

ShapeResult shapely(const Den& x, const Type& at, const ProbeBudget& budget) {
  return shapely_rec(x, at, budget, budget.fun_probe_depth);
}

Den curry_tail(const Den& box) {
  if (box.kind() != Den::Kind::Box)
    throw ShapeMismatchError("curry_tail: not a box value");
  if (box.box_arity() == 0) return box.tail_value();
  struct Curry {
    static Den go(const Den& box, std::vector<Den> acc) {
      if (acc.size() == box.box_arity()) return box.tail_apply(acc);
      return Den::fun([box, acc](const Den& x) {
        std::vector<Den> next = acc;
        next.push_back(x);
        return go(box, std::move(next));
      });
    }
  };
  return Curry::go(box, {});
}

std::string print_den(const Den& d) {
  switch (d.kind()) {
    case Den::Kind::Bool:
      return d.bool_value() ? "⊤" : "⊥";
    case Den::Kind::Nat:
      return d.nat_value().to_string();
    case Den::Kind::Fun:
      return "<fun>";
    case Den::Kind::Box:
      if (d.box_arity() == 0)
        return print_term(d.head()) + " :: " + print_den(d.tail_value());
      return print_term(d.head()) + " :: <fun>";
  }
  return "?";
}

}  // namespace boxcalc
