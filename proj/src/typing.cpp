#include "boxcalc/typing.hpp"

namespace boxcalc {

const char* type_error_name(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::UnboundAtom: return "UnboundAtom";
    case TypeErrorKind::UnboundUnknown: return "UnboundUnknown";
    case TypeErrorKind::NotAFunction: return "NotAFunction";
    case TypeErrorKind::ArgMismatch: return "ArgMismatch";
    case TypeErrorKind::BoxOpenBody: return "BoxOpenBody";
    case TypeErrorKind::ExtArityMismatch: return "ExtArityMismatch";
    case TypeErrorKind::ExtArgMismatch: return "ExtArgMismatch";
    case TypeErrorKind::LetBoxNotBox: return "LetBoxNotBox";
    case TypeErrorKind::NonBoxUnknownInCtx: return "NonBoxUnknownInCtx";
    case TypeErrorKind::ModalModeViolation: return "ModalModeViolation";
    case TypeErrorKind::Ambiguous: return "Ambiguous";
  }
  return "?";
}

namespace {

std::string describe(TypeErrorKind kind, Span span, const char* rule, const std::string& detail) {
  std::string msg = std::string(type_error_name(kind)) + " [rule " + rule + "]";
  if (span.known())
    msg += " at " + std::to_string(span.line) + ":" + std::to_string(span.column);
  if (!detail.empty()) msg += ": " + detail;
  return msg;
}

}  // namespace

TypeError::TypeError(TypeErrorKind kind, Span span, const char* rule, const std::string& detail)
    : std::runtime_error(describe(kind, span, rule, detail)), kind(kind), span(span), rule(rule) {}

namespace {

void require_modal_type(const Type& ty, Span span, const char* rule, TypeMode mode) {
  if (mode == TypeMode::Modal && !ty.is_modal())
    throw TypeError(TypeErrorKind::ModalModeViolation, span, rule,
                    "contextual type " + print_type(ty) + " is not part of the modal fragment");
}

class Checker {
public:
  explicit Checker(TypeMode mode) : mode_(mode) {}

  Type synth(const TypingCtx& ctx, const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Const: {
        auto ty = const_type(t.const_kind(), t.const_annot());
        if (!ty)
          throw TypeError(TypeErrorKind::Ambiguous, t.span(), "Const",
                          std::string(const_name(t.const_kind())) +
                              " needs a type annotation or an applied argument");
        require_modal_type(*ty, t.span(), "Const", mode_);
        return *ty;
      }
      case Term::Kind::Atom: {
        if (const Type* ty = ctx.find(t.atom_name())) return *ty;
        throw TypeError(TypeErrorKind::UnboundAtom, t.span(), "Hyp",
                        "atom " + t.atom_name().name() + " is not in the typing context");
      }
      case Term::Kind::Lam: {
        require_modal_type(t.lam_type(), t.span(), "->I", mode_);
        Type body = synth(ctx.bind(t.lam_binder(), t.lam_type()), t.lam_body());
        return Type::arrow(t.lam_type(), std::move(body));
      }
      case Term::Kind::App:
        return synth_app(ctx, t);
      case Term::Kind::CtxBox: {
        const auto& binders = t.box_binders();
        if (mode_ == TypeMode::Modal && !binders.empty())
          throw TypeError(TypeErrorKind::ModalModeViolation, t.span(), "[]I",
                          "contextual box binders are not part of the modal fragment");
        std::set<Atom> allowed;
        TypingCtx inner = ctx;
        std::vector<Type> ctx_types;
        for (const Binder& b : binders) {
          require_modal_type(b.type, t.span(), "[]I", mode_);
          allowed.insert(b.atom);
          inner = inner.bind(b.atom, b.type);
          ctx_types.push_back(b.type);
        }
        for (const Atom& a : free_atoms(t.box_body()))
          if (!allowed.count(a))
            throw TypeError(TypeErrorKind::BoxOpenBody, t.span(), "[]I",
                            "atom " + a.name() + " is free in the boxed body");
        Type body = synth(inner, t.box_body());
        return Type::ctx_box(std::move(ctx_types), std::move(body));
      }
      case Term::Kind::Ext: {
        const Type* xty = ctx.find(t.ext_unknown());
        if (!xty)
          throw TypeError(TypeErrorKind::UnboundUnknown, t.span(), "Ext",
                          "unknown " + t.ext_unknown().name() + " is not in the typing context");
        if (!xty->is_box())
          throw TypeError(TypeErrorKind::NonBoxUnknownInCtx, t.span(), "Ext",
                          "unknown " + t.ext_unknown().name() + " has non-box type " +
                              print_type(*xty));
        const auto& expected = xty->ctx();
        const auto& args = t.ext_args();
        if (expected.size() != args.size())
          throw TypeError(TypeErrorKind::ExtArityMismatch, t.span(), "Ext",
                          t.ext_unknown().name() + " expects " +
                              std::to_string(expected.size()) + " arguments, got " +
                              std::to_string(args.size()));
        for (size_t i = 0; i < args.size(); ++i) {
          Type got = synth(ctx, args[i]);
          if (got != expected[i])
            throw TypeError(TypeErrorKind::ExtArgMismatch, args[i].span(), "Ext",
                            "argument " + std::to_string(i + 1) + " has type " +
                                print_type(got) + ", expected " + print_type(expected[i]));
        }
        return xty->body();
      }
      case Term::Kind::LetBox: {
        Type bound = synth(ctx, t.letbox_bound());
        if (!bound.is_box())
          throw TypeError(TypeErrorKind::LetBoxNotBox, t.letbox_bound().span(), "[]E",
                          "bound term has type " + print_type(bound) + ", not a box type");
        return synth(ctx.bind(t.letbox_unknown(), bound), t.letbox_body());
      }
    }
    throw std::logic_error("typecheck: unreachable");
  }

private:
  // isapp and natrec resolve a missing annotation from the first applied
  // argument's synthesized type.
  Type synth_app(const TypingCtx& ctx, const Term& t) {
    const Term& fun = t.app_fun();
    if (fun.kind() == Term::Kind::Const && !fun.const_annot()) {
      if (fun.const_kind() == ConstKind::IsApp) {
        Type arg = synth(ctx, t.app_arg());
        if (!arg.is_box())
          throw TypeError(TypeErrorKind::ArgMismatch, t.app_arg().span(), "->E",
                          "isapp expects a boxed argument, got " + print_type(arg));
        return Type::truth();
      }
      if (fun.const_kind() == ConstKind::NatRec) {
        Type arg = synth(ctx, t.app_arg());
        require_modal_type(arg, t.span(), "->E", mode_);
        Type n = Type::nat();
        // remaining type after the base case is consumed
        return Type::arrow(Type::arrow(n, Type::arrow(arg, arg)), Type::arrow(n, arg));
      }
    }
    Type fty = synth(ctx, fun);
    if (fty.kind() != Type::Kind::Arrow)
      throw TypeError(TypeErrorKind::NotAFunction, fun.span(), "->E",
                      "application head has type " + print_type(fty));
    Type arg = synth(ctx, t.app_arg());
    if (arg != fty.dom())
      throw TypeError(TypeErrorKind::ArgMismatch, t.app_arg().span(), "->E",
                      "argument has type " + print_type(arg) + ", expected " +
                          print_type(fty.dom()));
    return fty.cod();
  }

  TypeMode mode_;
};

void validate_ctx(const TypingCtx& ctx, TypeMode mode) {
  for (const auto& [name, ty] : ctx.unknowns())
    if (!ty.is_box())
      throw TypeError(TypeErrorKind::NonBoxUnknownInCtx, {}, "Hyp",
                      "unknown " + name + " bound to non-box type " + print_type(ty));
  if (mode == TypeMode::Modal) {
    for (const auto& [name, ty] : ctx.atoms()) require_modal_type(ty, {}, "Hyp", mode);
    for (const auto& [name, ty] : ctx.unknowns()) require_modal_type(ty, {}, "Hyp", mode);
  }
}

}  // namespace

Type typecheck(const TypingCtx& ctx, const Term& t, TypeMode mode) {
  validate_ctx(ctx, mode);
  return Checker(mode).synth(ctx, t);
}

std::optional<Type> typecheck_opt(const TypingCtx& ctx, const Term& t, TypeMode mode) {
  try {
    return typecheck(ctx, t, mode);
  } catch (const TypeError&) {
    return std::nullopt;
  }
}

bool check_subst_typing_unknowns(const TypingCtx& ctx, const UnknownSubst& theta) {
  for (const auto& [x, image] : theta.mapping()) {
    const Type* declared = ctx.find(x);
    if (!declared || !declared->is_box()) return false;
    auto got = typecheck_opt(ctx, image);
    if (!got || *got != *declared) return false;
  }
  return true;
}

bool check_subst_typing_atoms(const TypingCtx& ctx, const AtomSubst& sigma) {
  for (const auto& [a, image] : sigma.mapping()) {
    const Type* declared = ctx.find(a);
    if (!declared) return false;
    auto got = typecheck_opt(ctx, image);
    if (!got || *got != *declared) return false;
  }
  return true;
}

}  // namespace boxcalc
