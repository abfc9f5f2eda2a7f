#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "boxcalc/subst.hpp"
#include "boxcalc/syntax.hpp"

namespace boxcalc {

enum class TypeMode { Modal, Contextual };

enum class TypeErrorKind {
  UnboundAtom,
  UnboundUnknown,
  NotAFunction,
  ArgMismatch,
  BoxOpenBody,
  ExtArityMismatch,
  ExtArgMismatch,
  LetBoxNotBox,
  NonBoxUnknownInCtx,
  ModalModeViolation,
  Ambiguous,
};

const char* type_error_name(TypeErrorKind k);

struct TypeError : std::runtime_error {
  TypeError(TypeErrorKind kind, Span span, const char* rule, const std::string& detail);
  TypeErrorKind kind;
  Span span;
  const char* rule;  // Hyp / Const / ->I / ->E / []I / []E / Ext
};

// Type synthesis for the syntax-directed contextual rules; modal mode
// additionally rejects any box type carrying a nonempty context, whether in
// the term's annotations or in the typing context.
Type typecheck(const TypingCtx& ctx, const Term& t, TypeMode mode = TypeMode::Contextual);

std::optional<Type> typecheck_opt(const TypingCtx& ctx, const Term& t,
                                  TypeMode mode = TypeMode::Contextual);

// Gamma |- theta: every substituted unknown has a box type in Gamma and its
// image synthesizes exactly that type under Gamma.
bool check_subst_typing_unknowns(const TypingCtx& ctx, const UnknownSubst& theta);

// Gamma |- sigma, analogously for atoms.
bool check_subst_typing_atoms(const TypingCtx& ctx, const AtomSubst& sigma);

}  // namespace boxcalc
