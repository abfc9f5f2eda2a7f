#include "boxcalc/parse.hpp"

#include <cctype>
#include <cstdint>
#include <optional>

namespace boxcalc {

namespace {

enum class Tok {
  Ident,     // lowercase-leading
  UIdent,    // uppercase-leading
  Number,
  Keyword,   // let box in def o nat and the constant names
  Lambda,    // '\'
  Colon,
  Dot,
  Arrow,     // ->
  LParen,
  RParen,
  LBracket,
  RBracket,
  Comma,
  At,        // @
  Bang,      // !
  Equals,
  Semi,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  Span span;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_trivia();
      Span here{line_, col_};
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", here});
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c))) {
        std::string word = lex_ident();
        Tok kind = is_reserved_word(word)                               ? Tok::Keyword
                   : std::isupper(static_cast<unsigned char>(word[0])) ? Tok::UIdent
                                                                       : Tok::Ident;
        out.push_back({kind, word, here});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
          num.push_back(take());
        out.push_back({Tok::Number, num, here});
        continue;
      }
      switch (c) {
        case '\\': take(); out.push_back({Tok::Lambda, "\\", here}); continue;
        case ':': take(); out.push_back({Tok::Colon, ":", here}); continue;
        case '.': take(); out.push_back({Tok::Dot, ".", here}); continue;
        case '(': take(); out.push_back({Tok::LParen, "(", here}); continue;
        case ')': take(); out.push_back({Tok::RParen, ")", here}); continue;
        case '[': take(); out.push_back({Tok::LBracket, "[", here}); continue;
        case ']': take(); out.push_back({Tok::RBracket, "]", here}); continue;
        case ',': take(); out.push_back({Tok::Comma, ",", here}); continue;
        case '@': take(); out.push_back({Tok::At, "@", here}); continue;
        case '!': take(); out.push_back({Tok::Bang, "!", here}); continue;
        case '=': take(); out.push_back({Tok::Equals, "=", here}); continue;
        case ';': take(); out.push_back({Tok::Semi, ";", here}); continue;
        case '-':
          if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            take();
            take();
            out.push_back({Tok::Arrow, "->", here});
            continue;
          }
          break;
        default:
          break;
      }
      throw ParseError(here, std::string("unexpected character '") + c + "'", {});
    }
  }

private:
  char take() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_trivia() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        take();
      } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
        while (pos_ < src_.size() && src_[pos_] != '\n') take();
      } else {
        return;
      }
    }
  }

  std::string lex_ident() {
    std::string word;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')
        word.push_back(take());
      else
        break;
    }
    return word;
  }

  std::string_view src_;
  size_t pos_ = 0;
  uint32_t line_ = 1;
  uint32_t col_ = 1;
};

class Parser {
public:
  explicit Parser(std::string_view src) : tokens_(Lexer(src).run()) {}

  Type type_all() {
    Type ty = type();
    expect_end();
    return ty;
  }

  Term term_all() {
    Term t = term();
    expect_end();
    return t;
  }

  std::vector<Def> program() {
    std::vector<Def> defs;
    while (peek().kind != Tok::End) {
      Span here = peek().span;
      expect_keyword("def");
      Token name = next();
      if (name.kind != Tok::Ident && name.kind != Tok::UIdent)
        throw ParseError(name.span, "expected definition name", {"identifier"});
      expect(Tok::Colon, ":");
      Type ty = type();
      expect(Tok::Equals, "=");
      Term t = term();
      expect(Tok::Semi, ";");
      defs.push_back(Def{name.text, std::move(ty), std::move(t), here});
    }
    return defs;
  }

private:
  const Token& peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  Token next() { return tokens_[std::min(pos_++, tokens_.size() - 1)]; }

  bool at_keyword(const char* w) const {
    return peek().kind == Tok::Keyword && peek().text == w;
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind)
      throw ParseError(peek().span, "expected '" + std::string(what) + "'", {what});
    next();
  }

  void expect_keyword(const char* w) {
    if (!at_keyword(w)) throw ParseError(peek().span, "expected '" + std::string(w) + "'", {w});
    next();
  }

  void expect_end() {
    if (peek().kind != Tok::End)
      throw ParseError(peek().span, "trailing input after term", {"end of input"});
  }

  // type := typeAtom [ '->' type ]
  Type type() {
    Type lhs = type_atom();
    if (peek().kind == Tok::Arrow) {
      next();
      return Type::arrow(std::move(lhs), type());
    }
    return lhs;
  }

  // typeAtom := 'o' | 'nat' | '(' type ')' | '[' [type {',' type}] ']' typeAtom
  Type type_atom() {
    const Token& tok = peek();
    if (tok.kind == Tok::Keyword && tok.text == "o") {
      next();
      return Type::truth();
    }
    if (tok.kind == Tok::Keyword && tok.text == "nat") {
      next();
      return Type::nat();
    }
    if (tok.kind == Tok::LParen) {
      next();
      Type ty = type();
      expect(Tok::RParen, ")");
      return ty;
    }
    if (tok.kind == Tok::LBracket) {
      next();
      std::vector<Type> ctx;
      if (peek().kind != Tok::RBracket) {
        ctx.push_back(type());
        while (peek().kind == Tok::Comma) {
          next();
          ctx.push_back(type());
        }
      }
      expect(Tok::RBracket, "]");
      return Type::ctx_box(std::move(ctx), type_atom());
    }
    throw ParseError(tok.span, "expected a type", {"o", "nat", "(", "["});
  }

  // term := lambda | letbox | 'box' term | '[' binders ']' term | appTerm
  Term term() {
    Span here = peek().span;
    if (peek().kind == Tok::Lambda) {
      next();
      Token name = next();
      if (name.kind != Tok::Ident)
        throw ParseError(name.span, "expected an atom after '\\'", {"atom"});
      expect(Tok::Colon, ":");
      Type ty = type();
      expect(Tok::Dot, ".");
      return Term::lam(Atom{name.text}, std::move(ty), term(), here);
    }
    if (at_keyword("let")) {
      next();
      expect_keyword("box");
      Token name = next();
      if (name.kind != Tok::UIdent)
        throw ParseError(name.span, "expected an unknown after 'let box'", {"unknown"});
      expect(Tok::Equals, "=");
      Term bound = term();
      expect_keyword("in");
      return Term::let_box(Unknown{name.text}, std::move(bound), term(), here);
    }
    if (at_keyword("box")) {
      next();
      return Term::box(term(), here);
    }
    if (peek().kind == Tok::LBracket) {
      next();
      std::vector<Binder> binders;
      if (peek().kind != Tok::RBracket) {
        binders.push_back(binder());
        while (peek().kind == Tok::Comma) {
          next();
          binders.push_back(binder());
        }
      }
      expect(Tok::RBracket, "]");
      try {
        return Term::ctx_box(std::move(binders), term(), here);
      } catch (const std::invalid_argument& e) {
        throw ParseError(here, e.what(), {});
      }
    }
    return app_term();
  }

  Binder binder() {
    Token name = next();
    if (name.kind != Tok::Ident)
      throw ParseError(name.span, "expected an atom in binder list", {"atom"});
    expect(Tok::Colon, ":");
    return Binder{Atom{name.text}, type()};
  }

  Term app_term() {
    Term head = atom_term();
    while (starts_atom_term()) head = Term::app(std::move(head), atom_term(), peek().span);
    return head;
  }

  bool starts_atom_term() const {
    switch (peek().kind) {
      case Tok::Ident:
      case Tok::UIdent:
      case Tok::Number:
      case Tok::LParen:
        return true;
      case Tok::Keyword:
        return const_of_keyword(peek().text).has_value();
      default:
        return false;
    }
  }

  static std::optional<ConstKind> const_of_keyword(const std::string& w) {
    if (w == "top") return ConstKind::Top;
    if (w == "bot") return ConstKind::Bot;
    if (w == "isapp") return ConstKind::IsApp;
    if (w == "zero") return ConstKind::Zero;
    if (w == "succ") return ConstKind::Succ;
    if (w == "plus") return ConstKind::Plus;
    if (w == "times") return ConstKind::Times;
    if (w == "neg") return ConstKind::Neg;
    if (w == "and") return ConstKind::And;
    if (w == "natrec") return ConstKind::NatRec;
    return std::nullopt;
  }

  Term atom_term() {
    const Token tok = peek();
    switch (tok.kind) {
      case Tok::Ident:
        next();
        return Term::atom(Atom{tok.text}, tok.span);
      case Tok::UIdent: {
        next();
        if (peek().kind == Tok::Bang) {
          next();
          return Term::ext(Unknown{tok.text}, {}, tok.span);
        }
        if (peek().kind == Tok::At) {
          next();
          expect(Tok::LParen, "(");
          std::vector<Term> args;
          if (peek().kind != Tok::RParen) {
            args.push_back(term());
            while (peek().kind == Tok::Comma) {
              next();
              args.push_back(term());
            }
          }
          if (peek().kind != Tok::RParen)
            throw ParseError(peek().span, "unclosed extraction argument list", {")", ","});
          next();
          return Term::ext(Unknown{tok.text}, std::move(args), tok.span);
        }
        throw ParseError(peek().span, "an unknown must be extracted with '!' or '@(...)'",
                         {"!", "@("});
      }
      case Tok::Number: {
        next();
        try {
          return numeral(std::stoull(tok.text));
        } catch (const std::exception&) {
          throw ParseError(tok.span, "numeric literal too large", {});
        }
      }
      case Tok::LParen: {
        next();
        Term t = term();
        expect(Tok::RParen, ")");
        return t;
      }
      case Tok::Keyword: {
        auto ck = const_of_keyword(tok.text);
        if (!ck) break;
        next();
        if ((*ck == ConstKind::IsApp || *ck == ConstKind::NatRec) &&
            peek().kind == Tok::LBracket) {
          next();
          Type annot = type();
          expect(Tok::RBracket, "]");
          try {
            return Term::constant(*ck, std::move(annot), tok.span);
          } catch (const std::invalid_argument& e) {
            throw ParseError(tok.span, e.what(), {});
          }
        }
        return Term::constant(*ck, tok.span);
      }
      default:
        break;
    }
    throw ParseError(tok.span, "expected a term", {"atom", "unknown", "constant", "number", "("});
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
};

}  // namespace

Type parse_type(std::string_view text) { return Parser(text).type_all(); }

Term parse_term(std::string_view text) { return Parser(text).term_all(); }

std::vector<Def> parse_program(std::string_view text) { return Parser(text).program(); }

}  // namespace boxcalc
