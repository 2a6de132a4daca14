#include "bdluk/errors.hpp"
#include "bdluk/syntax.hpp"

#include <array>
#include <cctype>
#include <optional>

namespace bdluk {

namespace {

enum class Tok {
  Ident,     // identifier
  ModName,   // Pr / Bl / Db / Cf / Uc
  LBrace, RBrace, LParen, RParen,
  Amp, Pipe, Dash, Tilde, Bang,
  Arrow,     // ->
  DArrow,    // <->
  OStar,     // (*)
  OPlus,     // (+)
  OMinus,    // (-)
  End,
};

struct Token {
  Tok kind;
  std::string text;    // Ident / ModName spelling
  std::size_t offset;
};

constexpr std::array<std::pair<const char*, Modality>, 5> kModalities{{
    {"Pr", Modality::Pr}, {"Bl", Modality::Bl}, {"Db", Modality::Db},
    {"Cf", Modality::Cf}, {"Uc", Modality::Uc}}};

bool has_modality_prefix(const std::string& s) {
  for (const auto& [name, mod] : kModalities) {
    (void)mod;
    if (s.rfind(name, 0) == 0) return true;
  }
  return false;
}

std::optional<Modality> exact_modality(const std::string& s) {
  for (const auto& [name, mod] : kModalities)
    if (s == name) return mod;
  return std::nullopt;
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::size_t start = pos_;
    if (pos_ >= text_.size()) {
      current_ = {Tok::End, "", start};
      return;
    }
    char c = text_[pos_];
    auto simple = [&](Tok k) {
      ++pos_;
      current_ = {k, std::string(1, c), start};
    };
    switch (c) {
      case '{': simple(Tok::LBrace); return;
      case '}': simple(Tok::RBrace); return;
      case ')': simple(Tok::RParen); return;
      case '&': simple(Tok::Amp); return;
      case '|': simple(Tok::Pipe); return;
      case '~': simple(Tok::Tilde); return;
      case '!': simple(Tok::Bang); return;
      case '-':
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
          pos_ += 2;
          current_ = {Tok::Arrow, "->", start};
        } else {
          simple(Tok::Dash);
        }
        return;
      case '<':
        if (pos_ + 2 < text_.size() && text_[pos_ + 1] == '-' && text_[pos_ + 2] == '>') {
          pos_ += 3;
          current_ = {Tok::DArrow, "<->", start};
          return;
        }
        throw ParseError(start, "unexpected character '<'");
      case '(':
        if (pos_ + 2 < text_.size() && text_[pos_ + 2] == ')' &&
            (text_[pos_ + 1] == '*' || text_[pos_ + 1] == '+' || text_[pos_ + 1] == '-')) {
          Tok k = text_[pos_ + 1] == '*' ? Tok::OStar
                : text_[pos_ + 1] == '+' ? Tok::OPlus
                                         : Tok::OMinus;
          current_ = {k, text_.substr(pos_, 3), start};
          pos_ += 3;
          return;
        }
        simple(Tok::LParen);
        return;
      default:
        break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
        ++end;
      std::string word = text_.substr(pos_, end - pos_);
      pos_ = end;
      if (exact_modality(word)) {
        current_ = {Tok::ModName, word, start};
      } else if (has_modality_prefix(word)) {
        throw ParseError(start, "identifier '" + word + "' starts with a reserved modality name");
      } else {
        current_ = {Tok::Ident, word, start};
      }
      return;
    }
    throw ParseError(start, std::string("unexpected character '") + c + "'");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  Token current_;
};

// ----- inner layer ----------------------------------------------------------

class BDParser {
 public:
  explicit BDParser(Lexer& lex) : lex_(lex) {}

  BDRef parse_or() {
    BDRef f = parse_and();
    while (lex_.peek().kind == Tok::Pipe) {
      lex_.take();
      f = bd_or(f, parse_and());
    }
    return f;
  }

 private:
  BDRef parse_and() {
    BDRef f = parse_unary();
    while (lex_.peek().kind == Tok::Amp) {
      lex_.take();
      f = bd_and(f, parse_unary());
    }
    return f;
  }

  BDRef parse_unary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Dash:
        lex_.take();
        return bd_neg(parse_unary());
      case Tok::Ident:
        return bd_var(lex_.take().text);
      case Tok::LParen: {
        lex_.take();
        BDRef f = parse_or();
        if (lex_.peek().kind != Tok::RParen)
          throw ParseError(lex_.peek().offset, "expected ')'");
        lex_.take();
        return f;
      }
      default:
        throw ParseError(t.offset, "expected an inner formula");
    }
  }

  Lexer& lex_;
};

// ----- outer layer ----------------------------------------------------------

class OuterParser {
 public:
  OuterParser(Lexer& lex, Dialect d) : lex_(lex), dialect_(d) {}

  // <->, lowest level, left-assoc
  OuterRef parse_iff() {
    OuterRef f = parse_implies();
    while (lex_.peek().kind == Tok::DArrow) {
      lex_.take();
      f = iff(f, parse_implies());
    }
    return f;
  }

 private:
  // ->, right-assoc
  OuterRef parse_implies() {
    OuterRef f = parse_lattice();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.take();
      return implies(f, parse_implies());
    }
    return f;
  }

  // & and | share one left-assoc level
  OuterRef parse_lattice() {
    OuterRef f = parse_additive();
    for (;;) {
      Tok k = lex_.peek().kind;
      if (k == Tok::Amp) {
        lex_.take();
        f = outer_and(f, parse_additive());
      } else if (k == Tok::Pipe) {
        lex_.take();
        f = outer_or(f, parse_additive());
      } else {
        return f;
      }
    }
  }

  // (+) and (-) share one left-assoc level
  OuterRef parse_additive() {
    OuterRef f = parse_strong();
    for (;;) {
      Tok k = lex_.peek().kind;
      if (k == Tok::OPlus) {
        lex_.take();
        f = plus(f, parse_strong());
      } else if (k == Tok::OMinus) {
        lex_.take();
        f = minus(f, parse_strong());
      } else {
        return f;
      }
    }
  }

  // (*), left-assoc
  OuterRef parse_strong() {
    OuterRef f = parse_unary();
    while (lex_.peek().kind == Tok::OStar) {
      lex_.take();
      f = strong(f, parse_unary());
    }
    return f;
  }

  OuterRef parse_unary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::Dash: {
        std::size_t off = lex_.take().offset;
        if (dialect_ == Dialect::Four)
          throw ParseError(off, "outer paraconsistent negation '-' is not part of this dialect");
        return par_neg(parse_unary());
      }
      case Tok::Tilde:
        lex_.take();
        return luk_neg(parse_unary());
      case Tok::Bang:
        lex_.take();
        return delta(parse_unary());
      default:
        return parse_primary();
    }
  }

  OuterRef parse_primary() {
    const Token& t = lex_.peek();
    switch (t.kind) {
      case Tok::ModName: {
        Token m = lex_.take();
        Modality mod = *exact_modality(m.text);
        if (dialect_ == Dialect::PM && mod != Modality::Pr)
          throw ParseError(m.offset, "modal atom " + m.text +
                                         "{...} is not part of this dialect (only Pr atoms)");
        if (dialect_ == Dialect::Four && mod == Modality::Pr)
          throw ParseError(m.offset,
                           "modal atom Pr{...} is not part of this dialect (only Bl/Db/Cf/Uc atoms)");
        if (lex_.peek().kind != Tok::LBrace)
          throw ParseError(lex_.peek().offset, "expected '{' after " + m.text);
        lex_.take();
        BDParser inner(lex_);
        BDRef body = inner.parse_or();
        if (lex_.peek().kind != Tok::RBrace)
          throw ParseError(lex_.peek().offset, "expected '}'");
        lex_.take();
        return modal_atom(mod, body);
      }
      case Tok::Ident: {
        Token id = lex_.take();
        if (dialect_ != Dialect::PlainLuk)
          throw ParseError(id.offset, "bare atom '" + id.text + "' is not part of this dialect");
        return free_atom(id.text);
      }
      case Tok::LParen: {
        lex_.take();
        OuterRef f = parse_iff();
        if (lex_.peek().kind != Tok::RParen)
          throw ParseError(lex_.peek().offset, "expected ')'");
        lex_.take();
        return f;
      }
      default:
        throw ParseError(t.offset, "expected a formula");
    }
  }

  Lexer& lex_;
  Dialect dialect_;
};

}  // namespace

BDRef parse_bd(const std::string& text) {
  Lexer lex(text);
  BDParser p(lex);
  BDRef f = p.parse_or();
  if (lex.peek().kind != Tok::End)
    throw ParseError(lex.peek().offset, "trailing input after formula");
  return f;
}

OuterRef parse_outer(const std::string& text, Dialect d) {
  Lexer lex(text);
  OuterParser p(lex, d);
  OuterRef f = p.parse_iff();
  if (lex.peek().kind != Tok::End)
    throw ParseError(lex.peek().offset, "trailing input after formula");
  return f;
}

}  // namespace bdluk
