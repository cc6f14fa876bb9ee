#include "cobord/parser.hpp"

#include <cctype>

#include "cobord/errors.hpp"

namespace cobord {
namespace {

// Recursive-descent parser over a token cursor.
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := base ['^' nat]
//   base   := nat ['/' nat] | var | '(' expr ')'
class Parser {
 public:
  Parser(const std::string& text, const RingPtr& ring)
      : text_(text), ring_(ring) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size())
      throw SyntaxError("unexpected trailing input", pos_);
    return p;
  }

 private:
  const std::string& text_;
  RingPtr ring_;
  std::size_t pos_ = 0;

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  Polynomial expr() {
    bool negate = false;
    skip_space();
    if (accept('-')) negate = true;
    Polynomial acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (accept('+'))
        acc = acc + term();
      else if (accept('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Polynomial factor() {
    Polynomial b = base();
    if (accept('^')) {
      std::size_t at = pos_;
      skip_space();
      std::string digits = read_digits();
      if (digits.empty())
        throw SyntaxError("expected a non-negative integer exponent", at);
      unsigned long e = std::stoul(digits);
      b = b.pow(e);
    }
    return b;
  }

  Polynomial base() {
    skip_space();
    if (pos_ >= text_.size())
      throw SyntaxError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) throw SyntaxError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return identifier();
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string read_digits() {
    std::string s;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      s.push_back(text_[pos_++]);
    return s;
  }

  Polynomial number() {
    std::string num = read_digits();
    std::string den;
    std::size_t slash_at = pos_;
    if (accept('/')) {
      skip_space();
      den = read_digits();
      if (den.empty())
        throw SyntaxError("expected an integer denominator", slash_at + 1);
    }
    Rat value = den.empty() ? Rat::parse(num) : Rat::parse(num + "/" + den);
    return Polynomial::constant(ring_, value);  // may throw BadCharacteristic
  }

  Polynomial identifier() {
    std::string name;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')
        name.push_back(text_[pos_++]);
      else
        break;
    }
    int idx = ring_->index_of(name);
    if (idx < 0) throw UnknownVariable(name);
    return Polynomial::variable(ring_, static_cast<std::size_t>(idx));
  }
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const RingPtr& ring) {
  return Parser(text, ring).parse();
}

}  // namespace cobord
