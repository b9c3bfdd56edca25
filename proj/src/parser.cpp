#include "schwarzlift/parser.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>

#include "schwarzlift/error.hpp"

namespace schwarzlift {

namespace {

struct Value {
  AnalyticFn fn;
  std::optional<cplx> constant;

  static Value of(cplx c) { return {AnalyticFn::constant(c), c}; }
};

class Parser {
 public:
  Parser(std::string_view text, std::string_view var) : s_(text), var_(var) {}

  AnalyticFn run() {
    skip();
    if (pos_ == s_.size()) fail("empty expression");
    Value v = expr();
    skip();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return v.fn;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  Value expr() {
    Value v = term();
    for (;;) {
      if (eat('+')) {
        Value r = term();
        v = combine(v, r, '+');
      } else if (eat('-')) {
        Value r = term();
        v = combine(v, r, '-');
      } else {
        return v;
      }
    }
  }

  Value term() {
    Value v = unary();
    for (;;) {
      if (eat('*')) {
        Value r = unary();
        v = combine(v, r, '*');
      } else if (eat('/')) {
        const std::size_t at = pos_;
        Value r = unary();
        if (r.constant && *r.constant == cplx(0.0)) {
          pos_ = at;
          fail("division by zero");
        }
        v = combine(v, r, '/');
      } else {
        return v;
      }
    }
  }

  Value unary() {
    if (eat('-')) {
      Value v = unary();
      if (v.constant) return Value::of(-*v.constant);
      return {-v.fn, std::nullopt};
    }
    if (eat('+')) return unary();
    return power();
  }

  Value power() {
    Value base = primary();
    if (!eat('^')) return base;
    Value ex = unary();
    if (base.constant && ex.constant) return Value::of(std::pow(*base.constant, *ex.constant));
    if (ex.constant) return {pow(base.fn, *ex.constant), std::nullopt};
    return {exp(ex.fn * log(base.fn)), std::nullopt};
  }

  static Value combine(const Value& a, const Value& b, char op) {
    if (a.constant && b.constant) {
      const cplx x = *a.constant, y = *b.constant;
      switch (op) {
        case '+': return Value::of(x + y);
        case '-': return Value::of(x - y);
        case '*': return Value::of(x * y);
        default: return Value::of(x / y);
      }
    }
    switch (op) {
      case '+': return {a.fn + b.fn, std::nullopt};
      case '-': return {a.fn - b.fn, std::nullopt};
      case '*': return {a.fn * b.fn, std::nullopt};
      default: return {a.fn / b.fn, std::nullopt};
    }
  }

  Value number() {
    const char* first = s_.data() + pos_;
    const char* last = s_.data() + s_.size();
    double v = 0.0;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc()) fail("malformed number");
    pos_ += static_cast<std::size_t>(res.ptr - first);
    return Value::of(v);
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  Value primary() {
    skip();
    if (pos_ == s_.size()) fail("unexpected end of expression");
    const char ch = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') return number();
    if (ch == '(') {
      ++pos_;
      Value v = expr();
      expect(')');
      return v;
    }
    if (!std::isalpha(static_cast<unsigned char>(ch))) fail(std::string("unexpected '") + ch + "'");
    const std::size_t start = pos_;
    const std::string name = identifier();
    if (name == var_ || name == "z" || name == "x") return {AnalyticFn::identity(), std::nullopt};
    if (name == "i") return Value::of(cplx(0.0, 1.0));
    if (name == "pi") return Value::of(kPi);
    if (name == "e") return Value::of(std::exp(1.0));
    skip();
    if (pos_ >= s_.size() || s_[pos_] != '(') {
      pos_ = start;
      fail("unknown identifier '" + name + "'");
    }
    ++pos_;
    Value arg = expr();
    if (name == "int") {
      cplx base = 0.0;
      if (eat(',')) {
        const std::size_t at = pos_;
        Value b = expr();
        if (!b.constant) {
          pos_ = at;
          fail("integral base point must be constant");
        }
        base = *b.constant;
      }
      expect(')');
      return {integral(arg.fn, base), std::nullopt};
    }
    expect(')');
    return apply(name, arg, start);
  }

  Value apply(const std::string& name, const Value& a, std::size_t start) {
    AnalyticFn f;
    if (name == "exp") f = exp(a.fn);
    else if (name == "log") f = log(a.fn);
    else if (name == "sqrt") f = sqrt(a.fn);
    else if (name == "sin") f = sin(a.fn);
    else if (name == "cos") f = cos(a.fn);
    else if (name == "tan") f = tan(a.fn);
    else if (name == "sinh") f = sinh(a.fn);
    else if (name == "cosh") f = cosh(a.fn);
    else if (name == "tanh") f = tanh(a.fn);
    else if (name == "atanh") f = atanh(a.fn);
    else {
      pos_ = start;
      fail("unknown function '" + name + "'");
    }
    if (a.constant) {
      try {
        return Value::of(f.value(0.0));
      } catch (const DomainError&) {
        pos_ = start;
        fail(std::string("constant argument outside the domain of ") + name);
      }
    }
    return {f, std::nullopt};
  }

  std::string_view s_;
  std::string var_;
  std::size_t pos_ = 0;
};

}  // namespace

AnalyticFn parse_expression(std::string_view text, std::string_view variable) {
  return Parser(text, variable).run();
}

std::string parse_diagnostic(std::string_view text, std::size_t position, const std::string& message) {
  std::ostringstream os;
  os << "parse error at offset " << position << ": " << message << "\n  " << text << "\n  "
     << std::string(std::min(position, text.size()), ' ') << "^";
  return os.str();
}

}  // namespace schwarzlift
