#include "foliage/parse.hpp"

#include <cctype>

#include "foliage/error.hpp"

namespace foliage {

namespace {

enum class Tok { Num, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  int line, col;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto adv = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      adv(1);
      continue;
    }
    int l0 = line, c0 = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::Num, s.substr(i, j - i), l0, c0});
      adv(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Ident, s.substr(i, j - i), l0, c0});
      adv(j - i);
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      default:
        throw ParseError(l0, c0, "a number, variable, operator or parenthesis");
    }
    out.push_back({k, std::string(1, c), l0, c0});
    adv(1);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

// Value of a subexpression: scalar part plus the coefficients of dx and dy.
struct Val {
  Poly3 s, dx, dy;
  bool has_diff() const { return !dx.empty() || !dy.empty(); }
};

void p3_add(Poly3& a, const Poly3& b, const Rational& sgn_) {
  for (const auto& [e, c] : b) {
    Rational v = a[e] + sgn_ * c;
    if (sgn(v) == 0)
      a.erase(e);
    else
      a[e] = v;
  }
}

Poly3 p3_mul(const Poly3& a, const Poly3& b) {
  Poly3 r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::array<int, 3> e{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]};
      Rational v = r[e] + ca * cb;
      if (sgn(v) == 0)
        r.erase(e);
      else
        r[e] = v;
    }
  return r;
}

class Parser {
 public:
  Parser(const std::string& text, bool allow_t, bool allow_diff)
      : toks_(lex(text)), allow_t_(allow_t), allow_diff_(allow_diff) {}

  Val parse_all() {
    Val v = expr();
    if (peek().kind != Tok::End) fail(allowed_primary() + " or an operator");
    return v;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(peek().line, peek().col, what); }

  std::string allowed_primary() const {
    std::string s = "a number, x, y";
    if (allow_t_) s += ", t";
    if (allow_diff_) s += ", dx, dy";
    return s + " or '('";
  }

  bool starts_primary() const {
    Tok k = peek().kind;
    return k == Tok::Num || k == Tok::Ident || k == Tok::LParen;
  }

  Val expr() {
    Val v = term();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      Rational sg = next().kind == Tok::Plus ? 1 : -1;
      Val w = term();
      p3_add(v.s, w.s, sg);
      p3_add(v.dx, w.dx, sg);
      p3_add(v.dy, w.dy, sg);
    }
    return v;
  }

  Val multiply(const Val& a, const Val& b, const Token& at) {
    if (a.has_diff() && b.has_diff()) throw ParseError(at.line, at.col, "at most one differential per product");
    Val r;
    r.s = p3_mul(a.s, b.s);
    r.dx = a.has_diff() ? p3_mul(a.dx, b.s) : p3_mul(a.s, b.dx);
    r.dy = a.has_diff() ? p3_mul(a.dy, b.s) : p3_mul(a.s, b.dy);
    return r;
  }

  Val term() {
    Val v = unary();
    for (;;) {
      if (peek().kind == Tok::Star) {
        const Token& at = next();
        v = multiply(v, unary(), at);
      } else if (peek().kind == Tok::Slash) {
        const Token at = next();
        Val d = unary();
        if (d.has_diff() || d.s.size() != 1 || d.s.begin()->first != std::array<int, 3>{0, 0, 0})
          throw ParseError(at.line, at.col, "a nonzero rational constant after '/'");
        Val inv;
        inv.s[{0, 0, 0}] = 1 / d.s.begin()->second;
        v = multiply(v, inv, at);
      } else if (starts_primary()) {
        const Token at = peek();
        v = multiply(v, power(), at);
      } else {
        return v;
      }
    }
  }

  Val unary() {
    if (peek().kind == Tok::Minus || peek().kind == Tok::Plus) {
      bool neg = next().kind == Tok::Minus;
      Val v = unary();
      if (neg) {
        Val z;
        p3_add(z.s, v.s, -1);
        p3_add(z.dx, v.dx, -1);
        p3_add(z.dy, v.dy, -1);
        return z;
      }
      return v;
    }
    return power();
  }

  Val power() {
    Val base = primary();
    if (peek().kind == Tok::Caret) {
      const Token at = next();
      if (peek().kind != Tok::Num) fail("a nonnegative integer exponent");
      long e = std::stol(next().text);
      if (base.has_diff()) throw ParseError(at.line, at.col, "no powers of differentials");
      Val r;
      r.s[{0, 0, 0}] = 1;
      for (long k = 0; k < e; ++k) r.s = p3_mul(r.s, base.s);
      return r;
    }
    return base;
  }

  Val primary() {
    const Token& t = peek();
    Val v;
    switch (t.kind) {
      case Tok::Num: {
        next();
        Rational q(Integer(t.text));
        if (sgn(q) != 0) v.s[{0, 0, 0}] = q;
        return v;
      }
      case Tok::LParen: {
        next();
        v = expr();
        if (peek().kind != Tok::RParen) fail("')'");
        next();
        return v;
      }
      case Tok::Ident: {
        if (t.text == "x") {
          v.s[{1, 0, 0}] = 1;
        } else if (t.text == "y") {
          v.s[{0, 1, 0}] = 1;
        } else if (t.text == "t" && allow_t_) {
          v.s[{0, 0, 1}] = 1;
        } else if (t.text == "dx" && allow_diff_) {
          v.dx[{0, 0, 0}] = 1;
        } else if (t.text == "dy" && allow_diff_) {
          v.dy[{0, 0, 0}] = 1;
        } else {
          fail(allowed_primary());
        }
        next();
        return v;
      }
      default:
        fail(allowed_primary());
    }
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  bool allow_t_, allow_diff_;
};

Poly2 to_poly2(const Poly3& p) {
  auto q = Field::rationals();
  Poly2 r(q);
  for (const auto& [e, c] : p) r.add_term(e[0], e[1], FieldElem(q, c));
  return r;
}

OneFormFamily parse_form_generic(const std::string& text, bool allow_t) {
  Parser ps(text, allow_t, true);
  Val v = ps.parse_all();
  if (!v.s.empty()) {
    // Locate the end of input for the diagnostic.
    auto toks = lex(text);
    throw ParseError(toks.back().line, toks.back().col, "every term to carry dx or dy");
  }
  return OneFormFamily{v.dx, v.dy};
}

}  // namespace

OneForm parse_oneform(const std::string& text) {
  auto fam = parse_form_generic(text, false);
  OneForm w{to_poly2(fam.a), to_poly2(fam.b)};
  if (w.is_zero()) throw ParseError(1, 1, "a nonzero 1-form");
  return w;
}

OneFormFamily parse_family(const std::string& text) { return parse_form_generic(text, true); }

Poly2 parse_poly(const std::string& text) {
  Parser ps(text, false, false);
  return to_poly2(ps.parse_all().s);
}

}  // namespace foliage
