#include "supergerbe/expression.hpp"

#include <bit>
#include <cctype>

#include "supergerbe/calculus.hpp"

namespace supergerbe {

namespace {

class Parser {
 public:
  Parser(const std::string& text, RingPtr ring) : s_(text), ring_(std::move(ring)) {}

  SuperForm parse() {
    skip();
    if (pos_ == s_.size()) fail("empty expression");
    SuperForm v = expr();
    skip();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw ExpressionError(pos_, msg); }

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

  SuperForm expr() {
    SuperForm v = term();
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }

  SuperForm term() {
    SuperForm v = unary();
    for (;;) {
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        std::size_t at = pos_;
        SuperForm den = unary();
        v = divide(v, den, at);
      } else {
        return v;
      }
    }
  }

  SuperForm divide(const SuperForm& num, const SuperForm& den, std::size_t at) {
    if (den.terms().size() != 1 || den.terms().front().first != FormKey{}) {
      pos_ = at;
      fail("division by a non-constant");
    }
    try {
      return try_invert(den.terms().front().second) * num;
    } catch (const Error&) {
      pos_ = at;
      fail("division by a non-unit");
    }
  }

  SuperForm unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  SuperForm power() {
    SuperForm base = primary();
    if (!eat('^')) return base;
    skip();
    bool neg = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer exponent");
    if (pos_ - start > 4) fail("exponent too large");
    int n = std::stoi(s_.substr(start, pos_ - start));
    if (neg) {
      if (base.terms().size() != 1 || base.terms().front().first != FormKey{}) fail("negative power of a non-unit");
      try {
        base = SuperForm(try_invert(base.terms().front().second));
      } catch (const Error&) {
        fail("negative power of a non-unit");
      }
    }
    SuperForm out = Scalar::constant(ring_, Gaussian(1));
    for (int i = 0; i < n; ++i) out = out * base;
    return out;
  }

  SuperForm primary() {
    skip();
    if (pos_ == s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      SuperForm v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(std::string("unexpected '") + c + "'");
  }

  SuperForm number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    Rational q(s_.substr(start, pos_ - start));
    if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E')) {
      pos_ = start;
      fail("floating-point literal not accepted");
    }
    Gaussian g(q);
    if (pos_ < s_.size() && s_[pos_] == 'i' &&
        !(pos_ + 1 < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])) || s_[pos_ + 1] == '_'))) {
      ++pos_;
      g = Gaussian(0, q);
    }
    return Scalar::constant(ring_, g);
  }

  SuperForm identifier() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    if (name == "i") return Scalar::constant(ring_, Gaussian(0, 1));
    if (name == "d" && eat('(')) {
      SuperForm v = expr();
      if (!eat(')')) fail("expected ')'");
      return supergerbe::d(v);
    }
    auto sym = ring_->lookup(name);
    if (!sym) {
      pos_ = start;
      throw ExpressionError(start, "unknown symbol '" + name + "'");
    }
    switch (sym->kind) {
      case SymbolKind::Tau: return Scalar::tau(ring_);
      case SymbolKind::Even: return Scalar::generator(ring_, sym->index);
      case SymbolKind::Odd: return SuperForm::theta(ring_, sym->index);
      case SymbolKind::Form: return SuperForm::basis(ring_, sym->index);
    }
    fail("bad symbol");
  }

  const std::string& s_;
  RingPtr ring_;
  std::size_t pos_ = 0;
};

}  // namespace

SuperForm parse_form(const std::string& text, const RingPtr& ring) {
  if (!ring) raise(ErrorKind::InvalidArgument, "parse_form without a ring");
  return Parser(text, ring).parse();
}

SuperFunction parse_function(const std::string& text, const RingPtr& ring) {
  SuperForm f = parse_form(text, ring);
  for (const auto& t : f.terms())
    if (t.first.dx || t.first.dtheta) throw ExpressionError(0, "expected a function, got a form of positive degree");
  return f.to_function();
}

Scalar parse_scalar(const std::string& text, const RingPtr& ring) {
  SuperForm f = parse_form(text, ring);
  for (const auto& t : f.terms())
    if (t.first != FormKey{}) throw ExpressionError(0, "expected a scalar, got odd or form content");
  return f.terms().empty() ? Scalar(ring) : f.terms().front().second;
}

Gaussian parse_number(const std::string& text) {
  static const RingPtr empty = RingBuilder().build();
  Scalar s = parse_scalar(text, empty);
  auto g = s.as_number();
  if (!g) throw ExpressionError(0, "expected an exact number");
  return *g;
}

namespace {

Poly scalar_poly(const SuperForm& f, const std::string& what) {
  Poly out;
  for (const auto& [k, c] : f.terms()) {
    if (k.theta || k.dtheta || k.dx) raise(ErrorKind::ParseError, what + ": expected a scalar expression");
    out = poly_add(out, c.terms());
  }
  return out;
}

}  // namespace

RingPtr build_ring(const RingSpec& spec) {
  RingBuilder b;
  for (const auto& n : spec.even) b.add_even(n);
  for (const auto& n : spec.odd) b.add_odd(n);
  for (const auto& n : spec.forms) b.add_form(n);
  RingPtr sym = b.symbols();
  for (const auto& [gen, text] : spec.derivations) {
    std::uint32_t g = sym->even_id(gen);
    SuperForm f = parse_form(text, sym);
    Ring::Derivation der;
    for (const auto& [k, c] : f.terms()) {
      if (k.theta || k.dtheta || std::popcount(k.dx) != 1)
        raise(ErrorKind::ParseError, "derivation of '" + gen + "' must be a 1-form in the basis forms");
      der.emplace_back(static_cast<std::uint32_t>(std::countr_zero(k.dx)), c.terms());
    }
    b.set_derivation(g, std::move(der));
  }
  for (const auto& [lhs, rhs] : spec.relations) {
    Poly l = scalar_poly(parse_form(lhs, sym), "relation");
    if (l.size() != 1 || !l.front().coef.is_one())
      raise(ErrorKind::NonTerminatingReduction, "relation left side '" + lhs + "' must be a monomial");
    b.add_relation(l.front().mono, scalar_poly(parse_form(rhs, sym), "relation"));
  }
  return b.build();
}

RingSpec describe_ring(const Ring& ring) {
  RingSpec spec;
  spec.even = ring.even_names();
  spec.odd = ring.odd_names();
  spec.forms = ring.form_names();
  // Print through a symbols-only ring so relations are not applied.
  RingBuilder b;
  for (const auto& n : spec.even) b.add_even(n);
  for (const auto& n : spec.odd) b.add_odd(n);
  for (const auto& n : spec.forms) b.add_form(n);
  RingPtr sym = b.symbols();
  for (std::uint32_t g = 1; g <= ring.even_count(); ++g) {
    SuperForm f(sym);
    for (const auto& [k, p] : ring.derivation(g))
      f += Scalar::from_poly(sym, p) * SuperForm::basis(sym, k);
    spec.derivations.emplace_back(ring.even_name(g), f.str());
  }
  for (const auto& rel : ring.relations())
    spec.relations.emplace_back(Scalar::from_poly(sym, Poly{{rel.lhs, Gaussian(1)}}).str(),
                                Scalar::from_poly(sym, rel.rhs).str());
  return spec;
}

}  // namespace supergerbe
