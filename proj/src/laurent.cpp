#include "torusfib/laurent.hpp"

#include "torusfib/errors.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>

namespace torusfib {

LaurentPolynomial::LaurentPolynomial(std::vector<std::string> variables, std::vector<Monomial> monomials)
    : variables_(std::move(variables)), monomials_(std::move(monomials)) {
  if (monomials_.empty()) throw DomainError("a Laurent polynomial needs at least one monomial");
  std::map<ExponentVector, std::size_t> seen;
  for (std::size_t i = 0; i < monomials_.size(); ++i) {
    const auto& m = monomials_[i];
    if (m.exponent.size() != variables_.size())
      throw DomainError("exponent vector length does not match the variable count");
    if (m.coefficient == 0) throw DomainError("zero coefficient in monomial list");
    if (!seen.emplace(m.exponent, i).second)
      throw DomainError("duplicate exponent vector " + torusfib::to_string(m.exponent));
  }
}

std::vector<ExponentVector> LaurentPolynomial::support() const {
  std::vector<ExponentVector> out;
  out.reserve(monomials_.size());
  for (const auto& m : monomials_) out.push_back(m.exponent);
  return out;
}

bool LaurentPolynomial::all_coefficients_one() const {
  return std::all_of(monomials_.begin(), monomials_.end(), [](const Monomial& m) { return m.coefficient == 1; });
}

std::string LaurentPolynomial::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < monomials_.size(); ++i) {
    const auto& m = monomials_[i];
    Rational c = m.coefficient;
    if (i == 0) {
      if (c < 0) {
        out += "-";
        c = -c;
      }
    } else {
      out += c < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    }
    std::string factors;
    for (std::size_t v = 0; v < variables_.size(); ++v) {
      const Integer& e = m.exponent[v];
      if (e == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += variables_[v];
      if (e != 1) factors += "^" + e.get_str();
    }
    if (factors.empty()) {
      out += c.get_str();
    } else {
      if (c != 1) out += c.get_str() + "*";
      out += factors;
    }
  }
  return out;
}

namespace {

struct RawFactor {
  std::string name;
  Integer power;
  std::size_t position;
};

struct RawTerm {
  Rational coefficient;
  std::vector<RawFactor> factors;
};

class Lexer {
public:
  explicit Lexer(std::string_view text) : s_(text) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  std::size_t pos() const { return pos_; }
  void advance() { ++pos_; }

  Integer unsigned_integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected digits", start);
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  Integer signed_integer() {
    skip_ws();
    bool neg = false;
    if (peek() == '-' || peek() == '+') {
      neg = peek() == '-';
      advance();
    }
    Integer v = unsigned_integer();
    return neg ? Integer(-v) : v;
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    }
    if (start == pos_) throw ParseError("expected a variable name", start);
    return std::string(s_.substr(start, pos_ - start));
  }

private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

bool starts_identifier(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }

RawTerm parse_term(Lexer& lx, bool negative) {
  RawTerm t;
  t.coefficient = negative ? -1 : 1;
  bool have_something = false;
  if (std::isdigit(static_cast<unsigned char>(lx.peek()))) {
    Integer num = lx.unsigned_integer();
    Integer den = 1;
    if (lx.peek() == '/') {
      std::size_t at = lx.pos();
      lx.advance();
      den = lx.unsigned_integer();
      if (den == 0) throw ParseError("zero denominator", at);
    }
    Rational c(num, den);
    c.canonicalize();
    t.coefficient *= c;
    have_something = true;
    if (lx.peek() == '*') {
      lx.advance();
      if (!starts_identifier(lx.peek())) throw ParseError("expected a variable after '*'", lx.pos());
    }
  }
  while (starts_identifier(lx.peek())) {
    std::size_t at = lx.pos();
    std::string name = lx.identifier();
    Integer e = 1;
    if (lx.peek() == '^') {
      lx.advance();
      if (lx.peek() == '(') {
        lx.advance();
        e = lx.signed_integer();
        if (lx.peek() != ')') throw ParseError("expected ')'", lx.pos());
        lx.advance();
      } else {
        e = lx.signed_integer();
      }
    }
    t.factors.push_back(RawFactor{std::move(name), e, at});
    have_something = true;
    if (lx.peek() == '*') {
      lx.advance();
      if (!starts_identifier(lx.peek())) throw ParseError("expected a variable after '*'", lx.pos());
    }
  }
  if (!have_something) throw ParseError("expected a term", lx.pos());
  return t;
}

std::vector<RawTerm> parse_terms(std::string_view text) {
  Lexer lx(text);
  std::vector<RawTerm> terms;
  if (lx.at_end()) throw ParseError("empty polynomial", 0);
  bool first = true;
  while (!lx.at_end()) {
    bool negative = false;
    char c = lx.peek();
    if (c == '+' || c == '-') {
      negative = c == '-';
      lx.advance();
    } else if (!first) {
      throw ParseError(std::string("expected '+' or '-' but found '") + c + "'", lx.pos());
    }
    terms.push_back(parse_term(lx, negative));
    first = false;
  }
  return terms;
}

std::optional<unsigned long> indexed_name(const std::string& name) {
  if (name.size() < 2 || name[0] != 'x' || name[1] == '0') return std::nullopt;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
  if (name.size() > 6) return std::nullopt;
  return std::stoul(name.substr(1));
}

LaurentPolynomial assemble(const std::vector<RawTerm>& terms, const std::vector<std::string>& variables,
                           std::size_t text_size) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < variables.size(); ++i) index.emplace(variables[i], i);
  std::vector<Monomial> merged;
  std::map<ExponentVector, std::size_t> where;
  for (const auto& t : terms) {
    ExponentVector e(variables.size(), Integer(0));
    for (const auto& f : t.factors) {
      auto it = index.find(f.name);
      if (it == index.end()) throw ParseError("unknown variable '" + f.name + "'", f.position);
      e[it->second] += f.power;
    }
    auto [it, inserted] = where.emplace(e, merged.size());
    if (inserted)
      merged.push_back(Monomial{t.coefficient, std::move(e)});
    else
      merged[it->second].coefficient += t.coefficient;
  }
  std::vector<Monomial> kept;
  for (auto& m : merged)
    if (m.coefficient != 0) kept.push_back(std::move(m));
  if (kept.empty()) throw ParseError("all terms cancel; the polynomial is empty", text_size);
  return LaurentPolynomial(variables, std::move(kept));
}

}  // namespace

LaurentPolynomial parse_laurent(std::string_view text) {
  auto terms = parse_terms(text);
  std::vector<std::string> order;
  bool all_indexed = true;
  unsigned long max_index = 0;
  for (const auto& t : terms)
    for (const auto& f : t.factors) {
      if (std::find(order.begin(), order.end(), f.name) == order.end()) order.push_back(f.name);
      auto idx = indexed_name(f.name);
      if (idx)
        max_index = std::max(max_index, *idx);
      else
        all_indexed = false;
    }
  std::vector<std::string> variables;
  if (all_indexed && !order.empty()) {
    for (unsigned long i = 1; i <= max_index; ++i) variables.push_back("x" + std::to_string(i));
  } else {
    variables = order;
  }
  return assemble(terms, variables, text.size());
}

LaurentPolynomial parse_laurent(std::string_view text, const std::vector<std::string>& variables) {
  return assemble(parse_terms(text), variables, text.size());
}

LaurentPolynomial from_support(std::vector<std::string> variables, const std::vector<ExponentVector>& support) {
  std::vector<Monomial> monomials;
  std::map<ExponentVector, std::size_t> where;
  for (const auto& e : support) {
    auto [it, inserted] = where.emplace(e, monomials.size());
    if (inserted)
      monomials.push_back(Monomial{Rational(1), e});
    else
      monomials[it->second].coefficient += 1;
  }
  return LaurentPolynomial(std::move(variables), std::move(monomials));
}

}  // namespace torusfib
