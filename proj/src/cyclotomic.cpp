#include "torusfib/cyclotomic.hpp"

#include "torusfib/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace torusfib {

namespace {

using QPoly = std::vector<Rational>;  // low degree first

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Quotient and remainder of a by b (b nonzero).
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  trim(a);
  QPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  const Rational& lead = b.back();
  while (a.size() >= b.size() && !a.empty()) {
    Rational c = a.back() / lead;
    std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    trim(a);
  }
  return {q, a};
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  trim(out);
  return out;
}

QPoly sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

std::mutex phi_mutex;
std::map<std::uint32_t, std::vector<Integer>> phi_cache;

std::vector<Integer> compute_phi(std::uint32_t m);

const std::vector<Integer>& phi_locked(std::uint32_t m) {
  auto it = phi_cache.find(m);
  if (it != phi_cache.end()) return it->second;
  return phi_cache.emplace(m, compute_phi(m)).first->second;
}

std::vector<Integer> compute_phi(std::uint32_t m) {
  // Φ_m = (x^m - 1) / Π_{d | m, d < m} Φ_d, exact monic division.
  std::vector<Integer> num(m + 1, Integer(0));
  num[0] = -1;
  num[m] = 1;
  for (std::uint32_t d = 1; d < m; ++d) {
    if (m % d) continue;
    const auto& den = phi_locked(d);
    const std::size_t dd = den.size() - 1;
    std::vector<Integer> q(num.size() - dd, Integer(0));
    for (std::size_t s = q.size(); s-- > 0;) {
      Integer c = num[s + dd];
      q[s] = c;
      if (c != 0)
        for (std::size_t j = 0; j <= dd; ++j) num[s + j] -= c * den[j];
    }
    for (std::size_t j = 0; j + 1 < den.size(); ++j)
      if (num[j] != 0) throw ConsistencyError("cyclotomic polynomial division is not exact");
    num = std::move(q);
  }
  return num;
}

}  // namespace

const std::vector<Integer>& cyclotomic_polynomial(std::uint32_t m) {
  if (m == 0) throw DomainError("cyclotomic modulus must be positive");
  std::lock_guard<std::mutex> lock(phi_mutex);
  return phi_locked(m);
}

Cyclotomic::Cyclotomic(std::uint32_t m) : m_(m) {
  if (m == 0) throw DomainError("cyclotomic modulus must be positive");
}

Cyclotomic Cyclotomic::root(std::uint32_t m, long a, const Rational& c) {
  Cyclotomic x(m);
  long r = a % static_cast<long>(m);
  if (r < 0) r += m;
  if (c != 0) x.terms_.emplace_back(static_cast<std::uint32_t>(r), c);
  return x;
}

Cyclotomic Cyclotomic::constant(std::uint32_t m, const Rational& c) { return root(m, 0, c); }

void Cyclotomic::adopt(const Cyclotomic& o) {
  if (m_ == 0) {
    m_ = o.m_;
  } else if (o.m_ != 0 && o.m_ != m_) {
    throw DomainError("cyclotomic modulus mismatch: " + std::to_string(m_) + " vs " + std::to_string(o.m_));
  }
}

std::vector<Rational> Cyclotomic::coefficients() const {
  std::vector<Rational> c(m_);
  for (const auto& [a, v] : terms_) c[a] = v;
  return c;
}

std::vector<Rational> Cyclotomic::canonical() const {
  if (m_ == 0) return {};
  const auto& phi = cyclotomic_polynomial(m_);
  const std::size_t deg = phi.size() - 1;
  std::vector<Rational> c = coefficients();
  for (std::size_t i = m_; i-- > deg;) {
    if (c[i] == 0) continue;
    Rational top = c[i];
    std::size_t shift = i - deg;
    for (std::size_t j = 0; j <= deg; ++j)
      if (phi[j] != 0) c[shift + j] -= top * phi[j];
  }
  c.resize(deg);
  return c;
}

bool Cyclotomic::is_zero() const {
  if (terms_.empty()) return true;
  // A clearly nonzero complex value settles it without the exact reduction.
  double mass = 0;
  for (const auto& t : terms_) mass += std::fabs(t.second.get_d());
  if (std::abs(to_complex()) > 1e-9 * (1 + mass)) return false;
  for (const auto& c : canonical())
    if (c != 0) return false;
  return true;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  adopt(o);
  if (o.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
      out.push_back(terms_[i++]);
    } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
      out.push_back(o.terms_[j++]);
    } else {
      Rational s = terms_[i].second + o.terms_[j].second;
      if (s != 0) out.emplace_back(terms_[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  Cyclotomic r = a;
  r.adopt(b);
  r.terms_.clear();
  if (a.terms_.empty() || b.terms_.empty()) return r;
  const std::uint32_t m = r.m_;
  std::vector<Cyclotomic::Term> prod;
  prod.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) prod.emplace_back((ea + eb) % m, ca * cb);
  std::sort(prod.begin(), prod.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& t : prod) {
    if (!r.terms_.empty() && r.terms_.back().first == t.first) {
      r.terms_.back().second += t.second;
      if (r.terms_.back().second == 0) r.terms_.pop_back();
    } else {
      r.terms_.push_back(std::move(t));
    }
  }
  return r;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) { return *this = *this * o; }

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero in a cyclotomic field");
  if (terms_.size() == 1) return root(m_, -static_cast<long>(terms_[0].first), 1 / terms_[0].second);
  // Extended Euclid: s·x + t·Φ = 1 in Q[x].
  const auto& phi_int = cyclotomic_polynomial(m_);
  QPoly phi(phi_int.begin(), phi_int.end());
  QPoly x = canonical();
  trim(x);
  QPoly r0 = phi, r1 = x, s0, s1{Rational(1)};
  while (!r1.empty() && !(r1.size() == 1)) {
    auto [q, r] = divmod(r0, r1);
    QPoly s2 = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r1.empty()) throw ConsistencyError("cyclotomic inverse: value shares a factor with Φ_m");
  Rational c = 1 / r1[0];
  Cyclotomic out(m_);
  for (std::size_t i = 0; i < s1.size(); ++i)
    if (s1[i] != 0) out.terms_.emplace_back(static_cast<std::uint32_t>(i), s1[i] * c);
  return out;
}

std::complex<double> Cyclotomic::to_complex() const {
  long double re = 0, im = 0;
  for (const auto& [a, c] : terms_) {
    long double angle = 2 * std::numbers::pi_v<long double> * a / m_;
    long double v = c.get_d();
    re += v * std::cos(angle);
    im += v * std::sin(angle);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

Cyclotomic Cyclotomic::lift(std::uint32_t m_new) const {
  if (m_ == 0) return Cyclotomic(m_new);
  if (m_new % m_) throw DomainError("lift target is not a multiple of the modulus");
  Cyclotomic r(m_new);
  for (const auto& [a, c] : terms_) r.terms_.emplace_back(a * (m_new / m_), c);
  return r;
}

CycPoly poly_mul(const CycPoly& a, const CycPoly& b) {
  if (a.empty() || b.empty()) return {};
  CycPoly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].empty()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].empty()) out[i + j] += a[i] * b[j];
  }
  return out;
}

bool poly_equal(const CycPoly& a, const CycPoly& b) {
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    Cyclotomic x = i < a.size() ? a[i] : Cyclotomic();
    Cyclotomic y = i < b.size() ? b[i] : Cyclotomic();
    if (!(x == y)) return false;
  }
  return true;
}

std::pair<CycPoly, Cyclotomic> divide_linear(const CycPoly& p, const Cyclotomic& r) {
  if (p.empty()) return {{}, Cyclotomic()};
  const std::size_t n = p.size() - 1;
  CycPoly q(n);
  Cyclotomic carry = p[n];
  for (std::size_t i = n; i-- > 0;) {
    q[i] = carry;
    carry = p[i] + r * carry;
  }
  return {q, carry};
}

std::vector<long> root_of_unity_multiplicities(const CycPoly& p, std::uint32_t m) {
  std::vector<long> mult(m, 0);
  for (std::uint32_t a = 0; a < m; ++a) {
    Cyclotomic r = Cyclotomic::root(m, a);
    CycPoly cur = p;
    while (cur.size() > 1) {
      auto [q, rem] = divide_linear(cur, r);
      if (!rem.is_zero()) break;
      ++mult[a];
      cur = std::move(q);
    }
  }
  return mult;
}

CycMatrix multiply(const CycMatrix& a, const CycMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix product: shape mismatch");
  CycMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Cyclotomic& aik = a(i, k);
      if (aik.empty()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const Cyclotomic& bkj = b(k, j);
        if (bkj.empty()) continue;
        out(i, j) += aik * bkj;
      }
    }
  return out;
}

CycMatrix identity_matrix(std::size_t n, std::uint32_t m) {
  CycMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = Cyclotomic::constant(m, 1);
  return out;
}

bool is_identity(const CycMatrix& a) {
  if (a.rows() != a.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Cyclotomic expect = (i == j) ? Cyclotomic::constant(a(i, j).modulus() ? a(i, j).modulus() : 1, 1) : Cyclotomic();
      if (!(a(i, j) == expect)) return false;
    }
  return true;
}

bool equal(const CycMatrix& a, const CycMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

CycPoly characteristic_polynomial(const CycMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DomainError("characteristic polynomial of a non-square matrix");
  std::uint32_t m = 0;
  for (std::size_t i = 0; i < n && m == 0; ++i)
    for (std::size_t j = 0; j < n && m == 0; ++j) m = a(i, j).modulus();
  if (m == 0) m = 1;
  CycPoly c(n + 1);
  c[n] = Cyclotomic::constant(m, 1);
  if (n == 0) return c;
  CycMatrix Mk = identity_matrix(n, m);
  for (std::size_t k = 1; k <= n; ++k) {
    CycMatrix AM = multiply(a, Mk);
    Cyclotomic tr(m);
    for (std::size_t i = 0; i < n; ++i) tr += AM(i, i);
    c[n - k] = tr * Rational(-1, static_cast<long>(k));
    if (k < n) {
      Mk = std::move(AM);
      for (std::size_t i = 0; i < n; ++i) Mk(i, i) += c[n - k];
    }
  }
  return c;
}

std::vector<std::vector<std::complex<double>>> to_complex(const CycMatrix& a) {
  std::vector<std::vector<std::complex<double>>> out(a.rows(), std::vector<std::complex<double>>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i][j] = a(i, j).to_complex();
  return out;
}

}  // namespace torusfib
