#pragma once

// Rational generating functions in one variable t with exact Taylor
// expansion, and the Poincaré series of the Sklyanin Poisson and Hochschild
// homology groups.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "homalg/rational.hpp"
#include "homalg/tables.hpp"
#include <nlohmann/json.hpp>

namespace homalg {

/// Integer polynomial in t; coefficient k multiplies t^k. No trailing zeros.
class IntPoly {
 public:
  IntPoly() = default;
  IntPoly(std::initializer_list<long> coeffs) {
    for (long c : coeffs) c_.emplace_back(c);
    trim();
  }
  explicit IntPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

  static IntPoly monomial(std::size_t k, long c = 1) {
    std::vector<Integer> v(k + 1, Integer(0));
    v[k] = c;
    return IntPoly(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Integer operator[](std::size_t k) const { return k < c_.size() ? c_[k] : Integer(0); }
  const std::vector<Integer>& coefficients() const { return c_; }

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    std::vector<Integer> v(std::max(a.c_.size(), b.c_.size()), Integer(0));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a[k] + b[k];
    return IntPoly(std::move(v));
  }
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
    std::vector<Integer> v(std::max(a.c_.size(), b.c_.size()), Integer(0));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = a[k] - b[k];
    return IntPoly(std::move(v));
  }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> v(a.c_.size() + b.c_.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return IntPoly(std::move(v));
  }
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const Integer& c = c_[k];
      if (c == 0) continue;
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      const Integer mag = abs(c);
      if (k == 0 || mag != 1) os << mag.get_str();
      if (k >= 1) os << "t";
      if (k >= 2) os << "^" << k;
      first = false;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Integer> c_;
};

namespace detail {

using QPoly = std::vector<Rational>;

inline void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly poly_mod(QPoly a, const QPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
    trim(a);
  }
  return a;
}

inline QPoly to_q(const IntPoly& p) {
  QPoly q;
  for (const auto& c : p.coefficients()) q.emplace_back(c);
  return q;
}

// Exact division a / b over Q (b must divide a).
inline QPoly poly_div(QPoly a, const QPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {};
  QPoly q(a.size() - b.size() + 1, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
    trim(a);
  }
  return q;
}

// Scales a rational polynomial to a primitive integer polynomial.
inline IntPoly primitive(const QPoly& q) {
  Integer l = 1;
  for (const auto& c : q) l = lcm(l, c.get_den());
  std::vector<Integer> v;
  Integer g = 0;
  for (const auto& c : q) {
    Integer x = c.get_num() * (l / c.get_den());
    g = gcd(g, x);
    v.push_back(std::move(x));
  }
  if (g != 0)
    for (auto& x : v) x /= g;
  return IntPoly(std::move(v));
}

// Integer coefficients of a rational polynomial known to be integral.
inline std::vector<Integer> as_integers(const QPoly& q) {
  std::vector<Integer> v;
  for (const auto& c : q) {
    if (c.get_den() != 1) throw std::logic_error("expected an integral polynomial");
    v.push_back(c.get_num());
  }
  return v;
}

}  // namespace detail

/// numerator / denominator over Z[t] in lowest terms: no common polynomial
/// factor, no common integer content, and the lowest nonzero denominator
/// coefficient positive.
class RationalSeries {
 public:
  RationalSeries(IntPoly numerator, IntPoly denominator) {
    if (denominator.is_zero()) throw std::invalid_argument("rational series with zero denominator");
    if (numerator.is_zero()) {
      num_ = {};
      den_ = IntPoly{1};
      return;
    }
    auto a = detail::to_q(numerator), b = detail::to_q(denominator);
    // gcd over Q[t]
    auto x = a, y = b;
    while (!y.empty()) {
      auto r = detail::poly_mod(x, y);
      x = std::move(y);
      y = std::move(r);
    }
    // With x scaled to a primitive integer polynomial, both quotients are
    // integral (Gauss's lemma).
    x = detail::to_q(detail::primitive(x));
    auto n = detail::as_integers(detail::poly_div(a, x));
    auto d = detail::as_integers(detail::poly_div(b, x));
    Integer g = 0;
    for (const auto& c : n) g = gcd(g, c);
    for (const auto& c : d) g = gcd(g, c);
    std::size_t low = 0;
    while (d[low] == 0) ++low;
    if (d[low] < 0) g = -g;
    for (auto& c : n) c /= g;
    for (auto& c : d) c /= g;
    num_ = IntPoly(std::move(n));
    den_ = IntPoly(std::move(d));
  }

  const IntPoly& numerator() const { return num_; }
  const IntPoly& denominator() const { return den_; }

  /// Taylor coefficients c_0..c_n at t = 0. Throws std::domain_error when
  /// the denominator vanishes at 0 or a coefficient is not an integer.
  std::vector<Integer> expand(std::size_t n) const {
    if (den_[0] == 0) throw std::domain_error("series denominator vanishes at t = 0");
    std::vector<Integer> c(n + 1, Integer(0));
    const Integer d0 = den_[0];
    for (std::size_t k = 0; k <= n; ++k) {
      Integer acc = num_[k];
      for (std::size_t j = 1; j <= k && static_cast<int>(j) <= den_.degree(); ++j) acc -= den_[j] * c[k - j];
      if (acc % d0 != 0) throw std::domain_error("series has a non-integral Taylor coefficient");
      c[k] = acc / d0;
    }
    return c;
  }

  friend RationalSeries operator+(const RationalSeries& a, const RationalSeries& b) {
    return RationalSeries(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }

  /// Exact equality by cross-multiplication.
  friend bool operator==(const RationalSeries& a, const RationalSeries& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

  std::string to_string() const { return "(" + num_.to_string() + ")/(" + den_.to_string() + ")"; }

 private:
  IntPoly num_;
  IntPoly den_{1};
};

inline std::vector<Integer> expand(const RationalSeries& s, std::size_t n) { return s.expand(n); }

/// (1 - t^2)^2, the Hilbert series denominator of a polynomial ring on two
/// weight-2 generators.
inline IntPoly two_quadric_denominator() { return IntPoly{1, 0, -2, 0, 1}; }

enum class HomologySide { poisson, hochschild };

inline const char* side_name(HomologySide s) { return s == HomologySide::poisson ? "poisson" : "hochschild"; }

/// Poincaré series of PH_i of a four-variable Jacobian Poisson structure with
/// quadratic complete-intersection Casimirs, and of HH_i of the Sklyanin
/// algebra. The two lists coincide.
inline RationalSeries homology_series(HomologySide side, std::size_t i) {
  (void)side;
  const IntPoly den = two_quadric_denominator();
  switch (i) {
    case 0: return {IntPoly{1, 4, 2}, den};
    case 1: return {IntPoly{0, 4, 4, 4, 1}, den};
    case 2: return {IntPoly{0, 0, 0, 4, 2}, den};
    case 3: return {IntPoly::monomial(4), den};
    case 4: return {IntPoly::monomial(4), den};
    default: throw std::out_of_range("homology index must be 0..4");
  }
}

/// Hilbert series of a free module over a polynomial ring on two weight-2
/// generators, with module generators in the given weights.
inline RationalSeries generator_series(const std::vector<std::size_t>& degrees) {
  IntPoly num;
  for (std::size_t d : degrees) num = num + IntPoly::monomial(d);
  return {num, two_quadric_denominator()};
}

/// Generator weights of the free modules HH_i (equivalently PH_i).
inline std::vector<std::size_t> generator_degrees(std::size_t i) {
  switch (i) {
    case 0: return {0, 1, 1, 1, 1, 2, 2};
    case 1: return {1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 4};
    case 2: return {3, 3, 3, 3, 4, 4};
    case 3: return {4};
    case 4: return {4};
    default: throw std::out_of_range("homology index must be 0..4");
  }
}

struct ComparisonCell {
  std::string side;
  std::size_t i = 0;
  std::size_t d = 0;
  Integer expected;
  std::size_t computed = 0;
  bool match = false;
};

struct ComparisonReport {
  std::vector<ComparisonCell> cells;
  bool verdict = true;

  std::vector<ComparisonCell> mismatches() const {
    std::vector<ComparisonCell> out;
    for (const auto& c : cells)
      if (!c.match) out.push_back(c);
    return out;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& c : cells) {
      nlohmann::ordered_json r;
      r["side"] = c.side;
      r["i"] = c.i;
      r["d"] = c.d;
      r["dim"] = c.computed;
      r["expected"] = c.expected.get_si();
      r["match"] = c.match;
      rows.push_back(std::move(r));
    }
    j["tables"] = std::move(rows);
    j["verdict"] = verdict ? "pass" : "fail";
    return j;
  }

  std::string to_text() const {
    std::ostringstream os;
    std::size_t matched = 0;
    for (const auto& c : cells) matched += c.match;
    os << "compared " << cells.size() << " cells, " << matched << " match\n";
    for (const auto& c : cells)
      if (!c.match)
        os << "  MISMATCH " << c.side << " i=" << c.i << " d=" << c.d << ": computed " << c.computed << ", expected "
           << c.expected.get_str() << '\n';
    os << "verdict: " << (verdict ? "pass" : "fail") << '\n';
    return os.str();
  }
};

/// Compares every cell (i, d), d <= n, of the table against the Taylor
/// coefficients of the matching Poincaré series.
inline ComparisonReport compare(const DimTable& table, std::size_t n) {
  if (table.max_weight() < n)
    throw std::invalid_argument("table populated to weight " + std::to_string(table.max_weight()) +
                                ", comparison requested to " + std::to_string(n));
  const HomologySide side = table.side() == "hochschild" ? HomologySide::hochschild : HomologySide::poisson;
  ComparisonReport report;
  for (std::size_t i = 0; i <= 4; ++i) {
    const auto coeffs = homology_series(side, i).expand(n);
    for (std::size_t d = 0; d <= n; ++d) {
      ComparisonCell cell{table.side(), i, d, coeffs[d], table.at(i, d), false};
      cell.match = cell.expected == static_cast<unsigned long>(cell.computed);
      report.verdict = report.verdict && cell.match;
      report.cells.push_back(std::move(cell));
    }
  }
  return report;
}

}  // namespace homalg
