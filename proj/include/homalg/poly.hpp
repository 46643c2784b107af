#pragma once

// Commutative polynomials over Q and differential forms with polynomial
// coefficients.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "homalg/rational.hpp"

namespace homalg {

class VariableCountMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Exponent = std::vector<unsigned>;

inline unsigned total_degree(const Exponent& e) {
  unsigned d = 0;
  for (unsigned x : e) d += x;
  return d;
}

/// All exponent vectors of n variables with the given total degree, in
/// ascending lexicographic order of the exponent vectors.
inline std::vector<Exponent> monomials_of_degree(std::size_t n, unsigned degree) {
  std::vector<Exponent> out;
  if (n == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  Exponent e(n, 0);
  // Recursive fill: position i takes values 0..remaining, last position absorbs the rest.
  auto fill = [&](auto&& self, std::size_t i, unsigned remaining) -> void {
    if (i + 1 == n) {
      e[i] = remaining;
      out.push_back(e);
      return;
    }
    for (unsigned v = 0; v <= remaining; ++v) {
      e[i] = v;
      self(self, i + 1, remaining - v);
    }
  };
  fill(fill, 0, degree);
  return out;
}

class CommPoly {
 public:
  using Terms = std::map<Exponent, Rational>;

  CommPoly() = default;
  explicit CommPoly(std::size_t num_vars) : n_(num_vars) {}
  CommPoly(std::size_t num_vars, const Rational& c) : n_(num_vars) {
    if (c != 0) terms_.emplace(Exponent(num_vars, 0), c);
  }

  static CommPoly variable(std::size_t num_vars, std::size_t i) {
    if (i >= num_vars) throw std::out_of_range("variable index out of range");
    Exponent e(num_vars, 0);
    e[i] = 1;
    return monomial(num_vars, e, 1);
  }

  static CommPoly monomial(std::size_t num_vars, const Exponent& e, const Rational& c) {
    if (e.size() != num_vars) throw VariableCountMismatch("exponent length differs from variable count");
    CommPoly p(num_vars);
    if (c != 0) p.terms_.emplace(e, c);
    return p;
  }

  std::size_t num_vars() const { return n_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Exponent& e, const Rational& c) {
    if (e.size() != n_) throw VariableCountMismatch("exponent length differs from variable count");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Total degree of the highest term; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(total_degree(e)));
    return d;
  }

  /// True for the zero polynomial and for polynomials whose terms all have
  /// total degree `d` (any common degree when d < 0).
  bool is_homogeneous(int d = -1) const {
    if (terms_.empty()) return true;
    const int first = static_cast<int>(total_degree(terms_.begin()->first));
    if (d >= 0 && first != d) return false;
    for (const auto& [e, c] : terms_)
      if (static_cast<int>(total_degree(e)) != first) return false;
    return true;
  }

  CommPoly derivative(std::size_t i) const {
    if (i >= n_) throw std::out_of_range("derivative: variable index out of range");
    CommPoly out(n_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponent f = e;
      --f[i];
      out.terms_.emplace(std::move(f), c * e[i]);
    }
    return out;
  }

  CommPoly& operator+=(const CommPoly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  CommPoly& operator-=(const CommPoly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  CommPoly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [e, c] : terms_) c *= s;
    }
    return *this;
  }

  friend CommPoly operator+(CommPoly a, const CommPoly& b) { return a += b; }
  friend CommPoly operator-(CommPoly a, const CommPoly& b) { return a -= b; }
  friend CommPoly operator-(CommPoly a) { return a *= Rational(-1); }
  friend CommPoly operator*(CommPoly a, const Rational& s) { return a *= s; }
  friend CommPoly operator*(const Rational& s, CommPoly a) { return a *= s; }

  friend CommPoly operator*(const CommPoly& a, const CommPoly& b) {
    a.check_same(b);
    CommPoly out(a.n_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e(a.n_);
        for (std::size_t i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }

  CommPoly pow(unsigned k) const {
    CommPoly out(n_, Rational(1));
    for (unsigned i = 0; i < k; ++i) out = out * *this;
    return out;
  }

  friend bool operator==(const CommPoly& a, const CommPoly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      const bool constant = total_degree(e) == 0;
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      const Rational mag = abs(c);
      if (constant || mag != 1) os << mag.get_str();
      bool wrote = constant || mag != 1;
      for (std::size_t i = 0; i < n_; ++i) {
        if (e[i] == 0) continue;
        if (wrote) os << "*";
        os << "x" << i;
        if (e[i] > 1) os << "^" << e[i];
        wrote = true;
      }
      first = false;
    }
    return os.str();
  }

  void check_same(const CommPoly& o) const {
    if (n_ != o.n_)
      throw VariableCountMismatch("polynomials in " + std::to_string(n_) + " and " + std::to_string(o.n_) +
                                  " variables");
  }

 private:
  std::size_t n_ = 0;
  Terms terms_;
};

/// Set of form indices i_1 < ... < i_k as a bit mask.
using IndexSet = std::uint32_t;

inline IndexSet index_set(std::initializer_list<std::size_t> indices) {
  IndexSet s = 0;
  for (std::size_t i : indices) s |= IndexSet(1) << i;
  return s;
}

inline std::vector<std::size_t> indices_of(IndexSet s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; s; ++i, s >>= 1)
    if (s & 1) out.push_back(i);
  return out;
}

/// Sign of dx_I ∧ dx_J relative to dx_{I∪J} (0 when I and J overlap).
inline int wedge_sign(IndexSet a, IndexSet b) {
  if (a & b) return 0;
  int inversions = 0;
  for (IndexSet rest = b; rest; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    inversions += std::popcount(a >> (j + 1));  // elements of a greater than j
  }
  return (inversions & 1) ? -1 : 1;
}

/// All index sets of size k inside {0..n-1}, in lexicographic order of the
/// increasing index tuples.
inline std::vector<IndexSet> index_sets(std::size_t n, std::size_t k) {
  std::vector<IndexSet> out;
  std::vector<std::size_t> idx(k);
  auto rec = [&](auto&& self, std::size_t pos, std::size_t start) -> void {
    if (pos == k) {
      IndexSet s = 0;
      for (std::size_t i : idx) s |= IndexSet(1) << i;
      out.push_back(s);
      return;
    }
    for (std::size_t i = start; i + (k - pos) <= n; ++i) {
      idx[pos] = i;
      self(self, pos + 1, i + 1);
    }
  };
  rec(rec, 0, 0);
  return out;
}

/// A differential k-form Σ_I f_I dx_I in the canonical increasing-index basis.
class DiffForm {
 public:
  using Components = std::map<IndexSet, CommPoly>;

  DiffForm() = default;
  DiffForm(std::size_t num_vars, std::size_t degree) : n_(num_vars), k_(degree) {
    if (degree > num_vars) throw std::invalid_argument("form degree exceeds variable count");
    if (num_vars > 31) throw std::invalid_argument("at most 31 variables are supported");
  }

  /// The 0-form f.
  static DiffForm function(const CommPoly& f) {
    DiffForm w(f.num_vars(), 0);
    w.add(0, f);
    return w;
  }

  /// dx_i.
  static DiffForm dx(std::size_t num_vars, std::size_t i) {
    DiffForm w(num_vars, 1);
    w.add(IndexSet(1) << i, CommPoly(num_vars, Rational(1)));
    return w;
  }

  /// f dx_I with I given as a bit mask.
  static DiffForm basis(const CommPoly& f, IndexSet s) {
    DiffForm w(f.num_vars(), static_cast<std::size_t>(std::popcount(s)));
    w.add(s, f);
    return w;
  }

  /// F_0 dF_1 ∧ ... ∧ dF_k expanded into the canonical basis.
  static DiffForm decomposable(const CommPoly& f0, const std::vector<CommPoly>& fs);

  std::size_t num_vars() const { return n_; }
  std::size_t degree() const { return k_; }
  const Components& components() const { return comps_; }
  bool is_zero() const { return comps_.empty(); }

  CommPoly component(IndexSet s) const {
    auto it = comps_.find(s);
    return it == comps_.end() ? CommPoly(n_) : it->second;
  }

  void add(IndexSet s, const CommPoly& f) {
    if (static_cast<std::size_t>(std::popcount(s)) != k_)
      throw std::invalid_argument("index set size differs from form degree");
    if (s >> n_) throw std::out_of_range("form index outside variable range");
    if (f.num_vars() != n_) throw VariableCountMismatch("coefficient variable count differs from form");
    if (f.is_zero()) return;
    auto [it, inserted] = comps_.try_emplace(s, f);
    if (!inserted) {
      it->second += f;
      if (it->second.is_zero()) comps_.erase(it);
    }
  }

  /// Weight-homogeneous of weight w: every coefficient term has degree w - k.
  bool is_homogeneous_weight(int w) const {
    for (const auto& [s, f] : comps_)
      if (!f.is_homogeneous(w - static_cast<int>(k_))) return false;
    return true;
  }

  /// Weight (coefficient degree plus form degree) of a nonzero homogeneous
  /// form; -1 when zero or inhomogeneous.
  int weight() const {
    int w = -1;
    for (const auto& [s, f] : comps_)
      for (const auto& [e, c] : f.terms()) {
        const int t = static_cast<int>(total_degree(e) + k_);
        if (w < 0) w = t;
        else if (w != t) return -1;
      }
    return w;
  }

  DiffForm& operator+=(const DiffForm& o) {
    check_same(o);
    for (const auto& [s, f] : o.comps_) add(s, f);
    return *this;
  }
  DiffForm& operator-=(const DiffForm& o) {
    check_same(o);
    for (const auto& [s, f] : o.comps_) add(s, -f);
    return *this;
  }
  friend DiffForm operator+(DiffForm a, const DiffForm& b) { return a += b; }
  friend DiffForm operator-(DiffForm a, const DiffForm& b) { return a -= b; }

  friend DiffForm operator*(const CommPoly& f, const DiffForm& w) {
    if (f.num_vars() != w.n_) throw VariableCountMismatch("coefficient variable count differs from form");
    DiffForm out(w.n_, w.k_);
    for (const auto& [s, g] : w.comps_) out.add(s, f * g);
    return out;
  }
  friend DiffForm operator*(const Rational& c, const DiffForm& w) {
    DiffForm out(w.n_, w.k_);
    for (const auto& [s, g] : w.comps_) out.add(s, c * g);
    return out;
  }

  friend DiffForm wedge(const DiffForm& a, const DiffForm& b) {
    if (a.n_ != b.n_) throw VariableCountMismatch("wedge of forms in different variable counts");
    if (a.k_ + b.k_ > a.n_) return DiffForm(a.n_, std::min(a.k_ + b.k_, a.n_));
    DiffForm out(a.n_, a.k_ + b.k_);
    for (const auto& [sa, fa] : a.comps_)
      for (const auto& [sb, fb] : b.comps_) {
        const int sign = wedge_sign(sa, sb);
        if (sign == 0) continue;
        out.add(sa | sb, Rational(sign) * (fa * fb));
      }
    return out;
  }

  friend bool operator==(const DiffForm& a, const DiffForm& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.comps_ == b.comps_;
  }

  std::string to_string() const {
    if (comps_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, f] : comps_) {
      if (!first) os << " + ";
      os << "(" << f.to_string() << ")";
      for (std::size_t i : indices_of(s)) os << " dx" << i;
      first = false;
    }
    return os.str();
  }

  void check_same(const DiffForm& o) const {
    if (n_ != o.n_ || k_ != o.k_) throw VariableCountMismatch("forms of different shape");
  }

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  Components comps_;
};

/// Exterior derivative. The derivative of a top-degree form is zero.
inline DiffForm de_rham_d(const DiffForm& w) {
  const std::size_t n = w.num_vars();
  if (w.degree() >= n) return DiffForm(n, n);
  DiffForm out(n, w.degree() + 1);
  for (const auto& [s, f] : w.components())
    for (std::size_t i = 0; i < n; ++i) {
      const IndexSet bit = IndexSet(1) << i;
      const int sign = wedge_sign(bit, s);
      if (sign == 0) continue;
      CommPoly df = f.derivative(i);
      if (df.is_zero()) continue;
      out.add(s | bit, Rational(sign) * df);
    }
  return out;
}

inline DiffForm DiffForm::decomposable(const CommPoly& f0, const std::vector<CommPoly>& fs) {
  DiffForm w = function(f0);
  for (const auto& f : fs) {
    f0.check_same(f);
    w = wedge(w, de_rham_d(function(f)));
  }
  return w;
}

}  // namespace homalg
