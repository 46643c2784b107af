#pragma once

// Hochschild chains of a graded quadratic algebra: the bar complex with its
// boundary b and Connes' B, the Koszul complex A ⊗ (A^!_m)^* with its
// embedding q into the bar complex, homology dimension tables, the explicit
// free resolution of the Sklyanin algebra, and the cycles Π and Δ.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "homalg/linalg.hpp"
#include "homalg/ncalg.hpp"
#include "homalg/parallel.hpp"
#include "homalg/rational.hpp"
#include "homalg/tables.hpp"

namespace homalg {

/// One tensor factor of a bar chain: basis element `index` of A_degree.
struct Factor {
  std::uint32_t degree = 0;
  std::uint32_t index = 0;
  friend auto operator<=>(const Factor&, const Factor&) = default;
};

inline constexpr Factor unit_factor{0, 0};

/// A finite linear combination of tensors a_0 ⊗ … ⊗ a_n of basis elements.
class BarChain {
 public:
  using Tensor = std::vector<Factor>;
  using Terms = std::map<Tensor, Rational>;

  BarChain() = default;
  static BarChain tensor(Tensor t, const Rational& c = 1) {
    BarChain b;
    b.add_term(std::move(t), c);
    return b;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Tensor& t, const Rational& c) {
    if (c == 0) return;
    if (t.empty()) throw std::invalid_argument("bar chain tensors need at least one factor");
    auto [it, inserted] = terms_.try_emplace(t, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Common tensor length n+1, or nullopt when zero or mixed.
  std::optional<std::size_t> length() const { return common([](const Tensor& t) { return t.size(); }); }

  /// Common total weight, or nullopt when zero or mixed.
  std::optional<std::size_t> weight() const {
    return common([](const Tensor& t) {
      std::size_t w = 0;
      for (const auto& f : t) w += f.degree;
      return w;
    });
  }

  /// True when factors 1..n all have positive degree.
  bool is_normalized() const {
    for (const auto& [t, c] : terms_)
      for (std::size_t k = 1; k < t.size(); ++k)
        if (t[k].degree == 0) return false;
    return true;
  }

  BarChain& operator+=(const BarChain& o) {
    for (const auto& [t, c] : o.terms_) add_term(t, c);
    return *this;
  }
  BarChain& operator-=(const BarChain& o) {
    for (const auto& [t, c] : o.terms_) add_term(t, -c);
    return *this;
  }
  friend BarChain operator+(BarChain a, const BarChain& b) { return a += b; }
  friend BarChain operator-(BarChain a, const BarChain& b) { return a -= b; }
  friend BarChain operator*(const Rational& s, const BarChain& a) {
    BarChain out;
    for (const auto& [t, c] : a.terms_) out.add_term(t, s * c);
    return out;
  }
  friend bool operator==(const BarChain& a, const BarChain& b) { return a.terms_ == b.terms_; }

  std::string to_string(const GradedAlgebra& alg) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, c] : terms_) {
      os << (first ? "" : " + ") << "(" << c.get_str() << ") ";
      for (std::size_t k = 0; k < t.size(); ++k)
        os << (k ? " ⊗ " : "") << word_to_string(alg.basis(t[k].degree).representative_words.at(t[k].index));
      first = false;
    }
    return os.str();
  }

 private:
  template <class F>
  std::optional<std::size_t> common(F f) const {
    if (terms_.empty()) return std::nullopt;
    const std::size_t v = f(terms_.begin()->first);
    for (const auto& [t, c] : terms_)
      if (f(t) != v) return std::nullopt;
    return v;
  }

  Terms terms_;
};

namespace detail {

/// Adds c · (prefix ⊗ x ⊗ suffix) where x ∈ A_degree is given in coordinates.
inline void add_expanded(BarChain& out, const BarChain::Tensor& prefix, std::uint32_t degree, const SparseVector& x,
                         const BarChain::Tensor& suffix, const Rational& c) {
  for (const auto& [i, v] : x) {
    BarChain::Tensor t = prefix;
    t.push_back({degree, static_cast<std::uint32_t>(i)});
    t.insert(t.end(), suffix.begin(), suffix.end());
    out.add_term(t, c * v);
  }
}

inline SparseVector product(const GradedAlgebra& alg, const Factor& u, const Factor& v) {
  return alg.multiply_basis(u.degree, u.index, v.degree, v.index);
}

}  // namespace detail

/// b(a_0⊗…⊗a_n) = (−1)^n a_n a_0 ⊗ a_1 ⊗ … ⊗ a_{n−1}
///              + Σ_{i<n} (−1)^i a_0 ⊗ … ⊗ a_i a_{i+1} ⊗ … ⊗ a_n.
/// Zero on C_0.
inline BarChain hochschild_b(const GradedAlgebra& alg, const BarChain& c) {
  BarChain out;
  for (const auto& [t, coeff] : c.terms()) {
    const std::size_t n = t.size() - 1;
    if (n == 0) continue;
    const Rational sign_n = (n % 2 == 0) ? 1 : -1;
    detail::add_expanded(out, {}, t[n].degree + t[0].degree, detail::product(alg, t[n], t[0]),
                         BarChain::Tensor(t.begin() + 1, t.end() - 1), sign_n * coeff);
    for (std::size_t i = 0; i < n; ++i) {
      const Rational sign = (i % 2 == 0) ? 1 : -1;
      detail::add_expanded(out, BarChain::Tensor(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i)),
                           t[i].degree + t[i + 1].degree, detail::product(alg, t[i], t[i + 1]),
                           BarChain::Tensor(t.begin() + static_cast<std::ptrdiff_t>(i) + 2, t.end()), sign * coeff);
    }
  }
  return out;
}

/// B(a_0⊗…⊗a_n) = Σ_i (−1)^{ni} 1 ⊗ a_i ⊗ … ⊗ a_n ⊗ a_0 ⊗ … ⊗ a_{i−1}
///              + (−1)^n Σ_i (−1)^{ni} a_i ⊗ … ⊗ a_n ⊗ a_0 ⊗ … ⊗ a_{i−1} ⊗ 1.
inline BarChain connes_B(const BarChain& c) {
  BarChain out;
  for (const auto& [t, coeff] : c.terms()) {
    const std::size_t n = t.size() - 1;
    for (std::size_t i = 0; i <= n; ++i) {
      const Rational sign = ((n * i) % 2 == 0) ? 1 : -1;
      BarChain::Tensor rotated(t.begin() + static_cast<std::ptrdiff_t>(i), t.end());
      rotated.insert(rotated.end(), t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i));
      BarChain::Tensor front{unit_factor};
      front.insert(front.end(), rotated.begin(), rotated.end());
      out.add_term(front, sign * coeff);
      rotated.push_back(unit_factor);
      out.add_term(rotated, (n % 2 == 0 ? sign : Rational(-sign)) * coeff);
    }
  }
  return out;
}

/// An element of K_m = A_{weight−m} ⊗ (A^!_m)^*. Coordinate a·dim S_m + s
/// stands for (basis element a of A) ⊗ (basis vector s of the subspace).
struct KoszulChain {
  std::size_t m = 0;
  std::size_t weight = 0;
  SparseVector coeffs;

  friend bool operator==(const KoszulChain&, const KoszulChain&) = default;
};

/// Raised when the bar boundary of an embedded Koszul chain leaves the
/// embedded subcomplex.
class SubcomplexViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The Koszul complex of a quadratic algebra truncated at a maximal weight.
class KoszulComplex {
 public:
  KoszulComplex(const QuadraticAlgebra& a, std::size_t max_weight)
      : alg_(a, max_weight), max_weight_(max_weight), g_(a.num_gens()) {
    // Subspaces until the first zero one (or the weight bound, past which no
    // chain can live).
    subspaces_.push_back(Subspace::full(1));
    for (std::size_t m = 1; m <= max_weight && subspaces_.back().dim() > 0; ++m) {
      if (m == 1)
        subspaces_.push_back(Subspace::full(g_));
      else if (m == 2)
        subspaces_.push_back(Subspace::span(g_ * g_, a.relations().basis()));
      else
        subspaces_.push_back(intersect(tensor_right(subspaces_[m - 1], g_), tensor_left(subspaces_[m - 1], g_)));
    }
    peel_first_.resize(subspaces_.size());
    peel_last_.resize(subspaces_.size());
    for (std::size_t m = 1; m < subspaces_.size(); ++m) build_peels(m);
  }

  const GradedAlgebra& algebra() const { return alg_; }
  std::size_t max_weight() const { return max_weight_; }

  /// Largest m with K_m ≠ 0 in high weight.
  std::size_t length() const {
    std::size_t m = 0;
    while (m + 1 < subspaces_.size() && subspaces_[m + 1].dim() > 0) ++m;
    return m;
  }

  /// (A^!_m)^* ⊂ V^{⊗m}, for m up to the first zero subspace.
  const Subspace& subspace(std::size_t m) const {
    if (m >= subspaces_.size()) throw std::out_of_range("Koszul subspace beyond the end of the complex");
    return subspaces_[m];
  }

  std::size_t subspace_dim(std::size_t m) const { return m < subspaces_.size() ? subspaces_[m].dim() : 0; }

  std::size_t chain_dim(std::size_t m, std::size_t d) const {
    if (d < m || d > max_weight_) return 0;
    return alg_.dim(d - m) * subspace_dim(m);
  }

  /// Two-sided contraction
  ///   b(a ⊗ f) = Σ_s (a·S_s) ⊗ F_s f + (−1)^m Σ_s (S_s·a) ⊗ L_s f,
  /// with F_s and L_s peeling S_s off the first and last tensor slot.
  /// The inner bar terms vanish because adjacent pairs lie in W.
  KoszulChain boundary(const KoszulChain& k) const {
    check_chain(k);
    KoszulChain out{k.m == 0 ? 0 : k.m - 1, k.weight, {}};
    if (k.m == 0) return out;
    const std::size_t ds = subspace_dim(k.m), dt = subspace_dim(k.m - 1), e = k.weight - k.m;
    const Rational sign = (k.m % 2 == 0) ? 1 : -1;
    for (const auto& [idx, c] : k.coeffs) {
      const SparseVector a{{idx / ds, Rational(1)}};
      const std::size_t s = idx % ds;
      for (std::size_t b = 0; b < g_; ++b) {
        const SparseVector& first = peel_first_[k.m][b][s];
        const SparseVector& last = peel_last_[k.m][b][s];
        if (!first.empty()) {
          const SparseVector ab = alg_.right_multiply(e, a, b);
          for (const auto& [i, u] : ab)
            for (const auto& [s2, v] : first) add_to(out.coeffs, i * dt + s2, c * u * v);
        }
        if (!last.empty()) {
          const SparseVector ba = alg_.left_multiply(e, a, b);
          for (const auto& [i, u] : ba)
            for (const auto& [s2, v] : last) add_to(out.coeffs, i * dt + s2, sign * c * u * v);
        }
      }
    }
    return out;
  }

  /// Matrix of K_m → K_{m−1} in weight d.
  SparseMatrix boundary_matrix(std::size_t m, std::size_t d) const {
    if (m == 0) throw std::invalid_argument("K_0 has no outgoing boundary");
    SparseMatrix out(chain_dim(m - 1, d), chain_dim(m, d));
    for (std::size_t col = 0; col < out.cols(); ++col)
      out.add_column(col, boundary(KoszulChain{m, d, {{col, Rational(1)}}}).coeffs);
    return out;
  }

  /// K_0 ← K_1 ← … ← K_{len+1} in weight d; the last position is always
  /// zero-dimensional.
  ChainComplex complex(std::size_t d) const {
    ChainComplex cx;
    const std::size_t top = length() + 1;
    for (std::size_t m = 0; m <= top; ++m) cx.dims.push_back(chain_dim(m, d));
    for (std::size_t m = 1; m <= top; ++m)
      cx.boundaries.push_back(m < subspaces_.size() ? boundary_matrix(m, d)
                                                    : SparseMatrix(chain_dim(m - 1, d), 0));
    return cx;
  }

  /// q: a ⊗ Σ c_w S_{w_1}⊗…⊗S_{w_m} ↦ Σ c_w a ⊗ S_{w_1} ⊗ … ⊗ S_{w_m}.
  BarChain embed(const KoszulChain& k) const {
    check_chain(k);
    BarChain out;
    const std::size_t ds = subspace_dim(k.m);
    const auto e = static_cast<std::uint32_t>(k.weight - k.m);
    for (const auto& [idx, c] : k.coeffs) {
      const auto& v = subspaces_[k.m].basis()[idx % ds];
      for (std::size_t w = 0; w < v.size(); ++w) {
        if (v[w] == 0) continue;
        BarChain::Tensor t{{e, static_cast<std::uint32_t>(idx / ds)}};
        for (auto letter : word_from_index(w, k.m, g_)) t.push_back({1, letter});
        out.add_term(t, c * v[w]);
      }
    }
    return out;
  }

  /// The Koszul chain whose embedding is c, if any.
  std::optional<KoszulChain> preimage(const BarChain& c, std::size_t m, std::size_t d) const {
    if (m >= subspaces_.size() || d < m || d > max_weight_) {
      if (c.is_zero()) return KoszulChain{m, d, {}};
      return std::nullopt;
    }
    const std::size_t e = d - m;
    std::map<std::size_t, DenseVector> by_a;
    for (const auto& [t, coeff] : c.terms()) {
      if (t.size() != m + 1 || t[0].degree != e) return std::nullopt;
      std::size_t w = 0;
      for (std::size_t k = 1; k <= m; ++k) {
        if (t[k].degree != 1) return std::nullopt;
        w = w * g_ + t[k].index;
      }
      auto [it, inserted] = by_a.try_emplace(t[0].index, DenseVector(int_pow(g_, m), Rational(0)));
      it->second[w] += coeff;
    }
    KoszulChain out{m, d, {}};
    const std::size_t ds = subspace_dim(m);
    for (const auto& [a, v] : by_a) {
      const auto coords = subspaces_[m].coordinates(v);
      if (!coords) return std::nullopt;
      for (std::size_t s = 0; s < coords->size(); ++s)
        if ((*coords)[s] != 0) out.coeffs[a * ds + s] = (*coords)[s];
    }
    return out;
  }

  /// Checks q ∘ b_K = b ∘ q on one chain and returns b_K(k); throws
  /// SubcomplexViolation when b(q(k)) leaves the image of q.
  KoszulChain checked_boundary(const KoszulChain& k) const {
    const BarChain bq = hochschild_b(alg_, embed(k));
    const auto pre = preimage(bq, k.m == 0 ? 0 : k.m - 1, k.weight);
    if (!pre) throw SubcomplexViolation("b(q(k)) is not in the image of q");
    KoszulChain direct = boundary(k);
    if (pre->coeffs != direct.coeffs) throw SubcomplexViolation("b(q(k)) differs from q(b_K(k))");
    return direct;
  }

  /// HH_i dimensions for weights 0..max_weight (one job per weight).
  HHTable homology_dims(std::size_t max_index = 4) const {
    std::vector<std::vector<std::size_t>> per_weight(max_weight_ + 1);
    parallel_for(max_weight_ + 1, [&](std::size_t d) { per_weight[d] = homology(complex(d)); });
    HHTable table("hochschild", max_index, max_weight_);
    for (std::size_t d = 0; d <= max_weight_; ++d)
      for (std::size_t i = 0; i < per_weight[d].size(); ++i) {
        if (i > max_index) {
          if (per_weight[d][i] != 0) throw std::logic_error("homology above the table's index range");
          continue;
        }
        table.set(i, d, per_weight[d][i]);
      }
    return table;
  }

 private:
  static void add_to(SparseVector& v, std::size_t i, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = v.try_emplace(i, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) v.erase(it);
    }
  }

  void check_chain(const KoszulChain& k) const {
    if (k.weight > max_weight_) throw std::out_of_range("chain weight exceeds the complex's weight bound");
    const std::size_t dim = chain_dim(k.m, k.weight);
    for (const auto& [i, c] : k.coeffs)
      if (i >= dim) throw std::out_of_range("Koszul chain coordinate out of range");
  }

  void build_peels(std::size_t m) {
    const std::size_t tail = int_pow(g_, m - 1);
    peel_first_[m].assign(g_, {});
    peel_last_[m].assign(g_, {});
    for (const auto& v : subspaces_[m].basis())
      for (std::size_t b = 0; b < g_; ++b) {
        DenseVector first(tail), last(tail);
        for (std::size_t r = 0; r < tail; ++r) {
          first[r] = v[b * tail + r];
          last[r] = v[r * g_ + b];
        }
        peel_first_[m][b].push_back(peel_coordinates(m - 1, first));
        peel_last_[m][b].push_back(peel_coordinates(m - 1, last));
      }
  }

  SparseVector peel_coordinates(std::size_t m, const DenseVector& v) const {
    const auto coords = subspaces_[m].coordinates(v);
    if (!coords) throw SubcomplexViolation("a peeled tensor slot left the Koszul subspace");
    SparseVector out;
    for (std::size_t s = 0; s < coords->size(); ++s)
      if ((*coords)[s] != 0) out[s] = (*coords)[s];
    return out;
  }

  GradedAlgebra alg_;
  std::size_t max_weight_;
  std::size_t g_;
  std::vector<Subspace> subspaces_;
  // peel_first_[m][b][s]: coordinates in S_{m−1} of the S_b-slice of basis
  // vector s of S_m taken in the first slot; peel_last_ likewise in the last.
  std::vector<std::vector<std::vector<SparseVector>>> peel_first_, peel_last_;
};

inline BarChain q_embed(const KoszulComplex& kc, const KoszulChain& k) { return kc.embed(k); }

inline KoszulChain koszul_b(const KoszulComplex& kc, const KoszulChain& k) { return kc.checked_boundary(k); }

inline HHTable hh_dims(const SklyaninParams& p, std::size_t max_weight) {
  return KoszulComplex(sklyanin_relations(p), max_weight).homology_dims();
}

// ---------------------------------------------------------------------------
// Normalized bar complex (small weights only).

/// Basis of the normalized chains C̄_n in weight d: factor 0 of any degree,
/// factors 1..n of positive degree.
inline std::vector<BarChain::Tensor> normalized_bar_basis(const GradedAlgebra& alg, std::size_t n, std::size_t d) {
  std::vector<BarChain::Tensor> out;
  BarChain::Tensor t(n + 1);
  auto fill_indices = [&](auto&& self, std::size_t k) -> void {
    if (k == t.size()) {
      out.push_back(t);
      return;
    }
    for (std::uint32_t i = 0; i < alg.dim(t[k].degree); ++i) {
      t[k].index = i;
      self(self, k + 1);
    }
  };
  auto split = [&](auto&& self, std::size_t k, std::size_t left) -> void {
    if (k == 0) {
      t[0].degree = static_cast<std::uint32_t>(left);
      fill_indices(fill_indices, 0);
      return;
    }
    for (std::size_t w = 1; w <= left; ++w) {
      t[k].degree = static_cast<std::uint32_t>(w);
      self(self, k - 1, left - w);
    }
  };
  split(split, n, d);
  return out;
}

/// Homology of the normalized bar complex in weight d, positions 0..d.
inline std::vector<std::size_t> normalized_bar_homology(const GradedAlgebra& alg, std::size_t d) {
  std::vector<std::vector<BarChain::Tensor>> bases;
  std::vector<std::map<BarChain::Tensor, std::size_t>> index;
  for (std::size_t n = 0; n <= d + 1; ++n) {
    bases.push_back(normalized_bar_basis(alg, n, d));
    std::map<BarChain::Tensor, std::size_t> idx;
    for (std::size_t i = 0; i < bases.back().size(); ++i) idx[bases.back()[i]] = i;
    index.push_back(std::move(idx));
  }
  ChainComplex cx;
  for (const auto& b : bases) cx.dims.push_back(b.size());
  for (std::size_t n = 1; n <= d + 1; ++n) {
    SparseMatrix m(bases[n - 1].size(), bases[n].size());
    for (std::size_t col = 0; col < bases[n].size(); ++col) {
      const BarChain image = hochschild_b(alg, BarChain::tensor(bases[n][col]));
      for (const auto& [t, c] : image.terms()) {
        const auto it = index[n - 1].find(t);
        if (it == index[n - 1].end()) {
          std::string msg = "boundary left the normalized complex:";
          for (auto f : t) msg += " (" + std::to_string(f.degree) + "," + std::to_string(f.index) + ")";
          throw std::logic_error(msg);
        }
        m.add(it->second, col, c);
      }
    }
    cx.boundaries.push_back(std::move(m));
  }
  auto h = homology(cx);
  h.pop_back();
  return h;
}

// ---------------------------------------------------------------------------
// Sklyanin resolution 0 → A →t A^4 →N A^6 →M A^4 →x A → k → 0.

using NCMatrix = std::vector<std::vector<NCPoly>>;

struct ResolutionMatrices {
  NCMatrix x;  // 4×1
  NCMatrix M;  // 6×4
  NCMatrix N;  // 4×6
  NCMatrix t;  // 1×4
};

inline ResolutionMatrices resolution_matrices(const SklyaninParams& p) {
  auto S = [](std::uint8_t i, const Rational& c = 1) { return NCPoly::generator(i, c); };
  const NCPoly z;
  const Rational &a1 = p.alpha1, &a2 = p.alpha2, &a3 = p.alpha3;
  const Rational h(1, 2);
  ResolutionMatrices r;
  r.x = {{S(0)}, {S(1)}, {S(2)}, {S(3)}};
  // Row k of M·x is, in order, f_01, −f_23, f_02, −f_31, f_03, −f_12. Entry
  // (2, 1) is −α_2 S_3, as f_02 requires.
  r.M = {
      {S(1, -1), S(0), S(3, -a1), S(2, -a1)},
      {S(1), S(0), S(3), S(2, -1)},
      {S(2, -1), S(3, -a2), S(0), S(1, -a2)},
      {S(2), S(3, -1), S(0), S(1)},
      {S(3, -1), S(2, -a3), S(1, -a3), S(0)},
      {S(3), S(2), S(1, -1), S(0)},
  };
  r.N = {
      {S(1), S(2), S(3), z, z, z},
      {z, S(3, h * (1 - a2)), S(2, -h * (1 + a3)), S(0), S(3, h * (1 + a2)), S(2, -h * (1 - a3))},
      {S(3, -h * (1 + a1)), z, S(1, h * (1 - a3)), S(3, -h * (1 - a1)), S(0), S(1, h * (1 + a3))},
      {S(2, h * (1 - a1)), S(1, -h * (1 + a2)), z, S(2, h * (1 + a1)), S(1, -h * (1 - a2)), S(0)},
  };
  r.t = {{S(0), S(1), S(2), S(3)}};
  return r;
}

/// Entrywise product of NC matrices in the tensor algebra.
inline NCMatrix nc_product(const NCMatrix& a, const NCMatrix& b) {
  if (a.empty() || b.empty() || a[0].size() != b.size()) throw DimensionMismatch("NC matrix shapes do not compose");
  NCMatrix out(a.size(), std::vector<NCPoly>(b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b[0].size(); ++j)
      for (std::size_t k = 0; k < b.size(); ++k) out[i][j] += a[i][k] * b[k][j];
  return out;
}

/// True when every entry of a·b vanishes in A.
inline bool product_vanishes(const GradedAlgebra& alg, const NCMatrix& a, const NCMatrix& b) {
  for (const auto& row : nc_product(a, b))
    for (const auto& entry : row)
      if (!alg.coordinates(entry).empty()) return false;
  return true;
}

/// The printed N pairs with M only after recombining the relations:
/// N·M' = 0 for M' = G·M, whose rows are
///   m0 + m1, c2 (m2 + m3), c3 (m4 + m5), m0 − m1, c2 (m2 − m3), c3 (m4 − m5)
/// with c2 = (1 − α_1)/(1 + α_2) and c3 = (1 + α_1)/(1 − α_3). The solution G
/// of N·G·M = 0 is unique up to scale, so this is the only consistent M
/// sharing the printed N.
inline NCMatrix reconciled_M(const SklyaninParams& p) {
  const auto m = resolution_matrices(p).M;
  const Rational c2 = (1 - p.alpha1) / (1 + p.alpha2);
  const Rational c3 = (1 + p.alpha1) / (1 - p.alpha3);
  auto combo = [&](std::size_t a, std::size_t b, const Rational& sa, const Rational& sb) {
    std::vector<NCPoly> row(4);
    for (std::size_t j = 0; j < 4; ++j) row[j] = sa * m[a][j] + sb * m[b][j];
    return row;
  };
  return {combo(0, 1, 1, 1), combo(2, 3, c2, c2), combo(4, 5, c3, c3),
          combo(0, 1, 1, -1), combo(2, 3, c2, -c2), combo(4, 5, c3, -c3)};
}

/// Printed x, N, t with the reconciled M.
inline ResolutionMatrices reconciled_resolution_matrices(const SklyaninParams& p) {
  auto r = resolution_matrices(p);
  r.M = reconciled_M(p);
  return r;
}

struct ResolutionIdentities {
  bool Mx = false;
  bool NM = false;
  bool tN = false;
  bool all() const { return Mx && NM && tN; }
};

inline ResolutionIdentities resolution_identities(const SklyaninParams& p, const ResolutionMatrices& r) {
  const GradedAlgebra alg(sklyanin_relations(p), 3);
  return {product_vanishes(alg, r.M, r.x), product_vanishes(alg, r.N, r.M), product_vanishes(alg, r.t, r.N)};
}

inline ResolutionIdentities resolution_identities(const SklyaninParams& p) {
  return resolution_identities(p, resolution_matrices(p));
}

/// Matrix of v ↦ v·X from A_e^p to A_{e+1}^q for X a p×q matrix of linear
/// entries. Coordinate i·dim A_e + a is basis element a in slot i.
inline SparseMatrix right_multiplication_matrix(const GradedAlgebra& alg, const NCMatrix& X, std::size_t e) {
  const std::size_t p = X.size(), q = X.empty() ? 0 : X[0].size();
  const std::size_t src = alg.dim(e), dst = alg.dim(e + 1);
  SparseMatrix out(q * dst, p * src);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j)
      for (const auto& [w, c] : X[i][j].terms()) {
        if (w.size() != 1) throw std::invalid_argument("resolution matrices must have linear entries");
        for (std::size_t a = 0; a < src; ++a)
          for (const auto& [a2, v] : alg.right_multiply(e, SparseVector{{a, Rational(1)}}, w[0]))
            out.add(j * dst + a2, i * src + a, c * v);
      }
  return out;
}

/// The augmented complex k ← A ← A^4 ← A^6 ← A^4 ← A in weight d, as
/// positions 0..5 (k, then the free modules from the right).
inline ChainComplex augmented_resolution(const GradedAlgebra& alg, const ResolutionMatrices& r, std::size_t d) {
  const std::vector<std::size_t> ranks{1, 4, 6, 4, 1};
  const std::vector<const NCMatrix*> maps{&r.x, &r.M, &r.N, &r.t};
  auto dimA = [&](std::ptrdiff_t e) -> std::size_t { return e < 0 ? 0 : alg.dim(static_cast<std::size_t>(e)); };
  ChainComplex cx;
  cx.dims.push_back(d == 0 ? 1 : 0);
  for (std::size_t k = 0; k < 5; ++k) cx.dims.push_back(ranks[k] * dimA(static_cast<std::ptrdiff_t>(d) - static_cast<std::ptrdiff_t>(k)));
  SparseMatrix eps(cx.dims[0], cx.dims[1]);
  if (d == 0) eps.set(0, 0, 1);
  cx.boundaries.push_back(std::move(eps));
  for (std::size_t k = 0; k < 4; ++k) {
    const std::ptrdiff_t e = static_cast<std::ptrdiff_t>(d) - static_cast<std::ptrdiff_t>(k) - 1;
    if (e < 0)
      cx.boundaries.emplace_back(cx.dims[k + 1], cx.dims[k + 2]);
    else
      cx.boundaries.push_back(right_multiplication_matrix(alg, *maps[k], static_cast<std::size_t>(e)));
  }
  // Trailing zero position so injectivity of the last map is tested.
  cx.dims.push_back(0);
  cx.boundaries.emplace_back(cx.dims[5], 0);
  return cx;
}

/// True iff the augmented resolution is a complex and is exact at every
/// position in every weight ≤ max_weight.
inline bool koszul_resolution_exactness(const SklyaninParams& p, const ResolutionMatrices& r,
                                       std::size_t max_weight) {
  const GradedAlgebra alg(sklyanin_relations(p), max_weight);
  for (std::size_t d = 0; d <= max_weight; ++d) {
    try {
      for (auto h : homology(augmented_resolution(alg, r, d)))
        if (h != 0) return false;
    } catch (const NonzeroComposite&) {
      return false;
    }
  }
  return true;
}

/// Exactness of the resolution built on the reconciled M.
inline bool koszul_resolution_exactness(const SklyaninParams& p, std::size_t max_weight) {
  return koszul_resolution_exactness(p, reconciled_resolution_matrices(p), max_weight);
}

// ---------------------------------------------------------------------------
// The cycles Π ∈ K_3 and Δ ∈ K_4 (both of weight 4).

namespace detail {

/// The published closed form of q(Π): 3 Σ S_a ⊗ S_b ⊗ f for the four
/// listed (a, b, f).
inline BarChain printed_q_pi_terms(const SklyaninParams& p) {
  const auto f = sklyanin_relation_polys(p);  // f01 f02 f03 f23 f31 f12
  const std::vector<std::tuple<std::uint32_t, std::uint32_t, std::size_t>> items{
      {2, 3, 0}, {3, 1, 1}, {1, 2, 2}, {0, 1, 3}};
  BarChain out;
  for (const auto& [a, b, rel] : items)
    for (const auto& [w, c] : f[rel].terms())
      out.add_term({{1, a}, {1, b}, {1, w[0]}, {1, w[1]}}, 3 * c);
  return out;
}

/// Scale making the coefficient of S_2⊗S_3⊗S_0⊗S_1 in q(Π) equal to 3.
inline Rational pi_scale(const KoszulComplex& kc) {
  const auto& top = kc.subspace(4).basis().at(0);
  const Rational c = top[word_index({2, 3, 0, 1}, 4)];
  if (c == 0) throw std::logic_error("normalizing coefficient of the top Koszul vector vanishes");
  return Rational(3) / c;
}

}  // namespace detail

/// Π = Σ_s S_s ⊗ F_s(g), g spanning (A^!_4)^*, so that q(Π) = g in V^{⊗4}.
inline KoszulChain cycle_pi(const KoszulComplex& kc) {
  if (kc.subspace_dim(4) != 1 || kc.max_weight() < 4) throw std::logic_error("cycle Π needs dim (A^!_4)^* = 1 and weight ≥ 4");
  const Rational scale = detail::pi_scale(kc);
  const auto& top = kc.subspace(4).basis()[0];
  const Subspace& s3 = kc.subspace(3);
  const std::size_t g = kc.algebra().num_gens(), ds = s3.dim(), tail = int_pow(g, 3);
  KoszulChain pi{3, 4, {}};
  for (std::size_t b = 0; b < g; ++b) {
    DenseVector slice(top.begin() + static_cast<std::ptrdiff_t>(b * tail),
                      top.begin() + static_cast<std::ptrdiff_t>((b + 1) * tail));
    const auto coords = s3.coordinates(slice);
    if (!coords) throw SubcomplexViolation("top Koszul vector does not peel into (A^!_3)^*");
    for (std::size_t s = 0; s < ds; ++s)
      if ((*coords)[s] != 0) pi.coeffs[b * ds + s] = scale * (*coords)[s];
  }
  return pi;
}

/// Δ = 1 ⊗ g with the same normalization as Π, so q(Δ) = 1 ⊗ q(Π).
inline KoszulChain cycle_delta(const KoszulComplex& kc) {
  if (kc.subspace_dim(4) != 1 || kc.max_weight() < 4) throw std::logic_error("cycle Δ needs dim (A^!_4)^* = 1 and weight ≥ 4");
  return KoszulChain{4, 4, {{0, detail::pi_scale(kc)}}};
}

/// The published closed form of q(Π) as a bar chain.
inline BarChain printed_q_pi(const SklyaninParams& p) { return detail::printed_q_pi_terms(p); }

}  // namespace homalg
