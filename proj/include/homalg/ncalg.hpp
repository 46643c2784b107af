#pragma once

// Quadratic algebras A = T(V)/(W) over Q, their graded components computed
// by exact linear algebra, products in the chosen bases, Koszul duals, and
// the subspaces ∩ V^i ⊗ W ⊗ V^j of V^{⊗m}.

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
#include "homalg/rational.hpp"
#include <nlohmann/json.hpp>

namespace homalg {

/// A word in the generators; the empty word is the unit.
using TensorWord = std::vector<std::uint8_t>;

/// Position of a word in the lexicographically ordered basis of V^{⊗n}
/// (first letter most significant).
inline std::size_t word_index(const TensorWord& w, std::size_t num_gens) {
  std::size_t idx = 0;
  for (auto letter : w) idx = idx * num_gens + letter;
  return idx;
}

inline TensorWord word_from_index(std::size_t idx, std::size_t length, std::size_t num_gens) {
  TensorWord w(length);
  for (std::size_t k = length; k-- > 0;) {
    w[k] = static_cast<std::uint8_t>(idx % num_gens);
    idx /= num_gens;
  }
  return w;
}

inline std::size_t int_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp--) r *= base;
  return r;
}

inline std::string word_to_string(const TensorWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += "*";
    s += "S" + std::to_string(w[k]);
  }
  return s;
}

/// Noncommutative polynomial: a linear combination of words.
class NCPoly {
 public:
  using Terms = std::map<TensorWord, Rational>;

  NCPoly() = default;
  static NCPoly word(TensorWord w, const Rational& c = 1) {
    NCPoly p;
    p.add_term(std::move(w), c);
    return p;
  }
  static NCPoly generator(std::uint8_t i, const Rational& c = 1) { return word({i}, c); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const TensorWord& w, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Common word length, or nullopt when zero or inhomogeneous.
  std::optional<std::size_t> degree() const {
    if (terms_.empty()) return std::nullopt;
    const std::size_t d = terms_.begin()->first.size();
    for (const auto& [w, c] : terms_)
      if (w.size() != d) return std::nullopt;
    return d;
  }

  NCPoly& operator+=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  NCPoly& operator-=(const NCPoly& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  friend NCPoly operator+(NCPoly a, const NCPoly& b) { return a += b; }
  friend NCPoly operator-(NCPoly a, const NCPoly& b) { return a -= b; }
  friend NCPoly operator*(const Rational& s, const NCPoly& a) {
    NCPoly out;
    for (const auto& [w, c] : a.terms_) out.add_term(w, s * c);
    return out;
  }
  /// Concatenation product in the tensor algebra.
  friend NCPoly operator*(const NCPoly& a, const NCPoly& b) {
    NCPoly out;
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) {
        TensorWord w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        out.add_term(w, ca * cb);
      }
    return out;
  }
  friend bool operator==(const NCPoly& a, const NCPoly& b) { return a.terms_ == b.terms_; }

  /// Dense coordinates in V^{⊗n}; every term must have length n.
  DenseVector to_vector(std::size_t num_gens, std::size_t n) const {
    DenseVector v(int_pow(num_gens, n), Rational(0));
    for (const auto& [w, c] : terms_) {
      if (w.size() != n) throw std::invalid_argument("NCPoly term of length differing from " + std::to_string(n));
      for (auto letter : w)
        if (letter >= num_gens) throw std::out_of_range("generator index out of range");
      v[word_index(w, num_gens)] += c;
    }
    return v;
  }

  static NCPoly from_vector(const DenseVector& v, std::size_t num_gens, std::size_t n) {
    NCPoly p;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) p.add_term(word_from_index(i, n, num_gens), v[i]);
    return p;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      const Rational mag = abs(c);
      if (mag != 1) os << mag.get_str() << "*";
      os << word_to_string(w);
      first = false;
    }
    return os.str();
  }

 private:
  Terms terms_;
};

/// T(V)/(W) with V of dimension num_gens and W ⊂ V ⊗ V.
class QuadraticAlgebra {
 public:
  QuadraticAlgebra(std::size_t num_gens, Subspace relations) : g_(num_gens), w_(std::move(relations)) {
    if (num_gens == 0 || num_gens > 255) throw std::invalid_argument("generator count must be in 1..255");
    if (w_.ambient_dim() != num_gens * num_gens)
      throw DimensionMismatch("relations must live in the " + std::to_string(num_gens * num_gens) +
                              "-dimensional space V⊗V");
  }

  static QuadraticAlgebra from_relations(std::size_t num_gens, const std::vector<NCPoly>& relations) {
    std::vector<DenseVector> basis;
    for (const auto& r : relations) {
      if (r.degree() != std::optional<std::size_t>(2)) throw std::invalid_argument("relations must be quadratic");
      basis.push_back(r.to_vector(num_gens, 2));
    }
    return QuadraticAlgebra(num_gens, Subspace(num_gens * num_gens, std::move(basis)));
  }

  std::size_t num_gens() const { return g_; }
  const Subspace& relations() const { return w_; }

  NCPoly relation(std::size_t i) const { return NCPoly::from_vector(w_.basis().at(i), g_, 2); }

  /// {"generators": g, "relations": [[g² rational strings], …]}
  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["generators"] = g_;
    auto rels = nlohmann::ordered_json::array();
    for (const auto& v : w_.basis()) {
      auto row = nlohmann::ordered_json::array();
      for (const auto& c : v) row.push_back(c.get_str());
      rels.push_back(std::move(row));
    }
    j["relations"] = std::move(rels);
    return j;
  }

  static QuadraticAlgebra from_json(const nlohmann::json& j) {
    const std::size_t g = j.at("generators").get<std::size_t>();
    std::vector<DenseVector> basis;
    for (const auto& row : j.at("relations")) {
      DenseVector v;
      for (const auto& c : row) v.push_back(c.is_string() ? parse_rational(c.get<std::string>()) : Rational(c.get<long>()));
      basis.push_back(std::move(v));
    }
    return QuadraticAlgebra(g, Subspace(g * g, std::move(basis)));
  }

 private:
  std::size_t g_;
  Subspace w_;
};

/// Orthogonal complement of W under the factorwise pairing of V*⊗V* with
/// V⊗V (ζ_i dual to S_i).
inline Subspace orthogonal_relations(const QuadraticAlgebra& a) {
  return kernel_basis(a.relations().as_rows());
}

/// A^! = T(V*)/(W^⊥).
inline QuadraticAlgebra koszul_dual(const QuadraticAlgebra& a) {
  return QuadraticAlgebra(a.num_gens(), orthogonal_relations(a));
}

/// Representative words of A_n (lexicographically greedy) and the projection
/// from A_{n−1} ⊗ V onto A_n in those coordinates.
struct GradedBasis {
  std::size_t degree = 0;
  std::vector<TensorWord> representative_words;
  /// Column i·g + b is the image of (representative i of A_{n−1}) ⊗ S_b.
  /// Empty for degrees 0 and 1.
  SparseMatrix projection;

  std::size_t size() const { return representative_words.size(); }

  std::optional<std::size_t> index_of(const TensorWord& w) const {
    for (std::size_t i = 0; i < representative_words.size(); ++i)
      if (representative_words[i] == w) return i;
    return std::nullopt;
  }
};

/// The graded pieces A_0..A_max of a quadratic algebra together with the
/// maps of right and left multiplication by generators. Immutable once
/// built.
class GradedAlgebra {
 public:
  GradedAlgebra(QuadraticAlgebra algebra, std::size_t max_degree)
      : a_(std::move(algebra)), max_(max_degree), g_(a_.num_gens()) {
    bases_.push_back({0, {TensorWord{}}, {}});
    right_.resize(max_ + 1, std::vector<std::vector<SparseVector>>(g_));
    left_.resize(max_ + 1, std::vector<std::vector<SparseVector>>(g_));
    if (max_ >= 1) {
      GradedBasis b1{1, {}, {}};
      for (std::size_t s = 0; s < g_; ++s) b1.representative_words.push_back({static_cast<std::uint8_t>(s)});
      bases_.push_back(std::move(b1));
      for (std::size_t s = 0; s < g_; ++s) right_[0][s] = {SparseVector{{s, Rational(1)}}};
    }
    for (std::size_t n = 2; n <= max_; ++n) build_degree(n);
    for (std::size_t n = 0; n < max_; ++n)
      for (std::size_t s = 0; s < g_; ++s) {
        auto& images = left_[n][s];
        for (const auto& w : bases_[n].representative_words) {
          TensorWord sw{static_cast<std::uint8_t>(s)};
          sw.insert(sw.end(), w.begin(), w.end());
          images.push_back(word_coordinates(sw));
        }
      }
  }

  const QuadraticAlgebra& presentation() const { return a_; }
  std::size_t max_degree() const { return max_; }
  std::size_t num_gens() const { return g_; }

  const GradedBasis& basis(std::size_t n) const {
    check_degree(n);
    return bases_[n];
  }
  std::size_t dim(std::size_t n) const { return basis(n).size(); }

  /// u · S_b for u in A_n.
  SparseVector right_multiply(std::size_t n, const SparseVector& u, std::size_t b) const {
    if (n + 1 > max_) throw std::out_of_range("product degree exceeds the computed range");
    SparseVector out;
    for (const auto& [i, c] : u) axpy(out, c, right_[n][b].at(i));
    return out;
  }

  /// S_b · u for u in A_n.
  SparseVector left_multiply(std::size_t n, const SparseVector& u, std::size_t b) const {
    if (n + 1 > max_) throw std::out_of_range("product degree exceeds the computed range");
    SparseVector out;
    for (const auto& [i, c] : u) axpy(out, c, left_[n][b].at(i));
    return out;
  }

  /// Image in A_{|w|} of a word.
  SparseVector word_coordinates(const TensorWord& w) const {
    check_degree(w.size());
    SparseVector v{{0, Rational(1)}};
    for (std::size_t k = 0; k < w.size(); ++k) v = right_multiply(k, v, w[k]);
    return v;
  }

  /// Image in A_n of a homogeneous element of T(V) of degree n.
  SparseVector coordinates(const NCPoly& p) const {
    SparseVector v;
    for (const auto& [w, c] : p.terms()) axpy(v, c, word_coordinates(w));
    return v;
  }

  /// Product of u ∈ A_m and v ∈ A_n in A_{m+n}.
  SparseVector multiply(std::size_t m, const SparseVector& u, std::size_t n, const SparseVector& v) const {
    check_degree(m + n);
    SparseVector out;
    for (const auto& [j, c] : v) {
      SparseVector acc = u;
      const auto& w = bases_[n].representative_words[j];
      for (std::size_t k = 0; k < w.size(); ++k) acc = right_multiply(m + k, acc, w[k]);
      axpy(out, c, acc);
    }
    return out;
  }

  /// Product of two basis elements.
  SparseVector multiply_basis(std::size_t m, std::size_t i, std::size_t n, std::size_t j) const {
    return multiply(m, SparseVector{{i, Rational(1)}}, n, SparseVector{{j, Rational(1)}});
  }

  NCPoly to_poly(std::size_t n, const SparseVector& v) const {
    NCPoly p;
    for (const auto& [i, c] : v) p.add_term(basis(n).representative_words.at(i), c);
    return p;
  }

 private:
  void check_degree(std::size_t n) const {
    if (n > max_)
      throw std::out_of_range("degree " + std::to_string(n) + " exceeds the computed range " + std::to_string(max_));
  }

  void build_degree(std::size_t n) {
    const std::size_t prev = bases_[n - 1].size();
    const std::size_t cand = prev * g_;
    const auto& rels = a_.relations().basis();
    // Relation rows u ⊗ r for u in A_{n−2}, written in A_{n−1} ⊗ V coordinates.
    // Columns are reversed so that pivots land on the largest words.
    SparseMatrix m(bases_[n - 2].size() * rels.size(), cand);
    std::size_t row = 0;
    for (std::size_t j = 0; j < bases_[n - 2].size(); ++j)
      for (const auto& r : rels) {
        for (std::size_t a = 0; a < g_; ++a)
          for (std::size_t b = 0; b < g_; ++b) {
            const Rational& c = r[a * g_ + b];
            if (c == 0) continue;
            for (const auto& [i, v] : right_[n - 2][a][j]) m.add(row, cand - 1 - (i * g_ + b), c * v);
          }
        ++row;
      }
    const Echelon e = echelon_form(m, true);
    std::vector<std::ptrdiff_t> pivot_row(cand, -1);
    for (std::size_t r = 0; r < e.rows.size(); ++r) pivot_row[cand - 1 - e.pivot_cols[r]] = static_cast<std::ptrdiff_t>(r);

    GradedBasis basis{n, {}, SparseMatrix()};
    std::vector<std::ptrdiff_t> position(cand, -1);
    for (std::size_t c = 0; c < cand; ++c) {
      if (pivot_row[c] >= 0) continue;
      position[c] = static_cast<std::ptrdiff_t>(basis.representative_words.size());
      TensorWord w = bases_[n - 1].representative_words[c / g_];
      w.push_back(static_cast<std::uint8_t>(c % g_));
      basis.representative_words.push_back(std::move(w));
    }
    basis.projection = SparseMatrix(basis.representative_words.size(), cand);
    for (std::size_t c = 0; c < cand; ++c) {
      if (pivot_row[c] < 0) {
        basis.projection.set(static_cast<std::size_t>(position[c]), c, 1);
        continue;
      }
      for (const auto& entry : e.rows[static_cast<std::size_t>(pivot_row[c])]) {
        const std::size_t orig = cand - 1 - entry.col;
        if (orig == c) continue;
        basis.projection.set(static_cast<std::size_t>(position[orig]), c, -entry.value);
      }
    }
    const SparseMatrix cols = basis.projection.transpose();
    for (std::size_t i = 0; i < prev; ++i)
      for (std::size_t b = 0; b < g_; ++b) right_[n - 1][b].push_back(cols.row(i * g_ + b));
    bases_.push_back(std::move(basis));
  }

  QuadraticAlgebra a_;
  std::size_t max_;
  std::size_t g_;
  std::vector<GradedBasis> bases_;
  // right_[n][b][i]: coordinates in A_{n+1} of (representative i of A_n)·S_b.
  std::vector<std::vector<std::vector<SparseVector>>> right_;
  // left_[n][b][i]: coordinates in A_{n+1} of S_b·(representative i of A_n).
  std::vector<std::vector<std::vector<SparseVector>>> left_;
};

inline std::size_t graded_dim(const QuadraticAlgebra& a, std::size_t n) { return GradedAlgebra(a, n).dim(n); }

inline GradedBasis graded_basis(const QuadraticAlgebra& a, std::size_t n) { return GradedAlgebra(a, n).basis(n); }

inline std::size_t koszul_dual_dim(const QuadraticAlgebra& a, std::size_t m) {
  return GradedAlgebra(koszul_dual(a), m).dim(m);
}

/// S ⊗ V inside V^{⊗(m+1)} for S ⊂ V^{⊗m}.
inline Subspace tensor_right(const Subspace& s, std::size_t num_gens) {
  std::vector<DenseVector> basis;
  const std::size_t amb = s.ambient_dim() * num_gens;
  for (const auto& v : s.basis())
    for (std::size_t b = 0; b < num_gens; ++b) {
      DenseVector w(amb, Rational(0));
      for (std::size_t i = 0; i < v.size(); ++i) w[i * num_gens + b] = v[i];
      basis.push_back(std::move(w));
    }
  return Subspace(amb, std::move(basis));
}

/// V ⊗ S inside V^{⊗(m+1)} for S ⊂ V^{⊗m}.
inline Subspace tensor_left(const Subspace& s, std::size_t num_gens) {
  std::vector<DenseVector> basis;
  const std::size_t amb = s.ambient_dim() * num_gens;
  for (std::size_t b = 0; b < num_gens; ++b)
    for (const auto& v : s.basis()) {
      DenseVector w(amb, Rational(0));
      for (std::size_t i = 0; i < v.size(); ++i) w[b * s.ambient_dim() + i] = v[i];
      basis.push_back(std::move(w));
    }
  return Subspace(amb, std::move(basis));
}

/// (A^!_m)^* = ∩_{i+j+2=m} V^{⊗i} ⊗ W ⊗ V^{⊗j} inside V^{⊗m}, in canonical
/// form. Built as (S_{m−1} ⊗ V) ∩ (V ⊗ S_{m−1}) for m ≥ 3.
inline std::vector<Subspace> koszul_subspaces(const QuadraticAlgebra& a, std::size_t max_m) {
  const std::size_t g = a.num_gens();
  std::vector<Subspace> out;
  out.push_back(Subspace::full(1));
  if (max_m >= 1) out.push_back(Subspace::full(g));
  if (max_m >= 2) out.push_back(Subspace::span(g * g, a.relations().basis()));
  for (std::size_t m = 3; m <= max_m; ++m)
    out.push_back(intersect(tensor_right(out[m - 1], g), tensor_left(out[m - 1], g)));
  return out;
}

inline Subspace koszul_subspace(const QuadraticAlgebra& a, std::size_t m) { return koszul_subspaces(a, m).back(); }

/// Sklyanin parameters; α_1 + α_2 + α_3 + α_1α_2α_3 = 0 holds exactly.
struct SklyaninParams {
  Rational alpha1, alpha2, alpha3;

  bool satisfies_constraint() const { return alpha1 + alpha2 + alpha3 + alpha1 * alpha2 * alpha3 == 0; }
  bool is_generic() const {
    for (const Rational* a : {&alpha1, &alpha2, &alpha3})
      if (*a == 0 || *a == 1 || *a == -1) return false;
    return true;
  }
  const Rational& alpha(std::size_t i) const {
    switch (i) {
      case 1: return alpha1;
      case 2: return alpha2;
      case 3: return alpha3;
      default: throw std::out_of_range("alpha index must be 1..3");
    }
  }
  std::string to_string() const {
    return "(" + alpha1.get_str() + ", " + alpha2.get_str() + ", " + alpha3.get_str() + ")";
  }
};

class DegenerateParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Completes (α_1, α_2) with α_3 = −(α_1 + α_2)/(1 + α_1α_2). With the guard
/// on, rejects any α_i ∈ {0, ±1}.
inline SklyaninParams sklyanin_params(const Rational& alpha1, const Rational& alpha2, bool genericity_guard = true) {
  const Rational den = 1 + alpha1 * alpha2;
  if (den == 0) throw DegenerateParameters("1 + alpha1*alpha2 = 0: alpha3 is undefined");
  SklyaninParams p{alpha1, alpha2, Rational(-(alpha1 + alpha2) / den)};
  if (genericity_guard && !p.is_generic())
    throw DegenerateParameters("alpha parameters " + p.to_string() + " hit the degenerate locus {0, 1, -1}");
  return p;
}

/// f_{0i} = [S_0, S_i] − α_i(S_j S_k + S_k S_j),
/// f_{jk} = [S_j, S_k] − (S_0 S_i + S_i S_0),  (i, j, k) cyclic in (1, 2, 3).
/// Returned in the order f_01, f_02, f_03, f_23, f_31, f_12.
inline std::vector<NCPoly> sklyanin_relation_polys(const SklyaninParams& p) {
  auto S = [](std::uint8_t i) { return NCPoly::generator(i); };
  auto comm = [&](std::uint8_t a, std::uint8_t b) { return S(a) * S(b) - S(b) * S(a); };
  auto anti = [&](std::uint8_t a, std::uint8_t b) { return S(a) * S(b) + S(b) * S(a); };
  std::vector<NCPoly> out;
  for (std::uint8_t i = 1; i <= 3; ++i) {
    const std::uint8_t j = i % 3 + 1, k = j % 3 + 1;
    out.push_back(comm(0, i) - p.alpha(i) * anti(j, k));
  }
  for (std::uint8_t i = 1; i <= 3; ++i) {
    const std::uint8_t j = i % 3 + 1, k = j % 3 + 1;
    out.push_back(comm(j, k) - anti(0, i));
  }
  return out;
}

inline QuadraticAlgebra sklyanin_relations(const SklyaninParams& p) {
  return QuadraticAlgebra::from_relations(4, sklyanin_relation_polys(p));
}

}  // namespace homalg
