#pragma once

// Poisson structures on polynomial rings, the Brylinski boundary on
// differential forms, and weight-graded Poisson homology.

#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "homalg/linalg.hpp"
#include "homalg/parallel.hpp"
#include "homalg/poly.hpp"
#include "homalg/series.hpp"
#include "homalg/tables.hpp"

namespace homalg {

/// A listed homology generator whose boundary does not vanish.
class NotACycle : public std::invalid_argument {
 public:
  NotACycle(std::size_t index, const std::string& form)
      : std::invalid_argument("generator " + std::to_string(index) + " is not a cycle: " + form), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Brackets {x_i, x_j} for i < j; the remaining pairs follow by antisymmetry.
class PoissonStructure {
 public:
  explicit PoissonStructure(std::size_t num_vars) : n_(num_vars) {}

  std::size_t num_vars() const { return n_; }

  void set(std::size_t i, std::size_t j, const CommPoly& value) {
    if (i >= n_ || j >= n_ || i == j) throw std::out_of_range("bracket table index");
    if (value.num_vars() != n_) throw VariableCountMismatch("bracket value in the wrong number of variables");
    if (i < j)
      table_[{i, j}] = value;
    else
      table_[{j, i}] = -value;
  }

  /// {x_i, x_j}.
  CommPoly bracket(std::size_t i, std::size_t j) const {
    if (i == j) return CommPoly(n_);
    const bool swapped = i > j;
    auto it = table_.find(swapped ? std::pair{j, i} : std::pair{i, j});
    if (it == table_.end()) return CommPoly(n_);
    return swapped ? -it->second : it->second;
  }

  /// True when every nonzero table entry is a homogeneous quadratic.
  bool is_homogeneous_quadratic() const {
    for (const auto& [key, value] : table_)
      if (!value.is_homogeneous(2)) return false;
    return true;
  }

 private:
  std::size_t n_;
  std::map<std::pair<std::size_t, std::size_t>, CommPoly> table_;
};

/// Biderivation extension of the generator table:
///   {f, g} = Σ_{i<j} (∂_i f ∂_j g − ∂_j f ∂_i g) {x_i, x_j}.
inline CommPoly extend_bracket(const PoissonStructure& ps, const CommPoly& f, const CommPoly& g) {
  const std::size_t n = ps.num_vars();
  if (f.num_vars() != n || g.num_vars() != n) throw VariableCountMismatch("extend_bracket: variable count mismatch");
  std::vector<CommPoly> df, dg;
  for (std::size_t i = 0; i < n; ++i) {
    df.push_back(f.derivative(i));
    dg.push_back(g.derivative(i));
  }
  CommPoly out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const CommPoly b = ps.bracket(i, j);
      if (b.is_zero()) continue;
      const CommPoly coeff = df[i] * dg[j] - df[j] * dg[i];
      if (!coeff.is_zero()) out += coeff * b;
    }
  return out;
}

/// λ · (df ∧ dg ∧ dP_1 ∧ … ∧ dP_{n−2}) / (dx_0 ∧ … ∧ dx_{n−1}).
inline CommPoly jacobian_bracket(const std::vector<CommPoly>& casimirs, const CommPoly& lambda, const CommPoly& f,
                                 const CommPoly& g) {
  const std::size_t n = f.num_vars();
  if (n < 3) throw std::invalid_argument("jacobian_bracket needs at least 3 variables");
  if (casimirs.size() + 2 != n) throw std::invalid_argument("jacobian_bracket needs n - 2 Casimirs");
  f.check_same(g);
  f.check_same(lambda);
  for (const auto& p : casimirs) f.check_same(p);
  DiffForm w = de_rham_d(DiffForm::function(f));
  w = wedge(w, de_rham_d(DiffForm::function(g)));
  for (const auto& p : casimirs) w = wedge(w, de_rham_d(DiffForm::function(p)));
  const IndexSet volume = (IndexSet(1) << n) - 1;
  return lambda * w.component(volume);
}

/// Poisson structure whose table is the Jacobian bracket of the generators.
inline PoissonStructure jacobian_structure(const std::vector<CommPoly>& casimirs, const CommPoly& lambda) {
  const std::size_t n = lambda.num_vars();
  PoissonStructure ps(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      ps.set(i, j, jacobian_bracket(casimirs, lambda, CommPoly::variable(n, i), CommPoly::variable(n, j)));
  return ps;
}

/// The Sklyanin bracket on Q[x_0..x_3]:
///   {x_0, x_i} = −2 β_i x_j x_k,  {x_j, x_k} = −2 x_0 x_i,
/// (i, j, k) cyclic in (1, 2, 3), β_i = J_j − J_k.
inline PoissonStructure sklyanin_structure(const Rational& j1, const Rational& j2, const Rational& j3) {
  const Rational J[4] = {0, j1, j2, j3};
  PoissonStructure ps(4);
  auto x = [](std::size_t i) { return CommPoly::variable(4, i); };
  for (std::size_t i = 1; i <= 3; ++i) {
    const std::size_t j = i % 3 + 1, k = j % 3 + 1;
    const Rational beta = J[j] - J[k];
    ps.set(0, i, Rational(-2) * beta * (x(j) * x(k)));
    ps.set(j, k, Rational(-2) * (x(0) * x(i)));
  }
  return ps;
}

/// P_1 = x_1² + x_2² + x_3², P_2 = x_0² + J_1 x_1² + J_2 x_2² + J_3 x_3².
inline std::vector<CommPoly> sklyanin_casimirs(const Rational& j1, const Rational& j2, const Rational& j3) {
  auto sq = [](std::size_t i) {
    Exponent e(4, 0);
    e[i] = 2;
    return CommPoly::monomial(4, e, 1);
  };
  CommPoly p1 = sq(1) + sq(2) + sq(3);
  CommPoly p2 = sq(0) + j1 * sq(1) + j2 * sq(2) + j3 * sq(3);
  return {p1, p2};
}

/// Jacobi identity on every generator triple i < j < k.
inline bool jacobi_check(const PoissonStructure& ps) {
  const std::size_t n = ps.num_vars();
  auto x = [n](std::size_t i) { return CommPoly::variable(n, i); };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        CommPoly s = extend_bracket(ps, x(i), ps.bracket(j, k));
        s += extend_bracket(ps, x(j), ps.bracket(k, i));
        s += extend_bracket(ps, x(k), ps.bracket(i, j));
        if (!s.is_zero()) return false;
      }
  return true;
}

/// The Brylinski boundary ∂: Ω^k → Ω^{k−1}, applied to each basis term
/// F_0 dx_{i_1} ∧ … ∧ dx_{i_k}:
///   Σ_a (−1)^{a+1} {F_0, x_{i_a}} dx_{I∖i_a}
///   + Σ_{a<b} (−1)^{a+b} F_0 d{x_{i_a}, x_{i_b}} ∧ dx_{I∖{i_a,i_b}}.
inline DiffForm brylinski_boundary(const PoissonStructure& ps, const DiffForm& w) {
  const std::size_t n = ps.num_vars();
  if (w.num_vars() != n) throw VariableCountMismatch("brylinski_boundary: variable count mismatch");
  if (w.degree() == 0) throw std::invalid_argument("brylinski_boundary: form degree must be at least 1");
  const std::size_t k = w.degree();
  DiffForm out(n, k - 1);
  for (const auto& [set, f0] : w.components()) {
    const auto idx = indices_of(set);
    for (std::size_t a = 0; a < k; ++a) {
      // a is 0-based, so (−1)^{a+1} with 1-based a becomes (−1)^a.
      CommPoly term = extend_bracket(ps, f0, CommPoly::variable(n, idx[a]));
      if (term.is_zero()) continue;
      if (a % 2) term = -term;
      out.add(set & ~(IndexSet(1) << idx[a]), term);
    }
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b) {
        const CommPoly br = ps.bracket(idx[a], idx[b]);
        if (br.is_zero()) continue;
        const IndexSet rest = set & ~(IndexSet(1) << idx[a]) & ~(IndexSet(1) << idx[b]);
        DiffForm piece = wedge(de_rham_d(DiffForm::function(br)), DiffForm::basis(CommPoly(n, Rational(1)), rest));
        piece = f0 * piece;
        if ((a + b) % 2) piece = Rational(-1) * piece;
        out += piece;
      }
  }
  return out;
}

/// Basis x^e dx_I of the weight-d part of Ω^k (|e| + k = d), ordered by
/// monomial (lexicographic) and then by index tuple.
class FormBasis {
 public:
  FormBasis(std::size_t num_vars, std::size_t k, std::size_t weight) : n_(num_vars), k_(k) {
    if (k <= weight && k <= num_vars) {
      const auto monos = monomials_of_degree(num_vars, static_cast<unsigned>(weight - k));
      const auto sets = index_sets(num_vars, k);
      for (const auto& e : monos)
        for (IndexSet s : sets) {
          index_.emplace(std::pair{e, s}, elements_.size());
          elements_.emplace_back(e, s);
        }
    }
  }

  std::size_t size() const { return elements_.size(); }
  std::size_t num_vars() const { return n_; }
  std::size_t form_degree() const { return k_; }

  DiffForm element(std::size_t i) const {
    const auto& [e, s] = elements_.at(i);
    return DiffForm::basis(CommPoly::monomial(n_, e, 1), s);
  }

  /// Coordinates of a form whose terms all lie in this weight component.
  SparseVector coordinates(const DiffForm& w) const {
    SparseVector v;
    if (w.is_zero()) return v;
    if (w.degree() != k_) throw std::invalid_argument("form degree differs from basis degree");
    for (const auto& [s, f] : w.components())
      for (const auto& [e, c] : f.terms()) {
        auto it = index_.find({e, s});
        if (it == index_.end()) throw std::invalid_argument("form has a term outside this weight component");
        v.emplace(it->second, c);
      }
    return v;
  }

 private:
  std::size_t n_, k_;
  std::vector<std::pair<Exponent, IndexSet>> elements_;
  std::map<std::pair<Exponent, IndexSet>, std::size_t> index_;
};

/// Matrix of ∂_k from the weight-d part of Ω^k to that of Ω^{k−1}.
inline SparseMatrix boundary_matrix(const PoissonStructure& ps, std::size_t k, std::size_t weight) {
  const FormBasis src(ps.num_vars(), k, weight), dst(ps.num_vars(), k - 1, weight);
  SparseMatrix m(dst.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c) m.add_column(c, dst.coordinates(brylinski_boundary(ps, src.element(c))));
  return m;
}

/// The weight-d strand 0 ← Ω^0_d ← Ω^1_d ← … ← Ω^n_d of the Poisson complex.
inline ChainComplex poisson_complex(const PoissonStructure& ps, std::size_t weight) {
  const std::size_t n = ps.num_vars();
  ChainComplex cx;
  for (std::size_t k = 0; k <= n; ++k) cx.dims.push_back(FormBasis(n, k, weight).size());
  for (std::size_t k = 1; k <= n; ++k) cx.boundaries.push_back(boundary_matrix(ps, k, weight));
  return cx;
}

/// dim PH_i(R, ∂)_d for 0 ≤ i ≤ n and 0 ≤ d ≤ max_weight. Weights are
/// independent jobs and run on up to worker_count() threads.
inline WeightTable poisson_homology_dims(const PoissonStructure& ps, std::size_t max_weight) {
  if (!ps.is_homogeneous_quadratic())
    throw std::invalid_argument("poisson_homology_dims: bracket table is not homogeneous quadratic");
  const std::size_t n = ps.num_vars();
  std::vector<std::vector<std::size_t>> per_weight(max_weight + 1);
  parallel_for(max_weight + 1, [&](std::size_t d) { per_weight[d] = homology(poisson_complex(ps, d)); });
  WeightTable table("poisson", n, max_weight);
  for (std::size_t d = 0; d <= max_weight; ++d)
    for (std::size_t i = 0; i <= n; ++i) table.set(i, d, per_weight[d][i]);
  return table;
}

namespace detail {

// Exponent vectors over the Casimirs whose weighted degree is `target`.
inline std::vector<std::vector<unsigned>> casimir_monomials(const std::vector<unsigned>& weights, unsigned target) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> e(weights.size(), 0);
  auto rec = [&](auto&& self, std::size_t pos, unsigned remaining) -> void {
    if (pos == weights.size()) {
      if (remaining == 0) out.push_back(e);
      return;
    }
    for (unsigned k = 0; k * weights[pos] <= remaining; ++k) {
      e[pos] = k;
      self(self, pos + 1, remaining - k * weights[pos]);
    }
    e[pos] = 0;
  };
  rec(rec, 0, target);
  return out;
}

}  // namespace detail

/// True iff, for every weight d ≤ max_weight, the classes of
/// m(P_1, …)·g (g a generator, m a Casimir monomial) span PH_i in weight d.
/// Throws NotACycle for a generator with nonzero boundary.
inline bool generator_span_check(const PoissonStructure& ps, std::size_t i, const std::vector<DiffForm>& generators,
                                 const std::vector<CommPoly>& casimirs, std::size_t max_weight) {
  const std::size_t n = ps.num_vars();
  if (i > n) throw std::out_of_range("homological index exceeds variable count");
  std::vector<int> gen_weight;
  for (std::size_t g = 0; g < generators.size(); ++g) {
    const DiffForm& w = generators[g];
    if (w.num_vars() != n || w.degree() != i) throw std::invalid_argument("generator has the wrong shape");
    if (i > 0 && !brylinski_boundary(ps, w).is_zero()) throw NotACycle(g, w.to_string());
    const int weight = w.weight();
    if (weight < 0) throw std::invalid_argument("generator " + std::to_string(g) + " is zero or not homogeneous");
    gen_weight.push_back(weight);
  }
  std::vector<unsigned> cas_weight;
  for (const auto& p : casimirs) {
    if (p.num_vars() != n || !p.is_homogeneous() || p.degree() < 1)
      throw std::invalid_argument("Casimirs must be nonconstant homogeneous polynomials");
    cas_weight.push_back(static_cast<unsigned>(p.degree()));
  }

  for (std::size_t d = 0; d <= max_weight; ++d) {
    const FormBasis basis(n, i, d);
    if (basis.size() == 0) continue;
    const std::size_t ker_dim = i == 0 ? basis.size() : basis.size() - rank(boundary_matrix(ps, i, d));
    std::vector<SparseVector> columns;
    if (i < n) {
      const SparseMatrix in = boundary_matrix(ps, i + 1, d);
      const SparseMatrix in_t = in.transpose();
      for (std::size_t c = 0; c < in.cols(); ++c) columns.push_back(in_t.row(c));
    }
    for (std::size_t g = 0; g < generators.size(); ++g) {
      if (gen_weight[g] > static_cast<int>(d)) continue;
      for (const auto& e : detail::casimir_monomials(cas_weight, static_cast<unsigned>(d - gen_weight[g]))) {
        CommPoly m(n, Rational(1));
        for (std::size_t c = 0; c < e.size(); ++c) m = m * casimirs[c].pow(e[c]);
        const DiffForm product = m * generators[g];
        if (i > 0 && !brylinski_boundary(ps, product).is_zero())
          throw std::invalid_argument("a Casimir multiple of generator " + std::to_string(g) +
                                      " is not a cycle; the listed Casimirs are not central");
        columns.push_back(basis.coordinates(product));
      }
    }
    SparseMatrix stacked(columns.size(), basis.size());
    for (std::size_t r = 0; r < columns.size(); ++r)
      for (const auto& [c, v] : columns[r]) stacked.set(r, c, v);
    if (rank(stacked) != ker_dim) return false;
  }
  return true;
}

/// Degreewise check that P_1, P_2 (homogeneous quadrics in 4 variables) form
/// a complete intersection: dim (R/(P_1, P_2))_k must equal the t^k
/// coefficient of (1 − t²)²/(1 − t)⁴ for k ≤ test_degree.
inline bool complete_intersection_check(const CommPoly& p1, const CommPoly& p2, std::size_t test_degree = 8) {
  if (p1.num_vars() != 4 || p2.num_vars() != 4)
    throw std::invalid_argument("complete_intersection_check expects polynomials in 4 variables");
  if (p1.is_zero() || p2.is_zero() || !p1.is_homogeneous(2) || !p2.is_homogeneous(2))
    throw std::invalid_argument("complete_intersection_check expects homogeneous quadrics");
  const RationalSeries expected_series(IntPoly{1, 0, -2, 0, 1}, IntPoly{1, -4, 6, -4, 1});
  const auto expected = expected_series.expand(test_degree);
  for (std::size_t k = 0; k <= test_degree; ++k) {
    const auto monos = monomials_of_degree(4, static_cast<unsigned>(k));
    std::map<Exponent, std::size_t> index;
    for (std::size_t i = 0; i < monos.size(); ++i) index.emplace(monos[i], i);
    std::size_t ideal_dim = 0;
    if (k >= 2) {
      const auto lower = monomials_of_degree(4, static_cast<unsigned>(k - 2));
      SparseMatrix gens(2 * lower.size(), monos.size());
      std::size_t r = 0;
      for (const CommPoly* p : {&p1, &p2})
        for (const auto& e : lower) {
          const CommPoly prod = *p * CommPoly::monomial(4, e, 1);
          for (const auto& [f, c] : prod.terms()) gens.set(r, index.at(f), c);
          ++r;
        }
      ideal_dim = rank(gens);
    }
    if (Integer(static_cast<unsigned long>(monos.size() - ideal_dim)) != expected[k]) return false;
  }
  return true;
}

}  // namespace homalg
