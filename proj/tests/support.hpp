#pragma once

// Independent oracles and random generators shared by the unit tests.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <random>
#include <vector>

#include "homalg/hochschild.hpp"
#include "homalg/linalg.hpp"
#include "homalg/ncalg.hpp"
#include "homalg/poisson.hpp"
#include "homalg/poly.hpp"
#include "homalg/rational.hpp"

namespace testing_support {

using namespace homalg;

inline SparseMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  SparseMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, dist(rng));
  return m;
}

/// Determinant by permutation expansion.
inline Rational leibniz_det(const std::vector<std::vector<Rational>>& a) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    Rational term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n && term != 0; ++i) term *= a[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) s.push_back(i);
    out.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

/// Size of the largest nonvanishing minor, by exhaustive search.
inline std::size_t minor_rank(const SparseMatrix& m) {
  for (std::size_t k = std::min(m.rows(), m.cols()); k > 0; --k)
    for (const auto& rs : subsets(m.rows(), k))
      for (const auto& cs : subsets(m.cols(), k)) {
        std::vector<std::vector<Rational>> sub(k, std::vector<Rational>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = m.at(rs[i], cs[j]);
        if (leibniz_det(sub) != 0) return k;
      }
  return 0;
}

/// Polynomial determinant by permutation expansion.
inline CommPoly leibniz_det(const std::vector<std::vector<CommPoly>>& a, std::size_t num_vars) {
  const std::size_t n = a.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  CommPoly total(num_vars, Rational(0));
  do {
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    CommPoly term(num_vars, Rational(inversions % 2 ? -1 : 1));
    for (std::size_t i = 0; i < n; ++i) term = term * a[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline CommPoly x(std::size_t i, std::size_t n = 4) { return CommPoly::variable(n, i); }
inline CommPoly constant(const Rational& c, std::size_t n = 4) { return CommPoly(n, c); }

/// Two-sum boundary evaluated directly on F_0 dF_1 ∧ … ∧ dF_k.
inline DiffForm direct_boundary(const PoissonStructure& ps, const CommPoly& f0, const std::vector<CommPoly>& fs) {
  const std::size_t n = ps.num_vars(), k = fs.size();
  DiffForm out(n, k - 1);
  auto without = [&](std::vector<std::size_t> skip) {
    std::vector<CommPoly> rest;
    for (std::size_t t = 0; t < k; ++t)
      if (std::find(skip.begin(), skip.end(), t) == skip.end()) rest.push_back(fs[t]);
    return rest;
  };
  for (std::size_t i = 0; i < k; ++i) {
    const Rational sign = (i % 2 == 0) ? 1 : -1;  // (−1)^{(i+1)+1} with 1-based i+1
    out += sign * DiffForm::decomposable(extend_bracket(ps, f0, fs[i]), without({i}));
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const Rational sign = ((i + j) % 2 == 0) ? 1 : -1;
      auto rest = without({i, j});
      rest.insert(rest.begin(), extend_bracket(ps, fs[i], fs[j]));
      out += sign * DiffForm::decomposable(f0, rest);
    }
  return out;
}

inline CommPoly random_poly(std::mt19937_64& rng, std::size_t n, unsigned degree, std::size_t terms) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  const auto monos = monomials_of_degree(n, degree);
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  CommPoly p(n, Rational(0));
  for (std::size_t t = 0; t < terms; ++t) p.add_term(monos[pick(rng)], coeff(rng));
  return p;
}

inline DiffForm random_form(std::mt19937_64& rng, std::size_t n, std::size_t k, unsigned coeff_degree) {
  DiffForm w(n, k);
  for (IndexSet s : index_sets(n, k)) w.add(s, random_poly(rng, n, coeff_degree, 2));
  return w;
}

/// Random generic Sklyanin parameters with small rational α_1, α_2.
inline SklyaninParams random_params(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(2, 9);
  for (;;) {
    try {
      return sklyanin_params(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
    } catch (const DegenerateParameters&) {
    }
  }
}

/// dim A_n = 4^n − rank of all placements V^i ⊗ W ⊗ V^j.
inline std::size_t placement_dim(const QuadraticAlgebra& a, std::size_t n) {
  const std::size_t g = a.num_gens();
  const std::size_t total = int_pow(g, n);
  if (n < 2) return total;
  std::vector<DenseVector> rows;
  for (std::size_t i = 0; i + 2 <= n; ++i) {
    const std::size_t left = int_pow(g, i), right = int_pow(g, n - i - 2);
    for (const auto& r : a.relations().basis())
      for (std::size_t u = 0; u < left; ++u)
        for (std::size_t v = 0; v < right; ++v) {
          DenseVector row(total, Rational(0));
          for (std::size_t k = 0; k < g * g; ++k) row[(u * g * g + k) * right + v] = r[k];
          rows.push_back(std::move(row));
        }
  }
  SparseMatrix m(rows.size(), total);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < total; ++c) m.set(r, c, rows[r][c]);
  return total - rank(m);
}

/// ∩_{i+j+2=m} V^i ⊗ W ⊗ V^j by intersecting all placements directly.
inline Subspace direct_koszul_subspace(const QuadraticAlgebra& a, std::size_t m) {
  const std::size_t g = a.num_gens(), total = int_pow(g, m);
  std::optional<Subspace> acc;
  for (std::size_t i = 0; i + 2 <= m; ++i) {
    const std::size_t left = int_pow(g, i), right = int_pow(g, m - i - 2);
    std::vector<DenseVector> basis;
    for (const auto& r : a.relations().basis())
      for (std::size_t u = 0; u < left; ++u)
        for (std::size_t v = 0; v < right; ++v) {
          DenseVector row(total, Rational(0));
          for (std::size_t k = 0; k < g * g; ++k) row[(u * g * g + k) * right + v] = r[k];
          basis.push_back(std::move(row));
        }
    Subspace placed(total, std::move(basis));
    acc = acc ? intersect(*acc, placed) : placed;
  }
  return *acc;
}

/// Taylor coefficients of num/den by long division (den(0) = ±1).
inline std::vector<long> long_division(const std::vector<long>& num, const std::vector<long>& den, std::size_t n) {
  std::vector<long> rem(n + 1, 0), out(n + 1, 0);
  for (std::size_t i = 0; i < num.size() && i <= n; ++i) rem[i] = num[i];
  for (std::size_t k = 0; k <= n; ++k) {
    out[k] = rem[k] / den[0];
    for (std::size_t j = 0; j < den.size() && k + j <= n; ++j) rem[k + j] -= out[k] * den[j];
  }
  return out;
}

/// Random bar chain of the given length and weight, with factors 1..n of
/// positive degree.
inline BarChain random_bar_chain(std::mt19937_64& rng, const GradedAlgebra& alg, std::size_t length,
                                 std::size_t weight, std::size_t terms = 3) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  BarChain c;
  for (std::size_t t = 0; t < terms; ++t) {
    std::vector<std::size_t> degrees(length, 0);
    std::size_t left = weight;
    for (std::size_t k = length; k-- > 1;) {
      if (left == 0) break;
      std::uniform_int_distribution<std::size_t> d(0, left);
      degrees[k] = d(rng);
      left -= degrees[k];
    }
    degrees[0] = left;
    BarChain::Tensor tensor;
    for (std::size_t d : degrees) {
      std::uniform_int_distribution<std::uint32_t> idx(0, static_cast<std::uint32_t>(alg.dim(d) - 1));
      tensor.push_back({static_cast<std::uint32_t>(d), idx(rng)});
    }
    c.add_term(tensor, coeff(rng));
  }
  return c;
}

inline KoszulChain random_koszul_chain(std::mt19937_64& rng, const KoszulComplex& kc, std::size_t m, std::size_t d,
                                       std::size_t terms = 4) {
  std::uniform_int_distribution<int> coeff(-5, 5);
  KoszulChain k{m, d, {}};
  const std::size_t dim = kc.chain_dim(m, d);
  if (dim == 0) return k;
  std::uniform_int_distribution<std::size_t> idx(0, dim - 1);
  for (std::size_t t = 0; t < terms; ++t) {
    const Rational c = coeff(rng);
    if (c != 0) k.coeffs[idx(rng)] += c;
  }
  for (auto it = k.coeffs.begin(); it != k.coeffs.end();) it = it->second == 0 ? k.coeffs.erase(it) : std::next(it);
  return k;
}

}  // namespace testing_support
