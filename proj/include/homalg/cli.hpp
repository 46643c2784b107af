#pragma once

// Driver behind the homalg command-line tool: configuration, parameter
// draws, the five run modes, and report rendering.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "homalg/hochschild.hpp"
#include "homalg/ncalg.hpp"
#include "homalg/poisson.hpp"
#include "homalg/rational.hpp"
#include "homalg/series.hpp"
#include "homalg/tables.hpp"
#include <nlohmann/json.hpp>

namespace homalg {

enum class Mode { poisson, hochschild, koszul_check, jacobi_check, compare_all };
enum class OutputFormat { text, json, csv };

/// Invalid configuration or parameters; the tool exits with status 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Mode parse_mode(std::string_view s) {
  if (s == "poisson") return Mode::poisson;
  if (s == "hochschild") return Mode::hochschild;
  if (s == "koszul-check") return Mode::koszul_check;
  if (s == "jacobi-check") return Mode::jacobi_check;
  if (s == "compare-all") return Mode::compare_all;
  throw ConfigError("unknown mode '" + std::string(s) + "'");
}

inline std::string mode_name(Mode m) {
  switch (m) {
    case Mode::poisson: return "poisson";
    case Mode::hochschild: return "hochschild";
    case Mode::koszul_check: return "koszul-check";
    case Mode::jacobi_check: return "jacobi-check";
    case Mode::compare_all: return "compare-all";
  }
  return "?";
}

inline OutputFormat parse_output(std::string_view s) {
  if (s == "text") return OutputFormat::text;
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  throw ConfigError("unknown output format '" + std::string(s) + "'");
}

/// Comma-separated rationals, e.g. "1/4,1/9".
inline std::vector<Rational> parse_rational_list(std::string_view s, std::size_t expected) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const std::string_view item = s.substr(start, comma == std::string_view::npos ? s.npos : comma - start);
    try {
      out.push_back(parse_rational(item));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("bad rational '" + std::string(item) + "': " + e.what());
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.size() != expected)
    throw ConfigError("expected " + std::to_string(expected) + " comma-separated values, got " +
                      std::to_string(out.size()));
  return out;
}

struct RunConfig {
  Mode mode = Mode::compare_all;
  std::size_t max_weight = 8;
  std::size_t weight_cap = 12;
  bool unsafe_weight = false;
  std::array<Rational, 3> J{Rational(1), Rational(2), Rational(5)};
  std::array<Rational, 2> alpha{Rational(1, 4), Rational(1, 9)};
  std::uint64_t seed = 0;
  std::size_t trials = 3;
  bool random = false;
  OutputFormat output = OutputFormat::text;
  std::optional<std::string> output_path;
  bool genericity_guard = true;

  void validate() const {
    if (trials < 1) throw ConfigError("trials must be at least 1");
    if (max_weight > weight_cap && !unsafe_weight)
      throw ConfigError("max-weight " + std::to_string(max_weight) + " exceeds the cap " + std::to_string(weight_cap) +
                        " (pass --unsafe-weight to override)");
  }
};

struct RunResult {
  int exit_code = 0;
  std::string artifact;
};

/// One parameter point: the Poisson side's (J_1, J_2, J_3) and the
/// Sklyanin algebra's α's. Either may be absent depending on the mode.
struct ParamSet {
  std::optional<std::array<Rational, 3>> J;
  std::optional<SklyaninParams> alpha;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    if (J) j["J"] = {(*J)[0].get_str(), (*J)[1].get_str(), (*J)[2].get_str()};
    if (alpha) j["alpha"] = {alpha->alpha1.get_str(), alpha->alpha2.get_str(), alpha->alpha3.get_str()};
    return j;
  }
  std::string to_string() const {
    std::string s;
    if (J) s += "J = (" + (*J)[0].get_str() + ", " + (*J)[1].get_str() + ", " + (*J)[2].get_str() + ")";
    if (alpha) s += std::string(s.empty() ? "" : "  ") + "alpha = " + alpha->to_string();
    return s;
  }
};

/// Deformation parameters matched to a Poisson structure: α_i = β_i h² for
/// i = 1, 2 with h = 1/10 and β_i = J_j − J_k; α_3 follows from the
/// constraint.
inline SklyaninParams matched_alpha(const std::array<Rational, 3>& J, bool guard) {
  const Rational h2(1, 100);
  return sklyanin_params((J[1] - J[2]) * h2, (J[2] - J[0]) * h2, guard);
}

namespace detail {

inline void check_J(const std::array<Rational, 3>& J, bool guard) {
  if (guard && (J[0] == J[1] || J[1] == J[2] || J[0] == J[2]))
    throw ConfigError("genericity guard: J values must be distinct (got " + J[0].get_str() + ", " + J[1].get_str() +
                      ", " + J[2].get_str() + "); pass --no-genericity-guard to run anyway");
}

inline std::array<Rational, 3> draw_J(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-9, 9);
  for (;;) {
    const int a = dist(rng), b = dist(rng), c = dist(rng);
    if (a != b && b != c && a != c) return {Rational(a), Rational(b), Rational(c)};
  }
}

inline SklyaninParams draw_alpha(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(-9, 9);
  for (;;) {
    const int a = dist(rng), b = dist(rng);
    if (a * b == -1) continue;
    const SklyaninParams p{Rational(a), Rational(b), Rational(-Rational(a + b) / (1 + a * b))};
    if (p.is_generic()) return p;
  }
}

/// Accumulates checks, tables and text for one run.
class Report {
 public:
  explicit Report(Mode mode) : mode_(mode) {}

  void add_params(const ParamSet& p) {
    params_.push_back(p.to_json());
    text_ << "== trial " << params_.size() - 1 << ": " << p.to_string() << '\n';
  }

  void add_check(const std::string& name, bool pass, bool counts = true) {
    nlohmann::ordered_json c;
    c["trial"] = params_.empty() ? 0 : params_.size() - 1;
    c["name"] = name;
    c["pass"] = pass;
    c["counts"] = counts;
    checks_.push_back(std::move(c));
    if (counts) verdict_ = verdict_ && pass;
    text_ << "  [" << (pass ? "pass" : "FAIL") << "] " << name << (counts ? "" : " (informational)") << '\n';
  }

  void add_table(const DimTable& table, const ComparisonReport& cmp) {
    for (const auto& c : cmp.cells) {
      nlohmann::ordered_json r;
      r["trial"] = params_.size() - 1;
      r["side"] = c.side;
      r["i"] = c.i;
      r["d"] = c.d;
      r["dim"] = c.computed;
      r["expected"] = c.expected.get_si();
      r["match"] = c.match;
      tables_.push_back(std::move(r));
    }
    verdict_ = verdict_ && cmp.verdict;
    text_ << table.to_text() << cmp.to_text();
  }

  void note(const std::string& s) { text_ << s << '\n'; }
  bool verdict() const { return verdict_; }

  std::string render(OutputFormat fmt) const {
    switch (fmt) {
      case OutputFormat::text: return text_.str() + "overall verdict: " + (verdict_ ? "pass" : "fail") + '\n';
      case OutputFormat::json: {
        nlohmann::ordered_json j;
        j["mode"] = mode_name(mode_);
        j["params"] = params_;
        j["tables"] = tables_;
        j["checks"] = checks_;
        j["verdict"] = verdict_ ? "pass" : "fail";
        return j.dump(2) + '\n';
      }
      case OutputFormat::csv: {
        std::ostringstream os;
        if (!tables_.empty()) {
          os << "trial,side,i,d,dim,expected,match\n";
          for (const auto& r : tables_)
            os << r["trial"] << ',' << r["side"].get<std::string>() << ',' << r["i"] << ',' << r["d"] << ','
               << r["dim"] << ',' << r["expected"] << ',' << (r["match"].get<bool>() ? "true" : "false") << '\n';
        } else {
          os << "trial,check,pass\n";
          for (const auto& c : checks_)
            os << c["trial"] << ',' << c["name"].get<std::string>() << ',' << (c["pass"].get<bool>() ? "true" : "false")
               << '\n';
        }
        return os.str();
      }
    }
    return {};
  }

 private:
  Mode mode_;
  nlohmann::ordered_json params_ = nlohmann::ordered_json::array();
  nlohmann::ordered_json tables_ = nlohmann::ordered_json::array();
  nlohmann::ordered_json checks_ = nlohmann::ordered_json::array();
  bool verdict_ = true;
  std::ostringstream text_;
};

inline std::vector<ParamSet> param_sets(const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::vector<ParamSet> out;
  const std::size_t n = cfg.random ? cfg.trials : 1;
  for (std::size_t t = 0; t < n; ++t) {
    ParamSet p;
    switch (cfg.mode) {
      case Mode::poisson:
      case Mode::jacobi_check:
        p.J = cfg.random ? draw_J(rng) : cfg.J;
        check_J(*p.J, cfg.genericity_guard);
        break;
      case Mode::compare_all:
        p.J = cfg.random ? draw_J(rng) : cfg.J;
        check_J(*p.J, cfg.genericity_guard);
        p.alpha = matched_alpha(*p.J, cfg.genericity_guard);
        break;
      case Mode::hochschild:
      case Mode::koszul_check:
        p.alpha = cfg.random ? draw_alpha(rng) : sklyanin_params(cfg.alpha[0], cfg.alpha[1], cfg.genericity_guard);
        break;
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace detail

/// Runs one configuration. Exit status 0 iff the verdict passes, 1 on a
/// failing verdict, 2 on invalid configuration or parameters.
inline RunResult run(const RunConfig& cfg) {
  std::vector<ParamSet> sets;
  try {
    cfg.validate();
    sets = detail::param_sets(cfg);
  } catch (const std::invalid_argument& e) {
    return {2, std::string("error: ") + e.what() + '\n'};
  }

  detail::Report report(cfg.mode);
  const std::size_t w = cfg.max_weight;
  for (const auto& p : sets) {
    report.add_params(p);
    switch (cfg.mode) {
      case Mode::poisson: {
        const auto ps = sklyanin_structure((*p.J)[0], (*p.J)[1], (*p.J)[2]);
        const auto table = poisson_homology_dims(ps, w);
        report.add_table(table, compare(table, w));
        break;
      }
      case Mode::hochschild: {
        const auto table = hh_dims(*p.alpha, w);
        report.add_table(table, compare(table, w));
        break;
      }
      case Mode::koszul_check: {
        const auto printed = resolution_identities(*p.alpha);
        const auto reconciled = resolution_identities(*p.alpha, reconciled_resolution_matrices(*p.alpha));
        report.add_check("M*x = 0", printed.Mx);
        report.add_check("t*N = 0", printed.tN);
        report.add_check("N*M = 0 with the printed M", printed.NM, false);
        report.add_check("N*M' = 0 with the reconciled M'", reconciled.NM);
        report.add_check("M'*x = 0", reconciled.Mx);
        report.add_check("augmented resolution exact to weight " + std::to_string(w),
                         koszul_resolution_exactness(*p.alpha, w));
        break;
      }
      case Mode::jacobi_check: {
        const auto ps = sklyanin_structure((*p.J)[0], (*p.J)[1], (*p.J)[2]);
        report.add_check("Jacobi identity on all generator triples", jacobi_check(ps));
        const auto cas = sklyanin_casimirs((*p.J)[0], (*p.J)[1], (*p.J)[2]);
        report.add_check("Casimirs form a complete intersection", complete_intersection_check(cas[0], cas[1]));
        break;
      }
      case Mode::compare_all: {
        const auto ps = sklyanin_structure((*p.J)[0], (*p.J)[1], (*p.J)[2]);
        const auto ph = poisson_homology_dims(ps, w);
        report.add_table(ph, compare(ph, w));
        const auto hh = hh_dims(*p.alpha, w);
        report.add_table(hh, compare(hh, w));
        bool same = true;
        for (std::size_t i = 0; i <= 4; ++i)
          for (std::size_t d = 0; d <= w; ++d) same = same && ph.at(i, d) == hh.at(i, d);
        report.add_check("PH and HH tables agree entrywise", same);
        break;
      }
    }
  }
  return {report.verdict() ? 0 : 1, report.render(cfg.output)};
}

}  // namespace homalg
