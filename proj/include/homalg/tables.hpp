#pragma once

// Dimension tables indexed by (homological index i, weight d).

#include <cstddef>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

namespace homalg {

class DimTable {
 public:
  DimTable() = default;
  DimTable(std::string side, std::size_t max_index, std::size_t max_weight)
      : side_(std::move(side)), max_index_(max_index), max_weight_(max_weight) {}

  const std::string& side() const { return side_; }
  std::size_t max_index() const { return max_index_; }
  /// Largest weight for which every index has been recorded.
  std::size_t max_weight() const { return max_weight_; }

  void set(std::size_t i, std::size_t d, std::size_t dim) {
    if (i > max_index_ || d > max_weight_)
      throw std::out_of_range("table cell (" + std::to_string(i) + ", " + std::to_string(d) + ") outside range");
    dims_[{i, d}] = dim;
  }

  /// Zero outside the recorded range.
  std::size_t at(std::size_t i, std::size_t d) const {
    auto it = dims_.find({i, d});
    return it == dims_.end() ? 0 : it->second;
  }

  friend bool operator==(const DimTable& a, const DimTable& b) {
    if (a.max_index_ != b.max_index_ || a.max_weight_ != b.max_weight_) return false;
    for (std::size_t i = 0; i <= a.max_index_; ++i)
      for (std::size_t d = 0; d <= a.max_weight_; ++d)
        if (a.at(i, d) != b.at(i, d)) return false;
    return true;
  }

  /// [{"side":…, "i":…, "d":…, "dim":…}, …] ordered by i, then d.
  nlohmann::ordered_json to_json() const {
    auto records = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i <= max_index_; ++i)
      for (std::size_t d = 0; d <= max_weight_; ++d) {
        nlohmann::ordered_json r;
        r["side"] = side_;
        r["i"] = i;
        r["d"] = d;
        r["dim"] = at(i, d);
        records.push_back(std::move(r));
      }
    return records;
  }

  std::string to_csv() const {
    std::ostringstream os;
    os << "i,d,dim\n";
    for (std::size_t i = 0; i <= max_index_; ++i)
      for (std::size_t d = 0; d <= max_weight_; ++d) os << i << ',' << d << ',' << at(i, d) << '\n';
    return os.str();
  }

  /// Rows i, columns d.
  std::string to_text() const {
    std::ostringstream os;
    os << side_ << " dimensions (rows: index i, columns: weight d)\n     ";
    for (std::size_t d = 0; d <= max_weight_; ++d) os << (d < 10 ? "    " : "   ") << d;
    os << '\n';
    for (std::size_t i = 0; i <= max_index_; ++i) {
      os << "  i=" << i;
      for (std::size_t d = 0; d <= max_weight_; ++d) {
        const std::string v = std::to_string(at(i, d));
        os << std::string(v.size() < 5 ? 5 - v.size() : 1, ' ') << v;
      }
      os << '\n';
    }
    return os.str();
  }

 private:
  std::string side_;
  std::size_t max_index_ = 0;
  std::size_t max_weight_ = 0;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> dims_;
};

using WeightTable = DimTable;
using HHTable = DimTable;

}  // namespace homalg
