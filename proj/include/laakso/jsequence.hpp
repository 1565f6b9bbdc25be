#pragma once

// The subdivision sequence {j_n} that defines a Laakso space, and the
// quantities derived directly from it: level products I_n and the
// Hausdorff dimension.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "laakso/error.hpp"
#include "laakso/rational.hpp"

namespace laakso {

class JSequence {
 public:
  enum class Kind { explicit_prefix, periodic };

  // A finite prefix j_1..j_m. Indexing beyond m is an error.
  static JSequence explicit_prefix(std::vector<int> values) { return JSequence(Kind::explicit_prefix, std::move(values)); }
  // One full period j_1..j_T, repeated forever.
  static JSequence periodic(std::vector<int> values) { return JSequence(Kind::periodic, std::move(values)); }

  Kind kind() const { return kind_; }
  bool is_periodic() const { return kind_ == Kind::periodic; }
  const std::vector<int>& values() const { return values_; }

  int period() const {
    if (!is_periodic()) throw ValidationError("period() requires a periodic j-sequence");
    return static_cast<int>(values_.size());
  }

  // Largest level n for which j_1..j_n are all defined (-1 means unbounded).
  int defined_through() const { return is_periodic() ? -1 : static_cast<int>(values_.size()); }
  bool defines(int n) const { return is_periodic() || n <= static_cast<int>(values_.size()); }

  // j_n for n >= 1.
  int j(int n) const {
    if (n < 1) throw ValidationError("j_n is defined for n >= 1, got n = " + std::to_string(n));
    if (!is_periodic() && n > static_cast<int>(values_.size())) {
      throw SequenceTooShort("explicit j-sequence " + str() + " has no entry j_" + std::to_string(n));
    }
    return values_[static_cast<std::size_t>(n - 1) % values_.size()];
  }

  // I_n = j_1 ... j_n, with I_0 = 1.
  std::int64_t level_product(int n) const {
    std::int64_t p = 1;
    for (int i = 1; i <= n; ++i) p = checked_mul(p, j(i));
    return p;
  }

  std::string str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < values_.size(); ++i) os << (i ? "," : "") << values_[i];
    os << (is_periodic() ? ",...]" : "]");
    return os.str();
  }

  friend bool operator==(const JSequence&, const JSequence&) = default;

 private:
  JSequence(Kind kind, std::vector<int> values) : kind_(kind), values_(std::move(values)) {
    if (values_.empty()) throw ValidationError("j-sequence must contain at least one entry");
    for (int v : values_) {
      if (v < 2) throw ValidationError("every j_n must be >= 2 (got " + std::to_string(v) + ")");
    }
  }

  Kind kind_;
  std::vector<int> values_;
};

struct LevelProducts {
  std::vector<std::int64_t> entries;  // I_0 .. I_n

  int level() const { return static_cast<int>(entries.size()) - 1; }
  std::int64_t operator[](int n) const { return entries.at(static_cast<std::size_t>(n)); }
};

inline LevelProducts level_products(const JSequence& seq, int n) {
  if (n < 0) throw ValidationError("level must be >= 0");
  LevelProducts out;
  out.entries.reserve(static_cast<std::size_t>(n) + 1);
  out.entries.push_back(1);
  for (int k = 1; k <= n; ++k) out.entries.push_back(checked_mul(out.entries.back(), seq.j(k)));
  return out;
}

// Column bookkeeping identity: 2 columns of V's, I_{n-1}(j_n - 2) columns of
// loops and 2(I_{n-1} - 1) columns of crosses add up to I_n.
inline std::int64_t column_partition_total(std::int64_t prev, int jn) {
  return checked_add(checked_add(2, checked_mul(prev, jn - 2)), checked_mul(2, prev - 1));
}

// Q_L = 1 + log(2^T) / log(I_T) for a periodic sequence.
inline double hausdorff_dimension(const JSequence& seq) {
  if (!seq.is_periodic()) {
    throw ValidationError("Hausdorff dimension limit needs a periodic sequence; use hausdorff_estimate(seq, n)");
  }
  int t = seq.period();
  return 1.0 + t * std::log(2.0) / std::log(static_cast<double>(seq.level_product(t)));
}

// Finite-level value 1 + log(2^n) / log(I_n) whose limit defines Q_L.
inline double hausdorff_estimate(const JSequence& seq, int n) {
  if (n < 1) throw ValidationError("hausdorff_estimate needs n >= 1");
  return 1.0 + n * std::log(2.0) / std::log(static_cast<double>(seq.level_product(n)));
}

}  // namespace laakso
