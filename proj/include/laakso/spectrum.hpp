#pragma once

// Closed-form eigenvalue families with multiplicities: the free Laplacian,
// the infinite square well on [1/4, 3/4], and the Laplacian with two
// conducting plates. Every eigenvalue is pi^2 times an exact rational, which
// is what coincident lines are merged on.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "laakso/census.hpp"
#include "laakso/error.hpp"
#include "laakso/jsequence.hpp"
#include "laakso/plates.hpp"
#include "laakso/rational.hpp"

namespace laakso {

struct SpectralSource {
  std::string family;
  int n = 0;                     // level (0 for level-independent families)
  std::int64_t k = 0;            // mode index; half-integer families use k + 1/2
  std::int64_t multiplicity = 0; // contribution of this source

  friend bool operator==(const SpectralSource&, const SpectralSource&) = default;
};

struct SpectralLine {
  double lambda = 0.0;
  Rational coefficient;  // lambda = pi^2 * coefficient
  std::int64_t multiplicity = 0;
  std::vector<SpectralSource> sources;
};

enum class ModeType { integer_from_0, integer_from_1, half_integer };

inline const char* to_string(ModeType m) {
  switch (m) {
    case ModeType::integer_from_0: return "k>=0";
    case ModeType::integer_from_1: return "k>=1";
    case ModeType::half_integer: return "k+1/2, k>=0";
  }
  return "?";
}

struct FamilyDescriptor {
  std::string id;
  ModeType mode = ModeType::integer_from_1;
  int min_level = 0;  // 0 marks a single level-independent family
  std::string eigenvalue;
  std::string multiplicity;
};

enum class MergePolicy { merged, per_family };

struct SpectrumQuery {
  double lambda_max = 0.0;
  MergePolicy policy = MergePolicy::merged;

  void validate() const {
    if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) throw ValidationError("lambda_max must be a positive finite number");
  }
};

inline double pi_squared() { return std::numbers::pi * std::numbers::pi; }

// Family ids look like "sw.7"; ties in lambda are broken by family number.
inline std::tuple<std::string, int> family_rank(const std::string& id) {
  const auto dot = id.find('.');
  if (dot == std::string::npos) return {id, 0};
  return {id.substr(0, dot), std::stoi(id.substr(dot + 1))};
}

inline bool source_less(const SpectralSource& a, const SpectralSource& b) {
  return std::make_tuple(family_rank(a.family), a.n, a.k) < std::make_tuple(family_rank(b.family), b.n, b.k);
}

// merged: lines with the same exact coefficient are combined; per_family:
// lines are only sorted. Both policies sort ascending by lambda.
inline std::vector<SpectralLine> merge_lines(std::vector<SpectralLine> lines, MergePolicy policy) {
  auto line_less = [](const SpectralLine& a, const SpectralLine& b) {
    if (a.coefficient != b.coefficient) return a.coefficient < b.coefficient;
    if (a.sources.empty() || b.sources.empty()) return a.sources.size() < b.sources.size();
    return source_less(a.sources.front(), b.sources.front());
  };
  if (policy == MergePolicy::per_family) {
    std::stable_sort(lines.begin(), lines.end(), line_less);
    return lines;
  }
  std::map<Rational, SpectralLine> acc;
  for (auto& l : lines) {
    auto [it, fresh] = acc.try_emplace(l.coefficient);
    SpectralLine& tgt = it->second;
    if (fresh) {
      tgt.coefficient = l.coefficient;
      tgt.lambda = l.lambda;
    }
    tgt.multiplicity = checked_add(tgt.multiplicity, l.multiplicity);
    tgt.sources.insert(tgt.sources.end(), l.sources.begin(), l.sources.end());
  }
  std::vector<SpectralLine> out;
  out.reserve(acc.size());
  for (auto& [c, l] : acc) {
    std::sort(l.sources.begin(), l.sources.end(), source_less);
    out.push_back(std::move(l));
  }
  return out;
}

inline std::int64_t total_multiplicity(const std::vector<SpectralLine>& lines) {
  std::int64_t t = 0;
  for (const auto& l : lines) t = checked_add(t, l.multiplicity);
  return t;
}

namespace detail {

// Appends the modes of one family at one level: lambda = pi^2 scale^2 mu^2
// with mu = k or k + 1/2, for every lambda <= lambda_max.
inline void emit_family(std::vector<SpectralLine>& out, const std::string& id, int n, ModeType mode, const Rational& scale,
                        std::int64_t mult, double lambda_max) {
  if (mult < 0) {
    throw std::logic_error("negative multiplicity " + std::to_string(mult) + " for family " + id + " at n = " + std::to_string(n));
  }
  if (mult == 0) return;
  const Rational s2 = scale * scale;
  for (std::int64_t k = mode == ModeType::integer_from_1 ? 1 : 0;; ++k) {
    Rational mu2 = mode == ModeType::half_integer ? Rational((2 * k + 1) * (2 * k + 1), 4) : Rational(k * k);
    const Rational c = s2 * mu2;
    const double lambda = pi_squared() * c.to_double();
    if (lambda > lambda_max) break;
    SpectralLine line;
    line.lambda = lambda;
    line.coefficient = c;
    line.multiplicity = mult;
    line.sources.push_back({id, n, k, mult});
    out.push_back(std::move(line));
  }
}

// Runs `per_level(n, I_n, I_{n-1}, j_n)` for n = 1, 2, ... while the
// smallest eigenvalue that level can produce, pi^2 (beta I_n)^2, stays within
// lambda_max. An explicit sequence that ends before that bound is reached
// is an error.
inline void for_each_level(const JSequence& seq, double lambda_max, const Rational& beta,
                           const std::function<void(int, std::int64_t, std::int64_t, int)>& per_level) {
  std::int64_t prev = 1;
  for (int n = 1;; ++n) {
    if (!seq.defines(n)) {
      const double lower = pi_squared() * std::pow(beta.to_double() * 2.0 * static_cast<double>(prev), 2);
      if (lower > lambda_max) return;
      throw SequenceTooShort("j-sequence " + seq.str() + " ends at level " + std::to_string(n - 1) +
                             " but eigenvalues of level " + std::to_string(n) + " may lie below lambda_max");
    }
    const int jn = seq.j(n);
    const std::int64_t cur = checked_mul(prev, jn);
    const double lower = pi_squared() * std::pow(beta.to_double() * static_cast<double>(cur), 2);
    if (lower > lambda_max) return;
    per_level(n, cur, prev, jn);
    prev = cur;
  }
}

}  // namespace detail

inline std::vector<FamilyDescriptor> free_families() {
  return {
      {"free.1", ModeType::integer_from_0, 0, "pi^2 k^2", "1"},
      {"free.2", ModeType::half_integer, 1, "(k+1/2)^2 pi^2 I_n^2", "2^n"},
      {"free.3", ModeType::integer_from_1, 1, "k^2 pi^2 I_n^2", "2^{n-1}(j_n-2)I_{n-1}"},
      {"free.4", ModeType::integer_from_1, 2, "k^2 pi^2 I_n^2", "2^{n-1}(I_{n-1}-1)"},
      {"free.5", ModeType::integer_from_1, 2, "k^2 pi^2 I_n^2 / 4", "2^{n-2}(I_{n-1}-1)"},
  };
}

inline std::vector<SpectralLine> free_spectrum(const JSequence& seq, const SpectrumQuery& q) {
  q.validate();
  std::vector<SpectralLine> out;
  detail::emit_family(out, "free.1", 0, ModeType::integer_from_0, Rational(1), 1, q.lambda_max);
  detail::for_each_level(seq, q.lambda_max, Rational(1, 2), [&](int n, std::int64_t I, std::int64_t Ip, int jn) {
    detail::emit_family(out, "free.2", n, ModeType::half_integer, Rational(I), pow2(n), q.lambda_max);
    detail::emit_family(out, "free.3", n, ModeType::integer_from_1, Rational(I),
                        checked_mul(checked_mul(pow2(n - 1), jn - 2), Ip), q.lambda_max);
    if (n >= 2) {
      detail::emit_family(out, "free.4", n, ModeType::integer_from_1, Rational(I), checked_mul(pow2(n - 1), Ip - 1), q.lambda_max);
      detail::emit_family(out, "free.5", n, ModeType::integer_from_1, Rational(I, 2), checked_mul(pow2(n - 2), Ip - 1),
                          q.lambda_max);
    }
  });
  return merge_lines(std::move(out), q.policy);
}

// ---------------------------------------------------------------------------
// Square well

inline std::vector<FamilyDescriptor> square_well_families() {
  return {
      {"sw.1", ModeType::integer_from_1, 0, "4 pi^2 k^2", "1"},
      {"sw.2", ModeType::integer_from_1, 0, "k^2 pi^2 / d_1^2", "2 if j_1 in {2,3}"},
      {"sw.3", ModeType::integer_from_1, 0, "9 k^2 pi^2", "1 if j_1 = 3"},
      {"sw.4", ModeType::integer_from_1, 1, "k^2 pi^2 / d_n^2", "2^n if d_n != 0 and (m-1)j_n+1 < w_n < m j_n-1"},
      {"sw.5", ModeType::integer_from_1, 1, "k^2 pi^2 I_n^2",
       "2^{n-1}(j_n-2)I_{n-1} - 2^n(1+ceil(w_n)-2m) if (m-1)j_n+1 <= w_n <= m j_n-1; "
       "2^{n-1}(j_n-2)I_{n-1} - m 2^n (j_n-2) if m j_n-1 <= w_n <= m j_n+1"},
      {"sw.6", ModeType::integer_from_1, 2, "k^2 pi^2 / d_n^2", "2^{n-1} if d_n != 0 and m j_n-1 < w_n < m j_n+1"},
      {"sw.7", ModeType::integer_from_1, 2, "k^2 pi^2 I_n^2", "2^{n-1} if m j_n-1 < w_n <= m j_n"},
      {"sw.8", ModeType::integer_from_1, 2, "k^2 pi^2 / (d_n + 1/I_n)^2", "2^{n-1} if m j_n-1 < w_n < m j_n"},
      {"sw.9", ModeType::integer_from_1, 2, "k^2 pi^2 I_n^2",
       "2^{n-1}(I_{n-1}-1) - (m-1)2^n if (m-1)j_n+1 <= w_n <= m j_n-1; "
       "2^{n-1}(I_{n-1}-1) - m 2^n if m j_n-1 < w_n <= m j_n+1"},
      {"sw.10", ModeType::integer_from_1, 2, "k^2 pi^2 I_n^2 / 4",
       "2^{n-2}(I_{n-1}-1) - (m-1)2^{n-1} if (m-1)j_n+1 <= w_n <= m j_n-1; "
       "2^{n-2}(I_{n-1}-1) - m 2^{n-1} if m j_n-1 < w_n <= m j_n+1"},
  };
}

// Which case of a family's multiplicity rule fired at one level.
struct GuardRecord {
  std::string family;
  int n = 0;
  std::int64_t m = 0;  // 0 when no case applies
  std::string case_label;
  std::int64_t multiplicity = 0;
};

namespace detail {

struct GuardCase {
  std::string label;
  std::function<bool(std::int64_t)> guard;
  std::function<std::int64_t(std::int64_t)> value;
};

// Evaluates a case-split multiplicity over every admissible m near w_n / j_n.
// Cases that fire together must agree; otherwise the rule is ambiguous.
inline GuardRecord evaluate_cases(const std::string& family, const WellGeometry& g, const std::vector<GuardCase>& cases) {
  GuardRecord rec;
  rec.family = family;
  rec.n = g.level;
  bool found = false;
  const std::int64_t centre = (g.w / Rational(g.jn)).floor();
  for (std::int64_t m = std::max<std::int64_t>(1, centre - 1); m <= std::min(g.I_prev, centre + 2); ++m) {
    for (const auto& c : cases) {
      if (!c.guard(m)) continue;
      const std::int64_t v = c.value(m);
      if (!found) {
        found = true;
        rec.m = m;
        rec.case_label = c.label;
        rec.multiplicity = v;
      } else if (v != rec.multiplicity) {
        throw std::logic_error("square-well family " + family + " at n = " + std::to_string(g.level) +
                               " has overlapping cases with different multiplicities");
      }
    }
  }
  if (!found) rec.case_label = "none";
  if (rec.multiplicity < 0) {
    throw std::logic_error("square-well family " + family + " at n = " + std::to_string(g.level) + " gives negative multiplicity " +
                           std::to_string(rec.multiplicity));
  }
  return rec;
}

}  // namespace detail

// Case analysis of the level-dependent square-well families at level n.
inline std::vector<GuardRecord> square_well_guards(const JSequence& seq, int n) {
  const WellGeometry g = well_geometry(seq, n);
  const Rational w = g.w;
  const std::int64_t j = g.jn;
  const std::int64_t Ip = g.I_prev;
  auto R = [](std::int64_t v) { return Rational(v); };
  const bool d_nonzero = !g.wall_on_column();
  std::vector<GuardRecord> out;

  const std::int64_t loops_total = checked_mul(checked_mul(pow2(n - 1), j - 2), Ip);
  out.push_back(detail::evaluate_cases(
      "sw.4", g, {{"(m-1)j+1 < w < mj-1", [&](std::int64_t m) { return d_nonzero && R((m - 1) * j + 1) < w && w < R(m * j - 1); },
                   [&](std::int64_t) { return pow2(n); }}}));
  out.push_back(detail::evaluate_cases(
      "sw.5", g,
      {{"(m-1)j+1 <= w <= mj-1", [&](std::int64_t m) { return R((m - 1) * j + 1) <= w && w <= R(m * j - 1); },
        [&](std::int64_t m) { return loops_total - pow2(n) * (1 + w.ceil() - 2 * m); }},
       {"mj-1 <= w <= mj+1", [&](std::int64_t m) { return R(m * j - 1) <= w && w <= R(m * j + 1); },
        [&](std::int64_t m) { return loops_total - m * pow2(n) * (j - 2); }}}));
  if (n < 2) return out;

  const std::int64_t crosses = checked_mul(pow2(n - 2), Ip - 1);
  out.push_back(detail::evaluate_cases(
      "sw.6", g, {{"mj-1 < w < mj+1", [&](std::int64_t m) { return d_nonzero && R(m * j - 1) < w && w < R(m * j + 1); },
                   [&](std::int64_t) { return pow2(n - 1); }}}));
  out.push_back(detail::evaluate_cases("sw.7", g,
                                       {{"mj-1 < w <= mj", [&](std::int64_t m) { return R(m * j - 1) < w && w <= R(m * j); },
                                         [&](std::int64_t) { return pow2(n - 1); }}}));
  out.push_back(detail::evaluate_cases("sw.8", g,
                                       {{"mj-1 < w < mj", [&](std::int64_t m) { return R(m * j - 1) < w && w < R(m * j); },
                                         [&](std::int64_t) { return pow2(n - 1); }}}));
  out.push_back(detail::evaluate_cases(
      "sw.9", g,
      {{"(m-1)j+1 <= w <= mj-1", [&](std::int64_t m) { return R((m - 1) * j + 1) <= w && w <= R(m * j - 1); },
        [&](std::int64_t m) { return 2 * crosses - (m - 1) * pow2(n); }},
       {"mj-1 < w <= mj+1", [&](std::int64_t m) { return R(m * j - 1) < w && w <= R(m * j + 1); },
        [&](std::int64_t m) { return 2 * crosses - m * pow2(n); }}}));
  out.push_back(detail::evaluate_cases(
      "sw.10", g,
      {{"(m-1)j+1 <= w <= mj-1", [&](std::int64_t m) { return R((m - 1) * j + 1) <= w && w <= R(m * j - 1); },
        [&](std::int64_t m) { return crosses - (m - 1) * pow2(n - 1); }},
       {"mj-1 < w <= mj+1", [&](std::int64_t m) { return R(m * j - 1) < w && w <= R(m * j + 1); },
        [&](std::int64_t m) { return crosses - m * pow2(n - 1); }}}));
  return out;
}

inline std::vector<SpectralLine> square_well_spectrum(const JSequence& seq, const SpectrumQuery& q) {
  q.validate();
  std::vector<SpectralLine> out;
  const double lm = q.lambda_max;
  detail::emit_family(out, "sw.1", 0, ModeType::integer_from_1, Rational(2), 1, lm);
  const int j1 = seq.j(1);
  const WellGeometry g1 = well_geometry(seq, 1);
  if ((j1 == 2 || j1 == 3) && !g1.wall_on_column()) {
    detail::emit_family(out, "sw.2", 1, ModeType::integer_from_1, Rational(1) / g1.d, 2, lm);
  }
  if (j1 == 3) detail::emit_family(out, "sw.3", 1, ModeType::integer_from_1, Rational(3), 1, lm);

  detail::for_each_level(seq, lm, Rational(1, 2), [&](int n, std::int64_t I, std::int64_t, int) {
    const WellGeometry g = well_geometry(seq, n);
    const Rational inv_d = g.wall_on_column() ? Rational(0) : Rational(1) / g.d;
    for (const auto& rec : square_well_guards(seq, n)) {
      const auto& f = rec.family;
      if (f == "sw.4" || f == "sw.6") {
        if (rec.multiplicity > 0) detail::emit_family(out, f, n, ModeType::integer_from_1, inv_d, rec.multiplicity, lm);
      } else if (f == "sw.8") {
        detail::emit_family(out, f, n, ModeType::integer_from_1, Rational(1) / (g.d + Rational(1, I)), rec.multiplicity, lm);
      } else if (f == "sw.10") {
        detail::emit_family(out, f, n, ModeType::integer_from_1, Rational(I, 2), rec.multiplicity, lm);
      } else {
        detail::emit_family(out, f, n, ModeType::integer_from_1, Rational(I), rec.multiplicity, lm);
      }
    }
  });
  return merge_lines(std::move(out), q.policy);
}

// ---------------------------------------------------------------------------
// Conducting plates (j_n = N for all n)

inline std::vector<FamilyDescriptor> plate_families() {
  return {
      {"plate.1", ModeType::integer_from_1, 0, "[k pi / (2 X0)]^2", "1"},
      {"plate.2", ModeType::half_integer, 0, "[(k+1/2) pi / ((1-2X0)/2)]^2", "2"},
      {"plate.3", ModeType::half_integer, 0, "[(k+1/2) pi (N-(Z+1)) / (1-2X0)]^2", "2"},
      {"plate.4", ModeType::integer_from_1, 0, "[k pi (N-(Z+1)) / (1-2X0)]^2", "N-Z-3"},
      {"plate.5", ModeType::integer_from_1, 0, "[k pi (Z+1) / (2X0)]^2", "Z+1"},
      {"plate.6", ModeType::half_integer, 2, "[I_n (k+1/2) pi (1-(Z+1)/N) / (1-2X0)]^2", "2^n"},
      {"plate.7", ModeType::integer_from_1, 2, "[I_n k pi (1-(Z+1)/N) / (1-2X0)]^2",
       "(1-(Z+1)/N) I_{n-1} 2^{n-1} (N-2) + 2^{n-1} (1-(Z+1)/N) I_{n-1}"},
      {"plate.8", ModeType::integer_from_1, 2, "[I_n k pi (1-(Z+1)/N) / (2(1-2X0))]^2",
       "2^{n-2}[(1-(Z+1)/N) I_{n-1} - 1] - 2^{n-2}"},
      {"plate.9", ModeType::integer_from_1, 2, "[I_n k pi (Z+1) / (2N X0)]^2",
       "((Z+1)/N) I_{n-1} 2^{n-1} (N-2) + 2^{n-1} ((Z+1)/N) I_{n-1} + 2^{n-1}"},
      {"plate.10", ModeType::integer_from_1, 2, "[I_n k pi (Z+1) / (4N X0)]^2", "2^{n-2}[((Z+1)/N) I_{n-1} - 1]"},
  };
}

// Level-n multiplicities of the plate families 6..10 (n >= 2), in order.
inline std::vector<std::int64_t> plate_level_multiplicities(const PlateConfig& cfg, int n) {
  if (n < 2) throw ValidationError("plate level families start at n = 2");
  const std::int64_t N = cfg.N;
  const std::int64_t Ip = JSequence::periodic({cfg.N}).level_product(n - 1);
  // (1 - (Z+1)/N) I_{n-1} and ((Z+1)/N) I_{n-1} are integers for n >= 2.
  const std::int64_t pI = (N - cfg.Z - 1) * (Ip / N);
  const std::int64_t qI = (cfg.Z + 1) * (Ip / N);
  const std::int64_t h = pow2(n - 1);
  const std::int64_t qtr = pow2(n - 2);
  return {
      pow2(n),
      checked_add(checked_mul(checked_mul(pI, h), N - 2), checked_mul(h, pI)),
      checked_mul(qtr, pI - 1) - qtr,
      checked_add(checked_add(checked_mul(checked_mul(qI, h), N - 2), checked_mul(h, qI)), h),
      checked_mul(qtr, qI - 1),
  };
}

inline std::vector<SpectralLine> plates_spectrum(const PlateConfig& cfg, const SpectrumQuery& q) {
  cfg.validate();
  q.validate();
  const double lm = q.lambda_max;
  const Rational X = cfg.X0;
  const Rational E = Rational(1) - Rational(2) * X;
  const Rational p(cfg.N - cfg.Z - 1, cfg.N);
  const Rational zp(cfg.Z + 1);
  const Rational NN(cfg.N);
  std::vector<SpectralLine> out;
  detail::emit_family(out, "plate.1", 0, ModeType::integer_from_1, Rational(1) / (Rational(2) * X), 1, lm);
  detail::emit_family(out, "plate.2", 0, ModeType::half_integer, Rational(2) / E, 2, lm);
  detail::emit_family(out, "plate.3", 1, ModeType::half_integer, NN * p / E, 2, lm);
  detail::emit_family(out, "plate.4", 1, ModeType::integer_from_1, NN * p / E, cfg.N - cfg.Z - 3, lm);
  detail::emit_family(out, "plate.5", 1, ModeType::integer_from_1, zp / (Rational(2) * X), cfg.Z + 1, lm);

  const Rational ext = p / E;
  const Rational inte = zp / (Rational(2) * NN * X);
  const Rational beta = std::min(ext / Rational(2), inte / Rational(2));
  const auto seq = JSequence::periodic({cfg.N});
  detail::for_each_level(seq, lm, beta, [&](int n, std::int64_t I, std::int64_t, int) {
    if (n < 2) return;
    const auto mult = plate_level_multiplicities(cfg, n);
    const Rational In(I);
    detail::emit_family(out, "plate.6", n, ModeType::half_integer, In * ext, mult[0], lm);
    detail::emit_family(out, "plate.7", n, ModeType::integer_from_1, In * ext, mult[1], lm);
    detail::emit_family(out, "plate.8", n, ModeType::integer_from_1, In * ext / Rational(2), mult[2], lm);
    detail::emit_family(out, "plate.9", n, ModeType::integer_from_1, In * inte, mult[3], lm);
    detail::emit_family(out, "plate.10", n, ModeType::integer_from_1, In * inte / Rational(2), mult[4], lm);
  });
  return merge_lines(std::move(out), q.policy);
}

// Restricts a spectrum to families whose level does not exceed n_max. The
// result is what an explicit F_{n_max} can resolve.
inline std::vector<SpectralLine> restrict_to_level(const std::vector<SpectralLine>& lines, int n_max) {
  std::vector<SpectralLine> out;
  for (const auto& l : lines) {
    SpectralLine r = l;
    r.sources.clear();
    r.multiplicity = 0;
    for (const auto& s : l.sources) {
      if (s.n <= n_max) {
        r.sources.push_back(s);
        r.multiplicity += s.multiplicity;
      }
    }
    if (r.multiplicity > 0) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace laakso
