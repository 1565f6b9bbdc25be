#pragma once

// Zeta-regularised Casimir energy and force for two conducting plates in a
// constant-j Laakso space.
//
// Every plate family has frequencies omega = u(x) I_n m_k with m_k = k
// (k >= 1) or k + 1/2 (k >= 0), and u(x) = alpha / x between the plates or
// beta / (1 - 2x) outside them. The energy (hbar/2) sum omega regularises
// as sum k -> zeta_R(-1) = -1/12, sum (k + 1/2) -> 1/24 and
// sum_{n>=2} r^n -> r^2 / (1 - r), so
//
//   E(x) = a / x + b / (1 - 2x),   F = dE/dx = -a / x^2 + 2 b / (1 - 2x)^2,
//
// with a positive force attractive.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "laakso/error.hpp"
#include "laakso/plates.hpp"
#include "laakso/zeta.hpp"

namespace laakso {

enum class PlateRegion { interior, exterior };

// sum_n g(n) I_n over the family's levels, as sum_i coeff_i * r_i^n for
// n >= 2 (level families) or a plain count (single-level families).
struct GeometricTerm {
  double coeff = 0.0;
  double ratio = 0.0;
};

struct RegularizedFamily {
  std::string id;
  PlateRegion region = PlateRegion::interior;
  bool half_integer = false;
  double scale = 0.0;                  // alpha or beta
  double count = 0.0;                  // single-level families: multiplicity * I_n
  std::vector<GeometricTerm> levels;   // level families, n >= 2
  double level_sum = 0.0;              // regularised sum over n (or count)
  double mode_sum = 0.0;               // -1/12 or 1/24
  double weight = 0.0;                 // (hbar/2) * scale * level_sum * mode_sum
};

inline std::vector<RegularizedFamily> plate_energy_families(int N, int Z, double hbar = 1.0) {
  PlateConfig(N, Z, Rational(1, 4), hbar);  // validates N, Z, hbar
  const double pi = std::numbers::pi;
  const double Nd = N;
  const double q = (Z + 1.0) / Nd;
  const double p = 1.0 - q;
  const double r1 = 2.0 * Nd;
  const double r2 = 2.0 * Nd * Nd;
  using R = PlateRegion;
  std::vector<RegularizedFamily> fam = {
      {"plate.1", R::interior, false, pi / 2.0, 1.0, {}},
      {"plate.2", R::exterior, true, 2.0 * pi, 2.0, {}},
      {"plate.3", R::exterior, true, pi * (N - Z - 1), 2.0, {}},
      {"plate.4", R::exterior, false, pi * (N - Z - 1), static_cast<double>(N - Z - 3), {}},
      {"plate.5", R::interior, false, pi * (Z + 1) / 2.0, static_cast<double>(Z + 1), {}},
      {"plate.6", R::exterior, true, pi * p, 0.0, {{1.0, r1}}},
      {"plate.7", R::exterior, false, pi * p, 0.0, {{p * (Nd - 1.0) / (2.0 * Nd), r2}}},
      {"plate.8", R::exterior, false, pi * p / 2.0, 0.0, {{p / (4.0 * Nd), r2}, {-0.5, r1}}},
      {"plate.9", R::interior, false, pi * (Z + 1) / (2.0 * Nd), 0.0, {{q * (Nd - 1.0) / (2.0 * Nd), r2}, {0.5, r1}}},
      {"plate.10", R::interior, false, pi * (Z + 1) / (4.0 * Nd), 0.0, {{q / (4.0 * Nd), r2}, {-0.25, r1}}},
  };
  const double z_int = riemann_zeta(-1.0);
  const double z_half = hurwitz_half_sum(cplx(-1.0, 0.0)).real();
  for (auto& f : fam) {
    if (f.levels.empty()) {
      f.level_sum = f.count;
    } else {
      for (const auto& t : f.levels) f.level_sum += t.coeff * t.ratio * t.ratio * geometric_continuation(t.ratio);
    }
    f.mode_sum = f.half_integer ? z_half : z_int;
    f.weight = 0.5 * hbar * f.scale * f.level_sum * f.mode_sum;
  }
  return fam;
}

struct RegularizedEnergy {
  double a = 0.0;      // coefficient of 1/X0
  double b = 0.0;      // coefficient of 1/(1 - 2 X0)
  double total = 0.0;  // at the configuration's X0
  std::vector<RegularizedFamily> families;
};

inline RegularizedEnergy plate_zeta_energy(int N, int Z, double x, double hbar = 1.0) {
  if (!(x > 0.0 && x < 0.5)) throw ValidationError("plate distance must lie in (0, 1/2)");
  RegularizedEnergy e;
  e.families = plate_energy_families(N, Z, hbar);
  for (const auto& f : e.families) (f.region == PlateRegion::interior ? e.a : e.b) += f.weight;
  e.total = e.a / x + e.b / (1.0 - 2.0 * x);
  return e;
}

inline RegularizedEnergy plate_zeta_energy(const PlateConfig& cfg) {
  cfg.validate();
  return plate_zeta_energy(cfg.N, cfg.Z, cfg.X0.to_double(), cfg.hbar);
}

// Closed forms of a and b after collecting every family.
inline double casimir_a_closed_form(int N, int Z, double hbar = 1.0) {
  const double n = N, z = Z;
  const double poly = 6 * n * n * n * z - 2 * n * n * n - 6 * n * n * z * z - 12 * n * n * z - 2 * n * n + 7 * n * z * z +
                      11 * n * z + 8 * n - 2 * z * z - 4 * z - 4;
  return std::numbers::pi * hbar * poly / (96.0 * (2 * n - 1) * (2 * n * n - 1));
}

inline double casimir_b_closed_form(int N, int Z, double hbar = 1.0) {
  const double n = N, z = Z;
  const double poly = 6 * n * n * n * n + 11 * n * n * n - 6 * n * n * z * z - 14 * n * n * z - 24 * n * n + 7 * n * z * z +
                      24 * n * z + 15 * n - 2 * z * z - 10 * z - 4;
  return std::numbers::pi * hbar * poly / (48.0 * (2 * n - 1) * (2 * n * n - 1));
}

inline double casimir_force(const PlateConfig& cfg) {
  const RegularizedEnergy e = plate_zeta_energy(cfg);
  const double x = cfg.X0.to_double();
  return -e.a / (x * x) + 2.0 * e.b / ((1.0 - 2.0 * x) * (1.0 - 2.0 * x));
}

enum class ForceVariant {
  corrected,  // the fourteen-term expansion with pi restored in its second term
  published,  // the expansion exactly as printed
};

// Term-by-term force expansion. The printed second term lacks the factor pi
// carried by the loop family it comes from; with it restored the expansion
// equals casimir_force identically. The two agree whenever N = Z + 3.
inline double casimir_force_expanded(const PlateConfig& cfg, ForceVariant variant = ForceVariant::corrected) {
  cfg.validate();
  const double pi = std::numbers::pi;
  const double h = cfg.hbar;
  const double N = cfg.N;
  const double Z1 = cfg.Z + 1.0;
  const double x = cfg.X0.to_double();
  const double p = 1.0 - Z1 / N;
  const double e2 = (1.0 - 2.0 * x) * (1.0 - 2.0 * x);
  const double x2 = x * x;
  const double second = (variant == ForceVariant::corrected ? pi : 1.0) * h * (N - (cfg.Z + 3)) * (N - Z1) / (12.0 * e2);
  double f = 2.0 * h * pi * (N - Z1) / (24.0 * (1.0 - 2.0 * N) * e2);
  f -= second;
  f -= 2.0 * h * pi * N * N * N * (N - 2.0) / (12.0 * (1.0 - 2.0 * N * N)) * (p * p / e2);
  f -= 5.0 * h * pi * p / (24.0 * e2) * (N * N * (N - Z1) / (1.0 - 2.0 * N * N) - N * N / (1.0 - 2.0 * N));
  f += h * pi * Z1 * Z1 / (48.0 * x2);
  f += h * pi * N * Z1 * Z1 * (N - 2.0) / (24.0 * x2 * (1.0 - 2.0 * N * N));
  f += 5.0 * h * pi * N * Z1 * Z1 / (96.0 * (1.0 - 2.0 * N * N) * x2);
  f += h * pi / (6.0 * e2);
  f += h * pi / (48.0 * x2);
  f -= h * pi * N * N * p / (24.0 * (1.0 - 2.0 * N) * e2);
  f += h * pi * N * Z1 / (96.0 * x2 * (1.0 - 2.0 * N));
  f -= h * pi * N * N * p / (12.0 * e2 * (1.0 - 2.0 * N));
  f += h * pi * Z1 * N / (48.0 * x2 * (1.0 - 2.0 * N));
  return f;
}

// Central difference of the regularised energy in X0.
inline double casimir_force_fd(const PlateConfig& cfg, double step = 1e-6) {
  cfg.validate();
  const double x = cfg.X0.to_double();
  if (!(step > 0.0) || x - step <= 0.0 || x + step >= 0.5) throw ValidationError("finite-difference step leaves (0, 1/2)");
  const double up = plate_zeta_energy(cfg.N, cfg.Z, x + step, cfg.hbar).total;
  const double down = plate_zeta_energy(cfg.N, cfg.Z, x - step, cfg.hbar).total;
  return (up - down) / (2.0 * step);
}

struct CasimirReport {
  PlateConfig config;
  RegularizedEnergy energy;
  double force = 0.0;              // closed form
  double oracle_force = 0.0;       // finite difference, authoritative
  double agreement = 0.0;          // |force - oracle| / max(1, |oracle|)
  double published_force = 0.0;    // expansion as printed
  double published_agreement = 0.0;
  bool attractive = false;
};

inline CasimirReport casimir_report(const PlateConfig& cfg, double step = 1e-6) {
  CasimirReport r;
  r.config = cfg;
  r.energy = plate_zeta_energy(cfg);
  r.force = casimir_force(cfg);
  r.oracle_force = casimir_force_fd(cfg, step);
  const double denom = std::max(1.0, std::abs(r.oracle_force));
  r.agreement = std::abs(r.force - r.oracle_force) / denom;
  r.published_force = casimir_force_expanded(cfg, ForceVariant::published);
  r.published_agreement = std::abs(r.published_force - r.oracle_force) / denom;
  r.attractive = r.force > 0.0;
  return r;
}

}  // namespace laakso
