#pragma once

// Spectral zeta function of a Laakso space, its closed form for periodic
// j-sequences, and the scalar tools used for analytic continuation.
//
//   zeta_L(s) = zeta_R(2s) / pi^{2s} * B(s)
//   B(s) = sum_{n>=2} [2^{n-1} I_{n-1} (2^{2s-1} + j_n - 1) + 2^{n-1} (3/2 2^{2s} - 3)] / I_n^{2s}
//          + (2^{2s+1} - 4 + j_1) / j_1^{2s} + 1
//
// For period T the n-sum splits into T geometric series with ratios
// 2^T I_T / I_T^{2s} and 2^T / I_T^{2s}, which continue meromorphically.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdio>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "laakso/error.hpp"
#include "laakso/jsequence.hpp"

namespace laakso {

using cplx = std::complex<double>;

namespace detail {

inline std::string fmt_complex(cplx z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

// B_2, B_4, ..., B_30.
inline constexpr std::array<double, 15> kBernoulliEven = {
    1.0 / 6,          -1.0 / 30,          1.0 / 42,          -1.0 / 30,          5.0 / 66,
    -691.0 / 2730,    7.0 / 6,            -3617.0 / 510,     43867.0 / 798,      -174611.0 / 330,
    854513.0 / 138,   -236364091.0 / 2730, 8553103.0 / 6,    -23749461029.0 / 870, 8615841276005.0 / 14322};

// Euler-Maclaurin with N = 20 + |s| leading terms and 15 correction terms.
inline cplx zeta_euler_maclaurin(cplx s) {
  const int N = 20 + static_cast<int>(std::ceil(std::abs(s)));
  cplx sum = 0.0;
  for (int k = N - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  const double Nd = N;
  sum += std::pow(Nd, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(Nd, -s);
  cplx rising = s;             // s (s+1) ... (s+2j-2)
  cplx power = std::pow(Nd, -s - 1.0);
  double factorial = 2.0;      // (2j)!
  for (std::size_t j = 1; j <= kBernoulliEven.size(); ++j) {
    const cplx term = kBernoulliEven[j - 1] / factorial * rising * power;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    const double a = 2.0 * static_cast<double>(j);
    rising *= (s + (a - 1.0)) * (s + a);
    power /= Nd * Nd;
    factorial *= (a + 1.0) * (a + 2.0);
  }
  return sum;
}

// Lanczos approximation (g = 7, nine terms) for Re z >= 1/2.
inline cplx lanczos_gamma(cplx z) {
  static constexpr std::array<double, 9> c = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                              771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                              -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  z -= 1.0;
  cplx a = c[0];
  for (std::size_t i = 1; i < c.size(); ++i) a += c[i] / (z + static_cast<double>(i));
  const cplx t = z + 7.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::exp((z + 0.5) * std::log(t) - t) * a;
}

}  // namespace detail

// Riemann zeta. Exact at s = 0, -1 and the trivial zeros; the functional
// equation for Re s < 0; Euler-Maclaurin otherwise. Throws PoleError at s = 1.
inline cplx riemann_zeta(cplx s) {
  if (s == cplx(1.0, 0.0)) throw PoleError("Riemann zeta has a pole at s = 1");
  const double pi = std::numbers::pi;
  if (s.imag() == 0.0) {
    const double x = s.real();
    if (x == 0.0) return -0.5;
    if (x == -1.0) return -1.0 / 12.0;
    if (x < 0.0) {
      if (x == std::floor(x) && std::fmod(x, 2.0) == 0.0) return 0.0;  // trivial zeros
      const double v = std::pow(2.0, x) * std::pow(pi, x - 1.0) * std::sin(pi * x / 2.0) * std::tgamma(1.0 - x) *
                       detail::zeta_euler_maclaurin(cplx(1.0 - x, 0.0)).real();
      if (!std::isfinite(v)) throw ValidationError("riemann_zeta overflows at s = " + detail::fmt_complex(s));
      return v;
    }
  } else if (s.real() < 0.0) {
    const cplx v = std::pow(cplx(2.0, 0.0), s) * std::pow(cplx(pi, 0.0), s - 1.0) * std::sin(pi * s / 2.0) *
                   detail::lanczos_gamma(1.0 - s) * detail::zeta_euler_maclaurin(1.0 - s);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw ValidationError("riemann_zeta overflows at s = " + detail::fmt_complex(s));
    }
    return v;
  }
  return detail::zeta_euler_maclaurin(s);
}

inline double riemann_zeta(double s) { return riemann_zeta(cplx(s, 0.0)).real(); }

// sum_{k>=0} (k + 1/2)^{-s} = (2^s - 1) zeta_R(s); 1/24 at s = -1.
inline cplx hurwitz_half_sum(cplx s) {
  if (s == cplx(1.0, 0.0)) throw PoleError("half-integer zeta sum has a pole at s = 1");
  return (std::pow(cplx(2.0, 0.0), s) - 1.0) * riemann_zeta(s);
}

// sum_{n>=0} r^n continued to 1/(1 - r).
inline cplx geometric_continuation(cplx r) {
  if (r == cplx(1.0, 0.0)) throw PoleError("geometric continuation has a pole at ratio 1");
  return 1.0 / (1.0 - r);
}

inline double geometric_continuation(double r) { return geometric_continuation(cplx(r, 0.0)).real(); }

namespace detail {

inline cplx pow_int(std::int64_t base, cplx e) { return std::pow(static_cast<double>(base), e); }

// Summand of the bracket for level n (n >= 2).
inline cplx bracket_term(const LevelProducts& ip, std::int64_t jn, int n, cplx s) {
  const double two_n1 = std::ldexp(1.0, n - 1);
  const cplx p2 = pow_int(2, 2.0 * s);
  const cplx num = two_n1 * static_cast<double>(ip[n - 1]) * (0.5 * p2 + static_cast<double>(jn) - 1.0) +
                   two_n1 * (1.5 * p2 - 3.0);
  return num / pow_int(ip[n], 2.0 * s);
}

inline cplx bracket_tail(std::int64_t j1, cplx s) {
  return (2.0 * pow_int(2, 2.0 * s) - 4.0 + static_cast<double>(j1)) / pow_int(j1, 2.0 * s) + 1.0;
}

}  // namespace detail

// Bracket B(s) summed explicitly over levels 2..levels (no continuation).
inline cplx zeta_bracket_partial(const JSequence& seq, cplx s, int levels) {
  if (levels < 1) throw ValidationError("zeta_bracket_partial needs levels >= 1");
  const auto ip = level_products(seq, levels);
  cplx sum = detail::bracket_tail(seq.j(1), s);
  for (int n = 2; n <= levels; ++n) sum += detail::bracket_term(ip, seq.j(n), n, s);
  return sum;
}

struct PeriodData {
  int T = 0;
  std::int64_t I_T = 0;
  double two_T = 0.0;
};

inline PeriodData period_data(const JSequence& seq) {
  if (!seq.is_periodic()) throw ValidationError("closed-form spectral zeta needs a periodic j-sequence");
  PeriodData d;
  d.T = seq.period();
  d.I_T = seq.level_product(d.T);
  d.two_T = std::ldexp(1.0, d.T);
  return d;
}

// Denominators of the two geometric factors: I_T^{2s} - 2^T I_T and I_T^{2s} - 2^T.
inline std::array<cplx, 2> zeta_denominators(const JSequence& seq, cplx s) {
  const PeriodData d = period_data(seq);
  const cplx It2s = detail::pow_int(d.I_T, 2.0 * s);
  return {It2s - d.two_T * static_cast<double>(d.I_T), It2s - d.two_T};
}

// Closed-form bracket for a periodic sequence, valid on all of C minus the
// pole lattice.
inline cplx zeta_bracket_periodic(const JSequence& seq, cplx s) {
  const PeriodData d = period_data(seq);
  const auto ip = level_products(seq, d.T + 1);
  const cplx It2s = detail::pow_int(d.I_T, 2.0 * s);
  const auto den = zeta_denominators(seq, s);
  const double scale = std::max(1.0, std::abs(It2s));
  if (std::abs(den[0]) < 1e-13 * scale || std::abs(den[1]) < 1e-13 * scale) {
    throw PoleError("spectral zeta of " + seq.str() + " has a pole at s = " + detail::fmt_complex(s));
  }
  const cplx f1 = It2s / den[0];
  const cplx f2 = It2s / den[1];
  const cplx p2 = detail::pow_int(2, 2.0 * s);
  cplx sum = 0.0;
  for (int p = 2; p <= d.T + 1; ++p) {
    const double two_p1 = std::ldexp(1.0, p - 1);
    const cplx Ip2s = detail::pow_int(ip[p], 2.0 * s);
    sum += f1 * (two_p1 * static_cast<double>(ip[p - 1]) * (0.5 * p2 + static_cast<double>(seq.j(p)) - 1.0)) / Ip2s;
    sum += f2 * (two_p1 * (1.5 * p2 - 3.0)) / Ip2s;
  }
  return sum + detail::bracket_tail(seq.j(1), s);
}

// Spectral dimension ln(2^T I_T) / ln(I_T); the Dirichlet series converges
// for Re s > d_s / 2.
inline double spectral_dimension(const JSequence& seq) {
  const PeriodData d = period_data(seq);
  return std::log(d.two_T * static_cast<double>(d.I_T)) / std::log(static_cast<double>(d.I_T));
}

struct ZetaValue {
  cplx s;
  cplx value;
  std::string mode;  // "series" (Re s > d_s/2), "continued", or "limit" (s = 1/2)
};

// lim_{s -> 1/2} zeta_L(s); undefined when I_T = 2^T (constant j = 2).
inline double zeta_limit_half(const JSequence& seq) {
  const PeriodData d = period_data(seq);
  if (static_cast<double>(d.I_T) == d.two_T) {
    throw PoleError("spectral zeta of " + seq.str() + " has a pole at s = 1/2 (I_T = 2^T)");
  }
  const auto ip = level_products(seq, d.T + 1);
  const double ln2 = std::numbers::ln2;
  const double IT = static_cast<double>(d.I_T);
  const double one_minus = 1.0 - d.two_T;
  double sum = 0.0;
  for (int p = 2; p <= d.T + 1; ++p) {
    const double two_p = std::ldexp(1.0, p);
    const double Ip = static_cast<double>(ip[p]);
    sum += two_p * ln2 / (static_cast<double>(seq.j(p)) * one_minus) - two_p * std::log(Ip) / one_minus +
           two_p * IT * 3.0 * ln2 / (Ip * (IT - d.two_T));
  }
  const double j1 = static_cast<double>(seq.j(1));
  sum += std::ldexp(1.0, d.T + 2) * std::log(IT) / one_minus + 8.0 * ln2 / j1 - 2.0 * std::log(j1);
  return sum / (2.0 * std::numbers::pi);
}

inline ZetaValue spectral_zeta_periodic(const JSequence& seq, cplx s) {
  ZetaValue out;
  out.s = s;
  if (s == cplx(0.5, 0.0)) {
    out.value = zeta_limit_half(seq);
    out.mode = "limit";
    return out;
  }
  const cplx b = zeta_bracket_periodic(seq, s);
  out.value = riemann_zeta(2.0 * s) * std::pow(std::numbers::pi, -2.0 * s) * b;
  out.mode = s.real() > 0.5 * spectral_dimension(seq) ? "series" : "continued";
  return out;
}

// Constant j_n = j.
inline cplx constant_j_zeta(int j, cplx s) {
  if (j < 2) throw ValidationError("constant_j_zeta needs j >= 2");
  const cplx J = static_cast<double>(j);
  const cplx j2s = std::pow(J, 2.0 * s);
  const cplx p2 = std::pow(cplx(2.0, 0.0), 2.0 * s);
  const cplx den = (j2s - 2.0 * J) * (j2s - 2.0);
  if (std::abs(den) < 1e-13 * std::max(1.0, std::abs(j2s * j2s))) {
    throw PoleError("constant-j spectral zeta (j=" + std::to_string(j) + ") has a pole at s = " + detail::fmt_complex(s));
  }
  const cplx num = j2s * j2s - j2s * J + 2.0 * p2 * j2s - 6.0 * j2s - 3.0 * p2 * J + 8.0 * J - p2 + 2.0;
  return riemann_zeta(2.0 * s) * std::pow(std::numbers::pi, -2.0 * s) * num / den;
}

// Displayed closed value of zeta_L(-1/2) for constant j.
inline double constant_j_zeta_minus_half(int j) {
  if (j < 2) throw ValidationError("constant_j_zeta_minus_half needs j >= 2");
  const double J = j;
  return -std::numbers::pi / 12.0 * (13.0 / 8.0 + (3.0 * J - 2.0) / (8.0 * J * J - 4.0) + 9.0 / (16.0 * J - 8.0));
}

// Period-2 sequence (j1, j2, j1, j2, ...).
inline cplx period2_zeta(int j1, int j2, cplx s) {
  if (j1 < 2 || j2 < 2) throw ValidationError("period2_zeta needs j1, j2 >= 2");
  const cplx J1 = static_cast<double>(j1);
  const cplx J2 = static_cast<double>(j2);
  const cplx I2 = J1 * J2;
  const cplx I22s = std::pow(I2, 2.0 * s);
  const cplx j12s = std::pow(J1, 2.0 * s);
  const cplx p2 = std::pow(cplx(2.0, 0.0), 2.0 * s);
  const cplx d1 = I22s - 4.0 * I2;
  const cplx d2 = I22s - 4.0;
  const double scale = std::max(1.0, std::abs(I22s));
  if (std::abs(d1) < 1e-13 * scale || std::abs(d2) < 1e-13 * scale) {
    throw PoleError("period-2 spectral zeta has a pole at s = " + detail::fmt_complex(s));
  }
  const cplx bracket = (2.0 * J1 / d1) * (0.5 * p2 + J2 - 1.0 + 2.0 * J2 * (0.5 * p2 + J1 - 1.0) / j12s) +
                       ((3.0 * p2 - 6.0) / d2) * (1.0 + 2.0 / j12s) + (2.0 * p2 - 4.0 + J1) / j12s + 1.0;
  return riemann_zeta(2.0 * s) * std::pow(std::numbers::pi, -2.0 * s) * bracket;
}

struct ZetaPole {
  cplx s;
  int family = 0;  // 1: I_T^{2s} = 2^T I_T, 2: I_T^{2s} = 2^T
  int m = 0;
};

enum class PoleLattice {
  full,       // (ln(.) + 2 pi i m) / ln(I_T^2): every zero of the denominators
  published,  // (ln(.) + 2 T pi i m) / ln(I_T^2): the sublattice m = 0 mod T of the above
};

// Poles of the closed form with base points ln(2^T I_T) and ln(2^T), |m| <= m_max.
inline std::vector<ZetaPole> zeta_poles(const JSequence& seq, int m_max, PoleLattice lattice = PoleLattice::full) {
  if (m_max < 0) throw ValidationError("zeta_poles needs m_max >= 0");
  const PeriodData d = period_data(seq);
  const double lnI2 = std::log(static_cast<double>(d.I_T) * static_cast<double>(d.I_T));
  const double a1 = std::log(d.two_T * static_cast<double>(d.I_T));
  const double a2 = std::log(d.two_T);
  const double step = 2.0 * std::numbers::pi * (lattice == PoleLattice::published ? d.T : 1);
  std::vector<ZetaPole> out;
  for (int family = 1; family <= 2; ++family) {
    for (int m = -m_max; m <= m_max; ++m) {
      const double re = family == 1 ? a1 : a2;
      out.push_back({cplx(re, step * m) / lnI2, family, m});
    }
  }
  return out;
}

// Largest real part among the poles; the spectral dimension is twice this.
inline double max_pole_real_part(const JSequence& seq) {
  double best = -1e300;
  for (const auto& p : zeta_poles(seq, 0)) best = std::max(best, p.s.real());
  return best;
}

}  // namespace laakso
