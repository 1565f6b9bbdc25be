#pragma once

// Two uncharged conducting plates attached symmetrically to nodes of F_1 in
// a constant-j (j = N) Laakso space.

#include <cstdint>
#include <string>

#include "laakso/error.hpp"
#include "laakso/rational.hpp"

namespace laakso {

struct PlateConfig {
  int N = 0;              // constant subdivision j_n = N
  int Z = 0;              // F_1 nodes strictly between the plates
  Rational X0;            // plate distance from x = 1/2
  double hbar = 1.0;

  PlateConfig() = default;
  PlateConfig(int n, int z, Rational x0, double h = 1.0) : N(n), Z(z), X0(x0), hbar(h) { validate(); }

  void validate() const {
    if (N < 2) throw ValidationError("plate configuration: N must be >= 2");
    if (Z < 0 || Z > N - 2) throw ValidationError("plate configuration: need 0 <= Z <= N - 2");
    if ((N - (Z + 1)) % 2 != 0) {
      throw ValidationError("plate configuration: N - (Z + 1) must be even for symmetric plates (N=" +
                            std::to_string(N) + ", Z=" + std::to_string(Z) + ")");
    }
    if (!(X0 > Rational(0)) || !(X0 < Rational(1, 2))) throw ValidationError("plate configuration: X0 must lie in (0, 1/2)");
    if (!(hbar > 0.0)) throw ValidationError("plate configuration: hbar must be positive");
  }

  // F_1 column of the left plate; the right plate sits at N - plate_column().
  int plate_column() const { return (N - Z - 1) / 2; }

  // Plate position that leaves every cell at its unperturbed length.
  Rational natural_X0() const { return Rational(Z + 1, 2 * N); }

  // Interior and exterior cell lengths of F_n are these factors times I_n^{-1}.
  Rational interior_scale() const { return Rational(2 * N) * X0 / Rational(Z + 1); }
  Rational exterior_scale() const { return (Rational(1) - Rational(2) * X0) * Rational(N) / Rational(N - Z - 1); }

  std::string str() const { return "N=" + std::to_string(N) + " Z=" + std::to_string(Z) + " X0=" + X0.str(); }
};

}  // namespace laakso
