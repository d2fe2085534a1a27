#pragma once
// Test-only reference: builds the two-qubit state and the observable
// eigenvectors as explicit complex vectors and takes inner products. Shares no
// code with the closed-form probabilities it checks.

#include <array>
#include <cmath>
#include <complex>

namespace oracle {

using cd = std::complex<double>;
using Qubit = std::array<cd, 2>;  // components on (|u>, |v>)

struct Eigenbasis {
  Qubit plus;
  Qubit minus;
};

// |d+> = e^{i a} cos b |u> + e^{i g} sin b |v>,  |d-> = -e^{-i g} sin b |u> + e^{-i a} cos b |v>
inline Eigenbasis eigenbasis(double beta, double alpha, double gamma) {
  const cd i(0.0, 1.0);
  return {{std::exp(i * alpha) * std::cos(beta), std::exp(i * gamma) * std::sin(beta)},
          {-std::exp(-i * gamma) * std::sin(beta), std::exp(-i * alpha) * std::cos(beta)}};
}

// Probabilities in the order (++, --, +-, -+).
struct Probabilities {
  std::array<double, 4> p{};
  double correlation() const { return p[0] + p[1] - p[2] - p[3]; }
};

// c1 |u u> + c2 |v v>. The relative phases fix only gamma - alpha on particle 1
// and alpha - gamma on particle 2; the absolute phases are free gauge choices.
inline Probabilities joint(double c1, double c2, double beta1, double delta1, double beta2,
                           double delta2, double gauge1 = 0.3, double gauge2 = -0.7) {
  const std::array<cd, 4> eta{c1, 0.0, 0.0, c2};  // uu, uv, vu, vv
  const auto b1 = eigenbasis(beta1, gauge1, gauge1 + delta1);
  const auto b2 = eigenbasis(beta2, gauge2, gauge2 - delta2);
  auto prob = [&](const Qubit& x, const Qubit& y) {
    cd amp = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) amp += std::conj(x[a]) * std::conj(y[b]) * eta[2 * a + b];
    return std::norm(amp);
  };
  return {{prob(b1.plus, b2.plus), prob(b1.minus, b2.minus), prob(b1.plus, b2.minus),
           prob(b1.minus, b2.plus)}};
}

}  // namespace oracle
