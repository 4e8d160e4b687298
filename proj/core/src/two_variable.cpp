#include "jetmap/variational.hpp"

namespace jetmap {

TwoVarBlock two_var_oracle_rhs(const TwoVarBlock& g, const TwoVarBlock& h, Direction direction) {
  // G(a, r) = g^r_a and H(r, a) = h^r_a with 1-based indices, to keep the
  // equations readable.
  auto G = [&g](int a, int r) { return g[a - 1][r - 1]; };
  auto H = [&h](int r, int a) { return h[a - 1][r - 1]; };
  TwoVarBlock d{};
  auto D = [&d](int r, int a) -> double& { return d[a - 1][r - 1]; };

  if (direction == Direction::forward) {
    for (int a = 1; a <= 2; ++a) {
      D(1, a) = G(a, 1) * H(1, 1) + G(a, 2) * H(1, 2);
      D(2, a) = G(a, 1) * H(2, 1) + G(a, 2) * H(2, 2);
      D(3, a) = G(a, 1) * H(3, 1) + G(a, 2) * H(3, 2) + G(a, 3) * H(1, 1) * H(1, 1) +
                G(a, 4) * H(1, 1) * H(1, 2) + G(a, 5) * H(1, 2) * H(1, 2);
      D(4, a) = G(a, 1) * H(4, 1) + G(a, 2) * H(4, 2) + 2 * G(a, 3) * H(1, 1) * H(2, 1) +
                G(a, 4) * (H(1, 1) * H(2, 2) + H(2, 1) * H(1, 2)) +
                2 * G(a, 5) * H(1, 2) * H(2, 2);
      D(5, a) = G(a, 1) * H(5, 1) + G(a, 2) * H(5, 2) + G(a, 3) * H(2, 1) * H(2, 1) +
                G(a, 4) * H(2, 1) * H(2, 2) + G(a, 5) * H(2, 2) * H(2, 2);
    }
    return d;
  }

  for (int a = 1; a <= 2; ++a) {
    D(1, a) = -G(1, 1) * H(1, a) - G(2, 1) * H(2, a);
    D(2, a) = -G(1, 2) * H(1, a) - G(2, 2) * H(2, a);
    D(3, a) = -2 * G(1, 1) * H(3, a) - G(1, 3) * H(1, a) - G(2, 1) * H(4, a) -
              G(2, 3) * H(2, a);
    D(4, a) = -G(1, 1) * H(4, a) - 2 * G(1, 2) * H(3, a) - G(1, 4) * H(1, a) -
              2 * G(2, 1) * H(5, a) - G(2, 2) * H(4, a) - G(2, 4) * H(2, a);
    D(5, a) = -G(1, 2) * H(4, a) - G(1, 5) * H(1, a) - 2 * G(2, 2) * H(5, a) -
              G(2, 5) * H(2, a);
  }
  return d;
}

}  // namespace jetmap
