#pragma once

#include <stdexcept>
#include <string>

namespace floquet {

// Symmetric Fourier mode window k = -K..K with a distinguished middle block
// |k| <= N used by the block-diagonalization stage.
struct ModeGrid {
  int K;
  int N;

  ModeGrid(int K_, int N_) : K(K_), N(N_) {
    if (K < 1) throw std::invalid_argument("ModeGrid: K must be >= 1");
    if (N < 1 || N >= K)
      throw std::invalid_argument("ModeGrid: need 1 <= N < K, got N=" +
                                  std::to_string(N_) + " K=" + std::to_string(K_));
  }

  int size() const { return 2 * K + 1; }
  int middle_size() const { return 2 * N + 1; }

  // Mode k <-> storage index (0-based, k = -K first).
  int index(int k) const { return k + K; }
  int mode(int i) const { return i - K; }
  bool contains(int k) const { return k >= -K && k <= K; }
  bool in_middle(int k) const { return k >= -N && k <= N; }
};

// <k> = |k| + 1, the weight used throughout the decay templates.
inline double bracket(int k) { return static_cast<double>(k < 0 ? -k : k) + 1.0; }

}  // namespace floquet
