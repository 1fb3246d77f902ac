#pragma once

#include <complex>
#include <limits>
#include <vector>

// Worst-case distance between two eigenvalue multisets, by greedy matching.
inline double eig_multiset_mismatch(std::vector<std::complex<double>> a,
                                    std::vector<std::complex<double>> b) {
  double worst = 0.0;
  for (const auto& z : a) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t pick = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      double d = std::abs(z - b[i]);
      if (d < best) {
        best = d;
        pick = i;
      }
    }
    if (b.empty()) return std::numeric_limits<double>::infinity();
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(pick));
    worst = std::max(worst, best);
  }
  return worst;
}
