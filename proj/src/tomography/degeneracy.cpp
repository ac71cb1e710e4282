#include <climits>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "rotomo/tomography.hpp"

namespace rotomo {
namespace {

void require_probe(int alpha, int beta, const char* who) {
  if (alpha < 0 || std::abs(beta) > alpha || (alpha - beta) % 2 != 0) {
    throw std::invalid_argument(std::string(who) + ": need |beta| <= alpha and beta = alpha (mod 2), got (" +
                                std::to_string(alpha) + ", " + std::to_string(beta) + ")");
  }
}

}  // namespace

DegeneracyChain degeneracy_set(int alpha, int beta, int j_min, int j_search_cap, bool same_parity) {
  require_probe(alpha, beta, "degeneracy_set");
  if (beta == 0) throw std::invalid_argument("degeneracy_set: beta must be non-zero");
  DegeneracyChain chain;
  chain.target = static_cast<long>(beta) * (alpha + 1);
  const long magnitude = std::labs(chain.target);
  const int sign = beta > 0 ? 1 : -1;
  for (int d = std::abs(beta); d >= 1; --d) {
    if (magnitude % d != 0) continue;
    const long J = magnitude / d - 1;
    if (J > j_search_cap) continue;
    if ((same_parity && (J - alpha) % 2 != 0) || (J - d) % 2 != 0) continue;
    if (d > J || (J - d) / 2 < j_min) continue;
    chain.members.push_back({static_cast<int>(J), sign * d});
  }
  return chain;
}

double probe_frequency(const RotorSpec& spec, int alpha, int beta) {
  return bohr_frequency(spec, (alpha + beta) / 2, (alpha - beta) / 2);
}

DegeneracyChain degeneracy_set_cd(int alpha, int beta, int j_min, int j_search_cap, const RotorSpec& spec,
                                  double freq_tolerance) {
  require_probe(alpha, beta, "degeneracy_set_cd");
  if (beta == 0) throw std::invalid_argument("degeneracy_set_cd: beta must be non-zero");
  DegeneracyChain chain;
  chain.target = static_cast<long>(beta) * (alpha + 1);
  chain.frequency = probe_frequency(spec, alpha, beta);
  const int sign = beta > 0 ? 1 : -1;
  for (int d = std::abs(beta); d >= 1; --d) {
    for (int J = std::max(alpha, d); J <= j_search_cap; ++J) {
      if ((J - alpha) % 2 != 0 || (J - d) % 2 != 0) continue;
      if ((J - d) / 2 < j_min) continue;
      const int dJ = sign * d;
      const double w = bohr_frequency(spec, (J + dJ) / 2, (J - dJ) / 2);
      // Pairs exactly one resolution apart are still separated by the window.
      if (std::abs(w - chain.frequency) < freq_tolerance) chain.members.push_back({J, dJ});
    }
  }
  return chain;
}

int required_search_cap(int j_max, int j_min, bool same_parity) {
  int cap = 2 * j_max;
  for (int j1 = j_min + 1; j1 <= j_max; ++j1) {
    for (int j2 = j_min; j2 < j1; ++j2) {
      const DegeneracyChain chain = degeneracy_set(j1 + j2, j1 - j2, j_min, INT_MAX, same_parity);
      for (const ChainMember& member : chain.members) cap = std::max(cap, member.J);
    }
  }
  return cap;
}

}  // namespace rotomo
