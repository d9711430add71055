#pragma once

#include <vector>

namespace evac {

/// Throughput-maximizing junction resolution.
///
/// Given sending capacities of the n incoming roads, receiving capacities
/// of the m outgoing roads and a column-stochastic m x n distribution matrix
/// of route preferences, the resolver returns the unique flux assignment
/// that maximizes total throughput subject to the capacity box and, when
/// feasible, the preference split. When some outgoing road would be
/// overloaded the right-of-way regime activates and fluxes scale
/// proportionally to capacities on the limiting side.

struct JunctionProblem {
  std::vector<double> c_in;               // n sending capacities (>= 0)
  std::vector<double> c_out;              // m receiving capacities (>= 0)
  std::vector<std::vector<double>> dist;  // m rows of n entries, columns sum to 1
};

enum class JunctionRegime {
  Preferences,  // preference split feasible, taken at full incoming capacity
  OutScaled,    // some row overloads but totals fit: outgoing side scaled
  InScaled      // outgoing side is the bottleneck: incoming side scaled
};

struct JunctionSolution {
  std::vector<double> gamma_in;
  std::vector<double> gamma_out;
  JunctionRegime regime = JunctionRegime::Preferences;
  double lambda = 1.0;
  double mu = 1.0;
};

/// Per-row load ratios r_j = (A_j . c_in) / c_out_j and their maximum.
/// A zero receiving capacity with positive routed demand yields +infinity.
struct CapacityRatio {
  std::vector<double> per_row;
  double max = 0.0;
};

CapacityRatio capacity_ratio(const JunctionProblem& p);

JunctionSolution resolve(const JunctionProblem& p);

/// Allocation-free variant for the solver's inner loop: the output vectors
/// are resized once and reused across calls.
void resolve_into(const std::vector<double>& c_in,
                  const std::vector<double>& c_out,
                  const std::vector<std::vector<double>>& dist,
                  JunctionSolution& out);

} // namespace evac
