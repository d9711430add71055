#include "evac/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace evac {

double Road::mass_norm() const {
  double s = 0.0;
  for (int m = 0; m < cells; ++m) s += rho[m + 1];
  return s * dx;
}

int Network::add_road(Road r) {
  if (road_ids_.count(r.id))
    throw ValidationError("network: duplicate road id " + r.id);
  const int idx = static_cast<int>(roads.size());
  road_ids_[r.id] = idx;
  roads.push_back(std::move(r));
  return idx;
}

int Network::add_junction(const std::string& id) {
  if (junction_ids_.count(id))
    throw ValidationError("network: duplicate junction id " + id);
  const int idx = static_cast<int>(junctions.size());
  junction_ids_[id] = idx;
  Junction j;
  j.id = id;
  junctions.push_back(std::move(j));
  return idx;
}

int Network::road_index(const std::string& id) const {
  auto it = road_ids_.find(id);
  if (it == road_ids_.end())
    throw ValidationError("network: unknown road id " + id);
  return it->second;
}

int Network::junction_index(const std::string& id) const {
  auto it = junction_ids_.find(id);
  if (it == junction_ids_.end())
    throw ValidationError("network: unknown junction id " + id);
  return it->second;
}

void Network::connect(const std::string& junction_id,
                      const std::vector<std::string>& in_roads,
                      const std::vector<std::string>& out_roads) {
  const int jidx = junction_index(junction_id);
  Junction& j = junctions[jidx];
  for (const auto& id : in_roads) {
    const int r = road_index(id);
    j.in.push_back(r);
    roads[r].right = Attachment::at_junction(jidx);
  }
  for (const auto& id : out_roads) {
    const int r = road_index(id);
    j.out.push_back(r);
    roads[r].left = Attachment::at_junction(jidx);
  }
  const std::size_t n = j.in.size();
  const std::size_t m = j.out.size();
  j.dist.assign(m, std::vector<double>(n, m > 0 ? 1.0 / static_cast<double>(m) : 0.0));
  j.gamma_in.assign(n, 0.0);
  j.gamma_out.assign(m, 0.0);
}

void Network::discretize(double dx_target_mi) {
  if (dx_target_mi <= 0.0)
    throw ValidationError("network: dx target must be positive");
  for (Road& r : roads) {
    r.cells = std::max(3, static_cast<int>(std::lround(r.length / dx_target_mi)));
    r.dx = r.length / r.cells;
    r.rho.assign(r.cells + 2, r.init_density);
  }
}

void Network::reset_state() {
  for (Road& r : roads) std::fill(r.rho.begin(), r.rho.end(), r.init_density);
  for (Junction& j : junctions) {
    std::fill(j.gamma_in.begin(), j.gamma_in.end(), 0.0);
    std::fill(j.gamma_out.begin(), j.gamma_out.end(), 0.0);
  }
}

double Network::total_mass_norm() const {
  double s = 0.0;
  for (const Road& r : roads) s += r.mass_norm();
  return s;
}

void Network::copy_state_from(const Network& src) {
  if (src.roads.size() != roads.size() ||
      src.junctions.size() != junctions.size())
    throw ValidationError("network: state copy between different shapes");
  for (std::size_t i = 0; i < roads.size(); ++i)
    roads[i].rho.assign(src.roads[i].rho.begin(), src.roads[i].rho.end());
  for (std::size_t j = 0; j < junctions.size(); ++j) {
    Junction& dst = junctions[j];
    const Junction& from = src.junctions[j];
    dst.gamma_in.assign(from.gamma_in.begin(), from.gamma_in.end());
    dst.gamma_out.assign(from.gamma_out.begin(), from.gamma_out.end());
    for (std::size_t k = 0; k < dst.dist.size(); ++k)
      dst.dist[k].assign(from.dist[k].begin(), from.dist[k].end());
  }
}

namespace {

// True if target is in the span of the given vectors (all length n).
bool in_span(const std::vector<std::vector<double>>& vecs,
             const std::vector<double>& target) {
  const std::size_t n = target.size();
  std::vector<std::vector<double>> m = vecs;
  m.push_back(target);
  // Row-reduce; target is in the span iff it does not raise the rank.
  std::size_t rank_without = 0, rank_with = 0;
  auto rank_of = [n](std::vector<std::vector<double>> rows) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
      std::size_t pivot = rank;
      for (std::size_t r = rank; r < rows.size(); ++r)
        if (std::abs(rows[r][col]) > std::abs(rows[pivot][col])) pivot = r;
      if (std::abs(rows[pivot][col]) < 1e-12) continue;
      std::swap(rows[rank], rows[pivot]);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r == rank) continue;
        const double f = rows[r][col] / rows[rank][col];
        for (std::size_t c = col; c < n; ++c) rows[r][c] -= f * rows[rank][c];
      }
      ++rank;
    }
    return rank;
  };
  rank_with = rank_of(m);
  m.pop_back();
  rank_without = rank_of(m);
  return rank_with == rank_without;
}

void check_span_condition(const Network& net, const Junction& j,
                          std::vector<std::string>& warnings) {
  const std::size_t n = j.in.size();
  const std::size_t m = j.out.size();
  if (n < 2 || m < 2) return;
  std::vector<std::vector<double>> candidates = j.dist;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    candidates.push_back(e);
  }
  const std::vector<double> ones(n, 1.0);
  // All subsets of size n-1 of the candidate vectors.
  const std::size_t total = candidates.size();
  std::vector<std::size_t> pick(n - 1);
  std::vector<bool> mask(total, false);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(n - 1), true);
  std::sort(mask.begin(), mask.end());
  do {
    std::vector<std::vector<double>> subset;
    for (std::size_t k = 0; k < total; ++k)
      if (mask[k]) subset.push_back(candidates[k]);
    if (subset.size() == n - 1 && in_span(subset, ones)) {
      warnings.push_back("junction " + j.id +
                         ": distribution matrix fails the span condition");
      return;
    }
  } while (std::next_permutation(mask.begin(), mask.end()));
  (void)net;
}

}  // namespace

ValidationReport validate(const Network& net) {
  ValidationReport rep;
  auto err = [&rep](const std::string& s) { rep.errors.push_back(s); };

  for (std::size_t ri = 0; ri < net.roads.size(); ++ri) {
    const Road& r = net.roads[ri];
    if (r.length <= 0.0) err("road " + r.id + ": nonpositive length");
    for (const Attachment* a : {&r.left, &r.right}) {
      if (a->kind == Attachment::Kind::Junction) {
        if (a->junction < 0 ||
            a->junction >= static_cast<int>(net.junctions.size())) {
          err("road " + r.id + ": attached to missing junction");
          continue;
        }
        const Junction& j = net.junctions[a->junction];
        const auto& list = (a == &r.right) ? j.in : j.out;
        if (std::find(list.begin(), list.end(), static_cast<int>(ri)) ==
            list.end())
          err("road " + r.id + ": junction " + j.id +
              " does not list it on the matching side");
      }
    }
    for (double v : r.rho)
      if (v < 0.0 || v > r.flux.rho_max())
        err("road " + r.id + ": density outside [0, lanes]");
  }

  for (const Junction& j : net.junctions) {
    const std::size_t n = j.in.size();
    const std::size_t m = j.out.size();
    if (n == 0 || m == 0) {
      err("junction " + j.id + ": needs incoming and outgoing roads");
      continue;
    }
    if (j.dist.size() != m) {
      err("junction " + j.id + ": distribution matrix row count != outgoing");
      continue;
    }
    for (const auto& row : j.dist)
      if (row.size() != n) {
        err("junction " + j.id + ": distribution matrix column count != incoming");
        break;
      }
    for (std::size_t i = 0; i < n; ++i) {
      double col = 0.0;
      bool in_range = true;
      for (std::size_t k = 0; k < m; ++k) {
        col += j.dist[k][i];
        if (m > 1 && (j.dist[k][i] <= 0.0 || j.dist[k][i] >= 1.0))
          in_range = false;
      }
      if (std::abs(col - 1.0) > 1e-9)
        err("junction " + j.id + ": distribution column not stochastic");
      if (!in_range)
        err("junction " + j.id + ": distribution entry outside (0,1)");
    }
    check_span_condition(net, j, rep.warnings);
  }

  bool has_exit = false;
  for (const Road& r : net.roads) has_exit |= r.is_exit;
  if (!has_exit) err("network: no exit road");

  return rep;
}

std::vector<std::string> assign_weights(Network& net) {
  std::vector<std::string> warnings;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> jdist(net.junctions.size(), inf);

  bool has_exit = false;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (const Road& r : net.roads) {
    if (!r.is_exit) continue;
    has_exit = true;
    if (r.left.kind == Attachment::Kind::Junction &&
        jdist[r.left.junction] > 1.0) {
      jdist[r.left.junction] = 1.0;
      pq.emplace(1.0, r.left.junction);
    }
  }
  if (!has_exit) throw ValidationError("assign_weights: no exit road");

  while (!pq.empty()) {
    auto [d, j] = pq.top();
    pq.pop();
    if (d > jdist[j]) continue;
    // Relax backward across every road directed into junction j.
    for (int ri : net.junctions[j].in) {
      const Road& r = net.roads[ri];
      if (r.left.kind != Attachment::Kind::Junction) continue;
      const int k = r.left.junction;
      if (jdist[k] > d + 1.0) {
        jdist[k] = d + 1.0;
        pq.emplace(jdist[k], k);
      }
    }
  }

  for (Road& r : net.roads) {
    if (r.is_exit) {
      r.dist = 0;
      r.weight = 1.0;
      continue;
    }
    double d = inf;
    if (r.right.kind == Attachment::Kind::Junction) d = jdist[r.right.junction];
    if (std::isinf(d)) {
      r.dist = -1;
      r.weight = 0.0;
      warnings.push_back("road " + r.id +
                         ": unreachable from any exit, weight set to 0");
    } else {
      r.dist = static_cast<int>(d);
      r.weight = std::pow(2.0, -d);
    }
  }
  return warnings;
}

PreferenceLayout preference_layout(const Network& net) {
  PreferenceLayout layout;
  for (std::size_t j = 0; j < net.junctions.size(); ++j) {
    const Junction& jn = net.junctions[j];
    const int m = static_cast<int>(jn.out.size());
    if (m < 2) continue;
    for (int col = 0; col < static_cast<int>(jn.in.size()); ++col)
      for (int row = 0; row < m - 1; ++row)
        layout.slots.push_back({static_cast<int>(j), col, row});
  }
  return layout;
}

void apply_preferences(Network& net, const PreferenceLayout& layout,
                       std::span<const double> alpha) {
  if (alpha.size() != layout.size())
    throw ValidationError("preferences: vector length does not match layout");
  for (std::size_t k = 0; k < layout.slots.size(); ++k) {
    const auto& s = layout.slots[k];
    net.junctions[s.junction].dist[s.row][s.col] = alpha[k];
  }
  // Fill the implied last row of each touched column.
  for (std::size_t k = 0; k < layout.slots.size(); ++k) {
    const auto& s = layout.slots[k];
    if (s.row != 0) continue;
    Junction& jn = net.junctions[s.junction];
    const int m = static_cast<int>(jn.out.size());
    double sum = 0.0;
    for (int row = 0; row < m - 1; ++row) sum += jn.dist[row][s.col];
    jn.dist[m - 1][s.col] = 1.0 - sum;
  }
}

std::vector<double> extract_preferences(const Network& net,
                                        const PreferenceLayout& layout) {
  std::vector<double> alpha(layout.size());
  for (std::size_t k = 0; k < layout.slots.size(); ++k) {
    const auto& s = layout.slots[k];
    alpha[k] = net.junctions[s.junction].dist[s.row][s.col];
  }
  return alpha;
}

std::vector<double> full_matrix_entries(const Network& net,
                                        const PreferenceLayout& layout,
                                        std::span<const double> alpha) {
  if (alpha.size() != layout.size())
    throw ValidationError("preferences: vector length does not match layout");
  std::vector<double> entries;
  entries.reserve(layout.size() * 2);
  std::size_t k = 0;
  while (k < layout.slots.size()) {
    const auto& s = layout.slots[k];
    const Junction& jn = net.junctions[s.junction];
    const int m = static_cast<int>(jn.out.size());
    double sum = 0.0;
    for (int row = 0; row < m - 1; ++row, ++k) {
      entries.push_back(alpha[k]);
      sum += alpha[k];
    }
    entries.push_back(1.0 - sum);
  }
  return entries;
}

} // namespace evac
