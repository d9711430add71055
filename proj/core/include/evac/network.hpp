#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "evac/flux.hpp"

namespace evac {

struct BoundarySpec {
  enum class Type { NonReflecting, Prescribed };
  Type type = Type::NonReflecting;
  double density = 0.0;  // normalized, used when prescribed
};

/// One end of a road: either a junction or an open boundary.
struct Attachment {
  enum class Kind { Boundary, Junction };
  Kind kind = Kind::Boundary;
  int junction = -1;
  BoundarySpec boundary;

  static Attachment at_junction(int j) {
    Attachment a;
    a.kind = Kind::Junction;
    a.junction = j;
    return a;
  }
  static Attachment open(BoundarySpec b = {}) {
    Attachment a;
    a.kind = Kind::Boundary;
    a.boundary = b;
    return a;
  }
};

enum class SourceGroup { West, East };

/// Directed road segment. Traffic flows from the left end to the right end.
/// `rho` holds the M interior cell densities framed by one ghost cell on
/// each side, so rho.size() == cells + 2 once discretized.
struct Road {
  std::string id;
  double length = 0.0;  // mi
  NormalizedFlux flux;
  int cells = 0;
  double dx = 0.0;
  std::vector<double> rho;
  Attachment left, right;
  int dist = -1;         // hops to the nearest exit, -1 if unreachable
  double weight = 0.0;   // 2^-dist, 0 if unreachable
  bool is_source = false;
  bool is_exit = false;
  SourceGroup source_group = SourceGroup::West;
  double init_density = 0.0;

  double interior(int m) const { return rho[m + 1]; }  // m in [0, cells)
  /// Normalized vehicle mass dx * sum of interior densities (veh / rho_jam).
  double mass_norm() const;
};

/// Junction with ordered incoming/outgoing roads, a column-stochastic
/// distribution matrix (rows = outgoing, columns = incoming) and the flux
/// assignment stored by the last resolution.
struct Junction {
  std::string id;
  std::vector<int> in;
  std::vector<int> out;
  std::vector<std::vector<double>> dist;
  std::vector<double> gamma_in;
  std::vector<double> gamma_out;
};

class Network {
public:
  std::vector<Road> roads;
  std::vector<Junction> junctions;

  int add_road(Road r);
  int add_junction(const std::string& id);
  /// Wire roads to junctions by id; builds in/out lists and uniform matrices.
  void connect(const std::string& junction_id,
               const std::vector<std::string>& in_roads,
               const std::vector<std::string>& out_roads);

  int road_index(const std::string& id) const;
  int junction_index(const std::string& id) const;
  Road& road(const std::string& id) { return roads[road_index(id)]; }
  const Road& road(const std::string& id) const { return roads[road_index(id)]; }

  /// Split every road into max(3, round(L/dx_target)) cells and fill the
  /// interior with its initial density.
  void discretize(double dx_target_mi);
  /// Restore initial densities and clear stored junction fluxes.
  void reset_state();

  /// Copies densities, stored junction fluxes and distribution matrices from
  /// a structurally identical network without reallocating. Used by the
  /// optimizer to evaluate candidate preferences on a scratch copy.
  void copy_state_from(const Network& src);

  double total_mass_norm() const;

private:
  std::unordered_map<std::string, int> road_ids_;
  std::unordered_map<std::string, int> junction_ids_;
};

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

ValidationReport validate(const Network& net);

/// Exit-distance weights: every exit road gets d = 0, its tail junction
/// distance 1, and each remaining road the Dijkstra distance of the junction
/// it is directed into. Unreachable roads get weight 0 and a warning.
std::vector<std::string> assign_weights(Network& net);

/// Flat preference parameterization: for every junction with m >= 2 outgoing
/// roads, each incoming road contributes the first m-1 column entries; the
/// last entry is implied by the column sum.
struct PreferenceLayout {
  struct Slot {
    int junction;
    int col;  // incoming road position
    int row;  // outgoing road position, in [0, m-1)
  };
  std::vector<Slot> slots;
  std::size_t size() const { return slots.size(); }
};

PreferenceLayout preference_layout(const Network& net);
void apply_preferences(Network& net, const PreferenceLayout& layout,
                       std::span<const double> alpha);
std::vector<double> extract_preferences(const Network& net,
                                        const PreferenceLayout& layout);
/// All matrix entries (free and implied) of parameterized junctions, used by
/// the optimizer's boundary-excess measure.
std::vector<double> full_matrix_entries(const Network& net,
                                        const PreferenceLayout& layout,
                                        std::span<const double> alpha);

} // namespace evac
