#pragma once

#include <array>
#include <vector>

#include "v2v/geometry.hpp"
#include "v2v/rng.hpp"
#include "v2v/scenario.hpp"

namespace v2v {

// Axis-aligned rectangle (building footprint).
struct Rect {
  double x0, y0, x1, y1;
  bool contains(const Vec2& p) const {
    return p.x > x0 && p.x < x1 && p.y > y0 && p.y < y1;
  }
};

// Rectilinear route between two on-road points, measured along corridor
// centerlines. legs[] are the straight runs between direction changes.
struct ManhattanRoute {
  std::array<double, 12> legs{};
  int num_legs = 0;
  int corners = 0;
  double total_m = 0.0;
};

// A directed lane: 3 horizontal + 3 vertical corridors, one lane each way.
struct LaneRef {
  int axis = 0;      // 0 = horizontal (travel along x), 1 = vertical
  int corridor = 0;  // 0..2
  int dir = +1;      // +1 / -1 along the axis
};

// Manhattan grid: four building blocks separated by three road corridors
// per axis (edges + center). Vehicles wrap toroidally at the area edge;
// radio routes do not wrap.
class RoadNetwork {
 public:
  static RoadNetwork build(const ScenarioConfig& cfg);  // throws SimError if infeasible

  double area_m() const { return area_; }
  double corridor_width_m() const { return corridor_width_; }
  double lane_width_m() const { return lane_width_; }
  const std::array<double, 3>& corridor_coords() const { return corridor_; }
  const std::array<Rect, 4>& buildings() const { return buildings_; }
  int num_corridors() const { return 6; }
  int num_lanes() const { return 12; }

  double wrap(double v) const;
  Vec2 wrap(Vec2 p) const { return {wrap(p.x), wrap(p.y)}; }

  // Lateral placement of a directed lane inside its corridor (right-hand traffic).
  double lane_offset(const LaneRef& lane) const;
  Vec2 lane_position(const LaneRef& lane, double axis_coord) const;

  // Index of the corridor the point sits in for the given axis, or -1.
  int corridor_index(double cross_coord) const;
  // Corridors containing the point: [horizontal index or -1, vertical index or -1].
  std::array<int, 2> corridors_of(const Vec2& p) const;

  // True if the straight segment a..b misses every building footprint.
  bool is_los(const Vec2& a, const Vec2& b) const;

  // Shortest corridor-centerline route (no wrap). Off-road points are
  // snapped to the nearest corridor.
  ManhattanRoute route(const Vec2& a, const Vec2& b) const;

  // Arc distance from axis coordinate u to the next intersection in
  // direction dir (wrapped), and that intersection's corridor index.
  std::pair<double, int> next_intersection(const LaneRef& lane, double axis_coord) const;

 private:
  double area_ = 0.0;
  double corridor_width_ = 0.0;
  double lane_width_ = 0.0;
  std::array<double, 3> corridor_{};  // same coords on both axes
  std::array<Rect, 4> buildings_{};
  // 9 intersections, index = iy * 3 + ix; Floyd-Warshall tables.
  std::array<double, 81> dist_{};
  std::array<int, 81> next_{};
};

// One straight run of a pair's trajectory; entry is wrapped, positions
// along the leg are wrapped again component-wise.
struct RouteLeg {
  Vec2 entry;
  Vec2 dir;  // unit vector; diagonal only for the short turn connectors
  double length = 0.0;
};

// One transmitter-receiver pair. The receiver trails the transmitter by
// gap_m along the identical route, so turns never break the convoy.
struct PairKinematics {
  int id = 0;
  double speed_mps = 0.0;
  double gap_m = 0.0;
  double gap_min_m = 0.0;
  double gap_max_m = 0.0;
  LaneRef lane;  // lane the transmitter currently drives on
  std::vector<RouteLeg> route;
  double tx_arc = 0.0;  // arc length of tx from route.front().entry
  Vec2 tx_position;
  Vec2 rx_position;
};

std::vector<PairKinematics> init_pairs(const RoadNetwork& net, const ScenarioConfig& cfg,
                                       Rng& rng);

void step_positions(std::vector<PairKinematics>& pairs, const RoadNetwork& net,
                    double dt_s, Rng& rng);

// Euclidean distance between the transmitter positions (the pair
// representative coordinate).
double pair_distance(const PairKinematics& a, const PairKinematics& b);

}  // namespace v2v
