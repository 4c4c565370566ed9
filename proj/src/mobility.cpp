#include "v2v/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "v2v/errors.hpp"

namespace v2v {

namespace {
constexpr double kEps = 1e-9;
}

RoadNetwork RoadNetwork::build(const ScenarioConfig& cfg) {
  RoadNetwork net;
  net.area_ = cfg.area_side_m;
  net.lane_width_ = cfg.lane_width_m;
  if (cfg.building_breadth_m <= 0)
    throw SimError("building_breadth must be positive to form a Manhattan grid");
  net.corridor_width_ = (cfg.area_side_m - 2.0 * cfg.building_breadth_m) / 3.0;
  if (net.corridor_width_ <= 0)
    throw SimError("geometry infeasible: buildings leave no room for roads");
  if (net.corridor_width_ < cfg.lane_width_m)
    throw SimError("geometry infeasible: lanes do not fit in the road corridors");

  const double cw = net.corridor_width_;
  const double bb = cfg.building_breadth_m;
  net.corridor_ = {cw / 2.0, 1.5 * cw + bb, 2.5 * cw + 2.0 * bb};

  const double lo0 = cw, hi0 = cw + bb;
  const double lo1 = 2.0 * cw + bb, hi1 = 2.0 * cw + 2.0 * bb;
  net.buildings_ = {Rect{lo0, lo0, hi0, hi0}, Rect{lo1, lo0, hi1, hi0},
                    Rect{lo0, lo1, hi0, hi1}, Rect{lo1, lo1, hi1, hi1}};

  // Floyd-Warshall over the 9 intersections. Corridors are loops under the
  // toroidal boundary rule, so adjacent crossings connect both ways round.
  auto& D = net.dist_;
  auto& N = net.next_;
  D.fill(std::numeric_limits<double>::infinity());
  N.fill(-1);
  for (int i = 0; i < 9; ++i) {
    D[i * 9 + i] = 0.0;
    N[i * 9 + i] = i;
  }
  auto connect = [&](int a, int b, double w) {
    if (w < D[a * 9 + b]) {
      D[a * 9 + b] = w;
      D[b * 9 + a] = w;
      N[a * 9 + b] = b;
      N[b * 9 + a] = a;
    }
  };
  const double area = net.area_;
  auto gap = [&](int i, int j) {
    return std::abs(min_image_delta(net.corridor_[j] - net.corridor_[i], area));
  };
  for (int iy = 0; iy < 3; ++iy)
    for (int ix = 0; ix < 3; ++ix) {
      connect(iy * 3 + ix, iy * 3 + (ix + 1) % 3, gap(ix, (ix + 1) % 3));
      connect(iy * 3 + ix, ((iy + 1) % 3) * 3 + ix, gap(iy, (iy + 1) % 3));
    }
  for (int k = 0; k < 9; ++k)
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j)
        if (D[i * 9 + k] + D[k * 9 + j] < D[i * 9 + j]) {
          D[i * 9 + j] = D[i * 9 + k] + D[k * 9 + j];
          N[i * 9 + j] = N[i * 9 + k];
        }
  return net;
}

double RoadNetwork::wrap(double v) const {
  double r = std::fmod(v, area_);
  if (r < 0) r += area_;
  return r;
}

double RoadNetwork::lane_offset(const LaneRef& lane) const {
  // Right-hand traffic: driving +x keeps south of the centerline, driving
  // +y keeps east of it.
  const double off = lane_width_ / 2.0;
  if (lane.axis == 0) return lane.dir > 0 ? -off : +off;
  return lane.dir > 0 ? +off : -off;
}

Vec2 RoadNetwork::lane_position(const LaneRef& lane, double axis_coord) const {
  const double c = corridor_[lane.corridor] + lane_offset(lane);
  const double u = wrap(axis_coord);
  return lane.axis == 0 ? Vec2{u, c} : Vec2{c, u};
}

int RoadNetwork::corridor_index(double cross_coord) const {
  for (int i = 0; i < 3; ++i)
    if (std::abs(cross_coord - corridor_[i]) <= corridor_width_ / 2.0 + kEps) return i;
  return -1;
}

std::array<int, 2> RoadNetwork::corridors_of(const Vec2& p) const {
  return {corridor_index(p.y), corridor_index(p.x)};
}

bool RoadNetwork::is_los(const Vec2& a, const Vec2& b) const {
  // Minimum-image segment against the periodic copies of each building.
  const Vec2 d = min_image(b - a, area_);
  for (const Rect& r : buildings_) {
    for (int sx = -1; sx <= 1; ++sx) {
      for (int sy = -1; sy <= 1; ++sy) {
        double t0 = 0.0, t1 = 1.0;
        bool hit = true;
        const double lo[2] = {r.x0 + sx * area_ + kEps, r.y0 + sy * area_ + kEps};
        const double hi[2] = {r.x1 + sx * area_ - kEps, r.y1 + sy * area_ - kEps};
        const double o[2] = {a.x, a.y};
        const double dd[2] = {d.x, d.y};
        for (int ax = 0; ax < 2 && hit; ++ax) {
          if (std::abs(dd[ax]) < 1e-15) {
            if (o[ax] <= lo[ax] || o[ax] >= hi[ax]) hit = false;
          } else {
            double ta = (lo[ax] - o[ax]) / dd[ax];
            double tb = (hi[ax] - o[ax]) / dd[ax];
            if (ta > tb) std::swap(ta, tb);
            t0 = std::max(t0, ta);
            t1 = std::min(t1, tb);
            if (t0 >= t1) hit = false;
          }
        }
        if (hit) return false;
      }
    }
  }
  return true;
}

std::pair<double, int> RoadNetwork::next_intersection(const LaneRef& lane,
                                                      double axis_coord) const {
  double best = std::numeric_limits<double>::infinity();
  int best_idx = -1;
  for (int i = 0; i < 3; ++i) {
    double ahead = lane.dir > 0 ? corridor_[i] - axis_coord : axis_coord - corridor_[i];
    ahead = wrap(ahead);
    if (ahead < kEps) ahead += area_;  // standing on it: full loop to come back
    if (ahead < best) {
      best = ahead;
      best_idx = i;
    }
  }
  return {best, best_idx};
}

ManhattanRoute RoadNetwork::route(const Vec2& a, const Vec2& b) const {
  // Candidate entry/exit intersections per endpoint: the three crossings of
  // each corridor the endpoint lies in (snapped to the nearest corridor if
  // somehow off-road).
  struct Anchor {
    Vec2 proj;        // endpoint projected onto the corridor centerline
    double along[3];  // distance along the corridor to each crossing
    int inter[3];     // intersection indices
    int n = 0;
  };
  auto anchors_for = [&](const Vec2& p, Anchor out[2]) {
    int n = 0;
    auto cs = corridors_of(p);
    if (cs[0] < 0 && cs[1] < 0) {
      // off-road: snap to nearest corridor on either axis
      double dbest = std::numeric_limits<double>::infinity();
      int axis = 0, idx = 0;
      for (int i = 0; i < 3; ++i) {
        if (std::abs(p.y - corridor_[i]) < dbest) {
          dbest = std::abs(p.y - corridor_[i]);
          axis = 0;
          idx = i;
        }
        if (std::abs(p.x - corridor_[i]) < dbest) {
          dbest = std::abs(p.x - corridor_[i]);
          axis = 1;
          idx = i;
        }
      }
      cs[axis] = idx;
    }
    if (cs[0] >= 0) {  // horizontal corridor: crossings vary in x
      Anchor an;
      an.proj = {p.x, corridor_[cs[0]]};
      for (int ix = 0; ix < 3; ++ix) {
        an.along[an.n] = std::abs(min_image_delta(p.x - corridor_[ix], area_));
        an.inter[an.n] = cs[0] * 3 + ix;
        ++an.n;
      }
      out[n++] = an;
    }
    if (cs[1] >= 0) {  // vertical corridor: crossings vary in y
      Anchor an;
      an.proj = {corridor_[cs[1]], p.y};
      for (int iy = 0; iy < 3; ++iy) {
        an.along[an.n] = std::abs(min_image_delta(p.y - corridor_[iy], area_));
        an.inter[an.n] = iy * 3 + cs[1];
        ++an.n;
      }
      out[n++] = an;
    }
    return n;
  };

  Anchor aa[2], bb[2];
  const int na = anchors_for(a, aa);
  const int nb = anchors_for(b, bb);

  double best = std::numeric_limits<double>::infinity();
  int best_ai = -1, best_bi = -1, best_aj = -1, best_bj = -1;
  for (int i = 0; i < na; ++i)
    for (int ii = 0; ii < aa[i].n; ++ii)
      for (int j = 0; j < nb; ++j)
        for (int jj = 0; jj < bb[j].n; ++jj) {
          const double total = aa[i].along[ii] +
                               dist_[aa[i].inter[ii] * 9 + bb[j].inter[jj]] +
                               bb[j].along[jj];
          if (total < best - kEps) {
            best = total;
            best_ai = i;
            best_aj = ii;
            best_bi = j;
            best_bj = jj;
          }
        }

  // Same-corridor direct run (also covered by LOS in practice).
  ManhattanRoute direct;
  bool have_direct = false;
  for (int i = 0; i < na && !have_direct; ++i)
    for (int j = 0; j < nb && !have_direct; ++j)
      if (std::abs(aa[i].proj.x - bb[j].proj.x) < kEps ||
          std::abs(aa[i].proj.y - bb[j].proj.y) < kEps) {
        const double len = toroidal_distance(aa[i].proj, bb[j].proj, area_);
        if (len <= best + kEps) {
          direct.legs[0] = len;
          direct.num_legs = 1;
          direct.corners = 0;
          direct.total_m = len;
          have_direct = true;
        }
      }
  if (have_direct) return direct;

  // Polyline: proj(a) -> intersections -> proj(b), then merge collinear runs.
  std::array<Vec2, 16> pts;
  int np = 0;
  pts[np++] = aa[best_ai].proj;
  int cur = aa[best_ai].inter[best_aj];
  const int goal = bb[best_bi].inter[best_bj];
  pts[np++] = {corridor_[cur % 3], corridor_[cur / 3]};
  while (cur != goal) {
    cur = next_[cur * 9 + goal];
    pts[np++] = {corridor_[cur % 3], corridor_[cur / 3]};
  }
  pts[np++] = bb[best_bi].proj;

  ManhattanRoute out;
  Vec2 heading{0, 0};
  for (int i = 0; i + 1 < np; ++i) {
    Vec2 d = min_image(pts[i + 1] - pts[i], area_);
    const double len = d.norm();
    if (len < kEps) continue;
    d = d * (1.0 / len);
    if (out.num_legs > 0 && std::abs(d.x - heading.x) < 1e-6 &&
        std::abs(d.y - heading.y) < 1e-6) {
      out.legs[out.num_legs - 1] += len;  // same direction: extend the run
    } else {
      if (out.num_legs >= static_cast<int>(out.legs.size()))
        throw SimError("internal: street route exceeds the leg capacity");
      out.legs[out.num_legs++] = len;
      heading = d;
    }
    out.total_m += len;
  }
  out.corners = out.num_legs > 0 ? out.num_legs - 1 : 0;
  return out;
}

namespace {

double route_total_length(const PairKinematics& p) {
  double s = 0.0;
  for (const auto& leg : p.route) s += leg.length;
  return s;
}

Vec2 position_at(const PairKinematics& p, const RoadNetwork& net, double arc) {
  arc = std::max(arc, 0.0);
  for (const auto& leg : p.route) {
    if (arc <= leg.length + kEps) return net.wrap(leg.entry + leg.dir * arc);
    arc -= leg.length;
  }
  const auto& last = p.route.back();
  return net.wrap(last.entry + last.dir * last.length);
}

Vec2 axis_dir(const LaneRef& lane) {
  if (lane.axis == 0) return {static_cast<double>(lane.dir), 0.0};
  return {0.0, static_cast<double>(lane.dir)};
}

// Straight-lane leg from axis coordinate u to the next intersection.
RouteLeg lane_leg(const RoadNetwork& net, const LaneRef& lane, double axis_coord) {
  auto [len, idx] = net.next_intersection(lane, axis_coord);
  (void)idx;
  return {net.lane_position(lane, axis_coord), axis_dir(lane), len};
}

// Append the continuation chosen at the intersection the last leg ends on.
// choice: 0 = straight, 1 = turn to +perpendicular, 2 = turn to -perpendicular.
void append_continuation(PairKinematics& p, const RoadNetwork& net, int choice) {
  const LaneRef lane = p.lane;
  const auto& last = p.route.back();
  const Vec2 exit_pos = net.wrap(last.entry + last.dir * last.length);
  const double exit_axis = lane.axis == 0 ? exit_pos.x : exit_pos.y;
  const int cross = net.corridor_index(lane.axis == 0 ? exit_pos.x : exit_pos.y);
  if (cross < 0) throw SimError("internal: route leg does not end at an intersection");

  if (choice == 0) {
    p.route.push_back(lane_leg(net, lane, exit_axis));
    return;
  }
  LaneRef turned;
  turned.axis = 1 - lane.axis;
  turned.corridor = cross;
  turned.dir = choice == 1 ? +1 : -1;
  const double entry_axis = net.corridor_coords()[lane.corridor];
  const Vec2 entry_pos = net.lane_position(turned, entry_axis);
  const Vec2 delta = entry_pos - exit_pos;
  const double clen = delta.norm();
  if (clen > kEps) p.route.push_back({exit_pos, delta * (1.0 / clen), clen});
  p.route.push_back(lane_leg(net, turned, entry_axis));
  p.lane = turned;
}

void refresh_positions(PairKinematics& p, const RoadNetwork& net) {
  p.tx_position = position_at(p, net, p.tx_arc);
  p.rx_position = position_at(p, net, p.tx_arc - p.gap_m);
}

void prune_route(PairKinematics& p) {
  // Drop legs fully behind the receiver, keeping headroom for gap growth.
  while (p.route.size() > 1 &&
         p.tx_arc - p.gap_max_m > p.route.front().length + kEps) {
    p.tx_arc -= p.route.front().length;
    p.route.erase(p.route.begin());
  }
}

}  // namespace

std::vector<PairKinematics> init_pairs(const RoadNetwork& net, const ScenarioConfig& cfg,
                                       Rng& rng) {
  std::uniform_int_distribution<int> lane_pick(0, 11);
  std::uniform_real_distribution<double> arc_pick(0.0, net.area_m());
  std::uniform_real_distribution<double> gap_pick(cfg.pair_gap_min_m, cfg.pair_gap_max_m);

  std::vector<PairKinematics> pairs;
  pairs.reserve(cfg.num_pairs);
  for (int k = 0; k < cfg.num_pairs; ++k) {
    PairKinematics p;
    p.id = k;
    p.speed_mps = cfg.vehicle_speed_mps;
    const int pick = lane_pick(rng);
    p.lane.axis = pick / 6;
    p.lane.corridor = (pick % 6) / 2;
    p.lane.dir = (pick % 2) ? -1 : +1;
    const double u0 = arc_pick(rng);
    p.gap_min_m = cfg.pair_gap_min_m;
    p.gap_max_m = cfg.pair_gap_max_m;
    p.gap_m = gap_pick(rng);

    // First leg starts gap_max behind the transmitter so the receiver stays
    // on the stored route for any admissible gap.
    const double back = cfg.pair_gap_max_m;
    const double entry_axis = u0 - p.lane.dir * back;
    RouteLeg first = lane_leg(net, p.lane, entry_axis);
    // lane_leg ends at the next intersection ahead of the entry point; make
    // sure it reaches past the transmitter (decision points behind the tx
    // were already "passed").
    while (first.length < back + kEps) {
      auto [extra, idx] =
          net.next_intersection(p.lane, entry_axis + p.lane.dir * (first.length + kEps));
      (void)idx;
      first.length += extra + kEps;
    }
    p.route.push_back(first);
    p.tx_arc = back;
    refresh_positions(p, net);
    pairs.push_back(std::move(p));
  }
  return pairs;
}

void step_positions(std::vector<PairKinematics>& pairs, const RoadNetwork& net,
                    double dt_s, Rng& rng) {
  if (dt_s <= 0) throw SimError("step_positions requires dt > 0");
  std::uniform_int_distribution<int> turn_pick(0, 2);
  std::uniform_real_distribution<double> gap_rate(-0.5, 0.5);  // m per second

  for (auto& p : pairs) {
    double advance = p.speed_mps * dt_s;
    while (advance > 0) {
      const double total = route_total_length(p);
      const double remaining = total - p.tx_arc;
      if (advance < remaining - kEps) {
        p.tx_arc += advance;
        advance = 0;
      } else {
        p.tx_arc = total;
        advance -= remaining;
        append_continuation(p, net, turn_pick(rng));
      }
    }
    // Bounded random walk of the convoy gap, reflected at the limits.
    double g = p.gap_m + gap_rate(rng) * dt_s;
    if (g < p.gap_min_m) g = 2.0 * p.gap_min_m - g;
    if (g > p.gap_max_m) g = 2.0 * p.gap_max_m - g;
    p.gap_m = std::clamp(g, p.gap_min_m, p.gap_max_m);
    prune_route(p);
    refresh_positions(p, net);
  }
}

double pair_distance(const PairKinematics& a, const PairKinematics& b) {
  return distance(a.tx_position, b.tx_position);
}

}  // namespace v2v
