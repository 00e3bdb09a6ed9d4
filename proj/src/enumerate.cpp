#include "foldtope/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace foldtope {

namespace {

double mod_pos(double s, double L) {
  s = std::fmod(s, L);
  return s < 0 ? s + L : s;
}

double ccw(double a, double b, double L) { return mod_pos(b - a, L); }

// self-glued arc (a -> b): folds onto itself about the midpoint
void push_self_zip(std::vector<std::array<double, 2>>& src,
                   std::vector<std::array<double, 2>>& dst, double a, double b,
                   double L) {
  double len = ccw(a, b, L);
  if (len < 1e-13) return;
  double m = a + len / 2;
  src.push_back({a, m});
  dst.push_back({m, a + len});
}

bool try_catalog_add(GluingCatalog& cat, const Polygon& p,
                     const std::vector<std::array<double, 2>>& src,
                     const std::vector<std::array<double, 2>>& dst) {
  try {
    Gluing g = Gluing::from_matched_intervals(p, src, dst);
    GluingType t = combinatorial_type(p, g);
    cat.note_candidate(t);
    if (!validate_aleksandrov(p, g).valid) return false;
    return cat.add(p, t);
  } catch (const GluingError&) {
    return false;
  } catch (const GeometryError&) {
    return false;
  }
}

// validity of zipping the arc (a -> b) onto itself, junction angles excluded
bool self_zip_valid(const Polygon& p, double a, double b) {
  const double L = p.perimeter();
  const double eps = p.eps_len() * 16;
  const double eps_angle = global_config().tol.eps_angle;
  double len = ccw(a, b, L);
  double t = 0;
  double posA = a, posB = a + len;
  while (len / 2 - t > eps) {
    BoundaryPoint bpA = boundary_point_at_arc(p, mod_pos(posA, L) + 1e-12);
    BoundaryPoint bpB = boundary_point_at_arc(p, mod_pos(posB, L) - 1e-12);
    double dA = p.edge_length(bpA.edge) - bpA.offset;
    double dB = bpB.offset;
    if (dB < eps) dB = p.edge_length(p.index(bpB.edge - 1));
    double step = std::min(dA, dB);
    if (t + step > len / 2 - eps) break;  // fronts meet at the midpoint
    posA += step;
    posB -= step;
    t += step;
    double angA = angle_at(p, boundary_point_at_arc(p, mod_pos(posA, L)));
    double angB = angle_at(p, boundary_point_at_arc(p, mod_pos(posB, L)));
    if (angA + angB > 2 * M_PI + 10 * eps_angle) return false;
  }
  return true;  // fold (pi) or zipped vertex at the midpoint, always legal
}

// candidate third-element positions inside the open arc (a, b) where the
// combinatorial type can change: vertices, folds hitting vertices, and
// vertex/vertex alignments of the two zips attached at the sweep point;
// interval midpoints between consecutive events are included
std::vector<double> sweep_positions(const Polygon& p, double a, double b,
                                    bool include_vertices) {
  const double L = p.perimeter();
  const double eps = p.eps_len() * 16;
  double len = ccw(a, b, L);
  std::vector<double> ds;
  auto add = [&](double s) {
    double d = ccw(a, s, L);
    if (d > eps && d < len - eps) ds.push_back(d);
  };
  for (int k = 0; k < p.size(); ++k) {
    double pk = p.vertex_arc(k);
    if (include_vertices) add(pk);
    add(2 * pk - a);
    add(2 * pk - (a + len));
    for (int m = 0; m < p.size(); ++m) {
      add(pk + p.vertex_arc(m) - a);
      add(pk + p.vertex_arc(m) - (a + len));
    }
  }
  std::sort(ds.begin(), ds.end());
  ds.erase(std::unique(ds.begin(), ds.end(),
                       [&](double x, double y) { return std::fabs(x - y) < eps; }),
           ds.end());
  std::vector<double> out;
  double prev = 0;
  for (double d : ds) {
    out.push_back(mod_pos(a + (prev + d) / 2, L));
    out.push_back(mod_pos(a + d, L));
    prev = d;
  }
  out.push_back(mod_pos(a + (prev + len) / 2, L));
  return out;
}

}  // namespace

void GluingCatalog::note_candidate(const GluingType& raw) {
  GluingType c = canonicalize(raw, static_cast<int>(raw.pairs.size()), sym_);
  if (raw_seen_.insert(c.key()).second) ++candidate_types;
}

bool GluingCatalog::add(const Polygon& p, const GluingType& raw) {
  GluingType canon = canonicalize(raw, p.size(), sym_);
  if (keys_.count(canon.key())) return false;
  CatalogEntry e;
  try {
    e.realization = realize_type(p, raw);
  } catch (const GluingError&) {
    return false;
  }
  if (!validate_aleksandrov(p, e.realization.gluing).valid) return false;
  e.type = canon;
  e.witness = raw;
  e.tree = e.realization.tree;
  e.shape = tree_shape(contract_degree2(e.tree));
  e.structure.leaves = e.tree.leaf_count();
  e.structure.fold_point_leaves = e.tree.fold_leaf_count();
  double roll_eps = p.perimeter() * 1e-7;
  for (auto& rg : e.realization.param_ranges)
    if (rg[1] - rg[0] > roll_eps) ++e.structure.rolling_belts;
  e.continuum = e.structure.rolling_belts > 0;
  for (auto& nd : e.tree.nodes) {
    e.curvatures.push_back(nd.curvature);
    if (std::fabs(nd.curvature) > 1e-7) ++e.polytope_vertices;
  }
  std::sort(e.curvatures.rbegin(), e.curvatures.rend());
  keys_.insert(canon.key());
  entries_.push_back(std::move(e));
  return true;
}

bool GluingCatalog::contains(const Polygon& p, const GluingType& raw) const {
  return keys_.count(canonicalize(raw, p.size(), sym_).key()) > 0;
}

std::set<std::string> GluingCatalog::type_keys() const { return keys_; }

// ---------------------------------------------------------------------------

GluingCatalog enumerate_path_gluings(const Polygon& p,
                                     const EnumerationConfig& cfg) {
  GluingCatalog cat(cfg.symmetry);
  const double L = p.perimeter();
  const double H = L / 2;
  const double eps = p.eps_len() * 16;
  std::vector<double> ev;
  for (int i = 0; i < p.size(); ++i)
    for (int j = i; j < p.size(); ++j)
      ev.push_back(mod_pos((p.vertex_arc(i) + p.vertex_arc(j)) / 2, H));
  std::sort(ev.begin(), ev.end());
  ev.erase(std::unique(ev.begin(), ev.end(),
                       [&](double x, double y) { return std::fabs(x - y) < eps; }),
           ev.end());
  if (ev.size() > 1 && ev.back() > H - eps) ev.pop_back();

  std::vector<double> xs;
  for (std::size_t k = 0; k < ev.size(); ++k) {
    xs.push_back(ev[k]);
    double next = (k + 1 < ev.size()) ? ev[k + 1] : ev[0] + H;
    xs.push_back(mod_pos(ev[k] + (next - ev[k]) / 2, H));
  }
  if (xs.empty()) xs.push_back(0.0);

  for (double x : xs) {
    std::vector<std::array<double, 2>> src{{x, x + H}}, dst{{x + H, x + L}};
    try_catalog_add(cat, p, src, dst);
    if (cat.size() >= cfg.max_results) break;
  }
  return cat;
}

GluingCatalog enumerate_y_gluings(const Polygon& p,
                                  const EnumerationConfig& cfg) {
  GluingCatalog cat(cfg.symmetry);
  const double L = p.perimeter();
  const double eps_angle = global_config().tol.eps_angle;
  int n = p.size();

  // type-vvv: three vertices glued at the center
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        if (p.interior_angle(i) + p.interior_angle(j) + p.interior_angle(k) >
            2 * M_PI + 10 * eps_angle)
          continue;
        std::vector<std::array<double, 2>> src, dst;
        push_self_zip(src, dst, p.vertex_arc(i), p.vertex_arc(j), L);
        push_self_zip(src, dst, p.vertex_arc(j), p.vertex_arc(k), L);
        push_self_zip(src, dst, p.vertex_arc(k), p.vertex_arc(i), L);
        try_catalog_add(cat, p, src, dst);
        if (cat.size() >= cfg.max_results) return cat;
      }

  // type-vve: a vv pair plus an edge point on the residual arc; the center
  // carries theta_i + theta_j + pi, so theta_i + theta_j <= pi is forced
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (p.interior_angle(i) + p.interior_angle(j) > M_PI + 10 * eps_angle)
        continue;
      double a = p.vertex_arc(j), b = p.vertex_arc(i);  // residual arc (j -> i)
      for (double s : sweep_positions(p, a, b, false)) {
        std::vector<std::array<double, 2>> src, dst;
        push_self_zip(src, dst, p.vertex_arc(i), p.vertex_arc(j), L);
        push_self_zip(src, dst, a, s, L);
        push_self_zip(src, dst, s, b, L);
        try_catalog_add(cat, p, src, dst);
        if (cat.size() >= cfg.max_results) return cat;
      }
    }
  return cat;
}

namespace {

// forced middle zip of an 'I' from the germ pair after `from` / before `to`;
// reports every candidate lower-node position (P, Q)
struct MiddleStop {
  double P, Q;
};

std::vector<MiddleStop> middle_stops(const Polygon& p, double from, double to) {
  const double L = p.perimeter();
  const double eps = p.eps_len() * 16;
  const double eps_angle = global_config().tol.eps_angle;
  std::vector<MiddleStop> stops;
  double posA = from, posB = to;
  while (true) {
    double gap = ccw(posA, posB, L);
    if (gap < eps) break;
    BoundaryPoint bpA = boundary_point_at_arc(p, mod_pos(posA, L) + 1e-12);
    BoundaryPoint bpB = boundary_point_at_arc(p, mod_pos(posB, L) - 1e-12);
    double dA = p.edge_length(bpA.edge) - bpA.offset;
    double dB = bpB.offset;
    if (dB < eps) dB = p.edge_length(p.index(bpB.edge - 1));
    double step = std::min(dA, dB);
    if (gap <= 2 * step - eps) break;  // the middle would close into a path
    posA = mod_pos(posA + step, L);
    posB = mod_pos(posB - step, L);
    if (ccw(posA, posB, L) < eps) break;
    stops.push_back({posA, posB});
    double angA = angle_at(p, boundary_point_at_arc(p, posA));
    double angB = angle_at(p, boundary_point_at_arc(p, posB));
    if (angA + angB > 2 * M_PI + 10 * eps_angle) break;  // cannot zip through
  }
  return stops;
}

}  // namespace

GluingCatalog enumerate_four_leaf_gluings(const Polygon& p,
                                          const EnumerationConfig& cfg) {
  GluingCatalog cat(cfg.symmetry);
  const double L = p.perimeter();
  const double eps_angle = global_config().tol.eps_angle;
  int n = p.size();

  // '+' with four vertices at the center
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          double sum = p.interior_angle(i) + p.interior_angle(j) +
                       p.interior_angle(k) + p.interior_angle(l);
          if (sum > 2 * M_PI + 10 * eps_angle) continue;
          std::vector<std::array<double, 2>> src, dst;
          push_self_zip(src, dst, p.vertex_arc(i), p.vertex_arc(j), L);
          push_self_zip(src, dst, p.vertex_arc(j), p.vertex_arc(k), L);
          push_self_zip(src, dst, p.vertex_arc(k), p.vertex_arc(l), L);
          push_self_zip(src, dst, p.vertex_arc(l), p.vertex_arc(i), L);
          try_catalog_add(cat, p, src, dst);
          if (cat.size() >= cfg.max_results) return cat;
        }

  // '+' with three vertices and one edge point
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        double sum =
            p.interior_angle(i) + p.interior_angle(j) + p.interior_angle(k);
        if (sum > M_PI + 10 * eps_angle) continue;
        int vs[3] = {i, j, k};
        for (int gap = 0; gap < 3; ++gap) {
          double a = p.vertex_arc(vs[(gap + 1) % 3]);
          double b = p.vertex_arc(vs[(gap + 2) % 3]);
          double c = p.vertex_arc(vs[gap]);
          // edge point z sweeps the arc (b_prev -> c) ... place z between
          // consecutive chosen vertices: arc from vs[gap] to vs[(gap+1)%3]
          double ga = c, gb = a;
          for (double s : sweep_positions(p, ga, gb, false)) {
            std::vector<std::array<double, 2>> src, dst;
            push_self_zip(src, dst, ga, s, L);
            push_self_zip(src, dst, s, gb, L);
            push_self_zip(src, dst, gb, b, L);
            push_self_zip(src, dst, b, ga, L);
            try_catalog_add(cat, p, src, dst);
            if (cat.size() >= cfg.max_results) return cat;
          }
        }
      }

  // 'I': upper node {v_i, w, v_j}, middle zipping down the (j -> i) arc,
  // top belt sweeping w over (i -> j), bottom belt sweeping over (P -> Q)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double pi_ = p.vertex_arc(i), pj = p.vertex_arc(j);
      std::vector<double> tops;
      for (double w : sweep_positions(p, pi_, pj, true)) {
        double ang = angle_at(p, boundary_point_at_arc(p, w));
        if (p.interior_angle(i) + p.interior_angle(j) + ang >
            2 * M_PI + 10 * eps_angle)
          continue;
        if (self_zip_valid(p, pi_, w) && self_zip_valid(p, w, pj))
          tops.push_back(w);
      }
      if (tops.empty()) continue;
      for (const auto& stop : middle_stops(p, pj, pi_)) {
        double P = stop.P, Q = stop.Q;
        double angP = angle_at(p, boundary_point_at_arc(p, P));
        double angQ = angle_at(p, boundary_point_at_arc(p, Q));
        std::vector<double> bottoms;
        for (double w : sweep_positions(p, P, Q, true)) {
          double ang = angle_at(p, boundary_point_at_arc(p, w));
          if (angP + angQ + ang > 2 * M_PI + 10 * eps_angle) continue;
          if (self_zip_valid(p, P, w) && self_zip_valid(p, w, Q))
            bottoms.push_back(w);
        }
        double mid_len = ccw(pj, P, L);
        for (double wt : tops)
          for (double wb : bottoms) {
            std::vector<std::array<double, 2>> src, dst;
            push_self_zip(src, dst, pi_, wt, L);
            push_self_zip(src, dst, wt, pj, L);
            if (mid_len > 1e-13) {
              src.push_back({pj, pj + mid_len});
              dst.push_back({pi_ - mid_len, pi_});
            }
            push_self_zip(src, dst, P, wb, L);
            push_self_zip(src, dst, wb, Q, L);
            try_catalog_add(cat, p, src, dst);
            if (cat.size() >= cfg.max_results) return cat;
          }
      }
    }
  return cat;
}

GluingCatalog enumerate_convex(const Polygon& p, const EnumerationConfig& cfg) {
  if (!p.convex()) throw GeometryError("NotConvex");
  GluingCatalog cat(cfg.symmetry);
  auto merge = [&](const GluingCatalog& c) {
    for (const auto& e : c.entries()) cat.add(p, e.witness);
  };
  GluingCatalog paths = enumerate_path_gluings(p, cfg);
  cat.candidate_types = paths.candidate_types;
  merge(paths);
  if (!cfg.max_leaves || *cfg.max_leaves >= 3) merge(enumerate_y_gluings(p, cfg));
  if ((!cfg.max_leaves || *cfg.max_leaves >= 4) && p.size() <= 6)
    merge(enumerate_four_leaf_gluings(p, cfg));
  return cat;
}

// ---------------------------------------------------------------------------
// general DFS: one primary belt seeded at a fold point or zipped vertex, with
// chains of zipped-off sub-arcs allowed wherever a junction can open
// ---------------------------------------------------------------------------

namespace {

struct BeltDfs {
  const Polygon& p;
  const EnumerationConfig& cfg;
  GluingCatalog& cat;
  double L, eps, eps_angle;
  std::vector<std::array<double, 2>> src, dst;
  std::size_t visited = 0;

  BeltDfs(const Polygon& pp, const EnumerationConfig& c, GluingCatalog& k)
      : p(pp), cfg(c), cat(k) {
    L = p.perimeter();
    eps = p.eps_len() * 16;
    eps_angle = global_config().tol.eps_angle;
  }

  void emit() { try_catalog_add(cat, p, src, dst); }

  bool budget() {
    return ++visited < (cfg.max_results + 1) * 4096 &&
           cat.size() < cfg.max_results;
  }

  // posA ascends, posB descends; ccw(posA -> posB) is the unglued remainder
  void walk(double posA, double posB, int depth) {
    if (!budget() || depth > 4 * p.size()) return;
    double gap = ccw(posA, posB, L);
    if (gap < eps) {
      emit();
      return;
    }
    BoundaryPoint bpA = boundary_point_at_arc(p, mod_pos(posA, L) + 1e-12);
    BoundaryPoint bpB = boundary_point_at_arc(p, mod_pos(posB, L) - 1e-12);
    double dA = p.edge_length(bpA.edge) - bpA.offset;
    double dB = bpB.offset;
    if (dB < eps) dB = p.edge_length(p.index(bpB.edge - 1));
    double step = std::min(dA, dB);
    if (gap <= 2 * step - eps) {
      // fronts meet inside edges: closing fold (or zipped vertex if aligned)
      src.push_back({posA, posA + gap / 2});
      dst.push_back({posB - gap / 2, posB});
      emit();
      src.pop_back();
      dst.pop_back();
      return;
    }
    double nA = mod_pos(posA + step, L), nB = mod_pos(posB - step, L);
    double angA = angle_at(p, boundary_point_at_arc(p, nA));
    double angB = angle_at(p, boundary_point_at_arc(p, nB));
    bool vA = step > dA - eps && std::fabs(step - dA) < eps;
    bool vB = std::fabs(step - dB) < eps;
    (void)vA;

    // option 1: plain zip through this event
    if (angA + angB <= 2 * M_PI + 10 * eps_angle) {
      src.push_back({posA, posA + step});
      dst.push_back({posB - step, posB});
      walk(posA + step, posB - step, depth + 1);
      src.pop_back();
      dst.pop_back();
    }

    // option 2: open a junction here with zipped-off sub-arcs on either side
    std::vector<std::pair<double, double>> skipsA{{0, 0}}, skipsB{{0, 0}};
    if (std::fabs(step - dA) < eps)
      for (int u2 = 0; u2 < p.size(); ++u2) {
        double end = p.vertex_arc(u2);
        double len = ccw(mod_pos(posA + step, L), end, L);
        if (len < eps || len > gap - 2 * step - eps) continue;
        if (!self_zip_valid(p, posA + step, posA + step + len)) continue;
        skipsA.push_back({len, p.interior_angle(u2)});
      }
    if (vB)
      for (int u2 = 0; u2 < p.size(); ++u2) {
        double start = p.vertex_arc(u2);
        double len = ccw(start, mod_pos(posB - step, L), L);
        if (len < eps || len > gap - 2 * step - eps) continue;
        if (!self_zip_valid(p, posB - step - len, posB - step)) continue;
        skipsB.push_back({len, p.interior_angle(u2)});
      }
    for (std::size_t ia = 0; ia < skipsA.size(); ++ia)
      for (std::size_t ib = 0; ib < skipsB.size(); ++ib) {
        if (ia == 0 && ib == 0) continue;
        double lenA = skipsA[ia].first, lenB = skipsB[ib].first;
        if (lenA + lenB > gap - 2 * step - eps) continue;
        double junc = angA + angB + skipsA[ia].second + skipsB[ib].second;
        if (junc > 2 * M_PI + 10 * eps_angle) continue;
        std::size_t mark = src.size();
        src.push_back({posA, posA + step});
        dst.push_back({posB - step, posB});
        if (ia > 0) push_self_zip(src, dst, posA + step, posA + step + lenA, L);
        if (ib > 0) push_self_zip(src, dst, posB - step - lenB, posB - step, L);
        walk(posA + step + lenA, posB - step - lenB, depth + 1);
        src.resize(mark);
        dst.resize(mark);
      }
  }

  void run_seed(double x) {
    src.clear();
    dst.clear();
    walk(x, x + L, 0);
  }
};

}  // namespace

GluingCatalog enumerate_general_catalog(const Polygon& p,
                                        const EnumerationConfig& cfg) {
  GluingCatalog cat(cfg.symmetry);
  auto merge = [&](const GluingCatalog& c) {
    for (const auto& e : c.entries()) cat.add(p, e.witness);
  };
  merge(enumerate_path_gluings(p, cfg));
  if (!cfg.max_leaves || *cfg.max_leaves >= 3) merge(enumerate_y_gluings(p, cfg));
  if (!cfg.max_leaves || *cfg.max_leaves >= 4)
    merge(enumerate_four_leaf_gluings(p, cfg));

  if (!cfg.max_leaves || *cfg.max_leaves >= 5) {
    const double L = p.perimeter();
    const double eps = p.eps_len() * 16;
    std::vector<double> seeds;
    for (int i = 0; i < p.size(); ++i) seeds.push_back(p.vertex_arc(i));
    for (int e = 0; e < p.size(); ++e)
      seeds.push_back(p.vertex_arc(e) + p.edge_length(e) / 2);
    for (int i = 0; i < p.size(); ++i)
      for (int j = i; j < p.size(); ++j) {
        double m = mod_pos((p.vertex_arc(i) + p.vertex_arc(j)) / 2, L);
        seeds.push_back(m);
        seeds.push_back(mod_pos(m + L / 2, L));
      }
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end(),
                            [&](double a, double b) {
                              return std::fabs(a - b) < eps;
                            }),
                seeds.end());
    BeltDfs dfs(p, cfg, cat);
    for (double s : seeds) {
      dfs.run_seed(s);
      if (cat.size() >= cfg.max_results) break;
    }
  }
  return cat;
}

void enumerate_general(const Polygon& p, const EnumerationConfig& cfg,
                       const std::function<void(const GluingType&)>& emit) {
  GluingCatalog cat = enumerate_general_catalog(p, cfg);
  for (const auto& e : cat.entries()) emit(e.witness);
}

// ---------------------------------------------------------------------------

GluingCatalog brute_force_oracle(const Polygon& p, double resolution,
                                 const EnumerationConfig& cfg) {
  const double L = p.perimeter();
  for (int i = 0; i < p.size(); ++i) {
    double q = p.edge_length(i) / resolution;
    if (std::fabs(q - std::round(q)) > 1e-6)
      throw IncommensurableEdges("edge " + std::to_string(i) +
                                 " is not a multiple of the resolution");
  }
  int K = static_cast<int>(std::round(L / resolution));
  GluingCatalog cat(cfg.symmetry);
  if (K % 2 != 0) return cat;  // no perfect matching of granules exists

  std::vector<double> pos(K), ang(K);
  for (int k = 0; k < K; ++k) {
    pos[k] = k * resolution;
    ang[k] = angle_at(p, boundary_point_at_arc(p, pos[k]));
  }

  // union-find with rollback over granule endpoints, tracking angle sums
  std::vector<int> up(K), sz(K, 1);
  std::vector<double> sum(ang);
  std::iota(up.begin(), up.end(), 0);
  std::vector<std::pair<int, int>> trail;
  auto find = [&](int x) {
    while (up[x] != x) x = up[x];
    return x;
  };
  auto unite = [&](int a, int b) -> bool {
    a = find(a);
    b = find(b);
    if (a == b) {
      trail.push_back({-1, -1});
      return sum[a] <= 2 * M_PI + 1e-7;
    }
    if (sz[a] > sz[b]) std::swap(a, b);
    up[a] = b;
    sz[b] += sz[a];
    sum[b] += sum[a];
    trail.push_back({a, b});
    return sum[b] <= 2 * M_PI + 1e-7;
  };
  auto undo = [&](std::size_t mark) {
    while (trail.size() > mark) {
      auto [a, b] = trail.back();
      trail.pop_back();
      if (a >= 0) {
        up[a] = a;
        sz[b] -= sz[a];
        sum[b] -= sum[a];
      }
    }
  };

  std::vector<std::pair<int, int>> matches;
  auto finish = [&]() {
    std::vector<std::array<double, 2>> src, dst;
    for (auto& [a, b] : matches) {
      src.push_back({pos[a], pos[a] + resolution});
      dst.push_back({pos[b], pos[b] + resolution});
    }
    try_catalog_add(cat, p, src, dst);
  };
  // balanced matching of granule range [l, h] followed by continuation k
  std::function<void(int, int, const std::function<void()>&)> seg =
      [&](int l, int h, const std::function<void()>& k) {
        if (cat.size() >= cfg.max_results) return;
        if (l > h) {
          k();
          return;
        }
        for (int b = l + 1; b <= h; b += 2) {
          std::size_t mk = trail.size();
          bool ok = unite(l, (b + 1) % K) && unite((l + 1) % K, b);
          if (ok) {
            matches.push_back({l, b});
            seg(l + 1, b - 1, [&, b, h, &k] { seg(b + 1, h, k); });
            matches.pop_back();
          }
          undo(mk);
          if (cat.size() >= cfg.max_results) return;
        }
      };
  seg(0, K - 1, finish);
  return cat;
}

GluingCatalog restrict_to_grid(const Polygon& p, const GluingCatalog& c,
                               double resolution) {
  GluingCatalog out(c.symmetry());
  const double grid_eps = p.perimeter() * 1e-7;
  for (const auto& e : c.entries()) {
    const auto& r = e.realization;
    int np = r.free_params;
    // candidates must stay strictly inside the open validity interval: at the
    // endpoints the combinatorial type degenerates into a different one
    const double margin = p.eps_len() * 64;
    std::vector<std::vector<double>> cands(np);
    for (int k = 0; k < np; ++k) {
      double lo = r.param_ranges[k][0] + margin, hi = r.param_ranges[k][1] - margin;
      double h = resolution / 2;
      for (double v = std::ceil(lo / h) * h; v <= hi; v += h)
        cands[k].push_back(v);
      if (cands[k].empty() && hi >= lo) cands[k].push_back(0.5 * (lo + hi));
    }
    auto on_grid = [&](const std::vector<double>& t) {
      for (const auto& bp : r.breakpoint_exprs) {
        double v = bp.c0;
        for (int k = 0; k < np; ++k) v += bp.coeff[k] * t[k];
        double q = v / resolution;
        if (std::fabs(q - std::round(q)) * resolution > grid_eps) return false;
      }
      return true;
    };
    bool ok = false;
    if (np == 0) {
      ok = on_grid({});
    } else if (np == 1) {
      for (double a : cands[0])
        if (on_grid({a})) {
          ok = true;
          break;
        }
    } else {
      for (double a : cands[0]) {
        for (double b : cands[1])
          if (on_grid({a, b})) {
            ok = true;
            break;
          }
        if (ok) break;
      }
    }
    if (ok) out.add(p, e.witness);
  }
  return out;
}

}  // namespace foldtope
