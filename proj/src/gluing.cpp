#include "foldtope/gluing.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace foldtope {

namespace {

double mod_pos(double s, double L) {
  s = std::fmod(s, L);
  return s < 0 ? s + L : s;
}

double ccw_dist(double a, double b, double L) { return mod_pos(b - a, L); }

struct UnionFind {
  std::vector<int> up;
  explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  int find(int i) { return up[i] == i ? i : up[i] = find(up[i]); }
  void unite(int a, int b) { up[find(a)] = find(b); }
};

int locate(const std::vector<double>& bp, double s, double eps) {
  for (std::size_t i = 0; i < bp.size(); ++i)
    if (std::fabs(bp[i] - s) <= eps) return static_cast<int>(i);
  return -1;
}

// wrap-aware variant for positions that may sit within eps of 0 == L
int locate_cyc(const std::vector<double>& bp, double s, double eps, double L) {
  s = mod_pos(s, L);
  for (std::size_t i = 0; i < bp.size(); ++i) {
    double d = std::fabs(bp[i] - s);
    if (d <= eps || L - d <= eps) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

double Gluing::arc_length(int k) const {
  double L = poly_.perimeter();
  int K = arc_count();
  double a = bp_[k], b = bp_[(k + 1) % K];
  return k + 1 == K ? L - a + bp_[0] : b - a;
}

int Gluing::partner_arc(int k) const {
  for (const auto& pr : pairs_) {
    if (pr.a == k) return pr.b;
    if (pr.b == k) return pr.a;
  }
  return -1;
}

double Gluing::mate(int k, double s) const {
  int j = partner_arc(k);
  double L = poly_.perimeter();
  int K = arc_count();
  double u0 = bp_[k];
  double w1 = bp_[(j + 1) % K] + (j + 1 == K ? L : 0);
  return mod_pos(u0 + w1 - s, L);
}

Gluing Gluing::from_matched_intervals(
    const Polygon& p, const std::vector<std::array<double, 2>>& src,
    const std::vector<std::array<double, 2>>& dst) {
  if (src.size() != dst.size())
    throw GluingError("interval list size mismatch");
  const double L = p.perimeter();
  const double eps = p.eps_len() * 8;

  struct Pair {
    double a, len, c;  // [a, a+len] glued reversed to [c, c+len]
  };
  std::vector<Pair> raw;
  for (std::size_t i = 0; i < src.size(); ++i) {
    double a = mod_pos(src[i][0], L);
    double la = ccw_dist(src[i][0], src[i][1], L);
    double c = mod_pos(dst[i][0], L);
    double lc = ccw_dist(dst[i][0], dst[i][1], L);
    if (la <= eps || std::fabs(la - lc) > eps)
      throw LengthMismatch("matched interval lengths differ");
    raw.push_back({a, la, c});
  }

  // breakpoints: vertices, interval endpoints, then reflected images to closure
  std::vector<double> S;
  auto add = [&](double s) {
    s = mod_pos(s, L);
    if (s > L - eps) s = 0.0;
    if (locate_cyc(S, s, eps, L) < 0) S.push_back(s);
  };
  for (int i = 0; i < p.size(); ++i) add(p.vertex_arc(i));
  for (const auto& r : raw) {
    add(r.a);
    add(r.a + r.len);
    add(r.c);
    add(r.c + r.len);
  }
  for (int round = 0; round < 64; ++round) {
    bool changed = false;
    std::vector<double> cur = S;
    for (const auto& r : raw) {
      // map s in [a, a+len] -> c + (a + len - s)
      for (double q : cur) {
        double du = ccw_dist(r.a, q, L);
        if (du > eps && du < r.len - eps) {
          double img = mod_pos(r.c + (r.len - du), L);
          if (locate_cyc(S, img, eps, L) < 0) {
            add(img);
            changed = true;
          }
        }
        double dw = ccw_dist(r.c, q, L);
        if (dw > eps && dw < r.len - eps) {
          double img = mod_pos(r.a + (r.len - dw), L);
          if (locate_cyc(S, img, eps, L) < 0) {
            add(img);
            changed = true;
          }
        }
      }
    }
    if (!changed) break;
    if (round == 63) throw GluingError("breakpoint refinement did not close");
  }
  std::sort(S.begin(), S.end());

  Gluing g;
  g.poly_ = p;
  g.bp_ = S;
  int K = static_cast<int>(S.size());
  auto arc_at = [&](double s) {
    int i = locate_cyc(S, s, eps, L);
    if (i < 0) throw GluingError("interval endpoint is not a breakpoint");
    return i;
  };

  std::vector<int> partner(K, -1);
  UnionFind uf(K);
  for (const auto& r : raw) {
    // walk sub-arcs of [a, a+len]
    double off = 0;
    int k = arc_at(r.a);
    while (off < r.len - eps) {
      double alen = g.arc_length(k);
      double mstart = mod_pos(r.c + (r.len - off - alen), L);
      int j = arc_at(mstart);
      if (std::fabs(g.arc_length(j) - alen) > eps)
        throw LengthMismatch("refined arc lengths differ");
      if (partner[k] >= 0 || partner[j] >= 0)
        throw GluingError("boundary arc glued twice");
      if (j == k) throw GluingError("arc glued to itself");
      partner[k] = j;
      partner[j] = k;
      g.pairs_.push_back({k, j});
      uf.unite(k, (j + 1) % K);          // start of k ~ end of j
      uf.unite((k + 1) % K, j);          // end of k ~ start of j
      off += alen;
      k = (k + 1) % K;
    }
  }
  for (int k = 0; k < K; ++k)
    if (partner[k] < 0) throw GluingError("boundary arc left unglued");

  g.cls_.resize(K);
  for (int i = 0; i < K; ++i) g.cls_[i] = uf.find(i);
  return g;
}

ValidationReport validate_aleksandrov(const Polygon& p, const Gluing& g) {
  ValidationReport rep;
  const double L = p.perimeter();
  const double eps_angle = global_config().tol.eps_angle;
  int K = g.arc_count();

  for (const auto& pr : g.pairs())
    if (std::fabs(g.arc_length(pr.a) - g.arc_length(pr.b)) > p.eps_len() * 8)
      rep.violations.push_back(
          {ViolationKind::LengthMismatch,
           "arcs " + std::to_string(pr.a) + "/" + std::to_string(pr.b)});

  // chords between matched arc midpoints must not interleave
  auto midpt = [&](int k) {
    return mod_pos(g.breakpoints()[k] + 0.5 * g.arc_length(k), L);
  };
  const auto& prs = g.pairs();
  for (std::size_t i = 0; i < prs.size(); ++i)
    for (std::size_t j = i + 1; j < prs.size(); ++j) {
      double a1 = midpt(prs[i].a), b1 = midpt(prs[i].b);
      double a2 = midpt(prs[j].a), b2 = midpt(prs[j].b);
      bool in1 = ccw_dist(a1, a2, L) < ccw_dist(a1, b1, L);
      bool in2 = ccw_dist(a1, b2, L) < ccw_dist(a1, b1, L);
      if (in1 != in2)
        rep.violations.push_back(
            {ViolationKind::ChordCrossing,
             "pairs " + std::to_string(i) + "/" + std::to_string(j)});
    }

  // angle sums over breakpoint classes
  std::map<int, double> angle;
  std::map<int, std::string> where;
  for (int k = 0; k < K; ++k) {
    double s = g.breakpoints()[k];
    BoundaryPoint b = boundary_point_at_arc(p, s);
    angle[g.breakpoint_class()[k]] += angle_at(p, b);
    where[g.breakpoint_class()[k]] += (where[g.breakpoint_class()[k]].empty() ? "" : ",") +
                                      std::to_string(k);
  }
  for (auto& [c, a] : angle)
    if (a > 2 * M_PI + 10 * eps_angle)
      rep.violations.push_back({ViolationKind::AngleExcess, "class {" + where[c] + "}"});

  // connectivity of the identified complex: classes joined by matched arcs
  if (K > 0) {
    UnionFind uf(K);
    for (int k = 0; k < K; ++k) uf.unite(g.breakpoint_class()[k], g.breakpoint_class()[(k + 1) % K]);
    for (const auto& pr : g.pairs())
      uf.unite(g.breakpoint_class()[pr.a], g.breakpoint_class()[pr.b]);
    int root = uf.find(g.breakpoint_class()[0]);
    for (int k = 0; k < K; ++k)
      if (uf.find(g.breakpoint_class()[k]) != root) {
        rep.violations.push_back({ViolationKind::NotConnected, "complex"});
        break;
      }
  }

  rep.valid = rep.violations.empty();
  return rep;
}

Gluing perimeter_halving(const Polygon& p, const BoundaryPoint& x) {
  double L = p.perimeter();
  double s = arc_of(p, x);
  return Gluing::from_matched_intervals(p, {{s, s + L / 2}},
                                        {{s + L / 2, s + L}});
}

std::string GluingType::key() const {
  std::ostringstream os;
  for (const auto& t : pairs) os << (t.to_edge ? 'e' : 'v') << t.index << ';';
  return os.str();
}

GluingType combinatorial_type(const Polygon& p, const Gluing& g) {
  const double L = p.perimeter();
  int K = g.arc_count();
  GluingType t;
  t.pairs.resize(p.size());
  for (int i = 0; i < p.size(); ++i) {
    int k = locate(g.breakpoints(), p.vertex_arc(i), p.eps_len() * 8);
    if (k < 0) throw GluingError("vertex is not a breakpoint");
    int cls = g.breakpoint_class()[k];
    double best = L + 1;
    int bestk = -1;
    for (int j = 0; j < K; ++j) {
      if (j == k || g.breakpoint_class()[j] != cls) continue;
      double d = ccw_dist(g.breakpoints()[k], g.breakpoints()[j], L);
      if (d < best) {
        best = d;
        bestk = j;
      }
    }
    if (bestk < 0) {
      t.pairs[i] = {false, i};
    } else {
      BoundaryPoint b = boundary_point_at_arc(p, g.breakpoints()[bestk]);
      int v;
      if (is_vertex(p, b, &v))
        t.pairs[i] = {false, v};
      else
        t.pairs[i] = {true, p.index(b.edge)};
    }
  }
  return t;
}

int GluingTree::leaf_count() const {
  int c = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].adj.size() == 1) ++c;
  return c;
}

int GluingTree::fold_leaf_count() const {
  int c = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].adj.size() == 1 && nodes[i].fold_leaf) ++c;
  return c;
}

GluingTree tree_from_gluing(const Polygon& p, const Gluing& g) {
  const double L = p.perimeter();
  int K = g.arc_count();
  // group breakpoints into classes
  std::map<int, std::vector<int>> classes;
  for (int k = 0; k < K; ++k) classes[g.breakpoint_class()[k]].push_back(k);

  // decide which classes are tree nodes
  std::map<int, int> node_of_class;
  GluingTree tree;
  for (auto& [c, members] : classes) {
    int vertex_count = 0;
    for (int k : members) {
      BoundaryPoint b = boundary_point_at_arc(p, g.breakpoints()[k]);
      if (is_vertex(p, b)) ++vertex_count;
    }
    bool keep = vertex_count > 0 || members.size() != 2;
    if (!keep) continue;
    GluingTree::Node nd;
    for (int k : members) {
      double s = g.breakpoints()[k];
      BoundaryPoint b = boundary_point_at_arc(p, s);
      int v;
      nd.positions.push_back(s);
      if (is_vertex(p, b, &v)) {
        nd.vertex_labels.push_back(v);
        nd.angle_sum += p.interior_angle(v);
      } else {
        nd.edge_labels.push_back(p.index(b.edge));
        nd.angle_sum += M_PI;
      }
    }
    nd.curvature = 2 * M_PI - nd.angle_sum;
    node_of_class[c] = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(std::move(nd));
  }

  // arc segments between breakpoint classes, one per matched pair, then
  // contract the suppressed (vertex-free degree-2) classes
  std::vector<std::array<int, 2>> segs;
  for (const auto& pr : g.pairs()) {
    int c0 = g.breakpoint_class()[pr.a];
    int c1 = g.breakpoint_class()[(pr.a + 1) % K];
    segs.push_back({c0, c1});
  }
  // path-compress through suppressed classes
  std::map<int, std::vector<int>> seg_at;  // class -> seg indices (suppressed only)
  for (std::size_t i = 0; i < segs.size(); ++i)
    for (int end = 0; end < 2; ++end)
      if (!node_of_class.count(segs[i][end])) seg_at[segs[i][end]].push_back(i);
  std::vector<bool> dead(segs.size(), false);
  for (auto& [c, ids] : seg_at) {
    // each suppressed class joins exactly two segments
    std::vector<int> live;
    for (int i : ids)
      if (!dead[i]) live.push_back(i);
    if (live.size() != 2) continue;
    int i = live[0], j = live[1];
    int oi = segs[i][0] == c ? segs[i][1] : segs[i][0];
    int oj = segs[j][0] == c ? segs[j][1] : segs[j][0];
    segs[i] = {oi, oj};
    dead[j] = true;
    // re-register the merged segment under any other suppressed end
    for (int end = 0; end < 2; ++end)
      if (!node_of_class.count(segs[i][end])) seg_at[segs[i][end]].push_back(i);
  }
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (dead[i]) continue;
    auto a = node_of_class.find(segs[i][0]);
    auto b = node_of_class.find(segs[i][1]);
    if (a == node_of_class.end() || b == node_of_class.end()) continue;
    tree.nodes[a->second].adj.push_back(b->second);
    if (a->second != b->second) tree.nodes[b->second].adj.push_back(a->second);
  }
  for (auto& nd : tree.nodes)
    nd.fold_leaf = nd.adj.size() == 1 && nd.vertex_labels.empty() &&
                   nd.edge_labels.size() == 1;
  (void)L;
  return tree;
}

std::vector<std::pair<int, double>> node_curvatures(const GluingTree& t) {
  std::vector<std::pair<int, double>> out;
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    out.emplace_back(static_cast<int>(i), t.nodes[i].curvature);
  return out;
}

// ---------------------------------------------------------------------------
// realize_type: the chain-gathering construction.  Node label sets come from
// following the type pairs; arc lengths are propagated symbolically as affine
// expressions in the still-free breakpoint offsets.
// ---------------------------------------------------------------------------

namespace {

struct Expr {
  double c0 = 0;
  std::map<int, double> terms;  // unknown id -> coefficient

  Expr() = default;
  explicit Expr(double c) : c0(c) {}
  static Expr unknown(int id) {
    Expr e;
    e.terms[id] = 1.0;
    return e;
  }
  Expr operator+(const Expr& o) const {
    Expr r = *this;
    r.c0 += o.c0;
    for (auto& [k, v] : o.terms) {
      r.terms[k] += v;
      if (std::fabs(r.terms[k]) < 1e-14) r.terms.erase(k);
    }
    return r;
  }
  Expr operator-(const Expr& o) const { return *this + (o * -1.0); }
  Expr operator*(double s) const {
    Expr r;
    r.c0 = c0 * s;
    for (auto& [k, v] : terms)
      if (std::fabs(v * s) >= 1e-14) r.terms[k] = v * s;
    return r;
  }
};

struct LinearSystem {
  std::unordered_map<int, Expr> defs;
  int next_id = 0;

  int fresh() { return next_id++; }

  Expr resolve(const Expr& e) const {
    Expr r(e.c0);
    for (auto& [k, v] : e.terms) {
      auto it = defs.find(k);
      if (it == defs.end()) {
        Expr t = Expr::unknown(k) * v;
        r = r + t;
      } else {
        r = r + resolve(it->second) * v;
      }
    }
    return r;
  }

  void equate_zero(const Expr& e, double eps) {
    Expr r = resolve(e);
    if (r.terms.empty()) {
      if (std::fabs(r.c0) > eps)
        throw LengthMismatch("inconsistent lengths in gluing type (residual " +
                             std::to_string(r.c0) + ")");
      return;
    }
    auto best = r.terms.begin();
    for (auto it = r.terms.begin(); it != r.terms.end(); ++it)
      if (std::fabs(it->second) > std::fabs(best->second)) best = it;
    int id = best->first;
    double coef = best->second;
    Expr rest = r;
    rest.terms.erase(id);
    defs[id] = rest * (-1.0 / coef);
  }

  bool is_free(int id) const { return !defs.count(id); }
};

struct Element {
  bool is_vertex = false;
  int vertex = -1;
  int edge = -1;       // for edge points
  int unknown = -1;    // offset unknown id (edge points), else -1
};

struct ChainNode {
  std::vector<Element> elems;  // ccw cyclic order
  std::vector<bool> consumed;  // germ pair i = (elems[i]+, elems[i+1]-)
};

}  // namespace

RealizedType realize_type(const Polygon& p, const GluingType& t) {
  const int n = p.size();
  const double L = p.perimeter();
  const double eps = p.eps_len() * 16;
  if (static_cast<int>(t.pairs.size()) != n)
    throw GluingError("type has wrong number of pairs");

  // --- chain gathering -----------------------------------------------------
  std::vector<int> indeg(n, 0);
  for (int i = 0; i < n; ++i)
    if (!t.pairs[i].to_edge && t.pairs[i].index != i) {
      if (t.pairs[i].index < 0 || t.pairs[i].index >= n)
        throw GluingError("type target out of range");
      indeg[t.pairs[i].index]++;
    }
  for (int i = 0; i < n; ++i)
    if (indeg[i] > 1) throw LengthMismatch("vertex glued from two chains");

  LinearSystem sys;
  std::vector<ChainNode> nodes;
  std::vector<int> node_of_vertex(n, -1), index_in_node(n, -1);
  std::vector<bool> seen(n, false);

  auto close_chain = [&](std::vector<int>& chain, bool to_edge, int edge) {
    ChainNode nd;
    for (int v : chain) {
      node_of_vertex[v] = static_cast<int>(nodes.size());
      index_in_node[v] = static_cast<int>(nd.elems.size());
      Element el;
      el.is_vertex = true;
      el.vertex = v;
      nd.elems.push_back(el);
    }
    if (to_edge) {
      Element el;
      el.edge = edge;
      el.unknown = sys.fresh();
      nd.elems.push_back(el);
    }
    nd.consumed.assign(nd.elems.size(), false);
    nodes.push_back(std::move(nd));
  };

  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    if (!t.pairs[i].to_edge && t.pairs[i].index == i) {
      seen[i] = true;
      std::vector<int> chain{i};
      close_chain(chain, false, -1);
      continue;
    }
    if (indeg[i] != 0) continue;  // start points only; cycles handled below
    std::vector<int> chain;
    int cur = i;
    bool to_edge = false;
    int edge = -1;
    while (true) {
      seen[cur] = true;
      chain.push_back(cur);
      const auto& tg = t.pairs[cur];
      if (tg.to_edge) {
        to_edge = true;
        edge = p.index(tg.index);
        break;
      }
      cur = tg.index;
      if (seen[cur]) throw LengthMismatch("chain rejoins itself");
    }
    close_chain(chain, to_edge, edge);
  }
  for (int i = 0; i < n; ++i) {  // pure cycles
    if (seen[i]) continue;
    std::vector<int> chain;
    int cur = i;
    while (!seen[cur]) {
      seen[cur] = true;
      chain.push_back(cur);
      cur = t.pairs[cur].index;
    }
    if (cur != i) throw LengthMismatch("malformed cycle in type");
    close_chain(chain, false, -1);
  }

  // --- symbolic positions ----------------------------------------------------
  struct Front {
    int edge;
    Expr off;
  };
  auto elem_pos = [&](const Element& el) {
    if (el.is_vertex) return Expr(p.vertex_arc(el.vertex));
    return Expr(p.vertex_arc(el.edge)) + Expr::unknown(el.unknown);
  };
  std::vector<std::pair<Expr, double>> ineqs;  // expr >= margin
  for (const auto& nd : nodes)
    for (const auto& el : nd.elems)
      if (!el.is_vertex) {
        ineqs.push_back({Expr::unknown(el.unknown), eps});
        ineqs.push_back({Expr(p.edge_length(el.edge)) - Expr::unknown(el.unknown), eps});
      }

  // fold leaves created during the walks
  struct FoldLeaf {
    int edge;
    Expr off;
    int tree_node = -1;
  };
  std::vector<FoldLeaf> folds;

  struct WalkArc {
    int node_a, node_b;       // tree node ids (chain nodes first, folds after)
    Expr src_start, dst_end;  // glued [src_start, src_start+len] ~ [dst_end-len, dst_end]
    Expr len;
  };
  std::vector<WalkArc> arcs;

  int chain_count = static_cast<int>(nodes.size());
  auto vertex_elem = [&](int v) -> std::pair<int, int> {
    return {node_of_vertex[v], index_in_node[v]};
  };

  for (int ni = 0; ni < chain_count; ++ni) {
    int d = static_cast<int>(nodes[ni].elems.size());
    for (int gi = 0; gi < d; ++gi) {
      if (nodes[ni].consumed[gi]) continue;
      nodes[ni].consumed[gi] = true;
      const Element& x = nodes[ni].elems[gi];
      const Element& y = nodes[ni].elems[(gi + 1) % d];

      Front A, B;
      if (x.is_vertex) {
        A.edge = x.vertex;
        A.off = Expr(0.0);
      } else {
        A.edge = x.edge;
        A.off = Expr::unknown(x.unknown);
      }
      if (y.is_vertex) {
        B.edge = p.index(y.vertex - 1);
        B.off = Expr(p.edge_length(B.edge));
      } else {
        B.edge = y.edge;
        B.off = Expr::unknown(y.unknown);
      }

      Expr src_start = elem_pos(x);
      Expr dst_end = elem_pos(y);

      if (A.edge == B.edge) {
        // the glued interval (x, y) lies inside a single edge: pure fold
        Expr gap = B.off - A.off;
        ineqs.push_back({gap, 2 * eps});
        Expr f = (A.off + B.off) * 0.5;
        FoldLeaf fl;
        fl.edge = A.edge;
        fl.off = f;
        fl.tree_node = chain_count + static_cast<int>(folds.size());
        folds.push_back(fl);
        arcs.push_back({ni, fl.tree_node, src_start, dst_end, sys.resolve(gap * 0.5)});
        continue;
      }

      Expr duA = Expr(p.edge_length(A.edge)) - A.off;
      Expr dwB = B.off;
      int uA = p.index(A.edge + 1);
      int wB = B.edge;

      auto [nu, iu] = vertex_elem(uA);
      int du_n = static_cast<int>(nodes[nu].elems.size());
      int pred_gi = (iu - 1 + du_n) % du_n;
      const Element& pred = nodes[nu].elems[pred_gi];

      auto [nw, iw] = vertex_elem(wB);
      int dw_n = static_cast<int>(nodes[nw].elems.size());
      const Element& succ = nodes[nw].elems[(iw + 1) % dw_n];

      bool vv_ok = pred.is_vertex && pred.vertex == wB && !nodes[nu].consumed[pred_gi];
      bool ve_ok = !pred.is_vertex && pred.edge == B.edge && !nodes[nu].consumed[pred_gi];
      bool ev_ok = !succ.is_vertex && succ.edge == A.edge && !nodes[nw].consumed[iw];

      if (vv_ok) {
        if (!(succ.is_vertex && succ.vertex == uA))
          throw LengthMismatch("germ pairing disagrees across the arc");
        sys.equate_zero(duA - dwB, eps);
        nodes[nu].consumed[pred_gi] = true;
        arcs.push_back({ni, nu, src_start, dst_end, sys.resolve(duA)});
      } else if (ve_ok) {
        // arc ends gluing uA onto an edge point of eB
        sys.equate_zero(Expr::unknown(pred.unknown) - (dwB - duA), eps);
        ineqs.push_back({dwB - duA, eps});
        nodes[nu].consumed[pred_gi] = true;
        arcs.push_back({ni, nu, src_start, dst_end, sys.resolve(duA)});
      } else if (ev_ok) {
        sys.equate_zero(Expr::unknown(succ.unknown) - (A.off + dwB), eps);
        ineqs.push_back({duA - dwB, eps});
        nodes[nw].consumed[iw] = true;
        arcs.push_back({ni, nw, src_start, dst_end, sys.resolve(dwB)});
      } else {
        throw LengthMismatch("type forces a fold across a vertex");
      }
    }
  }

  // --- free parameters and witness values ------------------------------------
  std::vector<int> params;
  for (int id = 0; id < sys.next_id; ++id)
    if (sys.is_free(id)) params.push_back(id);
  std::map<int, int> param_index;
  for (std::size_t i = 0; i < params.size(); ++i) param_index[params[i]] = static_cast<int>(i);

  std::vector<std::array<double, 2>> ranges(params.size(),
                                            {-1e18, 1e18});
  std::vector<std::pair<Expr, double>> resolved;
  for (auto& [e, m] : ineqs) resolved.push_back({sys.resolve(e), m});
  for (auto& [e, m] : resolved) {
    if (e.terms.empty()) {
      if (e.c0 < m - eps) throw LengthMismatch("infeasible gluing type");
    } else if (e.terms.size() == 1) {
      int id = e.terms.begin()->first;
      double c = e.terms.begin()->second;
      double bound = (m - e.c0) / c;
      auto& r = ranges[param_index[id]];
      if (c > 0)
        r[0] = std::max(r[0], bound);
      else
        r[1] = std::min(r[1], bound);
    }
  }
  std::vector<double> witness(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (ranges[i][0] > ranges[i][1] + eps)
      throw LengthMismatch("infeasible gluing type (empty belt interval)");
    if (ranges[i][0] < -1e17 || ranges[i][1] > 1e17)
      throw GluingError("unbounded free parameter in type");
    witness[i] = 0.5 * (ranges[i][0] + ranges[i][1]);
  }
  auto eval = [&](const Expr& e) {
    Expr r = sys.resolve(e);
    double v = r.c0;
    for (auto& [k, c] : r.terms) v += c * witness[param_index[k]];
    return v;
  };
  for (auto& [e, m] : resolved) {
    double v = e.c0;
    for (auto& [k, c] : e.terms) v += c * witness[param_index[k]];
    if (v < m - eps) throw LengthMismatch("infeasible gluing type (coupled)");
  }

  // --- numeric gluing ---------------------------------------------------------
  std::vector<std::array<double, 2>> src, dst;
  for (const auto& a : arcs) {
    double len = eval(a.len);
    if (len <= eps) continue;  // degenerate arc (leaf exactly at a vertex)
    double s0 = mod_pos(eval(a.src_start), L);
    double e1 = mod_pos(eval(a.dst_end), L);
    src.push_back({s0, s0 + len});
    dst.push_back({e1 - len, e1});
  }
  RealizedType out{Gluing::from_matched_intervals(p, src, dst), GluingTree{}, 0, {}, {}};

  // --- tree assembly ----------------------------------------------------------
  GluingTree& tree = out.tree;
  tree.nodes.resize(chain_count + folds.size());
  for (int ni = 0; ni < chain_count; ++ni) {
    auto& nd = tree.nodes[ni];
    for (const auto& el : nodes[ni].elems) {
      if (el.is_vertex) {
        nd.vertex_labels.push_back(el.vertex);
        nd.angle_sum += p.interior_angle(el.vertex);
        nd.positions.push_back(p.vertex_arc(el.vertex));
      } else {
        nd.edge_labels.push_back(el.edge);
        nd.angle_sum += M_PI;
        nd.positions.push_back(mod_pos(eval(elem_pos(el)), L));
      }
    }
    nd.curvature = 2 * M_PI - nd.angle_sum;
  }
  for (std::size_t i = 0; i < folds.size(); ++i) {
    auto& nd = tree.nodes[chain_count + i];
    nd.edge_labels.push_back(folds[i].edge);
    nd.angle_sum = M_PI;
    nd.curvature = M_PI;
    nd.fold_leaf = true;
    nd.positions.push_back(mod_pos(p.vertex_arc(folds[i].edge) + eval(folds[i].off), L));
  }
  for (const auto& a : arcs) {
    tree.nodes[a.node_a].adj.push_back(a.node_b);
    if (a.node_a != a.node_b) tree.nodes[a.node_b].adj.push_back(a.node_a);
  }
  for (auto& nd : tree.nodes) {
    if (nd.adj.size() == 1 && nd.vertex_labels.empty() && nd.edge_labels.size() == 1)
      nd.fold_leaf = true;
    if (nd.angle_sum > 2 * M_PI + 10 * global_config().tol.eps_angle)
      throw AngleExcess("node angle sum exceeds 2*pi");
  }

  out.free_params = static_cast<int>(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) out.param_ranges.push_back(ranges[i]);
  for (int k = 0; k < out.gluing.arc_count(); ++k) {
    RealizedType::AffinePos ap;
    ap.c0 = out.gluing.breakpoints()[k];
    ap.coeff.assign(params.size(), 0.0);
    out.breakpoint_exprs.push_back(ap);
  }
  // recover affine breakpoint expressions from the solver structures
  {
    std::vector<std::pair<Expr, int>> known;  // position expr -> arc index
    auto note = [&](const Expr& pe) {
      Expr r = sys.resolve(pe);
      double v = r.c0;
      for (auto& [k, c] : r.terms) v += c * witness[param_index[k]];
      int idx = locate(out.gluing.breakpoints(), mod_pos(v, L), eps);
      if (idx < 0) return;
      out.breakpoint_exprs[idx].c0 = r.c0;
      for (auto& [k, c] : r.terms)
        out.breakpoint_exprs[idx].coeff[param_index[k]] = c;
    };
    for (int ni = 0; ni < chain_count; ++ni)
      for (const auto& el : nodes[ni].elems) note(elem_pos(el));
    for (const auto& f : folds) note(Expr(p.vertex_arc(f.edge)) + f.off);
  }
  return out;
}

GluingTree gluing_tree_from_type(const Polygon& p, const GluingType& t) {
  return realize_type(p, t).tree;
}

StructureInfo classify_structure(const Polygon& p, const GluingType& t) {
  RealizedType r = realize_type(p, t);
  StructureInfo s;
  s.leaves = r.tree.leaf_count();
  s.fold_point_leaves = r.tree.fold_leaf_count();
  double roll_eps = p.perimeter() * 1e-7;
  for (auto& rg : r.param_ranges)
    if (rg[1] - rg[0] > roll_eps) ++s.rolling_belts;
  return s;
}

StructureInfo classify_structure(const Polygon& p, const GluingTree& t) {
  // reconstruct the combinatorial type from the node label order
  GluingType ty;
  ty.pairs.resize(p.size());
  const double L = p.perimeter();
  for (const auto& nd : t.nodes) {
    // gather (position, label) in ccw order
    std::vector<std::pair<double, std::pair<bool, int>>> elems;
    std::size_t vi = 0, ei = 0;
    for (double s : nd.positions) {
      BoundaryPoint b = boundary_point_at_arc(p, s);
      if (is_vertex(p, b))
        elems.push_back({s, {false, nd.vertex_labels[vi++]}});
      else
        elems.push_back({s, {true, nd.edge_labels[ei++]}});
    }
    std::sort(elems.begin(), elems.end());
    for (std::size_t i = 0; i < elems.size(); ++i) {
      if (elems[i].second.first) continue;
      int v = elems[i].second.second;
      if (elems.size() == 1)
        ty.pairs[v] = {false, v};
      else
        ty.pairs[v] = {elems[(i + 1) % elems.size()].second.first,
                       elems[(i + 1) % elems.size()].second.second};
    }
  }
  (void)L;
  return classify_structure(p, ty);
}

// --------------------------- unlabeled trees --------------------------------

UnlabeledTree contract_degree2(const GluingTree& t) {
  // GluingTree::adj lists each undirected arc from both endpoints
  UnlabeledTree v;
  v.adj.resize(t.nodes.size());
  std::set<std::pair<int, int>> seen;
  for (std::size_t i = 0; i < t.nodes.size(); ++i)
    for (int j : t.nodes[i].adj) {
      int lo = std::min(static_cast<int>(i), j);
      int hi = std::max(static_cast<int>(i), j);
      if (!seen.insert({lo, hi}).second) continue;
      v.adj[i].push_back(j);
      if (j != static_cast<int>(i)) v.adj[j].push_back(static_cast<int>(i));
    }
  return contract_degree2(v);
}

UnlabeledTree contract_degree2(const UnlabeledTree& t) {
  int n = static_cast<int>(t.adj.size());
  std::vector<std::vector<int>> adj = t.adj;
  std::vector<bool> alive(n, true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      if (!alive[i] || adj[i].size() != 2) continue;
      int a = adj[i][0], b = adj[i][1];
      if (a == i || b == i) continue;
      alive[i] = false;
      auto rm = [&](int from, int what) {
        auto& v = adj[from];
        v.erase(std::find(v.begin(), v.end(), what));
      };
      rm(a, i);
      rm(b, i);
      adj[a].push_back(b);
      adj[b].push_back(a);
      changed = true;
    }
  }
  std::vector<int> remap(n, -1);
  UnlabeledTree out;
  for (int i = 0; i < n; ++i)
    if (alive[i]) {
      remap[i] = static_cast<int>(out.adj.size());
      out.adj.emplace_back();
    }
  for (int i = 0; i < n; ++i)
    if (alive[i])
      for (int j : adj[i]) out.adj[remap[i]].push_back(remap[j]);
  return out;
}

TreeShape tree_shape(const UnlabeledTree& t) {
  int n = static_cast<int>(t.adj.size());
  if (n == 1) return TreeShape::Single;
  std::vector<int> deg(n);
  for (int i = 0; i < n; ++i) deg[i] = static_cast<int>(t.adj[i].size());
  int d3 = 0, d4 = 0, leaves = 0, dmore = 0;
  for (int i = 0; i < n; ++i) {
    if (deg[i] == 1) ++leaves;
    else if (deg[i] == 3) ++d3;
    else if (deg[i] == 4) ++d4;
    else if (deg[i] > 4) ++dmore;
  }
  if (n == 2 && leaves == 2) return TreeShape::Path;
  if (n == 4 && d3 == 1 && leaves == 3) return TreeShape::Y;
  if (n == 5 && d4 == 1 && leaves == 4) return TreeShape::Plus;
  if (n == 6 && d3 == 2 && leaves == 4) return TreeShape::I;
  return TreeShape::Other;
}

const char* tree_shape_name(TreeShape s) {
  switch (s) {
    case TreeShape::Path: return "path";
    case TreeShape::Y: return "Y";
    case TreeShape::Plus: return "+";
    case TreeShape::I: return "I";
    case TreeShape::Single: return "single";
    default: return "other";
  }
}

namespace {
std::string ahu(int v, int parent, const UnlabeledTree& t) {
  std::vector<std::string> kids;
  for (int u : t.adj[v])
    if (u != parent) kids.push_back(ahu(u, v, t));
  std::sort(kids.begin(), kids.end());
  std::string s = "(";
  for (auto& k : kids) s += k;
  return s + ")";
}
}  // namespace

std::string ahu_canonical(const UnlabeledTree& t) {
  int n = static_cast<int>(t.adj.size());
  if (n == 0) return "";
  // centroid(s)
  std::vector<int> size(n, 1), order, parent(n, -1);
  std::vector<int> stack{0};
  std::vector<bool> vis(n, false);
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    vis[v] = true;
    order.push_back(v);
    for (int u : t.adj[v])
      if (!vis[u]) {
        parent[u] = v;
        stack.push_back(u);
      }
  }
  for (int i = n - 1; i > 0; --i) size[parent[order[i]]] += size[order[i]];
  std::vector<int> centroids;
  for (int v = 0; v < n; ++v) {
    int heavy = n - size[v];
    for (int u : t.adj[v])
      if (parent[u] == v) heavy = std::max(heavy, size[u]);
    if (heavy <= n / 2) centroids.push_back(v);
  }
  std::string best;
  for (int c : centroids) {
    std::string s = ahu(c, -1, t);
    if (best.empty() || s < best) best = s;
  }
  return best;
}

// --------------------------- symmetry on types ------------------------------

GluingType rotate_type(const GluingType& t, int n, int r) {
  GluingType out;
  out.pairs.resize(n);
  for (int i = 0; i < n; ++i) {
    auto tg = t.pairs[i];
    tg.index = (tg.index + r) % n;
    out.pairs[(i + r) % n] = tg;
  }
  return out;
}

GluingType reflect_type(const GluingType& t, int n) {
  // predecessor of each vertex in its node cyclic order
  std::vector<GluingType::Target> pred(n, {false, -1});
  for (int i = 0; i < n; ++i) {
    const auto& tg = t.pairs[i];
    if (!tg.to_edge && tg.index == i) {
      pred[i] = {false, i};
    } else if (!tg.to_edge) {
      pred[tg.index] = {false, i};
    }
  }
  // chain starts: predecessor is the chain-terminating edge point (if any)
  for (int i = 0; i < n; ++i) {
    if (pred[i].index >= 0) continue;
    // walk the chain from i to its terminal edge
    int cur = i;
    while (!t.pairs[cur].to_edge) {
      cur = t.pairs[cur].index;
      if (cur == i) break;  // cycle, handled by vertex predecessors
    }
    if (t.pairs[cur].to_edge) pred[i] = {true, t.pairs[cur].index};
  }
  GluingType out;
  out.pairs.resize(n);
  auto rv = [&](int i) { return ((-i) % n + n) % n; };
  auto re = [&](int j) { return ((-j - 1) % n + n) % n; };
  for (int i = 0; i < n; ++i) {
    const auto& pr = pred[i];
    GluingType::Target tg;
    if (!pr.to_edge)
      tg = {false, rv(pr.index)};
    else
      tg = {true, re(pr.index)};
    out.pairs[rv(i)] = tg;
  }
  return out;
}

GluingType canonicalize(const GluingType& t, int n, Symmetry sym) {
  if (sym == Symmetry::None) return t;
  GluingType best = t;
  std::string bk = t.key();
  auto consider = [&](const GluingType& c) {
    std::string k = c.key();
    if (k < bk) {
      bk = k;
      best = c;
    }
  };
  for (int r = 0; r < n; ++r) consider(rotate_type(t, n, r));
  if (sym == Symmetry::Dihedral) {
    GluingType ref = reflect_type(t, n);
    for (int r = 0; r < n; ++r) consider(rotate_type(ref, n, r));
  }
  return best;
}

}  // namespace foldtope
