#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "foldtope/gluing.hpp"

using namespace foldtope;

namespace {

GluingType type_of(std::initializer_list<std::pair<char, int>> l) {
  GluingType t;
  for (auto& [k, i] : l) t.pairs.push_back({k == 'e', i});
  return t;
}

// the Fig tri.tetra gluing of an equilateral triangle: v1, v3 glued to a
// point z inside e3; in 0-based labels: v0, v2 glued to z inside edge 2
GluingType tri_tetra_type() { return type_of({{'v', 2}, {'v', 1}, {'e', 2}}); }

}  // namespace

TEST_CASE("perimeter halving of a convex polygon validates") {
  for (int n : {3, 4, 5, 6, 9}) {
    Polygon p = Polygon::regular_ngon(n, 1.0);
    Gluing g = perimeter_halving(p, BoundaryPoint{0, 0.3});
    auto rep = validate_aleksandrov(p, g);
    CHECK(rep.valid);
  }
}

TEST_CASE("perimeter halving tree: curvature sums to 4pi, two fold leaves") {
  Polygon pent = Polygon::regular_ngon(5, 1.0);
  Gluing g = perimeter_halving(pent, BoundaryPoint{0, 0.3});
  GluingTree t = tree_from_gluing(pent, g);
  double sum = 0;
  for (auto& [i, c] : node_curvatures(t)) sum += c;
  CHECK(sum == doctest::Approx(4 * M_PI));
  CHECK(t.leaf_count() == 2);
  CHECK(t.fold_leaf_count() == 2);
}

TEST_CASE("tri.tetra gluing: validation, type, tree, curvatures") {
  Polygon tri = Polygon::regular_ngon(3, 1.0);
  // explicit gluing: v0+t ~ v2-t zips edge pair (e0 e1), leaf at v1;
  // z at offset 0.4 inside e2; arcs (v2,z) and (z,v0) fold onto themselves
  double z = 2.0 + 0.4;
  Gluing g = Gluing::from_matched_intervals(
      tri, {{0.0, 1.0}, {2.0, (2.0 + z) / 2}, {z, (z + 3.0) / 2}},
      {{1.0, 2.0}, {(2.0 + z) / 2, z}, {(z + 3.0) / 2, 3.0}});
  auto rep = validate_aleksandrov(tri, g);
  CHECK(rep.valid);

  GluingType ty = combinatorial_type(tri, g);
  CHECK(ty == tri_tetra_type());

  GluingTree t = tree_from_gluing(tri, g);
  CHECK(t.nodes.size() == 4);  // {v0,v2,z}, {v1}, two folds
  CHECK(t.leaf_count() == 3);
  CHECK(t.fold_leaf_count() == 2);

  // central node angle pi/3 + pi/3 + pi = 5pi/3 < 2pi
  bool found_central = false;
  double sum = 0;
  for (auto& nd : t.nodes) {
    sum += nd.curvature;
    if (nd.vertex_labels.size() == 2) {
      found_central = true;
      CHECK(nd.angle_sum == doctest::Approx(5 * M_PI / 3));
      CHECK(nd.curvature == doctest::Approx(M_PI / 3));
    }
    if (nd.vertex_labels.size() == 1 && nd.adj.size() == 1)
      CHECK(nd.curvature == doctest::Approx(5 * M_PI / 3));  // zipped vertex
    if (nd.fold_leaf) CHECK(nd.curvature == doctest::Approx(M_PI));
  }
  CHECK(found_central);
  CHECK(sum == doctest::Approx(4 * M_PI));
}

TEST_CASE("gluing_tree_from_type reproduces the tri.tetra tree") {
  Polygon tri = Polygon::regular_ngon(3, 1.0);
  GluingTree t = gluing_tree_from_type(tri, tri_tetra_type());
  CHECK(t.nodes.size() == 4);
  CHECK(t.leaf_count() == 3);
  CHECK(t.fold_leaf_count() == 2);
  UnlabeledTree u = contract_degree2(t);
  CHECK(tree_shape(u) == TreeShape::Y);
}

TEST_CASE("round trip: combinatorial_type(realize_type(t)) == t") {
  Polygon tri = Polygon::regular_ngon(3, 1.0);
  RealizedType r = realize_type(tri, tri_tetra_type());
  CHECK(combinatorial_type(tri, r.gluing) == tri_tetra_type());

  // square perimeter halving at vertex v0: {(v0,v0),(v1,v3),(v2,v2),(v3,v1)}
  Polygon sq = Polygon::regular_ngon(4, 1.0);
  GluingType halve = type_of({{'v', 0}, {'v', 3}, {'v', 2}, {'v', 1}});
  RealizedType r2 = realize_type(sq, halve);
  CHECK(combinatorial_type(sq, r2.gluing) == halve);
  CHECK(validate_aleksandrov(sq, r2.gluing).valid);
  CHECK(r2.tree.leaf_count() == 2);
  CHECK(r2.tree.fold_leaf_count() == 0);  // both leaves zipped vertices
}

TEST_CASE("square plus gluing: one interior node, four fold leaves") {
  Polygon sq = Polygon::regular_ngon(4, 1.0);
  GluingType plus = type_of({{'v', 1}, {'v', 2}, {'v', 3}, {'v', 0}});
  RealizedType r = realize_type(sq, plus);
  CHECK(validate_aleksandrov(sq, r.gluing).valid);
  CHECK(r.tree.leaf_count() == 4);
  CHECK(r.tree.fold_leaf_count() == 4);
  for (auto& nd : r.tree.nodes)
    if (nd.adj.size() == 4) CHECK(nd.curvature == doctest::Approx(0.0));
  CHECK(tree_shape(contract_degree2(r.tree)) == TreeShape::Plus);
}

TEST_CASE("perimeter halving of square at a vertex via explicit gluing") {
  Polygon sq = Polygon::regular_ngon(4, 1.0);
  Gluing g = perimeter_halving(sq, BoundaryPoint{0, 0.0});
  CHECK(validate_aleksandrov(sq, g).valid);
  GluingType ty = combinatorial_type(sq, g);
  CHECK(ty == type_of({{'v', 0}, {'v', 3}, {'v', 2}, {'v', 1}}));
}

TEST_CASE("classify_structure: rolling belts") {
  // generic perimeter halving: one rolling belt, two fold leaves
  Polygon pent = Polygon::regular_ngon(5, 1.0);
  Gluing g = perimeter_halving(pent, BoundaryPoint{0, 0.3});
  GluingType ty = combinatorial_type(pent, g);
  StructureInfo si = classify_structure(pent, ty);
  CHECK(si.leaves == 2);
  CHECK(si.fold_point_leaves == 2);
  CHECK(si.rolling_belts == 1);

  // tri.tetra: lambda = 3, 2 fold leaves, 1 rolling belt (x-y path)
  Polygon tri = Polygon::regular_ngon(3, 1.0);
  StructureInfo s2 = classify_structure(tri, tri_tetra_type());
  CHECK(s2.leaves == 3);
  CHECK(s2.fold_point_leaves == 2);
  CHECK(s2.rolling_belts == 1);
}

TEST_CASE("unfoldable polygon: every candidate gluing is rejected") {
  // three consecutive reflex vertices with a tiny exterior angle at the tip
  Polygon p = Polygon::build({{0, 0}, {10, 0}, {10, 8}, {5.5, 8}, {5.4, 5},
                              {5, 2}, {4.6, 5}, {4.5, 8}, {0, 8}});
  int reflex_run = 0, best_run = 0;
  for (int i = 0; i < p.size(); ++i) {
    if (p.interior_angle(i) > M_PI) {
      ++reflex_run;
      best_run = std::max(best_run, reflex_run);
    } else {
      reflex_run = 0;
    }
  }
  CHECK(best_run >= 3);
  // perimeter halvings all fail
  for (double s = 0.05; s < p.perimeter() / 2; s += 0.31) {
    Gluing g = perimeter_halving(p, boundary_point_at_arc(p, s));
    CHECK_FALSE(validate_aleksandrov(p, g).valid);
  }
}

TEST_CASE("contract_degree2 shapes") {
  // a path tree contracts to a single arc
  Polygon pent = Polygon::regular_ngon(5, 1.0);
  Gluing g = perimeter_halving(pent, BoundaryPoint{0, 0.3});
  GluingTree t = tree_from_gluing(pent, g);
  UnlabeledTree u = contract_degree2(t);
  CHECK(tree_shape(u) == TreeShape::Path);
  CHECK(u.adj.size() == 2);
}

TEST_CASE("canonicalize collapses rotated copies") {
  Polygon tri = Polygon::regular_ngon(3, 1.0);
  GluingType a = tri_tetra_type();
  GluingType b = rotate_type(a, 3, 1);
  GluingType c = rotate_type(a, 3, 2);
  CHECK_FALSE(a == b);
  GluingType ca = canonicalize(a, 3, Symmetry::Dihedral);
  GluingType cb = canonicalize(b, 3, Symmetry::Dihedral);
  GluingType cc = canonicalize(c, 3, Symmetry::Dihedral);
  CHECK(ca == cb);
  CHECK(ca == cc);
  // rotation canonicalization must produce a valid realization too
  CHECK_NOTHROW(realize_type(tri, ca));
}

TEST_CASE("validation reports AngleExcess for reflex folds") {
  // perimeter halving of a nonconvex polygon folded at the reflex vertex:
  // the reflex angle plus the opposite flat point exceeds 2*pi somewhere
  Polygon p = Polygon::build({{0, 0}, {4, 0}, {4, 4}, {2, 1.2}, {0, 4}});
  bool saw_excess = false;
  for (double s = 0.0; s < p.perimeter() / 2; s += 0.17) {
    Gluing g = perimeter_halving(p, boundary_point_at_arc(p, s));
    auto rep = validate_aleksandrov(p, g);
    if (rep.valid) continue;
    for (auto& v : rep.violations)
      if (v.kind == ViolationKind::AngleExcess) saw_excess = true;
  }
  CHECK(saw_excess);
}
