#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "foldtope/geometry.hpp"

namespace foldtope {

// Boundary self-identification, stored as a breakpoint partition of [0, L)
// plus orientation-reversing matched arc pairs.  Breakpoints always include
// every polygon vertex and every image of a vertex under the identification.
class Gluing {
 public:
  struct ArcPair {
    int a = -1, b = -1;  // arc indices; arc k spans [bp[k], bp[k+1]) cyclically
  };

  static Gluing from_matched_intervals(
      const Polygon& p,
      const std::vector<std::array<double, 2>>& src,
      const std::vector<std::array<double, 2>>& dst);

  const Polygon& polygon() const { return poly_; }
  const std::vector<double>& breakpoints() const { return bp_; }
  const std::vector<ArcPair>& pairs() const { return pairs_; }
  int arc_count() const { return static_cast<int>(bp_.size()); }
  double arc_length(int k) const;
  // class id per breakpoint under the transitive closure
  const std::vector<int>& breakpoint_class() const { return cls_; }
  int partner_arc(int k) const;
  // reflection image of boundary position s inside arc k's pair
  double mate(int k, double s) const;

 private:
  Polygon poly_;
  std::vector<double> bp_;
  std::vector<ArcPair> pairs_;
  std::vector<int> cls_;
};

enum class ViolationKind { AngleExcess, ChordCrossing, LengthMismatch, NotConnected };

struct Violation {
  ViolationKind kind;
  std::string where;
};

struct ValidationReport {
  bool valid = false;
  std::vector<Violation> violations;
};

ValidationReport validate_aleksandrov(const Polygon& p, const Gluing& g);

// perimeter-halving gluing folded at x (and at its antipode)
Gluing perimeter_halving(const Polygon& p, const BoundaryPoint& x);

// Combinatorial type: for each vertex, the first element it glues to
// counterclockwise; leaves recorded as (v_i, v_i).
struct GluingType {
  struct Target {
    bool to_edge = false;
    int index = 0;  // vertex or edge index
  };
  std::vector<Target> pairs;  // one per polygon vertex

  std::string key() const;
  bool operator==(const GluingType& o) const { return key() == o.key(); }
  bool operator<(const GluingType& o) const { return key() < o.key(); }
};

GluingType combinatorial_type(const Polygon& p, const Gluing& g);

// Labeled tree of identified boundary points.
struct GluingTree {
  struct Node {
    std::vector<int> vertex_labels;   // in ccw order around the node
    std::vector<int> edge_labels;     // edges owning edge-interior points
    std::vector<double> positions;    // boundary arcs of all labels, ccw order
    double angle_sum = 0;
    double curvature = 0;
    bool fold_leaf = false;           // leaf labeled by an edge only
    std::vector<int> adj;
  };
  std::vector<Node> nodes;

  int leaf_count() const;
  int fold_leaf_count() const;
  int degree(int i) const { return static_cast<int>(nodes[i].adj.size()); }
};

struct GluingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct LengthMismatch : GluingError {
  using GluingError::GluingError;
};
struct AngleExcess : GluingError {
  using GluingError::GluingError;
};

// Realization of a combinatorial type: the gluing it determines, the tree,
// and any residual degrees of freedom (rolling belts).
struct RealizedType {
  Gluing gluing;
  GluingTree tree;
  int free_params = 0;
  std::vector<std::array<double, 2>> param_ranges;  // feasible interval per param
  // witness breakpoint positions as affine functions of the params:
  // pos = c0 + sum_k c[k]*t_k; stored for grid-restriction queries
  struct AffinePos {
    double c0 = 0;
    std::vector<double> coeff;
  };
  std::vector<AffinePos> breakpoint_exprs;
};

RealizedType realize_type(const Polygon& p, const GluingType& t);
GluingTree gluing_tree_from_type(const Polygon& p, const GluingType& t);
GluingTree tree_from_gluing(const Polygon& p, const Gluing& g);

std::vector<std::pair<int, double>> node_curvatures(const GluingTree& t);

struct StructureInfo {
  int leaves = 0;
  int fold_point_leaves = 0;
  int rolling_belts = 0;
};

StructureInfo classify_structure(const Polygon& p, const GluingType& t);
StructureInfo classify_structure(const Polygon& p, const GluingTree& t);

// Unlabeled tree handling (degree-2 contraction, shape, isomorphism).
struct UnlabeledTree {
  std::vector<std::vector<int>> adj;
};

enum class TreeShape { Path, Y, Plus, I, Single, Other };

UnlabeledTree contract_degree2(const GluingTree& t);
UnlabeledTree contract_degree2(const UnlabeledTree& t);
TreeShape tree_shape(const UnlabeledTree& t);
std::string ahu_canonical(const UnlabeledTree& t);
const char* tree_shape_name(TreeShape s);

// symmetry action on types (valid on polygons with that symmetry)
GluingType rotate_type(const GluingType& t, int n, int r);
GluingType reflect_type(const GluingType& t, int n);
GluingType canonicalize(const GluingType& t, int n, Symmetry sym);

}  // namespace foldtope
