#pragma once

#include <functional>
#include <optional>
#include <set>

#include "foldtope/gluing.hpp"

namespace foldtope {

struct EnumerationConfig {
  Symmetry symmetry = Symmetry::None;
  std::optional<int> max_leaves;
  std::size_t max_results = 1u << 20;
  double oracle_resolution = 0.5;
};

struct CatalogEntry {
  GluingType type;     // canonical under the catalog symmetry
  GluingType witness;  // realizable representative as found
  GluingTree tree;
  TreeShape shape = TreeShape::Other;
  StructureInfo structure;
  std::vector<double> curvatures;  // node curvatures, descending
  int polytope_vertices = 0;       // nodes with nonzero curvature
  bool continuum = false;          // has a rolling belt
  RealizedType realization;
};

class GluingCatalog {
 public:
  explicit GluingCatalog(Symmetry sym = Symmetry::None) : sym_(sym) {}

  // canonicalizes, dedupes, realizes and validates; returns true if inserted
  bool add(const Polygon& p, const GluingType& raw);
  bool contains(const Polygon& p, const GluingType& raw) const;

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  Symmetry symmetry() const { return sym_; }

  // distinct raw candidate types seen before validity filtering
  std::size_t candidate_types = 0;

  std::set<std::string> type_keys() const;

 private:
  Symmetry sym_;
  std::vector<CatalogEntry> entries_;
  std::set<std::string> keys_;
  std::set<std::string> raw_seen_;

 public:
  void note_candidate(const GluingType& raw);
};

GluingCatalog enumerate_path_gluings(const Polygon& p,
                                     const EnumerationConfig& cfg = {});
GluingCatalog enumerate_y_gluings(const Polygon& p,
                                  const EnumerationConfig& cfg = {});
GluingCatalog enumerate_four_leaf_gluings(const Polygon& p,
                                          const EnumerationConfig& cfg = {});
GluingCatalog enumerate_convex(const Polygon& p,
                               const EnumerationConfig& cfg = {});

// depth-first search over partial gluings; emits every type found (the
// structured families plus caterpillar trees with zipped-off branches)
void enumerate_general(const Polygon& p, const EnumerationConfig& cfg,
                       const std::function<void(const GluingType&)>& emit);
GluingCatalog enumerate_general_catalog(const Polygon& p,
                                        const EnumerationConfig& cfg = {});

struct IncommensurableEdges : GluingError {
  using GluingError::GluingError;
};

// exhaustive noncrossing matching of r-length boundary granules
GluingCatalog brute_force_oracle(const Polygon& p, double resolution,
                                 const EnumerationConfig& cfg = {});

// entries of c admitting a realization with every breakpoint on the r-grid
GluingCatalog restrict_to_grid(const Polygon& p, const GluingCatalog& c,
                               double resolution);

}  // namespace foldtope
