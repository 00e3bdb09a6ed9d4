#pragma once

#include <cstddef>
#include <string>

namespace foldtope {

// Central tolerances. ε_len is interpreted relative to the perimeter of the
// polygon at hand (see Polygon::eps_len()).
struct Tolerances {
  double eps_angle = 1e-9;      // radians
  double eps_len_rel = 1e-9;    // relative to perimeter
  double eps_vol = 1e-12;       // Cayley-Menger slack for flat tetrahedra
};

enum class Symmetry { None, Rotation, Dihedral };

enum class TreeConvention { FoldAway, FoldUp };

struct RunConfig {
  Tolerances tol;
  Symmetry symmetry = Symmetry::None;
  std::size_t max_results = 1u << 20;
  TreeConvention convention = TreeConvention::FoldAway;
  unsigned seed = 0;
};

RunConfig& global_config();

}  // namespace foldtope
