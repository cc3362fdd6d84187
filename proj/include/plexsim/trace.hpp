#pragma once

#include <string>
#include <vector>

namespace plexsim {

struct TraceMetadata {
  std::string solver_path;  // "schrodinger" | "lindblad" | "analytic"
  double tol = 0.0;
  std::string config_hash;
  int l_max = 0;  // truncation tag, 0 = full mode list
};

// Emitter excited-state population n(t) = |c_0(t)|^2 on a uniform grid.
struct PopulationTrace {
  std::vector<double> times;   // fs
  std::vector<double> values;  // dimensionless, in [0, 1]
  TraceMetadata meta;
};

}  // namespace plexsim
