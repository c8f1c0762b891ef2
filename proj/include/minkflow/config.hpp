#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "minkflow/experiments.hpp"
#include "minkflow/solver.hpp"

namespace minkflow {

// Everything a run needs, parsed from an INI-style config file.
struct RunConfig {
  GaugeProfile profile{1.0, {}};
  PlaneFamily family = PlaneFamily::fixed(GaugeProfile{1.0, {}});
  std::vector<FSpec> fspecs;  // [family] fs=...; used by blowup-study
  InitialData initial;
  SolverConfig solver;
  std::string out_dir;  // [outputs] dir=
};

// Parses the config grammar:
//   [profile]  c0=, cos<2j>=, sin<2j>=           (even harmonics only)
//   [family]   f=constant|linear|exponential, c=, fs=a,b,c
//   [initial]  kind=from_support|explicit_k, h0=, hcos<j>=, hsin<j>=, k=
//   [solver]   n=, cfl=, stop_area_frac=, stop_kmax=, t_max=
//   [outputs]  dir=, record_every=, snapshot_times=t1,t2,...
// '#' starts a comment. Unknown sections/keys and malformed values throw
// ConfigError with the offending line number.
RunConfig parse_config(std::istream& in);
RunConfig parse_config_file(const std::string& path);

// Parses one entry of the fs list: "constant", "linear:<c>",
// "exponential:<c>".
FSpec parse_fspec(const std::string& text, int line);

}  // namespace minkflow
