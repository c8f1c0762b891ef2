#pragma once

#include <string>

#include "minkflow/config.hpp"

namespace minkflow {

// Command-line overrides applied on top of a parsed config.
struct CliOverrides {
  std::string out_dir;  // --out, else MINKFLOW_OUT, else config [outputs] dir
  int n = 0;            // 0 means "not given"
  double cfl = 0.0;
  double stop_area_frac = 0.0;
  double stop_kmax = 0.0;
};

void apply_overrides(RunConfig& cfg, const CliOverrides& ovr);

// `minkflow run`: evolve and write trace.csv + snapshot_<t>.csv into out dir.
// Returns a process exit code (0 ok, 2 invariant violation).
int cmd_run(const RunConfig& cfg);

// `minkflow blowup-study`: run the fs sweep, write blowup_report.csv.
int cmd_blowup_study(const RunConfig& cfg);

// `minkflow verify`: evolve, run every check, write trace/snapshots plus
// verify.txt with one PASS/FAIL line per check. Exit 0 when all pass, 2
// otherwise.
int cmd_verify(const RunConfig& cfg);

// CSV writers (17 significant digits, lossless round-trip).
void write_trace_csv(const FlowTrace& trace, const std::string& path);
void write_snapshot_csv(const CurveSnapshot& snap, const std::string& path);
void write_blowup_csv(const BlowupReport& report, const std::string& path);

std::string format_g17(double v);

}  // namespace minkflow
