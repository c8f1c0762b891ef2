#include "minkflow/commands.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <system_error>

#include "minkflow/checks.hpp"
#include "minkflow/errors.hpp"
#include "minkflow/experiments.hpp"

namespace minkflow {

namespace fs = std::filesystem;

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

// shortest exact decimal, used for snapshot file names
std::string format_shortest(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw std::runtime_error("cannot create output dir '" + dir +
                             "': " + ec.message());
}

void write_snapshots(const FlowTrace& trace, const std::string& dir) {
  for (const CurveSnapshot& snap : trace.snapshots)
    write_snapshot_csv(snap,
                       dir + "/snapshot_" + format_shortest(snap.t) + ".csv");
}

int classify(const std::exception& e, const char* cmd) {
  std::cerr << "minkflow " << cmd << ": " << e.what() << "\n";
  if (dynamic_cast<const ClosingConditionError*>(&e)) return 2;
  if (dynamic_cast<const ConvexityError*>(&e)) return 2;
  if (dynamic_cast<const std::domain_error*>(&e)) return 2;
  return 1;
}

}  // namespace

void apply_overrides(RunConfig& cfg, const CliOverrides& ovr) {
  if (!ovr.out_dir.empty()) cfg.out_dir = ovr.out_dir;
  if (ovr.n > 0) cfg.solver.n = ovr.n;
  if (ovr.cfl > 0.0) cfg.solver.cfl = ovr.cfl;
  if (ovr.stop_area_frac > 0.0) cfg.solver.stop_area_frac = ovr.stop_area_frac;
  if (ovr.stop_kmax > 0.0) cfg.solver.stop_kmax = ovr.stop_kmax;
  cfg.solver.validate();
}

void write_trace_csv(const FlowTrace& trace, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "t,dt,area_curve,area_analytic,q_length,iso_ratio,k_min,k_max,"
         "k_star,c_bound,entropy,grad_fun,sq_fun,closing_res_sin,"
         "closing_res_cos\n";
  for (const FlowRecord& r : trace.records) {
    out << format_g17(r.t) << ',' << format_g17(r.dt) << ','
        << format_g17(r.area_curve) << ',' << format_g17(r.area_analytic)
        << ',' << format_g17(r.q_length) << ',' << format_g17(r.iso_ratio)
        << ',' << format_g17(r.k_min) << ',' << format_g17(r.k_max) << ','
        << format_g17(r.k_star) << ',' << format_g17(r.c_bound) << ','
        << format_g17(r.entropy) << ',' << format_g17(r.grad_fun) << ','
        << format_g17(r.sq_fun) << ',' << format_g17(r.closing_residual[0])
        << ',' << format_g17(r.closing_residual[1]) << '\n';
  }
}

void write_snapshot_csv(const CurveSnapshot& snap, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "theta,k,F_x,F_y,lambda\n";
  for (int i = 0; i < snap.grid.size(); ++i) {
    out << format_g17(snap.grid.theta(i)) << ',' << format_g17(snap.k[i])
        << ',' << format_g17(snap.points[i].x) << ','
        << format_g17(snap.points[i].y) << ',' << format_g17(snap.lambda[i])
        << '\n';
  }
}

void write_blowup_csv(const BlowupReport& report, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "f_desc,t_terminal,reason,bound_T,slack\n";
  for (const BlowupRow& row : report.rows) {
    out << row.f_desc << ',' << format_g17(row.t_terminal) << ',' << row.reason
        << ',' << format_g17(row.bound_t) << ',' << format_g17(row.slack)
        << '\n';
  }
}

int cmd_run(const RunConfig& cfg) {
  try {
    if (cfg.out_dir.empty())
      throw std::runtime_error("no output dir (give --out, MINKFLOW_OUT, or "
                               "[outputs] dir)");
    ensure_dir(cfg.out_dir);
    const AngleGrid grid(cfg.solver.n);
    GaugeSamples g0 = cfg.family.sample(grid, 0.0);
    CurvatureState initial = cfg.initial.build(g0);
    FlowTrace trace = evolve(initial, cfg.family, cfg.solver);
    write_trace_csv(trace, cfg.out_dir + "/trace.csv");
    write_snapshots(trace, cfg.out_dir);
    if (trace.reason == Termination::kInvariantViolation) {
      std::cerr << "minkflow run: flow terminated with invariant_violation at t = "
                << trace.t_final << "\n";
      return 2;
    }
    return 0;
  } catch (const std::exception& e) {
    return classify(e, "run");
  }
}

int cmd_blowup_study(const RunConfig& cfg) {
  try {
    if (cfg.fspecs.empty()) {
      std::cerr << "minkflow blowup-study: [family] fs list is empty\n";
      return 1;
    }
    if (cfg.out_dir.empty())
      throw std::runtime_error("no output dir (give --out, MINKFLOW_OUT, or "
                               "[outputs] dir)");
    ensure_dir(cfg.out_dir);
    BlowupReport report =
        blowup_study(cfg.profile, cfg.initial, cfg.fspecs, cfg.solver);
    write_blowup_csv(report, cfg.out_dir + "/blowup_report.csv");
    return report.passed ? 0 : 2;
  } catch (const std::exception& e) {
    return classify(e, "blowup-study");
  }
}

int cmd_verify(const RunConfig& cfg) {
  try {
    if (cfg.out_dir.empty())
      throw std::runtime_error("no output dir (give --out, MINKFLOW_OUT, or "
                               "[outputs] dir)");
    ensure_dir(cfg.out_dir);
    const AngleGrid grid(cfg.solver.n);
    GaugeSamples g0 = cfg.family.sample(grid, 0.0);
    CurvatureState initial = cfg.initial.build(g0);
    FlowTrace trace = evolve(initial, cfg.family, cfg.solver);
    write_trace_csv(trace, cfg.out_dir + "/trace.csv");
    write_snapshots(trace, cfg.out_dir);

    std::vector<CheckReport> reports = run_all_checks(trace, cfg.family);
    std::ofstream out = open_out(cfg.out_dir + "/verify.txt");
    bool all_passed = trace.reason != Termination::kInvariantViolation;
    out << "termination: " << to_string(trace.reason) << " at t = "
        << format_g17(trace.t_final) << "\n";
    for (const CheckReport& r : reports) {
      out << (r.passed ? "PASS" : "FAIL") << ' ' << r.name << ": " << r.detail
          << " (tolerance " << format_g17(r.tolerance) << ")\n";
      std::cout << (r.passed ? "PASS" : "FAIL") << ' ' << r.name << ": "
                << r.detail << "\n";
      all_passed = all_passed && r.passed;
    }
    return all_passed ? 0 : 2;
  } catch (const std::exception& e) {
    return classify(e, "verify");
  }
}

}  // namespace minkflow
