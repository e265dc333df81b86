#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "adergen/runtime/output.hpp"
#include "adergen/runtime/solver.hpp"

namespace adergen::runtime {

struct RunResult {
  std::vector<StepStats> log;  // step 0 is the initial state
  std::string csv;
  std::string final_dump;
  std::vector<std::filesystem::path> written;
};

/// Time loop until end_time. Writes <out>/<project>.csv and
/// <out>/<project>_final.dump when `out` is non-empty; every_n_steps > 0 adds
/// <project>_step<k>.dump snapshots. `observe` sees every step.
inline RunResult run(Solver& solver, const spec::Specification& s, const std::filesystem::path& out = {},
                     const std::function<void(const Solver&, const StepStats&)>& observe = {}) {
  RunResult r;
  StepStats initial;
  initial.sums = solver.conservedSums();
  r.log.push_back(initial);
  r.csv = csv_header(s.quantities) + csv_row(initial);
  while (!solver.finished()) {
    StepStats st = solver.advance();
    r.log.push_back(st);
    r.csv += csv_row(st);
    if (observe) observe(solver, st);
    if (!out.empty() && s.output.every_n_steps > 0 && st.step % s.output.every_n_steps == 0) {
      auto p = out / (s.project_name + "_step" + std::to_string(st.step) + ".dump");
      write_file(p, grid_dump(solver.mesh(), solver.config(), solver.time()));
      r.written.push_back(p);
    }
  }
  r.final_dump = grid_dump(solver.mesh(), solver.config(), solver.time());
  if (!out.empty()) {
    auto csv = out / (s.project_name + ".csv");
    auto dump = out / (s.project_name + "_final.dump");
    write_file(csv, r.csv);
    write_file(dump, r.final_dump);
    r.written.push_back(csv);
    r.written.push_back(dump);
  }
  return r;
}

}  // namespace adergen::runtime
