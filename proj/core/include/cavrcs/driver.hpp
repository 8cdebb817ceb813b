#pragma once

#include "cavrcs/config.hpp"
#include "cavrcs/farfield.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace cavrcs {

struct RunOptions {
  std::string cache_dir;   // empty: no caching of the kernel-product tensors
  bool cache_only = false; // compute and persist the tensors, then stop (no solve)
  int threads = 1;
};

struct RunResult {
  std::vector<RcsSample> samples;
  // Wall-clock phase buckets: kernel-product tensors; system assembly and
  // factorization; per-incidence right-hand sides and solves; far fields.
  double t_singular = 0, t_assemble = 0, t_solve = 0, t_rcs = 0;
  double rcond = 0; // reciprocal condition estimate of the interface system
};

RunResult run_solver(const CavityConfig& cfg, const RunOptions& opt);

// Monostatic sweep rows, one line per theta, every value printed with %.17g
// so identical runs produce byte-identical files.
void emit_csv(std::ostream& os, const std::vector<RcsSample>& samples);

} // namespace cavrcs
