// Copyright 2026 The quadrol Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Times the sweep runner serially and with OpenMP over episodes, checking
// that the aggregated numbers agree exactly whatever the job count.

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <vector>

#include "quadrol/harness.hpp"

using namespace quadrol;

namespace {

double time_sweep(SweepRequest request, int jobs, SweepResult* out) {
  request.jobs = jobs;
  const auto start = std::chrono::steady_clock::now();
  *out = run_sweep(request);
  const auto stop = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(stop - start).count();
}

bool cells_equal(const SweepResult& a, const SweepResult& b) {
  if (a.cells.size() != b.cells.size()) return false;
  for (size_t i = 0; i < a.cells.size(); ++i) {
    if (a.cells[i].acc_cost_mean != b.cells[i].acc_cost_mean ||
        a.cells[i].mean_cost_mean != b.cells[i].mean_cost_mean)
      return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  SweepRequest request;
  request.base.duration = argc > 1 ? std::atof(argv[1]) : 6.0;
  request.horizons = {2, 3, 5};
  request.seeds = {1, 2, 3};
  request.reuse_existing = false;

  const int hw_threads = omp_get_max_threads();
  std::cout << "sweep: " << request.horizons.size() << " horizons x 2 modes x "
            << request.seeds.size() << " seeds, " << request.base.duration
            << " s episodes\n";
  std::cout << std::left << std::setw(10) << "jobs" << std::setw(12) << "time [s]"
            << "speedup\n";

  SweepResult serial;
  const double t_serial = time_sweep(request, 1, &serial);
  std::cout << std::left << std::setw(10) << 1 << std::setw(12) << t_serial
            << 1.0 << '\n';

  std::vector<int> job_counts;
  for (int jobs : {2, 4, hw_threads}) {
    if (jobs <= 1 || jobs > hw_threads) continue;
    if (std::find(job_counts.begin(), job_counts.end(), jobs) != job_counts.end())
      continue;
    job_counts.push_back(jobs);
  }
  for (int jobs : job_counts) {
    SweepResult parallel;
    const double t = time_sweep(request, jobs, &parallel);
    std::cout << std::left << std::setw(10) << jobs << std::setw(12) << t
              << t_serial / t << (cells_equal(serial, parallel) ? "" : "  MISMATCH")
              << '\n';
    if (!cells_equal(serial, parallel)) return 1;
  }
  return 0;
}
