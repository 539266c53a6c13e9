#pragma once

#include <cstdint>
#include <vector>

#include "trianneal/lattice.hpp"
#include "trianneal/model.hpp"
#include "trianneal/timeseries.hpp"

namespace trianneal {

// Fields below this multiple of J are clamped: the QMC cluster moves need a
// non-zero transverse field on every site.
inline constexpr double kResidualFieldFactor = 1e-3;

// Linear field ramp h_max, h_max - dh, ..., 0 at fixed temperature. The final
// zero (and anything below it) is replaced by the residual field.
struct QaSchedule {
  double h_max = 5.0;
  double dh = 0.05;
  double temperature = 0.05;
  int steps_per_window = 1000;
  double h_residual = 1e-3;

  void validate() const;
  int num_windows() const;
  double field(int window) const;
  std::int64_t total_mcs() const {
    return static_cast<std::int64_t>(num_windows()) * steps_per_window;
  }
};

// Site-random fields h_i(0) ~ U[0, site_field_max], scaled by 1 - w / intervals.
struct QahSchedule {
  double site_field_max = 10.0;
  int intervals = 100;
  double temperature = 0.05;
  int steps_per_window = 1000;
  double h_residual = 1e-3;

  void validate() const;
  int num_windows() const { return intervals + 1; }
  double ramp(int window) const;
  std::int64_t total_mcs() const {
    return static_cast<std::int64_t>(num_windows()) * steps_per_window;
  }
};

// Field ramp of QaSchedule with n_cuts seams swept inside every window;
// each seam is glued back over ns = steps_per_window / n_cuts sweeps.
struct SqaSchedule {
  QaSchedule qa;
  int n_cuts = 1;

  void validate() const;
  int glue_steps() const { return qa.steps_per_window / n_cuts; }
  std::int64_t window_mcs() const { return static_cast<std::int64_t>(glue_steps()) * n_cuts; }
  std::int64_t total_mcs() const { return window_mcs() * qa.num_windows(); }
};

TimeSeries run_qa(const Lattice& lattice, const Couplings& couplings, const QaSchedule& schedule,
                  std::uint64_t seed, int points_per_decade = 20);

TimeSeries run_qa_h(const Lattice& lattice, const Couplings& couplings, const QahSchedule& schedule,
                    std::uint64_t seed, int points_per_decade = 20);

// Opens a seam: severed bonds -> 0, softened bonds -> Jx / 2.
// Throws if any seam is already open.
void apply_cut(Couplings& couplings, const Seam& seam);

// Step `step_index` of `ns` of the linear glue ramp. After the last step the
// seam's overrides are cleared and the bonds are back at their base values.
void glue_step(Couplings& couplings, const Seam& seam, int ns, int step_index);

// Sweeping annealing. `couplings` is the chain's own copy: it is cut and glued
// in place and is identical to its input on return.
TimeSeries run_sqa(const Lattice& lattice, Couplings& couplings, const SqaSchedule& schedule,
                   std::uint64_t seed, int points_per_decade = 20);

}  // namespace trianneal
