#include "trianneal/anneal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "trianneal/classical_mc.hpp"
#include "trianneal/rng.hpp"
#include "trianneal/sse.hpp"

namespace trianneal {

void QaSchedule::validate() const {
  if (!(temperature > 0.0)) throw std::invalid_argument("QA schedule needs T > 0");
  if (!(dh > 0.0)) throw std::invalid_argument("QA schedule needs dh > 0");
  if (!(h_residual > 0.0)) throw std::invalid_argument("QA schedule needs a positive residual field");
  if (h_max < 0.0) throw std::invalid_argument("QA schedule needs h_max >= 0");
  if (steps_per_window < 1) throw std::invalid_argument("QA schedule needs steps_per_window >= 1");
  if (h_max <= h_residual) return;  // single quench window
  const double windows = h_max / dh;
  if (std::abs(windows - std::round(windows)) > 1e-6) {
    throw std::invalid_argument("QA schedule h_max must be a whole number of dh steps");
  }
}

int QaSchedule::num_windows() const {
  if (h_max <= h_residual) return 1;
  return static_cast<int>(std::llround(h_max / dh)) + 1;
}

double QaSchedule::field(int window) const {
  const double raw = window == num_windows() - 1 ? 0.0 : h_max - window * dh;
  return std::max(raw, h_residual);
}

void QahSchedule::validate() const {
  if (!(temperature > 0.0)) throw std::invalid_argument("QA-h schedule needs T > 0");
  if (!(site_field_max > 0.0)) throw std::invalid_argument("QA-h schedule needs a positive field range");
  if (!(h_residual > 0.0)) throw std::invalid_argument("QA-h schedule needs a positive residual field");
  if (intervals < 1) throw std::invalid_argument("QA-h schedule needs at least one interval");
  if (steps_per_window < 1) throw std::invalid_argument("QA-h schedule needs steps_per_window >= 1");
}

double QahSchedule::ramp(int window) const {
  return 1.0 - static_cast<double>(window) / static_cast<double>(intervals);
}

void SqaSchedule::validate() const {
  qa.validate();
  if (n_cuts < 1) throw std::invalid_argument("SQA schedule needs at least one cut");
  if (qa.steps_per_window < n_cuts) {
    throw std::invalid_argument("SQA schedule needs steps_per_window >= number of cuts");
  }
}

namespace {

// One QMC chain: sampler, RNG and the sampled time series.
class QmcChain {
 public:
  QmcChain(const Lattice& lattice, const Couplings& couplings, std::uint64_t seed, double temperature,
           std::int64_t total_mcs, std::vector<std::int64_t> window_ends, int points_per_decade)
      : lattice_(lattice),
        reference_(couplings),
        rng_(seed),
        sampler_(lattice, couplings, random_config(lattice.num_sites(), rng_)),
        beta_(1.0 / temperature),
        clock_(total_mcs, window_ends, points_per_decade) {
    series_.samples.reserve(clock_.points().size());
  }

  Rng& rng() { return rng_; }
  void set_hamiltonian(const Couplings& c) { sampler_.set_hamiltonian(c); }

  void sweep(double window_value) {
    sampler_.sweep(beta_, rng_);
    if (clock_.due(sampler_.mcs())) {
      series_.samples.push_back(
          observe(sampler_.basis_state(), reference_, lattice_, sampler_.mcs(), window_value));
      clock_.advance();
    }
  }

  TimeSeries take() { return std::move(series_); }

 private:
  const Lattice& lattice_;
  Couplings reference_;
  Rng rng_;
  SseSampler sampler_;
  double beta_;
  SampleClock clock_;
  TimeSeries series_;
};

std::vector<std::int64_t> window_ends(int windows, std::int64_t per_window) {
  std::vector<std::int64_t> ends;
  ends.reserve(static_cast<std::size_t>(windows));
  for (int w = 1; w <= windows; ++w) ends.push_back(w * per_window);
  return ends;
}

bool seam_open(const Couplings& couplings, const Seam& seam) {
  const auto opened = [&](int b) { return couplings.has_override(b); };
  return std::all_of(seam.severed.begin(), seam.severed.end(), opened) &&
         std::all_of(seam.softened.begin(), seam.softened.end(), opened);
}

}  // namespace

TimeSeries run_qa(const Lattice& lattice, const Couplings& couplings, const QaSchedule& schedule,
                  std::uint64_t seed, int points_per_decade) {
  schedule.validate();
  const int windows = schedule.num_windows();
  Couplings active = couplings;
  active.set_uniform_field(schedule.field(0));
  QmcChain chain(lattice, active, seed, schedule.temperature, schedule.total_mcs(),
                 window_ends(windows, schedule.steps_per_window), points_per_decade);
  for (int w = 0; w < windows; ++w) {
    const double h = schedule.field(w);
    active.set_uniform_field(h);
    chain.set_hamiltonian(active);
    for (int step = 0; step < schedule.steps_per_window; ++step) chain.sweep(h);
  }
  return chain.take();
}

TimeSeries run_qa_h(const Lattice& lattice, const Couplings& couplings, const QahSchedule& schedule,
                    std::uint64_t seed, int points_per_decade) {
  schedule.validate();
  const int windows = schedule.num_windows();
  const int n = lattice.num_sites();

  Rng field_rng(splitmix64(seed ^ 0x5bd1e9955bd1e995ULL));
  std::vector<double> initial(static_cast<std::size_t>(n));
  for (double& h : initial) h = field_rng.uniform() * schedule.site_field_max;

  Couplings active = couplings;
  auto set_fields = [&](int w) {
    const double r = schedule.ramp(w);
    for (int i = 0; i < n; ++i) {
      active.set_field(i, std::max(initial[static_cast<std::size_t>(i)] * r, schedule.h_residual));
    }
  };
  set_fields(0);
  QmcChain chain(lattice, active, seed, schedule.temperature, schedule.total_mcs(),
                 window_ends(windows, schedule.steps_per_window), points_per_decade);
  for (int w = 0; w < windows; ++w) {
    set_fields(w);
    chain.set_hamiltonian(active);
    const double value = schedule.ramp(w) * schedule.site_field_max;
    for (int step = 0; step < schedule.steps_per_window; ++step) chain.sweep(value);
  }
  return chain.take();
}

void apply_cut(Couplings& couplings, const Seam& seam) {
  if (couplings.any_override()) throw std::logic_error("a seam is already open");
  for (int b : seam.severed) couplings.set_override(b, 0.0);
  for (int b : seam.softened) couplings.set_override(b, couplings.jx() / 2.0);
}

void glue_step(Couplings& couplings, const Seam& seam, int ns, int step_index) {
  if (ns < 1 || step_index < 1 || step_index > ns) {
    throw std::out_of_range("glue step index must lie in [1, ns]");
  }
  if (!seam_open(couplings, seam)) throw std::logic_error("glue step on a seam that is not open");
  if (step_index == ns) {
    for (int b : seam.severed) couplings.clear_override(b);
    for (int b : seam.softened) couplings.clear_override(b);
    return;
  }
  // values from the step index, not by accumulation
  const double jx = couplings.jx();
  const double je0 = jx / 2.0;
  const double severed = step_index * (jx / ns);
  const double softened = je0 + step_index * ((couplings.j() - je0) / ns);
  for (int b : seam.severed) couplings.set_override(b, severed);
  for (int b : seam.softened) couplings.set_override(b, softened);
}

TimeSeries run_sqa(const Lattice& lattice, Couplings& couplings, const SqaSchedule& schedule,
                   std::uint64_t seed, int points_per_decade) {
  schedule.validate();
  if (couplings.any_override()) throw std::invalid_argument("SQA needs couplings without open seams");
  const std::vector<Seam> seams = make_seams(lattice, schedule.n_cuts);
  const QaSchedule& qa = schedule.qa;
  const int windows = qa.num_windows();
  const int ns = schedule.glue_steps();
  const std::vector<double> fields(couplings.fields().begin(), couplings.fields().end());

  Couplings pristine = couplings;
  couplings.set_uniform_field(qa.field(0));
  QmcChain chain(lattice, pristine, seed, qa.temperature, schedule.total_mcs(),
                 window_ends(windows, schedule.window_mcs()), points_per_decade);
  for (int w = 0; w < windows; ++w) {
    const double h = qa.field(w);
    couplings.set_uniform_field(h);
    for (const Seam& seam : seams) {
      apply_cut(couplings, seam);
      chain.set_hamiltonian(couplings);
      for (int ig = 1; ig <= ns; ++ig) {
        chain.sweep(h);
        glue_step(couplings, seam, ns, ig);
        chain.set_hamiltonian(couplings);
      }
    }
  }
  for (int i = 0; i < lattice.num_sites(); ++i) couplings.set_field(i, fields[static_cast<std::size_t>(i)]);
  return chain.take();
}

}  // namespace trianneal
