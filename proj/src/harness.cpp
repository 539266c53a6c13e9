#include "trianneal/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "trianneal/anneal.hpp"
#include "trianneal/classical_mc.hpp"
#include "trianneal/lattice.hpp"
#include "trianneal/model.hpp"
#include "trianneal/oracle.hpp"
#include "trianneal/rng.hpp"
#include "trianneal/sse.hpp"

#ifndef TRIANNEAL_VERSION
#define TRIANNEAL_VERSION "0.0.0"
#endif
#ifndef TRIANNEAL_GIT_REVISION
#define TRIANNEAL_GIT_REVISION "unknown"
#endif

namespace trianneal {

namespace fs = std::filesystem;

std::string to_string(Method method) {
  switch (method) {
    case Method::Ta:
      return "ta";
    case Method::Qa:
      return "qa";
    case Method::QaH:
      return "qa-h";
    case Method::Sqa:
      return "sqa";
  }
  return "?";
}

Method parse_method(const std::string& text) {
  if (text == "ta") return Method::Ta;
  if (text == "qa") return Method::Qa;
  if (text == "qa-h" || text == "qah") return Method::QaH;
  if (text == "sqa") return Method::Sqa;
  throw std::invalid_argument("unknown method '" + text + "' (expected ta, qa, qa-h or sqa)");
}

std::string code_version() { return std::string(TRIANNEAL_VERSION) + "+" + TRIANNEAL_GIT_REVISION; }

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T out{};
  in >> out;
  if (in.fail() || !in.eof()) throw std::invalid_argument("bad value for '" + key + "': " + value);
  return out;
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

TaSchedule ta_schedule(const ExperimentSpec& spec) {
  return {spec.t_max, spec.t_min, spec.dt, spec.steps_per_window};
}

QaSchedule qa_schedule(const ExperimentSpec& spec) {
  return {spec.h_max, spec.dh, spec.temperature, spec.steps_per_window, kResidualFieldFactor * spec.j};
}

QahSchedule qah_schedule(const ExperimentSpec& spec) {
  QahSchedule s;
  s.site_field_max = spec.h_site_max;
  s.intervals = qa_schedule(spec).num_windows() - 1;
  s.temperature = spec.temperature;
  s.steps_per_window = spec.steps_per_window;
  s.h_residual = kResidualFieldFactor * spec.j;
  return s;
}

SqaSchedule sqa_schedule(const ExperimentSpec& spec) { return {qa_schedule(spec), spec.n_cuts}; }

}  // namespace

void ExperimentSpec::validate() const {
  const Lattice lattice(lx, ly);  // throws on bad sizes
  if (j < 0.0 || jx < 0.0) throw std::invalid_argument("couplings must be non-negative");
  if (chains < 1) throw std::invalid_argument("chains must be >= 1");
  if (points_per_decade < 1) throw std::invalid_argument("points_per_decade must be >= 1");
  if (threads < 0) throw std::invalid_argument("threads must be >= 0");
  switch (method) {
    case Method::Ta:
      ta_schedule(*this).validate();
      break;
    case Method::Qa:
      qa_schedule(*this).validate();
      break;
    case Method::QaH:
      qa_schedule(*this).validate();
      qah_schedule(*this).validate();
      break;
    case Method::Sqa:
      sqa_schedule(*this).validate();
      make_seams(lattice, n_cuts);
      break;
  }
}

std::string ExperimentSpec::label() const {
  return method == Method::Sqa ? "sqa-" + std::to_string(n_cuts) : to_string(method);
}

std::int64_t ExperimentSpec::total_mcs() const {
  switch (method) {
    case Method::Ta:
      return ta_schedule(*this).total_mcs();
    case Method::Qa:
      return qa_schedule(*this).total_mcs();
    case Method::QaH:
      return qah_schedule(*this).total_mcs();
    case Method::Sqa:
      return sqa_schedule(*this).total_mcs();
  }
  return 0;
}

void apply_setting(ExperimentSpec& spec, const std::string& key, const std::string& value) {
  if (key == "method") {
    spec.method = parse_method(value);
  } else if (key == "lx") {
    spec.lx = parse_number<int>(key, value);
  } else if (key == "ly") {
    spec.ly = parse_number<int>(key, value);
  } else if (key == "j") {
    spec.j = parse_number<double>(key, value);
  } else if (key == "jx") {
    spec.jx = parse_number<double>(key, value);
  } else if (key == "chains") {
    spec.chains = parse_number<int>(key, value);
  } else if (key == "steps_per_window") {
    spec.steps_per_window = parse_number<int>(key, value);
  } else if (key == "n_cuts") {
    spec.n_cuts = parse_number<int>(key, value);
  } else if (key == "seed") {
    spec.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "out") {
    spec.out_dir = value;
  } else if (key == "t_max") {
    spec.t_max = parse_number<double>(key, value);
  } else if (key == "t_min") {
    spec.t_min = parse_number<double>(key, value);
  } else if (key == "dt") {
    spec.dt = parse_number<double>(key, value);
  } else if (key == "h_max") {
    spec.h_max = parse_number<double>(key, value);
  } else if (key == "dh") {
    spec.dh = parse_number<double>(key, value);
  } else if (key == "temperature") {
    spec.temperature = parse_number<double>(key, value);
  } else if (key == "h_site_max") {
    spec.h_site_max = parse_number<double>(key, value);
  } else if (key == "points_per_decade") {
    spec.points_per_decade = parse_number<int>(key, value);
  } else if (key == "threads") {
    spec.threads = parse_number<int>(key, value);
  } else {
    throw std::invalid_argument("unknown setting '" + key + "'");
  }
}

ExperimentSpec parse_config(std::istream& in, ExperimentSpec spec) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(number) + ": expected key=value");
    }
    apply_setting(spec, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return spec;
}

ExperimentSpec load_config(const fs::path& path, ExperimentSpec spec) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  return parse_config(in, std::move(spec));
}

TimeSeries run_chain(const ExperimentSpec& spec, int chain) {
  const Lattice lattice(spec.lx, spec.ly);
  Couplings couplings(lattice, spec.j, spec.jx);
  const std::uint64_t seed = chain_seed(spec.seed, static_cast<std::uint64_t>(chain));
  switch (spec.method) {
    case Method::Ta:
      return run_ta(lattice, couplings, ta_schedule(spec), seed, spec.points_per_decade);
    case Method::Qa:
      return run_qa(lattice, couplings, qa_schedule(spec), seed, spec.points_per_decade);
    case Method::QaH:
      return run_qa_h(lattice, couplings, qah_schedule(spec), seed, spec.points_per_decade);
    case Method::Sqa:
      return run_sqa(lattice, couplings, sqa_schedule(spec), seed, spec.points_per_decade);
  }
  throw std::logic_error("unhandled method");
}

std::vector<TimeSeries> run_chains(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<TimeSeries> results(static_cast<std::size_t>(spec.chains));
  int workers = spec.threads > 0 ? spec.threads : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, spec.chains);

  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (int k = next++; k < spec.chains; k = next++) {
      try {
        results[static_cast<std::size_t>(k)] = run_chain(spec, k);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

std::vector<AggregateRow> aggregate(const std::vector<TimeSeries>& chains, int lx) {
  if (chains.empty()) throw std::invalid_argument("nothing to aggregate");
  const std::size_t points = chains.front().samples.size();
  for (const TimeSeries& s : chains) {
    if (s.samples.size() != points) throw std::invalid_argument("chains have different sample grids");
  }
  const int bins = lx / 2 + 1;
  const auto count = static_cast<double>(chains.size());
  std::vector<AggregateRow> rows(points);
  for (std::size_t i = 0; i < points; ++i) {
    AggregateRow& row = rows[i];
    row.mcs = chains.front().samples[i].mcs;
    row.p_sector.assign(static_cast<std::size_t>(bins), 0.0);
    double sum = 0.0;
    for (const TimeSeries& s : chains) {
      const Sample& sample = s.samples[i];
      if (sample.mcs != row.mcs) throw std::invalid_argument("chains have different sample grids");
      sum += sample.energy;
      if (sample.sector.is_defined() && sample.sector.domain_walls / 2 < bins) {
        row.p_sector[static_cast<std::size_t>(sample.sector.domain_walls / 2)] += 1.0;
      } else {
        row.p_undefined += 1.0;
      }
    }
    row.mean_energy = sum / count;
    if (chains.size() > 1) {
      double var = 0.0;
      for (const TimeSeries& s : chains) {
        const double d = s.samples[i].energy - row.mean_energy;
        var += d * d;
      }
      var /= (count - 1.0);
      row.stderr_energy = std::sqrt(var / count);
    }
    for (double& p : row.p_sector) p /= count;
    row.p_undefined /= count;
  }
  return rows;
}

void write_chain_csv(std::ostream& out, const std::string& method, int chain, const TimeSeries& series) {
  out << "method,chain,mcs,window_value,energy,spinons,sector\n";
  for (const Sample& s : series.samples) {
    out << method << ',' << chain << ',' << s.mcs << ',' << fmt_double(s.window_value) << ','
        << fmt_double(s.energy) << ',' << s.spinons << ',' << s.sector.to_string() << '\n';
  }
}

void write_aggregate_csv(std::ostream& out, const std::vector<AggregateRow>& rows, int lx) {
  out << "mcs,mean_energy,stderr_energy";
  for (int nd = 0; nd <= lx; nd += 2) out << ",p_sector_" << nd;
  out << ",p_undefined\n";
  for (const AggregateRow& row : rows) {
    out << row.mcs << ',' << fmt_double(row.mean_energy) << ',' << fmt_double(row.stderr_energy);
    for (double p : row.p_sector) out << ',' << fmt_double(p);
    out << ',' << fmt_double(row.p_undefined) << '\n';
  }
}

TimeSeries read_chain_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "method,chain,mcs,window_value,energy,spinons,sector") {
    throw std::invalid_argument("not a chain CSV (header mismatch)");
  }
  TimeSeries series;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream row(line);
    for (std::string f; std::getline(row, f, ',');) fields.push_back(f);
    if (fields.size() != 7) throw std::invalid_argument("chain CSV row has wrong field count: " + line);
    Sample s;
    s.mcs = std::stoll(fields[2]);
    s.window_value = std::stod(fields[3]);
    s.energy = std::stod(fields[4]);
    s.spinons = std::stoi(fields[5]);
    s.sector = SectorLabel::parse(fields[6]);
    series.samples.push_back(s);
  }
  return series;
}

RunSummary run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const fs::path out_dir(spec.out_dir);
  fs::create_directories(out_dir);

  const auto wall_start = std::chrono::steady_clock::now();
  const std::time_t started = std::time(nullptr);
  const std::vector<TimeSeries> chains = run_chains(spec);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();

  const std::string label = spec.label();
  for (int k = 0; k < spec.chains; ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "chain_%03d.csv", k);
    std::ofstream out(out_dir / name);
    write_chain_csv(out, label, k, chains[static_cast<std::size_t>(k)]);
    if (!out) throw std::runtime_error("failed writing " + (out_dir / name).string());
  }

  RunSummary summary;
  summary.out_dir = out_dir;
  summary.rows = aggregate(chains, spec.lx);
  summary.wall_seconds = wall;
  {
    std::ofstream out(out_dir / "aggregate.csv");
    write_aggregate_csv(out, summary.rows, spec.lx);
    if (!out) throw std::runtime_error("failed writing aggregate.csv");
  }

  nlohmann::ordered_json manifest;
  manifest["code_version"] = code_version();
  manifest["method"] = to_string(spec.method);
  manifest["label"] = label;
  manifest["lx"] = spec.lx;
  manifest["ly"] = spec.ly;
  manifest["j"] = spec.j;
  manifest["jx"] = spec.jx;
  manifest["chains"] = spec.chains;
  manifest["steps_per_window"] = spec.steps_per_window;
  manifest["n_cuts"] = spec.n_cuts;
  manifest["seed"] = spec.seed;
  manifest["t_max"] = spec.t_max;
  manifest["t_min"] = spec.t_min;
  manifest["dt"] = spec.dt;
  manifest["h_max"] = spec.h_max;
  manifest["dh"] = spec.dh;
  manifest["temperature"] = spec.temperature;
  manifest["h_site_max"] = spec.h_site_max;
  manifest["h_residual"] = kResidualFieldFactor * spec.j;
  manifest["points_per_decade"] = spec.points_per_decade;
  manifest["total_mcs_per_chain"] = spec.total_mcs();
  manifest["mcs_convention"] = "classical: N flip attempts; QMC: one diagonal + one cluster pass";
  std::vector<std::uint64_t> seeds;
  for (int k = 0; k < spec.chains; ++k) seeds.push_back(chain_seed(spec.seed, static_cast<std::uint64_t>(k)));
  manifest["chain_seeds"] = seeds;
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&started));
  manifest["started_at"] = stamp;
  manifest["wall_clock_seconds"] = wall;
  {
    std::ofstream out(out_dir / "manifest.json");
    out << manifest.dump(2) << '\n';
    if (!out) throw std::runtime_error("failed writing manifest.json");
  }
  return summary;
}

bool VerifyReport::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
}

VerifyReport verify(const VerifyOptions& options) {
  VerifyReport report;

  {
    const Lattice lattice(6, 6);
    Couplings couplings(lattice, options.j, options.jx);
    if (options.corrupt_coupling) couplings.set_override(0, options.jx + 0.5);
    const double expected = lattice.num_sites() * options.jx - 2.0 * lattice.num_sites() * options.j;
    const double e = energy(stripe_config(lattice), couplings, lattice);
    VerifyCheck c{"stripe energy 6x6", std::abs(e - expected) <= 1e-12, {}};
    c.detail = "E = " + fmt_double(e) + ", expected " + fmt_double(expected);
    report.checks.push_back(c);
  }

  {
    const Lattice lattice(4, 4);
    const Couplings couplings(lattice, options.j, options.jx);
    const EnumerationReport r = enumerate_classical(lattice, couplings);
    const double stripe = energy(stripe_config(lattice), couplings, lattice);
    const bool ok = options.jx < options.j ? std::abs(r.ground_energy - stripe) <= 1e-9 && r.degeneracy == 2
                                           : r.ground_energy <= stripe + 1e-9;
    report.checks.push_back({"enumeration 4x4 ground state", ok,
                             "E0 = " + fmt_double(r.ground_energy) + ", degeneracy " +
                                 std::to_string(r.degeneracy) + ", stripe " + fmt_double(stripe)});
  }

  {
    const Lattice lattice(4, 4);
    const Couplings couplings(lattice, options.j, options.jx);
    constexpr double kT = 2.0;
    const auto exact = exact_boltzmann(lattice, couplings, kT);
    const auto sampled = empirical_distribution(lattice, couplings, kT, 20'000'000, 1'000'000, options.seed);
    double tv = 0.0;
    for (std::size_t c = 0; c < exact.size(); ++c) tv += std::abs(exact[c] - sampled[c]);
    tv *= 0.5;
    report.checks.push_back({"metropolis stationarity 4x4 T=2", tv < 0.03, "TV distance " + fmt_double(tv)});
  }

  {
    const Lattice lattice(3, 4);
    Couplings couplings(lattice, options.j, options.jx);
    couplings.set_uniform_field(1.5);
    constexpr double kT = 0.5;
    const double exact = exact_quantum_energy(lattice, couplings, kT);
    const SseMeasurement m = measure_thermal(lattice, couplings, kT, 400'000, 20'000, options.seed);
    const double dev = std::abs(m.energy - exact);
    report.checks.push_back({"SSE energy 3x4 h=1.5 T=0.5", dev < 4.0 * m.energy_error,
                             "E_sse = " + fmt_double(m.energy) + " +- " + fmt_double(m.energy_error) +
                                 ", exact " + fmt_double(exact)});
  }
  return report;
}

}  // namespace trianneal
