// Copyright 2026 The qpair Authors
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

#include "qpair/runner/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <thread>

#include "json.hpp"
#include "qpair/errors.hpp"
#include "qpair/runner/csv.hpp"
#include "qpair/tolerances.hpp"

namespace qpair::runner {

using ordered_json = nlohmann::ordered_json;

namespace {

struct JobResult {
  std::vector<std::pair<std::string, CsvTable>> tables;
  ordered_json headline = ordered_json::object();
  std::vector<Assertion> assertions;
  // Scalars the scenario finalizer aggregates across jobs.
  std::vector<double> values;
};

using Job = std::function<JobResult()>;

struct Plan {
  std::vector<Job> jobs;
  // Cross-job tables and assertions, run by the collector after every job.
  std::function<JobResult(const std::vector<JobResult>&)> finish;
};

Assertion check(std::string name, double value, double threshold, std::string cmp) {
  Assertion a{std::move(name), value, threshold, std::move(cmp), false};
  if (a.comparison == "<=") {
    a.pass = value <= threshold;
  } else if (a.comparison == ">=") {
    a.pass = value >= threshold;
  } else if (a.comparison == "<") {
    a.pass = value < threshold;
  } else if (a.comparison == "==") {
    a.pass = value == threshold;
  }
  return a;
}

// value = smallest successive step, pass when every step is strictly positive.
Assertion increasing(std::string name, const std::vector<double>& xs) {
  double step = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < xs.size(); ++i) step = std::min(step, xs[i] - xs[i - 1]);
  Assertion a{std::move(name), xs.size() < 2 ? 0.0 : step, 0.0, "increasing", false};
  a.pass = xs.size() >= 2 && step > 0.0;
  return a;
}

CsvTable metrics_table(const EvolutionResult& run, const std::vector<std::string>& mode_ids) {
  std::vector<std::string> header{"time", "fidelity", "coherence_offdiag", "dfs_leakage"};
  for (const auto& id : mode_ids) header.push_back("top_fock_pop_" + id);
  CsvTable table(std::move(header));
  for (const auto& m : run.metrics) {
    std::vector<double> row{m.time, m.fidelity, m.coherence, m.leakage};
    row.insert(row.end(), m.top_fock_population.begin(), m.top_fock_population.end());
    table.add_row(row);
  }
  return table;
}

bool any_coupling(const BathSpec& bath) {
  return std::any_of(bath.coupling.begin(), bath.coupling.end(),
                     [](const auto& kv) { return kv.second != 0.0; });
}

std::string indexed(const std::string& prefix, const char* tag, std::size_t i, std::size_t n) {
  if (n <= 1) return prefix;
  return prefix + "_" + tag + std::to_string(i);
}

StorageConfig storage_config(const ExperimentConfig& cfg, const ResolvedBath& bath, double eps) {
  StorageConfig st;
  st.pairs = cfg.pairs;
  st.noise = cfg.noise;
  st.bath = bath.spec;
  st.bath_init = cfg.bath_init;
  st.logical = resolve_logical(cfg);
  st.times = cfg.times.points();
  st.asymmetry = AsymmetryKnob{eps};
  return st;
}

// Encoded and bare tables plus the storage headline. values = {encoded max
// infidelity, encoded max leakage, bare max infidelity}.
JobResult storage_job(const ExperimentConfig& cfg, const ResolvedBath& bath, double eps,
                      const std::string& stem) {
  const StorageResult r = run_storage_experiment(storage_config(cfg, bath, eps));
  JobResult out;
  out.tables.emplace_back(stem + "_encoded.csv", metrics_table(r.encoded, bath.mode_ids));
  out.tables.emplace_back(stem + "_bare.csv", metrics_table(r.bare, bath.mode_ids));
  const double top = std::max(r.encoded.max_top_fock_population(), r.bare.max_top_fock_population());
  out.headline["epsilon"] = eps;
  out.headline["encoded_min_fidelity"] = r.encoded.min_fidelity();
  out.headline["encoded_max_leakage"] = r.encoded.max_leakage();
  out.headline["bare_min_fidelity"] = r.bare.min_fidelity();
  out.headline["max_top_fock_population"] = top;
  out.headline["truncation_flagged"] = top > tol::kTruncationFlag;
  if (eps == 0.0) {
    out.assertions.push_back(check(stem + ": encoded fidelity", r.encoded.min_fidelity(),
                                   1.0 - tol::kStorageFidelity, ">="));
    out.assertions.push_back(
        check(stem + ": encoded leakage", r.encoded.max_leakage(), tol::kDecodeLeakage, "<="));
  }
  out.values = {r.encoded.max_infidelity(), r.encoded.max_leakage(), r.bare.max_infidelity()};
  return out;
}

Plan plan_storage(const ExperimentConfig& cfg) {
  Plan plan;
  auto bath = std::make_shared<ResolvedBath>(resolve_bath(cfg.modes, cfg.pairs));
  const auto n = cfg.epsilon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double eps = cfg.epsilon[i];
    const std::string stem = indexed(cfg.prefix(), "eps", i, n);
    plan.jobs.emplace_back([cfg, bath, eps, stem] { return storage_job(cfg, *bath, eps, stem); });
  }
  plan.finish = [cfg, bath](const std::vector<JobResult>& results) {
    JobResult out;
    // The bare qubit must visibly decohere whenever the bath is coupled.
    if (any_coupling(bath->spec)) {
      double bare_min = 1.0;
      for (const auto& r : results) bare_min = std::min(bare_min, 1.0 - r.values[2]);
      out.assertions.push_back(
          check("bare fidelity drops", bare_min, tol::kBareFidelityCeiling, "<"));
    }
    return out;
  };
  return plan;
}

Plan plan_asymmetry(const ExperimentConfig& cfg) {
  Plan plan = plan_storage(cfg);
  plan.finish = [cfg](const std::vector<JobResult>& results) {
    JobResult out;
    CsvTable table({"epsilon", "encoded_max_infidelity", "encoded_max_leakage",
                    "bare_max_infidelity"});
    std::vector<double> infid;
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& v = results[i].values;
      table.add_row({cfg.epsilon[i], v[0], v[1], v[2]});
      infid.push_back(v[0]);
    }
    out.tables.emplace_back(cfg.prefix() + "_sweep.csv", std::move(table));
    out.assertions.push_back(increasing("encoded infidelity increases with epsilon", infid));
    return out;
  };
  return plan;
}

Plan plan_gate(const ExperimentConfig& cfg) {
  Plan plan;
  auto bath = std::make_shared<ResolvedBath>(resolve_bath(cfg.modes, cfg.pairs));
  const GateParams params = resolve_gate(cfg);
  const auto n = cfg.epsilon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double eps = cfg.epsilon[i];
    const std::string stem = indexed(cfg.prefix(), "eps", i, n);
    plan.jobs.emplace_back([cfg, bath, eps, stem, params] {
      GateConfig gc;
      gc.storage = storage_config(cfg, *bath, eps);
      gc.params = params;
      const GateResult r = run_gate_experiment(gc);
      JobResult out;
      out.tables.emplace_back(stem + ".csv", metrics_table(r.run, bath->mode_ids));
      out.headline["epsilon"] = eps;
      out.headline["gate"] = {{"alpha", params.alpha}, {"theta", params.theta_gate},
                              {"phi", params.phi}};
      out.headline["reference_fidelity"] = r.reference_fidelity;
      out.headline["logical_fidelity"] = r.logical_fidelity;
      out.headline["dfs_leakage"] = r.leakage;
      out.headline["logical_action_error"] = r.logical_action_error;
      out.headline["branch_ambiguous"] = r.branch_ambiguous;
      const double top = r.run.max_top_fock_population();
      out.headline["max_top_fock_population"] = top;
      out.headline["truncation_flagged"] = top > tol::kTruncationFlag;
      out.assertions.push_back(check(stem + ": logical action error", r.logical_action_error,
                                     tol::kLogicalAction, "<="));
      if (eps == 0.0) {
        out.assertions.push_back(check(stem + ": logical fidelity", r.logical_fidelity,
                                       1.0 - tol::kGateFidelity, ">="));
        out.assertions.push_back(
            check(stem + ": dfs leakage", r.leakage, tol::kGateLeakage, "<="));
      }
      out.values = {1.0 - r.logical_fidelity};
      return out;
    });
  }
  return plan;
}

Plan plan_efficiency(const ExperimentConfig& cfg) {
  Plan plan;
  plan.jobs.emplace_back([cfg] {
    JobResult out;
    CsvTable table({"m", "dim", "eta_exact", "eta_approx"});
    for (int m = 1; m <= cfg.efficiency_m_max; ++m) {
      const Efficiency e = efficiency(m);
      const std::string dim = m <= 33 ? std::to_string(central_binomial(m))
                                      : format_double(std::exp2(log2_central_binomial(m)));
      table.add_row(std::vector<std::string>{std::to_string(m), dim, format_double(e.eta_exact),
                                             format_double(e.eta_approx)});
    }
    out.tables.emplace_back(cfg.prefix() + ".csv", std::move(table));
    const double eta1 = efficiency(1).eta_exact;
    const Efficiency far = efficiency(tol::kStirlingCheckM);
    const double gap = std::abs(far.eta_exact - far.eta_approx);
    out.headline["eta_exact_m1"] = eta1;
    out.headline["stirling_gap_m" + std::to_string(tol::kStirlingCheckM)] = gap;
    out.assertions.push_back(check("eta_exact(1)", eta1, 0.5, "=="));
    out.assertions.push_back(check("stirling gap at m = " + std::to_string(tol::kStirlingCheckM),
                                   gap, tol::kStirlingGap, "<="));
    return out;
  });
  return plan;
}

// Applies a single-qubit operator to every column of `states` (qubit 0 most
// significant), avoiding the 2^n x 2^n embedding.
Matrix apply_on_qubit(const Matrix& states, const Matrix& op, int qubit, int n) {
  const Index stride = Index{1} << (n - 1 - qubit);
  Matrix out(states.rows(), states.cols());
  for (Index r = 0; r < states.rows(); ++r) {
    const Index bit = (r / stride) & 1;
    const Index r0 = r - bit * stride;
    out.row(r) = op(bit, 0) * states.row(r0) + op(bit, 1) * states.row(r0 + stride);
  }
  return out;
}

Plan plan_subspace(const ExperimentConfig& cfg) {
  Plan plan;
  for (int m : cfg.subspace_m) {
    plan.jobs.emplace_back([cfg, m] {
      const NoiseVector& nv = cfg.noise.noise;
      const DfsSubspace sub = coherence_preserving_subspace(nv, m);
      const Matrix s = build_s(nv);
      Matrix applied = Matrix::Zero(sub.basis.rows(), sub.basis.cols());
      for (int q = 0; q < 2 * m; ++q) applied += apply_on_qubit(sub.basis, s, q, 2 * m);
      const double residual = max_abs(applied - sub.eigenvalue * sub.basis);
      const Index d = sub.basis.cols();
      const double ortho = max_abs(sub.basis.adjoint() * sub.basis - identity(d));
      JobResult out;
      out.values = {static_cast<double>(m), static_cast<double>(d),
                    static_cast<double>(central_binomial(m)), residual, ortho};
      out.assertions.push_back(check("m = " + std::to_string(m) + ": dimension",
                                     static_cast<double>(d),
                                     static_cast<double>(central_binomial(m)), "=="));
      out.assertions.push_back(check("m = " + std::to_string(m) + ": eigenvalue residual",
                                     residual, tol::kSubspaceResidual, "<="));
      return out;
    });
  }
  plan.finish = [cfg](const std::vector<JobResult>& results) {
    JobResult out;
    CsvTable table({"m", "dim", "expected_dim", "residual", "orthonormality"});
    ordered_json dims = ordered_json::array();
    for (const auto& r : results) {
      table.add_row(std::vector<std::string>{
          std::to_string(static_cast<int>(r.values[0])),
          std::to_string(static_cast<long long>(r.values[1])),
          std::to_string(static_cast<long long>(r.values[2])), format_double(r.values[3]),
          format_double(r.values[4])});
      dims.push_back(static_cast<long long>(r.values[1]));
    }
    out.tables.emplace_back(cfg.prefix() + ".csv", std::move(table));
    out.headline["dims"] = dims;
    return out;
  };
  return plan;
}

// Each pair couples to modes_per_pair modes; `shared` of them are common to
// all pairs and the rest are private.
std::vector<ModeEntry> collectivity_modes(const CollectivitySpec& c, int pairs, int shared) {
  std::vector<ModeEntry> modes;
  for (int k = 0; k < shared; ++k) {
    modes.push_back({"s" + std::to_string(k), c.frequency, c.cutoff, c.g, {}});
  }
  for (int l = 0; l < pairs; ++l) {
    for (int k = shared; k < c.modes_per_pair; ++k) {
      modes.push_back(
          {"p" + std::to_string(l) + "m" + std::to_string(k), c.frequency, c.cutoff, c.g, {l}});
    }
  }
  return modes;
}

int shared_count(const CollectivitySpec& c, double fraction) {
  return static_cast<int>(std::lround(fraction * c.modes_per_pair));
}

Plan plan_collectivity(const ExperimentConfig& cfg) {
  Plan plan;
  const auto& c = cfg.collectivity;
  const double eps = cfg.epsilon.front();
  const auto n = c.fractions.size();
  for (std::size_t i = 0; i < n; ++i) {
    const int shared = shared_count(c, c.fractions[i]);
    const std::string stem = cfg.prefix() + "_f" + std::to_string(i);
    plan.jobs.emplace_back([cfg, shared, eps, stem] {
      const auto modes = collectivity_modes(cfg.collectivity, cfg.pairs, shared);
      const ResolvedBath bath = resolve_bath(modes, cfg.pairs);
      JobResult out = storage_job(cfg, bath, eps, stem);
      out.headline["shared_modes"] = shared;
      out.headline["total_modes"] = static_cast<int>(bath.mode_ids.size());
      out.values.push_back(static_cast<double>(shared));
      out.values.push_back(static_cast<double>(bath.mode_ids.size()));
      return out;
    });
  }
  plan.finish = [cfg](const std::vector<JobResult>& results) {
    JobResult out;
    CsvTable table({"fraction", "shared_modes", "total_modes", "encoded_max_infidelity",
                    "encoded_max_leakage", "bare_max_infidelity"});
    for (std::size_t i = 0; i < results.size(); ++i) {
      const auto& v = results[i].values;
      table.add_row({cfg.collectivity.fractions[i], v[3], v[4], v[0], v[1], v[2]});
    }
    out.tables.emplace_back(cfg.prefix() + "_sweep.csv", std::move(table));
    return out;
  };
  return plan;
}

Plan make_plan(const ExperimentConfig& cfg) {
  switch (cfg.scenario) {
    case Scenario::storage:
      return plan_storage(cfg);
    case Scenario::gate:
      return plan_gate(cfg);
    case Scenario::efficiency_table:
      return plan_efficiency(cfg);
    case Scenario::subspace_dims:
      return plan_subspace(cfg);
    case Scenario::collectivity_sweep:
      return plan_collectivity(cfg);
    case Scenario::asymmetry_sweep:
      return plan_asymmetry(cfg);
  }
  throw std::logic_error("unhandled scenario");
}

// Runs jobs on up to `workers` threads and hands each result to `collect`
// in job order as soon as it and all earlier ones are done. Stops handing
// out work after the first failure and rethrows it.
void run_ordered(const std::vector<Job>& jobs, int workers,
                 const std::function<void(std::size_t, JobResult&&)>& collect) {
  const std::size_t n = jobs.size();
  std::vector<std::optional<JobResult>> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::vector<bool> done(n, false);
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};

  auto worker = [&] {
    for (;;) {
      // A claimed job always runs to completion so the collector never waits
      // on an index nobody owns.
      if (stop.load()) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      std::optional<JobResult> r;
      std::exception_ptr err;
      try {
        r = jobs[i]();
      } catch (...) {
        err = std::current_exception();
        stop = true;
      }
      {
        std::lock_guard<std::mutex> lock(mu);
        results[i] = std::move(r);
        errors[i] = err;
        done[i] = true;
      }
      cv.notify_all();
    }
  };

  const int threads = std::max(1, std::min<int>(workers, static_cast<int>(n)));
  std::vector<std::thread> pool;
  if (threads > 1) {
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::exception_ptr failure;
  for (std::size_t i = 0; i < n && !failure; ++i) {
    if (threads == 1) {
      try {
        results[i] = jobs[i]();
      } catch (...) {
        failure = std::current_exception();
        break;
      }
    } else {
      std::unique_lock<std::mutex> lock(mu);
      cv.wait(lock, [&] { return done[i]; });
      if (errors[i]) {
        failure = errors[i];
        break;
      }
    }
    try {
      collect(i, std::move(*results[i]));
    } catch (...) {
      failure = std::current_exception();
      stop = true;
    }
  }
  stop = true;
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

ordered_json assertion_json(const Assertion& a) {
  ordered_json j;
  j["name"] = a.name;
  j["value"] = a.value;
  j["threshold"] = a.threshold;
  j["comparison"] = a.comparison;
  j["pass"] = a.pass;
  return j;
}

}  // namespace

int ScenarioOutcome::exit_code() const noexcept {
  if (!error.empty()) return 2;
  return passed ? 0 : 1;
}

ScenarioOutcome run_scenario(ExperimentConfig cfg, const RunOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  if (options.seed) cfg.seed = *options.seed;
  const std::filesystem::path dir = options.out_dir ? *options.out_dir : std::filesystem::path(cfg.output.dir);

  ScenarioOutcome outcome;
  ordered_json headline = ordered_json::object();
  ordered_json runs = ordered_json::array();
  std::vector<JobResult> collected;

  auto emit = [&](JobResult& r) {
    for (const auto& [name, table] : r.tables) {
      const auto path = dir / name;
      table.write(path);
      outcome.files.push_back(path);
    }
    outcome.assertions.insert(outcome.assertions.end(), r.assertions.begin(), r.assertions.end());
  };

  try {
    const auto problems = validate_config(cfg);
    if (!problems.empty()) throw ConfigError(problems);
    Plan plan = make_plan(cfg);
    collected.reserve(plan.jobs.size());
    run_ordered(plan.jobs, options.workers, [&](std::size_t, JobResult&& r) {
      emit(r);
      if (!r.headline.empty()) runs.push_back(r.headline);
      collected.push_back(std::move(r));
    });
    if (plan.finish) {
      JobResult fin = plan.finish(collected);
      emit(fin);
      for (auto& [k, v] : fin.headline.items()) headline[k] = v;
    }
  } catch (const std::exception& e) {
    outcome.error = e.what();
    outcome.partial = !outcome.files.empty();
  }

  if (runs.size() == 1) {
    for (auto& [k, v] : runs[0].items()) headline[k] = v;
  } else if (!runs.empty()) {
    headline["runs"] = runs;
  }

  outcome.passed = outcome.error.empty() &&
                   std::all_of(outcome.assertions.begin(), outcome.assertions.end(),
                               [](const Assertion& a) { return a.pass; });

  if (options.write_summary) {
    ordered_json summary;
    summary["scenario"] = std::string(to_string(cfg.scenario));
    summary["config"] = ordered_json::parse(config_to_json(cfg));
    summary["headline"] = headline;
    ordered_json asserts = ordered_json::array();
    for (const auto& a : outcome.assertions) asserts.push_back(assertion_json(a));
    summary["assertions"] = asserts;
    summary["pass"] = outcome.passed;
    ordered_json outputs = ordered_json::array();
    for (const auto& f : outcome.files) outputs.push_back(f.filename().string());
    summary["outputs"] = outputs;
    summary["partial"] = outcome.partial;
    summary["error"] = outcome.error.empty() ? ordered_json(nullptr) : ordered_json(outcome.error);
    summary["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    const auto path = dir / (cfg.prefix() + "_summary.json");
    try {
      write_text(path, summary.dump(2) + "\n");
      outcome.summary = path;
    } catch (const std::exception& e) {
      if (outcome.error.empty()) outcome.error = e.what();
      outcome.passed = false;
    }
  }
  return outcome;
}

}  // namespace qpair::runner
