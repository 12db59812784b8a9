#include "tabkit/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>
#include <tuple>

#include "tabkit/plot.hpp"
#include "tabkit/rng.hpp"

namespace tabkit {

const char* kCsvHeader =
    "scenario,kind_param_name,kind_param_value,gamma,method,replicate,seed,"
    "n_q,n_p,k_q,k_p,tau,lambda_q,lambda_p,d,s,accuracy,bayes_agreement,"
    "excess_risk";

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Seed that separates cells; replicate streams derive from it.
std::uint64_t cell_seed(std::uint64_t base, std::size_t gamma_idx, std::size_t grid_idx) {
  return mix64(base ^ mix64((gamma_idx << 32) + grid_idx + 0xce11));
}

}  // namespace

std::string csv_row(const ResultRecord& r) {
  std::ostringstream out;
  out << r.scenario << ',' << r.kind_param_name << ',' << fmt(r.kind_param_value)
      << ',' << fmt(r.gamma) << ',' << r.method << ',' << r.replicate << ',';
  if (r.replicate >= 0) out << r.seed;
  out << ',' << r.n_q << ',' << r.n_p << ',' << fmt(r.k_q) << ',' << fmt(r.k_p)
      << ',' << fmt(r.tau) << ',' << fmt(r.lambda_q) << ',' << fmt(r.lambda_p)
      << ',' << fmt(r.d) << ',' << fmt(r.s) << ',' << fmt(r.accuracy) << ','
      << fmt(r.bayes_agreement) << ',' << fmt(r.excess_risk);
  return out.str();
}

Scenario make_scenario(const ExperimentConfig& config, double gamma, double grid_value) {
  if (config.scenario == "band")
    return Scenario::band_like(gamma, grid_value, config.amp_q);
  if (config.scenario == "flip")
    return Scenario::flipped_sine(gamma, grid_value, config.amp_q, config.amp_p);
  return Scenario::logistic_rotation(config.d, config.s, grid_value,
                                     config.exact_angle);
}

ExperimentCell make_cell(const ExperimentConfig& config, double gamma,
                         double grid_value) {
  ExperimentCell cell;
  cell.scenario = make_scenario(config, gamma, grid_value);
  cell.methods = config.methods;
  cell.n_q = config.n_q;
  cell.n_p = config.n_p;
  cell.n_test = config.n_test;
  cell.knn.k_q = config.k_q;
  cell.knn.k_p = config.k_p;
  cell.knn.tau = config.tau;
  cell.lasso.theory_params = config.theory_params;
  if (config.tau && config.scenario == "logistic") cell.lasso.tau = config.tau;
  return cell;
}

SweepResult run_experiment(const ExperimentConfig& raw, int threads) {
  const ExperimentConfig config = resolve_defaults(raw);

  struct Task {
    std::size_t gamma_idx;
    std::size_t grid_idx;
    int rep;
  };
  std::vector<Task> tasks;
  for (std::size_t gi = 0; gi < config.gammas.size(); ++gi)
    for (std::size_t vi = 0; vi < config.grid.size(); ++vi)
      for (int r = 0; r < config.reps; ++r) tasks.push_back({gi, vi, r});

  std::vector<std::vector<ResultRecord>> slots(tasks.size());
  std::vector<std::string> errors(tasks.size());

  auto work = [&](std::size_t i) {
    const Task& t = tasks[i];
    try {
      const ExperimentCell cell =
          make_cell(config, config.gammas[t.gamma_idx], config.grid[t.grid_idx]);
      slots[i] = run_one_replicate(
          cell, t.rep, cell_seed(config.seed, t.gamma_idx, t.grid_idx));
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << config.scenario << " gamma=" << config.gammas[t.gamma_idx]
          << " value=" << config.grid[t.grid_idx] << " rep=" << t.rep << ": "
          << e.what();
      errors[i] = msg.str();
    }
  };

  if (threads <= 1 || tasks.size() == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int workers = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(threads), tasks.size()));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < tasks.size();
             i = next.fetch_add(1))
          work(i);
      });
    for (auto& t : pool) t.join();
  }

  SweepResult result;
  for (auto& rows : slots)
    for (auto& row : rows) result.detail.push_back(std::move(row));
  for (auto& e : errors)
    if (!e.empty()) result.errors.push_back(std::move(e));

  auto order = [&](const ResultRecord& r) {
    const auto method_pos =
        std::find(config.methods.begin(), config.methods.end(), r.method) -
        config.methods.begin();
    const double gamma_key = std::isnan(r.gamma) ? -1.0 : r.gamma;
    return std::make_tuple(r.scenario, gamma_key, r.kind_param_value, method_pos,
                           r.replicate);
  };
  std::stable_sort(result.detail.begin(), result.detail.end(),
                   [&](const ResultRecord& a, const ResultRecord& b) {
                     return order(a) < order(b);
                   });

  // Summary rows: per (gamma, grid value, method), metric columns hold the
  // replicate means. Parameters that vary per replicate are left empty.
  for (std::size_t i = 0; i < result.detail.size();) {
    std::size_t j = i;
    std::vector<double> acc, agree, excess;
    while (j < result.detail.size() &&
           result.detail[j].method == result.detail[i].method &&
           result.detail[j].kind_param_value == result.detail[i].kind_param_value &&
           !(result.detail[j].gamma < result.detail[i].gamma) &&
           !(result.detail[i].gamma < result.detail[j].gamma)) {
      acc.push_back(result.detail[j].accuracy);
      agree.push_back(result.detail[j].bayes_agreement);
      excess.push_back(result.detail[j].excess_risk);
      ++j;
    }
    ResultRecord sum = result.detail[i];
    sum.replicate = -1;
    sum.seed = 0;
    sum.k_q = sum.k_p = sum.tau = sum.lambda_q = sum.lambda_p =
        std::numeric_limits<double>::quiet_NaN();
    sum.accuracy = summarize(acc).mean;
    sum.bayes_agreement = summarize(agree).mean;
    sum.excess_risk = summarize(excess).mean;
    result.summaries.push_back(std::move(sum));
    i = j;
  }
  return result;
}

std::string to_csv(const SweepResult& result) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : result.detail) out << csv_row(r) << '\n';
  for (const auto& r : result.summaries) out << csv_row(r) << '\n';
  return out.str();
}

std::string write_outputs(const SweepResult& result, const ExperimentConfig& config,
                          const std::string& csv_path) {
  const std::string text = to_csv(result);
  std::ofstream out(csv_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write output file: " + csv_path);
  out << text;
  out.close();

  const std::string stem = csv_path.size() > 4 &&
                                   csv_path.substr(csv_path.size() - 4) == ".csv"
                               ? csv_path.substr(0, csv_path.size() - 4)
                               : csv_path;
  const ExperimentConfig resolved = resolve_defaults(config);
  write_plot_script(result, resolved, stem + "_plot.py", csv_path);
  write_svg_chart(result, resolved, stem + ".svg");
  return text;
}

}  // namespace tabkit
