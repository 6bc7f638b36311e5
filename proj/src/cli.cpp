#include "cgl/cli.hpp"

#include "cgl/format.hpp"
#include "cgl/lawcheck.hpp"
#include "cgl/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace cgl::cli {

namespace {

std::string records_csv(const std::vector<EnergyRecord>& records) {
  std::ostringstream os;
  os << "t,l2_sq,phi,psi_q,psi_r,dphi_l2,dpsi_q_l2,combined\n";
  for (const auto& r : records)
    os << format_double(r.t) << ',' << format_double(r.l2_sq) << ','
       << format_double(r.phi) << ',' << format_double(r.psi_q) << ','
       << format_double(r.psi_r) << ',' << format_double(r.dphi_l2) << ','
       << format_double(r.dpsi_q_l2) << ',' << format_double(r.combined) << '\n';
  return os.str();
}

bool write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << text;
  return static_cast<bool>(out);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

/// Sup over matched times of the L2 difference between two trajectories.
double sup_l2_difference(const RunResult& a, const RunResult& b, const Grid& g) {
  double sup = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.trajectory.size() && j < b.trajectory.size()) {
    const double ta = a.trajectory[i].t, tb = b.trajectory[j].t;
    const double tol = 1e-9 * std::max(1.0, std::max(std::abs(ta), std::abs(tb)));
    if (std::abs(ta - tb) <= tol) {
      sup = std::max(sup, l2_norm(a.trajectory[i].U - b.trajectory[j].U, g));
      ++i;
      ++j;
    } else if (ta < tb) {
      ++i;
    } else {
      ++j;
    }
  }
  return sup;
}

int sweep_workers() {
  if (const char* env = std::getenv("CGL_WORKERS")) {
    const long w = std::strtol(env, nullptr, 10);
    if (w >= 1) return static_cast<int>(w);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

int cmd_run(const std::string& config_path, const std::string& out_path) {
  RunConfig config;
  try {
    config = load_config(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  }
  const std::string out = out_path.empty() ? config.out_path : out_path;
  if (out.empty()) {
    std::cerr << "config error: no output path given (--out or run.out_path)\n";
    return kExitConfig;
  }

  RunResult res;
  try {
    res = run_simulation(config);
  } catch (const std::exception& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  }

  if (!write_text(out, records_csv(res.records))) {
    std::cerr << "io error: cannot write " << out << "\n";
    return kExitIo;
  }
  if (res.status == RunStatus::blown_up) {
    std::cerr << "blow-up detected at t = " << format_double(res.t_detect) << "\n";
    return kExitBlowup;
  }
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const SweepAxis& axis,
              const std::string& out_dir) {
  RunConfig base;
  try {
    base = load_config(config_path);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  }
  if (axis.values.empty()) {
    std::cerr << "config error: sweep needs a non-empty values list\n";
    return kExitConfig;
  }

  std::vector<RunConfig> configs;
  for (double v : axis.values) {
    RunConfig c = base;
    if (axis.param == "mu") c.params.mu = v;
    else if (axis.param == "epsilon") c.params.epsilon = v;
    else if (axis.param == "dt") c.scheme.dt = v;
    else if (axis.param == "amplitude") c.initial.amplitude = v;
    else {
      std::cerr << "config error: sweep axis must be mu, epsilon, dt or amplitude\n";
      return kExitConfig;
    }
    try {
      c = parse_config(serialize_config(c));  // revalidate the modified config
    } catch (const ConfigError& e) {
      std::cerr << "config error: value " << format_double(v) << ": " << e.what()
                << "\n";
      return kExitConfig;
    }
    configs.push_back(std::move(c));
  }

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);

  const std::size_t n_runs = configs.size();
  std::vector<RunResult> results(n_runs);
  std::vector<std::exception_ptr> errors(n_runs);
  std::atomic<std::size_t> next{0};
  const int workers = std::min<int>(sweep_workers(), static_cast<int>(n_runs));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n_runs) return;
        try {
          results[i] = run_simulation(configs[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();

  for (std::size_t i = 0; i < n_runs; ++i)
    if (errors[i]) {
      try {
        std::rethrow_exception(errors[i]);
      } catch (const std::exception& e) {
        std::cerr << "io error: run " << i << ": " << e.what() << "\n";
      }
      return kExitIo;
    }

  bool any_blowup = false;
  for (std::size_t i = 0; i < n_runs; ++i) {
    std::ostringstream name;
    name << out_dir << "/run_" << i << "_" << axis.param << "_"
         << format_double(axis.values[i]) << ".csv";
    if (!write_text(name.str(), records_csv(results[i].records))) {
      std::cerr << "io error: cannot write " << name.str() << "\n";
      return kExitIo;
    }
    any_blowup = any_blowup || results[i].status == RunStatus::blown_up;
  }

  const Grid g = grid_from_config(base.grid);
  std::ostringstream summary;
  summary << "axis,value_a,value_b,sup_l2_diff\n";
  for (std::size_t i = 0; i + 1 < n_runs; ++i)
    summary << axis.param << ',' << format_double(axis.values[i]) << ','
            << format_double(axis.values[i + 1]) << ','
            << format_double(sup_l2_difference(results[i], results[i + 1], g))
            << '\n';
  if (!write_text(out_dir + "/summary.csv", summary.str())) {
    std::cerr << "io error: cannot write summary\n";
    return kExitIo;
  }
  return any_blowup ? kExitBlowup : kExitOk;
}

int cmd_check(long samples, unsigned long seed, bool inject_fault,
              const std::string& csv_path) {
  const Grid g = make_grid(1, {1.0}, {64});
  Params p;  // defaults: q = 3, r = 4
  const auto reports =
      law::full_suite(g, p, samples, seed, inject_fault ? 0.5 : -1.0);
  std::cout << law::to_markdown(reports);
  const bool pass = law::all_pass(reports);
  std::cout << (pass ? "all laws pass\n" : "VIOLATIONS FOUND\n");
  if (!pass)
    for (const auto& r : reports)
      if (r.violations != 0)
        std::cout << "  " << r.name << ": worst case " << r.worst_case_inputs
                  << "\n";
  if (!csv_path.empty() && !write_text(csv_path, law::to_csv(reports))) {
    std::cerr << "io error: cannot write " << csv_path << "\n";
    return kExitIo;
  }
  return pass ? kExitOk : kExitConfig;
}

}  // namespace cgl::cli
