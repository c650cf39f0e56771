// mogmesh: runs a scenario under one architecture and writes metrics files.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "mogmesh/error.hpp"
#include "mogmesh/report_io.hpp"
#include "mogmesh/scenario.hpp"
#include "mogmesh/simulator.hpp"

namespace fs = std::filesystem;
using namespace mogmesh;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitInvariant = 2;

struct Options {
  std::string scenario_path;
  std::string arch;
  std::uint64_t seed = 1;
  std::uint64_t ticks = 1000;
  std::string allocator;
  std::string out = "./out";
  std::string emit = "both";
  std::uint64_t sweep_seeds = 0;
  unsigned jobs = 0;
};

struct Job {
  Architecture arch;
  std::uint64_t seed;
  fs::path dir;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read scenario file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << content;
  if (!out.flush()) throw ValidationError("failed writing " + path.string());
}

std::vector<Architecture> parse_archs(const std::string& text) {
  std::vector<Architecture> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto arch = architecture_from_string(item);
    if (!arch) throw ValidationError("--arch: unknown architecture '" + item + "'");
    out.push_back(*arch);
  }
  if (out.empty()) throw ValidationError("--arch: no architecture given");
  return out;
}

void run_job(const Scenario& scenario, const Job& job, std::uint64_t ticks,
             const std::string& emit) {
  MetricsReport report = run(scenario, job.arch, job.seed, ticks);
  fs::create_directories(job.dir);
  if (emit != "json") write_file(job.dir / "metrics.csv", metrics_csv(report));
  if (emit != "csv") {
    RunInfo info{job.seed, job.arch, ticks, scenario_digest(scenario)};
    write_file(job.dir / "metrics.json", metrics_json(report, info));
  }
}

int exit_code_for(const std::exception_ptr& error) {
  try {
    std::rethrow_exception(error);
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}

// Runs every job on a small worker pool. Each run owns its state and output
// directory, so results do not depend on scheduling.
int run_sweep(const Scenario& scenario, const std::vector<Job>& jobs, const Options& opt) {
  unsigned workers = opt.jobs ? opt.jobs : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(jobs.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs.size());
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
          try {
            run_job(scenario, jobs[i], opt.ticks, opt.emit);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  int code = kExitOk;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (!errors[i]) continue;
    std::cerr << jobs[i].dir.string() << ": ";
    code = std::max(code, exit_code_for(errors[i]));
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Simulate a mobile multiplayer game over an ad-hoc mesh", "mogmesh"};
  app.add_option("--scenario", opt.scenario_path, "Scenario JSON file")->required();
  app.add_option("--arch", opt.arch, "cs | cs-overlay | p2p | hybrid (comma list with --sweep)")
      ->required();
  app.add_option("--seed", opt.seed, "PRNG seed")->capture_default_str();
  app.add_option("--ticks", opt.ticks, "Number of ticks to simulate")->capture_default_str();
  app.add_option("--allocator", opt.allocator, "Override the scenario allocator")
      ->check(CLI::IsMember({"heuristic", "auction"}));
  app.add_option("--out", opt.out, "Output directory")->capture_default_str();
  app.add_option("--emit", opt.emit, "Which files to write")
      ->check(CLI::IsMember({"csv", "json", "both"}))
      ->capture_default_str();
  app.add_option("--sweep", opt.sweep_seeds,
                 "Run seeds seed..seed+N-1 for every --arch concurrently; "
                 "outputs go to <out>/<arch>/seed-<n>/");
  app.add_option("--jobs", opt.jobs, "Worker threads for --sweep (default: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    auto archs = parse_archs(opt.arch);
    if (!opt.sweep_seeds && archs.size() > 1) {
      throw ValidationError("--arch: a list of architectures requires --sweep");
    }
    Scenario scenario = parse_scenario(read_file(opt.scenario_path));
    if (!opt.allocator.empty()) scenario.allocator = *allocator_from_string(opt.allocator);

    if (!opt.sweep_seeds) {
      run_job(scenario, Job{archs.front(), opt.seed, opt.out}, opt.ticks, opt.emit);
      return kExitOk;
    }
    std::vector<Job> jobs;
    for (Architecture arch : archs) {
      for (std::uint64_t i = 0; i < opt.sweep_seeds; ++i) {
        std::uint64_t seed = opt.seed + i;
        jobs.push_back({arch, seed,
                        fs::path(opt.out) / std::string(to_string(arch)) /
                            ("seed-" + std::to_string(seed))});
      }
    }
    return run_sweep(scenario, jobs, opt);
  } catch (...) {
    return exit_code_for(std::current_exception());
  }
}
