// toolswitch: evaluate, verify, benchmark, solve and generate SSP instances.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage or input error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "toolswitch/toolswitch.hpp"

namespace ts = toolswitch;
using json = nlohmann::json;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("TOOLSWITCH_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ts::Error(ts::ErrorCode::InvalidSpec, std::string("TOOLSWITCH_SEED is not a number: ") + env);
    }
  }
  return 1;
}

std::optional<ts::InstanceFormat> format_option(const std::string& name) {
  if (name.empty()) return std::nullopt;
  return ts::parse_format(name);  // validated by CLI11
}

ts::EvaluatorKind evaluator_option(const std::string& name) { return *ts::parse_evaluator(name); }

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

ts::JobSequence parse_sequence(const std::string& text, std::size_t n) {
  if (text == "identity") return ts::JobSequence::identity(n);
  std::vector<std::size_t> ids;
  for (const auto& item : split_list(text)) {
    std::size_t used = 0;
    unsigned long long id = 0;
    try {
      id = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty())
      throw ts::Error(ts::ErrorCode::ParseError, "bad job id '" + item + "' in sequence");
    ids.push_back(static_cast<std::size_t>(id));
  }
  return ts::JobSequence::from_one_based(ids);
}

// ---------------------------------------------------------------- evaluate

struct EvaluateOptions {
  std::string file;
  std::string sequence = "identity";
  std::string evaluator = "mpca-bitwise";
  std::string format;
  bool trace = false;
};

/// Tools as rows, instants as columns: '#' required, 'o' kept idle, '.' absent.
void print_magazine(std::ostream& out, const ts::Instance& inst, const ts::JobSequence& seq,
                    const ts::MagazineTrace& trace) {
  const std::size_t width = std::to_string(std::max(inst.job_count(), inst.tool_count())).size() + 1;
  out << std::setw(8) << std::left << "instant" << std::right;
  for (std::size_t i = 0; i < seq.size(); ++i) out << std::setw(static_cast<int>(width)) << i + 1;
  out << '\n' << std::setw(8) << std::left << "job" << std::right;
  for (std::size_t i = 0; i < seq.size(); ++i) out << std::setw(static_cast<int>(width)) << seq[i] + 1;
  out << '\n';
  for (ts::ToolIndex t = 0; t < inst.tool_count(); ++t) {
    out << std::setw(8) << std::left << ("tool " + std::to_string(t + 1)) << std::right;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const char mark = inst.required(seq[i]).contains(t) ? '#' : trace.states[i].contains(t) ? 'o' : '.';
      out << std::setw(static_cast<int>(width)) << mark;
    }
    out << '\n';
  }
  out << "legend: # required, o kept idle, . absent\n";
}

int cmd_evaluate(const EvaluateOptions& o) {
  const auto inst = ts::load_instance(o.file, format_option(o.format));
  const auto seq = parse_sequence(o.sequence, inst.job_count());
  const auto kind = evaluator_option(o.evaluator);
  ts::EvaluatorScratch scratch;
  const auto result = ts::evaluate(kind, inst, seq, scratch);
  std::cout << "switches=" << result.switches;
  if (result.pipes_count) std::cout << " pipes=" << *result.pipes_count;
  std::cout << '\n';
  if (o.trace) {
    if (ts::reports_pipes(kind)) {
      const auto t = ts::mpca_trace(inst, seq, scratch);
      print_magazine(std::cout, inst, seq, t.magazine);
      for (const auto& p : t.pipes)
        std::cout << "pipe start=" << p.start + 1 << " end=" << p.end + 1 << " tool=" << p.tool + 1 << '\n';
    } else {
      const auto [r, trace] = ts::ktns_trace(inst, seq, scratch);
      print_magazine(std::cout, inst, seq, trace);
    }
  }
  return 0;
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
  std::vector<std::string> files;
  std::size_t trials = 10'000;
  std::optional<std::uint64_t> seed;
  std::size_t max_n = 40, max_m = 60, max_capacity = 30;
  std::string format;
};

int cmd_verify(const VerifyOptions& o) {
  ts::VerifyConfig config;
  config.trials = o.trials;
  config.seed = resolve_seed(o.seed);
  config.max_n = o.max_n;
  config.max_m = o.max_m;
  config.max_capacity = o.max_capacity;
  if (config.max_n < 1 || config.max_m < 2 || config.max_capacity < 1)
    throw ts::Error(ts::ErrorCode::InvalidSpec, "size bounds need max-n >= 1, max-m >= 2, max-capacity >= 1");
  for (const auto& f : o.files) config.instances.push_back(ts::load_instance(f, format_option(o.format)));

  if (config.trials == 0) std::cerr << "warning: 0 trials requested; nothing was verified\n";
  const auto report = ts::run_verification(config);
  if (!report.passed()) {
    std::cout << "verify: FAIL after " << report.trials << " trials (seed " << config.seed << ")\n"
              << report.failure->fixture();
    return kExitMismatch;
  }
  std::cout << "verify: PASS trials=" << report.trials << " oracle_checks=" << report.oracle_checks
            << " seed=" << config.seed << '\n';
  return 0;
}

// ---------------------------------------------------------------- bench

struct BenchOptions {
  std::string families = "all";
  std::vector<std::string> spec_files;
  std::size_t sequences = 100'000;
  std::optional<std::uint64_t> seed;
  std::string evaluators = "ktns,ktns-bitwise,mpca,mpca-bitwise";
  std::string csv;
  std::size_t parallel = 1;
};

ts::DatasetSpec spec_from_json(const json& j, std::uint64_t seed) {
  ts::DatasetSpec s;
  try {
    s.family = j.value("family", std::string("custom"));
    s.n = j.at("n").get<std::size_t>();
    s.m = j.at("m").get<std::size_t>();
    s.capacity = j.at("capacity").get<std::size_t>();
    s.instances = j.value("instances", std::size_t{10});
    if (j.contains("job_size_min")) s.job_size_min = j.at("job_size_min").get<std::size_t>();
    if (j.contains("job_size_max")) s.job_size_max = j.at("job_size_max").get<std::size_t>();
    s.seed = j.contains("seed") ? j.at("seed").get<std::uint64_t>() : ts::mix_seed(seed, ts::hash_label(s.family));
  } catch (const json::exception& e) {
    throw ts::Error(ts::ErrorCode::InvalidSpec, std::string("dataset spec: ") + e.what());
  }
  ts::validate_spec(s);
  return s;
}

std::vector<ts::DatasetSpec> load_spec_file(const std::string& path, std::uint64_t seed) {
  json j;
  try {
    j = json::parse(ts::read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ts::Error(ts::ErrorCode::ParseError, path + ": " + e.what());
  }
  std::vector<ts::DatasetSpec> out;
  if (j.is_array())
    for (const auto& item : j) out.push_back(spec_from_json(item, seed));
  else
    out.push_back(spec_from_json(j, seed));
  return out;
}

std::vector<ts::DatasetSpec> family_specs(const std::string& list, std::uint64_t seed) {
  std::vector<ts::DatasetSpec> out;
  if (list.empty()) return out;
  for (const auto& label : split_list(list)) {
    if (label == "all") {
      for (const auto& f : ts::catanzaro_families) out.push_back(*ts::catanzaro_family(f.label, seed));
      continue;
    }
    const auto spec = ts::catanzaro_family(label, seed);
    if (!spec) throw ts::Error(ts::ErrorCode::InvalidSpec, "unknown family '" + label + "' (expected A1..D4)");
    out.push_back(*spec);
  }
  return out;
}

int cmd_bench(const BenchOptions& o) {
  const std::uint64_t seed = resolve_seed(o.seed);
  ts::BenchConfig config;
  config.families = family_specs(o.spec_files.empty() ? o.families : (o.families == "all" ? "" : o.families), seed);
  for (const auto& f : o.spec_files)
    for (auto& s : load_spec_file(f, seed)) config.families.push_back(std::move(s));
  config.sequences = o.sequences;
  config.parallel = o.parallel;
  config.evaluators.clear();
  for (const auto& name : split_list(o.evaluators)) {
    const auto kind = ts::parse_evaluator(name);
    if (!kind) throw ts::Error(ts::ErrorCode::InvalidSpec, "unknown evaluator '" + name + "'");
    config.evaluators.push_back(*kind);
  }

  const auto report = ts::run_bench(config);
  const auto rows = report.rows();
  std::ostream& summary = o.csv.empty() ? std::cerr : std::cout;
  if (o.csv.empty())
    ts::write_results_csv(std::cout, rows);
  else
    ts::write_results_csv(o.csv, rows);

  for (const auto& f : report.families) {
    summary << f.spec.family << " (n=" << f.spec.n << " m=" << f.spec.m << " C=" << f.spec.capacity << "):";
    for (std::size_t e = 0; e < f.rows.size(); ++e)
      summary << ' ' << f.rows[e].evaluator << '=' << ts::format_fixed(f.speedups[e], 2) << 'x';
    summary << " (speedup vs " << f.rows.front().evaluator << ")\n";
  }
  if (!report.consistent()) {
    std::cerr << "error: evaluators disagree on the switch totals of some family\n";
    return kExitMismatch;
  }
  return 0;
}

// ---------------------------------------------------------------- solve

struct SolveOptions {
  std::string file;
  std::string format;
  std::uint64_t budget = 10'000;
  std::string evaluator = "mpca-bitwise";
  std::string neighborhood = "any-swap";
  std::size_t perturbation = 2;
  std::optional<std::uint64_t> seed;
  std::optional<double> time_limit;
  std::size_t restarts = 1;
  std::size_t parallel = 1;
  bool exact = false;
};

int cmd_solve(const SolveOptions& o) {
  const auto inst = ts::load_instance(o.file, format_option(o.format));
  const auto kind = evaluator_option(o.evaluator);
  if (o.exact) {
    ts::EvaluatorScratch scratch;
    const auto best = ts::jesp_exhaustive(inst, [&](const ts::Instance& i, std::span<const ts::JobIndex> order) {
      return ts::evaluate(kind, i, order, scratch).switches;
    });
    std::uint64_t evaluations = 1;
    for (std::size_t k = 2; k <= inst.job_count(); ++k) evaluations *= k;
    std::cout << "mode=exact\nsequence=" << best.best.to_string() << "\nswitches=" << best.switches
              << "\nevaluations=" << evaluations << '\n';
    return 0;
  }
  ts::SolverConfig config;
  config.evaluator = kind;
  config.max_evaluations = o.budget;
  config.perturbation_strength = o.perturbation;
  config.neighborhood = *ts::parse_neighborhood(o.neighborhood);
  config.seed = resolve_seed(o.seed);
  if (o.time_limit) config.time_limit = std::chrono::duration<double>(*o.time_limit);
  const auto result = ts::ils_solve_restarts(inst, config, o.restarts, o.parallel);
  std::cout << "mode=ils\nsequence=" << result.best.to_string() << "\nswitches=" << result.switches
            << "\nevaluations=" << result.evaluations << '\n';
  return 0;
}

// ---------------------------------------------------------------- gen

struct GenOptions {
  std::string family;
  std::string name = "custom";
  std::size_t n = 0, m = 0, capacity = 0, instances = 10;
  std::optional<std::size_t> job_size_min, job_size_max;
  std::optional<std::uint64_t> seed;
  std::string format = "native";
  std::string out = ".";
};

int cmd_gen(const GenOptions& o) {
  const std::uint64_t seed = resolve_seed(o.seed);
  ts::DatasetSpec spec;
  if (!o.family.empty()) {
    const auto f = ts::catanzaro_family(o.family, seed);
    if (!f) throw ts::Error(ts::ErrorCode::InvalidSpec, "unknown family '" + o.family + "' (expected A1..D4)");
    spec = *f;
  } else {
    spec.family = o.name;
    spec.n = o.n;
    spec.m = o.m;
    spec.capacity = o.capacity;
    spec.seed = ts::mix_seed(seed, ts::hash_label(o.name));
  }
  spec.instances = o.instances;
  spec.job_size_min = o.job_size_min;
  spec.job_size_max = o.job_size_max;
  const auto format = *ts::parse_format(o.format);
  const auto instances = ts::generate_instances(spec);

  std::filesystem::create_directories(o.out);
  json manifest = {{"family", spec.family},       {"n", spec.n},
                   {"m", spec.m},                 {"capacity", spec.capacity},
                   {"instances", spec.instances}, {"job_size_min", spec.min_job_size()},
                   {"job_size_max", spec.max_job_size()},
                   {"base_seed", seed},           {"seed", spec.seed},
                   {"format", o.format},          {"files", json::array()}};
  for (std::size_t k = 0; k < instances.size(); ++k) {
    const std::string name = spec.family + "_" + std::to_string(k + 1) + ".txt";
    ts::write_text_file((std::filesystem::path(o.out) / name).string(), ts::serialize_instance(instances[k], format));
    manifest["files"].push_back(name);
  }
  ts::write_text_file((std::filesystem::path(o.out) / "manifest.json").string(), manifest.dump(2) + "\n");
  std::cout << "wrote " << instances.size() << " instances of " << spec.family << " to " << o.out << '\n';
  return 0;
}

// ---------------------------------------------------------------- report

int cmd_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ts::Error(ts::ErrorCode::Io, "cannot open '" + path + "'");
  const auto rows = ts::read_results_csv(in);
  std::map<std::string, std::vector<const ts::BenchRow*>> by_dataset;
  std::vector<std::string> order;
  for (const auto& r : rows) {
    if (!by_dataset.count(r.dataset)) order.push_back(r.dataset);
    by_dataset[r.dataset].push_back(&r);
  }
  for (const auto& d : order) {
    const auto& cells = by_dataset[d];
    std::cout << d << ':';
    for (const auto* r : cells)
      std::cout << ' ' << r->evaluator << '=' << ts::format_fixed(r->mean_microseconds_per_eval, 3) << "us ("
                << ts::format_fixed(r->total_seconds > 0 ? cells.front()->total_seconds / r->total_seconds : 0.0, 2)
                << "x)";
    std::cout << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tool switching evaluators: KTNS, KTNS-bitwise, MPCA, MPCA-bitwise"};
  app.require_subcommand(1);
  const std::vector<std::string> evaluator_names{"ktns", "ktns-bitwise", "mpca", "mpca-bitwise"};
  const std::vector<std::string> format_names{"native", "matrix"};

  EvaluateOptions eo;
  auto* evaluate = app.add_subcommand("evaluate", "Switch count of one job order");
  evaluate->add_option("file", eo.file, "Instance file")->required();
  evaluate->add_option("--sequence,-s", eo.sequence, "1-based job ids, comma separated, or 'identity'");
  evaluate->add_option("--evaluator,-e", eo.evaluator)->check(CLI::IsMember(evaluator_names));
  evaluate->add_option("--format", eo.format)->check(CLI::IsMember(format_names));
  evaluate->add_flag("--trace", eo.trace, "Print magazine contents per instant");

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Cross-check the evaluators and the DP oracle on random cases");
  verify->add_option("files", vo.files, "Instance files to draw random orders for (default: random instances)");
  verify->add_option("--trials", vo.trials);
  verify->add_option("--seed", vo.seed);
  verify->add_option("--max-n", vo.max_n);
  verify->add_option("--max-m", vo.max_m);
  verify->add_option("--max-capacity", vo.max_capacity);
  verify->add_option("--format", vo.format)->check(CLI::IsMember(format_names));

  BenchOptions bo;
  auto* bench = app.add_subcommand("bench", "Time the evaluators on benchmark families");
  bench->add_option("--families", bo.families, "Comma-separated labels among A1..D4, or 'all'");
  bench->add_option("--spec", bo.spec_files, "JSON dataset spec file(s)");
  bench->add_option("--sequences", bo.sequences, "Random orders per instance");
  bench->add_option("--seed", bo.seed);
  bench->add_option("--evaluators", bo.evaluators, "Comma-separated; speedups are relative to the first");
  bench->add_option("--csv", bo.csv, "Write results here (default: CSV on stdout, summary on stderr)");
  bench->add_option("--parallel", bo.parallel, "Worker threads")->check(CLI::PositiveNumber);

  SolveOptions so;
  auto* solve = app.add_subcommand("solve", "Search for a good job order");
  solve->add_option("file", so.file, "Instance file")->required();
  solve->add_option("--format", so.format)->check(CLI::IsMember(format_names));
  solve->add_option("--budget", so.budget, "Maximum objective evaluations")->check(CLI::PositiveNumber);
  solve->add_option("--evaluator,-e", so.evaluator)->check(CLI::IsMember(evaluator_names));
  solve->add_option("--neighborhood", so.neighborhood)
      ->check(CLI::IsMember({"adjacent-swap", "any-swap", "insertion"}));
  solve->add_option("--perturbation", so.perturbation, "Random swaps per kick")->check(CLI::PositiveNumber);
  solve->add_option("--seed", so.seed);
  solve->add_option("--time-limit", so.time_limit, "Seconds");
  solve->add_option("--restarts", so.restarts, "Independent searches; the best is reported")
      ->check(CLI::PositiveNumber);
  solve->add_option("--parallel", so.parallel, "Worker threads for restarts")->check(CLI::PositiveNumber);
  solve->add_flag("--exact", so.exact, "Exhaustive search (n <= 10)");

  GenOptions go;
  auto* gen = app.add_subcommand("gen", "Generate instance files");
  gen->add_option("--family", go.family, "A1..D4");
  gen->add_option("--name", go.name, "Label of a custom family");
  gen->add_option("--n", go.n);
  gen->add_option("--m", go.m);
  gen->add_option("--capacity", go.capacity);
  gen->add_option("--instances", go.instances);
  gen->add_option("--job-size-min", go.job_size_min);
  gen->add_option("--job-size-max", go.job_size_max);
  gen->add_option("--seed", go.seed);
  gen->add_option("--format", go.format)->check(CLI::IsMember(format_names));
  gen->add_option("--out", go.out, "Output directory");

  std::string report_file;
  auto* report = app.add_subcommand("report", "Summarize a results CSV");
  report->add_option("csv", report_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*evaluate) return cmd_evaluate(eo);
    if (*verify) return cmd_verify(vo);
    if (*bench) return cmd_bench(bo);
    if (*solve) return cmd_solve(so);
    if (*gen) return cmd_gen(go);
    if (*report) return cmd_report(report_file);
  } catch (const ts::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
