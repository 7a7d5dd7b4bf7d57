#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "lebounds/cli.hpp"
#include "lebounds/le.hpp"
#include "lebounds/noise.hpp"

namespace {

using namespace lebounds;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty entry in list: " + text);
    items.push_back(item);
  }
  return items;
}

size_t parse_size(const std::string& text) {
  try {
    size_t pos = 0;
    unsigned long v = std::stoul(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("expected a nonnegative integer, got: " + text);
  }
}

double parse_double(const std::string& text) {
  try {
    size_t pos = 0;
    double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("expected a number, got: " + text);
  }
}

std::vector<size_t> parse_size_list(const std::string& text) {
  std::vector<size_t> out;
  for (const std::string& item : split_list(text)) out.push_back(parse_size(item));
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& item : split_list(text)) out.push_back(parse_double(item));
  return out;
}

std::vector<std::pair<size_t, size_t>> parse_pairs(const std::string& text) {
  std::vector<std::pair<size_t, size_t>> out;
  for (const std::string& item : split_list(text)) {
    size_t sep = item.find(':');
    if (sep == std::string::npos || sep == 0 || sep + 1 == item.size())
      throw std::invalid_argument("pair must look like a:b, got: " + item);
    out.push_back({parse_size(item.substr(0, sep)), parse_size(item.substr(sep + 1))});
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"entanglement bounds on color-code graph states"};
  app.require_subcommand(1);

  auto* code = app.add_subcommand("code", "build a square-hexagonal lattice and write its JSON");
  cli::CodeOptions code_opt;
  code->add_option("--distance", code_opt.distance, "code distance (even, at least 4)")
      ->required();
  code->add_option("--out", code_opt.out_path, "lattice JSON output path")->required();
  code->callback([&] { cli::cmd_code(code_opt, std::cout); });

  auto* s2g = app.add_subcommand("stab2graph", "convert a stabilizer tableau to graph form");
  cli::StabToGraphOptions s2g_opt;
  std::vector<size_t> force_pair;
  uint64_t s2g_seed = 0;
  s2g->add_option("--tableau", s2g_opt.tableau_path, "tableau JSON input path");
  s2g->add_flag("--seven-qubit", s2g_opt.seven_qubit, "use the distance-3 seven-qubit code");
  s2g->add_option("--force-pair", force_pair, "control and target labels to link directly")
      ->expected(2);
  auto* s2g_seed_opt = s2g->add_option("--seed", s2g_seed, "seed for the control selection");
  s2g->add_option("--out", s2g_opt.out_path, "graph JSON output path");
  s2g->callback([&] {
    if (!force_pair.empty()) s2g_opt.force_pair = {force_pair[0], force_pair[1]};
    if (s2g_seed_opt->count() > 0) s2g_opt.seed = s2g_seed;
    cli::cmd_stab2graph(s2g_opt, std::cout);
  });

  auto* alc = app.add_subcommand("alc", "create a link between two graph nodes");
  cli::AlcOptions alc_opt;
  uint64_t alc_seed = 0;
  std::string alc_path;
  alc->add_option("--graph", alc_opt.graph_path, "graph JSON input path")->required();
  alc->add_option("--a", alc_opt.a, "first endpoint label")->required();
  alc->add_option("--b", alc_opt.b, "second endpoint label")->required();
  auto* alc_seed_opt = alc->add_option("--seed", alc_seed, "seed for the random simple path");
  auto* alc_path_opt = alc->add_option("--path", alc_path, "explicit path labels, e.g. 1,4,9");
  alc->add_option("--out", alc_opt.out_path, "linked graph JSON output path");
  alc->callback([&] {
    if (alc_seed_opt->count() > 0) alc_opt.seed = alc_seed;
    if (alc_path_opt->count() > 0) alc_opt.path = parse_size_list(alc_path);
    cli::cmd_alc(alc_opt, std::cout);
  });

  auto* sweep = app.add_subcommand("sweep", "evaluate a bound over distances and noise strengths");
  cli::SweepOptions sweep_opt;
  std::string d_list, q_list, pairs, kind = "DP", strategy = "alc";
  uint64_t sweep_seed = 0;
  sweep->add_option("--bound", sweep_opt.bound, "wlb or mlb")->required();
  sweep->add_option("--distance", sweep_opt.distance, "code distance")->required();
  sweep->add_option("--d-list", d_list, "pair distances, e.g. 2,4,6");
  sweep->add_option("--pairs", pairs, "explicit pairs, e.g. 21:58,33:70");
  sweep->add_option("--kind", kind, "noise kind: BF, PF, BPF or DP");
  sweep->add_option("--q-list", q_list, "noise strengths, e.g. 0,0.01,0.1")->required();
  sweep->add_option("--n-samples", sweep_opt.n_samples, "path samples per cell");
  sweep->add_option("--strategy", strategy, "alc or direct-link");
  auto* sweep_seed_opt = sweep->add_option("--seed", sweep_seed, "master seed for mlb cells");
  sweep->add_option("--out", sweep_opt.out_path, "CSV output path")->required();
  sweep->callback([&] {
    if (!d_list.empty()) sweep_opt.d_list = parse_size_list(d_list);
    if (!pairs.empty()) sweep_opt.pairs = parse_pairs(pairs);
    sweep_opt.kind = noise::channel_kind_from_name(kind);
    sweep_opt.q_list = parse_double_list(q_list);
    sweep_opt.strategy = le::mlb_strategy_from_name(strategy);
    if (sweep_seed_opt->count() > 0) sweep_opt.seed = sweep_seed;
    cli::cmd_sweep(sweep_opt, std::cout);
  });

  auto* fit = app.add_subcommand("fit", "least-squares exponential decay fit of a sweep CSV");
  std::string csv_path;
  fit->add_option("--csv", csv_path, "sweep CSV input path")->required();
  fit->callback([&] { cli::cmd_fit(csv_path, std::cout); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
