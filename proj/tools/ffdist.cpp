#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "ffdist/commands.hpp"
#include "ffdist/error.hpp"
#include "ffdist/field.hpp"

using namespace ffdist;

namespace {

struct RawFlags {
  unsigned p = 0, s = 0, d = 0, k = 0;
  std::uint64_t q = 0, seed = 0, cap = 0, size = 0, trial = 0;
  std::uint32_t t = 0;
  unsigned trials = 0;
  std::string m, mode, format, out, c, sizes, points, config;
  bool sharpness = false, numeric = false, timing = false;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-distance sets over finite fields"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  RawFlags raw;
  std::vector<std::pair<std::string, CLI::Option*>> flags = {
      {"p", app.add_option("--p", raw.p, "field characteristic")},
      {"s", app.add_option("--s", raw.s, "extension degree")},
      {"q", app.add_option("--q", raw.q, "field order (odd prime power)")},
      {"d", app.add_option("--d", raw.d, "dimension")},
      {"k", app.add_option("--k", raw.k, "number of squared coordinates in the norm")},
      {"t", app.add_option("--t", raw.t, "radius, as an element index")},
      {"m", app.add_option("--m", raw.m, "frequency \"c1,...,cd\"")},
      {"mode", app.add_option("--mode", raw.mode, "sphere-ft mode: closed|brute|both")},
      {"seed", app.add_option("--seed", raw.seed, "64-bit seed")},
      {"format", app.add_option("--format", raw.format, "json|csv")},
      {"out", app.add_option("--out", raw.out, "write output to PATH")},
      {"cap", app.add_option("--cap", raw.cap, "enumeration cap on q^d")},
      {"C", app.add_option("--C", raw.c, "threshold multiplier, e.g. 4 or 3/2")},
      {"trials", app.add_option("--trials", raw.trials, "trials per size")},
      {"sizes", app.add_option("--sizes", raw.sizes, "comma-separated |E| values or auto")},
      {"points", app.add_option("--points", raw.points, "E as \"x1,x2;y1,y2;...\"")},
      {"size", app.add_option("--size", raw.size, "sample E of this size")},
      {"trial", app.add_option("--trial", raw.trial, "trial index for --size sampling")},
      {"sharpness", app.add_flag("--sharpness", raw.sharpness, "use F_q^{d-k} x {0}^k as E")},
      {"numeric", app.add_flag("--numeric", raw.numeric, "add floating-point embeddings")},
      {"timing", app.add_flag("--timing", raw.timing, "record per-trial runtime")},
      {"config", app.add_option("--config", raw.config, "JSON config file")},
  };
  for (const auto& name : command_names()) app.add_subcommand(name);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  CommandOptions opt;
  auto& ex = opt.experiment;
  std::vector<std::string> given;
  for (const auto& [key, option] : flags) {
    if (option->count() > 0) given.push_back(key);
  }
  auto has = [&](const std::string& key) {
    return std::find(given.begin(), given.end(), key) != given.end();
  };

  try {
    if (has("config")) {
      std::ifstream in(raw.config);
      if (!in) throw InvalidArgument("cannot read config " + raw.config);
      std::stringstream buf;
      buf << in.rdbuf();
      apply_config_json(buf.str(), opt, given);
    }
    if (has("q")) {
      if (has("p") || has("s")) throw InvalidArgument("give either --q or --p/--s");
      const Field f = Field::from_order(raw.q);
      ex.p = f.p();
      ex.s = f.s();
    }
    if (has("p")) ex.p = raw.p;
    if (has("s")) ex.s = raw.s;
    if (has("d")) ex.d = raw.d;
    if (has("k")) ex.k = raw.k;
    if (has("t")) opt.t = raw.t;
    if (has("m")) opt.m = parse_tuple(raw.m);
    if (has("mode")) opt.mode = raw.mode;
    if (has("seed")) ex.seed = raw.seed;
    if (has("format")) {
      if (raw.format != "json" && raw.format != "csv") throw InvalidArgument("--format must be json or csv");
      ex.format = raw.format == "csv" ? OutputFormat::csv : OutputFormat::json;
    }
    if (has("cap")) ex.cap = raw.cap;
    if (has("C")) ex.threshold_multiplier = parse_rational(raw.c);
    if (has("trials")) ex.trials = raw.trials;
    if (has("sizes")) {
      ex.sizes.clear();
      if (raw.sizes != "auto") {
        for (auto v : parse_tuple(raw.sizes)) ex.sizes.push_back(v);
      }
    }
    if (has("points")) opt.points = parse_points(raw.points);
    if (has("size")) opt.size = raw.size;
    if (has("trial")) opt.trial = raw.trial;
    if (has("sharpness")) ex.sharpness = raw.sharpness;
    if (has("numeric")) ex.numeric = raw.numeric;
    if (has("timing")) ex.timing = raw.timing;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  const CommandResult result = run_command(command, opt);
  if (result.exit_code == 2 && result.output.rfind("error:", 0) == 0) {
    std::cerr << result.output;
    return 2;
  }
  if (has("out")) {
    std::ofstream out(raw.out, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << raw.out << '\n';
      return 2;
    }
    out << result.output;
  } else {
    std::cout << result.output;
  }
  return result.exit_code;
}
