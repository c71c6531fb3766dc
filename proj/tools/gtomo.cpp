#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "report.hpp"

using namespace gtomo::cli;

namespace {

struct Flags {
  std::string geometry;
  std::string datum;
  std::string samples;
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 7;
  double mc_samples = 1e6;
  double epsilon = 0.0;
  int grid = 0;
};

// "--samples 1e6" on verify means a Monte Carlo count, not a file.
std::optional<double> as_count(const std::string& s) {
  if (s.empty() || std::filesystem::exists(s)) return std::nullopt;
  double x = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || end != s.data() + s.size() || !(x >= 1.0)) return std::nullopt;
  return x;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("geometry", f.geometry, "geometry JSON (hrep, vrep or union)")->required();
  sub->add_option("--datum", f.datum, "Brascamp-Lieb datum JSON (default: coordinate axes, weight 1)");
  sub->add_option("--samples", f.samples, "slice samples JSON; for verify a number sets the Monte Carlo count");
  sub->add_option("--out", f.out, "write the report here instead of stdout");
  sub->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--seed", f.seed, "oracle seed (default 7)");
  sub->add_option("--mc-samples", f.mc_samples, "Monte Carlo sample count (default 1e6)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--epsilon", f.epsilon, "perturbation step, absolute (default 1e-3 of the width)")
      ->check(CLI::PositiveNumber);
  sub->add_option("--grid", f.grid, "slice-count grid per axis (default 512, 64 above dimension 3)")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric tomography bounds for convex polytopes and finite unions"};
  app.require_subcommand(1);
  Flags flags;
  const std::pair<const char*, Command> commands[] = {
      {"volume-bound", Command::VolumeBound},
      {"surface-bound", Command::SurfaceBound},
      {"fisher", Command::Fisher},
      {"verify", Command::Verify},
      {"report", Command::Report},
  };
  const char* help[] = {
      "volume bounds from maximal slices, coordinate slices and projections",
      "surface lower bounds from sampled slice areas",
      "directional L1 Fisher information in every form",
      "check computed quantities against independent oracles",
      "everything above",
  };
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    subs.push_back(app.add_subcommand(commands[i].first, help[i]));
    add_common(subs.back(), flags);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInputError;
  }

  RunSpec spec;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (subs[i]->parsed()) spec.command = commands[i].second;
  }
  spec.geometry_path = flags.geometry;
  if (!flags.datum.empty()) spec.datum_path = flags.datum;
  if (!flags.samples.empty()) {
    const auto count = spec.command == Command::Verify ? as_count(flags.samples) : std::nullopt;
    if (count) {
      flags.mc_samples = *count;
    } else {
      spec.samples_path = flags.samples;
    }
  }
  spec.format = flags.format;
  spec.seed = flags.seed;
  spec.mc_samples = static_cast<std::size_t>(std::llround(flags.mc_samples));
  if (flags.epsilon > 0.0) spec.epsilon = flags.epsilon;
  if (flags.grid > 0) spec.grid = flags.grid;

  const RunOutcome outcome = run_report(spec);
  const std::string text = render(outcome.document, spec.format);
  if (flags.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(flags.out);
    if (!out) {
      std::cerr << "gtomo: cannot write " << flags.out << "\n";
      return kExitInputError;
    }
    out << text;
  }
  if (outcome.exit_code != kExitOk) {
    for (const auto& e : outcome.document["errors"]) {
      std::cerr << "gtomo: " << e["code"].get<std::string>() << " during " << e["during"].get<std::string>()
                << ": " << e["message"].get<std::string>() << "\n";
    }
    if (outcome.exit_code == kExitInvalid && outcome.document["errors"].empty()) {
      std::cerr << "gtomo: a validity check failed\n";
    }
  }
  return outcome.exit_code;
}
