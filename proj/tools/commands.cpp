#include "commands.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "loopforest/delaunay.hpp"
#include "loopforest/errors.hpp"
#include "loopforest/forest.hpp"
#include "loopforest/functionals.hpp"
#include "loopforest/io.hpp"
#include "loopforest/landscape.hpp"
#include "loopforest/progression.hpp"
#include "svg.hpp"

namespace loopforest::cli {

namespace {

using Clock = std::chrono::steady_clock;
using io::Json;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

FilteredComplex load_input(const RunConfig& cfg) {
  if (cfg.input.empty()) throw InputError("--input is required");
  const bool csv = cfg.format == "csv" || (cfg.format.empty() && ends_with(cfg.input, ".csv"));
  if (csv) {
    const auto cloud = io::read_point_csv_file(cfg.input);
    if (cloud.dim != 2) {
      throw InputError("point clouds must be planar; pass 3-d data as a complex document");
    }
    std::vector<geometry::Vec2> pts(cloud.size());
    for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = {cloud.coords[2 * i], cloud.coords[2 * i + 1]};
    return alpha_filtration(delaunay_2d(pts), pts);
  }
  if (!cfg.format.empty() && cfg.format != "json") {
    throw InputError("unknown input format '" + cfg.format + "'");
  }
  return io::load_complex_file(cfg.input);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw InputError("cannot write '" + path + "'");
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty()) {
    out << text;
  } else {
    write_file(cfg.output, text);
  }
}

/// path with "_<tag>" inserted before its extension.
std::string tagged_path(const std::string& path, const std::string& tag) {
  const auto dot = path.find_last_of('.');
  const auto slash = path.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + "_" + tag;
  }
  return path.substr(0, dot) + "_" + tag + path.substr(dot);
}

template <class C>
Json progression_doc(const BasicForest<C>& f, const FilteredComplex* k, const RunConfig& cfg) {
  const auto barcode = extract_progressions(f);
  if (!cfg.svg.empty()) {
    if (k == nullptr) throw InputError("--svg needs the complex given by --input");
    if (cfg.at.empty()) throw InputError("--svg needs the times given by --at");
    for (std::size_t i = 0; i < cfg.at.size(); ++i) {
      std::vector<std::vector<FacetId>> cycles;
      for (const auto& gamma : barcode.entries) {
        const auto i_step = gamma.step_index(cfg.at[i]);
        cycles.push_back(i_step < 0 ? std::vector<FacetId>{} : support(*gamma.steps[i_step].chain));
      }
      const auto path = cfg.at.size() == 1 ? cfg.svg : tagged_path(cfg.svg, std::to_string(i + 1));
      write_file(path, cycles_svg(*k, cfg.at[i], cycles));
    }
  }
  return io::barcode_to_json(barcode);
}

template <class C>
void add_landscapes(const FilteredComplex& k, const BasicForest<C>& f, const RunConfig& cfg,
                    Json& docs, std::ostream& err) {
  const auto barcode = extract_progressions(f);
  FunctionalEvaluator<C> eval(k, f);
  for (const auto& name : cfg.functionals) {
    const auto fn = functional_from_name(name);
    std::vector<std::pair<std::string, PiecewiseLinear>> curves;
    auto levels = generalized_landscapes(barcode, eval, fn, cfg.levels);
    for (int n = 1; n <= cfg.levels; ++n) {
      auto& lambda = levels[n - 1];
      docs.push_back(io::landscape_to_json(lambda, n, functional_name(fn)));
      curves.emplace_back(std::string(functional_name(fn)) + " n=" + std::to_string(n),
                          std::move(lambda));
    }
    if (!cfg.svg.empty()) {
      const auto path = cfg.functionals.size() == 1 ? cfg.svg : tagged_path(cfg.svg, name);
      write_file(path, landscape_svg(curves, cfg.samples));
    }
  }
  if (eval.approximate()) {
    err << "warning: some excess-curvature values come from the greedy decomposition\n";
  }
}

}  // namespace

std::vector<geometry::Vec2> generate_points(const std::string& generator, std::size_t n,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<geometry::Vec2> pts;
  pts.reserve(n);
  if (generator == "uniform") {
    while (pts.size() < n) pts.push_back({u(rng), u(rng)});
  } else if (generator == "sphere") {
    std::normal_distribution<double> noise(0.0, 0.05);
    while (pts.size() < n) {
      const double a = 2 * std::numbers::pi * u(rng);
      pts.push_back({std::cos(a) + noise(rng), std::sin(a) + noise(rng)});
    }
  } else if (generator == "holes") {
    std::vector<std::array<double, 3>> balls(30);
    for (auto& b : balls) b = {u(rng), u(rng), 0.05 * u(rng)};
    while (pts.size() < n) {
      const geometry::Vec2 p{u(rng), u(rng)};
      bool inside = false;
      for (const auto& [x, y, r] : balls) {
        inside = inside || (p[0] - x) * (p[0] - x) + (p[1] - y) * (p[1] - y) < r * r;
      }
      if (!inside) pts.push_back(p);
    }
  } else {
    throw InputError("unknown generator '" + generator + "' (uniform, sphere, holes)");
  }
  return pts;
}

int cmd_forest(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto t0 = Clock::now();
  const auto k = load_input(cfg);
  const auto t1 = Clock::now();
  const auto f = persistence_forest(k);
  const double forest_s = seconds_since(t1);
  const auto doc = cfg.is_signed ? io::forest_to_json(f) : io::forest_to_json(unsigned_forest(f));
  emit(cfg, doc.dump() + "\n", out);
  err << "forest: " << f.size() << " vertices from " << k.num_facets() << " facets and "
      << k.num_tops() << " top simplices; forest " << forest_s << " s, total "
      << seconds_since(t0) << " s\n";
  return ok;
}

int cmd_progression(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto t0 = Clock::now();
  Json doc;
  if (!cfg.forest.empty()) {
    std::optional<FilteredComplex> k;
    if (!cfg.input.empty()) k = load_input(cfg);
    const auto stored = io::parse_json(io::read_file(cfg.forest));
    const bool stored_signed = stored.is_object() && stored.value("signed", false);
    doc = stored_signed
              ? progression_doc(io::signed_forest_from_json(stored), k ? &*k : nullptr, cfg)
              : progression_doc(io::unsigned_forest_from_json(stored), k ? &*k : nullptr, cfg);
  } else {
    const auto k = load_input(cfg);
    const auto f = persistence_forest(k);
    doc = cfg.is_signed ? progression_doc(f, &k, cfg) : progression_doc(unsigned_forest(f), &k, cfg);
  }
  emit(cfg, doc.dump() + "\n", out);
  err << "progression: " << doc["bars"].size() << " bars in " << seconds_since(t0) << " s\n";
  return ok;
}

int cmd_landscape(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.levels < 1) throw InputError("--levels must be at least 1");
  if (cfg.functionals.empty()) throw InputError("--functional needs at least one name");
  for (const auto& name : cfg.functionals) functional_from_name(name);
  const auto t0 = Clock::now();
  const auto k = load_input(cfg);
  const auto f = persistence_forest(k);
  Json docs = Json::array();
  if (cfg.is_signed) {
    add_landscapes(k, f, cfg, docs, err);
  } else {
    add_landscapes(k, unsigned_forest(f), cfg, docs, err);
  }
  emit(cfg, docs.dump() + "\n", out);
  err << "landscape: " << docs.size() << " landscapes in " << seconds_since(t0) << " s\n";
  return ok;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.reps < 1) throw InputError("--reps must be at least 1");
  double build_s = 0, forest_s = 0, progression_s = 0;
  std::size_t bars = 0;
  for (int rep = 0; rep < cfg.reps; ++rep) {
    const auto pts = generate_points(cfg.generator, cfg.points, cfg.seed + rep);
    auto t = Clock::now();
    const auto k = alpha_filtration(delaunay_2d(pts), pts);
    build_s += seconds_since(t);
    t = Clock::now();
    const auto f = persistence_forest(k);
    forest_s += seconds_since(t);
    t = Clock::now();
    bars = cfg.is_signed ? extract_progressions(f).entries.size()
                         : extract_progressions(unsigned_forest(f)).entries.size();
    progression_s += seconds_since(t);
    err << "rep " << rep + 1 << "/" << cfg.reps << " done\n";
  }
  const double r = cfg.reps;
  std::ostringstream s;
  s << "generator,points,reps,bars,build_s,forest_s,progression_s,total_s\n"
    << cfg.generator << ',' << cfg.points << ',' << cfg.reps << ',' << bars << ',' << build_s / r
    << ',' << forest_s / r << ',' << progression_s / r << ','
    << (build_s + forest_s + progression_s) / r << '\n';
  emit(cfg, s.str(), out);
  return ok;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Volume-optimal cycle progressions and generalized persistence landscapes",
               "loopforest"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto input_options = [&](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "Point cloud (.csv) or complex document (.json)");
    sub->add_option("--format", cfg.format, "Input format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--signed", cfg.is_signed, "Keep signed chains instead of projecting them");
    sub->add_option("--output", cfg.output, "Output file (default: stdout)");
  };

  auto* forest = app.add_subcommand("forest", "Compute the persistence forest");
  input_options(forest);

  auto* progression = app.add_subcommand("progression", "Compute the cycle progression barcode");
  input_options(progression);
  progression->add_option("--forest", cfg.forest, "Read a stored forest document instead");
  progression->add_option("--at", cfg.at, "Times for cycle snapshots")->delimiter(',');
  progression->add_option("--svg", cfg.svg, "SVG snapshot path (indexed when several times)");

  auto* landscape = app.add_subcommand("landscape", "Compute generalized persistence landscapes");
  input_options(landscape);
  landscape->add_option("--functional", cfg.functionals,
                        "const, length, area, excess-curvature, excess-components, iso")
      ->delimiter(',');
  landscape->add_option("--levels", cfg.levels, "Highest landscape index n");
  landscape->add_option("--svg", cfg.svg, "SVG plot path");
  landscape->add_option("--samples", cfg.samples, "Sample count of the SVG polylines");

  auto* bench = app.add_subcommand("bench", "Time the pipeline on generated point sets");
  bench->add_option("--generator", cfg.generator, "uniform, sphere or holes");
  bench->add_option("--points,-n", cfg.points, "Number of points");
  bench->add_option("--reps", cfg.reps, "Repetitions to average over");
  bench->add_option("--seed", cfg.seed, "Seed of the first repetition");
  bench->add_flag("--signed", cfg.is_signed, "Extract signed progressions");
  bench->add_option("--output", cfg.output, "Output file (default: stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : input_error;
  }

  try {
    if (*forest) return cmd_forest(cfg, out, err);
    if (*progression) return cmd_progression(cfg, out, err);
    if (*landscape) {
      if (cfg.functionals.empty()) cfg.functionals.push_back("const");
      return cmd_landscape(cfg, out, err);
    }
    return cmd_bench(cfg, out, err);
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return validation_error;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return input_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return failure;
  }
}

}  // namespace loopforest::cli
