#include "cli.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "isospec/families.hpp"
#include "isospec/grid.hpp"
#include "isospec/hydrogen.hpp"
#include "isospec/seeds.hpp"
#include "isospec/verify.hpp"

namespace isospec::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  int l = 0;
  int k = 0;
  int m = 0;
  double lambda = 0.0;
  std::vector<int> ks;
  std::vector<double> lambdas;
  double r_min = 0.0;
  double r_max = 0.0;
  int n_points = 0;
  int levels = 0;
  double tol = 0.0;
  double inject = 0.0;
  std::string out;
  std::string format;
  std::string config_path;
  std::string preset;
};

struct GridPreset {
  const char* name;
  double r_min;
  double r_max;
  int n_points;
};

// reference resolves levels through n = l + 6 to a few 1e-7; medium and
// fast trade r_max and spacing for speed while staying inside tol = 5e-4.
constexpr GridPreset kGridPresets[] = {
    {"reference", 1e-3, 300.0, 300001},
    {"medium", 1e-3, 200.0, 100001},
    {"fast", 1e-3, 120.0, 60001},
};

std::optional<RadialGrid> preset_grid(const std::string& name) {
  for (const auto& p : kGridPresets) {
    if (name == p.name) return RadialGrid(p.r_min, p.r_max, p.n_points);
  }
  return std::nullopt;
}

// Manifests refer to sibling files by basename so that reruns into different
// directories stay byte-identical.
std::string sibling_name(const std::string& out, const std::string& suffix) {
  return std::filesystem::path(out).filename().string() + suffix;
}

std::string interval_text(const Interval& iv) {
  const std::string lo = std::isinf(iv.lo) ? "-inf" : format_double(iv.lo);
  const std::string hi = std::isinf(iv.hi) ? "inf" : format_double(iv.hi);
  return "(" + lo + ", " + hi + ")";
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << body;
  f.flush();
  if (!f) throw std::runtime_error("write failed: " + path);
  std::cout << "wrote " << path << "\n";
}

std::optional<json> load_config(const CLI::App& sub, const Options& o) {
  if (sub.count("--config") == 0) return std::nullopt;
  std::ifstream f(o.config_path);
  if (!f) throw std::invalid_argument("cannot read config file: " + o.config_path);
  json j = json::parse(f);
  if (!j.is_object()) throw std::invalid_argument("config root must be a JSON object");
  if (j.contains("command") && j["command"].get<std::string>() != sub.get_name()) {
    throw std::invalid_argument("config command '" + j["command"].get<std::string>() +
                                "' does not match subcommand '" + sub.get_name() + "'");
  }
  return j;
}

template <typename T>
T resolve_scalar(const CLI::App& sub, const std::string& flag, T flag_value,
                 const std::optional<json>& cfg, const std::string& key, T fallback) {
  if (sub.count(flag) > 0) return flag_value;
  if (cfg && cfg->contains(key)) return (*cfg)[key].template get<T>();
  return fallback;
}

// Precedence: flags > config file > ISOSPEC_GRID_PRESET > per-command default.
RadialGrid resolve_grid(const CLI::App& sub, const Options& o, const std::optional<json>& cfg,
                        const RadialGrid& fallback) {
  double r_min = fallback.r_min;
  double r_max = fallback.r_max;
  int n_points = fallback.n_points;
  if (const char* env = std::getenv("ISOSPEC_GRID_PRESET")) {
    const std::string name(env);
    if (!name.empty()) {
      auto g = preset_grid(name);
      if (!g) {
        throw std::invalid_argument("unknown ISOSPEC_GRID_PRESET '" + name +
                                    "' (expected reference, medium, or fast)");
      }
      r_min = g->r_min;
      r_max = g->r_max;
      n_points = g->n_points;
    }
  }
  if (cfg && cfg->contains("grid")) {
    const json& g = (*cfg)["grid"];
    if (g.contains("r_min")) r_min = g["r_min"].get<double>();
    if (g.contains("r_max")) r_max = g["r_max"].get<double>();
    if (g.contains("n_points")) n_points = g["n_points"].get<int>();
  }
  if (sub.count("--rmin") > 0) r_min = o.r_min;
  if (sub.count("--rmax") > 0) r_max = o.r_max;
  if (sub.count("--n") > 0) n_points = o.n_points;
  return RadialGrid(r_min, r_max, n_points);
}

FamilySpec resolve_family(const CLI::App& sub, const Options& o, const std::optional<json>& cfg) {
  FamilySpec spec;
  const bool stage_flags = sub.count("--ks") || sub.count("--k") || sub.count("--m");
  if (sub.count("--ks") > 0) {
    if (sub.count("--lambdas") == 0) {
      throw std::invalid_argument("--ks requires --lambdas with one value per stage");
    }
    if (o.ks.size() != o.lambdas.size()) {
      throw std::invalid_argument("--ks and --lambdas must have the same length");
    }
    for (std::size_t i = 0; i < o.ks.size(); ++i) spec.chain.push_back({o.ks[i], o.lambdas[i]});
  } else if (sub.count("--m") > 0) {
    if (sub.count("--k") == 0) throw std::invalid_argument("--m requires --k");
    if (sub.count("--lambdas") == 0 || o.lambdas.size() != 2) {
      throw std::invalid_argument("--k with --m requires --lambdas=<lambda_k>,<lambda_m>");
    }
    spec.chain.push_back({o.k, o.lambdas[0]});
    spec.chain.push_back({o.m, o.lambdas[1]});
  } else if (sub.count("--k") > 0) {
    if (sub.count("--lambda") == 0) throw std::invalid_argument("--k requires --lambda");
    spec.chain.push_back({o.k, o.lambda});
  } else if (cfg && cfg->contains("family")) {
    const json& f = (*cfg)["family"];
    for (const auto& stage : f.at("chain")) {
      spec.chain.push_back({stage.at("k").get<int>(), stage.at("lambda").get<double>()});
    }
  } else {
    throw std::invalid_argument(
        "no family given: use --k/--lambda, --k/--m/--lambdas, --ks/--lambdas, "
        "or a config file with a family object");
  }

  if (sub.count("--l") > 0) {
    spec.l = o.l;
  } else if (cfg && cfg->contains("family") && (*cfg)["family"].contains("l")) {
    spec.l = (*cfg)["family"]["l"].get<int>();
  } else {
    throw std::invalid_argument("missing --l (base centrifugal index)");
  }
  (void)stage_flags;
  validate_family(spec);
  return spec;
}

std::string stage_domain_text(const FamilySpec& spec, int stage_index) {
  if (spec.order() == 1) return interval_text(lambda_domain(spec.chain[0].k));
  if (spec.order() == 2) {
    const auto dom = paired_lambda_domain(spec.chain[0].k, spec.chain[1].k);
    return interval_text(dom.for_index(spec.chain[stage_index].k));
  }
  return "dense-scan";
}

json family_json(const FamilySpec& spec) {
  json f;
  f["l"] = spec.l;
  f["order"] = spec.order();
  json chain = json::array();
  for (int i = 0; i < spec.order(); ++i) {
    json stage;
    stage["k"] = spec.chain[i].k;
    stage["lambda"] = spec.chain[i].lambda;
    stage["lambda_domain"] = stage_domain_text(spec, i);
    chain.push_back(stage);
  }
  f["chain"] = chain;
  return f;
}

json grid_json(const RadialGrid& grid) {
  json g;
  g["r_min"] = grid.r_min;
  g["r_max"] = grid.r_max;
  g["n_points"] = grid.n_points;
  g["h"] = grid.h;
  return g;
}

json spectrum_json(const PredictedSpectrum& spectrum) {
  json s;
  json levels = json::array();
  for (const auto& lv : spectrum.levels) {
    json e;
    e["energy"] = lv.energy;
    e["principal"] = lv.principal;
    e["origin"] = lv.inherited ? "inherited" : "new";
    levels.push_back(e);
  }
  s["levels"] = levels;
  s["holes"] = spectrum.holes;
  return s;
}

std::string csv_row(const std::vector<double>& values) {
  std::string row;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) row += ',';
    row += format_double(values[i]);
  }
  row += '\n';
  return row;
}

struct NamedMissingState {
  int principal;
  MissingState state;
};

std::vector<NamedMissingState> compute_missing_states(const FamilySpec& spec,
                                                      const RadialGrid& grid) {
  std::vector<NamedMissingState> out;
  if (spec.order() == 1) {
    const auto seed = make_seed(spec.l, spec.chain[0].k, spec.chain[0].lambda);
    out.push_back({spec.l + spec.chain[0].k, missing_state_1(seed, grid)});
  } else if (spec.order() == 2) {
    const auto seed_k = make_seed_unchecked(spec.l, spec.chain[0].k, spec.chain[0].lambda);
    const auto seed_m = make_seed_unchecked(spec.l, spec.chain[1].k, spec.chain[1].lambda);
    auto pair = missing_states_2(seed_k, seed_m, grid);
    out.push_back({spec.l + spec.chain[0].k, std::move(pair.at_eps_k)});
    out.push_back({spec.l + spec.chain[1].k, std::move(pair.at_eps_m)});
  }
  // order >= 3 has no closed-form states here; the chain is potential-only.
  return out;
}

int cmd_gen(const CLI::App& sub, const Options& o) {
  const auto cfg = load_config(sub, o);
  const FamilySpec spec = resolve_family(sub, o, cfg);
  const RadialGrid grid = resolve_grid(sub, o, cfg, RadialGrid(1e-3, 40.0, 4000));
  const int levels = resolve_scalar<int>(sub, "--levels", o.levels, cfg, "levels", 3);
  const std::string format =
      resolve_scalar<std::string>(sub, "--format", o.format, cfg, "format", "csv");
  const std::string out =
      resolve_scalar<std::string>(sub, "--out", o.out, cfg, "output_path", "isospec_out");
  if (format != "csv" && format != "json") {
    throw std::invalid_argument("format must be csv or json");
  }
  if (levels < 1) throw std::invalid_argument("levels must be >= 1");

  const PartnerPotential pot = family_potential(spec);
  const PredictedSpectrum spectrum = predicted_spectrum(spec, levels + 2);
  const auto missing = compute_missing_states(spec, grid);

  std::vector<double> r(grid.n_points), v_partner(grid.n_points), v_base(grid.n_points);
  for (int i = 0; i < grid.n_points; ++i) {
    r[i] = grid.point(i);
    v_partner[i] = pot.evaluator(r[i]);
    v_base[i] = coulomb_potential(pot.l_out, r[i]);
  }

  json manifest;
  manifest["command"] = "gen";
  manifest["family"] = family_json(spec);
  manifest["l_out"] = pot.l_out;
  manifest["grid"] = grid_json(grid);
  manifest["format"] = format;
  manifest["levels"] = levels;
  manifest["predicted_spectrum"] = spectrum_json(spectrum);

  json states = json::array();
  for (const auto& nm : missing) {
    json s;
    s["principal"] = nm.principal;
    s["energy"] = nm.state.energy;
    s["closed_form_constant"] = nm.state.closed_form_constant;
    s["numeric_constant"] = nm.state.numeric_constant;
    s["constant_ratio"] = nm.state.numeric_constant / nm.state.closed_form_constant;
    if (format == "csv") {
      s["file"] = sibling_name(out, ".missing.n" + std::to_string(nm.principal) + ".csv");
    }
    states.push_back(s);
  }
  manifest["missing_states"] = states;

  if (format == "csv") {
    std::string body = "r,V_partner,V_base,delta\n";
    body.reserve(body.size() + static_cast<std::size_t>(grid.n_points) * 64);
    for (int i = 0; i < grid.n_points; ++i) {
      body += csv_row({r[i], v_partner[i], v_base[i], v_partner[i] - v_base[i]});
    }
    write_text(out + ".potential.csv", body);

    for (std::size_t si = 0; si < missing.size(); ++si) {
      std::string ms = "r,psi\n";
      ms.reserve(ms.size() + static_cast<std::size_t>(grid.n_points) * 32);
      for (int i = 0; i < grid.n_points; ++i) {
        ms += csv_row({r[i], missing[si].state.psi.values[i]});
      }
      write_text(out + ".missing.n" + std::to_string(missing[si].principal) + ".csv", ms);
    }

    json outputs;
    outputs["potential"] = sibling_name(out, ".potential.csv");
    outputs["manifest"] = sibling_name(out, ".manifest.json");
    manifest["outputs"] = outputs;
    write_text(out + ".manifest.json", manifest.dump(2) + "\n");
  } else {
    json data;
    data["r"] = r;
    data["V_partner"] = v_partner;
    data["V_base"] = v_base;
    std::vector<double> delta(grid.n_points);
    for (int i = 0; i < grid.n_points; ++i) delta[i] = v_partner[i] - v_base[i];
    data["delta"] = delta;
    manifest["potential"] = data;
    for (std::size_t si = 0; si < missing.size(); ++si) {
      manifest["missing_states"][si]["psi"] = missing[si].state.psi.values;
    }
    write_text(out + ".json", manifest.dump(2) + "\n");
  }
  return 0;
}

int cmd_verify(const CLI::App& sub, const Options& o) {
  const auto cfg = load_config(sub, o);
  const FamilySpec spec = resolve_family(sub, o, cfg);
  const RadialGrid grid = resolve_grid(sub, o, cfg, *preset_grid("reference"));
  const int levels = resolve_scalar<int>(sub, "--levels", o.levels, cfg, "levels", 3);
  const double tol = resolve_scalar<double>(sub, "--tol", o.tol, cfg, "tol", 5e-4);
  const std::string out =
      resolve_scalar<std::string>(sub, "--out", o.out, cfg, "output_path", "isospec_report.json");
  if (levels < 1) throw std::invalid_argument("levels must be >= 1");
  if (tol <= 0) throw std::invalid_argument("tol must be > 0");

  const SpectrumReport rep = spectrum_check(spec, levels, grid, tol, o.inject);

  json j;
  j["command"] = "verify";
  j["family"] = family_json(spec);
  j["grid"] = grid_json(rep.grid_used);
  j["tolerance"] = rep.tolerance;
  json jl = json::array();
  for (std::size_t i = 0; i < rep.predicted.size(); ++i) {
    json e;
    e["predicted"] = rep.predicted[i];
    e["computed"] = rep.computed[i];
    e["abs_error"] = rep.abs_errors[i];
    e["within_tol"] = rep.abs_errors[i] <= rep.tolerance;
    jl.push_back(e);
  }
  j["levels"] = jl;
  json jh = json::array();
  for (std::size_t i = 0; i < rep.holes_expected.size(); ++i) {
    json e;
    e["energy"] = rep.holes_expected[i];
    e["window"] = rep.hole_windows[i];
    e["confirmed"] = static_cast<bool>(rep.holes_confirmed[i]);
    jh.push_back(e);
  }
  j["holes"] = jh;
  j["levels_within_tol"] = rep.levels_within_tol;
  j["passed"] = rep.passed;

  for (std::size_t i = 0; i < rep.predicted.size(); ++i) {
    std::cout << "level " << (i + 1) << ": predicted=" << format_double(rep.predicted[i])
              << " computed=" << format_double(rep.computed[i])
              << " abs_error=" << format_double(rep.abs_errors[i])
              << (rep.abs_errors[i] <= rep.tolerance ? " ok" : " FAIL") << "\n";
  }
  for (std::size_t i = 0; i < rep.holes_expected.size(); ++i) {
    std::cout << "hole " << format_double(rep.holes_expected[i])
              << ": window=" << format_double(rep.hole_windows[i])
              << (rep.holes_confirmed[i] ? " confirmed" : " FAIL") << "\n";
  }
  std::cout << "spectrum verification: " << (rep.passed ? "PASSED" : "FAILED") << "\n";
  write_text(out, j.dump(2) + "\n");
  return rep.passed ? 0 : 1;
}

int figure_potentials(const std::string& out) {
  // One-parameter deformations over l = 2, k = -1: the lambda -> inf limit
  // approaches the undeformed l_out = 1 potential, small lambda - 1 deepens
  // the well near the origin.
  const int l = 2;
  const int k = -1;
  const std::vector<double> lambdas = {1.5, 2.0, 5.0, 20.0};
  const RadialGrid grid(0.05, 15.0, 300);

  std::vector<PartnerPotential> pots;
  for (double lam : lambdas) {
    FamilySpec spec;
    spec.l = l;
    spec.chain = {{k, lam}};
    pots.push_back(family_potential(spec));
  }

  std::string header = "r,V_base";
  for (double lam : lambdas) header += ",lambda_" + format_double(lam);
  std::string body = header + "\n";
  for (int i = 0; i < grid.n_points; ++i) {
    const double r = grid.point(i);
    std::vector<double> row = {r, coulomb_potential(pots[0].l_out, r)};
    for (const auto& p : pots) row.push_back(p.evaluator(r));
    body += csv_row(row);
  }
  write_text(out + ".csv", body);

  json manifest;
  manifest["command"] = "figure";
  manifest["preset"] = "fig1";
  manifest["l"] = l;
  manifest["k"] = k;
  manifest["lambda_domain"] = interval_text(lambda_domain(k));
  manifest["lambdas"] = lambdas;
  manifest["l_out"] = pots[0].l_out;
  manifest["grid"] = grid_json(grid);
  json cols = json::array();
  cols.push_back("r");
  cols.push_back("V_base");
  for (double lam : lambdas) cols.push_back("lambda_" + format_double(lam));
  manifest["columns"] = cols;
  json outputs;
  outputs["csv"] = sibling_name(out, ".csv");
  outputs["manifest"] = sibling_name(out, ".manifest.json");
  manifest["outputs"] = outputs;
  write_text(out + ".manifest.json", manifest.dump(2) + "\n");
  return 0;
}

int figure_levels(const std::string& out) {
  // Level diagram: the l_out = 2 ladder next to the two-parameter partner
  // built over l = 4 with stages k = -3, 0, whose spectrum starts at -1,
  // jumps to -1/16, and then continues hydrogen-like (holes at -1/4, -1/9).
  FamilySpec spec;
  spec.l = 4;
  spec.chain = {{-3, -0.5}, {0, 0.5}};
  validate_family(spec);
  const PartnerPotential pot = family_potential(spec);
  const PredictedSpectrum spectrum = predicted_spectrum(spec, 4);

  json j;
  j["command"] = "figure";
  j["preset"] = "fig2";
  json base;
  base["l"] = pot.l_out;
  json base_levels = json::array();
  for (int K = 1; K <= 6; ++K) {
    json e;
    e["principal"] = pot.l_out + K;
    e["energy"] = energy_level(pot.l_out, K);
    base_levels.push_back(e);
  }
  base["levels"] = base_levels;
  j["base"] = base;

  json partner;
  partner["family"] = family_json(spec);
  partner["l_out"] = pot.l_out;
  partner["levels"] = spectrum_json(spectrum)["levels"];
  partner["holes"] = spectrum.holes;
  json gap;
  gap["from"] = spectrum.levels[0].energy;
  gap["to"] = spectrum.levels[1].energy;
  partner["gap"] = gap;
  j["partner"] = partner;

  write_text(out + ".json", j.dump(2) + "\n");
  return 0;
}

int cmd_figure(const Options& o) {
  if (o.preset == "fig1") return figure_potentials(o.out.empty() ? "fig1" : o.out);
  return figure_levels(o.out.empty() ? "fig2" : o.out);
}

void add_family_options(CLI::App* sub, Options& o) {
  sub->add_option("--l", o.l, "base centrifugal index l (the family lowers it by the order)");
  sub->add_option("--k", o.k, "stage offset k in [-(l-1), 0] for one-parameter families");
  sub->add_option("--m", o.m, "second stage offset for two-parameter families");
  sub->add_option("--lambda", o.lambda, "family parameter for a one-parameter family");
  sub->add_option("--ks", o.ks, "comma-separated stage offsets, e.g. --ks=-3,0")
      ->delimiter(',');
  sub->add_option("--lambdas", o.lambdas,
                  "comma-separated family parameters, one per stage, e.g. --lambdas=-0.5,0.5")
      ->delimiter(',');
}

void add_grid_options(CLI::App* sub, Options& o) {
  sub->add_option("--rmin", o.r_min, "grid start, > 0");
  sub->add_option("--rmax", o.r_max, "grid end");
  sub->add_option("--n", o.n_points, "number of grid points");
}

void add_io_options(CLI::App* sub, Options& o) {
  sub->add_option("--out", o.out, "output path (gen: file prefix; verify: report path)");
  sub->add_option("--config", o.config_path, "JSON config file; flags override its values");
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

int run(int argc, char** argv) {
  Options o;
  CLI::App app{"isospectral deformation families of the radial Coulomb problem"};
  app.require_subcommand(1);

  CLI::App* gen = app.add_subcommand(
      "gen", "sample a partner potential and its missing states to files");
  add_family_options(gen, o);
  add_grid_options(gen, o);
  add_io_options(gen, o);
  gen->add_option("--levels", o.levels, "levels listed in the predicted spectrum (default 3)");
  gen->add_option("--format", o.format, "csv (default) or json")
      ->check(CLI::IsMember({"csv", "json"}));

  CLI::App* verify = app.add_subcommand(
      "verify", "check the predicted spectrum against a finite-difference solve");
  add_family_options(verify, o);
  add_grid_options(verify, o);
  add_io_options(verify, o);
  verify->add_option("--levels", o.levels, "number of levels to compare (default 3)");
  verify->add_option("--tol", o.tol, "absolute energy tolerance (default 5e-4)");
  verify->add_option("--inject-level-error", o.inject,
                     "added to the first computed level; exercises the failure path");

  CLI::App* figure = app.add_subcommand("figure", "write a canned figure dataset");
  figure->add_option("preset", o.preset, "fig1 (potential curves) or fig2 (level diagram)")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2"}));
  figure->add_option("--out", o.out, "output file prefix (default: preset name)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (gen->parsed()) return cmd_gen(*gen, o);
    if (verify->parsed()) return cmd_verify(*verify, o);
    return cmd_figure(o);
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace isospec::cli
