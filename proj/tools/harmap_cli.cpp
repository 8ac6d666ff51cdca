// Command-line front end: checks, budgets, construction, structural identity,
// rendering and the gallery listing. Reports go to stdout as JSON.
//
// Exit codes: 0 holds on samples, 1 violated, 2 input error or inapplicable.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "harmap/harmap.hpp"

using namespace harmap;
using nlohmann::json;

namespace {

constexpr int kExitHolds = 0;
constexpr int kExitViolated = 1;
constexpr int kExitInput = 2;

class InputError : public Error {
 public:
  using Error::Error;
};

/// Map selection shared by every subcommand.
struct MapArgs {
  std::string named;
  std::vector<std::string> params;
  std::string spec;

  void attach(CLI::App* app) {
    app->add_option("--named", named, "gallery map name");
    app->add_option("--param", params, "gallery parameter key=value (repeatable)");
    app->add_option("--spec", spec, "function spec as a JSON string or a path to a JSON file");
  }

  gallery::Params parsed_params() const {
    gallery::Params out;
    for (const auto& kv : params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw InputError("--param expects key=value, got " + kv);
      try {
        std::size_t used = 0;
        const std::string value = kv.substr(eq + 1);
        out[kv.substr(0, eq)] = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::logic_error&) {
        throw InputError("--param value is not a number: " + kv);
      }
    }
    return out;
  }

  HarmonicMap build() const {
    if (!named.empty() && !spec.empty()) throw InputError("give either --named or --spec, not both");
    if (!named.empty()) return gallery::get(named, parsed_params());
    if (!spec.empty()) return io::map_from_json(read_json_text(spec));
    throw InputError("no map given: use --named or --spec");
  }

  json echo() const {
    json j;
    if (!named.empty()) {
      j["named"] = named;
      j["params"] = parsed_params();
    } else {
      j["spec"] = spec;
    }
    return j;
  }

  /// Inline JSON when the text starts like JSON, otherwise a file path.
  static std::string read_json_text(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return arg;
    std::ifstream in(arg);
    if (!in) throw InputError("cannot read JSON file " + arg);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
  }
};

json parse_json(const std::string& arg) {
  try {
    return json::parse(MapArgs::read_json_text(arg));
  } catch (const json::exception& e) {
    throw io::ParseError(std::string("malformed JSON: ") + e.what());
  }
}

/// Analytic function from a spec; named maps contribute their analytic part.
AnalyticFunction analytic_from(const std::string& arg) {
  const auto map = io::map_from_json(MapArgs::read_json_text(arg));
  if (!map.is_analytic()) throw InputError("expected an analytic function (empty 'g')");
  return map.h();
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::HoldsOnSamples: return kExitHolds;
    case Verdict::Violated: return kExitViolated;
    case Verdict::Inconclusive: return kExitInput;
  }
  return kExitInput;
}

struct CheckArgs {
  MapArgs map;
  std::string criterion;
  int n_radial = 40;
  int n_angular = 96;
  double r_max = 0.95;
  int n_epsilon = CriteriaDefaults::kEpsilonDirections;
  int n_gamma = CriteriaDefaults::kGammaCandidates;
  int n = 400;
  double tol = 1e-6;
  std::string phi = "identity";
  std::vector<double> phi_a{1.0, 0.0};
  std::vector<double> phi_b{0.0, 0.0};
  std::string G;
  std::string Phi;
};

WirtingerFunction select_phi(const CheckArgs& a, const HarmonicMap& f) {
  if (a.phi == "identity") return WirtingerFunction::identity();
  if (a.phi == "inverse") return make_inverse(f);
  if (a.phi == "linear") {
    return WirtingerFunction::linear({a.phi_a[0], a.phi_a[1]}, {a.phi_b[0], a.phi_b[1]});
  }
  throw InputError("--phi must be identity, inverse or linear");
}

CheckReport run_oracle(const HarmonicMap& f, const CheckArgs& a, const GridSpec& grid) {
  const double r_max = std::min(0.99, 0.99 * f.domain_radius());
  const auto inj = injectivity_scan(f, a.n, r_max, a.tol);
  const auto jac = jacobian_positivity_scan(f, grid);
  const double rho = 0.9 * r_max;
  const auto curve = curve_simplicity(f, rho);
  CheckReport r;
  r.criterion = "oracle";
  r.margin = std::min({inj.margin, jac.margin, curve.margin});
  r.grid = grid;
  r.verdict = Verdict::HoldsOnSamples;
  for (const auto* sub : {&inj, &jac, &curve}) {
    r.metadata[sub->criterion + "_margin"] = sub->margin;
    r.notes.push_back(sub->criterion + ": " + to_string(sub->verdict));
    if (sub->verdict == Verdict::Inconclusive && r.verdict == Verdict::HoldsOnSamples) {
      r.verdict = Verdict::Inconclusive;
      r.witness = sub->witness;
    }
    if (sub->verdict == Verdict::Violated && r.verdict != Verdict::Violated) {
      r.verdict = Verdict::Violated;
      r.witness = sub->witness;
    }
  }
  r.metadata["injectivity_points"] = a.n;
  r.metadata["injectivity_r_max"] = r_max;
  r.metadata["curve_rho"] = rho;
  return r;
}

int cmd_check(const CheckArgs& a) {
  const auto f = a.map.build();
  const GridSpec grid{a.n_radial, a.n_angular, a.r_max};
  grid.validate();
  CheckReport r;
  if (a.criterion == "corollary1") {
    r = check_corollary1(f, select_phi(a, f), grid);
  } else if (a.criterion == "theorem1") {
    r = check_theorem1(f, select_phi(a, f), grid, a.n_epsilon);
  } else if (a.criterion == "theoremA") {
    r = check_theoremA(f, grid, a.n_gamma);
  } else if (a.criterion == "theoremB") {
    if (a.G.empty()) throw InputError("theoremB needs --G");
    r = check_theoremB(f, analytic_from(a.G), grid, a.n_gamma);
  } else if (a.criterion == "philike") {
    if (!f.is_analytic()) throw InputError("philike applies to analytic maps only");
    r = check_philike(f.h(), a.Phi.empty() ? AnalyticFunction::identity() : analytic_from(a.Phi), grid);
  } else if (a.criterion == "oracle") {
    r = run_oracle(f, a, grid);
  } else {
    throw InputError("unknown criterion '" + a.criterion + "'");
  }
  auto j = to_json(r);
  j["inputs"] = {{"map", a.map.echo()},     {"criterion", a.criterion}, {"n_radial", a.n_radial},
                 {"n_angular", a.n_angular}, {"r_max", a.r_max},         {"n_epsilon", a.n_epsilon},
                 {"n_gamma", a.n_gamma},     {"n", a.n},                 {"tol", a.tol},
                 {"phi", a.phi},             {"phi_a", a.phi_a},         {"phi_b", a.phi_b}};
  print(j);
  return exit_for(r.verdict);
}

struct BudgetArgs {
  MapArgs map;
  double r = 0.5;
  double alpha = 0.0;
  std::string perturbation = "conj_z";
  double A = 0.0;
  double eps = 0.0;
  bool unsafe = false;
};

Perturbation select_perturbation(const BudgetArgs& a) {
  Perturbation p = Perturbation::conj_z();
  if (a.perturbation != "conj_z") {
    const auto map = io::map_from_json(MapArgs::read_json_text(a.perturbation));
    p = {map.h(), map.g(), std::nullopt};
  }
  if (a.A > 0.0) p.A_closed_form = a.A;
  return p;
}

OrderParam select_order(const BudgetArgs& a, const HarmonicMap& f) {
  if (a.alpha == 0.0) return OrderParam::for_map(f);
  if (a.alpha == 2.0 && f.is_analytic()) return OrderParam::analytic_case();
  return OrderParam::user(a.alpha);
}

json budget_inputs(const BudgetArgs& a) {
  return {{"map", a.map.echo()}, {"r", a.r},   {"alpha", a.alpha},
          {"perturbation", a.perturbation}, {"A", a.A}};
}

int cmd_bound(const BudgetArgs& a) {
  const auto f = a.map.build();
  const auto b = epsilon_budget(f, select_perturbation(a), a.r, select_order(a, f));
  auto j = to_json(b);
  j["inputs"] = budget_inputs(a);
  print(j);
  return kExitHolds;
}

int cmd_construct(const BudgetArgs& a) {
  const auto f = a.map.build();
  ConstructOptions opt;
  opt.order = select_order(a, f);
  opt.unsafe = a.unsafe;
  const auto res = construct(f, select_perturbation(a), a.r, a.eps, opt);
  const auto inj = injectivity_scan(res.F, 400, 0.99);
  const auto jac = jacobian_positivity_scan(res.F, {40, 96, 0.99});
  const auto curve = curve_simplicity(res.F, 0.9);
  auto j = to_json(res);
  j["inputs"] = budget_inputs(a);
  j["inputs"]["eps"] = a.eps;
  j["inputs"]["unsafe"] = a.unsafe;
  j["oracle"] = {{"injectivity", to_json(inj)},
                 {"jacobian_positivity", to_json(jac)},
                 {"curve_simplicity", to_json(curve)}};
  print(j);
  const bool ok = inj.holds() && jac.holds() && curve.holds();
  return ok ? kExitHolds : kExitViolated;
}

struct HerglotzArgs {
  MapArgs map;
  std::string measure;
  double c = 1.0;
  double c1 = 0.0;
  std::vector<double> c0{0.0, 0.0};
  int n_radial = 40;
  int n_angular = 96;
  double r_max = 0.8;
  double tol = 1e-5;
};

int cmd_herglotz(const HerglotzArgs& a) {
  const auto f = a.map.build();
  if (!f.is_analytic()) throw InputError("herglotz applies to analytic maps only");
  const auto mu = io::measure_from_json(parse_json(a.measure));
  const StructuralParams params{a.c, a.c1, {a.c0[0], a.c0[1]}};
  params.validate();
  const GridSpec grid{a.n_radial, a.n_angular, a.r_max};
  grid.validate();
  const double dev = verify_structural_identity(f.h(), mu, params, grid);

  auto samples = json::array();
  for (int k = 0; k < 8; ++k) {
    const Complex z = std::polar(0.5 * a.r_max, kTwoPi * k / 8.0);
    const Complex w = f(z);
    const Complex phi = build_phi([&](Complex v) { return invert(f, v, z); }, mu, params, w);
    samples.push_back({{"z", complex_to_json(z)}, {"w", complex_to_json(w)}, {"phi", complex_to_json(phi)}});
  }
  const bool ok = dev <= a.tol;
  print({{"schema_version", kSchemaVersion},
         {"criterion", "structural_identity"},
         {"verdict", to_string(ok ? Verdict::HoldsOnSamples : Verdict::Violated)},
         {"max_identity_deviation", dev},
         {"tolerance", a.tol},
         {"grid", grid_to_json(grid)},
         {"phi_samples", samples},
         {"inputs",
          {{"map", a.map.echo()},
           {"measure", io::to_json(mu)},
           {"c", a.c},
           {"c1", a.c1},
           {"c0", a.c0}}}});
  return ok ? kExitHolds : kExitViolated;
}

struct RenderArgs {
  MapArgs map;
  double rho_max = 11.0 / 12.0;
  int samples = 1024;
  int canvas = 800;
  double fit_trim = 0.05;
  std::string out;
};

int cmd_render(const RenderArgs& a) {
  const auto f = a.map.build();
  RenderOptions opt;
  opt.rho_max = a.rho_max;
  opt.samples_per_curve = a.samples;
  opt.canvas = a.canvas;
  opt.fit_trim = a.fit_trim;
  opt.reference_slit_domain = a.map.named == "h1";
  const auto svg = render_svg(f, opt);
  if (a.out.empty() || a.out == "-") {
    std::cout << svg;
    return kExitHolds;
  }
  std::ofstream file(a.out, std::ios::binary);
  if (!file) throw InputError("cannot write " + a.out);
  file << svg;
  if (!file.flush()) throw InputError("failed writing " + a.out);
  print({{"schema_version", kSchemaVersion},
         {"output", a.out},
         {"bytes", svg.size()},
         {"inputs", {{"map", a.map.echo()}, {"rho_max", a.rho_max}, {"samples", a.samples}, {"canvas", a.canvas},
                     {"fit_trim", a.fit_trim}}}});
  return kExitHolds;
}

int cmd_gallery_list() {
  auto entries = json::array();
  for (const auto& e : gallery::list()) {
    entries.push_back({{"name", e.name}, {"params", e.params}, {"formula", e.formula},
                       {"provenance", e.provenance}});
  }
  print({{"schema_version", kSchemaVersion}, {"maps", entries}});
  return kExitHolds;
}

void add_grid(CLI::App* app, int& n_radial, int& n_angular, double& r_max) {
  app->add_option("--n-radial", n_radial, "radial grid rings");
  app->add_option("--n-angular", n_angular, "angular samples per ring");
  app->add_option("--r-max", r_max, "outermost grid radius");
}

void add_budget(CLI::App* app, BudgetArgs& a) {
  a.map.attach(app);
  app->add_option("--r", a.r, "dilation radius r in (0, 1)");
  app->add_option("--alpha", a.alpha, "order alpha (default: 2 for analytic maps, else 3)");
  app->add_option("--perturbation", a.perturbation, "conj_z or a function spec for p + conj q");
  app->add_option("--A", a.A, "known sup of |p'| + |q'|");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Univalence criteria and constructions for planar harmonic maps"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "run a univalence criterion or the brute-force oracle");
  check.map.attach(c);
  c->add_option("--criterion", check.criterion, "theorem1|corollary1|theoremA|theoremB|philike|oracle")
      ->required();
  add_grid(c, check.n_radial, check.n_angular, check.r_max);
  c->add_option("--n-epsilon", check.n_epsilon, "directions on |eps| = 1");
  c->add_option("--n-gamma", check.n_gamma, "coarse rotation candidates");
  c->add_option("--n", check.n, "oracle injectivity points");
  c->add_option("--tol", check.tol, "oracle injectivity tolerance");
  c->add_option("--phi", check.phi, "identity|inverse|linear");
  c->add_option("--phi-a", check.phi_a, "linear phi coefficient a as re im")->expected(2);
  c->add_option("--phi-b", check.phi_b, "linear phi coefficient b as re im")->expected(2);
  c->add_option("--G", check.G, "convex analytic G as a function spec");
  c->add_option("--Phi", check.Phi, "analytic Phi as a function spec");

  BudgetArgs bound;
  auto* b = app.add_subcommand("bound", "epsilon budget for the perturbation construction");
  add_budget(b, bound);

  BudgetArgs build;
  auto* k = app.add_subcommand("construct", "build f(rz) + eps phi(z) and scan it");
  add_budget(k, build);
  k->add_option("--eps", build.eps, "perturbation size")->required();
  k->add_flag("--unsafe", build.unsafe, "allow eps at or above the budget");

  HerglotzArgs herglotz;
  auto* h = app.add_subcommand("herglotz", "verify the structural identity for a measure");
  herglotz.map.attach(h);
  h->add_option("--measure", herglotz.measure, "measure JSON or file")->required();
  h->add_option("--c", herglotz.c, "c > 0");
  h->add_option("--c1", herglotz.c1, "real c1");
  h->add_option("--c0", herglotz.c0, "complex c0 as re im")->expected(2);
  add_grid(h, herglotz.n_radial, herglotz.n_angular, herglotz.r_max);
  h->add_option("--tol", herglotz.tol, "deviation tolerance");

  RenderArgs render;
  auto* r = app.add_subcommand("render", "SVG of the image of the disk");
  render.map.attach(r);
  r->add_option("--rho-max", render.rho_max, "largest circle radius");
  r->add_option("--samples", render.samples, "points per curve");
  r->add_option("--canvas", render.canvas, "canvas size in pixels");
  r->add_option("--fit-trim", render.fit_trim, "fraction of points per axis end ignored when fitting (0 fits all)");
  r->add_option("--out", render.out, "output path (default stdout)");

  auto* g = app.add_subcommand("gallery-list", "list the named maps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (c->parsed()) return cmd_check(check);
    if (b->parsed()) return cmd_bound(bound);
    if (k->parsed()) return cmd_construct(build);
    if (h->parsed()) return cmd_herglotz(herglotz);
    if (r->parsed()) return cmd_render(render);
    if (g->parsed()) return cmd_gallery_list();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
