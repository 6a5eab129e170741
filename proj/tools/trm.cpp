// trm — distances, rays and cometrics of the Teichmueller-Randers family on
// the upper half-plane torus model, plus the property-verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/parse error,
// 3 domain error.

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "trm/halfplane.hpp"
#include "trm/modelspace.hpp"
#include "trm/parse.hpp"
#include "trm/randers.hpp"
#include "trm/torus.hpp"
#include "trm/verify.hpp"
#include "trm/weakmetric.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("TRM_SEED")) {
    const std::string s(env);
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
      throw trm::ParseError("TRM_SEED is not an integer");
    return v;
  }
  return 0;
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty() || output_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path);
  if (!out) throw std::runtime_error("cannot open output file: " + output_path);
  out << text;
}

std::string csv_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct RayArgs {
  std::string base, g, f;
  double t_max = 20.0;
  int samples = 201;
  std::string format = "csv";
  std::string output;
};

struct DistArgs {
  std::string from, to, f;
  double t = 1.0;
  std::string output;
};

struct GeoArgs {
  std::string from, to;
  double t = 1.0;
  int samples = 65;
  std::string format = "csv";
  std::string output;
};

struct IsoArgs {
  std::string f;
  double t = 1.0;
  int pairs = 1000;
  std::uint64_t seed = 0;
  std::string output;
};

struct CometricArgs {
  std::string space, phi, psi;
  bool check_dual = false;
  int samples = 4000;
  std::uint64_t seed = 0;
  std::string output;
};

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = 0;
  std::string output;
};

int cmd_dist(const DistArgs& a) {
  const trm::HPoint from = trm::parse_hpoint(a.from);
  const trm::HPoint to = trm::parse_hpoint(a.to);
  const trm::WeightParam t(a.t);
  ordered_json j;
  j["schema"] = 1;
  j["d_teich"] = trm::hyp_dist(from, to);
  j["delta_t"] = trm::delta_t(from, to, t);
  if (!a.f.empty()) {
    const trm::FoliationVec f = trm::parse_foliation(a.f);
    j["delta_omega"] = trm::delta_omega(from, to, f, t);
  }
  emit(j.dump(2) + "\n", a.output);
  return kExitOk;
}

int cmd_geodesic(const GeoArgs& a) {
  const trm::HPoint from = trm::parse_hpoint(a.from);
  const trm::HPoint to = trm::parse_hpoint(a.to);
  if (a.samples < 2) throw trm::ParseError("--samples must be at least 2");
  const trm::WeightParam t(a.t);
  const trm::Geodesic g(from, to);
  const trm::PathSample path = trm::geodesic_path(g, a.samples);
  if (a.format == "csv") {
    std::string out = "s,re,im,norm\n";
    for (std::size_t i = 0; i < path.grid().size(); ++i) {
      const double s = path.grid()[i];
      const trm::HPoint p = path.points()[i];
      const double n = trm::finsler_norm({p, g.velocity(s)}, t);
      out += csv_num(s) + "," + csv_num(p.re()) + "," + csv_num(p.im()) + "," +
             csv_num(n) + "\n";
    }
    emit(out, a.output);
  } else {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < path.grid().size(); ++i) {
      const double s = path.grid()[i];
      const trm::HPoint p = path.points()[i];
      rows.push_back({{"s", s},
                      {"re", p.re()},
                      {"im", p.im()},
                      {"norm", trm::finsler_norm({p, g.velocity(s)}, t)}});
    }
    ordered_json j;
    j["schema"] = 1;
    j["length"] = g.length();
    j["rows"] = rows;
    emit(j.dump(2) + "\n", a.output);
  }
  return kExitOk;
}

int cmd_ray(const RayArgs& a) {
  const trm::HPoint base = trm::parse_hpoint(a.base);
  const trm::FoliationVec g = trm::parse_foliation(a.g);
  const trm::FoliationVec f = trm::parse_foliation(a.f);
  if (a.samples < 2) throw trm::ParseError("--samples must be at least 2");
  if (!(a.t_max > 0)) throw trm::ParseError("--tmax must be positive");
  const trm::RayReport r = trm::ray_profile(base, g, f, a.t_max, a.samples);
  const char* verdict =
      r.verdict == trm::RayVerdict::Bounded ? "Bounded" : "Divergent";
  if (a.format == "csv") {
    std::string out = "t,delta_omega,decay,im\n";
    const trm::GeodesicRay ray =
        trm::geodesic_ray(base, trm::boundary_point(g));
    for (std::size_t i = 0; i < r.t_grid.size(); ++i) {
      out += csv_num(r.t_grid[i]) + "," + csv_num(r.delta_values[i]) + "," +
             csv_num(r.decay_values[i]) + "," +
             csv_num(ray.at(r.t_grid[i]).im()) + "\n";
    }
    out += std::string("# verdict,") + verdict + "\n";
    out += "# limit_estimate," + csv_num(r.limit_estimate) + "\n";
    out += "# walsh_value," + csv_num(r.walsh_value) + "\n";
    emit(out, a.output);
  } else {
    ordered_json rows = ordered_json::array();
    const trm::GeodesicRay ray =
        trm::geodesic_ray(base, trm::boundary_point(g));
    for (std::size_t i = 0; i < r.t_grid.size(); ++i)
      rows.push_back({{"t", r.t_grid[i]},
                      {"delta_omega", r.delta_values[i]},
                      {"decay", r.decay_values[i]},
                      {"im", ray.at(r.t_grid[i]).im()}});
    ordered_json j;
    j["schema"] = 1;
    j["verdict"] = verdict;
    j["limit_estimate"] = r.limit_estimate;
    j["walsh_value"] = r.walsh_value;
    j["tail_slope"] = r.tail_slope;
    j["tail_oscillation"] = r.tail_oscillation;
    j["rows"] = rows;
    emit(j.dump(2) + "\n", a.output);
  }
  return kExitOk;
}

int cmd_isometry(const IsoArgs& a) {
  const trm::FoliationVec f = trm::parse_foliation(a.f);
  const trm::WeightParam t(a.t);
  if (a.pairs < 1) throw trm::ParseError("--pairs must be positive");
  const trm::IsometryReport r = trm::isometry_check(f, t, a.pairs, a.seed);
  ordered_json j;
  j["schema"] = 1;
  j["f"] = {f.a, f.b};
  j["t"] = a.t;
  j["pairs"] = r.pairs;
  j["seed"] = a.seed;
  j["max_deviation"] = r.max_deviation;
  j["pass"] = r.pass;
  emit(j.dump(2) + "\n", a.output);
  return r.pass ? kExitOk : kExitVerifyFail;
}

int cmd_cometric(const CometricArgs& a) {
  const trm::ModelSpace space = trm::load_model_space(a.space);
  trm::ModelQD phi, psi;
  phi.coeffs = trm::parse_complex_list(a.phi);
  psi.coeffs = trm::parse_complex_list(a.psi);
  if (static_cast<int>(phi.coeffs.size()) != space.dim() ||
      static_cast<int>(psi.coeffs.size()) != space.dim())
    throw trm::ParseError("--phi/--psi must list one coefficient per basis "
                          "term");
  const trm::RandersForm form(space, psi);
  const trm::CometricResult r = trm::cometric(space, phi, form);
  ordered_json j;
  j["schema"] = 1;
  j["g_omega"] = r.value;
  j["boundary_residual"] = r.boundary_residual;
  j["psi_l1"] = form.psi_l1;
  if (a.check_dual) {
    const trm::CometricDualReport d =
        trm::cometric_dual_check(space, phi, form, a.samples, a.seed);
    j["dual_estimate"] = d.dual_estimate;
    j["rel_err"] = d.rel_error;
  }
  emit(j.dump(2) + "\n", a.output);
  return kExitOk;
}

int cmd_verify(const VerifyArgs& a) {
  if (a.suite != "all") {
    const auto& names = trm::verify::suite_names();
    bool known = false;
    for (const auto& n : names) known = known || n == a.suite;
    if (!known) throw trm::ParseError("unknown suite: " + a.suite);
  }
  const auto reports = trm::verify::run(a.suite, a.seed);
  bool pass = true;
  double worst = 0.0;
  ordered_json checks = ordered_json::array();
  for (const auto& suite : reports) {
    pass = pass && suite.pass();
    worst = std::max(worst, suite.max_violation());
    for (const auto& c : suite.checks) {
      ordered_json jc;
      jc["suite"] = suite.name;
      jc["check"] = c.id;
      jc["anchor"] = c.anchor;
      jc["claim"] = c.claim;
      jc["cases"] = c.cases;
      jc["max_violation"] = c.max_violation;
      jc["tolerance"] = c.tolerance;
      jc["pass"] = c.pass;
      if (!c.note.empty()) jc["note"] = c.note;
      checks.push_back(jc);
    }
  }
  ordered_json j;
  j["schema"] = 1;
  j["suite"] = a.suite;
  j["seed"] = a.seed;
  j["cases"] = checks.size();
  j["max_violation"] = worst;
  j["pass"] = pass;
  j["checks"] = checks;
  emit(j.dump(2) + "\n", a.output);
  return pass ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "trm: Teichmueller-Randers weak metrics on the half-plane torus model"};
  app.require_subcommand(1);

  DistArgs dist;
  GeoArgs geo;
  RayArgs ray;
  IsoArgs iso;
  CometricArgs com;
  VerifyArgs ver;

  std::uint64_t seed0 = 0;
  try {
    seed0 = default_seed();
  } catch (const trm::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  iso.seed = com.seed = ver.seed = seed0;

  auto* d = app.add_subcommand("dist", "distances between two marked tori");
  d->add_option("--from", dist.from, "start point, e.g. 1+2i")->required();
  d->add_option("--to", dist.to, "end point")->required();
  d->add_option("--t", dist.t, "deformation weight in [0,1]");
  d->add_option("--f", dist.f, "foliation a,b for the deformed distance");
  d->add_option("--output", dist.output, "output path (default stdout)");

  auto* g = app.add_subcommand("geodesic", "sample a geodesic segment");
  g->add_option("--from", geo.from)->required();
  g->add_option("--to", geo.to)->required();
  g->add_option("--t", geo.t, "weight for the reported norm column");
  g->add_option("--samples", geo.samples, "sample count (>= 2)");
  g->add_option("--out", geo.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  g->add_option("--output", geo.output);

  auto* r = app.add_subcommand("ray", "deformed length profile along a ray");
  r->add_option("--base", ray.base)->required();
  r->add_option("--g", ray.g, "directing foliation a,b")->required();
  r->add_option("--f", ray.f, "deforming foliation a,b")->required();
  r->add_option("--tmax", ray.t_max);
  r->add_option("--samples", ray.samples);
  r->add_option("--out", ray.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  r->add_option("--output", ray.output);

  auto* i = app.add_subcommand("isometry-check",
                               "deformed distance vs chart image");
  i->add_option("--f", iso.f)->required();
  i->add_option("--t", iso.t);
  i->add_option("--pairs", iso.pairs);
  i->add_option("--seed", iso.seed);
  i->add_option("--output", iso.output);

  auto* c = app.add_subcommand("cometric", "dual norm of the deformed metric");
  c->add_option("--space", com.space, "model-space JSON file")->required();
  c->add_option("--phi", com.phi, "coefficients, e.g. 1,0.5i")->required();
  c->add_option("--psi", com.psi, "form coefficients")->required();
  c->add_flag("--check-dual", com.check_dual,
              "also run the sampled dual characterization");
  c->add_option("--samples", com.samples);
  c->add_option("--seed", com.seed);
  c->add_option("--output", com.output);

  auto* v = app.add_subcommand("verify", "run property suites");
  v->add_option("--suite", ver.suite,
                "all, halfplane, weakmetric, torus, modelspace or randers");
  v->add_option("--seed", ver.seed);
  v->add_option("--output", ver.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.get_name() << ": " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*d) return cmd_dist(dist);
    if (*g) return cmd_geodesic(geo);
    if (*r) return cmd_ray(ray);
    if (*i) return cmd_isometry(iso);
    if (*c) return cmd_cometric(com);
    if (*v) return cmd_verify(ver);
  } catch (const trm::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitVerifyFail;
  }
  return kExitUsage;
}
