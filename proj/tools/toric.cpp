// toric: command-line front end over the header-only library.
//
// Exit codes: 0 success, 2 validation error, 3 numeric tolerance failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "toric/bernstein.hpp"
#include "toric/divisors.hpp"
#include "toric/intersection.hpp"
#include "toric/io.hpp"
#include "toric/mahler_heights.hpp"

namespace {

using namespace toric;
using io::json;

constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kNumeric = 3;

struct Globals {
  double tol = 1e-6;
  std::size_t max_grid = 0;
  unsigned long long seed = 1;
  bool json_out = false;
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

void emit(const Globals& g, const json& j, const std::string& text) {
  if (g.json_out) std::cout << j.dump(2) << '\n';
  else std::cout << text;
}

MahlerOptions mahler_options(const Globals& g) {
  MahlerOptions o;
  o.tol = g.tol;
  o.max_grid = g.max_grid;
  return o;
}

json estimate_json(const MahlerEstimate& e) {
  return {{"value", e.value}, {"error", e.error}, {"grid", e.grid}};
}

int cmd_check(const Globals& g, const std::string& path) {
  Fan f = io::fan_from(io::load(path));
  bool smooth = f.is_smooth();
  bool full = std::all_of(f.maximal_cones().begin(), f.maximal_cones().end(),
                          [&](const RayIndices& c) { return c.size() == f.dim(); });
  bool complete = full && is_complete(f);
  std::ostringstream os;
  os << "valid fan: " << (smooth ? "smooth" : "not smooth") << ", "
     << (complete ? "complete" : "not complete") << ", " << f.rays().size() << " rays, "
     << f.maximal_cones().size() << " maximal cones\n";
  emit(g,
       {{"valid", true},
        {"smooth", smooth},
        {"complete", complete},
        {"rays", f.rays().size()},
        {"maximal_cones", f.maximal_cones().size()}},
       os.str());
  return kOk;
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path);
  out << j.dump(2) << '\n';
}

int cmd_normal_fan(const std::string& path, const std::string& fan_out,
                   const std::string& divisor_out, bool smooth) {
  LatticePolytope k = io::polytope_from(io::load(path));
  if (!k.is_full_dimensional()) throw ValidationError("normal-fan: polytope is not full-dimensional");
  NormalFan nf = normal_fan(k);
  auto fan = nf.fan;
  TDivisor div = nf.divisor;
  if (smooth) {
    fan = std::make_shared<const Fan>(regularize(*fan));
    div = divisor_of_polytope(fan, k);
  }
  json jf = io::to_json(*fan);
  if (fan_out.empty() != divisor_out.empty())
    throw ValidationError("normal-fan: give both --fan-out and --divisor-out, or neither");
  if (!fan_out.empty()) {
    write_json(fan_out, jf);
    auto rel = std::filesystem::relative(std::filesystem::absolute(fan_out),
                                         std::filesystem::absolute(divisor_out).parent_path());
    write_json(divisor_out, io::to_json(div, rel.string()));
    std::cout << "wrote " << fan_out << " and " << divisor_out << '\n';
    return kOk;
  }
  std::cout << json{{"fan", jf}, {"divisor", io::to_json(div)}}.dump(2) << '\n';
  return kOk;
}

int cmd_degree(const Globals& g, const std::string& fan_path, const std::vector<std::string>& divisors) {
  std::shared_ptr<const Fan> fan;
  if (!fan_path.empty()) fan = std::make_shared<const Fan>(io::fan_from(io::load(fan_path)));
  std::vector<TDivisor> ds;
  for (const auto& p : divisors) {
    ds.push_back(io::divisor_from(io::load(p), fan));
    if (!fan) fan = ds.back().fan_ptr();
  }
  Int deg = degree(ds);
  emit(g, {{"degree", io::int_to_json(deg)}}, deg.str() + "\n");
  return kOk;
}

int cmd_mixed_volume(const Globals& g, const std::vector<std::string>& paths) {
  std::vector<LatticePolytope> ks;
  for (const auto& p : paths) ks.push_back(io::polytope_from(io::load(p)));
  Rat v = mixed_volume(ks);
  emit(g, {{"mixed_volume", io::rat_to_json(v)}}, io::rat_to_string(v) + "\n");
  return kOk;
}

std::vector<LaurentPolynomial> polynomials_in(const io::Document& d) {
  if (d.value.is_object() && d.value.value("kind", "") == "system") return io::system_from(d).polynomials;
  return {io::polynomial_from(d)};
}

int cmd_mahler(const Globals& g, const std::string& path) {
  auto ps = polynomials_in(io::load(path));
  json arr = json::array();
  std::ostringstream os;
  bool ok = true;
  for (const auto& p : ps) {
    MahlerEstimate e = mahler_measure(p, mahler_options(g));
    ok = ok && e.error <= g.tol;
    arr.push_back(estimate_json(e));
    os << fmt(e.value) << " +- " << fmt(e.error) << " (grid " << e.grid << ")\n";
  }
  emit(g, {{"mahler", arr}, {"tol", g.tol}, {"within_tol", ok}}, os.str());
  if (!ok) std::cerr << "error estimate exceeds --tol " << g.tol << '\n';
  return ok ? kOk : kNumeric;
}

int cmd_height(const Globals& g, const std::string& path, const std::string& point) {
  LatticePolytope k = io::polytope_from(io::load(path));
  HeightPlaces hp = height_places(k, io::parse_point(point));
  json places = json::object();
  places["infinity"] = io::rat_to_json(hp.archimedean);
  std::ostringstream os;
  os << fmt(hp.value()) << "\n  archimedean max " << io::rat_to_string(hp.archimedean) << '\n';
  for (const auto& [b, e] : hp.finite) {
    places[b.str()] = io::int_to_json(e);
    os << "  " << b << "-adic exponent " << e << '\n';
  }
  emit(g, {{"height", hp.value()}, {"places", places}}, os.str());
  return kOk;
}

int cmd_bk(const Globals& g, const std::string& path) {
  io::Document doc = io::load(path);
  io::System s = io::system_from(doc);
  // Check roots here as well so that a bad one is reported with its line.
  for (std::size_t r = 0; r < s.roots.size(); ++r)
    for (std::size_t i = 0; i < s.polynomials.size(); ++i) {
      const auto& x = s.roots[r].point;
      if (std::any_of(x.begin(), x.end(), [](const Rat& c) { return c == 0; })) break;
      if (s.polynomials[i].evaluate(x) != 0)
        throw io::InputError(doc.source, io::element_line(doc.text, "roots", r),
                             "roots[" + std::to_string(r) + "] is not a zero of P_" + std::to_string(i + 1));
    }
  BKVerification v = bk_verify(s.polynomials, s.roots, mahler_options(g));
  const BKReport& r = v.report;
  bool mahler_ok = true;
  json terms = json::array();
  std::ostringstream os;
  os << "d = " << r.d << (r.degenerate ? " (degenerate Newton polytope sum)" : "") << '\n';
  for (std::size_t i = 0; i < r.d; ++i) {
    mahler_ok = mahler_ok && r.mahler[i].error <= g.tol;
    terms.push_back({{"mixed_volume", io::rat_to_json(r.mixed_volumes[i])},
                     {"mahler", estimate_json(r.mahler[i])},
                     {"L", r.l_bounds[i]},
                     {"L_from_sum", static_cast<bool>(r.l_from_sum[i])}});
    os << "  i=" << i + 1 << "  V = " << io::rat_to_string(r.mixed_volumes[i])
       << "  M = " << fmt(r.mahler[i].value) << " +- " << fmt(r.mahler[i].error)
       << "  L = " << fmt(r.l_bounds[i]) << (r.l_from_sum[i] ? " (via sum)" : "") << '\n';
  }
  Int count = bkk_count(s.polynomials);
  os << "RHS = " << fmt(r.rhs) << " +- " << fmt(r.rhs_error) << '\n'
     << "LHS = " << fmt(v.lhs) << " from " << s.roots.size() << " root(s)\n"
     << "slack = " << fmt(v.slack) << (v.holds ? "  inequality holds" : "  INEQUALITY FAILS") << '\n'
     << "BKK count = " << count << '\n';
  emit(g,
       {{"d", r.d},
        {"degenerate", r.degenerate},
        {"terms", terms},
        {"rhs", r.rhs},
        {"rhs_error", r.rhs_error},
        {"lhs", v.lhs},
        {"slack", v.slack},
        {"holds", v.holds},
        {"bkk_count", io::int_to_json(count)},
        {"tol", g.tol}},
       os.str());
  if (!mahler_ok) std::cerr << "a Mahler error estimate exceeds --tol " << g.tol << '\n';
  return v.holds && mahler_ok ? kOk : kNumeric;
}

int cmd_jd(const Globals& g, const std::string& path) {
  Fan f = io::fan_from(io::load(path));
  JdPresentation p = jd_presentation(f);
  json forms = json::array();
  for (const auto& l : p.linear_forms) {
    json row = json::array();
    for (const auto& x : l) row.push_back(io::int_to_json(x));
    forms.push_back(row);
  }
  emit(g,
       {{"variables", p.variables},
        {"nonfaces", p.nonfaces},
        {"linear_forms", forms},
        {"picard_rank", io::int_to_json(picard_rank(f))}},
       p.to_string());
  return kOk;
}

int cmd_bound_l(const Globals& g, const std::string& path, std::size_t samples) {
  LatticePolytope k = io::polytope_from(io::load(path));
  double bound = bound_L(k);
  std::mt19937_64 rng(g.seed);
  LSampling opts;
  opts.sections = samples;
  double lower = estimate_L_lower(k, rng, opts);
  std::ostringstream os;
  os << "N = " << polytope_norm(k.reduced()) << "\nbound_L = " << fmt(bound)
     << "\nestimate_L_lower = " << fmt(lower) << " (seed " << g.seed << ")\n";
  emit(g,
       {{"norm", io::int_to_json(polytope_norm(k.reduced()))},
        {"bound_L", bound},
        {"estimate_L_lower", lower},
        {"seed", g.seed}},
       os.str());
  return lower <= bound + g.tol ? kOk : kNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toric varieties, mixed volumes, Mahler measures and heights"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol", g.tol, "Numeric tolerance")->capture_default_str();
  app.add_option("--max-grid", g.max_grid, "Largest grid size per axis for Mahler quadrature (0: automatic)");
  app.add_option("--seed", g.seed, "Seed for sampling operations")->capture_default_str();
  app.add_flag("--json", g.json_out, "Machine-readable output");

  std::string file, point, fan_out, divisor_out, fan_path;
  std::vector<std::string> files;
  bool smooth = false;
  std::size_t samples = 24;

  auto* check = app.add_subcommand("check", "Validate a fan and report smoothness and completeness");
  check->add_option("fan", file)->required();
  auto* nf = app.add_subcommand("normal-fan", "Normal fan and ample divisor of a polytope");
  nf->add_option("polytope", file)->required();
  nf->add_option("--fan-out", fan_out);
  nf->add_option("--divisor-out", divisor_out);
  nf->add_flag("--smooth", smooth, "Regularize the fan and pull the divisor back");
  auto* deg = app.add_subcommand("degree", "Intersection degree of d divisors");
  deg->add_option("--fan", fan_path, "Fan file (otherwise taken from the divisors)");
  deg->add_option("divisors", files)->required();
  auto* mv = app.add_subcommand("mixed-volume", "Mixed volume of d polytopes");
  mv->add_option("polytopes", files)->required();
  auto* mah = app.add_subcommand("mahler", "Mahler measure of a polynomial or of each polynomial of a system");
  mah->add_option("file", file)->required();
  auto* ht = app.add_subcommand("height", "Canonical height of a rational torus point");
  ht->add_option("polytope", file)->required();
  ht->add_option("point", point, "Comma-separated rationals, e.g. 2,1/3")->required();
  auto* bk = app.add_subcommand("bk", "Arithmetic Bernstein-Kushnirenko bound for a system");
  bk->add_option("system", file)->required();
  auto* jd = app.add_subcommand("jd", "Presentation of the cohomology ring of a smooth complete fan");
  jd->add_option("fan", file)->required();
  auto* bl = app.add_subcommand("bound-l", "Upper bound and sampled lower estimate of L for a polytope");
  bl->add_option("polytope", file)->required();
  bl->add_option("--samples", samples, "Number of random sections")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kValidation;
  }

  try {
    if (*check) return cmd_check(g, file);
    if (*nf) return cmd_normal_fan(file, fan_out, divisor_out, smooth);
    if (*deg) return cmd_degree(g, fan_path, files);
    if (*mv) return cmd_mixed_volume(g, files);
    if (*mah) return cmd_mahler(g, file);
    if (*ht) return cmd_height(g, file, point);
    if (*bk) return cmd_bk(g, file);
    if (*jd) return cmd_jd(g, file);
    if (*bl) return cmd_bound_l(g, file, samples);
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kNumeric;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kValidation;
}
