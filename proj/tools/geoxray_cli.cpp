// Command-line front end binding the library operations into reproducible
// experiments. Exit codes: 0 pass, 1 mathematical rejection, 2 usage/data
// error.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "geoxray/abel.hpp"
#include "geoxray/boundary.hpp"
#include "geoxray/expr.hpp"
#include "geoxray/geodesic.hpp"
#include "geoxray/profile.hpp"
#include "geoxray/report.hpp"
#include "geoxray/xray2d.hpp"

namespace {

using nlohmann::json;
using namespace geoxray;

struct CommonOpts {
  std::string profile_expr;
  std::string profile_csv;
  std::string out_path;
  std::string format = "json";
};

metric::RadialProfile load_profile(const CommonOpts& o) {
  if (!o.profile_csv.empty()) {
    std::ifstream in(o.profile_csv);
    if (!in) throw std::runtime_error("cannot open " + o.profile_csv);
    std::vector<double> rs, cs;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream row(line);
      double r, c;
      if (row >> r >> c) {
        rs.push_back(r);
        cs.push_back(c);
      }
    }
    return metric::RadialProfile::from_samples(rs, cs);
  }
  if (o.profile_expr.empty())
    throw std::runtime_error("need --profile or --profile-csv");
  return expr::profile_from_expression(o.profile_expr);
}

void emit(const json& j, const CommonOpts& o) {
  if (o.out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(o.out_path);
    out << j.dump(2) << "\n";
  }
}

void emit_text(const std::string& text, const CommonOpts& o) {
  if (o.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(o.out_path);
    out << text;
  }
}

xray2d::SupportFunction parse_shape(const std::string& spec, int grid) {
  std::istringstream in(spec);
  std::string kind;
  in >> kind;
  if (kind == "disc") {
    double cx, cy, R;
    if (!(in >> cx >> cy >> R)) throw std::runtime_error("disc needs: cx cy R");
    return xray2d::SupportFunction::disc({cx, cy}, R, grid);
  }
  if (kind == "ellipse") {
    double a, b;
    if (!(in >> a >> b)) throw std::runtime_error("ellipse needs: a b");
    return xray2d::SupportFunction::ellipse(a, b, grid);
  }
  if (kind == "reuleaux") {
    double w, eps;
    if (!(in >> w >> eps)) throw std::runtime_error("reuleaux needs: w eps");
    return xray2d::SupportFunction::reuleaux(w, eps, grid);
  }
  throw std::runtime_error("unknown shape '" + kind + "'");
}

boundary::ImplicitBody3 parse_body(const std::string& spec) {
  std::istringstream in(spec);
  std::string kind;
  in >> kind;
  if (kind == "sphere") {
    double R;
    if (!(in >> R)) throw std::runtime_error("sphere needs: R");
    return boundary::ImplicitBody3::sphere(R);
  }
  if (kind == "ellipsoid") {
    double a, b, c;
    if (!(in >> a >> b >> c)) throw std::runtime_error("ellipsoid needs: a b c");
    return boundary::ImplicitBody3::ellipsoid(a, b, c);
  }
  throw std::runtime_error("unknown body '" + spec + "'");
}

int cmd_herglotz(const CommonOpts& common, int grid) {
  auto profile = load_profile(common);
  auto res = metric::herglotz_check(profile, grid);
  json j{{"schema-version", report::kSchemaVersion},
         {"command", "herglotz"},
         {"grid", grid},
         {"pass", res.pass}};
  if (!res.pass) {
    j["witness_r"] = res.witness_r;
    j["witness_rho_deriv"] = res.witness_value;
  }
  emit(j, common);
  return res.pass ? 0 : 1;
}

int cmd_synth(const CommonOpts& common, int grid) {
  auto profile = load_profile(common);
  auto f = abel::synthesize_constant(profile);
  std::ostringstream csv;
  csv << "r,f,w\n";
  for (int i = 0; i < grid; ++i) {
    double r = (i + 0.5) / grid;  // open grid: f blows up at r=1
    csv << r << "," << f.eval(r) << "," << f.smooth_factor(r) << "\n";
  }
  emit_text(csv.str(), common);
  return 0;
}

int cmd_verify(const CommonOpts& common, int chords, int trace_chords,
               double tol, std::uint64_t seed) {
  auto profile = load_profile(common);
  auto res = metric::herglotz_check(profile, 1001);
  if (!res.pass) {
    std::cerr << "profile violates the Herglotz condition at r=" << res.witness_r
              << "\n";
    return 2;
  }
  auto f = abel::synthesize_constant(profile);

  report::TransformReport rep;
  rep.experiment = "verify";
  rep.tolerance = tol;
  rep.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.02, 0.98);
  for (int i = 0; i < chords; ++i) {
    double s = unif(rng);
    rep.records.push_back({s, abel::abel_forward(f, profile, s)});
  }

  report::TransformReport trace_rep;
  trace_rep.experiment = "verify-trace";
  trace_rep.tolerance = tol;
  trace_rep.seed = seed;
  BlowupDensity planar{
      [&](Vec2 x) { return f.eval(std::min(x.norm(), 1.0 - 1e-15)); },
      [&](Vec2 x) {
        return metric::boundary_distance(profile, std::min(x.norm(), 1.0));
      },
      true};
  for (int i = 0; i < trace_chords; ++i) {
    double s = unif(rng);
    Vec2 start, dir;
    metric::chord_launch(profile, s, 0.0, start, dir);
    auto tr = metric::trace_geodesic(profile, start, dir);
    trace_rep.records.push_back({s, metric::integrate_along_trace(tr, planar)});
  }

  json j = rep.to_json();
  if (trace_chords > 0) j["trace"] = trace_rep.to_json();
  emit(j, common);
  bool ok = rep.max_abs_deviation() <= tol &&
            (trace_chords == 0 || trace_rep.max_abs_deviation() <= 100 * tol);
  return ok ? 0 : 1;
}

int cmd_disctest(const CommonOpts& common, const std::string& shape, int grid,
                 double tol) {
  auto dom = parse_shape(shape, grid);
  auto res = xray2d::disc_test(dom, tol);
  json j{{"schema-version", report::kSchemaVersion},
         {"command", "disctest"},
         {"shape", shape},
         {"accepted", res.accepted}};
  if (res.accepted) {
    j["center"] = {res.fit.center.x, res.fit.center.y};
    j["radius"] = res.fit.radius;
    j["residual"] = res.fit.residual;
  } else if (res.reason == xray2d::DiscTestResult::Reason::Width) {
    j["reason"] = "width";
    j["width_deviation"] = res.width_test.max_deviation;
  } else {
    j["reason"] = "harmonic";
    j["harmonic"] = res.harmonic;
  }
  emit(j, common);
  if (!res.accepted)
    std::cerr << "rejected: " << j.value("reason", "") << "\n";
  return res.accepted ? 0 : 1;
}

int cmd_iiest(const CommonOpts& common, const std::string& body_spec,
              std::vector<double> point, std::vector<double> tangent,
              double hmin, double hmax, int n) {
  auto body = parse_body(body_spec);
  Vec3 x{point[0], point[1], point[2]};
  Vec3 v{tangent[0], tangent[1], tangent[2]};
  std::vector<double> depths;
  for (int i = 0; i < n; ++i)
    depths.push_back(hmax * std::pow(hmin / hmax, double(i) / (n - 1)));
  auto est = boundary::estimate_II_chords(body, x, v, depths);
  json rec = json::array();
  for (auto& [h, raw] : est.record) rec.push_back({{"h", h}, {"raw", raw}});
  json j{{"schema-version", report::kSchemaVersion},
         {"command", "iiest"},
         {"body", body_spec},
         {"II", est.value},
         {"record", rec}};
  emit(j, common);
  return 0;
}

int cmd_slicetest(const CommonOpts& common, const std::string& body_spec,
                  std::vector<double> point, double hmin, double hmax, int n,
                  double tol) {
  auto body = parse_body(body_spec);
  Vec3 x{point[0], point[1], point[2]};
  std::vector<double> depths;
  for (int i = 0; i < n; ++i)
    depths.push_back(hmax * std::pow(hmin / hmax, double(i) / (n - 1)));
  auto res = boundary::slice_umbilicity_test(body, x, {0.0}, depths, tol);
  json j{{"schema-version", report::kSchemaVersion},
         {"command", "slicetest"},
         {"body", body_spec},
         {"umbilical", res.umbilical},
         {"axis_ratio", res.worst_ratio}};
  emit(j, common);
  return res.umbilical ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for functions of constant geodesic X-ray transform"};
  app.require_subcommand(1);

  CommonOpts common;
  int grid = 1001;
  int chords = 200;
  int trace_chords = 0;
  double tol = 1e-6;
  std::uint64_t seed = 1;
  std::string shape, body_spec = "sphere 1";
  std::vector<double> point{1, 0, 0};
  std::vector<double> tangent{0, 0, 1};
  double hmin = 1e-5, hmax = 1e-2;
  int sweep = 8;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--profile", common.profile_expr, "profile expression in r");
    cmd->add_option("--profile-csv", common.profile_csv, "CSV of (r,c) samples");
    cmd->add_option("--out", common.out_path, "output path (default stdout)");
    cmd->add_option("--format", common.format, "json|csv");
  };

  auto* herglotz = app.add_subcommand("herglotz", "check the Herglotz condition");
  add_common(herglotz);
  herglotz->add_option("--grid", grid, "grid size");

  auto* synth = app.add_subcommand("synth", "synthesize the unit-transform density");
  add_common(synth);
  synth->add_option("--grid", grid, "number of output samples");

  auto* verify = app.add_subcommand("verify", "verify the transform is 1 on random chords");
  add_common(verify);
  verify->add_option("--chords", chords, "number of Abel-transform chords");
  verify->add_option("--trace-chords", trace_chords, "ODE-traced cross-check chords");
  verify->add_option("--tol", tol, "acceptance tolerance on |If-1|");
  verify->add_option("--seed", seed, "RNG seed");

  auto* disctest = app.add_subcommand("disctest", "disc characterization of a convex shape");
  add_common(disctest);
  disctest->add_option("--shape", shape, "disc cx cy R | ellipse a b | reuleaux w eps")
      ->required();
  disctest->add_option("--grid", grid, "support function grid");
  disctest->add_option("--tol", tol, "Fourier tolerance relative to the width");

  auto* iiest = app.add_subcommand("iiest", "second fundamental form from chord lengths");
  add_common(iiest);
  iiest->add_option("--body", body_spec, "sphere R | ellipsoid a b c");
  iiest->add_option("--point", point, "boundary point")->expected(3);
  iiest->add_option("--tangent", tangent, "tangent direction")->expected(3);
  iiest->add_option("--hmin", hmin, "smallest depth");
  iiest->add_option("--hmax", hmax, "largest depth");
  iiest->add_option("--sweep", sweep, "number of depths");

  auto* slicetest = app.add_subcommand("slicetest", "near-tangent slice umbilicity test");
  add_common(slicetest);
  slicetest->add_option("--body", body_spec, "sphere R | ellipsoid a b c");
  slicetest->add_option("--point", point, "boundary point")->expected(3);
  slicetest->add_option("--hmin", hmin, "smallest depth");
  slicetest->add_option("--hmax", hmax, "largest depth");
  slicetest->add_option("--sweep", sweep, "number of depths");
  slicetest->add_option("--tol", tol, "axis-ratio tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (herglotz->parsed()) return cmd_herglotz(common, grid);
    if (synth->parsed()) return cmd_synth(common, grid == 1001 ? 100 : grid);
    if (verify->parsed())
      return cmd_verify(common, chords, trace_chords, tol, seed);
    if (disctest->parsed())
      return cmd_disctest(common, shape, grid == 1001 ? 512 : grid, tol);
    if (iiest->parsed())
      return cmd_iiest(common, body_spec, point, tangent, hmin, hmax, sweep);
    if (slicetest->parsed())
      return cmd_slicetest(common, body_spec, point, hmin, hmax, sweep, tol);
  } catch (const expr::ParseError& e) {
    std::cerr << "profile parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
