#include "asymnet/camc.hpp"
#include "asymnet/conormal.hpp"
#include "asymnet/demoulin.hpp"
#include "asymnet/generators.hpp"
#include "asymnet/io.hpp"
#include "asymnet/net.hpp"
#include "asymnet/quadric.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace asymnet;
using nlohmann::json;

namespace {

// Exit codes: 0 = success / predicate true, 1 = predicate false, 2 = input error.
constexpr int kTrue = 0;
constexpr int kFalse = 1;
constexpr int kError = 2;

struct Options {
  double tol = -1.0;  // negative = use the subcommand's default
  bool json_out = false;
};

double tol_or(const Options& opt, double fallback) {
  return opt.tol > 0.0 ? opt.tol : fallback;
}

AsymptoticNet read_net(const std::string& path) {
  NetDocument doc = path == "-" ? load_document(std::cin) : load_document_file(path);
  return doc.to_net();
}

void write_doc(const NetDocument& doc, const std::string& path) {
  if (path == "-")
    save_document(doc, std::cout);
  else
    save_document(doc, path);
}

std::vector<double> parse_list(const std::string& csv, const std::string& flag) {
  std::vector<double> values;
  std::istringstream is(csv);
  std::string item;
  while (std::getline(is, item, ',')) {
    try {
      size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError(flag + ": '" + item + "' is not a number");
    }
  }
  if (values.empty()) throw ParseError(flag + ": empty list");
  return values;
}

Vec3 parse_vec3(const std::string& csv, const std::string& flag) {
  std::vector<double> v = parse_list(csv, flag);
  if (v.size() != 3) throw ParseError(flag + ": expected three comma-separated numbers");
  return Vec3(v[0], v[1], v[2]);
}

std::string ruled_name(RuledVerdict v) {
  switch (v) {
    case RuledVerdict::None: return "none";
    case RuledVerdict::U: return "u";
    case RuledVerdict::V: return "v";
    case RuledVerdict::Both: return "both";
  }
  return "none";
}

json edge_json(const EdgeId& e) {
  return json{{"dir", e.dir == EdgeDir::I ? "i" : "j"}, {"i", e.i}, {"j", e.j}};
}

std::string edge_text(const EdgeId& e) {
  std::ostringstream os;
  os << (e.dir == EdgeDir::I ? "I" : "J") << "(" << e.i << "," << e.j << ")";
  return os.str();
}

json camc_json(const CamcOutcome& out) {
  json j{{"is_camc", out.is_camc},
         {"a_canonical", out.a_canonical},
         {"b_canonical", out.b_canonical}};
  if (out.solve_edge) j["solve_edge"] = edge_json(*out.solve_edge);
  if (out.result) {
    j["h"] = out.result->h;
    j["max_h_deviation"] = out.result->max_h_deviation;
    j["rho"] = out.result->rho;
  }
  if (!out.failure.empty()) j["failure"] = out.failure;
  return j;
}

void emit(const Options& opt, const json& j, const std::string& text) {
  if (opt.json_out)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::string yn(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------------------

int run_validate(const Options& opt, const std::string& input) {
  AsymptoticNet net = read_net(input);
  ValidationReport rep = validate(net, tol_or(opt, defaults::planarity_tol));
  json j{{"command", "validate"},
         {"valid", rep.valid},
         {"message", rep.message},
         {"residuals",
          {{"max_cross", rep.max_cross_residual}, {"min_delta", rep.min_delta}}}};
  if (rep.worst_vertex_i >= 0) j["worst_vertex"] = {rep.worst_vertex_i, rep.worst_vertex_j};
  if (rep.worst_quad_i >= 0) j["worst_quad"] = {rep.worst_quad_i, rep.worst_quad_j};
  std::ostringstream os;
  os.precision(12);
  os << "valid: " << yn(rep.valid) << "\n"
     << "max cross residual: " << rep.max_cross_residual << "\n"
     << "min discriminant:   " << rep.min_delta << "\n";
  if (!rep.message.empty()) os << rep.message << "\n";
  emit(opt, j, os.str());
  return rep.valid ? kTrue : kFalse;
}

int run_conormal(const Options& opt, const std::string& input, const std::string& seed_csv,
                 int seed_i, int seed_j) {
  AsymptoticNet net = read_net(input);
  ConormalField field;
  try {
    field = seed_csv.empty()
                ? propagate_default(net)
                : propagate(net, parse_vec3(seed_csv, "--seed"), seed_i, seed_j);
  } catch (const InconsistentNetError& e) {
    json j{{"command", "conormal"}, {"certified", false}, {"failure", e.what()}};
    emit(opt, j, std::string("certified: no\n") + e.what() + "\n");
    return kFalse;
  }
  ConormalResiduals res = conormal_residuals(net, field);
  double lmin = field.lambda.empty() ? 1.0 : field.lambda[0], lmax = lmin;
  for (double l : field.lambda) {
    lmin = std::min(lmin, l);
    lmax = std::max(lmax, l);
  }
  bool pass = res.max_lelieuvre <= tol_or(opt, defaults::lelieuvre_tol) &&
              res.max_moutard_angle <= tol_or(opt, defaults::moutard_angle_tol) &&
              res.max_omega_rel <= tol_or(opt, 1e-8);
  json j{{"command", "conormal"},
         {"certified", pass},
         {"orientation", field.orientation},
         {"lambda_min", lmin},
         {"lambda_max", lmax},
         {"residuals",
          {{"lelieuvre", res.max_lelieuvre},
           {"moutard_angle", res.max_moutard_angle},
           {"omega_rel", res.max_omega_rel}}}};
  std::ostringstream os;
  os.precision(12);
  os << "certified: " << yn(pass) << "\n"
     << "orientation: " << (field.orientation > 0 ? "+1" : "-1") << "\n"
     << "lambda range: [" << lmin << ", " << lmax << "]\n"
     << "max Lelieuvre residual: " << res.max_lelieuvre << "\n"
     << "max Moutard angle:      " << res.max_moutard_angle << "\n"
     << "max Omega relation:     " << res.max_omega_rel << "\n";
  emit(opt, j, os.str());
  return pass ? kTrue : kFalse;
}

int run_quadrics(const Options& opt, const std::string& input, double rho) {
  AsymptoticNet net = read_net(input);
  ConormalField conormal = propagate_default(net);
  if (rho != 1.0) conormal = black_white_rescale(conormal, rho);
  QuadricField field = field_from_conormal(net, conormal);
  double amin = field.patches.empty() ? 0.0 : field.patches[0].a, amax = amin;
  for (const QuadricPatch& p : field.patches) {
    amin = std::min(amin, p.a);
    amax = std::max(amax, p.a);
  }
  double tol = tol_or(opt, 1e-8);
  bool compatible = field.max_edge_angle <= tol;
  json j{{"command", "quadrics"},
         {"compatible", compatible},
         {"rho", rho},
         {"patch_count", field.patches.size()},
         {"a_min", amin},
         {"a_max", amax},
         {"residuals", {{"max_edge_angle", field.max_edge_angle}}}};
  std::ostringstream os;
  os.precision(12);
  os << "compatible: " << yn(compatible) << "\n"
     << "patches: " << field.patches.size() << ", parameter range [" << amin << ", "
     << amax << "]\n"
     << "max tangent-plane angle on interior edges: " << field.max_edge_angle << "\n";
  emit(opt, j, os.str());
  return compatible ? kTrue : kFalse;
}

int run_camc(const Options& opt, const std::string& input) {
  AsymptoticNet net = read_net(input);
  double tol = tol_or(opt, defaults::camc_tol);
  CamcOutcome out = solve_camc(net, tol);

  json j{{"command", "camc"}, {"camc", camc_json(out)}};
  std::ostringstream os;
  os.precision(12);
  os << "CAMC: " << yn(out.is_camc) << "\n";
  if (out.solve_edge)
    os << "canonical parameters on edge " << edge_text(*out.solve_edge)
       << ": a = " << out.a_canonical << ", b = " << out.b_canonical << "\n";
  if (out.result) {
    os << "constant-H member: H = " << out.result->h
       << ", max deviation = " << out.result->max_h_deviation
       << ", gauge rho = " << out.result->rho << "\n";
    j["residuals"] = {{"max_h_deviation", out.result->max_h_deviation}};
  }
  if (!out.failure.empty()) os << "failure: " << out.failure << "\n";

  // The seed gauge is generically not the constant-H member; report its
  // curvature spread so the solved parameters read as the alternative.
  try {
    QuadricField seed_field = field_from_conormal(net, propagate_default(net));
    FieldCurvature fc = field_curvature(net, seed_field);
    bool seed_const = fc.max_deviation <= tol * (1.0 + std::abs(fc.h));
    j["seed_gauge"] = {{"h", fc.h},
                       {"max_deviation", fc.max_deviation},
                       {"constant", seed_const}};
    os << "seed gauge: H(0,0) = " << fc.h << ", max deviation = " << fc.max_deviation
       << (seed_const ? " (already constant)" : " (not constant)") << "\n";
  } catch (const GeometryError&) {
    // no seed field to compare against
  }
  emit(opt, j, os.str());
  return out.is_camc ? kTrue : kFalse;
}

int run_classify(const Options& opt, const std::string& input) {
  AsymptoticNet net = read_net(input);
  ClassificationReport rep = classify(net, tol_or(opt, defaults::camc_tol));
  json j{{"command", "classify"},
         {"valid", rep.validation.valid},
         {"camc", camc_json(rep.camc)},
         {"minimal", rep.minimal},
         {"proper_sphere", rep.proper_sphere},
         {"improper_sphere", rep.improper_sphere},
         {"demoulin", rep.demoulin},
         {"q_surface", rep.q_surface},
         {"ruled", ruled_name(rep.ruled)},
         {"residuals",
          {{"max_cross", rep.validation.max_cross_residual},
           {"max_strip", rep.max_strip_residual},
           {"conormal_plane", rep.conormal_plane_residual}}}};
  j["strip_residuals"] = rep.strip_residuals;
  if (rep.sphere) {
    const SphereCertificate& c = *rep.sphere;
    j["sphere"] = {{"center", {c.center.x(), c.center.y(), c.center.z()}},
                   {"h", c.h},
                   {"center_spread", c.center_spread},
                   {"max_dual_lelieuvre", c.max_dual_lelieuvre},
                   {"max_identity_rel", c.max_identity_rel},
                   {"max_alpha_dev", c.max_alpha_dev},
                   {"pass", c.pass}};
  }
  std::ostringstream os;
  os.precision(12);
  os << "valid:           " << yn(rep.validation.valid) << "\n";
  os << "CAMC:            " << yn(rep.camc.is_camc);
  if (rep.camc.result)
    os << " (H = " << rep.camc.result->h
       << ", deviation = " << rep.camc.result->max_h_deviation << ")";
  os << "\n";
  os << "minimal:         " << yn(rep.minimal) << " (max strip residual "
     << rep.max_strip_residual << ")\n";
  os << "proper sphere:   " << yn(rep.proper_sphere);
  if (rep.sphere && rep.sphere->pass)
    os << " (center " << rep.sphere->center.x() << " " << rep.sphere->center.y() << " "
       << rep.sphere->center.z() << ")";
  os << "\n";
  os << "improper sphere: " << yn(rep.improper_sphere) << " (co-normal plane residual "
     << rep.conormal_plane_residual << ")\n";
  os << "Demoulin:        " << yn(rep.demoulin) << "\n";
  os << "Q-surface:       " << yn(rep.q_surface) << "\n";
  os << "ruled:           " << ruled_name(rep.ruled) << "\n";
  emit(opt, j, os.str());
  return rep.validation.valid ? kTrue : kFalse;
}

int run_demoulin(const Options& opt, const std::string& input) {
  AsymptoticNet net = read_net(input);
  double tol = tol_or(opt, defaults::planarity_tol);

  // Use the constant-H member's field when one exists, the seed field else.
  CamcOutcome out = solve_camc(net);
  QuadricField field = out.result ? out.result->field
                                  : field_from_conormal(net, propagate_default(net));

  bool verdict = is_demoulin(net, field, tol);
  json edges = json::array();
  std::ostringstream os;
  os.precision(12);
  for (EdgeId edge : interior_edges(net)) {
    CanonicalPair pair = canonicalize_pair(net, edge);
    CanonicalParameters par = canonical_parameters(pair, field.conormal);
    CoincidenceResult res = coincidence_roots(pair, par.a, par.b_bar, tol);
    json roots = json::array();
    std::ostringstream rs;
    if (res.identically_zero) {
      rs << "identically zero";
    } else {
      for (const ProjectiveRoot& r : res.roots) {
        roots.push_back({{"s", r.s},
                         {"w", r.w},
                         {"at_infinity", r.at_infinity()},
                         {"multiplicity", r.multiplicity},
                         {"geometric_residual", r.geometric_residual}});
        if (rs.tellp() > 0) rs << ", ";
        if (r.at_infinity())
          rs << "infinity (x" << r.multiplicity << ")";
        else
          rs << "s = " << r.s << " (x" << r.multiplicity << ")";
      }
      if (res.roots.empty()) rs << "no real coincidence";
    }
    edges.push_back({{"edge", edge_json(edge)},
                     {"a", par.a},
                     {"b_bar", par.b_bar},
                     {"c2", res.c2},
                     {"c1", res.c1},
                     {"c0", res.c0},
                     {"identically_zero", res.identically_zero},
                     {"roots", roots}});
    os << "edge " << edge_text(edge) << ": " << rs.str() << "\n";
  }
  os << "Demoulin: " << yn(verdict) << "\n";
  json j{{"command", "demoulin"},
         {"demoulin", verdict},
         {"camc_field", bool(out.result)},
         {"edges", edges}};
  emit(opt, j, os.str());
  return verdict ? kTrue : kFalse;
}

int run_export(const Options& opt, const std::string& input, int samples,
               const std::string& gauge, double rho, const std::string& output) {
  (void)opt;
  AsymptoticNet net = read_net(input);
  std::optional<QuadricField> field;
  if (gauge == "camc") {
    CamcOutcome out = solve_camc(net);
    if (out.result) field = std::move(out.result->field);
  }
  if (!field) {
    ConormalField conormal = propagate_default(net);
    if (rho != 1.0) conormal = black_white_rescale(conormal, rho);
    field = field_from_conormal(net, conormal);
  }
  if (output == "-")
    export_obj(net, *field, samples, std::cout);
  else
    export_obj(net, *field, samples, output);
  return kTrue;
}

int run_generate_minimal(int ni, int nj, double wiggle, std::uint64_t seed,
                         const std::string& output) {
  Polyline alpha, beta;
  for (int i = 0; i <= ni; ++i) alpha.push_back(Vec3(i, 0, 1));
  for (int j = 0; j <= nj; ++j) beta.push_back(Vec3(0, j, 1));
  auto [pa, pb] = perturb_polylines(alpha, beta, wiggle, seed);
  auto [net, field] = minimal_from_polylines(pa, pb);
  NetDocument doc = NetDocument::from_net(net);
  doc.meta.emplace_back("generator", "minimal");
  std::ostringstream ms;
  ms << ni << " " << nj << " wiggle " << wiggle << " seed " << seed;
  doc.meta.emplace_back("params", ms.str());
  write_doc(doc, output);
  return kTrue;
}

int run_generate_sphere(double a, const std::string& grid_u, const std::string& grid_v,
                        const std::string& output) {
  std::vector<double> gu = parse_list(grid_u, "--grid");
  std::vector<double> gv = grid_v.empty() ? gu : parse_list(grid_v, "--grid-v");
  AsymptoticNet net = sphere_from_quadric(a, gu, gv);
  NetDocument doc = NetDocument::from_net(net);
  doc.meta.emplace_back("generator", "sphere");
  std::ostringstream ms;
  ms << "a " << a << " grid " << grid_u;
  if (!grid_v.empty()) ms << " grid_v " << grid_v;
  doc.meta.emplace_back("params", ms.str());
  write_doc(doc, output);
  return kTrue;
}

int run_generate_pair(double x1, double y1, double x2, double y2,
                      const std::string& output) {
  AsymptoticNet net = standard_pair(x1, y1, x2, y2);
  NetDocument doc = NetDocument::from_net(net);
  doc.meta.emplace_back("generator", "pair");
  std::ostringstream ms;
  ms << "x1 " << x1 << " y1 " << y1 << " x2 " << x2 << " y2 " << y2;
  doc.meta.emplace_back("params", ms.str());
  write_doc(doc, output);
  return kTrue;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete asymptotic nets: co-normal fields, interpolating quadric "
               "fields, and constant affine mean curvature"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--tol", opt.tol, "override the subcommand's default tolerance")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", opt.json_out, "emit a machine-readable JSON report");

  std::string input = "-";
  std::string output = "-";

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("input", input, "NetDocument path, or - for stdin");
  };

  CLI::App* v = app.add_subcommand("validate", "check the asymptotic-net property");
  add_input(v);

  std::string seed_csv;
  int seed_i = 0, seed_j = 0;
  CLI::App* co = app.add_subcommand(
      "conormal", "integrate a Lelieuvre co-normal field and certify it");
  add_input(co);
  co->add_option("--seed", seed_csv, "seed co-normal x,y,z (default: first quad normal)");
  co->add_option("--at-i", seed_i, "seed vertex i index")->check(CLI::NonNegativeNumber);
  co->add_option("--at-j", seed_j, "seed vertex j index")->check(CLI::NonNegativeNumber);

  double rho = 1.0;
  CLI::App* q = app.add_subcommand(
      "quadrics", "build the compatible interpolating-quadric field");
  add_input(q);
  q->add_option("--rho", rho, "black-white gauge factor applied to the co-normals")
      ->check(CLI::PositiveNumber);

  CLI::App* c = app.add_subcommand(
      "camc", "solve for the member with constant affine mean curvature");
  add_input(c);

  CLI::App* cl = app.add_subcommand("classify", "run every characterization on the net");
  add_input(cl);

  CLI::App* de = app.add_subcommand(
      "demoulin", "generator coincidence roots on every interior edge");
  add_input(de);

  int samples = 8;
  std::string gauge = "camc";
  CLI::App* ex = app.add_subcommand("export", "tessellate the quadric field as OBJ");
  add_input(ex);
  ex->add_option("--samples", samples, "samples per patch edge")
      ->check(CLI::Range(1, 256));
  ex->add_option("--gauge", gauge, "quadric-field gauge: camc or seed")
      ->check(CLI::IsMember({"camc", "seed"}));
  ex->add_option("--rho", rho, "black-white factor for the seed gauge")
      ->check(CLI::PositiveNumber);
  ex->add_option("-o,--output", output, "OBJ path, or - for stdout");

  CLI::App* gen = app.add_subcommand("generate", "emit a NetDocument");
  gen->require_subcommand(1);

  int ni = 3, nj = 3;
  double wiggle = 0.15;
  std::uint64_t seed = 1;
  CLI::App* gm = gen->add_subcommand(
      "minimal", "affine-minimal net integrated from perturbed generator polylines");
  gm->add_option("--ni", ni, "quadrangles in the i direction")->check(CLI::Range(1, 4096));
  gm->add_option("--nj", nj, "quadrangles in the j direction")->check(CLI::Range(1, 4096));
  gm->add_option("--wiggle", wiggle, "perturbation magnitude")
      ->check(CLI::NonNegativeNumber);
  gm->add_option("--seed", seed, "perturbation seed");
  gm->add_option("-o,--output", output, "NetDocument path, or - for stdout");

  double qa = 1.0;
  std::string grid_u = "0,0.5,1", grid_v;
  CLI::App* gs = gen->add_subcommand("sphere", "sampling of one global quadric");
  gs->add_option("--a", qa, "quadric family parameter (a > -1)");
  gs->add_option("--grid", grid_u, "comma-separated u parameter values");
  gs->add_option("--grid-v", grid_v, "v parameter values (default: same as --grid)");
  gs->add_option("-o,--output", output, "NetDocument path, or - for stdout");

  double x1 = -1.0, y1 = 0.0, x2 = -1.0, y2 = 1.0;
  CLI::App* gp = gen->add_subcommand(
      "pair", "two quadrangles in canonical position (x1 < 0, x2 < 0)");
  gp->add_option("--x1", x1, "abscissa of the outer vertex E");
  gp->add_option("--y1", y1, "ordinate of the outer vertex E");
  gp->add_option("--x2", x2, "abscissa of the outer vertex F");
  gp->add_option("--y2", y2, "ordinate of the outer vertex F");
  gp->add_option("-o,--output", output, "NetDocument path, or - for stdout");

  // Let the global --tol / --json flags appear after the subcommand too.
  for (CLI::App* sub : app.get_subcommands(nullptr)) {
    sub->fallthrough();
    for (CLI::App* nested : sub->get_subcommands(nullptr)) nested->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kError;
  }

  try {
    if (v->parsed()) return run_validate(opt, input);
    if (co->parsed()) return run_conormal(opt, input, seed_csv, seed_i, seed_j);
    if (q->parsed()) return run_quadrics(opt, input, rho);
    if (c->parsed()) return run_camc(opt, input);
    if (cl->parsed()) return run_classify(opt, input);
    if (de->parsed()) return run_demoulin(opt, input);
    if (ex->parsed()) return run_export(opt, input, samples, gauge, rho, output);
    if (gen->parsed()) {
      if (gm->parsed()) return run_generate_minimal(ni, nj, wiggle, seed, output);
      if (gs->parsed()) return run_generate_sphere(qa, grid_u, grid_v, output);
      if (gp->parsed()) return run_generate_pair(x1, y1, x2, y2, output);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
