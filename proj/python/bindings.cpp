// Python bindings for the asymptotic-net library. Thin and faithful: structs
// are exposed with their C++ field names, functions keep their signatures and
// default tolerances, and the three exception types map to python classes.

#include "asymnet/blaschke.hpp"
#include "asymnet/camc.hpp"
#include "asymnet/conormal.hpp"
#include "asymnet/demoulin.hpp"
#include "asymnet/generators.hpp"
#include "asymnet/io.hpp"
#include "asymnet/net.hpp"
#include "asymnet/quadric.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace asymnet;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Discrete asymptotic nets: Lelieuvre co-normals, interpolating "
            "quadric fields, constant affine mean curvature, and the Demoulin, "
            "affine-sphere, affine-minimal, ruled and Q-surface checks.";
  m.attr("__version__") = "1.0.0";

  // Exception translators run newest-first, so the subclass follows its base.
  auto geometry = py::register_exception<GeometryError>(m, "GeometryError");
  py::register_exception<InconsistentNetError>(m, "InconsistentNetError", geometry);
  py::register_exception<ParseError>(m, "ParseError");

  // ---- grid and net -------------------------------------------------------

  py::enum_<EdgeDir>(m, "EdgeDir")
      .value("I", EdgeDir::I)
      .value("J", EdgeDir::J);

  py::class_<EdgeId>(m, "EdgeId")
      .def(py::init([](EdgeDir dir, int i, int j) { return EdgeId{dir, i, j}; }),
           py::arg("dir"), py::arg("i"), py::arg("j"))
      .def_readwrite("dir", &EdgeId::dir)
      .def_readwrite("i", &EdgeId::i)
      .def_readwrite("j", &EdgeId::j)
      .def("__repr__", [](const EdgeId& e) {
        std::ostringstream os;
        os << "EdgeId(" << (e.dir == EdgeDir::I ? "I" : "J") << ", " << e.i << ", " << e.j
           << ")";
        return os.str();
      });

  py::enum_<StripDir>(m, "StripDir")
      .value("Horizontal", StripDir::Horizontal)
      .value("Vertical", StripDir::Vertical);

  py::class_<StripId>(m, "StripId")
      .def(py::init([](StripDir dir, int index) { return StripId{dir, index}; }),
           py::arg("dir"), py::arg("index"))
      .def_readwrite("dir", &StripId::dir)
      .def_readwrite("index", &StripId::index);

  py::enum_<RuledVerdict>(m, "RuledVerdict")
      .value("NONE", RuledVerdict::None)
      .value("U", RuledVerdict::U)
      .value("V", RuledVerdict::V)
      .value("BOTH", RuledVerdict::Both);

  py::class_<AsymptoticNet>(m, "AsymptoticNet")
      .def(py::init([](int quads_i, int quads_j, std::vector<Vec3> positions) {
             return make_net(quads_i, quads_j, std::move(positions));
           }),
           py::arg("quads_i"), py::arg("quads_j"), py::arg("positions"),
           "Net from row-major vertex positions, i fastest.")
      .def_property_readonly("quads_i", [](const AsymptoticNet& n) { return n.domain.quads_i; })
      .def_property_readonly("quads_j", [](const AsymptoticNet& n) { return n.domain.quads_j; })
      .def_property_readonly("positions",
                             [](const AsymptoticNet& n) { return n.positions; })
      .def("at", [](const AsymptoticNet& n, int i, int j) { return n.at(i, j); },
           py::arg("i"), py::arg("j"))
      .def("set_at",
           [](AsymptoticNet& n, int i, int j, const Vec3& p) { n.at(i, j) = p; },
           py::arg("i"), py::arg("j"), py::arg("p"))
      .def("diameter", &AsymptoticNet::diameter)
      .def("__repr__", [](const AsymptoticNet& n) {
        std::ostringstream os;
        os << "AsymptoticNet(" << n.domain.quads_i << "x" << n.domain.quads_j
           << " quadrangles)";
        return os.str();
      });

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("valid", &ValidationReport::valid)
      .def_readonly("max_cross_residual", &ValidationReport::max_cross_residual)
      .def_readonly("min_delta", &ValidationReport::min_delta)
      .def_readonly("worst_vertex_i", &ValidationReport::worst_vertex_i)
      .def_readonly("worst_vertex_j", &ValidationReport::worst_vertex_j)
      .def_readonly("worst_quad_i", &ValidationReport::worst_quad_i)
      .def_readonly("worst_quad_j", &ValidationReport::worst_quad_j)
      .def_readonly("message", &ValidationReport::message);

  m.def("validate", &validate, py::arg("net"), py::arg("tol") = defaults::planarity_tol,
        "Planarity of interior vertex stars and positivity of the discriminants.");
  m.def("quad_delta", &quad_delta, py::arg("net"), py::arg("i"), py::arg("j"));
  m.def("affine_metric", &affine_metric, py::arg("net"), py::arg("i"), py::arg("j"),
        "Omega = sqrt(det[q1, q2, q12]); throws when the discriminant is not positive.");
  m.def("strip_coplanarity", &strip_coplanarity, py::arg("net"), py::arg("strip"),
        "Smallest singular value of the stacked unit transversal edges of the strip.");
  m.def("is_ruled", &is_ruled, py::arg("net"), py::arg("tol") = defaults::planarity_tol);
  m.def("interior_edges", &interior_edges, py::arg("net"));

  // ---- co-normal fields ---------------------------------------------------

  py::class_<ConormalField>(m, "ConormalField")
      .def_property_readonly("quads_i",
                             [](const ConormalField& f) { return f.domain.quads_i; })
      .def_property_readonly("quads_j",
                             [](const ConormalField& f) { return f.domain.quads_j; })
      .def_property_readonly("nu", [](const ConormalField& f) { return f.nu; })
      .def_property_readonly("lambdas", [](const ConormalField& f) { return f.lambda; })
      .def_readonly("orientation", &ConormalField::orientation)
      .def("at", [](const ConormalField& f, int i, int j) { return f.at(i, j); },
           py::arg("i"), py::arg("j"))
      .def("lambda_at", &ConormalField::lambda_at, py::arg("i"), py::arg("j"));

  m.def("propagate",
        [](const AsymptoticNet& net, const Vec3& seed, int seed_i, int seed_j, double tol,
           double angle_tol) { return propagate(net, seed, seed_i, seed_j, tol, angle_tol); },
        py::arg("net"), py::arg("seed"), py::arg("seed_i") = 0, py::arg("seed_j") = 0,
        py::arg("tol") = defaults::lelieuvre_tol,
        py::arg("angle_tol") = defaults::moutard_angle_tol,
        "Integrate the Lelieuvre equations from a seed co-normal.");
  m.def("propagate_default",
        [](const AsymptoticNet& net, double tol, double angle_tol) {
          return propagate_default(net, tol, angle_tol);
        },
        py::arg("net"), py::arg("tol") = defaults::lelieuvre_tol,
        py::arg("angle_tol") = defaults::moutard_angle_tol);
  m.def("black_white_rescale", &black_white_rescale, py::arg("field"), py::arg("rho"),
        "Gauge freedom: nu -> rho nu on even vertices, nu / rho on odd ones.");
  m.def("moutard_lambda", &moutard_lambda, py::arg("field"), py::arg("i"), py::arg("j"));

  py::class_<ConormalResiduals>(m, "ConormalResiduals")
      .def_readonly("max_lelieuvre", &ConormalResiduals::max_lelieuvre)
      .def_readonly("max_moutard_angle", &ConormalResiduals::max_moutard_angle)
      .def_readonly("max_omega_rel", &ConormalResiduals::max_omega_rel);

  m.def("conormal_residuals", &conormal_residuals, py::arg("net"), py::arg("field"));

  // ---- quadric patches and fields ----------------------------------------

  m.def("eval_standard", &eval_standard, py::arg("a"), py::arg("u"), py::arg("v"),
        "Standard interpolator (u + auv, v + auv, (1+a)uv) / (1 + auv).");
  m.def("standard_quadric_matrix", &standard_quadric_matrix, py::arg("a"));
  m.def("inverted_parameter", &inverted_parameter, py::arg("a"), "a -> -a / (1 + a).");

  py::class_<HomogeneousQuadric>(m, "HomogeneousQuadric")
      .def(py::init([](const Mat4& mat) { return HomogeneousQuadric{mat}; }), py::arg("m"))
      .def_readonly("m", &HomogeneousQuadric::m)
      .def("evaluate", &HomogeneousQuadric::evaluate, py::arg("p"))
      .def("tangent_plane", &HomogeneousQuadric::tangent_plane, py::arg("p_hat"))
      .def("distance", &HomogeneousQuadric::distance, py::arg("other"));

  py::class_<QuadricPatch>(m, "QuadricPatch")
      .def_readonly("A", &QuadricPatch::A)
      .def_readonly("B", &QuadricPatch::B)
      .def_readonly("C", &QuadricPatch::C)
      .def_readonly("D", &QuadricPatch::D)
      .def_readonly("a", &QuadricPatch::a)
      .def_readonly("delta", &QuadricPatch::delta)
      .def_readonly("omega", &QuadricPatch::omega)
      .def("evaluate", &QuadricPatch::evaluate, py::arg("u"), py::arg("v"))
      .def("homogeneous", &QuadricPatch::homogeneous);

  m.def("build_patch", &build_patch, py::arg("A"), py::arg("B"), py::arg("C"), py::arg("D"),
        py::arg("a"));
  m.def("patch_center", &patch_center, py::arg("patch"),
        "Center of the patch quadric; paraboloids (a = 0) throw.");
  m.def("patch_mean_curvature", &patch_mean_curvature, py::arg("patch"), py::arg("omega"),
        "H = -2a / (sqrt(1 + a) omega).");

  py::class_<QuadricField>(m, "QuadricField")
      .def_readonly("conormal", &QuadricField::conormal)
      .def_readonly("edge_angles", &QuadricField::edge_angles)
      .def_readonly("max_edge_angle", &QuadricField::max_edge_angle)
      .def("patch",
           [](const QuadricField& f, int i, int j) { return f.patch(i, j); },
           py::arg("i"), py::arg("j"));

  m.def("field_from_conormal", &field_from_conormal, py::arg("net"), py::arg("conormal"),
        "Patch parameters a = lambda^2 - 1; edge_angles verify tangent continuity.");

  py::class_<BlaschkeSample>(m, "BlaschkeSample")
      .def_readonly("omega", &BlaschkeSample::omega)
      .def_readonly("xi", &BlaschkeSample::xi)
      .def_readonly("h", &BlaschkeSample::h)
      .def_readonly("residual", &BlaschkeSample::residual);

  m.def("blaschke_numeric", &blaschke_numeric, py::arg("f"), py::arg("u"), py::arg("v"),
        py::arg("step") = 1e-3,
        "Finite-difference affine mean curvature of a callable (u, v) -> point.");
  m.def("blaschke_patch", &blaschke_patch, py::arg("patch"), py::arg("u"), py::arg("v"),
        py::arg("step") = 1e-3);

  // ---- constant affine mean curvature -------------------------------------

  py::class_<CamcResult>(m, "CamcResult")
      .def_readonly("rho", &CamcResult::rho)
      .def_readonly("field", &CamcResult::field)
      .def_readonly("h", &CamcResult::h)
      .def_readonly("max_h_deviation", &CamcResult::max_h_deviation);

  py::class_<CamcOutcome>(m, "CamcOutcome")
      .def_readonly("is_camc", &CamcOutcome::is_camc)
      .def_readonly("result", &CamcOutcome::result)
      .def_readonly("a_canonical", &CamcOutcome::a_canonical)
      .def_readonly("b_canonical", &CamcOutcome::b_canonical)
      .def_readonly("solve_edge", &CamcOutcome::solve_edge)
      .def_readonly("failure", &CamcOutcome::failure);

  m.def("solve_camc", &solve_camc, py::arg("net"), py::arg("tol") = defaults::camc_tol,
        "Find the gauge with constant affine mean curvature, if any.");

  py::class_<FieldCurvature>(m, "FieldCurvature")
      .def_readonly("h", &FieldCurvature::h)
      .def_readonly("max_deviation", &FieldCurvature::max_deviation);

  m.def("field_curvature", &field_curvature, py::arg("net"), py::arg("field"));

  py::class_<SphereCertificate>(m, "SphereCertificate")
      .def_readonly("center", &SphereCertificate::center)
      .def_readonly("h", &SphereCertificate::h)
      .def_readonly("center_spread", &SphereCertificate::center_spread)
      .def_readonly("max_dual_lelieuvre", &SphereCertificate::max_dual_lelieuvre)
      .def_readonly("max_identity_rel", &SphereCertificate::max_identity_rel)
      .def_readonly("max_alpha_dev", &SphereCertificate::max_alpha_dev)
      .def_readonly("pass_", &SphereCertificate::pass)
      .def_property_readonly("ok", [](const SphereCertificate& c) { return c.pass; });

  m.def("sphere_center_check", &sphere_center_check, py::arg("net"), py::arg("field"),
        py::arg("tol") = 1e-9,
        "Certify concentric patch quadrics and the dual Lelieuvre equations.");

  py::class_<ClassificationReport>(m, "ClassificationReport")
      .def_readonly("validation", &ClassificationReport::validation)
      .def_readonly("camc", &ClassificationReport::camc)
      .def_readonly("minimal", &ClassificationReport::minimal)
      .def_readonly("strip_residuals", &ClassificationReport::strip_residuals)
      .def_readonly("max_strip_residual", &ClassificationReport::max_strip_residual)
      .def_readonly("proper_sphere", &ClassificationReport::proper_sphere)
      .def_readonly("sphere", &ClassificationReport::sphere)
      .def_readonly("improper_sphere", &ClassificationReport::improper_sphere)
      .def_readonly("conormal_plane_residual", &ClassificationReport::conormal_plane_residual)
      .def_readonly("demoulin", &ClassificationReport::demoulin)
      .def_readonly("q_surface", &ClassificationReport::q_surface)
      .def_readonly("ruled", &ClassificationReport::ruled);

  m.def("classify", &classify, py::arg("net"), py::arg("tol") = defaults::camc_tol,
        "Run every characterization: validity, CAMC, minimal, sphere, Demoulin, "
        "Q-surface, ruledness.");

  // ---- Demoulin, coincidence, ruled strips --------------------------------

  py::class_<CanonicalPair>(m, "CanonicalPair")
      .def_readonly("edge", &CanonicalPair::edge)
      .def_readonly("x1", &CanonicalPair::x1)
      .def_readonly("y1", &CanonicalPair::y1)
      .def_readonly("x2", &CanonicalPair::x2)
      .def_readonly("y2", &CanonicalPair::y2)
      .def_readonly("residual", &CanonicalPair::residual)
      .def("apply", &CanonicalPair::apply, py::arg("p"));

  py::class_<CanonicalParameters>(m, "CanonicalParameters")
      .def_readonly("a", &CanonicalParameters::a)
      .def_readonly("b_bar", &CanonicalParameters::b_bar);

  m.def("canonicalize_pair", &canonicalize_pair, py::arg("net"), py::arg("edge"),
        py::arg("tol") = defaults::canonical_tol,
        "Map the two quadrangles at an interior edge to canonical coordinates.");
  m.def("canonical_parameters", &canonical_parameters, py::arg("pair"), py::arg("field"));
  m.def("primary_parameter_from_canonical", &primary_parameter_from_canonical,
        py::arg("pair"), py::arg("a_canonical"));

  py::class_<ProjectiveRoot>(m, "ProjectiveRoot")
      .def_readonly("s", &ProjectiveRoot::s)
      .def_readonly("w", &ProjectiveRoot::w)
      .def_readonly("multiplicity", &ProjectiveRoot::multiplicity)
      .def_readonly("geometric_residual", &ProjectiveRoot::geometric_residual)
      .def("at_infinity", &ProjectiveRoot::at_infinity);

  py::class_<CoincidenceResult>(m, "CoincidenceResult")
      .def_readonly("c2", &CoincidenceResult::c2)
      .def_readonly("c1", &CoincidenceResult::c1)
      .def_readonly("c0", &CoincidenceResult::c0)
      .def_readonly("identically_zero", &CoincidenceResult::identically_zero)
      .def_readonly("roots", &CoincidenceResult::roots);

  m.def("coincidence_roots", &coincidence_roots, py::arg("pair"), py::arg("a"),
        py::arg("b_bar"), py::arg("tol") = defaults::planarity_tol,
        "Points of the extended shared edge where the cross generators coincide.");
  m.def("generator_coincidence_residual", &generator_coincidence_residual, py::arg("pair"),
        py::arg("a"), py::arg("b_bar"), py::arg("s"), py::arg("w"));
  m.def("demoulin_point", &demoulin_point, py::arg("patch"),
        "Second intersection of the affine normal with the patch quadric, homogeneous.");
  m.def("tangent_incidence", &tangent_incidence, py::arg("pair"), py::arg("a"),
        py::arg("b_bar"), py::arg("tol") = defaults::planarity_tol);
  m.def("tangent_incidence_residual", &tangent_incidence_residual, py::arg("pair"),
        py::arg("a"), py::arg("b_bar"));
  m.def("is_demoulin", &is_demoulin, py::arg("net"), py::arg("field"),
        py::arg("tol") = defaults::planarity_tol);
  m.def("q_surface_check", &q_surface_check, py::arg("net"), py::arg("field"),
        py::arg("tol") = 1e-8);

  py::class_<RuledStripResult>(m, "RuledStripResult")
      .def_readonly("quadric", &RuledStripResult::quadric)
      .def_readonly("worst_distance", &RuledStripResult::worst_distance)
      .def_readonly("worst_relation", &RuledStripResult::worst_relation);

  m.def("ruled_strip_quadric", &ruled_strip_quadric, py::arg("net"), py::arg("strip"),
        py::arg("field"), py::arg("tol") = 1e-9);

  // ---- generators ---------------------------------------------------------

  m.def("minimal_from_polylines", &minimal_from_polylines, py::arg("alpha"), py::arg("beta"),
        py::arg("origin") = Vec3(0.0, 0.0, 0.0),
        "Affine-minimal net with co-normals alpha(i) + beta(j); returns (net, field).");
  m.def("sphere_from_quadric", &sphere_from_quadric, py::arg("a"), py::arg("u_grid"),
        py::arg("v_grid"));
  m.def("standard_pair", &standard_pair, py::arg("x1"), py::arg("y1"), py::arg("x2"),
        py::arg("y2"));
  m.def("perturb_polylines", &perturb_polylines, py::arg("alpha"), py::arg("beta"),
        py::arg("magnitude"), py::arg("seed"));

  // ---- documents and meshes ----------------------------------------------

  py::class_<NetDocument>(m, "NetDocument")
      .def(py::init<>())
      .def_readwrite("version", &NetDocument::version)
      .def_readwrite("quads_i", &NetDocument::quads_i)
      .def_readwrite("quads_j", &NetDocument::quads_j)
      .def_readwrite("meta", &NetDocument::meta)
      .def_readwrite("positions", &NetDocument::positions)
      .def("to_net", &NetDocument::to_net)
      .def_static("from_net", &NetDocument::from_net, py::arg("net"));

  m.def("load_document_file", &load_document_file, py::arg("path"));
  m.def("loads",
        [](const std::string& text) {
          std::istringstream is(text);
          return load_document(is);
        },
        py::arg("text"), "Parse a NetDocument from a string.");
  m.def("save_document_file",
        [](const NetDocument& doc, const std::string& path) { save_document(doc, path); },
        py::arg("doc"), py::arg("path"));
  m.def("dumps",
        [](const NetDocument& doc) {
          std::ostringstream os;
          save_document(doc, os);
          return os.str();
        },
        py::arg("doc"), "Serialize a NetDocument to a string (17 significant digits).");
  m.def("export_obj",
        [](const AsymptoticNet& net, const QuadricField& field, int samples_per_edge,
           const std::string& path) { export_obj(net, field, samples_per_edge, path); },
        py::arg("net"), py::arg("field"), py::arg("samples_per_edge"), py::arg("path"));
  m.def("export_obj_string",
        [](const AsymptoticNet& net, const QuadricField& field, int samples_per_edge) {
          std::ostringstream os;
          export_obj(net, field, samples_per_edge, os);
          return os.str();
        },
        py::arg("net"), py::arg("field"), py::arg("samples_per_edge"));

  // Default tolerances mirrored for python callers.
  py::module_ defaults_mod = m.def_submodule("defaults");
  defaults_mod.attr("planarity_tol") = defaults::planarity_tol;
  defaults_mod.attr("lelieuvre_tol") = defaults::lelieuvre_tol;
  defaults_mod.attr("moutard_angle_tol") = defaults::moutard_angle_tol;
  defaults_mod.attr("tangent_angle_tol") = defaults::tangent_angle_tol;
  defaults_mod.attr("camc_tol") = defaults::camc_tol;
  defaults_mod.attr("canonical_tol") = defaults::canonical_tol;
}
