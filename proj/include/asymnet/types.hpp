#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace asymnet {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

// Geometric precondition violations (degenerate quadrangles, parameter domain,
// pole evaluation, ...). The CLI maps these to exit code 2.
class GeometryError : public std::runtime_error {
public:
  explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

// A net whose positions do not admit a consistent co-normal field (the input
// was not an asymptotic net). Kept separate so callers can treat it as a
// negative verdict rather than a usage error.
class InconsistentNetError : public GeometryError {
public:
  explicit InconsistentNetError(const std::string& what) : GeometryError(what) {}
};

// Malformed documents (net files, CLI input). Messages carry line context.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Default tolerances; every residual they guard is dimensionless.
namespace defaults {
inline constexpr double planarity_tol = 1e-9;      // cross planarity (unit triple products)
inline constexpr double lelieuvre_tol = 1e-9;      // edge-relative Lelieuvre residual
inline constexpr double moutard_angle_tol = 1e-8;  // radians between the Moutard sums
inline constexpr double tangent_angle_tol = 1e-8;  // radians between tangent planes
inline constexpr double camc_tol = 1e-7;           // relative H deviation
inline constexpr double canonical_tol = 1e-6;      // cross residual after pair normalization
inline constexpr double pole_eps = 1e-12;          // |1 + a*u*v| pole guard
}  // namespace defaults

// Rectangular grid of quadrangles: vertices (i,j) with 0 <= i <= M, 0 <= j <= N,
// quadrangles indexed by their lower-left vertex. Storage is row-major with i
// fastest.
struct GridDomain {
  int quads_i = 0;  // M
  int quads_j = 0;  // N

  int verts_i() const { return quads_i + 1; }
  int verts_j() const { return quads_j + 1; }
  int vertex_count() const { return verts_i() * verts_j(); }
  int quad_count() const { return quads_i * quads_j; }

  int vertex_index(int i, int j) const { return j * verts_i() + i; }
  int quad_index(int i, int j) const { return j * quads_i + i; }

  bool contains_vertex(int i, int j) const {
    return i >= 0 && i <= quads_i && j >= 0 && j <= quads_j;
  }
  bool contains_quad(int i, int j) const {
    return i >= 0 && i < quads_i && j >= 0 && j < quads_j;
  }
  // Interior vertices are those with a full five-point cross.
  bool interior_vertex(int i, int j) const {
    return i >= 1 && i < quads_i && j >= 1 && j < quads_j;
  }
};

// Grid edges. I-edges join (i,j)-(i+1,j), J-edges join (i,j)-(i,j+1).
enum class EdgeDir { I, J };

struct EdgeId {
  EdgeDir dir = EdgeDir::I;
  int i = 0;
  int j = 0;
};

// A strip is a row of quadrangles (horizontal strip j+1/2, between vertex rows
// j and j+1) or a column (vertical strip i+1/2).
enum class StripDir { Horizontal, Vertical };

struct StripId {
  StripDir dir = StripDir::Horizontal;
  int index = 0;
};

inline double relative_diff(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace asymnet
