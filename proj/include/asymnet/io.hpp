#pragma once

#include "asymnet/net.hpp"
#include "asymnet/quadric.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace asymnet {

// Versioned text container for a net:
//
//   asymnet 1
//   extents M N
//   meta <key> <value...>        (zero or more)
//   <x> <y> <z>                  ((M+1)(N+1) rows, row-major with i fastest)
//
// Coordinates are written with 17 significant digits, so a save/load round
// trip reproduces every double bit-exactly. Loaders report malformed input
// with line numbers.
struct NetDocument {
  int version = 1;
  int quads_i = 0;
  int quads_j = 0;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<Vec3> positions;

  AsymptoticNet to_net() const;
  static NetDocument from_net(const AsymptoticNet& net);
};

void save_document(const NetDocument& doc, std::ostream& out);
void save_document(const NetDocument& doc, const std::string& path);
NetDocument load_document(std::istream& in);
NetDocument load_document_file(const std::string& path);

// Wavefront OBJ export of a quadric field: each quadrangle is sampled on a
// (samples+1) x (samples+1) parameter grid of its patch and triangulated as
// quads; the control net is appended as polyline records. Vertices on shared
// edges are emitted once (patch boundaries of the rational map are straight
// segments, so both sides sample identical points); the mesh is watertight
// and seams weld bit-exactly. samples = 1 emits the control quadrangles only.
void export_obj(const AsymptoticNet& net, const QuadricField& field, int samples_per_edge,
                std::ostream& out);
void export_obj(const AsymptoticNet& net, const QuadricField& field, int samples_per_edge,
                const std::string& path);

}  // namespace asymnet
