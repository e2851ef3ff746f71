#include "asymnet/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace asymnet {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

[[noreturn]] void fail(int line, const std::string& what) {
  std::ostringstream os;
  os << "line " << line << ": " << what;
  throw ParseError(os.str());
}

bool blank(const std::string& s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

AsymptoticNet NetDocument::to_net() const {
  return make_net(quads_i, quads_j, positions);
}

NetDocument NetDocument::from_net(const AsymptoticNet& net) {
  NetDocument doc;
  doc.quads_i = net.domain.quads_i;
  doc.quads_j = net.domain.quads_j;
  doc.positions = net.positions;
  return doc;
}

void save_document(const NetDocument& doc, std::ostream& out) {
  out << "asymnet " << doc.version << "\n";
  out << "extents " << doc.quads_i << " " << doc.quads_j << "\n";
  for (const auto& [key, value] : doc.meta) out << "meta " << key << " " << value << "\n";
  for (const Vec3& p : doc.positions)
    out << fmt17(p.x()) << " " << fmt17(p.y()) << " " << fmt17(p.z()) << "\n";
}

void save_document(const NetDocument& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  save_document(doc, out);
  if (!out) throw ParseError("write to '" + path + "' failed");
}

NetDocument load_document(std::istream& in) {
  NetDocument doc;
  std::string line;
  int lineno = 0;
  int stage = 0;  // 0: header, 1: extents, 2: meta/coordinates
  int expect = 0;

  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    std::istringstream ls(line);
    if (stage == 0) {
      std::string tag;
      ls >> tag >> doc.version;
      if (tag != "asymnet" || ls.fail()) fail(lineno, "expected header 'asymnet <version>'");
      if (doc.version != 1) fail(lineno, "unsupported format version " + std::to_string(doc.version));
      stage = 1;
    } else if (stage == 1) {
      std::string tag;
      ls >> tag >> doc.quads_i >> doc.quads_j;
      if (tag != "extents" || ls.fail()) fail(lineno, "expected 'extents <M> <N>'");
      if (doc.quads_i < 1 || doc.quads_j < 1)
        fail(lineno, "extents must be at least 1 1");
      expect = (doc.quads_i + 1) * (doc.quads_j + 1);
      doc.positions.reserve(expect);
      stage = 2;
    } else {
      std::string first;
      ls >> first;
      if (first == "meta") {
        if (!doc.positions.empty()) fail(lineno, "meta lines must precede coordinates");
        std::string key, value;
        ls >> key;
        if (ls.fail() || key.empty()) fail(lineno, "meta line without a key");
        std::getline(ls, value);
        size_t pos = value.find_first_not_of(" \t");
        doc.meta.emplace_back(key, pos == std::string::npos ? "" : value.substr(pos));
        continue;
      }
      if ((int)doc.positions.size() >= expect)
        fail(lineno, "unexpected trailing content after " + std::to_string(expect) +
                         " coordinate rows");
      std::istringstream cs(line);
      double x, y, z;
      cs >> x >> y >> z;
      if (cs.fail()) fail(lineno, "expected three coordinates, got '" + line + "'");
      std::string rest;
      cs >> rest;
      if (!rest.empty()) fail(lineno, "unexpected extra field '" + rest + "'");
      if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
        fail(lineno, "coordinates must be finite");
      doc.positions.emplace_back(x, y, z);
    }
  }
  if (stage < 2) throw ParseError("document ended before the extents line");
  if ((int)doc.positions.size() != expect) {
    std::ostringstream os;
    os << "dimension mismatch: extents " << doc.quads_i << " " << doc.quads_j << " need "
       << expect << " coordinate rows, found " << doc.positions.size();
    throw ParseError(os.str());
  }
  return doc;
}

NetDocument load_document_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return load_document(in);
}

void export_obj(const AsymptoticNet& net, const QuadricField& field, int samples_per_edge,
                std::ostream& out) {
  if (samples_per_edge < 1) throw GeometryError("samples per edge must be at least 1");
  const GridDomain& d = net.domain;
  const int M = d.quads_i, N = d.quads_j, n = samples_per_edge;

  // Shared vertices are emitted once and referenced by index from both sides:
  // corners, then inner points of I-edges and J-edges (sampled affinely along
  // the straight edge segments, which lie on both adjacent patch quadrics),
  // then per-patch interior samples.
  const int base_corner = 0;
  const int base_ie = base_corner + (M + 1) * (N + 1);
  const int base_je = base_ie + M * (N + 1) * (n - 1);
  const int base_in = base_je + (M + 1) * N * (n - 1);

  auto corner_idx = [&](int i, int j) { return base_corner + j * (M + 1) + i; };
  auto ie_idx = [&](int i, int j, int k) { return base_ie + (j * M + i) * (n - 1) + (k - 1); };
  auto je_idx = [&](int i, int j, int k) {
    return base_je + (j * (M + 1) + i) * (n - 1) + (k - 1);
  };
  auto in_idx = [&](int qi, int qj, int r, int c) {
    return base_in + ((qj * M + qi) * (n - 1) + (r - 1)) * (n - 1) + (c - 1);
  };

  auto emit = [&](const Vec3& p) {
    out << "v " << fmt17(p.x()) << " " << fmt17(p.y()) << " " << fmt17(p.z()) << "\n";
  };

  out << "# asymptotic net: " << M << " x " << N << " quadrangles, " << n
      << " samples per edge\n";
  for (int j = 0; j <= N; ++j)
    for (int i = 0; i <= M; ++i) emit(net.at(i, j));
  for (int j = 0; j <= N; ++j)
    for (int i = 0; i < M; ++i)
      for (int k = 1; k < n; ++k) {
        double t = double(k) / double(n);
        emit(net.at(i, j) + t * (net.at(i + 1, j) - net.at(i, j)));
      }
  for (int j = 0; j < N; ++j)
    for (int i = 0; i <= M; ++i)
      for (int k = 1; k < n; ++k) {
        double t = double(k) / double(n);
        emit(net.at(i, j) + t * (net.at(i, j + 1) - net.at(i, j)));
      }
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < M; ++i)
      for (int r = 1; r < n; ++r)
        for (int c = 1; c < n; ++c)
          emit(field.patch(i, j).evaluate(double(r) / n, double(c) / n));

  // Grid point (r, c) of patch (i, j) resolved to a shared vertex index.
  auto resolve = [&](int i, int j, int r, int c) {
    bool r0 = r == 0, r1 = r == n, c0 = c == 0, c1 = c == n;
    if (r0 && c0) return corner_idx(i, j);
    if (r1 && c0) return corner_idx(i + 1, j);
    if (r0 && c1) return corner_idx(i, j + 1);
    if (r1 && c1) return corner_idx(i + 1, j + 1);
    if (c0) return ie_idx(i, j, r);
    if (c1) return ie_idx(i, j + 1, r);
    if (r0) return je_idx(i, j, c);
    if (r1) return je_idx(i + 1, j, c);
    return in_idx(i, j, r, c);
  };

  for (int j = 0; j < N; ++j)
    for (int i = 0; i < M; ++i)
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          out << "f " << resolve(i, j, r, c) + 1 << " " << resolve(i, j, r + 1, c) + 1 << " "
              << resolve(i, j, r + 1, c + 1) + 1 << " " << resolve(i, j, r, c + 1) + 1
              << "\n";

  // Control net polylines.
  for (int j = 0; j <= N; ++j) {
    out << "l";
    for (int i = 0; i <= M; ++i) out << " " << corner_idx(i, j) + 1;
    out << "\n";
  }
  for (int i = 0; i <= M; ++i) {
    out << "l";
    for (int j = 0; j <= N; ++j) out << " " << corner_idx(i, j) + 1;
    out << "\n";
  }
}

void export_obj(const AsymptoticNet& net, const QuadricField& field, int samples_per_edge,
                const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  export_obj(net, field, samples_per_edge, out);
  if (!out) throw ParseError("write to '" + path + "' failed");
}

}  // namespace asymnet
