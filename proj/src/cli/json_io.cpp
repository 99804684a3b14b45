#include "aschern/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "aschern/error.hpp"

namespace aschern {
namespace {

PointId parse_id(const std::string& key) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != key.size() || key.empty()) fail(ErrorKind::InvalidInput, "point id '" + key + "' is not an integer");
  return static_cast<PointId>(v);
}

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, std::string(what) + ": " + e.what());
  }
}

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(ErrorKind::InvalidInput, "complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const CMat& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.dim(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMat matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) fail(ErrorKind::InvalidInput, "matrix must be a nonempty list of rows");
  const std::size_t n = j.size();
  CMat m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n) fail(ErrorKind::InvalidInput, "matrix is not square");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  if (!m.all_finite()) fail(ErrorKind::InvalidInput, "matrix has non-finite entries");
  return m;
}

json to_json(const Mesh& mesh) {
  json verts = json::object();
  for (const auto& [id, x] : mesh.vertices) verts[std::to_string(id)] = x;
  return {{"dim", mesh.dim}, {"vertices", verts}, {"simplices", mesh.simplices}};
}

Mesh mesh_from_json(const json& j) {
  return guarded("mesh", [&] {
    Mesh mesh;
    mesh.dim = j.at("dim").get<int>();
    for (const auto& [key, x] : j.at("vertices").items())
      mesh.vertices[parse_id(key)] = x.get<std::vector<double>>();
    mesh.simplices = j.at("simplices").get<std::vector<Tuple>>();
    validate_mesh(mesh);
    return mesh;
  });
}

json to_json(const SampledMap& sample) {
  // keys in numeric id order so that output does not depend on insertion order
  std::vector<PointId> ids(sample.ids().begin(), sample.ids().end());
  std::sort(ids.begin(), ids.end());
  json mats = json::object();
  for (PointId id : ids) mats[std::to_string(id)] = to_json(sample.at(id));
  return {{"N", sample.N()},
          {"kind", sample.kind() == SampleKind::Unitary ? "unitary" : "projector"},
          {"rho", sample.rho()},
          {"mats", mats}};
}

SampledMap sample_from_json(const json& j) {
  SampledMap s = guarded("sample", [&] {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind != "unitary" && kind != "projector")
      fail(ErrorKind::InvalidInput, "sample kind must be 'unitary' or 'projector'");
    const auto n = j.at("N").get<std::size_t>();
    SampledMap out(kind == "unitary" ? SampleKind::Unitary : SampleKind::Projector, n,
                   j.at("rho").get<double>());
    std::vector<std::pair<PointId, const json*>> entries;
    for (const auto& [key, m] : j.at("mats").items()) entries.emplace_back(parse_id(key), &m);
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [id, m] : entries) out.insert(id, matrix_from_json(*m));
    return out;
  });
  if (s.kind() == SampleKind::Unitary) {
    UnitarySample check(s);
  } else {
    ProjectorSample check(s);
  }
  return s;
}

json to_json(const Chain& chain) {
  json terms = json::array();
  for (const auto& t : chain.terms()) terms.push_back({{"coeff", to_json(t.coeff)}, {"tuple", t.tuple}});
  return {{"degree", chain.degree()}, {"terms", terms}};
}

Chain chain_from_json(const json& j) {
  return guarded("chain", [&] {
    std::vector<ChainTerm> terms;
    for (const auto& t : j.at("terms")) terms.push_back({complex_from_json(t.at("coeff")), t.at("tuple").get<Tuple>()});
    return Chain(j.at("degree").get<int>(), std::move(terms));
  });
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidInput, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::InvalidInput, "cannot write " + path);
  out << j.dump(2) << "\n";
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace aschern
