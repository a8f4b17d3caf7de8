#pragma once

// JSON files for complexes, simplicial modules, algebras and modules. Every
// document carries a "schema" tag; readers reject unknown tags.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "qhh/algebra.hpp"
#include "qhh/ncomplex.hpp"
#include "qhh/simplicial.hpp"

namespace qhh::io {

using json = nlohmann::ordered_json;

inline constexpr const char* ncomplex_schema = "qhh.ncomplex/1";
inline constexpr const char* simplicial_schema = "qhh.simplicial/1";
inline constexpr const char* algebra_schema = "qhh.algebra/1";
inline constexpr const char* module_schema = "qhh.module/1";

namespace detail {

inline void expect_schema(const json& j, const char* tag) {
  if (!j.is_object() || !j.contains("schema")) throw error(errc::invalid_input, std::string("missing schema tag, expected ") + tag);
  const auto got = j.at("schema").get<std::string>();
  if (got != tag) throw error(errc::invalid_input, "schema " + got + ", expected " + tag);
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw error(errc::invalid_input, std::string("malformed document: ") + e.what());
  }
}

inline json matrix_entries(const FMatrix& m) { return m.entries(); }

inline FMatrix read_matrix(const json& j, std::size_t rows, std::size_t cols, fp::elem p, const std::string& what) {
  auto v = j.get<std::vector<std::int64_t>>();
  if (v.size() != rows * cols)
    throw error(errc::shape_mismatch, what + ": expected " + std::to_string(rows * cols) + " entries, got " + std::to_string(v.size()));
  return FMatrix::from_ints(rows, cols, p, v);
}

}  // namespace detail

/// {schema, context:{N,p,q}, lo, hi, dims, truncation, diff:{degree: row-major}}.
/// q is null when the complex carries no q-context.
inline json to_json(const NComplex& c) {
  json j;
  j["schema"] = ncomplex_schema;
  j["context"] = {{"N", c.N()}, {"p", c.modulus()}, {"q", c.context() ? json(c.context()->q()) : json(nullptr)}};
  j["lo"] = c.lo();
  j["hi"] = c.hi();
  j["dims"] = c.dims();
  j["truncation"] = {{"below", c.truncation().below}, {"above", c.truncation().above}};
  json d = json::object();
  for (int n = c.lo() + 1; n <= c.hi(); ++n) d[std::to_string(n)] = detail::matrix_entries(c.diff(n));
  j["diff"] = std::move(d);
  return j;
}

inline NComplex ncomplex_from_json(const json& j) {
  return detail::guarded([&] {
    detail::expect_schema(j, ncomplex_schema);
    const auto& ctxj = j.at("context");
    const int N = ctxj.at("N").get<int>();
    const auto p = ctxj.at("p").get<fp::elem>();
    std::optional<QContext> ctx;
    if (ctxj.contains("q") && !ctxj.at("q").is_null()) ctx = make_context(N, p, ctxj.at("q").get<std::int64_t>());
    const int lo = j.at("lo").get<int>();
    const auto dims = j.at("dims").get<std::vector<std::size_t>>();
    if (j.contains("hi") && j.at("hi").get<int>() != lo + static_cast<int>(dims.size()) - 1)
      throw error(errc::shape_mismatch, "hi does not match lo and dims");
    Truncation t;
    if (j.contains("truncation")) {
      t.below = j.at("truncation").value("below", false);
      t.above = j.at("truncation").value("above", false);
    }
    const auto& dj = j.at("diff");
    std::vector<FMatrix> diffs;
    for (int n = lo + 1; n < lo + static_cast<int>(dims.size()); ++n) {
      const auto rows = dims[static_cast<std::size_t>(n - 1 - lo)], cols = dims[static_cast<std::size_t>(n - lo)];
      const auto key = std::to_string(n);
      if (dj.contains(key))
        diffs.push_back(detail::read_matrix(dj.at(key), rows, cols, p, "d_" + key));
      else
        diffs.emplace_back(rows, cols, p);
    }
    return NComplex(N, p, lo, dims, std::move(diffs), t, ctx);
  });
}

/// {schema, p, dims, last_face, faces:{level:[row-major...]}, degeneracies:{level:[...]}}.
inline json to_json(const SimplicialModule& sm) {
  json j;
  j["schema"] = simplicial_schema;
  j["p"] = sm.modulus();
  j["dims"] = sm.dims();
  j["last_face"] = sm.has_last_face();
  json faces = json::object(), degens = json::object();
  for (int n = 1; n <= sm.n_max(); ++n) {
    json list = json::array();
    for (int i = 0; i < sm.face_count(n); ++i) list.push_back(detail::matrix_entries(sm.face(n, i)));
    faces[std::to_string(n)] = std::move(list);
  }
  if (sm.has_degeneracies())
    for (int n = 0; n < sm.n_max(); ++n) {
      json list = json::array();
      for (int i = 0; i <= n; ++i) list.push_back(detail::matrix_entries(sm.degeneracy(n, i)));
      degens[std::to_string(n)] = std::move(list);
    }
  j["faces"] = std::move(faces);
  j["degeneracies"] = std::move(degens);
  return j;
}

inline SimplicialModule simplicial_from_json(const json& j) {
  return detail::guarded([&] {
    detail::expect_schema(j, simplicial_schema);
    const auto p = j.at("p").get<fp::elem>();
    const auto dims = j.at("dims").get<std::vector<std::size_t>>();
    const bool last = j.value("last_face", true);
    std::vector<std::vector<FMatrix>> faces(dims.size()), degens;
    for (std::size_t n = 1; n < dims.size(); ++n)
      for (const auto& f : j.at("faces").at(std::to_string(n)))
        faces[n].push_back(detail::read_matrix(f, dims[n - 1], dims[n], p, "face on level " + std::to_string(n)));
    const auto& dj = j.value("degeneracies", json::object());
    if (!dj.empty())
      for (std::size_t n = 0; n + 1 < dims.size(); ++n) {
        degens.emplace_back();
        for (const auto& s : dj.at(std::to_string(n)))
          degens.back().push_back(detail::read_matrix(s, dims[n + 1], dims[n], p, "degeneracy on level " + std::to_string(n)));
      }
    return SimplicialModule(p, dims, std::move(faces), std::move(degens), last);
  });
}

/// {schema, name, p, dim, unit, mult: d x d table of coordinate vectors}.
inline json to_json(const FinDimAlgebra& a) {
  json j;
  j["schema"] = algebra_schema;
  if (!a.name().empty()) j["name"] = a.name();
  j["p"] = a.modulus();
  j["dim"] = a.dim();
  j["unit"] = a.unit();
  json mult = json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < a.dim(); ++k) row.push_back(a.multiply(a.basis_vector(i), a.basis_vector(k)));
    mult.push_back(std::move(row));
  }
  j["mult"] = std::move(mult);
  return j;
}

inline FinDimAlgebra algebra_from_json(const json& j) {
  return detail::guarded([&] {
    detail::expect_schema(j, algebra_schema);
    const auto p = j.at("p").get<fp::elem>();
    const auto d = j.at("dim").get<std::size_t>();
    auto reduce = [p](std::vector<std::int64_t> v) {
      Vec out;
      for (auto x : v) out.push_back(fp::reduce(x, p));
      return out;
    };
    Vec unit = reduce(j.at("unit").get<std::vector<std::int64_t>>());
    std::vector<std::vector<Vec>> mult;
    for (const auto& row : j.at("mult")) {
      mult.emplace_back();
      for (const auto& e : row) mult.back().push_back(reduce(e.get<std::vector<std::int64_t>>()));
    }
    return FinDimAlgebra(p, d, std::move(unit), std::move(mult), j.value("name", std::string{}));
  });
}

/// {schema, algebra: file name or inline algebra, dim, side, action: [row-major per basis element]}.
inline json to_json(const FDModule& m, const std::string& algebra_ref = {}) {
  json j;
  j["schema"] = module_schema;
  if (!m.name().empty()) j["name"] = m.name();
  j["algebra"] = algebra_ref.empty() ? to_json(m.algebra()) : json(algebra_ref);
  j["dim"] = m.dim();
  j["side"] = to_string(m.side());
  json act = json::array();
  for (const auto& a : m.actions()) act.push_back(detail::matrix_entries(a));
  j["action"] = std::move(act);
  return j;
}

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::invalid_input, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw error(errc::invalid_input, path.string() + ": " + e.what());
  }
}

inline void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw error(errc::invalid_input, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

/// A string "algebra" field is resolved relative to `base`.
inline FDModule module_from_json(const json& j, const std::filesystem::path& base = {}) {
  return detail::guarded([&] {
    detail::expect_schema(j, module_schema);
    const auto& aj = j.at("algebra");
    auto alg = std::make_shared<const FinDimAlgebra>(
        aj.is_string() ? algebra_from_json(read_json_file(base / aj.get<std::string>())) : algebra_from_json(aj));
    const auto dim = j.at("dim").get<std::size_t>();
    const auto side_s = j.at("side").get<std::string>();
    if (side_s != "left" && side_s != "right") throw error(errc::invalid_input, "side must be left or right");
    std::vector<FMatrix> act;
    for (const auto& a : j.at("action")) act.push_back(detail::read_matrix(a, dim, dim, alg->modulus(), "action matrix"));
    return FDModule(alg, side_s == "left" ? Side::left : Side::right, dim, std::move(act), j.value("name", std::string{}));
  });
}

inline NComplex load_ncomplex(const std::filesystem::path& p) { return ncomplex_from_json(read_json_file(p)); }
inline SimplicialModule load_simplicial(const std::filesystem::path& p) { return simplicial_from_json(read_json_file(p)); }
inline FinDimAlgebra load_algebra(const std::filesystem::path& p) { return algebra_from_json(read_json_file(p)); }
inline FDModule load_module(const std::filesystem::path& p) { return module_from_json(read_json_file(p), p.parent_path()); }

}  // namespace qhh::io
