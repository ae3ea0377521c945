#include "loopforest/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "loopforest/errors.hpp"

namespace loopforest::io {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(const std::string& text, std::size_t line) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (!text.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ParseError("line " + std::to_string(line) + ": '" + text + "' is not a number");
  }
  return v;
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
}

}  // namespace

PointCloud read_point_csv(std::istream& in) {
  PointCloud cloud;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::stringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) row.push_back(parse_double(trim(field), line_no));
    if (!line.empty() && line.back() == ',') {
      throw ParseError("line " + std::to_string(line_no) + ": trailing comma");
    }
    if (cloud.dim == 0) {
      if (row.size() != 2 && row.size() != 3) {
        throw ParseError("line " + std::to_string(line_no) + ": expected 2 or 3 columns, got " +
                         std::to_string(row.size()));
      }
      cloud.dim = static_cast<int>(row.size());
    } else if (row.size() != static_cast<std::size_t>(cloud.dim)) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(cloud.dim) + " columns, got " + std::to_string(row.size()));
    }
    cloud.coords.insert(cloud.coords.end(), row.begin(), row.end());
  }
  return cloud;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

PointCloud read_point_csv_file(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_point_csv(in);
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

FilteredComplex load_complex(const Json& doc) {
  int n = 0;
  std::vector<double> coords;
  std::vector<SimplexSpec> facets, tops, lower;
  guarded([&] {
    if (!doc.is_object()) throw ParseError("complex document must be a JSON object");
    n = doc.at("ambient_dim").get<int>();
    if (n < 1) throw ParseError("ambient_dim must be positive");
    for (const auto& v : doc.at("vertices")) {
      if (!v.is_array() || v.size() != static_cast<std::size_t>(n)) {
        throw ParseError("every vertex needs " + std::to_string(n) + " coordinates");
      }
      for (const auto& x : v) coords.push_back(x.get<double>());
    }
    for (const auto& s : doc.at("simplices")) {
      SimplexSpec spec{s.at("v").get<std::vector<VertexId>>(), s.at("f").get<double>()};
      const auto size = spec.vertices.size();
      if (size == static_cast<std::size_t>(n)) {
        facets.push_back(std::move(spec));
      } else if (size == static_cast<std::size_t>(n) + 1) {
        tops.push_back(std::move(spec));
      } else if (size >= 1 && size < static_cast<std::size_t>(n)) {
        lower.push_back(std::move(spec));
      } else {
        throw ValidationError("simplex with " + std::to_string(size) +
                              " vertices does not fit ambient dimension " + std::to_string(n));
      }
    }
    return 0;
  });
  return FilteredComplex::build(n, std::move(coords), std::move(facets), std::move(tops), lower);
}

FilteredComplex load_complex_text(std::string_view text) { return load_complex(parse_json(text)); }

FilteredComplex load_complex_file(const std::string& path) {
  return load_complex_text(read_file(path));
}

Json save_complex(const FilteredComplex& k) {
  Json doc;
  doc["ambient_dim"] = k.ambient_dim();
  Json vertices = Json::array();
  for (VertexId v = 0; v < static_cast<VertexId>(k.num_points()); ++v) {
    const auto p = k.point(v);
    vertices.push_back(std::vector<double>(p.begin(), p.end()));
  }
  doc["vertices"] = std::move(vertices);
  Json simplices = Json::array();
  for (FacetId f = 0; f < static_cast<FacetId>(k.num_facets()); ++f) {
    const auto v = k.facet_vertices(f);
    simplices.push_back({{"v", std::vector<VertexId>(v.begin(), v.end())},
                         {"f", k.facet_filtration(f)}});
  }
  for (TopId t = 0; t < static_cast<TopId>(k.num_tops()); ++t) {
    const auto v = k.top_vertices(t);
    simplices.push_back({{"v", std::vector<VertexId>(v.begin(), v.end())},
                         {"f", k.top_filtration(t)}});
  }
  doc["simplices"] = std::move(simplices);
  return doc;
}

Json to_json(const SignedChain& z) { return {{"plus", z.plus}, {"minus", z.minus}}; }

Json to_json(const Chain& z) {
  Json coeffs = Json::object();
  for (const auto& [f, c] : z.coeffs) coeffs[std::to_string(f)] = c;
  return {{"coeffs", std::move(coeffs)}};
}

SignedChain signed_chain_from_json(const Json& j) {
  return guarded([&] {
    SignedChain z{j.at("plus").get<std::vector<FacetId>>(),
                  j.at("minus").get<std::vector<FacetId>>()};
    std::sort(z.plus.begin(), z.plus.end());
    std::sort(z.minus.begin(), z.minus.end());
    return z;
  });
}

Chain chain_from_json(const Json& j) {
  return guarded([&] {
    std::vector<std::pair<FacetId, std::int64_t>> terms;
    for (const auto& [key, value] : j.at("coeffs").items()) {
      FacetId f = 0;
      auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), f);
      if (ec != std::errc() || ptr != key.data() + key.size()) {
        throw ParseError("chain key '" + key + "' is not a facet id");
      }
      terms.emplace_back(f, value.get<std::int64_t>());
    }
    return make_chain(std::move(terms));
  });
}

namespace {

template <class C>
Json forest_json(const BasicForest<C>& f, bool is_signed) {
  Json vertices = Json::array();
  Json leaf_top = Json::object();
  for (const auto& v : f.vertices) {
    Json jv{{"id", v.id},
            {"time", v.time},
            {"kind", std::string(to_string(v.kind))},
            {"chain", to_json(*f.chains[v.id])}};
    if (!v.tops.empty()) jv["tops"] = v.tops;
    vertices.push_back(std::move(jv));
    const auto t = f.leaf_top(v.id);
    if (t >= 0) leaf_top[std::to_string(v.id)] = t;
  }
  Json edges = Json::array();
  for (const auto& [c, p] : f.edges()) edges.push_back({c, p});
  return {{"signed", is_signed},
          {"vertices", std::move(vertices)},
          {"edges", std::move(edges)},
          {"leaf_top", std::move(leaf_top)}};
}

template <class C, class ReadChain>
BasicForest<C> forest_from_json(const Json& doc, bool want_signed, ReadChain read_chain) {
  return guarded([&] {
    if (doc.contains("signed") && doc.at("signed").template get<bool>() != want_signed) {
      throw ParseError(want_signed ? "expected a signed forest document"
                                   : "expected an unsigned forest document");
    }
    BasicForest<C> f;
    const auto& vs = doc.at("vertices");
    f.vertices.resize(vs.size());
    f.chains.resize(vs.size());
    for (const auto& jv : vs) {
      const auto id = jv.at("id").template get<std::int64_t>();
      if (id < 0 || static_cast<std::size_t>(id) >= vs.size()) {
        throw ParseError("vertex id " + std::to_string(id) + " out of range");
      }
      auto& v = f.vertices[id];
      v.id = static_cast<std::int32_t>(id);
      v.time = jv.at("time").template get<double>();
      v.kind = vertex_kind_from_string(jv.at("kind").template get<std::string>());
      if (jv.contains("tops")) v.tops = jv.at("tops").template get<std::vector<TopId>>();
      f.chains[id] = std::make_shared<const C>(read_chain(jv.at("chain")));
    }
    for (const auto& [key, value] : doc.at("leaf_top").items()) {
      const auto id = std::stoll(key);
      if (id < 0 || static_cast<std::size_t>(id) >= vs.size()) {
        throw ParseError("leaf_top refers to unknown vertex " + key);
      }
      auto& tops = f.vertices[id].tops;
      const auto t = value.template get<TopId>();
      if (std::find(tops.begin(), tops.end(), t) == tops.end()) tops.push_back(t);
      std::sort(tops.begin(), tops.end());
    }
    for (const auto& e : doc.at("edges")) {
      const auto c = e.at(0).template get<std::int64_t>();
      const auto p = e.at(1).template get<std::int64_t>();
      const auto n = static_cast<std::int64_t>(vs.size());
      if (c < 0 || c >= n || p < 0 || p >= n) throw ParseError("edge refers to unknown vertex");
      if (f.vertices[c].parent >= 0) throw ParseError("vertex with two parents");
      if (!(f.vertices[c].time > f.vertices[p].time) || c >= p) {
        throw ParseError("edge " + std::to_string(c) + " -> " + std::to_string(p) +
                         " does not go from a larger time to a smaller one");
      }
      f.vertices[c].parent = static_cast<std::int32_t>(p);
      f.vertices[p].children.push_back(static_cast<std::int32_t>(c));
    }
    for (auto& v : f.vertices) std::sort(v.children.begin(), v.children.end());
    return f;
  });
}

template <class C>
Json barcode_json(const BasicBarcode<C>& b) {
  Json bars = Json::array();
  for (const auto& gamma : b.entries) {
    Json steps = Json::array();
    for (const auto& s : gamma.steps) {
      steps.push_back({{"from", s.from}, {"to", s.to}, {"chain", to_json(*s.chain)}});
    }
    bars.push_back(
        {{"birth", gamma.bar.birth}, {"death", gamma.bar.death}, {"steps", std::move(steps)}});
  }
  return {{"bars", std::move(bars)}};
}

}  // namespace

Json forest_to_json(const PersistenceForest& f) { return forest_json(f, true); }
Json forest_to_json(const UnsignedForest& f) { return forest_json(f, false); }

PersistenceForest signed_forest_from_json(const Json& doc) {
  return forest_from_json<SignedChain>(doc, true, signed_chain_from_json);
}

UnsignedForest unsigned_forest_from_json(const Json& doc) {
  return forest_from_json<Chain>(doc, false, chain_from_json);
}

Json barcode_to_json(const ProgressionBarcode& b) { return barcode_json(b); }
Json barcode_to_json(const UnsignedBarcode& b) { return barcode_json(b); }

Json landscape_to_json(const PiecewiseLinear& f, int n, std::string_view functional) {
  Json pts = Json::array();
  for (const auto& [x, y] : f.breakpoints()) pts.push_back({x, y});
  return {{"n", n}, {"functional", std::string(functional)}, {"breakpoints", std::move(pts)}};
}

}  // namespace loopforest::io
