#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "loopforest/complex.hpp"
#include "loopforest/forest.hpp"
#include "loopforest/landscape.hpp"
#include "loopforest/progression.hpp"

namespace loopforest::io {

using Json = nlohmann::json;

struct PointCloud {
  int dim = 0;
  std::vector<double> coords;  // row-major, dim per point

  std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
};

/// One point per line, comma-separated, no header; blank lines skipped.
/// Every row must have the same number of columns, 2 or 3. Throws
/// ParseError.
PointCloud read_point_csv(std::istream& in);
PointCloud read_point_csv_file(const std::string& path);

/// Complex document:
///   {"ambient_dim": n, "vertices": [[x, ...], ...],
///    "simplices": [{"v": [ids...], "f": t}, ...]}
/// Simplices of dimension n - 1 and n are required, lower ones optional.
/// Throws ParseError for malformed documents and ValidationError from
/// FilteredComplex::build.
FilteredComplex load_complex(const Json& doc);
FilteredComplex load_complex_text(std::string_view text);
FilteredComplex load_complex_file(const std::string& path);
Json save_complex(const FilteredComplex& k);

Json to_json(const SignedChain& z);
Json to_json(const Chain& z);
SignedChain signed_chain_from_json(const Json& j);
Chain chain_from_json(const Json& j);

/// {"signed": bool, "vertices": [{"id", "time", "kind", "chain", "tops"?}],
///  "edges": [[child, parent], ...], "leaf_top": {"leaf": top, ...}}
Json forest_to_json(const PersistenceForest& f);
Json forest_to_json(const UnsignedForest& f);
/// Reads either kind of forest document back; the label type must match
/// the "signed" flag. Throws ParseError.
PersistenceForest signed_forest_from_json(const Json& doc);
UnsignedForest unsigned_forest_from_json(const Json& doc);

/// {"bars": [{"birth", "death", "steps": [{"from", "to", "chain"}]}]}
Json barcode_to_json(const ProgressionBarcode& b);
Json barcode_to_json(const UnsignedBarcode& b);

/// {"n", "functional", "breakpoints": [[x, y], ...]}
Json landscape_to_json(const PiecewiseLinear& f, int n, std::string_view functional);

/// Parses JSON text, mapping syntax errors to ParseError.
Json parse_json(std::string_view text);
std::string read_file(const std::string& path);

}  // namespace loopforest::io
