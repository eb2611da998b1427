#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ffdist/construct.hpp"
#include "ffdist/geometry.hpp"
#include "ffdist/search.hpp"
#include "ffdist/srg.hpp"

namespace ffdist::cert {

using json = nlohmann::json;

inline constexpr int format_version = 1;

/// Raised for documents that do not follow the certificate schema.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// k = 1: a bare residue. k > 1: the little-endian coefficient array.
json encode_elem(const Field & f, Elem a);
Elem decode_elem(const Field & f, const json & j);

json encode_field(const Field & f);
Field decode_field(const json & j);

json encode_points(const Field & f, const std::vector<Vec> & pts);

json encode_claim(const Field & f, const Classification & c);

json encode_srg(const SrgParams & params, const SrgReport & report, const CollapseReport & collapse);

/// Provenance of a modular construction, used by the verifier to rebuild it.
struct ConstructionSpec {
    Field field;
    std::size_t d;
    Elem b;
    bool embed_standard = false;
};

struct ConstructionOutput {
    PointSet equilateral;
    std::optional<MidpointSet> mids;
};

/// Runs modular_equilateral, the optional embedding and the optional
/// midpoint step exactly as the CLI does.
ConstructionOutput build_construction(const ConstructionSpec & spec, bool with_midpoints);

/// Full certificate for an equilateral or two-distance point set. `meta`
/// receives the bounds block; other meta keys are kept as given.
json make_certificate(const PointSet & s, json meta = json::object());

json equilateral_certificate(const ConstructionSpec & spec, const PointSet & s);
json midpoint_certificate(const ConstructionSpec & spec, const PointSet & source, const MidpointSet & mids);
json search_certificate(const SearchProblem & prob, const SearchResult & result);

/// Canonical serialization: sorted keys, two-space indent, trailing newline.
std::string dump(const json & j);

struct Diff {
    std::string check;
    std::string detail;
};

struct VerifyReport {
    /// 0 verified, 1 mismatch, 2 schema error.
    int exit_code = 0;
    std::vector<std::string> checks;
    std::vector<Diff> diffs;
    std::string schema_error;

    json to_json() const;
};

/// Recomputes every claim in the document from its points.
VerifyReport verify(const json & doc);

}  // namespace ffdist::cert
