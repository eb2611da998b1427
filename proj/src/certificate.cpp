#include "ffdist/certificate.hpp"

#include <set>
#include <sstream>

namespace ffdist::cert {

json encode_elem(const Field & f, Elem a)
{
    if (f.is_prime_field())
        return a.code;
    return f.coeffs(a);
}

Elem decode_elem(const Field & f, const json & j)
{
    if (f.is_prime_field()) {
        if (!j.is_number_integer())
            throw SchemaError("prime-field element must be an integer");
        const auto v = j.get<std::int64_t>();
        if (v < 0 || v >= static_cast<std::int64_t>(f.p()))
            throw SchemaError("residue " + std::to_string(v) + " not reduced mod p");
        return Elem{static_cast<std::uint32_t>(v)};
    }
    if (!j.is_array() || j.size() != f.k())
        throw SchemaError("extension-field element must be an array of k integers");
    std::vector<std::uint32_t> c;
    for (const auto & x : j) {
        if (!x.is_number_integer())
            throw SchemaError("coefficient must be an integer");
        const auto v = x.get<std::int64_t>();
        if (v < 0 || v >= static_cast<std::int64_t>(f.p()))
            throw SchemaError("coefficient " + std::to_string(v) + " not reduced mod p");
        c.push_back(static_cast<std::uint32_t>(v));
    }
    return f.from_coeffs(c);
}

json encode_field(const Field & f)
{
    json j;
    j["p"] = f.p();
    j["k"] = f.k();
    if (f.k() > 1)
        j["modulus"] = f.modulus();
    return j;
}

Field decode_field(const json & j)
{
    if (!j.is_object() || !j.contains("p") || !j.contains("k") || !j["p"].is_number_integer()
        || !j["k"].is_number_integer())
        throw SchemaError("field must be an object with integer p and k");
    const auto p = j["p"].get<std::int64_t>();
    const auto k = j["k"].get<std::int64_t>();
    if (p <= 0 || k <= 0)
        throw SchemaError("field p and k must be positive");
    std::optional<std::vector<std::uint32_t>> modulus;
    if (j.contains("modulus")) {
        if (!j["modulus"].is_array())
            throw SchemaError("modulus must be an integer array");
        std::vector<std::uint32_t> m;
        for (const auto & c : j["modulus"]) {
            if (!c.is_number_integer() || c.get<std::int64_t>() < 0)
                throw SchemaError("modulus coefficients must be non-negative integers");
            m.push_back(c.get<std::uint32_t>());
        }
        modulus = std::move(m);
    }
    else if (k > 1)
        throw SchemaError("extension field needs a modulus");
    try {
        return Field::make(static_cast<std::uint64_t>(p), static_cast<unsigned>(k), modulus);
    }
    catch (const Error & e) {
        throw SchemaError(std::string("invalid field: ") + e.what());
    }
}

json encode_points(const Field & f, const std::vector<Vec> & pts)
{
    json arr = json::array();
    for (const auto & x : pts) {
        json row = json::array();
        for (auto c : x)
            row.push_back(encode_elem(f, c));
        arr.push_back(std::move(row));
    }
    return arr;
}

json encode_claim(const Field & f, const Classification & c)
{
    switch (c.kind) {
    case Classification::Kind::Equilateral:
        return {{"type", "equilateral"}, {"delta", encode_elem(f, c.values.at(0))}};
    case Classification::Kind::TwoDistance:
        return {{"type", "two_distance"},
                {"values", json::array({encode_elem(f, c.values.at(0)), encode_elem(f, c.values.at(1))})}};
    case Classification::Kind::Other: break;
    }
    throw Error(ErrorKind::InvalidArgument, "only equilateral and two-distance sets can be certified");
}

json encode_srg(const SrgParams & params, const SrgReport & report, const CollapseReport & collapse)
{
    auto spectrum = [](const std::vector<Eigenvalue> & evs) {
        json a = json::array();
        for (const auto & e : evs)
            a.push_back({{"value", e.value}, {"multiplicity", e.multiplicity}});
        return a;
    };
    json j;
    j["params"] = {{"v", params.v}, {"k", params.k}, {"lambda", params.lambda}, {"mu", params.mu},
                   {"eigenvalues", spectrum(params.eigenvalues)}};
    j["passed"] = report.passed;
    j["failure"] = report.failure;
    j["measured"] = spectrum(report.measured);
    j["eigen_collapse"] = {{"n", collapse.n},
                           {"p", collapse.p},
                           {"modular", collapse.modular},
                           {"top_two_coincide", collapse.top_two_coincide},
                           {"third_distinct", collapse.third_distinct}};
    return j;
}

ConstructionOutput build_construction(const ConstructionSpec & spec, bool with_midpoints)
{
    PointSet eq = modular_equilateral(ModularParams::make(spec.field, spec.d, spec.b));
    if (spec.embed_standard)
        eq = embed_standard(eq);
    ConstructionOutput out{std::move(eq), std::nullopt};
    if (with_midpoints)
        out.mids = midpoints(out.equilateral);
    return out;
}

namespace {

json bounds_block(const PointSet & s, const Classification & c)
{
    const std::size_t d = s.geometric_dim();
    const std::uint64_t blok = blokhuis_bound(d);
    const std::uint64_t upper = equilateral_upper(s.field(), d);
    const std::uint64_t ref = c.kind == Classification::Kind::Equilateral ? upper : blok;
    return {{"blokhuis", blok},
            {"equilateral_upper", upper},
            {"attained_flag", std::string(to_string(compare_to_bound(s.size(), ref)))}};
}

json construction_meta(const ConstructionSpec & spec, std::string_view kind)
{
    return {{"construction", std::string(kind)},
            {"b", encode_elem(spec.field, spec.b)},
            {"d", spec.d},
            {"embed", spec.embed_standard ? "standard" : "ambient"}};
}

}  // namespace

json make_certificate(const PointSet & s, json meta)
{
    json doc;
    doc["version"] = format_version;
    doc["field"] = encode_field(s.field());
    doc["ambient_dim"] = s.ambient_dim();
    doc["form"] = std::string(to_string(s.form()));
    doc["points"] = encode_points(s.field(), s.points());
    if (s.size() >= 2) {
        const Classification c = classify(s);
        doc["claim"] = encode_claim(s.field(), c);
        meta["bounds"] = bounds_block(s, c);
    }
    else
        doc["claim"] = {{"type", "none"}};
    doc["meta"] = std::move(meta);
    return doc;
}

json equilateral_certificate(const ConstructionSpec & spec, const PointSet & s)
{
    return make_certificate(s, construction_meta(spec, "modular_equilateral"));
}

json midpoint_certificate(const ConstructionSpec & spec, const PointSet & source, const MidpointSet & mids)
{
    json meta = construction_meta(spec, "midpoints");
    const Field & f = source.field();
    meta["source_equilateral"] = {{"points", encode_points(f, source.points())},
                                  {"delta", encode_elem(f, mids.delta)}};
    const LemmaReport lemma = check_midpoint_lemma(mids);
    meta["lemma"] = {{"shared_pairs", lemma.shared_pairs},
                     {"disjoint_pairs", lemma.disjoint_pairs},
                     {"violations", lemma.violations}};
    const std::size_t n = source.size();
    if (n >= 4) {
        const SrgParams params = expected_params(n);
        const SrgReport report = srg_check(midpoint_graph(mids.points, mids.delta), params);
        meta["srg_report"] = encode_srg(params, report, eigen_collapse(n, f.p()));
    }
    return make_certificate(mids.points, std::move(meta));
}

json search_certificate(const SearchProblem & prob, const SearchResult & r)
{
    const Field & f = prob.field;
    json values = json::array();
    for (auto v : r.values)
        values.push_back(encode_elem(f, v));
    json meta;
    meta["construction"] = "search";
    meta["search"] = {{"mode", std::string(to_string(r.mode))},
                      {"exhausted", r.exhausted},
                      {"max_size", r.max_size},
                      {"values", values},
                      {"canonical", prob.canonical},
                      {"reference_bound", r.reference_bound},
                      {"comparison", std::string(to_string(r.comparison))},
                      {"both_values_occur", r.both_values_occur},
                      {"stats",
                       {{"nodes", r.stats.nodes},
                        {"wall_seconds", r.stats.wall_seconds},
                        {"subproblems", r.stats.subproblems}}}};
    return make_certificate(r.witness, std::move(meta));
}

std::string dump(const json & j) { return j.dump(2) + "\n"; }

json VerifyReport::to_json() const
{
    json j;
    j["status"] = exit_code == 0 ? "verified" : exit_code == 1 ? "mismatch" : "schema_error";
    j["checks"] = checks;
    json d = json::array();
    for (const auto & x : diffs)
        d.push_back({{"check", x.check}, {"detail", x.detail}});
    j["diffs"] = std::move(d);
    if (!schema_error.empty())
        j["error"] = schema_error;
    return j;
}

namespace {

struct Parsed {
    Field field;
    std::size_t ambient_dim;
    Form form;
    std::vector<Vec> points;
    std::string claim_type;
    std::vector<Elem> claim_values;
    json meta;
};

const json & require(const json & j, const char * key)
{
    if (!j.is_object() || !j.contains(key))
        throw SchemaError(std::string("missing key '") + key + "'");
    return j.at(key);
}

std::vector<Vec> decode_points(const Field & f, const json & arr, std::size_t dim)
{
    if (!arr.is_array())
        throw SchemaError("points must be an array");
    std::vector<Vec> pts;
    for (const auto & row : arr) {
        if (!row.is_array() || row.size() != dim)
            throw SchemaError("every point must have ambient_dim coordinates");
        Vec x;
        for (const auto & c : row)
            x.push_back(decode_elem(f, c));
        pts.push_back(std::move(x));
    }
    return pts;
}

Parsed parse(const json & doc)
{
    if (!doc.is_object())
        throw SchemaError("certificate must be a JSON object");
    const json & version = require(doc, "version");
    if (!version.is_number_integer() || version.get<int>() != format_version)
        throw SchemaError("unsupported version");
    Field f = decode_field(require(doc, "field"));
    const json & dim = require(doc, "ambient_dim");
    if (!dim.is_number_integer() || dim.get<std::int64_t>() < 1)
        throw SchemaError("ambient_dim must be a positive integer");
    const auto m = dim.get<std::size_t>();
    const json & form_j = require(doc, "form");
    if (!form_j.is_string())
        throw SchemaError("form must be a string");
    Form form;
    if (form_j == "standard")
        form = Form::Standard;
    else if (form_j == "sum_zero_hyperplane")
        form = Form::SumZeroHyperplane;
    else
        throw SchemaError("unknown form '" + form_j.get<std::string>() + "'");
    if (form == Form::SumZeroHyperplane && m < 2)
        throw SchemaError("hyperplane certificates need ambient_dim >= 2");
    auto pts = decode_points(f, require(doc, "points"), m);

    const json & claim = require(doc, "claim");
    const json & type = require(claim, "type");
    if (!type.is_string())
        throw SchemaError("claim.type must be a string");
    std::vector<Elem> values;
    const auto t = type.get<std::string>();
    if (t == "equilateral") {
        values.push_back(decode_elem(f, require(claim, "delta")));
        if (values[0].code == 0)
            throw SchemaError("equilateral delta must be nonzero");
    }
    else if (t == "two_distance") {
        const json & vs = require(claim, "values");
        if (!vs.is_array() || vs.size() != 2)
            throw SchemaError("two_distance claim needs exactly two values");
        values = {decode_elem(f, vs[0]), decode_elem(f, vs[1])};
        if (values[0] == values[1])
            throw SchemaError("two_distance values must be distinct");
        if (values[0].code == 0 || values[1].code == 0)
            throw SchemaError("two_distance values must be nonzero");
        std::sort(values.begin(), values.end());
    }
    else if (t != "none")
        throw SchemaError("unknown claim type '" + t + "'");

    json meta = doc.contains("meta") ? doc["meta"] : json::object();
    if (!meta.is_object())
        throw SchemaError("meta must be an object");
    return Parsed{std::move(f), m, form, std::move(pts), t, std::move(values), std::move(meta)};
}

class Checker {
public:
    explicit Checker(VerifyReport & r) : r_(r) {}

    void check(const std::string & name, bool ok, const std::string & detail)
    {
        r_.checks.push_back(name);
        if (!ok)
            r_.diffs.push_back({name, detail});
    }

private:
    VerifyReport & r_;
};

std::string elem_text(const Field & f, Elem a) { return encode_elem(f, a).dump(); }

std::string values_text(const Field & f, const std::vector<Elem> & vs)
{
    json a = json::array();
    for (auto v : vs)
        a.push_back(encode_elem(f, v));
    return a.dump();
}

void verify_provenance(const Parsed & c, const PointSet & s, Checker & ck)
{
    const json & meta = c.meta;
    if (!meta.contains("construction"))
        return;
    const json & kind = meta["construction"];
    if (!kind.is_string())
        throw SchemaError("meta.construction must be a string");

    if (kind == "search") {
        const json & search = require(meta, "search");
        const json & max_size = require(search, "max_size");
        if (!max_size.is_number_integer())
            throw SchemaError("meta.search.max_size must be an integer");
        ck.check("search.max_size", max_size.get<std::size_t>() == s.size(),
                 "stored max_size " + max_size.dump() + " but " + std::to_string(s.size()) + " points");
        return;
    }
    if (kind != "modular_equilateral" && kind != "midpoints")
        return;

    const json & d_j = require(meta, "d");
    const json & embed_j = require(meta, "embed");
    if (!d_j.is_number_integer() || d_j.get<std::int64_t>() < 1 || !embed_j.is_string()
        || (embed_j != "ambient" && embed_j != "standard"))
        throw SchemaError("construction meta needs integer d and embed in {ambient, standard}");
    const ConstructionSpec spec{c.field, d_j.get<std::size_t>(), decode_elem(c.field, require(meta, "b")),
                                embed_j == "standard"};
    const bool with_mids = kind == "midpoints";

    std::optional<ConstructionOutput> rebuilt;
    try {
        rebuilt = build_construction(spec, with_mids);
    }
    catch (const Error & e) {
        ck.check("construction.rebuild", false, e.what());
        return;
    }
    const PointSet & target = with_mids ? rebuilt->mids->points : rebuilt->equilateral;
    ck.check("construction.points", target.points() == c.points && target.form() == c.form
                                        && target.ambient_dim() == c.ambient_dim,
             "points differ from the rebuilt construction");
    if (!with_mids)
        return;

    const json & src = require(meta, "source_equilateral");
    const auto src_pts = decode_points(c.field, require(src, "points"), c.ambient_dim);
    const Elem src_delta = decode_elem(c.field, require(src, "delta"));
    ck.check("source.points", src_pts == rebuilt->equilateral.points(),
             "source_equilateral differs from the rebuilt construction");
    std::optional<PointSet> source;
    try {
        source.emplace(c.field, c.ambient_dim, c.form, src_pts);
    }
    catch (const Error & e) {
        ck.check("source.valid", false, e.what());
        return;
    }
    std::optional<MidpointSet> mids;
    try {
        mids = midpoints(*source);
    }
    catch (const Error & e) {
        ck.check("source.equilateral", false, e.what());
        return;
    }
    ck.check("source.delta", mids->delta == src_delta,
             "stored delta " + elem_text(c.field, src_delta) + ", recomputed " + elem_text(c.field, mids->delta));
    ck.check("midpoints.points", mids->points.points() == c.points, "points are not the source midpoints");
    const LemmaReport lemma = check_midpoint_lemma(*mids);
    ck.check("midpoints.lemma", lemma.ok(), std::to_string(lemma.violations) + " pairs off their lemma value");

    const std::size_t n = source->size();
    if (n >= 4) {
        const SrgParams params = expected_params(n);
        SrgReport report;
        try {
            report = srg_check(midpoint_graph(mids->points, mids->delta), params);
        }
        catch (const Error & e) {
            report.failure = e.what();
        }
        ck.check("srg.recomputed", report.passed, report.failure);
        if (meta.contains("srg_report")) {
            const json stored = meta["srg_report"];
            const json fresh = encode_srg(params, report, eigen_collapse(n, c.field.p()));
            ck.check("srg.stored", stored == fresh, "stored srg_report differs from the recomputed one");
        }
    }
}

}  // namespace

VerifyReport verify(const json & doc)
{
    VerifyReport report;
    try {
        const Parsed c = parse(doc);
        Checker ck(report);
        const Field & f = c.field;

        std::set<Vec> unique(c.points.begin(), c.points.end());
        ck.check("distinct", unique.size() == c.points.size(), "duplicate points");
        if (c.form == Form::SumZeroHyperplane) {
            bool ok = true;
            for (const auto & x : c.points) {
                Elem s = f.zero();
                for (auto v : x)
                    s = f.add(s, v);
                ok = ok && s.code == 0;
            }
            ck.check("hyperplane", ok, "a point leaves the sum-zero hyperplane");
        }
        if (!report.diffs.empty()) {
            report.exit_code = 1;
            return report;
        }

        const PointSet s(f, c.ambient_dim, c.form, c.points);
        const std::size_t d = s.geometric_dim();
        if (s.size() < 2) {
            ck.check("claim", c.claim_type == "none", "sets with fewer than two points carry no claim");
        }
        else {
            const Classification cls = classify(s);
            const std::string kind(to_string(cls.kind));
            ck.check("claim.type", kind == c.claim_type, "claimed " + c.claim_type + ", recomputed " + kind);
            if (kind == c.claim_type)
                ck.check("claim.values", cls.values == c.claim_values,
                         "claimed " + values_text(f, c.claim_values) + ", recomputed " + values_text(f, cls.values));

            if (cls.kind == Classification::Kind::Equilateral) {
                const Elem half_delta = f.div(cls.values[0], f.from_int(2));
                const MatrixF g = gram(s);
                bool shape = true;
                for (std::size_t i = 0; i < g.rows(); ++i)
                    for (std::size_t j = 0; j < g.cols(); ++j)
                        shape = shape && g(i, j) == (i == j ? cls.values[0] : half_delta);
                ck.check("gram.shape", shape, "Gram matrix is not (delta/2)(I+J)");
                const std::size_t n = s.size();
                const std::size_t want = n % f.p() == 0 ? n - 2 : n - 1;
                const std::size_t got = rank(g);
                ck.check("gram.rank", got == want,
                         "rank " + std::to_string(got) + ", rank law gives " + std::to_string(want));
                ck.check("equilateral_upper", n <= equilateral_upper(f, d),
                         std::to_string(n) + " points exceed the rank bound");
            }

            if (c.meta.contains("bounds") && cls.kind != Classification::Kind::Other)
                ck.check("bounds", c.meta["bounds"] == bounds_block(s, cls), "stored bounds differ from recomputed");
        }

        verify_provenance(c, s, ck);
        report.exit_code = report.diffs.empty() ? 0 : 1;
    }
    catch (const SchemaError & e) {
        report.exit_code = 2;
        report.schema_error = e.what();
    }
    catch (const json::exception & e) {
        report.exit_code = 2;
        report.schema_error = e.what();
    }
    catch (const Error & e) {
        report.exit_code = 2;
        report.schema_error = e.what();
    }
    return report;
}

}  // namespace ffdist::cert
