#include "ffdist/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "ffdist/certificate.hpp"
#include "ffdist/construct.hpp"
#include "ffdist/linalg.hpp"
#include "ffdist/search.hpp"
#include "ffdist/srg.hpp"

namespace ffdist::cli {

namespace {

struct FieldFlags {
    std::uint64_t p = 0;
    unsigned k = 1;
    std::string modulus;

    void add_to(CLI::App & app, bool required = true)
    {
        auto * opt = app.add_option("--p", p, "Odd prime characteristic");
        if (required)
            opt->required();
        app.add_option("--k", k, "Extension degree")->capture_default_str();
        app.add_option("--modulus", modulus, "Monic modulus coefficients, little-endian, comma-separated");
    }

    Field make() const
    {
        std::optional<std::vector<std::uint32_t>> m;
        if (!modulus.empty()) {
            m.emplace();
            std::stringstream ss(modulus);
            std::string tok;
            while (std::getline(ss, tok, ','))
                m->push_back(static_cast<std::uint32_t>(std::stoul(tok)));
        }
        return Field::make(p, k, m);
    }
};

// An integer is taken in the prime subfield; "c0:c1:..." gives all k coefficients.
Elem parse_elem(const Field & f, const std::string & text)
{
    if (text.find(':') == std::string::npos)
        return f.from_int(std::stoll(text));
    std::vector<std::uint32_t> c;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ':'))
        c.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    return f.from_coeffs(c);
}

std::vector<Elem> parse_elems(const Field & f, const std::string & text)
{
    std::vector<Elem> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        out.push_back(parse_elem(f, tok));
    return out;
}

bool write_document(const std::string & path, const cert::json & doc, std::ostream & out, std::ostream & err)
{
    const std::string text = cert::dump(doc);
    if (path == "-") {
        out << text;
        return true;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        err << "cannot write " << path << "\n";
        return false;
    }
    file << text;
    return true;
}

std::string midpoints_path(const std::string & out_path)
{
    if (out_path == "-")
        return "-";
    const std::string suffix = ".json";
    if (out_path.size() > suffix.size() && out_path.compare(out_path.size() - suffix.size(), suffix.size(), suffix) == 0)
        return out_path.substr(0, out_path.size() - suffix.size()) + ".midpoints.json";
    return out_path + ".midpoints.json";
}

struct ConstructFlags {
    FieldFlags field;
    std::size_t d = 0;
    std::string b = "1";
    bool with_midpoints = false;
    std::string embed = "ambient";
    std::string out = "-";
    std::string mids_out;
};

int cmd_construct(const ConstructFlags & flags, std::ostream & out, std::ostream & err)
{
    std::optional<cert::ConstructionSpec> spec;
    try {
        const Field f = flags.field.make();
        const Elem b = parse_elem(f, flags.b);
        ModularParams::make(f, flags.d, b);  // surfaces NotModular / ZeroScale as usage errors
        spec = cert::ConstructionSpec{f, flags.d, b, flags.embed == "standard"};
    }
    catch (const std::exception & e) {
        err << "construct: " << e.what() << "\n";
        return usage;
    }

    try {
        const auto built = cert::build_construction(*spec, flags.with_midpoints);
        if (!write_document(flags.out, cert::equilateral_certificate(*spec, built.equilateral), out, err))
            return usage;
        if (built.mids) {
            const std::string path = flags.mids_out.empty() ? midpoints_path(flags.out) : flags.mids_out;
            if (!write_document(path, cert::midpoint_certificate(*spec, built.equilateral, *built.mids), out, err))
                return usage;
        }
    }
    catch (const NotIsometricError & e) {
        err << "construct: " << e.what() << " (square class witness: "
            << cert::encode_elem(spec->field, e.witness()).dump() << ", "
            << to_string(spec->field.square_class(e.witness())) << ")\n";
        return failure;
    }
    return ok;
}

int cmd_verify(const std::string & path, std::ostream & out, std::ostream & err)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err << "verify: cannot read " << path << "\n";
        return usage;
    }
    cert::json doc;
    try {
        doc = cert::json::parse(in);
    }
    catch (const cert::json::exception & e) {
        err << "verify: malformed JSON: " << e.what() << "\n";
        return usage;
    }
    const cert::VerifyReport report = cert::verify(doc);
    out << report.to_json().dump(2) << "\n";
    return report.exit_code;
}

struct SearchFlags {
    FieldFlags field;
    std::size_t d = 0;
    std::string mode = "equilateral";
    std::string fix_values;
    double budget_secs = 60.0;
    std::uint64_t budget_nodes = 100'000'000;
    bool canonical = false;
    int threads = 0;
    std::string out = "-";
    std::string preset;
    bool record_golden = false;
    bool skip_golden = false;
};

int cmd_search(const SearchFlags & flags, std::ostream & out, std::ostream & err)
{
    std::optional<SearchProblem> prob;
    try {
        FieldFlags field = flags.field;
        std::size_t d = flags.d;
        std::string mode = flags.mode;
        if (!flags.preset.empty()) {
            for (const auto & preset : search_presets())
                if (preset.name == flags.preset) {
                    field = FieldFlags{preset.p, 1, ""};
                    d = preset.d;
                    mode = to_string(preset.mode);
                    err << "search: preset " << preset.name << ": " << preset.description << "\n";
                }
        }
        else if (field.p == 0 || d == 0)
            throw Error(ErrorKind::InvalidArgument, "--p and --d are required without --preset");
        const Field f = field.make();
        SearchProblem p{f};
        p.d = d;
        p.mode = parse_search_mode(mode);
        p.budget = CliqueBudget{flags.budget_secs, flags.budget_nodes};
        p.canonical = flags.canonical;
        p.threads = flags.threads;
        if (!flags.fix_values.empty()) {
            const auto vs = parse_elems(f, flags.fix_values);
            if (p.mode == SearchMode::Equilateral && vs.size() == 1)
                p.fixed_delta = vs[0];
            else if (p.mode == SearchMode::TwoDistance && vs.size() == 2)
                p.fixed_pair = std::pair{vs[0], vs[1]};
            else
                throw Error(ErrorKind::InvalidArgument, "--fix-values needs one value (equilateral) or two (two_distance)");
        }
        value_subproblems(p);  // validates fixed values
        prob = std::move(p);
    }
    catch (const std::exception & e) {
        err << "search: " << e.what() << "\n";
        return usage;
    }

    SearchResult result = run_search(*prob);
    if (!write_document(flags.out, cert::search_certificate(*prob, result), out, err))
        return usage;
    if (!result.exhausted) {
        err << "search: budget exhausted; best size " << result.max_size << " is a lower bound only\n";
        return budget;
    }

    const bool unconstrained = !prob->fixed_delta && !prob->fixed_pair;
    if (unconstrained && (flags.record_golden || !flags.skip_golden)) {
        const auto dir = golden_dir();
        const GoldenRecord record{prob->field.q(), prob->d, prob->mode, result.max_size};
        if (flags.record_golden) {
            store_golden(dir, record);
            err << "search: recorded " << golden_path(dir, record.q, record.d, record.mode).string() << "\n";
        }
        else if (auto golden = load_golden(dir, record.q, record.d, record.mode);
                 golden && golden->max_size != result.max_size) {
            err << "search: max_size " << result.max_size << " disagrees with golden value " << golden->max_size
                << "\n";
            return failure;
        }
    }
    return ok;
}

struct TablesFlags {
    std::uint32_t p = 0;
    std::size_t max_d = 0;
    std::size_t d = 0;
};

std::string join(const auto & xs)
{
    std::ostringstream os;
    os << "[";
    bool first = true;
    for (const auto & x : xs) {
        os << (first ? "" : ", ") << x;
        first = false;
    }
    os << "]";
    return os.str();
}

bool power_of_two(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

int cmd_tables(const TablesFlags & flags, std::ostream & out, std::ostream & err)
{
    if (flags.p == 0 && flags.max_d == 0 && flags.d == 0) {
        err << "tables: give --p with --max-d, or --d, or --max-d\n";
        return usage;
    }
    try {
        if (flags.p != 0) {
            const std::size_t max_d = flags.max_d == 0 ? 20 : flags.max_d;
            const Field f = Field::make(flags.p);
            out << "sharp dimensions (d = -2 mod " << flags.p << ", d <= " << max_d
                << "): " << join(sharp_dimensions(flags.p, max_d)) << "\n\n";
            out << "rank of I+J (size n-1) over F_" << flags.p << "\n";
            out << "  n  rank  p|n\n";
            for (std::size_t n = 2; n <= max_d + 2; ++n)
                out << "  " << n << "  " << gram_rank_law(n, f) << "  " << (n % flags.p == 0 ? "yes" : "no") << "\n";
            out << "\nmidpoint graph eigenvalues 2(n-2), n-4, -2 mod " << flags.p << "\n";
            out << "  n  top  middle  bottom  top=middle  middle!=bottom\n";
            for (std::size_t n = 4; n <= max_d + 2; ++n) {
                const auto c = eigen_collapse(n, flags.p);
                auto m = [&](std::int64_t x) { return ((x % flags.p) + flags.p) % flags.p; };
                out << "  " << n << "  " << m(c.top) << "  " << m(c.middle) << "  " << m(c.bottom) << "  "
                    << (c.top_two_coincide ? "yes" : "no") << "  " << (c.third_distinct ? "yes" : "no") << "\n";
            }
        }
        else if (flags.max_d != 0) {
            out << "  d  d+2  odd primes p | d+2  d = 2^t - 2\n";
            for (std::size_t d = 1; d <= flags.max_d; ++d)
                out << "  " << d << "  " << d + 2 << "  " << join(admissible_chars(d)) << "  "
                    << (power_of_two(d + 2) ? "yes" : "no") << "\n";
        }
        if (flags.d != 0) {
            const auto chars = admissible_chars(flags.d);
            out << "d = " << flags.d << ": characteristics with p | d+2: " << join(chars) << "\n";
            out << "d = 2^t - 2: " << (power_of_two(flags.d + 2) ? "yes" : "no")
                << "; stated range d >= 3: " << (flags.d >= 3 ? "yes" : "no") << "\n";
        }
    }
    catch (const Error & e) {
        err << "tables: " << e.what() << "\n";
        return usage;
    }
    return ok;
}

}  // namespace

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
    CLI::App app{"Exact equilateral and two-distance point sets over finite fields", "ffdist"};
    app.require_subcommand(1);

    ConstructFlags cf;
    auto * construct = app.add_subcommand("construct", "Build the modular equilateral set and optionally its midpoints");
    cf.field.add_to(*construct);
    construct->add_option("--d", cf.d, "Dimension with p | d+2")->required();
    construct->add_option("--b", cf.b, "Nonzero scale (integer, or c0:c1:... for extension fields)")
        ->capture_default_str();
    construct->add_flag("--midpoints", cf.with_midpoints, "Also emit the midpoint two-distance certificate");
    construct->add_option("--embed", cf.embed, "Coordinates: ambient hyperplane or standard F_q^d")
        ->check(CLI::IsMember({"ambient", "standard"}))
        ->capture_default_str();
    construct->add_option("--out", cf.out, "Certificate path, - for stdout")->capture_default_str();
    construct->add_option("--midpoints-out", cf.mids_out, "Midpoint certificate path (default: <out>.midpoints.json)");

    std::string verify_path;
    auto * verify = app.add_subcommand("verify", "Re-derive every claim of a certificate from its points");
    verify->add_option("path", verify_path, "Certificate file")->required();

    SearchFlags sf;
    auto * search = app.add_subcommand("search", "Exact maximum equilateral / two-distance search in F_q^d");
    sf.field.add_to(*search, false);
    search->add_option("--d", sf.d, "Dimension");
    std::vector<std::string> preset_names;
    for (const auto & preset : search_presets())
        preset_names.emplace_back(preset.name);
    search->add_option("--preset", sf.preset, "Named open-case search (overrides --p, --k, --d, --mode)")
        ->check(CLI::IsMember(preset_names));
    search->add_option("--mode", sf.mode, "equilateral or two_distance")
        ->check(CLI::IsMember({"equilateral", "two_distance", "two-distance"}))
        ->capture_default_str();
    search->add_option("--fix-values", sf.fix_values, "Fixed distance value(s), comma-separated");
    search->add_option("--budget-secs", sf.budget_secs, "Wall-clock budget per value subproblem")
        ->capture_default_str();
    search->add_option("--budget-nodes", sf.budget_nodes, "Node budget per value subproblem")->capture_default_str();
    search->add_flag("--canonical", sf.canonical, "Single-threaded; lexicographically least witness");
    search->add_option("--threads", sf.threads, "Worker threads (0 = OpenMP default)");
    search->add_option("--out", sf.out, "Certificate path, - for stdout")->capture_default_str();
    search->add_flag("--record-golden", sf.record_golden, "Store the exhausted result in the golden directory");
    search->add_flag("--no-golden", sf.skip_golden, "Skip the golden-file comparison");

    TablesFlags tf;
    auto * tables = app.add_subcommand("tables", "Sharp dimensions, admissible characteristics, rank and eigenvalue tables");
    tables->add_option("--p", tf.p, "Odd prime");
    tables->add_option("--max-d", tf.max_d, "Largest dimension");
    tables->add_option("--d", tf.d, "Single dimension");

    std::vector<std::string> storage{"ffdist"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto & s : storage)
        argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::CallForHelp &) {
        out << app.help();
        return ok;
    }
    catch (const CLI::ParseError & e) {
        err << e.what() << "\n";
        return usage;
    }

    try {
        if (construct->parsed())
            return cmd_construct(cf, out, err);
        if (verify->parsed())
            return cmd_verify(verify_path, out, err);
        if (search->parsed())
            return cmd_search(sf, out, err);
        if (tables->parsed())
            return cmd_tables(tf, out, err);
    }
    catch (const Error & e) {
        err << e.what() << "\n";
        return usage;
    }
    return usage;
}

}  // namespace ffdist::cli
