#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffdist/clique.hpp"
#include "ffdist/geometry.hpp"

namespace ffdist {

enum class SearchMode { Equilateral, TwoDistance };

std::string_view to_string(SearchMode mode);
SearchMode parse_search_mode(std::string_view text);

enum class BoundComparison { Attained, Exceeded, Unreached };

std::string_view to_string(BoundComparison c);
BoundComparison compare_to_bound(std::uint64_t size, std::uint64_t bound);

/// Exhaustive vertex enumeration is limited to q^d <= 10^4.
inline constexpr std::uint64_t search_ceiling = 10'000;

struct SearchProblem {
    explicit SearchProblem(Field f) : field(std::move(f)) {}

    Field field;
    std::size_t d = 1;
    SearchMode mode = SearchMode::Equilateral;
    std::optional<Elem> fixed_delta;
    std::optional<std::pair<Elem, Elem>> fixed_pair;
    /// Applied to each value subproblem separately.
    CliqueBudget budget;
    /// Single-threaded, no value-scaling reduction, lexicographically least witness.
    bool canonical = false;
    int threads = 0;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    double wall_seconds = 0.0;
    std::size_t subproblems = 0;
};

struct SearchResult {
    SearchMode mode;
    std::size_t max_size = 0;
    PointSet witness;
    bool exhausted = true;
    SearchStats stats;
    /// Value set of the subproblem that produced the witness.
    std::vector<Elem> values;
    /// Present when the witness has at least two points.
    std::optional<Classification> witness_class;
    /// equilateral_upper(d) in equilateral mode, C(d+2, 2) in two-distance mode.
    std::uint64_t reference_bound = 0;
    BoundComparison comparison = BoundComparison::Unreached;
    bool both_values_occur = false;
};

/// All vectors of F_q^d, lexicographic on coordinate tuples (element codes).
std::vector<Vec> enumerate_space(const Field & f, std::size_t d);

/// Value sets searched for the given problem, after square-class scaling
/// reduction unless canonical or fixed.
std::vector<std::vector<Elem>> value_subproblems(const SearchProblem & prob);

SearchResult max_equilateral(const SearchProblem & prob);
SearchResult max_two_distance(const SearchProblem & prob);
SearchResult run_search(const SearchProblem & prob);

/// Named open-case searches shipped with the command line.
struct SearchPreset {
    std::string_view name;
    std::uint32_t p;
    std::size_t d;
    SearchMode mode;
    std::string_view description;
};

const std::vector<SearchPreset> & search_presets();

struct Census {
    std::size_t n = 0;
    std::uint64_t total = 0;
    std::uint64_t equilateral = 0;
    std::uint64_t two_distance = 0;
    std::uint64_t other = 0;
};

/// Classifies every n-subset of F_q^d. Throws TooLarge when C(q^d, n) > 10^7.
Census brute_force_classify_all(const Field & f, std::size_t d, std::size_t n);

struct GoldenRecord {
    std::uint32_t q = 0;
    std::size_t d = 0;
    SearchMode mode = SearchMode::Equilateral;
    std::size_t max_size = 0;
};

/// FFDIST_GOLDEN_DIR when set, otherwise the compiled-in default.
std::filesystem::path golden_dir();
std::filesystem::path golden_path(const std::filesystem::path & dir, std::uint32_t q, std::size_t d, SearchMode mode);
std::optional<GoldenRecord> load_golden(const std::filesystem::path & dir, std::uint32_t q, std::size_t d,
                                        SearchMode mode);
void store_golden(const std::filesystem::path & dir, const GoldenRecord & record);

}  // namespace ffdist
