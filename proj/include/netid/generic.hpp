#ifndef NETID_GENERIC_HPP
#define NETID_GENERIC_HPP

// Generic identifiability: vertex-disjoint paths on the structure graph, with
// a randomized generic-rank oracle for cross-checking.

#include "netid/model.hpp"
#include "netid/transfer.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace netid {

/// Directed graph of a model set. Vertex ids: nodes w_i are 0..L-1, then
/// noise inputs e_l, then excitations r_k. Edge u -> v exists iff the entry
/// of G, H or R carrying u into v is not Zero.
class StructureGraph {
public:
    StructureGraph(std::size_t L, std::size_t p, std::size_t K);

    std::size_t vertex_count() const noexcept { return out_.size(); }
    std::size_t node(std::size_t i) const noexcept { return i; }
    std::size_t external(const ExternalSignal& s) const noexcept;
    bool is_external(std::size_t v) const noexcept { return v >= L_; }
    std::string label(std::size_t v) const;

    void add_edge(std::size_t from, std::size_t to);
    bool has_edge(std::size_t from, std::size_t to) const;
    const std::vector<std::size_t>& successors(std::size_t v) const { return out_[v]; }
    std::size_t edge_count() const;

private:
    std::size_t L_, p_, K_;
    std::vector<std::vector<std::size_t>> out_;
};

StructureGraph build_graph(const NetworkModelSet& m);

/// Paths as vertex sequences, each from a source to a target.
struct PathSet {
    std::vector<std::vector<std::size_t>> paths;
};

struct DisjointPaths {
    std::size_t count = 0;
    PathSet witness;
};

/// Maximum family of pairwise vertex-disjoint paths (endpoints included)
/// from sources to targets: unit node capacities after vertex splitting and
/// integral max-flow.
DisjointPaths max_disjoint_paths(const StructureGraph& g,
    std::span<const std::size_t> sources,
    std::span<const std::size_t> targets);

struct PathRowVerdict {
    std::size_t row = 0;
    bool identifiable = false;
    std::size_t parametrized_count = 0;
    std::size_t count_limit = 0;
    bool count_ok = false;
    TcheckSpec spec;
    DisjointPaths paths;
};

struct PathModuleVerdict {
    std::size_t row = 0;
    std::size_t col = 0;
    bool identifiable = false;
    TcheckSpec spec;
    DisjointPaths full;    // U_j to Y_j
    DisjointPaths reduced; // U_j to Y_j without w_col
};

struct PathFullVerdict {
    bool identifiable = true;
    std::vector<PathRowVerdict> rows;
};

// These refuse model sets whose modules are not declared strictly proper
// (PreconditionFailed). Indices are 0-based.

PathRowVerdict check_row_generic(const NetworkModelSet& m, std::size_t j);
PathModuleVerdict check_module_generic(const NetworkModelSet& m, std::size_t j, std::size_t i);
PathFullVerdict check_full_generic(const NetworkModelSet& m);

inline constexpr int kDefaultTrials = 3;
inline constexpr std::int64_t kPointLow = 1'000'000;
inline constexpr std::int64_t kPointHigh = 2'000'000;

/// Generic rank of T restricted to (rows, cols), estimated as the maximum
/// over trials of the exact rank at a random parameter point and a random
/// evaluation point z0.
std::size_t randomized_generic_rank(const NetworkModelSet& m,
    std::span<const std::size_t> rows,
    std::span<const ExternalSignal> cols,
    int trials = kDefaultTrials,
    std::uint64_t seed = 1);

} // namespace netid

#endif
