#include "netid/generic.hpp"

#include "netid/error.hpp"
#include "netid/linalg.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <random>

namespace netid {

// ---------------------------------------------------------------------------
// StructureGraph

StructureGraph::StructureGraph(std::size_t L, std::size_t p, std::size_t K)
    : L_(L), p_(p), K_(K), out_(L + p + K)
{
}

std::size_t StructureGraph::external(const ExternalSignal& s) const noexcept
{
    return L_ + (s.kind == ExternalSignal::Kind::Noise ? s.index : p_ + s.index);
}

std::string StructureGraph::label(std::size_t v) const
{
    if (v < L_)
        return node_label(v);
    if (v < L_ + p_)
        return ExternalSignal{ExternalSignal::Kind::Noise, v - L_}.label();
    return ExternalSignal{ExternalSignal::Kind::Excitation, v - L_ - p_}.label();
}

void StructureGraph::add_edge(std::size_t from, std::size_t to)
{
    auto& succ = out_[from];
    auto it = std::lower_bound(succ.begin(), succ.end(), to);
    if (it == succ.end() || *it != to)
        succ.insert(it, to);
}

bool StructureGraph::has_edge(std::size_t from, std::size_t to) const
{
    return from < out_.size() && std::binary_search(out_[from].begin(), out_[from].end(), to);
}

std::size_t StructureGraph::edge_count() const
{
    std::size_t n = 0;
    for (const auto& s : out_)
        n += s.size();
    return n;
}

StructureGraph build_graph(const NetworkModelSet& m)
{
    StructureGraph g(m.L, m.p, m.K);
    for (std::size_t j = 0; j < m.L; ++j) {
        for (std::size_t i = 0; i < m.L; ++i)
            if (i != j && !is_zero(m.G(j, i)))
                g.add_edge(g.node(i), g.node(j));
        for (std::size_t c = 0; c < m.external_count(); ++c)
            if (!is_zero(m.u(j, c)))
                g.add_edge(g.external(m.external(c)), g.node(j));
    }
    return g;
}

// ---------------------------------------------------------------------------
// Max-flow (Dinic) on the split graph

namespace {

class UnitFlow {
public:
    explicit UnitFlow(std::size_t n) : adj_(n) {}

    void add(std::size_t from, std::size_t to)
    {
        adj_[from].push_back({to, 1, adj_[to].size(), true});
        adj_[to].push_back({from, 0, adj_[from].size() - 1, false});
    }

    std::size_t run(std::size_t s, std::size_t t)
    {
        std::size_t flow = 0;
        while (bfs(s, t)) {
            it_.assign(adj_.size(), 0);
            while (dfs(s, t))
                ++flow;
        }
        return flow;
    }

    struct Arc {
        std::size_t to;
        int cap;
        std::size_t rev;
        bool forward;
    };
    std::vector<std::vector<Arc>>& arcs() { return adj_; }

private:
    bool bfs(std::size_t s, std::size_t t)
    {
        level_.assign(adj_.size(), -1);
        std::queue<std::size_t> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            const std::size_t v = q.front();
            q.pop();
            for (const auto& a : adj_[v])
                if (a.cap > 0 && level_[a.to] < 0) {
                    level_[a.to] = level_[v] + 1;
                    q.push(a.to);
                }
        }
        return level_[t] >= 0;
    }

    bool dfs(std::size_t v, std::size_t t)
    {
        if (v == t)
            return true;
        for (; it_[v] < adj_[v].size(); ++it_[v]) {
            auto& a = adj_[v][it_[v]];
            if (a.cap > 0 && level_[a.to] == level_[v] + 1 && dfs(a.to, t)) {
                a.cap -= 1;
                adj_[a.to][a.rev].cap += 1;
                return true;
            }
        }
        return false;
    }

    std::vector<std::vector<Arc>> adj_;
    std::vector<int> level_;
    std::vector<std::size_t> it_;
};

std::vector<std::size_t> unique_sorted(std::span<const std::size_t> xs)
{
    std::vector<std::size_t> v(xs.begin(), xs.end());
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace

DisjointPaths max_disjoint_paths(const StructureGraph& g,
    std::span<const std::size_t> sources,
    std::span<const std::size_t> targets)
{
    const auto src = unique_sorted(sources);
    const auto tgt = unique_sorted(targets);
    for (auto s : src)
        if (s >= g.vertex_count() || !g.is_external(s))
            throw InvalidInput("path source must be an external signal");
    for (auto t : tgt)
        if (t >= g.vertex_count() || g.is_external(t))
            throw InvalidInput("path target must be a node");

    DisjointPaths out;
    if (src.empty() || tgt.empty())
        return out;

    // v_in = 2v, v_out = 2v + 1.
    const std::size_t n = g.vertex_count();
    const std::size_t S = 2 * n;
    const std::size_t T = 2 * n + 1;
    UnitFlow flow(2 * n + 2);
    for (std::size_t v = 0; v < n; ++v) {
        flow.add(2 * v, 2 * v + 1);
        for (auto w : g.successors(v))
            flow.add(2 * v + 1, 2 * w);
    }
    for (auto s : src)
        flow.add(S, 2 * s);
    for (auto t : tgt)
        flow.add(2 * t + 1, T);
    out.count = flow.run(S, T);

    // Each vertex carries at most one unit, so following saturated forward
    // arcs from the super-source traces each path without ambiguity.
    auto& arcs = flow.arcs();
    auto next_saturated = [&](std::size_t v) -> std::size_t {
        for (auto& a : arcs[v])
            if (a.forward && a.cap == 0) {
                a.cap = -1; // consumed
                return a.to;
            }
        return std::numeric_limits<std::size_t>::max();
    };
    for (std::size_t k = 0; k < out.count; ++k) {
        std::vector<std::size_t> path;
        std::size_t v = next_saturated(S);
        while (v != T) {
            path.push_back(v / 2);
            v = next_saturated(next_saturated(v)); // v_in -> v_out -> next
        }
        out.witness.paths.push_back(std::move(path));
    }
    std::sort(out.witness.paths.begin(), out.witness.paths.end());
    return out;
}

// ---------------------------------------------------------------------------
// Path-based checks

namespace {

void require_generic(const NetworkModelSet& m)
{
    if (const auto rep = validate_model_set(m); !rep.passed) {
        const auto& v = rep.violations.front();
        throw InvalidInput("invalid model set: " + v.rule + " at " + v.location + ": " + v.message);
    }
    if (!m.strictly_proper)
        throw PreconditionFailed("the path-based engine requires strictly proper modules");
}

std::vector<std::size_t> source_vertices(const StructureGraph& g, const TcheckSpec& s)
{
    std::vector<std::size_t> v;
    for (const auto& sig : s.u)
        v.push_back(g.external(sig));
    return v;
}

PathRowVerdict row_generic(const NetworkModelSet& m, const StructureGraph& g, std::size_t j)
{
    PathRowVerdict v;
    v.row = j;
    v.spec = tcheck_spec(m, j);
    v.parametrized_count = m.parametrized_in_row(j);
    v.count_limit = m.K + m.p;
    v.count_ok = v.parametrized_count <= v.count_limit;
    v.paths = max_disjoint_paths(g, source_vertices(g, v.spec), v.spec.y);
    v.identifiable = v.count_ok && v.paths.count == v.spec.alpha;
    return v;
}

} // namespace

PathRowVerdict check_row_generic(const NetworkModelSet& m, std::size_t j)
{
    require_generic(m);
    if (j >= m.L)
        throw InvalidInput("row " + std::to_string(j + 1) + " out of range");
    return row_generic(m, build_graph(m), j);
}

PathModuleVerdict check_module_generic(const NetworkModelSet& m, std::size_t j, std::size_t i)
{
    require_generic(m);
    if (j >= m.L || i >= m.L)
        throw InvalidInput("module index out of range");
    if (!is_parametrized(m.G(j, i)))
        throw NotParametrized("G(" + std::to_string(j + 1) + "," + std::to_string(i + 1) + ") is not parametrized");

    const auto g = build_graph(m);
    PathModuleVerdict v;
    v.row = j;
    v.col = i;
    v.spec = tcheck_spec(m, j);
    const auto sources = source_vertices(g, v.spec);
    std::vector<std::size_t> reduced_targets;
    for (auto y : v.spec.y)
        if (y != i)
            reduced_targets.push_back(y);
    v.full = max_disjoint_paths(g, sources, v.spec.y);
    v.reduced = max_disjoint_paths(g, sources, reduced_targets);
    v.identifiable = v.full.count == v.reduced.count + 1;
    return v;
}

PathFullVerdict check_full_generic(const NetworkModelSet& m)
{
    require_generic(m);
    const auto g = build_graph(m);
    PathFullVerdict out;
    for (std::size_t j = 0; j < m.L; ++j) {
        out.rows.push_back(row_generic(m, g, j));
        out.identifiable = out.identifiable && out.rows.back().identifiable;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Randomized oracle

std::size_t randomized_generic_rank(const NetworkModelSet& m,
    std::span<const std::size_t> rows,
    std::span<const ExternalSignal> cols,
    int trials,
    std::uint64_t seed)
{
    require_generic(m);
    if (trials < 1)
        throw InvalidInput("trials must be at least 1");
    for (auto r : rows)
        if (r >= m.L)
            throw InvalidInput("row index out of range");
    std::vector<std::size_t> col_idx;
    for (const auto& s : cols) {
        const std::size_t c = m.column_of(s);
        if (c >= m.external_count() || (s.kind == ExternalSignal::Kind::Noise ? s.index >= m.p : s.index >= m.K))
            throw InvalidInput("external signal " + s.label() + " does not exist");
        col_idx.push_back(c);
    }
    if (rows.empty() || cols.empty())
        return 0;

    constexpr int kPointAttempts = 64;
    std::size_t best = 0;
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(t);
        const ConcreteModel c = random_instantiate(m, trial_seed, 1);
        const auto g = c.g();
        std::vector<std::size_t> all_rows(m.L);
        for (std::size_t r = 0; r < m.L; ++r)
            all_rows[r] = r;
        const auto u_cols = c.u().select(all_rows, col_idx);

        std::mt19937_64 rng(trial_seed ^ 0x9e3779b97f4a7c15ULL);
        const auto width = static_cast<std::uint64_t>(kPointHigh - kPointLow + 1);
        bool done = false;
        for (int attempt = 0; attempt < kPointAttempts && !done; ++attempt) {
            const Rational z0(static_cast<long>(kPointLow + static_cast<std::int64_t>(rng() % width)));
            try {
                Matrix<Rational> a = evaluate(g, z0);
                for (std::size_t r = 0; r < m.L; ++r)
                    for (std::size_t k = 0; k < m.L; ++k)
                        a(r, k) = (r == k ? Rational(1) : Rational(0)) - a(r, k);
                auto x = solve(std::move(a), evaluate(u_cols, z0));
                if (!x)
                    continue;
                std::vector<std::size_t> all_cols(col_idx.size());
                for (std::size_t k = 0; k < all_cols.size(); ++k)
                    all_cols[k] = k;
                best = std::max(best, rank_rational(x->select(rows, all_cols)).rank);
                done = true;
            } catch (const PoleAtPoint&) {
            }
        }
        if (!done)
            throw InstantiationFailed("no pole-free evaluation point found");
    }
    return best;
}

} // namespace netid
