#include "support.hpp"

#include <algorithm>
#include <functional>
#include <set>

#ifndef NETID_FIXTURE_DIR
#error "NETID_FIXTURE_DIR must be defined"
#endif

namespace netid::testing {

NetworkModelSet example1()
{
    auto m = NetworkModelSet::zeros(4, 2, 0);
    m.strictly_proper = true;
    m.parametrize(Block::G, 2, 1);
    m.parametrize(Block::G, 3, 0);
    m.parametrize(Block::G, 3, 1);
    m.parametrize(Block::G, 3, 2);
    m.set_known(Block::R, 0, 0, 1);
    m.set_known(Block::R, 1, 1, 1);
    return m;
}

NetworkModelSet loop_example()
{
    auto m = NetworkModelSet::zeros(2, 0, 1);
    m.strictly_proper = true;
    m.lambda_diagonal = true;
    m.parametrize(Block::G, 0, 1);
    m.parametrize(Block::G, 1, 0);
    m.set_known(Block::H, 0, 0, 1);
    return m;
}

TransferFunction gain_over_z(long a)
{
    return TransferFunction(Polynomial(a), Polynomial::monomial(1));
}

namespace {

long draw(std::mt19937_64& rng, long lo, long hi)
{
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

long draw_nonzero(std::mt19937_64& rng)
{
    long v = 0;
    while (v == 0)
        v = draw(rng, -9, 9);
    return v;
}

TransferFunction random_strict(std::mt19937_64& rng)
{
    return TransferFunction(Polynomial(draw_nonzero(rng)), poly({1, draw_nonzero(rng)}));
}

TransferFunction random_proper(std::mt19937_64& rng)
{
    if (draw(rng, 0, 1) == 0)
        return TransferFunction(draw_nonzero(rng));
    return TransferFunction(poly({draw_nonzero(rng), draw_nonzero(rng)}), poly({1, draw_nonzero(rng)}));
}

TransferFunction random_monic(std::mt19937_64& rng)
{
    return TransferFunction(poly({1, draw_nonzero(rng)}), poly({1, draw_nonzero(rng)}));
}

} // namespace

NetworkModelSet random_model_set(std::mt19937_64& rng, const RandomSetOptions& opt)
{
    const auto L = static_cast<std::size_t>(draw(rng, 1, static_cast<long>(opt.max_L)));
    const auto K = static_cast<std::size_t>(draw(rng, 0, static_cast<long>(opt.max_K)));
    const auto p = static_cast<std::size_t>(draw(rng, 0, static_cast<long>(std::min(opt.max_p, L))));
    auto m = NetworkModelSet::zeros(L, K, p);
    m.strictly_proper = true;

    std::bernoulli_distribution present(opt.density);
    std::bernoulli_distribution param(opt.param_fraction);
    int next_id = 1;
    auto fill = [&](Block b, std::size_t r, std::size_t c, TransferFunction known) {
        if (param(rng))
            m.block(b)(r, c) = Parametrized{next_id++};
        else
            m.block(b)(r, c) = Known{std::move(known)};
    };

    for (std::size_t j = 0; j < L; ++j)
        for (std::size_t i = 0; i < L; ++i)
            if (i != j && present(rng))
                fill(Block::G, j, i, random_strict(rng));
    for (std::size_t j = 0; j < L; ++j)
        for (std::size_t k = 0; k < K; ++k)
            if (present(rng))
                fill(Block::R, j, k, random_proper(rng));
    for (std::size_t j = 0; j < L; ++j)
        for (std::size_t l = 0; l < p; ++l) {
            if (j == l)
                fill(Block::H, j, l, random_monic(rng)); // [I_p 0]H must be monic
            else if (present(rng))
                fill(Block::H, j, l, j < p ? random_strict(rng) : random_proper(rng));
        }
    return m;
}

std::size_t brute_force_disjoint_paths(const StructureGraph& g,
    std::span<const std::size_t> sources,
    std::span<const std::size_t> targets)
{
    const std::set<std::size_t> target_set(targets.begin(), targets.end());
    const std::set<std::size_t> source_set(sources.begin(), sources.end());

    // Vertex sets of all simple paths, grouped by their source.
    std::vector<std::vector<std::uint64_t>> by_source;
    for (auto s : source_set) {
        std::vector<std::uint64_t> found;
        std::function<void(std::size_t, std::uint64_t)> walk = [&](std::size_t v, std::uint64_t used) {
            if (target_set.contains(v))
                found.push_back(used);
            for (std::size_t w = 0; w < g.vertex_count(); ++w)
                if (g.has_edge(v, w) && !(used & (1ULL << w)))
                    walk(w, used | (1ULL << w));
        };
        walk(s, 1ULL << s);
        by_source.push_back(std::move(found));
    }

    std::size_t best = 0;
    std::function<void(std::size_t, std::uint64_t, std::size_t)> search =
        [&](std::size_t idx, std::uint64_t used, std::size_t count) {
            if (count + (by_source.size() - idx) <= best)
                return;
            if (idx == by_source.size()) {
                best = count;
                return;
            }
            for (auto mask : by_source[idx])
                if (!(mask & used))
                    search(idx + 1, used | mask, count + 1);
            search(idx + 1, used, count);
        };
    search(0, 0, 0);
    return best;
}

std::string check_path_set(const StructureGraph& g, const PathSet& ps,
    std::span<const std::size_t> sources,
    std::span<const std::size_t> targets)
{
    const std::set<std::size_t> src(sources.begin(), sources.end());
    const std::set<std::size_t> tgt(targets.begin(), targets.end());
    std::set<std::size_t> seen;
    for (const auto& path : ps.paths) {
        if (path.empty())
            return "empty path";
        if (!src.contains(path.front()))
            return "path starts at " + g.label(path.front()) + ", not a source";
        if (!tgt.contains(path.back()))
            return "path ends at " + g.label(path.back()) + ", not a target";
        for (std::size_t k = 0; k < path.size(); ++k) {
            if (!seen.insert(path[k]).second)
                return "vertex " + g.label(path[k]) + " used twice";
            if (k + 1 < path.size() && !g.has_edge(path[k], path[k + 1]))
                return "missing edge " + g.label(path[k]) + " -> " + g.label(path[k + 1]);
        }
    }
    return {};
}

std::vector<std::size_t> random_subset(std::mt19937_64& rng, std::size_t n)
{
    std::vector<std::size_t> out;
    std::bernoulli_distribution coin(0.5);
    for (std::size_t i = 0; i < n; ++i)
        if (coin(rng))
            out.push_back(i);
    return out;
}

std::string fixture_path(const std::string& name)
{
    return std::string(NETID_FIXTURE_DIR) + "/" + name;
}

} // namespace netid::testing
