#ifndef NETID_TESTS_SUPPORT_HPP
#define NETID_TESTS_SUPPORT_HPP

// Test-only helpers: the example networks, random model sets, and oracles
// that do not share code with the engines they check.

#include "netid/generic.hpp"
#include "netid/model.hpp"

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace netid::testing {

/// Polynomial from descending coefficients.
inline Polynomial poly(std::initializer_list<Rational> c)
{
    return Polynomial(std::vector<Rational>(c));
}

/// Four nodes, two excitations r1 -> w1, r2 -> w2; parametrized G32, G41,
/// G42, G43 (ids 1..4 in that order).
NetworkModelSet example1();

/// Two-node closed loop driven by e1 at w1; parametrized G12 (id 1) and
/// G21 (id 2).
NetworkModelSet loop_example();

/// Binding for a known-nonzero constant-gain module a / z.
TransferFunction gain_over_z(long a);

struct RandomSetOptions {
    std::size_t max_L = 6;
    std::size_t max_K = 3;
    std::size_t max_p = 2;
    double density = 0.3;
    double param_fraction = 0.7;
};

/// Random strictly proper model set that passes validate_model_set. Known
/// entries get generic random values.
NetworkModelSet random_model_set(std::mt19937_64& rng, const RandomSetOptions& opt = {});

/// Enumerates every simple path and searches all pairwise-disjoint families.
std::size_t brute_force_disjoint_paths(const StructureGraph& g,
    std::span<const std::size_t> sources,
    std::span<const std::size_t> targets);

/// Empty string when ps is a valid disjoint family from sources to targets,
/// otherwise a description of the first problem found.
std::string check_path_set(const StructureGraph& g, const PathSet& ps,
    std::span<const std::size_t> sources,
    std::span<const std::size_t> targets);

/// Random nonempty-or-empty subset of 0..n-1.
std::vector<std::size_t> random_subset(std::mt19937_64& rng, std::size_t n);

std::string fixture_path(const std::string& name);

} // namespace netid::testing

#endif
