#include "netid/model.hpp"

#include "netid/error.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <utility>

namespace netid {

std::string ExternalSignal::label() const
{
    return (kind == Kind::Noise ? "e" : "r") + std::to_string(index + 1);
}

std::string node_label(std::size_t node)
{
    return "w" + std::to_string(node + 1);
}

namespace {

const char* block_name(Block b)
{
    switch (b) {
    case Block::G: return "G";
    case Block::R: return "R";
    case Block::H: return "H";
    }
    return "?";
}

std::string location(Block b, std::size_t row, std::size_t col)
{
    return std::string(block_name(b)) + "(" + std::to_string(row + 1) + "," + std::to_string(col + 1) + ")";
}

constexpr Block kBlocks[] = {Block::G, Block::R, Block::H};

} // namespace

// ---------------------------------------------------------------------------
// NetworkModelSet

NetworkModelSet NetworkModelSet::zeros(std::size_t L, std::size_t K, std::size_t p)
{
    NetworkModelSet m;
    m.L = L;
    m.K = K;
    m.p = p;
    m.G = Matrix<EntrySpec>(L, L, Zero{});
    m.R = Matrix<EntrySpec>(L, K, Zero{});
    m.H = Matrix<EntrySpec>(L, p, Zero{});
    return m;
}

Matrix<EntrySpec>& NetworkModelSet::block(Block b)
{
    return const_cast<Matrix<EntrySpec>&>(std::as_const(*this).block(b));
}

const Matrix<EntrySpec>& NetworkModelSet::block(Block b) const
{
    switch (b) {
    case Block::G: return G;
    case Block::R: return R;
    case Block::H: return H;
    }
    throw std::logic_error("bad block");
}

int NetworkModelSet::parametrize(Block b, std::size_t row, std::size_t col)
{
    const auto ids = parameter_ids();
    const int id = ids.empty() ? 1 : ids.back() + 1;
    block(b)(row, col) = Parametrized{id};
    return id;
}

void NetworkModelSet::set_known(Block b, std::size_t row, std::size_t col, TransferFunction tf)
{
    block(b)(row, col) = Known{std::move(tf)};
}

const EntrySpec& NetworkModelSet::u(std::size_t row, std::size_t c) const
{
    return c < p ? H(row, c) : R(row, c - p);
}

ExternalSignal NetworkModelSet::external(std::size_t c) const
{
    if (c < p)
        return {ExternalSignal::Kind::Noise, c};
    return {ExternalSignal::Kind::Excitation, c - p};
}

std::size_t NetworkModelSet::column_of(const ExternalSignal& s) const
{
    return s.kind == ExternalSignal::Kind::Noise ? s.index : p + s.index;
}

std::size_t NetworkModelSet::parametrized_in_row(std::size_t j) const
{
    std::size_t n = 0;
    for (auto b : kBlocks) {
        const auto& mat = block(b);
        for (std::size_t c = 0; c < mat.cols(); ++c)
            n += is_parametrized(mat(j, c)) ? 1 : 0;
    }
    return n;
}

std::vector<int> NetworkModelSet::parameter_ids() const
{
    std::vector<int> ids;
    for (auto b : kBlocks) {
        const auto& mat = block(b);
        for (std::size_t r = 0; r < mat.rows(); ++r)
            for (std::size_t c = 0; c < mat.cols(); ++c)
                if (const auto* pe = std::get_if<Parametrized>(&mat(r, c)))
                    ids.push_back(pe->id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

// ---------------------------------------------------------------------------
// ConcreteModel

TransferFunction ConcreteModel::resolve(const EntrySpec& e) const
{
    if (const auto* k = std::get_if<Known>(&e))
        return k->tf;
    if (const auto* pe = std::get_if<Parametrized>(&e)) {
        auto it = bindings.find(pe->id);
        if (it == bindings.end())
            throw InvalidInput("parameter " + std::to_string(pe->id) + " is not bound");
        return it->second;
    }
    return {};
}

Matrix<TransferFunction> ConcreteModel::g() const
{
    Matrix<TransferFunction> out(base.L, base.L);
    for (std::size_t r = 0; r < base.L; ++r)
        for (std::size_t c = 0; c < base.L; ++c)
            out(r, c) = resolve(base.G(r, c));
    return out;
}

Matrix<TransferFunction> ConcreteModel::u() const
{
    Matrix<TransferFunction> out(base.L, base.external_count());
    for (std::size_t r = 0; r < base.L; ++r)
        for (std::size_t c = 0; c < base.external_count(); ++c)
            out(r, c) = resolve(base.u(r, c));
    return out;
}

// ---------------------------------------------------------------------------
// ValidationReport

void ValidationReport::add(std::string rule, std::string location, std::string message)
{
    violations.push_back({std::move(rule), std::move(location), std::move(message)});
    passed = false;
}

void ValidationReport::warn(std::string rule, std::string location, std::string message)
{
    warnings.push_back({std::move(rule), std::move(location), std::move(message)});
}

void ValidationReport::merge(const ValidationReport& other)
{
    violations.insert(violations.end(), other.violations.begin(), other.violations.end());
    warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
    passed = violations.empty();
}

// ---------------------------------------------------------------------------
// Validation

Rational determinant(Matrix<Rational> a)
{
    const std::size_t n = a.rows();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a(pivot, col) == 0)
            ++pivot;
        if (pivot == n)
            return 0;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c)
                std::swap(a(pivot, c), a(col, c));
            det = -det;
        }
        det *= a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (a(r, col) == 0)
                continue;
            const Rational f = a(r, col) / a(col, col);
            for (std::size_t c = col; c < n; ++c)
                a(r, c) -= f * a(col, c);
        }
    }
    return det;
}

ValidationReport validate_model_set(const NetworkModelSet& m)
{
    ValidationReport rep;
    if (m.L < 1)
        rep.add(rules::kShape, "L", "a network needs at least one node");
    if (m.p > m.L)
        rep.add(rules::kNoiseRank, "p", "noise rank p = " + std::to_string(m.p) + " exceeds L = " + std::to_string(m.L));
    if (m.G.rows() != m.L || m.G.cols() != m.L || m.R.rows() != m.L || m.R.cols() != m.K
        || m.H.rows() != m.L || m.H.cols() != m.p) {
        rep.add(rules::kShape, "G/R/H", "block dimensions do not match L, K, p");
        return rep;
    }

    for (std::size_t j = 0; j < m.L; ++j)
        if (!is_zero(m.G(j, j)))
            rep.add(rules::kHollow, location(Block::G, j, j), "G must have diagonal entries 0");

    std::map<int, std::string> seen;
    for (auto b : kBlocks) {
        const auto& mat = m.block(b);
        for (std::size_t r = 0; r < mat.rows(); ++r) {
            for (std::size_t c = 0; c < mat.cols(); ++c) {
                const auto& e = mat(r, c);
                const std::string loc = location(b, r, c);
                if (const auto* pe = std::get_if<Parametrized>(&e)) {
                    auto [it, fresh] = seen.emplace(pe->id, loc);
                    if (!fresh)
                        rep.add(rules::kIndependent, loc,
                            "parameter " + std::to_string(pe->id) + " already used at " + it->second);
                } else if (const auto* k = std::get_if<Known>(&e)) {
                    if (!k->tf.is_proper())
                        rep.add(rules::kProper, loc, "known transfer function is not proper");
                    else if (b == Block::G && m.strictly_proper && !k->tf.is_strictly_proper())
                        rep.add(rules::kStrictlyProper, loc,
                            "model set declares strictly proper modules but this entry has feedthrough");
                }
            }
        }
    }

    // [I_p 0] H must be monic. Only fixed entries can violate it structurally.
    for (std::size_t r = 0; r < std::min(m.p, m.L); ++r) {
        for (std::size_t c = 0; c < m.p; ++c) {
            const auto& e = m.H(r, c);
            const std::string loc = location(Block::H, r, c);
            if (r == c && is_zero(e)) {
                rep.add(rules::kMonicH, loc, "diagonal of [I_p 0]H must have feedthrough 1");
            } else if (const auto* k = std::get_if<Known>(&e); k && k->tf.is_proper()) {
                const Rational want = r == c ? 1 : 0;
                if (k->tf.feedthrough() != want)
                    rep.add(rules::kMonicH, loc, "[I_p 0]H(inf) must equal I_p");
            }
        }
    }
    return rep;
}

ValidationReport validate_concrete_model(const ConcreteModel& c)
{
    const NetworkModelSet& m = c.base;
    ValidationReport rep = validate_model_set(m);
    if (!rep.passed)
        return rep;

    bool all_proper = true;
    std::set<int> ids;
    for (auto b : kBlocks) {
        const auto& mat = m.block(b);
        for (std::size_t r = 0; r < mat.rows(); ++r) {
            for (std::size_t col = 0; col < mat.cols(); ++col) {
                const auto* pe = std::get_if<Parametrized>(&mat(r, col));
                if (!pe)
                    continue;
                ids.insert(pe->id);
                const std::string loc = location(b, r, col);
                auto it = c.bindings.find(pe->id);
                if (it == c.bindings.end()) {
                    rep.add(rules::kBound, loc, "parameter " + std::to_string(pe->id) + " has no binding");
                    all_proper = false;
                    continue;
                }
                if (!it->second.is_proper()) {
                    rep.add(rules::kProper, loc, "bound transfer function is not proper");
                    all_proper = false;
                } else if (b == Block::G && m.strictly_proper && !it->second.is_strictly_proper()) {
                    rep.add(rules::kStrictlyProper, loc, "bound module is not strictly proper");
                }
            }
        }
    }
    for (const auto& [id, tf] : c.bindings)
        if (!ids.contains(id))
            rep.add(rules::kBound, "bindings", "binding for unknown parameter " + std::to_string(id));

    if (c.lambda) {
        const auto& lam = *c.lambda;
        if (lam.rows() != m.p || lam.cols() != m.p) {
            rep.add(rules::kShape, "lambda", "lambda must be p x p");
        } else {
            bool symmetric = true;
            bool diagonal = true;
            for (std::size_t r = 0; r < m.p; ++r)
                for (std::size_t k = 0; k < m.p; ++k) {
                    symmetric = symmetric && lam(r, k) == lam(k, r);
                    diagonal = diagonal && (r == k || lam(r, k) == 0);
                }
            if (!symmetric)
                rep.add(rules::kLambdaPd, "lambda", "lambda is not symmetric");
            for (std::size_t n = 1; n <= m.p && symmetric; ++n) {
                std::vector<std::size_t> lead(n);
                for (std::size_t i = 0; i < n; ++i)
                    lead[i] = i;
                if (determinant(lam.select(lead, lead)) <= 0) {
                    rep.add(rules::kLambdaPd, "lambda", "leading principal minor of order " + std::to_string(n) + " is not positive");
                    break;
                }
            }
            if (m.lambda_diagonal && !diagonal)
                rep.add(rules::kLambdaDiagonal, "lambda", "model set declares a diagonal lambda");
        }
    }

    if (!all_proper)
        return rep;

    // Values at z = infinity.
    Matrix<Rational> ig(m.L, m.L);
    for (std::size_t r = 0; r < m.L; ++r)
        for (std::size_t k = 0; k < m.L; ++k)
            ig(r, k) = (r == k ? Rational(1) : Rational(0)) - c.resolve(m.G(r, k)).feedthrough();
    if (determinant(ig) == 0) {
        rep.add(rules::kWellPosed, "G", "I - G(inf) is singular");
    } else if (m.L <= 12) {
        // Principal minors of (I - G(inf))^-1: det of the principal submatrix
        // of the inverse is det of the complementary principal submatrix of
        // I - G(inf) divided by det(I - G(inf)).
        for (std::uint32_t mask = 1; mask < (1u << m.L); ++mask) {
            std::vector<std::size_t> rest;
            for (std::size_t i = 0; i < m.L; ++i)
                if (!(mask & (1u << i)))
                    rest.push_back(i);
            if (!rest.empty() && determinant(ig.select(rest, rest)) == 0) {
                rep.warn(rules::kPrincipalMinors, "G",
                    "a principal minor of (I - G(inf))^-1 vanishes");
                break;
            }
        }
    }

    for (std::size_t r = 0; r < m.p; ++r) {
        for (std::size_t k = 0; k < m.p; ++k) {
            if (!is_parametrized(m.H(r, k)))
                continue; // fixed entries are checked structurally
            const Rational want = r == k ? 1 : 0;
            if (c.resolve(m.H(r, k)).feedthrough() != want)
                rep.add(rules::kMonicH, location(Block::H, r, k), "[I_p 0]H(inf) must equal I_p");
        }
    }
    return rep;
}

std::vector<std::vector<std::size_t>> detect_algebraic_loops(const ConcreteModel& c)
{
    const NetworkModelSet& m = c.base;
    // Edge l -> j carries G(j, l); keep only edges with direct feedthrough.
    std::vector<std::vector<std::size_t>> out(m.L);
    for (std::size_t j = 0; j < m.L; ++j)
        for (std::size_t l = 0; l < m.L; ++l)
            if (j != l && !is_zero(m.G(j, l)) && c.resolve(m.G(j, l)).feedthrough() != 0)
                out[l].push_back(j);

    // Elementary cycles, each reported once from its smallest node.
    std::vector<std::vector<std::size_t>> cycles;
    std::vector<std::size_t> stack;
    std::vector<bool> on_stack(m.L, false);
    std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t start, std::size_t v) {
        for (std::size_t w : out[v]) {
            if (w == start) {
                auto cyc = stack;
                cyc.push_back(start);
                cycles.push_back(std::move(cyc));
            } else if (w > start && !on_stack[w]) {
                on_stack[w] = true;
                stack.push_back(w);
                dfs(start, w);
                stack.pop_back();
                on_stack[w] = false;
            }
        }
    };
    for (std::size_t s = 0; s < m.L; ++s) {
        stack = {s};
        on_stack[s] = true;
        dfs(s, s);
        on_stack[s] = false;
    }
    return cycles;
}

ValidationReport check_prop1_conditions(const NetworkModelSet& m, const ConcreteModel* c)
{
    ValidationReport rep;
    if (m.strictly_proper)
        return rep;
    if (c == nullptr)
        throw MissingConcreteModel("modules are not declared strictly proper; algebraic loop detection needs a concrete model");
    for (const auto& cyc : detect_algebraic_loops(*c)) {
        std::string path;
        for (std::size_t i = 0; i < cyc.size(); ++i)
            path += (i ? "->" : "") + node_label(cyc[i]);
        rep.add(rules::kNoAlgebraicLoops, path, "cycle with nonzero feedthrough product");
    }
    if (!m.lambda_diagonal)
        rep.add(rules::kLambdaDiagonal, "lambda",
            "modules with feedthrough require a diagonal noise covariance");
    return rep;
}

// ---------------------------------------------------------------------------
// Random instantiation

namespace {

// Uniform draw from [-B, B] \ {0}; mt19937_64 output is fixed by the
// standard, so the mapping below keeps results identical across platforms.
Rational draw_nonzero(std::mt19937_64& rng)
{
    const auto span = static_cast<std::uint64_t>(2 * kSampleBound);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    const auto k = static_cast<std::int64_t>(v % span);
    return Rational(k < kSampleBound ? k - kSampleBound : k - kSampleBound + 1);
}

TransferFunction random_tf(std::mt19937_64& rng, int order, bool monic)
{
    const auto n = static_cast<std::size_t>(order);
    std::vector<Rational> den(n + 1);
    den[0] = 1;
    for (std::size_t i = 1; i <= n; ++i)
        den[i] = draw_nonzero(rng);
    std::vector<Rational> num;
    if (monic) {
        num.assign(n + 1, Rational(0));
        num[0] = 1;
        for (std::size_t i = 1; i <= n; ++i)
            num[i] = draw_nonzero(rng);
    } else {
        num.resize(n);
        for (auto& v : num)
            v = draw_nonzero(rng);
    }
    return TransferFunction(Polynomial(std::move(num)), Polynomial(std::move(den)));
}

} // namespace

ConcreteModel random_instantiate(const NetworkModelSet& m, std::uint64_t seed, int order)
{
    if (order < 1)
        throw InvalidInput("instantiation order must be at least 1");
    if (const auto rep = validate_model_set(m); !rep.passed)
        throw InvalidInput("cannot instantiate an invalid model set: " + rep.violations.front().rule);

    // id -> whether the entry sits on the diagonal of [I_p 0]H.
    std::map<int, bool> needs_monic;
    for (auto b : kBlocks) {
        const auto& mat = m.block(b);
        for (std::size_t r = 0; r < mat.rows(); ++r)
            for (std::size_t col = 0; col < mat.cols(); ++col)
                if (const auto* pe = std::get_if<Parametrized>(&mat(r, col)))
                    needs_monic[pe->id] = b == Block::H && r == col && r < m.p;
    }

    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < kInstantiationRetries; ++attempt) {
        ConcreteModel c{m, {}, std::nullopt};
        for (const auto& [id, monic] : needs_monic)
            c.bindings.emplace(id, random_tf(rng, order, monic));
        if (validate_concrete_model(c).passed)
            return c;
    }
    throw InstantiationFailed("no well-posed instantiation found after " + std::to_string(kInstantiationRetries) + " attempts");
}

} // namespace netid
