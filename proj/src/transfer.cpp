#include "netid/transfer.hpp"

#include "netid/error.hpp"
#include "netid/linalg.hpp"

#include <algorithm>

namespace netid {

std::size_t TransferMatrix::column_of(const ExternalSignal& s) const
{
    auto it = std::find(columns.begin(), columns.end(), s);
    if (it == columns.end())
        throw InvalidInput("signal " + s.label() + " is not a column of T");
    return static_cast<std::size_t>(it - columns.begin());
}

namespace {

Matrix<TransferFunction> i_minus_g(const ConcreteModel& c)
{
    Matrix<TransferFunction> a = c.g();
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k)
            a(r, k) = (r == k ? TransferFunction(1) : TransferFunction()) - a(r, k);
    return a;
}

void check_row_index(const NetworkModelSet& m, std::size_t j)
{
    if (j >= m.L)
        throw InvalidInput("row " + std::to_string(j + 1) + " out of range 1.." + std::to_string(m.L));
}

} // namespace

TransferMatrix compute_transfer(const ConcreteModel& c)
{
    TransferMatrix t;
    for (std::size_t col = 0; col < c.base.external_count(); ++col)
        t.columns.push_back(c.base.external(col));
    auto x = solve(i_minus_g(c), c.u());
    if (!x)
        throw SingularStructure("I - G is singular as a rational-function matrix");
    t.entries = std::move(*x);
    return t;
}

Matrix<TransferFunction> network_residual(const ConcreteModel& c, const TransferMatrix& t)
{
    const auto a = i_minus_g(c);
    const auto u = c.u();
    Matrix<TransferFunction> out(u.rows(), u.cols());
    for (std::size_t r = 0; r < u.rows(); ++r)
        for (std::size_t col = 0; col < u.cols(); ++col) {
            TransferFunction acc;
            for (std::size_t k = 0; k < a.cols(); ++k)
                acc += a(r, k) * t.entries(k, col);
            out(r, col) = acc - u(r, col);
        }
    return out;
}

std::size_t TcheckSpec::position_of(std::size_t node) const
{
    auto it = std::find(y.begin(), y.end(), node);
    if (it == y.end())
        throw NotParametrized("G(" + std::to_string(row + 1) + "," + std::to_string(node + 1) + ") is not parametrized");
    return static_cast<std::size_t>(it - y.begin());
}

TcheckSpec tcheck_spec(const NetworkModelSet& m, std::size_t j)
{
    check_row_index(m, j);
    TcheckSpec s;
    s.row = j;
    for (std::size_t k = 0; k < m.L; ++k)
        if (is_parametrized(m.G(j, k)))
            s.y.push_back(k);
    for (std::size_t col = 0; col < m.external_count(); ++col) {
        if (is_parametrized(m.u(j, col)))
            ++s.beta;
        else
            s.u.push_back(m.external(col));
    }
    s.alpha = s.y.size();
    return s;
}

Matrix<TransferFunction> extract_tcheck(const TransferMatrix& t, const TcheckSpec& s)
{
    std::vector<std::size_t> cols;
    cols.reserve(s.u.size());
    for (const auto& sig : s.u)
        cols.push_back(t.column_of(sig));
    return t.entries.select(s.y, cols);
}

RankResult rank_symbolic(const Matrix<TransferFunction>& m)
{
    auto rr = row_rank(m);
    return {rr.rank, RankMethod::Symbolic, std::move(rr.independent_rows)};
}

RankResult rank_rational(const Matrix<Rational>& m)
{
    auto rr = row_rank(m);
    return {rr.rank, RankMethod::Randomized, std::move(rr.independent_rows)};
}

Matrix<Rational> evaluate(const Matrix<TransferFunction>& m, const Rational& z0)
{
    Matrix<Rational> out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out(r, c) = m(r, c).eval(z0);
    return out;
}

void require_analyzable(const ConcreteModel& c)
{
    const auto rep = validate_concrete_model(c);
    if (!rep.passed) {
        const auto& v = rep.violations.front();
        throw InvalidInput("invalid concrete model: " + v.rule + " at " + v.location + ": " + v.message);
    }
    const auto gate = check_prop1_conditions(c.base, &c);
    if (!gate.passed) {
        const auto& v = gate.violations.front();
        throw PreconditionFailed(v.rule + " (" + v.location + "): " + v.message);
    }
}

RowVerdict check_row_at(const ConcreteModel& c, const TransferMatrix& t, std::size_t j)
{
    const NetworkModelSet& m = c.base;
    RowVerdict v;
    v.row = j;
    v.spec = tcheck_spec(m, j);
    v.parametrized_count = m.parametrized_in_row(j);
    v.count_limit = m.K + m.p;
    v.count_ok = v.parametrized_count <= v.count_limit;
    v.tcheck = extract_tcheck(t, v.spec);
    v.rank = rank_symbolic(v.tcheck);
    v.identifiable = v.count_ok && v.rank.rank == v.spec.alpha;
    return v;
}

RowVerdict check_row_at(const ConcreteModel& c, std::size_t j)
{
    check_row_index(c.base, j);
    require_analyzable(c);
    return check_row_at(c, compute_transfer(c), j);
}

ModuleVerdict check_module_at(const ConcreteModel& c, const TransferMatrix& t, std::size_t j, std::size_t i)
{
    ModuleVerdict v;
    v.row = j;
    v.col = i;
    v.spec = tcheck_spec(c.base, j);
    const std::size_t pos = v.spec.position_of(i);
    v.tcheck = extract_tcheck(t, v.spec);
    v.rank_full = rank_symbolic(v.tcheck);
    v.rank_reduced = rank_symbolic(v.tcheck.without_row(pos));
    v.identifiable = v.rank_full.rank > v.rank_reduced.rank;
    return v;
}

ModuleVerdict check_module_at(const ConcreteModel& c, std::size_t j, std::size_t i)
{
    check_row_index(c.base, j);
    check_row_index(c.base, i);
    if (!is_parametrized(c.base.G(j, i)))
        throw NotParametrized("G(" + std::to_string(j + 1) + "," + std::to_string(i + 1) + ") is not parametrized");
    require_analyzable(c);
    return check_module_at(c, compute_transfer(c), j, i);
}

FullVerdict check_full_at(const ConcreteModel& c)
{
    require_analyzable(c);
    const auto t = compute_transfer(c);
    FullVerdict out;
    for (std::size_t j = 0; j < c.base.L; ++j) {
        out.rows.push_back(check_row_at(c, t, j));
        out.identifiable = out.identifiable && out.rows.back().identifiable;
    }
    return out;
}

} // namespace netid
