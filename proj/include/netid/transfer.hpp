#ifndef NETID_TRANSFER_HPP
#define NETID_TRANSFER_HPP

// Identifiability at a fixed model: exact T = (I - G)^-1 [H R], the reduced
// transfer matrix of a row, and rank tests over Q(z).

#include "netid/matrix.hpp"
#include "netid/model.hpp"
#include "netid/ratfunc.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace netid {

/// T with column roles [e_1..e_p, r_1..r_K].
struct TransferMatrix {
    Matrix<TransferFunction> entries;
    std::vector<ExternalSignal> columns;

    std::size_t column_of(const ExternalSignal& s) const;
};

/// Throws SingularStructure if I - G is singular over Q(z).
TransferMatrix compute_transfer(const ConcreteModel& c);

/// (I - G) T - U; zero for a correct T.
Matrix<TransferFunction> network_residual(const ConcreteModel& c, const TransferMatrix& t);

/// Row and column selection defining the reduced transfer matrix of row j.
struct TcheckSpec {
    std::size_t row = 0;
    /// Nodes k with G(j, k) parametrized, ascending.
    std::vector<std::size_t> y;
    /// External signals whose entry in row j of [H R] is fixed; noise first.
    std::vector<ExternalSignal> u;
    std::size_t alpha = 0;
    std::size_t beta = 0;

    /// Position of node i in y. Throws NotParametrized if absent.
    std::size_t position_of(std::size_t node) const;
};

TcheckSpec tcheck_spec(const NetworkModelSet& m, std::size_t j);

/// alpha x (p + K - beta) submatrix of T: rows y, columns u.
Matrix<TransferFunction> extract_tcheck(const TransferMatrix& t, const TcheckSpec& s);

enum class RankMethod { Symbolic, Randomized };

struct RankResult {
    std::size_t rank = 0;
    RankMethod method = RankMethod::Symbolic;
    std::vector<std::size_t> witness_rows;
};

/// Normal rank over Q(z).
RankResult rank_symbolic(const Matrix<TransferFunction>& m);

/// Rank over Q.
RankResult rank_rational(const Matrix<Rational>& m);

/// Pointwise value. Throws PoleAtPoint.
Matrix<Rational> evaluate(const Matrix<TransferFunction>& m, const Rational& z0);

struct RowVerdict {
    std::size_t row = 0;
    bool identifiable = false;
    std::size_t parametrized_count = 0;
    std::size_t count_limit = 0; // K + p
    bool count_ok = false;
    TcheckSpec spec;
    Matrix<TransferFunction> tcheck;
    RankResult rank;
};

struct ModuleVerdict {
    std::size_t row = 0;
    std::size_t col = 0;
    bool identifiable = false;
    TcheckSpec spec;
    Matrix<TransferFunction> tcheck;
    RankResult rank_full;
    RankResult rank_reduced; // row for node col removed
};

struct FullVerdict {
    bool identifiable = true;
    std::vector<RowVerdict> rows;
};

// The checks below throw InvalidInput for an invalid concrete model and
// PreconditionFailed when the strict-properness / algebraic-loop gate fails.
// Row and column indices are 0-based.

RowVerdict check_row_at(const ConcreteModel& c, std::size_t j);
ModuleVerdict check_module_at(const ConcreteModel& c, std::size_t j, std::size_t i);
FullVerdict check_full_at(const ConcreteModel& c);

// Variants reusing a precomputed T; they do not re-run the gate.
RowVerdict check_row_at(const ConcreteModel& c, const TransferMatrix& t, std::size_t j);
ModuleVerdict check_module_at(const ConcreteModel& c, const TransferMatrix& t, std::size_t j, std::size_t i);

/// Runs model validation and the gate; throws on failure.
void require_analyzable(const ConcreteModel& c);

} // namespace netid

#endif
