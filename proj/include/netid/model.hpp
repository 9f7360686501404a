#ifndef NETID_MODEL_HPP
#define NETID_MODEL_HPP

#include "netid/matrix.hpp"
#include "netid/ratfunc.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace netid {

// Entry status in G, R or H.
struct Zero {
    friend bool operator==(const Zero&, const Zero&) = default;
};
struct Known {
    TransferFunction tf;
    friend bool operator==(const Known&, const Known&) = default;
};
struct Parametrized {
    int id = 0;
    friend bool operator==(const Parametrized&, const Parametrized&) = default;
};
using EntrySpec = std::variant<Zero, Known, Parametrized>;

inline bool is_zero(const EntrySpec& e) { return std::holds_alternative<Zero>(e); }
inline bool is_parametrized(const EntrySpec& e) { return std::holds_alternative<Parametrized>(e); }

enum class Block { G, R, H };

/// External signal: a noise source e_l or an excitation r_k (0-based index).
struct ExternalSignal {
    enum class Kind { Noise, Excitation };
    Kind kind;
    std::size_t index;

    std::string label() const;
    friend auto operator<=>(const ExternalSignal&, const ExternalSignal&) = default;
};

/// 1-based node label "w<i+1>".
std::string node_label(std::size_t node);

/// Structural description of a network model set.
///
/// Indices are 0-based here; every external format and report is 1-based.
/// The columns of U = [H R] put the p noise inputs first.
struct NetworkModelSet {
    std::size_t L = 0; // nodes
    std::size_t K = 0; // excitations
    std::size_t p = 0; // noise rank
    Matrix<EntrySpec> G; // L x L
    Matrix<EntrySpec> R; // L x K
    Matrix<EntrySpec> H; // L x p
    bool strictly_proper = false;
    bool lambda_diagonal = false;

    /// All-zero model set of the given dimensions.
    static NetworkModelSet zeros(std::size_t L, std::size_t K, std::size_t p);

    Matrix<EntrySpec>& block(Block b);
    const Matrix<EntrySpec>& block(Block b) const;

    /// Marks an entry as parametrized with a fresh id and returns the id.
    int parametrize(Block b, std::size_t row, std::size_t col);
    void set_known(Block b, std::size_t row, std::size_t col, TransferFunction tf);

    std::size_t external_count() const noexcept { return p + K; }
    /// Column c of U = [H R].
    const EntrySpec& u(std::size_t row, std::size_t c) const;
    ExternalSignal external(std::size_t c) const;
    std::size_t column_of(const ExternalSignal& s) const;

    /// Parametrized entries in row j of [G H R].
    std::size_t parametrized_in_row(std::size_t j) const;
    std::vector<int> parameter_ids() const;
};

/// A model set with every parameter bound: one point of the parameter space.
struct ConcreteModel {
    NetworkModelSet base;
    std::map<int, TransferFunction> bindings;
    std::optional<Matrix<Rational>> lambda; // p x p

    /// Value of an entry; Zero maps to 0. Throws InvalidInput on a missing binding.
    TransferFunction resolve(const EntrySpec& e) const;
    Matrix<TransferFunction> g() const;
    Matrix<TransferFunction> u() const;
};

struct Violation {
    std::string rule;
    std::string location;
    std::string message;
};

struct ValidationReport {
    bool passed = true;
    std::vector<Violation> violations;
    std::vector<Violation> warnings;

    void add(std::string rule, std::string location, std::string message);
    void warn(std::string rule, std::string location, std::string message);
    void merge(const ValidationReport& other);
};

// Rule names used in reports.
namespace rules {
inline constexpr const char* kShape = "shape";
inline constexpr const char* kNoiseRank = "p <= L";
inline constexpr const char* kHollow = "diagonal entries 0";
inline constexpr const char* kIndependent = "no common parameters";
inline constexpr const char* kProper = "modules proper";
inline constexpr const char* kStrictlyProper = "strictly proper";
inline constexpr const char* kMonicH = "H monic";
inline constexpr const char* kBound = "all parameters bound";
inline constexpr const char* kLambdaPd = "lambda positive definite";
inline constexpr const char* kWellPosed = "well-posed";
inline constexpr const char* kPrincipalMinors = "principal minors";
inline constexpr const char* kNoAlgebraicLoops = "no algebraic loops";
inline constexpr const char* kLambdaDiagonal = "Λ diagonal";
} // namespace rules

/// Structural invariants of a model set. Pure inspection.
ValidationReport validate_model_set(const NetworkModelSet& m);

/// Structural invariants plus the invariants of the bound point.
ValidationReport validate_concrete_model(const ConcreteModel& c);

/// Cycles with nonzero feedthrough product, in signal-flow order with the
/// first node repeated at the end (0-based).
std::vector<std::vector<std::size_t>> detect_algebraic_loops(const ConcreteModel& c);

/// Gate for every identifiability check: strictly proper modules, or no
/// algebraic loops and diagonal noise covariance. Throws
/// MissingConcreteModel when loop detection needs a concrete model.
ValidationReport check_prop1_conditions(const NetworkModelSet& m, const ConcreteModel* c = nullptr);

inline constexpr std::int64_t kSampleBound = 100;
inline constexpr int kInstantiationRetries = 16;

/// Binds every parameter to a random proper transfer function of the given
/// order. Deterministic in (m, seed, order).
ConcreteModel random_instantiate(const NetworkModelSet& m, std::uint64_t seed, int order = 1);

/// Exact determinant by Gaussian elimination over Q.
Rational determinant(Matrix<Rational> a);

} // namespace netid

#endif
