#ifndef NETID_RATFUNC_HPP
#define NETID_RATFUNC_HPP

// Exact arithmetic over Q(z): univariate rational functions with rational
// coefficients in the forward-shift variable z.

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace netid {

using Rational = mpq_class;

/// p/q in lowest terms (mpq_class(p, q) alone does not reduce).
inline Rational make_rational(long p, long q)
{
    Rational r(p, q);
    r.canonicalize();
    return r;
}

/// Canonical text form of a rational: "p" or "p/q" in lowest terms.
std::string to_string(const Rational& q);

/// Parses "p" or "p/q" (optional leading '-'). Throws InvalidInput.
Rational parse_rational(std::string_view text);

/// Polynomial in z with coefficients in descending powers.
///
/// The zero polynomial is the empty coefficient list; every other polynomial
/// has a nonzero leading coefficient. Constructors enforce this.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> descending);
    Polynomial(const Rational& constant);
    Polynomial(long constant) : Polynomial(Rational(constant)) {}

    /// z^n
    static Polynomial monomial(std::size_t n, const Rational& coeff = 1);

    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
    const Rational& leading() const { return coeffs_.front(); }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    Rational eval(const Rational& z) const;
    Polynomial monic() const;

    Polynomial operator-() const;
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

    struct DivMod;
    /// Euclidean division; throws std::domain_error on a zero divisor.
    DivMod divmod(const Polynomial& divisor) const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

struct Polynomial::DivMod {
    Polynomial quotient;
    Polynomial remainder;
};

/// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(Polynomial a, Polynomial b);

/// num/den in canonical form: gcd(num, den) = 1 and den monic.
/// Zero is 0/1.
class TransferFunction {
public:
    TransferFunction() : den_(1) {}
    TransferFunction(const Rational& constant) : num_(constant), den_(1) {}
    TransferFunction(long constant) : TransferFunction(Rational(constant)) {}
    /// Throws InvalidInput when den is zero.
    TransferFunction(Polynomial num, Polynomial den);

    const Polynomial& num() const noexcept { return num_; }
    const Polynomial& den() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_proper() const noexcept { return num_.degree() <= den_.degree(); }
    bool is_strictly_proper() const noexcept { return num_.degree() < den_.degree(); }
    /// Sum of numerator and denominator degrees; used as a pivot cost.
    long total_degree() const noexcept;

    /// Throws PoleAtPoint if den(z0) == 0.
    Rational eval(const Rational& z0) const;
    /// Value at z = infinity. Throws NotProper for improper input.
    Rational feedthrough() const;
    /// Throws std::domain_error on zero.
    TransferFunction inverse() const;

    TransferFunction operator-() const;
    friend TransferFunction operator+(const TransferFunction& a, const TransferFunction& b);
    friend TransferFunction operator-(const TransferFunction& a, const TransferFunction& b);
    friend TransferFunction operator*(const TransferFunction& a, const TransferFunction& b);
    friend TransferFunction operator/(const TransferFunction& a, const TransferFunction& b);
    TransferFunction& operator+=(const TransferFunction& b) { return *this = *this + b; }
    TransferFunction& operator-=(const TransferFunction& b) { return *this = *this - b; }
    TransferFunction& operator*=(const TransferFunction& b) { return *this = *this * b; }

    // Canonical forms make structural equality coincide with equality in Q(z).
    friend bool operator==(const TransferFunction& a, const TransferFunction& b) = default;

private:
    struct Canonical {};
    TransferFunction(Canonical, Polynomial num, Polynomial den)
        : num_(std::move(num)), den_(std::move(den)) {}

    Polynomial num_;
    Polynomial den_;
};

/// The indeterminate z.
inline TransferFunction z_tf() { return {Polynomial::monomial(1), Polynomial(1)}; }

std::ostream& operator<<(std::ostream& os, const Polynomial& p);
std::ostream& operator<<(std::ostream& os, const TransferFunction& t);

} // namespace netid

#endif
