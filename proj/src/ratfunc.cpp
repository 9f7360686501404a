#include "netid/ratfunc.hpp"

#include "netid/error.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace netid {

std::string to_string(const Rational& q)
{
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

namespace {

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view body = text;
    if (!body.empty() && body.front() == '-')
        body.remove_prefix(1);
    const auto slash = body.find('/');
    const std::string_view p = body.substr(0, slash);
    const std::string_view q = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q))
        throw InvalidInput("malformed rational \"" + std::string(text) + "\"");
    mpz_class den(std::string(q), 10);
    if (den == 0)
        throw InvalidInput("zero denominator in rational \"" + std::string(text) + "\"");
    Rational r(mpz_class(std::string(p), 10), den);
    r.canonicalize();
    if (text.front() == '-')
        r = -r;
    return r;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(std::vector<Rational> descending) : coeffs_(std::move(descending))
{
    for (auto& c : coeffs_)
        c.canonicalize();
    trim();
}

Polynomial::Polynomial(const Rational& constant)
{
    if (constant != 0) {
        coeffs_.push_back(constant);
        coeffs_.back().canonicalize();
    }
}

Polynomial Polynomial::monomial(std::size_t n, const Rational& coeff)
{
    std::vector<Rational> c(n + 1, Rational(0));
    c[0] = coeff;
    return Polynomial(std::move(c));
}

void Polynomial::trim()
{
    auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c != 0; });
    coeffs_.erase(coeffs_.begin(), first);
}

Rational Polynomial::eval(const Rational& z) const
{
    Rational point = z;
    point.canonicalize();
    Rational acc = 0;
    for (const auto& c : coeffs_)
        acc = acc * point + c;
    return acc;
}

Polynomial Polynomial::monic() const
{
    if (is_zero())
        return {};
    Polynomial out = *this;
    const Rational lead = leading();
    for (auto& c : out.coeffs_)
        c /= lead;
    return out;
}

Polynomial Polynomial::operator-() const
{
    Polynomial out = *this;
    for (auto& c : out.coeffs_)
        c = -c;
    return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b)
{
    const auto& longer = a.coeffs_.size() >= b.coeffs_.size() ? a.coeffs_ : b.coeffs_;
    const auto& shorter = a.coeffs_.size() >= b.coeffs_.size() ? b.coeffs_ : a.coeffs_;
    std::vector<Rational> out = longer;
    const std::size_t offset = longer.size() - shorter.size();
    for (std::size_t i = 0; i < shorter.size(); ++i)
        out[offset + i] += shorter[i];
    Polynomial p;
    p.coeffs_ = std::move(out);
    p.trim();
    return p;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b)
{
    return a + (-b);
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    // Q has no zero divisors, so the leading term is nonzero.
    Polynomial p;
    p.coeffs_ = std::move(out);
    return p;
}

Polynomial::DivMod Polynomial::divmod(const Polynomial& divisor) const
{
    if (divisor.is_zero())
        throw std::domain_error("polynomial division by zero");
    if (degree() < divisor.degree())
        return {Polynomial(), *this};

    std::vector<Rational> rem = coeffs_;
    const std::size_t dn = divisor.coeffs_.size();
    const std::size_t qn = rem.size() - dn + 1;
    std::vector<Rational> quot(qn);
    for (std::size_t i = 0; i < qn; ++i) {
        const Rational factor = rem[i] / divisor.coeffs_[0];
        quot[i] = factor;
        if (factor == 0)
            continue;
        for (std::size_t k = 0; k < dn; ++k)
            rem[i + k] -= factor * divisor.coeffs_[k];
    }
    rem.erase(rem.begin(), rem.begin() + static_cast<std::ptrdiff_t>(qn));
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(Polynomial a, Polynomial b)
{
    while (!b.is_zero()) {
        Polynomial r = a.divmod(b).remainder;
        a = std::move(b);
        b = r.monic();
    }
    return a.monic();
}

// ---------------------------------------------------------------------------
// TransferFunction

TransferFunction::TransferFunction(Polynomial num, Polynomial den)
{
    if (den.is_zero())
        throw InvalidInput("transfer function with zero denominator");
    if (num.is_zero()) {
        den_ = Polynomial(1);
        return;
    }
    const Polynomial g = gcd(num, den);
    if (g.degree() > 0) {
        num = num.divmod(g).quotient;
        den = den.divmod(g).quotient;
    }
    const Rational lead = den.leading();
    if (lead != 1) {
        const Polynomial scale(Rational(1) / lead);
        num = num * scale;
        den = den * scale;
    }
    num_ = std::move(num);
    den_ = std::move(den);
}

long TransferFunction::total_degree() const noexcept
{
    return std::max(num_.degree(), 0L) + den_.degree();
}

Rational TransferFunction::eval(const Rational& z0) const
{
    const Rational d = den_.eval(z0);
    if (d == 0)
        throw PoleAtPoint("denominator vanishes at z = " + to_string(z0));
    return num_.eval(z0) / d;
}

Rational TransferFunction::feedthrough() const
{
    if (!is_proper())
        throw NotProper("transfer function is not proper");
    if (is_strictly_proper())
        return 0;
    return num_.leading() / den_.leading();
}

TransferFunction TransferFunction::inverse() const
{
    if (is_zero())
        throw std::domain_error("inverse of zero transfer function");
    return TransferFunction(den_, num_);
}

TransferFunction TransferFunction::operator-() const
{
    return TransferFunction(Canonical{}, -num_, den_);
}

TransferFunction operator+(const TransferFunction& a, const TransferFunction& b)
{
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;
    if (a.den_ == b.den_)
        return TransferFunction(a.num_ + b.num_, a.den_);
    return TransferFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

TransferFunction operator-(const TransferFunction& a, const TransferFunction& b)
{
    return a + (-b);
}

TransferFunction operator*(const TransferFunction& a, const TransferFunction& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    // Cross-cancel first so the products stay small.
    const Polynomial g1 = gcd(a.num_, b.den_);
    const Polynomial g2 = gcd(b.num_, a.den_);
    const Polynomial an = a.num_.divmod(g1).quotient;
    const Polynomial bd = b.den_.divmod(g1).quotient;
    const Polynomial bn = b.num_.divmod(g2).quotient;
    const Polynomial ad = a.den_.divmod(g2).quotient;
    return TransferFunction(an * bn, ad * bd);
}

TransferFunction operator/(const TransferFunction& a, const TransferFunction& b)
{
    return a * b.inverse();
}

// ---------------------------------------------------------------------------
// Printing

std::ostream& operator<<(std::ostream& os, const Polynomial& p)
{
    if (p.is_zero())
        return os << "0";
    bool first = true;
    const long deg = p.degree();
    for (long i = 0; i <= deg; ++i) {
        const Rational& c = p.coeffs()[static_cast<std::size_t>(i)];
        if (c == 0)
            continue;
        const long power = deg - i;
        Rational mag = abs(c);
        if (first) {
            if (c < 0)
                os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (power == 0 || mag != 1)
            os << to_string(mag);
        if (power > 0) {
            os << "z";
            if (power > 1)
                os << "^" << power;
        }
    }
    return os;
}

std::ostream& operator<<(std::ostream& os, const TransferFunction& t)
{
    if (t.den().degree() == 0)
        return os << t.num();
    return os << "(" << t.num() << ")/(" << t.den() << ")";
}

} // namespace netid
