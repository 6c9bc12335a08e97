#ifndef GREENRING_EXACTMATH_HPP
#define GREENRING_EXACTMATH_HPP

/// Exact arithmetic bottom layer: arbitrary-precision integers, dense
/// univariate polynomials over Z and over prime fields, finite fields
/// F_p[x]/(f), and kernel computations for matrices over those fields.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "greenring/error.hpp"

namespace greenring {

using BigInt = boost::multiprecision::cpp_int;

/// Fixed default seed for every randomized routine in the library.
inline constexpr std::uint64_t kDefaultSeed = 20210412u;

// ---------------------------------------------------------------------------
// Elementary number theory over machine integers
// ---------------------------------------------------------------------------

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Trial-division factorization, returned as (prime, exponent) pairs.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    detail::require(n >= 1, "factorize: argument must be positive");
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            int e = 0;
            while (n % d == 0) { n /= d; ++e; }
            out.emplace_back(d, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline std::int64_t euler_phi(std::int64_t n) {
    detail::require(n >= 1, "euler_phi: argument must be positive");
    std::int64_t phi = n;
    for (const auto& [p, e] : factorize(n)) phi = phi / p * (p - 1);
    return phi;
}

/// Largest e with p^e | n, together with p^e itself.
inline std::pair<int, std::int64_t> p_adic_valuation(std::int64_t n, std::int64_t p) {
    int e = 0;
    std::int64_t pe = 1;
    while (n % p == 0) { n /= p; pe *= p; ++e; }
    return {e, pe};
}

inline std::int64_t mod_mul(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % m);
}

inline std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t m) {
    std::int64_t r = 1 % m;
    base %= m;
    if (base < 0) base += m;
    while (exp > 0) {
        if (exp & 1) r = mod_mul(r, base, m);
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    return r;
}

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    std::int64_t t = 0, new_t = 1, r = m, new_r = ((a % m) + m) % m;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
        std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
    }
    detail::require(r == 1, "mod_inverse: argument not invertible");
    return ((t % m) + m) % m;
}

/// Multiplicative order of a modulo m (requires gcd(a, m) = 1).  m = 1 gives 1.
inline std::int64_t multiplicative_order(std::int64_t a, std::int64_t m) {
    detail::require(m >= 1, "multiplicative_order: modulus must be positive");
    if (m == 1) return 1;
    detail::require(std::gcd(((a % m) + m) % m, m) == 1,
                    "multiplicative_order: arguments not coprime");
    std::int64_t x = ((a % m) + m) % m, acc = x, ord = 1;
    while (acc != 1) {
        acc = mod_mul(acc, x, m);
        ++ord;
    }
    return ord;
}

// ---------------------------------------------------------------------------
// Polynomial rendering
// ---------------------------------------------------------------------------

namespace detail {

/// Renders a coefficient vector (index = degree) as ASCII, descending degree,
/// spaces around binary operators: "x^4 - x^2 + 1".
template <typename Coeff>
std::string render_polynomial(const std::vector<Coeff>& coeffs, const std::string& var) {
    std::ostringstream out;
    bool first = true;
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) {
        const Coeff& c = coeffs[static_cast<std::size_t>(k)];
        if (c == 0) continue;
        Coeff mag = c;
        if (first) {
            if (c < 0) { out << "-"; mag = -mag; }
            first = false;
        } else {
            if (c < 0) { out << " - "; mag = -mag; } else { out << " + "; }
        }
        if (k == 0) {
            out << mag;
        } else {
            if (mag != 1) out << mag;
            out << var;
            if (k > 1) out << "^" << k;
        }
    }
    if (first) out << "0";
    return out.str();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// IntPolynomial: dense univariate polynomials over Z
// ---------------------------------------------------------------------------

class IntPolynomial {
public:
    /// degree() of the zero polynomial.
    static constexpr int kDegreeMinusInfinity = std::numeric_limits<int>::min();

    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static IntPolynomial constant(BigInt c) {
        return IntPolynomial(std::vector<BigInt>{std::move(c)});
    }
    static IntPolynomial monomial(BigInt c, int degree) {
        detail::require(degree >= 0, "monomial: negative degree");
        std::vector<BigInt> v(static_cast<std::size_t>(degree) + 1);
        v.back() = std::move(c);
        return IntPolynomial(std::move(v));
    }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const {
        return coeffs_.empty() ? kDegreeMinusInfinity : static_cast<int>(coeffs_.size()) - 1;
    }
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

    /// Coefficient of x^i (zero beyond the degree).
    const BigInt& coeff(int i) const {
        static const BigInt zero{0};
        if (i < 0 || i >= static_cast<int>(coeffs_.size())) return zero;
        return coeffs_[static_cast<std::size_t>(i)];
    }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }

    friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<BigInt> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        return IntPolynomial(std::move(v));
    }
    friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
        std::vector<BigInt> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i));
        return IntPolynomial(std::move(v));
    }
    friend IntPolynomial operator-(const IntPolynomial& a) {
        std::vector<BigInt> v(a.coeffs_);
        for (auto& c : v) c = -c;
        return IntPolynomial(std::move(v));
    }
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
        if (a.is_zero() || b.is_zero()) return IntPolynomial();
        std::vector<BigInt> v(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                if (b.coeffs_[j] == 0) continue;
                v[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return IntPolynomial(std::move(v));
    }

    /// Long division by a monic divisor; returns (quotient, remainder).
    friend std::pair<IntPolynomial, IntPolynomial> divmod(const IntPolynomial& num,
                                                          const IntPolynomial& den) {
        detail::require(den.is_monic(), "divmod: divisor must be monic");
        std::vector<BigInt> rem(num.coeffs_);
        const int dd = den.degree();
        if (num.degree() < dd) return {IntPolynomial(), num};
        std::vector<BigInt> quo(static_cast<std::size_t>(num.degree() - dd) + 1);
        for (int k = num.degree() - dd; k >= 0; --k) {
            BigInt c = rem[static_cast<std::size_t>(k + dd)];
            if (c == 0) continue;
            quo[static_cast<std::size_t>(k)] = c;
            for (int i = 0; i <= dd; ++i)
                rem[static_cast<std::size_t>(k + i)] -= c * den.coeff(i);
        }
        return {IntPolynomial(std::move(quo)), IntPolynomial(std::move(rem))};
    }

    IntPolynomial derivative() const {
        if (coeffs_.size() <= 1) return IntPolynomial();
        std::vector<BigInt> v(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * static_cast<int>(i);
        return IntPolynomial(std::move(v));
    }

    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const IntPolynomial& a, const IntPolynomial& b) { return !(a == b); }

    std::string to_string(const std::string& var = "x") const {
        return detail::render_polynomial(coeffs_, var);
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<BigInt> coeffs_;
};

/// a*b reduced modulo the monic polynomial m.
inline IntPolynomial poly_mul_mod(const IntPolynomial& a, const IntPolynomial& b,
                                  const IntPolynomial& m) {
    detail::require(m.is_monic() && m.degree() >= 1,
                    "poly_mul_mod: modulus must be monic of degree >= 1");
    return divmod(a * b, m).second;
}

// ---------------------------------------------------------------------------
// PrimeFieldPolynomial: dense univariate polynomials over F_p
// ---------------------------------------------------------------------------

class PrimeFieldPolynomial {
public:
    explicit PrimeFieldPolynomial(std::int64_t p) : p_(p) { check_modulus(); }
    PrimeFieldPolynomial(std::int64_t p, std::vector<std::int64_t> coeffs)
        : p_(p), coeffs_(std::move(coeffs)) {
        check_modulus();
        for (auto& c : coeffs_) c = ((c % p_) + p_) % p_;
        trim();
    }

    static PrimeFieldPolynomial from_int_polynomial(const IntPolynomial& f, std::int64_t p) {
        PrimeFieldPolynomial out(p);
        out.coeffs_.resize(f.coeffs().size());
        for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
            BigInt r = f.coeffs()[i] % p;
            if (r < 0) r += p;
            out.coeffs_[i] = static_cast<std::int64_t>(r);
        }
        out.trim();
        return out;
    }

    static PrimeFieldPolynomial constant(std::int64_t p, std::int64_t c) {
        return PrimeFieldPolynomial(p, {c});
    }
    static PrimeFieldPolynomial monomial(std::int64_t p, std::int64_t c, int degree) {
        detail::require(degree >= 0, "monomial: negative degree");
        std::vector<std::int64_t> v(static_cast<std::size_t>(degree) + 1, 0);
        v.back() = c;
        return PrimeFieldPolynomial(p, std::move(v));
    }

    std::int64_t p() const { return p_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const {
        return coeffs_.empty() ? IntPolynomial::kDegreeMinusInfinity
                               : static_cast<int>(coeffs_.size()) - 1;
    }
    bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }
    std::int64_t coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
        return coeffs_[static_cast<std::size_t>(i)];
    }
    const std::vector<std::int64_t>& coeffs() const { return coeffs_; }

    friend PrimeFieldPolynomial operator+(const PrimeFieldPolynomial& a,
                                          const PrimeFieldPolynomial& b) {
        a.check_same_p(b);
        std::vector<std::int64_t> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = (a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i))) % a.p_;
        return PrimeFieldPolynomial(a.p_, std::move(v));
    }
    friend PrimeFieldPolynomial operator-(const PrimeFieldPolynomial& a,
                                          const PrimeFieldPolynomial& b) {
        a.check_same_p(b);
        std::vector<std::int64_t> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = (a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i)) + a.p_) % a.p_;
        return PrimeFieldPolynomial(a.p_, std::move(v));
    }
    friend PrimeFieldPolynomial operator*(const PrimeFieldPolynomial& a,
                                          const PrimeFieldPolynomial& b) {
        a.check_same_p(b);
        if (a.is_zero() || b.is_zero()) return PrimeFieldPolynomial(a.p_);
        std::vector<std::int64_t> v(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                v[i + j] = (v[i + j] + mod_mul(a.coeffs_[i], b.coeffs_[j], a.p_)) % a.p_;
        }
        return PrimeFieldPolynomial(a.p_, std::move(v));
    }
    PrimeFieldPolynomial scaled(std::int64_t c) const {
        std::vector<std::int64_t> v(coeffs_);
        c = ((c % p_) + p_) % p_;
        for (auto& x : v) x = mod_mul(x, c, p_);
        return PrimeFieldPolynomial(p_, std::move(v));
    }

    friend std::pair<PrimeFieldPolynomial, PrimeFieldPolynomial> divmod(
        const PrimeFieldPolynomial& num, const PrimeFieldPolynomial& den) {
        num.check_same_p(den);
        detail::require(!den.is_zero(), "divmod: division by zero polynomial");
        const std::int64_t p = num.p_;
        const int dd = den.degree();
        const std::int64_t lead_inv = mod_inverse(den.coeffs_.back(), p);
        std::vector<std::int64_t> rem(num.coeffs_);
        if (num.degree() < dd) return {PrimeFieldPolynomial(p), num};
        std::vector<std::int64_t> quo(static_cast<std::size_t>(num.degree() - dd) + 1, 0);
        for (int k = num.degree() - dd; k >= 0; --k) {
            std::int64_t c = mod_mul(rem[static_cast<std::size_t>(k + dd)], lead_inv, p);
            if (c == 0) continue;
            quo[static_cast<std::size_t>(k)] = c;
            for (int i = 0; i <= dd; ++i) {
                auto& r = rem[static_cast<std::size_t>(k + i)];
                r = (r - mod_mul(c, den.coeff(i), p) % p + p) % p;
            }
        }
        return {PrimeFieldPolynomial(p, std::move(quo)), PrimeFieldPolynomial(p, std::move(rem))};
    }

    PrimeFieldPolynomial make_monic() const {
        detail::require(!is_zero(), "make_monic: zero polynomial");
        return scaled(mod_inverse(coeffs_.back(), p_));
    }

    PrimeFieldPolynomial derivative() const {
        if (coeffs_.size() <= 1) return PrimeFieldPolynomial(p_);
        std::vector<std::int64_t> v(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            v[i - 1] = mod_mul(coeffs_[i], static_cast<std::int64_t>(i % static_cast<std::size_t>(p_)), p_);
        return PrimeFieldPolynomial(p_, std::move(v));
    }

    std::int64_t evaluate(std::int64_t x) const {
        std::int64_t acc = 0;
        x = ((x % p_) + p_) % p_;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = (mod_mul(acc, x, p_) + *it) % p_;
        return acc;
    }

    friend PrimeFieldPolynomial gcd(PrimeFieldPolynomial a, PrimeFieldPolynomial b) {
        a.check_same_p(b);
        while (!b.is_zero()) {
            PrimeFieldPolynomial r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.is_zero() ? a : a.make_monic();
    }

    /// base^exp reduced modulo `mod`; the exponent may be arbitrarily large.
    friend PrimeFieldPolynomial pow_mod(const PrimeFieldPolynomial& base, const BigInt& exp,
                                        const PrimeFieldPolynomial& mod) {
        base.check_same_p(mod);
        detail::require(exp >= 0, "pow_mod: negative exponent");
        detail::require(mod.degree() >= 1, "pow_mod: modulus must have degree >= 1");
        PrimeFieldPolynomial result = PrimeFieldPolynomial::constant(base.p_, 1);
        if (exp == 0) return divmod(result, mod).second;
        PrimeFieldPolynomial acc = divmod(base, mod).second;
        const auto bits = boost::multiprecision::msb(exp);
        for (unsigned i = 0; i <= bits; ++i) {
            if (boost::multiprecision::bit_test(exp, i)) result = divmod(result * acc, mod).second;
            if (i < bits) acc = divmod(acc * acc, mod).second;
        }
        return result;
    }

    friend bool operator==(const PrimeFieldPolynomial& a, const PrimeFieldPolynomial& b) {
        return a.p_ == b.p_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const PrimeFieldPolynomial& a, const PrimeFieldPolynomial& b) {
        return !(a == b);
    }

    /// Orders by degree, then by coefficient tuple read from the top degree
    /// down.  This is the row order of every factor listing in the tool.
    friend bool lex_less(const PrimeFieldPolynomial& a, const PrimeFieldPolynomial& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        for (int k = a.degree(); k >= 0; --k)
            if (a.coeff(k) != b.coeff(k)) return a.coeff(k) < b.coeff(k);
        return false;
    }

    std::string to_string(const std::string& var = "x") const {
        return detail::render_polynomial(coeffs_, var);
    }

private:
    void check_modulus() const { detail::require(p_ >= 2, "coefficient modulus must be >= 2"); }
    void check_same_p(const PrimeFieldPolynomial& other) const {
        detail::require(p_ == other.p_, "mixed coefficient moduli");
    }
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::int64_t p_;
    std::vector<std::int64_t> coeffs_;
};

// ---------------------------------------------------------------------------
// Equal-degree factorization (Cantor--Zassenhaus)
// ---------------------------------------------------------------------------

namespace detail {

inline PrimeFieldPolynomial random_polynomial_below(int degree_bound, std::int64_t p,
                                                    std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> dist(0, p - 1);
    std::vector<std::int64_t> v(static_cast<std::size_t>(degree_bound));
    for (auto& c : v) c = dist(rng);
    return PrimeFieldPolynomial(p, std::move(v));
}

inline void equal_degree_split(const PrimeFieldPolynomial& g, int d,
                               std::vector<PrimeFieldPolynomial>& out, std::mt19937_64& rng) {
    if (g.degree() == d) {
        out.push_back(g);
        return;
    }
    const std::int64_t p = g.p();
    PrimeFieldPolynomial splitter(p);
    while (true) {
        PrimeFieldPolynomial u = random_polynomial_below(g.degree(), p, rng);
        if (u.is_zero()) continue;
        PrimeFieldPolynomial h = gcd(u, g);
        if (h.degree() >= 1 && h.degree() < g.degree()) {
            splitter = h;  // lucky split straight from the gcd
            break;
        }
        PrimeFieldPolynomial w(p);
        if (p == 2) {
            // trace map u + u^2 + u^4 + ... + u^(2^(d-1)) mod g
            PrimeFieldPolynomial acc = u, trace = u;
            for (int i = 1; i < d; ++i) {
                acc = divmod(acc * acc, g).second;
                trace = trace + acc;
            }
            w = trace;
        } else {
            BigInt exponent = (boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(d)) - 1) / 2;
            w = pow_mod(u, exponent, g) - PrimeFieldPolynomial::constant(p, 1);
        }
        PrimeFieldPolynomial candidate = gcd(w, g);
        if (candidate.degree() >= 1 && candidate.degree() < g.degree()) {
            splitter = candidate;
            break;
        }
    }
    equal_degree_split(splitter, d, out, rng);
    equal_degree_split(divmod(g, splitter).first, d, out, rng);
}

}  // namespace detail

/// Complete factorization of a squarefree polynomial all of whose irreducible
/// factors have the known common degree d.  Deterministic for a fixed seed;
/// the result is sorted with lex_less and is seed-independent as a set.
inline std::vector<PrimeFieldPolynomial> factor_equal_degree(const PrimeFieldPolynomial& g, int d,
                                                             std::uint64_t seed = kDefaultSeed) {
    detail::require(is_prime(g.p()), "factor_equal_degree: modulus must be prime");
    detail::require(g.degree() >= 1, "factor_equal_degree: need degree >= 1");
    detail::require(d >= 1 && g.degree() % d == 0,
                    "factor_equal_degree: degree not a multiple of the factor degree");
    PrimeFieldPolynomial monic = g.make_monic();
    PrimeFieldPolynomial der = monic.derivative();
    detail::require(!der.is_zero() && gcd(monic, der).degree() == 0,
                    "factor_equal_degree: polynomial is not squarefree");

    std::mt19937_64 rng(seed);
    std::vector<PrimeFieldPolynomial> factors;
    detail::equal_degree_split(monic, d, factors, rng);
    std::sort(factors.begin(), factors.end(),
              [](const PrimeFieldPolynomial& a, const PrimeFieldPolynomial& b) {
                  return lex_less(a, b);
              });
    detail::check_internal(static_cast<int>(factors.size()) * d == monic.degree(),
                           "factor_equal_degree: factor degrees do not add up");
    return factors;
}

/// Rabin irreducibility test for a monic polynomial of degree >= 1 over F_p.
inline bool is_irreducible(const PrimeFieldPolynomial& f) {
    detail::require(f.degree() >= 1 && f.is_monic(), "is_irreducible: need a monic polynomial");
    const std::int64_t p = f.p();
    const int d = f.degree();
    const PrimeFieldPolynomial x = PrimeFieldPolynomial::monomial(p, 1, 1);
    // x^(p^d) == x mod f
    if (pow_mod(x, boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(d)), f) !=
        divmod(x, f).second)
        return false;
    for (const auto& [t, e] : factorize(d)) {
        (void)e;
        BigInt q = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(d / t));
        PrimeFieldPolynomial frob = pow_mod(x, q, f) - divmod(x, f).second;
        if (gcd(frob, f).degree() != 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Finite fields F_p[x]/(f) and their elements
// ---------------------------------------------------------------------------

class FieldElement;

class FiniteField : public std::enable_shared_from_this<FiniteField> {
public:
    /// Constructs F_p[x]/(f).  f must be monic and irreducible; both are
    /// verified here so no later operation has to re-check.
    static std::shared_ptr<const FiniteField> make(PrimeFieldPolynomial f) {
        detail::require(is_prime(f.p()), "FiniteField: characteristic must be prime");
        detail::require(f.is_monic() && f.degree() >= 1, "FiniteField: modulus must be monic");
        detail::require(is_irreducible(f), "FiniteField: modulus is reducible");
        return std::shared_ptr<const FiniteField>(new FiniteField(std::move(f)));
    }

    std::int64_t characteristic() const { return modulus_.p(); }
    int degree() const { return modulus_.degree(); }
    const PrimeFieldPolynomial& modulus() const { return modulus_; }

    bool same_field(const FiniteField& other) const {
        return characteristic() == other.characteristic() && modulus_ == other.modulus_;
    }

    inline FieldElement element(const PrimeFieldPolynomial& value) const;
    inline FieldElement zero() const;
    inline FieldElement one() const;
    inline FieldElement from_integer(std::int64_t c) const;
    /// The class of x, a root of the modulus.
    inline FieldElement generator() const;

private:
    explicit FiniteField(PrimeFieldPolynomial f) : modulus_(std::move(f)) {}
    PrimeFieldPolynomial modulus_;
};

using FieldPtr = std::shared_ptr<const FiniteField>;

class FieldElement {
public:
    FieldElement(FieldPtr field, PrimeFieldPolynomial value)
        : field_(std::move(field)), value_(divmod(std::move(value), field_->modulus()).second) {}

    const FieldPtr& field() const { return field_; }
    const PrimeFieldPolynomial& value() const { return value_; }
    bool is_zero() const { return value_.is_zero(); }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.check_compatible(b);
        return FieldElement(a.field_, a.value_ + b.value_);
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        a.check_compatible(b);
        return FieldElement(a.field_, a.value_ - b.value_);
    }
    friend FieldElement operator-(const FieldElement& a) {
        return FieldElement(a.field_, PrimeFieldPolynomial(a.value_.p()) - a.value_);
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.check_compatible(b);
        return FieldElement(a.field_, a.value_ * b.value_);
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on
    /// (value, modulus).
    FieldElement inverse() const {
        if (is_zero()) throw ValidationError("field_inverse: division by zero");
        const std::int64_t p = value_.p();
        PrimeFieldPolynomial r0 = field_->modulus(), r1 = value_;
        PrimeFieldPolynomial t0(p), t1 = PrimeFieldPolynomial::constant(p, 1);
        while (!r1.is_zero()) {
            auto [q, r2] = divmod(r0, r1);
            PrimeFieldPolynomial t2 = t0 - q * t1;
            r0 = std::move(r1); r1 = std::move(r2);
            t0 = std::move(t1); t1 = std::move(t2);
        }
        detail::check_internal(r0.degree() == 0, "inverse: gcd with irreducible modulus not 1");
        return FieldElement(field_, t0.scaled(mod_inverse(r0.coeff(0), p)));
    }

    friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
        return a * b.inverse();
    }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        a.check_compatible(b);
        return a.value_ == b.value_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    std::string to_string(const std::string& var = "t") const { return value_.to_string(var); }

private:
    void check_compatible(const FieldElement& other) const {
        detail::require(field_->same_field(*other.field_), "mixed parent fields");
    }

    FieldPtr field_;
    PrimeFieldPolynomial value_;
};

inline FieldElement FiniteField::element(const PrimeFieldPolynomial& value) const {
    detail::require(value.p() == characteristic(), "element: wrong characteristic");
    return FieldElement(shared_from_this(), value);
}
inline FieldElement FiniteField::zero() const {
    return FieldElement(shared_from_this(), PrimeFieldPolynomial(characteristic()));
}
inline FieldElement FiniteField::one() const { return from_integer(1); }
inline FieldElement FiniteField::from_integer(std::int64_t c) const {
    return FieldElement(shared_from_this(), PrimeFieldPolynomial::constant(characteristic(), c));
}
inline FieldElement FiniteField::generator() const {
    return FieldElement(shared_from_this(), PrimeFieldPolynomial::monomial(characteristic(), 1, 1));
}

inline FieldElement field_inverse(const FieldElement& a) { return a.inverse(); }

// ---------------------------------------------------------------------------
// Matrices over a finite field
// ---------------------------------------------------------------------------

class FieldMatrix {
public:
    FieldMatrix(FieldPtr field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols),
          entries_(rows * cols, field_->zero()) {}

    const FieldPtr& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const FieldElement& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, const FieldElement& v) {
        detail::require(v.field()->same_field(*field_), "mixed parent fields");
        entries_[r * cols_ + c] = v;
    }

    friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || !a.field_->same_field(*b.field_))
            return false;
        for (std::size_t i = 0; i < a.entries_.size(); ++i)
            if (a.entries_[i] != b.entries_[i]) return false;
        return true;
    }

private:
    FieldPtr field_;
    std::size_t rows_, cols_;
    std::vector<FieldElement> entries_;
};

namespace detail {

/// Allocation-free arithmetic on field elements stored as contiguous blocks
/// of ext_degree coefficients, used by the elimination below.
struct FlatFieldOps {
    std::int64_t p;
    int d;
    std::vector<std::int64_t> modulus;  // monic, length d + 1
    mutable std::vector<std::int64_t> scratch;

    explicit FlatFieldOps(const PrimeFieldPolynomial& f)
        : p(f.p()), d(f.degree()), modulus(static_cast<std::size_t>(f.degree()) + 1),
          scratch(static_cast<std::size_t>(2 * f.degree()) + 1) {
        for (int i = 0; i <= d; ++i) modulus[static_cast<std::size_t>(i)] = f.coeff(i);
    }

    bool is_zero(const std::int64_t* a) const {
        for (int i = 0; i < d; ++i)
            if (a[i] != 0) return false;
        return true;
    }

    void reduce_scratch() const {
        for (int k = 2 * d - 2; k >= d; --k) {
            const std::int64_t c = scratch[static_cast<std::size_t>(k)];
            if (c == 0) continue;
            scratch[static_cast<std::size_t>(k)] = 0;
            for (int i = 0; i < d; ++i) {
                auto& x = scratch[static_cast<std::size_t>(k - d + i)];
                x = ((x - mod_mul(c, modulus[static_cast<std::size_t>(i)], p)) % p + p) % p;
            }
        }
    }

    // out -= factor * a
    void submul(std::int64_t* out, const std::int64_t* factor, const std::int64_t* a) const {
        std::fill(scratch.begin(), scratch.end(), 0);
        for (int i = 0; i < d; ++i) {
            if (factor[i] == 0) continue;
            for (int j = 0; j < d; ++j) {
                if (a[j] == 0) continue;
                auto& x = scratch[static_cast<std::size_t>(i + j)];
                x = (x + mod_mul(factor[i], a[j], p)) % p;
            }
        }
        reduce_scratch();
        for (int i = 0; i < d; ++i) out[i] = ((out[i] - scratch[static_cast<std::size_t>(i)]) % p + p) % p;
    }

    // a *= inverse of the field element u (extended Euclid on polynomials)
    void scale_by_inverse(std::int64_t* row, std::size_t entries, const std::int64_t* u) const {
        PrimeFieldPolynomial value(p, std::vector<std::int64_t>(u, u + d));
        PrimeFieldPolynomial r0(p, std::vector<std::int64_t>(modulus.begin(), modulus.end()));
        PrimeFieldPolynomial r1 = value, t0(p), t1 = PrimeFieldPolynomial::constant(p, 1);
        while (!r1.is_zero()) {
            auto [q, r2] = divmod(r0, r1);
            PrimeFieldPolynomial t2 = t0 - q * t1;
            r0 = std::move(r1); r1 = std::move(r2);
            t0 = std::move(t1); t1 = std::move(t2);
        }
        check_internal(r0.degree() == 0, "flat inverse: gcd with irreducible modulus not 1");
        PrimeFieldPolynomial inverse = t0.scaled(mod_inverse(r0.coeff(0), p));
        std::vector<std::int64_t> inv(static_cast<std::size_t>(d), 0);
        for (int i = 0; i <= inverse.degree(); ++i) inv[static_cast<std::size_t>(i)] = inverse.coeff(i);
        // row := inv * row, entry by entry
        std::vector<std::int64_t> entry(static_cast<std::size_t>(d));
        for (std::size_t e = 0; e < entries; ++e) {
            std::int64_t* cell = row + e * static_cast<std::size_t>(d);
            std::copy(cell, cell + d, entry.begin());
            std::fill(cell, cell + d, 0);
            submul(cell, inv.data(), entry.data());
            for (int i = 0; i < d; ++i) cell[i] = (p - cell[i]) % p;
        }
    }
};

/// Row-major matrix over an extension field with entries stored as
/// contiguous blocks of ext_degree coefficients.
struct FlatMatrix {
    std::size_t rows = 0, cols = 0;
    std::size_t d = 1;  // extension degree
    std::vector<std::int64_t> data;

    FlatMatrix(std::size_t r, std::size_t c, std::size_t ext_degree)
        : rows(r), cols(c), d(ext_degree), data(r * c * ext_degree, 0) {}

    std::int64_t* cell(std::size_t r, std::size_t c) { return data.data() + (r * cols + c) * d; }
    const std::int64_t* cell(std::size_t r, std::size_t c) const {
        return data.data() + (r * cols + c) * d;
    }
};

/// Rank by Gaussian elimination with first-nonzero pivoting.  Rows are folded
/// in one at a time, so the scan stops as soon as the column count is reached.
inline std::size_t flat_rank(const FlatMatrix& M, const FlatFieldOps& ops) {
    if (M.rows == 0 || M.cols == 0) return 0;
    const std::size_t d = M.d;
    const std::size_t cols = M.cols;

    std::vector<std::vector<std::int64_t>> pivot_rows;  // normalized, leading entry 1
    std::vector<std::size_t> pivot_cols;
    std::vector<std::int64_t> row(cols * d);

    for (std::size_t r = 0; r < M.rows; ++r) {
        std::copy(M.cell(r, 0), M.cell(r, 0) + cols * d, row.begin());
        for (std::size_t t = 0; t < pivot_rows.size(); ++t) {
            std::int64_t* cell = row.data() + pivot_cols[t] * d;
            if (ops.is_zero(cell)) continue;
            std::vector<std::int64_t> factor(cell, cell + d);
            const std::int64_t* prow = pivot_rows[t].data();
            for (std::size_t c = pivot_cols[t]; c < cols; ++c)
                ops.submul(row.data() + c * d, factor.data(), prow + c * d);
        }
        std::size_t lead = cols;
        for (std::size_t c = 0; c < cols; ++c)
            if (!ops.is_zero(row.data() + c * d)) { lead = c; break; }
        if (lead == cols) continue;
        ops.scale_by_inverse(row.data() + lead * d, cols - lead, row.data() + lead * d);
        // keep pivots sorted by column so later reductions sweep left to right
        std::size_t pos = 0;
        while (pos < pivot_cols.size() && pivot_cols[pos] < lead) ++pos;
        pivot_cols.insert(pivot_cols.begin() + static_cast<std::ptrdiff_t>(pos), lead);
        pivot_rows.insert(pivot_rows.begin() + static_cast<std::ptrdiff_t>(pos), row);
        if (pivot_cols.size() == cols) return cols;
    }
    return pivot_cols.size();
}

}  // namespace detail

inline std::size_t rank(const FieldMatrix& M) {
    if (M.rows() == 0 || M.cols() == 0) return 0;
    const detail::FlatFieldOps ops(M.field()->modulus());
    detail::FlatMatrix flat(M.rows(), M.cols(), static_cast<std::size_t>(ops.d));
    for (std::size_t r = 0; r < M.rows(); ++r)
        for (std::size_t c = 0; c < M.cols(); ++c) {
            const auto& coeffs = M.at(r, c).value().coeffs();
            std::int64_t* cell = flat.cell(r, c);
            for (std::size_t i = 0; i < coeffs.size(); ++i) cell[i] = coeffs[i];
        }
    return detail::flat_rank(flat, ops);
}

/// cols - rank, the dimension of the right kernel.
inline std::size_t kernel_dimension(const FieldMatrix& M) { return M.cols() - rank(M); }

}  // namespace greenring

#endif  // GREENRING_EXACTMATH_HPP
