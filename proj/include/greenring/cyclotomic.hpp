#ifndef GREENRING_CYCLOTOMIC_HPP
#define GREENRING_CYCLOTOMIC_HPP

/// Cyclotomic polynomials, arithmetic in Z[xi_n] on the power basis
/// 1, xi, ..., xi^(phi(n)-1), the primes of Z[xi] above a rational prime,
/// and reduction into the residue fields F_p[x]/(f).

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "greenring/error.hpp"
#include "greenring/exactmath.hpp"

namespace greenring {

namespace detail {

struct ConductorContext {
    int n = 1;
    int phi = 1;
    IntPolynomial polynomial;  // the n-th cyclotomic polynomial
    // xpow[j - phi] = coefficient vector of x^j reduced, for j in [phi, hi]
    // with hi = max(2*phi - 2, n - 1); long enough for products and for xi^k.
    std::vector<std::vector<BigInt>> xpow;
};

inline std::mutex& cyclotomic_mutex() {
    static std::mutex m;
    return m;
}

inline IntPolynomial compute_cyclotomic(int n);

inline const IntPolynomial& cached_cyclotomic(int n) {
    static std::map<int, IntPolynomial> cache;
    std::unique_lock lock(cyclotomic_mutex());
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    lock.unlock();
    IntPolynomial value = compute_cyclotomic(n);
    lock.lock();
    return cache.emplace(n, std::move(value)).first->second;
}

inline IntPolynomial compute_cyclotomic(int n) {
    if (n == 1) return IntPolynomial({BigInt(-1), BigInt(1)});
    // x^n - 1 divided by the product of the lower cyclotomic polynomials
    std::vector<BigInt> xn(static_cast<std::size_t>(n) + 1);
    xn[0] = -1;
    xn.back() = 1;
    IntPolynomial numerator{std::move(xn)};
    IntPolynomial denominator = IntPolynomial::constant(1);
    for (int d = 1; d < n; ++d)
        if (n % d == 0) denominator = denominator * cached_cyclotomic(d);
    auto [quotient, remainder] = divmod(numerator, denominator);
    check_internal(remainder.is_zero(), "cyclotomic polynomial division left a remainder");
    return quotient;
}

inline const ConductorContext& conductor_context(int n) {
    require(n >= 1, "conductor must be a positive integer");
    static std::map<int, ConductorContext> cache;
    {
        std::lock_guard lock(cyclotomic_mutex());
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    ConductorContext ctx;
    ctx.n = n;
    ctx.polynomial = cached_cyclotomic(n);
    ctx.phi = ctx.polynomial.degree();
    const int hi = std::max(2 * ctx.phi - 2, n - 1);
    ctx.xpow.reserve(static_cast<std::size_t>(std::max(0, hi - ctx.phi + 1)));
    // x^phi = -(lower part of Phi_n); each further row is a shift-and-reduce
    std::vector<BigInt> row(static_cast<std::size_t>(ctx.phi));
    for (int i = 0; i < ctx.phi; ++i) row[static_cast<std::size_t>(i)] = -ctx.polynomial.coeff(i);
    for (int j = ctx.phi; j <= hi; ++j) {
        ctx.xpow.push_back(row);
        BigInt top = row.back();
        for (int i = ctx.phi - 1; i > 0; --i) row[static_cast<std::size_t>(i)] = row[static_cast<std::size_t>(i - 1)];
        row[0] = 0;
        if (top != 0)
            for (int i = 0; i < ctx.phi; ++i)
                row[static_cast<std::size_t>(i)] -= top * ctx.polynomial.coeff(i);
    }
    std::lock_guard lock(cyclotomic_mutex());
    return cache.emplace(n, std::move(ctx)).first->second;
}

}  // namespace detail

/// The n-th cyclotomic polynomial, monic of degree phi(n).  Memoized and safe
/// for concurrent callers.
inline const IntPolynomial& cyclotomic_polynomial(int n) {
    detail::require(n >= 1, "cyclotomic_polynomial: n must be >= 1");
    return detail::cached_cyclotomic(n);
}

// ---------------------------------------------------------------------------
// CyclotomicInt
// ---------------------------------------------------------------------------

/// An element of Z[xi_n], stored as the coefficient vector of the power basis.
class CyclotomicInt {
public:
    explicit CyclotomicInt(int n)
        : n_(n), coeffs_(static_cast<std::size_t>(detail::conductor_context(n).phi)) {}

    static CyclotomicInt integer(int n, BigInt c) {
        CyclotomicInt out(n);
        out.coeffs_[0] = std::move(c);
        return out;
    }

    /// xi^k (any integer k; exponents are taken modulo n).
    static CyclotomicInt xi_power(int n, std::int64_t k) {
        const auto& ctx = detail::conductor_context(n);
        k %= n;
        if (k < 0) k += n;
        CyclotomicInt out(n);
        if (k < ctx.phi) {
            out.coeffs_[static_cast<std::size_t>(k)] = 1;
        } else {
            out.coeffs_ = ctx.xpow[static_cast<std::size_t>(k - ctx.phi)];
        }
        return out;
    }

    /// The class of an integer polynomial in xi, reduced modulo Phi_n.
    static CyclotomicInt from_polynomial(int n, const IntPolynomial& f) {
        const auto& ctx = detail::conductor_context(n);
        IntPolynomial reduced = divmod(f, ctx.polynomial).second;
        CyclotomicInt out(n);
        for (int i = 0; i <= reduced.degree() && i < ctx.phi; ++i)
            out.coeffs_[static_cast<std::size_t>(i)] = reduced.coeff(i);
        return out;
    }

    int conductor() const { return n_; }
    const std::vector<BigInt>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) return false;
        return true;
    }
    const BigInt& rational_value() const {
        detail::require(is_rational(), "rational_value: element is not a rational integer");
        return coeffs_[0];
    }

    friend CyclotomicInt operator+(const CyclotomicInt& a, const CyclotomicInt& b) {
        a.check_same(b);
        CyclotomicInt out(a.n_);
        for (std::size_t i = 0; i < out.coeffs_.size(); ++i)
            out.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
        return out;
    }
    friend CyclotomicInt operator-(const CyclotomicInt& a, const CyclotomicInt& b) {
        a.check_same(b);
        CyclotomicInt out(a.n_);
        for (std::size_t i = 0; i < out.coeffs_.size(); ++i)
            out.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
        return out;
    }
    friend CyclotomicInt operator-(const CyclotomicInt& a) {
        CyclotomicInt out(a.n_);
        for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] = -a.coeffs_[i];
        return out;
    }

    /// coeffs += c * a.coeffs, with no temporaries; the workhorse of the
    /// inner-product loops in the character and structure-constant code.
    void add_scaled(const BigInt& c, const CyclotomicInt& a) {
        check_same(a);
        if (c == 0) return;
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            if (a.coeffs_[i] != 0) coeffs_[i] += c * a.coeffs_[i];
    }

    friend CyclotomicInt operator*(const CyclotomicInt& a, const CyclotomicInt& b) {
        a.check_same(b);
        const auto& ctx = detail::conductor_context(a.n_);
        const int phi = ctx.phi;
        // single-term fast path: most character values are short
        int a_terms = 0, b_terms = 0, a_at = 0, b_at = 0;
        for (int i = 0; i < phi && a_terms < 2; ++i)
            if (a.coeffs_[static_cast<std::size_t>(i)] != 0) { ++a_terms; a_at = i; }
        for (int i = 0; i < phi && b_terms < 2; ++i)
            if (b.coeffs_[static_cast<std::size_t>(i)] != 0) { ++b_terms; b_at = i; }
        if (a_terms == 0 || b_terms == 0) return CyclotomicInt(a.n_);
        if (a_terms == 1 && b_terms == 1) {
            CyclotomicInt out = xi_power(a.n_, a_at + b_at);
            const BigInt c = a.coeffs_[static_cast<std::size_t>(a_at)] *
                             b.coeffs_[static_cast<std::size_t>(b_at)];
            for (auto& x : out.coeffs_)
                if (x != 0) x *= c;
            return out;
        }
        std::vector<BigInt> prod(static_cast<std::size_t>(2 * phi - 1));
        for (int i = 0; i < phi; ++i) {
            const BigInt& ai = a.coeffs_[static_cast<std::size_t>(i)];
            if (ai == 0) continue;
            for (int j = 0; j < phi; ++j) {
                const BigInt& bj = b.coeffs_[static_cast<std::size_t>(j)];
                if (bj == 0) continue;
                prod[static_cast<std::size_t>(i + j)] += ai * bj;
            }
        }
        CyclotomicInt out(a.n_);
        for (int i = 0; i < phi; ++i) out.coeffs_[static_cast<std::size_t>(i)] = std::move(prod[static_cast<std::size_t>(i)]);
        for (int j = phi; j <= 2 * phi - 2; ++j) {
            const BigInt& c = prod[static_cast<std::size_t>(j)];
            if (c == 0) continue;
            const auto& row = ctx.xpow[static_cast<std::size_t>(j - phi)];
            for (int i = 0; i < phi; ++i) out.coeffs_[static_cast<std::size_t>(i)] += c * row[static_cast<std::size_t>(i)];
        }
        return out;
    }

    friend CyclotomicInt operator*(const BigInt& c, const CyclotomicInt& a) {
        CyclotomicInt out(a.n_);
        for (std::size_t i = 0; i < out.coeffs_.size(); ++i) out.coeffs_[i] = c * a.coeffs_[i];
        return out;
    }

    friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) {
        return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const CyclotomicInt& a, const CyclotomicInt& b) { return !(a == b); }

    /// Total order by the power-basis coefficient tuple, constant term first.
    friend bool lex_less(const CyclotomicInt& a, const CyclotomicInt& b) {
        a.check_same(b);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            if (a.coeffs_[i] != b.coeffs_[i]) return a.coeffs_[i] < b.coeffs_[i];
        return false;
    }

    std::string to_string(const std::string& var = "xi") const {
        return detail::render_polynomial(coeffs_, var);
    }

private:
    void check_same(const CyclotomicInt& other) const {
        detail::require(n_ == other.n_, "conductor mismatch");
    }

    int n_;
    std::vector<BigInt> coeffs_;
};

/// Complex conjugation, the ring involution xi -> xi^(n-1).
inline CyclotomicInt conjugate(const CyclotomicInt& a) {
    const int n = a.conductor();
    CyclotomicInt out(n);
    for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
        if (a.coeffs()[k] == 0) continue;
        std::int64_t e = (n - static_cast<std::int64_t>(k)) % n;
        out = out + a.coeffs()[k] * CyclotomicInt::xi_power(n, e);
    }
    return out;
}

/// Re-expresses an element of Z[xi_N] in Z[xi_n] via xi_N = xi_n^(n/N).
inline CyclotomicInt embed(const CyclotomicInt& a, int target_conductor) {
    const int N = a.conductor();
    detail::require(target_conductor >= 1 && target_conductor % N == 0,
                    "embed: target conductor must be a multiple of the current one");
    if (target_conductor == N) return a;
    const std::int64_t step = target_conductor / N;
    CyclotomicInt out(target_conductor);
    for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
        if (a.coeffs()[k] == 0) continue;
        out = out + a.coeffs()[k] *
                        CyclotomicInt::xi_power(target_conductor, step * static_cast<std::int64_t>(k));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Primes of Z[xi]
// ---------------------------------------------------------------------------

/// True exactly when p | n and (p != 2 or 4 | n); equivalently, when the
/// factorization of Phi_n mod p has a repeated factor.
inline bool is_ramified(int n, std::int64_t p) {
    detail::require(n >= 1, "is_ramified: conductor must be positive");
    detail::require(is_prime(p), "is_ramified: p must be prime");
    return n % p == 0 && (p != 2 || n % 4 == 0);
}

/// A nonzero prime Q = (p, f(xi)) of Z[xi_n], carrying its residue field.
class CyclotomicPrime {
public:
    CyclotomicPrime(int conductor, std::int64_t p, PrimeFieldPolynomial f, int ram_exponent)
        : conductor_(conductor), p_(p), factor_(std::move(f)), ram_exponent_(ram_exponent) {
        detail::require(is_prime(p_), "CyclotomicPrime: p must be prime");
        detail::require(factor_.p() == p_, "CyclotomicPrime: factor has wrong characteristic");
        const auto phi_mod_p =
            PrimeFieldPolynomial::from_int_polynomial(cyclotomic_polynomial(conductor_), p_);
        detail::require(divmod(phi_mod_p, factor_).second.is_zero(),
                        "CyclotomicPrime: f does not divide Phi_n mod p");
        field_ = FiniteField::make(factor_);  // verifies monic + irreducible
        detail::require((ram_exponent_ > 1) == is_ramified(conductor_, p_),
                        "CyclotomicPrime: ramification exponent inconsistent with conductor");
    }

    int conductor() const { return conductor_; }
    std::int64_t p() const { return p_; }
    const PrimeFieldPolynomial& factor() const { return factor_; }
    int residue_degree() const { return factor_.degree(); }
    int ram_exponent() const { return ram_exponent_; }
    const FieldPtr& field() const { return field_; }

    friend bool operator==(const CyclotomicPrime& a, const CyclotomicPrime& b) {
        return a.conductor_ == b.conductor_ && a.p_ == b.p_ && a.factor_ == b.factor_;
    }

private:
    int conductor_;
    std::int64_t p_;
    PrimeFieldPolynomial factor_;
    int ram_exponent_;
    FieldPtr field_;
};

/// All primes of Z[xi_n] above p, sorted by their defining factor.
///
/// Writes n = p^a * m.  Phi_n mod p is the phi(p^a)-th power of the squarefree
/// Phi_m mod p, whose irreducible factors all have degree ord_m(p); so only an
/// equal-degree factorization is ever needed.
inline std::vector<CyclotomicPrime> primes_above(int n, std::int64_t p,
                                                 std::uint64_t seed = kDefaultSeed) {
    detail::require(n >= 1, "primes_above: conductor must be positive");
    detail::require(is_prime(p), "primes_above: p must be prime");
    const auto [alpha, pe] = p_adic_valuation(n, p);
    const int m = static_cast<int>(n / pe);
    const int d = (m == 1) ? 1 : static_cast<int>(multiplicative_order(p, m));
    const int ram = static_cast<int>(euler_phi(pe));
    const auto base = PrimeFieldPolynomial::from_int_polynomial(cyclotomic_polynomial(m), p);
    std::vector<PrimeFieldPolynomial> factors;
    if (base.degree() == d)
        factors.push_back(base);
    else
        factors = factor_equal_degree(base, d, seed);
    std::vector<CyclotomicPrime> out;
    out.reserve(factors.size());
    for (auto& f : factors) out.emplace_back(n, p, std::move(f), ram);
    return out;
}

/// The residue map Z[xi] -> Z[xi]/Q = F_p[x]/(f); a ring homomorphism.
inline FieldElement reduce_mod(const CyclotomicInt& a, const CyclotomicPrime& Q) {
    detail::require(a.conductor() == Q.conductor(), "reduce_mod: conductor mismatch");
    std::vector<std::int64_t> v(a.coeffs().size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        BigInt r = a.coeffs()[i] % Q.p();
        if (r < 0) r += Q.p();
        v[i] = static_cast<std::int64_t>(r);
    }
    return FieldElement(Q.field(), PrimeFieldPolynomial(Q.p(), std::move(v)));
}

/// Phi_n'(zeta) in the residue field of Q, where zeta is the class of x.
/// Vanishes exactly when Q is ramified.
inline FieldElement phi_derivative_at(const CyclotomicPrime& Q) {
    const auto derivative = cyclotomic_polynomial(Q.conductor()).derivative();
    return FieldElement(Q.field(),
                        PrimeFieldPolynomial::from_int_polynomial(derivative, Q.p()));
}

}  // namespace greenring

#endif  // GREENRING_CYCLOTOMIC_HPP
