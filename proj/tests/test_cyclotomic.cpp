#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "greenring/cyclotomic.hpp"

using namespace greenring;

namespace {

IntPolynomial zpoly(const std::vector<long>& coeffs) {
    std::vector<BigInt> v(coeffs.begin(), coeffs.end());
    return IntPolynomial(std::move(v));
}

CyclotomicInt power_by_repeated_mult(const CyclotomicInt& a, int k) {
    CyclotomicInt acc = CyclotomicInt::integer(a.conductor(), 1);
    for (int i = 0; i < k; ++i) acc = acc * a;
    return acc;
}

CyclotomicInt random_element(int n, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> coeff(-5, 5);
    CyclotomicInt out(n);
    IntPolynomial acc;
    for (int k = 0; k < static_cast<int>(euler_phi(n)); ++k)
        acc = acc + IntPolynomial::monomial(coeff(rng), k);
    return CyclotomicInt::from_polynomial(n, acc);
}

}  // namespace

TEST_CASE("cyclotomic_polynomial") {
    REQUIRE(cyclotomic_polynomial(12) == zpoly({1, 0, -1, 0, 1}));
    REQUIRE(cyclotomic_polynomial(12).to_string() == "x^4 - x^2 + 1");
    REQUIRE(cyclotomic_polynomial(2) == zpoly({1, 1}));
    REQUIRE(cyclotomic_polynomial(1) == zpoly({-1, 1}));
    REQUIRE_THROWS_AS(cyclotomic_polynomial(0), ValidationError);

    SECTION("Phi_8 agrees with the direct division oracle") {
        IntPolynomial x8_minus_1 = zpoly({-1, 0, 0, 0, 0, 0, 0, 0, 1});
        IntPolynomial lower = zpoly({-1, 1}) * zpoly({1, 1}) * zpoly({1, 0, 1});
        auto [quot, rem] = divmod(x8_minus_1, lower);
        REQUIRE(rem.is_zero());
        REQUIRE(quot == zpoly({1, 0, 0, 0, 1}));
        REQUIRE(cyclotomic_polynomial(8) == quot);
    }
    SECTION("degree phi(n) and product formula for n <= 60") {
        for (int n = 1; n <= 60; ++n) {
            REQUIRE(cyclotomic_polynomial(n).degree() == euler_phi(n));
            IntPolynomial prod = IntPolynomial::constant(1);
            for (int d = 1; d <= n; ++d)
                if (n % d == 0) prod = prod * cyclotomic_polynomial(d);
            std::vector<BigInt> xn(static_cast<std::size_t>(n) + 1);
            xn[0] = -1;
            xn.back() = 1;
            REQUIRE(prod == IntPolynomial(std::move(xn)));
        }
    }
}

TEST_CASE("CyclotomicInt arithmetic") {
    SECTION("xi^n = 1 and Phi_n(xi) = 0, by honest multiplication") {
        for (int n : {1, 2, 3, 4, 6, 8, 12, 15, 20, 24, 36, 40, 60}) {
            CyclotomicInt xi = CyclotomicInt::xi_power(n, 1);
            REQUIRE(power_by_repeated_mult(xi, n) == CyclotomicInt::integer(n, 1));
            const IntPolynomial& phi = cyclotomic_polynomial(n);
            CyclotomicInt value(n);
            for (int k = 0; k <= phi.degree(); ++k)
                value = value + phi.coeff(k) * power_by_repeated_mult(xi, k);
            REQUIRE(value.is_zero());
        }
    }
    SECTION("conductor mismatch rejected") {
        REQUIRE_THROWS_AS(CyclotomicInt::integer(12, 1) + CyclotomicInt::integer(6, 1),
                          ValidationError);
    }
    SECTION("rational detection") {
        REQUIRE(CyclotomicInt::integer(12, -7).is_rational());
        REQUIRE(CyclotomicInt::integer(12, -7).rational_value() == -7);
        REQUIRE_FALSE(CyclotomicInt::xi_power(12, 1).is_rational());
    }
}

TEST_CASE("conjugate") {
    SECTION("rational elements are fixed") {
        CyclotomicInt five = CyclotomicInt::integer(12, 5);
        REQUIRE(conjugate(five) == five);
    }
    SECTION("conjugate(xi) = xi^(n-1)") {
        REQUIRE(conjugate(CyclotomicInt::xi_power(12, 1)) == CyclotomicInt::xi_power(12, 11));
    }
    SECTION("xi + xi^11 is real, by the substitute-and-reduce oracle") {
        CyclotomicInt real_elt =
            CyclotomicInt::xi_power(12, 1) + CyclotomicInt::xi_power(12, 11);
        // oracle: substitute xi -> xi^11 term by term and reduce
        CyclotomicInt substituted =
            CyclotomicInt::xi_power(12, 11) + CyclotomicInt::xi_power(12, 121);
        REQUIRE(conjugate(real_elt) == substituted);
        REQUIRE(conjugate(real_elt) == real_elt);
    }
    SECTION("involution and multiplicativity on random elements") {
        std::mt19937_64 rng(5);
        for (int n : {5, 8, 12, 20}) {
            for (int iter = 0; iter < 20; ++iter) {
                CyclotomicInt a = random_element(n, rng), b = random_element(n, rng);
                REQUIRE(conjugate(conjugate(a)) == a);
                REQUIRE(conjugate(a * b) == conjugate(a) * conjugate(b));
            }
            REQUIRE(conjugate(CyclotomicInt::xi_power(n, 1)) * CyclotomicInt::xi_power(n, 1) ==
                    CyclotomicInt::integer(n, 1));
        }
    }
}

TEST_CASE("embed into a larger conductor") {
    SECTION("identity embedding") {
        CyclotomicInt a = CyclotomicInt::xi_power(12, 5);
        REQUIRE(embed(a, 12) == a);
    }
    SECTION("cube root of unity goes to xi_12^4") {
        CyclotomicInt z3 = CyclotomicInt::xi_power(3, 1);
        REQUIRE(embed(z3, 12) == CyclotomicInt::xi_power(12, 4));
    }
    SECTION("embedding is a ring homomorphism") {
        std::mt19937_64 rng(11);
        for (int iter = 0; iter < 20; ++iter) {
            CyclotomicInt a = random_element(6, rng), b = random_element(6, rng);
            REQUIRE(embed(a * b, 24) == embed(a, 24) * embed(b, 24));
            REQUIRE(embed(a + b, 24) == embed(a, 24) + embed(b, 24));
        }
    }
    SECTION("non-divisible target rejected") {
        REQUIRE_THROWS_AS(embed(CyclotomicInt::integer(12, 1), 18), ValidationError);
    }
}

TEST_CASE("is_ramified") {
    REQUIRE(is_ramified(12, 3));
    REQUIRE_FALSE(is_ramified(6, 2));
    REQUIRE_FALSE(is_ramified(12, 5));
    REQUIRE(is_ramified(12, 2));  // 4 | 12
    REQUIRE(is_ramified(4, 2));
    REQUIRE_FALSE(is_ramified(2, 2));
    REQUIRE_FALSE(is_ramified(1, 7));
}

TEST_CASE("primes_above") {
    SECTION("(12, 2): one prime (2, x^2+x+1) with e = phi(4) = 2") {
        auto primes = primes_above(12, 2);
        REQUIRE(primes.size() == 1);
        REQUIRE(primes[0].factor() == PrimeFieldPolynomial(2, {1, 1, 1}));
        REQUIRE(primes[0].ram_exponent() == 2);
        REQUIRE(primes[0].residue_degree() == 2);
    }
    SECTION("(12, 3): one prime (3, x^2+1) with e = phi(3) = 2") {
        auto primes = primes_above(12, 3);
        REQUIRE(primes.size() == 1);
        REQUIRE(primes[0].factor() == PrimeFieldPolynomial(3, {1, 0, 1}));
        REQUIRE(primes[0].ram_exponent() == 2);
    }
    SECTION("(60, 5): two primes x^2+2x+4 and x^2+3x+4, e = phi(5) = 4") {
        auto primes = primes_above(60, 5);
        REQUIRE(primes.size() == 2);
        REQUIRE(primes[0].factor() == PrimeFieldPolynomial(5, {4, 2, 1}));
        REQUIRE(primes[1].factor() == PrimeFieldPolynomial(5, {4, 3, 1}));
        REQUIRE(primes[0].ram_exponent() == 4);
        REQUIRE(primes[1].ram_exponent() == 4);
    }
    SECTION("degree-sum identity r*d*e = phi(n) for n <= 60, p <= 13") {
        for (int n = 1; n <= 60; ++n) {
            for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
                auto primes = primes_above(n, p);
                REQUIRE_FALSE(primes.empty());
                std::int64_t total = 0;
                for (const auto& q : primes) {
                    REQUIRE(q.residue_degree() == primes[0].residue_degree());
                    REQUIRE(q.ram_exponent() == primes[0].ram_exponent());
                    total += static_cast<std::int64_t>(q.residue_degree()) * q.ram_exponent();
                }
                REQUIRE(total == euler_phi(n));
            }
        }
    }
}

TEST_CASE("reduce_mod") {
    auto q2 = primes_above(12, 2)[0];
    auto q3 = primes_above(12, 3)[0];

    SECTION("3 maps to 0 above 3") {
        REQUIRE(reduce_mod(CyclotomicInt::integer(12, 3), q3).is_zero());
    }
    SECTION("xi maps to the class t of x in F_4") {
        REQUIRE(reduce_mod(CyclotomicInt::xi_power(12, 1), q2) == q2.field()->generator());
    }
    SECTION("xi^4 (a primitive cube root) also maps to t") {
        // repeated-squaring oracle in F_4: t^2 = t + 1, t^4 = (t+1)^2 = t
        FieldElement t = q2.field()->generator();
        FieldElement t4 = ((t * t) * (t * t));
        REQUIRE(t4 == t);
        REQUIRE(reduce_mod(CyclotomicInt::xi_power(12, 4), q2) == t4);
    }
    SECTION("conductor mismatch rejected") {
        REQUIRE_THROWS_AS(reduce_mod(CyclotomicInt::integer(6, 1), q2), ValidationError);
    }
    SECTION("homomorphism on random elements") {
        std::mt19937_64 rng(17);
        for (const auto& q : {q2, q3}) {
            for (int iter = 0; iter < 25; ++iter) {
                CyclotomicInt a = random_element(12, rng), b = random_element(12, rng);
                REQUIRE(reduce_mod(a + b, q) == reduce_mod(a, q) + reduce_mod(b, q));
                REQUIRE(reduce_mod(a * b, q) == reduce_mod(a, q) * reduce_mod(b, q));
            }
        }
    }
}

TEST_CASE("phi_derivative_at") {
    SECTION("vanishes at the ramified primes of conductor 12") {
        REQUIRE(phi_derivative_at(primes_above(12, 2)[0]).is_zero());
        REQUIRE(phi_derivative_at(primes_above(12, 3)[0]).is_zero());
    }
    SECTION("Phi_6' = 2x - 1 evaluates to 1 above 2") {
        auto q = primes_above(6, 2)[0];
        REQUIRE(q.factor() == PrimeFieldPolynomial(2, {1, 1, 1}));
        REQUIRE(phi_derivative_at(q) == q.field()->one());
    }
    SECTION("dichotomy: zero iff ramified, for n <= 60 and p <= 13") {
        for (int n = 1; n <= 60; ++n)
            for (std::int64_t p : {2, 3, 5, 7, 11, 13})
                for (const auto& q : primes_above(n, p))
                    REQUIRE(phi_derivative_at(q).is_zero() == is_ramified(n, p));
    }
}
