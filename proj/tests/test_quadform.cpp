#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace wittlab;

namespace {

bool iso(const char* field, const char* form) { return is_isotropic(parse_form(make_field(field), form)).isotropic; }

}  // namespace

TEST(Isotropy, SmallExamples) {
    EXPECT_FALSE(iso("AC0((t1))((t2))", "1,t1,t2,t1*t2"));
    EXPECT_TRUE(iso("AC0((t1))((t2))", "1,t1,t2,t1*t2,t1^3*t2^-1"));
    EXPECT_FALSE(iso("F3", "1,1"));
    EXPECT_TRUE(iso("F3", "1,2"));
    EXPECT_TRUE(iso("F5", "1,1"));
    EXPECT_TRUE(iso("F3", "1,1,1"));
    EXPECT_TRUE(iso("AC0", "1,1"));
    EXPECT_FALSE(iso("AC0", "3"));
    EXPECT_FALSE(iso("Q", "1,1,1"));
    EXPECT_FALSE(iso("Q", "1,1,-3"));
    EXPECT_TRUE(iso("Q", "1,1,-2"));
    EXPECT_FALSE(iso("Q", "1,1,1,-7"));
    EXPECT_TRUE(iso("Q", "1,1,1,1,-1"));
    EXPECT_TRUE(iso("Q", "1,-4/9"));
    EXPECT_THROW(iso("F2((t))", "1,t"), unsupported_domain);
    EXPECT_THROW(iso("Q(x)", "1,x"), unsupported_domain);
}

TEST(Isotropy, WitnessesVanish) {
    for (auto [f, q] : std::vector<std::pair<const char*, const char*>>{{"F7((s))((t))", "1,3*s,t,2*s*t,5"},
                                                                        {"AC0((a))((b))((c))", "a,b,c,a*b*c,a^-1*b^2"},
                                                                        {"Q", "2,3,-5,7/4"},
                                                                        {"F9=F3[y^2+1]", "1,y"}}) {
        auto form = parse_form(make_field(f), q);
        auto v = is_isotropic(form);
        ASSERT_TRUE(v.isotropic) << f << " " << q;
        ASSERT_TRUE(v.witness);
        EXPECT_TRUE(vanishes_at(form, *v.witness));
    }
}

TEST(Isotropy, FiniteFieldsMatchExhaustiveSearch) {
    std::mt19937 rng(3);
    for (std::int64_t p : {3, 5, 7, 11}) {
        auto F = make_field("F" + std::to_string(p));
        for (int trial = 0; trial < 40; ++trial) {
            int n = std::uniform_int_distribution<int>(1, 3)(rng);
            std::vector<std::int64_t> c;
            std::vector<FieldElement> coeffs;
            for (int i = 0; i < n; ++i) {
                c.push_back(std::uniform_int_distribution<std::int64_t>(1, p - 1)(rng));
                coeffs.push_back(from_int(F, c.back()));
            }
            EXPECT_EQ(is_isotropic(DiagonalForm(F, coeffs)).isotropic, oracle::finite_isotropic(c, p));
        }
    }
}

TEST(Isotropy, LaurentSeriesMatchTruncatedSearch) {
    std::mt19937 rng(5);
    for (std::int64_t p : {3, 5}) {
        auto F = make_field("F" + std::to_string(p) + "((t))");
        for (int trial = 0; trial < 40; ++trial) {
            int n = std::uniform_int_distribution<int>(1, p == 3 ? 4 : 3)(rng);
            std::vector<std::int64_t> c;
            std::vector<int> e, raw;
            std::vector<FieldElement> coeffs;
            for (int i = 0; i < n; ++i) {
                c.push_back(std::uniform_int_distribution<std::int64_t>(1, p - 1)(rng));
                raw.push_back(std::uniform_int_distribution<int>(-3, 3)(rng));
                e.push_back(((raw.back() % 2) + 2) % 2);
                coeffs.push_back(tower_monomial(F.base->from_int(c.back()), {raw.back()}));
            }
            EXPECT_EQ(is_isotropic(DiagonalForm(F, coeffs)).isotropic, oracle::laurent_isotropic(c, e, p));
        }
    }
}

TEST(Isotropy, InvariantUnderSquaresAndPermutations) {
    std::mt19937 rng(9);
    auto F = make_field("F5((a))((b))((c))");
    auto random_mono = [&] {
        std::uniform_int_distribution<int> e(-2, 2), s(1, 4);
        return tower_monomial(F.base->from_int(s(rng)), {e(rng), e(rng), e(rng)});
    };
    for (int trial = 0; trial < 100; ++trial) {
        int n = std::uniform_int_distribution<int>(1, 9)(rng);
        std::vector<FieldElement> c;
        for (int i = 0; i < n; ++i) c.push_back(random_mono());
        bool base = is_isotropic(DiagonalForm(F, c)).isotropic;
        auto d = c;
        std::shuffle(d.begin(), d.end(), rng);
        for (auto& x : d) x = x * square(random_mono());
        EXPECT_EQ(is_isotropic(DiagonalForm(F, d)).isotropic, base);
    }
}

TEST(Hilbert, MatchesModularSearch) {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 150; ++trial) {
        std::int64_t a = oracle::squarefree(std::uniform_int_distribution<std::int64_t>(-30, 30)(rng));
        std::int64_t b = oracle::squarefree(std::uniform_int_distribution<std::int64_t>(-30, 30)(rng));
        if (a == 0 || b == 0) continue;
        for (std::int64_t p : {2, 3, 5, 7})
            EXPECT_EQ(hilbert_symbol(a, b, Place::finite(p)), oracle::hilbert_bruteforce(a, b, p)) << a << " " << b << " " << p;
    }
    EXPECT_EQ(hilbert_symbol(2, 3, Place::finite(3)), -1);
    EXPECT_EQ(hilbert_symbol(-1, -1, Place::finite(2)), -1);
    EXPECT_EQ(hilbert_symbol(-1, -1, Place::real()), -1);
}

TEST(Hilbert, ProductFormula) {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<std::int64_t> h(-50, 50), d(1, 50);
        Rational a(h(rng), d(rng)), b(h(rng), d(rng));
        if (a == 0 || b == 0) continue;
        int prod = hilbert_symbol(a, b, Place::real());
        std::set<BigInt> primes{2};
        for (auto x : {numerator(a), denominator(a), numerator(b), denominator(b)})
            for (auto& [q, e] : factorize(abs(x))) primes.insert(q);
        for (const auto& q : primes) prod *= hilbert_symbol(a, b, Place::finite(q));
        EXPECT_EQ(prod, 1);
    }
}

TEST(Isotropy, HasseMinkowskiNeverContradictedBySearch) {
    std::mt19937 rng(19);
    auto Q = make_field("Q");
    for (int trial = 0; trial < 60; ++trial) {
        int n = std::uniform_int_distribution<int>(2, 4)(rng);
        std::vector<std::int64_t> c;
        std::vector<FieldElement> coeffs;
        for (int i = 0; i < n; ++i) {
            std::int64_t x = 0;
            while (x == 0) x = std::uniform_int_distribution<std::int64_t>(-20, 20)(rng);
            c.push_back(x);
            coeffs.push_back(from_int(Q, x));
        }
        auto v = is_isotropic(DiagonalForm(Q, coeffs));
        if (!v.isotropic) EXPECT_FALSE(oracle::integer_zero_search(c, n == 4 ? 40 : 120));
        if (v.witness) EXPECT_TRUE(vanishes_at(DiagonalForm(Q, coeffs), *v.witness));
    }
}

TEST(Universality, TowerPfisterForms) {
    auto A = make_field("AC0((t1))((t2))");
    EXPECT_TRUE(is_universal(parse_form(A, "1,t1,t2,t1*t2")));
    auto F = make_field("F3((t1))((t2))");
    EXPECT_FALSE(is_universal(parse_form(F, "1,t1,t2,t1*t2")));
    EXPECT_TRUE(is_universal(parse_form(make_field("F3"), "1,1")));
    EXPECT_TRUE(represents(parse_form(F, "1,t1"), parse_element(F, "t1*4")));
    EXPECT_FALSE(represents(parse_form(F, "1,t1"), parse_element(F, "t2")));
}

TEST(WittDecomposition, DimensionsAndKernels) {
    auto P = make_field("F3((t))((s))");
    auto w = witt_decompose(parse_form(P, "1,1,t,t,s,2*s,t*s"));
    EXPECT_EQ(w.witt_index, 1u);
    EXPECT_EQ(w.kernel.to_string(), "<1,1,t,t,t*s>");
    EXPECT_FALSE(is_isotropic(w.kernel).isotropic);
    auto F5 = make_field("F5");
    EXPECT_TRUE(witt_decompose(parse_form(F5, "1,1")).hyperbolic());
    EXPECT_EQ(witt_decompose(parse_form(F5, "1,1,1")).witt_index, 1u);
    EXPECT_THROW(witt_decompose(parse_form(make_field("Q"), "1,-1")), unsupported_domain);
    std::mt19937 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        int n = std::uniform_int_distribution<int>(1, 8)(rng);
        std::vector<FieldElement> c;
        for (int i = 0; i < n; ++i)
            c.push_back(tower_monomial(P.base->from_int(std::uniform_int_distribution<int>(1, 2)(rng)),
                                       {std::uniform_int_distribution<int>(0, 1)(rng), std::uniform_int_distribution<int>(0, 1)(rng)}));
        DiagonalForm q(P, c);
        auto d = witt_decompose(q);
        EXPECT_EQ(2 * d.witt_index + d.kernel.dim(), q.dim());
        EXPECT_FALSE(is_isotropic(d.kernel).isotropic);
        EXPECT_EQ(d.witt_index > 0, is_isotropic(q).isotropic);
    }
}

TEST(Isotropy, AnisotropicVerdictsSurviveMonomialSearch) {
    std::mt19937 rng(29);
    const char* fields[] = {"F3((a))", "F5((a))((b))", "F7((a))((b))((c))", "F9=F3[y^2+1]((a))((b))"};
    for (const char* name : fields) {
        auto F = make_field(name);
        auto els = F.base->elements();
        for (int trial = 0; trial < 12; ++trial) {
            int n = std::uniform_int_distribution<int>(2, 4)(rng);
            std::vector<FieldElement> c;
            for (int i = 0; i < n; ++i) {
                std::vector<int> e(F.depth());
                for (auto& x : e) x = std::uniform_int_distribution<int>(-2, 2)(rng);
                c.push_back(tower_monomial(els[std::uniform_int_distribution<std::size_t>(1, els.size() - 1)(rng)], e));
            }
            bool found = oracle::tower_monomial_zero_search(F, c);
            EXPECT_EQ(is_isotropic(DiagonalForm(F, c)).isotropic, found) << name << " " << DiagonalForm(F, c).to_string();
        }
    }
}

TEST(Isotropy, ScalingInvariance) {
    std::mt19937 rng(31);
    auto Q = make_field("Q");
    auto T = make_field("F7((a))((b))");
    for (int trial = 0; trial < 60; ++trial) {
        int n = std::uniform_int_distribution<int>(2, 5)(rng);
        std::vector<FieldElement> q, t;
        for (int i = 0; i < n; ++i) {
            std::int64_t x = 0;
            while (x == 0) x = std::uniform_int_distribution<std::int64_t>(-15, 15)(rng);
            q.push_back(from_int(Q, x));
            t.push_back(tower_monomial(T.base->from_int(std::uniform_int_distribution<int>(1, 6)(rng)),
                                       {std::uniform_int_distribution<int>(-2, 2)(rng), std::uniform_int_distribution<int>(-2, 2)(rng)}));
        }
        auto cq = parse_element(Q, std::to_string(std::uniform_int_distribution<int>(1, 30)(rng)) + "/7");
        auto ct = tower_monomial(T.base->from_int(std::uniform_int_distribution<int>(1, 6)(rng)), {1, -1});
        DiagonalForm fq(Q, q), ft(T, t);
        EXPECT_EQ(is_isotropic(fq).isotropic, is_isotropic(fq.scaled(cq)).isotropic);
        EXPECT_EQ(is_isotropic(ft).isotropic, is_isotropic(ft.scaled(ct)).isotropic);
    }
}

TEST(Isotropy, AlgebraicallyClosedTowersAreCd) {
    std::mt19937 rng(37);
    for (int d = 1; d <= 3; ++d) {
        std::string name = "AC0";
        for (int i = 1; i <= d; ++i) name += "((t" + std::to_string(i) + "))";
        auto F = make_field(name);
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<FieldElement> c;
            for (int i = 0; i < (1 << d) + 1; ++i) {
                std::vector<int> e(d);
                for (auto& x : e) x = std::uniform_int_distribution<int>(-2, 2)(rng);
                c.push_back(tower_monomial(F.base->from_int(std::uniform_int_distribution<int>(1, 9)(rng)), e));
            }
            auto v = is_isotropic(DiagonalForm(F, c));
            EXPECT_TRUE(v.isotropic);
            if (v.witness) EXPECT_TRUE(vanishes_at(DiagonalForm(F, c), *v.witness));
        }
    }
}

TEST(WittDecomposition, SmallFiniteFields) {
    auto F5 = make_field("F5");
    auto w = witt_decompose(parse_form(F5, "1,-1"));
    EXPECT_EQ(w.witt_index, 1u);
    EXPECT_EQ(w.kernel.dim(), 0u);
    auto F3 = make_field("F3");
    w = witt_decompose(parse_form(F3, "1,1"));
    EXPECT_EQ(w.witt_index, 0u);
    EXPECT_EQ(w.kernel.to_string(), "<1,1>");
}

TEST(Isotropy, VerdictOnlyModeAgreesWithFullRecursion) {
    std::mt19937 rng(43);
    QuadOptions fast;
    fast.verdict_only = true;
    for (const char* name : {"F3((a))((b))", "F5((a))((b))((c))", "AC0((a))((b))", "F9=F3[y^2+1]((a))"}) {
        auto F = make_field(name);
        auto els = F.base->is_finite() ? F.base->elements() : std::vector<Scalar>{F.base->from_int(1), F.base->from_int(2)};
        for (int trial = 0; trial < 40; ++trial) {
            int n = std::uniform_int_distribution<int>(1, 6)(rng);
            std::vector<FieldElement> c;
            for (int i = 0; i < n; ++i) {
                std::vector<int> e(F.depth());
                for (auto& x : e) x = std::uniform_int_distribution<int>(-3, 3)(rng);
                Scalar s = F.base->zero();
                while (F.base->is_zero(s)) s = els[std::uniform_int_distribution<std::size_t>(0, els.size() - 1)(rng)];
                c.push_back(tower_monomial(s, e));
            }
            DiagonalForm q(F, c);
            EXPECT_EQ(is_isotropic(q, fast).isotropic, is_isotropic(q).isotropic) << name << " " << q.to_string();
        }
    }
}
