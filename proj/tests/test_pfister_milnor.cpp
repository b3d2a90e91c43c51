#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace wittlab;

namespace {

std::vector<std::string> coeffs(const DiagonalForm& q) { return q.coefficient_strings(); }

/// Random monomial with exponents in [-1, 1] and a unit from the square-class reps.
FieldElement random_generator(const FieldDescriptor& F, std::mt19937& rng) {
    std::vector<int> e(F.depth());
    for (auto& x : e) x = std::uniform_int_distribution<int>(-1, 1)(rng);
    Scalar u = std::uniform_int_distribution<int>(0, 1)(rng) ? F.base->one() : F.base->least_nonsquare();
    if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) u = F.base->neg(u);
    if (F.depth() == 0) return u;
    return tower_monomial(u, e);
}

FieldDescriptor random_tower(std::mt19937& rng) {
    static const char* bases[] = {"F3", "F5", "F7"};
    static const char* names[] = {"a", "b", "c"};
    std::string s = bases[std::uniform_int_distribution<int>(0, 2)(rng)];
    int depth = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int i = 0; i < depth; ++i) s += std::string("((") + names[i] + "))";
    return make_field(s);
}

/// Class vector (exponent parities, nonsquare bit) computed from a square table.
std::vector<int> class_bits(const FieldDescriptor& F, const FieldElement& a) {
    const auto& B = *F.base;
    std::set<std::int64_t> squares;
    for (const auto& x : B.elements())
        if (!B.is_zero(x)) squares.insert(B.index_of(B.mul(x, x)));
    std::vector<int> v;
    Scalar u = a.is_scalar() ? a.scalar() : a.monomial().scalar;
    if (a.is_monomial())
        for (int e : a.monomial().exponents) v.push_back(((e % 2) + 2) % 2);
    v.push_back(squares.count(B.index_of(u)) ? 0 : 1);
    return v;
}

}  // namespace

TEST(Pfister, Expansion) {
    auto F = make_field("F5((a))((b))");
    EXPECT_EQ(coeffs(pfister(PfisterSpec(F, parse_list(F, "a")))), (std::vector<std::string>{"1", "a"}));
    EXPECT_EQ(coeffs(pfister(PfisterSpec(F, parse_list(F, "a,b")))), (std::vector<std::string>{"1", "a", "b", "a*b"}));
    EXPECT_EQ(coeffs(pfister(PfisterSpec(F, {}))), (std::vector<std::string>{"1"}));
    EXPECT_THROW(PfisterSpec(F, {zero(F)}), input_error);
}

TEST(Pfister, TensorRecursion) {
    std::mt19937 rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        auto F = random_tower(rng);
        int n = std::uniform_int_distribution<int>(1, 4)(rng);
        std::vector<FieldElement> g;
        for (int i = 0; i < n; ++i) g.push_back(random_generator(F, rng));
        auto full = pfister(PfisterSpec(F, g)).coeffs;
        auto head = pfister(PfisterSpec(F, {g.begin(), g.end() - 1})).coeffs;
        std::vector<FieldElement> tensor = head;
        for (const auto& c : head) tensor.push_back(c * g.back());
        EXPECT_EQ(full, tensor);
    }
}

TEST(Pfister, CharPForm) {
    auto K = make_field("F3(t)");
    EXPECT_EQ(coeffs(char_p_form(PFormSpec(K, parse_list(K, "t"), 3))), (std::vector<std::string>{"1", "t", "t^2"}));
    auto Q = make_field("Q(t1,t2)");
    EXPECT_EQ(coeffs(char_p_form(PFormSpec(Q, parse_list(Q, "t1,t2"), 2))), (std::vector<std::string>{"1", "t1", "t2", "t1*t2"}));
    EXPECT_EQ(char_p_form(PFormSpec(Q, parse_list(Q, "t1"), 2)).degree, 2);
    EXPECT_THROW(PFormSpec(K, parse_list(K, "t"), 2), input_error);
    auto A = make_field("F5((a))((b))");
    auto g = parse_list(A, "a,2*b,a*b^-1");
    EXPECT_EQ(char_p_form(PFormSpec(make_field("Q(a,b)"), parse_list(make_field("Q(a,b)"), "a,b"), 2)).coefficient_strings(),
              pfister(PfisterSpec(make_field("Q(a,b)"), parse_list(make_field("Q(a,b)"), "a,b"))).coefficient_strings());
    // p = 2 form over a tower equals the Pfister form coefficient list
    auto T = make_field("AC0((a))((b))");
    auto gt = parse_list(T, "a,b,3*a*b");
    EXPECT_EQ(char_p_form(PFormSpec(T, gt, 2)).coeffs, pfister(PfisterSpec(T, gt)).coeffs);
}

TEST(Pfister, Hyperbolicity) {
    auto F = make_field("F3((t))");
    EXPECT_TRUE(is_hyperbolic_pfister(PfisterSpec(F, parse_list(F, "t,-t"))));
    auto A = make_field("AC0((t1))((t2))");
    EXPECT_FALSE(is_hyperbolic_pfister(PfisterSpec(A, parse_list(A, "t1,t2"))));
    auto F5 = make_field("F5");
    EXPECT_TRUE(is_hyperbolic_pfister(PfisterSpec(F5, parse_list(F5, "-1"))));
}

TEST(Pfister, SquareFactorsDoNotChangeHyperbolicity) {
    std::mt19937 rng(2);
    for (int trial = 0; trial < 80; ++trial) {
        auto F = random_tower(rng);
        int n = std::uniform_int_distribution<int>(1, 3)(rng);
        std::vector<FieldElement> g;
        for (int i = 0; i < n; ++i) g.push_back(random_generator(F, rng));
        bool h = is_hyperbolic_pfister(PfisterSpec(F, g));
        auto k = std::uniform_int_distribution<int>(0, n - 1)(rng);
        g[k] = g[k] * square(random_generator(F, rng));
        EXPECT_EQ(is_hyperbolic_pfister(PfisterSpec(F, g)), h);
    }
}

TEST(Linkage, Examples) {
    auto F = make_field("F3((t))");
    PfisterSpec s(F, parse_list(F, "t"));
    auto r = linkage_check(s, parse_element(F, "-t"));
    EXPECT_TRUE(r.represents_minus_a && r.hyperbolic && r.symbol_zero);
    r = linkage_check(s, parse_element(F, "-2"));
    EXPECT_TRUE(!r.represents_minus_a && !r.hyperbolic && !r.symbol_zero);
    r = linkage_check(s, parse_element(F, "-1"));
    EXPECT_TRUE(r.represents_minus_a && r.hyperbolic && r.symbol_zero);
    auto A = make_field("AC0((t))");
    EXPECT_THROW(linkage_check(PfisterSpec(A, parse_list(A, "t")), parse_element(A, "t")), unsupported_domain);
}

TEST(Linkage, RandomSpecsAgree) {
    std::mt19937 rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        auto F = random_tower(rng);
        int n = std::uniform_int_distribution<int>(1, 3)(rng);
        std::vector<FieldElement> g;
        for (int i = 0; i < n; ++i) g.push_back(random_generator(F, rng));
        auto r = linkage_check(PfisterSpec(F, g), random_generator(F, rng));
        EXPECT_TRUE(r.agree());
    }
}

TEST(Kummer, Classes) {
    auto F = make_field("F7((t))");
    EXPECT_EQ(kummer_class(F, parse_element(F, "3*t^2"), 2).vec, (std::vector<std::int64_t>{0, 1}));
    EXPECT_EQ(kummer_class(F, parse_element(F, "t"), 2).vec, (std::vector<std::int64_t>{1, 0}));
    EXPECT_EQ(kummer_class(F, parse_element(F, "4"), 2).vec, (std::vector<std::int64_t>{0, 0}));
    EXPECT_THROW(kummer_class(make_field("F5((t))"), parse_element(make_field("F5((t))"), "t"), 3), input_error);
    EXPECT_THROW(kummer_class(F, zero(F), 2), input_error);
    // bilinearity
    std::mt19937 rng(6);
    auto G = make_field("F13((a))((b))");
    for (std::int64_t ell : {2, 3}) {
        for (int trial = 0; trial < 50; ++trial) {
            auto x = random_generator(G, rng) * tower_monomial(G.base->from_int(std::uniform_int_distribution<int>(1, 12)(rng)), {1, 2});
            auto y = random_generator(G, rng) * tower_monomial(G.base->from_int(std::uniform_int_distribution<int>(1, 12)(rng)), {0, -1});
            auto kx = kummer_class(G, x, ell).vec, ky = kummer_class(G, y, ell).vec, kxy = kummer_class(G, x * y, ell).vec;
            for (std::size_t i = 0; i < kx.size(); ++i) EXPECT_EQ((kx[i] + ky[i]) % ell, kxy[i]);
        }
    }
}

TEST(CupRank, Verdicts) {
    EXPECT_EQ(cup_rank({{1, 0, 0}, {0, 1, 0}}, 2), CupVerdict::nonzero);
    EXPECT_EQ(cup_rank({{1, 0}, {2, 0}}, 3), CupVerdict::zero);
    EXPECT_EQ(cup_rank({{1}, {1}}, 2), CupVerdict::indeterminate);
    EXPECT_THROW(cup_rank({{1, 0}, {1}}, 2), input_error);
}

TEST(CupBar, Examples) {
    EXPECT_TRUE(cup_product_bar({2, 2, {{1, 0}, {0, 1}}}).nonzero);
    EXPECT_TRUE(cup_product_bar({2, 1, {{1}, {1}}}).nonzero);
    auto z = cup_product_bar({3, 2, {{1, 0}, {2, 0}}});
    EXPECT_FALSE(z.nonzero);
    EXPECT_EQ(z.bounding_cochain.size(), 9u);
    EXPECT_THROW(cup_product_bar({3, 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}, 100), input_error);
}

TEST(CupBar, MatchesCohomologyRing) {
    std::mt19937 rng(8);
    for (std::int64_t ell : {2, 3}) {
        for (int trial = 0; trial < 40; ++trial) {
            int m = std::uniform_int_distribution<int>(1, 2)(rng);
            int n = std::uniform_int_distribution<int>(1, 3)(rng);
            if (ell == 3 && m * (n - 1) > 4) continue;
            std::vector<std::vector<std::int64_t>> chars(n, std::vector<std::int64_t>(m));
            for (auto& c : chars)
                for (auto& x : c) x = std::uniform_int_distribution<std::int64_t>(0, ell - 1)(rng);
            EXPECT_EQ(cup_product_bar({ell, m, chars}).nonzero, oracle::cup_nonzero_ring(chars, ell));
        }
    }
}

TEST(Symbols, ResidueExamples) {
    auto F3 = make_field("F3((t))");
    auto r = symbol_residue(MilnorSymbol(F3, parse_list(F3, "2,t")));
    ASSERT_TRUE(r.tame);
    EXPECT_EQ(r.tame->to_string(), "{2}");
    r = symbol_residue(MilnorSymbol(F3, parse_list(F3, "t,t")));
    EXPECT_EQ(r.tame->to_string(), "{2}");
    EXPECT_FALSE(symbol_is_zero_mod2(MilnorSymbol(F3, parse_list(F3, "t,t"))));
    auto F5 = make_field("F5((t))");
    EXPECT_EQ(symbol_residue(MilnorSymbol(F5, parse_list(F5, "4,t"))).tame->to_string(), "{4}");
    EXPECT_TRUE(symbol_is_zero_mod2(MilnorSymbol(F5, parse_list(F5, "4,t"))));
    EXPECT_FALSE(symbol_residue(MilnorSymbol(F5, parse_list(F5, "2,3"))).tame);
    EXPECT_THROW(symbol_is_zero_mod2(MilnorSymbol(make_field("AC0((t))"), parse_list(make_field("AC0((t))"), "t"))), unsupported_domain);
}

TEST(Symbols, EnMap) {
    auto F = make_field("F3((t))");
    EXPECT_EQ(e_n_map(PfisterSpec(F, parse_list(F, "t"))).to_string(), "{2*t}");
    EXPECT_EQ(e_n_map(PfisterSpec(F, parse_list(F, "1"))).to_string(), "{2}");
}

TEST(Symbols, MatchBasisExpansionOracle) {
    std::mt19937 rng(10);
    for (int trial = 0; trial < 300; ++trial) {
        auto F = random_tower(rng);
        int n = std::uniform_int_distribution<int>(1, 4)(rng);
        std::vector<FieldElement> e;
        std::vector<std::vector<int>> cls;
        for (int i = 0; i < n; ++i) {
            e.push_back(random_generator(F, rng));
            cls.push_back(class_bits(F, e.back()));
        }
        bool delta = F.base->order() % 4 == 3;
        oracle::SymbolAlgebra alg{static_cast<int>(F.depth()), delta};
        MilnorSymbol s(F, e);
        EXPECT_EQ(symbol_is_zero_mod2(s), alg.symbol(cls).empty()) << s.to_string() << " over " << F.to_string();
        // order independence
        auto p = e;
        std::shuffle(p.begin(), p.end(), rng);
        EXPECT_EQ(symbol_is_zero_mod2(MilnorSymbol(F, p)), symbol_is_zero_mod2(s));
    }
}

TEST(Symbols, SteinbergRelation) {
    std::mt19937 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        auto F = random_tower(rng);
        auto a = random_generator(F, rng);
        std::vector<FieldElement> e{a, -a};
        int extra = std::uniform_int_distribution<int>(0, 2)(rng);
        for (int i = 0; i < extra; ++i) e.push_back(random_generator(F, rng));
        std::shuffle(e.begin(), e.end(), rng);
        EXPECT_TRUE(symbol_is_zero_mod2(MilnorSymbol(F, e)));
    }
}

TEST(Symbols, MilnorAgreementWithPfister) {
    std::mt19937 rng(14);
    for (int trial = 0; trial < 200; ++trial) {
        auto F = random_tower(rng);
        int n = std::uniform_int_distribution<int>(1, 3)(rng);
        std::vector<FieldElement> g;
        for (int i = 0; i < n; ++i) g.push_back(random_generator(F, rng));
        PfisterSpec spec(F, g);
        EXPECT_EQ(is_hyperbolic_pfister(spec), symbol_is_zero_mod2(e_n_map(spec)));
    }
}

TEST(Vcd, Detection) {
    auto r = detect_vcd(make_field("F5((t))"), 2);
    EXPECT_EQ(r.m, 2u);
    ASSERT_EQ(r.witness.size(), 2u);
    EXPECT_EQ(to_string(make_field("F5((t))"), r.witness[1]), "2");
    auto s = detect_vcd(make_field("F5((u1))((u2))"), 2, 1);
    EXPECT_EQ(s.m, 3u);
    EXPECT_TRUE(s.consistent);
    EXPECT_THROW(detect_vcd(make_field("F7"), 3), input_error);
    EXPECT_THROW(detect_vcd(make_field("F5((t))"), 3), input_error);
    // any further class keeps the rank at most m
    auto F = make_field("F13((a))((b))");
    auto v = detect_vcd(F, 3);
    std::mt19937 rng(16);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<std::int64_t>> rows;
        for (const auto& k : v.classes) rows.push_back(k.vec);
        rows.push_back(kummer_class(F, random_generator(F, rng), 3).vec);
        EXPECT_LE(rank_mod(rows, 3), v.m);
    }
}
