#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace wittlab;

namespace {

Presentation with_candidate(const char* field, const char* cand) {
    Presentation P(make_field(field));
    P.candidate = parse_list(P.field, cand);
    return P;
}

std::string detail(const Verdict& v, const std::string& key) {
    for (const auto& [k, val] : v.details)
        if (k == key) return val;
    return {};
}

std::string monomial_text(const std::vector<int>& e) {
    std::string s = "1";
    for (std::size_t i = 0; i < e.size(); ++i) s += "*x" + std::to_string(i + 1) + "^" + std::to_string(e[i]);
    return s;
}

}  // namespace

TEST(Detector, TdegExamples) {
    auto v = tdeg(Presentation(make_field("F3(x1,x2)")));
    EXPECT_EQ(v.tdeg, 2u);
    EXPECT_EQ(v.method, "p-basis");
    EXPECT_TRUE(v.certified);
    EXPECT_NE(v.witness.find("9x9"), std::string::npos);

    v = tdeg(Presentation(make_field("AC0(x1)")));
    EXPECT_EQ(v.tdeg, 1u);
    EXPECT_EQ(v.method, "pfister-tower");
    EXPECT_EQ(v.witness, "<1,x1>");
    EXPECT_TRUE(v.certified);

    v = tdeg(Presentation(make_field("Q(x)")));
    EXPECT_EQ(v.tdeg, 1u);
    EXPECT_EQ(v.method, "arithmetic-model");
    EXPECT_EQ(v.witness, "<<x,5,2>>");
    EXPECT_TRUE(v.certified);

    EXPECT_THROW(Presentation(make_field("F3")), input_error);
}

TEST(Detector, CertifyExamples) {
    auto v = certify_basis(with_candidate("F2(x)", "x^3"));
    EXPECT_TRUE(v.certified);
    EXPECT_EQ(v.method, "p-basis");
    v = certify_basis(with_candidate("Q(x1,x2)", "x1+x2,x1*x2"));
    EXPECT_TRUE(v.certified);
    EXPECT_EQ(v.method, "jacobian");
    EXPECT_EQ(v.witness, "jacobian determinant x1-x2");
    v = certify_basis(with_candidate("Q(x1,x2)", "x1,x1^2"));
    EXPECT_FALSE(v.certified);
    EXPECT_EQ(detail(v, "jacobian_rank"), "1");
    EXPECT_THROW(certify_basis(with_candidate("Q(x1,x2)", "x1")), input_error);
    EXPECT_THROW(certify_basis(Presentation(make_field("Q(x)"))), input_error);
}

TEST(Detector, MonomialCandidatesAgreeAcrossMethods) {
    std::mt19937 rng(71);
    for (std::int64_t p : {3, 5}) {
        for (int d = 1; d <= 2; ++d) {
            std::string fp = "F" + std::to_string(p) + (d == 1 ? "(x1)" : "(x1,x2)");
            std::string q = d == 1 ? "Q(x1)" : "Q(x1,x2)";
            int checked = 0;
            for (int trial = 0; trial < 60 && checked < 20; ++trial) {
                std::vector<std::vector<int>> A(d, std::vector<int>(d));
                for (auto& row : A)
                    for (auto& x : row) x = std::uniform_int_distribution<int>(0, 4)(rng);
                std::int64_t det = d == 1 ? A[0][0] : A[0][0] * A[1][1] - A[0][1] * A[1][0];
                if (det != 0 && det % p == 0) continue;  // inseparable over F_p
                std::string cand;
                for (int i = 0; i < d; ++i) cand += (i ? "," : "") + monomial_text(A[i]);
                auto vp = certify_basis(with_candidate(fp.c_str(), cand.c_str()));
                auto vq = certify_basis(with_candidate(q.c_str(), cand.c_str()));
                EXPECT_EQ(vp.method, "p-basis");
                EXPECT_EQ(vq.method, "jacobian");
                EXPECT_EQ(vp.certified, vq.certified) << fp << " " << cand;
                EXPECT_EQ(vp.certified, det != 0);
                ++checked;
            }
        }
    }
}

TEST(Detector, TranslatedWitnessesStayAnisotropic) {
    std::mt19937 rng(73);
    for (const char* field : {"AC0(x1)", "AC0(x1,x2)", "Q(x1)", "Q(x1,x2)"}) {
        for (int trial = 0; trial < 8; ++trial) {
            Presentation P(make_field(field));
            std::vector<Scalar> a;
            std::string cand;
            for (std::size_t i = 0; i < P.d(); ++i) {
                int c = std::uniform_int_distribution<int>(-9, 9)(rng);
                a.push_back(P.field.base->from_int(c));
                cand += (i ? "," : "") + std::string("x") + std::to_string(i + 1) + "-(" + std::to_string(c) + ")";
            }
            P.translation = a;
            auto v = tdeg(P);
            EXPECT_TRUE(v.certified) << field << " " << v.witness;
            auto c = certify_basis(with_candidate(field, cand.c_str()));
            EXPECT_TRUE(c.certified);
            EXPECT_FALSE(detail(c, "pfister_witness").empty()) << field << " " << cand;
        }
    }
}

TEST(Detector, ExtraCandidatesNeverCertify) {
    std::mt19937 rng(79);
    auto random_element = [&](const FieldDescriptor& K) {
        FieldElement f = zero(K);
        for (int k = 0; k < 3; ++k) {
            FieldElement m = from_int(K, std::uniform_int_distribution<int>(1, 4)(rng));
            for (std::size_t v = 0; v < K.function_vars.size(); ++v) m = m * pow(variable(K, v), std::uniform_int_distribution<int>(0, 3)(rng));
            f = f + m;
        }
        return f.is_zero() ? one(K) : f;
    };
    for (const char* field : {"F3(x1,x2)", "F5(x1)", "Q(x1,x2)", "Q(x1)"}) {
        auto K = make_field(field);
        for (int trial = 0; trial < 15; ++trial) {
            std::vector<FieldElement> t;
            for (std::size_t i = 0; i <= K.function_vars.size(); ++i) t.push_back(random_element(K));
            Presentation P(K);
            P.candidate = t;
            EXPECT_THROW(certify_basis(P), input_error);
            if (K.characteristic() > 0) {
                EXPECT_FALSE(is_p_independent(K, t).independent);
            } else {
                std::vector<std::vector<RatFunc>> J;
                for (const auto& e : t) {
                    std::vector<RatFunc> row;
                    for (std::size_t j = 0; j < K.function_vars.size(); ++j) row.push_back(detector_detail::partial(e.ratfunc(), j));
                    J.push_back(row);
                }
                EXPECT_LE(fraction_free_pivots(clear_denominators(J)).size(), K.function_vars.size());
            }
        }
    }
}
