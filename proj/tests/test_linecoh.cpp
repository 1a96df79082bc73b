#include <gtest/gtest.h>

#include <random>

#include "horrocks/linecoh.hpp"

using namespace horrocks;

namespace {
const Fp::Field F;
using Form = BiForm<Fp>;
Form P(const std::string& s) { return parse_form<Fp>(s, F); }
}  // namespace

TEST(Kunneth, EulerCharacteristicAndSerreDuality) {
  for (int a = -5; a <= 5; ++a)
    for (int b = -5; b <= 5; ++b) {
      const Twist t{a, b};
      EXPECT_EQ(kunneth_dim(0, t) - kunneth_dim(1, t) + kunneth_dim(2, t), (a + 1) * (b + 1));
      for (int i = 0; i <= 2; ++i) {
        EXPECT_EQ(kunneth_dim(i, t), kunneth_dim(2 - i, Twist{-2 - a, -2 - b}));
        EXPECT_EQ(coh_basis(i, t).size(), static_cast<std::size_t>(kunneth_dim(i, t)));
      }
    }
}

TEST(Kunneth, AcmLineBundlesAreTheKnorrerTypes) {
  for (int a = -5; a <= 5; ++a)
    for (int b = -5; b <= 5; ++b) {
      bool vanishing = true;
      for (int d = -8; d <= 8; ++d) vanishing = vanishing && kunneth_dim(1, Twist{a + d, b + d}) == 0;
      EXPECT_EQ(vanishing, is_acm({a, b})) << a << "," << b;
    }
}

TEST(Kunneth, SpinorValues) {
  for (int d = -4; d <= 4; ++d) {
    EXPECT_EQ(kunneth_dim(1, Twist{-2 + d, d}), d == 0 ? 1 : 0);
    EXPECT_EQ(kunneth_dim(1, Twist{-3 + d, d}), (d == 0 || d == 1) ? 2 : 0);
  }
  EXPECT_EQ(kunneth_dim(0, Sigma1(0)), 2);
  EXPECT_EQ(kunneth_dim(0, O(1)), 4);
}

TEST(CohBasis, ExplicitMonomials) {
  auto b1 = coh_basis(1, {0, -2});
  ASSERT_EQ(b1.size(), 1u);
  EXPECT_EQ(b1.monomials[0], (CohMonomial{0, 0, -1, -1}));
  auto b2 = coh_basis(2, {-2, -2});
  ASSERT_EQ(b2.size(), 1u);
  EXPECT_EQ(b2.monomials[0], (CohMonomial{-1, -1, -1, -1}));
  EXPECT_EQ(coh_basis(0, {-1, 5}).size(), 0u);
}

TEST(CohAction, TruncationRule) {
  // u on H^1(O(0,-3)): basis u^-1 v^-2, u^-2 v^-1.
  auto b = coh_basis(1, {0, -3});
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b.monomials[0], (CohMonomial{0, 0, -1, -2}));
  auto m = coh_action(P("u"), 1, {0, -3});
  ASSERT_EQ(m.rows(), 1u);
  EXPECT_TRUE(m(0, 0).is_zero());
  EXPECT_EQ(m(0, 1), F.one());
  EXPECT_EQ(coh_action(P("s*u"), 2, {-2, -2}).rows(), 0u);
  EXPECT_EQ(coh_action(Form::constant(F.one()), 1, {-3, 2}), (Matrix<Fp>::identity(6, F)));
}

TEST(CohAction, FunctorialityAndQuadricRelation) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    const Twist t{trial % 7 - 4, (trial * 3) % 7 - 4};
    Form f = Form::random({trial % 2, 1}, F, rng);
    Form g = Form::random({1, trial % 3}, F, rng);
    for (int i = 0; i <= 2; ++i)
      EXPECT_EQ(coh_action(g, i, t + f.degree()) * coh_action(f, i, t), coh_action(g * f, i, t));
  }
  for (int d = -4; d <= 2; ++d)
    for (int i = 0; i <= 2; ++i) {
      const Twist t{d, d - 1};
      EXPECT_EQ(coh_action(Form::x(3, F), i, t + O(1)) * coh_action(Form::x(0, F), i, t),
                coh_action(Form::x(2, F), i, t + O(1)) * coh_action(Form::x(1, F), i, t));
    }
}

TEST(SplitBundle, DimensionsAndEuler) {
  SplitBundle four{O(-1), O(-1), O(-1), O(-1)};
  EXPECT_EQ(split_dim(0, four, BiDegree{1, 0}), 0);
  SplitBundle a{Sigma2(0), Sigma2(0), Sigma1(0), Sigma1(0)};
  EXPECT_EQ(split_dim(0, a, BiDegree{0, 0}), 8);
  EXPECT_EQ(euler_char(SplitBundle{O(0)}), 1);
  EXPECT_EQ(euler_char(SplitBundle{O(-1)}), 0);
  EXPECT_EQ(a.chi() - (SplitBundle{O(1), O(1)}).chi(), 0);
  EXPECT_EQ(split_h(1, SplitBundle{Twist{0, -2}}, BiDegree{0, 0}).size(), 1u);
}

TEST(FormMatrix, CompositionAndInducedMaps) {
  std::mt19937_64 rng(4);
  SplitBundle a{Twist{-1, 0}, Twist{0, -1}}, b{O(0)}, c{Twist{1, 1}, Twist{0, 2}};
  FormMatrix<Fp> g(a, b), h(b, c);
  g.set(0, 0, P("s"));
  g.set(0, 1, P("v"));
  h.set(0, 0, Form::random({1, 1}, F, rng));
  h.set(1, 0, Form::random({0, 2}, F, rng));
  const FormMatrix<Fp> hg = h * g;
  EXPECT_EQ(hg(0, 0), h(0, 0) * P("s"));
  EXPECT_THROW(g.set(0, 0, P("u")), Error);
  for (int i = 0; i <= 2; ++i)
    for (int e = -3; e <= 2; ++e) {
      const BiDegree sh{e, e - 1};
      EXPECT_EQ(induced_h(h, i, sh) * induced_h(g, i, sh), induced_h(hg, i, sh));
    }
  const FormMatrix<Fp> gt = g.transpose();
  EXPECT_EQ(gt.src(), b.dual());
  EXPECT_EQ(gt(1, 0), P("v"));
}

TEST(SheafSurjective, Examples) {
  FormMatrix<Fp> st(SplitBundle{Twist{-1, 0}, Twist{-1, 0}}, SplitBundle{O(0)});
  st.set(0, 0, P("s"));
  st.set(0, 1, P("t"));
  EXPECT_TRUE(sheaf_surjective(st).surjective);
  FormMatrix<Fp> s(SplitBundle{Twist{-1, 0}}, SplitBundle{O(0)});
  s.set(0, 0, P("s"));
  EXPECT_FALSE(sheaf_surjective(s).surjective);
  FormMatrix<Fp> g(SplitBundle{Sigma2(0), Sigma2(0), Sigma1(0), Sigma1(0)}, SplitBundle{O(1), O(1)});
  const char* rows[2][4] = {{"s", "t", "u", "v"}, {"-t", "s-2*t", "v", "0"}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 4; ++j) g.set(i, j, parse_form<Fp>(rows[i][j], F, nullptr));
  EXPECT_TRUE(sheaf_surjective(g).surjective);
}
