#include <gtest/gtest.h>

#include <random>

#include "horrocks/fixtures.hpp"
#include "horrocks/random.hpp"

using namespace horrocks;

namespace {
const Fp::Field F;

FinLengthModule<Fp> k0() { return FinLengthModule<Fp>::with_dims(0, {1}); }

Matrix<Fp> random_invertible(std::size_t n, std::mt19937_64& rng) {
  while (true) {
    std::vector<Vec<Fp>> cols;
    for (std::size_t i = 0; i < n; ++i) cols.push_back(random_vector<Fp>(n, F, rng));
    Matrix<Fp> m = Matrix<Fp>::from_columns(n, cols);
    if (rank(m) == n) return m;
  }
}

/// The same module written in a random basis of each piece.
FinLengthModule<Fp> conjugate(const FinLengthModule<Fp>& M, std::mt19937_64& rng) {
  std::vector<Matrix<Fp>> g, ginv;
  for (int d = M.lo; d <= M.hi; ++d) {
    g.push_back(random_invertible(M.dim(d), rng));
    ginv.push_back(*solve_many(g.back(), Matrix<Fp>::identity(M.dim(d), F)));
  }
  FinLengthModule<Fp> N = M;
  for (int k = 0; k < 4; ++k)
    for (int d = M.lo; d < M.hi; ++d) {
      const auto i = static_cast<std::size_t>(d - M.lo);
      N.set_op(k, d, g[i + 1] * M.op(k, d) * ginv[i]);
    }
  return N;
}
}  // namespace

TEST(Validate, DetectsRelationFailures) {
  auto M = FinLengthModule<Fp>::with_dims(0, {1, 1});
  EXPECT_TRUE(validate(M).empty());
  Matrix<Fp> one = Matrix<Fp>::identity(1, F);
  M.set_op(0, 0, one);
  EXPECT_TRUE(validate(M).empty());
  auto N = FinLengthModule<Fp>::with_dims(0, {1, 1, 1});
  N.set_op(0, 0, one);
  N.set_op(3, 1, one);  // x3 x0 != 0 = x1 x2
  EXPECT_FALSE(validate(N).empty());
  EXPECT_THROW(require_valid(N), Error);
  EXPECT_THROW(M.set_op(0, 0, Matrix<Fp>(2, 1)), Error);
}

TEST(MinimalPresentation, PointModule) {
  const auto mp = minimal_presentation(k0(), F);
  ASSERT_EQ(mp.gens.size(), 1u);
  EXPECT_EQ(mp.L0(), SplitBundle({O(0)}));
  EXPECT_EQ(mp.L1(), SplitBundle({O(-1), O(-1), O(-1), O(-1)}));
  ASSERT_EQ(mp.psi().cols(), 4u);
  std::vector<BiForm<Fp>> entries;
  for (std::size_t j = 0; j < 4; ++j) entries.push_back(mp.psi()(0, j));
  for (int k = 0; k < 4; ++k)
    EXPECT_NE(std::find(entries.begin(), entries.end(), BiForm<Fp>::x(k, F)), entries.end()) << "x" << k;
}

TEST(SigmaModules, PointModuleHasTwoDimensionalSpinorPieces) {
  const auto T = sigma_modules(k0(), F);
  EXPECT_EQ(T.dim(Family::M00, 0), 1u);
  EXPECT_EQ(T.dim(Family::M10, 0), 2u);
  EXPECT_EQ(T.dim(Family::M01, 0), 2u);
  for (int d = -3; d <= 3; ++d)
    if (d != 0)
      for (Family fam : {Family::M00, Family::M10, Family::M01}) EXPECT_EQ(T.dim(fam, d), 0u) << d;
  EXPECT_EQ(socle_subspace(T, Family::M10, F).total_dim(), 2u);
  EXPECT_EQ(socle_subspace(T, Family::M01, F).total_dim(), 2u);
}

TEST(SigmaModules, DiagonalPieceIsTheModule) {
  for (const auto& n : fixture_names()) {
    const auto P = *fixture<Fp>(n, F).gamma;
    const auto M = module_from_bundle(P, F);
    const auto T = sigma_modules(M, F);
    for (int d = -3; d <= 3; ++d) {
      EXPECT_EQ(static_cast<long>(M.dim(d)), cohomology_dims(P, {d, d})[1]) << n;
      EXPECT_EQ(T.dim(Family::M00, d), M.dim(d)) << n;
    }
  }
}

TEST(SigmaModules, CrossOperatorsSatisfyTheQuadricRelation) {
  std::mt19937_64 rng(4);
  const auto M = random_module<Fp>({{0, 2}, {1, 2}}, F, rng);
  const auto T = sigma_modules(M, F);
  const auto s = BiForm<Fp>::s(F), t = BiForm<Fp>::t(F), u = BiForm<Fp>::u(F), v = BiForm<Fp>::v(F);
  for (int d = T.lo; d <= T.hi; ++d) {
    // M00_d -> M00_{d+1} via M10_d: (u after s) equals x0 on the module
    const Matrix<Fp> us = T.map(Family::M10, d, u, F) * T.map(Family::M00, d, s, F);
    const Matrix<Fp> su = T.map(Family::M01, d, s, F) * T.map(Family::M00, d, u, F);
    EXPECT_EQ(us, su);
    const Matrix<Fp> vt = T.map(Family::M10, d, v, F) * T.map(Family::M00, d, t, F);
    const Matrix<Fp> tv = T.map(Family::M01, d, t, F) * T.map(Family::M00, d, v, F);
    EXPECT_EQ(vt, tv);
  }
}

TEST(ModuleFromBundle, KernelOfSTGivesThePointModule) {
  const auto M = module_from_bundle(*fixture<Fp>("o-20", F).gamma, F);
  EXPECT_EQ(M.lo, 0);
  EXPECT_EQ(M.hi, 0);
  EXPECT_EQ(M.dim(0), 1u);
}

TEST(ModuleFromBundle, LePotierBundleIsTwoDimensionalInDegreeMinusOne) {
  const auto M = module_from_bundle(*fixture<Fp>("lepotier", F).gamma, F);
  EXPECT_EQ(M.total_dim(), 2u);
  EXPECT_EQ(M.dim(-1), 2u);
}

TEST(Properties, RandomModulesHaveRequestedDims) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 10; ++i) {
    const auto M = random_module<Fp>(-1, 3, 3, F, rng);
    EXPECT_TRUE(validate(M).empty());
    for (int d = M.lo; d <= M.hi; ++d) EXPECT_GE(M.dim(d), 1u);
  }
  std::mt19937_64 a(5), b(5);
  const auto Ma = random_module<Fp>({{0, 2}, {1, 1}}, F, a);
  const auto Mb = random_module<Fp>({{0, 2}, {1, 1}}, F, b);
  for (int k = 0; k < 4; ++k) EXPECT_EQ(Ma.op(k, 0), Mb.op(k, 0));
}

TEST(Properties, PresentationReproducesTheModule) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 8; ++i) {
    const auto M = random_module<Fp>(-1, 3, 3, F, rng);
    const auto mp = minimal_presentation(M, F);
    EXPECT_TRUE(sheaf_surjective(mp.psi()).surjective);
    const auto T = sigma_modules(mp, M.lo, M.hi, F);
    for (int d = M.lo; d <= M.hi; ++d) EXPECT_EQ(T.dim(Family::M00, d), M.dim(d));
  }
}

TEST(Properties, IsomorphismFoundAfterBasisChange) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 6; ++i) {
    const auto M = random_module<Fp>(0, 2, 3, F, rng);
    const auto N = conjugate(M, rng);
    const auto phi = module_iso(M, N, F, rng);
    ASSERT_TRUE(phi.has_value());
    EXPECT_TRUE(is_invertible(*phi));
    for (int k = 0; k < 4; ++k)
      for (int d = M.lo; d < M.hi; ++d) EXPECT_EQ(phi->at(d + 1) * M.op(k, d), N.op(k, d) * phi->at(d));
  }
}

TEST(ModuleIso, DistinguishesNonIsomorphicModules) {
  std::mt19937_64 rng(2);
  // k + k(-1) with all operators zero, versus x1 mapping degree 0 onto degree 1
  auto A = FinLengthModule<Fp>::with_dims(0, {1, 1});
  auto B = FinLengthModule<Fp>::with_dims(0, {1, 1});
  B.set_op(1, 0, Matrix<Fp>::identity(1, F));
  EXPECT_FALSE(module_iso(A, B, F, rng).has_value());
  EXPECT_FALSE(module_iso(k0(), FinLengthModule<Fp>::with_dims(1, {1}), F, rng).has_value());
  EXPECT_TRUE(hom_space(A, B, F).size() >= 1u);
}

TEST(Socle, SubspacesAreAnnihilated) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 6; ++i) {
    const auto M = random_module<Fp>(-1, 3, 2, F, rng);
    const auto T = sigma_modules(M, F);
    for (Family fam : {Family::M10, Family::M01}) {
      const auto S = socle_subspace(T, fam, F);
      EXPECT_TRUE(in_socle(T, S, F));
      const auto R = random_socle_subspace(T, fam, 2, F, rng);
      EXPECT_TRUE(in_socle(T, R, F));
    }
  }
}
