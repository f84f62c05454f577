#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "dqup/linalg.hpp"

#ifdef DQUP_HAVE_EIGEN
#include <Eigen/Dense>
#endif

using dqup::linalg::Matrix;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = g(rng);
  return m;
}

}  // namespace

TEST(Linalg, CholeskySolvesSpdSystem) {
  std::mt19937_64 rng(1);
  const Matrix a = random_matrix(12, 5, rng);
  Matrix g = gram(a);
  std::vector<double> x_true{1, -2, 0.5, 3, -1};
  std::vector<double> b = multiply(g, x_true);
  std::vector<double> gg(g.data().begin(), g.data().end());
  ASSERT_TRUE(dqup::linalg::cholesky_solve_inplace(gg, b, 5));
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(b[i], x_true[i], 1e-10);
}

TEST(Linalg, CholeskyRejectsSingular) {
  Matrix g(2, 2, 1.0);  // [[1,1],[1,1]]
  std::vector<double> gg(g.data().begin(), g.data().end());
  std::vector<double> b{1, 1};
  EXPECT_FALSE(dqup::linalg::cholesky_solve_inplace(gg, b, 2));
}

TEST(Linalg, MinimumNormFallback) {
  // x + y = 2 (rank one): minimum-norm solution is (1, 1).
  const Matrix g(2, 2, 1.0);
  const std::vector<double> b{2, 2};
  const auto res = dqup::linalg::solve_normal_equations(g, b);
  EXPECT_TRUE(res.rank_deficient);
  EXPECT_NEAR(res.x[0], 1.0, 1e-10);
  EXPECT_NEAR(res.x[1], 1.0, 1e-10);
}

TEST(Linalg, NullSpace) {
  Matrix a(2, 3);
  a(0, 0) = 1;
  a(0, 1) = 1;
  a(1, 2) = 1;
  const Matrix ns = dqup::linalg::null_space(a);
  ASSERT_EQ(ns.cols(), 1u);
  EXPECT_NEAR(std::abs(ns(0, 0)), std::sqrt(0.5), 1e-10);
  EXPECT_NEAR(ns(0, 0), -ns(1, 0), 1e-10);
  EXPECT_NEAR(ns(2, 0), 0.0, 1e-10);
}

#ifdef DQUP_HAVE_EIGEN
TEST(Linalg, EigenOracleSymmetricEigen) {
  std::mt19937_64 rng(2);
  const Matrix a = random_matrix(9, 7, rng);
  const Matrix g = gram(a);
  const auto mine = dqup::linalg::symmetric_eigen(g);
  Eigen::MatrixXd eg(7, 7);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 7; ++j) eg(i, j) = g(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(eg);
  for (std::size_t k = 0; k < 7; ++k) EXPECT_NEAR(mine.values[k], es.eigenvalues()(k), 1e-9);
}

TEST(Linalg, EigenOracleSpectralNorm) {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 5; ++n) {
    const Matrix a = random_matrix(6 + n, 4, rng);
    Eigen::MatrixXd ea(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) ea(i, j) = a(i, j);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(ea);
    EXPECT_NEAR(dqup::linalg::spectral_norm(a), svd.singularValues()(0), 1e-9);
  }
}
#endif
