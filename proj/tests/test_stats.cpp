#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "colscale/errors.hpp"
#include "colscale/features.hpp"
#include "colscale/reference_data.hpp"
#include "colscale/stats.hpp"

using namespace col;

namespace {

Matrix reference_raw() {
  Matrix m;
  for (const auto& fv : reference_feature_vectors()) m.append_row(fv.values);
  return m;
}

std::vector<int> reference_y() {
  std::vector<int> y;
  for (const auto& fv : reference_feature_vectors()) y.push_back(*fv.label == ColClass::literacy ? 1 : 0);
  return y;
}

Matrix random_matrix(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Matrix m(n, k);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < k; ++c) m(r, c) = nd(rng) * static_cast<double>(c + 1) + static_cast<double>(c);
  return m;
}

std::vector<std::string> names(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back("c" + std::to_string(i));
  return out;
}

}  // namespace

// Frozen values from independent calculators (numpy / statsmodels / sklearn).

TEST(Oracle, ReferenceColumnMoments) {
  const auto s = standardize(reference_raw(), feature_names());
  const double means[] = {204.841666666667, 144.65, 3.1375, 5.558333333333, 16.858333333333,
                          345.208333333333, 244.541666666667, 3.5, 25.420833333333};
  const double sds[] = {82.203547757313, 49.637905542707, 0.548340298841, 1.033971577086, 3.731389002622,
                        267.376915478049, 107.522857712003, 5.004248195284, 45.944649481438};
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    EXPECT_NEAR(s.col_means[i], means[i], 1e-9);
    EXPECT_NEAR(s.col_sds[i], sds[i], 1e-9);
  }
}

TEST(Oracle, ReferencePca) {
  const auto s = standardize(reference_raw(), feature_names());
  const auto p = pca(s);
  EXPECT_NEAR(p.explained_ratio[0], 0.51689, 1e-5);
  EXPECT_NEAR(p.explained_ratio[1], 0.17019, 1e-5);
  // Largest-magnitude entry positive: the raw PC1 has the pronoun block positive.
  const double pc1[] = {0.26443, 0.25262, 0.26279, 0.39326, 0.36895, -0.40616, -0.40145, -0.33878, -0.25599};
  for (std::size_t i = 0; i < kFeatureCount; ++i) EXPECT_NEAR(std::abs(p.loadings(i, 0)), std::abs(pc1[i]), 1e-5);
}

TEST(Oracle, Pearson) {
  const auto m = reference_raw();
  const auto c = pearson(m, feature_names());
  EXPECT_NEAR(c.r(0, 2), 0.6723000026669819, 1e-12);
  EXPECT_NEAR(c.r(5, 6), 0.7474085461854117, 1e-12);
  EXPECT_NEAR(c.r(4, 5), -0.6507379595230356, 1e-12);
}

TEST(Oracle, HandMatrixEigenvalues) {
  const auto m = Matrix::from_rows({{1, 2}, {2, 1}, {3, 5}});
  const auto p = pca(standardize(m, names(2)));
  const double r = 0.7205766921228921;
  EXPECT_NEAR(p.eigenvalues[0], 1 + r, 1e-12);
  EXPECT_NEAR(p.eigenvalues[1], 1 - r, 1e-12);
}

TEST(Oracle, LrTestSentenceLength) {
  const auto m = reference_raw();
  const auto x = m.column(static_cast<std::size_t>(Feature::sentence_length));
  const auto y = reference_y();
  const auto r = lr_test(x, y);
  EXPECT_FALSE(r.separated);
  EXPECT_NEAR(r.null_deviance, 31.755035431583142, 1e-9);
  EXPECT_NEAR(r.lr, 25.917491508831116, 1e-6);
  EXPECT_NEAR(r.p, 3.5633e-07, 1e-10);
  EXPECT_NEAR(r.r2_nagelkerke, 0.90005, 1e-5);
  EXPECT_NEAR(r.intercept, -40.1077, 1e-3);
  EXPECT_NEAR(r.slope, 2.66759, 1e-4);
}

TEST(Oracle, LrTestAllColumns) {
  const double lr[] = {4.72539, 12.04860, 4.63119, 16.78933, 25.91749, 28.52558, 26.91159, 22.37729, 20.28483};
  const double r2[] = {0.24359, 0.53795, 0.23919, 0.68583, 0.90005, 0.94772, 0.91884, 0.82648, 0.77761};
  const auto m = reference_raw();
  const auto y = reference_y();
  for (std::size_t j = 0; j < kFeatureCount; ++j) {
    const auto r = lr_test(m.column(j), y);
    EXPECT_NEAR(r.lr, lr[j], 1e-4) << feature_name(kAllFeatures[j]);
    EXPECT_NEAR(r.r2_nagelkerke, r2[j], 1e-5) << feature_name(kAllFeatures[j]);
  }
  EXPECT_NEAR(lr_test(m.column(0), y).p, 0.02972, 1e-5);
}

TEST(Oracle, NullDevianceP) { EXPECT_NEAR(chi2_sf_df1(31.755035431583142), 1.7489523e-08, 1e-14); }

TEST(Oracle, Nagelkerke) {
  const double d0 = 31.755035431583142;
  EXPECT_NEAR(nagelkerke_r2(15.5, d0, 24), 0.64846, 1e-5);
  EXPECT_NEAR(nagelkerke_r2(18.3, d0, 24), 0.72714, 1e-5);
  EXPECT_NEAR(nagelkerke_r2(23.1, d0, 24), 0.84239, 1e-5);
  EXPECT_NEAR(nagelkerke_r2(d0, d0, 24), 1.0, 1e-12);
}

TEST(Oracle, Quantiles) {
  const std::vector<double> v{4, 1, 3, 2};
  EXPECT_DOUBLE_EQ(quantile(v, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(quantile(v, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile(v, 0.75), 3.25);
  EXPECT_DOUBLE_EQ(quantile({5}, 0.3), 5);
  EXPECT_THROW(quantile({}, 0.5), ArgumentError);
}

TEST(Oracle, KmeansReferenceSplit) {
  const auto s = standardize(reference_raw(), feature_names());
  const auto y = reference_y();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto km = kmeans2(s.data, kDefaultRestarts, seed);
    // Row 0 (a D text) is cluster 0, so literacy rows map to 0.
    for (std::size_t i = 0; i < y.size(); ++i) EXPECT_EQ(km.assignments[i], 1 - y[i]) << "seed " << seed;
  }
}

// Properties.

TEST(StatsProperty, StandardizationMoments) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    const auto m = random_matrix(rng, 5 + rng() % 40, 1 + rng() % 8);
    const auto s = standardize(m, names(m.cols()));
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const auto col = s.data.column(c);
      EXPECT_NEAR(mean(col), 0.0, 1e-9);
      EXPECT_NEAR(population_sd(col), 1.0, 1e-9);
      EXPECT_GT(s.col_sds[c], 0.0);
    }
  }
}

TEST(StatsProperty, StandardizeRejectsConstantColumn) {
  auto m = Matrix::from_rows({{1, 5}, {2, 5}, {3, 5}});
  try {
    standardize(m, {"a", "flat"});
    FAIL();
  } catch (const DegenerateColumnError& e) {
    EXPECT_EQ(e.column(), "flat");
  }
  EXPECT_THROW(standardize(Matrix::from_rows({{1.0}}), {"a"}), ArgumentError);
  EXPECT_THROW(standardize(Matrix::from_rows({{1.0}, {NAN}}), {"a"}), NumericError);
}

TEST(StatsProperty, PcaOrthonormalityAndReconstruction) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    const std::size_t k = 2 + rng() % 8;
    const auto m = random_matrix(rng, k + 3 + rng() % 30, k);
    const auto s = standardize(m, names(k));
    const auto p = pca(s);
    const auto gram = p.loadings.transpose() * p.loadings;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) EXPECT_NEAR(gram(i, j), i == j ? 1.0 : 0.0, 1e-8);
    EXPECT_NEAR(std::accumulate(p.eigenvalues.begin(), p.eigenvalues.end(), 0.0), static_cast<double>(k), 1e-8);
    EXPECT_NEAR(std::accumulate(p.explained_ratio.begin(), p.explained_ratio.end(), 0.0), 1.0, 1e-9);
    EXPECT_TRUE(std::is_sorted(p.eigenvalues.rbegin(), p.eigenvalues.rend()));

    const auto scores = project(p, s.data);
    for (std::size_t c = 0; c < k; ++c) {
      const auto col = scores.column(c);
      EXPECT_NEAR(mean(col), 0.0, 1e-8);
      const double var = population_sd(col) * population_sd(col);
      EXPECT_NEAR(var, p.eigenvalues[c], 1e-6);
      // Canonical sign: the largest-magnitude loading (lowest index on ties) is positive.
      double top = 0;
      for (std::size_t i = 0; i < k; ++i) top = std::max(top, std::abs(p.loadings(i, c)));
      for (std::size_t i = 0; i < k; ++i) {
        if (std::abs(p.loadings(i, c)) < top - 1e-12) continue;
        EXPECT_GT(p.loadings(i, c), 0.0);
        break;
      }
    }
    const auto back = scores * p.loadings.transpose();
    for (std::size_t r = 0; r < s.data.rows(); ++r)
      for (std::size_t c = 0; c < k; ++c) EXPECT_NEAR(back(r, c), s.data(r, c), 1e-8);
  }
}

TEST(StatsProperty, PcaAffineInvariance) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> scale(0.01, 100.0), shift(-50, 50);
  const auto raw = reference_raw();
  const auto base = pca(standardize(raw, feature_names()));
  const auto base_scores = project(base, standardize(raw, feature_names()).data);
  for (int t = 0; t < 10; ++t) {
    Matrix m = raw;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const double a = scale(rng), b = shift(rng);
      for (std::size_t r = 0; r < m.rows(); ++r) m(r, c) = a * m(r, c) + b;
    }
    const auto s = standardize(m, feature_names());
    const auto p = pca(s);
    const auto sc = project(p, s.data);
    for (std::size_t c = 0; c < kFeatureCount; ++c) EXPECT_NEAR(p.explained_ratio[c], base.explained_ratio[c], 1e-9);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < 2; ++c) EXPECT_NEAR(std::abs(sc(r, c)), std::abs(base_scores(r, c)), 1e-8);
  }
}

TEST(StatsProperty, JacobiDiagonalizes) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 10; ++t) {
    const std::size_t k = 2 + rng() % 10;
    const auto a = random_matrix(rng, k, k);
    const auto at = a.transpose();
    Matrix s(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) s(i, j) = a(i, j) + at(i, j);
    const auto e = jacobi_eigen(s);
    for (std::size_t c = 0; c < k; ++c) {
      for (std::size_t i = 0; i < k; ++i) {
        double av = 0;
        for (std::size_t j = 0; j < k; ++j) av += s(i, j) * e.vectors(j, c);
        EXPECT_NEAR(av, e.values[c] * e.vectors(i, c), 1e-9);
      }
    }
  }
}

TEST(StatsProperty, LrTestBasics) {
  const auto y = reference_y();
  std::vector<double> constant(y.size(), 4.2);
  const auto flat = lr_test(constant, y);
  EXPECT_NEAR(flat.lr, 0.0, 1e-9);
  EXPECT_NEAR(flat.p, 1.0, 1e-9);

  // Separated predictor: lr capped at the null deviance, invariant under any
  // order-preserving transform.
  std::vector<double> sep, sep_exp;
  for (int v : y) {
    sep.push_back(v + 0.1 * static_cast<double>(sep.size() % 3));
    sep_exp.push_back(std::exp(3 * sep.back()));
  }
  const auto a = lr_test(sep, y), b = lr_test(sep_exp, y);
  EXPECT_TRUE(a.separated);
  EXPECT_NEAR(a.lr, a.null_deviance, 1e-12);
  EXPECT_NEAR(a.r2_nagelkerke, 1.0, 1e-12);
  EXPECT_NEAR(a.lr, b.lr, 1e-12);

  double prev_p = 2.0;
  for (double lr = 0.0; lr < 40; lr += 0.5) {
    const double p = chi2_sf_df1(lr);
    EXPECT_LT(p, prev_p);
    prev_p = p;
  }
  EXPECT_THROW(lr_test(std::vector<double>{1, 2}, std::vector<int>{1}), ArgumentError);
  EXPECT_THROW(lr_test(std::vector<double>{1, 2, 3}, std::vector<int>{1, 1, 1}), ArgumentError);
}

TEST(StatsProperty, LrTestNonNegativeOnRandomData) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 50; ++t) {
    std::vector<double> x;
    std::vector<int> y;
    for (int i = 0; i < 20; ++i) {
      y.push_back(i % 2);
      x.push_back(nd(rng) + 0.5 * y.back());
    }
    const auto r = lr_test(x, y);
    EXPECT_GE(r.lr, 0.0);
    EXPECT_GE(r.p, 0.0);
    EXPECT_LE(r.p, 1.0);
    EXPECT_NEAR(r.p, chi2_sf_df1(r.lr), 1e-15);
  }
}

TEST(StatsProperty, KmeansDeterministicAndValid) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 10; ++t) {
    const auto m = random_matrix(rng, 10 + rng() % 40, 1 + rng() % 6);
    const auto a = kmeans2(m, 8, 99), b = kmeans2(m, 8, 99);
    EXPECT_EQ(a.assignments, b.assignments);
    EXPECT_EQ(a.inertia, b.inertia);
    EXPECT_EQ(a.assignments[0], 0);
    const auto ones = std::count(a.assignments.begin(), a.assignments.end(), 1);
    EXPECT_GT(ones, 0);
    EXPECT_LT(static_cast<std::size_t>(ones), m.rows());
    EXPECT_NEAR(a.inertia, kmeans_inertia(m, a.assignments, a.centroids), 1e-9);
  }
}

TEST(StatsProperty, LloydInertiaNeverIncreases) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 30; ++t) {
    const auto m = random_matrix(rng, 10 + rng() % 60, 1 + rng() % 5);
    Matrix init(2, m.cols());
    const auto i0 = rng() % m.rows(), i1 = (i0 + 1 + rng() % (m.rows() - 1)) % m.rows();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      init(0, c) = m(i0, c);
      init(1, c) = m(i1, c);
    }
    std::vector<double> trace;
    lloyd2(m, init, &trace);
    ASSERT_FALSE(trace.empty());
    for (std::size_t i = 1; i < trace.size(); ++i) EXPECT_LE(trace[i], trace[i - 1] + 1e-9);
  }
}

TEST(StatsProperty, KmeansRowPermutationInvariance) {
  std::mt19937_64 rng(8);
  const auto s = standardize(reference_raw(), feature_names());
  const auto base = kmeans2(s.data);
  for (int t = 0; t < 10; ++t) {
    std::vector<std::size_t> perm(s.data.rows());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix p;
    for (auto i : perm) p.append_row(s.data.row(i));
    const auto km = kmeans2(p);
    // Same partition up to label swap.
    const int swap = km.assignments[0] != base.assignments[perm[0]];
    for (std::size_t i = 0; i < perm.size(); ++i) EXPECT_EQ(km.assignments[i] ^ swap, base.assignments[perm[i]]);
    EXPECT_NEAR(km.inertia, base.inertia, 1e-9);
  }
}

TEST(StatsProperty, PearsonProperties) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> pos(0.1, 10), shift(-5, 5);
  for (int t = 0; t < 20; ++t) {
    const auto m = random_matrix(rng, 10 + rng() % 20, 2);
    const auto a = m.column(0), b = m.column(1);
    const double r = pearson_r(a, b);
    std::vector<double> a2(a), neg(a);
    const double s = pos(rng), o = shift(rng);
    for (auto& v : a2) v = s * v + o;
    for (auto& v : neg) v = -v;
    EXPECT_NEAR(pearson_r(a2, b), r, 1e-12);
    EXPECT_NEAR(pearson_r(neg, b), -r, 1e-12);
    EXPECT_NEAR(pearson_r(a, a), 1.0, 1e-12);
    EXPECT_NEAR(pearson_r(a, neg), -1.0, 1e-12);
  }
  const auto c = pearson(reference_raw(), feature_names());
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    EXPECT_DOUBLE_EQ(c.r(i, i), 1.0);
    for (std::size_t j = 0; j < kFeatureCount; ++j) EXPECT_EQ(c.r(i, j), c.r(j, i));
  }
  EXPECT_THROW(pearson(Matrix::from_rows({{1, 2}, {1, 3}, {1, 4}}), {"a", "b"}), DegenerateColumnError);
}

TEST(StatsProperty, QuantileMonotonicity) {
  std::mt19937_64 rng(10);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 200; ++t) {
    std::vector<double> v(1 + rng() % 30);
    for (auto& x : v) x = nd(rng);
    double prev = -INFINITY;
    for (double q = 0.0; q <= 1.0; q += 0.05) {
      const double x = quantile(v, q);
      EXPECT_GE(x, prev);
      prev = x;
    }
    EXPECT_EQ(quantile(v, 0.0), *std::min_element(v.begin(), v.end()));
    EXPECT_EQ(quantile(v, 1.0), *std::max_element(v.begin(), v.end()));
  }
}

TEST(Stats, Spearman) {
  const std::vector<double> a{1, 2, 3, 4, 5}, b{10, 20, 30, 40, 50}, c{5, 4, 3, 2, 1};
  EXPECT_NEAR(spearman(a, b), 1.0, 1e-12);
  EXPECT_NEAR(spearman(a, c), -1.0, 1e-12);
  // Ties get average ranks: ranks (1.5,1.5,3) vs (1,2,3).
  EXPECT_NEAR(spearman(std::vector<double>{1, 1, 2}, std::vector<double>{1, 2, 3}), 0.8660254037844386, 1e-12);
}
