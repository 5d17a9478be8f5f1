#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace col {

// Dense row-major matrix. Small (tens to a few hundred columns), so no BLAS.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::vector<double> column(std::size_t c) const;

  Matrix transpose() const;
  Matrix operator*(const Matrix& rhs) const;

  void append_row(std::span<const double> values);

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct StandardizedMatrix {
  Matrix data;
  std::vector<double> col_means;
  std::vector<double> col_sds;  // population sd (divide by n)
  std::vector<std::string> column_names;
};

// (x - mean) / sd per column. Requires n >= 2 and no constant column.
StandardizedMatrix standardize(const Matrix& m, const std::vector<std::string>& names);

// Applies stored moments to new rows.
Matrix apply_standardization(const StandardizedMatrix& s, const Matrix& rows);

struct SymmetricEigen {
  std::vector<double> values;  // descending
  Matrix vectors;              // columns are eigenvectors
  int sweeps = 0;
};

// Cyclic Jacobi rotations. Input must be symmetric.
SymmetricEigen jacobi_eigen(const Matrix& sym, double tol = 1e-14, int max_sweeps = 100);

struct PcaModel {
  Matrix loadings;  // k x k, column j = component j, largest-magnitude entry positive
                   // (ties within 1e-12 go to the lowest index)
  std::vector<double> eigenvalues;
  std::vector<double> explained_ratio;
};

// Correlation matrix of the standardized data, decomposed by jacobi_eigen.
Matrix correlation_of_standardized(const StandardizedMatrix& s);
PcaModel pca(const StandardizedMatrix& s);

// rows (already standardized) times loadings.
Matrix project(const PcaModel& model, const Matrix& std_rows);

struct KmeansResult {
  std::vector<int> assignments;  // 0/1, row 0 always in cluster 0
  Matrix centroids;              // 2 x k
  double inertia = 0.0;
  std::uint64_t seed = 0;
  int best_restart = 0;
  int iterations = 0;
};

inline constexpr int kDefaultRestarts = 32;
inline constexpr int kKmeansMaxIterations = 300;

// Two-cluster Lloyd's algorithm, best inertia over `restarts` k-means++
// initializations. Initial centers come from std::mt19937_64 seeded with
// seed + restart * 0x9E3779B97F4A7C15; indices are drawn as `rng() % n` and
// D^2 weights via the top 53 bits, so results do not depend on the standard
// library's distribution implementations.
KmeansResult kmeans2(const Matrix& m, int restarts = kDefaultRestarts, std::uint64_t seed = 0);

// One Lloyd run from given centers; records inertia after every iteration
// into `trace` when non-null.
KmeansResult lloyd2(const Matrix& m, const Matrix& initial_centroids,
                    std::vector<double>* trace = nullptr);

double kmeans_inertia(const Matrix& m, const std::vector<int>& assignments, const Matrix& centroids);

struct LrTestResult {
  double lr = 0.0;
  int df = 1;
  double p = 1.0;
  double r2_nagelkerke = 0.0;
  bool separated = false;
  double null_deviance = 0.0;
  double intercept = 0.0;  // fitted coefficients on the raw x scale (not set when separated)
  double slope = 0.0;
};

// Upper tail of the chi-square distribution with one degree of freedom.
double chi2_sf_df1(double x);

// Likelihood-ratio test of a single-predictor logistic model against the
// intercept-only model. y holds 0/1 labels.
LrTestResult lr_test(std::span<const double> x, std::span<const int> y);

// (1 - exp(-lr/n)) / (1 - exp(-D0/n)).
double nagelkerke_r2(double lr, double null_deviance, std::size_t n);

struct CorrelationMatrix {
  Matrix r;
  std::vector<std::string> names;
};

CorrelationMatrix pearson(const Matrix& m, const std::vector<std::string>& names);
double pearson_r(std::span<const double> a, std::span<const double> b);

double mean(std::span<const double> v);
double population_sd(std::span<const double> v);
double sample_sd(std::span<const double> v);

// Linear interpolation between order statistics (R type 7). q in [0, 1].
double quantile(std::vector<double> v, double q);

// Spearman rank correlation, average ranks for ties.
double spearman(std::span<const double> a, std::span<const double> b);

}  // namespace col
