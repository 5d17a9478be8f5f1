#include "colscale/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "colscale/errors.hpp"

namespace col {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw ArgumentError("Matrix::from_rows: ragged rows");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> Matrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw ArgumentError("Matrix multiply: dimension mismatch");
  Matrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

void Matrix::append_row(std::span<const double> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) throw ArgumentError("Matrix::append_row: width mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

double mean(std::span<const double> v) {
  if (v.empty()) throw ArgumentError("mean of empty sequence");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double population_sd(std::span<const double> v) {
  const double m = mean(v);
  double ss = 0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size()));
}

double sample_sd(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double ss = 0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) throw ArgumentError("quantile of empty sequence");
  if (q < 0.0 || q > 1.0) throw ArgumentError("quantile level outside [0, 1]");
  std::sort(v.begin(), v.end());
  const double h = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

StandardizedMatrix standardize(const Matrix& m, const std::vector<std::string>& names) {
  if (m.rows() < 2) throw ArgumentError("standardize: need at least 2 rows");
  if (!names.empty() && names.size() != m.cols())
    throw ArgumentError("standardize: name count does not match column count");
  StandardizedMatrix s;
  s.data = Matrix(m.rows(), m.cols());
  s.column_names = names;
  if (s.column_names.empty())
    for (std::size_t c = 0; c < m.cols(); ++c) s.column_names.push_back("col" + std::to_string(c));
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const auto col = m.column(c);
    for (double x : col)
      if (!std::isfinite(x)) throw NumericError("standardize: non-finite value in '" + s.column_names[c] + "'");
    const double mu = mean(col);
    const double sd = population_sd(col);
    // Relative threshold: a column of identical values can still leave
    // rounding noise in the sd.
    if (!(sd > 1e-12 * std::max(1.0, std::abs(mu)))) throw DegenerateColumnError(s.column_names[c]);
    s.col_means.push_back(mu);
    s.col_sds.push_back(sd);
    for (std::size_t r = 0; r < m.rows(); ++r) s.data(r, c) = (m(r, c) - mu) / sd;
  }
  return s;
}

Matrix apply_standardization(const StandardizedMatrix& s, const Matrix& rows) {
  if (rows.cols() != s.col_means.size()) throw ArgumentError("apply_standardization: width mismatch");
  Matrix out(rows.rows(), rows.cols());
  for (std::size_t r = 0; r < rows.rows(); ++r)
    for (std::size_t c = 0; c < rows.cols(); ++c)
      out(r, c) = (rows(r, c) - s.col_means[c]) / s.col_sds[c];
  return out;
}

SymmetricEigen jacobi_eigen(const Matrix& sym, double tol, int max_sweeps) {
  const std::size_t n = sym.rows();
  if (sym.cols() != n) throw ArgumentError("jacobi_eigen: matrix not square");
  Matrix a = sym;
  Matrix v = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(a(i, j))) throw NumericError("jacobi_eigen: non-finite entry");
      if (std::abs(a(i, j) - a(j, i)) > 1e-9 * (1.0 + std::abs(a(i, j))))
        throw ArgumentError("jacobi_eigen: matrix not symmetric");
    }

  double scale = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale += a(i, j) * a(i, j);
  scale = std::sqrt(scale);

  SymmetricEigen out;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (std::sqrt(off) <= tol * std::max(scale, 1e-300)) break;
    out.sweeps = sweep + 1;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]);
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, j) = v(k, order[j]);
  }
  return out;
}

Matrix correlation_of_standardized(const StandardizedMatrix& s) {
  const std::size_t n = s.data.rows(), k = s.data.cols();
  Matrix c(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      double acc = 0;
      for (std::size_t r = 0; r < n; ++r) acc += s.data(r, i) * s.data(r, j);
      c(i, j) = c(j, i) = acc / static_cast<double>(n);
    }
  return c;
}

PcaModel pca(const StandardizedMatrix& s) {
  for (std::size_t r = 0; r < s.data.rows(); ++r)
    for (double x : s.data.row(r))
      if (!std::isfinite(x)) throw NumericError("pca: non-finite input");
  const auto eig = jacobi_eigen(correlation_of_standardized(s));
  const std::size_t k = eig.values.size();
  PcaModel m;
  m.loadings = eig.vectors;
  m.eigenvalues = eig.values;
  for (double& e : m.eigenvalues) e = std::max(e, 0.0);
  const double total = std::accumulate(m.eigenvalues.begin(), m.eigenvalues.end(), 0.0);
  for (double e : m.eigenvalues) m.explained_ratio.push_back(total > 0 ? e / total : 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < k; ++i)
      if (std::abs(m.loadings(i, j)) > std::abs(m.loadings(arg, j)) + 1e-12) arg = i;
    if (m.loadings(arg, j) < 0)
      for (std::size_t i = 0; i < k; ++i) m.loadings(i, j) = -m.loadings(i, j);
  }
  return m;
}

Matrix project(const PcaModel& model, const Matrix& std_rows) {
  if (std_rows.cols() != model.loadings.rows())
    throw ArgumentError("project: expected " + std::to_string(model.loadings.rows()) + " columns, got " +
                        std::to_string(std_rows.cols()));
  return std_rows * model.loadings;
}

namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
  return d;
}

double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Matrix init_plus_plus(const Matrix& m, std::mt19937_64& rng) {
  const std::size_t n = m.rows();
  Matrix c(2, m.cols());
  const std::size_t first = static_cast<std::size_t>(rng() % n);
  std::vector<double> d(n);
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) total += d[i] = sq_dist(m.row(i), m.row(first));
  std::size_t second = (first + 1) % n;
  if (total > 0) {
    double u = unit_double(rng) * total;
    for (std::size_t i = 0; i < n; ++i) {
      if (d[i] == 0) continue;
      second = i;
      if (u < d[i]) break;
      u -= d[i];
    }
  }
  std::copy(m.row(first).begin(), m.row(first).end(), c.row(0).begin());
  std::copy(m.row(second).begin(), m.row(second).end(), c.row(1).begin());
  return c;
}

}  // namespace

double kmeans_inertia(const Matrix& m, const std::vector<int>& assignments, const Matrix& centroids) {
  double s = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    s += sq_dist(m.row(i), centroids.row(static_cast<std::size_t>(assignments[i])));
  return s;
}

KmeansResult lloyd2(const Matrix& m, const Matrix& initial_centroids, std::vector<double>* trace) {
  const std::size_t n = m.rows(), k = m.cols();
  KmeansResult res;
  res.centroids = initial_centroids;
  res.assignments.assign(n, -1);
  for (int it = 0; it < kKmeansMaxIterations; ++it) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const double d0 = sq_dist(m.row(i), res.centroids.row(0));
      const double d1 = sq_dist(m.row(i), res.centroids.row(1));
      const int a = d1 < d0 ? 1 : 0;
      if (a != res.assignments[i]) changed = true;
      res.assignments[i] = a;
    }
    res.iterations = it + 1;
    if (!changed && it > 0) break;

    std::array<std::size_t, 2> count{0, 0};
    Matrix next(2, k);
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = static_cast<std::size_t>(res.assignments[i]);
      ++count[c];
      for (std::size_t j = 0; j < k; ++j) next(c, j) += m(i, j);
    }
    for (std::size_t c = 0; c < 2; ++c) {
      if (count[c] == 0) continue;
      for (std::size_t j = 0; j < k; ++j) next(c, j) /= static_cast<double>(count[c]);
    }
    for (std::size_t c = 0; c < 2; ++c) {
      if (count[c] != 0) continue;
      // Empty cluster: move the point farthest from the other centroid.
      const std::size_t other = 1 - c;
      std::size_t far = 0;
      double best = -1;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = sq_dist(m.row(i), next.row(other));
        if (d > best) best = d, far = i;
      }
      if (count[other] > 1) {
        res.assignments[far] = static_cast<int>(c);
        std::copy(m.row(far).begin(), m.row(far).end(), next.row(c).begin());
        std::fill(next.row(other).begin(), next.row(other).end(), 0.0);
        std::size_t cnt = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (res.assignments[i] != static_cast<int>(other)) continue;
          ++cnt;
          for (std::size_t j = 0; j < k; ++j) next(other, j) += m(i, j);
        }
        for (std::size_t j = 0; j < k; ++j) next(other, j) /= static_cast<double>(cnt);
      }
    }
    res.centroids = std::move(next);
    if (trace) trace->push_back(kmeans_inertia(m, res.assignments, res.centroids));
  }
  res.inertia = kmeans_inertia(m, res.assignments, res.centroids);
  return res;
}

KmeansResult kmeans2(const Matrix& m, int restarts, std::uint64_t seed) {
  if (m.rows() < 2) throw ArgumentError("kmeans2: need at least 2 rows");
  if (restarts < 1) throw ArgumentError("kmeans2: restarts must be >= 1");
  KmeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(r) * 0x9E3779B97F4A7C15ULL);
    auto res = lloyd2(m, init_plus_plus(m, rng));
    res.best_restart = r;
    // Strict comparison: ties keep the lowest restart index.
    if (res.inertia < best.inertia - 1e-12 * std::max(1.0, best.inertia) || r == 0) best = std::move(res);
  }
  best.seed = seed;
  if (best.assignments[0] != 0) {
    for (int& a : best.assignments) a = 1 - a;
    Matrix swapped(2, m.cols());
    std::copy(best.centroids.row(1).begin(), best.centroids.row(1).end(), swapped.row(0).begin());
    std::copy(best.centroids.row(0).begin(), best.centroids.row(0).end(), swapped.row(1).begin());
    best.centroids = std::move(swapped);
  }
  return best;
}

double chi2_sf_df1(double x) {
  if (x <= 0) return 1.0;
  return std::erfc(std::sqrt(x / 2.0));
}

double nagelkerke_r2(double lr, double null_deviance, std::size_t n) {
  const double nn = static_cast<double>(n);
  const double denom = 1.0 - std::exp(-null_deviance / nn);
  if (denom <= 0) return 0.0;
  return std::clamp((1.0 - std::exp(-lr / nn)) / denom, 0.0, 1.0);
}

namespace {

double softplus(double eta) { return eta > 0 ? eta + std::log1p(std::exp(-eta)) : std::log1p(std::exp(eta)); }

double logistic_ll(std::span<const double> z, std::span<const int> y, double b0, double b1) {
  double ll = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double eta = b0 + b1 * z[i];
    ll += y[i] * eta - softplus(eta);
  }
  return ll;
}

}  // namespace

LrTestResult lr_test(std::span<const double> x, std::span<const int> y) {
  const std::size_t n = x.size();
  if (y.size() != n) throw ArgumentError("lr_test: x and y differ in length");
  if (n < 4) throw ArgumentError("lr_test: need at least 4 observations");
  std::size_t n1 = 0;
  for (int v : y) {
    if (v != 0 && v != 1) throw ArgumentError("lr_test: labels must be 0 or 1");
    n1 += static_cast<std::size_t>(v);
  }
  if (n1 == 0 || n1 == n) throw ArgumentError("lr_test: both label values must be present");
  for (double v : x)
    if (!std::isfinite(v)) throw NumericError("lr_test: non-finite predictor");

  const double nn = static_cast<double>(n), p1 = static_cast<double>(n1) / nn;
  const double ll0 = static_cast<double>(n1) * std::log(p1) + (nn - static_cast<double>(n1)) * std::log(1 - p1);
  LrTestResult res;
  res.null_deviance = -2.0 * ll0;
  res.intercept = std::log(p1 / (1 - p1));

  double max0 = -INFINITY, min0 = INFINITY, max1 = -INFINITY, min1 = INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    if (y[i]) max1 = std::max(max1, x[i]), min1 = std::min(min1, x[i]);
    else max0 = std::max(max0, x[i]), min0 = std::min(min0, x[i]);
  }
  if (max0 < min1 || max1 < min0) {
    res.separated = true;
    res.lr = res.null_deviance;
    res.p = chi2_sf_df1(res.lr);
    res.r2_nagelkerke = 1.0;
    return res;
  }

  const double mx = mean(x), sx = population_sd(x);
  if (!(sx > 0)) return res;  // constant predictor: full model equals null model
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = (x[i] - mx) / sx;

  // Damped Newton-Raphson (IRLS) on the standardized predictor.
  double b0 = res.intercept, b1 = 0.0;
  double ll = logistic_ll(z, y, b0, b1);
  for (int it = 0; it < 200; ++it) {
    double g0 = 0, g1 = 0, h00 = 0, h01 = 0, h11 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double p = 1.0 / (1.0 + std::exp(-(b0 + b1 * z[i])));
      const double w = p * (1 - p);
      g0 += y[i] - p;
      g1 += (y[i] - p) * z[i];
      h00 += w;
      h01 += w * z[i];
      h11 += w * z[i] * z[i];
    }
    const double det = h00 * h11 - h01 * h01;
    if (!(det > 0)) break;
    const double d0 = (h11 * g0 - h01 * g1) / det;
    const double d1 = (h00 * g1 - h01 * g0) / det;
    double step = 1.0, next = ll;
    for (int half = 0; half < 50; ++half, step *= 0.5) {
      next = logistic_ll(z, y, b0 + step * d0, b1 + step * d1);
      if (next >= ll) break;
    }
    if (next < ll) break;
    b0 += step * d0;
    b1 += step * d1;
    const double delta = next - ll;
    ll = next;
    if (delta < 1e-13 * (1.0 + std::abs(ll))) break;
  }

  res.lr = std::max(0.0, 2.0 * (ll - ll0));
  res.p = chi2_sf_df1(res.lr);
  res.r2_nagelkerke = nagelkerke_r2(res.lr, res.null_deviance, n);
  res.slope = b1 / sx;
  res.intercept = b0 - b1 * mx / sx;
  return res;
}

double pearson_r(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ArgumentError("pearson: length mismatch");
  const double ma = mean(a), mb = mean(b);
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0 || sbb == 0) throw DegenerateColumnError("pearson input");
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

CorrelationMatrix pearson(const Matrix& m, const std::vector<std::string>& names) {
  if (m.rows() < 3) throw ArgumentError("pearson: need at least 3 rows");
  if (names.size() != m.cols()) throw ArgumentError("pearson: name count does not match column count");
  const std::size_t k = m.cols();
  std::vector<std::vector<double>> cols(k);
  for (std::size_t c = 0; c < k; ++c) {
    cols[c] = m.column(c);
    if (population_sd(cols[c]) == 0) throw DegenerateColumnError(names[c]);
  }
  CorrelationMatrix out{Matrix(k, k), names};
  for (std::size_t i = 0; i < k; ++i) {
    out.r(i, i) = 1.0;
    for (std::size_t j = i + 1; j < k; ++j) out.r(i, j) = out.r(j, i) = pearson_r(cols[i], cols[j]);
  }
  return out;
}

namespace {
std::vector<double> ranks(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) r[idx[t]] = avg;
    i = j + 1;
  }
  return r;
}
}  // namespace

double spearman(std::span<const double> a, std::span<const double> b) {
  const auto ra = ranks(a), rb = ranks(b);
  return pearson_r(ra, rb);
}

}  // namespace col
