#include "crtopo/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "crtopo/error.hpp"

namespace crtopo {

namespace {

void check_triplets(const TripletList& t) {
  if (t.row.size() != t.value.size() || t.col.size() != t.value.size())
    throw ValidationError("finalize: inconsistent triplet arrays");
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t.row[k] < 0 || t.row[k] >= t.rows || t.col[k] < 0 || t.col[k] >= t.cols)
      throw ValidationError("finalize: triplet index out of range");
  }
}

// Reference: ordered map keyed by (row, col); each key accumulates in
// insertion order.
CsrMatrix finalize_serial(const TripletList& t) {
  std::map<std::pair<int, int>, double> entries;
  for (std::size_t k = 0; k < t.size(); ++k) entries[{t.row[k], t.col[k]}] += t.value[k];

  CsrMatrix m;
  m.rows = t.rows;
  m.cols = t.cols;
  m.row_ptr.assign(t.rows + 1, 0);
  m.col.reserve(entries.size());
  m.value.reserve(entries.size());
  for (const auto& [key, v] : entries) {
    ++m.row_ptr[key.first + 1];
    m.col.push_back(key.second);
    m.value.push_back(v);
  }
  std::partial_sum(m.row_ptr.begin(), m.row_ptr.end(), m.row_ptr.begin());
  return m;
}

// Bucket triplets by row (stable), then sort and reduce every row
// independently.
CsrMatrix finalize_parallel(const TripletList& t) {
  const int nrows = t.rows;
  std::vector<std::size_t> bucket_ptr(nrows + 1, 0);
  for (int r : t.row) ++bucket_ptr[r + 1];
  std::partial_sum(bucket_ptr.begin(), bucket_ptr.end(), bucket_ptr.begin());
  std::vector<std::size_t> bucket(t.size());
  {
    std::vector<std::size_t> fill(bucket_ptr.begin(), bucket_ptr.end() - 1);
    for (std::size_t k = 0; k < t.size(); ++k) bucket[fill[t.row[k]]++] = k;
  }

  std::vector<int> row_count(nrows, 0);
#pragma omp parallel for schedule(static)
  for (int r = 0; r < nrows; ++r) {
    auto first = bucket.begin() + static_cast<std::ptrdiff_t>(bucket_ptr[r]);
    auto last = bucket.begin() + static_cast<std::ptrdiff_t>(bucket_ptr[r + 1]);
    std::stable_sort(first, last, [&](std::size_t a, std::size_t b) { return t.col[a] < t.col[b]; });
    int unique = 0;
    for (auto it = first; it != last; ++it) {
      if (it == first || t.col[*it] != t.col[*(it - 1)]) ++unique;
    }
    row_count[r] = unique;
  }

  CsrMatrix m;
  m.rows = t.rows;
  m.cols = t.cols;
  m.row_ptr.assign(nrows + 1, 0);
  for (int r = 0; r < nrows; ++r) m.row_ptr[r + 1] = m.row_ptr[r] + row_count[r];
  m.col.resize(m.row_ptr[nrows]);
  m.value.resize(m.row_ptr[nrows]);

#pragma omp parallel for schedule(static)
  for (int r = 0; r < nrows; ++r) {
    int out = m.row_ptr[r] - 1;
    for (std::size_t k = bucket_ptr[r]; k < bucket_ptr[r + 1]; ++k) {
      const std::size_t idx = bucket[k];
      if (k == bucket_ptr[r] || t.col[idx] != m.col[out]) {
        ++out;
        m.col[out] = t.col[idx];
        m.value[out] = 0.0;
      }
      m.value[out] += t.value[idx];
    }
  }
  return m;
}

} // namespace

double CsrMatrix::at(int i, int j) const {
  const auto first = col.begin() + row_ptr[i];
  const auto last = col.begin() + row_ptr[i + 1];
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return value[static_cast<std::size_t>(it - col.begin())];
}

double CsrMatrix::max_abs() const {
  double m = 0.0;
  for (double v : value) m = std::max(m, std::abs(v));
  return m;
}

double CsrMatrix::symmetry_defect() const {
  if (rows != cols) throw ValidationError("symmetry_defect: matrix is not square");
  double defect = 0.0;
  for (int i = 0; i < rows; ++i) {
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
      defect = std::max(defect, std::abs(value[k] - at(col[k], i)));
  }
  return defect;
}

CsrMatrix finalize(const TripletList& triplets, bool symmetric, Exec exec) {
  check_triplets(triplets);
  CsrMatrix m = exec == Exec::serial ? finalize_serial(triplets) : finalize_parallel(triplets);
  m.symmetric = symmetric;
  return m;
}

void multiply(const CsrMatrix& a, std::span<const double> x, std::span<double> y, Exec exec) {
  if (static_cast<int>(x.size()) != a.cols || static_cast<int>(y.size()) != a.rows)
    throw ValidationError("multiply: dimension mismatch");
  auto row_dot = [&](int i) {
    double s = 0.0;
    for (int k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) s += a.value[k] * x[a.col[k]];
    return s;
  };
  if (exec == Exec::serial) {
    for (int i = 0; i < a.rows; ++i) y[i] = row_dot(i);
  } else {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < a.rows; ++i) y[i] = row_dot(i);
  }
}

std::vector<double> multiply(const CsrMatrix& a, std::span<const double> x, Exec exec) {
  std::vector<double> y(a.rows);
  multiply(a, x, y, exec);
  return y;
}

double quadratic_form(const CsrMatrix& a, std::span<const double> x) {
  const std::vector<double> ax = multiply(a, x, Exec::serial);
  double s = 0.0;
  for (int i = 0; i < a.rows; ++i) s += x[i] * ax[i];
  return s;
}

CsrMatrix linear_combination(double s, const CsrMatrix& a, double t, const CsrMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw ValidationError("linear_combination: dimension mismatch");
  CsrMatrix m;
  m.rows = a.rows;
  m.cols = a.cols;
  m.symmetric = a.symmetric && b.symmetric;
  m.row_ptr.assign(a.rows + 1, 0);
  for (int i = 0; i < a.rows; ++i) {
    int ka = a.row_ptr[i], kb = b.row_ptr[i];
    const int ea = a.row_ptr[i + 1], eb = b.row_ptr[i + 1];
    while (ka < ea || kb < eb) {
      const int ca = ka < ea ? a.col[ka] : a.cols;
      const int cb = kb < eb ? b.col[kb] : b.cols;
      if (ca == cb) {
        m.col.push_back(ca);
        m.value.push_back(s * a.value[ka++] + t * b.value[kb++]);
      } else if (ca < cb) {
        m.col.push_back(ca);
        m.value.push_back(s * a.value[ka++]);
      } else {
        m.col.push_back(cb);
        m.value.push_back(t * b.value[kb++]);
      }
    }
    m.row_ptr[i + 1] = static_cast<int>(m.col.size());
  }
  return m;
}

Eigen::SparseMatrix<double> to_eigen(const CsrMatrix& a) {
  Eigen::Map<const Eigen::SparseMatrix<double, Eigen::RowMajor, int>> view(
      a.rows, a.cols, static_cast<Eigen::Index>(a.nnz()), a.row_ptr.data(), a.col.data(),
      a.value.data());
  Eigen::SparseMatrix<double> out = view;
  out.makeCompressed();
  return out;
}

} // namespace crtopo
