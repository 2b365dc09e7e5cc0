#ifndef CRTOPO_SPARSE_HPP
#define CRTOPO_SPARSE_HPP

#include <span>
#include <vector>

#include <Eigen/SparseCore>

namespace crtopo {

/// Execution policy for the data-parallel kernels. `serial` runs the plain
/// reference implementation, `parallel` the OpenMP one; both sum every entry
/// in the same order and therefore agree bitwise.
enum class Exec { serial, parallel };

/// Coordinate-format entries in insertion order. Duplicates are summed at
/// finalization in insertion order.
struct TripletList {
  int rows = 0;
  int cols = 0;
  std::vector<int> row;
  std::vector<int> col;
  std::vector<double> value;

  TripletList() = default;
  TripletList(int r, int c) : rows(r), cols(c) {}

  void reserve(std::size_t n) {
    row.reserve(n);
    col.reserve(n);
    value.reserve(n);
  }
  void resize(std::size_t n) {
    row.resize(n);
    col.resize(n);
    value.resize(n);
  }
  void add(int i, int j, double v) {
    row.push_back(i);
    col.push_back(j);
    value.push_back(v);
  }
  std::size_t size() const { return value.size(); }
};

/// Compressed-row matrix with sorted, unique column indices per row.
struct CsrMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> row_ptr{0};
  std::vector<int> col;
  std::vector<double> value;
  bool symmetric = false;

  std::size_t nnz() const { return value.size(); }
  /// Entry (i, j), zero when not stored.
  double at(int i, int j) const;
  double max_abs() const;
  /// max |a_ij - a_ji| over all stored entries.
  double symmetry_defect() const;

  friend bool operator==(const CsrMatrix&, const CsrMatrix&) = default;
};

CsrMatrix finalize(const TripletList& triplets, bool symmetric, Exec exec = Exec::parallel);

/// y = A x
void multiply(const CsrMatrix& a, std::span<const double> x, std::span<double> y,
              Exec exec = Exec::parallel);
std::vector<double> multiply(const CsrMatrix& a, std::span<const double> x,
                             Exec exec = Exec::parallel);

/// x^T A x
double quadratic_form(const CsrMatrix& a, std::span<const double> x);

/// Entrywise s*A + t*B; the patterns may differ.
CsrMatrix linear_combination(double s, const CsrMatrix& a, double t, const CsrMatrix& b);

Eigen::SparseMatrix<double> to_eigen(const CsrMatrix& a);

} // namespace crtopo

#endif
