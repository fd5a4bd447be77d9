#include "braidkit/exact/matrix.hpp"

#include <algorithm>
#include <stdexcept>

#include "braidkit/exact/subspace.hpp"

namespace braidkit::exact {

Matrix::Matrix(const Field& f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows) {}

Matrix Matrix::identity(const Field& f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i] = SparseVec::unit(f, static_cast<std::uint32_t>(i));
  return m;
}

Matrix Matrix::from_dense(const Field& f, const std::vector<std::vector<Scalar>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(f, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!(rows[r][c].field() == f)) throw FieldMismatch("matrix entry outside " + f.name());
      if (!rows[r][c].is_zero()) m.data_[r].push_back(static_cast<std::uint32_t>(c), rows[r][c]);
    }
  }
  return m;
}

Matrix Matrix::from_rows(const Field& f, std::size_t cols, std::vector<SparseVec> rows) {
  Matrix m(f, rows.size(), cols);
  for (auto& r : rows) {
    for (std::size_t k = 0; k < r.idx.size(); ++k) {
      if (r.idx[k] >= cols) throw std::out_of_range("row index outside matrix");
      if (!(r.val[k].field() == f)) throw FieldMismatch("matrix entry outside " + f.name());
    }
  }
  m.data_ = std::move(rows);
  return m;
}

Matrix Matrix::from_columns(const Field& f, std::size_t rows, const std::vector<SparseVec>& columns) {
  Matrix m(f, rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (std::size_t k = 0; k < columns[c].idx.size(); ++k) {
      auto r = columns[c].idx[k];
      if (r >= rows) throw std::out_of_range("column index outside matrix");
      m.data_[r].push_back(static_cast<std::uint32_t>(c), columns[c].val[k]);
    }
  return m;
}

void Matrix::set(std::size_t r, std::size_t c, const Scalar& v) {
  if (!(v.field() == field_)) throw FieldMismatch("matrix entry outside " + field_.name());
  auto& row = data_[r];
  auto it = std::lower_bound(row.idx.begin(), row.idx.end(), static_cast<std::uint32_t>(c));
  auto pos = static_cast<std::size_t>(it - row.idx.begin());
  bool present = it != row.idx.end() && *it == c;
  if (v.is_zero()) {
    if (present) {
      row.idx.erase(row.idx.begin() + static_cast<long>(pos));
      row.val.erase(row.val.begin() + static_cast<long>(pos));
    }
  } else if (present) {
    row.val[pos] = v;
  } else {
    row.idx.insert(it, static_cast<std::uint32_t>(c));
    row.val.insert(row.val.begin() + static_cast<long>(pos), v);
  }
}

std::size_t Matrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.nnz();
  return n;
}

double Matrix::fill() const {
  if (rows_ == 0 || cols_ == 0) return 0.0;
  return static_cast<double>(nnz()) / (static_cast<double>(rows_) * static_cast<double>(cols_));
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < data_[r].idx.size(); ++k)
      t.data_[data_[r].idx[k]].push_back(static_cast<std::uint32_t>(r), data_[r].val[k]);
  return t;
}

SparseVec Matrix::apply(const SparseVec& x) const {
  SparseVec out;
  for (std::size_t r = 0; r < rows_; ++r) {
    Scalar s = Scalar::zero(field_);
    const auto& row = data_[r];
    std::size_t i = 0, j = 0;
    while (i < row.idx.size() && j < x.idx.size()) {
      if (row.idx[i] < x.idx[j]) ++i;
      else if (x.idx[j] < row.idx[i]) ++j;
      else s.add_mul(row.val[i++], x.val[j++]);
    }
    if (!s.is_zero()) out.push_back(static_cast<std::uint32_t>(r), std::move(s));
  }
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
  if (!(a.field_ == b.field_)) throw FieldMismatch("matrices over different fields");
  Matrix out(a.field_, a.rows_, b.cols_);
  Accumulator acc(a.field_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    const auto& row = a.data_[r];
    for (std::size_t k = 0; k < row.idx.size(); ++k) acc.add_scaled(row.val[k], b.data_[row.idx[k]]);
    out.data_[r] = acc.take();
  }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
  if (!(a.field_ == b.field_)) throw FieldMismatch("matrices over different fields");
  Matrix out = a;
  Scalar one = Scalar::one(a.field_);
  for (std::size_t r = 0; r < a.rows_; ++r) out.data_[r].axpy(one, b.data_[r]);
  return out;
}

bool Matrix::operator==(const Matrix& o) const {
  return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

namespace {

void check_entries(const Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& v : m.row(r).val)
      if (!(v.field() == m.field())) throw FieldMismatch("matrix has entries from mixed fields");
}

Echelon package(const Matrix& m, std::vector<SparseVec> rows) {
  Echelon e{Matrix(m.field(), rows.size(), m.cols()), {}, rows.size()};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    e.pivots.push_back(rows[r].leading());
    e.echelon.row_mut(r) = std::move(rows[r]);
  }
  return e;
}

}  // namespace

Echelon rref_sparse(const Matrix& m) {
  check_entries(m);
  EchelonBuilder b(m.field(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) b.insert(m.row(r));
  return package(m, b.rows());
}

Echelon rref_dense(const Matrix& m) {
  check_entries(m);
  const Field& f = m.field();
  std::vector<std::vector<Scalar>> a(m.rows(), std::vector<Scalar>(m.cols(), Scalar::zero(f)));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t k = 0; k < m.row(r).idx.size(); ++k) a[r][m.row(r).idx[k]] = m.row(r).val[k];
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < a.size(); ++c) {
    std::size_t piv = lead;
    while (piv < a.size() && a[piv][c].is_zero()) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[lead]);
    Scalar inv = a[lead][c].inverse();
    for (auto& x : a[lead]) x *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == lead || a[r][c].is_zero()) continue;
      Scalar fct = a[r][c];
      for (std::size_t k = c; k < m.cols(); ++k) a[r][k].sub_mul(fct, a[lead][k]);
    }
    ++lead;
  }
  std::vector<SparseVec> rows;
  for (std::size_t r = 0; r < lead; ++r) {
    SparseVec v;
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!a[r][c].is_zero()) v.push_back(static_cast<std::uint32_t>(c), a[r][c]);
    rows.push_back(std::move(v));
  }
  return package(m, std::move(rows));
}

Echelon rref(const Matrix& m) { return m.fill() > 0.5 ? rref_dense(m) : rref_sparse(m); }

std::size_t rank(const Matrix& m) { return rref(m).rank; }

Subspace kernel(const Matrix& m) {
  Echelon e = rref(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto p : e.pivots) is_pivot[p] = 1;
  // Column c of the echelon form, as (row, value) pairs.
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> cols(m.cols());
  for (std::size_t r = 0; r < e.rank; ++r) {
    const auto& row = e.echelon.row(r);
    for (std::size_t k = 0; k < row.idx.size(); ++k)
      if (!is_pivot[row.idx[k]]) cols[row.idx[k]].emplace_back(r, row.val[k]);
  }
  std::vector<SparseVec> basis;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    std::vector<std::pair<std::uint32_t, Scalar>> entries;
    entries.emplace_back(static_cast<std::uint32_t>(c), Scalar::one(m.field()));
    for (auto& [r, v] : cols[c]) entries.emplace_back(static_cast<std::uint32_t>(e.pivots[r]), -v);
    std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    SparseVec v;
    for (auto& [i, s] : entries) v.push_back(i, std::move(s));
    basis.push_back(std::move(v));
  }
  return Subspace::span(m.field(), m.cols(), basis);
}

Subspace kernel_of_map(const Field& f, std::size_t source_dim, std::size_t target_dim,
                       const std::vector<SparseVec>& images) {
  if (images.size() != source_dim) throw std::invalid_argument("kernel_of_map: image count mismatch");
  return kernel(Matrix::from_columns(f, target_dim, images));
}

}  // namespace braidkit::exact
