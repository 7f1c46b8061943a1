#include "srct/field.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <string>

#include "srct/error.hpp"

namespace srct {

bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  if (v % 2 == 0) return v == 2;
  for (std::uint64_t d = 3; d * d <= v; d += 2) {
    if (v % d == 0) return false;
  }
  return true;
}

std::uint64_t next_prime(std::uint64_t v) {
  while (!is_prime(v)) ++v;
  return v;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (!is_prime(p)) throw NotPrime("modulus " + std::to_string(p) + " is not prime");
  if (p >= (std::uint64_t{1} << 31)) throw InvalidParams("modulus must be below 2^31");
  barrett_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) / p);
  const std::uint64_t sq = (p - 1) * (p - 1);
  lazy_budget_ = (std::numeric_limits<std::uint64_t>::max() - p) / sq;
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint64_t base = a % p_;
  std::uint64_t acc = 1;
  while (e) {
    if (e & 1) acc = reduce(acc * base);
    base = reduce(base * base);
    e >>= 1;
  }
  return static_cast<std::uint32_t>(acc);
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a % p_ == 0) throw DivisionByZero("inverse of zero");
  return pow(a, p_ - 2);
}

FieldElem::FieldElem(std::uint64_t value, std::uint64_t p) : value_(value % p), p_(p) {
  if (!is_prime(p)) throw NotPrime("modulus " + std::to_string(p) + " is not prime");
}

void FieldElem::same_field(const FieldElem& o) const {
  if (p_ != o.p_) throw DimensionMismatch("field elements from different fields");
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  same_field(o);
  return {(value_ + o.value_) % p_, p_};
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  same_field(o);
  return {(value_ + p_ - o.value_) % p_, p_};
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  same_field(o);
  return {static_cast<std::uint64_t>(static_cast<unsigned __int128>(value_) * o.value_ % p_), p_};
}

FieldElem FieldElem::inverse() const {
  if (value_ == 0) throw DivisionByZero("inverse of zero");
  std::uint64_t acc = 1, base = value_, e = p_ - 2;
  while (e) {
    if (e & 1) acc = static_cast<std::uint64_t>(static_cast<unsigned __int128>(acc) * base % p_);
    base = static_cast<std::uint64_t>(static_cast<unsigned __int128>(base) * base % p_);
    e >>= 1;
  }
  return {acc, p_};
}

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, std::uint64_t p)
    : rows_(rows), cols_(cols), field_(p), data_(rows * cols, 0) {}

FieldMatrix FieldMatrix::identity(std::size_t n, std::uint64_t p) {
  FieldMatrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

FieldMatrix FieldMatrix::from_rows(const std::vector<std::vector<std::uint64_t>>& rows, std::size_t cols,
                                   std::uint64_t p) {
  FieldMatrix m(rows.size(), cols, p);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionMismatch("ragged row in matrix literal");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

void FieldMatrix::set(std::size_t r, std::size_t c, std::uint64_t v) {
  data_[r * cols_ + c] = static_cast<std::uint32_t>(v % field_.modulus());
}

void FieldMatrix::append_row(std::span<const std::uint32_t> values) {
  if (values.size() != cols_) throw DimensionMismatch("row length does not match column count");
  for (auto v : values) data_.push_back(static_cast<std::uint32_t>(v % field_.modulus()));
  ++rows_;
}

FieldMatrix FieldMatrix::stacked(const FieldMatrix& below) const {
  if (below.cols_ != cols_ || !(below.field_ == field_)) throw DimensionMismatch("cannot stack matrices");
  FieldMatrix m = *this;
  m.data_.insert(m.data_.end(), below.data_.begin(), below.data_.end());
  m.rows_ += below.rows_;
  return m;
}

FieldMatrix FieldMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  FieldMatrix m(0, cols_, field_.modulus());
  m.data_.reserve(idx.size() * cols_);
  for (auto r : idx) {
    if (r >= rows_) throw DimensionMismatch("row index out of range");
    m.append_row(row(r));
  }
  return m;
}

FieldMatrix FieldMatrix::select_cols(const std::vector<std::size_t>& idx) const {
  FieldMatrix m(rows_, idx.size(), field_.modulus());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] >= cols_) throw DimensionMismatch("column index out of range");
      m.data_[r * idx.size() + k] = at(r, idx[k]);
    }
  }
  return m;
}

FieldMatrix FieldMatrix::with_modulus(std::uint64_t p) const {
  FieldMatrix m(rows_, cols_, p);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = static_cast<std::uint32_t>(data_[i] % p);
  return m;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& rhs) const {
  if (cols_ != rhs.rows_ || !(field_ == rhs.field_)) throw DimensionMismatch("matrix product shape mismatch");
  FieldMatrix out(rows_, rhs.cols_, field_.modulus());
  std::vector<std::uint64_t> acc(rhs.cols_);
  const std::uint64_t budget = field_.lazy_budget();
  for (std::size_t r = 0; r < rows_; ++r) {
    std::fill(acc.begin(), acc.end(), 0);
    std::uint64_t used = 0;
    for (std::size_t k = 0; k < cols_; ++k) {
      const std::uint32_t a = at(r, k);
      if (a == 0) continue;
      if (++used > budget) {
        for (auto& x : acc) x = field_.reduce(x);
        used = 1;
      }
      const std::uint32_t* b = rhs.data_.data() + k * rhs.cols_;
      for (std::size_t c = 0; c < rhs.cols_; ++c) acc[c] += static_cast<std::uint64_t>(a) * b[c];
    }
    for (std::size_t c = 0; c < rhs.cols_; ++c) {
      out.data_[r * rhs.cols_ + c] = static_cast<std::uint32_t>(field_.reduce(acc[c]));
    }
  }
  return out;
}

std::vector<std::uint32_t> FieldMatrix::apply(std::span<const std::uint32_t> x) const {
  if (x.size() != cols_) throw DimensionMismatch("vector length does not match column count");
  std::vector<std::uint32_t> y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    unsigned __int128 acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc += static_cast<std::uint64_t>(at(r, c)) * x[c];
    y[r] = static_cast<std::uint32_t>(acc % field_.modulus());
  }
  return y;
}

namespace {

// Gaussian elimination on a row-major buffer of unreduced entries. Row updates
// are accumulated without reduction until the field's lazy budget is spent.
// Pivots are searched only in columns [0, pivot_limit). With `reduced` set the
// pivot columns are cleared above the pivots as well (Gauss-Jordan).
std::vector<std::size_t> eliminate(std::vector<std::uint64_t>& a, std::size_t rows, std::size_t cols,
                                   const PrimeField& f, bool reduced, std::size_t pivot_limit) {
  const std::uint64_t p = f.modulus();
  const std::uint64_t budget = f.lazy_budget();
  std::uint64_t used = 0;
  std::vector<std::size_t> pivots;
  std::vector<std::uint32_t> prow(cols);
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_limit && r < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i) {
      std::uint64_t& x = a[i * cols + c];
      x = f.reduce(x);
      if (x != 0 && piv == rows) piv = i;
    }
    if (piv == rows) continue;
    if (piv != r) {
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(piv * cols + c),
                       a.begin() + static_cast<std::ptrdiff_t>((piv + 1) * cols),
                       a.begin() + static_cast<std::ptrdiff_t>(r * cols + c));
    }
    if (used + 1 > budget) {
      for (auto& x : a) x = f.reduce(x);
      used = 0;
    }
    ++used;
    std::uint64_t* pr = a.data() + r * cols;
    const std::uint32_t inv = f.inv(static_cast<std::uint32_t>(pr[c]));
    for (std::size_t j = c; j < cols; ++j) {
      prow[j] = f.mul(static_cast<std::uint32_t>(f.reduce(pr[j])), inv);
      pr[j] = prow[j];
    }
    const std::size_t lo = reduced ? 0 : r + 1;
    for (std::size_t i = lo; i < rows; ++i) {
      if (i == r) continue;
      std::uint64_t* ri = a.data() + i * cols;
      const std::uint64_t x = f.reduce(ri[c]);
      ri[c] = 0;
      if (x == 0) continue;
      const std::uint32_t g = static_cast<std::uint32_t>(p - x);
      for (std::size_t j = c + 1; j < cols; ++j) ri[j] += static_cast<std::uint64_t>(g) * prow[j];
    }
    pivots.push_back(c);
    ++r;
  }
  for (auto& x : a) x = f.reduce(x);
  return pivots;
}

std::vector<std::uint64_t> widen(const FieldMatrix& m) {
  std::vector<std::uint64_t> a(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    std::copy(row.begin(), row.end(), a.begin() + static_cast<std::ptrdiff_t>(r * m.cols()));
  }
  return a;
}

}  // namespace

std::size_t mat_rank(const FieldMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  auto a = widen(m);
  return eliminate(a, m.rows(), m.cols(), m.field(), false, m.cols()).size();
}

FieldMatrix mat_invert(const FieldMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  const std::size_t w = 2 * n;
  std::vector<std::uint64_t> a(n * w, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a[r * w + c] = m.at(r, c);
    a[r * w + n + r] = 1;
  }
  auto piv = eliminate(a, n, w, m.field(), true, n);
  if (piv.size() < n) throw SingularMatrix("matrix is singular");
  FieldMatrix out(n, n, m.modulus());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) out.set(r, c, a[r * w + n + c]);
  }
  return out;
}

Rref rref(const FieldMatrix& m) {
  auto a = widen(m);
  auto piv = eliminate(a, m.rows(), m.cols(), m.field(), true, m.cols());
  FieldMatrix out(m.rows(), m.cols(), m.modulus());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out.set(r, c, a[r * m.cols() + c]);
  }
  return {std::move(out), std::move(piv)};
}

std::vector<std::uint32_t> solve(const FieldMatrix& m, std::span<const std::uint32_t> b) {
  if (b.size() != m.rows()) throw DimensionMismatch("right-hand side length mismatch");
  const std::size_t w = m.cols() + 1;
  std::vector<std::uint64_t> a(m.rows() * w);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) a[r * w + c] = m.at(r, c);
    a[r * w + m.cols()] = b[r] % m.modulus();
  }
  auto piv = eliminate(a, m.rows(), w, m.field(), true, m.cols());
  if (piv.size() < m.cols()) throw SingularMatrix("system does not determine a unique solution");
  for (std::size_t r = piv.size(); r < m.rows(); ++r) {
    if (a[r * w + m.cols()] != 0) throw ValidationError("inconsistent linear system");
  }
  std::vector<std::uint32_t> x(m.cols());
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = static_cast<std::uint32_t>(a[r * w + m.cols()]);
  return x;
}

FieldMatrix seeded_random_matrix(std::size_t rows, std::size_t cols, std::uint64_t p, std::uint64_t seed) {
  FieldMatrix m(rows, cols, p);
  std::mt19937_64 gen(seed);
  // Rejection sampling keeps entries exactly uniform and the stream portable.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % p;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      std::uint64_t v;
      do {
        v = gen();
      } while (v >= limit);
      m.set(r, c, v % p);
    }
  }
  return m;
}

RowEchelon::RowEchelon(std::size_t cols, const PrimeField& field)
    : cols_(cols), field_(field), pivot_at_(cols, -1), work_(cols, 0) {
  const unsigned __int128 p = field.modulus();
  const unsigned __int128 worst = p + static_cast<unsigned __int128>(cols + 1) * (p - 1) * (p - 1);
  lazy_ = worst < (static_cast<unsigned __int128>(1) << 64);
}

std::size_t RowEchelon::reduce_work() const {
  const std::uint64_t p = field_.modulus();
  std::size_t first = cols_;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (work_[c] == 0) continue;
    const std::uint64_t x = field_.reduce(work_[c]);
    work_[c] = x;
    if (x == 0) continue;
    const std::int32_t k = pivot_at_[c];
    if (k < 0) {
      if (first == cols_) first = c;
      continue;
    }
    work_[c] = 0;
    const std::uint64_t g = p - x;
    const Pivot& pv = pivots_[static_cast<std::size_t>(k)];
    const std::size_t len = pv.idx.size();
    if (lazy_) {
      for (std::size_t t = 0; t < len; ++t) work_[pv.idx[t]] += g * pv.val[t];
    } else {
      for (std::size_t t = 0; t < len; ++t) work_[pv.idx[t]] = field_.reduce(work_[pv.idx[t]] + g * pv.val[t]);
    }
  }
  return first;
}

bool RowEchelon::insert(std::span<const std::uint32_t> row) {
  if (row.size() != cols_) throw DimensionMismatch("row length does not match echelon width");
  std::copy(row.begin(), row.end(), work_.begin());
  const std::size_t c0 = reduce_work();
  if (c0 == cols_) return false;
  const std::uint32_t inv = field_.inv(static_cast<std::uint32_t>(work_[c0]));
  Pivot pv;
  for (std::size_t j = c0 + 1; j < cols_; ++j) {
    if (work_[j] == 0) continue;
    const auto v = static_cast<std::uint32_t>(field_.reduce(work_[j]));
    if (v == 0) continue;
    pv.idx.push_back(static_cast<std::uint32_t>(j));
    pv.val.push_back(field_.mul(v, inv));
  }
  pivot_at_[c0] = static_cast<std::int32_t>(pivots_.size());
  pivots_.push_back(std::move(pv));
  return true;
}

std::size_t RowEchelon::rank_from(std::size_t col) const {
  std::size_t r = 0;
  for (std::size_t c = col; c < cols_; ++c) r += pivot_at_[c] >= 0 ? 1 : 0;
  return r;
}

bool RowEchelon::spans(std::span<const std::uint32_t> row) const {
  if (row.size() != cols_) throw DimensionMismatch("row length does not match echelon width");
  std::copy(row.begin(), row.end(), work_.begin());
  return reduce_work() == cols_;
}

}  // namespace srct
