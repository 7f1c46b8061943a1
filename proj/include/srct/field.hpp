#pragma once
/// Prime-field arithmetic, dense matrices over GF(p) and an incremental
/// row-echelon accumulator used by the entropy oracle.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace srct {

bool is_prime(std::uint64_t v);
std::uint64_t next_prime(std::uint64_t v);  // smallest prime >= v

/// GF(p) for a prime p < 2^31, so that products of reduced values fit in 64 bits.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  std::uint64_t reduce(std::uint64_t x) const {
    std::uint64_t q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * barrett_) >> 64);
    std::uint64_t r = x - q * p_;
    return r >= p_ ? r - p_ : r;
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(a >= b ? a - b : a + p_ - b);
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : static_cast<std::uint32_t>(p_ - a); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(reduce(std::uint64_t{a} * b));
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  std::uint32_t inv(std::uint32_t a) const;  // throws DivisionByZero on 0

  /// Number of unreduced products (p-1)^2 that can be added to a reduced value
  /// without overflowing 64 bits.
  std::uint64_t lazy_budget() const { return lazy_budget_; }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

 private:
  std::uint64_t p_;
  std::uint64_t barrett_;
  std::uint64_t lazy_budget_;
};

class FieldElem {
 public:
  FieldElem(std::uint64_t value, std::uint64_t p);
  std::uint64_t value() const { return value_; }
  std::uint64_t modulus() const { return p_; }

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem inverse() const;
  bool operator==(const FieldElem& o) const = default;

 private:
  void same_field(const FieldElem& o) const;
  std::uint64_t value_;
  std::uint64_t p_;
};

/// Row-major dense matrix over GF(p); entries are always reduced.
class FieldMatrix {
 public:
  FieldMatrix(std::size_t rows, std::size_t cols, std::uint64_t p);
  static FieldMatrix identity(std::size_t n, std::uint64_t p);
  static FieldMatrix from_rows(const std::vector<std::vector<std::uint64_t>>& rows, std::size_t cols,
                               std::uint64_t p);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint64_t modulus() const { return field_.modulus(); }
  const PrimeField& field() const { return field_; }

  std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::uint64_t v);
  std::span<const std::uint32_t> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<std::uint32_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const std::uint32_t> values);
  FieldMatrix stacked(const FieldMatrix& below) const;
  FieldMatrix select_rows(const std::vector<std::size_t>& idx) const;
  FieldMatrix select_cols(const std::vector<std::size_t>& idx) const;
  FieldMatrix with_modulus(std::uint64_t p) const;  // same integers, new field

  FieldMatrix operator*(const FieldMatrix& rhs) const;
  std::vector<std::uint32_t> apply(std::span<const std::uint32_t> x) const;  // A x

  bool operator==(const FieldMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && data_ == o.data_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  PrimeField field_;
  std::vector<std::uint32_t> data_;
};

std::size_t mat_rank(const FieldMatrix& m);
FieldMatrix mat_invert(const FieldMatrix& m);
FieldMatrix seeded_random_matrix(std::size_t rows, std::size_t cols, std::uint64_t p, std::uint64_t seed);

/// Reduced row echelon form. `pivots[r]` is the pivot column of row r.
struct Rref {
  FieldMatrix reduced;
  std::vector<std::size_t> pivots;
};
Rref rref(const FieldMatrix& m);

/// Unique solution of A x = b. Throws SingularMatrix if A has a nontrivial
/// kernel and ValidationError if the system is inconsistent.
std::vector<std::uint32_t> solve(const FieldMatrix& a, std::span<const std::uint32_t> b);

/// Incremental row-echelon basis. Pivot rows are kept sparse, so inserting
/// sparse rows against a sparse basis costs little more than a column scan.
class RowEchelon {
 public:
  RowEchelon(std::size_t cols, const PrimeField& field);

  bool insert(std::span<const std::uint32_t> row);  // true if the rank grew
  bool spans(std::span<const std::uint32_t> row) const;
  std::size_t rank() const { return pivots_.size(); }
  std::size_t rank_from(std::size_t col) const;  // pivots in columns >= col
  std::size_t cols() const { return cols_; }

 private:
  struct Pivot {
    std::vector<std::uint32_t> idx;  // columns after the pivot column
    std::vector<std::uint32_t> val;
  };
  // Reduces `work_` against the current basis; returns first nonzero column or cols_.
  std::size_t reduce_work() const;

  std::size_t cols_;
  PrimeField field_;
  bool lazy_;
  std::vector<std::int32_t> pivot_at_;
  std::vector<Pivot> pivots_;
  mutable std::vector<std::uint64_t> work_;
};

}  // namespace srct
