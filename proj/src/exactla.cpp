#include "operadix/exactla.hpp"

#include "operadix/errors.hpp"

#include <algorithm>
#include <string>

namespace operadix {

namespace {

using IntRow = std::vector<std::pair<std::uint32_t, Integer>>;

void normalize_row(SparseRow& row) {
  std::sort(row.begin(), row.end(),
            [](const SparseEntry& a, const SparseEntry& b) { return a.first < b.first; });
  SparseRow merged;
  merged.reserve(row.size());
  for (auto& entry : row) {
    if (!merged.empty() && merged.back().first == entry.first) {
      merged.back().second += entry.second;
    } else {
      merged.push_back(std::move(entry));
    }
  }
  std::erase_if(merged, [](const SparseEntry& e) { return e.second == 0; });
  row = std::move(merged);
}

// Divides out the content and makes the leading entry positive.
void make_primitive(IntRow& row) {
  if (row.empty()) return;
  Integer g = 0;
  for (const auto& [col, value] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), value.get_mpz_t());
    if (g == 1) break;
  }
  if (row.front().second < 0) g = -g;
  if (g != 1) {
    for (auto& [col, value] : row) mpz_divexact(value.get_mpz_t(), value.get_mpz_t(), g.get_mpz_t());
  }
}

IntRow to_integer_row(const SparseRow& row) {
  Integer lcm = 1;
  for (const auto& [col, value] : row) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), value.get_den_mpz_t());
  }
  IntRow out;
  out.reserve(row.size());
  for (const auto& [col, value] : row) {
    Integer scaled = lcm / value.get_den() * value.get_num();
    out.emplace_back(col, std::move(scaled));
  }
  make_primitive(out);
  return out;
}

// Returns a*r - b*p restricted to nonzero entries, where a, b are chosen so
// that column `col` cancels. `p` must be nonzero at `col`.
IntRow eliminate(const IntRow& r, const IntRow& p, std::uint32_t col) {
  auto find = [col](const IntRow& row) -> const Integer& {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& e, std::uint32_t c) { return e.first < c; });
    return it->second;
  };
  const Integer& pv = find(p);
  const Integer& rv = find(r);
  Integer g = gcd(pv, rv);
  Integer a = pv / g;
  Integer b = rv / g;

  IntRow out;
  out.reserve(r.size() + p.size());
  std::size_t i = 0, j = 0;
  Integer tmp;
  while (i < r.size() || j < p.size()) {
    if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
      out.emplace_back(r[i].first, a * r[i].second);
      ++i;
    } else if (i == r.size() || p[j].first < r[i].first) {
      out.emplace_back(p[j].first, -(b * p[j].second));
      ++j;
    } else {
      if (r[i].first != col) {
        mpz_mul(tmp.get_mpz_t(), a.get_mpz_t(), r[i].second.get_mpz_t());
        mpz_submul(tmp.get_mpz_t(), b.get_mpz_t(), p[j].second.get_mpz_t());
        if (tmp != 0) out.emplace_back(r[i].first, tmp);
      }
      ++i;
      ++j;
    }
  }
  make_primitive(out);
  return out;
}

// Row echelon form by leading-column buckets. Only rows sharing the current
// leading column are touched, which keeps sparse inputs sparse.
std::vector<IntRow> echelon(const QMatrix& m) {
  std::vector<std::vector<IntRow>> buckets(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    IntRow row = to_integer_row(m.row(r));
    if (!row.empty()) buckets[row.front().first].push_back(std::move(row));
  }
  std::vector<IntRow> pivots;
  for (std::uint32_t c = 0; c < m.cols(); ++c) {
    auto& bucket = buckets[c];
    if (bucket.empty()) continue;
    auto best = std::min_element(bucket.begin(), bucket.end(), [](const IntRow& a, const IntRow& b) {
      auto ba = bit_size(a.front().second), bb = bit_size(b.front().second);
      if (ba != bb) return ba < bb;
      return a.size() < b.size();
    });
    IntRow pivot = std::move(*best);
    bucket.erase(best);
    for (const auto& row : bucket) {
      IntRow reduced = eliminate(row, pivot, c);
      if (!reduced.empty()) buckets[reduced.front().first].push_back(std::move(reduced));
    }
    std::vector<IntRow>().swap(bucket);
    pivots.push_back(std::move(pivot));
  }
  return pivots;
}

// Back substitution: clears every pivot column above its pivot.
std::vector<IntRow> reduced_echelon(const QMatrix& m) {
  std::vector<IntRow> rows = echelon(m);
  for (std::size_t i = rows.size(); i-- > 0;) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      std::uint32_t col = rows[j].front().first;
      auto it = std::lower_bound(rows[i].begin(), rows[i].end(), col,
                                 [](const auto& e, std::uint32_t c) { return e.first < c; });
      if (it != rows[i].end() && it->first == col) rows[i] = eliminate(rows[i], rows[j], col);
    }
  }
  return rows;
}

}  // namespace

QMatrix::QMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

QMatrix::QMatrix(std::size_t rows, std::size_t cols, const std::vector<Rational>& entries)
    : cols_(cols), rows_(rows) {
  if (entries.size() != rows * cols) {
    throw DimensionError("QMatrix: expected " + std::to_string(rows * cols) + " entries, got " +
                         std::to_string(entries.size()));
  }
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const Rational& v = entries[r * cols + c];
      if (v != 0) rows_[r].emplace_back(static_cast<std::uint32_t>(c), v);
    }
  }
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.rows_[i].emplace_back(static_cast<std::uint32_t>(i), 1);
  return m;
}

QMatrix QMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
  QMatrix m(0, cols);
  for (const auto& row : rows) {
    if (row.size() != cols) throw DimensionError("QMatrix::from_rows: ragged rows");
    std::vector<Rational> dense;
    for (long v : row) dense.emplace_back(v);
    m.append_dense_row(dense);
  }
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<Rational>>& rows, std::size_t cols) {
  QMatrix m(0, cols);
  for (const auto& row : rows) m.append_dense_row(row);
  return m;
}

Rational QMatrix::at(std::size_t r, std::size_t c) const {
  if (c >= cols_) throw DimensionError("QMatrix::at: column out of range");
  const auto& row = rows_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const SparseEntry& e, std::size_t col) { return e.first < col; });
  if (it != row.end() && it->first == c) return it->second;
  return 0;
}

void QMatrix::set(std::size_t r, std::size_t c, const Rational& value) {
  if (c >= cols_) throw DimensionError("QMatrix::set: column out of range");
  auto& row = rows_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const SparseEntry& e, std::size_t col) { return e.first < col; });
  if (it != row.end() && it->first == c) {
    if (value == 0) {
      row.erase(it);
    } else {
      it->second = value;
    }
  } else if (value != 0) {
    row.insert(it, {static_cast<std::uint32_t>(c), value});
  }
}

void QMatrix::append_row(SparseRow row) {
  for (const auto& e : row) {
    if (e.first >= cols_) throw DimensionError("QMatrix::append_row: column out of range");
  }
  normalize_row(row);
  rows_.push_back(std::move(row));
}

void QMatrix::append_dense_row(const std::vector<Rational>& row) {
  if (row.size() != cols_) throw DimensionError("QMatrix::append_dense_row: length mismatch");
  SparseRow sparse;
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (row[c] != 0) sparse.emplace_back(static_cast<std::uint32_t>(c), row[c]);
  }
  rows_.push_back(std::move(sparse));
}

std::vector<Rational> QMatrix::dense_row(std::size_t r) const {
  std::vector<Rational> out(cols_);
  for (const auto& [c, v] : rows_.at(r)) out[c] = v;
  return out;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (const auto& [c, v] : rows_[r]) t.rows_[c].emplace_back(static_cast<std::uint32_t>(r), v);
  }
  return t;
}

QMatrix QMatrix::stacked(const QMatrix& other) const {
  if (other.cols_ != cols_) {
    throw DimensionError("QMatrix::stacked: column mismatch (" + std::to_string(cols_) + " vs " +
                         std::to_string(other.cols_) + ")");
  }
  QMatrix out = *this;
  out.rows_.insert(out.rows_.end(), other.rows_.begin(), other.rows_.end());
  return out;
}

std::vector<Rational> QMatrix::multiply(const std::vector<Rational>& x) const {
  if (x.size() != cols_) throw DimensionError("QMatrix::multiply: length mismatch");
  std::vector<Rational> y(rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (const auto& [c, v] : rows_[r]) y[r] += v * x[c];
  }
  return y;
}

bool operator==(const QMatrix& a, const QMatrix& b) {
  return a.cols_ == b.cols_ && a.rows_ == b.rows_;
}

std::size_t rank(const QMatrix& m) { return echelon(m).size(); }

QMatrix row_basis(const QMatrix& m) {
  QMatrix out(0, m.cols());
  for (const auto& row : reduced_echelon(m)) {
    const Integer& lead = row.front().second;
    SparseRow r;
    r.reserve(row.size());
    for (const auto& [c, v] : row) {
      Rational q(v, lead);
      q.canonicalize();
      r.emplace_back(c, std::move(q));
    }
    out.append_row(std::move(r));
  }
  return out;
}

std::vector<std::vector<Rational>> nullspace(const QMatrix& m) {
  QMatrix rref = row_basis(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t r = 0; r < rref.rows(); ++r) is_pivot[rref.row(r).front().first] = true;

  std::vector<std::vector<Rational>> basis;
  for (std::uint32_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> x(m.cols());
    x[f] = 1;
    for (std::size_t r = 0; r < rref.rows(); ++r) {
      const auto& row = rref.row(r);
      auto it = std::lower_bound(row.begin(), row.end(), f,
                                 [](const SparseEntry& e, std::uint32_t c) { return e.first < c; });
      if (it != row.end() && it->first == f) x[row.front().first] = -it->second;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

SubspaceDims subspace_dim_sum(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.cols()) {
    throw DimensionError("subspace_dim_sum: column mismatch (" + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.cols()) + ")");
  }
  return {rank(a), rank(b), rank(a.stacked(b))};
}

bool in_row_space(const QMatrix& m, const std::vector<Rational>& v) {
  QMatrix extra(0, m.cols());
  extra.append_dense_row(v);
  return rank(m) == rank(m.stacked(extra));
}

}  // namespace operadix
