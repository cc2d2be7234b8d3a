#include "koszulkit/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace kk::la {

SparseVec axpy(const Field& f, const SparseVec& y, const Rational& c, const SparseVec& x) {
  if (c.is_zero() || x.empty()) return y;
  SparseVec out;
  out.reserve(y.size() + x.size());
  auto iy = y.begin();
  auto ix = x.begin();
  while (iy != y.end() || ix != x.end()) {
    if (ix == x.end() || (iy != y.end() && iy->index < ix->index)) {
      out.push_back(*iy++);
    } else if (iy == y.end() || ix->index < iy->index) {
      out.push_back({ix->index, f.mul(c, ix->value)});
      ++ix;
    } else {
      Rational v = f.add(iy->value, f.mul(c, ix->value));
      if (!v.is_zero()) out.push_back({iy->index, std::move(v)});
      ++iy;
      ++ix;
    }
  }
  return out;
}

SparseVec scaled(const Field& f, const SparseVec& x, const Rational& c) {
  if (c.is_zero()) return {};
  SparseVec out;
  out.reserve(x.size());
  for (const auto& e : x) out.push_back({e.index, f.mul(c, e.value)});
  return out;
}

Rational value_at(const SparseVec& v, int index) {
  auto it = std::lower_bound(v.begin(), v.end(), index, [](const Entry& e, int i) { return e.index < i; });
  if (it != v.end() && it->index == index) return it->value;
  return Rational(0);
}

SparseVec collect(const Field& f, std::vector<Entry> raw) {
  std::sort(raw.begin(), raw.end(), [](const Entry& a, const Entry& b) { return a.index < b.index; });
  SparseVec out;
  for (auto& e : raw) {
    if (!out.empty() && out.back().index == e.index) {
      out.back().value = f.add(out.back().value, e.value);
    } else {
      if (!out.empty() && out.back().value.is_zero()) out.pop_back();
      out.push_back(std::move(e));
    }
  }
  if (!out.empty() && out.back().value.is_zero()) out.pop_back();
  return out;
}

SparseVec from_dense(const Field& f, const std::vector<Rational>& dense) {
  SparseVec out;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    Rational v = f.embed(dense[i]);
    if (!v.is_zero()) out.push_back({static_cast<int>(i), std::move(v)});
  }
  return out;
}

std::vector<Rational> to_dense(const SparseVec& v, int size) {
  std::vector<Rational> out(static_cast<std::size_t>(size));
  for (const auto& e : v) out.at(static_cast<std::size_t>(e.index)) = e.value;
  return out;
}

// ---------------------------------------------------------------------------
// Matrix

Matrix Matrix::identity(const Field& f, int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.columns_[static_cast<std::size_t>(i)] = {{i, f.from_int(1)}};
  return m;
}

Matrix Matrix::from_dense(const Field& f, const std::vector<std::vector<Rational>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r == 0 ? 0 : static_cast<int>(rows.front().size());
  Matrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c) {
      throw std::invalid_argument("Matrix::from_dense: ragged rows");
    }
    for (int j = 0; j < c; ++j) {
      Rational v = f.embed(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      if (!v.is_zero()) m.columns_[static_cast<std::size_t>(j)].push_back({i, std::move(v)});
    }
  }
  return m;
}

void Matrix::set_column(int c, SparseVec v) {
  for (const auto& e : v) {
    if (e.index < 0 || e.index >= rows_) throw std::out_of_range("Matrix::set_column: row index out of range");
  }
  columns_.at(static_cast<std::size_t>(c)) = std::move(v);
}

Rational Matrix::at(int r, int c) const { return value_at(column(c), r); }

void Matrix::set(int r, int c, const Rational& v) {
  if (r < 0 || r >= rows_) throw std::out_of_range("Matrix::set: row index out of range");
  auto& col = columns_.at(static_cast<std::size_t>(c));
  auto it = std::lower_bound(col.begin(), col.end(), r, [](const Entry& e, int i) { return e.index < i; });
  if (it != col.end() && it->index == r) {
    if (v.is_zero()) col.erase(it);
    else it->value = v;
  } else if (!v.is_zero()) {
    col.insert(it, {r, v});
  }
}

std::vector<SparseVec> Matrix::row_vectors() const {
  std::vector<SparseVec> rows(static_cast<std::size_t>(rows_));
  for (int c = 0; c < cols_; ++c) {
    for (const auto& e : columns_[static_cast<std::size_t>(c)]) rows[static_cast<std::size_t>(e.index)].push_back({c, e.value});
  }
  return rows;
}

std::vector<std::vector<Rational>> Matrix::to_dense() const {
  std::vector<std::vector<Rational>> d(static_cast<std::size_t>(rows_), std::vector<Rational>(static_cast<std::size_t>(cols_)));
  for (int c = 0; c < cols_; ++c) {
    for (const auto& e : columns_[static_cast<std::size_t>(c)]) d[static_cast<std::size_t>(e.index)][static_cast<std::size_t>(c)] = e.value;
  }
  return d;
}

std::size_t Matrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

SparseVec Matrix::apply(const Field& f, const SparseVec& x) const {
  SparseVec out;
  for (const auto& e : x) out = axpy(f, out, e.value, column(e.index));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  auto rows = row_vectors();
  for (int r = 0; r < rows_; ++r) t.columns_[static_cast<std::size_t>(r)] = std::move(rows[static_cast<std::size_t>(r)]);
  return t;
}

Matrix Matrix::multiply(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix::multiply: dimension mismatch");
  Matrix m(a.rows_, b.cols_);
  for (int c = 0; c < b.cols_; ++c) m.columns_[static_cast<std::size_t>(c)] = a.apply(f, b.column(c));
  return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (int c = 0; c < a.cols_; ++c) {
    const auto& x = a.columns_[static_cast<std::size_t>(c)];
    const auto& y = b.columns_[static_cast<std::size_t>(c)];
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].index != y[i].index || x[i].value != y[i].value) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Markowitz-style sparse elimination

namespace {

bool has_index(const SparseVec& v, int index) {
  auto it = std::lower_bound(v.begin(), v.end(), index, [](const Entry& e, int i) { return e.index < i; });
  return it != v.end() && it->index == index;
}

class Eliminator {
 public:
  Eliminator(const Field& f, std::vector<SparseVec> rows, int ncols, int pivot_limit, bool gauss_jordan)
      : f_(f),
        rows_(std::move(rows)),
        pivot_limit_(pivot_limit),
        gauss_jordan_(gauss_jordan),
        active_(rows_.size(), 1),
        pivot_col_(rows_.size(), -1),
        col_rows_(static_cast<std::size_t>(ncols)),
        col_count_(static_cast<std::size_t>(ncols), 0) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (const auto& e : rows_[r]) {
        if (e.index < 0 || e.index >= ncols) throw std::out_of_range("elimination: column index out of range");
        col_rows_[static_cast<std::size_t>(e.index)].push_back(static_cast<int>(r));
        if (e.index < pivot_limit_) ++col_count_[static_cast<std::size_t>(e.index)];
      }
    }
    for (int c = 0; c < pivot_limit_; ++c) {
      if (col_count_[static_cast<std::size_t>(c)] > 0) queue_.insert({col_count_[static_cast<std::size_t>(c)], c});
    }
  }

  void run() {
    std::vector<int> candidates;
    while (!queue_.empty()) {
      const int c = queue_.begin()->second;
      candidates.clear();
      auto& list = col_rows_[static_cast<std::size_t>(c)];
      std::vector<int> kept;
      kept.reserve(list.size());
      for (int r : list) {
        if (!has_index(rows_[static_cast<std::size_t>(r)], c)) continue;
        if (!kept.empty() && kept.back() == r) continue;
        kept.push_back(r);
        if (active_[static_cast<std::size_t>(r)]) candidates.push_back(r);
      }
      std::sort(kept.begin(), kept.end());
      kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
      list = kept;
      std::sort(candidates.begin(), candidates.end());
      candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
      if (candidates.empty()) {
        set_count(c, 0);
        continue;
      }
      int p = candidates.front();
      for (int r : candidates) {
        if (rows_[static_cast<std::size_t>(r)].size() < rows_[static_cast<std::size_t>(p)].size()) p = r;
      }
      pivot_on(p, c, candidates);
    }
  }

  int rank() const { return rank_; }
  const std::vector<SparseVec>& rows() const { return rows_; }
  const std::vector<int>& pivot_cols() const { return pivot_col_; }
  const std::vector<char>& active() const { return active_; }

 private:
  void set_count(int c, int value) {
    auto& cur = col_count_[static_cast<std::size_t>(c)];
    if (cur == value) return;
    if (cur > 0) queue_.erase({cur, c});
    cur = value;
    if (cur > 0) queue_.insert({cur, c});
  }

  void bump(int c, int delta) {
    if (c >= pivot_limit_) return;
    set_count(c, col_count_[static_cast<std::size_t>(c)] + delta);
  }

  void pivot_on(int p, int c, const std::vector<int>& candidates) {
    auto& prow = rows_[static_cast<std::size_t>(p)];
    Rational lead = value_at(prow, c);
    if (!lead.is_one()) prow = scaled(f_, prow, f_.inv(lead));
    active_[static_cast<std::size_t>(p)] = 0;
    pivot_col_[static_cast<std::size_t>(p)] = c;
    ++rank_;
    for (const auto& e : prow) bump(e.index, -1);

    for (int r : candidates) {
      if (r == p) continue;
      eliminate_from(r, c, prow, true);
    }
    if (gauss_jordan_) {
      for (int r : col_rows_[static_cast<std::size_t>(c)]) {
        if (r == p || active_[static_cast<std::size_t>(r)]) continue;
        if (pivot_col_[static_cast<std::size_t>(r)] < 0) continue;
        if (!has_index(rows_[static_cast<std::size_t>(r)], c)) continue;
        eliminate_from(r, c, prow, false);
      }
    }
  }

  // row r <- row r - r[c] * prow, keeping column bookkeeping in sync.
  void eliminate_from(int r, int c, const SparseVec& prow, bool counted) {
    auto& row = rows_[static_cast<std::size_t>(r)];
    Rational factor = value_at(row, c);
    if (factor.is_zero()) return;
    SparseVec out;
    out.reserve(row.size() + prow.size());
    auto ir = row.begin();
    auto ip = prow.begin();
    while (ir != row.end() || ip != prow.end()) {
      if (ip == prow.end() || (ir != row.end() && ir->index < ip->index)) {
        out.push_back(std::move(*ir));
        ++ir;
      } else if (ir == row.end() || ip->index < ir->index) {
        out.push_back({ip->index, f_.neg(f_.mul(factor, ip->value))});
        col_rows_[static_cast<std::size_t>(ip->index)].push_back(r);
        if (counted) bump(ip->index, +1);
        ++ip;
      } else {
        Rational v = f_.sub_mul(ir->value, factor, ip->value);
        if (!v.is_zero()) {
          out.push_back({ir->index, std::move(v)});
        } else if (counted) {
          bump(ir->index, -1);
        }
        ++ir;
        ++ip;
      }
    }
    row = std::move(out);
  }

  const Field& f_;
  std::vector<SparseVec> rows_;
  int pivot_limit_;
  bool gauss_jordan_;
  std::vector<char> active_;
  std::vector<int> pivot_col_;
  std::vector<std::vector<int>> col_rows_;
  std::vector<int> col_count_;
  std::set<std::pair<int, int>> queue_;
  int rank_ = 0;
};

}  // namespace

RankKernel rank_kernel(const Field& f, const Matrix& m) {
  Eliminator e(f, m.row_vectors(), m.cols(), m.cols(), true);
  e.run();
  RankKernel out;
  out.rank = e.rank();
  std::vector<char> is_pivot(static_cast<std::size_t>(m.cols()), 0);
  for (int pc : e.pivot_cols()) {
    if (pc >= 0) is_pivot[static_cast<std::size_t>(pc)] = 1;
  }
  std::map<int, std::vector<Entry>> raw;
  for (int c = 0; c < m.cols(); ++c) {
    if (!is_pivot[static_cast<std::size_t>(c)]) raw[c].push_back({c, f.from_int(1)});
  }
  const auto& rows = e.rows();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    int pc = e.pivot_cols()[r];
    if (pc < 0) continue;
    for (const auto& en : rows[r]) {
      if (en.index == pc) continue;
      raw[en.index].push_back({pc, f.neg(en.value)});
    }
  }
  for (auto& [col, entries] : raw) out.kernel.push_back(collect(f, std::move(entries)));
  return out;
}

int rank(const Field& f, const Matrix& m) {
  // Eliminate along the shorter side.
  if (m.rows() <= m.cols()) return rank_of_rows(f, m.row_vectors(), m.cols());
  std::vector<SparseVec> cols;
  cols.reserve(static_cast<std::size_t>(m.cols()));
  for (int c = 0; c < m.cols(); ++c) cols.push_back(m.column(c));
  return rank_of_rows(f, std::move(cols), m.rows());
}

int rank_of_rows(const Field& f, std::vector<SparseVec> rows, int ncols) {
  Eliminator e(f, std::move(rows), ncols, ncols, false);
  e.run();
  return e.rank();
}

std::optional<SparseVec> solve_in_image(const Field& f, const Matrix& m, const SparseVec& b, int b_length) {
  if (b_length != m.rows()) throw std::invalid_argument("solve_in_image: right-hand side has wrong length");
  for (const auto& e : b) {
    if (e.index < 0 || e.index >= m.rows()) throw std::invalid_argument("solve_in_image: right-hand side index out of range");
  }
  auto rows = m.row_vectors();
  const int rhs = m.cols();
  for (const auto& e : b) rows[static_cast<std::size_t>(e.index)].push_back({rhs, e.value});
  Eliminator e(f, std::move(rows), m.cols() + 1, m.cols(), true);
  e.run();
  const auto& out_rows = e.rows();
  std::vector<Entry> x;
  for (std::size_t r = 0; r < out_rows.size(); ++r) {
    int pc = e.pivot_cols()[r];
    if (pc < 0) {
      if (!out_rows[r].empty()) return std::nullopt;
      continue;
    }
    Rational v = value_at(out_rows[r], rhs);
    if (!v.is_zero()) x.push_back({pc, v});
  }
  return collect(f, std::move(x));
}

Matrix diagonalize_symmetric_form(const Field& f, const Matrix& g) {
  if (g.rows() != g.cols()) throw std::invalid_argument("diagonalize_symmetric_form: matrix is not square");
  if (f.characteristic() == 2) throw std::domain_error("diagonalize_symmetric_form: characteristic 2 is not supported");
  const int n = g.rows();
  auto a = g.to_dense();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) {
        throw std::invalid_argument("diagonalize_symmetric_form: matrix is not symmetric");
      }
    }
  }
  auto p = Matrix::identity(f, n).to_dense();
  auto at = [&](int i, int j) -> Rational& { return a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; };
  // Column operation c_j += s*c_i applied congruently (also to rows) and to P.
  auto add_multiple = [&](int j, int i, const Rational& s) {
    for (int r = 0; r < n; ++r) at(r, j) = f.add(at(r, j), f.mul(s, at(r, i)));
    for (int c = 0; c < n; ++c) at(j, c) = f.add(at(j, c), f.mul(s, at(i, c)));
    for (int r = 0; r < n; ++r) {
      auto& pr = p[static_cast<std::size_t>(r)];
      pr[static_cast<std::size_t>(j)] = f.add(pr[static_cast<std::size_t>(j)], f.mul(s, pr[static_cast<std::size_t>(i)]));
    }
  };
  auto swap_basis = [&](int i, int j) {
    for (int r = 0; r < n; ++r) std::swap(at(r, i), at(r, j));
    for (int c = 0; c < n; ++c) std::swap(at(i, c), at(j, c));
    for (int r = 0; r < n; ++r) std::swap(p[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)], p[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)]);
  };
  for (int k = 0; k < n; ++k) {
    if (at(k, k).is_zero()) {
      int j = -1;
      for (int t = k + 1; t < n && j < 0; ++t) {
        if (!at(t, t).is_zero()) j = t;
      }
      if (j >= 0) {
        swap_basis(k, j);
      } else {
        for (int t = k + 1; t < n && j < 0; ++t) {
          if (!at(k, t).is_zero()) j = t;
        }
        if (j < 0) continue;  // row k already zero
        add_multiple(k, j, f.from_int(1));
      }
    }
    const Rational d = at(k, k);
    for (int j = k + 1; j < n; ++j) {
      if (at(k, j).is_zero()) continue;
      add_multiple(j, k, f.neg(f.div(at(k, j), d)));
    }
  }
  return Matrix::from_dense(f, p);
}

Matrix symplectic_basis(const Field& f, const Matrix& g) {
  if (g.rows() != g.cols()) throw std::invalid_argument("symplectic_basis: matrix is not square");
  const int n = g.rows();
  if (n % 2 != 0) throw std::invalid_argument("symplectic_basis: odd dimension");
  auto form = g.to_dense();
  auto pair = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
    Rational s(0);
    for (int i = 0; i < n; ++i) {
      if (x[static_cast<std::size_t>(i)].is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        if (y[static_cast<std::size_t>(j)].is_zero()) continue;
        s = f.add(s, f.mul(x[static_cast<std::size_t>(i)], f.mul(form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], y[static_cast<std::size_t>(j)])));
      }
    }
    return s;
  };
  std::vector<std::vector<Rational>> pool;
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> v(static_cast<std::size_t>(n), Rational(0));
    v[static_cast<std::size_t>(i)] = f.from_int(1);
    pool.push_back(std::move(v));
  }
  std::vector<std::vector<Rational>> es, fs;
  while (!pool.empty()) {
    auto e = pool.front();
    int partner = -1;
    for (std::size_t k = 1; k < pool.size() && partner < 0; ++k) {
      if (!pair(e, pool[k]).is_zero()) partner = static_cast<int>(k);
    }
    if (partner < 0) throw std::domain_error("symplectic_basis: form is degenerate");
    auto fv = pool[static_cast<std::size_t>(partner)];
    Rational s = pair(e, fv);
    for (auto& x : fv) x = f.div(x, s);
    std::vector<std::vector<Rational>> rest;
    for (std::size_t k = 1; k < pool.size(); ++k) {
      if (static_cast<int>(k) == partner) continue;
      auto v = pool[k];
      // project v off span(e, fv): v - <v,fv>... keep <e,v'> = <fv,v'> = 0
      Rational a = pair(e, v);   // coefficient along fv
      Rational b = pair(fv, v);  // coefficient along e (with sign)
      for (int i = 0; i < n; ++i) {
        auto& vi = v[static_cast<std::size_t>(i)];
        vi = f.sub(vi, f.mul(a, fv[static_cast<std::size_t>(i)]));
        vi = f.add(vi, f.mul(b, e[static_cast<std::size_t>(i)]));
      }
      rest.push_back(std::move(v));
    }
    es.push_back(std::move(e));
    fs.push_back(std::move(fv));
    pool = std::move(rest);
  }
  std::vector<std::vector<Rational>> p(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
  const int m = n / 2;
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < n; ++i) {
      p[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = es[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
      p[static_cast<std::size_t>(i)][static_cast<std::size_t>(m + k)] = fs[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
    }
  }
  return Matrix::from_dense(f, p);
}

std::optional<Matrix> inverse(const Field& f, const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix is not square");
  const int n = m.rows();
  auto rows = m.row_vectors();
  for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)].push_back({n + i, f.from_int(1)});
  Eliminator e(f, std::move(rows), 2 * n, n, true);
  e.run();
  if (e.rank() != n) return std::nullopt;
  Matrix inv(n, n);
  std::vector<std::vector<Rational>> dense(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
  for (std::size_t r = 0; r < e.rows().size(); ++r) {
    int pc = e.pivot_cols()[r];
    for (const auto& en : e.rows()[r]) {
      if (en.index >= n) dense[static_cast<std::size_t>(pc)][static_cast<std::size_t>(en.index - n)] = en.value;
    }
  }
  return Matrix::from_dense(f, dense);
}

// ---------------------------------------------------------------------------
// EchelonBasis

SparseVec EchelonBasis::reduce(const SparseVec& v, std::vector<std::pair<int, Rational>>* used) const {
  std::map<int, Rational> acc;
  for (const auto& e : v) acc.emplace(e.index, e.value);
  auto it = acc.begin();
  while (it != acc.end()) {
    auto found = lead_to_pivot_.find(it->first);
    if (found == lead_to_pivot_.end()) {
      ++it;
      continue;
    }
    const int lead = it->first;
    const Rational coef = it->second;
    if (used) used->emplace_back(found->second, coef);
    for (const auto& e : pivots_[static_cast<std::size_t>(found->second)]) {
      auto slot = acc.find(e.index);
      Rational nv = field_.sub_mul(slot == acc.end() ? Rational(0) : slot->second, coef, e.value);
      if (nv.is_zero()) {
        if (slot != acc.end()) acc.erase(slot);
      } else if (slot != acc.end()) {
        slot->second = std::move(nv);
      } else {
        acc.emplace(e.index, std::move(nv));
      }
    }
    it = acc.lower_bound(lead);
  }
  SparseVec out;
  out.reserve(acc.size());
  for (auto& [i, val] : acc) out.push_back({i, val});
  return out;
}

int EchelonBasis::insert(const SparseVec& v, int tag) {
  SparseVec r = reduce(v);
  if (r.empty()) return -1;
  Rational lead = r.front().value;
  if (!lead.is_one()) r = scaled(field_, r, field_.inv(lead));
  const int id = static_cast<int>(pivots_.size());
  lead_to_pivot_.emplace(r.front().index, id);
  pivots_.push_back(std::move(r));
  tags_.push_back(tag);
  return id;
}

}  // namespace kk::la
