#include "koszulkit/tor.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <sstream>
#include <stdexcept>
#include <mutex>
#include <thread>

namespace kk::tor {

namespace {

int grade_sum(const GradeKey& g) {
  int s = 0;
  for (int i = 0; i < g.size(); ++i) s += g[i];
  return s;
}

GradeKey zero_like(const GradeKey& g) { return GradeKey(g.size()); }

std::string pack(const std::vector<int>& seq) {
  std::string s(seq.size() * sizeof(int), '\0');
  std::memcpy(s.data(), seq.data(), s.size());
  return s;
}

// Runs fn(k) for k in [0, count) on up to `jobs` threads.
template <class Fn>
void parallel_for(std::size_t count, int jobs, Fn fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mu;
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t k = next.fetch_add(1);
        if (k >= count) return;
        try {
          fn(k);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace

bool BarBounds::contains(int p, const GradeKey& g) const {
  if (p < 0 || p > p_max) return false;
  if (!g.dominated_by(grade_max)) return false;
  if (total_max >= 0 && p + grade_sum(g) > total_max) return false;
  return true;
}

long long BettiTable::at(int p, const GradeKey& g) const {
  if (!bounds.contains(p, g)) {
    throw std::out_of_range("BettiTable: (" + std::to_string(p) + ", " + g.to_string() + ") is outside the computed region");
  }
  auto it = entries.find({p, g});
  return it == entries.end() ? 0 : it->second;
}

BarComplex::BarComplex(const alg::GradedAlgebra& a, BarBounds bounds)
    : a_(std::make_shared<const alg::GradedAlgebra>(a)), bounds_(std::move(bounds)) {
  if (bounds_.grade_max.size() != a.grade_length()) throw std::invalid_argument("BarComplex: grade length mismatch");
  if (!a.trusted(bounds_.grade_max)) {
    throw std::out_of_range("BarComplex: grade bound " + bounds_.grade_max.to_string() + " exceeds the trusted bound " +
                            a.trusted_bound().to_string());
  }
  for (int x = 0; x < a.piece_count(); ++x) {
    by_weight_.push_back(x);
    weight_.push_back(grade_sum(a.piece(x).grade));
  }
  std::stable_sort(by_weight_.begin(), by_weight_.end(), [&](int x, int y) { return weight_[static_cast<std::size_t>(x)] < weight_[static_cast<std::size_t>(y)]; });
  std::vector<int> seq;
  std::unordered_map<BlockId, Block*, BlockIdHash, BlockIdEq> lookup;
  enumerate(seq, zero_like(bounds_.grade_max), GradeKey(), lookup);
}

void BarComplex::enumerate(std::vector<int>& seq, const GradeKey& grade, const GradeKey& fine,
                           std::unordered_map<BlockId, Block*, BlockIdHash, BlockIdEq>& lookup) {
  int len = static_cast<int>(seq.size());
  if (len > 0) {
    BlockId id{len, grade, fine};
    auto it = lookup.find(id);
    if (it == lookup.end()) {
      Block* fresh = &blocks_[id];
      fresh->p = len;
      it = lookup.emplace(id, fresh).first;
    }
    Block& blk = *it->second;
    blk.seq_index.emplace(pack(seq), static_cast<int>(blk.offsets.size()));
    blk.flat.insert(blk.flat.end(), seq.begin(), seq.end());
    blk.offsets.push_back(blk.dim);
    long long d = 1;
    for (int x : seq) d *= a_->piece(x).dim;
    blk.dim += d;
  }
  if (len > bounds_.p_max) return;
  int budget = grade_sum(bounds_.grade_max) - grade_sum(grade);
  if (bounds_.total_max >= 0) budget = std::min(budget, bounds_.total_max - len - grade_sum(grade));
  for (int x : by_weight_) {
    if (weight_[static_cast<std::size_t>(x)] > budget) break;
    const auto& pc = a_->piece(x);
    GradeKey g = grade + pc.grade;
    if (!g.dominated_by(bounds_.grade_max)) continue;
    // The extension is needed for Betti numbers in bar degree len+1 or len.
    if (!bounds_.contains(len, g)) continue;
    seq.push_back(x);
    enumerate(seq, g, fine + pc.fine, lookup);
    seq.pop_back();
  }
}

std::vector<BarComplex::BlockId> BarComplex::blocks() const {
  std::vector<BlockId> out;
  for (const auto& [id, blk] : blocks_) out.push_back(id);
  return out;
}

long long BarComplex::dim(const BlockId& b) const {
  auto it = blocks_.find(b);
  return it == blocks_.end() ? 0 : it->second.dim;
}

long long BarComplex::position(const Block& blk, const std::vector<int>& seq, const std::vector<int>& coords) const {
  auto it = blk.seq_index.find(pack(seq));
  if (it == blk.seq_index.end()) throw std::logic_error("BarComplex: missing tensor word");
  long long pos = 0;
  for (std::size_t k = 0; k < seq.size(); ++k) pos = pos * a_->piece(seq[k]).dim + coords[k];
  return blk.offsets[static_cast<std::size_t>(it->second)] + pos;
}

la::Matrix BarComplex::differential(const BlockId& b) const {
  if (b.p < 2) throw std::invalid_argument("BarComplex::differential: needs p >= 2");
  const Block& src = blocks_.at(b);
  auto tgt_it = blocks_.find(BlockId{b.p - 1, b.grade, b.fine});
  long long rows = tgt_it == blocks_.end() ? 0 : tgt_it->second.dim;
  if (src.dim > INT32_MAX || rows > INT32_MAX) throw std::length_error("BarComplex: block too large");
  la::Matrix m(static_cast<int>(rows), static_cast<int>(src.dim));
  if (rows == 0) return m;
  const Block& tgt = tgt_it->second;
  const la::Field& f = a_->field();
  la::Rational minus_one = f.neg(la::Rational(1));
  int p = b.p;

  for (std::size_t s = 0; s < src.offsets.size(); ++s) {
    std::vector<int> seq(src.flat.begin() + static_cast<long>(s) * p, src.flat.begin() + static_cast<long>(s + 1) * p);
    // Per position t: product block, target word, its offset and strides.
    struct Face {
      const alg::GradedAlgebra::ProductBlock* blk = nullptr;
      long long offset = 0;
      std::vector<long long> strides;
    };
    std::vector<Face> faces(static_cast<std::size_t>(p - 1));
    for (int t = 0; t + 1 < p; ++t) {
      const auto* pb = a_->product(seq[static_cast<std::size_t>(t)], seq[static_cast<std::size_t>(t) + 1]);
      if (!pb) continue;
      std::vector<int> ns;
      for (int k = 0; k < p; ++k) {
        if (k == t) ns.push_back(pb->target);
        else if (k != t + 1) ns.push_back(seq[static_cast<std::size_t>(k)]);
      }
      auto it = tgt.seq_index.find(pack(ns));
      if (it == tgt.seq_index.end()) throw std::logic_error("BarComplex: face outside the enumerated region");
      Face& fc = faces[static_cast<std::size_t>(t)];
      fc.blk = pb;
      fc.offset = tgt.offsets[static_cast<std::size_t>(it->second)];
      fc.strides.assign(ns.size(), 1);
      for (int k = static_cast<int>(ns.size()) - 2; k >= 0; --k) {
        fc.strides[static_cast<std::size_t>(k)] = fc.strides[static_cast<std::size_t>(k) + 1] * a_->piece(ns[static_cast<std::size_t>(k) + 1]).dim;
      }
    }
    std::vector<int> dims(static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k) dims[static_cast<std::size_t>(k)] = a_->piece(seq[static_cast<std::size_t>(k)]).dim;
    std::vector<int> c(static_cast<std::size_t>(p), 0);
    long long col = src.offsets[s];
    for (;;) {
      std::vector<la::Entry> raw;
      for (int t = 0; t + 1 < p; ++t) {
        const Face& fc = faces[static_cast<std::size_t>(t)];
        if (!fc.blk) continue;
        const auto& v = fc.blk->table[static_cast<std::size_t>(c[static_cast<std::size_t>(t)] * dims[static_cast<std::size_t>(t) + 1] +
                                                                c[static_cast<std::size_t>(t) + 1])];
        if (v.empty()) continue;
        long long base = fc.offset;
        std::size_t k2 = 0;
        for (int k = 0; k < p; ++k) {
          if (k == t) {
            ++k2;
            continue;
          }
          if (k == t + 1) continue;
          base += c[static_cast<std::size_t>(k)] * fc.strides[k2++];
        }
        long long st = fc.strides[static_cast<std::size_t>(t)];
        bool odd = (t + 1) % 2 == 1;
        for (const auto& e : v) {
          raw.push_back({static_cast<int>(base + e.index * st), odd ? f.mul(minus_one, e.value) : e.value});
        }
      }
      m.set_column(static_cast<int>(col), la::collect(f, std::move(raw)));
      ++col;
      int k = p - 1;
      while (k >= 0 && ++c[static_cast<std::size_t>(k)] == dims[static_cast<std::size_t>(k)]) {
        c[static_cast<std::size_t>(k)] = 0;
        --k;
      }
      if (k < 0) break;
    }
  }
  return m;
}

BettiTable BarComplex::betti(int jobs) const {
  std::vector<BlockId> ids;
  for (const auto& [id, blk] : blocks_) {
    if (id.p >= 2) ids.push_back(id);
  }
  std::vector<long long> ranks(ids.size(), 0);
  parallel_for(ids.size(), jobs, [&](std::size_t k) { ranks[k] = la::rank(a_->field(), differential(ids[k])); });
  std::map<BlockId, long long> rank_of;
  for (std::size_t k = 0; k < ids.size(); ++k) rank_of[ids[k]] = ranks[k];

  BettiTable t;
  t.bounds = bounds_;
  GradeKey zero = zero_like(bounds_.grade_max);
  if (bounds_.contains(0, zero)) {
    t.entries[{0, zero}] = 1;
    t.fine_entries[{0, zero, GradeKey()}] = 1;
  }
  for (const auto& [id, blk] : blocks_) {
    if (!bounds_.contains(id.p, id.grade)) continue;
    long long beta = blk.dim;
    if (auto it = rank_of.find(id); it != rank_of.end()) beta -= it->second;
    if (auto it = rank_of.find(BlockId{id.p + 1, id.grade, id.fine}); it != rank_of.end()) beta -= it->second;
    if (beta < 0) throw std::logic_error("BarComplex: negative Betti number");
    if (beta == 0) continue;
    t.entries[{id.p, id.grade}] += beta;
    t.fine_entries[{id.p, id.grade, id.fine}] = beta;
  }
  return t;
}

std::optional<BarComplex::BlockId> BarComplex::check_d_squared() const {
  const la::Field& f = a_->field();
  for (const auto& [id, blk] : blocks_) {
    if (id.p < 3) continue;
    BlockId lower{id.p - 1, id.grade, id.fine};
    if (!blocks_.count(lower)) continue;
    la::Matrix dd = la::Matrix::multiply(f, differential(lower), differential(id));
    if (dd.nonzeros() != 0) return id;
  }
  return std::nullopt;
}

BettiTable bar_betti(const alg::GradedAlgebra& a, const BarBounds& bounds, int jobs) {
  return BarComplex(a, bounds).betti(jobs);
}

BettiTable bar_betti(const alg::GradedAlgebra& a, int p_max, int q_max, int jobs) {
  return bar_betti(a, BarBounds{p_max, GradeKey{q_max}, -1}, jobs);
}

BettiTable bar_betti_trigraded(const kz::KoszulHomology& h, int p_max, int j_max, int jobs, int i_max) {
  alg::GradedAlgebra a = alg::from_homology(h);
  int ib = i_max < 0 ? a.trusted_bound()[0] : i_max;
  return bar_betti(a, BarBounds{p_max, GradeKey{ib, j_max}, -1}, jobs);
}

KoszulVerdict is_koszul_up_to(const alg::GradedAlgebra& a, int p_max, int q_max, int jobs) {
  KoszulVerdict v;
  v.p_max = p_max;
  v.q_max = q_max;
  v.table = bar_betti(a, p_max, q_max, jobs);
  for (const auto& [pg, beta] : v.table.entries) {
    if (beta > 0 && pg.first != pg.second[0]) {
      v.koszul = false;
      v.witness = std::make_pair(pg.first, pg.second[0]);
      break;
    }
  }
  return v;
}

KoszulVerdict is_koszul_up_to(const ca::QuotientRing& r, int p_max, int q_max, int jobs) {
  return is_koszul_up_to(alg::from_ring(r, q_max), p_max, q_max, jobs);
}

std::map<std::array<int, 3>, long long> trigraded_from_strand(const BettiTable& strand_table) {
  std::map<std::array<int, 3>, long long> out;
  for (const auto& [key, beta] : strand_table.fine_entries) {
    const auto& [p, grade, fine] = key;
    if (p == 0) {
      out[{0, 0, 0}] += beta;
      continue;
    }
    out[{p, fine[0], fine[1]}] += beta;
  }
  return out;
}

StrandVerdict is_strand_koszul_up_to(const kz::KoszulHomology& h, int p_max, int q_max, int jobs) {
  alg::GradedAlgebra a = alg::strand_totalize(h);
  KoszulVerdict kv = is_koszul_up_to(a, p_max, q_max, jobs);
  StrandVerdict v;
  v.strand_koszul = kv.koszul;
  v.p_max = p_max;
  v.q_max = q_max;
  v.witness = kv.witness;
  v.table = std::move(kv.table);
  if (v.witness) {
    auto [p, q] = *v.witness;
    for (const auto& [tri, beta] : trigraded_from_strand(v.table)) {
      if (tri[0] == p && tri[2] - tri[1] == q && beta > 0) {
        v.trigraded_witness = tri;
        break;
      }
    }
  }
  return v;
}

ShapeReport shape_check(const alg::GradedAlgebra& a, const BarBounds& bounds, int jobs) {
  if (a.grade_length() != 2) throw std::invalid_argument("shape_check: needs grades (i, j)");
  ShapeReport r;
  for (const auto& pc : a.pieces()) {
    int i = pc.grade[0];
    int j = pc.grade[1];
    if (i <= 0 || j - i <= 0) {
      r.hypothesis = false;
      r.bad_piece = std::array<int, 2>{i, j};
      return r;
    }
  }
  BettiTable t = bar_betti(a, bounds, jobs);
  for (const auto& [pg, beta] : t.entries) {
    int p = pg.first;
    int i = pg.second[0];
    int j = pg.second[1];
    if (p == 0 || beta == 0) continue;
    if (i < p || j - i < p) {
      r.conclusion = false;
      r.violation = std::array<int, 3>{p, i, j};
      break;
    }
  }
  return r;
}

PoincareTruncation::PoincareTruncation(int s_max, int t_max, int total_max)
    : s_max_(s_max), t_max_(t_max), total_max_(total_max) {
  if (s_max < 0 || t_max < 0 || total_max < 0) throw std::invalid_argument("PoincareTruncation: negative bound");
  c_.assign(static_cast<std::size_t>((s_max + 1) * (t_max + 1)), 0);
}

long long PoincareTruncation::coefficient(int a, int b) const {
  if (!in_range(a, b)) throw std::out_of_range("PoincareTruncation: exponent outside the truncation");
  return c_[static_cast<std::size_t>(a * (t_max_ + 1) + b)];
}

void PoincareTruncation::set(int a, int b, long long v) {
  if (!in_range(a, b)) throw std::out_of_range("PoincareTruncation: exponent outside the truncation");
  c_[static_cast<std::size_t>(a * (t_max_ + 1) + b)] = v;
}

void PoincareTruncation::add(int a, int b, long long v) {
  if (!in_range(a, b)) throw std::out_of_range("PoincareTruncation: exponent outside the truncation");
  long long& slot = c_[static_cast<std::size_t>(a * (t_max_ + 1) + b)];
  if (__builtin_add_overflow(slot, v, &slot)) throw std::overflow_error("PoincareTruncation: coefficient overflow");
}

PoincareTruncation PoincareTruncation::operator*(const PoincareTruncation& o) const {
  if (s_max_ != o.s_max_ || t_max_ != o.t_max_ || total_max_ != o.total_max_) {
    throw std::invalid_argument("PoincareTruncation: region mismatch");
  }
  PoincareTruncation r(s_max_, t_max_, total_max_);
  for (int a = 0; a <= s_max_; ++a) {
    for (int b = 0; b <= t_max_; ++b) {
      if (!in_range(a, b)) continue;
      long long x = coefficient(a, b);
      if (x == 0) continue;
      for (int c = 0; a + c <= s_max_; ++c) {
        for (int d = 0; b + d <= t_max_; ++d) {
          if (!r.in_range(a + c, b + d)) continue;
          long long y = o.coefficient(c, d);
          if (y == 0) continue;
          long long prod;
          if (__builtin_mul_overflow(x, y, &prod)) throw std::overflow_error("PoincareTruncation: coefficient overflow");
          r.add(a + c, b + d, prod);
        }
      }
    }
  }
  return r;
}

PoincareTruncation PoincareTruncation::one_plus_st_power(int n) const {
  PoincareTruncation r(s_max_, t_max_, total_max_);
  long long binom = 1;
  for (int k = 0; k <= n; ++k) {
    if (in_range(k, k)) r.set(k, k, binom);
    binom = binom * (n - k) / (k + 1);
  }
  return r;
}

PoincareTruncation PoincareTruncation::divide_one_plus_st(int n) const {
  PoincareTruncation q = *this;
  for (int rep = 0; rep < n; ++rep) {
    PoincareTruncation next(s_max_, t_max_, total_max_);
    for (int a = 0; a <= s_max_; ++a) {
      for (int b = 0; b <= t_max_; ++b) {
        if (!in_range(a, b)) continue;
        long long v = q.coefficient(a, b);
        if (a > 0 && b > 0) v -= next.coefficient(a - 1, b - 1);
        next.set(a, b, v);
      }
    }
    q = std::move(next);
  }
  return q;
}

std::vector<long long> PoincareTruncation::at_s_minus_one() const {
  std::vector<long long> out(static_cast<std::size_t>(t_max_ + 1), 0);
  for (int b = 0; b <= t_max_; ++b) {
    if (!in_range(b, b)) throw std::out_of_range("PoincareTruncation: s = -1 needs every s-exponent up to t");
    for (int a = 0; a <= b; ++a) out[static_cast<std::size_t>(b)] += (a % 2 ? -1 : 1) * coefficient(a, b);
  }
  return out;
}

std::optional<std::pair<int, int>> PoincareTruncation::first_difference(const PoincareTruncation& o) const {
  if (s_max_ != o.s_max_ || t_max_ != o.t_max_ || total_max_ != o.total_max_) {
    throw std::invalid_argument("PoincareTruncation: region mismatch");
  }
  for (int b = 0; b <= t_max_; ++b) {
    for (int a = 0; a <= s_max_; ++a) {
      if (in_range(a, b) && coefficient(a, b) != o.coefficient(a, b)) return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

bool PoincareTruncation::coefficientwise_leq(const PoincareTruncation& o, std::pair<int, int>* first_strict) const {
  bool strict_seen = false;
  for (int b = 0; b <= t_max_; ++b) {
    for (int a = 0; a <= s_max_; ++a) {
      if (!in_range(a, b)) continue;
      long long x = coefficient(a, b);
      long long y = o.coefficient(a, b);
      if (x > y) return false;
      if (x < y && !strict_seen) {
        strict_seen = true;
        if (first_strict) *first_strict = {a, b};
      }
    }
  }
  return true;
}

std::string PoincareTruncation::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int b = 0; b <= t_max_; ++b) {
    for (int a = 0; a <= s_max_; ++a) {
      if (!in_range(a, b)) continue;
      long long v = coefficient(a, b);
      if (v == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << v << "*s^" << a << "*t^" << b;
    }
  }
  if (first) os << "0";
  return os.str();
}

PoincareTruncation poincare_from_betti(const BettiTable& t, int s_max, int t_max, int total_max) {
  PoincareTruncation p(s_max, t_max, total_max);
  for (int a = 0; a <= s_max; ++a) {
    for (int b = 0; b <= t_max; ++b) {
      if (!p.in_range(a, b)) continue;
      if (a > b) continue;  // each bar factor has degree >= 1
      p.set(a, b, t.at(a, b));
    }
  }
  return p;
}

PoincareTruncation poincare_K_from_R(const PoincareTruncation& p_r, int n) {
  PoincareTruncation q = p_r.divide_one_plus_st(n);
  for (int b = 0; b <= q.t_max(); ++b) {
    for (int a = 0; a <= q.s_max(); ++a) {
      if (q.in_range(a, b) && q.coefficient(a, b) < 0) {
        throw std::domain_error("poincare_K_from_R: negative coefficient at s^" + std::to_string(a) + " t^" + std::to_string(b));
      }
    }
  }
  return q;
}

}  // namespace kk::tor
