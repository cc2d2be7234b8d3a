#include "koszulkit/koszul.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace kk::kz {

using la::Field;
using la::Rational;
using la::SparseVec;

MultiDegree KoszulMonomial::multidegree() const {
  MultiDegree m = v;
  for (int i = 0; i < m.size(); ++i) {
    if (w & (1u << i)) m.set(i, m[i] + 1);
  }
  return m;
}

std::vector<int> KoszulMonomial::exterior_indices() const {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i) {
    if (w & (1u << i)) out.push_back(i);
  }
  return out;
}

bool KoszulOrder::operator()(const KoszulMonomial& a, const KoszulMonomial& b) const {
  if (a.w != b.w) {
    // Lexicographic on ascending index lists. Below the lowest differing bit the
    // lists agree; the one holding that bit is smaller unless the other ends there.
    std::uint32_t diff = a.w ^ b.w;
    std::uint32_t below = (diff & (~diff + 1)) - 1;
    if (a.w & (below + 1)) return (b.w & ~below) != 0;
    return (a.w & ~below) == 0;
  }
  if (a.v == b.v) return false;
  return grevlex_greater(a.v, b.v);
}

void KoszulElement::add(const Field& f, const KoszulMonomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.emplace(m, c);
  if (inserted) return;
  it->second = f.add(it->second, c);
  if (it->second.is_zero()) terms.erase(it);
}

KoszulElement KoszulElement::monomial(const KoszulMonomial& m, const Rational& c) {
  KoszulElement e;
  if (!c.is_zero()) e.terms.emplace(m, c);
  return e;
}

std::string format_koszul_monomial(const KoszulMonomial& m, const std::vector<std::string>& names) {
  std::string s;
  if (!m.v.is_zero()) s = ca::format_monomial(m.v, names);
  for (int i : m.exterior_indices()) {
    if (!s.empty()) s += "*";
    s += "t" + std::to_string(i + 1);
  }
  return s.empty() ? "1" : s;
}

std::string format_koszul_element(const KoszulElement& e, const std::vector<std::string>& names) {
  if (e.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : e.terms) {
    Rational a = c;
    bool neg = a.sign() < 0;
    if (neg) a = -a;
    s += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    std::string mono = format_koszul_monomial(m, names);
    if (a.is_one()) s += mono;
    else if (mono == "1") s += a.to_string();
    else s += a.to_string() + "*" + mono;
  }
  return s;
}

namespace {

struct MonoHash {
  std::size_t operator()(const KoszulMonomial& m) const noexcept { return m.v.hash() * 31u + m.w; }
};

using IndexMap = std::unordered_map<KoszulMonomial, int, MonoHash>;

// All subsets of {0..n-1} of size k, as bitmasks, in lexicographic order of
// their ascending index lists.
std::vector<std::uint32_t> subsets(int n, int k) {
  std::vector<std::uint32_t> out;
  if (k < 0 || k > n) return out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::uint32_t mask = 0;
    for (int i : idx) mask |= 1u << i;
    out.push_back(mask);
    int p = k - 1;
    while (p >= 0 && idx[static_cast<std::size_t>(p)] == n - k + p) --p;
    if (p < 0) break;
    ++idx[static_cast<std::size_t>(p)];
    for (int q = p + 1; q < k; ++q) idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
  }
  return out;
}

// Subsets of `universe` (bitmask) of size k, same order.
std::vector<std::uint32_t> subsets_of(std::uint32_t universe, int k) {
  std::vector<int> elems;
  for (int i = 0; i < 32; ++i) {
    if (universe & (1u << i)) elems.push_back(i);
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t local : subsets(static_cast<int>(elems.size()), k)) {
    std::uint32_t mask = 0;
    for (std::size_t b = 0; b < elems.size(); ++b) {
      if (local & (1u << b)) mask |= 1u << elems[b];
    }
    out.push_back(mask);
  }
  return out;
}

MultiDegree mask_degree(int n, std::uint32_t w) {
  MultiDegree m(n);
  for (int i = 0; i < n; ++i) {
    if (w & (1u << i)) m.set(i, 1);
  }
  return m;
}

// Differential of a single monomial, as (monomial, coefficient) pairs.
template <typename Sink>
void differential_terms(const ca::QuotientRing& r, const KoszulMonomial& m, Sink&& sink) {
  const int n = r.nvars();
  int pos = 0;
  for (int a = 0; a < n; ++a) {
    if (!(m.w & (1u << a))) continue;
    ++pos;
    const Field& f = r.field();
    Rational sign = (pos % 2 == 1) ? f.from_int(1) : f.from_int(-1);
    MultiDegree prod = m.v + MultiDegree::unit(n, a);
    std::uint32_t rest = m.w & ~(1u << a);
    SparseVec nf = r.reduce_monomial(prod);
    const auto& basis = r.std_monomials(prod.total());
    for (const auto& e : nf) sink(KoszulMonomial{basis[static_cast<std::size_t>(e.index)], rest}, f.mul(sign, e.value));
  }
}

int exterior_sign(std::uint32_t w1, std::uint32_t w2) {
  int count = 0;
  for (int b = 0; b < 32; ++b) {
    if (w2 & (1u << b)) count += __builtin_popcount(w1 & ~((2u << b) - 1));
  }
  return count % 2 == 0 ? 1 : -1;
}

template <typename Sink>
void product_terms(const ca::QuotientRing& r, const KoszulMonomial& a, const KoszulMonomial& b, const Rational& c,
                   Sink&& sink) {
  if (a.w & b.w) return;
  const Field& f = r.field();
  Rational coef = exterior_sign(a.w, b.w) > 0 ? c : f.neg(c);
  MultiDegree prod = a.v + b.v;
  SparseVec nf = r.reduce_monomial(prod);
  const auto& basis = r.std_monomials(prod.total());
  for (const auto& e : nf) sink(KoszulMonomial{basis[static_cast<std::size_t>(e.index)], a.w | b.w}, f.mul(coef, e.value));
}

// Homology of one fine-graded column K_{*, j, key}.
struct ColumnResult {
  struct PerDegree {
    std::vector<KoszulMonomial> basis;
    std::vector<SparseVec> reps;
    std::shared_ptr<la::EchelonBasis> cycles;
  };
  std::vector<PerDegree> by_i;
};

la::Matrix differential_matrix(const ca::QuotientRing& r, const std::vector<KoszulMonomial>& src,
                               const std::vector<KoszulMonomial>& dst, const IndexMap& dst_index) {
  la::Matrix m(static_cast<int>(dst.size()), static_cast<int>(src.size()));
  for (std::size_t c = 0; c < src.size(); ++c) {
    std::vector<la::Entry> raw;
    differential_terms(r, src[c], [&](const KoszulMonomial& t, const Rational& v) {
      auto it = dst_index.find(t);
      if (it == dst_index.end()) throw std::logic_error("koszul: differential leaves its fine-graded column");
      raw.push_back({it->second, v});
    });
    m.set_column(static_cast<int>(c), la::collect(r.field(), std::move(raw)));
  }
  return m;
}

// groups[i] = basis of K_{i,j,key}, for i = 0..groups.size()-1. Homology is
// computed for i <= imax (groups must extend to imax+1 where K is nonzero).
ColumnResult column_homology(const ca::QuotientRing& r, const std::vector<std::vector<KoszulMonomial>>& groups, int imax) {
  const Field& f = r.field();
  const int top = static_cast<int>(groups.size()) - 1;
  std::vector<IndexMap> index(groups.size());
  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t k = 0; k < groups[i].size(); ++k) index[i].emplace(groups[i][k], static_cast<int>(k));
  }
  // d[i]: K_i -> K_{i-1}
  std::vector<la::Matrix> d(groups.size());
  for (int i = 1; i <= top; ++i) {
    if (groups[static_cast<std::size_t>(i)].empty()) continue;
    d[static_cast<std::size_t>(i)] = differential_matrix(r, groups[static_cast<std::size_t>(i)], groups[static_cast<std::size_t>(i - 1)],
                                                         index[static_cast<std::size_t>(i - 1)]);
  }
  ColumnResult out;
  out.by_i.resize(static_cast<std::size_t>(std::min(imax, top) + 1));
  for (int i = 0; i <= std::min(imax, top); ++i) {
    const auto& basis = groups[static_cast<std::size_t>(i)];
    auto& res = out.by_i[static_cast<std::size_t>(i)];
    if (basis.empty()) continue;
    res.cycles = std::make_shared<la::EchelonBasis>(f);
    if (i + 1 <= top && !groups[static_cast<std::size_t>(i + 1)].empty()) {
      const auto& up = d[static_cast<std::size_t>(i + 1)];
      for (int c = 0; c < up.cols(); ++c) res.cycles->insert(up.column(c), -1);
    }
    std::vector<SparseVec> kernel;
    if (i == 0 || d[static_cast<std::size_t>(i)].cols() == 0) {
      for (std::size_t k = 0; k < basis.size(); ++k) kernel.push_back({{static_cast<int>(k), f.from_int(1)}});
    } else {
      kernel = la::rank_kernel(f, d[static_cast<std::size_t>(i)]).kernel;
    }
    for (const auto& z : kernel) {
      int tag = static_cast<int>(res.reps.size());
      int id = res.cycles->insert(z, tag);
      if (id >= 0) res.reps.push_back(res.cycles->pivot(id));
    }
    if (res.reps.empty()) {
      res.cycles.reset();
    } else {
      res.basis = basis;
    }
  }
  return out;
}

}  // namespace

GradeKey koszul_fine_key(const ca::QuotientRing& r, const KoszulMonomial& m) { return r.fine_key(m.multidegree()); }

std::vector<KoszulMonomial> koszul_basis(const ca::QuotientRing& r, int i, int j) {
  std::vector<KoszulMonomial> out;
  if (i < 0 || i > r.nvars() || j < i) return out;
  const auto& mons = r.std_monomials(j - i);
  for (std::uint32_t w : subsets(r.nvars(), i)) {
    for (const auto& v : mons) out.push_back({v, w});
  }
  return out;
}

KoszulElement differential(const ca::QuotientRing& r, const KoszulElement& e) {
  KoszulElement out;
  const Field& f = r.field();
  for (const auto& [m, c] : e.terms) {
    differential_terms(r, m, [&](const KoszulMonomial& t, const Rational& v) { out.add(f, t, f.mul(c, v)); });
  }
  return out;
}

KoszulElement multiply(const ca::QuotientRing& r, const KoszulElement& a, const KoszulElement& b) {
  KoszulElement out;
  const Field& f = r.field();
  for (const auto& [ma, ca_] : a.terms) {
    for (const auto& [mb, cb] : b.terms) {
      product_terms(r, ma, mb, f.mul(ca_, cb), [&](const KoszulMonomial& t, const Rational& v) { out.add(f, t, v); });
    }
  }
  return out;
}

KoszulHomology KoszulHomology::compute(const ca::QuotientRing& r, const HomologyOptions& opts) {
  if (opts.max_hom < 0 || opts.max_int < 0) throw std::invalid_argument("KoszulHomology: negative bound");
  KoszulHomology h;
  h.ring_ = std::make_shared<const ca::QuotientRing>(r);
  h.max_hom_ = opts.max_hom;
  h.max_int_ = opts.max_int;
  h.shortcut_ = opts.squarefree_shortcut && r.is_squarefree_monomial();
  const int n = r.nvars();
  const int imax = std::min(opts.max_hom, n);
  const int top = std::min(imax + 1, n);

  struct Task {
    int j;
    GradeKey key;
    std::vector<std::vector<KoszulMonomial>> groups;
  };
  std::vector<Task> tasks;
  for (int j = 0; j <= opts.max_int; ++j) {
    std::map<GradeKey, std::vector<std::vector<KoszulMonomial>>> groups;
    auto slot = [&](const GradeKey& key) -> std::vector<std::vector<KoszulMonomial>>& {
      auto it = groups.find(key);
      if (it == groups.end()) it = groups.emplace(key, std::vector<std::vector<KoszulMonomial>>(static_cast<std::size_t>(top + 1))).first;
      return it->second;
    };
    if (h.shortcut_) {
      if (j > n) continue;
      for (std::uint32_t u : subsets(n, j)) {
        MultiDegree ud = mask_degree(n, u);
        auto& g = slot(r.fine_key(ud));
        for (int i = 0; i <= std::min(top, j); ++i) {
          for (std::uint32_t w : subsets_of(u, i)) {
            MultiDegree v = mask_degree(n, u & ~w);
            if (r.is_standard(v)) g[static_cast<std::size_t>(i)].push_back({v, w});
          }
        }
      }
    } else {
      for (int i = 0; i <= std::min(top, j); ++i) {
        const auto& mons = r.std_monomials(j - i);
        for (std::uint32_t w : subsets(n, i)) {
          GradeKey wk = r.fine_key(mask_degree(n, w));
          for (const auto& v : mons) slot(r.fine_key(v) + wk)[static_cast<std::size_t>(i)].push_back({v, w});
        }
      }
    }
    for (auto& [key, g] : groups) tasks.push_back({j, key, std::move(g)});
  }

  std::vector<ColumnResult> results(tasks.size());
  const int jobs = std::max(1, opts.jobs);
  if (jobs == 1 || tasks.size() < 2) {
    for (std::size_t t = 0; t < tasks.size(); ++t) results[t] = column_homology(r, tasks[t].groups, imax);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int k = 0; k < jobs; ++k) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < tasks.size(); t = next++) {
          try {
            results[t] = column_homology(r, tasks[t].groups, imax);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }

  for (std::size_t t = 0; t < tasks.size(); ++t) {
    for (std::size_t i = 0; i < results[t].by_i.size(); ++i) {
      auto& res = results[t].by_i[i];
      if (res.reps.empty()) continue;
      Slice s;
      s.i = static_cast<int>(i);
      s.j = tasks[t].j;
      s.key = tasks[t].key;
      s.basis = std::move(res.basis);
      for (std::size_t k = 0; k < s.basis.size(); ++k) s.index.emplace(s.basis[k], static_cast<int>(k));
      s.reps = std::move(res.reps);
      s.cycles = std::move(res.cycles);
      h.slices_.push_back(std::move(s));
    }
  }
  std::sort(h.slices_.begin(), h.slices_.end(), [](const Slice& a, const Slice& b) {
    return std::tie(a.i, a.j, a.key) < std::tie(b.i, b.j, b.key);
  });
  for (std::size_t k = 0; k < h.slices_.size(); ++k) {
    auto& s = h.slices_[k];
    int& total = h.dims_[{s.i, s.j}];
    s.offset = total;
    total += s.dim();
    h.slice_index_.emplace(std::make_tuple(s.i, s.j, s.key), static_cast<int>(k));
  }
  return h;
}

int KoszulHomology::dim(int i, int j) const {
  if (!in_bounds(i, j)) throw std::out_of_range("KoszulHomology::dim: bidegree outside the computed bounds");
  auto it = dims_.find({i, j});
  return it == dims_.end() ? 0 : it->second;
}

std::vector<std::vector<long long>> KoszulHomology::dims_table() const {
  std::vector<std::vector<long long>> t(static_cast<std::size_t>(max_hom_ + 1), std::vector<long long>(static_cast<std::size_t>(max_int_ + 1), 0));
  for (const auto& [ij, d] : dims_) t[static_cast<std::size_t>(ij.first)][static_cast<std::size_t>(ij.second)] = d;
  return t;
}

const KoszulHomology::Slice* KoszulHomology::find_slice(int i, int j, const GradeKey& key) const {
  auto it = slice_index_.find(std::make_tuple(i, j, key));
  return it == slice_index_.end() ? nullptr : &slices_[static_cast<std::size_t>(it->second)];
}

std::vector<const KoszulHomology::Slice*> KoszulHomology::slices_at(int i, int j) const {
  std::vector<const Slice*> out;
  for (const auto& s : slices_) {
    if (s.i == i && s.j == j) out.push_back(&s);
  }
  return out;
}

HomologyClass KoszulHomology::basis_class(int i, int j, int index) const {
  for (const Slice* s : slices_at(i, j)) {
    if (index >= s->offset && index < s->offset + s->dim()) {
      HomologyClass c;
      c.i = i;
      c.j = j;
      c.key = s->key;
      for (const auto& e : s->reps[static_cast<std::size_t>(index - s->offset)]) {
        c.representative.terms.emplace(s->basis[static_cast<std::size_t>(e.index)], e.value);
      }
      c.coordinates = {{index, ring_->field().from_int(1)}};
      return c;
    }
  }
  throw std::out_of_range("KoszulHomology::basis_class: index out of range");
}

std::vector<HomologyClass> KoszulHomology::basis(int i, int j) const {
  std::vector<HomologyClass> out;
  int d = dim(i, j);
  for (int k = 0; k < d; ++k) out.push_back(basis_class(i, j, k));
  return out;
}

SparseVec KoszulHomology::coordinates(const KoszulElement& cycle, int i, int j) const {
  if (!in_bounds(i, j)) throw std::out_of_range("KoszulHomology::coordinates: bidegree outside the computed bounds");
  for (const auto& [m, c] : cycle.terms) {
    if (m.hom_degree() != i || m.internal_degree() != j) throw std::invalid_argument("KoszulHomology::coordinates: wrong bidegree");
  }
  if (!differential(*ring_, cycle).is_zero()) throw std::invalid_argument("KoszulHomology::coordinates: element is not a cycle");
  std::map<GradeKey, std::vector<std::pair<KoszulMonomial, Rational>>> parts;
  for (const auto& [m, c] : cycle.terms) parts[koszul_fine_key(*ring_, m)].emplace_back(m, c);
  std::vector<la::Entry> raw;
  for (const auto& [key, terms] : parts) {
    const Slice* s = find_slice(i, j, key);
    if (s == nullptr) continue;  // zero homology in this fine degree
    std::vector<la::Entry> v;
    for (const auto& [m, c] : terms) {
      auto it = s->index.find(m);
      if (it == s->index.end()) throw std::logic_error("KoszulHomology::coordinates: monomial outside slice basis");
      v.push_back({it->second, c});
    }
    std::vector<std::pair<int, Rational>> used;
    SparseVec rem = s->cycles->reduce(la::collect(ring_->field(), std::move(v)), &used);
    if (!rem.empty()) throw std::logic_error("KoszulHomology::coordinates: cycle not in the cycle space");
    for (const auto& [id, coef] : used) {
      int tag = s->cycles->tag(id);
      if (tag >= 0) raw.push_back({s->offset + tag, coef});
    }
  }
  return la::collect(ring_->field(), std::move(raw));
}

SparseVec KoszulHomology::product(const HomologyClass& a, const HomologyClass& b) const {
  if (!in_bounds(a.i + b.i, a.j + b.j)) throw std::out_of_range("KoszulHomology::product: result outside the computed bounds");
  KoszulElement e = multiply(*ring_, a.representative, b.representative);
  return coordinates(e, a.i + b.i, a.j + b.j);
}

SparseVec KoszulHomology::slice_product(const Slice& sa, int ia, const Slice& sb, int ib, const Slice& target) const {
  const Field& f = ring_->field();
  std::vector<la::Entry> v;
  for (const auto& ea : sa.reps[static_cast<std::size_t>(ia)]) {
    for (const auto& eb : sb.reps[static_cast<std::size_t>(ib)]) {
      product_terms(*ring_, sa.basis[static_cast<std::size_t>(ea.index)], sb.basis[static_cast<std::size_t>(eb.index)],
                    f.mul(ea.value, eb.value), [&](const KoszulMonomial& t, const Rational& c) {
                      auto it = target.index.find(t);
                      if (it == target.index.end()) throw std::logic_error("KoszulHomology::slice_product: term outside target slice");
                      v.push_back({it->second, c});
                    });
    }
  }
  std::vector<std::pair<int, Rational>> used;
  SparseVec rem = target.cycles->reduce(la::collect(f, std::move(v)), &used);
  if (!rem.empty()) throw std::logic_error("KoszulHomology::slice_product: product is not a cycle");
  std::vector<la::Entry> out;
  for (const auto& [id, coef] : used) {
    int tag = target.cycles->tag(id);
    if (tag >= 0) out.push_back({tag, coef});
  }
  return la::collect(f, std::move(out));
}

MultigradedHomology multigraded_homology(const ca::QuotientRing& r, const MultiDegree& u, bool squarefree_shortcut) {
  if (!r.is_monomial()) throw std::invalid_argument("multigraded_homology: the ideal is not monomial");
  const int n = r.nvars();
  if (u.size() != n) throw std::invalid_argument("multigraded_homology: multidegree has the wrong length");
  MultigradedHomology out;
  out.u = u;
  out.dims.assign(static_cast<std::size_t>(n + 1), 0);
  out.bases.assign(static_cast<std::size_t>(n + 1), {});
  if (squarefree_shortcut && r.is_squarefree_monomial() && !u.is_squarefree()) return out;
  std::uint32_t support = 0;
  for (int i = 0; i < n; ++i) {
    if (u[i] > 0) support |= 1u << i;
  }
  std::vector<std::vector<KoszulMonomial>> groups(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) {
    for (std::uint32_t w : subsets_of(support, i)) {
      MultiDegree v = u - mask_degree(n, w);
      if (r.is_standard(v)) groups[static_cast<std::size_t>(i)].push_back({v, w});
    }
  }
  ColumnResult res = column_homology(r, groups, n);
  for (std::size_t i = 0; i < res.by_i.size(); ++i) {
    const auto& pd = res.by_i[i];
    out.dims[i] = static_cast<int>(pd.reps.size());
    for (const auto& rep : pd.reps) {
      KoszulElement e;
      for (const auto& en : rep) e.terms.emplace(pd.basis[static_cast<std::size_t>(en.index)], en.value);
      out.bases[i].push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace kk::kz
