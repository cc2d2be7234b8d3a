#include "koszulkit/graded_algebra.hpp"

#include <algorithm>
#include <stdexcept>

#include "koszulkit/polynomial.hpp"

namespace kk::alg {

namespace {

constexpr int kUnbounded = 30000;

bool is_zero_grade(const GradeKey& g) {
  for (int i = 0; i < g.size(); ++i) {
    if (g[i] != 0) return false;
  }
  return true;
}

}  // namespace

int GradedAlgebra::add_piece(Piece p) {
  if (p.grade.size() != bound_.size()) throw std::invalid_argument("GradedAlgebra: grade length mismatch");
  if (is_zero_grade(p.grade)) throw std::invalid_argument("GradedAlgebra: pieces must have nonzero grade");
  for (int i = 0; i < p.grade.size(); ++i) {
    if (p.grade[i] < 0) throw std::invalid_argument("GradedAlgebra: negative grade " + p.grade.to_string());
  }
  if (p.dim <= 0) throw std::invalid_argument("GradedAlgebra: empty piece");
  auto key = std::make_pair(p.grade, p.fine);
  if (index_.count(key)) throw std::invalid_argument("GradedAlgebra: duplicate piece " + p.grade.to_string());
  int id = piece_count();
  index_.emplace(key, id);
  pieces_.push_back(std::move(p));
  return id;
}

void GradedAlgebra::set_product(int a, int b, int target, std::vector<la::SparseVec> table) {
  const Piece& pa = piece(a);
  const Piece& pb = piece(b);
  const Piece& pt = piece(target);
  if (pa.grade + pb.grade != pt.grade) throw std::invalid_argument("GradedAlgebra: product grade mismatch");
  if (table.size() != static_cast<std::size_t>(pa.dim) * static_cast<std::size_t>(pb.dim)) {
    throw std::invalid_argument("GradedAlgebra: product table size mismatch");
  }
  bool any = false;
  for (const auto& v : table) {
    if (!v.empty()) any = true;
    if (!v.empty() && v.back().index >= pt.dim) throw std::invalid_argument("GradedAlgebra: product entry out of range");
  }
  if (!any) return;
  products_[{a, b}] = ProductBlock{target, std::move(table)};
}

int GradedAlgebra::find_piece(const GradeKey& grade, const GradeKey& fine) const {
  auto it = index_.find({grade, fine});
  return it == index_.end() ? -1 : it->second;
}

const GradedAlgebra::ProductBlock* GradedAlgebra::product(int a, int b) const {
  auto it = products_.find({a, b});
  return it == products_.end() ? nullptr : &it->second;
}

int GradedAlgebra::multiply(int a, const la::SparseVec& x, int b, const la::SparseVec& y, la::SparseVec& out) const {
  out.clear();
  const ProductBlock* blk = product(a, b);
  if (!blk) return -1;
  int db = piece(b).dim;
  std::vector<la::Entry> raw;
  for (const auto& ex : x) {
    for (const auto& ey : y) {
      const auto& v = blk->table[static_cast<std::size_t>(ex.index * db + ey.index)];
      if (v.empty()) continue;
      la::Rational c = field_.mul(ex.value, ey.value);
      for (const auto& e : v) raw.push_back({e.index, field_.mul(c, e.value)});
    }
  }
  out = la::collect(field_, std::move(raw));
  return out.empty() ? -1 : blk->target;
}

std::map<GradeKey, long long> GradedAlgebra::dims_by_grade() const {
  std::map<GradeKey, long long> dims;
  for (const auto& p : pieces_) dims[p.grade] += p.dim;
  return dims;
}

std::vector<long long> GradedAlgebra::hilbert(int max_degree) const {
  if (grade_length() != 1) throw std::logic_error("GradedAlgebra::hilbert: needs a single grading");
  std::vector<long long> h(static_cast<std::size_t>(max_degree + 1), 0);
  h[0] = 1;
  for (const auto& p : pieces_) {
    if (p.grade[0] <= max_degree) h[static_cast<std::size_t>(p.grade[0])] += p.dim;
  }
  return h;
}

bool GradedAlgebra::check_associativity() const {
  auto unit = [](int i) { return la::SparseVec{{i, la::Rational(1)}}; };
  for (const auto& [ab, blk_ab] : products_) {
    auto [a, b] = ab;
    for (int c = 0; c < piece_count(); ++c) {
      if (!trusted(piece(a).grade + piece(b).grade + piece(c).grade)) continue;
      const ProductBlock* bc = product(b, c);
      for (int ia = 0; ia < piece(a).dim; ++ia) {
        for (int ib = 0; ib < piece(b).dim; ++ib) {
          for (int ic = 0; ic < piece(c).dim; ++ic) {
            la::SparseVec xy, left, yz, right;
            int t1 = multiply(a, unit(ia), b, unit(ib), xy);
            int tl = t1 < 0 ? -1 : multiply(t1, xy, c, unit(ic), left);
            int t2 = bc ? multiply(b, unit(ib), c, unit(ic), yz) : -1;
            int tr = t2 < 0 ? -1 : multiply(a, unit(ia), t2, yz, right);
            if (tl != tr && !(left.empty() && right.empty())) return false;
            if (left != right) return false;
          }
        }
      }
    }
  }
  return true;
}

GradedAlgebra from_ring(const ca::QuotientRing& r, int max_degree) {
  if (r.trusted_degree() >= 0 && max_degree > r.trusted_degree()) {
    throw std::out_of_range("from_ring: degree " + std::to_string(max_degree) + " exceeds the trusted Groebner degree");
  }
  GradedAlgebra a(r.field(), GradeKey{max_degree});
  // (degree, std index) -> (piece, local index)
  std::vector<std::vector<std::pair<int, int>>> where(static_cast<std::size_t>(max_degree + 1));
  std::vector<std::vector<MultiDegree>> members;
  for (int d = 1; d <= max_degree; ++d) {
    const auto& mons = r.std_monomials(d);
    std::map<GradeKey, std::vector<int>> groups;
    for (std::size_t k = 0; k < mons.size(); ++k) groups[r.fine_key(mons[k])].push_back(static_cast<int>(k));
    where[static_cast<std::size_t>(d)].resize(mons.size());
    for (const auto& [key, idx] : groups) {
      Piece p;
      p.grade = GradeKey{d};
      p.fine = key;
      p.dim = static_cast<int>(idx.size());
      std::vector<MultiDegree> mem;
      for (int k : idx) {
        p.labels.push_back(ca::format_monomial(mons[static_cast<std::size_t>(k)], r.names()));
        mem.push_back(mons[static_cast<std::size_t>(k)]);
      }
      int id = a.add_piece(std::move(p));
      for (std::size_t l = 0; l < idx.size(); ++l) {
        where[static_cast<std::size_t>(d)][static_cast<std::size_t>(idx[l])] = {id, static_cast<int>(l)};
      }
      members.push_back(std::move(mem));
    }
  }
  for (int x = 0; x < a.piece_count(); ++x) {
    for (int y = 0; y < a.piece_count(); ++y) {
      const Piece& px = a.piece(x);
      const Piece& py = a.piece(y);
      int d = px.grade[0] + py.grade[0];
      if (d > max_degree) continue;
      int target = a.find_piece(GradeKey{d}, px.fine + py.fine);
      if (target < 0) continue;
      std::vector<la::SparseVec> table;
      table.reserve(static_cast<std::size_t>(px.dim * py.dim));
      for (const auto& mx : members[static_cast<std::size_t>(x)]) {
        for (const auto& my : members[static_cast<std::size_t>(y)]) {
          la::SparseVec nf = r.reduce_monomial(mx + my);
          la::SparseVec local;
          for (const auto& e : nf) {
            auto [piece_id, l] = where[static_cast<std::size_t>(d)][static_cast<std::size_t>(e.index)];
            if (piece_id != target) throw std::logic_error("from_ring: normal form leaves its fine grade");
            local.push_back({l, e.value});
          }
          std::sort(local.begin(), local.end(), [](const la::Entry& u, const la::Entry& v) { return u.index < v.index; });
          table.push_back(std::move(local));
        }
      }
      a.set_product(x, y, target, std::move(table));
    }
  }
  return a;
}

namespace {

std::string class_label(const kz::KoszulHomology::Slice& s, int k) {
  return "h" + std::to_string(s.i) + "," + std::to_string(s.j) + "[" + std::to_string(s.offset + k) + "]";
}

// Shared construction: `grade_of` maps a slice to its coarse grade, `fine_of` to its fine key.
template <class GradeFn, class FineFn>
GradedAlgebra build_from_slices(const kz::KoszulHomology& h, GradeKey bound, GradeFn grade_of, FineFn fine_of) {
  GradedAlgebra a(h.ring().field(), std::move(bound));
  std::vector<const kz::KoszulHomology::Slice*> src;
  for (const auto& s : h.slices()) {
    if (s.i == 0 && s.j == 0) continue;
    Piece p;
    p.grade = grade_of(s);
    p.fine = fine_of(s);
    p.dim = s.dim();
    for (int k = 0; k < s.dim(); ++k) p.labels.push_back(class_label(s, k));
    a.add_piece(std::move(p));
    src.push_back(&s);
  }
  for (int x = 0; x < a.piece_count(); ++x) {
    for (int y = 0; y < a.piece_count(); ++y) {
      const auto& sx = *src[static_cast<std::size_t>(x)];
      const auto& sy = *src[static_cast<std::size_t>(y)];
      int i = sx.i + sy.i;
      int j = sx.j + sy.j;
      if (!h.in_bounds(i, j)) continue;
      const auto* st = h.find_slice(i, j, sx.key + sy.key);
      if (!st) continue;
      int target = a.find_piece(grade_of(*st), fine_of(*st));
      std::vector<la::SparseVec> table;
      table.reserve(static_cast<std::size_t>(sx.dim() * sy.dim()));
      for (int ix = 0; ix < sx.dim(); ++ix) {
        for (int iy = 0; iy < sy.dim(); ++iy) table.push_back(h.slice_product(sx, ix, sy, iy, *st));
      }
      a.set_product(x, y, target, std::move(table));
    }
  }
  return a;
}

}  // namespace

GradedAlgebra from_homology(const kz::KoszulHomology& h) {
  int ibound = h.max_hom() >= h.ring().nvars() ? kUnbounded : h.max_hom();
  return build_from_slices(
      h, GradeKey{ibound, h.max_int()}, [](const auto& s) { return GradeKey{s.i, s.j}; },
      [](const auto& s) { return s.key; });
}

int strand_trusted_degree(const kz::KoszulHomology& h) {
  int n = h.ring().nvars();
  int imax = std::min(h.max_hom(), n);
  int d = h.max_int() - imax;
  if (imax < n) {
    for (int s = 0; s <= h.max_int() - imax; ++s) {
      if (h.dim(imax, imax + s) > 0) {
        d = std::min(d, s - 1);
        break;
      }
    }
  }
  return std::max(d, 0);
}

GradedAlgebra strand_totalize(const kz::KoszulHomology& h) {
  for (const auto& s : h.slices()) {
    if (s.i == 0 && s.j == 0) continue;
    if (s.j - s.i <= 0) {
      throw std::domain_error("strand_totalize: H_{" + std::to_string(s.i) + "," + std::to_string(s.j) +
                              "} is nonzero outside the positive strands");
    }
  }
  return build_from_slices(
      h, GradeKey{strand_trusted_degree(h)}, [](const auto& s) { return GradeKey{s.j - s.i}; },
      [](const auto& s) { return concat(GradeKey{s.i, s.j}, s.key); });
}

GradedAlgebra forget_fine(const GradedAlgebra& a) {
  GradedAlgebra out(a.field(), a.trusted_bound());
  // old piece -> (new piece, offset)
  std::vector<std::pair<int, int>> where(static_cast<std::size_t>(a.piece_count()));
  std::map<GradeKey, std::vector<int>> groups;
  for (int p = 0; p < a.piece_count(); ++p) groups[a.piece(p).grade].push_back(p);
  for (const auto& [grade, members] : groups) {
    Piece np;
    np.grade = grade;
    np.fine = GradeKey();
    int offset = 0;
    for (int p : members) {
      where[static_cast<std::size_t>(p)] = {out.piece_count(), offset};
      offset += a.piece(p).dim;
      for (const auto& l : a.piece(p).labels) np.labels.push_back(l);
    }
    np.dim = offset;
    out.add_piece(std::move(np));
  }
  std::map<std::pair<int, int>, std::vector<la::SparseVec>> tables;
  for (int x = 0; x < a.piece_count(); ++x) {
    for (int y = 0; y < a.piece_count(); ++y) {
      const auto* blk = a.product(x, y);
      if (!blk) continue;
      auto [nx, ox] = where[static_cast<std::size_t>(x)];
      auto [ny, oy] = where[static_cast<std::size_t>(y)];
      int ot = where[static_cast<std::size_t>(blk->target)].second;
      auto& table = tables[{nx, ny}];
      int dny = out.piece(ny).dim;
      table.resize(static_cast<std::size_t>(out.piece(nx).dim * dny));
      int dy = a.piece(y).dim;
      for (int ix = 0; ix < a.piece(x).dim; ++ix) {
        for (int iy = 0; iy < dy; ++iy) {
          la::SparseVec v = blk->table[static_cast<std::size_t>(ix * dy + iy)];
          for (auto& e : v) e.index += ot;
          table[static_cast<std::size_t>((ox + ix) * dny + oy + iy)] = std::move(v);
        }
      }
    }
  }
  for (auto& [xy, table] : tables) {
    const Piece& px = out.piece(xy.first);
    const Piece& py = out.piece(xy.second);
    int target = out.find_piece(px.grade + py.grade, GradeKey());
    out.set_product(xy.first, xy.second, target, std::move(table));
  }
  return out;
}

}  // namespace kk::alg
