#include "koszulkit/ncalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace kk::nc {

using la::Field;
using la::Rational;

VariableOrder::VariableOrder(std::vector<int> degrees) : degrees_(std::move(degrees)) {
  ranking_.resize(degrees_.size());
  std::iota(ranking_.begin(), ranking_.end(), 0);
  ascending_ = ranking_;
}

VariableOrder::VariableOrder(std::vector<int> degrees, std::vector<int> ranking)
    : degrees_(std::move(degrees)), ranking_(std::move(ranking)) {
  if (ranking_.size() != degrees_.size()) throw std::invalid_argument("VariableOrder: ranking has the wrong size");
  ascending_.assign(degrees_.size(), -1);
  for (std::size_t g = 0; g < ranking_.size(); ++g) {
    int r = ranking_[g];
    if (r < 0 || r >= static_cast<int>(degrees_.size()) || ascending_[static_cast<std::size_t>(r)] != -1) {
      throw std::invalid_argument("VariableOrder: ranking is not a permutation");
    }
    ascending_[static_cast<std::size_t>(r)] = static_cast<int>(g);
  }
}

int VariableOrder::word_degree(const Word& w) const {
  int d = 0;
  for (int g : w) d += degree(g);
  return d;
}

int deglex_compare(const Word& a, const Word& b, const VariableOrder& order) {
  int da = order.word_degree(a);
  int db = order.word_degree(b);
  if (da != db) return da < db ? -1 : 1;
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int ra = order.rank(a[i]);
    int rb = order.rank(b[i]);
    if (ra != rb) return ra < rb ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

NCPolynomial NCPolynomial::word(const Word& w, const Rational& c) {
  NCPolynomial p;
  if (!c.is_zero()) p.terms_.emplace(w, c);
  return p;
}

Rational NCPolynomial::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void NCPolynomial::add_term(const Field& f, const Word& w, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(w, c);
  if (inserted) return;
  it->second = f.add(it->second, c);
  if (it->second.is_zero()) terms_.erase(it);
}

void NCPolynomial::add(const Field& f, const NCPolynomial& p, const Rational& c) {
  for (const auto& [w, v] : p.terms_) add_term(f, w, f.mul(c, v));
}

const Word& NCPolynomial::leading_word(const VariableOrder& order) const {
  if (terms_.empty()) throw std::logic_error("NCPolynomial: zero has no leading word");
  const Word* best = nullptr;
  for (const auto& [w, c] : terms_) {
    if (best == nullptr || deglex_compare(w, *best, order) > 0) best = &w;
  }
  return *best;
}

bool NCPolynomial::is_homogeneous(const VariableOrder& order) const {
  if (terms_.empty()) return true;
  int d = order.word_degree(terms_.begin()->first);
  for (const auto& [w, c] : terms_) {
    if (order.word_degree(w) != d) return false;
  }
  return true;
}

int NCPolynomial::degree(const VariableOrder& order) const {
  if (terms_.empty()) return -1;
  return order.word_degree(leading_word(order));
}

NCPolynomial NCPolynomial::monic(const Field& f, const VariableOrder& order) const {
  if (terms_.empty()) return *this;
  Rational inv = f.inv(terms_.at(leading_word(order)));
  NCPolynomial p;
  for (const auto& [w, c] : terms_) p.terms_.emplace(w, f.mul(inv, c));
  return p;
}

NCPolynomial NCPolynomial::sandwich(const Field& f, const Word& left, const Word& right, const Rational& c) const {
  NCPolynomial p;
  if (c.is_zero()) return p;
  for (const auto& [w, v] : terms_) {
    Word x = left;
    x.insert(x.end(), w.begin(), w.end());
    x.insert(x.end(), right.begin(), right.end());
    p.add_term(f, x, f.mul(c, v));
  }
  return p;
}

std::string format_word(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += "*";
    s += names.at(static_cast<std::size_t>(w[i]));
  }
  return s;
}

std::string format_nc_polynomial(const NCPolynomial& p, const std::vector<std::string>& names, const VariableOrder& order) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Word, Rational>> terms(p.terms().begin(), p.terms().end());
  std::sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) { return deglex_compare(a.first, b.first, order) > 0; });
  std::string s;
  bool first = true;
  for (auto& [w, c] : terms) {
    Rational a = c;
    bool neg = a.sign() < 0;
    if (neg) a = -a;
    s += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    if (a.is_one()) s += format_word(w, names);
    else s += a.to_string() + "*" + format_word(w, names);
  }
  return s;
}

namespace {

// Position of needle in hay, or -1.
int find_subword(const Word& hay, const Word& needle, std::size_t from = 0) {
  if (needle.size() > hay.size()) return -1;
  for (std::size_t p = from; p + needle.size() <= hay.size(); ++p) {
    if (std::equal(needle.begin(), needle.end(), hay.begin() + static_cast<std::ptrdiff_t>(p))) return static_cast<int>(p);
  }
  return -1;
}

bool has_suffix(const Word& w, const Word& s) {
  return s.size() <= w.size() && std::equal(s.begin(), s.end(), w.end() - static_cast<std::ptrdiff_t>(s.size()));
}

}  // namespace

bool contains_subword(const Word& hay, const Word& needle) { return find_subword(hay, needle) >= 0; }

void ReductionSystem::add(const NCPolynomial& g) {
  if (g.is_zero()) return;
  if (!g.is_homogeneous(order_)) throw std::invalid_argument("ReductionSystem: element is not homogeneous");
  NCPolynomial m = g.monic(field_, order_);
  leads_.push_back(m.leading_word(order_));
  elements_.push_back(std::move(m));
}

NCPolynomial reduce(const NCPolynomial& p, const ReductionSystem& g, std::vector<RewriteStep>* trace) {
  const Field& f = g.field();
  DeglexLess less{&g.order()};
  std::map<Word, Rational, DeglexLess> acc(less);
  for (const auto& [w, c] : p.terms()) acc.emplace(w, c);
  NCPolynomial out;
  while (!acc.empty()) {
    auto top = std::prev(acc.end());
    Word w = top->first;
    Rational c = top->second;
    acc.erase(top);
    int hit = -1;
    int pos = -1;
    for (int k = 0; k < g.size() && hit < 0; ++k) {
      int at = find_subword(w, g.leading_words()[static_cast<std::size_t>(k)]);
      if (at >= 0) {
        hit = k;
        pos = at;
      }
    }
    if (hit < 0) {
      out.add_term(f, w, c);
      continue;
    }
    const Word& lead = g.leading_words()[static_cast<std::size_t>(hit)];
    Word left(w.begin(), w.begin() + pos);
    Word right(w.begin() + pos + static_cast<std::ptrdiff_t>(lead.size()), w.end());
    if (trace) trace->push_back({left, hit, right, c});
    for (const auto& [gw, gc] : g.elements()[static_cast<std::size_t>(hit)].terms()) {
      if (gw == lead) continue;
      Word x = left;
      x.insert(x.end(), gw.begin(), gw.end());
      x.insert(x.end(), right.begin(), right.end());
      Rational v = f.neg(f.mul(c, gc));
      auto [it, inserted] = acc.emplace(x, v);
      if (!inserted) {
        it->second = f.add(it->second, v);
        if (it->second.is_zero()) acc.erase(it);
      }
    }
  }
  return out;
}

namespace {

template <typename Visit>
void enumerate_reduced(const ReductionSystem& g, int d, Word& cur, int deg, Visit&& visit) {
  if (deg == d) {
    visit(cur);
    return;
  }
  for (int x : g.order().ascending()) {
    int nd = deg + g.order().degree(x);
    if (nd > d) continue;
    cur.push_back(x);
    bool ok = true;
    for (const auto& lead : g.leading_words()) {
      if (has_suffix(cur, lead)) {
        ok = false;
        break;
      }
    }
    if (ok) enumerate_reduced(g, d, cur, nd, visit);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Word> reduced_monomials(const ReductionSystem& g, int d) {
  if (d < 0) throw std::invalid_argument("reduced_monomials: negative degree");
  for (int x = 0; x < g.order().size(); ++x) {
    if (g.order().degree(x) <= 0) throw std::invalid_argument("reduced_monomials: generator degrees must be positive");
  }
  std::vector<Word> out;
  Word cur;
  enumerate_reduced(g, d, cur, 0, [&](const Word& w) { out.push_back(w); });
  return out;
}

std::vector<long long> reduced_monomial_counts(const ReductionSystem& g, int d_max) {
  std::vector<long long> counts;
  for (int d = 0; d <= d_max; ++d) {
    long long c = 0;
    Word cur;
    enumerate_reduced(g, d, cur, 0, [&](const Word&) { ++c; });
    counts.push_back(c);
  }
  return counts;
}

CertificateReport certify_groebner_by_dims(const ReductionSystem& g, const std::vector<long long>& target_dims, int d_max) {
  if (static_cast<int>(target_dims.size()) <= d_max) throw std::invalid_argument("certify_groebner_by_dims: target dims shorter than d_max");
  CertificateReport rep;
  rep.d_max = d_max;
  rep.counts = reduced_monomial_counts(g, d_max);
  rep.targets.assign(target_dims.begin(), target_dims.begin() + d_max + 1);
  rep.pass = true;
  for (int d = 0; d <= d_max; ++d) {
    long long c = rep.counts[static_cast<std::size_t>(d)];
    long long t = rep.targets[static_cast<std::size_t>(d)];
    if (c < t) {
      throw std::logic_error("certify_groebner_by_dims: " + std::to_string(c) + " reduced monomials in degree " + std::to_string(d) +
                             " but the algebra has dimension " + std::to_string(t));
    }
    if (c > t && rep.pass) {
      rep.pass = false;
      rep.first_mismatch = d;
    }
  }
  return rep;
}

namespace {

// S = g_a * right_a - left_b * g_b * right_b
struct Ambiguity {
  int a;
  int b;
  Word right_a;
  Word left_b;
  Word right_b;
};

std::vector<Ambiguity> ambiguities(const ReductionSystem& g, int d_max) {
  std::vector<Ambiguity> out;
  const auto& leads = g.leading_words();
  const auto& order = g.order();
  for (int a = 0; a < g.size(); ++a) {
    const Word& la = leads[static_cast<std::size_t>(a)];
    for (int b = 0; b < g.size(); ++b) {
      const Word& lb = leads[static_cast<std::size_t>(b)];
      // overlaps: la = p o, lb = o s with o nonempty, p and s nonempty
      for (std::size_t k = 1; k < la.size() && k < lb.size(); ++k) {
        if (!std::equal(la.end() - static_cast<std::ptrdiff_t>(k), la.end(), lb.begin())) continue;
        Word s(lb.begin() + static_cast<std::ptrdiff_t>(k), lb.end());
        Word p(la.begin(), la.end() - static_cast<std::ptrdiff_t>(k));
        Word whole = la;
        whole.insert(whole.end(), s.begin(), s.end());
        if (order.word_degree(whole) > d_max) continue;
        out.push_back({a, b, s, p, {}});
      }
      // inclusions: lb occurs inside la
      if (a != b && lb.size() <= la.size() && order.word_degree(la) <= d_max) {
        int pos = find_subword(la, lb);
        if (pos >= 0) {
          Word p(la.begin(), la.begin() + pos);
          Word s(la.begin() + pos + static_cast<std::ptrdiff_t>(lb.size()), la.end());
          out.push_back({a, b, {}, p, s});
        }
      }
    }
  }
  return out;
}

NCPolynomial s_element(const ReductionSystem& g, const Ambiguity& amb) {
  const Field& f = g.field();
  NCPolynomial s = g.elements()[static_cast<std::size_t>(amb.a)].sandwich(f, {}, amb.right_a, Rational(1));
  s.add(f, g.elements()[static_cast<std::size_t>(amb.b)].sandwich(f, amb.left_b, amb.right_b, Rational(1)), f.from_int(-1));
  return s;
}

ReductionSystem interreduce(const Field& f, const VariableOrder& order, std::vector<NCPolynomial> elems) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(elems.begin(), elems.end(), [&](const NCPolynomial& x, const NCPolynomial& y) {
      return deglex_compare(x.leading_word(order), y.leading_word(order), order) < 0;
    });
    for (std::size_t i = 0; i < elems.size(); ++i) {
      ReductionSystem others(f, order);
      for (std::size_t k = 0; k < elems.size(); ++k) {
        if (k != i) others.add(elems[k]);
      }
      NCPolynomial r = reduce(elems[i], others);
      if (!(r == elems[i])) {
        changed = true;
        if (r.is_zero()) {
          elems.erase(elems.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
          elems[i] = r.monic(f, order);
        }
        break;
      }
    }
  }
  ReductionSystem out(f, order);
  for (const auto& e : elems) out.add(e);
  return out;
}

}  // namespace

int unresolved_ambiguities(const ReductionSystem& g, int d_max) {
  int count = 0;
  for (const auto& amb : ambiguities(g, d_max)) {
    if (!reduce(s_element(g, amb), g).is_zero()) ++count;
  }
  return count;
}

ReductionSystem overlap_completion(const Field& f, const VariableOrder& order, const std::vector<NCPolynomial>& gens, int d_max) {
  std::vector<NCPolynomial> elems;
  for (const auto& p : gens) {
    if (!p.is_homogeneous(order)) throw std::invalid_argument("overlap_completion: generator is not homogeneous");
    if (!p.is_zero() && p.degree(order) <= d_max) elems.push_back(p.monic(f, order));
  }
  ReductionSystem sys = interreduce(f, order, elems);
  while (true) {
    std::vector<NCPolynomial> fresh;
    for (const auto& amb : ambiguities(sys, d_max)) {
      NCPolynomial r = reduce(s_element(sys, amb), sys);
      if (!r.is_zero()) {
        fresh.push_back(r);
        break;  // re-examine ambiguities against the enlarged system
      }
    }
    if (fresh.empty()) return sys;
    std::vector<NCPolynomial> all = sys.elements();
    all.insert(all.end(), fresh.begin(), fresh.end());
    sys = interreduce(f, order, all);
  }
}

}  // namespace kk::nc
