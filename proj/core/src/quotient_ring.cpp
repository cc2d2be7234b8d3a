#include "koszulkit/quotient_ring.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace kk::ca {

using la::Field;
using la::Rational;

QuotientRing::QuotientRing(Field f, std::vector<std::string> names, std::vector<Polynomial> relations, int degree_bound)
    : field_(f), n_(static_cast<int>(names.size())), names_(std::move(names)), relations_(std::move(relations)) {
  if (n_ > kMaxVars) throw std::invalid_argument("QuotientRing: at most 16 variables are supported");
  for (const auto& r : relations_) {
    if (r.nvars() != n_) throw std::invalid_argument("QuotientRing: relation has the wrong number of variables");
    if (r.is_zero()) throw std::invalid_argument("QuotientRing: zero relation");
    if (!r.is_homogeneous()) throw std::invalid_argument("QuotientRing: relation is not homogeneous");
    if (r.degree() < 2) throw std::invalid_argument("QuotientRing: relation of degree < 2");
  }
  gb_ = buchberger(field_, relations_, degree_bound);
  for (const auto& g : gb_.basis) {
    if (g.size() != 1) monomial_ = false;
    if (!g.leading_monomial().is_squarefree()) squarefree_ = false;
  }
  if (!monomial_) squarefree_ = false;
  compute_fine_weights();
}

QuotientRing QuotientRing::polynomial_ring(Field f, int n) { return QuotientRing(f, default_variable_names(n), {}); }

QuotientRing QuotientRing::parse(Field f, const std::vector<std::string>& names, const std::vector<std::string>& relations) {
  std::vector<Polynomial> rels;
  for (const auto& r : relations) rels.push_back(parse_polynomial(r, names, f));
  return QuotientRing(f, names, std::move(rels));
}

void QuotientRing::compute_fine_weights() {
  std::vector<la::SparseVec> rows;
  for (const auto& g : gb_.basis) {
    const MultiDegree& lead = g.leading_monomial();
    for (const auto& [m, c] : g.terms()) {
      if (m == lead) continue;
      std::vector<la::Entry> raw;
      for (int i = 0; i < n_; ++i) raw.push_back({i, Rational(m[i] - lead[i])});
      rows.push_back(la::collect(Field::rationals(), std::move(raw)));
    }
  }
  la::Matrix a(static_cast<int>(rows.size()), n_);
  {
    std::vector<std::vector<Rational>> dense;
    for (const auto& r : rows) dense.push_back(la::to_dense(r, n_));
    if (!dense.empty()) a = la::Matrix::from_dense(Field::rationals(), dense);
  }
  auto rk = la::rank_kernel(Field::rationals(), a);
  fine_weights_.clear();
  for (const auto& v : rk.kernel) {
    mpz_class lcm = 1;
    for (const auto& e : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), e.value.to_mpq().get_den_mpz_t());
    std::vector<int> w(static_cast<std::size_t>(n_), 0);
    mpz_class g = 0;
    std::vector<mpz_class> ints(static_cast<std::size_t>(n_), 0);
    for (const auto& e : v) {
      mpq_class q = e.value.to_mpq() * lcm;
      ints[static_cast<std::size_t>(e.index)] = q.get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), q.get_num_mpz_t());
    }
    for (int i = 0; i < n_; ++i) {
      mpz_class x = ints[static_cast<std::size_t>(i)] / g;
      if (!x.fits_sint_p()) throw std::overflow_error("QuotientRing: weight vector too large");
      w[static_cast<std::size_t>(i)] = static_cast<int>(x.get_si());
    }
    fine_weights_.push_back(std::move(w));
  }
}

GradeKey QuotientRing::fine_key(const MultiDegree& m) const {
  GradeKey k(static_cast<int>(fine_weights_.size()));
  for (std::size_t a = 0; a < fine_weights_.size(); ++a) {
    int s = 0;
    for (int i = 0; i < n_; ++i) s += fine_weights_[a][static_cast<std::size_t>(i)] * m[i];
    k.set(static_cast<int>(a), s);
  }
  return k;
}

void QuotientRing::check_degree(int d) const {
  if (gb_.trusted_degree >= 0 && d > gb_.trusted_degree) {
    throw std::out_of_range("QuotientRing: degree " + std::to_string(d) + " exceeds the Gröbner basis bound " +
                            std::to_string(gb_.trusted_degree));
  }
}

bool QuotientRing::is_standard(const MultiDegree& m) const {
  check_degree(m.total());
  for (const auto& g : gb_.basis) {
    if (g.leading_monomial().divides(m)) return false;
  }
  return true;
}

const std::vector<MultiDegree>& QuotientRing::std_monomials(int d) const {
  if (d < 0) throw std::invalid_argument("std_monomials: negative degree");
  check_degree(d);
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->std_by_degree.find(d);
    if (it != cache_->std_by_degree.end()) return it->second;
  }
  std::vector<MultiDegree> result;
  if (d == 0) {
    result.push_back(MultiDegree(n_));
  } else {
    // Standard monomials form an order ideal: extend those of degree d-1.
    const auto& lower = std_monomials(d - 1);
    std::set<MultiDegree> seen;
    for (const auto& m : lower) {
      for (int i = 0; i < n_; ++i) {
        MultiDegree e = m + MultiDegree::unit(n_, i);
        if (seen.insert(e).second && is_standard(e)) result.push_back(e);
      }
    }
    std::sort(result.begin(), result.end(), [](const MultiDegree& a, const MultiDegree& b) { return grevlex_greater(a, b); });
  }
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto [it, inserted] = cache_->std_by_degree.emplace(d, std::move(result));
  if (inserted) {
    for (std::size_t i = 0; i < it->second.size(); ++i) cache_->std_index.emplace(it->second[i], static_cast<int>(i));
  }
  return it->second;
}

int QuotientRing::std_index(const MultiDegree& m) const {
  std_monomials(m.total());
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto it = cache_->std_index.find(m);
  return it == cache_->std_index.end() ? -1 : it->second;
}

std::vector<long long> QuotientRing::hilbert_coeffs(int max_degree) const {
  std::vector<long long> h;
  for (int d = 0; d <= max_degree; ++d) h.push_back(static_cast<long long>(std_monomials(d).size()));
  return h;
}

Polynomial QuotientRing::normal_form(const Polynomial& p) const {
  for (const auto& [m, c] : p.terms()) check_degree(m.total());
  return reduce_fully(field_, p, gb_.basis);
}

Polynomial QuotientRing::multiply(const Polynomial& a, const Polynomial& b) const {
  return normal_form(Polynomial::mul(field_, a, b));
}

la::SparseVec QuotientRing::reduce_monomial(const MultiDegree& m) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->reduced.find(m);
    if (it != cache_->reduced.end()) return it->second;
  }
  Polynomial nf = normal_form(Polynomial::monomial(m));
  std::vector<la::Entry> raw;
  for (const auto& [mono, c] : nf.terms()) {
    int idx = std_index(mono);
    if (idx < 0) throw std::logic_error("QuotientRing: normal form contains a non-standard monomial");
    raw.push_back({idx, c});
  }
  la::SparseVec v = la::collect(field_, std::move(raw));
  std::lock_guard<std::mutex> lock(cache_->mutex);
  cache_->reduced.emplace(m, v);
  return v;
}

Polynomial QuotientRing::from_coordinates(int d, const la::SparseVec& v) const {
  const auto& basis = std_monomials(d);
  Polynomial p(n_);
  for (const auto& e : v) p.add_term(field_, basis.at(static_cast<std::size_t>(e.index)), e.value);
  return p;
}

}  // namespace kk::ca
