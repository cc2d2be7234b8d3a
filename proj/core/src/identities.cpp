#include "koszulkit/identities.hpp"

#include <sstream>
#include <stdexcept>

#include "koszulkit/graded_algebra.hpp"

namespace kk::id {

namespace {

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long b = 1;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

std::string st(int a, int b) { return "s^" + std::to_string(a) + " t^" + std::to_string(b); }

std::string mismatch(const std::string& what, int a, int b, long long lhs, long long rhs) {
  std::ostringstream os;
  os << what << " at " << st(a, b) << ": " << lhs << " vs " << rhs;
  return os.str();
}

// Off-diagonal (a != b) nonzero coefficient with smallest (b, a).
std::optional<std::pair<int, int>> off_diagonal(const tor::PoincareTruncation& p) {
  for (int b = 0; b <= p.t_max(); ++b) {
    for (int a = 0; a <= p.s_max(); ++a) {
      if (a != b && p.in_range(a, b) && p.coefficient(a, b) != 0) return std::make_pair(a, b);
    }
  }
  return std::nullopt;
}

long long count_region(const tor::PoincareTruncation& p) {
  long long c = 0;
  for (int a = 0; a <= p.s_max(); ++a) {
    for (int b = 0; b <= p.t_max(); ++b) c += p.in_range(a, b);
  }
  return c;
}

std::string pair_str(const std::optional<std::pair<int, int>>& w) {
  if (!w) return "none";
  return "(" + std::to_string(w->first) + "," + std::to_string(w->second) + ")";
}

tor::PoincareTruncation series_region(int t_max) { return tor::PoincareTruncation(t_max, t_max, 2 * t_max); }

}  // namespace

tor::PoincareTruncation poincare_R(const ca::QuotientRing& r, int s_max, int t_max, int total_max, int jobs) {
  auto a = alg::from_ring(r, t_max);
  auto table = tor::bar_betti(a, tor::BarBounds{s_max, GradeKey{t_max}, total_max}, jobs);
  return tor::poincare_from_betti(table, s_max, t_max, total_max);
}

kz::KoszulHomology full_homology(const ca::QuotientRing& r, int j_max, int jobs) {
  kz::HomologyOptions o;
  o.max_hom = r.nvars();
  o.max_int = j_max;
  o.jobs = jobs;
  return kz::KoszulHomology::compute(r, o);
}

tor::PoincareTruncation poincare_H_diagonal(const kz::KoszulHomology& h, int t_max, int jobs) {
  if (h.max_hom() < h.ring().nvars() || h.max_int() < t_max) {
    throw std::out_of_range("poincare_H_diagonal: homology bounds do not cover internal degree " + std::to_string(t_max));
  }
  auto table = tor::bar_betti_trigraded(h, t_max / 2, t_max, jobs);
  auto p = series_region(t_max);
  for (const auto& [pg, beta] : table.entries) p.add(pg.first + pg.second[0], pg.second[1], beta);
  return p;
}

Report check_poincare_factorization(const ca::QuotientRing& r, int total, int jobs) {
  Report rep;
  rep.name = "poincare-factorization";
  rep.bound = "s+t<=" + std::to_string(total);
  int n = r.nvars();
  auto pr = poincare_R(r, total, total, total, jobs);
  tor::PoincareTruncation pk;
  try {
    pk = tor::poincare_K_from_R(pr, n);
  } catch (const std::domain_error& e) {
    rep.status = Status::Fail;
    rep.first_failure = e.what();
    return rep;
  }
  auto back = pk * pk.one_plus_st_power(n);
  rep.comparisons = count_region(pr);
  if (auto d = back.first_difference(pr)) {
    rep.status = Status::Fail;
    rep.first_failure = mismatch("(1+st)^n P^K vs P^R", d->first, d->second, back.coefficient(d->first, d->second),
                                 pr.coefficient(d->first, d->second));
    return rep;
  }
  auto wr = off_diagonal(pr);
  auto wk = off_diagonal(pk);
  rep.details.push_back({"R", wr ? "NOT-KOSZUL" : "KOSZUL-UP-TO-BOUND"});
  rep.details.push_back({"K", wk ? "NOT-KOSZUL" : "KOSZUL-UP-TO-BOUND"});
  rep.details.push_back({"R witness", pair_str(wr)});
  rep.details.push_back({"K witness", pair_str(wk)});
  rep.details.push_back({"P^R", pr.to_string()});
  rep.details.push_back({"P^K", pk.to_string()});
  if (wr.has_value() != wk.has_value()) {
    rep.status = Status::Fail;
    rep.first_failure = "Koszul verdicts of R and K differ";
  }
  rep.verdict = wr ? "BOTH-NOT-KOSZUL" : "BOTH-KOSZUL-UP-TO-BOUND";
  return rep;
}

Report check_hilbert_identity(const ca::QuotientRing& r, int D, int jobs) {
  Report rep;
  rep.name = "hilbert-identity";
  rep.bound = "t<=" + std::to_string(D);
  int n = r.nvars();
  auto pr = poincare_R(r, D, D, 2 * D, jobs);
  auto pk = tor::poincare_K_from_R(pr, n);
  auto alt = pk.at_s_minus_one();
  auto hr = r.hilbert_coeffs(D);
  std::vector<long long> one_minus_t(static_cast<std::size_t>(D + 1), 0);
  for (int k = 0; k <= std::min(n, D); ++k) one_minus_t[static_cast<std::size_t>(k)] = (k % 2 ? -1 : 1) * binom(n, k);
  auto mul = [D](const std::vector<long long>& x, const std::vector<long long>& y) {
    std::vector<long long> z(static_cast<std::size_t>(D + 1), 0);
    for (int a = 0; a <= D; ++a) {
      for (int b = 0; a + b <= D; ++b) z[static_cast<std::size_t>(a + b)] += x[static_cast<std::size_t>(a)] * y[static_cast<std::size_t>(b)];
    }
    return z;
  };
  auto prod = mul(mul(hr, one_minus_t), alt);
  rep.comparisons = D + 1;
  for (int k = 0; k <= D; ++k) {
    long long want = k == 0 ? 1 : 0;
    if (prod[static_cast<std::size_t>(k)] != want) {
      rep.status = Status::Fail;
      rep.first_failure = "coefficient of t^" + std::to_string(k) + " is " + std::to_string(prod[static_cast<std::size_t>(k)]);
      break;
    }
  }
  std::ostringstream os;
  for (long long c : alt) os << c << " ";
  rep.details.push_back({"P^K(-1,t)", os.str()});
  return rep;
}

Report check_low_degree_betti(const ca::QuotientRing& r, int j_max, int jobs) {
  Report rep;
  rep.name = "low-degree";
  rep.bound = "j<=" + std::to_string(j_max);
  int n = r.nvars();
  auto tr = tor::bar_betti(alg::from_ring(r, j_max), 4, j_max, jobs);
  auto h = full_homology(r, j_max, jobs);
  auto th = tor::bar_betti_trigraded(h, 2, j_max, jobs);
  auto bh = [&](int p, int i, int j) -> long long {
    if (j < 0) return 0;
    return th.at(p, i, j);
  };
  auto compare = [&](const std::string& label, long long lhs, long long rhs) {
    ++rep.comparisons;
    if (lhs != rhs && !rep.first_failure) {
      rep.status = Status::Fail;
      rep.first_failure = label + ": " + std::to_string(lhs) + " vs " + std::to_string(rhs);
    }
  };
  if (j_max >= 2) compare("beta^R_{2,2}", tr.at(2, 2), binom(n, 2) + bh(1, 1, 2));
  for (int j = 3; j <= j_max; ++j) compare("beta^R_{2," + std::to_string(j) + "}", tr.at(2, j), bh(1, 1, j));
  for (int j = 4; j <= j_max; ++j) {
    compare("beta^R_{3," + std::to_string(j) + "}", tr.at(3, j), bh(1, 2, j) + n * bh(1, 1, j - 1));
  }
  for (int j = 5; j <= j_max; ++j) {
    compare("beta^R_{4," + std::to_string(j) + "}", tr.at(4, j),
            bh(1, 3, j) + n * bh(1, 2, j - 1) + binom(n, 2) * bh(1, 1, j - 2) + bh(2, 2, j));
  }
  return rep;
}

namespace {

struct SeriesBundle {
  tor::PoincareTruncation pr, pk, ph;
};

SeriesBundle series_for(const ca::QuotientRing& r, const kz::KoszulHomology& h, int t_max, int jobs) {
  SeriesBundle s;
  s.pr = poincare_R(r, t_max, t_max, 2 * t_max, jobs);
  s.pk = tor::poincare_K_from_R(s.pr, r.nvars());
  s.ph = poincare_H_diagonal(h, t_max, jobs);
  return s;
}

// Fills the quasi-formality verdict; returns false when P^K <= P^H(s,s,t) fails.
bool quasi_formal_verdict(const SeriesBundle& s, Report& rep, bool& quasi_formal) {
  std::pair<int, int> strict{-1, -1};
  rep.comparisons += count_region(s.pk);
  if (!s.pk.coefficientwise_leq(s.ph, &strict)) {
    auto d = s.pk.first_difference(s.ph);
    rep.status = Status::Fail;
    rep.first_failure = mismatch("P^K exceeds P^H(s,s,t)", d->first, d->second, s.pk.coefficient(d->first, d->second),
                                 s.ph.coefficient(d->first, d->second));
    return false;
  }
  quasi_formal = strict.first < 0;
  if (!quasi_formal) {
    rep.details.push_back({"quasi-formal witness", mismatch("P^K < P^H(s,s,t)", strict.first, strict.second,
                                                            s.pk.coefficient(strict.first, strict.second),
                                                            s.ph.coefficient(strict.first, strict.second))});
  }
  return true;
}

}  // namespace

Report check_quasi_formal(const ca::QuotientRing& r, int t_max, int jobs) {
  Report rep;
  rep.name = "quasi-formal";
  rep.bound = "t<=" + std::to_string(t_max);
  auto h = full_homology(r, t_max, jobs);
  auto s = series_for(r, h, t_max, jobs);
  bool qf = false;
  if (!quasi_formal_verdict(s, rep, qf)) return rep;
  rep.verdict = qf ? "QUASI-FORMAL-UP-TO-BOUND" : "NOT-QUASI-FORMAL";
  rep.details.push_back({"P^K", s.pk.to_string()});
  rep.details.push_back({"P^H(s,s,t)", s.ph.to_string()});
  return rep;
}

Report check_strand_equivalences(const ca::QuotientRing& r, int t_max, int jobs) {
  Report rep;
  rep.name = "strand-equivalences";
  int n = r.nvars();
  int half = t_max / 2;
  auto h = full_homology(r, t_max + n, jobs);
  int q_max = std::min(alg::strand_trusted_degree(h), half);
  rep.bound = "t<=" + std::to_string(t_max) + ", strand p<=" + std::to_string(half) + " q<=" + std::to_string(q_max);

  bool s1 = true;
  try {
    auto sv = tor::is_strand_koszul_up_to(h, half, q_max, jobs);
    s1 = sv.strand_koszul;
    if (sv.trigraded_witness) {
      const auto& w = *sv.trigraded_witness;
      rep.details.push_back({"strand witness (p,i,j)", "(" + std::to_string(w[0]) + "," + std::to_string(w[1]) + "," +
                                                           std::to_string(w[2]) + ")"});
    }
  } catch (const std::domain_error&) {
    s1 = false;
    rep.details.push_back({"strand witness", "H leaves the positive strands"});
  }
  auto s = series_for(r, h, t_max, jobs);
  bool qf = false;
  if (!quasi_formal_verdict(s, rep, qf)) return rep;
  bool k_koszul = !off_diagonal(s.pk).has_value();
  bool r_koszul = !off_diagonal(s.pr).has_value();
  bool s2 = k_koszul && qf;
  bool s3 = r_koszul && qf;
  auto truth = [](bool b) { return std::string(b ? "true" : "false"); };
  rep.details.push_back({"H strand-Koszul", truth(s1)});
  rep.details.push_back({"K Koszul and quasi-formal", truth(s2)});
  rep.details.push_back({"R Koszul and K quasi-formal", truth(s3)});
  if (s1 != s2 || s2 != s3) {
    rep.status = Status::Fail;
    rep.first_failure = "statements disagree within the bound";
    rep.verdict = "DISAGREEMENT";
    return rep;
  }
  rep.verdict = s1 ? "ALL-EQUIVALENT-TRUE" : "ALL-EQUIVALENT-FALSE";
  if (s1) {
    auto rhs = s.ph * s.ph.one_plus_st_power(n);
    rep.comparisons += 2 * count_region(s.pr);
    if (auto d = s.pk.first_difference(s.ph)) {
      rep.status = Status::Fail;
      rep.first_failure = mismatch("P^K vs P^H(s,s,t)", d->first, d->second, s.pk.coefficient(d->first, d->second),
                                   s.ph.coefficient(d->first, d->second));
    } else if (auto d2 = s.pr.first_difference(rhs)) {
      rep.status = Status::Fail;
      rep.first_failure = mismatch("P^R vs (1+st)^n P^H(s,s,t)", d2->first, d2->second,
                                   s.pr.coefficient(d2->first, d2->second), rhs.coefficient(d2->first, d2->second));
    }
  }
  return rep;
}

Report check_golod(const ca::QuotientRing& r, int t_max, int jobs) {
  Report rep;
  rep.name = "golod";
  rep.bound = "t<=" + std::to_string(t_max);
  int n = r.nvars();
  auto pr = poincare_R(r, t_max, t_max, 2 * t_max, jobs);
  auto h = full_homology(r, t_max, jobs);
  auto g = series_region(t_max);
  for (int i = 1; i <= n; ++i) {
    for (int j = 0; j <= t_max; ++j) {
      if (g.in_range(i + 1, j)) g.set(i + 1, j, h.dim(i, j));
    }
  }
  auto inv = series_region(t_max);
  inv.set(0, 0, 1);
  auto power = inv;
  for (int k = 1; k <= t_max; ++k) {
    power = power * g;
    for (int a = 0; a <= t_max; ++a) {
      for (int b = 0; b <= t_max; ++b) {
        if (inv.in_range(a, b)) inv.add(a, b, power.coefficient(a, b));
      }
    }
  }
  auto closed = inv * inv.one_plus_st_power(n);
  std::pair<int, int> strict{-1, -1};
  rep.comparisons = count_region(pr);
  if (!pr.coefficientwise_leq(closed, &strict)) {
    auto d = pr.first_difference(closed);
    rep.status = Status::Fail;
    rep.first_failure = mismatch("P^R exceeds the Golod bound", d->first, d->second, pr.coefficient(d->first, d->second),
                                 closed.coefficient(d->first, d->second));
    return rep;
  }
  if (strict.first < 0) {
    rep.verdict = "GOLOD-UP-TO-BOUND";
  } else {
    rep.verdict = "NOT-GOLOD";
    rep.details.push_back({"deficit", mismatch("P^R < bound", strict.first, strict.second, pr.coefficient(strict.first, strict.second),
                                               closed.coefficient(strict.first, strict.second))});
  }
  return rep;
}

Report check_tor_over_H(const kz::KoszulHomology& h, int n, int t_max, int jobs) {
  Report rep;
  rep.name = "tor-over-h";
  rep.bound = "t<=" + std::to_string(t_max);
  auto table = tor::bar_betti_trigraded(h, t_max / 2, t_max, jobs);
  auto lhs = series_region(t_max);
  auto ph = series_region(t_max);
  for (const auto& [pg, beta] : table.entries) {
    int p = pg.first;
    int q = pg.second[0];
    int j = pg.second[1];
    ph.add(p + q, j, beta);
    for (int i = 0; i <= n; ++i) {
      if (lhs.in_range(p + q + i, j + i)) lhs.add(p + q + i, j + i, binom(n, i) * beta);
    }
  }
  auto rhs = ph * ph.one_plus_st_power(n);
  rep.comparisons = count_region(lhs);
  if (auto d = lhs.first_difference(rhs)) {
    rep.status = Status::Fail;
    rep.first_failure = mismatch("direct sum vs (1+st)^n P^H(s,s,t)", d->first, d->second, lhs.coefficient(d->first, d->second),
                                 rhs.coefficient(d->first, d->second));
  }
  return rep;
}

}  // namespace kk::id
