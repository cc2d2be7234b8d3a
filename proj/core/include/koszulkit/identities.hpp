#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "koszulkit/koszul.hpp"
#include "koszulkit/quotient_ring.hpp"
#include "koszulkit/tor.hpp"

namespace kk::id {

enum class Status {
  Pass,  ///< identity holds within the bound, or a verdict was decided
  Fail,  ///< an unconditional identity is violated: a bug
};

struct Report {
  std::string name;
  std::string bound;
  Status status = Status::Pass;
  std::string verdict;  ///< e.g. "QUASI-FORMAL-UP-TO-BOUND"; empty for plain identities
  std::optional<std::string> first_failure;
  long long comparisons = 0;
  std::vector<std::pair<std::string, std::string>> details;

  bool passed() const noexcept { return status == Status::Pass; }
};

/// P^R_k(s,t) from the bar complex over R, exponents in the given region.
tor::PoincareTruncation poincare_R(const ca::QuotientRing& r, int s_max, int t_max, int total_max, int jobs = 1);

/// Koszul homology over the full homological range and internal degrees <= j_max.
kz::KoszulHomology full_homology(const ca::QuotientRing& r, int j_max, int jobs = 1);

/// sum beta^H_{p,i,j} s^{p+i} t^j for j <= t_max (s_max = total_max = 2 t_max
/// is enough since p + i <= j).
tor::PoincareTruncation poincare_H_diagonal(const kz::KoszulHomology& h, int t_max, int jobs = 1);

/// P^R = (1+st)^n P^K coefficientwise for s + t <= total, P^K >= 0, and the
/// two Koszul verdicts agree.
Report check_poincare_factorization(const ca::QuotientRing& r, int total, int jobs = 1);

/// H_R(t) (1-t)^n P^K(-1,t) = 1 + O(t^{D+1}).
Report check_hilbert_identity(const ca::QuotientRing& r, int D, int jobs = 1);

/// The four low-degree relations between beta^R and beta^H, j <= j_max.
Report check_low_degree_betti(const ca::QuotientRing& r, int j_max, int jobs = 1);

/// Compares P^K with P^H(s,s,t) for t <= t_max.
Report check_quasi_formal(const ca::QuotientRing& r, int t_max, int jobs = 1);

/// "H strand-Koszul", "K Koszul and quasi-formal" and "R Koszul and K
/// quasi-formal", evaluated for internal degrees <= t_max; Fail if they disagree.
Report check_strand_equivalences(const ca::QuotientRing& r, int t_max, int jobs = 1);

/// P^R against (1+st)^n / (1 - s (P^Q_R(s,t) - 1)), P^Q_R = sum dim H_{ij} s^i t^j.
Report check_golod(const ca::QuotientRing& r, int t_max, int jobs = 1);

/// Tor^H(k, Tor^Q(k,k)) assembled from beta^H and binomial shifts, against
/// (1+st)^n P^H(s,s,t), for t <= t_max.
Report check_tor_over_H(const kz::KoszulHomology& h, int n, int t_max, int jobs = 1);

}  // namespace kk::id
