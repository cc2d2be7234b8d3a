#include <benchmark/benchmark.h>

#include <random>

#include "koszulkit/families.hpp"
#include "koszulkit/identities.hpp"
#include "koszulkit/koszul.hpp"
#include "koszulkit/linalg.hpp"
#include "koszulkit/tor.hpp"

namespace {

using kk::ca::QuotientRing;
using kk::la::Field;

QuotientRing isotope_63ne() {
  return QuotientRing::parse(Field::rationals(), {"x", "y", "z", "u"},
                             {"x^2", "x*y", "x*z + u^2", "x*u", "y^2 + z^2", "z*u"});
}

kk::kz::KoszulHomology homology(const QuotientRing& r, int max_hom, int max_int) {
  kk::kz::HomologyOptions o;
  o.max_hom = max_hom;
  o.max_int = max_int;
  return kk::kz::KoszulHomology::compute(r, o);
}

void BM_groebner_63ne(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(isotope_63ne());
}
BENCHMARK(BM_groebner_63ne)->Unit(benchmark::kMillisecond);

void BM_rank_sparse(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Field f = state.range(1) == 0 ? Field::rationals() : Field::prime(32003);
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> val(-5, 5);
  std::uniform_int_distribution<int> col(0, n - 1);
  kk::la::Matrix m(n, n);
  for (int c = 0; c < n; ++c) {
    std::vector<kk::la::Entry> raw;
    for (int k = 0; k < 4; ++k) raw.push_back({col(rng), f.from_int(val(rng))});
    m.set_column(c, kk::la::collect(f, raw));
  }
  for (auto _ : state) benchmark::DoNotOptimize(kk::la::rank(f, m));
}
BENCHMARK(BM_rank_sparse)->Args({200, 0})->Args({200, 1})->Args({800, 1})->Unit(benchmark::kMillisecond);

void BM_homology_63ne(benchmark::State& state) {
  auto r = isotope_63ne();
  for (auto _ : state) benchmark::DoNotOptimize(homology(r, 4, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_homology_63ne)->Arg(7)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_homology_path(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto r = kk::fam::build_path_ring(n);
  for (auto _ : state) benchmark::DoNotOptimize(homology(r, n, n + 3));
}
BENCHMARK(BM_homology_path)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_koszul_test_63ne(benchmark::State& state) {
  auto r = isotope_63ne();
  for (auto _ : state) benchmark::DoNotOptimize(kk::tor::is_koszul_up_to(r, 5, 7));
}
BENCHMARK(BM_koszul_test_63ne)->Unit(benchmark::kMillisecond);

void BM_strand_test_cycle(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto h = homology(kk::fam::build_cycle_ring(n), n, n + 3);
  for (auto _ : state) benchmark::DoNotOptimize(kk::tor::is_strand_koszul_up_to(h, 3, 3));
}
BENCHMARK(BM_strand_test_cycle)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_poincare_factorization_63ne(benchmark::State& state) {
  auto r = isotope_63ne();
  for (auto _ : state) benchmark::DoNotOptimize(kk::id::check_poincare_factorization(r, 8));
}
BENCHMARK(BM_poincare_factorization_63ne)->Unit(benchmark::kMillisecond);

void BM_path_certificate(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kk::fam::path_certify(n, 5));
}
BENCHMARK(BM_path_certificate)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_multigraded_path(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto r = kk::fam::build_path_ring(n);
  for (auto _ : state) {
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
      std::vector<int> e(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) e[static_cast<std::size_t>(k)] = static_cast<int>((s >> k) & 1u);
      benchmark::DoNotOptimize(kk::kz::multigraded_homology(r, kk::MultiDegree::from_vector(e)));
    }
  }
}
BENCHMARK(BM_multigraded_path)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
