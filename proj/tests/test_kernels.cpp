#include "doctest.h"
#include "polarkit/fourier.hpp"
#include "polarkit/kernels.hpp"
#include "polarkit/verify.hpp"

#include <omp.h>

using namespace polarkit;

namespace {

struct Threads {
  explicit Threads(int n) : saved(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~Threads() { omp_set_num_threads(saved); }
  int saved;
};

}  // namespace

TEST_CASE("parallel kernels match their serial references bitwise") {
  const auto k = random_body(BodyKind::hpolytope, 3, 10, 4);
  Vec half(3);
  for (int i = 0; i < 3; ++i) half[i] = support(k, Vec::Unit(3, i));
  const auto f = extremal_rho_function(ConvexBody::ball(2), 24);
  Mat nodes(2, f.freq_nodes.size());
  for (std::size_t j = 0; j < f.freq_nodes.size(); ++j) nodes.col(j) = f.freq_nodes[j];
  const Mat points = Mat::Random(2, 300) * 5.0;
  const std::function<double(const Vec&)> fk = fejer_kernel;

  const long hits = kernels::mc_hits_serial(k, half, 3 * kernels::kBlock + 17, 5);
  const auto mom = kernels::inverse_support_moments_serial(k, 2 * kernels::kBlock + 3, 5);
  const auto sums = kernels::exp_sums_serial(nodes, f.weights, points, f.cell_measure);
  const auto flags = kernels::cell_flags_serial(ConvexBody::cross_polytope(3), -Vec::Ones(3), Vec::Constant(3, 0.1), 20);
  const double lat = kernels::lattice_sum_serial(fk, 2, 60);

  for (int t : {1, 2, 5}) {
    Threads guard(t);
    CHECK(kernels::mc_hits(k, half, 3 * kernels::kBlock + 17, 5) == hits);
    const auto m = kernels::inverse_support_moments(k, 2 * kernels::kBlock + 3, 5);
    CHECK(m.sum == mom.sum);
    CHECK(m.sum_sq == mom.sum_sq);
    CHECK(m.count == mom.count);
    const auto s = kernels::exp_sums(nodes, f.weights, points, f.cell_measure);
    REQUIRE(s.size() == sums.size());
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(s[i] == sums[i]);
    CHECK(kernels::cell_flags(ConvexBody::cross_polytope(3), -Vec::Ones(3), Vec::Constant(3, 0.1), 20) == flags);
    CHECK(kernels::lattice_sum(fk, 2, 60) == lat);
  }
}
