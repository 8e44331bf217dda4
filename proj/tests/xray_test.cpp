#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "torus_xray/error.hpp"
#include "torus_xray/parallel.hpp"
#include "torus_xray/xray.hpp"

using namespace torus_xray;

namespace {

DirectionTuple line(IntVector v) { return DirectionTuple(std::vector<IntVector>{std::move(v)}); }

}  // namespace

TEST(ForwardSpectral, SliceExamples) {
  const auto f = TrigPolynomial::character(IntVector{1, 2});
  EXPECT_EQ(forward_spectral(f, line({2, -1})).coefficient(IntVector{1, 2}), Complex(1.0));
  EXPECT_EQ(max_coefficient_magnitude(forward_spectral(f, line({1, 0}))), 0.0);
  EXPECT_THROW(forward_spectral(f, line({1, 0, 0})), Error);
}

TEST(ForwardQuadrature, Examples) {
  const double origin[] = {0.0, 0.0};
  const double x[] = {0.37, 0.81};
  EXPECT_NEAR(std::abs(forward_quadrature(TrigPolynomial::character(IntVector{0, 0}), x, line({3, 1}), 4) - 1.0),
              0.0, 1e-15);
  EXPECT_NEAR(std::abs(forward_quadrature(TrigPolynomial::character(IntVector{0, 1}), origin, line({1, 0}), 2) - 1.0),
              0.0, 1e-15);
  for (int nodes = 2; nodes < 9; ++nodes) {
    EXPECT_LT(std::abs(forward_quadrature(TrigPolynomial::character(IntVector{1, 0}), origin, line({1, 0}), nodes)),
              1e-15);
  }
}

TEST(ForwardSpectral, AgreesWithQuadrature) {
  std::mt19937_64 rng(21);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int n = 2 + static_cast<int>(seed % 2);
    const auto f = make_phantom(n, 3, PhantomKind::random_complex, seed);
    const auto tuples = enumerate_tuples(n, n - 1, 2);
    const auto& a = tuples[seed * 7 % tuples.size()];
    const auto slice = forward_spectral(f, a);
    const int nodes = quadrature_exactness_bound(f, a);
    for (int i = 0; i < 20; ++i) {
      const auto x = oracle::random_point(rng, n);
      EXPECT_LT(std::abs(oracle::direct_sum(slice, x) - forward_quadrature(f, x, a, nodes)), 1e-9);
    }
  }
}

TEST(ForwardAll, BatchMatchesLoop) {
  const auto f = make_phantom(2, 2, PhantomKind::random_complex, 5);
  const auto tuples = enumerate_tuples(2, 1, 2);
  const auto data = forward_all(f, tuples);
  ASSERT_EQ(data.entries().size(), tuples.size());
  for (const auto& a : tuples) {
    EXPECT_EQ(data.find(a)->coefficients(), forward_spectral(f, a).coefficients());
  }
  EXPECT_THROW(forward_all(f, {}), Error);

  const auto single = forward_all(f, {tuples[3]});
  EXPECT_EQ(single.entries().size(), 1u);
}

TEST(ForwardAll, ZeroFunction) {
  const TrigPolynomial zero(3, 2);
  const auto data = forward_all(zero, default_acquisition_set(3, 2, 2));
  for (const auto& [a, f] : data.entries()) EXPECT_EQ(max_coefficient_magnitude(f), 0.0);
}

TEST(ForwardAll, ThreadCountDoesNotChangeResult) {
  const auto f = make_phantom(3, 2, PhantomKind::random_complex, 3);
  const auto tuples = default_acquisition_set(3, 1, 2);
  set_thread_limit(1);
  const auto serial = forward_all(f, tuples);
  set_thread_limit(8);
  const auto threaded = forward_all(f, tuples);
  set_thread_limit(0);
  ASSERT_EQ(serial.entries().size(), threaded.entries().size());
  for (const auto& [a, g] : serial.entries()) EXPECT_EQ(g.coefficients(), threaded.find(a)->coefficients());
}

TEST(Invert, RoundTrip) {
  EXPECT_EQ(invert(forward_all(TrigPolynomial::character(IntVector{0, 0}), enumerate_tuples(2, 1, 1)), 0)
                .coefficient(IntVector{0, 0}),
            Complex(1.0));
  const auto f = make_phantom(2, 2, PhantomKind::random_complex, 12);
  std::vector<DirectionTuple> tuples;
  for (const auto& k : frequency_box(2, 2)) tuples.push_back(orthogonal_tuple(k, 1));
  EXPECT_LT(max_coefficient_difference(invert(forward_all(f, tuples), 2), f), 1e-12);
}

TEST(Invert, MissingTupleNamesFrequency) {
  const auto f = make_phantom(2, 2, PhantomKind::random_complex, 12);
  auto data = forward_all(f, default_acquisition_set(2, 1, 2));
  // (1,-1) is the only primitive direction orthogonal to (1,1).
  ASSERT_TRUE(data.erase(orthogonal_tuple(IntVector{1, 1}, 1)));
  try {
    (void)invert(data, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::incomplete_data);
    ASSERT_TRUE(e.frequency().has_value());
    const auto k = *e.frequency();
    EXPECT_TRUE(k == IntVector({1, 1}) || k == IntVector({-1, -1}) || k == IntVector({2, 2}) ||
                k == IntVector({-2, -2}));
  }
}

TEST(Range, AcceptsForwardData) {
  const auto f = make_phantom(3, 2, PhantomKind::random_complex, 1);
  const auto report = validate_range(forward_all(f, default_acquisition_set(3, 1, 2)));
  EXPECT_TRUE(report.consistent);
  EXPECT_LT(max_coefficient_difference(report.witness, f), 1e-15);
}

TEST(Range, EmptyDataIsConsistent) {
  const auto report = validate_range(RadonData(2, 1, 2));
  EXPECT_TRUE(report.consistent);
  EXPECT_TRUE(report.witness.coefficients().empty());
}

TEST(Range, OffSliceAndDisagreement) {
  const auto f = make_phantom(2, 2, PhantomKind::random_complex, 2);
  auto data = forward_all(f, enumerate_tuples(2, 1, 2));
  const auto a = line({1, 0});
  auto entry = *data.find(a);
  entry.add_to_coefficient({1, 1}, 1.0);
  data.set(a, entry);
  auto report = validate_range(data);
  ASSERT_FALSE(report.consistent);
  ASSERT_EQ(report.conflicts.size(), 1u);
  EXPECT_EQ(report.conflicts[0].kind, RangeConflict::Kind::off_slice);
  EXPECT_EQ(report.conflicts[0].k, (IntVector{1, 1}));
  EXPECT_EQ(report.conflicts[0].tuple, a);

  // A disagreement needs two tuples orthogonal to the same k: (0,0,1) is
  // orthogonal to (0,1,0), (1,0,0) and (1,+-1,0).
  const auto g = make_phantom(3, 1, PhantomKind::random_complex, 2);
  auto data3 = forward_all(g, enumerate_tuples(3, 1, 1));
  const auto b = line({0, 1, 0});
  auto e3 = *data3.find(b);
  e3.add_to_coefficient({0, 0, 1}, 1e-3);
  data3.set(b, e3);
  report = validate_range(data3);
  ASSERT_FALSE(report.consistent);
  bool found = false;
  for (const auto& c : report.conflicts) {
    if (c.kind != RangeConflict::Kind::disagreement || c.k != IntVector({0, 0, 1})) continue;
    if (c.tuple == b || c.reference == b) found = true;
  }
  EXPECT_TRUE(found);
}

TEST(Stability, MatchesSobolevNorm) {
  for (double s : {-1.0, 0.0, 0.5, 2.0}) {
    const auto f = make_phantom(3, 2, PhantomKind::random_complex, 6);
    const auto data = forward_all(f, default_acquisition_set(3, 2, 2));
    EXPECT_NEAR(stability_norm(data, s) / sobolev_norm(f, s), 1.0, 1e-12);
  }
  EXPECT_EQ(stability_norm(RadonData(2, 1, 1), 1.0), 0.0);
}

TEST(Stability, ExtraNonOrthogonalTuplesChangeNothing) {
  const auto f = make_phantom(2, 2, PhantomKind::random_complex, 7);
  const auto base = forward_all(f, default_acquisition_set(2, 1, 2));
  const auto wide = forward_all(f, enumerate_tuples(2, 1, 3));
  EXPECT_NEAR(stability_norm(base, 1.0), stability_norm(wide, 1.0), 1e-13);
}

TEST(Redundancy, ScaledDirectionGivesSameSlice) {
  const auto f = make_phantom(3, 3, PhantomKind::random_complex, 1);
  EXPECT_EQ(forward_spectral(f, line({1, -1, 2})).coefficients(),
            forward_spectral(f, line({3, -3, 6})).coefficients());
}
