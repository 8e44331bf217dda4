#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "torus_xray/error.hpp"
#include "torus_xray/tensor.hpp"

using namespace torus_xray;

namespace {

bool all_sorted(const SymmetricTensorField& f) {
  for (const auto& [index, values] : f.components()) {
    if (!std::is_sorted(index.begin(), index.end())) return false;
  }
  return true;
}

TrigPolynomial zero_like(const SymmetricTensorField& f) { return TrigPolynomial(f.dimension(), f.band()); }

}  // namespace

TEST(MultiIndex, Helpers) {
  EXPECT_DOUBLE_EQ(multinomial(std::vector<int>{2, 1}), 3.0);
  EXPECT_DOUBLE_EQ(multinomial(std::vector<int>{1, 1, 1}), 6.0);
  EXPECT_EQ(exponent_of({0, 0, 2}, 3), (Exponent{2, 0, 1}));
  EXPECT_EQ(index_of({2, 0, 1}), (MultiIndex{0, 0, 2}));
  EXPECT_EQ(sorted_indices(3, 2).size(), 6u);
  EXPECT_EQ(monomial_exponents(3, 3).size(), 10u);
}

TEST(Polynomial, Evaluate) {
  HomogeneousPolynomial c(2, 0);
  c.add_term({0, 0}, {2.0, -1.0});
  const double v[] = {3.0, 5.0};
  EXPECT_EQ(evaluate_polynomial(c, v), Complex(2.0, -1.0));
  HomogeneousPolynomial sq(2, 2);
  sq.add_term({2, 0}, 1.0);
  EXPECT_EQ(evaluate_polynomial(sq, v), Complex(9.0));
  EXPECT_THROW(sq.add_term({1, 0}, 1.0), Error);
}

TEST(Divide, Examples) {
  const IntVector k{1, 2};
  HomogeneousPolynomial linear(2, 1);
  linear.add_term({1, 0}, 1.0);
  linear.add_term({0, 1}, 2.0);
  const auto one = divide_by_linear_form(linear, k);
  EXPECT_EQ(one.degree(), 0);
  EXPECT_NEAR(std::abs(one.coefficient({0, 0}) - 1.0), 0.0, 1e-14);

  const auto square = oracle::times_linear_form(linear, k);
  const auto back = divide_by_linear_form(square, k);
  EXPECT_LT(max_coefficient_difference(back, linear), 1e-14);
}

TEST(Divide, RoundTripAgainstMultiplication) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 2;
    const int degree = trial % 4;
    const auto k = oracle::random_nonzero(rng, n, 3);
    const auto q = oracle::random_polynomial(rng, n, degree);
    EXPECT_LT(max_coefficient_difference(divide_by_linear_form(oracle::times_linear_form(q, k), k), q), 1e-9);
  }
}

TEST(Divide, RejectsNonMultiples) {
  HomogeneousPolynomial p(2, 2);
  p.add_term({0, 2}, 1.0);
  try {
    (void)divide_by_linear_form(p, IntVector{1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_in_kernel);
    ASSERT_TRUE(e.residual().has_value());
    EXPECT_GT(*e.residual(), 0.5);
  }
  EXPECT_THROW(divide_by_linear_form(p, IntVector{0, 0}), Error);
}

TEST(Symmetrize, Examples) {
  const auto g = make_phantom(2, 1, PhantomKind::random_complex, 1);
  const auto half = symmetrize(2, 2, {{{0, 1}, g}});
  EXPECT_LT(max_coefficient_difference(half.component({0, 1}), 0.5 * g), 1e-15);

  const auto f = make_tensor_phantom(2, 2, 1, 3);
  UnsortedComponents same;
  for (const auto& [index, values] : f.components()) {
    auto perm = index;
    do {
      same.insert_or_assign(perm, values);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  EXPECT_LT(max_component_difference(symmetrize(2, 2, same), f), 1e-15);
  EXPECT_THROW(symmetrize(2, 2, {{{0}, g}}), Error);
}

TEST(Symmetrize, EvaluationOnlySeesSymmetricPart) {
  std::mt19937_64 rng(4);
  UnsortedComponents raw;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int l = 0; l < 3; ++l) raw.insert_or_assign({i, j, l}, make_phantom(3, 1, PhantomKind::random_complex, 9 * i + 3 * j + l));
    }
  }
  const auto sym = symmetrize(3, 3, raw);
  EXPECT_TRUE(all_sorted(sym));
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = oracle::random_point(rng, 3);
    const auto v = oracle::random_point(rng, 3, -2.0, 2.0);
    Complex direct = 0.0;
    for (const auto& [index, values] : raw) {
      direct += v[index[0]] * v[index[1]] * v[index[2]] * oracle::direct_sum(values, x);
    }
    EXPECT_LT(std::abs(direct - evaluate(sym, x, v)), 1e-11);
    EXPECT_LT(std::abs(direct - oracle::tensor_value(sym, x, v)), 1e-11);
  }
}

TEST(Gradient, Character) {
  const IntVector k{2, -1, 3};
  SymmetricTensorField h(3, 0, 3, {{{}, TrigPolynomial::character(k).with_band(3)}});
  const auto g = gradient(h);
  ASSERT_EQ(g.order(), 1);
  for (int j = 0; j < 3; ++j) {
    const auto c = g.component({j}).coefficient(k);
    EXPECT_NEAR(std::abs(c - Complex(0.0, oracle::two_pi * static_cast<double>(k[j]))), 0.0, 1e-14);
  }
}

TEST(Gradient, ConstantHasNoGradient) {
  SymmetricTensorField h(2, 1, 2);
  h.set_component({0}, TrigPolynomial::character(IntVector{0, 0}, 3.0).with_band(2));
  h.set_component({1}, TrigPolynomial::character(IntVector{0, 0}, -1.0).with_band(2));
  EXPECT_EQ(max_coefficient_magnitude(gradient(h)), 0.0);
}

TEST(Gradient, SymbolIsLinearFormTimesSymbol) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 2;
    const int m = 1 + trial % 3;
    const auto h = make_tensor_phantom(n, m - 1, 2, 100 + trial);
    const auto g = gradient(h);
    EXPECT_TRUE(all_sorted(g));
    const auto k = oracle::random_nonzero(rng, n, 2);
    const auto v = oracle::random_point(rng, n, -1.0, 1.0);
    double kv = 0.0;
    for (int i = 0; i < n; ++i) kv += static_cast<double>(k[i]) * v[i];
    const Complex expected = Complex(0.0, oracle::two_pi * kv) * evaluate_polynomial(symbol_at(h, k), v);
    EXPECT_LT(std::abs(evaluate_polynomial(symbol_at(g, k), v) - expected), 1e-10);
  }
}

TEST(Gradient, MatchesFiniteDifference) {
  // Directional derivative of h(x, v) along v equals sigma(nabla h)(x, v)
  // in the flat case; checked with a central difference.
  std::mt19937_64 rng(12);
  const auto h = make_tensor_phantom(2, 1, 2, 5);
  const auto g = gradient(h);
  for (int trial = 0; trial < 5; ++trial) {
    const auto x = oracle::random_point(rng, 2);
    const auto v = oracle::random_point(rng, 2, -1.0, 1.0);
    const double step = 1e-5;
    auto xp = x;
    auto xm = x;
    for (int i = 0; i < 2; ++i) {
      xp[i] += step * v[i];
      xm[i] -= step * v[i];
    }
    const Complex fd = (oracle::tensor_value(h, xp, v) - oracle::tensor_value(h, xm, v)) / (2.0 * step);
    EXPECT_LT(std::abs(fd - oracle::tensor_value(g, x, v)), 1e-5 * (1.0 + std::abs(fd)));
  }
}

TEST(Symbols, RoundTrip) {
  const auto f = make_tensor_phantom(3, 2, 1, 4);
  std::map<FrequencyVector, HomogeneousPolynomial> symbols;
  for (const auto& k : f.support()) symbols.emplace(k, symbol_at(f, k));
  EXPECT_LT(max_component_difference(field_from_symbols(3, 2, 1, symbols), f), 1e-14);
}

TEST(TensorForward, ConstantField) {
  SymmetricTensorField f(2, 2, 0);
  f.set_component({0, 0}, TrigPolynomial::character(IntVector{0, 0}, 1.0));
  f.set_component({0, 1}, TrigPolynomial::character(IntVector{0, 0}, 2.0));
  f.set_component({1, 1}, TrigPolynomial::character(IntVector{0, 0}, 3.0));
  const Direction v(IntVector{1, 2});
  // 1*1 + 2*2*(1*2) + 3*4
  EXPECT_NEAR(std::abs(tensor_xray_forward(f, v).coefficient(IntVector{0, 0}) - 21.0), 0.0, 1e-14);
}

TEST(TensorForward, AgreesWithQuadrature) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = 2 + trial % 2;
    const int m = 1 + trial % 3;
    const auto f = make_tensor_phantom(n, m, 2, 40 + trial);
    const auto v = oracle::random_nonzero(rng, n, 2);
    const auto slice = tensor_xray_forward(f, Direction(v));
    const int nodes = 2 * static_cast<int>(sup_norm(v)) * n + 1;
    for (int i = 0; i < 10; ++i) {
      const auto x = oracle::random_point(rng, n);
      EXPECT_LT(std::abs(oracle::direct_sum(slice, x) - oracle::tensor_line_integral(f, x, v, nodes)), 1e-9);
    }
  }
}

TEST(TensorForward, GradientsAreInvisible) {
  for (int m = 1; m <= 3; ++m) {
    for (int n = 2; n <= 3; ++n) {
      const auto f = gradient(make_tensor_phantom(n, m - 1, 3, 7 * m + n));
      const auto scale = max_coefficient_magnitude(f);
      for (const auto& t : enumerate_tuples(n, 1, n == 2 ? 5 : 3)) {
        EXPECT_LT(max_coefficient_magnitude(tensor_xray_forward(f, t.vectors().front())), 1e-10 * scale);
      }
    }
  }
}

TEST(Decompose, RecoversGradient) {
  for (int m = 1; m <= 3; ++m) {
    for (int n = 2; n <= 3; ++n) {
      const auto h0 = make_potential_phantom(n, m - 1, 2, 3 * m + n);
      const auto f = gradient(h0);
      const auto h = solenoidal_decompose(f);
      EXPECT_TRUE(all_sorted(h));
      EXPECT_LT(max_component_difference(gradient(h), f), 1e-8);
    }
  }
}

TEST(Decompose, ZeroAndConstant) {
  const SymmetricTensorField zero(2, 2, 2);
  EXPECT_EQ(max_coefficient_magnitude(solenoidal_decompose(zero)), 0.0);

  SymmetricTensorField constant(2, 1, 1);
  constant.set_component({0}, TrigPolynomial::character(IntVector{0, 0}, 1.0).with_band(1));
  try {
    (void)solenoidal_decompose(constant);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_solenoidal);
    ASSERT_TRUE(e.frequency().has_value());
    EXPECT_EQ(*e.frequency(), (IntVector{0, 0}));
  }
}

TEST(Decompose, RejectsVisibleField) {
  const auto f = make_tensor_phantom(2, 1, 1, 2);
  EXPECT_THROW(solenoidal_decompose(f), Error);
}

TEST(Decompose, RegularityGainStaysBounded) {
  // ||h||_{s+1} / ||sigma nabla h||_s should not grow with the band.
  std::vector<double> ratios;
  for (int band : {2, 4, 8}) {
    const auto h0 = make_potential_phantom(2, 1, band, 99);
    const auto f = gradient(h0);
    const auto h = solenoidal_decompose(f);
    ratios.push_back(sobolev_norm(h, 1.0) / sobolev_norm(f, 0.0));
  }
  for (std::size_t i = 1; i < ratios.size(); ++i) EXPECT_LT(ratios[i], 2.0 * ratios[i - 1]);
}

TEST(KernelDimension, Examples) {
  EXPECT_EQ(kernel_dimension_bruteforce(2, 1, IntVector{1, 0}), (std::pair<std::size_t, std::size_t>{1, 1}));
  const auto a = kernel_dimension_bruteforce(2, 2, IntVector{1, 1});
  EXPECT_EQ(a.first, a.second);
  const auto b = kernel_dimension_bruteforce(3, 2, IntVector{1, 0, 0});
  EXPECT_EQ(b.first, b.second);
  EXPECT_EQ(b.second, 3u);
  EXPECT_THROW(kernel_dimension_bruteforce(2, 1, IntVector{0, 0}), Error);
}

TEST(TensorField, OnlySortedIndices) {
  SymmetricTensorField f(3, 2, 1);
  EXPECT_THROW(f.set_component({1, 0}, TrigPolynomial(3, 1)), Error);
  EXPECT_THROW(f.set_component({0, 3}, TrigPolynomial(3, 1)), Error);
  EXPECT_EQ(max_coefficient_magnitude(f.component({0, 2})), max_coefficient_magnitude(zero_like(f)));
}
