#include <gtest/gtest.h>

#include <random>

#include "mdsg/mds_spectral.hpp"
#include "oracles.hpp"

using namespace mdsg;

namespace {

GroupElement perm(std::vector<int> v) { return GroupElement::permutation(std::move(v)); }

struct Expected {
  Rational value;
  std::uint64_t multiplicity;
};

void expect_nonzero_entries(const SpectralSummary& s, const std::vector<Expected>& expected) {
  std::vector<Expected> got;
  for (const auto& e : s.entries)
    if (e.sign != EigenSign::zero) got.push_back({e.eigenvalue.rational(), e.multiplicity});
  ASSERT_EQ(got.size(), expected.size()) << s.group.name();
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].value, expected[i].value) << s.group.name() << " entry " << i;
    EXPECT_EQ(got[i].multiplicity, expected[i].multiplicity) << s.group.name() << " entry " << i;
  }
}

std::uint64_t zero_multiplicity(const SpectralSummary& s) {
  for (const auto& e : s.entries)
    if (e.sign == EigenSign::zero) return e.multiplicity;
  return 0;
}

struct Case {
  GroupSpec spec;
  Metric metric;
};

}  // namespace

TEST(MdsSpectral, MuExamples) {
  const auto s4 = GroupSpec::symmetric(4);
  const auto mu = mu_from_metric(s4, Metric::hamming_permutation());
  const ClassIndexer class_of(s4);
  EXPECT_EQ(mu.values.values[class_of(perm({2, 1, 3, 4}))], Cyclotomic(-2));
  EXPECT_EQ(mu.values.values[class_of(identity(s4))], Cyclotomic(0));

  const auto c23 = GroupSpec::elementary_abelian_2(3);
  const auto mu2 = mu_from_metric(c23, Metric::hamming_bitvector());
  EXPECT_EQ(mu2.values.values[element_index(c23, parse_element(c23, "111"))], Cyclotomic(Rational(-9, 2)));
}

TEST(MdsSpectral, SmallSpectra) {
  const auto c23 = spectrum_via_characters(GroupSpec::elementary_abelian_2(3), Metric::hamming_bitvector());
  expect_nonzero_entries(c23, {{Rational(6), 3}, {Rational(-2), 3}});
  EXPECT_EQ(zero_multiplicity(c23), 1U);

  const auto s4 = spectrum_via_characters(GroupSpec::symmetric(4), Metric::hamming_permutation());
  expect_nonzero_entries(s4, {{Rational(20), 9}, {Rational(-4), 9}, {Rational(-6), 4}});
  EXPECT_EQ(s4.entry_for(Partition{3, 1})->eigenvalue, Cyclotomic(20));
  EXPECT_EQ(s4.entry_for(Partition{2, 1, 1})->eigenvalue, Cyclotomic(-4));
  EXPECT_EQ(s4.entry_for(Partition{2, 2})->eigenvalue, Cyclotomic(-6));
  EXPECT_EQ(s4.entry_for(Partition{1, 1, 1, 1})->sign, EigenSign::zero);
  EXPECT_EQ(s4.entry_for(Partition{4}), nullptr);
  EXPECT_EQ(s4.trivial_eigenvalue, Cyclotomic(-120));
  EXPECT_EQ(s4.total_multiplicity(), 23U);
  EXPECT_EQ(s4.rank(), 22U);

  const auto c4 = spectrum_via_characters(GroupSpec::cyclic(4), Metric::circular_arc());
  expect_nonzero_entries(c4, {{Rational(2), 2}, {Rational(-1), 1}});
  EXPECT_EQ(c4.trivial_eigenvalue, Cyclotomic(-3));
}

TEST(MdsSpectral, IrrationalCyclicEigenvalues) {
  // C_5 arc: lambda_1 = -cos(2pi/5) - 4 cos(4pi/5), computed directly.
  const auto c5 = spectrum_via_characters(GroupSpec::cyclic(5), Metric::circular_arc());
  const double a = 2.0 * std::numbers::pi / 5.0;
  std::vector<double> expected = {-std::cos(a) - 4.0 * std::cos(2 * a), -std::cos(2 * a) - 4.0 * std::cos(4 * a)};
  std::sort(expected.begin(), expected.end(), std::greater<>());
  ASSERT_EQ(c5.entries.size(), 2U);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_FALSE(c5.entries[i].eigenvalue.is_rational());
    EXPECT_NEAR(c5.entries[i].eigenvalue.real_value(), expected[i], 1e-12);
    EXPECT_EQ(c5.entries[i].multiplicity, 2U);
  }
  // The sum of conjugates is rational: trace = sum d^2 / 2n = (1 + 4 + 4 + 1) * 5 / 10.
  EXPECT_EQ(c5.trace(), Cyclotomic(5));
}

TEST(MdsSpectral, ClosedFormC2k) {
  const auto k2 = closed_form_c2k(2);
  expect_nonzero_entries(k2, {{Rational(2), 2}, {Rational(-1), 1}});

  const auto k10 = closed_form_c2k(10);
  expect_nonzero_entries(k10, {{Rational(2560), 10}, {Rational(-256), 45}});
  EXPECT_EQ(zero_multiplicity(k10), 968U);

  // One bit: the only non-trivial eigenvalue is |G| k / 4 = 1/2.
  const auto k1 = closed_form_c2k(1);
  expect_nonzero_entries(k1, {{Rational(1, 2), 1}});
  EXPECT_EQ(k1.trivial_eigenvalue, Cyclotomic(Rational(-1, 2)));

  EXPECT_THROW(closed_form_c2k(0), std::invalid_argument);
  const auto k54 = closed_form_c2k(54);
  EXPECT_EQ(k54.entries[0].eigenvalue, Cyclotomic(Rational(static_cast<Rational::int_type>(1) << 52) * Rational(54)));
  EXPECT_EQ(k54.trivial_eigenvalue, Cyclotomic(Rational(static_cast<Rational::int_type>(1) << 52) * Rational(-1485)));
  EXPECT_THROW(closed_form_c2k(55), TooLargeError);
}

TEST(MdsSpectral, ClosedFormSn) {
  expect_nonzero_entries(closed_form_sn(4), {{Rational(20), 9}, {Rational(-4), 9}, {Rational(-6), 4}});
  expect_nonzero_entries(closed_form_sn(5), {{Rational(105), 16}, {Rational(-10), 36}, {Rational(-12), 25}});
  EXPECT_EQ(closed_form_sn(4).trivial_eigenvalue, Cyclotomic(-120));
  EXPECT_THROW(closed_form_sn(3), UnsupportedError);
  EXPECT_THROW(closed_form_sn(19), TooLargeError);
  const auto s18 = closed_form_sn(18);
  EXPECT_EQ(s18.total_multiplicity() + 1, s18.group.order());
  EXPECT_EQ(s18.entries[0].eigenvalue, Cyclotomic(Rational(33) * Rational(6402373705728000LL) / Rational(34)));
}

TEST(MdsSpectral, ClosedFormsMatchCharacters) {
  for (int k = 1; k <= 8; ++k)
    EXPECT_EQ(closed_form_c2k(k), spectrum_via_characters(GroupSpec::elementary_abelian_2(k), Metric::hamming_bitvector()))
        << "k=" << k;
  for (int n = 4; n <= 6; ++n)
    EXPECT_EQ(closed_form_sn(n), spectrum_via_characters(GroupSpec::symmetric(n), Metric::hamming_permutation()))
        << "n=" << n;
}

TEST(MdsSpectral, AgreesWithDenseOracle) {
  std::vector<Case> cases;
  for (int n = 2; n <= 5; ++n) cases.push_back({GroupSpec::symmetric(n), Metric::hamming_permutation()});
  for (int k = 1; k <= 7; ++k) cases.push_back({GroupSpec::elementary_abelian_2(k), Metric::hamming_bitvector()});
  for (int n : {1, 2, 3, 4, 5, 6, 7, 12, 30, 64}) cases.push_back({GroupSpec::cyclic(n), Metric::circular_arc()});
  for (const auto& [spec, metric] : cases) {
    const auto summary = spectrum_via_characters(spec, metric);
    const auto cmp = compare_with_oracle(summary, dense_spectrum(spec, metric, 720));
    EXPECT_LE(cmp.max_relative_deviation, 1e-8) << spec.name();
    EXPECT_TRUE(cmp.multiplicities_match) << spec.name();
  }
}

TEST(MdsSpectral, TraceIdentity) {
  std::vector<Case> cases;
  for (int n = 1; n <= 6; ++n) cases.push_back({GroupSpec::symmetric(n), Metric::hamming_permutation()});
  for (int k = 1; k <= 8; ++k) cases.push_back({GroupSpec::elementary_abelian_2(k), Metric::hamming_bitvector()});
  for (int n : {1, 2, 9, 16, 25}) cases.push_back({GroupSpec::cyclic(n), Metric::circular_arc()});
  for (const auto& [spec, metric] : cases) {
    const auto summary = spectrum_via_characters(spec, metric);
    EXPECT_EQ(summary.trace(), Cyclotomic(centered_trace(build_distance_matrix(spec, metric)))) << spec.name();
  }
  EXPECT_EQ(spectrum_via_characters(GroupSpec::symmetric(4), Metric::hamming_permutation()).trace(), Cyclotomic(120));
  EXPECT_EQ(spectrum_via_characters(GroupSpec::elementary_abelian_2(2), Metric::hamming_bitvector()).trace(), Cyclotomic(3));
}

TEST(MdsSpectral, RejectsNonBiInvariantMetrics) {
  const auto c23 = GroupSpec::elementary_abelian_2(3);
  const auto a = parse_element(c23, "000"), b = parse_element(c23, "011");
  const auto corrupted = Metric::custom("corrupted", GroupKind::elementary_abelian_2,
                                        [a, b](const GroupElement& g, const GroupElement& h) -> long long {
                                          long long d = 0;
                                          for (std::size_t i = 0; i < g.length(); ++i) d += g[i] != h[i];
                                          return d + ((g == a && h == b) || (g == b && h == a));
                                        });
  EXPECT_THROW(spectrum_via_characters(c23, corrupted), NotBiInvariantError);

  const auto s3 = GroupSpec::symmetric(3);
  const auto t = perm({2, 1, 3});
  const auto left_only = Metric::custom("left-only", GroupKind::symmetric,
                                        [s3, t](const GroupElement& g, const GroupElement& h) -> long long {
                                          const auto x = multiply(s3, inverse(s3, g), h);
                                          return x == identity(s3) ? 0 : (x == t ? 1 : 2);
                                        });
  try {
    spectrum_via_characters(s3, left_only);
    FAIL() << "expected NotBiInvariantError";
  } catch (const NotBiInvariantError& e) {
    const auto& ce = e.counterexample();
    const auto lhs = ce.left_side ? left_only(s3, multiply(s3, ce.f, ce.g), multiply(s3, ce.f, ce.h))
                                  : left_only(s3, multiply(s3, ce.g, ce.f), multiply(s3, ce.h, ce.f));
    EXPECT_NE(lhs, left_only(s3, ce.g, ce.h));
  }
}

TEST(MdsSpectral, ConvolutionMatrixIsHalfSquaredDistances) {
  for (const auto& [spec, metric] : {Case{GroupSpec::symmetric(4), Metric::hamming_permutation()},
                                     Case{GroupSpec::elementary_abelian_2(4), Metric::hamming_bitvector()},
                                     Case{GroupSpec::cyclic(9), Metric::circular_arc()}}) {
    const auto d = to_matrix(build_distance_matrix(spec, metric));
    const auto k = convolution_matrix(spec, mu_from_metric(spec, metric));
    EXPECT_LT((k.matrix + 0.5 * d.cwiseProduct(d)).cwiseAbs().maxCoeff(), 1e-12) << spec.name();
  }
}

TEST(MdsSpectral, IsotypicProjectors) {
  for (const auto& [spec, metric] : {Case{GroupSpec::symmetric(4), Metric::hamming_permutation()},
                                     Case{GroupSpec::elementary_abelian_2(3), Metric::hamming_bitvector()},
                                     Case{GroupSpec::cyclic(8), Metric::circular_arc()},
                                     Case{GroupSpec::cyclic(7), Metric::circular_arc()}}) {
    const auto summary = spectrum_via_characters(spec, metric);
    const auto m = double_center(build_distance_matrix(spec, metric)).matrix;
    const auto n = m.rows();
    Eigen::MatrixXd total = Eigen::MatrixXd::Zero(n, n);
    std::vector<IsotypicProjector> projectors;
    for (const auto& label : real_isotypic_labels(spec)) projectors.push_back(isotypic_projector(spec, label));
    for (const auto& p : projectors) {
      const double tol = 1e-10;
      EXPECT_LT((p.matrix * p.matrix - p.matrix).cwiseAbs().maxCoeff(), tol) << label_to_string(p.label);
      EXPECT_NEAR(p.matrix.trace(), static_cast<double>(p.rank), tol);
      total += p.matrix;
      if (is_trivial(p.label)) continue;
      const double lambda = summary.entry_for(p.label)->eigenvalue.real_value();
      EXPECT_LT((p.matrix * m - lambda * p.matrix).cwiseAbs().maxCoeff(), 1e-9) << spec.name() << " " << label_to_string(p.label);
    }
    EXPECT_TRUE(total.isIdentity(1e-10)) << spec.name();
    for (std::size_t i = 0; i < projectors.size(); ++i)
      for (std::size_t j = i + 1; j < projectors.size(); ++j)
        EXPECT_LT((projectors[i].matrix * projectors[j].matrix).cwiseAbs().maxCoeff(), 1e-10);
  }
  EXPECT_NEAR(isotypic_projector(GroupSpec::symmetric(4), Partition{3, 1}).matrix.trace(), 9.0, 1e-12);
}

TEST(MdsSpectral, StandardRepCoordinates) {
  auto dist_sq = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
  };
  std::vector<int> id10(10), t10(10);
  for (int i = 0; i < 10; ++i) id10[static_cast<std::size_t>(i)] = t10[static_cast<std::size_t>(i)] = i + 1;
  std::swap(t10[0], t10[1]);
  EXPECT_NEAR(dist_sq(standard_rep_coordinates(perm(id10), 10), standard_rep_coordinates(perm(t10), 10)), 34.0, 1e-12);

  std::mt19937_64 rng(31);
  const auto s8 = GroupSpec::symmetric(8);
  for (int t = 0; t < 200; ++t) {
    const auto g = random_element(s8, rng), h = random_element(s8, rng);
    const double hamming = 8 - oracle::fixed_points(multiply(s8, g, inverse(s8, h)));
    ASSERT_NEAR(dist_sq(standard_rep_coordinates(g, 8), standard_rep_coordinates(h, 8)), 13.0 * hamming, 1e-10);
  }
  EXPECT_THROW(standard_rep_coordinates(perm({1, 2, 3}), 3), std::invalid_argument);
}

TEST(MdsSpectral, StandardBlockMatchesDensePositiveBlock) {
  const auto s5 = GroupSpec::symmetric(5);
  const auto elems = enumerate_elements(s5);
  const auto emb = classical_embedding(dense_spectrum(s5, Metric::hamming_permutation(), 720), 16);
  ASSERT_EQ(emb.dims(), 16);
  std::vector<std::vector<double>> coords;
  for (const auto& g : elems) coords.push_back(standard_rep_coordinates(g, 5));
  std::size_t pairs = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = i + 1; j < elems.size(); ++j, ++pairs) {
      double block = (emb.coordinates.row(static_cast<Eigen::Index>(i)) - emb.coordinates.row(static_cast<Eigen::Index>(j))).squaredNorm();
      double direct = 0.0;
      for (std::size_t c = 0; c < coords[i].size(); ++c) direct += (coords[i][c] - coords[j][c]) * (coords[i][c] - coords[j][c]);
      worst = std::max(worst, std::abs(block - direct));
    }
  }
  EXPECT_EQ(pairs, 7140U);
  EXPECT_LT(worst, 1e-8);
}
