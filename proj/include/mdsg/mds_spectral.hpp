#pragma once

// MDS spectra of bi-invariant metrics on finite groups, read off from characters.
//
// For a bi-invariant metric d, mu(g) = -d(g, e)^2 / 2 is a class function and
// the non-centered kernel acts on L^2(G) as convolution with mu. Writing
// mu = sum_i sigma_i chi_i, the isotypic component of irreducible i (dimension
// d_i^2) is an eigenspace with eigenvalue |G| sigma_i / d_i. Centering removes
// the trivial component and leaves the others unchanged.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "mdsg/chartheory.hpp"
#include "mdsg/cyclotomic.hpp"
#include "mdsg/errors.hpp"
#include "mdsg/mds_dense.hpp"
#include "mdsg/metrics.hpp"

namespace mdsg {

class NotBiInvariantError : public std::invalid_argument {
 public:
  explicit NotBiInvariantError(InvarianceCounterexample counterexample)
      : std::invalid_argument("metric is not bi-invariant: " + counterexample.describe()),
        counterexample_(std::move(counterexample)) {}
  const InvarianceCounterexample& counterexample() const { return counterexample_; }

 private:
  InvarianceCounterexample counterexample_;
};

/// g -> -d(g, e)^2 / 2 on conjugacy classes.
struct MuFunction {
  ClassFunction values;
};

struct MuOptions {
  std::size_t invariance_trials = 1000;
  std::size_t conjugates_per_class = 25;
  std::uint64_t seed = 0x6d75;
  std::size_t cap = kDefaultElementCap;
};

inline MuFunction mu_from_metric(const GroupSpec& spec, const Metric& metric, const MuOptions& options = {}) {
  metric.require_compatible(spec);
  const auto report = check_invariance(spec, metric, InvarianceMode::bi, options.invariance_trials, options.seed);
  if (!report.passed) throw NotBiInvariantError(*report.counterexample);

  const auto classes = conjugacy_classes(spec, options.cap);
  const GroupElement e = identity(spec);
  MuFunction mu{{spec, {}}};
  mu.values.values.reserve(classes.size());
  std::mt19937_64 rng(options.seed);
  for (const auto& cls : classes) {
    const long long d = metric(spec, cls.representative, e);
    // A class function must agree on conjugates; spot-check rather than trust.
    if (!spec.is_abelian()) {
      for (std::size_t t = 0; t < options.conjugates_per_class; ++t) {
        const auto h = random_element(spec, rng);
        const auto conj = conjugate(spec, cls.representative, h);
        const long long dc = metric(spec, conj, e);
        if (dc != d) {
          // d(hgh^-1, e) != d(g, e): either left translation by h^-1 or right
          // translation by h changes a distance.
          const auto h_inv = inverse(spec, h);
          const auto g_h_inv = multiply(spec, cls.representative, h_inv);
          const long long mid = metric(spec, g_h_inv, h_inv);
          if (mid != dc) throw NotBiInvariantError(InvarianceCounterexample{h_inv, conj, e, true, dc, mid});
          throw NotBiInvariantError(InvarianceCounterexample{h, g_h_inv, h_inv, false, mid, d});
        }
      }
    }
    mu.values.values.emplace_back(Rational(-d * d, 2));
  }
  return mu;
}

// ---------------------------------------------------------------------------

enum class EigenSign { positive, negative, zero };

inline const char* to_string(EigenSign s) {
  switch (s) {
    case EigenSign::positive: return "positive";
    case EigenSign::negative: return "negative";
    case EigenSign::zero: return "zero";
  }
  return "";
}

struct SpectralEntry {
  Cyclotomic eigenvalue;
  std::uint64_t multiplicity = 0;
  std::vector<IrreducibleLabel> labels;
  EigenSign sign = EigenSign::zero;

  friend bool operator==(const SpectralEntry&, const SpectralEntry&) = default;
};

/// Predicted spectrum of the centered MDS kernel. Nonzero entries come first in
/// descending order; the zero entry, if any, is last. The trivial
/// representation is excluded and its (non-centered) eigenvalue kept aside.
struct SpectralSummary {
  GroupSpec group;
  std::string metric;
  std::vector<SpectralEntry> entries;
  Cyclotomic trivial_eigenvalue;

  std::uint64_t total_multiplicity() const {
    std::uint64_t total = 0;
    for (const auto& e : entries) total += e.multiplicity;
    return total;
  }
  std::uint64_t rank() const {
    std::uint64_t total = 0;
    for (const auto& e : entries)
      if (e.sign != EigenSign::zero) total += e.multiplicity;
    return total;
  }
  /// sum lambda * multiplicity over the centered spectrum.
  Cyclotomic trace() const {
    Cyclotomic sum(0);
    for (const auto& e : entries) sum += e.eigenvalue * Cyclotomic(Rational(static_cast<Rational::int_type>(e.multiplicity)));
    return sum;
  }
  const SpectralEntry* entry_for(const IrreducibleLabel& label) const {
    for (const auto& e : entries)
      if (std::find(e.labels.begin(), e.labels.end(), label) != e.labels.end()) return &e;
    return nullptr;
  }

  friend bool operator==(const SpectralSummary&, const SpectralSummary&) = default;
};

namespace detail {

inline EigenSign sign_of(const Cyclotomic& value) {
  if (value.is_zero()) return EigenSign::zero;
  if (value.is_rational()) return value.rational().sign() > 0 ? EigenSign::positive : EigenSign::negative;
  return value.real_value() > 0 ? EigenSign::positive : EigenSign::negative;
}

inline void sort_entries(std::vector<SpectralEntry>& entries) {
  std::vector<double> real(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) real[i] = entries[i].eigenvalue.real_value();
  std::vector<std::size_t> order(entries.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const SpectralEntry& a = entries[i];
    const SpectralEntry& b = entries[j];
    const bool az = a.sign == EigenSign::zero;
    const bool bz = b.sign == EigenSign::zero;
    if (az != bz) return bz;
    if (a.eigenvalue.is_rational() && b.eigenvalue.is_rational()) return a.eigenvalue.rational() > b.eigenvalue.rational();
    return real[i] > real[j];
  });
  std::vector<SpectralEntry> sorted;
  sorted.reserve(entries.size());
  for (const std::size_t i : order) sorted.push_back(std::move(entries[i]));
  entries = std::move(sorted);
}

// sigma_i for every irreducible label, in irreducible_labels order.
inline std::vector<Cyclotomic> mu_coefficients(const MuFunction& mu, const std::vector<IrreducibleLabel>& labels) {
  const GroupSpec& spec = mu.values.group;
  std::vector<Cyclotomic> sigma;
  sigma.reserve(labels.size());
  switch (spec.kind()) {
    case GroupKind::elementary_abelian_2: {
      std::vector<Rational> w;
      w.reserve(mu.values.values.size());
      for (const auto& v : mu.values.values) w.push_back(v.rational());
      walsh_hadamard_transform(w);
      const Rational order(static_cast<Rational::int_type>(spec.order()));
      for (const auto& label : labels) sigma.emplace_back(w[subset_mask(std::get<Subset>(label), spec.size())] / order);
      break;
    }
    case GroupKind::cyclic: {
      const int n = spec.size();
      for (const auto& label : labels) {
        const long long a = std::get<Frequency>(label).value;
        std::vector<Rational> powers(static_cast<std::size_t>(n), Rational(0));
        for (int m = 0; m < n; ++m) {
          const auto slot = static_cast<std::size_t>(((-a * m) % n + n) % n);
          powers[slot] += mu.values.values[static_cast<std::size_t>(m)].rational();
        }
        sigma.push_back(Cyclotomic::from_powers(n, std::move(powers)) / Rational(n));
      }
      break;
    }
    case GroupKind::symmetric: {
      const auto table = character_table(spec);
      for (const auto& label : labels) sigma.push_back(inner_product(mu.values, table.row(table.row_of(label))));
      break;
    }
  }
  return sigma;
}

}  // namespace detail

/// lambda_i = |G| sigma_i / d_i with multiplicity d_i^2, equal eigenvalues merged.
inline SpectralSummary spectrum_from_mu(const MuFunction& mu, const std::string& metric_name) {
  const GroupSpec& spec = mu.values.group;
  const auto labels = irreducible_labels(spec);
  const auto sigma = detail::mu_coefficients(mu, labels);
  const Rational order(static_cast<Rational::int_type>(spec.order()));

  SpectralSummary summary{spec, metric_name, {}, Cyclotomic(0)};
  SpectralEntry zero{Cyclotomic(0), 0, {}, EigenSign::zero};
  std::vector<std::complex<double>> approxes;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto dim = static_cast<Rational::int_type>(dimension(spec, labels[i]));
    const Cyclotomic lambda = sigma[i] * Cyclotomic(order / Rational(dim));
    if (is_trivial(labels[i])) {
      summary.trivial_eigenvalue = lambda;
      continue;
    }
    const auto mult = static_cast<std::uint64_t>(dim) * static_cast<std::uint64_t>(dim);
    if (lambda.is_zero()) {
      zero.multiplicity += mult;
      zero.labels.push_back(labels[i]);
      continue;
    }
    // Exact comparison only against numerically close candidates.
    const std::complex<double> approx = lambda.to_complex();
    const double tol = 1e-6 * (1.0 + std::abs(approx));
    auto it = summary.entries.begin();
    for (; it != summary.entries.end(); ++it) {
      const auto k = static_cast<std::size_t>(it - summary.entries.begin());
      if (std::abs(approx - approxes[k]) <= tol && it->eigenvalue == lambda) break;
    }
    if (it == summary.entries.end()) {
      summary.entries.push_back({lambda, mult, {labels[i]}, detail::sign_of(lambda)});
      approxes.push_back(approx);
    } else {
      it->multiplicity += mult;
      it->labels.push_back(labels[i]);
    }
  }
  if (zero.multiplicity > 0) summary.entries.push_back(std::move(zero));
  detail::sort_entries(summary.entries);
  return summary;
}

inline SpectralSummary spectrum_via_characters(const GroupSpec& spec, const Metric& metric, const MuOptions& options = {}) {
  return spectrum_from_mu(mu_from_metric(spec, metric, options), metric.name());
}

// ---------------------------------------------------------------------------
// Closed forms for Hamming distance

/// C_2^k: lambda = 2^(k-2) k on the k singleton subsets, -2^(k-2) on the
/// C(k,2) pairs, zero elsewhere. Zero-entry labels are listed for k <= 16.
inline SpectralSummary closed_form_c2k(int k) {
  if (k < 1) throw std::invalid_argument("closed_form_c2k requires k >= 1");
  // The trivial eigenvalue 2^(k-2) k(k+1)/2 stops fitting in 64 bits at k = 55.
  if (k > 54) throw TooLargeError("closed_form_c2k supports k <= 54", 54);
  const auto spec = GroupSpec::elementary_abelian_2(k);
  const Rational quarter_order = Rational(static_cast<Rational::int_type>(spec.order())) / Rational(4);
  const auto kk = static_cast<Rational::int_type>(k);
  const std::uint64_t pairs = static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(k - 1) / 2;

  SpectralSummary summary{spec, Metric::hamming_bitvector().name(), {}, Cyclotomic(-quarter_order * Rational(kk * (kk + 1), 2))};

  SpectralEntry singles{Cyclotomic(quarter_order * Rational(kk)), static_cast<std::uint64_t>(k), {}, EigenSign::positive};
  for (int s = k; s >= 1; --s) singles.labels.emplace_back(Subset{{s}});
  summary.entries.push_back(std::move(singles));

  if (k >= 2) {
    SpectralEntry doubles{Cyclotomic(-quarter_order), pairs, {}, EigenSign::negative};
    std::vector<Subset> pair_labels;
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) pair_labels.push_back(Subset{{i, j}});
    std::sort(pair_labels.begin(), pair_labels.end(),
              [&](const Subset& a, const Subset& b) { return subset_mask(a, k) < subset_mask(b, k); });
    for (auto& p : pair_labels) doubles.labels.emplace_back(std::move(p));
    summary.entries.push_back(std::move(doubles));
  }

  const std::uint64_t zeros = spec.order() - 1 - static_cast<std::uint64_t>(k) - pairs;
  if (zeros > 0) {
    SpectralEntry zero{Cyclotomic(0), zeros, {}, EigenSign::zero};
    if (k <= 16) {
      for (auto& label : irreducible_labels(spec))
        if (std::get<Subset>(label).indices.size() >= 3) zero.labels.push_back(std::move(label));
    }
    summary.entries.push_back(std::move(zero));
  }
  return summary;
}

/// S_n, 4 <= n <= 18: the standard representation [n-1,1] and the two
/// irreducibles [n-2,1,1], [n-2,2] of its tensor square carry the spectrum.
inline SpectralSummary closed_form_sn(int n) {
  if (n < 4)
    throw UnsupportedError("closed_form_sn requires n >= 4 (the [n-2,2] eigenvalue divides by n-3); "
                           "use spectrum_via_characters");
  // n! ((n-1)^2 + 1) / 2 overflows 64 bits from n = 19.
  if (n > 18) throw TooLargeError("closed_form_sn supports n <= 18", 18);
  const auto spec = GroupSpec::symmetric(n);
  const Rational fact(static_cast<Rational::int_type>(spec.order()));
  const Rational rn(n);
  auto square = [](std::uint64_t x) { return x * x; };
  const auto un = static_cast<std::uint64_t>(n);

  const Partition standard{n - 1, 1};
  const Partition hook{n - 2, 1, 1};
  const Partition two_row{n - 2, 2};

  // -2 mu = (n-1)^2 chi_[n] - 2(n-1) chi_[n-1,1] + chi_[n-1,1]^2, and the square
  // contains chi_[n] once, so sigma_[n] = -((n-1)^2 + 1) / 2.
  SpectralSummary summary{spec, Metric::hamming_permutation().name(), {},
                          Cyclotomic(-fact * (Rational((n - 1) * (n - 1) + 1) / Rational(2)))};
  summary.entries.push_back({Cyclotomic(fact / Rational(2 * n - 2) * Rational(2 * n - 3)), square(un - 1),
                             {IrreducibleLabel(standard)}, EigenSign::positive});
  summary.entries.push_back({Cyclotomic(-fact / Rational((n - 1) * (n - 2))), square((un - 1) * (un - 2) / 2),
                             {IrreducibleLabel(hook)}, EigenSign::negative});
  summary.entries.push_back({Cyclotomic(-fact / (rn * Rational(n - 3))), square(un * (un - 3) / 2),
                             {IrreducibleLabel(two_row)}, EigenSign::negative});

  std::uint64_t used = 1;
  for (const auto& e : summary.entries) used += e.multiplicity;
  SpectralEntry zero{Cyclotomic(0), spec.order() - used, {}, EigenSign::zero};
  for (auto& p : partitions_of(n)) {
    if (p.length() == 1 || p == standard || p == hook || p == two_row) continue;
    zero.labels.emplace_back(std::move(p));
  }
  if (zero.multiplicity > 0) summary.entries.push_back(std::move(zero));
  return summary;
}

// ---------------------------------------------------------------------------
// Matrices on L^2(G)

/// entry(h, g) = mu(h g^-1) in element enumeration order.
inline MdsKernel convolution_matrix(const GroupSpec& spec, const MuFunction& mu, std::size_t cap = kDefaultElementCap) {
  const auto elems = enumerate_elements(spec, cap);
  const ClassIndexer class_of(spec);
  const auto n = static_cast<Eigen::Index>(elems.size());
  std::vector<double> value(mu.values.values.size());
  for (std::size_t c = 0; c < value.size(); ++c) value[c] = mu.values.values[c].real_value();

  MdsKernel kernel{Eigen::MatrixXd(n, n), false};
  for (Eigen::Index g = 0; g < n; ++g) {
    const auto g_inv = inverse(spec, elems[static_cast<std::size_t>(g)]);
    for (Eigen::Index h = 0; h < n; ++h)
      kernel.matrix(h, g) = value[class_of(multiply(spec, elems[static_cast<std::size_t>(h)], g_inv))];
  }
  return kernel;
}

/// Real isotypic labels: every irreducible, except that for C_n the frequencies
/// a and n-a share one real eigenspace and only a <= n-a is listed.
inline std::vector<IrreducibleLabel> real_isotypic_labels(const GroupSpec& spec) {
  auto labels = irreducible_labels(spec);
  if (spec.kind() != GroupKind::cyclic) return labels;
  std::erase_if(labels, [&](const IrreducibleLabel& l) {
    const int a = std::get<Frequency>(l).value;
    return a > spec.size() - a;
  });
  return labels;
}

struct IsotypicProjector {
  IrreducibleLabel label;
  Eigen::MatrixXd matrix;
  std::uint64_t rank = 0;
};

/// P(h, k) = (d / |G|) conj(chi(h k^-1)). For C_n the projector for a covers
/// frequencies a and n-a together, which makes it real.
inline IsotypicProjector isotypic_projector(const GroupSpec& spec, const IrreducibleLabel& label,
                                            std::size_t cap = kDefaultElementCap) {
  require_label(spec, label);
  const auto elems = enumerate_elements(spec, cap);
  const auto n = static_cast<Eigen::Index>(elems.size());
  const auto classes = conjugacy_classes(spec, cap);
  const ClassIndexer class_of(spec);
  const auto dim = dimension(spec, label);
  const double scale = static_cast<double>(dim) / static_cast<double>(spec.order());

  std::vector<double> chi(classes.size());
  std::uint64_t rank = dim * dim;
  if (spec.kind() == GroupKind::cyclic) {
    const int a = std::get<Frequency>(label).value;
    const bool paired = (2 * a) % spec.size() != 0;
    rank = paired ? 2 : 1;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      const double angle = 2.0 * std::numbers::pi * a * static_cast<double>(c) / spec.size();
      chi[c] = paired ? 2.0 * std::cos(angle) : std::cos(angle);
    }
  } else {
    for (std::size_t c = 0; c < classes.size(); ++c) chi[c] = character_value(spec, label, classes[c]).real_value();
  }

  IsotypicProjector proj{label, Eigen::MatrixXd(n, n), rank};
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto k_inv = inverse(spec, elems[static_cast<std::size_t>(k)]);
    for (Eigen::Index h = 0; h < n; ++h)
      proj.matrix(h, k) = scale * chi[class_of(multiply(spec, elems[static_cast<std::size_t>(h)], k_inv))];
  }
  return proj;
}

// ---------------------------------------------------------------------------

/// Coordinates of a permutation in the standard-representation block:
/// c_ij = sqrt((2n-3)/2) ([g(j) = i] - 1/n), so ||c(g) - c(h)||^2 = (2n-3) d_H(g, h).
inline std::vector<double> standard_rep_coordinates(const GroupElement& g, int n) {
  if (n < 4) throw std::invalid_argument("standard_rep_coordinates requires n >= 4");
  require_member(GroupSpec::symmetric(n), g);
  const double scale = std::sqrt((2.0 * n - 3.0) / 2.0);
  const double offset = 1.0 / n;
  const auto un = static_cast<std::size_t>(n);
  std::vector<double> c(un * un, -scale * offset);
  for (std::size_t j = 0; j < un; ++j) {
    const auto i = static_cast<std::size_t>(g[j] - 1);
    c[i * un + j] = scale * (1.0 - offset);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Oracle comparison

struct OracleComparison {
  double max_abs_deviation = 0.0;
  double max_relative_deviation = 0.0;  // relative to max |lambda|
  bool multiplicities_match = false;
  std::size_t oracle_size = 0;
};

/// Predicted eigenvalues of the centered kernel (trivial direction included as 0), descending.
inline std::vector<double> expanded_spectrum(const SpectralSummary& summary) {
  std::vector<double> values;
  for (const auto& e : summary.entries)
    values.insert(values.end(), e.multiplicity, e.sign == EigenSign::zero ? 0.0 : e.eigenvalue.real_value());
  values.push_back(0.0);
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

inline OracleComparison compare_with_oracle(const SpectralSummary& summary, const SpectralDecomposition& dense,
                                            double cluster_tolerance = 1e-8) {
  OracleComparison out;
  out.oracle_size = static_cast<std::size_t>(dense.size());
  const auto predicted = expanded_spectrum(summary);
  if (predicted.size() != out.oracle_size) {
    out.max_abs_deviation = out.max_relative_deviation = INFINITY;
    return out;
  }
  const double scale = std::max(1.0, dense.max_abs_eigenvalue());
  for (std::size_t i = 0; i < predicted.size(); ++i)
    out.max_abs_deviation = std::max(out.max_abs_deviation, std::abs(predicted[i] - dense.eigenvalues(static_cast<Eigen::Index>(i))));
  out.max_relative_deviation = out.max_abs_deviation / scale;

  const auto oracle_clusters = cluster_eigenvalues(dense.eigenvalues, cluster_tolerance);
  const auto predicted_clusters = cluster_eigenvalues(
      Eigen::Map<const Eigen::VectorXd>(predicted.data(), static_cast<Eigen::Index>(predicted.size())), cluster_tolerance);
  out.multiplicities_match = oracle_clusters.size() == predicted_clusters.size();
  for (std::size_t i = 0; out.multiplicities_match && i < oracle_clusters.size(); ++i) {
    out.multiplicities_match = oracle_clusters[i].multiplicity == predicted_clusters[i].multiplicity &&
                               std::abs(oracle_clusters[i].value - predicted_clusters[i].value) <= cluster_tolerance * scale;
  }
  return out;
}

/// Dense oracle: enumerate, build distances, double-center, eigendecompose.
inline SpectralDecomposition dense_spectrum(const GroupSpec& spec, const Metric& metric, std::size_t cap) {
  return eigendecompose(double_center(build_distance_matrix(spec, metric, cap)));
}

/// (1 / (2|G|)) sum_{g,h} d(g,h)^2, the trace of the centered kernel.
inline Rational centered_trace(const DistanceMatrix& dm) {
  Rational::int_type sum = 0;
  for (long long d : dm.entries) sum += d * d;
  return Rational(sum, 2 * static_cast<Rational::int_type>(dm.size()));
}

}  // namespace mdsg
