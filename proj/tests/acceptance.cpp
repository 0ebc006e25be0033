// Acceptance checks: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "mdsg/mdsg.hpp"
#include "oracles.hpp"

using namespace mdsg;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string sci(double v) {
  std::ostringstream s;
  s << std::setprecision(2) << std::scientific << v;
  return s.str();
}

Rational::int_type factorial(int n) {
  Rational::int_type f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::uint64_t choose2(std::uint64_t k) { return k * (k - 1) / 2; }

// 1. C_2^k spectra, exact and against the dense eigensolver.
Outcome c2k_spectra() {
  Outcome out;
  double worst = 0.0;
  for (int k = 2; k <= 8; ++k) {
    const auto spec = GroupSpec::elementary_abelian_2(k);
    const auto summary = spectrum_via_characters(spec, Metric::hamming_bitvector());
    const Rational lambda1((Rational::int_type{1} << k) * k, 4);
    const Rational lambda2(-(Rational::int_type{1} << k), 4);
    for (const auto& label : irreducible_labels(spec)) {
      if (is_trivial(label)) continue;
      const auto size = std::get<Subset>(label).indices.size();
      const auto* entry = summary.entry_for(label);
      if (!entry) {
        out.fail("k=" + std::to_string(k) + ": no entry for " + label_to_string(label));
        continue;
      }
      const Cyclotomic expected = size == 1 ? Cyclotomic(lambda1) : size == 2 ? Cyclotomic(lambda2) : Cyclotomic(0);
      if (entry->eigenvalue != expected)
        out.fail("k=" + std::to_string(k) + ": " + label_to_string(label) + " has " + entry->eigenvalue.to_string());
    }
    for (const auto& e : summary.entries) {
      const std::uint64_t want = e.sign == EigenSign::positive   ? static_cast<std::uint64_t>(k)
                                 : e.sign == EigenSign::negative ? choose2(static_cast<std::uint64_t>(k))
                                                                 : spec.order() - 1 - static_cast<std::uint64_t>(k) - choose2(static_cast<std::uint64_t>(k));
      if (e.multiplicity != want) out.fail("k=" + std::to_string(k) + ": multiplicity " + std::to_string(e.multiplicity));
    }
    const auto cmp = compare_with_oracle(summary, dense_spectrum(spec, Metric::hamming_bitvector(), 720));
    worst = std::max(worst, cmp.max_abs_deviation);
    if (!cmp.multiplicities_match) out.fail("k=" + std::to_string(k) + ": dense multiplicities differ");
  }
  if (!(worst < 1e-8)) out.fail("dense deviation " + sci(worst));
  if (out.pass) out.detail = "k=2..8 exact; dense max |deviation| " + sci(worst);
  return out;
}

// 2. S_n closed form vs characters vs dense, n = 4, 5, 6.
Outcome sn_spectra() {
  Outcome out;
  double worst = 0.0;
  for (int n = 4; n <= 6; ++n) {
    const auto spec = GroupSpec::symmetric(n);
    const auto closed = closed_form_sn(n);
    const auto chars = spectrum_via_characters(spec, Metric::hamming_permutation());
    if (!(closed == chars)) out.fail("n=" + std::to_string(n) + ": closed form differs from characters");
    const auto f = factorial(n);
    const auto un = static_cast<std::uint64_t>(n);
    const std::vector<std::pair<Rational, std::uint64_t>> expected = {
        {Rational((2 * n - 3) * f, 2 * n - 2), (un - 1) * (un - 1)},
        {Rational(-f, (n - 1) * (n - 2)), ((un - 1) * (un - 2) / 2) * ((un - 1) * (un - 2) / 2)},
        {Rational(-f, n * (n - 3)), (un * (un - 3) / 2) * (un * (un - 3) / 2)}};
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i >= chars.entries.size() || chars.entries[i].eigenvalue != Cyclotomic(expected[i].first) ||
          chars.entries[i].multiplicity != expected[i].second)
        out.fail("n=" + std::to_string(n) + ": entry " + std::to_string(i) + " differs from the formula");
    }
    const auto cmp = compare_with_oracle(chars, dense_spectrum(spec, Metric::hamming_permutation(), 720));
    worst = std::max(worst, cmp.max_relative_deviation);
    if (!cmp.multiplicities_match) out.fail("n=" + std::to_string(n) + ": dense multiplicities differ");
  }
  if (!(worst <= 1e-8)) out.fail("dense relative deviation " + sci(worst));
  if (out.pass) out.detail = "n=4,5,6 exact; dense (up to 720x720) max relative deviation " + sci(worst);
  return out;
}

// 3. Tensor square of the standard representation.
Outcome kronecker() {
  Outcome out;
  for (int n = 4; n <= 8; ++n) {
    const std::vector<Partition> support = {{n}, {n - 1, 1}, {n - 2, 1, 1}, {n - 2, 2}};
    const auto dec = tensor_square_decomposition(GroupSpec::symmetric(n), Partition{n - 1, 1});
    for (const auto& [label, coeff] : dec.coefficients) {
      const bool in = std::find(support.begin(), support.end(), std::get<Partition>(label)) != support.end();
      if (coeff != Cyclotomic(in ? 1 : 0))
        out.fail("n=" + std::to_string(n) + ": coefficient of " + label_to_string(label) + " is " + coeff.to_string());
    }
    if (dec.coefficients.size() != partitions_of(n).size()) out.fail("n=" + std::to_string(n) + ": missing partitions");
  }
  if (out.pass) out.detail = "n=4..8: coefficient 1 on [n],[n-1,1],[n-2,1,1],[n-2,2], 0 elsewhere";
  return out;
}

// 4. Full-rank pseudo-Euclidean reconstruction.
Outcome reconstruction() {
  Outcome out;
  struct Case {
    GroupSpec spec;
    Metric metric;
  };
  double worst = 0.0;
  for (const auto& [spec, metric] : {Case{GroupSpec::symmetric(4), Metric::hamming_permutation()},
                                     Case{GroupSpec::elementary_abelian_2(4), Metric::hamming_bitvector()},
                                     Case{GroupSpec::cyclic(12), Metric::circular_arc()}}) {
    const auto dm = build_distance_matrix(spec, metric);
    const auto emb = pseudo_embedding(eigendecompose(double_center(dm)));
    for (std::size_t i = 0; i < dm.size(); ++i)
      for (std::size_t j = 0; j < dm.size(); ++j) {
        const double d = static_cast<double>(dm(i, j));
        worst = std::max(worst, std::abs(pseudo_distance_sq(emb, static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - d * d));
      }
  }
  if (!(worst <= 1e-8)) out.fail("max |d^2 error| " + sci(worst));
  else out.detail = "S4, C2^4, C12-arc: max |d^2 error| " + sci(worst);
  return out;
}

// 5. Strain equals the Frobenius residual of the rank-k reconstruction.
Outcome strain_identity() {
  Outcome out;
  const auto kernel = double_center(build_distance_matrix(GroupSpec::symmetric(4), Metric::hamming_permutation()));
  const auto dec = eigendecompose(kernel);
  std::mt19937_64 rng(2024);
  std::string ks;
  double worst = 0.0;
  for (int t = 0; t < 5; ++t) {
    const int k = static_cast<int>(rng() % 25);
    ks += (ks.empty() ? "" : ",") + std::to_string(k);
    Eigen::MatrixXd rebuilt = Eigen::MatrixXd::Zero(24, 24);
    for (int i = 0; i < k; ++i) rebuilt += dec.eigenvalues(i) * dec.eigenvectors.col(i) * dec.eigenvectors.col(i).transpose();
    worst = std::max(worst, std::abs(strain(dec, k) - (kernel.matrix - rebuilt).squaredNorm()));
  }
  if (!(worst <= 1e-8)) out.fail("k={" + ks + "}: deviation " + sci(worst));
  else out.detail = "S4, k={" + ks + "}: max deviation " + sci(worst);
  return out;
}

// 6. Orthogonality, dimension census, Hadamard form.
Outcome character_exactness() {
  Outcome out;
  std::vector<GroupSpec> specs;
  for (int n = 1; n <= 7; ++n) specs.push_back(GroupSpec::symmetric(n));
  for (int k = 1; k <= 8; ++k) specs.push_back(GroupSpec::elementary_abelian_2(k));
  for (int n = 1; n <= 32; ++n) specs.push_back(GroupSpec::cyclic(n));
  std::size_t pairs = 0;
  for (const auto& spec : specs) {
    const auto table = character_table(spec);
    std::uint64_t census = 0;
    for (std::size_t i = 0; i < table.labels.size(); ++i) {
      const auto d = dimension(spec, table.labels[i]);
      census += d * d;
      const auto row_i = table.row(i);
      for (std::size_t j = i; j < table.labels.size(); ++j, ++pairs)
        if (inner_product(row_i, table.row(j)) != Cyclotomic(i == j ? 1 : 0))
          out.fail(spec.name() + ": <chi_" + std::to_string(i) + ", chi_" + std::to_string(j) + "> wrong");
    }
    if (census != spec.order()) out.fail(spec.name() + ": sum of squared dimensions " + std::to_string(census));
  }
  for (int k = 1; k <= 6; ++k) {
    const auto spec = GroupSpec::elementary_abelian_2(k);
    const auto table = character_table(spec);
    const auto h = oracle::sylvester_hadamard(k);
    for (std::size_t r = 0; r < table.labels.size(); ++r)
      for (std::size_t c = 0; c < table.classes.size(); ++c)
        if (table.entries[r][c] != Cyclotomic(h[subset_mask(std::get<Subset>(table.labels[r]), k)][element_index(spec, table.classes[c].representative)]))
          out.fail(spec.name() + ": Hadamard mismatch");
  }
  if (out.pass) out.detail = std::to_string(specs.size()) + " tables, " + std::to_string(pairs) + " row pairs exact; Hadamard k<=6";
  return out;
}

// 7. Trace identity over every shipped (group, metric) of order <= 720.
Outcome trace_identity() {
  Outcome out;
  struct Case {
    GroupSpec spec;
    Metric metric;
  };
  std::vector<Case> cases;
  for (int n = 1; n <= 6; ++n) cases.push_back({GroupSpec::symmetric(n), Metric::hamming_permutation()});
  for (int k = 1; k <= 9; ++k) cases.push_back({GroupSpec::elementary_abelian_2(k), Metric::hamming_bitvector()});
  for (int n = 1; n <= 720; ++n) cases.push_back({GroupSpec::cyclic(n), Metric::circular_arc()});
  for (const auto& [spec, metric] : cases) {
    const auto lhs = spectrum_via_characters(spec, metric).trace();
    // Right side straight from the distances.
    Rational::int_type sum = 0;
    if (spec.kind() == GroupKind::cyclic) {
      // n rows, each holding every arc length min(m, n - m) once.
      const auto n = spec.size();
      for (int m = 0; m < n; ++m) {
        const Rational::int_type d = std::min(m, n - m);
        sum += n * d * d;
      }
    } else {
      const auto elems = enumerate_elements(spec);
      for (const auto& g : elems)
        for (const auto& h : elems) {
          const auto d = distance(spec, metric, g, h);
          sum += d * d;
        }
    }
    const Rational rhs(sum, 2 * static_cast<Rational::int_type>(spec.order()));
    if (lhs != Cyclotomic(rhs)) out.fail(spec.name() + ": " + lhs.to_string() + " vs " + rhs.to_string());
  }
  const auto s4 = spectrum_via_characters(GroupSpec::symmetric(4), Metric::hamming_permutation()).trace();
  const auto c22 = spectrum_via_characters(GroupSpec::elementary_abelian_2(2), Metric::hamming_bitvector()).trace();
  if (s4 != Cyclotomic(120)) out.fail("S4 trace " + s4.to_string());
  if (c22 != Cyclotomic(3)) out.fail("C2^2 trace " + c22.to_string());
  if (out.pass) out.detail = std::to_string(cases.size()) + " (group, metric) pairs exact; S4 = 120, C2^2 = 3";
  return out;
}

// 8. Standard-representation coordinates.
Outcome large_n_projection() {
  Outcome out;
  auto dist_sq = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
  };
  const auto s10 = GroupSpec::symmetric(10);
  std::mt19937_64 rng(10);
  double worst10 = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const auto g = random_element(s10, rng), h = random_element(s10, rng);
    int differing = 0;
    for (std::size_t i = 0; i < 10; ++i) differing += g[i] != h[i];
    worst10 = std::max(worst10, std::abs(dist_sq(standard_rep_coordinates(g, 10), standard_rep_coordinates(h, 10)) - 17.0 * differing));
  }
  if (!(worst10 <= 1e-10)) out.fail("n=10 deviation " + sci(worst10));

  const auto s5 = GroupSpec::symmetric(5);
  const auto elems = enumerate_elements(s5);
  const auto emb = classical_embedding(dense_spectrum(s5, Metric::hamming_permutation(), 720), 16);
  double worst5 = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const auto ci = standard_rep_coordinates(elems[i], 5);
    for (std::size_t j = i + 1; j < elems.size(); ++j, ++pairs) {
      const double block = (emb.coordinates.row(static_cast<Eigen::Index>(i)) - emb.coordinates.row(static_cast<Eigen::Index>(j))).squaredNorm();
      worst5 = std::max(worst5, std::abs(block - dist_sq(ci, standard_rep_coordinates(elems[j], 5))));
    }
  }
  if (emb.dims() != 16 || emb.eigenvalues.front() < 104.9 || emb.eigenvalues.back() > 105.1) out.fail("n=5 positive block is not the lambda=105 block");
  if (!(worst5 <= 1e-8)) out.fail("n=5 deviation " + sci(worst5));
  if (out.pass)
    out.detail = "n=10: 1000 pairs, max " + sci(worst10) + "; n=5: " + std::to_string(pairs) + " pairs, max " + sci(worst5);
  return out;
}

// 9. Ranking pipeline at desk scale.
Outcome pipeline() {
  Outcome out;
  const auto text = format_rankings(synthesize_rankings(5, 5738, 7));
  const auto data = parse_rankings(text);
  const auto samples = aggregate(data);
  std::uint64_t total = 0;
  for (const auto& s : samples) total += s.weight;
  if (samples.size() > 120) out.fail(std::to_string(samples.size()) + " samples");
  if (total != 5738) out.fail("weights sum to " + std::to_string(total));
  const auto csv = embedding_to_csv(embed_dataset(samples, 5, 3, EmbedMode::dense));
  const auto svg = render_scatter_svg(parse_embedding_csv(csv));
  const auto again = render_scatter_svg(parse_embedding_csv(embedding_to_csv(embed_dataset(aggregate(parse_rankings(text)), 5, 3, EmbedMode::dense))));
  std::size_t circles = 0, closed = 0;
  for (auto at = svg.find("<circle"); at != std::string::npos; at = svg.find("<circle", at + 1)) ++circles;
  for (auto at = svg.find("</circle>"); at != std::string::npos; at = svg.find("</circle>", at + 1)) ++closed;
  const bool framed = svg.rfind("<?xml", 0) == 0 && svg.find("<svg ") != std::string::npos && svg.ends_with("</svg>\n");
  if (!framed || circles != samples.size() || closed != circles) out.fail("malformed SVG");
  if (svg != again) out.fail("SVG differs between runs");
  if (out.pass)
    out.detail = "5738 rankings -> " + std::to_string(samples.size()) + " samples -> " + std::to_string(svg.size()) + "-byte SVG, byte-identical on rerun";
  return out;
}

// 10. Bi-invariance guard.
Outcome bi_invariance_guard() {
  Outcome out;
  const auto c23 = GroupSpec::elementary_abelian_2(3);
  const auto a = parse_element(c23, "001"), b = parse_element(c23, "110");
  const auto corrupted = Metric::custom("corrupted", GroupKind::elementary_abelian_2,
                                        [a, b](const GroupElement& g, const GroupElement& h) -> long long {
                                          long long d = 0;
                                          for (std::size_t i = 0; i < g.length(); ++i) d += g[i] != h[i];
                                          return d + ((g == a && h == b) || (g == b && h == a));
                                        });
  try {
    mu_from_metric(c23, corrupted);
    out.fail("corrupted metric accepted");
  } catch (const NotBiInvariantError& e) {
    const auto& ce = e.counterexample();
    const auto lhs = ce.left_side ? corrupted(c23, multiply(c23, ce.f, ce.g), multiply(c23, ce.f, ce.h))
                                  : corrupted(c23, multiply(c23, ce.g, ce.f), multiply(c23, ce.h, ce.f));
    if (lhs == corrupted(c23, ce.g, ce.h)) out.fail("reported triple does not break invariance");
    else out.detail = "rejected with " + ce.describe() + "; ";
  }

  struct Case {
    GroupSpec spec;
    Metric metric;
  };
  std::vector<Case> cases;
  for (int n = 1; n <= 5; ++n) cases.push_back({GroupSpec::symmetric(n), Metric::hamming_permutation()});
  for (int k = 1; k <= 6; ++k) cases.push_back({GroupSpec::elementary_abelian_2(k), Metric::hamming_bitvector()});
  for (int n = 1; n <= 120; ++n) cases.push_back({GroupSpec::cyclic(n), Metric::circular_arc()});
  for (const auto& [spec, metric] : cases) {
    const auto report = check_invariance(spec, metric, InvarianceMode::bi);
    if (!report.passed || !report.exhaustive) out.fail(spec.name() + " failed the exhaustive check");
  }
  if (out.pass) out.detail += std::to_string(cases.size()) + " shipped (group, metric) pairs pass exhaustively";
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double limit_seconds;  // 0 = none
  };
  const std::vector<Criterion> criteria = {
      {1, "C2^k Hamming spectra", c2k_spectra, 30},
      {2, "S_n Hamming spectra", sn_spectra, 120},
      {3, "tensor square of [n-1,1]", kronecker, 0},
      {4, "pseudo-Euclidean reconstruction", reconstruction, 0},
      {5, "strain identity", strain_identity, 0},
      {6, "character-theory exactness", character_exactness, 0},
      {7, "trace identity", trace_identity, 0},
      {8, "standard-representation projection", large_n_projection, 0},
      {9, "ranking pipeline", pipeline, 15},
      {10, "bi-invariance guard", bi_invariance_guard, 0},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.fail(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && seconds >= c.limit_seconds)
      outcome.fail("took " + std::to_string(seconds) + " s, limit " + std::to_string(c.limit_seconds) + " s");
    failures += !outcome.pass;
    std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << outcome.detail << " ["
              << std::fixed << std::setprecision(2) << seconds << " s]" << std::defaultfloat << '\n';
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size() << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
