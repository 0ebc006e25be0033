#pragma once

// Integer-valued metrics on the supported groups and their distance matrices.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mdsg/errors.hpp"
#include "mdsg/group.hpp"

namespace mdsg {

enum class MetricKind { hamming_permutation, hamming_bitvector, circular_arc, custom };

class Metric {
 public:
  using DistanceFn = std::function<long long(const GroupElement&, const GroupElement&)>;

  static Metric hamming_permutation() { return Metric(MetricKind::hamming_permutation, GroupKind::symmetric, "hamming-permutation"); }
  static Metric hamming_bitvector() { return Metric(MetricKind::hamming_bitvector, GroupKind::elementary_abelian_2, "hamming-bitvector"); }
  static Metric circular_arc() { return Metric(MetricKind::circular_arc, GroupKind::cyclic, "circular-arc"); }

  /// A user-supplied distance. Nothing about it is trusted: invariance is checked where it matters.
  static Metric custom(std::string name, GroupKind group, DistanceFn fn) {
    Metric m(MetricKind::custom, group, std::move(name));
    m.fn_ = std::move(fn);
    return m;
  }

  /// The natural Hamming-type metric for a group kind.
  static Metric default_for(GroupKind kind) {
    switch (kind) {
      case GroupKind::symmetric: return hamming_permutation();
      case GroupKind::elementary_abelian_2: return hamming_bitvector();
      case GroupKind::cyclic: return circular_arc();
    }
    return hamming_permutation();
  }

  MetricKind kind() const { return kind_; }
  GroupKind group_kind() const { return group_; }
  const std::string& name() const { return name_; }

  bool compatible_with(const GroupSpec& spec) const { return spec.kind() == group_; }

  void require_compatible(const GroupSpec& spec) const {
    if (!compatible_with(spec)) throw MismatchError("metric " + name_ + " is not defined on " + spec.name());
  }

  /// Raw evaluation; elements are assumed to belong to the group (see distance()).
  long long operator()(const GroupSpec& spec, const GroupElement& g, const GroupElement& h) const {
    switch (kind_) {
      case MetricKind::hamming_permutation:
      case MetricKind::hamming_bitvector: {
        long long d = 0;
        for (std::size_t i = 0; i < g.length(); ++i) d += g[i] != h[i];
        return d;
      }
      case MetricKind::circular_arc: {
        const long long diff = std::llabs(static_cast<long long>(g.value()) - h.value());
        return std::min(diff, spec.size() - diff);
      }
      case MetricKind::custom:
        return fn_(g, h);
    }
    return 0;
  }

 private:
  Metric(MetricKind kind, GroupKind group, std::string name) : kind_(kind), group_(group), name_(std::move(name)) {}

  MetricKind kind_;
  GroupKind group_;
  std::string name_;
  DistanceFn fn_;
};

inline long long distance(const GroupSpec& spec, const Metric& metric, const GroupElement& g, const GroupElement& h) {
  metric.require_compatible(spec);
  require_member(spec, g);
  require_member(spec, h);
  return metric(spec, g, h);
}

/// For permutations n - #fixed points; for bit vectors the popcount.
inline long long distance_to_identity(const GroupSpec& spec, const Metric& metric, const GroupElement& g) {
  return distance(spec, metric, g, identity(spec));
}

/// Exact integer distances between group elements in enumeration order.
struct DistanceMatrix {
  std::vector<GroupElement> labels;
  std::vector<long long> entries;  // row-major

  std::size_t size() const { return labels.size(); }
  long long operator()(std::size_t i, std::size_t j) const { return entries[i * labels.size() + j]; }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }
};

inline DistanceMatrix build_distance_matrix(const GroupSpec& spec, const Metric& metric,
                                            std::size_t cap = kDefaultElementCap) {
  metric.require_compatible(spec);
  DistanceMatrix dm;
  dm.labels = enumerate_elements(spec, cap);
  const std::size_t n = dm.labels.size();
  dm.entries.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const long long d = metric(spec, dm.labels[i], dm.labels[j]);
      dm.entries[i * n + j] = d;
      dm.entries[j * n + i] = d;
    }
  }
  return dm;
}

/// CSV with a header row of element text forms; text forms are quoted.
inline std::string distance_matrix_csv(const DistanceMatrix& dm) {
  std::ostringstream os;
  os << "\"\"";
  for (const auto& g : dm.labels) os << ",\"" << to_text(g) << '"';
  os << '\n';
  for (std::size_t i = 0; i < dm.size(); ++i) {
    os << '"' << to_text(dm.labels[i]) << '"';
    for (std::size_t j = 0; j < dm.size(); ++j) os << ',' << dm(i, j);
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Invariance checks

enum class InvarianceMode { left, right, bi };

struct InvarianceCounterexample {
  GroupElement f, g, h;
  bool left_side = true;  // true: d(fg, fh) != d(g, h); false: d(gf, hf) != d(g, h)
  long long original = 0;
  long long translated = 0;

  std::string describe() const {
    std::ostringstream os;
    os << (left_side ? "d(fg,fh)" : "d(gf,hf)") << " = " << translated << " but d(g,h) = " << original
       << " for f=" << to_text(f) << ", g=" << to_text(g) << ", h=" << to_text(h);
    return os.str();
  }
};

struct InvarianceReport {
  bool passed = true;
  bool exhaustive = false;
  std::uint64_t triples_checked = 0;
  std::optional<InvarianceCounterexample> counterexample;
};

inline constexpr std::uint64_t kExhaustiveInvarianceOrder = 120;

/// Exhaustive over all (f, g, h) when |G| <= 120, otherwise `trials` random triples.
inline InvarianceReport check_invariance(const GroupSpec& spec, const Metric& metric, InvarianceMode mode,
                                         std::size_t trials = 1000, std::uint64_t seed = 0x5eed) {
  metric.require_compatible(spec);
  InvarianceReport report;
  const bool check_left = mode != InvarianceMode::right;
  const bool check_right = mode != InvarianceMode::left;

  auto test = [&](const GroupElement& f, const GroupElement& g, const GroupElement& h) {
    ++report.triples_checked;
    const long long d = metric(spec, g, h);
    if (check_left) {
      const long long dl = metric(spec, multiply(spec, f, g), multiply(spec, f, h));
      if (dl != d) {
        report.counterexample = InvarianceCounterexample{f, g, h, true, d, dl};
        return false;
      }
    }
    if (check_right) {
      const long long dr = metric(spec, multiply(spec, g, f), multiply(spec, h, f));
      if (dr != d) {
        report.counterexample = InvarianceCounterexample{f, g, h, false, d, dr};
        return false;
      }
    }
    return true;
  };

  bool small = false;
  try {
    small = spec.order() <= kExhaustiveInvarianceOrder;
  } catch (const TooLargeError&) {
  }

  if (small) {
    // Table-driven: products and distances are looked up by element index.
    report.exhaustive = true;
    const auto elems = enumerate_elements(spec);
    const std::size_t n = elems.size();
    std::vector<std::size_t> product(n * n);
    std::vector<long long> dist(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        product[a * n + b] = static_cast<std::size_t>(element_index(spec, multiply(spec, elems[a], elems[b])));
        dist[a * n + b] = metric(spec, elems[a], elems[b]);
      }
    }
    for (std::size_t f = 0; f < n; ++f) {
      for (std::size_t g = 0; g < n; ++g) {
        for (std::size_t h = 0; h < n; ++h) {
          ++report.triples_checked;
          const long long d = dist[g * n + h];
          if (check_left) {
            const long long dl = dist[product[f * n + g] * n + product[f * n + h]];
            if (dl != d) {
              report.passed = false;
              report.counterexample = InvarianceCounterexample{elems[f], elems[g], elems[h], true, d, dl};
              return report;
            }
          }
          if (check_right) {
            const long long dr = dist[product[g * n + f] * n + product[h * n + f]];
            if (dr != d) {
              report.passed = false;
              report.counterexample = InvarianceCounterexample{elems[f], elems[g], elems[h], false, d, dr};
              return report;
            }
          }
        }
      }
    }
    return report;
  }

  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto f = random_element(spec, rng);
    const auto g = random_element(spec, rng);
    const auto h = random_element(spec, rng);
    if (!test(f, g, h)) {
      report.passed = false;
      return report;
    }
  }
  return report;
}

}  // namespace mdsg
